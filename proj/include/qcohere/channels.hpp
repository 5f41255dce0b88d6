#pragma once

#include "qcohere/coherence.hpp"
#include "qcohere/discord.hpp"

namespace qc {

class KrausChannel {
 public:
  KrausChannel(std::vector<Matrix> kraus_ops, std::string label);
  const std::vector<Matrix>& kraus() const { return kraus_; }
  const std::string& label() const { return label_; }
  int dim_in() const { return static_cast<int>(kraus_.front().cols()); }
  int dim_out() const { return static_cast<int>(kraus_.front().rows()); }

 private:
  std::vector<Matrix> kraus_;
  std::string label_;
};

enum class ChannelKind {
  bit_flip,
  phase_flip,
  bit_phase_flip,
  depolarizing,
  amplitude_damping,
  phase_damping,
  generalized_amplitude_damping,
};

KrausChannel standard_channel(ChannelKind kind, double param, double param2 = 0.5);
KrausChannel identity_channel(int d);
KrausChannel full_dephasing_channel(int d);
KrausChannel unitary_channel(const Matrix& u, const std::string& label = "unitary");

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho);
Matrix apply_raw(const KrausChannel& channel, const Matrix& rho);
DensityMatrix apply_on_subsystem(const KrausChannel& channel, const DensityMatrix& rho, int dim_a,
                                 int dim_b, Side side);

/// Heisenberg-picture transfer matrix over the orthonormal operator set
/// {X_0 = sqrt(2/d) I, X_k}: E^dag(X_i) = sum_j T_ij X_j.
struct TransferMatrix {
  RealMatrix t;
  int dim;
};
TransferMatrix transfer_matrix(const KrausChannel& channel);

struct ChannelClassification {
  bool unital = false;
  bool semiclassical = false;
  bool incoherent = false;
  bool strictly_incoherent = false;
  bool coherence_breaking = false;
  std::optional<std::vector<Matrix>> cbc_witness;  // effect operators F_i when CBC
};
ChannelClassification classify(const KrausChannel& channel);

bool discord_freezing_condition(const BellDiagonalParams& p, double tol = 1e-10);
bool coherence_freezing_condition(const BellDiagonalParams& p, int n_qubits, double tol = 1e-10);
bool l1_freezing_condition_general(const TransferMatrix& t, double tol = 1e-8);

struct FactorizationReport {
  double q = 0.0;
  double probe_value = 0.0;        // C_l1 of the evolved probe state
  double max_rel_deviation = 0.0;  // of C_l1(E rho) from |q| C_l1(rho)
  int states_checked = 0;
};
/// Verifies the l1 factorization law on the channel's eigen-operator family.
/// `xk_indices` selects off-diagonal operator indices (empty = all).
FactorizationReport factorization_check(const KrausChannel& channel,
                                        std::vector<int> xk_indices, int n_states, Rng& rng);

KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner);
/// Minimal n with channel^n coherence breaking; nullopt when the cap is hit.
std::optional<int> coherence_breaking_index(const KrausChannel& channel, int cap = 32);

enum class PowerKind { l1, rel_entropy };
double cohering_power(const KrausChannel& channel, PowerKind kind);
double decohering_power(const KrausChannel& channel, PowerKind kind);
double cohering_power_unitary_l1(const Matrix& u);
double cohering_power_unitary_rel_entropy(const Matrix& u);
double average_cohering_power_unitary(const Matrix& u);

struct SsioMaxCoherence {
  double value;
  double p_max;
};
SsioMaxCoherence ssio_max_coherence(const DensityMatrix& rho, const ReferenceBasis& basis);

double energy_bounded_max_coherence(const RealVector& hamiltonian_diag, double temperature,
                                    double delta_e);

}  // namespace qc
