#pragma once

#include "qcohere/coherence.hpp"
#include "qcohere/discord.hpp"

namespace qc {

struct DQC1Instance {
  int n;      // register qubit count
  Matrix u;   // 2^n unitary
  DQC1Instance(int n_qubits, Matrix unitary);
};

double dqc1_coherence_consumption(const DQC1Instance& inst);

struct GroverInstance {
  long n_database;  // N
  long n_solutions; // j
  long iterations;  // r
  GroverInstance(long n, long j, long r);
};

PureState grover_state(const GroverInstance& inst);
double grover_success(const GroverInstance& inst);
enum class GroverCoherenceKind { l1, rel_entropy };
double grover_coherence(const GroverInstance& inst, GroverCoherenceKind kind);
long grover_r_opt(long n, long j);
long grover_r_opt_closed_form(long n, long j);

struct TeleportBounds {
  double fidelity;
  double lower;
  double upper;
};
TeleportBounds teleport_fidelity_bounds(const DensityMatrix& rho_ab);

double rsp_fidelity(const DensityMatrix& rho_ab);
double phase_estimation_bound(const DensityMatrix& rho_ab, int dim_a, int dim_b);

struct MubReport {
  double lhs_l1, rhs_l1, slack_l1;
  double lhs_r, rhs_r, slack_r;
};
/// Complete MUB set for qubits: sigma_z, sigma_x, sigma_y eigenbases.
std::vector<Matrix> pauli_mub_qubit();
/// Standard complete MUB construction for odd prime d (plus computational basis).
std::vector<Matrix> mub_prime(int d);
MubReport mub_complementarity(const DensityMatrix& rho, const std::vector<Matrix>& mubs);

struct MixednessReport {
  double lhs;       // normalized-coherence^2 + linear mixedness
  double slack;     // 1 - lhs
  bool mcms_equality;
};
MixednessReport coherence_mixedness(const DensityMatrix& rho);

struct DualityReport {
  double coherence;      // C_l1 of the post-detector particle state
  double distinguishability;
  double sum;            // coherence/(N-1) + distinguishability
  double intensity_ratio;
};
DualityReport wave_particle_duality(const Vector& amplitudes, const Matrix& detector_overlaps);

enum class HaarKind { l1, rel_entropy_nats, dephased_distance };
struct HaarAverage {
  double mean;
  double stderr_;
  double analytic;
};
HaarAverage haar_average_coherence(int d, int n_samples, uint64_t seed, HaarKind kind);

double odlro_coherence(long sites, long pairs);

/// Entanglement-plus-coherence budget for incoherent merging of a tripartite
/// state: S(Delta^{AB} rho) - S(Delta^{B} rho).
double merging_bound(const DensityMatrix& rho_rab, int dim_r, int dim_a, int dim_b);

}  // namespace qc
