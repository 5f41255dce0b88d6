#pragma once

#include "qcohere/optim.hpp"
#include "qcohere/states.hpp"

namespace qc {

enum class Method { analytic, numeric };

struct MeasureResult {
  double value = 0.0;
  Method method = Method::analytic;
  double tol = 1e-12;
  std::optional<Matrix> witness_state;                // closest incoherent state etc.
  std::optional<std::vector<double>> witness_angles;  // optimal measurement angles
};

MeasureResult c_l1(const DensityMatrix& rho, const ReferenceBasis& basis);
MeasureResult c_rel_entropy(const DensityMatrix& rho, const ReferenceBasis& basis);
MeasureResult c_l2(const DensityMatrix& rho, const ReferenceBasis& basis);

/// Exact closest-incoherent-state search for pure states under the trace norm.
MeasureResult c_trace_pure(const PureState& psi);
MeasureResult c_trace(const DensityMatrix& rho, const ReferenceBasis& basis, Rng* rng = nullptr);
MeasureResult c_trace_modified(const DensityMatrix& rho, const ReferenceBasis& basis, Rng* rng = nullptr);

MeasureResult robustness(const DensityMatrix& rho, const ReferenceBasis& basis, Rng* rng = nullptr);
/// Simplex optimizer route regardless of analytic shortcuts (verification hook).
MeasureResult robustness_numeric(const DensityMatrix& rho, const ReferenceBasis& basis,
                                 Rng* rng = nullptr);
MeasureResult coherence_weight(const DensityMatrix& rho, const ReferenceBasis& basis, Rng* rng = nullptr);

MeasureResult coherence_of_formation_qubit(const DensityMatrix& rho);
MeasureResult coherence_concurrence_pure(const PureState& psi, const ReferenceBasis& basis);
int coherence_rank(const PureState& psi);
double c0(const PureState& psi);

MeasureResult geometric_coherence(const DensityMatrix& rho, const ReferenceBasis& basis, Rng* rng = nullptr);
MeasureResult tsallis_coherence(const DensityMatrix& rho, const ReferenceBasis& basis, double alpha);
MeasureResult c_max_relative_entropy(const DensityMatrix& rho, const ReferenceBasis& basis, Rng* rng = nullptr);

double k_coherence(const DensityMatrix& rho, const Matrix& k_obs);
double k_coherence_lower(const DensityMatrix& rho, const Matrix& k_obs);
MeasureResult c_sk(const DensityMatrix& rho, const ReferenceBasis& basis);

double c_basis_independent(const DensityMatrix& rho);

enum class MaxCoherenceKind { rel_entropy, l2, robustness, weight, sk };
double max_coherence_over_unitaries(const DensityMatrix& rho, MaxCoherenceKind kind);

/// l1 correlated coherence with marginal-eigenbasis reference (degenerate
/// blocks resolved by sampled minimization).
double correlated_coherence(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                            Rng* rng = nullptr, int degenerate_samples = 1000);

struct MonogamyReport {
  double lhs_r, rhs_r, slack_r;
  double lhs_l1, rhs_l1, slack_l1;
};
MonogamyReport monogamy_check(const DensityMatrix& rho, const std::vector<int>& dims);

struct NaqcResult {
  double value;
  bool achieves_advantage;
};
NaqcResult naqc_l1(const DensityMatrix& rho_ab);

/// Sampled convex-roof upper bound: min over random pure-state decompositions
/// of the average pure-state value. A bound, not the exact roof.
double convex_roof_upper_bound(const DensityMatrix& rho, int n_decompositions, Rng& rng,
                               const std::function<double(const PureState&)>& pure_value);

// shared helpers
double c_l1_value(const Matrix& rho_in_basis);
double c_rel_entropy_value(const Matrix& rho_in_basis);

}  // namespace qc
