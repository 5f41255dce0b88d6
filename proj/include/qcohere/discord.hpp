#pragma once

#include "qcohere/coherence.hpp"
#include "qcohere/states.hpp"

namespace qc {

struct QubitProjectivePair {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2pi)
};

struct MeasurementSweep {
  int grid_theta = 90;
  int grid_phi = 180;
  int refine_iters = 200;
};

enum class Side { A, B };

/// Bloch unit vector for the measurement direction.
Vector3 sweep_direction(double theta, double phi);
/// (I + sign * n.sigma)/2 for sign = +-1.
Matrix qubit_projector(double theta, double phi, int sign);
/// Local projective measurement on the qubit side A of a 2 x n state.
Matrix measure_qubit_a(const Matrix& rho, int dim_b, double theta, double phi);
/// Relabels a bipartite state so parties swap places.
Matrix swap_parties(const Matrix& rho, int dim_a, int dim_b);

struct SweepResult {
  double value;
  QubitProjectivePair angles;
};
/// Minimize f(theta,phi) over the grid, then refine with Nelder-Mead.
SweepResult sweep_minimize(const std::function<double(double, double)>& f,
                           const MeasurementSweep& sweep);

MeasureResult entropic_discord_2q(const DensityMatrix& rho_ab, Side side,
                                  const MeasurementSweep& sweep = {});

MeasureResult hs_discord(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                         const MeasurementSweep& sweep = {});
double hs_discord_2q_formula(const DensityMatrix& rho_ab);
double hs_discord_qubit_qutrit_formula(const DensityMatrix& rho_ab);

MeasureResult trace_discord(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                            const MeasurementSweep& sweep = {});
double trace_discord_bell_formula(const BellDiagonalParams& p);
double trace_discord_x_formula(const DensityMatrix& rho_ab);

struct TraceCorrelations {
  double classical;      // C_T
  double total;          // T_T
  double classical_min;  // C~_T over product states
};
TraceCorrelations geometric_classical_total_trace(const BellDiagonalParams& p);

MeasureResult bures_discord(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                            const MeasurementSweep& sweep = {});
double bures_fmax_bell_formula(const BellDiagonalParams& p);

MeasureResult hellinger_discord(const DensityMatrix& rho_ab, int dim_a, int dim_b);
MeasureResult lqu(const DensityMatrix& rho_ab, int dim_a, int dim_b);
double hellinger_bell_formula(const BellDiagonalParams& p);

struct RelEntropyDiscordBell {
  double discord;             // D_R
  double dissonance;          // Q_R
  Matrix closest_classical;   // chi_rho
  Matrix closest_separable;   // sigma
};
RelEntropyDiscordBell rel_entropy_discord_bell(const BellDiagonalParams& p);

MeasureResult one_way_deficit(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                              const MeasurementSweep& sweep = {});
MeasureResult zero_way_deficit(const DensityMatrix& rho_ab, const MeasurementSweep& sweep = {});

MeasureResult negativity_of_quantumness(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                                        Side side, const MeasurementSweep& sweep = {});

struct NoncommutativityResult {
  double trace_norm_value;  // D_N
  double hs_norm_value;     // D'_N
};
NoncommutativityResult noncommutativity_discord(const DensityMatrix& rho_ab, int dim_a, int dim_b);

MeasureResult q_discord(const DensityMatrix& rho_ab, int dim_a, int dim_b, double q,
                        const MeasurementSweep& sweep = {});
double tsallis_entropy(const Matrix& rho, double q);

/// Orthonormal traceless Hermitian operator set (norm^2 = 2 each), ordered as
/// off-diagonal pairs u_jk, v_jk then diagonal w_l.
std::vector<Matrix> traceless_hermitian_basis(int d);

}  // namespace qc
