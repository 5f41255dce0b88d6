#pragma once

#include "qcohere/discord.hpp"

namespace qc {

MeasureResult hs_min(const DensityMatrix& rho_ab, int dim_a, int dim_b);
MeasureResult trace_min(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                        const MeasurementSweep& sweep = {});
MeasureResult bures_min_bell(const BellDiagonalParams& p);
/// Direct sqrt(rho) fidelity sweep used as the oracle for the Bell branch formula.
double bures_fmin_sweep(const DensityMatrix& rho_ab, int dim_b, const MeasurementSweep& sweep = {});
MeasureResult rel_entropy_min(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                              const MeasurementSweep& sweep = {});
double rel_entropy_min_bell_formula(const BellDiagonalParams& p);
MeasureResult skew_min(const DensityMatrix& rho_ab, int dim_a, int dim_b);
MeasureResult uin(const DensityMatrix& rho_ab, int dim_a, int dim_b);

/// Two-sided HS-norm MIN for two qubits (numeric sweep over both parties).
MeasureResult symmetric_hs_min_2q(const DensityMatrix& rho_ab, const MeasurementSweep& sweep = {});

/// Necessary-and-sufficient nullity condition for the HS MIN: commuting normal
/// B-side blocks with marginal eigenspaces inside block eigenspaces.
bool hs_min_is_null(const DensityMatrix& rho_ab, int dim_a, int dim_b, double tol = 1e-8);

}  // namespace qc
