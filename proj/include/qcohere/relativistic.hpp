#pragma once

#include "qcohere/states.hpp"

namespace qc {

struct UnruhParams {
  double omega;         // mode frequency
  double acceleration;  // a > 0 (only the ratio omega/a enters)
  UnruhParams(double omega_in, double acceleration_in);
  double ratio() const { return omega / acceleration; }
  double fermionic_r() const;  // cos r = (e^{-2 pi w/a} + 1)^{-1/2}
  double bosonic_r() const;    // cosh r = (1 - e^{-2 pi w/a})^{-1/2}
};

struct TruncationConfig {
  int n_max = 20;
  double tail_bound = 1e-8;
  TruncationConfig(int n, double bound);
};

/// Fermionic Unruh map applied to Rob's half of (|00>+|11>)/sqrt2, region II
/// traced out; two-qubit output.
DensityMatrix fermionic_degraded_bell(const UnruhParams& up);

/// Bosonic single-mode counterpart on a truncated Fock ladder; output is
/// qubit x (n_max + 2) levels.
DensityMatrix bosonic_degraded_bell(const UnruhParams& up, const TruncationConfig& tc);

enum class UnruhStatistics { fermionic, bosonic };
enum class DegradationMeasure { negativity, c_l1, c_rel_entropy, trace_discord };

struct DegradationRow {
  double acceleration;
  double r;
  double value;
  int n_max;
};
std::vector<DegradationRow> degradation_curve(UnruhStatistics kind, DegradationMeasure measure,
                                              const std::vector<double>& accelerations,
                                              double omega = 1.0,
                                              const TruncationConfig& tc = {20, 1e-8});

}  // namespace qc
