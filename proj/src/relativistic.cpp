#include "qcohere/relativistic.hpp"

#include <cmath>

#include "qcohere/coherence.hpp"
#include "qcohere/discord.hpp"

namespace qc {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

UnruhParams::UnruhParams(double omega_in, double acceleration_in)
    : omega(omega_in), acceleration(acceleration_in) {
  if (omega <= 0.0 || acceleration <= 0.0)
    fail(Err::ParamOutOfRange, "frequency and acceleration must be positive");
}

double UnruhParams::fermionic_r() const {
  const double e = std::exp(-2.0 * kPi * ratio());
  return std::acos(1.0 / std::sqrt(e + 1.0));
}

double UnruhParams::bosonic_r() const {
  const double e = std::exp(-2.0 * kPi * ratio());
  const double ch = 1.0 / std::sqrt(std::max(1e-300, 1.0 - e));
  return std::acosh(std::max(1.0, ch));
}

TruncationConfig::TruncationConfig(int n, double bound) : n_max(n), tail_bound(bound) {
  if (n_max < 4) fail(Err::ParamOutOfRange, "truncation needs at least 4 levels");
  if (tail_bound <= 0.0) fail(Err::ParamOutOfRange, "tail bound must be positive");
}

DensityMatrix fermionic_degraded_bell(const UnruhParams& up) {
  const double r = up.fermionic_r();
  const double c = std::cos(r), s = std::sin(r);
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 0.5 * c * c;          // |00>
  m(1, 1) = 0.5 * s * s;          // |01>
  m(3, 3) = 0.5;                  // |11>
  m(0, 3) = 0.5 * c;
  m(3, 0) = 0.5 * c;
  return DensityMatrix(m);
}

DensityMatrix bosonic_degraded_bell(const UnruhParams& up, const TruncationConfig& tc) {
  const double r = up.bosonic_r();
  const double t = std::tanh(r);
  const double ch = std::cosh(r);
  const double tail = std::pow(t * t, tc.n_max + 1.0);
  if (tail > tc.tail_bound)
    fail(Err::TruncationInsufficient, "Fock tail mass exceeds the configured bound");

  const int levels = tc.n_max + 2;  // Rob runs over 0..n_max+1
  Matrix m = Matrix::Zero(2 * levels, 2 * levels);
  auto idx = [&](int a, int n) { return a * levels + n; };
  for (int n = 0; n <= tc.n_max; ++n) {
    const double w = 0.5 * std::pow(t * t, n) / (ch * ch);
    m(idx(0, n), idx(0, n)) += w;
    m(idx(1, n + 1), idx(1, n + 1)) += w * (n + 1.0) / (ch * ch);
    const double cross = w * std::sqrt(n + 1.0) / ch;
    m(idx(0, n), idx(1, n + 1)) += cross;
    m(idx(1, n + 1), idx(0, n)) += cross;
  }
  const double norm = m.trace().real();
  if (1.0 - norm > tc.tail_bound)
    fail(Err::TruncationInsufficient, "renormalization deficit exceeds the configured bound");
  m /= norm;
  return DensityMatrix(m);
}

std::vector<DegradationRow> degradation_curve(UnruhStatistics kind, DegradationMeasure measure,
                                              const std::vector<double>& accelerations,
                                              double omega, const TruncationConfig& tc) {
  std::vector<DegradationRow> rows;
  for (double a : accelerations) {
    UnruhParams up(omega, a);
    DegradationRow row{};
    row.acceleration = a;
    int dim_b = 2;
    DensityMatrix state = [&] {
      if (kind == UnruhStatistics::fermionic) {
        row.r = up.fermionic_r();
        row.n_max = 0;
        return fermionic_degraded_bell(up);
      }
      row.r = up.bosonic_r();
      row.n_max = tc.n_max;
      dim_b = tc.n_max + 2;
      return bosonic_degraded_bell(up, tc);
    }();
    switch (measure) {
      case DegradationMeasure::negativity:
        row.value = negativity(state, 2, dim_b);
        break;
      case DegradationMeasure::c_l1:
        row.value = c_l1_value(state.mat());
        break;
      case DegradationMeasure::c_rel_entropy:
        row.value = std::max(0.0, c_rel_entropy_value(state.mat()));
        break;
      case DegradationMeasure::trace_discord:
        row.value = trace_discord(state, 2, dim_b).value;
        break;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qc
