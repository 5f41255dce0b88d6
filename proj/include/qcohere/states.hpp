#pragma once

#include <cstdint>
#include <optional>

#include "qcohere/qcore.hpp"

namespace qc {

/// Counter-based deterministic generator (splitmix64 stream), reproducible
/// across languages: output k of stream `seed` is splitmix64(seed + (k+1)*GAMMA).
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), counter_(0) {}
  uint64_t next_u64();
  double next_double();              // uniform [0,1)
  double next_gaussian();            // standard normal (Box-Muller)
  Complex next_complex_gaussian();   // re,im iid N(0,1)
  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
  uint64_t counter_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct BellDiagonalParams {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  /// Eigenvalues (lambda_1..lambda_4) of the corresponding Bell-diagonal state.
  Eigen::Vector4d eigenvalues() const;
  bool is_psd(double tol = 1e-12) const;
};

struct XStateParams {
  Eigen::Vector4d diagonal;  // rho_11..rho_44
  Complex rho14 = 0.0;
  Complex rho23 = 0.0;
};

DensityMatrix bell_diagonal(const BellDiagonalParams& p);
DensityMatrix werner(double x, int d);
DensityMatrix isotropic(double x, int d);
DensityMatrix x_state(const XStateParams& p);
PureState maximally_coherent(int d);
/// (1-p) I/d + p |Psi_d><Psi_d| -- the maximally coherent mixed states.
DensityMatrix mcms(double p, int d);

PureState random_pure(int d, Rng& rng);
DensityMatrix random_density(int d, int rank, Rng& rng);
Matrix random_unitary(int d, Rng& rng);

bool is_x_state(const DensityMatrix& rho, double tol = 1e-10);
std::optional<BellDiagonalParams> is_bell_diagonal(const DensityMatrix& rho, double tol = 1e-10);

/// Nonzero entries confined to the main diagonal and anti-diagonal (any d).
bool has_x_structure(const Matrix& m, double tol = 1e-10);

/// The four Bell states; index 0..3 = Phi+, Phi-, Psi+, Psi-.
PureState bell_state(int index);

/// Classical-quantum state sum_k p_k |k><k| (x) rho_k with qubit A.
DensityMatrix classical_quantum_2xn(const RealVector& probs, const std::vector<Matrix>& rho_k);

}  // namespace qc
