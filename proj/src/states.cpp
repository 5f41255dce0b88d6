#include "qcohere/states.hpp"

#include <cmath>

namespace qc {

namespace {

constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ull;

uint64_t splitmix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

uint64_t Rng::next_u64() {
  ++counter_;
  return splitmix64(seed_ + counter_ * kGamma);
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = next_double();
  double u2 = next_double();
  while (u1 <= 0.0) u1 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  have_spare_ = true;
  spare_ = r * std::sin(2.0 * kPi * u2);
  return r * std::cos(2.0 * kPi * u2);
}

Complex Rng::next_complex_gaussian() {
  const double re = next_gaussian();
  const double im = next_gaussian();
  return Complex(re, im);
}

Eigen::Vector4d BellDiagonalParams::eigenvalues() const {
  Eigen::Vector4d lam;
  lam(0) = 0.25 * (1.0 - c1 + c2 + c3);
  lam(1) = 0.25 * (1.0 + c1 - c2 + c3);
  lam(2) = 0.25 * (1.0 + c1 + c2 - c3);
  lam(3) = 0.25 * (1.0 - c1 - c2 - c3);
  return lam;
}

bool BellDiagonalParams::is_psd(double tol) const { return eigenvalues().minCoeff() >= -tol; }

DensityMatrix bell_diagonal(const BellDiagonalParams& p) {
  if (!p.is_psd()) fail(Err::NotPSD, "Bell-diagonal triple gives a negative eigenvalue");
  Matrix m = Matrix::Identity(4, 4);
  const double c[3] = {p.c1, p.c2, p.c3};
  for (int i = 1; i <= 3; ++i) m += c[i - 1] * kron(pauli(i), pauli(i));
  return DensityMatrix(0.25 * m);
}

DensityMatrix werner(double x, int d) {
  if (x < -1.0 || x > 1.0) fail(Err::ParamOutOfRange, "Werner parameter must lie in [-1,1]");
  if (d < 2) fail(Err::ParamOutOfRange, "Werner dimension must be at least 2");
  const double dd = static_cast<double>(d);
  Matrix swap = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1.0;
  Matrix m = (dd - x) / (dd * dd * dd - dd) * Matrix::Identity(d * d, d * d) +
             (dd * x - 1.0) / (dd * dd * dd - dd) * swap;
  return DensityMatrix(m);
}

DensityMatrix isotropic(double x, int d) {
  if (x < 0.0 || x > 1.0) fail(Err::ParamOutOfRange, "isotropic parameter must lie in [0,1]");
  if (d < 2) fail(Err::ParamOutOfRange, "isotropic dimension must be at least 2");
  const double dd = static_cast<double>(d);
  Matrix proj = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) proj(i * d + i, j * d + j) = 1.0;
  Matrix m = (1.0 - x) / (dd * dd - 1.0) * Matrix::Identity(d * d, d * d) +
             (dd * dd * x - 1.0) / (dd * dd * dd - dd) * proj;
  return DensityMatrix(m);
}

DensityMatrix x_state(const XStateParams& p) {
  Matrix m = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) m(i, i) = p.diagonal(i);
  m(0, 3) = p.rho14;
  m(3, 0) = std::conj(p.rho14);
  m(1, 2) = p.rho23;
  m(2, 1) = std::conj(p.rho23);
  return DensityMatrix(m);  // validator enforces trace and PSD
}

PureState maximally_coherent(int d) {
  if (d < 1) fail(Err::ParamOutOfRange, "dimension must be positive");
  Vector v = Vector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
  return PureState(v);
}

DensityMatrix mcms(double p, int d) {
  if (p < 0.0 || p > 1.0) fail(Err::ParamOutOfRange, "mixing parameter must lie in [0,1]");
  PureState psi = maximally_coherent(d);
  Matrix m = (1.0 - p) / d * Matrix::Identity(d, d) + p * (psi.amps() * psi.amps().adjoint());
  return DensityMatrix(m);
}

PureState random_pure(int d, Rng& rng) {
  if (d < 1) fail(Err::ParamOutOfRange, "dimension must be positive");
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = rng.next_complex_gaussian();
  v /= v.norm();
  return PureState(v);
}

DensityMatrix random_density(int d, int rank, Rng& rng) {
  if (d < 1 || rank < 1 || rank > d) fail(Err::ParamOutOfRange, "need 1 <= rank <= d");
  Matrix g(d, rank);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = rng.next_complex_gaussian();
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(m);
}

Matrix random_unitary(int d, Rng& rng) {
  // QR of a Ginibre matrix with phase fixing gives a Haar unitary
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.next_complex_gaussian();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    Complex rj = r(j, j);
    q.col(j) *= (std::abs(rj) > 0 ? rj / std::abs(rj) : Complex(1, 0));
  }
  return q;
}

bool has_x_structure(const Matrix& m, double tol) {
  const int d = static_cast<int>(m.rows());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j || i + j == d - 1) continue;
      if (std::abs(m(i, j)) > tol) return false;
    }
  return true;
}

bool is_x_state(const DensityMatrix& rho, double tol) {
  if (rho.dim() != 4) fail(Err::DimensionMismatch, "X-state recognizer expects a two-qubit state");
  return has_x_structure(rho.mat(), tol);
}

std::optional<BellDiagonalParams> is_bell_diagonal(const DensityMatrix& rho, double tol) {
  if (rho.dim() != 4) fail(Err::DimensionMismatch, "Bell-diagonal recognizer expects a two-qubit state");
  Bloch2Q b = bloch_decompose_2q(rho);
  if (b.x.cwiseAbs().maxCoeff() > tol || b.y.cwiseAbs().maxCoeff() > tol) return std::nullopt;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && std::abs(b.R(i, j)) > tol) return std::nullopt;
  return BellDiagonalParams{b.R(0, 0), b.R(1, 1), b.R(2, 2)};
}

PureState bell_state(int index) {
  const double s = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(4);
  switch (index) {
    case 0: v(0) = s; v(3) = s; break;    // Phi+
    case 1: v(0) = s; v(3) = -s; break;   // Phi-
    case 2: v(1) = s; v(2) = s; break;    // Psi+
    case 3: v(1) = s; v(2) = -s; break;   // Psi-
    default: fail(Err::ParamOutOfRange, "Bell state index must be 0..3");
  }
  return PureState(v);
}

DensityMatrix classical_quantum_2xn(const RealVector& probs, const std::vector<Matrix>& rho_k) {
  if (probs.size() != 2 || rho_k.size() != 2)
    fail(Err::DimensionMismatch, "classical-quantum builder expects two branches");
  const int n = static_cast<int>(rho_k[0].rows());
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < 2; ++k) m.block(k * n, k * n, n, n) = probs(k) * rho_k[k];
  return DensityMatrix(m);
}

}  // namespace qc
