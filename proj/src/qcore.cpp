#include "qcohere/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qc {

namespace {

constexpr double kLog2 = 0.6931471805599453;  // ln 2

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

const char* err_name(Err code) {
  switch (code) {
    case Err::NotHermitian: return "NotHermitian";
    case Err::NoConvergence: return "NoConvergence";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::NotPSD: return "NotPSD";
    case Err::ParamOutOfRange: return "ParamOutOfRange";
    case Err::NotBellDiagonal: return "NotBellDiagonal";
    case Err::BoundViolation: return "BoundViolation";
    case Err::OptimizerStalled: return "OptimizerStalled";
    case Err::SingularDiagonal: return "SingularDiagonal";
    case Err::NoSolution: return "NoSolution";
    case Err::NotUnitary: return "NotUnitary";
    case Err::NotMUB: return "NotMUB";
    case Err::InvalidGram: return "InvalidGram";
    case Err::TruncationInsufficient: return "TruncationInsufficient";
    case Err::NotApplicable: return "NotApplicable";
    case Err::ZeroLQU: return "ZeroLQU";
    case Err::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  Matrix p = m.adjoint() * m;
  p -= Matrix::Identity(m.rows(), m.cols());
  return p.cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix::DensityMatrix(Matrix m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 1)
    fail(Err::DimensionMismatch, "density matrix must be square and nonempty");
  if (!is_hermitian(mat_, kHermTol))
    fail(Err::NotHermitian, "density matrix not Hermitian within 1e-10");
  const double tr = mat_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol || std::abs(mat_.trace().imag()) > kTraceTol)
    fail(Err::NotPSD, "density matrix trace differs from 1");
  mat_ = 0.5 * (mat_ + mat_.adjoint().eval());
  EigResult e = hermitian_eig(mat_);
  if (e.values.minCoeff() < -kPsdTol)
    fail(Err::NotPSD, "density matrix has eigenvalue below -1e-9");
}

PureState::PureState(Vector amps) : amps_(std::move(amps)) {
  if (amps_.size() < 1) fail(Err::DimensionMismatch, "empty state vector");
  if (std::abs(amps_.norm() - 1.0) > 1e-10)
    fail(Err::ParamOutOfRange, "state vector not normalized within 1e-10");
}

DensityMatrix PureState::projector() const {
  Matrix m = amps_ * amps_.adjoint();
  return DensityMatrix(m);
}

ReferenceBasis::ReferenceBasis(Matrix vectors) : vectors_(std::move(vectors)) {
  if (vectors_.rows() != vectors_.cols() || vectors_.rows() < 1)
    fail(Err::DimensionMismatch, "basis must hold dim orthonormal vectors");
  Matrix g = vectors_.adjoint() * vectors_;
  g -= Matrix::Identity(vectors_.rows(), vectors_.cols());
  if (g.cwiseAbs().maxCoeff() > 1e-10)
    fail(Err::ParamOutOfRange, "basis vectors not orthonormal within 1e-10");
}

ReferenceBasis ReferenceBasis::computational(int dim) {
  return ReferenceBasis(Matrix::Identity(dim, dim));
}

bool ReferenceBasis::is_computational() const {
  Matrix d = vectors_ - Matrix::Identity(vectors_.rows(), vectors_.cols());
  return d.cwiseAbs().maxCoeff() <= 1e-14;
}

Matrix ReferenceBasis::to_basis(const Matrix& rho) const {
  if (rho.rows() != vectors_.rows())
    fail(Err::DimensionMismatch, "state and basis dimensions differ");
  if (is_computational()) return rho;
  return vectors_.adjoint() * rho * vectors_;
}

EigResult hermitian_eig(const Matrix& m) {
  if (m.rows() != m.cols()) fail(Err::DimensionMismatch, "eigendecomposition needs a square matrix");
  if (!is_hermitian(m, kHermTol)) fail(Err::NotHermitian, "matrix not Hermitian within 1e-10");
  const int n = static_cast<int>(m.rows());
  Matrix a = 0.5 * (m + m.adjoint().eval());
  Matrix v = Matrix::Identity(n, n);
  const double scale = std::max(1.0, a.norm());

  auto off_mass = [&]() {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
  };

  const int max_sweeps = 500;
  bool converged = n == 1;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double mpq = std::abs(a(p, q));
        if (mpq <= 1e-300) continue;
        const double phi = std::arg(a(p, q));
        const double theta = 0.5 * std::atan2(2.0 * mpq, a(p, p).real() - a(q, q).real());
        const double c = std::cos(theta);
        const Complex s = std::sin(theta) * std::exp(Complex(0.0, -phi));
        // columns: |p'> = c|p> + s|q>, |q'> = -conj(s)|p> + c|q>
        for (int k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp + s * akq;
          a(k, q) = -std::conj(s) * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(s) * aqk;
          a(q, k) = -s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + s * vkq;
          v(k, q) = -std::conj(s) * vkp + c * vkq;
        }
      }
    }
    converged = off_mass() < 1e-14 * scale;
  }
  if (!converged) fail(Err::NoConvergence, "Jacobi sweeps exceeded 500 without convergence");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });
  EigResult out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.values(i) = a(order[i], order[i]).real();
    out.vectors.col(i) = v.col(order[i]);
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix matrix_sqrt_of(const Matrix& hermitian_psd) {
  EigResult e = hermitian_eig(hermitian_psd);
  const int n = static_cast<int>(e.values.size());
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double lam = e.values(i);
    if (lam < 0.0) lam = 0.0;  // clamp numerical PSD drift
    d(i, i) = std::sqrt(lam);
  }
  Matrix r = e.vectors * d * e.vectors.adjoint();
  return 0.5 * (r + r.adjoint().eval());
}

Matrix matrix_sqrt(const DensityMatrix& rho) { return matrix_sqrt_of(rho.mat()); }

Matrix partial_trace_raw(const Matrix& m, int dim_a, int dim_b, Keep keep) {
  if (m.rows() != static_cast<Eigen::Index>(dim_a) * dim_b || m.rows() != m.cols())
    fail(Err::DimensionMismatch, "partial trace dimensions do not factor the state");
  if (keep == Keep::A) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j)
        for (int k = 0; k < dim_b; ++k) out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j)
      for (int k = 0; k < dim_a; ++k) out(i, j) += m(k * dim_b + i, k * dim_b + j);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int dim_a, int dim_b, Keep keep) {
  return DensityMatrix(partial_trace_raw(rho.mat(), dim_a, dim_b, keep));
}

Matrix partial_transpose_a(const Matrix& m, int dim_a, int dim_b) {
  if (m.rows() != static_cast<Eigen::Index>(dim_a) * dim_b || m.rows() != m.cols())
    fail(Err::DimensionMismatch, "partial transpose dimensions do not factor the state");
  Matrix out(m.rows(), m.cols());
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_a; ++j)
      out.block(j * dim_b, i * dim_b, dim_b, dim_b) = m.block(i * dim_b, j * dim_b, dim_b, dim_b);
  return out;
}

double trace_norm(const Matrix& m) {
  if (m.rows() != m.cols()) fail(Err::DimensionMismatch, "trace norm needs a square matrix");
  if (is_hermitian(m)) {
    EigResult e = hermitian_eig(m);
    return e.values.cwiseAbs().sum();
  }
  // singular values via eigenvalues of m^dag m
  EigResult e = hermitian_eig(Matrix(m.adjoint() * m));
  double s = 0.0;
  for (int i = 0; i < e.values.size(); ++i) s += std::sqrt(std::max(0.0, e.values(i)));
  return s;
}

double hs_norm(const Matrix& m) { return m.norm(); }

double fidelity_raw(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows()) fail(Err::DimensionMismatch, "fidelity dimensions differ");
  Matrix sr = matrix_sqrt_of(rho);
  Matrix inner = sr * sigma * sr;
  EigResult e = hermitian_eig(Matrix(0.5 * (inner + inner.adjoint().eval())));
  double s = 0.0;
  for (int i = 0; i < e.values.size(); ++i) s += std::sqrt(std::max(0.0, e.values(i)));
  double f = s * s;
  return std::min(1.0, std::max(0.0, f));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return fidelity_raw(rho.mat(), sigma.mat());
}

double von_neumann_entropy_raw(const Matrix& rho) {
  EigResult e = hermitian_eig(rho);
  double s = 0.0;
  for (int i = 0; i < e.values.size(); ++i) s -= xlog2x(std::max(0.0, e.values(i)));
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy_raw(rho.mat()); }

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) fail(Err::DimensionMismatch, "relative entropy dimensions differ");
  EigResult es = hermitian_eig(sigma.mat());
  const int n = rho.dim();
  double cross = 0.0;  // tr(rho log2 sigma)
  for (int i = 0; i < n; ++i) {
    const double si = es.values(i);
    const double weight = std::real(Complex(es.vectors.col(i).adjoint() * rho.mat() * es.vectors.col(i)));
    if (si <= 1e-12) {
      if (weight > 1e-10) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross += weight * std::log2(si);
  }
  return -von_neumann_entropy(rho) - cross;
}

Matrix dephase_computational(const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  out.diagonal() = rho.diagonal();
  return out;
}

Matrix dephase_raw(const Matrix& rho, const ReferenceBasis& basis) {
  if (rho.rows() != basis.dim()) fail(Err::DimensionMismatch, "dephase dimensions differ");
  if (basis.is_computational()) return dephase_computational(rho);
  const Matrix& b = basis.vectors();
  return b * dephase_computational(b.adjoint() * rho * b) * b.adjoint();
}

DensityMatrix dephase(const DensityMatrix& rho, const ReferenceBasis& basis) {
  return DensityMatrix(dephase_raw(rho.mat(), basis));
}

const Matrix& pauli(int i) {
  static const Matrix mats[4] = {
      (Matrix(2, 2) << 1, 0, 0, 1).finished(),
      (Matrix(2, 2) << 0, 1, 1, 0).finished(),
      (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
      (Matrix(2, 2) << 1, 0, 0, -1).finished(),
  };
  if (i < 0 || i > 3) fail(Err::ParamOutOfRange, "pauli index must be 0..3");
  return mats[i];
}

Bloch2Q bloch_decompose_2q(const DensityMatrix& rho) {
  if (rho.dim() != 4) fail(Err::DimensionMismatch, "bloch decomposition needs a two-qubit state");
  Bloch2Q b;
  for (int i = 1; i <= 3; ++i) {
    b.x(i - 1) = (rho.mat() * kron(pauli(i), pauli(0))).trace().real();
    b.y(i - 1) = (rho.mat() * kron(pauli(0), pauli(i))).trace().real();
    for (int j = 1; j <= 3; ++j)
      b.R(i - 1, j - 1) = (rho.mat() * kron(pauli(i), pauli(j))).trace().real();
  }
  return b;
}

Matrix bloch_compose_2q(const Bloch2Q& b) {
  Matrix m = Matrix::Identity(4, 4);
  for (int i = 1; i <= 3; ++i) {
    m += b.x(i - 1) * kron(pauli(i), pauli(0));
    m += b.y(i - 1) * kron(pauli(0), pauli(i));
    for (int j = 1; j <= 3; ++j) m += b.R(i - 1, j - 1) * kron(pauli(i), pauli(j));
  }
  return 0.25 * m;
}

double binary_entropy(double p) {
  if (p < 0.0 && p > -1e-12) p = 0.0;
  if (p > 1.0 && p < 1.0 + 1e-12) p = 1.0;
  if (p < 0.0 || p > 1.0) fail(Err::ParamOutOfRange, "binary entropy argument outside [0,1]");
  return -xlog2x(p) - xlog2x(1.0 - p);
}

double shannon_entropy(const RealVector& p) {
  double s = 0.0;
  for (int i = 0; i < p.size(); ++i) s -= xlog2x(std::max(0.0, p(i)));
  return s;
}

double negativity(const DensityMatrix& rho, int dim_a, int dim_b) {
  return 0.5 * (trace_norm(partial_transpose_a(rho.mat(), dim_a, dim_b)) - 1.0);
}

}  // namespace qc
