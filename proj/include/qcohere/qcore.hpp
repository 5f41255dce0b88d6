#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

inline constexpr double kHermTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;

enum class Err {
  NotHermitian,
  NoConvergence,
  DimensionMismatch,
  NotPSD,
  ParamOutOfRange,
  NotBellDiagonal,
  BoundViolation,
  OptimizerStalled,
  SingularDiagonal,
  NoSolution,
  NotUnitary,
  NotMUB,
  InvalidGram,
  TruncationInsufficient,
  NotApplicable,
  ZeroLQU,
  ParseError,
};

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

const char* err_name(Err code);

/// Validated density operator: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m);
  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& mat() const { return mat_; }

 private:
  Matrix mat_;
};

/// Normalized state vector.
class PureState {
 public:
  explicit PureState(Vector amps);
  int dim() const { return static_cast<int>(amps_.size()); }
  const Vector& amps() const { return amps_; }
  DensityMatrix projector() const;

 private:
  Vector amps_;
};

/// Orthonormal basis fixing the incoherent set; columns are the basis vectors.
class ReferenceBasis {
 public:
  explicit ReferenceBasis(Matrix vectors);
  static ReferenceBasis computational(int dim);
  int dim() const { return static_cast<int>(vectors_.cols()); }
  const Matrix& vectors() const { return vectors_; }
  bool is_computational() const;
  /// Matrix of rho expressed in this basis, (B^dag rho B).
  Matrix to_basis(const Matrix& rho) const;

 private:
  Matrix vectors_;
};

struct Bloch2Q {
  Vector3 x;
  Vector3 y;
  Matrix3 R;
};

struct EigResult {
  RealVector values;   // descending
  Matrix vectors;      // columns match values
};

/// Cyclic complex Jacobi eigendecomposition for Hermitian matrices.
EigResult hermitian_eig(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix matrix_sqrt(const DensityMatrix& rho);
Matrix matrix_sqrt_of(const Matrix& hermitian_psd);

enum class Keep { A, B };
DensityMatrix partial_trace(const DensityMatrix& rho, int dim_a, int dim_b, Keep keep);
Matrix partial_trace_raw(const Matrix& m, int dim_a, int dim_b, Keep keep);
Matrix partial_transpose_a(const Matrix& m, int dim_a, int dim_b);

double trace_norm(const Matrix& m);
double hs_norm(const Matrix& m);
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double fidelity_raw(const Matrix& rho, const Matrix& sigma);
/// Relative entropy S(rho||sigma) in bits; +inf when supp(rho) escapes supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy_raw(const Matrix& rho);

DensityMatrix dephase(const DensityMatrix& rho, const ReferenceBasis& basis);
Matrix dephase_raw(const Matrix& rho, const ReferenceBasis& basis);
Matrix dephase_computational(const Matrix& rho);

Bloch2Q bloch_decompose_2q(const DensityMatrix& rho);
Matrix bloch_compose_2q(const Bloch2Q& b);

const Matrix& pauli(int i);  // 0 = identity, 1..3 = sigma_x,y,z

double binary_entropy(double p);          // H(p), base 2
double shannon_entropy(const RealVector& p);  // base 2

bool is_hermitian(const Matrix& m, double tol = kHermTol);
bool is_unitary(const Matrix& m, double tol = 1e-10);

/// Negativity (|rho^{T_A}|_1 - 1)/2 of a bipartite state.
double negativity(const DensityMatrix& rho, int dim_a, int dim_b);

}  // namespace qc
