#include "qcohere/min_measures.hpp"

#include <cmath>

namespace qc {

namespace {

// Bloch vector of the qubit marginal on the measured side.
Vector3 marginal_bloch(const DensityMatrix& rho_ab, int dim_b) {
  Matrix ma = partial_trace_raw(rho_ab.mat(), 2, dim_b, Keep::A);
  Vector3 x;
  for (int i = 1; i <= 3; ++i) x(i - 1) = (ma * pauli(i)).trace().real();
  return x;
}

// x-normalized operator correlation matrix (rows sigma_i/sqrt2, cols full B set)
Eigen::Matrix3Xd x_basis_correlation(const Matrix& m, int dim_b) {
  std::vector<Matrix> ys;
  ys.push_back(Matrix::Identity(dim_b, dim_b) / std::sqrt(static_cast<double>(dim_b)));
  for (auto& y : traceless_hermitian_basis(dim_b)) ys.push_back(y / std::sqrt(2.0));
  Eigen::Matrix3Xd r(3, static_cast<int>(ys.size()));
  for (int i = 1; i <= 3; ++i)
    for (size_t j = 0; j < ys.size(); ++j)
      r(i - 1, static_cast<int>(j)) = (m * kron(pauli(i) / std::sqrt(2.0), ys[j])).trace().real();
  return r;
}

Matrix3 skew_w_matrix(const DensityMatrix& rho_ab, int dim_b) {
  const Matrix sr = matrix_sqrt(rho_ab);
  const Matrix eye_b = Matrix::Identity(dim_b, dim_b);
  Matrix3 w;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      w(i - 1, j - 1) = (sr * kron(pauli(i), eye_b) * sr * kron(pauli(j), eye_b)).trace().real();
  return w;
}

}  // namespace

MeasureResult hs_min(const DensityMatrix& rho_ab, int dim_a, int dim_b) {
  if (rho_ab.dim() != dim_a * dim_b) fail(Err::DimensionMismatch, "dimensions do not factor");
  if (dim_a != 2) fail(Err::DimensionMismatch, "measured side must be a qubit");
  Eigen::Matrix3Xd r = x_basis_correlation(rho_ab.mat(), dim_b);
  // drop the identity column: MIN only sees the traceless block
  Eigen::Matrix3Xd rt = r.rightCols(r.cols() - 1);
  Matrix3 rrt = rt * rt.transpose();
  Vector3 x = marginal_bloch(rho_ab, dim_b);
  MeasureResult out;
  out.method = Method::analytic;
  out.tol = 1e-12;
  if (x.norm() > 1e-9) {
    Vector3 xh = x.normalized();
    out.value = rrt.trace() - xh.dot(rrt * xh);
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix3> es(rrt);
    out.value = rrt.trace() - es.eigenvalues().minCoeff();
  }
  out.value = std::max(0.0, out.value);
  return out;
}

MeasureResult trace_min(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                        const MeasurementSweep& sweep) {
  if (rho_ab.dim() != dim_a * dim_b) fail(Err::DimensionMismatch, "dimensions do not factor");
  if (dim_a != 2) fail(Err::DimensionMismatch, "measured side must be a qubit");
  Vector3 x = marginal_bloch(rho_ab, dim_b);
  MeasureResult out;
  if (x.norm() > 1e-8) {
    // nondegenerate marginal: the only invariant measurement is its eigenbasis
    const double theta = std::acos(std::clamp(x(2) / x.norm(), -1.0, 1.0));
    const double phi = std::atan2(x(1), x(0));
    Matrix post = measure_qubit_a(rho_ab.mat(), dim_b, theta, phi);
    out.value = trace_norm(rho_ab.mat() - post);
    out.method = Method::analytic;
    out.tol = 1e-12;
    out.witness_angles = {{theta, phi}};
    return out;
  }
  if (dim_b == 2) {
    if (auto bd = is_bell_diagonal(rho_ab)) {
      double v[3] = {std::abs(bd->c1), std::abs(bd->c2), std::abs(bd->c3)};
      out.value = *std::max_element(v, v + 3);
      out.method = Method::analytic;
      out.tol = 1e-12;
      return out;
    }
  }
  auto f = [&](double theta, double phi) {
    Matrix post = measure_qubit_a(rho_ab.mat(), dim_b, theta, phi);
    return -trace_norm(rho_ab.mat() - post);
  };
  SweepResult sr = sweep_minimize(f, sweep);
  out.value = -sr.value;
  out.method = Method::numeric;
  out.tol = 1e-5;
  out.witness_angles = {{sr.angles.theta, sr.angles.phi}};
  return out;
}

MeasureResult bures_min_bell(const BellDiagonalParams& p) {
  if (!p.is_psd()) fail(Err::NotPSD, "Bell-diagonal triple gives a negative eigenvalue");
  const double c_sum = p.c1 + p.c2 + p.c3;
  const double c[3] = {p.c1, p.c2, p.c3};
  double root_sum = 0.0;
  for (int k = 0; k < 3; ++k) root_sum += std::sqrt(std::max(0.0, 1.0 + c_sum - 2.0 * c[k]));
  const double t0 = 0.125 * std::sqrt(std::max(0.0, 1.0 - c_sum)) + 0.125 * root_sum;
  double b_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    const double ti = -0.125 * std::sqrt(std::max(0.0, 1.0 - c_sum)) + 0.125 * root_sum -
                      0.25 * std::sqrt(std::max(0.0, 1.0 + c_sum - 2.0 * c[i]));
    const double bi = 8.0 * (t0 * t0 + ti * ti) - 1.0;
    b_min = std::min(b_min, std::abs(bi));
  }
  const double f_min = 0.5 * (1.0 + b_min);
  MeasureResult out;
  out.value = 1.0 - std::sqrt(std::min(1.0, f_min));
  out.method = Method::analytic;
  out.tol = 1e-12;
  return out;
}

double bures_fmin_sweep(const DensityMatrix& rho_ab, int dim_b, const MeasurementSweep& sweep) {
  const Matrix sr = matrix_sqrt(rho_ab);
  const Matrix eye_b = Matrix::Identity(dim_b, dim_b);
  Vector3 x = marginal_bloch(rho_ab, dim_b);
  auto fval = [&](double theta, double phi) {
    Vector3 n = sweep_direction(theta, phi);
    Matrix sig_u = Matrix::Zero(2, 2);
    for (int i = 0; i < 3; ++i) sig_u += n(i) * pauli(i + 1);
    Matrix lam = sr * kron(sig_u, eye_b) * sr;
    EigResult e = hermitian_eig(lam);
    double top = 0.0;
    for (int k = 0; k < dim_b; ++k) top += e.values(k);
    return 0.5 * (1.0 - x.dot(n) + 2.0 * top);
  };
  SweepResult res = sweep_minimize(fval, sweep);
  return res.value;
}

double rel_entropy_min_bell_formula(const BellDiagonalParams& p) {
  const double c_sum = p.c1 + p.c2 + p.c3;
  const double c[3] = {std::abs(p.c1), std::abs(p.c2), std::abs(p.c3)};
  const double c_minus = std::min({c[0], c[1], c[2]});
  double val = 1.0 + binary_entropy(0.5 * (1.0 + c_minus));
  auto term = [](double w) { return w > 0.0 ? w * std::log2(w) : 0.0; };
  val += term(0.25 * (1.0 - c_sum));
  const double cs[3] = {p.c1, p.c2, p.c3};
  for (int k = 0; k < 3; ++k) val += term(0.25 * (1.0 + c_sum - 2.0 * cs[k]));
  return val;
}

MeasureResult rel_entropy_min(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                              const MeasurementSweep& sweep) {
  if (rho_ab.dim() != dim_a * dim_b) fail(Err::DimensionMismatch, "dimensions do not factor");
  if (dim_a != 2) fail(Err::DimensionMismatch, "measured side must be a qubit");
  const double s_rho = von_neumann_entropy(rho_ab);
  Vector3 x = marginal_bloch(rho_ab, dim_b);
  MeasureResult out;
  if (x.norm() > 1e-8) {
    const double theta = std::acos(std::clamp(x(2) / x.norm(), -1.0, 1.0));
    const double phi = std::atan2(x(1), x(0));
    out.value = von_neumann_entropy_raw(measure_qubit_a(rho_ab.mat(), dim_b, theta, phi)) - s_rho;
    out.method = Method::analytic;
    out.tol = 1e-12;
    out.witness_angles = {{theta, phi}};
  } else {
    auto f = [&](double theta, double phi) {
      return -von_neumann_entropy_raw(measure_qubit_a(rho_ab.mat(), dim_b, theta, phi));
    };
    SweepResult sr = sweep_minimize(f, sweep);
    out.value = -sr.value - s_rho;
    out.method = Method::numeric;
    out.tol = 1e-6;
    out.witness_angles = {{sr.angles.theta, sr.angles.phi}};
  }
  out.value = std::max(0.0, out.value);

  const Matrix mb = partial_trace_raw(rho_ab.mat(), 2, dim_b, Keep::B);
  const Matrix ma = partial_trace_raw(rho_ab.mat(), 2, dim_b, Keep::A);
  const double s_a = von_neumann_entropy_raw(ma);
  const double s_b = von_neumann_entropy_raw(mb);
  const double mutual = s_a + s_b - s_rho;
  const double upper = std::min(mutual, s_a);
  if (out.value > upper + 1e-8)
    fail(Err::BoundViolation, "relative-entropy MIN exceeds min{I, S(rho_A)}");
  if (out.value < -(s_rho - s_b) - 1e-8)
    fail(Err::BoundViolation, "relative-entropy MIN below -S(A|B)");
  return out;
}

MeasureResult skew_min(const DensityMatrix& rho_ab, int dim_a, int dim_b) {
  if (rho_ab.dim() != dim_a * dim_b) fail(Err::DimensionMismatch, "dimensions do not factor");
  if (dim_a != 2) fail(Err::DimensionMismatch, "measured side must be a qubit");
  Matrix3 w = skew_w_matrix(rho_ab, dim_b);
  Vector3 x = marginal_bloch(rho_ab, dim_b);
  MeasureResult out;
  out.method = Method::analytic;
  out.tol = 1e-12;
  if (x.norm() > 1e-8) {
    Vector3 xh = x.normalized();
    out.value = 0.5 * (1.0 - xh.dot(w * xh));
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix3> es(w);
    out.value = 0.5 * (1.0 - es.eigenvalues().minCoeff());
  }
  out.value = std::max(0.0, out.value);

  // upper bound from the sqrt(rho) correlation spectrum
  const Matrix sr = matrix_sqrt(rho_ab);
  std::vector<Matrix> ys;
  ys.push_back(Matrix::Identity(dim_b, dim_b) / std::sqrt(static_cast<double>(dim_b)));
  for (auto& y : traceless_hermitian_basis(dim_b)) ys.push_back(y / std::sqrt(2.0));
  Eigen::MatrixXd gamma(4, static_cast<int>(ys.size()));
  for (int i = 0; i <= 3; ++i)
    for (size_t j = 0; j < ys.size(); ++j)
      gamma(i, static_cast<int>(j)) =
          (sr * kron(pauli(i) / std::sqrt(2.0), ys[j])).trace().real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma * gamma.transpose());
  const double mu1 = es.eigenvalues().maxCoeff();
  if (out.value > 1.0 - mu1 + 1e-9)
    fail(Err::BoundViolation, "skew MIN exceeds its correlation-spectrum bound");
  return out;
}

MeasureResult uin(const DensityMatrix& rho_ab, int dim_a, int dim_b) {
  if (rho_ab.dim() != dim_a * dim_b) fail(Err::DimensionMismatch, "dimensions do not factor");
  if (dim_a != 2) fail(Err::DimensionMismatch, "measured side must be a qubit");
  Matrix3 w = skew_w_matrix(rho_ab, dim_b);
  Vector3 x = marginal_bloch(rho_ab, dim_b);
  MeasureResult out;
  out.method = Method::analytic;
  out.tol = 1e-12;
  if (x.norm() > 1e-8) {
    Vector3 xh = x.normalized();
    out.value = 1.0 - xh.dot(w * xh);
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix3> es(w);
    out.value = 1.0 - es.eigenvalues().minCoeff();
  }
  out.value = std::max(0.0, out.value);
  return out;
}

MeasureResult symmetric_hs_min_2q(const DensityMatrix& rho_ab, const MeasurementSweep& sweep) {
  if (rho_ab.dim() != 4) fail(Err::DimensionMismatch, "two-sided MIN implemented for two qubits");
  Bloch2Q bl = bloch_decompose_2q(rho_ab);
  const double purity = (rho_ab.mat() * rho_ab.mat()).trace().real();

  auto post_purity = [&](const Vector3& na, const Vector3& nb) {
    double s = 0.0;
    for (int a : {+1, -1})
      for (int b : {+1, -1}) {
        const double pab =
            0.25 * (1.0 + a * bl.x.dot(na) + b * bl.y.dot(nb) + a * b * na.dot(bl.R * nb));
        s += pab * pab;
      }
    return s;
  };

  const bool a_free = bl.x.norm() <= 1e-8;
  const bool b_free = bl.y.norm() <= 1e-8;
  const Vector3 na_fixed = a_free ? Vector3(0, 0, 1) : bl.x.normalized();
  const Vector3 nb_fixed = b_free ? Vector3(0, 0, 1) : bl.y.normalized();

  double best = std::numeric_limits<double>::infinity();
  if (!a_free && !b_free) {
    best = post_purity(na_fixed, nb_fixed);
  } else {
    const Vector3 seeds[] = {Vector3(0, 0, 1), Vector3(1, 0, 0), Vector3(0, 1, 0),
                             Vector3(1, 1, 1).normalized()};
    MeasurementSweep side{std::max(8, sweep.grid_theta / 2), std::max(8, sweep.grid_phi / 2), 80};
    for (const Vector3& seed : seeds) {
      Vector3 na = a_free ? seed : na_fixed;
      Vector3 nb = b_free ? seed : nb_fixed;
      for (int round = 0; round < 4; ++round) {
        if (a_free) {
          SweepResult ra = sweep_minimize(
              [&](double t, double p) { return post_purity(sweep_direction(t, p), nb); }, side);
          na = sweep_direction(ra.angles.theta, ra.angles.phi);
        }
        if (b_free) {
          SweepResult rb = sweep_minimize(
              [&](double t, double p) { return post_purity(na, sweep_direction(t, p)); }, side);
          nb = sweep_direction(rb.angles.theta, rb.angles.phi);
        }
      }
      best = std::min(best, post_purity(na, nb));
    }
  }
  MeasureResult out;
  out.value = std::max(0.0, purity - best);
  out.method = Method::numeric;
  out.tol = 1e-6;
  return out;
}

bool hs_min_is_null(const DensityMatrix& rho_ab, int dim_a, int dim_b, double tol) {
  if (rho_ab.dim() != dim_a * dim_b) fail(Err::DimensionMismatch, "dimensions do not factor");
  // blocks A_ij = <i_B| rho |j_B> acting on A
  std::vector<Matrix> blocks;
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j) {
      Matrix a = Matrix::Zero(dim_a, dim_a);
      for (int p = 0; p < dim_a; ++p)
        for (int q = 0; q < dim_a; ++q) a(p, q) = rho_ab.mat()(p * dim_b + i, q * dim_b + j);
      blocks.push_back(a);
    }
  for (size_t s = 0; s < blocks.size(); ++s) {
    Matrix norm_comm = blocks[s] * blocks[s].adjoint() - blocks[s].adjoint() * blocks[s];
    if (norm_comm.cwiseAbs().maxCoeff() > tol) return false;
    for (size_t t = s + 1; t < blocks.size(); ++t) {
      Matrix comm = blocks[s] * blocks[t] - blocks[t] * blocks[s];
      if (comm.cwiseAbs().maxCoeff() > tol) return false;
    }
  }
  Matrix ma = partial_trace_raw(rho_ab.mat(), dim_a, dim_b, Keep::A);
  EigResult e = hermitian_eig(ma);
  int start = 0;
  for (int i = 1; i <= dim_a; ++i) {
    if (i < dim_a && std::abs(e.values(i) - e.values(i - 1)) <= tol) continue;
    const int len = i - start;
    Matrix p = Matrix::Zero(dim_a, dim_a);
    for (int k = start; k < i; ++k) p += e.vectors.col(k) * e.vectors.col(k).adjoint();
    for (const Matrix& a : blocks) {
      Matrix leak = (Matrix::Identity(dim_a, dim_a) - p) * a * p;
      if (leak.cwiseAbs().maxCoeff() > tol) return false;
      Matrix inside = p * a * p;
      const Complex scale = inside.trace() / static_cast<double>(len);
      if ((inside - scale * p).cwiseAbs().maxCoeff() > tol) return false;
    }
    start = i;
  }
  return true;
}

}  // namespace qc
