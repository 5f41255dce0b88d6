#include "qcohere/discord.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace qc {

namespace {

constexpr double kPi = 3.14159265358979323846;

int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("QCOHERE_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
  }
  return static_cast<int>(hw);
}

double median_abs3(double a, double b, double c) {
  double v[3] = {std::abs(a), std::abs(b), std::abs(c)};
  std::sort(v, v + 3);
  return v[1];
}

}  // namespace

std::vector<Matrix> traceless_hermitian_basis(int d) {
  std::vector<Matrix> out;
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Matrix u = Matrix::Zero(d, d);
      u(j, k) = 1.0;
      u(k, j) = 1.0;
      out.push_back(u);
      Matrix v = Matrix::Zero(d, d);
      v(j, k) = Complex(0, -1);
      v(k, j) = Complex(0, 1);
      out.push_back(v);
    }
  }
  for (int l = 1; l < d; ++l) {
    Matrix w = Matrix::Zero(d, d);
    const double norm = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) w(j, j) = norm;
    w(l, l) = -l * norm;
    out.push_back(w);
  }
  return out;
}

Vector3 sweep_direction(double theta, double phi) {
  return Vector3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                 std::cos(theta));
}

Matrix qubit_projector(double theta, double phi, int sign) {
  Vector3 n = sweep_direction(theta, phi);
  Matrix m = pauli(0);
  for (int i = 0; i < 3; ++i) m += sign * n(i) * pauli(i + 1);
  return 0.5 * m;
}

Matrix measure_qubit_a(const Matrix& rho, int dim_b, double theta, double phi) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  const Matrix eye_b = Matrix::Identity(dim_b, dim_b);
  for (int sign : {+1, -1}) {
    Matrix p = kron(qubit_projector(theta, phi, sign), eye_b);
    out += p * rho * p;
  }
  return out;
}

Matrix swap_parties(const Matrix& rho, int dim_a, int dim_b) {
  Matrix out(rho.rows(), rho.cols());
  for (int a = 0; a < dim_a; ++a)
    for (int b = 0; b < dim_b; ++b)
      for (int a2 = 0; a2 < dim_a; ++a2)
        for (int b2 = 0; b2 < dim_b; ++b2)
          out(b * dim_a + a, b2 * dim_a + a2) = rho(a * dim_b + b, a2 * dim_b + b2);
  return out;
}

SweepResult sweep_minimize(const std::function<double(double, double)>& f,
                           const MeasurementSweep& sweep) {
  if (sweep.grid_theta < 8 || sweep.grid_phi < 8)
    fail(Err::ParamOutOfRange, "sweep grid must be at least 8 points per angle");
  const int nt = sweep.grid_theta, np = sweep.grid_phi;
  const int total = nt * np;
  const int workers = std::min(worker_count(), 8);

  struct Cell {
    double value;
    int index;
  };
  std::vector<Cell> best_per_worker(workers, {std::numeric_limits<double>::infinity(), -1});
  auto run = [&](int w) {
    Cell best{std::numeric_limits<double>::infinity(), -1};
    for (int idx = w; idx < total; idx += workers) {
      const int it = idx / np, ip = idx % np;
      const double theta = (it + 0.5) * kPi / nt;
      const double phi = ip * 2.0 * kPi / np;
      const double v = f(theta, phi);
      if (v < best.value || (v == best.value && idx < best.index)) best = {v, idx};
    }
    best_per_worker[w] = best;
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }
  Cell best{std::numeric_limits<double>::infinity(), -1};
  for (const Cell& c : best_per_worker)
    if (c.value < best.value || (c.value == best.value && c.index < best.index)) best = c;

  const double theta0 = (best.index / np + 0.5) * kPi / nt;
  const double phi0 = (best.index % np) * 2.0 * kPi / np;
  RealVector start(2);
  start << theta0, phi0;
  auto g = [&](const RealVector& p) { return f(p(0), p(1)); };
  NelderMeadResult nm = nelder_mead(g, start, 0.5 * kPi / nt, sweep.refine_iters);
  SweepResult out;
  if (nm.value < best.value) {
    out.value = nm.value;
    out.angles = {nm.point(0), nm.point(1)};
  } else {
    out.value = best.value;
    out.angles = {theta0, phi0};
  }
  return out;
}

MeasureResult entropic_discord_2q(const DensityMatrix& rho_ab, Side side,
                                  const MeasurementSweep& sweep) {
  if (rho_ab.dim() != 4) fail(Err::DimensionMismatch, "entropic discord sweep needs two qubits");
  Matrix rho = side == Side::A ? rho_ab.mat() : swap_parties(rho_ab.mat(), 2, 2);
  const Matrix rho_meas = partial_trace_raw(rho, 2, 2, Keep::A);
  const double s_ab = von_neumann_entropy_raw(rho);
  const double s_a = von_neumann_entropy_raw(rho_meas);

  auto cond_entropy = [&](double theta, double phi) {
    double acc = 0.0;
    for (int sign : {+1, -1}) {
      Matrix p = kron(qubit_projector(theta, phi, sign), pauli(0));
      Matrix unnorm = partial_trace_raw(p * rho * p, 2, 2, Keep::B);
      const double prob = unnorm.trace().real();
      if (prob < 1e-14) continue;
      Matrix cond = unnorm / prob;
      // qubit conditional entropy straight from the Bloch length
      double r2 = 0.0;
      for (int i = 1; i <= 3; ++i) {
        const double ri = (cond * pauli(i)).trace().real();
        r2 += ri * ri;
      }
      acc += prob * binary_entropy(0.5 * (1.0 + std::sqrt(std::min(1.0, r2))));
    }
    return acc;
  };
  SweepResult sr = sweep_minimize(cond_entropy, sweep);
  MeasureResult out;
  out.value = std::max(0.0, sr.value - (s_ab - s_a));
  out.method = Method::numeric;
  out.tol = 1e-6;
  out.witness_angles = {{sr.angles.theta, sr.angles.phi}};
  return out;
}

double hs_discord_2q_formula(const DensityMatrix& rho_ab) {
  Bloch2Q b = bloch_decompose_2q(rho_ab);
  Matrix3 k = b.x * b.x.transpose() + b.R * b.R.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix3> es(k);
  return 0.25 * (b.x.squaredNorm() + b.R.squaredNorm() - es.eigenvalues().maxCoeff());
}

double hs_discord_qubit_qutrit_formula(const DensityMatrix& rho_ab) {
  if (rho_ab.dim() != 6) fail(Err::DimensionMismatch, "formula needs a qubit-qutrit state");
  std::vector<Matrix> lam = traceless_hermitian_basis(3);
  Vector3 x;
  Eigen::Matrix<double, 3, 8> r;
  const Matrix eye3 = Matrix::Identity(3, 3);
  for (int i = 1; i <= 3; ++i) {
    x(i - 1) = (rho_ab.mat() * kron(pauli(i), eye3)).trace().real();
    for (int j = 0; j < 8; ++j)
      r(i - 1, j) = (rho_ab.mat() * kron(pauli(i), lam[j])).trace().real();
  }
  Matrix3 k = x * x.transpose() / 6.0 + r * r.transpose() / 4.0;
  Eigen::SelfAdjointEigenSolver<Matrix3> es(k);
  return x.squaredNorm() / 6.0 + 0.25 * r.squaredNorm() - es.eigenvalues().maxCoeff();
}

namespace {

double hs_lower_bound_2xn(const Matrix& rho, int dim_b) {
  // full orthonormal operator correlation matrix; drop the m largest eigenvalues
  std::vector<Matrix> xs, ys;
  xs.push_back(Matrix::Identity(2, 2) / std::sqrt(2.0));
  for (auto& m : traceless_hermitian_basis(2)) xs.push_back(m / std::sqrt(2.0));
  ys.push_back(Matrix::Identity(dim_b, dim_b) / std::sqrt(static_cast<double>(dim_b)));
  for (auto& m : traceless_hermitian_basis(dim_b)) ys.push_back(m / std::sqrt(2.0));
  RealMatrix c(4, dim_b * dim_b);
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = 0; j < ys.size(); ++j)
      c(i, j) = (rho * kron(xs[i], ys[j])).trace().real();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(c * c.transpose());
  RealVector ev = es.eigenvalues();  // ascending
  double bound = 0.0;
  for (int i = 0; i < 2; ++i) bound += ev(i);  // smallest m^2 - m = 2 of the 4
  return bound;
}

}  // namespace

MeasureResult hs_discord(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                         const MeasurementSweep& sweep) {
  if (rho_ab.dim() != dim_a * dim_b) fail(Err::DimensionMismatch, "dimensions do not factor");
  if (dim_a != 2) fail(Err::DimensionMismatch, "measured side must be a qubit");
  MeasureResult out;
  if (dim_b == 2) {
    out.value = hs_discord_2q_formula(rho_ab);
    out.method = Method::analytic;
    out.tol = 1e-12;
    return out;
  }
  if (dim_b == 3) {
    out.value = hs_discord_qubit_qutrit_formula(rho_ab);
    out.method = Method::analytic;
    out.tol = 1e-12;
    return out;
  }
  auto f = [&](double theta, double phi) {
    Matrix post = measure_qubit_a(rho_ab.mat(), dim_b, theta, phi);
    return std::pow(hs_norm(rho_ab.mat() - post), 2.0);
  };
  SweepResult sr = sweep_minimize(f, sweep);
  const double bound = hs_lower_bound_2xn(rho_ab.mat(), dim_b);
  if (sr.value < bound - 1e-9)
    fail(Err::BoundViolation, "HS discord sweep fell below its operator lower bound");
  out.value = sr.value;
  out.method = Method::numeric;
  out.tol = 1e-5;
  out.witness_angles = {{sr.angles.theta, sr.angles.phi}};
  return out;
}

double trace_discord_bell_formula(const BellDiagonalParams& p) {
  return median_abs3(p.c1, p.c2, p.c3);
}

double trace_discord_x_formula(const DensityMatrix& rho_ab) {
  if (!is_x_state(rho_ab)) fail(Err::NotApplicable, "state lacks X structure");
  const Matrix& m = rho_ab.mat();
  const double xi1 = 2.0 * (std::abs(m(1, 2)) + std::abs(m(0, 3)));
  const double xi2 = 2.0 * (std::abs(m(1, 2)) - std::abs(m(0, 3)));
  const double xi3 = 1.0 - 2.0 * (m(1, 1).real() + m(2, 2).real());
  const double xa3 = 2.0 * (m(0, 0).real() + m(1, 1).real()) - 1.0;
  const double xi_max = std::max(xi3 * xi3, xi2 * xi2 + xa3 * xa3);
  const double xi_min = std::min(xi1 * xi1, xi3 * xi3);
  const double denom = xi_max - xi_min + xi1 * xi1 - xi2 * xi2;
  if (std::abs(denom) < 1e-15) return std::sqrt(std::max(0.0, xi_min));
  return std::sqrt(std::max(0.0, (xi1 * xi1 * xi_max - xi2 * xi2 * xi_min) / denom));
}

MeasureResult trace_discord(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                            const MeasurementSweep& sweep) {
  if (rho_ab.dim() != dim_a * dim_b) fail(Err::DimensionMismatch, "dimensions do not factor");
  if (dim_a != 2) fail(Err::DimensionMismatch, "measured side must be a qubit");
  MeasureResult out;
  if (dim_b == 2) {
    if (auto bd = is_bell_diagonal(rho_ab)) {
      out.value = trace_discord_bell_formula(*bd);
      out.method = Method::analytic;
      out.tol = 1e-12;
      return out;
    }
    if (is_x_state(rho_ab)) {
      out.value = trace_discord_x_formula(rho_ab);
      out.method = Method::analytic;
      out.tol = 1e-12;
      return out;
    }
  }
  auto f = [&](double theta, double phi) {
    Matrix post = measure_qubit_a(rho_ab.mat(), dim_b, theta, phi);
    return trace_norm(rho_ab.mat() - post);
  };
  SweepResult sr = sweep_minimize(f, sweep);
  out.value = sr.value;
  out.method = Method::numeric;
  out.tol = 1e-5;
  out.witness_angles = {{sr.angles.theta, sr.angles.phi}};
  return out;
}

TraceCorrelations geometric_classical_total_trace(const BellDiagonalParams& p) {
  double v[3] = {std::abs(p.c1), std::abs(p.c2), std::abs(p.c3)};
  std::sort(v, v + 3);
  const double c_minus = v[0], c_0 = v[1], c_plus = v[2];
  TraceCorrelations out;
  out.classical = c_plus;
  out.total = 0.5 * (c_plus + std::max(c_plus, c_0 + c_minus));
  out.classical_min = std::sqrt(1.0 + c_plus) - 1.0;
  const double d_t = c_0;
  if (out.total > out.classical + d_t + 1e-12)
    fail(Err::BoundViolation, "trace correlations violate superadditivity");
  return out;
}

double bures_fmax_bell_formula(const BellDiagonalParams& p) {
  const double c[3] = {p.c1, p.c2, p.c3};
  double best = -std::numeric_limits<double>::infinity();
  const int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& idx : cyc) {
    const double ci = c[idx[0]], cj = c[idx[1]], ck = c[idx[2]];
    const double t1 = std::sqrt(std::max(0.0, (1 + ci) * (1 + ci) - (cj - ck) * (cj - ck)));
    const double t2 = std::sqrt(std::max(0.0, (1 - ci) * (1 - ci) - (cj + ck) * (cj + ck)));
    best = std::max(best, t1 + t2);
  }
  return 0.5 + 0.25 * best;
}

MeasureResult bures_discord(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                            const MeasurementSweep& sweep) {
  if (rho_ab.dim() != dim_a * dim_b) fail(Err::DimensionMismatch, "dimensions do not factor");
  if (dim_a != 2) fail(Err::DimensionMismatch, "measured side must be a qubit");
  const double norm_const = 2.0 + std::sqrt(2.0);
  MeasureResult out;
  if (dim_b == 2) {
    if (auto bd = is_bell_diagonal(rho_ab)) {
      out.value = norm_const * (1.0 - std::sqrt(bures_fmax_bell_formula(*bd)));
      out.method = Method::analytic;
      out.tol = 1e-12;
      return out;
    }
  }
  const Matrix sr = matrix_sqrt(rho_ab);
  const Matrix eye_b = Matrix::Identity(dim_b, dim_b);
  Vector3 x;
  for (int i = 1; i <= 3; ++i)
    x(i - 1) = (rho_ab.mat() * kron(pauli(i), eye_b)).trace().real();
  auto neg_fmax = [&](double theta, double phi) {
    Vector3 n = sweep_direction(theta, phi);
    Matrix sig_u = Matrix::Zero(2, 2);
    for (int i = 0; i < 3; ++i) sig_u += n(i) * pauli(i + 1);
    Matrix lam = sr * kron(sig_u, eye_b) * sr;
    EigResult e = hermitian_eig(lam);
    double top = 0.0;
    for (int k = 0; k < dim_b; ++k) top += e.values(k);
    const double tr_lam = x.dot(n);
    return -0.5 * (1.0 - tr_lam + 2.0 * top);
  };
  SweepResult sres = sweep_minimize(neg_fmax, sweep);
  const double fmax = std::min(1.0, -sres.value);
  out.value = norm_const * (1.0 - std::sqrt(std::max(0.0, fmax)));
  out.method = Method::numeric;
  out.tol = 1e-5;
  out.witness_angles = {{sres.angles.theta, sres.angles.phi}};
  return out;
}

double hellinger_bell_formula(const BellDiagonalParams& p) {
  Eigen::Vector4d lam = p.eigenvalues();
  double h = 0.0;
  for (int i = 0; i < 4; ++i) h += std::sqrt(std::max(0.0, lam(i)));
  double dmax2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double di = h - 2.0 * std::sqrt(std::max(0.0, lam(3))) - 2.0 * std::sqrt(std::max(0.0, lam(i)));
    dmax2 = std::max(dmax2, di * di);
  }
  return 1.0 - 0.25 * (h * h + dmax2);
}

namespace {

// sqrt(rho) correlation data for the 2 x n Hellinger/skew family
struct SqrtDecomposition {
  double r_norm_sq;          // sum_j gamma_{0j}^2
  Eigen::Matrix3Xd gamma;    // rows i=1..3
  Matrix3 w;                 // W_ij = tr(sqrt(rho) sigma_i x I sqrt(rho) sigma_j x I)
};

SqrtDecomposition sqrt_decomposition(const DensityMatrix& rho_ab, int dim_b) {
  SqrtDecomposition out;
  const Matrix sr = matrix_sqrt(rho_ab);
  const Matrix eye_b = Matrix::Identity(dim_b, dim_b);
  std::vector<Matrix> ys;
  ys.push_back(eye_b / std::sqrt(static_cast<double>(dim_b)));
  for (auto& m : traceless_hermitian_basis(dim_b)) ys.push_back(m / std::sqrt(2.0));
  const int ny = static_cast<int>(ys.size());
  out.gamma.resize(3, ny);
  out.r_norm_sq = 0.0;
  for (int j = 0; j < ny; ++j) {
    const double g0 = (sr * kron(pauli(0) / std::sqrt(2.0), ys[j])).trace().real();
    out.r_norm_sq += g0 * g0;
    for (int i = 1; i <= 3; ++i)
      out.gamma(i - 1, j) = (sr * kron(pauli(i) / std::sqrt(2.0), ys[j])).trace().real();
  }
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      out.w(i - 1, j - 1) = (sr * kron(pauli(i), eye_b) * sr * kron(pauli(j), eye_b)).trace().real();
  return out;
}

}  // namespace

MeasureResult hellinger_discord(const DensityMatrix& rho_ab, int dim_a, int dim_b) {
  if (rho_ab.dim() != dim_a * dim_b) fail(Err::DimensionMismatch, "dimensions do not factor");
  if (dim_a != 2) fail(Err::DimensionMismatch, "measured side must be a qubit");
  SqrtDecomposition dec = sqrt_decomposition(rho_ab, dim_b);
  Eigen::SelfAdjointEigenSolver<Matrix3> es(dec.gamma * dec.gamma.transpose());
  MeasureResult out;
  out.value = std::max(0.0, 1.0 - dec.r_norm_sq - es.eigenvalues().maxCoeff());
  out.method = Method::analytic;
  out.tol = 1e-12;
  return out;
}

MeasureResult lqu(const DensityMatrix& rho_ab, int dim_a, int dim_b) {
  if (rho_ab.dim() != dim_a * dim_b) fail(Err::DimensionMismatch, "dimensions do not factor");
  if (dim_a != 2) fail(Err::DimensionMismatch, "measured side must be a qubit");
  SqrtDecomposition dec = sqrt_decomposition(rho_ab, dim_b);
  Eigen::SelfAdjointEigenSolver<Matrix3> es(dec.w);
  MeasureResult out;
  out.value = std::max(0.0, 1.0 - es.eigenvalues().maxCoeff());
  out.method = Method::analytic;
  out.tol = 1e-12;
  return out;
}

RelEntropyDiscordBell rel_entropy_discord_bell(const BellDiagonalParams& p) {
  if (!p.is_psd()) fail(Err::NotPSD, "Bell-diagonal triple gives a negative eigenvalue");
  std::vector<Matrix> proj(4);
  for (int i = 0; i < 4; ++i) proj[i] = bell_state(i).projector().mat();
  std::vector<std::pair<double, int>> spect(4);
  DensityMatrix rho = bell_diagonal(p);
  for (int i = 0; i < 4; ++i) {
    const double v = (proj[i] * rho.mat()).trace().real();
    spect[i] = {v, i};
  }
  std::stable_sort(spect.begin(), spect.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  const double q = spect[0].first + spect[1].first;
  Matrix chi_rho = 0.5 * q * (proj[spect[0].second] + proj[spect[1].second]) +
                   0.5 * (1.0 - q) * (proj[spect[2].second] + proj[spect[3].second]);

  const double l1 = spect[0].first;
  Eigen::Vector4d ps;
  if (l1 >= 1.0 - 1e-14) {
    ps << 0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0;
  } else {
    ps(0) = 0.5;
    for (int i = 1; i < 4; ++i) ps(i) = spect[i].first / (2.0 * (1.0 - l1));
  }
  Matrix sigma = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) sigma += ps(i) * proj[spect[i].second];

  const double q_sigma = ps(0) + ps(1);
  Matrix chi_sigma = 0.5 * q_sigma * (proj[spect[0].second] + proj[spect[1].second]) +
                     0.5 * (1.0 - q_sigma) * (proj[spect[2].second] + proj[spect[3].second]);

  RelEntropyDiscordBell out;
  out.discord = von_neumann_entropy_raw(chi_rho) - von_neumann_entropy(rho);
  out.dissonance = von_neumann_entropy_raw(chi_sigma) - von_neumann_entropy_raw(sigma);
  out.closest_classical = chi_rho;
  out.closest_separable = sigma;
  return out;
}

MeasureResult one_way_deficit(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                              const MeasurementSweep& sweep) {
  if (rho_ab.dim() != dim_a * dim_b) fail(Err::DimensionMismatch, "dimensions do not factor");
  if (dim_a != 2) fail(Err::DimensionMismatch, "measured side must be a qubit");
  const double s_rho = von_neumann_entropy(rho_ab);
  auto f = [&](double theta, double phi) {
    return von_neumann_entropy_raw(measure_qubit_a(rho_ab.mat(), dim_b, theta, phi));
  };
  SweepResult sr = sweep_minimize(f, sweep);
  MeasureResult out;
  out.value = std::max(0.0, sr.value - s_rho);
  out.method = Method::numeric;
  out.tol = 1e-6;
  out.witness_angles = {{sr.angles.theta, sr.angles.phi}};
  return out;
}

MeasureResult zero_way_deficit(const DensityMatrix& rho_ab, const MeasurementSweep& sweep) {
  if (rho_ab.dim() != 4) fail(Err::DimensionMismatch, "two-sided deficit implemented for two qubits");
  Bloch2Q bl = bloch_decompose_2q(rho_ab);
  const double s_rho = von_neumann_entropy(rho_ab);

  auto joint_entropy = [&](const Vector3& na, const Vector3& nb) {
    double h = 0.0;
    for (int a : {+1, -1})
      for (int b : {+1, -1}) {
        const double pab =
            0.25 * (1.0 + a * bl.x.dot(na) + b * bl.y.dot(nb) + a * b * na.dot(bl.R * nb));
        if (pab > 1e-15) h -= pab * std::log2(pab);
      }
    return h;
  };

  // alternate one-sided sweeps from several B-direction starts, then refine jointly
  double best = std::numeric_limits<double>::infinity();
  RealVector best_angles(4);
  const Vector3 starts[] = {Vector3(0, 0, 1), Vector3(1, 0, 0), Vector3(0, 1, 0),
                            Vector3(1, 1, 1).normalized(), Vector3(1, -1, 0.5).normalized()};
  MeasurementSweep one_side{std::max(8, sweep.grid_theta / 2), std::max(8, sweep.grid_phi / 2), 60};
  for (const Vector3& nb0 : starts) {
    Vector3 nb = nb0;
    QubitProjectivePair pa{0, 0}, pb{std::acos(nb(2)), std::atan2(nb(1), nb(0))};
    double cur = std::numeric_limits<double>::infinity();
    for (int round = 0; round < 4; ++round) {
      SweepResult ra = sweep_minimize(
          [&](double t, double p) { return joint_entropy(sweep_direction(t, p), nb); }, one_side);
      pa = ra.angles;
      const Vector3 na = sweep_direction(pa.theta, pa.phi);
      SweepResult rb = sweep_minimize(
          [&](double t, double p) { return joint_entropy(na, sweep_direction(t, p)); }, one_side);
      pb = rb.angles;
      nb = sweep_direction(pb.theta, pb.phi);
      if (std::abs(rb.value - cur) < 1e-12) break;
      cur = rb.value;
    }
    RealVector joint(4);
    joint << pa.theta, pa.phi, pb.theta, pb.phi;
    NelderMeadResult nm = nelder_mead(
        [&](const RealVector& v) {
          return joint_entropy(sweep_direction(v(0), v(1)), sweep_direction(v(2), v(3)));
        },
        joint, 0.02, sweep.refine_iters);
    if (nm.value < best) {
      best = nm.value;
      best_angles = nm.point;
    }
  }
  MeasureResult out;
  out.value = std::max(0.0, best - s_rho);
  out.method = Method::numeric;
  out.tol = 1e-6;
  out.witness_angles = {{best_angles(0), best_angles(1), best_angles(2), best_angles(3)}};
  return out;
}

MeasureResult negativity_of_quantumness(const DensityMatrix& rho_ab, int dim_a, int dim_b,
                                        Side side, const MeasurementSweep& sweep) {
  if (rho_ab.dim() != dim_a * dim_b) fail(Err::DimensionMismatch, "dimensions do not factor");
  MeasureResult base;
  if (side == Side::A) {
    if (dim_a != 2) fail(Err::DimensionMismatch, "measured side must be a qubit");
    base = trace_discord(rho_ab, dim_a, dim_b, sweep);
  } else {
    if (dim_b != 2) fail(Err::DimensionMismatch, "measured side must be a qubit");
    DensityMatrix swapped(swap_parties(rho_ab.mat(), dim_a, dim_b));
    base = trace_discord(swapped, dim_b, dim_a, sweep);
  }
  base.value *= 0.5;
  return base;
}

NoncommutativityResult noncommutativity_discord(const DensityMatrix& rho_ab, int dim_a, int dim_b) {
  if (rho_ab.dim() != dim_a * dim_b) fail(Err::DimensionMismatch, "dimensions do not factor");
  // blocks <i_B| rho |j_B> act on A; their mutual commutativity is the
  // vanishing condition for the A-side discord
  std::vector<Matrix> blocks;
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j) {
      Matrix a(dim_a, dim_a);
      for (int p = 0; p < dim_a; ++p)
        for (int q = 0; q < dim_a; ++q) a(p, q) = rho_ab.mat()(p * dim_b + i, q * dim_b + j);
      blocks.push_back(a);
    }
  NoncommutativityResult out{0.0, 0.0};
  for (size_t a = 0; a < blocks.size(); ++a)
    for (size_t b = a + 1; b < blocks.size(); ++b) {
      Matrix comm = blocks[a] * blocks[b] - blocks[b] * blocks[a];
      out.trace_norm_value += trace_norm(comm);
      out.hs_norm_value += hs_norm(comm);
    }
  return out;
}

double tsallis_entropy(const Matrix& rho, double q) {
  EigResult e = hermitian_eig(rho);
  double s = 0.0;
  for (int i = 0; i < e.values.size(); ++i) s += std::pow(std::max(0.0, e.values(i)), q);
  return (1.0 - s) / (q - 1.0);
}

MeasureResult q_discord(const DensityMatrix& rho_ab, int dim_a, int dim_b, double q,
                        const MeasurementSweep& sweep) {
  if (q <= 0.0 || q == 1.0) fail(Err::ParamOutOfRange, "Tsallis order must be positive and not 1");
  if (rho_ab.dim() != dim_a * dim_b) fail(Err::DimensionMismatch, "dimensions do not factor");
  if (dim_a != 2) fail(Err::DimensionMismatch, "measured side must be a qubit");
  const double s_rho = tsallis_entropy(rho_ab.mat(), q);
  auto f = [&](double theta, double phi) {
    return tsallis_entropy(measure_qubit_a(rho_ab.mat(), dim_b, theta, phi), q);
  };
  SweepResult sr = sweep_minimize(f, sweep);
  MeasureResult out;
  out.value = std::max(0.0, sr.value - s_rho);
  out.method = Method::numeric;
  out.tol = 1e-6;
  out.witness_angles = {{sr.angles.theta, sr.angles.phi}};
  return out;
}

}  // namespace qc
