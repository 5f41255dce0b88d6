#include "qcohere/protocols.hpp"

#include <cmath>

namespace qc {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

DQC1Instance::DQC1Instance(int n_qubits, Matrix unitary) : n(n_qubits), u(std::move(unitary)) {
  if (n < 1) fail(Err::ParamOutOfRange, "register needs at least one qubit");
  if (u.rows() != (1l << n)) fail(Err::DimensionMismatch, "unitary dimension is not 2^n");
  if (!is_unitary(u)) fail(Err::NotUnitary, "matrix is not unitary within 1e-10");
}

double dqc1_coherence_consumption(const DQC1Instance& inst) {
  const double dim = std::pow(2.0, inst.n);
  const double tau = std::abs(inst.u.trace()) / dim;
  const double formula = binary_entropy(0.5 * (1.0 - tau));

  // cross-check against the ancilla coherence difference
  Matrix rho_a(2, 2);
  rho_a << 0.5, 0.5, 0.5, 0.5;
  Matrix rho_tilde(2, 2);
  rho_tilde << 0.5, 0.5 * std::conj(inst.u.trace()) / dim, 0.5 * inst.u.trace() / dim, 0.5;
  const double diff = c_rel_entropy_value(rho_a) - c_rel_entropy_value(rho_tilde);
  if (std::abs(diff - formula) > 1e-10)
    fail(Err::BoundViolation, "consumption formula disagrees with the ancilla coherence drop");
  return formula;
}

GroverInstance::GroverInstance(long n, long j, long r) : n_database(n), n_solutions(j), iterations(r) {
  if (j < 1 || j >= n) fail(Err::ParamOutOfRange, "solution count must satisfy 1 <= j < N");
  if (r < 0) fail(Err::ParamOutOfRange, "iteration count must be nonnegative");
}

namespace {

double grover_angle(const GroverInstance& inst) {
  const double jj = static_cast<double>(inst.n_solutions);
  const double nn = static_cast<double>(inst.n_database);
  return (2.0 * inst.iterations + 1.0) * std::atan(std::sqrt(jj / (nn - jj)));
}

}  // namespace

PureState grover_state(const GroverInstance& inst) {
  const double alpha = grover_angle(inst);
  const long n = inst.n_database, j = inst.n_solutions;
  Vector v(n);
  const double amp_sol = std::sin(alpha) / std::sqrt(static_cast<double>(j));
  const double amp_rest = std::cos(alpha) / std::sqrt(static_cast<double>(n - j));
  for (long i = 0; i < n; ++i) v(i) = i < j ? amp_sol : amp_rest;
  v /= v.norm();
  return PureState(v);
}

double grover_success(const GroverInstance& inst) {
  const double s = std::sin(grover_angle(inst));
  return s * s;
}

double grover_coherence(const GroverInstance& inst, GroverCoherenceKind kind) {
  const double p = grover_success(inst);
  const double jj = static_cast<double>(inst.n_solutions);
  const double nn = static_cast<double>(inst.n_database);
  if (kind == GroverCoherenceKind::rel_entropy) {
    return std::max(0.0, binary_entropy(p) + std::log2(nn - jj) + p * std::log2(jj / (nn - jj)));
  }
  const double amp = std::sqrt(jj * p) + std::sqrt((nn - jj) * (1.0 - p));
  return std::max(0.0, amp * amp - 1.0);
}

long grover_r_opt(long n, long j) {
  const double theta = std::atan(std::sqrt(static_cast<double>(j) / (n - j)));
  const long window = static_cast<long>(std::ceil(kPi * std::sqrt(static_cast<double>(n) / j))) + 1;
  long best_r = 0;
  double best_p = -1.0;
  for (long r = 0; r <= window; ++r) {
    const double s = std::sin((2.0 * r + 1.0) * theta);
    if (s * s > best_p + 1e-15) {
      best_p = s * s;
      best_r = r;
    }
  }
  return best_r;
}

long grover_r_opt_closed_form(long n, long j) {
  const double alpha = 2.0 * std::atan(std::sqrt(static_cast<double>(j) / (n - j)));
  return std::lround((kPi - alpha) / (2.0 * alpha));
}

TeleportBounds teleport_fidelity_bounds(const DensityMatrix& rho_ab) {
  if (rho_ab.dim() != 4) fail(Err::DimensionMismatch, "teleportation bounds need two qubits");
  Bloch2Q b = bloch_decompose_2q(rho_ab);
  Eigen::JacobiSVD<Matrix3> svd(b.R);
  const double sv_sum = svd.singularValues().sum();
  TeleportBounds out;
  out.fidelity = 0.5 + sv_sum / 6.0;
  Matrix3 rrt = b.R * b.R.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix3> es(rrt);
  const double dg_max = (rrt.trace() - es.eigenvalues().maxCoeff()) / 3.0;
  out.lower = 0.5 * (1.0 + dg_max);
  const double dg_norm = 2.0 * hs_discord_2q_formula(rho_ab);
  out.upper = (2.0 + std::sqrt(std::max(0.0, dg_norm))) / 3.0;
  if (out.fidelity < out.lower - 1e-9 || out.fidelity > out.upper + 1e-9)
    fail(Err::BoundViolation, "average fidelity exits its discord bracket");
  return out;
}

double rsp_fidelity(const DensityMatrix& rho_ab) {
  if (rho_ab.dim() != 4) fail(Err::DimensionMismatch, "remote-state-preparation fidelity needs two qubits");
  Bloch2Q b = bloch_decompose_2q(rho_ab);
  Matrix3 rtr = b.R.transpose() * b.R;
  Eigen::SelfAdjointEigenSolver<Matrix3> es(rtr);  // ascending
  const double value = 0.5 * (es.eigenvalues()(0) + es.eigenvalues()(1));

  Matrix3 rrt = b.R * b.R.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix3> er(rrt);
  const bool x_zero = b.x.norm() < 1e-12;
  const bool aligned =
      !x_zero && std::abs(std::abs(b.x.normalized().dot(er.eigenvectors().col(2))) - 1.0) < 1e-10;
  if (x_zero || aligned) {
    const double dg = hs_discord_2q_formula(rho_ab);
    if (std::abs(dg - 0.5 * value) > 1e-8)
      fail(Err::BoundViolation, "aligned-Bloch identity between discord and RSP fidelity failed");
  }
  return value;
}

double phase_estimation_bound(const DensityMatrix& rho_ab, int dim_a, int dim_b) {
  MeasureResult u = lqu(rho_ab, dim_a, dim_b);
  if (u.value < 1e-12) fail(Err::ZeroLQU, "local quantum uncertainty vanishes; no finite bound");
  return 1.0 / (4.0 * u.value);
}

std::vector<Matrix> pauli_mub_qubit() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix z = Matrix::Identity(2, 2);
  Matrix x(2, 2), y(2, 2);
  x << s, s, s, -s;
  y << s, s, Complex(0, s), Complex(0, -s);
  return {z, x, y};
}

std::vector<Matrix> mub_prime(int d) {
  if (d < 2) fail(Err::ParamOutOfRange, "dimension must be at least 2");
  if (d == 2) return pauli_mub_qubit();
  for (int f = 2; f * f <= d; ++f)
    if (d % f == 0) fail(Err::ParamOutOfRange, "construction needs a prime dimension");
  std::vector<Matrix> out;
  out.push_back(Matrix::Identity(d, d));
  for (int j = 0; j < d; ++j) {
    Matrix b(d, d);
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        const int expo = (k * l + j * l * l) % d;
        b(l, k) = std::exp(Complex(0, 2.0 * kPi * expo / d)) / std::sqrt(static_cast<double>(d));
      }
    out.push_back(b);
  }
  return out;
}

MubReport mub_complementarity(const DensityMatrix& rho, const std::vector<Matrix>& mubs) {
  const int d = rho.dim();
  if (mubs.size() != static_cast<size_t>(d + 1))
    fail(Err::NotMUB, "complete set must hold d+1 bases");
  for (const Matrix& b : mubs) {
    if (b.rows() != d || !is_unitary(b, 1e-8)) fail(Err::NotMUB, "basis matrix is not unitary");
  }
  for (size_t a = 0; a < mubs.size(); ++a)
    for (size_t b = a + 1; b < mubs.size(); ++b) {
      Matrix overlap = mubs[a].adjoint() * mubs[b];
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          if (std::abs(std::norm(overlap(i, j)) - 1.0 / d) > 1e-8)
            fail(Err::NotMUB, "pairwise squared overlaps differ from 1/d");
    }

  MubReport rep{};
  const double purity = (rho.mat() * rho.mat()).trace().real();
  for (const Matrix& b : mubs) {
    ReferenceBasis basis(b);
    Matrix r = basis.to_basis(rho.mat());
    const double l1 = c_l1_value(r);
    rep.lhs_l1 += l1 * l1;
    rep.lhs_r += std::max(0.0, c_rel_entropy_value(r));
  }
  rep.rhs_l1 = d * (d - 1.0) * (d * purity - 1.0);
  const double s_rho = von_neumann_entropy(rho);
  double correction;
  if (d == 2) {
    correction = (purity - 0.5) * std::log2(std::exp(1.0));
  } else {
    correction = (d - 1.0) * (d * purity - 1.0) / (d * (d - 2.0)) * std::log2(d - 1.0);
  }
  rep.rhs_r = (d + 1.0) * (std::log2(static_cast<double>(d)) - s_rho) - correction;
  rep.slack_l1 = rep.rhs_l1 - rep.lhs_l1;
  rep.slack_r = rep.rhs_r - rep.lhs_r;
  return rep;
}

MixednessReport coherence_mixedness(const DensityMatrix& rho) {
  const int d = rho.dim();
  const double l1 = c_l1_value(rho.mat());
  const double purity = (rho.mat() * rho.mat()).trace().real();
  const double mixedness = d * (1.0 - purity) / (d - 1.0);
  MixednessReport rep;
  rep.lhs = l1 * l1 / ((d - 1.0) * (d - 1.0)) + mixedness;
  rep.slack = 1.0 - rep.lhs;
  const double p = l1 / (d - 1.0);
  rep.mcms_equality = false;
  if (p >= 0.0 && p <= 1.0) {
    Matrix ref = mcms(p, d).mat();
    rep.mcms_equality = (rho.mat() - ref).cwiseAbs().maxCoeff() <= 1e-8;
  }
  return rep;
}

DualityReport wave_particle_duality(const Vector& amplitudes, const Matrix& detector_overlaps) {
  const int n = static_cast<int>(amplitudes.size());
  if (detector_overlaps.rows() != n || detector_overlaps.cols() != n)
    fail(Err::DimensionMismatch, "overlap matrix dimension differs from the path count");
  if (std::abs(amplitudes.norm() - 1.0) > 1e-10)
    fail(Err::ParamOutOfRange, "path amplitudes must be normalized");
  if (!is_hermitian(detector_overlaps, 1e-10)) fail(Err::InvalidGram, "overlap matrix not Hermitian");
  for (int i = 0; i < n; ++i)
    if (std::abs(detector_overlaps(i, i).real() - 1.0) > 1e-10)
      fail(Err::InvalidGram, "overlap matrix diagonal must be 1");
  EigResult e = hermitian_eig(detector_overlaps);
  if (e.values.minCoeff() < -1e-10) fail(Err::InvalidGram, "overlap matrix not positive semidefinite");

  double cross = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) cross += std::abs(amplitudes(i)) * std::abs(amplitudes(j)) *
                           std::abs(detector_overlaps(j, i));
  DualityReport rep;
  rep.coherence = cross;
  rep.distinguishability = 1.0 - cross / (n - 1.0);
  rep.sum = rep.coherence / (n - 1.0) + rep.distinguishability;
  rep.intensity_ratio = cross;
  return rep;
}

HaarAverage haar_average_coherence(int d, int n_samples, uint64_t seed, HaarKind kind) {
  if (n_samples < 1000) fail(Err::ParamOutOfRange, "need at least 10^3 samples");
  Rng rng(seed);
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    PureState psi = random_pure(d, rng);
    double v = 0.0;
    switch (kind) {
      case HaarKind::l1: {
        double a = 0.0;
        for (int i = 0; i < d; ++i) a += std::abs(psi.amps()(i));
        v = a * a - 1.0;
        break;
      }
      case HaarKind::rel_entropy_nats: {
        double h = 0.0;
        for (int i = 0; i < d; ++i) {
          const double p = std::norm(psi.amps()(i));
          if (p > 0.0) h -= p * std::log(p);
        }
        v = h;
        break;
      }
      case HaarKind::dephased_distance: {
        double t = 0.0;
        for (int i = 0; i < d; ++i) t += std::abs(std::norm(psi.amps()(i)) - 1.0 / d);
        v = t;
        break;
      }
    }
    sum += v;
    sum_sq += v * v;
  }
  HaarAverage out;
  out.mean = sum / n_samples;
  const double var = std::max(0.0, sum_sq / n_samples - out.mean * out.mean);
  out.stderr_ = std::sqrt(var / n_samples);
  switch (kind) {
    case HaarKind::l1:
      out.analytic = (d - 1.0) * kPi / 4.0;
      break;
    case HaarKind::rel_entropy_nats: {
      double hd = 0.0;
      for (int k = 1; k <= d; ++k) hd += 1.0 / k;
      out.analytic = hd - 1.0;
      break;
    }
    case HaarKind::dephased_distance:
      out.analytic = 2.0 * std::pow(1.0 - 1.0 / d, static_cast<double>(d));
      break;
  }
  if (std::abs(out.mean - out.analytic) > 4.0 * out.stderr_)
    fail(Err::BoundViolation, "sampled mean strays beyond four standard errors");
  return out;
}

double odlro_coherence(long sites, long pairs) {
  if (pairs < 0 || pairs > sites) fail(Err::ParamOutOfRange, "need 0 <= N <= L");
  return static_cast<double>(pairs) * static_cast<double>(sites - pairs);
}

namespace {

// dephase the chosen trailing subsystems of an R x A x B state in place
Matrix dephase_subsystems(const Matrix& m, int dim_r, int dim_a, int dim_b, bool on_a, bool on_b) {
  const int total = dim_r * dim_a * dim_b;
  Matrix out = Matrix::Zero(total, total);
  for (int r1 = 0; r1 < dim_r; ++r1)
    for (int a1 = 0; a1 < dim_a; ++a1)
      for (int b1 = 0; b1 < dim_b; ++b1)
        for (int r2 = 0; r2 < dim_r; ++r2)
          for (int a2 = 0; a2 < dim_a; ++a2)
            for (int b2 = 0; b2 < dim_b; ++b2) {
              if (on_a && a1 != a2) continue;
              if (on_b && b1 != b2) continue;
              const int i = (r1 * dim_a + a1) * dim_b + b1;
              const int j = (r2 * dim_a + a2) * dim_b + b2;
              out(i, j) = m(i, j);
            }
  return out;
}

}  // namespace

double merging_bound(const DensityMatrix& rho_rab, int dim_r, int dim_a, int dim_b) {
  if (rho_rab.dim() != dim_r * dim_a * dim_b)
    fail(Err::DimensionMismatch, "tripartite dimensions do not factor");
  Matrix d_ab = dephase_subsystems(rho_rab.mat(), dim_r, dim_a, dim_b, true, true);
  Matrix d_b = dephase_subsystems(rho_rab.mat(), dim_r, dim_a, dim_b, false, true);
  return von_neumann_entropy_raw(d_ab) - von_neumann_entropy_raw(d_b);
}

}  // namespace qc
