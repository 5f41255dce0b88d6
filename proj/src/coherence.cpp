#include "qcohere/coherence.hpp"

#include <cmath>

namespace qc {

namespace {

constexpr double kLn2 = 0.6931471805599453;

Matrix diag_from(const RealVector& d) {
  Matrix m = Matrix::Zero(d.size(), d.size());
  for (int i = 0; i < d.size(); ++i) m(i, i) = d(i);
  return m;
}

RealVector real_diag(const Matrix& m) {
  RealVector d(m.rows());
  for (int i = 0; i < m.rows(); ++i) d(i) = m(i, i).real();
  return d;
}

bool is_rank_one(const Matrix& rho, double tol = 1e-10) {
  const double purity = (rho * rho).trace().real();
  return purity > 1.0 - tol;
}

// lambda_max(D^{-1/2} rho D^{-1/2}) and its top eigenvector, interior delta
std::pair<double, Vector> scaled_extreme(const Matrix& rho, const RealVector& delta, bool top) {
  const int d = static_cast<int>(rho.rows());
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = rho(i, j) / std::sqrt(delta(i) * delta(j));
  EigResult e = hermitian_eig(m);
  if (top) return {e.values(0), e.vectors.col(0)};
  return {e.values(d - 1), e.vectors.col(d - 1)};
}

}  // namespace

double c_l1_value(const Matrix& rho_in_basis) {
  double s = 0.0;
  for (int i = 0; i < rho_in_basis.rows(); ++i)
    for (int j = 0; j < rho_in_basis.cols(); ++j)
      if (i != j) s += std::abs(rho_in_basis(i, j));
  return s;
}

double c_rel_entropy_value(const Matrix& rho_in_basis) {
  RealVector d = real_diag(rho_in_basis);
  return shannon_entropy(d) - von_neumann_entropy_raw(rho_in_basis);
}

MeasureResult c_l1(const DensityMatrix& rho, const ReferenceBasis& basis) {
  Matrix r = basis.to_basis(rho.mat());
  MeasureResult out;
  out.value = c_l1_value(r);
  out.method = Method::analytic;
  out.tol = 1e-12;
  out.witness_state = dephase_computational(r);
  return out;
}

MeasureResult c_rel_entropy(const DensityMatrix& rho, const ReferenceBasis& basis) {
  Matrix r = basis.to_basis(rho.mat());
  MeasureResult out;
  out.value = std::max(0.0, c_rel_entropy_value(r));
  out.method = Method::analytic;
  out.tol = 1e-10;
  out.witness_state = dephase_computational(r);
  return out;
}

MeasureResult c_l2(const DensityMatrix& rho, const ReferenceBasis& basis) {
  Matrix r = basis.to_basis(rho.mat());
  double s = 0.0;
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j)
      if (i != j) s += std::norm(r(i, j));
  MeasureResult out;
  out.value = s;  // squared HS distance to the dephased state; not a monotone
  out.method = Method::analytic;
  out.tol = 1e-12;
  out.witness_state = dephase_computational(r);
  return out;
}

MeasureResult c_trace_pure(const PureState& psi) {
  const int d = psi.dim();
  std::vector<std::pair<double, int>> mags(d);
  for (int i = 0; i < d; ++i) mags[i] = {std::abs(psi.amps()(i)), i};
  std::stable_sort(mags.begin(), mags.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  RealVector x(d);
  for (int i = 0; i < d; ++i) x(i) = mags[i].first;

  int k = 0;
  double qk = 0.0;
  double s = 0.0;
  double m_all = x.squaredNorm();
  for (int l = 1; l <= d; ++l) {
    s += x(l - 1);
    const double ml = m_all - [&] {
      double acc = 0.0;
      for (int i = 0; i < l; ++i) acc += x(i) * x(i);
      return acc;
    }();
    const double pl = s * s - l * ml - 1.0;
    const double ql = (pl + std::sqrt(pl * pl + 4.0 * l * ml * s * s)) / (2.0 * l * s);
    if (x(l - 1) > ql) {
      k = l;
      qk = ql;
    }
  }
  double sk = 0.0, mk = 0.0;
  for (int i = 0; i < k; ++i) sk += x(i);
  for (int i = k; i < d; ++i) mk += x(i) * x(i);

  MeasureResult out;
  out.value = 2.0 * (qk * sk + mk);
  out.method = Method::analytic;
  out.tol = 1e-12;
  RealVector alpha = RealVector::Zero(d);
  const double denom = sk - k * qk;
  if (denom > 1e-15) {
    for (int i = 0; i < k; ++i) alpha(mags[i].second) = (x(i) - qk) / denom;
  } else {
    alpha(mags[0].second) = 1.0;
  }
  out.witness_state = diag_from(alpha);
  return out;
}

MeasureResult c_trace(const DensityMatrix& rho, const ReferenceBasis& basis, Rng* rng) {
  Matrix r = basis.to_basis(rho.mat());
  const int d = static_cast<int>(r.rows());
  if (d == 2 || has_x_structure(r)) {
    MeasureResult out;
    out.value = c_l1_value(r);
    out.method = Method::analytic;
    out.tol = 1e-12;
    out.witness_state = dephase_computational(r);
    return out;
  }
  Rng local(17);
  Rng& gen = rng ? *rng : local;
  auto f = [&](const RealVector& delta) { return trace_norm(r - diag_from(delta)); };
  SimplexOptions opts;
  opts.check_stall = true;
  SimplexResult sr = minimize_over_simplex(f, nullptr, d, opts, gen, {real_diag(r)});
  MeasureResult out;
  out.value = sr.value;
  out.method = Method::numeric;
  out.tol = 1e-6;
  out.witness_state = diag_from(sr.point);
  return out;
}

MeasureResult c_trace_modified(const DensityMatrix& rho, const ReferenceBasis& basis, Rng* rng) {
  Matrix r = basis.to_basis(rho.mat());
  const int d = static_cast<int>(r.rows());
  if (d == 2 || has_x_structure(r)) {
    MeasureResult out;
    out.value = c_l1_value(r);  // lambda* = 1, delta* = rho_diag for these classes
    out.method = Method::analytic;
    out.tol = 1e-12;
    out.witness_state = dephase_computational(r);
    return out;
  }
  // minimize |rho - diag(mu)|_1 over entrywise-nonnegative mu (mu = lambda*delta)
  Rng local(19);
  Rng& gen = rng ? *rng : local;
  auto f = [&](const RealVector& mu) {
    RealVector m = mu.cwiseMax(0.0);
    return trace_norm(r - diag_from(m));
  };
  MeasureResult plain = c_trace(rho, basis, &gen);
  std::vector<RealVector> starts;
  starts.push_back(real_diag(r));
  starts.push_back(real_diag(*plain.witness_state));
  starts.push_back(RealVector::Constant(d, 1.0 / d));
  for (int rix = 0; rix < 48; ++rix) {
    RealVector p(d);
    for (int i = 0; i < d; ++i) p(i) = gen.next_double();
    starts.push_back(p);
  }
  double best = std::numeric_limits<double>::infinity();
  RealVector best_mu;
  std::vector<double> running_best;
  for (RealVector mu : starts) {
    double fmu = f(mu);
    double step = 0.1;
    for (int it = 0; it < 2000; ++it) {
      RealVector g(d);
      const double h = 1e-7;
      for (int i = 0; i < d; ++i) {
        RealVector a = mu, b = mu;
        a(i) += h;
        b(i) -= h;
        g(i) = (f(a) - f(b)) / (2 * h);
      }
      bool moved = false;
      while (step > 1e-10) {
        RealVector q = (mu - step * g).cwiseMax(0.0);
        const double fq = f(q);
        if (fq < fmu - 1e-15) {
          mu = q;
          fmu = fq;
          step *= 1.5;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    if (fmu < best) {
      best = fmu;
      best_mu = mu;
    }
    running_best.push_back(best);
  }
  NelderMeadResult nm = nelder_mead(f, best_mu, 0.02, 400);
  if (nm.value < best) {
    best = nm.value;
    best_mu = nm.point.cwiseMax(0.0);
  }
  if (running_best.size() >= 8) {
    const size_t tail = running_best.size() - running_best.size() / 4;
    if (running_best[tail - 1] - running_best.back() > 1e-6)
      fail(Err::OptimizerStalled, "multi-start search still improving in the final restarts");
  }
  MeasureResult out;
  out.value = best;
  out.method = Method::numeric;
  out.tol = 1e-6;
  out.witness_state = diag_from(best_mu);
  return out;
}

MeasureResult robustness_numeric(const DensityMatrix& rho, const ReferenceBasis& basis, Rng* rng) {
  Matrix r = basis.to_basis(rho.mat());
  const int d = static_cast<int>(r.rows());
  const double l1 = c_l1_value(r);

  Rng local(23);
  Rng& gen = rng ? *rng : local;
  auto f = [&](const RealVector& delta) { return scaled_extreme(r, delta, true).first - 1.0; };
  auto grad = [&](const RealVector& delta) {
    auto [lam, v] = scaled_extreme(r, delta, true);
    RealVector g(d);
    for (int i = 0; i < d; ++i) g(i) = -lam * std::norm(v(i)) / delta(i);
    return g;
  };
  SimplexOptions opts;
  opts.floor = 1e-8;  // the infimum over the simplex boundary is approached, not attained
  RealVector warm = real_diag(r).cwiseMax(1e-8);
  warm /= warm.sum();
  SimplexResult sr = minimize_over_simplex(f, grad, d, opts, gen, {warm});

  const double upper_op = d * hermitian_eig(r).values(0) - 1.0;
  if (sr.value < l1 / (d - 1) - 1e-6 || sr.value > l1 + 1e-6 || sr.value > upper_op + 1e-6)
    fail(Err::BoundViolation, "robustness value exits its analytic bracket by more than 1e-6");

  MeasureResult out;
  out.value = std::max(0.0, sr.value);
  out.method = Method::numeric;
  out.tol = 1e-4;
  out.witness_state = diag_from(sr.point);
  return out;
}

MeasureResult robustness(const DensityMatrix& rho, const ReferenceBasis& basis, Rng* rng) {
  Matrix r = basis.to_basis(rho.mat());
  const int d = static_cast<int>(r.rows());
  const double l1 = c_l1_value(r);

  if (d == 2 || is_rank_one(r) || has_x_structure(r)) {
    MeasureResult out;
    out.value = l1;
    out.method = Method::analytic;
    out.tol = 1e-12;
    if (is_rank_one(r) && !has_x_structure(r)) {
      EigResult e = hermitian_eig(r);
      Vector psi = e.vectors.col(0);
      RealVector delta(d);
      double norm1 = 0.0;
      for (int i = 0; i < d; ++i) norm1 += std::abs(psi(i));
      for (int i = 0; i < d; ++i) delta(i) = std::abs(psi(i)) / norm1;
      out.witness_state = diag_from(delta);
    } else {
      RealVector delta(d);
      for (int i = 0; i < d; ++i) {
        const double anti = i != d - 1 - i ? std::abs(r(i, d - 1 - i)) : 0.0;
        delta(i) = (r(i, i).real() + anti) / (1.0 + l1);
      }
      out.witness_state = diag_from(delta);
    }
    return out;
  }
  return robustness_numeric(rho, basis, rng);
}

MeasureResult coherence_weight(const DensityMatrix& rho, const ReferenceBasis& basis, Rng* rng) {
  Matrix r = basis.to_basis(rho.mat());
  const int d = static_cast<int>(r.rows());

  Rng local(29);
  Rng& gen = rng ? *rng : local;
  // C_w = 1 - max_delta lambda_min(D^{-1/2} rho D^{-1/2}) clamped to [0,1]
  auto f = [&](const RealVector& delta) { return -scaled_extreme(r, delta, false).first; };
  auto grad = [&](const RealVector& delta) {
    auto [lam, v] = scaled_extreme(r, delta, false);
    RealVector g(d);
    for (int i = 0; i < d; ++i) g(i) = lam * std::norm(v(i)) / delta(i);
    return g;
  };
  SimplexOptions opts;
  opts.floor = 1e-9;
  RealVector warm = real_diag(r).cwiseMax(1e-9);
  warm /= warm.sum();
  SimplexResult sr = minimize_over_simplex(f, grad, d, opts, gen, {warm});
  double value = 1.0 - std::min(1.0, std::max(0.0, -sr.value));

  const double lower_hs = std::pow(hs_norm(r - dephase_computational(r)), 2.0);
  if (value < lower_hs - 1e-6)
    fail(Err::BoundViolation, "coherence weight fell below its HS-norm lower bound");

  MeasureResult out;
  out.value = value;
  out.method = Method::numeric;
  out.tol = 1e-6;
  out.witness_state = diag_from(sr.point);
  return out;
}

MeasureResult coherence_of_formation_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 2) fail(Err::DimensionMismatch, "qubit formula needs a 2x2 state");
  const Matrix& r = rho.mat();
  Matrix rr = r * pauli(1) * r.conjugate() * pauli(1);
  const double t = rr.trace().real();
  const double det_sqrt = std::abs((r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0)));
  const double cz = std::sqrt(std::max(0.0, t - 2.0 * det_sqrt));
  if (std::abs(cz - 2.0 * std::abs(r(0, 1))) > 1e-10)
    fail(Err::BoundViolation, "coherence concurrence disagrees with 2|rho01|");
  MeasureResult out;
  out.value = binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - cz * cz))));
  out.method = Method::analytic;
  out.tol = 1e-12;
  return out;
}

MeasureResult coherence_concurrence_pure(const PureState& psi, const ReferenceBasis& basis) {
  Vector v = basis.is_computational() ? psi.amps() : Vector(basis.vectors().adjoint() * psi.amps());
  const int d = static_cast<int>(v.size());
  double s = 0.0;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) s += 2.0 * std::abs(v(j)) * std::abs(v(k));
  MeasureResult out;
  out.value = s;  // coincides with the l1 norm on pure states
  out.method = Method::analytic;
  out.tol = 1e-12;
  return out;
}

int coherence_rank(const PureState& psi) {
  int r = 0;
  for (int i = 0; i < psi.dim(); ++i)
    if (std::abs(psi.amps()(i)) > 1e-10) ++r;
  return r;
}

double c0(const PureState& psi) { return std::log2(static_cast<double>(coherence_rank(psi))); }

MeasureResult geometric_coherence(const DensityMatrix& rho, const ReferenceBasis& basis, Rng* rng) {
  Matrix r = basis.to_basis(rho.mat());
  const int d = static_cast<int>(r.rows());
  MeasureResult out;
  if (d == 2) {
    const double l1 = c_l1_value(r);
    out.value = 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - l1 * l1)));
    out.method = Method::analytic;
    out.tol = 1e-12;
    return out;
  }
  if (is_rank_one(r)) {
    out.value = 1.0 - real_diag(r).maxCoeff();
    out.method = Method::analytic;
    out.tol = 1e-12;
    return out;
  }
  Rng local(31);
  Rng& gen = rng ? *rng : local;
  auto f = [&](const RealVector& delta) {
    return -fidelity_raw(r, diag_from(delta.cwiseMax(0.0)));
  };
  SimplexOptions opts;
  opts.restarts = 6;  // fidelity is concave in delta
  opts.max_iters = 800;
  RealVector warm = real_diag(r);
  SimplexResult sr = minimize_over_simplex(f, nullptr, d, opts, gen, {warm});
  out.value = 1.0 + sr.value;
  out.method = Method::numeric;
  out.tol = 1e-6;
  out.witness_state = diag_from(sr.point);

  // sub/super-fidelity bracket
  const double purity = (r * r).trace().real();
  double cl2 = purity - real_diag(r).array().square().sum();
  const double dd = static_cast<double>(d);
  const double rad = std::max(0.0, 1.0 - dd / (dd - 1.0) * cl2);
  const double lower = 1.0 - 1.0 / dd - (dd - 1.0) / dd * std::sqrt(rad);
  Matrix b = matrix_sqrt_of(r);
  double sum_b2 = 0.0;
  for (int i = 0; i < d; ++i) sum_b2 += std::norm(b(i, i));
  const double upper = std::min(1.0 - real_diag(r).maxCoeff(), 1.0 - sum_b2);
  if (out.value < lower - 1e-6 || out.value > upper + 1e-6)
    fail(Err::BoundViolation, "geometric coherence exits the sub/super-fidelity bracket");
  return out;
}

MeasureResult tsallis_coherence(const DensityMatrix& rho, const ReferenceBasis& basis, double alpha) {
  if (alpha <= 0.0) fail(Err::ParamOutOfRange, "Tsallis order must be positive");
  if (alpha == 1.0) return c_rel_entropy(rho, basis);
  Matrix r = basis.to_basis(rho.mat());
  const int d = static_cast<int>(r.rows());
  EigResult e = hermitian_eig(r);
  Matrix ralpha = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double lam = std::max(0.0, e.values(k));
    ralpha += std::pow(lam, alpha) * (e.vectors.col(k) * e.vectors.col(k).adjoint());
  }
  double acc = 0.0;
  for (int i = 0; i < d; ++i) acc += std::pow(std::max(0.0, ralpha(i, i).real()), 1.0 / alpha);
  const double nat = (std::pow(acc, alpha) - 1.0) / (alpha - 1.0);
  // reported in base 2 so the alpha->1 limit recovers the relative entropy measure
  const double value = std::max(0.0, nat / kLn2);

  if (alpha <= 2.0) {
    const double purity = (r * r).trace().real();
    const double arg = 1.0 / (d * purity);
    const double ln_alpha = (std::pow(arg, 1.0 - alpha) - 1.0) / (1.0 - alpha);
    if (nat > -ln_alpha + 1e-9)
      fail(Err::BoundViolation, "Tsallis coherence exceeds its purity bound");
  }

  MeasureResult out;
  out.value = value;
  out.method = Method::analytic;
  out.tol = 1e-10;
  return out;
}

MeasureResult c_max_relative_entropy(const DensityMatrix& rho, const ReferenceBasis& basis, Rng* rng) {
  MeasureResult rob = robustness(rho, basis, rng);
  MeasureResult out;
  out.value = std::log2(1.0 + rob.value);
  out.method = rob.method;
  out.tol = rob.tol;
  out.witness_state = rob.witness_state;
  return out;
}

double k_coherence(const DensityMatrix& rho, const Matrix& k_obs) {
  if (!is_hermitian(k_obs)) fail(Err::NotHermitian, "observable must be Hermitian");
  if (k_obs.rows() != rho.dim()) fail(Err::DimensionMismatch, "observable dimension differs");
  Matrix sr = matrix_sqrt(rho);
  Matrix comm = sr * k_obs - k_obs * sr;
  return -0.5 * (comm * comm).trace().real();
}

double k_coherence_lower(const DensityMatrix& rho, const Matrix& k_obs) {
  if (!is_hermitian(k_obs)) fail(Err::NotHermitian, "observable must be Hermitian");
  if (k_obs.rows() != rho.dim()) fail(Err::DimensionMismatch, "observable dimension differs");
  Matrix comm = rho.mat() * k_obs - k_obs * rho.mat();
  return -0.25 * (comm * comm).trace().real();
}

MeasureResult c_sk(const DensityMatrix& rho, const ReferenceBasis& basis) {
  Matrix r = basis.to_basis(rho.mat());
  const int d = static_cast<int>(r.rows());
  Matrix sr = matrix_sqrt_of(r);
  double sum_sq = 0.0;
  for (int k = 0; k < d; ++k) sum_sq += std::pow(sr(k, k).real(), 2.0);
  const double value = 1.0 - sum_sq;

  DensityMatrix in_basis(r);
  double via_skew = 0.0;
  for (int k = 0; k < d; ++k) {
    Matrix proj = Matrix::Zero(d, d);
    proj(k, k) = 1.0;
    via_skew += k_coherence(in_basis, proj);
  }
  if (std::abs(via_skew - value) > 1e-10)
    fail(Err::BoundViolation, "skew-information sum disagrees with the sqrt-diagonal form");

  double cl2 = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) cl2 += std::norm(r(i, j));
  const double purity = (r * r).trace().real();
  if (value < 0.5 * cl2 - 1e-9 || value > 1.0 - purity + cl2 + 1e-9)
    fail(Err::BoundViolation, "skew coherence exits its l2 bracket");

  MeasureResult out;
  out.value = std::max(0.0, value);
  out.method = Method::analytic;
  out.tol = 1e-10;
  RealVector dstar(d);
  for (int k = 0; k < d; ++k) dstar(k) = std::pow(sr(k, k).real(), 2.0);
  dstar /= dstar.sum();
  out.witness_state = diag_from(dstar);
  return out;
}

double c_basis_independent(const DensityMatrix& rho) {
  const int d = rho.dim();
  const double purity = (rho.mat() * rho.mat()).trace().real();
  return std::sqrt(std::max(0.0, (d * purity - 1.0) / (d - 1.0)));
}

double max_coherence_over_unitaries(const DensityMatrix& rho, MaxCoherenceKind kind) {
  const int d = rho.dim();
  EigResult e = hermitian_eig(rho.mat());
  const double purity = (rho.mat() * rho.mat()).trace().real();
  switch (kind) {
    case MaxCoherenceKind::rel_entropy:
      return std::log2(static_cast<double>(d)) - von_neumann_entropy(rho);
    case MaxCoherenceKind::l2:
      return purity - 1.0 / d;
    case MaxCoherenceKind::robustness:
      return d * e.values(0) - 1.0;
    case MaxCoherenceKind::weight:
      return 1.0 - d * e.values(d - 1);
    case MaxCoherenceKind::sk: {
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += std::sqrt(std::max(0.0, e.values(i)));
      return 1.0 - s * s / d;
    }
  }
  fail(Err::ParamOutOfRange, "unknown maximal-coherence kind");
}

namespace {

// eigenbasis with degenerate blocks resolved by sampled rotations
std::vector<Matrix> marginal_bases(const Matrix& marginal, Rng& gen, int samples) {
  EigResult e = hermitian_eig(marginal);
  const int d = static_cast<int>(marginal.rows());
  std::vector<std::pair<int, int>> blocks;
  int start = 0;
  for (int i = 1; i <= d; ++i) {
    if (i == d || std::abs(e.values(i) - e.values(i - 1)) > 1e-8) {
      blocks.emplace_back(start, i - start);
      start = i;
    }
  }
  if (blocks.size() == static_cast<size_t>(d)) return {e.vectors};
  std::vector<Matrix> out;
  for (int s = 0; s < samples; ++s) {
    Matrix v = e.vectors;
    for (auto [b0, len] : blocks) {
      if (len == 1) continue;
      Matrix u = random_unitary(len, gen);
      v.block(0, b0, d, len) = v.block(0, b0, d, len) * u;
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

double correlated_coherence(const DensityMatrix& rho_ab, int dim_a, int dim_b, Rng* rng,
                            int degenerate_samples) {
  if (rho_ab.dim() != dim_a * dim_b) fail(Err::DimensionMismatch, "bipartite dimensions do not factor");
  Rng local(37);
  Rng& gen = rng ? *rng : local;
  Matrix ma = partial_trace_raw(rho_ab.mat(), dim_a, dim_b, Keep::A);
  Matrix mb = partial_trace_raw(rho_ab.mat(), dim_a, dim_b, Keep::B);
  std::vector<Matrix> bases_a = marginal_bases(ma, gen, degenerate_samples);
  std::vector<Matrix> bases_b = marginal_bases(mb, gen, degenerate_samples);
  double best = std::numeric_limits<double>::infinity();
  const size_t n = std::max(bases_a.size(), bases_b.size());
  for (size_t i = 0; i < n; ++i) {
    const Matrix& va = bases_a[i % bases_a.size()];
    const Matrix& vb = bases_b[i % bases_b.size()];
    Matrix u = kron(va, vb);
    Matrix r = u.adjoint() * rho_ab.mat() * u;
    Matrix ra = va.adjoint() * ma * va;
    Matrix rb = vb.adjoint() * mb * vb;
    const double cc = c_l1_value(r) - c_l1_value(ra) - c_l1_value(rb);
    best = std::min(best, cc);
  }
  return best;
}

namespace {

Matrix marginal_of(const Matrix& m, const std::vector<int>& dims, size_t keep) {
  Matrix cur = m;
  std::vector<int> d = dims;
  // trace out trailing parties after `keep`, then leading ones before it
  while (d.size() > keep + 1) {
    int rest = 1;
    for (size_t i = 0; i + 1 < d.size(); ++i) rest *= d[i];
    cur = partial_trace_raw(cur, rest, d.back(), Keep::A);
    d.pop_back();
  }
  while (d.size() > 1) {
    int rest = 1;
    for (size_t i = 1; i < d.size(); ++i) rest *= d[i];
    cur = partial_trace_raw(cur, d.front(), rest, Keep::B);
    d.erase(d.begin());
  }
  return cur;
}

}  // namespace

MonogamyReport monogamy_check(const DensityMatrix& rho, const std::vector<int>& dims) {
  int total = 1;
  for (int d : dims) total *= d;
  if (total != rho.dim()) fail(Err::DimensionMismatch, "party dimensions do not factor the state");
  MonogamyReport rep{};
  rep.lhs_r = c_rel_entropy_value(rho.mat());
  rep.lhs_l1 = c_l1_value(rho.mat());
  rep.rhs_r = 0.0;
  rep.rhs_l1 = 0.0;
  for (size_t k = 0; k < dims.size(); ++k) {
    Matrix mk = marginal_of(rho.mat(), dims, k);
    rep.rhs_r += c_rel_entropy_value(mk);
    rep.rhs_l1 += c_l1_value(mk);
  }
  rep.slack_r = rep.lhs_r - rep.rhs_r;
  rep.slack_l1 = rep.lhs_l1 - rep.rhs_l1;
  return rep;
}

NaqcResult naqc_l1(const DensityMatrix& rho_ab) {
  if (rho_ab.dim() != 4) fail(Err::DimensionMismatch, "nonlocal-advantage test needs two qubits");
  double total = 0.0;
  for (int i = 1; i <= 3; ++i) {
    for (int a = 0; a < 2; ++a) {
      const double sign = a == 0 ? 1.0 : -1.0;
      Matrix proj = 0.5 * (pauli(0) + sign * pauli(i));
      Matrix pi_full = kron(proj, pauli(0));
      const double p = (pi_full * rho_ab.mat()).trace().real();
      if (p < 1e-14) continue;
      Matrix cond = partial_trace_raw(pi_full * rho_ab.mat() * pi_full, 2, 2, Keep::B) / p;
      for (int j = 1; j <= 3; ++j) {
        if (j == i) continue;
        // l1 coherence of a qubit in the sigma_j eigenbasis: Bloch mass off that axis
        double r1 = (cond * pauli(j % 3 + 1)).trace().real();
        double r2 = (cond * pauli((j + 1) % 3 + 1)).trace().real();
        total += 0.5 * p * std::sqrt(r1 * r1 + r2 * r2);
      }
    }
  }
  NaqcResult out;
  out.value = total;
  out.achieves_advantage = total > std::sqrt(6.0);
  return out;
}

double convex_roof_upper_bound(const DensityMatrix& rho, int n_decompositions, Rng& rng,
                               const std::function<double(const PureState&)>& pure_value) {
  EigResult e = hermitian_eig(rho.mat());
  const int d = rho.dim();
  int rank = 0;
  for (int i = 0; i < d; ++i)
    if (e.values(i) > 1e-12) ++rank;
  double best = 0.0;
  for (int k = 0; k < rank; ++k) {
    PureState psi{Vector(e.vectors.col(k))};
    best += e.values(k) * pure_value(psi);
  }
  for (int s = 0; s < n_decompositions; ++s) {
    Matrix u = random_unitary(rank, rng);
    double avg = 0.0;
    for (int j = 0; j < rank; ++j) {
      Vector v = Vector::Zero(d);
      for (int k = 0; k < rank; ++k) v += u(j, k) * std::sqrt(e.values(k)) * e.vectors.col(k);
      const double p = v.squaredNorm();
      if (p < 1e-14) continue;
      v /= std::sqrt(p);
      avg += p * pure_value(PureState{v});
    }
    best = std::min(best, avg);
  }
  return best;
}

}  // namespace qc
