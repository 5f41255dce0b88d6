#include "qcohere/channels.hpp"

#include <cmath>

namespace qc {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<Matrix> full_operator_basis(int d) {
  std::vector<Matrix> xs;
  xs.push_back(std::sqrt(2.0 / d) * Matrix::Identity(d, d));
  for (auto& m : traceless_hermitian_basis(d)) xs.push_back(m);
  return xs;
}

Matrix heisenberg(const KrausChannel& ch, const Matrix& x) {
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (const Matrix& k : ch.kraus()) out += k.adjoint() * x * k;
  return out;
}

bool column_pattern_ok(const Matrix& k, double tol) {
  for (int j = 0; j < k.cols(); ++j) {
    int nonzero = 0;
    for (int i = 0; i < k.rows(); ++i)
      if (std::abs(k(i, j)) > tol) ++nonzero;
    if (nonzero > 1) return false;
  }
  return true;
}

std::vector<Matrix> kraus_from_choi(const Matrix& choi, int d_in, int d_out, double prune) {
  EigResult e = hermitian_eig(choi);
  std::vector<Matrix> ops;
  for (int k = 0; k < e.values.size(); ++k) {
    if (e.values(k) <= 0.0) continue;
    Matrix op(d_out, d_in);
    for (int i = 0; i < d_in; ++i)
      for (int o = 0; o < d_out; ++o) op(o, i) = std::sqrt(e.values(k)) * e.vectors(i * d_out + o, k);
    if (op.norm() > prune) ops.push_back(op);
  }
  return ops;
}

Matrix choi_of(const KrausChannel& ch) {
  const int din = ch.dim_in(), dout = ch.dim_out();
  Matrix choi = Matrix::Zero(din * dout, din * dout);
  for (const Matrix& k : ch.kraus()) {
    Vector vec(din * dout);
    for (int i = 0; i < din; ++i)
      for (int o = 0; o < dout; ++o) vec(i * dout + o) = k(o, i);
    choi += vec * vec.adjoint();
  }
  return choi;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<Matrix> kraus_ops, std::string label)
    : kraus_(std::move(kraus_ops)), label_(std::move(label)) {
  if (kraus_.empty()) fail(Err::ParamOutOfRange, "channel needs at least one Kraus operator");
  const Eigen::Index rows = kraus_.front().rows();
  const Eigen::Index cols = kraus_.front().cols();
  Matrix sum = Matrix::Zero(cols, cols);
  for (const Matrix& k : kraus_) {
    if (k.rows() != rows || k.cols() != cols)
      fail(Err::DimensionMismatch, "Kraus operators must share one shape");
    sum += k.adjoint() * k;
  }
  sum -= Matrix::Identity(cols, cols);
  if (sum.cwiseAbs().maxCoeff() > 1e-10)
    fail(Err::ParamOutOfRange, "Kraus operators are not trace preserving within 1e-10");
}

KrausChannel standard_channel(ChannelKind kind, double param, double param2) {
  if (param < 0.0 || param > 1.0) fail(Err::ParamOutOfRange, "channel parameter must lie in [0,1]");
  std::vector<Matrix> ops;
  switch (kind) {
    case ChannelKind::bit_flip:
      ops = {std::sqrt(1.0 - param) * pauli(0), std::sqrt(param) * pauli(1)};
      return KrausChannel(ops, "bit_flip");
    case ChannelKind::phase_flip:
      ops = {std::sqrt(1.0 - param) * pauli(0), std::sqrt(param) * pauli(3)};
      return KrausChannel(ops, "phase_flip");
    case ChannelKind::bit_phase_flip:
      ops = {std::sqrt(1.0 - param) * pauli(0), std::sqrt(param) * pauli(2)};
      return KrausChannel(ops, "bit_phase_flip");
    case ChannelKind::depolarizing:
      ops = {std::sqrt(1.0 - 0.75 * param) * pauli(0), std::sqrt(0.25 * param) * pauli(1),
             std::sqrt(0.25 * param) * pauli(2), std::sqrt(0.25 * param) * pauli(3)};
      return KrausChannel(ops, "depolarizing");
    case ChannelKind::amplitude_damping: {
      Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
      k0(0, 0) = 1.0;
      k0(1, 1) = std::sqrt(1.0 - param);
      k1(0, 1) = std::sqrt(param);
      return KrausChannel({k0, k1}, "amplitude_damping");
    }
    case ChannelKind::phase_damping: {
      // E_0 = diag(1, p), E_1 = diag(0, sqrt(1-p^2))
      Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
      k0(0, 0) = 1.0;
      k0(1, 1) = param;
      k1(1, 1) = std::sqrt(std::max(0.0, 1.0 - param * param));
      return KrausChannel({k0, k1}, "phase_damping");
    }
    case ChannelKind::generalized_amplitude_damping: {
      if (param2 < 0.0 || param2 > 1.0)
        fail(Err::ParamOutOfRange, "excitation probability must lie in [0,1]");
      const double g = param, q = param2;
      Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2), k2 = Matrix::Zero(2, 2),
             k3 = Matrix::Zero(2, 2);
      k0(0, 0) = std::sqrt(q);
      k0(1, 1) = std::sqrt(q) * std::sqrt(1.0 - g);
      k1(0, 1) = std::sqrt(q) * std::sqrt(g);
      k2(0, 0) = std::sqrt(1.0 - q) * std::sqrt(1.0 - g);
      k2(1, 1) = std::sqrt(1.0 - q);
      k3(1, 0) = std::sqrt(1.0 - q) * std::sqrt(g);
      return KrausChannel({k0, k1, k2, k3}, "generalized_amplitude_damping");
    }
  }
  fail(Err::ParamOutOfRange, "unknown channel kind");
}

KrausChannel identity_channel(int d) {
  return KrausChannel({Matrix::Identity(d, d)}, "identity");
}

KrausChannel full_dephasing_channel(int d) {
  std::vector<Matrix> ops;
  for (int i = 0; i < d; ++i) {
    Matrix p = Matrix::Zero(d, d);
    p(i, i) = 1.0;
    ops.push_back(p);
  }
  return KrausChannel(ops, "full_dephasing");
}

KrausChannel unitary_channel(const Matrix& u, const std::string& label) {
  if (!is_unitary(u)) fail(Err::NotUnitary, "matrix is not unitary within 1e-10");
  return KrausChannel({u}, label);
}

Matrix apply_raw(const KrausChannel& channel, const Matrix& rho) {
  if (rho.rows() != channel.dim_in()) fail(Err::DimensionMismatch, "channel input dimension differs");
  Matrix out = Matrix::Zero(channel.dim_out(), channel.dim_out());
  for (const Matrix& k : channel.kraus()) out += k * rho * k.adjoint();
  return out;
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho) {
  return DensityMatrix(apply_raw(channel, rho.mat()));
}

DensityMatrix apply_on_subsystem(const KrausChannel& channel, const DensityMatrix& rho, int dim_a,
                                 int dim_b, Side side) {
  if (rho.dim() != dim_a * dim_b) fail(Err::DimensionMismatch, "dimensions do not factor");
  std::vector<Matrix> lifted;
  for (const Matrix& k : channel.kraus())
    lifted.push_back(side == Side::A ? kron(k, Matrix::Identity(dim_b, dim_b))
                                     : kron(Matrix::Identity(dim_a, dim_a), k));
  return apply(KrausChannel(lifted, channel.label()), rho);
}

TransferMatrix transfer_matrix(const KrausChannel& channel) {
  if (channel.dim_in() != channel.dim_out())
    fail(Err::DimensionMismatch, "transfer matrix needs an endomorphic channel");
  const int d = channel.dim_in();
  std::vector<Matrix> xs = full_operator_basis(d);
  const int n = static_cast<int>(xs.size());
  TransferMatrix out;
  out.dim = d;
  out.t.resize(n, n);
  for (int i = 0; i < n; ++i) {
    Matrix hx = heisenberg(channel, xs[i]);
    for (int j = 0; j < n; ++j) out.t(i, j) = 0.5 * (hx * xs[j]).trace().real();
  }
  return out;
}

ChannelClassification classify(const KrausChannel& channel) {
  ChannelClassification out;
  const int din = channel.dim_in();
  const double tol = 1e-10;

  out.incoherent = true;
  out.strictly_incoherent = true;
  for (const Matrix& k : channel.kraus()) {
    if (!column_pattern_ok(k, tol)) out.incoherent = false;
    if (!column_pattern_ok(Matrix(k.adjoint()), tol)) out.strictly_incoherent = false;
  }
  out.strictly_incoherent = out.strictly_incoherent && out.incoherent;

  if (channel.dim_out() == din) {
    Matrix img = apply_raw(channel, Matrix::Identity(din, din) / din);
    img -= Matrix::Identity(din, din) / din;
    out.unital = img.cwiseAbs().maxCoeff() <= tol;
  }

  out.semiclassical = true;
  std::vector<Matrix> xs = full_operator_basis(din);
  for (const Matrix& x : xs) {
    Matrix img = apply_raw(channel, x);
    img.diagonal().setZero();
    if (img.cwiseAbs().maxCoeff() > tol) {
      out.semiclassical = false;
      break;
    }
  }

  out.coherence_breaking = out.semiclassical && out.incoherent;
  if (out.coherence_breaking) {
    std::vector<Matrix> effects;
    for (int i = 0; i < channel.dim_out(); ++i) {
      Matrix proj = Matrix::Zero(channel.dim_out(), channel.dim_out());
      proj(i, i) = 1.0;
      effects.push_back(heisenberg(channel, proj));
    }
    out.cbc_witness = effects;
  }
  return out;
}

bool discord_freezing_condition(const BellDiagonalParams& p, double tol) {
  const bool branch1 = std::abs(p.c2 + p.c1 * p.c3) <= tol && std::abs(p.c1) > std::abs(p.c3);
  const bool branch2 = std::abs(p.c1 + p.c2 * p.c3) <= tol && std::abs(p.c2) > std::abs(p.c3);
  return branch1 || branch2;
}

bool coherence_freezing_condition(const BellDiagonalParams& p, int n_qubits, double tol) {
  if (n_qubits <= 0 || n_qubits % 2 != 0) fail(Err::ParamOutOfRange, "qubit count must be even");
  const double sign = (n_qubits / 2) % 2 == 0 ? 1.0 : -1.0;
  return std::abs(p.c2 - sign * p.c1 * p.c3) <= tol;
}

bool l1_freezing_condition_general(const TransferMatrix& tm, double tol) {
  const int d = tm.dim;
  const int off = d * d - d;
  for (int k = 1; k <= off; ++k)
    if (std::abs(tm.t(k, 0)) > tol) return false;
  for (int i = 1; i <= off; ++i) {
    const int block = (i - 1) / 2;
    for (int j = 1; j < d * d; ++j) {
      if ((j - 1) / 2 == block && j <= off) continue;
      if (std::abs(tm.t(i, j)) > tol) return false;
    }
  }
  for (int r = 0; r < off / 2; ++r) {
    Eigen::Matrix2d b = tm.t.block(1 + 2 * r, 1 + 2 * r, 2, 2);
    Eigen::Matrix2d g = b.transpose() * b - Eigen::Matrix2d::Identity();
    if (g.cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

FactorizationReport factorization_check(const KrausChannel& channel, std::vector<int> xk_indices,
                                        int n_states, Rng& rng) {
  const int d = channel.dim_in();
  const int off = d * d - d;
  if (xk_indices.empty())
    for (int k = 1; k <= off; ++k) xk_indices.push_back(k);
  std::vector<Matrix> xs = full_operator_basis(d);
  TransferMatrix tm = transfer_matrix(channel);

  double q = 0.0;
  bool first = true;
  for (int k : xk_indices) {
    if (k < 1 || k > off) fail(Err::ParamOutOfRange, "operator index outside the off-diagonal sector");
    for (int j = 0; j < d * d; ++j) {
      if (j == k) continue;
      if (std::abs(tm.t(k, j)) > 1e-8)
        fail(Err::NotApplicable, "channel has no eigen-operator structure on the requested set");
    }
    if (first) {
      q = tm.t(k, k);
      first = false;
    } else if (std::abs(tm.t(k, k) - q) > 1e-8) {
      fail(Err::NotApplicable, "eigen-operator factors differ across the requested set");
    }
  }

  FactorizationReport rep;
  rep.q = q;

  auto family_state = [&]() -> std::pair<Matrix, RealVector> {
    RealVector coeff = RealVector::Zero(d * d - 1);
    for (int k : xk_indices) coeff(k - 1) = rng.next_gaussian();
    for (int k = off + 1; k <= d * d - 1; ++k) coeff(k - 1) = rng.next_gaussian();
    Matrix m = Matrix::Identity(d, d) / d;
    for (int k = 1; k <= d * d - 1; ++k) m += 0.5 * coeff(k - 1) * xs[k];
    for (int tries = 0; tries < 200; ++tries) {
      EigResult e = hermitian_eig(m);
      if (e.values.minCoeff() >= 1e-6) break;
      m = 0.6 * m + 0.4 * Matrix::Identity(d, d) / d;
      coeff *= 0.6;
    }
    return {m, coeff};
  };

  for (int s = 0; s < n_states; ++s) {
    auto [m, coeff] = family_state();
    const double before = c_l1_value(m);
    const double after = c_l1_value(apply_raw(channel, m));
    if (s == 0) {
      // probe state: same off-diagonal direction, coherence normalized to 1
      double mass = 0.0;
      for (int r = 0; r < off / 2; ++r)
        mass += std::hypot(coeff(2 * r), coeff(2 * r + 1));
      if (mass > 1e-12) {
        Matrix probe = Matrix::Identity(d, d) / d;
        for (int k = 1; k <= off; ++k) probe += 0.5 * (coeff(k - 1) / mass) * xs[k];
        rep.probe_value = c_l1_value(apply_raw(channel, probe));
      }
    }
    if (before > 1e-12) {
      const double dev = std::abs(after - std::abs(q) * before) / before;
      rep.max_rel_deviation = std::max(rep.max_rel_deviation, dev);
    }
    ++rep.states_checked;
  }
  return rep;
}

KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner) {
  if (outer.dim_in() != inner.dim_out()) fail(Err::DimensionMismatch, "channel dimensions differ");
  std::vector<Matrix> prods;
  for (const Matrix& a : outer.kraus())
    for (const Matrix& b : inner.kraus()) prods.push_back(a * b);
  KrausChannel raw(prods, outer.label() + "*" + inner.label());
  // compress through the Choi matrix; prune negligible operators
  std::vector<Matrix> ops = kraus_from_choi(choi_of(raw), inner.dim_in(), outer.dim_out(), 1e-12);
  return KrausChannel(ops, outer.label() + "*" + inner.label());
}

std::optional<int> coherence_breaking_index(const KrausChannel& channel, int cap) {
  if (channel.dim_in() != channel.dim_out())
    fail(Err::DimensionMismatch, "index needs an endomorphic channel");
  KrausChannel power = channel;
  for (int n = 1; n <= cap; ++n) {
    ChannelClassification cls = classify(power);
    const bool diag_out = cls.semiclassical;
    if (diag_out) return n;
    if (n < cap) power = compose(channel, power);
  }
  return std::nullopt;
}

double cohering_power_unitary_l1(const Matrix& u) {
  if (!is_unitary(u)) fail(Err::NotUnitary, "matrix is not unitary within 1e-10");
  double best = 0.0;
  for (int j = 0; j < u.cols(); ++j) {
    double col = 0.0;
    for (int i = 0; i < u.rows(); ++i) col += std::abs(u(i, j));
    best = std::max(best, col);
  }
  return best * best - 1.0;
}

double cohering_power_unitary_rel_entropy(const Matrix& u) {
  if (!is_unitary(u)) fail(Err::NotUnitary, "matrix is not unitary within 1e-10");
  double best = 0.0;
  for (int j = 0; j < u.cols(); ++j) {
    RealVector p(u.rows());
    for (int i = 0; i < u.rows(); ++i) p(i) = std::norm(u(i, j));
    best = std::max(best, shannon_entropy(p));
  }
  return best;
}

namespace {

double measure_of(const Matrix& rho, PowerKind kind) {
  return kind == PowerKind::l1 ? c_l1_value(rho) : c_rel_entropy_value(rho);
}

double basis_state_max(const KrausChannel& ch, PowerKind kind) {
  const int d = ch.dim_in();
  double best = 0.0;
  for (int k = 0; k < d; ++k) {
    Matrix rho = Matrix::Zero(d, d);
    rho(k, k) = 1.0;
    best = std::max(best, measure_of(apply_raw(ch, rho), kind));
  }
  return best;
}

}  // namespace

double cohering_power(const KrausChannel& channel, PowerKind kind) {
  const double numeric = basis_state_max(channel, kind);
  if (channel.kraus().size() == 1 && is_unitary(channel.kraus().front())) {
    const Matrix& u = channel.kraus().front();
    const double closed = kind == PowerKind::l1 ? cohering_power_unitary_l1(u)
                                                : cohering_power_unitary_rel_entropy(u);
    if (std::abs(closed - numeric) > 1e-6)
      fail(Err::BoundViolation, "unitary cohering power disagrees with basis-state maximization");
    return closed;
  }
  return numeric;
}

double decohering_power(const KrausChannel& channel, PowerKind kind) {
  const int d = channel.dim_in();
  const double c_max = kind == PowerKind::l1 ? d - 1.0 : std::log2(static_cast<double>(d));
  const int grid = 32;
  double min_after = std::numeric_limits<double>::infinity();
  RealVector best_phases = RealVector::Zero(d - 1);
  std::vector<int> idx(d - 1, 0);
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  auto eval = [&](const RealVector& phases) {
    Vector psi(d);
    psi(0) = 1.0 / sqrt_d;
    for (int i = 1; i < d; ++i) psi(i) = std::exp(Complex(0, phases(i - 1))) / sqrt_d;
    Matrix rho = psi * psi.adjoint();
    return measure_of(apply_raw(channel, rho), kind);
  };
  bool done = false;
  while (!done) {
    RealVector phases(d - 1);
    for (int i = 0; i < d - 1; ++i) phases(i) = idx[i] * 2.0 * kPi / grid;
    const double v = eval(phases);
    if (v < min_after) {
      min_after = v;
      best_phases = phases;
    }
    int pos = 0;
    while (pos < d - 1 && ++idx[pos] == grid) {
      idx[pos] = 0;
      ++pos;
    }
    done = pos == d - 1;
    if (d == 1) break;
  }
  NelderMeadResult nm = nelder_mead(eval, best_phases, 2.0 * kPi / grid, 200);
  min_after = std::min(min_after, nm.value);
  return c_max - min_after;
}

double average_cohering_power_unitary(const Matrix& u) {
  if (!is_unitary(u)) fail(Err::NotUnitary, "matrix is not unitary within 1e-10");
  const int d = static_cast<int>(u.rows());
  double quart = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) quart += std::pow(std::abs(u(i, j)), 4.0);
  return (1.0 - quart / d) / (d + 1.0);
}

SsioMaxCoherence ssio_max_coherence(const DensityMatrix& rho, const ReferenceBasis& basis) {
  Matrix r = basis.to_basis(rho.mat());
  const int d = static_cast<int>(r.rows());
  RealMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    if (r(i, i).real() <= 1e-10) fail(Err::SingularDiagonal, "diagonal entry below 1e-10");
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      m(i, j) = std::abs(r(i, j)) / std::sqrt(r(i, i).real() * r(j, j).real());
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m);
  const int top = d - 1;
  SsioMaxCoherence out;
  out.value = es.eigenvalues()(top) - 1.0;
  RealVector phi = es.eigenvectors().col(top).cwiseAbs();
  double pmax = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d; ++i) {
    if (phi(i) * phi(i) < 1e-14) continue;
    pmax = std::min(pmax, r(i, i).real() / (phi(i) * phi(i)));
  }
  out.p_max = std::min(1.0, pmax);
  return out;
}

double energy_bounded_max_coherence(const RealVector& hamiltonian_diag, double temperature,
                                    double delta_e) {
  if (temperature <= 0.0) fail(Err::ParamOutOfRange, "temperature must be positive");
  if (delta_e < 0.0) fail(Err::ParamOutOfRange, "energy budget must be nonnegative");
  const int d = static_cast<int>(hamiltonian_diag.size());
  auto thermal = [&](double t) {
    RealVector p(d);
    const double emin = hamiltonian_diag.minCoeff();
    for (int i = 0; i < d; ++i) p(i) = std::exp(-(hamiltonian_diag(i) - emin) / t);
    p /= p.sum();
    return p;
  };
  auto energy = [&](double t) {
    RealVector p = thermal(t);
    return p.dot(hamiltonian_diag);
  };
  const double t_max = 1e6;
  const double e0 = energy(temperature);
  const double target = e0 + delta_e;
  if (delta_e == 0.0) return 0.0;
  if (target > energy(t_max) + 1e-6)
    fail(Err::NoSolution, "energy budget exceeds the infinite-temperature gap");
  double lo = temperature, hi = t_max;
  if (target >= energy(t_max)) {
    lo = t_max;
  } else {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (energy(mid) < target)
        lo = mid;
      else
        hi = mid;
    }
  }
  const double t_star = 0.5 * (lo + hi) >= t_max ? t_max : 0.5 * (lo + hi);
  return shannon_entropy(thermal(t_star)) - shannon_entropy(thermal(temperature));
}

}  // namespace qc
