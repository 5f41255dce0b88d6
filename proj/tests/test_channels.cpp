#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcohere/channels.hpp"
#include "qcohere/protocols.hpp"

using namespace qc;

namespace {

const ReferenceBasis& comp(int d) {
  static std::map<int, ReferenceBasis> cache;
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, ReferenceBasis::computational(d)).first;
  return it->second;
}

Matrix hadamard() {
  Matrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

BellDiagonalParams random_freezing_triple(Rng& rng) {
  // c2 = -c1 c3 with |c1| > |c3|
  while (true) {
    const double c1 = 1.8 * rng.next_double() - 0.9;
    const double c3 = (std::abs(c1) - 1e-3) * (2 * rng.next_double() - 1);
    BellDiagonalParams p{c1, -c1 * c3, c3};
    if (std::abs(c1) > std::abs(c3) && p.is_psd()) return p;
  }
}

}  // namespace

TEST_CASE("standard channels satisfy their defining actions") {
  KrausChannel pd = standard_channel(ChannelKind::phase_damping, 1.0);
  Rng rng(1);
  DensityMatrix rho = random_density(2, 2, rng);
  CHECK((apply(pd, rho).mat() - rho.mat()).cwiseAbs().maxCoeff() < 1e-12);

  KrausChannel dep = standard_channel(ChannelKind::depolarizing, 0.7);
  DensityMatrix mm{Matrix(0.5 * Matrix::Identity(2, 2))};
  CHECK((apply(dep, mm).mat() - mm.mat()).cwiseAbs().maxCoeff() < 1e-12);

  KrausChannel ad = standard_channel(ChannelKind::amplitude_damping, 1.0);
  Matrix ground = Matrix::Zero(2, 2);
  ground(0, 0) = 1.0;
  for (int t = 0; t < 5; ++t)
    CHECK((apply(ad, random_density(2, 2, rng)).mat() - ground).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(standard_channel(ChannelKind::bit_flip, 1.5), Error);
  CHECK_THROWS_AS(KrausChannel({pauli(1), pauli(3)}, "broken"), Error);
}

TEST_CASE("transfer matrix reproduces channel action") {
  KrausChannel ident = identity_channel(2);
  TransferMatrix t_id = transfer_matrix(ident);
  CHECK((t_id.t - RealMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);

  KrausChannel pf = standard_channel(ChannelKind::phase_flip, 0.3);
  TransferMatrix t_pf = transfer_matrix(pf);
  RealVector expected(4);
  expected << 1.0, 1.0 - 0.6, 1.0 - 0.6, 1.0;  // (I, x, y, z) scaling
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(t_pf.t(i, j) == doctest::Approx(i == j ? expected(i) : 0.0).epsilon(1e-12));

  // x' = T x against density-matrix evolution, 100 random states per channel
  Rng rng(2);
  auto consistency = [&](const KrausChannel& ch, int d) {
    std::vector<Matrix> xs;
    xs.push_back(std::sqrt(2.0 / d) * Matrix::Identity(d, d));
    for (auto& m : traceless_hermitian_basis(d)) xs.push_back(m);
    TransferMatrix tm = transfer_matrix(ch);
    for (int s = 0; s < 100; ++s) {
      DensityMatrix rho = random_density(d, d, rng);
      RealVector x(d * d), x_out(d * d);
      DensityMatrix evolved = apply(ch, rho);
      for (int i = 0; i < d * d; ++i) {
        x(i) = (rho.mat() * xs[i]).trace().real();
        x_out(i) = (evolved.mat() * xs[i]).trace().real();
      }
      REQUIRE(((tm.t * x) - x_out).cwiseAbs().maxCoeff() < 1e-9);
    }
  };
  consistency(unitary_channel(random_unitary(3, rng)), 3);
  consistency(standard_channel(ChannelKind::amplitude_damping, 0.35), 2);
  consistency(standard_channel(ChannelKind::depolarizing, 0.6), 2);
  consistency(standard_channel(ChannelKind::phase_damping, 0.4), 2);

  // subsystem application agrees with the lifted Kraus form
  DensityMatrix joint = random_density(4, 4, rng);
  KrausChannel bf = standard_channel(ChannelKind::bit_flip, 0.4);
  Matrix lifted = Matrix::Zero(4, 4);
  for (const Matrix& k : bf.kraus()) {
    Matrix kk = kron(k, Matrix::Identity(2, 2));
    lifted += kk * joint.mat() * kk.adjoint();
  }
  CHECK((apply_on_subsystem(bf, joint, 2, 2, Side::A).mat() - lifted).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("channel classification flags") {
  ChannelClassification pf = classify(standard_channel(ChannelKind::phase_flip, 0.3));
  CHECK(pf.unital);
  CHECK(pf.strictly_incoherent);
  CHECK(pf.incoherent);
  CHECK_FALSE(pf.coherence_breaking);

  ChannelClassification deph = classify(full_dephasing_channel(3));
  CHECK(deph.coherence_breaking);
  CHECK(deph.semiclassical);
  CHECK(deph.incoherent);
  REQUIRE(deph.cbc_witness.has_value());
  CHECK(deph.cbc_witness->size() == 3);

  ChannelClassification ad = classify(standard_channel(ChannelKind::amplitude_damping, 0.5));
  CHECK(ad.incoherent);
  CHECK_FALSE(ad.unital);

  ChannelClassification had = classify(unitary_channel(hadamard()));
  CHECK_FALSE(had.incoherent);
  CHECK(had.unital);

  // classification soundness: incoherent channels keep diagonal states diagonal
  Rng rng(3);
  for (const auto& ch :
       {standard_channel(ChannelKind::bit_flip, 0.2),
        standard_channel(ChannelKind::amplitude_damping, 0.3), full_dephasing_channel(2)}) {
    REQUIRE(classify(ch).incoherent);
    for (int t = 0; t < 100; ++t) {
      const double p = rng.next_double();
      Matrix diag = Matrix::Zero(2, 2);
      diag(0, 0) = p;
      diag(1, 1) = 1 - p;
      Matrix out = apply_raw(ch, diag);
      CHECK(std::abs(out(0, 1)) < 1e-10);
    }
  }
}

TEST_CASE("discord freezing condition and trajectory") {
  CHECK(discord_freezing_condition({0.6, -0.18, 0.3}));
  CHECK_FALSE(discord_freezing_condition({0.5, 0.5, 0.5}));
  CHECK_FALSE(discord_freezing_condition({0.0, 0.0, 0.3}));

  // one-sided phase damping keeps the entropic discord flat in the frozen window
  BellDiagonalParams p{0.6, -0.18, 0.3};
  std::vector<double> values;
  for (double pd = 0.6; pd <= 1.0 + 1e-9; pd += 0.08) {
    BellDiagonalParams evolved{p.c1 * pd, p.c2 * pd, p.c3};
    DensityMatrix rho = bell_diagonal(evolved);
    values.push_back(entropic_discord_2q(rho, Side::A).value);
  }
  for (double v : values) CHECK(v == doctest::Approx(values.front()).epsilon(1e-6));
}

TEST_CASE("phase damping acts on Bell-diagonal triples as (p c1, p c2, c3)") {
  KrausChannel pd = standard_channel(ChannelKind::phase_damping, 0.7);
  BellDiagonalParams p{0.5, -0.2, 0.25};
  DensityMatrix rho = bell_diagonal(p);
  DensityMatrix out = apply_on_subsystem(pd, rho, 2, 2, Side::A);
  auto triple = is_bell_diagonal(out);
  REQUIRE(triple.has_value());
  CHECK(triple->c1 == doctest::Approx(0.7 * 0.5));
  CHECK(triple->c2 == doctest::Approx(0.7 * -0.2));
  CHECK(triple->c3 == doctest::Approx(0.25));
}

TEST_CASE("coherence freezing conditions") {
  CHECK(coherence_freezing_condition({0.6, -0.18, 0.3}, 2));
  CHECK_FALSE(coherence_freezing_condition({0.6, 0.18, 0.3}, 2));
  CHECK_THROWS_AS(coherence_freezing_condition({0.6, -0.18, 0.3}, 3), Error);

  CHECK(l1_freezing_condition_general(transfer_matrix(identity_channel(2))));
  CHECK_FALSE(
      l1_freezing_condition_general(transfer_matrix(standard_channel(ChannelKind::phase_flip, 0.3))));

  // when the condition fails, the l1 coherence indeed decays along the trajectory
  Vector plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  DensityMatrix rho = PureState(plus).projector();
  double prev = 1.0;
  for (double q : {0.1, 0.2, 0.3, 0.4}) {
    DensityMatrix out = apply(standard_channel(ChannelKind::phase_flip, q), rho);
    const double now = c_l1(out, comp(2)).value;
    CHECK(now < prev - 1e-6);
    prev = now;
  }

  // freezing integration: two-sided bit flip holds every measure constant
  Rng rng(7);
  for (int t = 0; t < 4; ++t) {
    BellDiagonalParams p = random_freezing_triple(rng);
    DensityMatrix rho = bell_diagonal(p);
    const double l1_0 = c_l1(rho, comp(4)).value;
    const double cr_0 = c_rel_entropy(rho, comp(4)).value;
    const double tr_0 = c_trace(rho, comp(4)).value;
    for (double q : {0.15, 0.35, 0.5, 0.75, 1.0}) {
      KrausChannel bf = standard_channel(ChannelKind::bit_flip, q);
      DensityMatrix out =
          apply_on_subsystem(bf, apply_on_subsystem(bf, rho, 2, 2, Side::A), 2, 2, Side::B);
      CHECK(c_l1(out, comp(4)).value == doctest::Approx(l1_0).epsilon(1e-6));
      CHECK(c_rel_entropy(out, comp(4)).value == doctest::Approx(cr_0).epsilon(1e-6));
      CHECK(c_trace(out, comp(4)).value == doctest::Approx(tr_0).epsilon(1e-6));
    }
  }
}

TEST_CASE("l1 factorization law") {
  Rng rng(11);
  // phase flip: q = 1 - 2p on the whole off-diagonal sector
  FactorizationReport pf =
      factorization_check(standard_channel(ChannelKind::phase_flip, 0.3), {}, 100, rng);
  CHECK(pf.q == doctest::Approx(1.0 - 0.6));
  CHECK(pf.max_rel_deviation < 1e-9);
  CHECK(pf.probe_value == doctest::Approx(std::abs(pf.q)).epsilon(1e-9));

  FactorizationReport ident = factorization_check(identity_channel(2), {}, 20, rng);
  CHECK(ident.q == doctest::Approx(1.0));
  CHECK(ident.max_rel_deviation < 1e-12);

  FactorizationReport dep =
      factorization_check(standard_channel(ChannelKind::depolarizing, 0.4), {}, 100, rng);
  CHECK(dep.q == doctest::Approx(0.6));
  CHECK(dep.max_rel_deviation < 1e-9);

  // bit flip has no uniform eigen-factor on {x, y}; restricting to sigma_y works
  CHECK_THROWS_AS(
      factorization_check(standard_channel(ChannelKind::bit_flip, 0.3), {}, 10, rng), Error);
  FactorizationReport bf =
      factorization_check(standard_channel(ChannelKind::bit_flip, 0.3), {2}, 100, rng);
  CHECK(bf.q == doctest::Approx(0.4));
  CHECK(bf.max_rel_deviation < 1e-9);
}

TEST_CASE("coherence breaking index") {
  CHECK(coherence_breaking_index(full_dephasing_channel(2)).value() == 1);
  CHECK_FALSE(coherence_breaking_index(identity_channel(2), 8).has_value());

  // x -> y -> erased: breaking needs exactly two applications
  const double s = 1.0 / std::sqrt(2.0);
  Matrix k1(2, 2), k2(2, 2);
  k1 << s, 0, 0, Complex(0, s);
  k2 << 0, s, Complex(0, s), 0;
  KrausChannel two_step({k1, k2}, "xy_rotator");
  REQUIRE(classify(two_step).incoherent);
  CHECK_FALSE(classify(two_step).coherence_breaking);
  CHECK(coherence_breaking_index(two_step).value() == 2);
}

TEST_CASE("cohering and decohering power") {
  KrausChannel had = unitary_channel(hadamard());
  CHECK(cohering_power(had, PowerKind::l1) == doctest::Approx(1.0));
  CHECK(cohering_power_unitary_l1(hadamard()) == doctest::Approx(1.0));
  CHECK(cohering_power(identity_channel(2), PowerKind::l1) == doctest::Approx(0.0));
  CHECK(cohering_power(identity_channel(2), PowerKind::rel_entropy) == doctest::Approx(0.0));

  // tensor additivity: CP + 1 is multiplicative
  Matrix hh = kron(hadamard(), hadamard());
  CHECK(cohering_power_unitary_l1(hh) == doctest::Approx(3.0));
  CHECK(cohering_power(unitary_channel(hh), PowerKind::l1) == doctest::Approx(3.0).epsilon(1e-6));

  // equal cohering and decohering power on the dressed Hadamard family;
  // generic qubit unitaries only satisfy DP <= CP (rotation counterexample:
  // CP = |sin b| vs DP = 1 - |cos b|)
  Rng rng(13);
  for (int t = 0; t < 6; ++t) {
    Matrix d1 = Matrix::Zero(2, 2), d2 = Matrix::Zero(2, 2);
    d1(0, 0) = std::exp(Complex(0, 2 * M_PI * rng.next_double()));
    d1(1, 1) = std::exp(Complex(0, 2 * M_PI * rng.next_double()));
    d2(0, 0) = std::exp(Complex(0, 2 * M_PI * rng.next_double()));
    d2(1, 1) = std::exp(Complex(0, 2 * M_PI * rng.next_double()));
    KrausChannel dressed = unitary_channel(Matrix(d1 * hadamard() * d2));
    CHECK(cohering_power(dressed, PowerKind::l1) ==
          doctest::Approx(decohering_power(dressed, PowerKind::l1)).epsilon(1e-6));
  }
  for (int t = 0; t < 8; ++t) {
    KrausChannel ch = unitary_channel(random_unitary(2, rng));
    CHECK(decohering_power(ch, PowerKind::l1) <=
          cohering_power(ch, PowerKind::l1) + 1e-6);
  }
}

TEST_CASE("average cohering power of a unitary") {
  Matrix perm = Matrix::Zero(3, 3);
  perm(0, 2) = 1;
  perm(1, 0) = 1;
  perm(2, 1) = 1;
  CHECK(average_cohering_power_unitary(perm) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(average_cohering_power_unitary(hadamard()) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

  // Fourier columns are mutually unbiased and reach the cap
  const int d = 3;
  Matrix f(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      f(i, j) = std::exp(Complex(0, 2 * M_PI * i * j / d)) / std::sqrt(static_cast<double>(d));
  CHECK(average_cohering_power_unitary(f) ==
        doctest::Approx((d - 1.0) / (d * (d + 1.0))).epsilon(1e-12));

  // Monte-Carlo over dephased Haar inputs reproduces the closed form
  Rng rng(21);
  Matrix u = random_unitary(3, rng);
  const double closed = average_cohering_power_unitary(u);
  double mean = 0.0, sq = 0.0;
  const int n = 10000;
  for (int s = 0; s < n; ++s) {
    PureState psi = random_pure(3, rng);
    Matrix delta = dephase_computational(psi.projector().mat());
    Matrix out = u * delta * u.adjoint();
    double v = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) v += std::norm(out(i, j));
    mean += v;
    sq += v * v;
  }
  mean /= n;
  const double stderr_mc = std::sqrt(std::max(0.0, sq / n - mean * mean) / n);
  CHECK(std::abs(mean - closed) < 3.0 * stderr_mc + 1e-12);
}

TEST_CASE("stochastic-SIO maximal coherence") {
  for (int d : {2, 3, 4}) {
    auto [value, pmax] = ssio_max_coherence(mcms(1.0 - 1e-12, d), comp(d));
    CHECK(value == doctest::Approx(d - 1.0).epsilon(1e-6));
    CHECK(pmax == doctest::Approx(1.0).epsilon(1e-6));
  }

  Matrix diag = Matrix::Zero(3, 3);
  diag(0, 0) = 0.5;
  diag(1, 1) = 0.3;
  diag(2, 2) = 0.2;
  auto [value_diag, pmax_diag] = ssio_max_coherence(DensityMatrix{diag}, comp(3));
  CHECK(value_diag == doctest::Approx(0.0).epsilon(1e-10));
  (void)pmax_diag;

  // qubit construction against a random strictly-incoherent-Kraus search
  Matrix m(2, 2);
  m << 0.7, 0.3, 0.3, 0.3;
  DensityMatrix rho{m};
  auto [value_q, pmax_q] = ssio_max_coherence(rho, comp(2));
  (void)pmax_q;
  Rng rng(17);
  double best_found = 0.0;
  for (int t = 0; t < 10000; ++t) {
    Matrix k = Matrix::Zero(2, 2);  // diagonal stochastic-SIO Kraus candidate
    const double a = rng.next_double(), b = rng.next_double();
    k(0, 0) = std::sqrt(a);
    k(1, 1) = std::sqrt(b);
    Matrix out = k * rho.mat() * k.adjoint();
    const double p = out.trace().real();
    if (p < 1e-9) continue;
    best_found = std::max(best_found, c_l1_value(out / p));
  }
  CHECK(best_found <= value_q + 1e-9);
  CHECK(value_q == doctest::Approx(best_found).epsilon(1e-3));

  Matrix singular = Matrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  CHECK_THROWS_AS(ssio_max_coherence(DensityMatrix{singular}, comp(2)), Error);
}

TEST_CASE("energy-bounded coherence creation") {
  RealVector h(2);
  h << 0.0, 1.0;
  CHECK(energy_bounded_max_coherence(h, 0.5, 0.0) == doctest::Approx(0.0));

  const double bound = energy_bounded_max_coherence(h, 1e-6, 0.5);
  CHECK(bound == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(energy_bounded_max_coherence(h, 1e-6, 0.51), Error);

  // interior solution: entropy difference at the matched temperature
  const double mid = energy_bounded_max_coherence(h, 0.5, 0.1);
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
}

TEST_CASE("unitary cohering power cross-check against brute basis evaluation") {
  Rng rng(19);
  for (int t = 0; t < 10; ++t) {
    Matrix u = random_unitary(3, rng);
    KrausChannel ch = unitary_channel(u);
    double brute = 0.0;
    for (int k = 0; k < 3; ++k) {
      Matrix rho = Matrix::Zero(3, 3);
      rho(k, k) = 1.0;
      brute = std::max(brute, c_l1_value(u * rho * u.adjoint()));
    }
    CHECK(cohering_power(ch, PowerKind::l1) == doctest::Approx(brute).epsilon(1e-10));
  }
}
