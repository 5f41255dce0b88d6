#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcohere/channels.hpp"
#include "qcohere/min_measures.hpp"

using namespace qc;

namespace {

BellDiagonalParams random_bell_triple(Rng& rng) {
  while (true) {
    BellDiagonalParams p{2 * rng.next_double() - 1, 2 * rng.next_double() - 1,
                         2 * rng.next_double() - 1};
    if (p.is_psd()) return p;
  }
}

DensityMatrix product_with_nondegenerate_a(Rng& rng, int dim_b) {
  Matrix a(2, 2);
  a << 0.75, 0.08, 0.08, 0.25;
  return DensityMatrix{kron(a, random_density(dim_b, dim_b, rng).mat())};
}

}  // namespace

TEST_CASE("HS MIN closed forms") {
  CHECK(hs_min(bell_state(0).projector(), 2, 2).value == doctest::Approx(0.5));

  Rng rng(1);
  CHECK(hs_min(product_with_nondegenerate_a(rng, 2), 2, 2).value ==
        doctest::Approx(0.0).epsilon(1e-10));
  CHECK(hs_min(product_with_nondegenerate_a(rng, 3), 2, 3).value ==
        doctest::Approx(0.0).epsilon(1e-10));

  CHECK(hs_min(werner(0.8, 2), 2, 2).value ==
        doctest::Approx(std::pow(2 * 0.8 - 1, 2.0) / 18.0).epsilon(1e-10));
  for (double x : {0.1, 0.4, 0.9})
    CHECK(hs_min(isotropic(x, 2), 2, 2).value ==
          doctest::Approx(std::pow(4 * x - 1, 2.0) / 18.0).epsilon(1e-10));

  // pure 2 x n: N_G = 1 - sum lambda_k^2
  Vector v = Vector::Zero(6);
  v(0) = std::sqrt(0.6);
  v(4) = std::sqrt(0.4);  // |0>|1> + |1>|1>-ish Schmidt split across B levels
  DensityMatrix psi = PureState(v).projector();
  CHECK(hs_min(psi, 2, 3).value == doctest::Approx(1.0 - 0.36 - 0.16).epsilon(1e-9));
}

TEST_CASE("HS MIN matches the eigenbasis evaluation for nondegenerate marginals") {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 2);
    DensityMatrix rho = random_density(2 * n, 2 * n, rng);
    Matrix ma = partial_trace_raw(rho.mat(), 2, n, Keep::A);
    Vector3 x;
    for (int i = 1; i <= 3; ++i) x(i - 1) = (ma * pauli(i)).trace().real();
    if (x.norm() < 1e-6) continue;
    const double theta = std::acos(std::clamp(x(2) / x.norm(), -1.0, 1.0));
    const double phi = std::atan2(x(1), x(0));
    Matrix post = measure_qubit_a(rho.mat(), n, theta, phi);
    const double direct = std::pow(hs_norm(rho.mat() - post), 2.0);
    CHECK(hs_min(rho, 2, n).value == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("trace MIN dispatch and closed forms") {
  CHECK(trace_min(isotropic(0.9, 2), 2, 2).value ==
        doctest::Approx(2.0 * std::abs(4 * 0.9 - 1.0) / 6.0).epsilon(1e-9));
  for (double x : {-0.6, 0.1, 0.7})
    CHECK(trace_min(werner(x, 2), 2, 2).value ==
          doctest::Approx(std::abs(2 * x - 1) / 3.0).epsilon(1e-9));

  // pure 2 x n: N_T = 2 sqrt(lambda_1 lambda_2)
  Vector v = Vector::Zero(6);
  v(0) = std::sqrt(0.7);
  v(5) = std::sqrt(0.3);
  CHECK(trace_min(PureState(v).projector(), 2, 3).value ==
        doctest::Approx(2.0 * std::sqrt(0.7 * 0.3)).epsilon(1e-6));

  // Bell-diagonal x = 0 branch: the largest |c_i| survives
  DensityMatrix bell = bell_diagonal({0.5, 0.3, 0.1});
  MeasureResult analytic = trace_min(bell, 2, 2);
  CHECK(analytic.method == Method::analytic);
  CHECK(analytic.value == doctest::Approx(0.5));

  // sweep oracle for the degenerate branch
  auto f = [&](double t, double p) {
    return -trace_norm(bell.mat() - measure_qubit_a(bell.mat(), 2, t, p));
  };
  CHECK(analytic.value == doctest::Approx(-sweep_minimize(f, {}).value).epsilon(1e-5));
}

TEST_CASE("Bures MIN on Bell-diagonal states against the sqrt(rho) sweep") {
  CHECK(bures_min_bell({0, 0, 0}).value == doctest::Approx(0.0).epsilon(1e-12));

  Rng rng(3);
  for (auto p : {BellDiagonalParams{1, -1, 1}, BellDiagonalParams{0.5, 0.3, 0.1},
                 random_bell_triple(rng), random_bell_triple(rng)}) {
    DensityMatrix rho = bell_diagonal(p);
    const double f_sweep = bures_fmin_sweep(rho, 2);
    MeasureResult formula = bures_min_bell(p);
    CHECK(formula.value == doctest::Approx(1.0 - std::sqrt(f_sweep)).epsilon(1e-5));
  }
}

TEST_CASE("relative entropy MIN") {
  Rng rng(5);
  // classical-classical with a nondegenerate marginal
  Matrix cc = Matrix::Zero(4, 4);
  cc(0, 0) = 0.7;
  cc(3, 3) = 0.3;
  CHECK(rel_entropy_min(DensityMatrix{cc}, 2, 2).value == doctest::Approx(0.0).epsilon(1e-9));

  CHECK(rel_entropy_min(bell_state(0).projector(), 2, 2).value ==
        doctest::Approx(1.0).epsilon(1e-6));

  for (int t = 0; t < 8; ++t) {
    BellDiagonalParams p = random_bell_triple(rng);
    DensityMatrix rho = bell_diagonal(p);
    CHECK(rel_entropy_min(rho, 2, 2).value ==
          doctest::Approx(rel_entropy_min_bell_formula(p)).epsilon(1e-6));
  }
}

TEST_CASE("skew MIN and uncertainty-induced nonlocality") {
  // pure states: N_SI = N_G
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    PureState psi = random_pure(4, rng);
    DensityMatrix rho = psi.projector();
    CHECK(skew_min(rho, 2, 2).value == doctest::Approx(hs_min(rho, 2, 2).value).epsilon(1e-8));
  }

  for (double x : {0.2, 0.5, 0.8}) {
    const double expected = 0.5 * ((2.0 - x) / 3.0 - std::sqrt((1.0 / 3.0) * (1 - x * x)));
    CHECK(skew_min(werner(x, 2), 2, 2).value ==
          doctest::Approx(std::max(0.0, expected)).epsilon(1e-9));
  }
  for (double x : {0.3, 0.6}) {
    const double expected =
        0.5 * std::pow(std::sqrt(x) - std::sqrt((1 - x) / 3.0), 2.0);
    CHECK(skew_min(isotropic(x, 2), 2, 2).value ==
          doctest::Approx(std::max(0.0, expected)).epsilon(1e-9));
  }

  // UIN against a direct observable sweep
  DensityMatrix iso = isotropic(0.5, 2);
  MeasureResult u = uin(iso, 2, 2);
  Matrix sr = matrix_sqrt(iso);
  auto neg_skew = [&](double theta, double phi) {
    Vector3 n = sweep_direction(theta, phi);
    Matrix k = Matrix::Zero(2, 2);
    for (int i = 0; i < 3; ++i) k += n(i) * pauli(i + 1);
    Matrix kfull = kron(k, Matrix::Identity(2, 2));
    return (sr * kfull * sr * kfull).trace().real();  // I = 1 - this
  };
  const double swept = 1.0 - sweep_minimize(neg_skew, {}).value;
  CHECK(u.value == doctest::Approx(swept).epsilon(1e-5));

  CHECK(uin(bell_state(0).projector(), 2, 2).value ==
        doctest::Approx(2.0 * skew_min(bell_state(0).projector(), 2, 2).value).epsilon(1e-9));
}

TEST_CASE("MINs vanish on product states with nondegenerate marginal") {
  Rng rng(11);
  for (int t = 0; t < 5; ++t) {
    DensityMatrix prod = product_with_nondegenerate_a(rng, 2);
    CHECK(hs_min(prod, 2, 2).value < 1e-6);
    CHECK(trace_min(prod, 2, 2).value < 1e-6);
    CHECK(rel_entropy_min(prod, 2, 2).value < 1e-6);
    CHECK(skew_min(prod, 2, 2).value < 1e-6);
    CHECK(uin(prod, 2, 2).value < 1e-6);
  }
}

TEST_CASE("local unitary invariance of the MIN family") {
  Rng rng(13);
  DensityMatrix rho = random_density(4, 4, rng);
  const double v_hs = hs_min(rho, 2, 2).value;
  const double v_tr = trace_min(rho, 2, 2).value;
  const double v_re = rel_entropy_min(rho, 2, 2).value;
  const double v_si = skew_min(rho, 2, 2).value;
  const double v_ui = uin(rho, 2, 2).value;
  for (int t = 0; t < 12; ++t) {
    Matrix u = kron(random_unitary(2, rng), random_unitary(2, rng));
    DensityMatrix rot{Matrix(u * rho.mat() * u.adjoint())};
    CHECK(hs_min(rot, 2, 2).value == doctest::Approx(v_hs).epsilon(1e-6));
    CHECK(trace_min(rot, 2, 2).value == doctest::Approx(v_tr).epsilon(1e-6));
    CHECK(rel_entropy_min(rot, 2, 2).value == doctest::Approx(v_re).epsilon(1e-6));
    CHECK(skew_min(rot, 2, 2).value == doctest::Approx(v_si).epsilon(1e-6));
    CHECK(uin(rot, 2, 2).value == doctest::Approx(v_ui).epsilon(1e-6));
  }
}

TEST_CASE("trace MIN contracts on B; HS MIN ancilla counterexample") {
  Rng rng(17);
  for (int t = 0; t < 6; ++t) {
    DensityMatrix rho = random_density(4, 4, rng);
    Matrix g1(2, 2), g2(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        g1(i, j) = rng.next_complex_gaussian();
        g2(i, j) = rng.next_complex_gaussian();
      }
    Matrix norm = g1.adjoint() * g1 + g2.adjoint() * g2;
    EigResult e = hermitian_eig(norm);
    Matrix d = Matrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i) d(i, i) = 1.0 / std::sqrt(e.values(i));
    Matrix inv_sqrt = e.vectors * d * e.vectors.adjoint();
    KrausChannel lambda_b({g1 * inv_sqrt, g2 * inv_sqrt}, "random_cptp");
    DensityMatrix out = apply_on_subsystem(lambda_b, rho, 2, 2, Side::B);
    CHECK(trace_min(out, 2, 2).value <= trace_min(rho, 2, 2).value + 1e-8);
  }

  // N_G(rho (x) rho_C) = N_G(rho) tr(rho_C^2)
  DensityMatrix rho = random_density(4, 4, rng);
  DensityMatrix anc = random_density(2, 2, rng);
  DensityMatrix ext{kron(rho.mat(), anc.mat())};
  const double purity_c = (anc.mat() * anc.mat()).trace().real();
  CHECK(hs_min(ext, 2, 4).value ==
        doctest::Approx(hs_min(rho, 2, 2).value * purity_c).epsilon(1e-9));
}

TEST_CASE("MIN optimum sits at the marginal eigenbasis when nondegenerate") {
  Rng rng(19);
  for (int t = 0; t < 10; ++t) {
    DensityMatrix rho = random_density(4, 4, rng);
    Matrix ma = partial_trace_raw(rho.mat(), 2, 2, Keep::A);
    Vector3 x;
    for (int i = 1; i <= 3; ++i) x(i - 1) = (ma * pauli(i)).trace().real();
    if (x.norm() < 1e-6) continue;
    MeasureResult res = trace_min(rho, 2, 2);
    REQUIRE(res.witness_angles.has_value());
    Matrix post =
        measure_qubit_a(rho.mat(), 2, (*res.witness_angles)[0], (*res.witness_angles)[1]);
    CHECK(trace_norm(rho.mat() - post) == doctest::Approx(res.value).epsilon(1e-10));
  }
}

TEST_CASE("two-sided HS MIN") {
  // pure states keep the one-sided value
  Rng rng(23);
  for (int t = 0; t < 6; ++t) {
    PureState psi = random_pure(4, rng);
    DensityMatrix rho = psi.projector();
    CHECK(symmetric_hs_min_2q(rho).value ==
          doctest::Approx(hs_min(rho, 2, 2).value).epsilon(1e-5));
  }
}

TEST_CASE("HS MIN nullity checker") {
  Rng rng(29);
  DensityMatrix prod = product_with_nondegenerate_a(rng, 2);
  CHECK(hs_min_is_null(prod, 2, 2));
  CHECK(hs_min(prod, 2, 2).value < 1e-8);

  DensityMatrix phi = bell_state(0).projector();
  CHECK_FALSE(hs_min_is_null(phi, 2, 2));
  CHECK(hs_min(phi, 2, 2).value > 1e-3);

  for (int t = 0; t < 10; ++t) {
    DensityMatrix rho = random_density(4, 4, rng);
    const bool null_flag = hs_min_is_null(rho, 2, 2);
    const bool value_zero = hs_min(rho, 2, 2).value < 1e-8;
    CHECK(null_flag == value_zero);
  }
}
