#include <doctest.h>

#include <cmath>
#include <numbers>

#include "liedeg/cocycles.hpp"
#include "liedeg/degree.hpp"
#include "liedeg/errors.hpp"
#include "liedeg/spectral.hpp"

using namespace liedeg;

namespace {

const double kPi = std::numbers::pi;

CoefFn mono(int b) {
  return [b](const BasePoint& x) { return monomial({b}, x); };
}

CoefFn bump() {
  return [](const BasePoint& x) { return cplx(1.0) + 0.5 * monomial({1}, x); };
}

Eigen::MatrixXcd random_unitary(int n, Rng& rng) {
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
  return Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
}

}  // namespace

TEST_CASE("correlations satisfy c_N(a, b) = conj c_-N(b, a)") {
  const TranslationFlow f = TranslationFlow::default_for(1);
  const ManufacturedSu2 m = su2_manufactured({1}, {1}, 0.7, f);
  const Representation rep = Representation::su2(1);
  const FiberVector a = FiberVector::single(rep, 0, 0, bump(), {1});
  const FiberVector b = FiberVector::single(rep, 0, 1, mono(-1), {1});
  for (long n : {0L, 1L, 4L, 13L}) {
    const cplx fwd = koopman_apply_corr(a, b, m.phi, f, n).value;
    const cplx bwd = koopman_apply_corr(b, a, m.phi, f, -n).value;
    CHECK(std::abs(fwd - std::conj(bwd)) < 1e-10);
  }
  // c_0 of a probe with itself is its squared norm
  const cplx c0 = koopman_apply_corr(a, a, m.phi, f, 0).value;
  CHECK(std::abs(c0 - inner_product(a, a, QuadratureSpec::uniform(1, 8))) < 1e-14);
  CHECK(c0.real() == doctest::Approx(1.25 / 2.0));
}

TEST_CASE("Anzai correlations pick out a single index with the quadratic phase") {
  const TranslationFlow f = TranslationFlow::default_for(1);
  const Cocycle c = torus_monomial({{1}}, f);
  const Representation rep = Representation::torus({1});
  const FiberVector a = FiberVector::single(rep, 0, 0, mono(5), {5});
  const FiberVector b = FiberVector::single(rep, 0, 0, mono(0), {0});
  const CorrelationSeries s = correlation_series(a, b, c, f, 10);
  REQUIRE(s.values.size() == 11);
  for (long n = 0; n <= 10; ++n) {
    const double turns = f.alpha[0] * double(n) * double(n - 1) / 2.0;
    const cplx want = n == 5 ? std::polar(1.0, 2 * kPi * turns) : cplx(0.0);
    CHECK(std::abs(s.values[static_cast<std::size_t>(n)] - want) < 1e-12);
  }
  CHECK(s.flagged_count() == 0);
  CHECK(s.quad.nodes.front() == sized_nodes(5, 10, 1));

  // four nodes alias the frequency -4 onto 0, and the doubled grid exposes it
  const CorrelationSeries coarse = correlation_series(a, b, c, f, 10, QuadratureSpec::uniform(1, 4));
  CHECK(std::abs(coarse.values[1]) == doctest::Approx(1.0));
  CHECK(coarse.flagged[1]);
  CHECK_THROWS_AS(correlation_series(a, b, c, f, 0), ConfigError);
  const FiberVector other = FiberVector::single(Representation::torus({2}), 0, 0, mono(0), {0});
  CHECK_THROWS_AS(correlation_series(a, other, c, f, 3), TagMismatchError);
}

TEST_CASE("commutator average agrees with the differential of the pointwise degree") {
  const TranslationFlow f1 = TranslationFlow::default_for(1), f2 = TranslationFlow::default_for(2);
  struct Case {
    Cocycle c;
    Representation rep;
    const TranslationFlow* f;
  };
  const std::vector<Case> cases = {
      {su2_manufactured({1}, {1}, 0.7, f1).phi, Representation::su2(2), &f1},
      {so3_x3_rotation({1}, 0.3, f1), Representation::so3(2), &f1},
      {u2_so3_torus({1, 0}, 1.0, {1, 0}, f2), Representation::u2(1, 1), &f2},
      {torus_monomial({{2}}, f1), Representation::torus({3}), &f1}};
  for (const Case& k : cases) {
    CAPTURE(k.c.name);
    for (const BasePoint& x : random_points(k.f->dim(), 3, {9, 1})) {
      const Eigen::MatrixXcd d = d_n_average(k.rep, k.c, *k.f, x, 300);
      const AlgebraElement deg = degree_pointwise(k.c, *k.f, x, 300).value;
      const Eigen::MatrixXcd want = cplx(0.0, 1.0) * rep_differential(k.rep, deg).m;
      CHECK((d - want).norm() < 1e-9);
      CHECK((d - d.adjoint()).norm() < 1e-12);
    }
  }
  CHECK_THROWS_AS(d_n_average(Representation::su2(1), cases[0].c, f1, random_points(1, 1, {9, 2})[0], 0),
                  ConfigError);
}

TEST_CASE("kernel split diagonalizes Hermitian matrices and rejects the rest") {
  const KernelSplit diag = kernel_split(Eigen::Vector3cd(0.0, 2.0, -1.0).asDiagonal());
  CHECK(diag.q.isIdentity());
  CHECK(diag.kernel == std::vector<int>{0});
  CHECK(diag.complement == std::vector<int>{1, 2});

  Rng rng({9, 3});
  const Eigen::MatrixXcd u = random_unitary(4, rng);
  const Eigen::MatrixXcd h = u * Eigen::Vector4cd(0.0, 0.0, 3.0, -0.5).asDiagonal() * u.adjoint();
  const KernelSplit ks = kernel_split(h);
  Eigen::MatrixXcd t = ks.q * h * ks.q.inverse();
  t.diagonal().setZero();
  CHECK(t.norm() < 1e-12);
  CHECK(ks.kernel.size() == 2);
  CHECK(ks.complement.size() == 2);
  REQUIRE(ks.eigenvalues.size() == 4);
  CHECK(ks.eigenvalues.front() == doctest::Approx(-0.5));
  CHECK(ks.eigenvalues.back() == doctest::Approx(3.0));

  Eigen::Matrix2cd bad;
  bad << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(kernel_split(bad), NonHermitianError);
  CHECK_THROWS_AS(kernel_split(Eigen::MatrixXcd::Zero(2, 3)), NonHermitianError);
}

TEST_CASE("conjugating by the inverse transfer intertwines the two cocycles") {
  const TranslationFlow f = TranslationFlow::default_for(1);
  const ManufacturedSu2 m = su2_manufactured({1}, {1}, 0.7, f);
  const TransferFunction inv = inverse_transfer(m.zeta);
  for (const BasePoint& x : random_points(1, 5, {9, 4}))
    CHECK(element_distance(group_mul(m.zeta.value(x), inv.value(x)), GroupElement::identity(GroupTag::su2())) <
          1e-14);
  CHECK(validate_m_field(inv, f, random_points(1, 8, {9, 5}), 1e-4).max_deviation < 1e-5);

  const Representation rep = Representation::su2(1);
  const FiberVector psi = FiberVector::single(rep, 0, 1, bump(), {1});
  const CorrelationSeries flat = correlation_series(psi, psi, m.delta, f, 12);
  const CorrelationSeries good = correlation_series(conjugate_vector(psi, inv), conjugate_vector(psi, inv), m.phi, f, 12);
  const CorrelationSeries wrong =
      correlation_series(conjugate_vector(psi, m.zeta), conjugate_vector(psi, m.zeta), m.phi, f, 12);
  double gap_good = 0.0, gap_wrong = 0.0;
  for (std::size_t n = 0; n < flat.values.size(); ++n) {
    gap_good = std::max(gap_good, std::abs(flat.values[n] - good.values[n]));
    gap_wrong = std::max(gap_wrong, std::abs(flat.values[n] - wrong.values[n]));
  }
  CHECK(gap_good < 1e-10);
  CHECK(gap_wrong > 1e-3);
  CHECK_THROWS_AS(conjugate_vector(FiberVector::single(Representation::so3(1), 0, 0, bump(), {1}), inv),
                  TagMismatchError);
}

TEST_CASE("Wiener averages of simple sequences") {
  CHECK(wiener_average(std::vector<cplx>(6, 0.0)) == std::vector<double>(6, 0.0));
  std::vector<cplx> unit;
  for (int n = 0; n < 9; ++n) unit.push_back(std::polar(1.0, 0.3 * n));
  const std::vector<double> a = wiener_average(unit);
  CHECK(a[0] == 0.0);
  for (std::size_t n = 1; n < a.size(); ++n) CHECK(a[n] == doctest::Approx(1.0));
  // |c_n| = 1/n gives partial sums of 1/n^2 divided by N
  std::vector<cplx> decay = {1.0};
  for (int n = 1; n <= 4; ++n) decay.push_back(1.0 / n);
  CHECK(wiener_average(decay)[4] == doctest::Approx((1 + 0.25 + 1.0 / 9 + 1.0 / 16) / 4));
}

TEST_CASE("modulus of continuity along the flow") {
  const TranslationFlow f = TranslationFlow::default_for(1);
  const std::vector<double> t = dyadic_t_grid(10);
  REQUIRE(t.size() == 10);
  CHECK(t.back() == 1.0);
  CHECK(t.front() == std::ldexp(1.0, -9));
  const auto grid = quadrature_points(QuadratureSpec::uniform(1, 64));

  const DiniReport flat = dini_modulus(
      [](const BasePoint&) { return Eigen::MatrixXcd::Identity(2, 2); }, f, t, grid);
  for (double s : flat.samples) CHECK(s == 0.0);
  CHECK(flat.integral == 0.0);
  CHECK_FALSE(flat.plateau);

  const DiniReport wave = dini_modulus(
      [](const BasePoint& x) { return Eigen::MatrixXcd::Constant(1, 1, monomial({1}, x)); }, f, t, grid);
  for (std::size_t k = 0; k < t.size(); ++k)
    CHECK(wave.samples[k] == doctest::Approx(2 * std::abs(std::sin(kPi * f.alpha[0] * t[k]))).epsilon(1e-9));
  CHECK_FALSE(wave.plateau);
  CHECK(std::isfinite(wave.integral));

  const DiniReport step = dini_modulus(
      [](const BasePoint& x) { return Eigen::MatrixXcd::Constant(1, 1, x.phases[0] < 0.5 ? 1.0 : -1.0); }, f, t,
      grid);
  for (double s : step.samples) CHECK(s == doctest::Approx(2.0));
  CHECK(step.plateau);
  CHECK_THROWS_AS(dini_modulus([](const BasePoint&) { return Eigen::MatrixXcd::Identity(1, 1); }, f, {0.0, 0.5}, grid),
                  ConfigError);
}

TEST_CASE("regularity check separates smooth cocycles from a branch jump") {
  const TranslationFlow f2 = TranslationFlow::default_for(2);
  const auto grid = quadrature_points(QuadratureSpec::uniform(2, 16));
  const RegularityCheck smooth =
      regularity_check(Representation::u2(1, 1), u2_so3_torus({1, 0}, 1.0, {1, 0}, f2), f2, grid);
  CHECK(smooth.bounded);
  const RegularityCheck jump =
      regularity_check(Representation::u2(1, 1), u2_so3_torus({0, 0}, 1.0, {1, 0}, f2), f2, grid);
  CHECK_FALSE(jump.bounded);
  CHECK(jump.fd_sup > 1e3);
}

TEST_CASE("mixing verdicts for Anzai blocks") {
  const TranslationFlow f = TranslationFlow::default_for(1);
  const Cocycle c = torus_monomial({{1}}, f);
  const auto grid = quadrature_points(QuadratureSpec::uniform(1, 32));
  const BasePoint x0 = grid.front();
  auto inputs = [&](const Representation& rep) {
    MixingInputs in;
    in.d = d_n_average(rep, c, f, x0, 100);
    in.probes = {FiberVector::single(rep, 0, 0, bump(), {1})};
    in.n_max = 30;
    in.check_grid = grid;
    return in;
  };

  const Representation q1 = Representation::torus({1});
  std::vector<CorrelationSeries> series;
  const SpectralVerdict v1 = mixing_verdict(q1, 0, c, f, inputs(q1), &series);
  CHECK(v1.verdict == "SUPPORTED");
  CHECK(v1.kernel_indices.empty());
  REQUIRE(series.size() == 1);
  CHECK(v1.tail_max < 1e-12);
  CHECK(v1.c0 == doctest::Approx(1.25));
  // only c_1 survives, with modulus 1/2
  CHECK(v1.wiener.back() == doctest::Approx(0.25 / 30));

  const Representation q0 = Representation::torus({0});
  const SpectralVerdict v0 = mixing_verdict(q0, 0, c, f, inputs(q0));
  CHECK(v0.verdict == "NO-CLAIM");
  CHECK(v0.kernel_indices == std::vector<int>{0});
  bool scope_note = false;
  for (const std::string& n : v0.notes) scope_note = scope_note || n.find("NOT-IN-SCOPE") != std::string::npos;
  CHECK(scope_note);

  // a wrong nonzero D on the trivial block puts a non-decaying probe in the complement
  MixingInputs lie = inputs(q0);
  lie.d = Eigen::MatrixXcd::Constant(1, 1, 1.0);
  CHECK(mixing_verdict(q0, 0, c, f, lie).verdict == "VIOLATED");
}

TEST_CASE("absolutely continuous verdicts") {
  const TranslationFlow f = TranslationFlow::default_for(1);
  const Cocycle c = torus_monomial({{1}}, f);
  const auto grid = quadrature_points(QuadratureSpec::uniform(1, 32));
  const Representation rep = Representation::torus({2});
  AcInputs in;
  in.d = d_n_average(rep, c, f, grid.front(), 100);
  in.dini = dini_modulus(lie_derivative_field(rep, c), f, dyadic_t_grid(8), grid);
  in.torus_irrational_base = true;
  in.check_grid = grid;
  const SpectralVerdict v = ac_verdict(rep, 0, c, f, in);
  CHECK(v.verdict == "AC-PREDICTED");
  REQUIRE(v.hypotheses.size() == 4);
  CHECK(v.hypotheses[2].value == doctest::Approx(std::pow(4 * kPi * f.alpha[0], 2)));
  bool lebesgue = false;
  for (const std::string& n : v.notes) lebesgue = lebesgue || n.find("Lebesgue") != std::string::npos;
  CHECK(lebesgue);

  AcInputs slow = in;
  slow.uniform_diagnostic = 1.0;
  CHECK(ac_verdict(rep, 0, c, f, slow).verdict == "NO-CLAIM");

  AcInputs zero = in;
  zero.d = Eigen::MatrixXcd::Zero(1, 1);
  CHECK(ac_verdict(Representation::torus({0}), 0, c, f, zero).verdict == "NO-CLAIM");

  AcInputs part = in;
  part.d = Eigen::Vector2cd(0.0, 1.0).asDiagonal();
  const Representation su = Representation::su2(1);
  const Cocycle sd = su2_diagonal({1}, f);
  part.dini = dini_modulus(lie_derivative_field(su, sd), f, dyadic_t_grid(8), grid);
  CHECK(ac_verdict(su, 0, sd, f, part).verdict == "AC-PREDICTED-ON-COMPLEMENT");
}

TEST_CASE("series CSV has a header and round-trips values") {
  CorrelationSeries s;
  s.values = {cplx(1.0, 0.0), cplx(0.1, -1.0 / 3.0)};
  s.err_estimate = {0.0, 2.5e-17};
  s.flagged = {false, false};
  const std::string csv = series_csv(s);
  CHECK(csv.rfind("N,re,im,abs,err_estimate\n", 0) == 0);
  const std::size_t second = csv.find("\n1,");
  REQUIRE(second != std::string::npos);
  double re = 0, im = 0;
  CHECK(std::sscanf(csv.c_str() + second + 3, "%lf,%lf", &re, &im) == 2);
  CHECK(re == 0.1);
  CHECK(im == -1.0 / 3.0);
}
