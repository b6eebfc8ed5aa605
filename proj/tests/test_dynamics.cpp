#include <doctest.h>

#include <cmath>
#include <numbers>

#include "liedeg/cocycles.hpp"
#include "liedeg/dynamics.hpp"
#include "liedeg/errors.hpp"

using namespace liedeg;

namespace {

const double kPi = std::numbers::pi;

std::vector<Cocycle> library(const TranslationFlow& f1, const TranslationFlow& f2) {
  return {torus_monomial({{2}}, f1),
          su2_diagonal({1}, f1),
          su2_manufactured({1}, {1}, 0.7, f1).phi,
          so3_x3_rotation({1}, 0.3, f1),
          u2_product({1}, su2_manufactured({1}, {2}, 0.2, f1).phi, f1),
          torus_monomial({{1, 0}, {1, 1}}, f2),
          u2_so3_torus({1, 0}, 1.0, {1, 0}, f2)};
}

}  // namespace

TEST_CASE("cocycle identity phi^(n+m)(x) = phi^(n)(x) phi^(m)(F_n x)") {
  const TranslationFlow f1 = TranslationFlow::default_for(1), f2 = TranslationFlow::default_for(2);
  for (const Cocycle& c : library(f1, f2)) {
    CAPTURE(c.name);
    const TranslationFlow& f = c.frequency_bound.size() == 1 ? f1 : f2;
    for (const BasePoint& x : random_points(f.dim(), 5, {5, 1})) {
      for (auto [n, m] : {std::pair{3L, 4L}, {10L, 1L}, {0L, 6L}, {-5L, 8L}, {7L, -3L}}) {
        const GroupElement lhs = cocycle_iterate(c, f, x, n + m);
        const GroupElement rhs = group_mul(cocycle_iterate(c, f, x, n),
                                           cocycle_iterate(c, f, flow_advance(f, x, double(n)), m));
        CHECK(element_distance(lhs, rhs) < 1e-11);
      }
    }
  }
}

TEST_CASE("Anzai iterates telescope to x^(kn) times a quadratic phase") {
  const TranslationFlow f = TranslationFlow::default_for(1);
  const double a = f.alpha[0];
  for (int k = 1; k <= 3; ++k) {
    const Cocycle c = torus_monomial({{k}}, f);
    for (const BasePoint& x : random_points(1, 5, {5, 2})) {
      for (long n : {1L, 2L, 17L, 500L}) {
        const double turns = k * (n * x.phases[0] + a * 0.5 * double(n) * double(n - 1));
        const cplx want = std::polar(1.0, 2 * kPi * (turns - std::floor(turns)));
        CHECK(std::abs(cocycle_iterate(c, f, x, n).torus_value(0) - want) < 1e-9);
      }
    }
  }
}

TEST_CASE("batched orbits track single orbits for every group") {
  const TranslationFlow f1 = TranslationFlow::default_for(1), f2 = TranslationFlow::default_for(2);
  for (const Cocycle& c : library(f1, f2)) {
    CAPTURE(c.name);
    const TranslationFlow& f = c.frequency_bound.size() == 1 ? f1 : f2;
    const std::vector<BasePoint> starts = random_points(f.dim(), 9, {5, 3});
    OrbitBatch batch(c, f, starts);
    std::vector<Orbit> single;
    for (const BasePoint& x : starts) single.emplace_back(c, f, x);
    for (int s = 0; s < 300; ++s) {
      batch.step();
      for (Orbit& o : single) o.step();
    }
    CHECK(batch.n() == 300);
    CHECK(batch.size() == starts.size());
    for (std::size_t i = 0; i < starts.size(); ++i) {
      CHECK(element_distance(batch.product(i), single[i].product()) < 1e-11);
      for (int d = 0; d < f.dim(); ++d) {
        const double gap = std::abs(batch.point(i).phases[d] - single[i].point().phases[d]);
        CHECK(std::min(gap, 1.0 - gap) < 1e-11);
      }
    }
  }
}

TEST_CASE("skew product iterates compose") {
  const TranslationFlow f = TranslationFlow::default_for(1);
  const Cocycle c = su2_manufactured({1}, {1}, 0.7, f).phi;
  Rng rng({5, 4});
  const BasePoint x = random_points(1, 1, {5, 5}).front();
  const GroupElement g = haar_sample(GroupTag::su2(), rng);
  const auto [x1, g1] = skew_step(c, f, x, g, 4);
  const auto [x2, g2] = skew_step(c, f, x1, g1, 5);
  const auto [x3, g3] = skew_step(c, f, x, g, 9);
  CHECK(element_distance(g2, g3) < 1e-12);
  CHECK(std::abs(x2.phases[0] - x3.phases[0]) < 1e-12);
}

TEST_CASE("analytic derivative fields agree with central differences") {
  const TranslationFlow f1 = TranslationFlow::default_for(1), f2 = TranslationFlow::default_for(2);
  for (const Cocycle& c : library(f1, f2)) {
    CAPTURE(c.name);
    const TranslationFlow& f = c.frequency_bound.size() == 1 ? f1 : f2;
    const auto pts = random_points(f.dim(), 12, {5, 6});
    const MFieldReport coarse = validate_m_field(c, f, pts, 1e-3);
    const MFieldReport fine = validate_m_field(c, f, pts, 1e-4);
    CHECK(fine.max_deviation < 1e-5);
    // second order: ten times smaller step, about a hundred times smaller error
    if (coarse.max_deviation > 1e-9) CHECK(fine.max_deviation < coarse.max_deviation / 30.0);
  }
}

TEST_CASE("cohomologous build satisfies phi = zeta^-1 delta (zeta o F_1)") {
  const TranslationFlow f = TranslationFlow::default_for(1);
  const ManufacturedSu2 m = su2_manufactured({1}, {1}, 0.7, f);
  for (const BasePoint& x : random_points(1, 10, {5, 7})) {
    const GroupElement want = group_mul(group_mul(group_inv(m.zeta.value(x)), m.delta.value(x)),
                                        m.zeta.value(flow_advance(f, x, 1.0)));
    CHECK(element_distance(m.phi.value(x), want) < 1e-14);
    // iterates are conjugated by the transfer at both ends
    const long n = 25;
    const GroupElement it = group_mul(
        group_mul(group_inv(m.zeta.value(x)), cocycle_iterate(m.delta, f, x, n)),
        m.zeta.value(flow_advance(f, x, double(n))));
    CHECK(element_distance(cocycle_iterate(m.phi, f, x, n), it) < 1e-11);
  }
}

TEST_CASE("transfer operator moves fields along the cocycle") {
  const TranslationFlow f = TranslationFlow::default_for(1);
  const Cocycle c = torus_monomial({{1}}, f);
  const BasePoint x = random_points(1, 1, {5, 8}).front();
  const AlgebraElement w = w_apply(c, f, c.m_field, 12, x);
  CHECK((w - c.m_field(x)).norm() < 1e-15);
  const Cocycle s = su2_manufactured({1}, {1}, 0.7, f).phi;
  const AlgebraField field = s.m_field;
  const AlgebraElement a = w_apply(s, f, [&](const BasePoint& y) { return w_apply(s, f, field, 3, y); }, 4, x);
  CHECK((a - w_apply(s, f, field, 7, x)).norm() < 1e-11);
}

TEST_CASE("quadrature grids integrate low trigonometric monomials exactly") {
  const QuadratureSpec q = QuadratureSpec::uniform(2, 9);
  const auto pts = quadrature_points(q);
  CHECK(pts.size() == q.total());
  CHECK(q.doubled().nodes == std::vector<int>{18, 18});
  for (int a = -8; a <= 8; ++a)
    for (int b = -8; b <= 8; ++b) {
      cplx s = 0.0;
      for (const BasePoint& x : pts) s += monomial({a, b}, x);
      s /= double(pts.size());
      CHECK(std::abs(s - ((a == 0 && b == 0) ? 1.0 : 0.0)) < 1e-13);
    }
  CHECK(sized_nodes(2, 10, 3) == 2 * (2 + 30) + 1);
  CHECK(sized_nodes(0, -4, 1) == 9);
}

TEST_CASE("flow advance and sampling stay on the unit interval") {
  const TranslationFlow f = TranslationFlow::default_for(3);
  CHECK(f.dim() == 3);
  for (const BasePoint& x : random_points(3, 50, {5, 9})) {
    for (double t : {0.0, 1.0, -1.0, 1e6, -123.5}) {
      const BasePoint y = flow_advance(f, x, t);
      for (double p : y.phases) {
        CHECK(p >= 0.0);
        CHECK(p < 1.0);
      }
    }
  }
  CHECK(random_points(2, 3, {1, 1})[2].phases == random_points(2, 3, {1, 1})[2].phases);
}

TEST_CASE("dimension mismatches in built-ins raise configuration errors") {
  const TranslationFlow f = TranslationFlow::default_for(2);
  CHECK_THROWS_AS(torus_monomial({{1}}, f), ConfigError);
  CHECK_THROWS_AS(su2_diagonal({1, 2, 3}, f), ConfigError);
}
