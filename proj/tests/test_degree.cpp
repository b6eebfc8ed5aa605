#include <doctest.h>

#include <cmath>
#include <numbers>

#include "liedeg/cocycles.hpp"
#include "liedeg/degree.hpp"
#include "liedeg/errors.hpp"

using namespace liedeg;

namespace {

const double kPi = std::numbers::pi;

AlgebraElement random_su2(Rng& rng) {
  Eigen::Matrix2cd m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
  return AlgebraElement::project(GroupTag::su2(), m);
}

}  // namespace

TEST_CASE("Anzai degree is 2 pi i alpha k at every point") {
  const TranslationFlow f = TranslationFlow::default_for(1);
  for (int k = -2; k <= 3; ++k) {
    const Cocycle c = torus_monomial({{k}}, f);
    const DegreeField field = degree_field(c, f, random_points(1, 6, {7, 1}), 2000);
    for (const auto& v : field.values) CHECK(v.torus_theta(0) == doctest::Approx(2 * kPi * f.alpha[0] * k));
    CHECK(field.constant);
    CHECK(field.max_diagnostic < 1e-12);
  }
}

TEST_CASE("diagonal SU2 cocycles have the closed-form degree") {
  const TranslationFlow f = TranslationFlow::default_for(2);
  const Cocycle c = su2_diagonal({1, -2}, f);
  const double s = 2 * kPi * (f.alpha[0] - 2 * f.alpha[1]);
  const AlgebraElement q = degree_constant_diagonal(c, QuadratureSpec::uniform(2, 8));
  CHECK((q - AlgebraElement::su2_diag(s)).norm() < 1e-13);
  const PointwiseDegree p = degree_pointwise(c, f, random_points(2, 1, {7, 2}).front(), 500);
  CHECK((p.value - AlgebraElement::su2_diag(s)).norm() < 1e-12);
}

TEST_CASE("manufactured SU2 degree has constant norm 2 pi alpha k but varies in direction") {
  const TranslationFlow f = TranslationFlow::default_for(1);
  const ManufacturedSu2 m = su2_manufactured({1}, {1}, 0.7, f);
  const DegreeField field = degree_field(m.phi, f, random_points(1, 8, {7, 3}), 10000);
  const RhoReport rho = rho_phi(field);
  CHECK(rho.rho == doctest::Approx(2 * kPi * f.alpha[0]).epsilon(5e-3));
  CHECK(rho.max_deviation < 5e-3);
  CHECK_FALSE(field.constant);
  // pointwise oracle: the degree of phi is Ad_{zeta^-1} of the diagonal degree
  const AlgebraElement dd = AlgebraElement::su2_diag(2 * kPi * f.alpha[0]);
  for (std::size_t i = 0; i < field.points.size(); ++i) {
    const AlgebraElement want = ad(group_inv(m.zeta.value(field.points[i])), dd);
    CHECK((field.values[i] - want).norm() < 5e-3);
  }
  CHECK_THROWS_AS(rho_phi(degree_field(torus_monomial({{1}}, f), f, random_points(1, 1, {7, 4}), 10)),
                  TagMismatchError);
}

TEST_CASE("degree eigenvalues and a_phi_pi follow rho (l - 2j)") {
  const double rho = 1.3;
  for (int l = 0; l <= 6; ++l) {
    const Representation rep = Representation::su2(l);
    const std::vector<double> ev = degree_eigenvalues(rep, AlgebraElement::su2_diag(rho));
    REQUIRE(ev.size() == static_cast<std::size_t>(l + 1));
    for (int j = 0; j <= l; ++j) CHECK(ev[static_cast<std::size_t>(j)] == doctest::Approx(rho * (2 * j - l)));
    const double a = a_phi_pi(rep, AlgebraElement::su2_diag(rho));
    CHECK(a == doctest::Approx(l % 2 ? rho * rho : 0.0));
  }
  // a_phi_pi over a field is the smallest value
  const Representation r1 = Representation::su2(1);
  CHECK(a_phi_pi(r1, {AlgebraElement::su2_diag(2.0), AlgebraElement::su2_diag(0.5)}) == doctest::Approx(0.25));
  CHECK(a_phi_pi(r1, std::vector<AlgebraElement>{}) == 0.0);
}

TEST_CASE("transfer value straightens any SU2 degree") {
  Rng rng({7, 5});
  for (int i = 0; i < 200; ++i) {
    const AlgebraElement d = random_su2(rng);
    const double rho = d.norm();
    const GroupElement z = su2_transfer_zeta(d, rho);
    CHECK(z.invariant_defect() < 1e-13);
    CHECK((ad(z, d) - AlgebraElement::su2_diag(rho)).norm() < 1e-12 * std::max(1.0, rho));
  }
}

TEST_CASE("transfer value branch cases and guards") {
  const double rho = 0.7;
  const GroupElement up = su2_transfer_zeta(AlgebraElement::su2_diag(rho), rho);
  CHECK(up.su2_matrix() == Eigen::Matrix2cd::Identity());
  const GroupElement dn = su2_transfer_zeta(AlgebraElement::su2_diag(-rho), rho);
  Eigen::Matrix2cd rot;
  rot << 0.0, -1.0, 1.0, 0.0;
  CHECK(dn.su2_matrix() == rot);
  CHECK((ad(dn, AlgebraElement::su2_diag(-rho)) - AlgebraElement::su2_diag(rho)).norm() == 0.0);
  CHECK_THROWS_AS(su2_transfer_zeta(AlgebraElement::su2_diag(rho), 0.0), DegenerateDegreeError);
  CHECK_THROWS_AS(su2_transfer_zeta(AlgebraElement::su2_diag(rho), 2 * rho), InconsistentDegreeError);
}

TEST_CASE("straightening the manufactured cocycle is nearly diagonal and improves with N") {
  const TranslationFlow f = TranslationFlow::default_for(1);
  const ManufacturedSu2 m = su2_manufactured({1}, {1}, 0.7, f);
  const auto grid = quadrature_points(QuadratureSpec::uniform(1, 12));
  const StraightenReport a = su2_straighten(m.phi, f, 5000, grid);
  const StraightenReport b = su2_straighten(m.phi, f, 20000, grid);
  CHECK(a.max_offdiag < 1e-2);
  CHECK(b.max_offdiag < a.max_offdiag);
  REQUIRE(a.winding_available);
  CHECK(std::abs(a.winding - std::round(a.winding)) < 1e-6);
  CHECK_THROWS_AS(su2_straighten(su2_diagonal({0}, f), f, 100, grid), DegenerateDegreeError);
}

TEST_CASE("degrees are invariant under cohomology and push forward under homomorphisms") {
  const TranslationFlow f1 = TranslationFlow::default_for(1);
  const ManufacturedSu2 m = su2_manufactured({2}, {1}, 1.1, f1);
  const InvarianceReport c = invariance_check_cohomology(m.phi, m.delta, m.zeta, f1, 8000,
                                                         random_points(1, 5, {7, 6}));
  CHECK(c.max_deviation < 5e-3);
  CHECK(c.max_norm_gap < 5e-3);
  CHECK(c.points == 5);

  const InvarianceReport p = invariance_check_homomorphism(
      {HomKind::TorusPower, 3}, {torus_monomial({{1}}, f1)}, f1, 500, random_points(1, 3, {7, 7}));
  CHECK(p.max_deviation < 1e-11);

  const TranslationFlow f2 = TranslationFlow::default_for(2);
  const InvarianceReport u = invariance_check_homomorphism(
      {HomKind::So3TorusToU2, 1}, {so3_x3_rotation({0, 1}, 0.4, f2), torus_monomial({{1, 0}}, f2)},
      f2, 500, random_points(2, 3, {7, 8}));
  CHECK(u.max_deviation < 1e-10);
}

TEST_CASE("U2 degree under unique ergodicity is the central part of the mean derivative") {
  const TranslationFlow f = TranslationFlow::default_for(2);
  const Cocycle c = u2_so3_torus({0, 0}, 1.0, {1, 0}, f);
  const AlgebraElement e = degree_constant_ergodic(c, QuadratureSpec::uniform(2, 16));
  const Eigen::Matrix2cd want = cplx(0.0, kPi * f.alpha[0]) * Eigen::Matrix2cd::Identity();
  CHECK((e.m2() - want).norm() < 1e-13);
}

TEST_CASE("ergodicity verdict obstructions") {
  const AlgebraElement zero_su2 = AlgebraElement::zero(GroupTag::su2());
  const ErgodicityVerdict b = ergodicity_verdict(GroupTag::su2(), zero_su2, true, false);
  CHECK(b.verdict() == "NOT_UNIQUELY_ERGODIC(b)");
  CHECK(b.upgrade().empty());
  CHECK(ergodicity_verdict(GroupTag::so3(), AlgebraElement::zero(GroupTag::so3()), true, true).upgrade() ==
        "NOT_ERGODIC(c)");
  Eigen::Matrix2cd traceless;
  traceless << cplx(0, 1), 0, 0, cplx(0, -1);
  const ErgodicityVerdict a = ergodicity_verdict(GroupTag::u2(), AlgebraElement::u2(traceless), true);
  CHECK(a.verdict() == "NOT_UNIQUELY_ERGODIC(a)");
  const ErgodicityVerdict none =
      ergodicity_verdict(GroupTag::u2(), AlgebraElement::u2(cplx(0, 1) * Eigen::Matrix2cd::Identity()), true);
  CHECK(none.verdict() == "NO_OBSTRUCTION");
  CHECK(ergodicity_verdict(GroupTag::su2(), zero_su2, false).verdict() == "NO_OBSTRUCTION");
  CHECK(ergodicity_verdict(GroupTag::torus(1), AlgebraElement::torus({1.0}), true).verdict() ==
        "NO_OBSTRUCTION");
}
