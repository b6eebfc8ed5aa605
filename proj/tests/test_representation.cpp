#include <doctest.h>

#include <cmath>
#include <numbers>

#include "liedeg/errors.hpp"
#include "liedeg/representation.hpp"

using namespace liedeg;

namespace {

const double kPi = std::numbers::pi;

double fact(int n) { return n <= 1 ? 1.0 : n * fact(n - 1); }

// polynomial in (w1, w2), homogeneous of degree l: c[a] is the coefficient of w1^a w2^(l-a)
using Poly = std::vector<cplx>;

Poly mul(const Poly& p, const Poly& q) {
  Poly r(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

// matrix elements from substituting (w1, w2) -> (w1, w2) g into w1^k w2^(l-k),
// with <w1^a w2^b, w1^a w2^b> = a! b!
cplx poly_oracle(int l, int j, int k, cplx z1, cplx z2) {
  const Poly w1p = {-std::conj(z2), z1};  // coefficient of w1^0, w1^1 ; w2 degree complement
  const Poly w2p = {std::conj(z1), z2};
  Poly p = {1.0};
  for (int i = 0; i < k; ++i) p = mul(p, w1p);
  for (int i = 0; i < l - k; ++i) p = mul(p, w2p);
  return p[static_cast<std::size_t>(j)] * fact(j) * fact(l - j);
}

std::vector<Representation> sample_reps() {
  std::vector<Representation> r = {Representation::torus({2, -1}), Representation::torus({0})};
  for (int l = 0; l <= 5; ++l) r.push_back(Representation::su2(l));
  for (int l = 0; l <= 3; ++l) r.push_back(Representation::so3(l));
  for (int l = 0; l <= 3; ++l)
    for (int m = -1; m <= 2; ++m) r.push_back(Representation::u2(l, m));
  return r;
}

AlgebraElement random_algebra(const GroupTag& tag, Rng& rng) {
  if (tag.kind == GroupKind::Torus) {
    std::vector<double> th(static_cast<std::size_t>(tag.torus_dim));
    for (double& t : th) t = rng.normal();
    return AlgebraElement::torus(th);
  }
  const int n = tag.matrix_dim();
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = cplx(rng.normal(), tag.kind == GroupKind::SO3 ? 0.0 : rng.normal());
  return AlgebraElement::project(tag, m);
}

}  // namespace

TEST_CASE("SU2 monomial-basis elements agree with direct polynomial substitution") {
  Rng rng({3, 1});
  for (int t = 0; t < 30; ++t) {
    const GroupElement g = haar_sample(GroupTag::su2(), rng);
    for (int l = 0; l <= 6; ++l) {
      const Representation rep = Representation::su2(l);
      for (int j = 0; j <= l; ++j)
        for (int k = 0; k <= l; ++k) {
          const cplx want = poly_oracle(l, j, k, g.z1(), g.z2());
          CHECK(std::abs(paper_element(rep, j, k, g) - want) <= 1e-11 * std::max(1.0, std::abs(want)));
        }
    }
  }
}

TEST_CASE("every sample representation is a unitary homomorphism") {
  Rng rng({3, 2});
  for (const Representation& rep : sample_reps()) {
    CAPTURE(rep.label());
    for (int t = 0; t < 20; ++t) {
      const GroupElement g = haar_sample(rep.tag, rng), h = haar_sample(rep.tag, rng);
      const Eigen::MatrixXcd a = rep_eval(rep, g).m, b = rep_eval(rep, h).m;
      CHECK((rep_eval(rep, group_mul(g, h)).m - a * b).norm() < 1e-11);
      CHECK((a * a.adjoint() - Eigen::MatrixXcd::Identity(rep.dim(), rep.dim())).norm() < 1e-12);
      CHECK(a.rows() == rep.dim());
    }
  }
}

TEST_CASE("characters match the Weyl formulas") {
  Rng rng({3, 3});
  for (int t = 0; t < 30; ++t) {
    const GroupElement g = haar_sample(GroupTag::su2(), rng);
    const double phi = std::acos(std::clamp(g.z1().real(), -1.0, 1.0));
    for (int l = 0; l <= 6; ++l) {
      const double chi = std::abs(std::sin(phi)) < 1e-9 ? l + 1.0 : std::sin((l + 1) * phi) / std::sin(phi);
      CHECK(std::abs(rep_eval(Representation::su2(l), g).m.trace() - chi) < 1e-10);
    }
    const GroupElement r = haar_sample(GroupTag::so3(), rng);
    const double th = std::acos(std::clamp((r.so3_matrix().trace() - 1.0) / 2.0, -1.0, 1.0));
    for (int l = 0; l <= 4; ++l) {
      const double chi = std::abs(std::sin(th / 2)) < 1e-9 ? 2 * l + 1.0
                                                            : std::sin((2 * l + 1) * th / 2) / std::sin(th / 2);
      CHECK(std::abs(rep_eval(Representation::so3(l), r).m.trace() - chi) < 1e-9);
    }
  }
}

TEST_CASE("U2 representations scale central elements by z^(2m-l)") {
  for (int l = 0; l <= 4; ++l)
    for (int m = -2; m <= 2; ++m) {
      const double th = 0.37;
      const GroupElement u = GroupElement::u2(std::polar(1.0, th) * Eigen::Matrix2cd::Identity());
      const Eigen::MatrixXcd p = rep_eval(Representation::u2(l, m), u).m;
      const cplx s = std::polar(1.0, th * (2 * m - l));
      CHECK((p - s * Eigen::MatrixXcd::Identity(l + 1, l + 1)).norm() < 1e-13);
    }
}

TEST_CASE("SO3 diagonal rotations give diagonal phases") {
  for (int l = 0; l <= 4; ++l) {
    const Eigen::MatrixXcd p = rep_eval(Representation::so3(l), GroupElement::so3(euler_matrix(0.9, 0, 0))).m;
    for (int j = -l; j <= l; ++j) CHECK(std::abs(p(j + l, j + l) - std::polar(1.0, 0.9 * j)) < 1e-14);
  }
}

TEST_CASE("analytic differential matches finite differences and preserves brackets") {
  Rng rng({3, 4});
  for (const Representation& rep : sample_reps()) {
    CAPTURE(rep.label());
    for (int t = 0; t < 5; ++t) {
      const AlgebraElement x = random_algebra(rep.tag, rng), y = random_algebra(rep.tag, rng);
      const Eigen::MatrixXcd dx = rep_differential(rep, x).m, dy = rep_differential(rep, y).m;
      CHECK((dx - rep_differential_fd(rep, x).m).norm() < 1e-7 * std::max(1.0, dx.norm()));
      CHECK((dx + dx.adjoint()).norm() < 1e-12 * std::max(1.0, dx.norm()));
      if (rep.tag.kind != GroupKind::Torus) {
        const Eigen::MatrixXcd xm = x.matrix(), ym = y.matrix();
        const AlgebraElement br = AlgebraElement::project(rep.tag, xm * ym - ym * xm);
        const Eigen::MatrixXcd lhs = rep_differential(rep, br).m;
        CHECK((lhs - (dx * dy - dy * dx)).norm() < 1e-10 * std::max(1.0, lhs.norm()));
      }
    }
  }
}

TEST_CASE("monomial and orthonormal conventions differ by the basis norms") {
  Rng rng({3, 5});
  const GroupElement g = haar_sample(GroupTag::su2(), rng);
  for (int l = 0; l <= 5; ++l) {
    const Representation rep = Representation::su2(l);
    const Eigen::MatrixXcd o = rep_eval(rep, g).m;
    const Eigen::MatrixXcd p = to_paper(rep, o);
    for (int j = 0; j <= l; ++j) {
      CHECK(basis_norm(rep, j) == doctest::Approx(std::sqrt(fact(j) * fact(l - j))));
      for (int k = 0; k <= l; ++k) CHECK(std::abs(p(j, k) - paper_element(rep, j, k, g)) < 1e-11);
    }
    CHECK(rep_eval(rep.in(Convention::Paper), g).convention == Convention::Paper);
  }
}

TEST_CASE("Peter-Weyl orthogonality by Euler quadrature and by Monte Carlo") {
  for (int l = 0; l <= 3; ++l) {
    const OrthogonalityReport r = peter_weyl_check(Representation::su2(l), EulerQuadrature{16});
    CHECK(r.max_deviation < 1e-12);
  }
  const OrthogonalityReport mc = peter_weyl_check(Representation::so3(1), MonteCarloSpec{20000, {3, 6}});
  CHECK(mc.max_deviation < 5 * mc.error_estimate + 1e-3);
  CHECK(mc.error_estimate > 0.0);
}

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
  std::vector<double> x, w;
  gauss_legendre(8, x, w);
  for (int k = 0; k < 16; ++k) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], k);
    const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
    CHECK(s == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("invalid representation parameters are rejected") {
  CHECK_THROWS_AS(Representation::su2(-1), ConfigError);
  CHECK_THROWS_AS(Representation::su2(kMaxSu2Weight + 1), ConfigError);
  const Representation rep = Representation::su2(2);
  CHECK_THROWS_AS(paper_element(rep, 3, 0, GroupElement::identity(GroupTag::su2())), IndexError);
  CHECK(rep.label() == "SU2 l=2");
  CHECK(Representation::u2(1, 1).label() == "U2 (l,m)=(1,1)");
  CHECK(Representation::torus({1, -2}).label() == "q=(1,-2)");
  CHECK(Representation::so3(2).dim() == 5);
  (void)kPi;
}
