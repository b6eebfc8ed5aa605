#include "liedeg/representation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "liedeg/errors.hpp"
#include "liedeg/kernels.hpp"
#include "liedeg/parallel.hpp"

namespace liedeg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> f(64, 1.0);
    for (std::size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * static_cast<double>(i);
    return f;
  }();
  if (n < 0 || n >= static_cast<int>(table.size())) throw IndexError("factorial argument");
  return table[static_cast<std::size_t>(n)];
}

double binom(int n, int k) {
  static const auto table = [] {
    std::array<std::array<double, kMaxSu2Weight + 1>, kMaxSu2Weight + 1> c{};
    for (int i = 0; i <= kMaxSu2Weight; ++i) {
      c[i][0] = 1.0;
      for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0.0);
    }
    return c;
  }();
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

cplx ipow(cplx z, int n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  cplx r = 1.0;
  while (n) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

void require_weight(int l) {
  if (l < 0 || l > kMaxSu2Weight)
    throw ConfigError("representation weight l must be in 0.." + std::to_string(kMaxSu2Weight));
}

// coefficient of p_j in g.p_k, then rescaled to the orthonormal basis
Eigen::MatrixXcd su2_matrix(int l, cplx z1, cplx z2) {
  const int d = l + 1;
  std::vector<cplx> p1(d), p1c(d), p2(d), p2m(d);
  p1[0] = p1c[0] = p2[0] = p2m[0] = 1.0;
  for (int i = 1; i < d; ++i) {
    p1[i] = p1[i - 1] * z1;
    p1c[i] = p1c[i - 1] * std::conj(z1);
    p2[i] = p2[i - 1] * z2;
    p2m[i] = p2m[i - 1] * (-std::conj(z2));
  }
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k <= l; ++k)
    for (int m = 0; m <= k; ++m)
      for (int n = 0; n <= l - k; ++n)
        c(m + n, k) += binom(k, m) * binom(l - k, n) * p1[m] * p2m[k - m] * p2[n] * p1c[l - k - n];
  for (int j = 0; j <= l; ++j)
    for (int k = 0; k <= l; ++k)
      c(j, k) *= std::sqrt(factorial(j) * factorial(l - j) / (factorial(k) * factorial(l - k)));
  return c;
}

Eigen::MatrixXcd su2_diff_matrix(int l, const Eigen::Matrix2cd& z) {
  const int d = l + 1;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k <= l; ++k) {
    c(k, k) = static_cast<double>(k) * z(0, 0) + static_cast<double>(l - k) * z(1, 1);
    if (k > 0) c(k - 1, k) = static_cast<double>(k) * z(1, 0);
    if (k < l) c(k + 1, k) = static_cast<double>(l - k) * z(0, 1);
  }
  for (int j = 0; j <= l; ++j)
    for (int k = 0; k <= l; ++k)
      if (c(j, k) != 0.0)
        c(j, k) *= std::sqrt(factorial(j) * factorial(l - j) / (factorial(k) * factorial(l - k)));
  return c;
}

Eigen::MatrixXcd so3_wigner(int l, double alpha, double beta, double gamma) {
  const int d = 2 * l + 1;
  const double cb = std::cos(beta / 2), sb = std::sin(beta / 2);
  Eigen::MatrixXcd out(d, d);
  for (int j = -l; j <= l; ++j) {
    for (int k = -l; k <= l; ++k) {
      const double pref =
          std::sqrt(factorial(l + k) * factorial(l - k) * factorial(l + j) * factorial(l - j));
      double s = 0.0;
      for (int m = 0; m <= 2 * l + 1; ++m) {
        if (l - j - m < 0 || l + k - m < 0 || m + j - k < 0) continue;
        const double den =
            factorial(l - j - m) * factorial(l + k - m) * factorial(m) * factorial(m + j - k);
        const double sign = (m % 2) ? -1.0 : 1.0;
        s += sign * pref / den * std::pow(cb, 2 * l + k - j - 2 * m) * std::pow(sb, 2 * m + j - k);
      }
      out(j + l, k + l) = s * std::polar(1.0, j * alpha + k * gamma);
    }
  }
  return out;
}

Eigen::MatrixXcd so3_matrix_of(int l, const Eigen::Matrix3d& r) {
  const auto e = euler_angles(r);
  return so3_wigner(l, e[0], e[1], e[2]);
}

// rotation whose third column is n (unit)
Eigen::Matrix3d frame_with_axis(const Eigen::Vector3d& n) {
  const Eigen::Vector3d helper =
      std::abs(n(0)) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  const Eigen::Vector3d u1 = helper.cross(n).normalized();
  const Eigen::Vector3d u2 = n.cross(u1);
  Eigen::Matrix3d r;
  r.col(0) = u1;
  r.col(1) = u2;
  r.col(2) = n;
  return r;
}

Eigen::MatrixXcd ortho_eval(const Representation& rep, const GroupElement& g) {
  require_same(rep.tag, g.tag(), "rep_eval");
  switch (rep.tag.kind) {
    case GroupKind::Torus: {
      cplx v = 1.0;
      for (int i = 0; i < rep.tag.torus_dim; ++i)
        v *= ipow(g.torus_value(i), rep.q[static_cast<std::size_t>(i)]);
      Eigen::MatrixXcd m(1, 1);
      m(0, 0) = v;
      return m;
    }
    case GroupKind::SU2:
      return su2_matrix(rep.l, g.z1(), g.z2());
    case GroupKind::SO3:
      return so3_matrix_of(rep.l, g.so3_matrix());
    case GroupKind::U2: {
      const Eigen::Matrix2cd& u = g.u2_matrix();
      const cplx z = std::sqrt(u.determinant());
      const Eigen::Matrix2cd s = u / z;
      return ipow(z, 2 * rep.m - rep.l) * su2_matrix(rep.l, s(0, 0), s(0, 1));
    }
  }
  return {};
}

Eigen::MatrixXcd ortho_diff(const Representation& rep, const AlgebraElement& z) {
  require_same(rep.tag, z.tag(), "rep_differential");
  switch (rep.tag.kind) {
    case GroupKind::Torus: {
      double s = 0;
      for (int i = 0; i < rep.tag.torus_dim; ++i)
        s += rep.q[static_cast<std::size_t>(i)] * z.torus_theta(i);
      Eigen::MatrixXcd m(1, 1);
      m(0, 0) = cplx(0, s);
      return m;
    }
    case GroupKind::SU2:
      return su2_diff_matrix(rep.l, z.m2());
    case GroupKind::U2: {
      const cplx c = 0.5 * z.m2().trace();
      const Eigen::Matrix2cd z0 = z.m2() - c * Eigen::Matrix2cd::Identity();
      Eigen::MatrixXcd out = su2_diff_matrix(rep.l, z0);
      out.diagonal().array() += static_cast<double>(2 * rep.m - rep.l) * c;
      return out;
    }
    case GroupKind::SO3: {
      const int d = 2 * rep.l + 1;
      const Eigen::Matrix3d& m = z.m3();
      Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(d, d);
      // exp(a G3) = {a, 0, 0} has matrix diag(e^{i j a})
      for (int j = -rep.l; j <= rep.l; ++j) diag(j + rep.l, j + rep.l) = cplx(0, j);
      const double theta = z.norm();
      if (theta == 0.0) return Eigen::MatrixXcd::Zero(d, d);
      if (m(0, 2) == 0.0 && m(1, 2) == 0.0 && m(2, 0) == 0.0 && m(2, 1) == 0.0)
        return m(0, 1) * diag;
      // Z = theta * Ad_R(G3) with R e3 = -vee(Z)/theta
      const Eigen::Vector3d n = -Eigen::Vector3d(m(2, 1), m(0, 2), m(1, 0)) / theta;
      const Eigen::MatrixXcd p = so3_matrix_of(rep.l, frame_with_axis(n));
      return theta * p * diag * p.adjoint();
    }
  }
  return {};
}

}  // namespace

// ---------------------------------------------------------------- Representation

Representation Representation::torus(const std::vector<int>& q) {
  Representation r;
  r.tag = GroupTag::torus(static_cast<int>(q.size()));
  r.q = q;
  return r;
}

Representation Representation::su2(int l) {
  require_weight(l);
  Representation r;
  r.tag = GroupTag::su2();
  r.l = l;
  return r;
}

Representation Representation::so3(int l) {
  require_weight(l);
  Representation r;
  r.tag = GroupTag::so3();
  r.l = l;
  return r;
}

Representation Representation::u2(int l, int m) {
  require_weight(l);
  Representation r;
  r.tag = GroupTag::u2();
  r.l = l;
  r.m = m;
  return r;
}

int Representation::dim() const {
  switch (tag.kind) {
    case GroupKind::Torus:
      return 1;
    case GroupKind::SO3:
      return 2 * l + 1;
    default:
      return l + 1;
  }
}

std::string Representation::label() const {
  switch (tag.kind) {
    case GroupKind::Torus: {
      std::string s = "q=(";
      for (std::size_t i = 0; i < q.size(); ++i) s += (i ? "," : "") + std::to_string(q[i]);
      return s + ")";
    }
    case GroupKind::SU2:
      return "SU2 l=" + std::to_string(l);
    case GroupKind::SO3:
      return "SO3 l=" + std::to_string(l);
    case GroupKind::U2:
      return "U2 (l,m)=(" + std::to_string(l) + "," + std::to_string(m) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------- evaluation

double basis_norm(const Representation& rep, int j) {
  if (j < 0 || j >= rep.dim()) throw IndexError("basis index " + std::to_string(j));
  if (rep.tag.kind == GroupKind::SU2 || rep.tag.kind == GroupKind::U2)
    return std::sqrt(factorial(j) * factorial(rep.l - j));
  return 1.0;
}

Eigen::MatrixXcd to_paper(const Representation& rep, const Eigen::MatrixXcd& ortho) {
  Eigen::MatrixXcd out = ortho;
  for (int j = 0; j < out.rows(); ++j)
    for (int k = 0; k < out.cols(); ++k) out(j, k) *= basis_norm(rep, j) * basis_norm(rep, k);
  return out;
}

RepMatrix rep_eval(const Representation& rep, const GroupElement& g) {
  Eigen::MatrixXcd m = ortho_eval(rep, g);
  if (rep.convention == Convention::Paper) m = to_paper(rep, m);
  return {m, rep.convention};
}

RepMatrix rep_differential(const Representation& rep, const AlgebraElement& z) {
  Eigen::MatrixXcd m = ortho_diff(rep, z);
  if (rep.convention == Convention::Paper) m = to_paper(rep, m);
  return {m, rep.convention};
}

RepMatrix rep_differential_fd(const Representation& rep, const AlgebraElement& z, double h) {
  const Representation o = rep.in(Convention::Orthonormal);
  auto at = [&](double t) -> Eigen::MatrixXcd { return ortho_eval(o, exp_alg(z, t)); };
  auto d4 = [&](double s) -> Eigen::MatrixXcd {
    return ((at(-2 * s) - at(2 * s)) + 8.0 * (at(s) - at(-s))) / (12.0 * s);
  };
  Eigen::MatrixXcd m = (16.0 * d4(h / 2) - d4(h)) / 15.0;
  if (rep.convention == Convention::Paper) m = to_paper(rep, m);
  return {m, rep.convention};
}

cplx paper_element(const Representation& rep, int j, int k, const GroupElement& g) {
  const int d = rep.dim();
  if (j < 0 || j >= d || k < 0 || k >= d)
    throw IndexError("(" + std::to_string(j) + "," + std::to_string(k) + ") for dim " +
                     std::to_string(d));
  const Eigen::MatrixXcd m = ortho_eval(rep, g);
  return m(j, k) * basis_norm(rep, j) * basis_norm(rep, k);
}

// ---------------------------------------------------------------- Peter-Weyl

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  // Golub-Welsch: eigenpairs of the Jacobi matrix
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    j(i, i - 1) = j(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  nodes.resize(static_cast<std::size_t>(n));
  weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    weights[static_cast<std::size_t>(i)] = 2.0 * v * v;
  }
  // symmetrize to remove eigen-solver asymmetry
  for (int i = 0; i < n / 2; ++i) {
    const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(n - 1 - i);
    const double x = 0.5 * (nodes[b] - nodes[a]);
    const double w = 0.5 * (weights[a] + weights[b]);
    nodes[a] = -x;
    nodes[b] = x;
    weights[a] = weights[b] = w;
  }
  if (n % 2) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

namespace {

// Accumulates sum_i w_i conj(v_e(g_i)) v_f(g_i) over entries e, f of the
// orthonormal matrix, for nodes produced by node(i) -> (g, w).
template <class NodeFn>
Eigen::MatrixXcd gram(const Representation& rep, std::size_t count, NodeFn node) {
  const int d = rep.dim();
  const int ne = d * d;
  const std::size_t chunk = 4096;
  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(ne, ne);
  return parallel_sum(count, chunk, zero, [&](std::size_t b, std::size_t e) {
    const std::size_t n = e - b;
    std::vector<double> re(static_cast<std::size_t>(ne) * n), im(re.size()), w(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto [g, wi] = node(b + i);
      w[i] = wi;
      const Eigen::MatrixXcd m = ortho_eval(rep, g);
      for (int k = 0; k < ne; ++k) {
        const cplx v = m(k / d, k % d);
        re[static_cast<std::size_t>(k) * n + i] = v.real();
        im[static_cast<std::size_t>(k) * n + i] = v.imag();
      }
    }
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(ne, ne);
    for (int p = 0; p < ne; ++p) {
      const kernels::CSpan a{re.data() + static_cast<std::size_t>(p) * n,
                             im.data() + static_cast<std::size_t>(p) * n, n};
      for (int q = p; q < ne; ++q) {
        const kernels::CSpan c{re.data() + static_cast<std::size_t>(q) * n,
                               im.data() + static_cast<std::size_t>(q) * n, n};
        g(p, q) = kernels::weighted_cdot(w.data(), a, c);
        if (q != p) g(q, p) = std::conj(g(p, q));
      }
    }
    return g;
  });
}

double orthogonality_defect(const Eigen::MatrixXcd& g, int d) {
  double dev = 0;
  for (int p = 0; p < g.rows(); ++p)
    for (int q = 0; q < g.cols(); ++q)
      dev = std::max(dev, std::abs(g(p, q) - (p == q ? 1.0 / d : 0.0)));
  return dev;
}

std::pair<GroupElement, double> su2_euler_node(std::size_t idx, int n, const std::vector<double>& u,
                                               const std::vector<double>& wu) {
  const std::size_t nn = static_cast<std::size_t>(n);
  const std::size_t ia = idx / (nn * nn);
  const std::size_t ib = (idx / nn) % nn;
  const std::size_t ic = idx % nn;
  const double a = kTwoPi * static_cast<double>(ia) / n;
  const double c = kTwoPi * static_cast<double>(ic) / n;
  // |z1|^2 = (1+u)/2 is uniform under Haar measure; u = cos(beta)
  const double r1 = std::sqrt(0.5 * (1.0 + u[ib]));
  const double r2 = std::sqrt(0.5 * (1.0 - u[ib]));
  const double w = 0.5 * wu[ib] / (static_cast<double>(n) * n);
  return {GroupElement::su2(std::polar(r1, a), std::polar(r2, c)), w};
}

Eigen::MatrixXcd euler_gram(const Representation& rep, int n) {
  std::vector<double> u, wu;
  gauss_legendre(n, u, wu);
  const std::size_t count = static_cast<std::size_t>(n) * n * n;
  switch (rep.tag.kind) {
    case GroupKind::SU2:
      return gram(rep, count, [&](std::size_t i) { return su2_euler_node(i, n, u, wu); });
    case GroupKind::SO3:
      return gram(rep, count, [&](std::size_t i) {
        auto [g, w] = su2_euler_node(i, n, u, wu);
        return std::pair{GroupElement::so3(su2_cover(g)), w};
      });
    case GroupKind::U2:
      // the Gram integrand of a single U(2) irrep does not depend on the
      // central phase, so the SU(2) nodes suffice
      return gram(rep, count, [&](std::size_t i) {
        auto [g, w] = su2_euler_node(i, n, u, wu);
        return std::pair{GroupElement::u2(g.su2_matrix()), w};
      });
    case GroupKind::Torus: {
      const int dd = rep.tag.torus_dim;
      int per = 1;
      for (int qi : rep.q) per = std::max(per, 2 * std::abs(qi) + 2);
      std::size_t total = 1;
      for (int k = 0; k < dd; ++k) total *= static_cast<std::size_t>(per);
      return gram(rep, total, [&](std::size_t i) {
        std::vector<double> turns(static_cast<std::size_t>(dd));
        std::size_t rem = i;
        for (auto& t : turns) {
          t = static_cast<double>(rem % static_cast<std::size_t>(per)) / per;
          rem /= static_cast<std::size_t>(per);
        }
        return std::pair{GroupElement::torus_from_turns(turns), 1.0 / static_cast<double>(total)};
      });
    }
  }
  return {};
}

}  // namespace

OrthogonalityReport peter_weyl_check(const Representation& rep, const EulerQuadrature& quad) {
  const int n = std::max(quad.nodes_per_axis, 2);
  const Eigen::MatrixXcd g = euler_gram(rep, n);
  const Eigen::MatrixXcd coarse = euler_gram(rep, std::max(n / 2, 2));
  OrthogonalityReport r;
  r.max_deviation = orthogonality_defect(g, rep.dim());
  r.error_estimate = (g - coarse).cwiseAbs().maxCoeff();
  r.nodes = rep.tag.kind == GroupKind::Torus ? 0 : static_cast<std::size_t>(n) * n * n;
  r.method = "euler-product(equispaced x gauss-legendre x equispaced)";
  return r;
}

OrthogonalityReport peter_weyl_check(const Representation& rep, const MonteCarloSpec& mc) {
  const int d = rep.dim();
  const int ne = d * d;
  Rng rng(mc.rng);
  const std::size_t m = std::max<std::size_t>(mc.samples, 2);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(ne, ne);
  Eigen::MatrixXd sumsq = Eigen::MatrixXd::Zero(ne, ne);
  Eigen::VectorXcd v(ne);
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::MatrixXcd u = ortho_eval(rep, haar_sample(rep.tag, rng));
    for (int k = 0; k < ne; ++k) v(k) = u(k / d, k % d);
    for (int p = 0; p < ne; ++p)
      for (int q = 0; q < ne; ++q) {
        const cplx x = std::conj(v(p)) * v(q);
        sum(p, q) += x;
        sumsq(p, q) += std::norm(x);
      }
  }
  const double md = static_cast<double>(m);
  Eigen::MatrixXcd mean = sum / md;
  double sigma = 0;
  for (int p = 0; p < ne; ++p)
    for (int q = 0; q < ne; ++q) {
      const double var = std::max(0.0, sumsq(p, q) / md - std::norm(mean(p, q)));
      sigma = std::max(sigma, std::sqrt(var / md));
    }
  OrthogonalityReport r;
  r.max_deviation = orthogonality_defect(mean, d);
  r.error_estimate = sigma;
  r.nodes = m;
  r.method = "monte-carlo";
  return r;
}

}  // namespace liedeg
