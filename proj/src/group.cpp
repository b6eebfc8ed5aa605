#include "liedeg/group.hpp"

#include <cmath>
#include <numbers>

#include "liedeg/errors.hpp"

namespace liedeg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t tdim(const GroupTag& t) { return static_cast<std::size_t>(t.torus_dim); }

// sin(x)/x with a series near 0
double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
  return std::sin(x) / x;
}

// (1 - cos x)/x^2
double cosc(double x) {
  if (std::abs(x) < 1e-4) return 0.5 - x * x / 24.0 + x * x * x * x / 720.0;
  return (1.0 - std::cos(x)) / (x * x);
}

template <class M>
double max_abs(const M& m) {
  return m.cwiseAbs().maxCoeff();
}

const std::array<Eigen::Matrix2cd, 3>& su2_basis() {
  static const std::array<Eigen::Matrix2cd, 3> e = [] {
    const cplx i(0, 1);
    std::array<Eigen::Matrix2cd, 3> b;
    b[0] << 0, 1, -1, 0;
    b[1] << 0, -i, -i, 0;
    b[2] << i, 0, 0, -i;
    return b;
  }();
  return e;
}

Eigen::Vector3d vee(const Eigen::Matrix3d& z) { return {z(2, 1), z(0, 2), z(1, 0)}; }

}  // namespace

// ---------------------------------------------------------------- tags

GroupTag GroupTag::torus(int d) {
  if (d < 1 || d > kMaxTorusDim) throw ConfigError("torus dimension must be in 1.." +
                                                   std::to_string(kMaxTorusDim));
  return {GroupKind::Torus, d};
}

std::string GroupTag::name() const {
  switch (kind) {
    case GroupKind::Torus:
      return "TORUS(" + std::to_string(torus_dim) + ")";
    case GroupKind::SU2:
      return "SU2";
    case GroupKind::SO3:
      return "SO3";
    case GroupKind::U2:
      return "U2";
  }
  return "?";
}

int GroupTag::matrix_dim() const {
  switch (kind) {
    case GroupKind::Torus:
      return torus_dim;
    case GroupKind::SO3:
      return 3;
    default:
      return 2;
  }
}

void require_same(const GroupTag& a, const GroupTag& b, const char* where) {
  if (!(a == b)) throw TagMismatchError(std::string(where) + ": " + a.name() + " vs " + b.name());
}

// ---------------------------------------------------------------- elements

GroupElement GroupElement::identity(const GroupTag& tag) {
  GroupElement g;
  g.tag_ = tag;
  for (std::size_t i = 0; i < tdim(tag); ++i) g.t_[i] = 1.0;
  return g;
}

GroupElement GroupElement::torus(const std::vector<cplx>& values) {
  GroupElement g = identity(GroupTag::torus(static_cast<int>(values.size())));
  for (std::size_t i = 0; i < values.size(); ++i) g.t_[i] = values[i];
  return g;
}

GroupElement GroupElement::torus_from_turns(const std::vector<double>& turns) {
  std::vector<cplx> v(turns.size());
  for (std::size_t i = 0; i < turns.size(); ++i) v[i] = std::polar(1.0, kTwoPi * turns[i]);
  return torus(v);
}

GroupElement GroupElement::su2(cplx z1, cplx z2) {
  GroupElement g;
  g.tag_ = GroupTag::su2();
  g.a_ = z1;
  g.b_ = z2;
  return g;
}

GroupElement GroupElement::so3(const Eigen::Matrix3d& r) {
  GroupElement g;
  g.tag_ = GroupTag::so3();
  g.r_ = r;
  return g;
}

GroupElement GroupElement::u2(const Eigen::Matrix2cd& u) {
  GroupElement g;
  g.tag_ = GroupTag::u2();
  g.u_ = u;
  return g;
}

Eigen::Matrix2cd GroupElement::su2_matrix() const {
  Eigen::Matrix2cd m;
  m << a_, b_, -std::conj(b_), std::conj(a_);
  return m;
}

Eigen::MatrixXcd GroupElement::matrix() const {
  switch (tag_.kind) {
    case GroupKind::Torus: {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(tag_.torus_dim, tag_.torus_dim);
      for (int i = 0; i < tag_.torus_dim; ++i) m(i, i) = t_[static_cast<std::size_t>(i)];
      return m;
    }
    case GroupKind::SU2:
      return su2_matrix();
    case GroupKind::SO3:
      return r_.cast<cplx>();
    case GroupKind::U2:
      return u_;
  }
  return {};
}

double GroupElement::invariant_defect() const {
  switch (tag_.kind) {
    case GroupKind::Torus: {
      double d = 0;
      for (std::size_t i = 0; i < tdim(tag_); ++i) d = std::max(d, std::abs(std::abs(t_[i]) - 1.0));
      return d;
    }
    case GroupKind::SU2:
      return std::abs(std::norm(a_) + std::norm(b_) - 1.0);
    case GroupKind::SO3:
      return std::max(max_abs(r_.transpose() * r_ - Eigen::Matrix3d::Identity()),
                      std::abs(r_.determinant() - 1.0));
    case GroupKind::U2:
      return max_abs(u_.adjoint() * u_ - Eigen::Matrix2cd::Identity());
  }
  return 0;
}

// ---------------------------------------------------------------- algebra

AlgebraElement AlgebraElement::zero(const GroupTag& tag) {
  AlgebraElement z;
  z.tag_ = tag;
  return z;
}

AlgebraElement AlgebraElement::torus(const std::vector<double>& theta) {
  AlgebraElement z = zero(GroupTag::torus(static_cast<int>(theta.size())));
  for (std::size_t i = 0; i < theta.size(); ++i) z.t_[i] = theta[i];
  return z;
}

AlgebraElement AlgebraElement::su2(const Eigen::Matrix2cd& m) {
  AlgebraElement z = zero(GroupTag::su2());
  z.m2_ = m;
  return z;
}

AlgebraElement AlgebraElement::su2_diag(double s) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = cplx(0, s);
  m(1, 1) = cplx(0, -s);
  return su2(m);
}

AlgebraElement AlgebraElement::so3(const Eigen::Matrix3d& m) {
  AlgebraElement z = zero(GroupTag::so3());
  z.m3_ = m;
  return z;
}

AlgebraElement AlgebraElement::u2(const Eigen::Matrix2cd& m) {
  AlgebraElement z = zero(GroupTag::u2());
  z.m2_ = m;
  return z;
}

AlgebraElement AlgebraElement::project(const GroupTag& tag, const Eigen::MatrixXcd& m) {
  switch (tag.kind) {
    case GroupKind::Torus: {
      std::vector<double> th(tdim(tag));
      for (std::size_t i = 0; i < th.size(); ++i)
        th[i] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).imag();
      return torus(th);
    }
    case GroupKind::SU2: {
      Eigen::Matrix2cd s = 0.5 * (m - m.adjoint());
      const cplx tr = 0.5 * s.trace();
      s -= tr * Eigen::Matrix2cd::Identity();
      return su2(s);
    }
    case GroupKind::SO3: {
      Eigen::Matrix3d re = m.real();
      return so3(0.5 * (re - re.transpose()));
    }
    case GroupKind::U2:
      return u2(0.5 * (m - m.adjoint()));
  }
  return {};
}

Eigen::MatrixXcd AlgebraElement::matrix() const {
  switch (tag_.kind) {
    case GroupKind::Torus: {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(tag_.torus_dim, tag_.torus_dim);
      for (int i = 0; i < tag_.torus_dim; ++i) m(i, i) = cplx(0, t_[static_cast<std::size_t>(i)]);
      return m;
    }
    case GroupKind::SO3:
      return m3_.cast<cplx>();
    default:
      return m2_;
  }
}

double AlgebraElement::norm() const { return std::sqrt(std::max(0.0, algebra_inner(*this, *this))); }

double AlgebraElement::invariant_defect() const {
  switch (tag_.kind) {
    case GroupKind::Torus:
      return 0.0;
    case GroupKind::SU2:
      return std::max(max_abs(m2_ + m2_.adjoint()), std::abs(m2_.trace()));
    case GroupKind::SO3:
      return max_abs(m3_ + m3_.transpose());
    case GroupKind::U2:
      return max_abs(m2_ + m2_.adjoint());
  }
  return 0;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  require_same(tag_, o.tag_, "algebra +");
  for (std::size_t i = 0; i < tdim(tag_); ++i) t_[i] += o.t_[i];
  m2_ += o.m2_;
  m3_ += o.m3_;
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  require_same(tag_, o.tag_, "algebra -");
  for (std::size_t i = 0; i < tdim(tag_); ++i) t_[i] -= o.t_[i];
  m2_ -= o.m2_;
  m3_ -= o.m3_;
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(double s) {
  for (std::size_t i = 0; i < tdim(tag_); ++i) t_[i] *= s;
  m2_ *= s;
  m3_ *= s;
  return *this;
}

// ---------------------------------------------------------------- rng

Rng::Rng(RngHandle h) {
  std::seed_seq seq{static_cast<std::uint32_t>(h.seed), static_cast<std::uint32_t>(h.seed >> 32),
                    static_cast<std::uint32_t>(h.stream),
                    static_cast<std::uint32_t>(h.stream >> 32), 0x6c646567u};
  eng_.seed(seq);
}

double Rng::uniform() { return unif_(eng_); }
double Rng::normal() { return norm_(eng_); }

// ---------------------------------------------------------------- operations

GroupElement group_mul(const GroupElement& g, const GroupElement& h) {
  require_same(g.tag_, h.tag_, "group_mul");
  GroupElement r;
  r.tag_ = g.tag_;
  switch (g.tag_.kind) {
    case GroupKind::Torus:
      for (std::size_t i = 0; i < tdim(g.tag_); ++i) {
        cplx v = g.t_[i] * h.t_[i];
        const double m = std::abs(v);
        if (std::abs(m - 1.0) > kRenormThreshold) v /= m;
        r.t_[i] = v;
      }
      break;
    case GroupKind::SU2: {
      cplx z1 = g.a_ * h.a_ - g.b_ * std::conj(h.b_);
      cplx z2 = g.a_ * h.b_ + g.b_ * std::conj(h.a_);
      const double n = std::norm(z1) + std::norm(z2);
      if (std::abs(n - 1.0) > kRenormThreshold) {
        const double s = 1.0 / std::sqrt(n);
        z1 *= s;
        z2 *= s;
      }
      r.a_ = z1;
      r.b_ = z2;
      break;
    }
    case GroupKind::SO3: {
      Eigen::Matrix3d m = g.r_ * h.r_;
      if (max_abs(m.transpose() * m - Eigen::Matrix3d::Identity()) > kRenormThreshold)
        m = 1.5 * m - 0.5 * m * m.transpose() * m;
      r.r_ = m;
      break;
    }
    case GroupKind::U2: {
      Eigen::Matrix2cd m = g.u_ * h.u_;
      if (max_abs(m.adjoint() * m - Eigen::Matrix2cd::Identity()) > kRenormThreshold)
        m = 1.5 * m - 0.5 * m * m.adjoint() * m;
      r.u_ = m;
      break;
    }
  }
  return r;
}

GroupElement group_inv(const GroupElement& g) {
  GroupElement r = g;
  switch (g.tag_.kind) {
    case GroupKind::Torus:
      for (std::size_t i = 0; i < tdim(g.tag_); ++i) r.t_[i] = std::conj(g.t_[i]);
      break;
    case GroupKind::SU2:
      r.a_ = std::conj(g.a_);
      r.b_ = -g.b_;
      break;
    case GroupKind::SO3:
      r.r_ = g.r_.transpose();
      break;
    case GroupKind::U2:
      r.u_ = g.u_.adjoint();
      break;
  }
  return r;
}

AlgebraElement ad(const GroupElement& g, const AlgebraElement& z) {
  require_same(g.tag(), z.tag(), "ad");
  switch (g.tag().kind) {
    case GroupKind::Torus:
      return z;
    case GroupKind::SU2: {
      const Eigen::Matrix2cd m = g.su2_matrix();
      return AlgebraElement::su2(m * z.m2() * m.adjoint());
    }
    case GroupKind::SO3:
      return AlgebraElement::so3(g.so3_matrix() * z.m3() * g.so3_matrix().transpose());
    case GroupKind::U2:
      return AlgebraElement::u2(g.u2_matrix() * z.m2() * g.u2_matrix().adjoint());
  }
  return z;
}

double algebra_inner(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a.tag(), b.tag(), "algebra_inner");
  switch (a.tag().kind) {
    case GroupKind::Torus: {
      double s = 0;
      for (int i = 0; i < a.tag().torus_dim; ++i) s += a.torus_theta(i) * b.torus_theta(i);
      return s;
    }
    case GroupKind::SO3:
      return 0.5 * (a.m3().cwiseProduct(b.m3())).sum();
    default:
      // 1/2 Re Tr(A B^*) = 1/2 sum_ij Re(A_ij conj B_ij)
      return 0.5 * (a.m2().cwiseProduct(b.m2().conjugate())).sum().real();
  }
}

GroupElement exp_alg(const AlgebraElement& z, double t) {
  const GroupTag& tag = z.tag();
  switch (tag.kind) {
    case GroupKind::Torus: {
      std::vector<cplx> v(tdim(tag));
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = std::polar(1.0, t * z.torus_theta(static_cast<int>(i)));
      return GroupElement::torus(v);
    }
    case GroupKind::SU2: {
      // Z^2 = -r^2 I, exp(tZ) = cos(rt) I + t sinc(rt) Z
      const double r = z.norm();
      const double c = std::cos(r * t);
      const double s = t * sinc(r * t);
      const Eigen::Matrix2cd& m = z.m2();
      return GroupElement::su2(c + s * m(0, 0), s * m(0, 1));
    }
    case GroupKind::U2: {
      const cplx c = 0.5 * z.m2().trace();
      const Eigen::Matrix2cd z0 = z.m2() - c * Eigen::Matrix2cd::Identity();
      const GroupElement g = exp_alg(AlgebraElement::su2(z0), t);
      return GroupElement::u2(std::exp(t * c) * g.su2_matrix());
    }
    case GroupKind::SO3: {
      const double th = z.norm() * t;
      const Eigen::Matrix3d m = t * z.m3();
      const double s = sinc(th);
      const double c = cosc(th);
      return GroupElement::so3(Eigen::Matrix3d::Identity() + s * m + c * (m * m));
    }
  }
  return GroupElement::identity(tag);
}

GroupElement haar_sample(const GroupTag& tag, Rng& rng) {
  switch (tag.kind) {
    case GroupKind::Torus: {
      std::vector<double> turns(tdim(tag));
      for (auto& u : turns) u = rng.uniform();
      return GroupElement::torus_from_turns(turns);
    }
    case GroupKind::SU2: {
      double v[4];
      double n = 0;
      do {
        n = 0;
        for (double& x : v) {
          x = rng.normal();
          n += x * x;
        }
      } while (n < 1e-300);
      n = std::sqrt(n);
      return GroupElement::su2({v[0] / n, v[1] / n}, {v[2] / n, v[3] / n});
    }
    case GroupKind::SO3:
      return GroupElement::so3(su2_cover(haar_sample(GroupTag::su2(), rng)));
    case GroupKind::U2: {
      const cplx z = std::polar(1.0, kTwoPi * rng.uniform());
      return GroupElement::u2(z * haar_sample(GroupTag::su2(), rng).su2_matrix());
    }
  }
  return GroupElement::identity(tag);
}

AlgebraElement p_ad(const GroupTag& tag, const AlgebraElement& z) {
  require_same(tag, z.tag(), "p_ad");
  switch (tag.kind) {
    case GroupKind::Torus:
      return z;
    case GroupKind::SU2:
    case GroupKind::SO3:
      return AlgebraElement::zero(tag);
    case GroupKind::U2:
      return AlgebraElement::u2(0.5 * z.m2().trace() * Eigen::Matrix2cd::Identity());
  }
  return z;
}

AlgebraElement p_ad_monte_carlo(const GroupTag& tag, const AlgebraElement& z, std::size_t samples,
                                Rng& rng) {
  require_same(tag, z.tag(), "p_ad_monte_carlo");
  AlgebraElement acc = AlgebraElement::zero(tag);
  for (std::size_t i = 0; i < samples; ++i) acc += ad(haar_sample(tag, rng), z);
  return acc * (1.0 / static_cast<double>(std::max<std::size_t>(samples, 1)));
}

double element_distance(const GroupElement& g, const GroupElement& h) {
  require_same(g.tag(), h.tag(), "element_distance");
  return (g.matrix() - h.matrix()).norm();
}

// ---------------------------------------------------------------- SO(3) helpers

Eigen::Matrix3d su2_cover(const GroupElement& g) {
  require_same(g.tag(), GroupTag::su2(), "su2_cover");
  const double a = g.z1().real(), b = g.z1().imag(), c = g.z2().real(), d = g.z2().imag();
  Eigen::Matrix3d r;
  r << a * a - b * b + c * c - d * d, 2 * a * b - 2 * c * d, 2 * a * d + 2 * b * c,
      -2 * a * b - 2 * c * d, a * a - b * b - c * c + d * d, 2 * a * c - 2 * b * d,
      -2 * a * d + 2 * b * c, -2 * a * c - 2 * b * d, a * a + b * b - c * c - d * d;
  return r;
}

GroupElement so3_lift(const Eigen::Matrix3d& r) {
  // standard quaternion (w, x, y, z) of r corresponds to z1 = w - i z, z2 = -x + i y
  Eigen::Quaterniond q(r);
  q.normalize();
  double comp[4] = {q.w(), -q.z(), -q.x(), q.y()};
  for (double c : comp) {
    if (c > 0) break;
    if (c < 0) {
      for (double& v : comp) v = -v;
      break;
    }
  }
  return GroupElement::su2({comp[0], comp[1]}, {comp[2], comp[3]});
}

AlgebraElement su2_to_so3(const AlgebraElement& x) {
  require_same(x.tag(), GroupTag::su2(), "su2_to_so3");
  const auto& e = su2_basis();
  Eigen::Matrix3d m;
  for (int k = 0; k < 3; ++k) {
    const Eigen::Matrix2cd br = x.m2() * e[static_cast<std::size_t>(k)] -
                                e[static_cast<std::size_t>(k)] * x.m2();
    for (int j = 0; j < 3; ++j)
      m(j, k) = 0.5 * (br.cwiseProduct(e[static_cast<std::size_t>(j)].conjugate())).sum().real();
  }
  return AlgebraElement::project(GroupTag::so3(), m.cast<cplx>());
}

AlgebraElement so3_to_su2(const AlgebraElement& z) {
  require_same(z.tag(), GroupTag::so3(), "so3_to_su2");
  static const Eigen::Matrix3d inv = [] {
    Eigen::Matrix3d l;
    for (int a = 0; a < 3; ++a)
      l.col(a) = vee(su2_to_so3(AlgebraElement::su2(su2_basis()[static_cast<std::size_t>(a)])).m3());
    return Eigen::Matrix3d(l.inverse());
  }();
  const Eigen::Vector3d c = inv * vee(z.m3());
  const auto& e = su2_basis();
  return AlgebraElement::su2(c(0) * e[0] + c(1) * e[1] + c(2) * e[2]);
}

Eigen::Matrix3d euler_matrix(double alpha, double beta, double gamma) {
  auto rz = [](double a) {
    Eigen::Matrix3d m;
    m << std::cos(a), std::sin(a), 0, -std::sin(a), std::cos(a), 0, 0, 0, 1;
    return m;
  };
  Eigen::Matrix3d ry;
  ry << std::cos(beta), 0, -std::sin(beta), 0, 1, 0, std::sin(beta), 0, std::cos(beta);
  return rz(alpha) * ry * rz(gamma);
}

std::array<double, 3> euler_angles(const Eigen::Matrix3d& r) {
  const double sb = std::hypot(r(2, 0), r(2, 1));
  const double beta = std::atan2(sb, r(2, 2));
  if (sb < 1e-12) {
    // gimbal lock: only alpha +/- gamma is determined
    if (r(2, 2) > 0) return {std::atan2(r(0, 1), r(0, 0)), 0.0, 0.0};
    return {std::atan2(r(0, 1), -r(0, 0)), std::numbers::pi, 0.0};
  }
  return {std::atan2(r(1, 2), -r(0, 2)), beta, std::atan2(r(2, 1), r(2, 0))};
}

AlgebraElement so3_x3_generator() {
  Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
  g(0, 1) = 1.0;
  g(1, 0) = -1.0;
  return AlgebraElement::so3(g);
}

// ---------------------------------------------------------------- SO(3) x T -> U(2)

GroupElement iso_so3_torus_to_u2(const GroupElement& r, cplx w, int branch) {
  require_same(r.tag(), GroupTag::so3(), "iso_so3_torus_to_u2");
  const GroupElement g = so3_lift(r.so3_matrix());
  const cplx z = std::sqrt(w / std::abs(w));
  const double s = branch < 0 ? -1.0 : 1.0;
  return GroupElement::u2(s * z * g.su2_matrix());
}

GroupElement BranchTracker::next(const GroupElement& r, cplx w) {
  const GroupElement h = iso_so3_torus_to_u2(r, w, +1);
  int branch = 1;
  if (prev_) {
    const double dp = (h.u2_matrix() - *prev_).norm();
    const double dm = (h.u2_matrix() + *prev_).norm();
    if (dm < dp) branch = -1;
    max_step_ = std::max(max_step_, std::min(dp, dm));
  }
  if (prev_ && branch != last_branch_) ++sign_changes_;
  last_branch_ = branch;
  const Eigen::Matrix2cd out = static_cast<double>(branch) * h.u2_matrix();
  prev_ = out;
  return GroupElement::u2(out);
}

BranchLoopReport branch_loop_check(const std::function<GroupElement(double)>& r_of_s,
                                   const std::function<cplx(double)>& w_of_s, int samples) {
  BranchLoopReport rep;
  rep.samples = std::max(samples, 2);
  BranchTracker tr;
  const GroupElement first = tr.next(r_of_s(0.0), w_of_s(0.0));
  GroupElement last = first;
  for (int i = 1; i <= rep.samples; ++i) {
    const double s = static_cast<double>(i) / rep.samples;
    last = tr.next(r_of_s(s), w_of_s(s));
  }
  rep.closure_gap = element_distance(first, last);
  rep.max_step = tr.max_step();
  rep.single_valued = rep.closure_gap < 1e-8;
  return rep;
}

}  // namespace liedeg
