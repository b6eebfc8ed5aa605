#include "liedeg/cocycles.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "liedeg/errors.hpp"

namespace liedeg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cplx kI{0.0, 1.0};

void require_dim(const std::vector<int>& k, const TranslationFlow& flow, const char* what) {
  if (static_cast<int>(k.size()) != flow.dim())
    throw ConfigError(std::string(what) + ": exponent vector has length " +
                      std::to_string(k.size()) + ", base dimension is " +
                      std::to_string(flow.dim()));
}

double turns(const std::vector<int>& k, const BasePoint& x) {
  double t = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) t += k[i] * x.phases[i];
  return t;
}

std::vector<int> abs_bound(const std::vector<int>& k) {
  std::vector<int> b(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) b[i] = std::abs(k[i]);
  return b;
}

std::vector<int> max_bound(std::vector<int> a, const std::vector<int>& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = std::max(a[i], b[i]);
  return a;
}

std::string vec_text(const std::vector<int>& k) {
  std::string s = "(";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + ")";
}

}  // namespace

cplx monomial(const std::vector<int>& k, const BasePoint& x) {
  const double t = turns(k, x);
  return {std::cos(kTwoPi * t), std::sin(kTwoPi * t)};
}

double monomial_rate(const std::vector<int>& k, const TranslationFlow& flow) {
  double r = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) r += k[i] * flow.alpha[i];
  return kTwoPi * r;
}

Cocycle constant_cocycle(const GroupElement& g, int base_dim) {
  Cocycle c;
  c.tag = g.tag();
  c.name = "constant";
  c.smoothness_note = "constant";
  c.frequency_bound.assign(static_cast<std::size_t>(base_dim), 0);
  c.value = [g](const BasePoint&) { return g; };
  const GroupTag tag = g.tag();
  c.m_field = [tag](const BasePoint&) { return AlgebraElement::zero(tag); };
  return c;
}

Cocycle torus_monomial(const std::vector<std::vector<int>>& k, const TranslationFlow& flow) {
  if (k.empty() || static_cast<int>(k.size()) > kMaxTorusDim)
    throw ConfigError("torus_monomial: target dimension out of range");
  std::vector<double> theta;
  std::vector<int> bound(static_cast<std::size_t>(flow.dim()), 0);
  std::string name = "x^";
  for (const auto& row : k) {
    require_dim(row, flow, "torus_monomial");
    theta.push_back(monomial_rate(row, flow));
    bound = max_bound(bound, abs_bound(row));
    name += vec_text(row);
  }
  Cocycle c;
  c.tag = GroupTag::torus(static_cast<int>(k.size()));
  c.name = name;
  c.smoothness_note = "trigonometric monomial, real-analytic";
  c.frequency_bound = bound;
  c.value = [k](const BasePoint& x) {
    std::vector<cplx> v;
    v.reserve(k.size());
    for (const auto& row : k) v.push_back(monomial(row, x));
    return GroupElement::torus(v);
  };
  const AlgebraElement m = AlgebraElement::torus(theta);
  c.m_field = [m](const BasePoint&) { return m; };
  return c;
}

Cocycle su2_diagonal(const std::vector<int>& k, const TranslationFlow& flow) {
  require_dim(k, flow, "su2_diagonal");
  Cocycle c;
  c.tag = GroupTag::su2();
  c.name = "diag(x^k, conj x^k) k=" + vec_text(k);
  c.smoothness_note = "diagonal trigonometric monomial, real-analytic";
  c.frequency_bound = abs_bound(k);
  c.value = [k](const BasePoint& x) { return GroupElement::su2(monomial(k, x), 0.0); };
  const AlgebraElement m = AlgebraElement::su2_diag(monomial_rate(k, flow));
  c.m_field = [m](const BasePoint&) { return m; };
  return c;
}

TransferFunction su2_trig_transfer(const std::vector<int>& p, double theta,
                                   const TranslationFlow& flow) {
  require_dim(p, flow, "su2_trig_transfer");
  const cplx rot{std::cos(theta), std::sin(theta)};
  const double rate = monomial_rate(p, flow);
  TransferFunction z;
  z.tag = GroupTag::su2();
  z.name = "zeta p=" + vec_text(p);
  z.smoothness_note = "trigonometric polynomial, real-analytic";
  z.frequency_bound = abs_bound(p);
  z.value = [p, rot](const BasePoint& x) {
    const cplx u = monomial(p, x);
    return GroupElement::su2(0.5 * (1.0 + u), rot * 0.5 * (1.0 - u));
  };
  z.m_field = [p, rot, rate](const BasePoint& x) {
    const cplx u = monomial(p, x);
    const cplx du = kI * rate * u;
    const cplx d1 = 0.5 * du;
    const cplx d2 = -rot * 0.5 * du;
    const cplx z1 = 0.5 * (1.0 + u);
    const cplx z2 = rot * 0.5 * (1.0 - u);
    Eigen::Matrix2cd dz, zinv;
    dz << d1, d2, -std::conj(d2), std::conj(d1);
    zinv << std::conj(z1), -z2, std::conj(z2), z1;
    return AlgebraElement::su2(dz * zinv);
  };
  return z;
}

ManufacturedSu2 su2_manufactured(const std::vector<int>& k, const std::vector<int>& p,
                                 double theta, const TranslationFlow& flow) {
  ManufacturedSu2 out;
  out.delta = su2_diagonal(k, flow);
  out.zeta = su2_trig_transfer(p, theta, flow);
  out.phi = cohomologous_build(out.delta, out.zeta, flow);
  out.phi.name = "manufactured SU2 k=" + vec_text(k) + " p=" + vec_text(p);
  return out;
}

Cocycle so3_x3_rotation(const std::vector<int>& k, double angle0, const TranslationFlow& flow) {
  require_dim(k, flow, "so3_x3_rotation");
  Cocycle c;
  c.tag = GroupTag::so3();
  c.name = "x3-rotation k=" + vec_text(k);
  c.smoothness_note = "rotation about x3 by a linear angle, real-analytic";
  c.frequency_bound = abs_bound(k);
  c.value = [k, angle0](const BasePoint& x) {
    return GroupElement::so3(euler_matrix(angle0 + kTwoPi * turns(k, x), 0.0, 0.0));
  };
  const AlgebraElement m = so3_x3_generator() * monomial_rate(k, flow);
  c.m_field = [m](const BasePoint&) { return m; };
  return c;
}

Cocycle u2_product(const std::vector<int>& s, const Cocycle& su2_part, const TranslationFlow& flow) {
  require_dim(s, flow, "u2_product");
  require_same(su2_part.tag, GroupTag::su2(), "u2_product");
  const double rate = monomial_rate(s, flow);
  Cocycle c;
  c.tag = GroupTag::u2();
  c.name = "x^" + vec_text(s) + " * " + su2_part.name;
  c.smoothness_note = "product of x^s and " + su2_part.smoothness_note;
  c.frequency_bound = abs_bound(s);
  for (std::size_t i = 0; i < c.frequency_bound.size() && i < su2_part.frequency_bound.size(); ++i)
    c.frequency_bound[i] += su2_part.frequency_bound[i];
  c.value = [s, su2_part](const BasePoint& x) {
    return GroupElement::u2(monomial(s, x) * su2_part.value(x).su2_matrix());
  };
  c.m_field = [rate, su2_part](const BasePoint& x) {
    Eigen::Matrix2cd m = su2_part.m_field(x).m2();
    m += kI * rate * Eigen::Matrix2cd::Identity();
    return AlgebraElement::u2(m);
  };
  return c;
}

Cocycle u2_so3_torus(const std::vector<int>& r, double angle0, const std::vector<int>& n,
                     const TranslationFlow& flow) {
  require_dim(r, flow, "u2_so3_torus");
  require_dim(n, flow, "u2_so3_torus");
  const double rot_rate = monomial_rate(r, flow);
  const double tor_rate = monomial_rate(n, flow);
  Cocycle c;
  c.tag = GroupTag::u2();
  c.name = "h(x3-rotation r=" + vec_text(r) + ", x^" + vec_text(n) + ")";
  c.smoothness_note = "branch of the SO(3) x T -> U(2) image; jumps by -1 where an odd "
                      "exponent sum wraps";
  c.frequency_bound = max_bound(abs_bound(r), abs_bound(n));
  c.value = [r, n, angle0](const BasePoint& x) {
    const double a = angle0 + kTwoPi * turns(r, x);
    const double half = std::numbers::pi * turns(n, x);
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Zero();
    u(0, 0) = std::polar(1.0, half + 0.5 * a);
    u(1, 1) = std::polar(1.0, half - 0.5 * a);
    return GroupElement::u2(u);
  };
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = kI * 0.5 * (tor_rate + rot_rate);
  m(1, 1) = kI * 0.5 * (tor_rate - rot_rate);
  const AlgebraElement mf = AlgebraElement::u2(m);
  c.m_field = [mf](const BasePoint&) { return mf; };
  return c;
}

Cocycle apply_homomorphism(const Homomorphism& h, const std::vector<Cocycle>& factors) {
  switch (h.kind) {
    case HomKind::Identity:
      if (factors.size() != 1) throw ConfigError("identity homomorphism takes one factor");
      return factors[0];
    case HomKind::TorusPower: {
      if (factors.size() != 1 || factors[0].tag.kind != GroupKind::Torus)
        throw ConfigError("torus power takes one torus factor");
      const Cocycle d = factors[0];
      const int p = h.power;
      Cocycle c = d;
      c.name = "(" + d.name + ")^" + std::to_string(p);
      for (int& b : c.frequency_bound) b *= std::abs(p);
      c.value = [d, p](const BasePoint& x) {
        const GroupElement g = d.value(x);
        std::vector<cplx> v(static_cast<std::size_t>(g.tag().torus_dim));
        for (int i = 0; i < g.tag().torus_dim; ++i) v[static_cast<std::size_t>(i)] = std::pow(g.torus_value(i), p);
        return GroupElement::torus(v);
      };
      c.m_field = [d, h](const BasePoint& x) { return hom_differential(h, {d.m_field(x)}); };
      return c;
    }
    case HomKind::So3TorusToU2: {
      if (factors.size() != 2 || factors[0].tag.kind != GroupKind::SO3 ||
          factors[1].tag != GroupTag::torus(1))
        throw ConfigError("SO(3) x T -> U(2) takes an SO(3) and a TORUS(1) factor");
      const Cocycle rot = factors[0];
      const Cocycle tor = factors[1];
      Cocycle c;
      c.tag = GroupTag::u2();
      c.name = "h(" + rot.name + ", " + tor.name + ")";
      c.smoothness_note = "principal branch of h, defined up to sign";
      c.frequency_bound = max_bound(rot.frequency_bound, tor.frequency_bound);
      c.value = [rot, tor](const BasePoint& x) {
        return iso_so3_torus_to_u2(rot.value(x), tor.value(x).torus_value(0), 1);
      };
      c.m_field = [rot, tor, h](const BasePoint& x) {
        return hom_differential(h, {rot.m_field(x), tor.m_field(x)});
      };
      return c;
    }
  }
  throw ConfigError("unsupported homomorphism");
}

AlgebraElement hom_differential(const Homomorphism& h, const std::vector<AlgebraElement>& z) {
  switch (h.kind) {
    case HomKind::Identity:
      return z.at(0);
    case HomKind::TorusPower:
      return z.at(0) * static_cast<double>(h.power);
    case HomKind::So3TorusToU2: {
      Eigen::Matrix2cd m = so3_to_su2(z.at(0)).m2();
      m += kI * 0.5 * z.at(1).torus_theta(0) * Eigen::Matrix2cd::Identity();
      return AlgebraElement::u2(m);
    }
  }
  throw ConfigError("unsupported homomorphism");
}

}  // namespace liedeg
