#include "liedeg/dynamics.hpp"

#include <cmath>

#include "liedeg/errors.hpp"
#include "liedeg/kernels.hpp"

namespace liedeg {

TranslationFlow TranslationFlow::default_for(int d) {
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  const double silver = std::sqrt(2.0) - 1.0;
  TranslationFlow f;
  f.alpha.assign(static_cast<std::size_t>(std::max(d, 1)), golden);
  if (d >= 2) f.alpha[1] = silver;
  // further coordinates: fractional parts of sqrt of small primes
  static const double extra[] = {std::sqrt(3.0), std::sqrt(5.0) * 0.5, std::sqrt(7.0),
                                 std::sqrt(11.0), std::sqrt(13.0), std::sqrt(17.0)};
  for (int i = 2; i < d; ++i) {
    const double v = extra[(i - 2) % 6];
    f.alpha[static_cast<std::size_t>(i)] = v - std::floor(v);
  }
  return f;
}

std::size_t QuadratureSpec::total() const {
  std::size_t t = 1;
  for (int m : nodes) t *= static_cast<std::size_t>(std::max(m, 1));
  return t;
}

QuadratureSpec QuadratureSpec::doubled() const {
  QuadratureSpec q = *this;
  for (int& m : q.nodes) m *= 2;
  return q;
}

std::vector<BasePoint> quadrature_points(const QuadratureSpec& q) {
  const std::size_t total = q.total();
  std::vector<BasePoint> pts(total);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rem = i;
    pts[i].phases.resize(q.nodes.size());
    for (std::size_t k = 0; k < q.nodes.size(); ++k) {
      const std::size_t m = static_cast<std::size_t>(std::max(q.nodes[k], 1));
      pts[i].phases[k] = static_cast<double>(rem % m) / static_cast<double>(m);
      rem /= m;
    }
  }
  return pts;
}

int sized_nodes(int b, long n, int f) {
  const long v = 2 * (static_cast<long>(b) + std::labs(n) * f) + 1;
  return static_cast<int>(std::max(1L, v));
}

BasePoint flow_advance(const TranslationFlow& flow, const BasePoint& x, double t) {
  if (flow.dim() != x.dim()) throw TagMismatchError("flow/base dimension");
  BasePoint y = x;
  for (std::size_t k = 0; k < y.phases.size(); ++k) {
    double p = y.phases[k] + t * flow.alpha[k];
    p -= std::floor(p);
    if (p >= 1.0) p = 0.0;
    y.phases[k] = p;
  }
  return y;
}

Orbit::Orbit(const Cocycle& c, const TranslationFlow& flow, const BasePoint& x)
    : c_(&c), flow_(&flow), x_(x), prod_(GroupElement::identity(c.tag)) {}

void Orbit::step() {
  prod_ = group_mul(prod_, c_->value(x_));
  x_ = flow_advance(*flow_, x_, 1.0);
  ++n_;
}

GroupElement cocycle_iterate(const Cocycle& c, const TranslationFlow& flow, const BasePoint& x,
                             long n) {
  if (n == 0) return GroupElement::identity(c.tag);
  if (n < 0) {
    const BasePoint y = flow_advance(flow, x, static_cast<double>(n));
    return group_inv(cocycle_iterate(c, flow, y, -n));
  }
  Orbit o(c, flow, x);
  for (long i = 0; i < n; ++i) o.step();
  return o.product();
}

MFieldReport validate_m_field(const Cocycle& c, const TranslationFlow& flow,
                              const std::vector<BasePoint>& points, double h) {
  MFieldReport r;
  r.h = h;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const BasePoint& x = points[i];
    const Eigen::MatrixXcd fwd = c.value(flow_advance(flow, x, h)).matrix();
    const Eigen::MatrixXcd bwd = c.value(flow_advance(flow, x, -h)).matrix();
    const Eigen::MatrixXcd inv = group_inv(c.value(x)).matrix();
    const AlgebraElement fd = AlgebraElement::project(c.tag, (fwd - bwd) / (2.0 * h) * inv);
    const double dev = (fd - c.m_field(x)).norm();
    if (dev > r.max_deviation) {
      r.max_deviation = dev;
      r.worst_index = i;
    }
  }
  return r;
}

AlgebraElement w_apply(const Cocycle& c, const TranslationFlow& flow, const AlgebraField& f, long n,
                       const BasePoint& x) {
  if (n == 0) return f(x);
  return ad(cocycle_iterate(c, flow, x, n), f(flow_advance(flow, x, static_cast<double>(n))));
}

std::pair<BasePoint, GroupElement> skew_step(const Cocycle& c, const TranslationFlow& flow,
                                             const BasePoint& x, const GroupElement& g, long n) {
  return {flow_advance(flow, x, static_cast<double>(n)),
          group_mul(g, cocycle_iterate(c, flow, x, n))};
}

Cocycle cohomologous_build(const Cocycle& delta, const TransferFunction& zeta,
                           const TranslationFlow& flow) {
  require_same(delta.tag, zeta.tag, "cohomologous_build");
  Cocycle phi;
  phi.tag = delta.tag;
  phi.name = "cohomologous(" + delta.name + ", " + zeta.name + ")";
  phi.smoothness_note = "product of " + delta.name + " and transfer " + zeta.name;
  phi.frequency_bound = delta.frequency_bound;
  for (std::size_t k = 0; k < phi.frequency_bound.size() && k < zeta.frequency_bound.size(); ++k)
    phi.frequency_bound[k] += 2 * zeta.frequency_bound[k];
  phi.value = [delta, zeta, flow](const BasePoint& x) {
    const GroupElement z1 = zeta.value(flow_advance(flow, x, 1.0));
    return group_mul(group_mul(group_inv(zeta.value(x)), delta.value(x)), z1);
  };
  phi.m_field = [delta, zeta, flow](const BasePoint& x) {
    const GroupElement d = delta.value(x);
    const AlgebraElement mz1 = zeta.m_field(flow_advance(flow, x, 1.0));
    const AlgebraElement inner = zeta.m_field(x) - delta.m_field(x) - ad(d, mz1);
    return ad(group_inv(zeta.value(x)), inner) * -1.0;
  };
  return phi;
}

OrbitBatch::OrbitBatch(const Cocycle& c, const TranslationFlow& flow,
                       const std::vector<BasePoint>& starts)
    : c_(&c), flow_(&flow), count_(starts.size()) {
  const std::size_t d = static_cast<std::size_t>(flow.dim());
  phases_.assign(d, std::vector<double>(count_));
  for (std::size_t i = 0; i < count_; ++i) {
    if (starts[i].phases.size() != d) throw TagMismatchError("flow/base dimension");
    for (std::size_t k = 0; k < d; ++k) phases_[k][i] = starts[i].phases[k];
  }
  su2_ = c.tag.kind == GroupKind::SU2;
  if (su2_) {
    a1r_.assign(count_, 1.0);
    a1i_.assign(count_, 0.0);
    a2r_.assign(count_, 0.0);
    a2i_.assign(count_, 0.0);
    b1r_.resize(count_);
    b1i_.resize(count_);
    b2r_.resize(count_);
    b2i_.resize(count_);
  } else {
    prods_.assign(count_, GroupElement::identity(c.tag));
  }
}

BasePoint OrbitBatch::point(std::size_t i) const {
  BasePoint x;
  x.phases.resize(phases_.size());
  for (std::size_t k = 0; k < phases_.size(); ++k) x.phases[k] = phases_[k][i];
  return x;
}

GroupElement OrbitBatch::product(std::size_t i) const {
  if (su2_) return GroupElement::su2({a1r_[i], a1i_[i]}, {a2r_[i], a2i_[i]});
  return prods_[i];
}

void OrbitBatch::step() {
  if (su2_) {
    for (std::size_t i = 0; i < count_; ++i) {
      const GroupElement v = c_->value(point(i));
      b1r_[i] = v.z1().real();
      b1i_[i] = v.z1().imag();
      b2r_[i] = v.z2().real();
      b2i_[i] = v.z2().imag();
    }
    kernels::su2_mul_batch(a1r_.data(), a1i_.data(), a2r_.data(), a2i_.data(), b1r_.data(),
                           b1i_.data(), b2r_.data(), b2i_.data(), count_);
    for (std::size_t i = 0; i < count_; ++i) {
      const double nrm = a1r_[i] * a1r_[i] + a1i_[i] * a1i_[i] + a2r_[i] * a2r_[i] + a2i_[i] * a2i_[i];
      if (std::abs(nrm - 1.0) > kRenormThreshold) {
        const double s = 1.0 / std::sqrt(nrm);
        a1r_[i] *= s;
        a1i_[i] *= s;
        a2r_[i] *= s;
        a2i_[i] *= s;
      }
    }
  } else {
    for (std::size_t i = 0; i < count_; ++i) prods_[i] = group_mul(prods_[i], c_->value(point(i)));
  }
  for (std::size_t k = 0; k < phases_.size(); ++k)
    kernels::phase_advance(phases_[k].data(), flow_->alpha[k], count_);
  ++n_;
}

std::vector<BasePoint> random_points(int d, std::size_t count, RngHandle h) {
  Rng rng(h);
  std::vector<BasePoint> pts(count);
  for (auto& p : pts) {
    p.phases.resize(static_cast<std::size_t>(d));
    for (double& v : p.phases) v = rng.uniform();
  }
  return pts;
}

}  // namespace liedeg
