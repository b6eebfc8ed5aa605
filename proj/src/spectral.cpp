#include "liedeg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "liedeg/errors.hpp"
#include "liedeg/kernels.hpp"
#include "liedeg/parallel.hpp"

namespace liedeg {

namespace {

constexpr std::size_t kNodeChunk = 1024;
constexpr std::size_t kDotChunk = 4096;

void require_block(const FiberVector& a, const FiberVector& b) {
  if (!(a.rep.tag == b.rep.tag) || a.rep.l != b.rep.l || a.rep.m != b.rep.m || a.rep.q != b.rep.q)
    throw TagMismatchError("fiber vectors live in different representations");
  if (a.j != b.j) throw IndexError("fiber vectors have different rows");
  if (static_cast<int>(a.coeffs.size()) != a.rep.dim() ||
      static_cast<int>(b.coeffs.size()) != b.rep.dim())
    throw IndexError("coefficient count differs from the representation dimension");
}

Representation ortho(const Representation& r) { return r.in(Convention::Orthonormal); }

/// Split-complex storage [slot][node].
struct SlotArrays {
  std::vector<std::vector<double>> re, im;
  SlotArrays(int d, std::size_t m)
      : re(static_cast<std::size_t>(d), std::vector<double>(m)),
        im(static_cast<std::size_t>(d), std::vector<double>(m)) {}
  void set(int k, std::size_t i, cplx v) {
    re[static_cast<std::size_t>(k)][i] = v.real();
    im[static_cast<std::size_t>(k)][i] = v.imag();
  }
};

cplx slot_dot(const SlotArrays& a, const SlotArrays& b, std::size_t m) {
  const std::size_t d = a.re.size();
  return parallel_sum(m, kDotChunk, cplx(0.0), [&](std::size_t lo, std::size_t hi) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      kernels::CSpan x{a.re[k].data() + lo, a.im[k].data() + lo, hi - lo};
      kernels::CSpan y{b.re[k].data() + lo, b.im[k].data() + lo, hi - lo};
      s += kernels::weighted_cdot(nullptr, x, y);
    }
    return s;
  });
}

SlotArrays sample(const FiberVector& v, const std::vector<BasePoint>& pts) {
  const int d = v.rep.dim();
  SlotArrays out(d, pts.size());
  parallel_chunks(pts.size(), kNodeChunk, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      for (int k = 0; k < d; ++k) out.set(k, i, v.coeffs[static_cast<std::size_t>(k)](pts[i]));
  });
  return out;
}

/// B_l(i) = sum_k pi_{lk}(prod_i) f_k(y_i)
template <class ProdFn, class PointFn>
void push_forward(const FiberVector& b, const Representation& ro, std::size_t m, ProdFn prod,
                  PointFn point, SlotArrays& out) {
  const int d = ro.dim();
  parallel_chunks(m, kNodeChunk, [&](std::size_t, std::size_t lo, std::size_t hi) {
    Eigen::VectorXcd f(d);
    for (std::size_t i = lo; i < hi; ++i) {
      const BasePoint y = point(i);
      for (int k = 0; k < d; ++k) f(k) = b.coeffs[static_cast<std::size_t>(k)](y);
      const Eigen::VectorXcd v = rep_eval(ro, prod(i)).m * f;
      for (int l = 0; l < d; ++l) out.set(l, i, v(l));
    }
  });
}

std::vector<cplx> series_on(const FiberVector& a, const FiberVector& b, const Cocycle& c,
                            const TranslationFlow& flow, long n_max, const QuadratureSpec& q) {
  const std::vector<BasePoint> pts = quadrature_points(q);
  const std::size_t m = pts.size();
  const Representation ro = ortho(a.rep);
  const int d = ro.dim();
  const SlotArrays lhs = sample(a, pts);
  SlotArrays rhs(d, m);
  OrbitBatch orbit(c, flow, pts);
  std::vector<cplx> out(static_cast<std::size_t>(n_max + 1));
  const double scale = 1.0 / (static_cast<double>(d) * static_cast<double>(m));
  for (long n = 0; n <= n_max; ++n) {
    push_forward(
        b, ro, m, [&](std::size_t i) { return orbit.product(i); },
        [&](std::size_t i) { return orbit.point(i); }, rhs);
    out[static_cast<std::size_t>(n)] = slot_dot(lhs, rhs, m) * scale;
    if (n < n_max) orbit.step();
  }
  return out;
}

cplx single_on(const FiberVector& a, const FiberVector& b, const Cocycle& c,
               const TranslationFlow& flow, long n, const QuadratureSpec& q) {
  const std::vector<BasePoint> pts = quadrature_points(q);
  const std::size_t m = pts.size();
  const Representation ro = ortho(a.rep);
  const int d = ro.dim();
  const SlotArrays lhs = sample(a, pts);
  SlotArrays rhs(d, m);
  push_forward(
      b, ro, m, [&](std::size_t i) { return cocycle_iterate(c, flow, pts[i], n); },
      [&](std::size_t i) { return flow_advance(flow, pts[i], static_cast<double>(n)); }, rhs);
  return slot_dot(lhs, rhs, m) / (static_cast<double>(d) * static_cast<double>(m));
}

double frob(const Eigen::MatrixXcd& m) { return m.norm(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

FiberVector FiberVector::single(const Representation& rep, int j, int k, CoefFn f,
                                std::vector<int> bound) {
  const int d = rep.dim();
  if (j < 0 || j >= d || k < 0 || k >= d) throw IndexError("fiber slot out of range");
  FiberVector v;
  v.rep = rep;
  v.j = j;
  v.coeffs.assign(static_cast<std::size_t>(d), [](const BasePoint&) { return cplx(0.0); });
  v.coeffs[static_cast<std::size_t>(k)] = std::move(f);
  v.degree_bound = std::move(bound);
  return v;
}

int rep_frequency_factor(const Representation& rep) {
  switch (rep.tag.kind) {
    case GroupKind::Torus: {
      int s = 0;
      for (int q : rep.q) s += std::abs(q);
      return s;
    }
    case GroupKind::SU2:
    case GroupKind::SO3:
      return rep.l;
    case GroupKind::U2:
      return rep.l + 2 * std::abs(rep.m - rep.l);
  }
  return 1;
}

cplx inner_product(const FiberVector& a, const FiberVector& b, const QuadratureSpec& quad) {
  require_block(a, b);
  const std::vector<BasePoint> pts = quadrature_points(quad);
  const SlotArrays x = sample(a, pts);
  const SlotArrays y = sample(b, pts);
  return slot_dot(x, y, pts.size()) /
         (static_cast<double>(a.rep.dim()) * static_cast<double>(pts.size()));
}

QuadratureSpec sized_quadrature(const FiberVector& a, const FiberVector& b, const Cocycle& c,
                                long n_max) {
  const std::size_t dim = c.frequency_bound.size();
  const int factor = rep_frequency_factor(a.rep);
  QuadratureSpec q;
  q.nodes.resize(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const int ba = k < a.degree_bound.size() ? a.degree_bound[k] : 0;
    const int bb = k < b.degree_bound.size() ? b.degree_bound[k] : 0;
    q.nodes[k] = sized_nodes(ba + bb, n_max, factor * c.frequency_bound[k]);
  }
  return q;
}

CorrelationValue koopman_apply_corr(const FiberVector& a, const FiberVector& b, const Cocycle& c,
                                    const TranslationFlow& flow, long n,
                                    std::optional<QuadratureSpec> quad) {
  require_block(a, b);
  const QuadratureSpec q = quad ? *quad : sized_quadrature(a, b, c, std::labs(n));
  CorrelationValue out;
  out.value = single_on(a, b, c, flow, n, q);
  out.err_estimate = std::abs(out.value - single_on(a, b, c, flow, n, q.doubled()));
  out.nodes = q.total();
  return out;
}

std::size_t CorrelationSeries::flagged_count() const {
  return static_cast<std::size_t>(std::count(flagged.begin(), flagged.end(), true));
}

CorrelationSeries correlation_series(const FiberVector& a, const FiberVector& b, const Cocycle& c,
                                     const TranslationFlow& flow, long n_max,
                                     std::optional<QuadratureSpec> quad) {
  require_block(a, b);
  if (n_max < 1) throw ConfigError("correlation_series: N_max must be >= 1");
  CorrelationSeries s;
  s.quad = quad ? *quad : sized_quadrature(a, b, c, n_max);
  s.values = series_on(a, b, c, flow, n_max, s.quad);
  const std::vector<cplx> fine = series_on(a, b, c, flow, n_max, s.quad.doubled());
  s.err_estimate.resize(s.values.size());
  s.flagged.resize(s.values.size());
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    s.err_estimate[i] = std::abs(s.values[i] - fine[i]);
    s.flagged[i] = s.err_estimate[i] > kCorrelationFlag;
  }
  return s;
}

Eigen::MatrixXcd d_n_average(const Representation& rep, const Cocycle& c,
                             const TranslationFlow& flow, const BasePoint& x, long n) {
  if (n < 1) throw ConfigError("d_n_average: N must be >= 1");
  const Representation ro = ortho(rep);
  const int d = ro.dim();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  Orbit orbit(c, flow, x);
  for (long i = 0; i < n; ++i) {
    const Eigen::MatrixXcd p = rep_eval(ro, orbit.product()).m;
    sum += p * rep_differential(ro, c.m_field(orbit.point())).m * p.adjoint();
    orbit.step();
  }
  Eigen::MatrixXcd out = cplx(0.0, 1.0) / static_cast<double>(n) * sum;
  if (rep.convention == Convention::Paper) out = to_paper(rep, out);
  return out;
}

KernelSplit kernel_split(const Eigen::MatrixXcd& d) {
  if (d.rows() != d.cols()) throw NonHermitianError("kernel_split: matrix is not square");
  const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
  if ((d - d.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw NonHermitianError("kernel_split: matrix is not Hermitian");
  const Eigen::Index n = d.rows();
  KernelSplit ks;
  Eigen::MatrixXcd off = d;
  off.diagonal().setZero();
  if (n == 0 || off.cwiseAbs().maxCoeff() <= 1e-12 * scale) {
    ks.q = Eigen::MatrixXcd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) ks.eigenvalues.push_back(d(i, i).real());
  } else {
    const Eigen::MatrixXcd h = 0.5 * (d + d.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    ks.q = es.eigenvectors().adjoint();
    for (Eigen::Index i = 0; i < n; ++i) ks.eigenvalues.push_back(es.eigenvalues()(i));
  }
  double top = 0.0;
  for (double e : ks.eigenvalues) top = std::max(top, std::abs(e));
  const double tol = kKernelRelTol * std::max(1.0, top);
  for (int i = 0; i < static_cast<int>(ks.eigenvalues.size()); ++i)
    (std::abs(ks.eigenvalues[static_cast<std::size_t>(i)]) <= tol ? ks.kernel : ks.complement)
        .push_back(i);
  return ks;
}

TransferFunction inverse_transfer(const TransferFunction& t) {
  TransferFunction inv = t;
  inv.name = "inverse of " + t.name;
  inv.value = [t](const BasePoint& x) { return group_inv(t.value(x)); };
  inv.m_field = [t](const BasePoint& x) { return ad(group_inv(t.value(x)), t.m_field(x)) * -1.0; };
  return inv;
}

FiberVector conjugate_vector(const FiberVector& psi, const TransferFunction& t) {
  require_same(psi.rep.tag, t.tag, "conjugate_vector");
  const Representation ro = ortho(psi.rep);
  const int d = ro.dim();
  FiberVector out = psi;
  const int factor = rep_frequency_factor(ro);
  for (std::size_t k = 0; k < out.degree_bound.size() && k < t.frequency_bound.size(); ++k)
    out.degree_bound[k] += factor * t.frequency_bound[k];
  const std::vector<CoefFn> src = psi.coeffs;
  for (int l = 0; l < d; ++l) {
    out.coeffs[static_cast<std::size_t>(l)] = [ro, t, src, l, d](const BasePoint& x) {
      const Eigen::MatrixXcd p = rep_eval(ro, t.value(x)).m;
      cplx s = 0.0;
      for (int k = 0; k < d; ++k) s += p(l, k) * src[static_cast<std::size_t>(k)](x);
      return s;
    };
  }
  return out;
}

std::vector<double> wiener_average(const std::vector<cplx>& c) {
  std::vector<double> a(c.size(), 0.0);
  double acc = 0.0;
  for (std::size_t n = 1; n < c.size(); ++n) {
    acc += std::norm(c[n]);
    a[n] = acc / static_cast<double>(n);
  }
  return a;
}

std::vector<double> wiener_average(const CorrelationSeries& s) { return wiener_average(s.values); }

std::vector<double> dyadic_t_grid(int levels) {
  std::vector<double> t;
  for (int k = levels - 1; k >= 0; --k) t.push_back(std::ldexp(1.0, -k));
  return t;
}

DiniReport dini_modulus(const MatrixField& f, const TranslationFlow& flow,
                        const std::vector<double>& t_grid, const std::vector<BasePoint>& grid) {
  DiniReport r;
  r.t = t_grid;
  std::sort(r.t.begin(), r.t.end());
  if (!r.t.empty() && !(r.t.front() > 0.0 && r.t.back() <= 1.0))
    throw ConfigError("dini_modulus: t grid must lie in (0, 1]");
  std::vector<Eigen::MatrixXcd> base(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) base[i] = f(grid[i]);
  for (double t : r.t) {
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      s = std::max(s, frob(f(flow_advance(flow, grid[i], t)) - base[i]));
      s = std::max(s, frob(f(flow_advance(flow, grid[i], -t)) - base[i]));
    }
    r.samples.push_back(s);
  }
  if (r.t.empty()) return r;
  for (std::size_t k = 0; k + 1 < r.t.size(); ++k)
    r.integral += 0.5 * (r.samples[k] + r.samples[k + 1]) * std::log(r.t[k + 1] / r.t[k]);
  r.integral += r.samples.front();
  const double top = *std::max_element(r.samples.begin(), r.samples.end());
  r.plateau = top > 1e-12 && r.samples.front() > 0.25 * top && r.t.size() > 2;
  return r;
}

MatrixField lie_derivative_field(const Representation& rep, const Cocycle& c) {
  const Representation ro = ortho(rep);
  return [ro, c](const BasePoint& x) -> Eigen::MatrixXcd {
    return rep_differential(ro, c.m_field(x)).m * rep_eval(ro, c.value(x)).m;
  };
}

RegularityCheck regularity_check(const Representation& rep, const Cocycle& c,
                                 const TranslationFlow& flow, const std::vector<BasePoint>& grid,
                                 double h) {
  const Representation ro = ortho(rep);
  RegularityCheck r;
  for (const BasePoint& x : grid) {
    const Eigen::MatrixXcd fwd = rep_eval(ro, c.value(flow_advance(flow, x, h))).m;
    const Eigen::MatrixXcd bwd = rep_eval(ro, c.value(flow_advance(flow, x, -h))).m;
    r.fd_sup = std::max(r.fd_sup, frob(fwd - bwd) / (2.0 * h));
    r.analytic_sup = std::max(r.analytic_sup, frob(rep_differential(ro, c.m_field(x)).m));
  }
  r.bounded = r.fd_sup <= 1.05 * r.analytic_sup + 1e-3;
  return r;
}

namespace {

struct ProbeWeights {
  double kernel = 0.0;
  double complement = 0.0;
};

ProbeWeights probe_weights(const FiberVector& p, const KernelSplit& ks,
                           const std::vector<BasePoint>& grid) {
  ProbeWeights w;
  const int d = p.rep.dim();
  Eigen::VectorXcd v(d);
  for (const BasePoint& x : grid) {
    for (int k = 0; k < d; ++k) v(k) = p.coeffs[static_cast<std::size_t>(k)](x);
    const Eigen::VectorXcd e = ks.q * v;
    for (int i : ks.kernel) w.kernel += std::norm(e(i));
    for (int i : ks.complement) w.complement += std::norm(e(i));
  }
  return w;
}

double m_field_l2(const Cocycle& c, const std::vector<BasePoint>& grid) {
  double s = 0.0;
  for (const BasePoint& x : grid) s += std::pow(c.m_field(x).norm(), 2);
  return grid.empty() ? 0.0 : s / static_cast<double>(grid.size());
}

}  // namespace

SpectralVerdict mixing_verdict(const Representation& rep, int j, const Cocycle& c,
                               const TranslationFlow& flow, const MixingInputs& in,
                               std::vector<CorrelationSeries>* series_out) {
  SpectralVerdict v;
  v.rep_label = rep.label();
  v.j = j;
  const KernelSplit ks = kernel_split(in.d);
  v.kernel_indices = ks.kernel;

  const double l2 = m_field_l2(c, in.check_grid);
  v.hypotheses.push_back({"M_phi in L2", std::isfinite(l2) ? "PASS" : "FAIL", l2});
  const RegularityCheck reg = regularity_check(rep, c, flow, in.check_grid);
  v.hypotheses.push_back(
      {"L_Y(pi o phi) bounded", reg.bounded ? "PASS" : "FAIL", reg.fd_sup});
  bool hyp_ok = std::isfinite(l2) && reg.bounded;

  std::size_t flagged = 0;
  int supported = 0, violated = 0, undecided = 0, in_kernel = 0, straddle = 0;
  bool wiener_set = false, wiener_from_complement = false;
  for (std::size_t p = 0; p < in.probes.size(); ++p) {
    const FiberVector& probe = in.probes[p];
    const CorrelationSeries s = correlation_series(probe, probe, c, flow, in.n_max);
    flagged += s.flagged_count();
    if (series_out) series_out->push_back(s);
    const ProbeWeights w = probe_weights(probe, ks, in.check_grid);
    const double total = w.kernel + w.complement;
    const bool kernel_probe = w.complement <= 1e-12 * std::max(total, 1e-300);
    const bool complement_probe = w.kernel <= 1e-12 * std::max(total, 1e-300);
    if (!wiener_set || (complement_probe && !wiener_from_complement)) {
      v.wiener = wiener_average(s);
      wiener_set = true;
      wiener_from_complement = complement_probe;
    }
    const std::string tag = "probe " + std::to_string(p) + ": ";
    if (kernel_probe) {
      ++in_kernel;
      v.notes.push_back(tag + "lies in ker D, NOT-IN-SCOPE");
      continue;
    }
    if (!complement_probe) {
      ++straddle;
      v.notes.push_back(tag + "has components in ker D and its complement, not classified");
      continue;
    }
    const double c0 = std::abs(s.values.front());
    double tail = 0.0, head = 0.0;
    const long half = std::max(1L, in.n_max / 2);
    for (long n = 1; n <= in.n_max; ++n) {
      const double a = std::abs(s.values[static_cast<std::size_t>(n)]);
      (n >= half ? tail : head) = std::max(n >= half ? tail : head, a);
    }
    v.c0 = c0;
    v.tail_max = std::max(v.tail_max, tail);
    const bool decreasing = tail <= head + 1e-12 || tail <= 1e-10 * c0;
    if (tail <= 1e-3 * c0 && decreasing) {
      ++supported;
      v.notes.push_back(tag + "max |c_N| over the second half " + fmt("%.3g", tail));
    } else if (tail > 0.5 * c0) {
      ++violated;
      v.notes.push_back(tag + "correlations do not decay, tail " + fmt("%.3g", tail));
    } else {
      ++undecided;
      v.notes.push_back(tag + "inconclusive decay, tail " + fmt("%.3g", tail));
    }
  }
  v.hypotheses.push_back({"quadrature error within 1e-6", flagged == 0 ? "PASS" : "FAIL",
                          static_cast<double>(flagged)});
  hyp_ok = hyp_ok && flagged == 0;

  if (ks.complement.empty()) {
    v.verdict = "NO-CLAIM";
    v.notes.push_back("kernel complement is empty");
  } else if (supported + violated + undecided == 0) {
    v.verdict = in_kernel > 0 && straddle == 0 ? "NOT-IN-SCOPE" : "NO-CLAIM";
  } else if (!hyp_ok) {
    v.verdict = "NO-CLAIM";
    v.notes.push_back("a hypothesis failed, so the decay criterion does not apply");
  } else if (violated > 0) {
    v.verdict = "VIOLATED";
  } else if (undecided == 0) {
    v.verdict = "SUPPORTED";
  } else {
    v.verdict = "NO-CLAIM";
  }
  v.notes.push_back("A_N tends to 0 exactly when the spectral measure of the pair has no atoms");
  return v;
}

SpectralVerdict ac_verdict(const Representation& rep, int j, const Cocycle& c,
                           const TranslationFlow& flow, const AcInputs& in) {
  SpectralVerdict v;
  v.rep_label = rep.label();
  v.j = j;
  const KernelSplit ks = kernel_split(in.d);
  v.kernel_indices = ks.kernel;
  double amin = std::numeric_limits<double>::infinity();
  for (double e : ks.eigenvalues) amin = std::min(amin, e * e);
  if (ks.eigenvalues.empty()) amin = 0.0;

  const bool uniform = in.uniform_diagnostic <= in.uniform_tol;
  v.hypotheses.push_back(
      {"(ii) uniform Cesaro convergence", uniform ? "PASS" : "FAIL", in.uniform_diagnostic});
  const bool dini = std::isfinite(in.dini.integral) && !in.dini.plateau;
  v.hypotheses.push_back({"(iii) Dini condition", dini ? "HEURISTIC-PASS" : "HEURISTIC-FAIL",
                          in.dini.integral});
  v.hypotheses.push_back({"(v) a_phi_pi > 0", amin > 0.0 ? "PASS" : "FAIL", amin});
  const RegularityCheck reg = regularity_check(rep, c, flow, in.check_grid);
  v.hypotheses.push_back({"(i) L_Y(pi o phi) bounded", reg.bounded ? "PASS" : "FAIL", reg.fd_sup});

  if (ks.complement.empty()) {
    v.verdict = "NO-CLAIM";
    v.notes.push_back("degree vanishes on this block");
  } else if (!uniform || !dini || !reg.bounded) {
    v.verdict = "NO-CLAIM";
    v.notes.push_back("a checkable regularity hypothesis failed");
  } else if (ks.kernel.empty()) {
    v.verdict = "AC-PREDICTED";
  } else {
    v.verdict = "AC-PREDICTED-ON-COMPLEMENT";
  }
  if (v.verdict != "NO-CLAIM") {
    v.notes.push_back("conditional on heuristic regularity flags");
    if (in.torus_irrational_base)
      v.notes.push_back(
          "irrational torus translation base: Lebesgue spectrum with uniform countable "
          "multiplicity is expected on the predicted subspace");
  }
  return v;
}

std::string series_csv(const CorrelationSeries& s) {
  std::string out = "N,re,im,abs,err_estimate\n";
  char buf[160];
  for (std::size_t n = 0; n < s.values.size(); ++n) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n", n, s.values[n].real(),
                  s.values[n].imag(), std::abs(s.values[n]), s.err_estimate[n]);
    out += buf;
  }
  return out;
}

}  // namespace liedeg
