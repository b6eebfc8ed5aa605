#include "liedeg/degree.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "liedeg/errors.hpp"
#include "liedeg/parallel.hpp"

namespace liedeg {

PointwiseDegree degree_pointwise(const Cocycle& c, const TranslationFlow& flow, const BasePoint& x,
                                 long n) {
  if (n < 1) throw ConfigError("degree_pointwise: N must be >= 1");
  const long half_n = std::max(1L, n / 2);
  AlgebraElement sum = AlgebraElement::zero(c.tag);
  AlgebraElement half_sum = sum;
  Orbit orbit(c, flow, x);
  for (long i = 0; i < n; ++i) {
    sum += ad(orbit.product(), c.m_field(orbit.point()));
    if (i + 1 == half_n) half_sum = sum;
    orbit.step();
  }
  PointwiseDegree out;
  out.value = sum * (1.0 / static_cast<double>(n));
  out.half = half_sum * (1.0 / static_cast<double>(half_n));
  out.diagnostic = (out.value - out.half).norm();
  return out;
}

DegreeField degree_field(const Cocycle& c, const TranslationFlow& flow,
                         const std::vector<BasePoint>& points, long n) {
  DegreeField f;
  f.points = points;
  f.n_used = n;
  f.values.resize(points.size());
  f.diagnostics.resize(points.size());
  parallel_chunks(points.size(), 1, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const PointwiseDegree d = degree_pointwise(c, flow, points[i], n);
      f.values[i] = d.value;
      f.diagnostics[i] = d.diagnostic;
    }
  });
  for (double d : f.diagnostics) f.max_diagnostic = std::max(f.max_diagnostic, d);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    for (std::size_t j = i + 1; j < f.values.size(); ++j)
      f.spread = std::max(f.spread, (f.values[i] - f.values[j]).norm());
  f.constant = f.spread <= std::max(kConstantSpreadFactor * f.max_diagnostic, 1e-12);
  return f;
}

AlgebraElement degree_constant_diagonal(const Cocycle& c, const QuadratureSpec& quad) {
  const std::vector<BasePoint> pts = quadrature_points(quad);
  const AlgebraElement zero = AlgebraElement::zero(c.tag);
  const AlgebraElement sum = parallel_sum(pts.size(), 256, zero, [&](std::size_t b, std::size_t e) {
    AlgebraElement s = zero;
    for (std::size_t i = b; i < e; ++i) s += c.m_field(pts[i]);
    return s;
  });
  return sum * (1.0 / static_cast<double>(pts.size()));
}

AlgebraElement degree_constant_ergodic(const Cocycle& c, const QuadratureSpec& quad) {
  return p_ad(c.tag, degree_constant_diagonal(c, quad));
}

std::vector<double> degree_eigenvalues(const Representation& rep, const AlgebraElement& z) {
  const Eigen::MatrixXcd h = cplx(0.0, 1.0) * rep_differential(rep, z).m;
  const Eigen::MatrixXcd herm = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double a_phi_pi(const Representation& rep, const std::vector<AlgebraElement>& values) {
  double best = std::numeric_limits<double>::infinity();
  for (const AlgebraElement& v : values)
    for (double ev : degree_eigenvalues(rep, v)) best = std::min(best, ev * ev);
  return values.empty() ? 0.0 : best;
}

double a_phi_pi(const Representation& rep, const AlgebraElement& constant) {
  return a_phi_pi(rep, std::vector<AlgebraElement>{constant});
}

InvarianceReport invariance_check_cohomology(const Cocycle& phi, const Cocycle& delta,
                                             const TransferFunction& zeta,
                                             const TranslationFlow& flow, long n,
                                             const std::vector<BasePoint>& points) {
  require_same(phi.tag, delta.tag, "invariance_check_cohomology");
  require_same(phi.tag, zeta.tag, "invariance_check_cohomology");
  InvarianceReport r;
  r.points = points.size();
  std::vector<InvarianceReport> per(points.size());
  parallel_chunks(points.size(), 1, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const PointwiseDegree dd = degree_pointwise(delta, flow, points[i], n);
      const PointwiseDegree dp = degree_pointwise(phi, flow, points[i], n);
      const AlgebraElement moved = ad(zeta.value(points[i]), dp.value);
      per[i].max_deviation = (dd.value - moved).norm();
      per[i].max_norm_gap = std::abs(dd.value.norm() - dp.value.norm());
      per[i].max_diagnostic = std::max(dd.diagnostic, dp.diagnostic);
    }
  });
  for (const auto& p : per) {
    r.max_deviation = std::max(r.max_deviation, p.max_deviation);
    r.max_norm_gap = std::max(r.max_norm_gap, p.max_norm_gap);
    r.max_diagnostic = std::max(r.max_diagnostic, p.max_diagnostic);
  }
  return r;
}

InvarianceReport invariance_check_homomorphism(const Homomorphism& h,
                                               const std::vector<Cocycle>& factors,
                                               const TranslationFlow& flow, long n,
                                               const std::vector<BasePoint>& points) {
  const Cocycle image = apply_homomorphism(h, factors);
  InvarianceReport r;
  r.points = points.size();
  for (const BasePoint& x : points) {
    const PointwiseDegree di = degree_pointwise(image, flow, x, n);
    std::vector<AlgebraElement> fz;
    double diag = di.diagnostic;
    for (const Cocycle& f : factors) {
      const PointwiseDegree d = degree_pointwise(f, flow, x, n);
      fz.push_back(d.value);
      diag = std::max(diag, d.diagnostic);
    }
    const AlgebraElement pushed = hom_differential(h, fz);
    r.max_deviation = std::max(r.max_deviation, (di.value - pushed).norm());
    r.max_norm_gap = std::max(r.max_norm_gap, std::abs(di.value.norm() - pushed.norm()));
    r.max_diagnostic = std::max(r.max_diagnostic, diag);
  }
  return r;
}

RhoReport rho_phi(const DegreeField& field) {
  RhoReport r;
  if (field.values.empty()) return r;
  if (field.values.front().tag().kind != GroupKind::SU2)
    throw TagMismatchError("rho_phi needs an SU2 degree field");
  for (const AlgebraElement& v : field.values) r.rho += v.norm();
  r.rho /= static_cast<double>(field.values.size());
  for (const AlgebraElement& v : field.values)
    r.max_deviation = std::max(r.max_deviation, std::abs(v.norm() - r.rho));
  return r;
}

GroupElement su2_transfer_zeta(const AlgebraElement& d, double rho) {
  require_same(d.tag(), GroupTag::su2(), "su2_transfer_zeta");
  if (!(rho > 0.0)) throw DegenerateDegreeError("su2_transfer_zeta: rho must be positive");
  if (std::abs(d.norm() - rho) > kZetaNormTol)
    throw InconsistentDegreeError("su2_transfer_zeta: |D| differs from rho");
  const double a = d.m2()(0, 0).imag();
  const cplx w = d.m2()(0, 1);  // b + i c
  if (std::abs(a - rho) <= kZetaBranchTol) return GroupElement::identity(GroupTag::su2());
  if (std::abs(a + rho) <= kZetaBranchTol) return GroupElement::su2(0.0, -1.0);
  const double aw = std::abs(w);
  if (aw == 0.0) throw InconsistentDegreeError("su2_transfer_zeta: b + ic vanishes off the poles");
  const double up = std::sqrt(std::max(0.0, (rho + a) / (2.0 * rho)));
  const double dn = std::sqrt(std::max(0.0, (rho - a) / (2.0 * rho)));
  const cplx z1 = cplx(0.0, up) * std::conj(w) / aw;
  const double nrm = std::sqrt(up * up + dn * dn);
  return GroupElement::su2(z1 / nrm, dn / nrm);
}

StraightenReport su2_straighten(const Cocycle& phi, const TranslationFlow& flow, long n,
                                const std::vector<BasePoint>& grid, double rho_min) {
  require_same(phi.tag, GroupTag::su2(), "su2_straighten");
  StraightenReport r;
  r.points = grid;
  r.n_used = n;
  const std::size_t m = grid.size();
  std::vector<AlgebraElement> d0(m), d1(m);
  parallel_chunks(m, 1, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      d0[i] = degree_pointwise(phi, flow, grid[i], n).value;
      d1[i] = degree_pointwise(phi, flow, flow_advance(flow, grid[i], 1.0), n).value;
    }
  });
  for (const AlgebraElement& v : d0) r.rho += v.norm();
  r.rho /= static_cast<double>(std::max<std::size_t>(m, 1));
  if (!(r.rho > rho_min))
    throw DegenerateDegreeError("su2_straighten: rho estimate below threshold");
  r.delta.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const GroupElement z0 = su2_transfer_zeta(d0[i], d0[i].norm());
    const GroupElement z1 = su2_transfer_zeta(d1[i], d1[i].norm());
    r.delta[i] = group_mul(group_mul(z0, phi.value(grid[i])), group_inv(z1));
    r.max_offdiag = std::max(r.max_offdiag, std::abs(r.delta[i].z2()));
  }
  if (!grid.empty() && grid.front().dim() == 1 && m >= 3) {
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const cplx a = r.delta[i].z1();
      const cplx b = r.delta[(i + 1) % m].z1();
      total += std::arg(b / a);
    }
    r.winding = total / (2.0 * std::numbers::pi);
    r.winding_available = true;
  }
  r.note = "delta sampled on the grid; no closed form is produced";
  return r;
}

std::string ErgodicityVerdict::verdict() const {
  switch (obstruction) {
    case Obstruction::NotUniquelyErgodicA:
      return "NOT_UNIQUELY_ERGODIC(a)";
    case Obstruction::NotUniquelyErgodicB:
      return "NOT_UNIQUELY_ERGODIC(b)";
    case Obstruction::NoObstruction:
      break;
  }
  return "NO_OBSTRUCTION";
}

std::string ErgodicityVerdict::upgrade() const { return not_ergodic ? "NOT_ERGODIC(c)" : ""; }

ErgodicityVerdict ergodicity_verdict(const GroupTag& tag, const AlgebraElement& integral_m,
                                     bool degree_nonzero, bool flow_uniquely_ergodic) {
  ErgodicityVerdict v;
  if (!degree_nonzero) {
    v.justification = "degree vanishes; no obstruction applies";
    return v;
  }
  if (tag.kind == GroupKind::SU2 || tag.kind == GroupKind::SO3) {
    v.obstruction = Obstruction::NotUniquelyErgodicB;
    v.justification = "connected group with trivial centre and nonzero degree";
  } else if (p_ad(tag, integral_m).norm() <= 1e-9) {
    v.obstruction = Obstruction::NotUniquelyErgodicA;
    v.justification = "nonzero degree and the mean derivative has no Ad-invariant part";
  } else {
    v.justification = "mean derivative has an Ad-invariant part; nothing to conclude";
    return v;
  }
  if (flow_uniquely_ergodic) {
    v.not_ergodic = true;
    v.justification += "; base flow flagged uniquely ergodic, so T is not ergodic";
  }
  return v;
}

}  // namespace liedeg
