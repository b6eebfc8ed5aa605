#include "liedeg/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "liedeg/cocycles.hpp"
#include "liedeg/degree.hpp"
#include "liedeg/errors.hpp"
#include "liedeg/scenario.hpp"
#include "liedeg/spectral.hpp"

namespace liedeg {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double golden() { return (std::sqrt(5.0) - 1.0) / 2.0; }

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
      m(i, j) = tag.kind == GroupKind::SO3 ? cplx(rng.normal(), 0.0)
                                           : cplx(rng.normal(), rng.normal());
  return AlgebraElement::project(tag, m);
}

// 1
Outcome representation_validity(bool quick) {
  const int pairs = quick ? 50 : 200;
  std::vector<Representation> reps;
  for (int l = 0; l <= 6; ++l) reps.push_back(Representation::su2(l));
  for (int l = 0; l <= 4; ++l) reps.push_back(Representation::so3(l));
  for (int l = 0; l <= 4; ++l)
    for (int m = -2; m <= 2; ++m) reps.push_back(Representation::u2(l, m));
  Rng rng({2024, 1});
  double hom = 0.0, uni = 0.0;
  for (const Representation& rep : reps) {
    for (int i = 0; i < pairs; ++i) {
      const GroupElement g = haar_sample(rep.tag, rng);
      const GroupElement h = haar_sample(rep.tag, rng);
      const Eigen::MatrixXcd pg = rep_eval(rep, g).m, ph = rep_eval(rep, h).m;
      const Eigen::MatrixXcd pgh = rep_eval(rep, group_mul(g, h)).m;
      hom = std::max(hom, (pgh - pg * ph).cwiseAbs().maxCoeff());
      const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(pg.rows(), pg.cols());
      uni = std::max(uni, (pg * pg.adjoint() - eye).cwiseAbs().maxCoeff());
    }
  }
  return {hom <= 1e-10 && uni <= 1e-10,
          "homomorphism " + fmt("%.2e", hom) + ", unitarity " + fmt("%.2e", uni)};
}

// 2
Outcome peter_weyl(bool quick) {
  double worst = 0.0;
  for (int l = 0; l <= 4; ++l)
    worst = std::max(worst,
                     peter_weyl_check(Representation::su2(l), EulerQuadrature{quick ? 16 : 64})
                         .max_deviation);
  return {worst <= 1e-8, "max deviation " + fmt("%.2e", worst)};
}

// 3
Outcome paper_diagonals() {
  Rng rng({2024, 3});
  double su2 = 0.0, so3 = 0.0;
  for (int s = 0; s < 100; ++s) {
    const double th = 2.0 * std::numbers::pi * rng.uniform();
    const cplx z1 = std::polar(1.0, th);
    const GroupElement g = GroupElement::su2(z1, 0.0);
    for (int l = 0; l <= 6; ++l) {
      const Representation rep = Representation::su2(l);
      for (int j = 0; j <= l; ++j)
        for (int k = 0; k <= l; ++k) {
          const cplx expect =
              j == k ? factorial(j) * factorial(l - j) * std::pow(z1, 2 * j - l) : cplx(0.0);
          su2 = std::max(su2, std::abs(paper_element(rep, j, k, g) - expect));
        }
    }
    const GroupElement r = GroupElement::so3(euler_matrix(th, 0.0, 0.0));
    for (int l = 0; l <= 4; ++l) {
      const Representation rep = Representation::so3(l);
      for (int j = -l; j <= l; ++j)
        for (int k = -l; k <= l; ++k) {
          const cplx expect = j == k ? std::polar(1.0, j * th) : cplx(0.0);
          so3 = std::max(so3, std::abs(paper_element(rep, j + l, k + l, r) - expect));
        }
    }
  }
  return {su2 <= 1e-11 && so3 <= 1e-11,
          "SU2 " + fmt("%.2e", su2) + ", SO3 " + fmt("%.2e", so3)};
}

// 4
Outcome anzai_degree() {
  const TranslationFlow flow = TranslationFlow::default_for(1);
  const std::vector<BasePoint> pts = random_points(1, 20, {2024, 4});
  double pointwise = 0.0, constant = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const Cocycle c = torus_monomial({{k}}, flow);
    const double expect = 2.0 * std::numbers::pi * golden() * k;
    const DegreeField f = degree_field(c, flow, pts, kDefaultDegreeN);
    for (const auto& v : f.values) pointwise = std::max(pointwise, std::abs(v.torus_theta(0) - expect));
    const AlgebraElement q = degree_constant_diagonal(c, QuadratureSpec::uniform(1, 64));
    constant = std::max(constant, std::abs(q.torus_theta(0) - expect));
  }
  return {pointwise <= 1e-3 && constant <= 1e-12,
          "pointwise " + fmt("%.2e", pointwise) + ", quadrature " + fmt("%.2e", constant)};
}

// 5
Outcome eigenvalue_patterns() {
  const double rho = 0.8314;
  const AlgebraElement dsu2 = AlgebraElement::su2_diag(rho);
  double ortho = 0.0, paper = 0.0;
  bool kernels = true;
  for (int l = 0; l <= 6; ++l) {
    const Representation rep = Representation::su2(l);
    std::vector<double> expect;
    for (int j = 0; j <= l; ++j) expect.push_back(rho * (l - 2 * j));
    std::sort(expect.begin(), expect.end());
    const std::vector<double> got = degree_eigenvalues(rep, dsu2);
    for (std::size_t i = 0; i < expect.size(); ++i) ortho = std::max(ortho, std::abs(got[i] - expect[i]));
    const Eigen::MatrixXcd pm =
        cplx(0.0, 1.0) * rep_differential(rep.in(Convention::Paper), dsu2).m;
    for (int j = 0; j <= l; ++j)
      for (int k = 0; k <= l; ++k) {
        const double e = j == k ? factorial(j) * factorial(l - j) * rho * (l - 2 * j) : 0.0;
        paper = std::max(paper, std::abs(pm(j, k) - e));
      }
    const KernelSplit ks = kernel_split(cplx(0.0, 1.0) * rep_differential(rep, dsu2).m);
    const std::vector<int> want = l % 2 == 0 ? std::vector<int>{l / 2} : std::vector<int>{};
    kernels = kernels && ks.kernel == want;
  }
  const double s = 0.5772;
  Eigen::Matrix2cd cm = cplx(0.0, s) * Eigen::Matrix2cd::Identity();
  const AlgebraElement du2 = AlgebraElement::u2(cm);
  for (int l = 0; l <= 4; ++l)
    for (int m = -2; m <= 2; ++m) {
      const Representation rep = Representation::u2(l, m);
      const double e = -s * (2 * m - l);
      for (double v : degree_eigenvalues(rep, du2)) ortho = std::max(ortho, std::abs(v - e));
      const Eigen::MatrixXcd pm =
          cplx(0.0, 1.0) * rep_differential(rep.in(Convention::Paper), du2).m;
      for (int j = 0; j <= l; ++j)
        for (int k = 0; k <= l; ++k) {
          const double pe = j == k ? e * factorial(j) * factorial(l - j) : 0.0;
          paper = std::max(paper, std::abs(pm(j, k) - pe));
        }
      const KernelSplit ks = kernel_split(cplx(0.0, 1.0) * rep_differential(rep, du2).m);
      std::vector<int> want;
      if (2 * m == l)
        for (int j = 0; j <= l; ++j) want.push_back(j);
      kernels = kernels && ks.kernel == want;
    }
  return {ortho <= 1e-10 && paper <= 1e-10 && kernels,
          "orthonormal " + fmt("%.2e", ortho) + ", monomial " + fmt("%.2e", paper) +
              ", kernel sets " + (kernels ? "match" : "differ")};
}

ManufacturedSu2 manufactured(const TranslationFlow& flow) {
  return su2_manufactured({1}, {1}, 0.7, flow);
}

// 6
Outcome cohomology_invariance() {
  const TranslationFlow flow = TranslationFlow::default_for(1);
  const ManufacturedSu2 m = manufactured(flow);
  const InvarianceReport r = invariance_check_cohomology(
      m.phi, m.delta, m.zeta, flow, kDefaultDegreeN, random_points(1, 20, {2024, 6}));
  return {r.max_deviation <= 5e-3 && r.max_norm_gap <= 5e-3,
          "degree deviation " + fmt("%.2e", r.max_deviation) + ", norm gap " +
              fmt("%.2e", r.max_norm_gap)};
}

// 7
Outcome straightening() {
  const TranslationFlow flow = TranslationFlow::default_for(1);
  const ManufacturedSu2 m = manufactured(flow);
  const std::vector<BasePoint> grid = quadrature_points(QuadratureSpec::uniform(1, 16));
  const StraightenReport a = su2_straighten(m.phi, flow, kDefaultDegreeN, grid);
  const StraightenReport b = su2_straighten(m.phi, flow, 4 * kDefaultDegreeN, grid);
  const double rho = 0.9;
  const Eigen::Matrix2cd up = su2_transfer_zeta(AlgebraElement::su2_diag(rho), rho).su2_matrix();
  const Eigen::Matrix2cd dn = su2_transfer_zeta(AlgebraElement::su2_diag(-rho), rho).su2_matrix();
  Eigen::Matrix2cd rot;
  rot << 0.0, -1.0, 1.0, 0.0;
  const bool branches = up == Eigen::Matrix2cd::Identity() && dn == rot;
  return {a.max_offdiag <= 1e-2 && b.max_offdiag < a.max_offdiag && branches,
          "off-diagonal " + fmt("%.2e", a.max_offdiag) + " at N=1e4, " +
              fmt("%.2e", b.max_offdiag) + " at N=4e4, branch cases " +
              (branches ? "exact" : "wrong")};
}

// 8
Outcome p_ad_checks(bool quick) {
  const std::size_t samples = 10000;
  Rng rng({2024, 8});
  bool ok = true;
  double worst_ratio = 0.0, semisimple = 0.0;
  for (const GroupTag& tag : {GroupTag::torus(2), GroupTag::su2(), GroupTag::so3(), GroupTag::u2()}) {
    const int reps = quick ? 1 : 3;
    for (int r = 0; r < reps; ++r) {
      const AlgebraElement z = random_algebra(tag, rng);
      const AlgebraElement closed = p_ad(tag, z);
      const AlgebraElement mc = p_ad_monte_carlo(tag, z, samples, rng);
      const double tol = 5.0 * z.norm() / std::sqrt(static_cast<double>(samples));
      const double gap = (closed - mc).norm();
      worst_ratio = std::max(worst_ratio, gap / tol);
      ok = ok && gap <= tol;
      if (tag.kind == GroupKind::SU2 || tag.kind == GroupKind::SO3)
        semisimple = std::max(semisimple, closed.norm());
    }
  }
  ok = ok && semisimple == 0.0;
  return {ok, "worst |closed - MC| / tolerance " + fmt("%.3f", worst_ratio) +
                  ", SU2/SO3 closed form norm " + fmt("%.1e", semisimple)};
}

// 9
Outcome mixing_observable() {
  const TranslationFlow flow = TranslationFlow::default_for(1);
  const Cocycle c = torus_monomial({{1}}, flow);
  auto x1 = [](const BasePoint& x) { return monomial({1}, x); };
  const FiberVector p1 = FiberVector::single(Representation::torus({1}), 0, 0, x1, {1});
  const FiberVector p0 = FiberVector::single(Representation::torus({0}), 0, 0, x1, {1});
  const CorrelationSeries s1 = correlation_series(p1, p1, c, flow, 50);
  const CorrelationSeries s0 = correlation_series(p0, p0, c, flow, 50);
  double worst = 0.0;
  for (std::size_t n = 1; n < s1.values.size(); ++n) worst = std::max(worst, std::abs(s1.values[n]));
  const std::vector<double> a0 = wiener_average(s0);
  double amin = 1.0;
  for (std::size_t n = 1; n < a0.size(); ++n) amin = std::min(amin, a0[n]);
  return {worst <= 1e-10 && amin >= 0.99,
          "q=1 max |c_N| " + fmt("%.2e", worst) + ", q=0 min A_N " + fmt("%.6f", amin)};
}

// 10
Outcome intertwining() {
  const TranslationFlow flow = TranslationFlow::default_for(1);
  const ManufacturedSu2 m = manufactured(flow);
  const TransferFunction zinv = inverse_transfer(m.zeta);
  double worst = 0.0;
  for (int l : {1, 2}) {
    const Representation rep = Representation::su2(l);
    for (int k = 0; k <= l; ++k) {
      const FiberVector psi = FiberVector::single(
          rep, 0, k, [](const BasePoint& x) { return cplx(1.0) + 0.5 * monomial({1}, x); }, {1});
      const FiberVector moved = conjugate_vector(psi, zinv);
      const CorrelationSeries a = correlation_series(psi, psi, m.delta, flow, 20);
      const CorrelationSeries b = correlation_series(moved, moved, m.phi, flow, 20);
      for (std::size_t n = 0; n < a.values.size(); ++n)
        worst = std::max(worst, std::abs(a.values[n] - b.values[n]));
    }
  }
  return {worst <= 1e-8, "max two-route gap " + fmt("%.2e", worst)};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("liedeg_acceptance_" + name);
  fs::remove_all(p);
  return p;
}

RunReport run_scenario(const std::string& name, const fs::path& out, Json overrides) {
  overrides["out"] = out.string();
  return scenario_run(make_config(name, overrides));
}

// 11
Outcome verdict_pipeline() {
  std::string why;
  bool ok = true;
  {
    const RunReport r = run_scenario("anzai-torus", scratch("anzai"), Json::object());
    for (std::size_t i = 0; i < r.ac.size(); ++i) {
      const bool q0 = r.ac[i].rep_label == "q=(0)";
      const bool predicted = r.ac[i].verdict == "AC-PREDICTED";
      if (predicted == q0) {
        ok = false;
        why += " anzai " + r.ac[i].rep_label + " gave " + r.ac[i].verdict + ";";
      }
    }
  }
  {
    const RunReport r = run_scenario("su2-straighten", scratch("su2"), Json::object());
    const double rho = r.degree.diagnostics.value("rho", 0.0);
    const std::string v = r.degree.verdict.verdict();
    if (rho > 1e-3 && v != "NOT_UNIQUELY_ERGODIC(b)") {
      ok = false;
      why += " su2 verdict " + v + ";";
    }
    why += " su2 rho " + fmt("%.4f", rho) + " -> " + v + ";";
  }
  {
    const RunReport r = run_scenario("u2-product", scratch("u2"), Json::object());
    for (std::size_t i = 0; i < r.degree.per_rep.size(); ++i) {
      const Json rep = r.config.reps.at(i);
      const int l = rep.at("l"), m = rep.at("m");
      std::vector<int> want;
      if (2 * m == l)
        for (int j = 0; j <= l; ++j) want.push_back(j);
      if (r.degree.per_rep[i].kernel != want || r.mixing[i].kernel_indices != want) {
        ok = false;
        why += " u2 " + r.degree.per_rep[i].label + " kernel split wrong;";
      }
    }
    why += " u2 kernel split checked on " + std::to_string(r.degree.per_rep.size()) + " reps";
  }
  return {ok, why};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

// 12
Outcome determinism(bool quick) {
  Json small = Json::object();
  if (quick) {
    small["N_degree"] = 2000;
    small["degree_points"] = 4;
  }
  bool ok = true;
  std::string why;
  std::size_t files = 0;
  for (const std::string& name : scenario_names()) {
    Json o = small;
    if (name == "custom") {
      o["cocycle"] = {{"builtin", "su2-diagonal"}, {"k", {2}}};
      o["reps"] = Json::array({Json{{"l", 1}}, Json{{"l", 2}}});
    }
    const fs::path a = scratch(name + "_a"), b = scratch(name + "_b");
    const RunReport ra = run_scenario(name, a, o);
    run_scenario(name, b, o);
    std::vector<std::string> names = ra.series_files;
    names.push_back("report.json");
    for (const std::string& f : names) {
      ++files;
      const std::string x = slurp(a / f), y = slurp(b / f);
      if (x.empty() || x != y) {
        ok = false;
        why += " " + name + "/" + f + " differs;";
      }
    }
  }
  return {ok, std::to_string(files) + " files compared across " +
                  std::to_string(scenario_names().size()) + " scenarios" + why};
}

}  // namespace

bool run_acceptance_suite(std::ostream& out, bool quick) {
  struct Criterion {
    int id;
    const char* name;
    double budget;  // seconds, 0 for none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "representation validity", 10.0, [&] { return representation_validity(quick); }},
      {2, "Peter-Weyl orthogonality", 60.0, [&] { return peter_weyl(quick); }},
      {3, "diagonal matrix elements", 0.0, [] { return paper_diagonals(); }},
      {4, "Anzai degree closed form", 0.0, [] { return anzai_degree(); }},
      {5, "degree eigenvalue patterns", 0.0, [] { return eigenvalue_patterns(); }},
      {6, "cohomology invariance", 120.0, [] { return cohomology_invariance(); }},
      {7, "SU2 straightening", 0.0, [] { return straightening(); }},
      {8, "Ad-average closed forms", 0.0, [&] { return p_ad_checks(quick); }},
      {9, "mixing observable", 60.0, [] { return mixing_observable(); }},
      {10, "intertwining two routes", 0.0, [] { return intertwining(); }},
      {11, "verdict pipeline", 0.0, [] { return verdict_pipeline(); }},
      {12, "determinism", 0.0, [&] { return determinism(quick); }},
  };
  bool all = true;
  for (const Criterion& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.budget > 0.0 && secs > c.budget) {
      o.pass = false;
      o.detail += "; over the " + fmt("%.0f", c.budget) + " s budget";
    }
    all = all && o.pass;
    char head[96];
    std::snprintf(head, sizeof head, "%s %2d %s: ", o.pass ? "PASS" : "FAIL", c.id, c.name);
    out << head << o.detail << " (" << fmt("%.1f", secs) << " s)" << (quick ? " [quick]" : "")
        << std::endl;
  }
  return all;
}

}  // namespace liedeg
