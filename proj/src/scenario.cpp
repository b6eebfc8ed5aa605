#include "liedeg/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "liedeg/errors.hpp"
#include "liedeg/parallel.hpp"

namespace liedeg {

namespace fs = std::filesystem;

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"anzai-torus",       "torus-general",
                                                 "su2-straighten",    "so3-maximal-torus",
                                                 "u2-product",        "custom"};
  return names;
}

TranslationFlow ScenarioConfig::flow() const {
  if (alpha.empty()) return TranslationFlow::default_for(d);
  return TranslationFlow{alpha};
}

Json ScenarioConfig::to_json() const {
  Json j;
  j["scenario"] = scenario;
  j["d"] = d;
  j["alpha"] = flow().alpha;
  j["cocycle"] = cocycle;
  j["reps"] = reps;
  j["N_degree"] = n_degree;
  j["N_corr"] = n_corr;
  j["quadrature_nodes"] = quadrature_nodes;
  j["degree_points"] = degree_points;
  j["seed"] = seed;
  j["flow_uniquely_ergodic"] = flow_uniquely_ergodic;
  return j;
}

namespace {

Json q_reps(std::initializer_list<std::vector<int>> qs) {
  Json a = Json::array();
  for (const auto& q : qs) a.push_back(Json{{"q", q}});
  return a;
}

Json l_reps(int lo, int hi) {
  Json a = Json::array();
  for (int l = lo; l <= hi; ++l) a.push_back(Json{{"l", l}});
  return a;
}

template <class T>
T get_field(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(where + ": bad field '" + key + "': " + e.what());
  }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback, const std::string& where) {
  return j.contains(key) ? get_field<T>(j, key, where) : fallback;
}

}  // namespace

ScenarioConfig make_config(const std::string& scenario, const Json& overrides) {
  ScenarioConfig c;
  c.scenario = scenario;
  if (scenario == "anzai-torus") {
    c.d = 1;
    c.cocycle = {{"builtin", "torus-monomial"}, {"k", {{1}}}};
    c.reps = q_reps({{-3}, {-2}, {-1}, {0}, {1}, {2}, {3}});
  } else if (scenario == "torus-general") {
    c.d = 2;
    c.cocycle = {{"builtin", "torus-monomial"}, {"k", {{1, 0}, {1, 1}}}};
    c.reps = q_reps({{1, 0}, {0, 1}, {1, -1}, {0, 0}});
    c.n_corr = 20;
    c.quadrature_nodes = 32;
  } else if (scenario == "su2-straighten") {
    c.d = 1;
    c.cocycle = {{"builtin", "su2-manufactured"}, {"k", {1}}, {"p", {1}}, {"theta", 0.7}};
    c.reps = l_reps(1, 4);
  } else if (scenario == "so3-maximal-torus") {
    c.d = 1;
    c.cocycle = {{"builtin", "so3-x3-rotation"}, {"k", {1}}, {"angle0", 0.0}};
    c.reps = l_reps(0, 3);
  } else if (scenario == "u2-product") {
    c.d = 2;
    c.cocycle = {{"builtin", "u2-so3-torus"}, {"r", {0, 0}}, {"n", {1, 0}}, {"angle0", 1.0}};
    c.reps = Json::array();
    for (auto [l, m] : {std::pair{1, 1}, {1, 0}, {2, 1}, {2, 0}, {2, 2}})
      c.reps.push_back(Json{{"l", l}, {"m", m}});
    c.n_corr = 20;
    c.quadrature_nodes = 32;
  } else if (scenario == "custom") {
    c.d = 1;
  } else {
    throw ConfigError("unknown scenario '" + scenario + "'");
  }

  if (!overrides.is_object()) throw ConfigError("config must be a JSON object");
  const std::string where = "config";
  for (const auto& [key, val] : overrides.items()) {
    if (key == "scenario") {
      if (val != scenario) throw ConfigError("config names scenario " + val.dump());
    } else if (key == "d") {
      c.d = get_field<int>(overrides, "d", where);
    } else if (key == "alpha") {
      c.alpha = get_field<std::vector<double>>(overrides, "alpha", where);
    } else if (key == "cocycle") {
      c.cocycle = val;
    } else if (key == "reps") {
      c.reps = val;
    } else if (key == "N_degree") {
      c.n_degree = get_field<long>(overrides, "N_degree", where);
    } else if (key == "N_corr") {
      c.n_corr = get_field<long>(overrides, "N_corr", where);
    } else if (key == "quadrature_nodes") {
      c.quadrature_nodes = get_field<int>(overrides, "quadrature_nodes", where);
    } else if (key == "degree_points") {
      c.degree_points = get_field<int>(overrides, "degree_points", where);
    } else if (key == "seed") {
      c.seed = get_field<std::uint64_t>(overrides, "seed", where);
    } else if (key == "out") {
      c.out = get_field<std::string>(overrides, "out", where);
    } else if (key == "flow_uniquely_ergodic") {
      c.flow_uniquely_ergodic = get_field<bool>(overrides, "flow_uniquely_ergodic", where);
    } else {
      throw ConfigError("unknown config field '" + key + "'");
    }
  }
  return c;
}

void validate_config(const ScenarioConfig& c) {
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), c.scenario) == names.end())
    throw ConfigError("unknown scenario '" + c.scenario + "'");
  if (c.d < 1 || c.d > kMaxTorusDim) throw ConfigError("d must be in 1..8");
  if (!c.alpha.empty() && static_cast<int>(c.alpha.size()) != c.d)
    throw ConfigError("alpha must have d entries");
  for (double a : c.alpha)
    if (!std::isfinite(a)) throw ConfigError("alpha entries must be finite");
  if (c.n_degree < 2) throw ConfigError("N_degree must be >= 2");
  if (c.n_corr < 2) throw ConfigError("N_corr must be >= 2");
  if (c.quadrature_nodes < 2) throw ConfigError("quadrature_nodes must be >= 2");
  if (c.degree_points < 1) throw ConfigError("degree_points must be >= 1");
  if (!c.cocycle.is_object() || !c.cocycle.contains("builtin"))
    throw ConfigError("cocycle must be an object with a 'builtin' name");
  if (!c.reps.is_array() || c.reps.empty()) throw ConfigError("reps must be a non-empty array");
  if (c.out.empty()) throw ConfigError("output directory must be set");
}

BuiltCocycle build_cocycle(const Json& spec, const TranslationFlow& flow) {
  const std::string name = get_field<std::string>(spec, "builtin", "cocycle");
  const std::string where = "cocycle " + name;
  const int d = flow.dim();
  const std::vector<int> zeros(static_cast<std::size_t>(d), 0);
  BuiltCocycle b;
  if (name == "torus-monomial") {
    b.cocycle = torus_monomial(get_field<std::vector<std::vector<int>>>(spec, "k", where), flow);
  } else if (name == "su2-diagonal") {
    b.cocycle = su2_diagonal(get_field<std::vector<int>>(spec, "k", where), flow);
  } else if (name == "su2-manufactured") {
    ManufacturedSu2 m = su2_manufactured(get_field<std::vector<int>>(spec, "k", where),
                                         get_field<std::vector<int>>(spec, "p", where),
                                         get_or<double>(spec, "theta", 0.0, where), flow);
    b.cocycle = m.phi;
    b.manufactured = std::move(m);
  } else if (name == "so3-x3-rotation") {
    b.cocycle = so3_x3_rotation(get_field<std::vector<int>>(spec, "k", where),
                                get_or<double>(spec, "angle0", 0.0, where), flow);
  } else if (name == "u2-product") {
    if (!spec.contains("su2")) throw ConfigError(where + ": missing field 'su2'");
    const BuiltCocycle inner = build_cocycle(spec.at("su2"), flow);
    if (inner.cocycle.tag != GroupTag::su2()) throw ConfigError(where + ": 'su2' must be SU2");
    b.cocycle = u2_product(get_field<std::vector<int>>(spec, "s", where), inner.cocycle, flow);
  } else if (name == "u2-so3-torus") {
    const auto r = get_or<std::vector<int>>(spec, "r", zeros, where);
    const auto n = get_field<std::vector<int>>(spec, "n", where);
    const double angle0 = get_or<double>(spec, "angle0", 0.0, where);
    b.cocycle = u2_so3_torus(r, angle0, n, flow);
    b.factors = {so3_x3_rotation(r, angle0, flow), torus_monomial({n}, flow)};
    b.hom = Homomorphism{HomKind::So3TorusToU2, 1};
  } else if (name == "constant") {
    const std::string group = get_field<std::string>(spec, "group", where);
    if (group == "SU2") {
      const auto z = get_field<std::vector<double>>(spec, "value", where);
      if (z.size() != 4) throw ConfigError(where + ": SU2 value is [re z1, im z1, re z2, im z2]");
      const double nrm = std::hypot(std::hypot(z[0], z[1]), std::hypot(z[2], z[3]));
      if (!(nrm > 0.0)) throw ConfigError(where + ": zero quaternion");
      b.cocycle = constant_cocycle(
          GroupElement::su2(cplx(z[0], z[1]) / nrm, cplx(z[2], z[3]) / nrm), d);
    } else if (group == "TORUS") {
      b.cocycle = constant_cocycle(
          GroupElement::torus_from_turns(get_field<std::vector<double>>(spec, "value", where)), d);
    } else {
      throw ConfigError(where + ": group must be SU2 or TORUS");
    }
  } else {
    throw ConfigError("unknown cocycle builtin '" + name + "'");
  }
  return b;
}

std::vector<Representation> parse_reps(const Json& reps, const GroupTag& tag) {
  if (!reps.is_array()) throw ConfigError("reps must be an array");
  std::vector<Representation> out;
  for (const Json& r : reps) {
    if (!r.is_object()) throw ConfigError("each rep must be an object");
    switch (tag.kind) {
      case GroupKind::Torus: {
        const auto q = get_field<std::vector<int>>(r, "q", "rep");
        if (static_cast<int>(q.size()) != tag.torus_dim)
          throw ConfigError("torus rep needs " + std::to_string(tag.torus_dim) + " exponents");
        out.push_back(Representation::torus(q));
        break;
      }
      case GroupKind::SU2:
        out.push_back(Representation::su2(get_field<int>(r, "l", "rep")));
        break;
      case GroupKind::SO3:
        out.push_back(Representation::so3(get_field<int>(r, "l", "rep")));
        break;
      case GroupKind::U2:
        out.push_back(
            Representation::u2(get_field<int>(r, "l", "rep"), get_field<int>(r, "m", "rep")));
        break;
    }
  }
  return out;
}

// ------------------------------------------------------------------ JSON

Json algebra_json(const AlgebraElement& z) {
  const Eigen::MatrixXcd m = z.matrix();
  Json a = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back({m(r, c).real(), m(r, c).imag()});
  return a;
}

Json to_json(const DegreeReport& r) {
  Json j;
  j["group"] = r.group.name();
  j["M_star"] = r.m_star ? algebra_json(*r.m_star) : Json(nullptr);
  j["provenance"] = r.provenance;
  Json per = Json::array();
  for (const RepDegree& p : r.per_rep)
    per.push_back({{"label", p.label},
                   {"eigenvalues", p.eigenvalues},
                   {"paper_diagonal", p.eigenvalues_paper},
                   {"a_phi_pi", p.a_phi_pi},
                   {"kernel_indices", p.kernel}});
  j["per_rep"] = per;
  j["verdict"] = r.verdict.verdict();
  j["upgrade"] = r.verdict.upgrade();
  j["justification"] = r.verdict.justification;
  j["N_used"] = r.n_used;
  j["diagnostics"] = r.diagnostics;
  return j;
}

Json to_json(const SpectralVerdict& v) {
  Json j;
  j["rep_label"] = v.rep_label;
  j["j"] = v.j;
  j["kernel_indices"] = v.kernel_indices;
  Json hyp = Json::array();
  for (const Hypothesis& h : v.hypotheses)
    hyp.push_back({{"name", h.name}, {"status", h.status}, {"value", h.value}});
  j["hypotheses"] = hyp;
  j["verdict"] = v.verdict;
  j["notes"] = v.notes;
  j["c0"] = v.c0;
  j["tail_max"] = v.tail_max;
  j["wiener_final"] = v.wiener.empty() ? 0.0 : v.wiener.back();
  return j;
}

Json to_json(const RunReport& r) {
  Json j;
  j["liedeg_version"] = kLiedegVersion;
  j["config"] = r.config.to_json();
  j["degree_report"] = to_json(r.degree);
  Json mix = Json::array(), ac = Json::array();
  for (const auto& v : r.mixing) mix.push_back(to_json(v));
  for (const auto& v : r.ac) ac.push_back(to_json(v));
  j["mixing"] = mix;
  j["ac"] = ac;
  j["series_files"] = r.series_files;
  j["caveats"] = r.caveats;
  j["extra"] = r.extra;
  j["timings_file"] = "timings.json";
  return j;
}

// ------------------------------------------------------------------ run

namespace {

std::string slug(const std::string& s) {
  std::string o;
  for (char ch : s) {
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-') {
      o += ch;
    } else if (!o.empty() && o.back() != '_') {
      o += '_';
    }
  }
  while (!o.empty() && o.back() == '_') o.pop_back();
  return o;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw IoError("cannot write " + p.string());
  f << text;
  f.close();
  if (!f) throw IoError("write failed for " + p.string());
}

std::vector<BasePoint> check_grid_for(int d) {
  return quadrature_points(QuadratureSpec::uniform(d, d == 1 ? 32 : (d == 2 ? 16 : 6)));
}

Json report_json(const InvarianceReport& r) {
  return {{"max_deviation", r.max_deviation},
          {"max_norm_gap", r.max_norm_gap},
          {"max_diagnostic", r.max_diagnostic},
          {"points", r.points}};
}

AlgebraElement mean_of(const std::vector<AlgebraElement>& v, const GroupTag& tag) {
  AlgebraElement s = AlgebraElement::zero(tag);
  for (const auto& x : v) s += x;
  return v.empty() ? s : s * (1.0 / static_cast<double>(v.size()));
}

constexpr double kMFieldTol = 1e-4;
constexpr double kDegreeNonzero = 1e-3;

}  // namespace

RunReport scenario_run(const ScenarioConfig& cfg) {
  validate_config(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const TranslationFlow flow = cfg.flow();
  const int d = cfg.d;

  const fs::path out(cfg.out);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw IoError("cannot create output directory " + cfg.out);

  RunReport rr;
  rr.config = cfg;

  const BuiltCocycle built = build_cocycle(cfg.cocycle, flow);
  const Cocycle& phi = built.cocycle;
  const std::vector<Representation> reps = parse_reps(cfg.reps, phi.tag);

  const MFieldReport mrep = validate_m_field(phi, flow, random_points(d, 16, {cfg.seed, 1}), 1e-4);
  if (!(mrep.max_deviation <= kMFieldTol))
    throw NumericGuardError("cocycle derivative field disagrees with finite differences (" +
                            std::to_string(mrep.max_deviation) + ")");
  rr.extra["m_field_check"] = {{"max_deviation", mrep.max_deviation}, {"h", mrep.h}};

  const QuadratureSpec quad = QuadratureSpec::uniform(d, cfg.quadrature_nodes);
  const AlgebraElement integral_m = degree_constant_diagonal(phi, quad);
  const std::vector<BasePoint> points =
      random_points(d, static_cast<std::size_t>(cfg.degree_points), {cfg.seed, 2});
  const DegreeField field = degree_field(phi, flow, points, cfg.n_degree);
  const AlgebraElement field_mean = mean_of(field.values, phi.tag);

  DegreeReport& dr = rr.degree;
  dr.group = phi.tag;
  dr.n_used = cfg.n_degree;
  dr.diagnostics["field_spread"] = field.spread;
  dr.diagnostics["field_max_diagnostic"] = field.max_diagnostic;
  dr.diagnostics["field_constant"] = field.constant;
  dr.diagnostics["field_mean"] = algebra_json(field_mean);
  dr.diagnostics["integral_M"] = algebra_json(integral_m);
  dr.diagnostics["quadrature_nodes"] = cfg.quadrature_nodes;

  double mean_norm = 0.0;
  for (const auto& v : field.values) mean_norm += v.norm();
  mean_norm /= static_cast<double>(std::max<std::size_t>(field.values.size(), 1));
  const bool degree_nonzero = mean_norm > kDegreeNonzero;

  // the cocycle whose Koopman blocks are probed, and the data feeding (ii)
  const Cocycle* koop = &phi;
  double uniform_diag = field.max_diagnostic;
  std::optional<Cocycle> straightened;

  const std::string& sc = cfg.scenario;
  const bool abelian_values = phi.tag.kind == GroupKind::Torus || sc == "so3-maximal-torus";

  if (sc == "su2-straighten" && built.manufactured) {
    const ManufacturedSu2& m = *built.manufactured;
    const RhoReport rho = rho_phi(field);
    dr.diagnostics["rho"] = rho.rho;
    dr.diagnostics["rho_max_deviation"] = rho.max_deviation;
    rr.extra["invariance_cohomology"] = report_json(
        invariance_check_cohomology(phi, m.delta, m.zeta, flow, cfg.n_degree, points));
    Json st = Json::array();
    if (rho.rho > kStraightenRhoMin) {
      const std::vector<BasePoint> grid = quadrature_points(QuadratureSpec::uniform(d, 16));
      for (long n : {cfg.n_degree, 4 * cfg.n_degree}) {
        const StraightenReport s = su2_straighten(phi, flow, n, grid);
        Json e = {{"N", n}, {"rho", s.rho}, {"max_offdiag", s.max_offdiag}};
        e["winding"] = s.winding_available ? Json(s.winding) : Json(nullptr);
        st.push_back(e);
      }
    }
    rr.extra["straighten"] = st;
    straightened = m.delta;
    koop = &*straightened;
    const AlgebraElement md = degree_constant_diagonal(m.delta, quad);
    dr.m_star = md;
    dr.provenance = "straightened diagonal cocycle: quadrature mean of its derivative field";
    uniform_diag = degree_field(m.delta, flow, points, cfg.n_degree).max_diagnostic;
    rr.caveats.push_back(
        "spectral checks run on the diagonal cohomologous cocycle; the transfer function is "
        "the manufactured one, the straightening grid is a cross-check");
  } else if (abelian_values) {
    dr.m_star = integral_m;
    dr.provenance = "cocycle values commute: degree equals the mean of M";
  } else if (sc == "u2-product" || (phi.tag.kind == GroupKind::U2 && !field.constant)) {
    dr.m_star = degree_constant_ergodic(phi, quad);
    dr.provenance = "uniquely ergodic skew product assumed: P_Ad of the mean of M";
    const double gap = (field_mean - *dr.m_star).norm();
    dr.diagnostics["cesaro_vs_closed_form"] = gap;
    if (gap > std::max(kConstantSpreadFactor * field.max_diagnostic, 1e-6))
      rr.caveats.push_back(
          "Cesaro degree differs from the P_Ad closed form; the uniquely ergodic assumption "
          "does not hold for this input");
    rr.caveats.push_back(
        "unique ergodicity of the skew product is an input assumption; the SO(3) factor is a "
        "pluggable built-in");
  } else if (field.constant) {
    dr.m_star = field_mean;
    dr.provenance = "Cesaro estimates agree across sample points";
  } else {
    dr.provenance = "degree varies with the base point; per-rep values use the grid minimum";
    rr.caveats.push_back("a_phi_pi is the sample-grid minimum, a low-resolution essinf surrogate");
  }

  if (built.hom && !built.factors.empty()) {
    const std::vector<BasePoint> few(points.begin(),
                                     points.begin() + std::min<std::ptrdiff_t>(4, points.size()));
    rr.extra["invariance_homomorphism"] = report_json(
        invariance_check_homomorphism(*built.hom, built.factors, flow, cfg.n_degree, few));
    const Cocycle& rot = built.factors[0];
    const Cocycle& tor = built.factors[1];
    const BranchLoopReport bl = branch_loop_check(
        [&](double s) {
          BasePoint x{std::vector<double>(static_cast<std::size_t>(d), 0.0)};
          x.phases[0] = s;
          return rot.value(x);
        },
        [&](double s) {
          BasePoint x{std::vector<double>(static_cast<std::size_t>(d), 0.0)};
          x.phases[0] = s;
          return tor.value(x).torus_value(0);
        },
        256);
    rr.extra["branch_loop"] = {{"closure_gap", bl.closure_gap},
                               {"max_step", bl.max_step},
                               {"single_valued", bl.single_valued}};
  }

  dr.verdict = ergodicity_verdict(phi.tag, integral_m, degree_nonzero, cfg.flow_uniquely_ergodic);
  if (cfg.flow_uniquely_ergodic)
    rr.caveats.push_back("base flow flagged uniquely ergodic by configuration");

  const std::vector<BasePoint> check_grid = check_grid_for(d);
  const std::vector<double> tgrid = dyadic_t_grid(13);

  for (const Representation& rep : reps) {
    RepDegree rd;
    rd.label = rep.label();
    if (dr.m_star) {
      rd.eigenvalues = degree_eigenvalues(rep, *dr.m_star);
      const Eigen::MatrixXcd pm = rep_differential(rep.in(Convention::Paper), *dr.m_star).m;
      for (Eigen::Index i = 0; i < pm.rows(); ++i)
        rd.eigenvalues_paper.push_back((cplx(0.0, 1.0) * pm(i, i)).real());
      rd.a_phi_pi = a_phi_pi(rep, *dr.m_star);
      const Eigen::MatrixXcd dmat = cplx(0.0, 1.0) * rep_differential(rep, *dr.m_star).m;
      rd.kernel = kernel_split(dmat).kernel;

      MixingInputs mi;
      mi.d = dmat;
      mi.n_max = cfg.n_corr;
      mi.check_grid = check_grid;
      for (int k = 0; k < rep.dim(); ++k) {
        if (phi.tag.kind == GroupKind::Torus) {
          std::vector<int> e1(static_cast<std::size_t>(d), 0);
          e1[0] = 1;
          mi.probes.push_back(FiberVector::single(
              rep, 0, k, [e1](const BasePoint& x) { return monomial(e1, x); }, e1));
        } else {
          mi.probes.push_back(FiberVector::single(
              rep, 0, k, [](const BasePoint&) { return cplx(1.0, 0.0); },
              std::vector<int>(static_cast<std::size_t>(d), 0)));
        }
      }
      std::vector<CorrelationSeries> series;
      rr.mixing.push_back(mixing_verdict(rep, 0, *koop, flow, mi, &series));
      for (std::size_t p = 0; p < series.size(); ++p) {
        const std::string base = sc + "_" + slug(rd.label) + "_p" + std::to_string(p);
        const std::string csv = series_csv(series[p]);
        write_file(out / (base + ".csv"), csv);
        write_file(out / (base + ".svg"), emit_plot(csv));
        rr.series_files.push_back(base + ".csv");
        rr.series_files.push_back(base + ".svg");
      }

      AcInputs ai;
      ai.d = dmat;
      ai.uniform_diagnostic = uniform_diag;
      ai.dini = dini_modulus(lie_derivative_field(rep, *koop), flow, tgrid, check_grid);
      ai.torus_irrational_base = cfg.flow_uniquely_ergodic;
      ai.check_grid = check_grid;
      rr.ac.push_back(ac_verdict(rep, 0, *koop, flow, ai));
    } else {
      rd.a_phi_pi = a_phi_pi(rep, field.values);
      SpectralVerdict v;
      v.rep_label = rd.label;
      v.verdict = "NO-CLAIM";
      v.notes.push_back("no constant degree available");
      rr.mixing.push_back(v);
      rr.ac.push_back(v);
    }
    dr.per_rep.push_back(std::move(rd));
  }

  rr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_file(out / "report.json", to_json(rr).dump(2) + "\n");
  Json timings = {{"seconds", rr.seconds}, {"threads", thread_count()}};
  write_file(out / "timings.json", timings.dump(2) + "\n");
  return rr;
}

}  // namespace liedeg
