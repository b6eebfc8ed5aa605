// liedeg: command-line front end of the lab.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "liedeg/acceptance.hpp"
#include "liedeg/errors.hpp"
#include "liedeg/scenario.hpp"

using namespace liedeg;

namespace {

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path);
  std::stringstream s;
  s << f.rdbuf();
  return parse_json(s.str(), path);
}

TranslationFlow flow_of(int d, const std::vector<double>& alpha) {
  if (alpha.empty()) return TranslationFlow::default_for(d);
  if (static_cast<int>(alpha.size()) != d) throw ConfigError("--alpha needs d entries");
  return TranslationFlow{alpha};
}

int run_scenario_cmd(const std::string& name, const std::string& config, const std::string& out,
                     const std::optional<std::uint64_t>& seed) {
  Json overrides = config.empty() ? Json::object() : read_json_file(config);
  if (!out.empty()) overrides["out"] = out;
  if (seed) overrides["seed"] = *seed;
  const ScenarioConfig cfg = make_config(name, overrides);
  const RunReport r = scenario_run(cfg);
  std::cout << "scenario " << name << ": degree verdict " << r.degree.verdict.verdict();
  if (!r.degree.verdict.upgrade().empty()) std::cout << " / " << r.degree.verdict.upgrade();
  std::cout << "\n";
  for (std::size_t i = 0; i < r.mixing.size(); ++i)
    std::cout << "  " << r.mixing[i].rep_label << ": mixing " << r.mixing[i].verdict << ", ac "
              << r.ac[i].verdict << "\n";
  std::cout << "report: " << cfg.out << "/report.json (" << r.series_files.size()
            << " series files)\n";
  return 0;
}

int run_degree_cmd(const std::string& cocycle, int d, const std::vector<double>& alpha, long n,
                   int points, std::uint64_t seed) {
  const TranslationFlow flow = flow_of(d, alpha);
  const BuiltCocycle b = build_cocycle(parse_json(cocycle, "--cocycle"), flow);
  const DegreeField f = degree_field(b.cocycle, flow,
                                     random_points(d, static_cast<std::size_t>(points), {seed, 2}), n);
  Json j;
  j["group"] = b.cocycle.tag.name();
  j["N_used"] = n;
  Json vals = Json::array();
  for (std::size_t i = 0; i < f.values.size(); ++i)
    vals.push_back({{"x", f.points[i].phases},
                    {"degree", algebra_json(f.values[i])},
                    {"diagnostic", f.diagnostics[i]}});
  j["points"] = vals;
  j["spread"] = f.spread;
  j["max_diagnostic"] = f.max_diagnostic;
  j["constant"] = f.constant;
  j["mean_M"] = algebra_json(degree_constant_diagonal(b.cocycle, QuadratureSpec::uniform(d, 64)));
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_corr_cmd(const std::string& cocycle, const std::string& rep_json, int d,
                 const std::vector<double>& alpha, int slot, long n_max, const std::string& out) {
  const TranslationFlow flow = flow_of(d, alpha);
  const BuiltCocycle b = build_cocycle(parse_json(cocycle, "--cocycle"), flow);
  const std::vector<Representation> reps =
      parse_reps(Json::array({parse_json(rep_json, "--rep")}), b.cocycle.tag);
  const FiberVector p = FiberVector::single(
      reps.front(), 0, slot, [](const BasePoint&) { return cplx(1.0, 0.0); },
      std::vector<int>(static_cast<std::size_t>(d), 0));
  const CorrelationSeries s = correlation_series(p, p, b.cocycle, flow, n_max);
  const std::string csv = series_csv(s);
  if (out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw IoError("cannot write " + out);
    f << csv;
  }
  return 0;
}

int run_rep_check_cmd(const std::string& group, int l, int m, int nodes) {
  Representation rep;
  if (group == "SU2") {
    rep = Representation::su2(l);
  } else if (group == "SO3") {
    rep = Representation::so3(l);
  } else if (group == "U2") {
    rep = Representation::u2(l, m);
  } else {
    throw ConfigError("--group must be SU2, SO3 or U2");
  }
  const OrthogonalityReport pw =
      rep.tag.kind == GroupKind::SU2 ? peter_weyl_check(rep, EulerQuadrature{nodes})
                                     : peter_weyl_check(rep, MonteCarloSpec{20000, {1, 9}});
  Rng rng({1, 10});
  double hom = 0.0;
  for (int i = 0; i < 200; ++i) {
    const GroupElement g = haar_sample(rep.tag, rng), h = haar_sample(rep.tag, rng);
    hom = std::max(hom, (rep_eval(rep, group_mul(g, h)).m - rep_eval(rep, g).m * rep_eval(rep, h).m)
                            .cwiseAbs()
                            .maxCoeff());
  }
  Json j = {{"rep", rep.label()},
            {"dim", rep.dim()},
            {"orthogonality_max_deviation", pw.max_deviation},
            {"orthogonality_error_estimate", pw.error_estimate},
            {"method", pw.method},
            {"nodes", pw.nodes},
            {"homomorphism_max_deviation", hom}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"liedeg: degrees of Lie group valued cocycles and their Koopman spectra"};
  app.require_subcommand(0, 1);
  bool self_test = false, quick = false;
  app.add_flag("--self-test", self_test, "run the acceptance suite");
  app.add_flag("--quick", quick, "smaller sample counts for --self-test");
  app.set_version_flag("--version", std::string("liedeg ") + kLiedegVersion);

  std::string sc_name, sc_config, sc_out;
  std::optional<std::uint64_t> sc_seed;
  auto* sc = app.add_subcommand("scenario", "run a named scenario end to end");
  sc->add_option("name", sc_name, "scenario name")->required();
  sc->add_option("--config", sc_config, "JSON config overrides");
  sc->add_option("--out", sc_out, "output directory");
  sc->add_option("--seed", sc_seed, "RNG seed");

  std::string cocycle, rep_json, group = "SU2", corr_out;
  int d = 1, points = 5, slot = 0, l = 1, m = 0, nodes = 32;
  long n = kDefaultDegreeN, n_max = 50;
  std::uint64_t seed = 1;
  std::vector<double> alpha;

  auto* deg = app.add_subcommand("degree", "pointwise degree estimates of a built-in cocycle");
  deg->add_option("--cocycle", cocycle, "cocycle spec as JSON")->required();
  deg->add_option("--d", d, "base dimension");
  deg->add_option("--alpha", alpha, "rotation vector");
  deg->add_option("--N", n, "Cesaro length");
  deg->add_option("--points", points, "random base points");
  deg->add_option("--seed", seed, "RNG seed");

  auto* corr = app.add_subcommand("corr", "correlation series c_0..c_N of a unit slot probe");
  corr->add_option("--cocycle", cocycle, "cocycle spec as JSON")->required();
  corr->add_option("--rep", rep_json, "representation as JSON")->required();
  corr->add_option("--d", d, "base dimension");
  corr->add_option("--alpha", alpha, "rotation vector");
  corr->add_option("--slot", slot, "fiber slot k");
  corr->add_option("--N", n_max, "largest N");
  corr->add_option("--out", corr_out, "CSV path (stdout if omitted)");

  auto* rc = app.add_subcommand("rep-check", "orthogonality and homomorphism check of one rep");
  rc->add_option("--group", group, "SU2, SO3 or U2");
  rc->add_option("--l", l, "weight");
  rc->add_option("--m", m, "U2 twist");
  rc->add_option("--nodes", nodes, "Euler quadrature nodes per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::Config);
  }

  try {
    if (self_test) return run_acceptance_suite(std::cout, quick) ? 0 : 1;
    if (sc->parsed()) return run_scenario_cmd(sc_name, sc_config, sc_out, sc_seed);
    if (deg->parsed()) return run_degree_cmd(cocycle, d, alpha, n, points, seed);
    if (corr->parsed()) return run_corr_cmd(cocycle, rep_json, d, alpha, slot, n_max, corr_out);
    if (rc->parsed()) return run_rep_check_cmd(group, l, m, nodes);
    std::cout << app.help();
    return 0;
  } catch (const Error& e) {
    std::cerr << "liedeg: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "liedeg: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Failure);
  }
}
