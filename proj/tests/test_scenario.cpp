#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "liedeg/errors.hpp"
#include "liedeg/scenario.hpp"

using namespace liedeg;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("liedeg_test_" + name);
  fs::remove_all(p);
  return p;
}

int count(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t i = hay.find(needle); i != std::string::npos; i = hay.find(needle, i + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("every named scenario builds a valid default config") {
  for (const std::string& name : scenario_names()) {
    CAPTURE(name);
    const ScenarioConfig c = make_config(name);
    CHECK(c.scenario == name);
    if (name == "custom") {
      CHECK_THROWS_AS(validate_config(c), ConfigError);
      continue;
    }
    validate_config(c);
    const BuiltCocycle b = build_cocycle(c.cocycle, c.flow());
    CHECK_FALSE(parse_reps(c.reps, b.cocycle.tag).empty());
    CHECK(c.to_json().contains("alpha"));
    CHECK_FALSE(c.to_json().contains("out"));
  }
}

TEST_CASE("config overrides are checked") {
  const ScenarioConfig c = make_config("anzai-torus", Json{{"N_corr", 7}, {"seed", 9}});
  CHECK(c.n_corr == 7);
  CHECK(c.seed == 9);
  CHECK_THROWS_AS(make_config("nope"), ConfigError);
  CHECK_THROWS_AS(make_config("anzai-torus", Json{{"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(make_config("anzai-torus", Json{{"scenario", "u2-product"}}), ConfigError);
  CHECK_THROWS_AS(make_config("anzai-torus", Json::array()), ConfigError);
  CHECK_THROWS_AS(validate_config(make_config("anzai-torus", Json{{"N_degree", 1}})), ConfigError);
  CHECK_THROWS_AS(validate_config(make_config("anzai-torus", Json{{"d", 0}})), ConfigError);
  CHECK_THROWS_AS(validate_config(make_config("anzai-torus", Json{{"alpha", {0.1, 0.2}}})), ConfigError);
  CHECK_THROWS_AS(validate_config(make_config("anzai-torus", Json{{"reps", Json::array()}})), ConfigError);
}

TEST_CASE("cocycle specs and representation lists are parsed strictly") {
  const TranslationFlow f = TranslationFlow::default_for(1);
  CHECK_THROWS_AS(build_cocycle(Json{{"builtin", "mystery"}}, f), ConfigError);
  CHECK_THROWS_AS(build_cocycle(Json{{"builtin", "su2-diagonal"}}, f), ConfigError);
  CHECK_THROWS_AS(build_cocycle(Json{{"builtin", "su2-diagonal"}, {"k", "x"}}, f), ConfigError);
  CHECK_THROWS_AS(build_cocycle(Json{{"builtin", "constant"}, {"group", "SU2"}, {"value", {0, 0, 0, 0}}}, f),
                  ConfigError);
  const BuiltCocycle k = build_cocycle(Json{{"builtin", "constant"}, {"group", "SU2"}, {"value", {0, 2, 0, 0}}}, f);
  CHECK(std::abs(k.cocycle.value(random_points(1, 1, {1, 1})[0]).z1() - cplx(0, 1)) < 1e-15);
  const BuiltCocycle m = build_cocycle(Json{{"builtin", "su2-manufactured"}, {"k", {1}}, {"p", {1}}}, f);
  CHECK(m.manufactured.has_value());

  const auto su = parse_reps(Json::array({Json{{"l", 2}}, Json{{"l", 0}}}), GroupTag::su2());
  REQUIRE(su.size() == 2);
  CHECK(su[0].dim() == 3);
  const auto u = parse_reps(Json::array({Json{{"l", 1}, {"m", 1}}}), GroupTag::u2());
  CHECK(u[0].label() == "U2 (l,m)=(1,1)");
  CHECK_THROWS_AS(parse_reps(Json::array({Json{{"q", {1, 2}}}}), GroupTag::torus(1)), ConfigError);
  CHECK_THROWS_AS(parse_reps(Json::array({Json{{"l", 1}}}), GroupTag::u2()), ConfigError);
  CHECK_THROWS_AS(parse_reps(Json{{"l", 1}}, GroupTag::su2()), ConfigError);
}

TEST_CASE("plots draw one marker per row and are deterministic") {
  const std::string csv = "N,re,im,abs,err_estimate\n0,1,0,1,0\n1,0.5,0,0.5,0\n2,0,0,0,0\n";
  const std::string svg = emit_plot(csv);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count(svg, "<circle") == 3);
  CHECK(count(svg, "<polyline") == 1);
  CHECK(emit_plot(csv) == svg);
  CHECK_THROWS_AS(emit_plot("a,b\n1,2\n"), ConfigError);
  CHECK_THROWS_AS(emit_plot("N,re,im,abs,err_estimate\n"), ConfigError);
  CHECK_THROWS_AS(emit_plot("N,re,im,abs,err_estimate\n0,x,0,0,0\n"), ConfigError);
  CHECK_THROWS_AS(emit_plot_file("/nonexistent/liedeg.csv", "/tmp/liedeg.svg"), IoError);
}

TEST_CASE("a scenario run writes the report and every series it names") {
  const fs::path out = fresh_dir("anzai");
  const ScenarioConfig cfg = make_config(
      "anzai-torus", Json{{"out", out.string()}, {"N_degree", 2000}, {"degree_points", 4}, {"N_corr", 10}});
  const RunReport r = scenario_run(cfg);
  REQUIRE(fs::exists(out / "report.json"));
  CHECK(fs::exists(out / "timings.json"));
  const Json j = Json::parse(slurp(out / "report.json"));
  for (const char* key : {"liedeg_version", "config", "degree_report", "mixing", "ac", "series_files", "caveats"})
    CHECK(j.contains(key));
  CHECK_FALSE(j["config"].contains("out"));
  CHECK(j["degree_report"]["group"] == "TORUS(1)");
  CHECK(j["mixing"].size() == 7);
  CHECK_FALSE(r.series_files.empty());
  for (const std::string& f : r.series_files) {
    CAPTURE(f);
    CHECK(f.find('/') == std::string::npos);
    CHECK(fs::exists(out / f));
  }
  for (const SpectralVerdict& v : r.mixing) CHECK(v.verdict == (v.rep_label == "q=(0)" ? "NO-CLAIM" : "SUPPORTED"));
  for (const SpectralVerdict& v : r.ac) CHECK(v.verdict == (v.rep_label == "q=(0)" ? "NO-CLAIM" : "AC-PREDICTED"));

  // a second run into the same directory reproduces the report byte for byte
  const std::string first = slurp(out / "report.json");
  scenario_run(cfg);
  CHECK(slurp(out / "report.json") == first);
}

TEST_CASE("a constant cocycle has zero degree and no claims") {
  const fs::path out = fresh_dir("constant");
  const ScenarioConfig cfg = make_config(
      "custom", Json{{"out", out.string()},
                     {"cocycle", {{"builtin", "constant"}, {"group", "SU2"}, {"value", {0.6, 0.0, 0.8, 0.0}}}},
                     {"reps", Json::array({Json{{"l", 1}}})},
                     {"N_degree", 500},
                     {"degree_points", 3},
                     {"N_corr", 6}});
  const RunReport r = scenario_run(cfg);
  REQUIRE(r.degree.m_star.has_value());
  CHECK(r.degree.m_star->norm() < 1e-12);
  REQUIRE(r.mixing.size() == 1);
  CHECK(r.mixing[0].verdict == "NO-CLAIM");
  CHECK(r.ac[0].verdict == "NO-CLAIM");
}

TEST_CASE("an unusable output directory is an I/O error") {
  ScenarioConfig cfg = make_config("anzai-torus", Json{{"N_degree", 100}, {"degree_points", 1}, {"N_corr", 4}});
  cfg.out = "/proc/liedeg_cannot_exist/out";
  CHECK_THROWS_AS(scenario_run(cfg), IoError);
}
