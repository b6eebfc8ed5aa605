#pragma once
/**
 * @file scenario.hpp
 * @brief Scenario configs, end-to-end runs and JSON reports.
 */

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "liedeg/cocycles.hpp"
#include "liedeg/degree.hpp"
#include "liedeg/spectral.hpp"

namespace liedeg {

using Json = nlohmann::ordered_json;

inline const char* const kLiedegVersion = "0.1.0";

/// anzai-torus, torus-general, su2-straighten, so3-maximal-torus, u2-product, custom
const std::vector<std::string>& scenario_names();

struct ScenarioConfig {
  std::string scenario;
  int d = 1;
  std::vector<double> alpha;  // empty: default for d
  Json cocycle;               // {"builtin": name, ...params}
  Json reps;                  // array of {"q": [...]}, {"l": n} or {"l": n, "m": m}
  long n_degree = kDefaultDegreeN;
  long n_corr = 50;
  int quadrature_nodes = 64;  // for degree integrals and hypothesis grids
  int degree_points = 20;
  std::uint64_t seed = 1;
  std::string out = "liedeg_out";
  bool flow_uniquely_ergodic = true;

  TranslationFlow flow() const;
  Json to_json() const;
};

/// Defaults for a named scenario, then overridden by the fields present in `overrides`.
ScenarioConfig make_config(const std::string& scenario, const Json& overrides = Json::object());

/// Throws ConfigError on invalid fields.
void validate_config(const ScenarioConfig& cfg);

struct BuiltCocycle {
  Cocycle cocycle;
  std::optional<ManufacturedSu2> manufactured;
  /// factors and homomorphism when the cocycle is an image h o delta
  std::vector<Cocycle> factors;
  std::optional<Homomorphism> hom;
};

BuiltCocycle build_cocycle(const Json& spec, const TranslationFlow& flow);
std::vector<Representation> parse_reps(const Json& reps, const GroupTag& tag);

/// Degree summary of one representation block.
struct RepDegree {
  std::string label;
  std::vector<double> eigenvalues;        // orthonormal basis
  std::vector<double> eigenvalues_paper;  // diagonal of i (d pi)(M) in the monomial basis
  double a_phi_pi = 0.0;
  std::vector<int> kernel;
};

struct DegreeReport {
  GroupTag group;
  std::optional<AlgebraElement> m_star;
  std::string provenance;
  std::vector<RepDegree> per_rep;
  ErgodicityVerdict verdict;
  long n_used = 0;
  Json diagnostics = Json::object();
};

struct RunReport {
  ScenarioConfig config;
  DegreeReport degree;
  std::vector<SpectralVerdict> mixing;
  std::vector<SpectralVerdict> ac;
  std::vector<std::string> series_files;
  std::vector<std::string> caveats;
  Json extra = Json::object();
  double seconds = 0.0;  // wall clock, written to the timings sidecar only
};

Json algebra_json(const AlgebraElement& z);
Json to_json(const DegreeReport& r);
Json to_json(const SpectralVerdict& v);
Json to_json(const RunReport& r);

/// Runs the pipeline and writes report.json, one CSV and SVG per series and
/// timings.json into cfg.out.
RunReport scenario_run(const ScenarioConfig& cfg);

/// SVG with a log-scale |c_N| panel and a linear A_N panel.
std::string emit_plot(const std::string& csv_text);
void emit_plot_file(const std::string& csv_path, const std::string& svg_path);

}  // namespace liedeg
