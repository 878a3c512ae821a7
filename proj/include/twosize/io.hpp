#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "twosize/analytics.hpp"
#include "twosize/model.hpp"
#include "twosize/moments.hpp"
#include "twosize/renewal.hpp"
#include "twosize/sde.hpp"
#include "twosize/wright_fisher.hpp"

namespace twosize {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Derivation rule recorded in every manifest; see RngStream.
inline constexpr const char* kSeedDerivation =
    "xoshiro256++ seeded from the splitmix64 sequence started at "
    "root_seed XOR (stream_index+1)*0x9E3779B97F4A7C15";

// CSV cells use '.' decimals, '\n' line endings and 17 significant digits,
// which round-trips IEEE doubles exactly.
std::string format_double(double v);

std::string trajectory_csv(const std::vector<Trajectory>& reps);
std::string discrete_law_csv(const DiscreteLaw& law);
std::string moment_report_csv(const MomentReport& report);
std::string sde_paths_csv(const std::vector<SdePath>& paths);
std::string analytics_csv(const AnalyticsResult& result);

// Experiment configuration shared by the CLI and the JSON config format.
struct ExperimentConfig {
  std::string command;  // simulate | sde | drift-scan | renewal | analytics | validate
  double resources = 1.0;
  double theta = 0.5;
  std::optional<Rational> theta_rational;
  RhoSpec rho;
  bool strict = false;

  double x0 = 0.5;
  std::int64_t gens = 0;
  std::int64_t reps = 1;
  std::int64_t grid = 101;
  std::int64_t n_sim = 0;
  int order = 1;
  double h = 0.0;
  double horizon = 0.0;  // T
  double max_t = 0.0;
  double s = 0.0;
  double beta0 = 0.0;
  double beta1 = 0.0;
  double tol = 1e-8;
  std::string mode;  // analytics/sde sub-mode

  std::uint64_t seed = 0;
  bool seed_set = false;  // seeds are mandatory; no wall-clock default
  int workers = 1;
  std::string out;
  std::string format = "csv";

  SizeParams size_params() const;
  void validate() const;
};

nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

nlohmann::json rho_to_json(const RhoSpec& spec);
RhoSpec rho_from_json(const nlohmann::json& j);

// Writes content atomically (temp file + rename) and a manifest sidecar
// `<path>.manifest.json` echoing the config, toolkit version, stream count,
// wall time and row count.
void write_output_with_manifest(const std::string& path,
                                const std::string& content,
                                const ExperimentConfig& config,
                                std::int64_t streams, double wall_time_s);

std::string read_file(const std::string& path);

}  // namespace twosize
