#include "twosize/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace twosize {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trajectory_csv(const std::vector<Trajectory>& reps) {
  std::string out = "gen,x_freq,m_size\n";
  for (const auto& traj : reps) {
    for (std::size_t k = 0; k < traj.gens.size(); ++k) {
      out += std::to_string(traj.gens[k]);
      out += ',';
      out += format_double(traj.states[k].x_freq);
      out += ',';
      out += std::to_string(traj.states[k].m_size);
      out += '\n';
    }
  }
  return out;
}

std::string discrete_law_csv(const DiscreteLaw& law) {
  std::string out = "k_small,k_large,prob\n";
  for (const auto& atom : law.atoms()) {
    out += std::to_string(atom.k_small);
    out += ',';
    out += std::to_string(atom.k_large);
    out += ',';
    out += format_double(atom.prob);
    out += '\n';
  }
  return out;
}

std::string moment_report_csv(const MomentReport& report) {
  std::string out = "x,order,estimate,std_err,theory,method\n";
  for (std::size_t i = 0; i < report.x_grid.size(); ++i) {
    out += format_double(report.x_grid[i]);
    out += ',';
    out += std::to_string(report.order);
    out += ',';
    out += format_double(report.estimates[i]);
    out += ',';
    out += format_double(report.std_errs[i]);
    out += ',';
    out += format_double(report.theory[i]);
    out += ',';
    out += report.method;
    out += '\n';
  }
  return out;
}

std::string sde_paths_csv(const std::vector<SdePath>& paths) {
  std::string out = "t,x\n";
  for (const auto& path : paths) {
    for (std::size_t k = 0; k < path.times.size(); ++k) {
      out += format_double(path.times[k]);
      out += ',';
      out += format_double(path.values[k]);
      out += '\n';
    }
  }
  return out;
}

std::string analytics_csv(const AnalyticsResult& result) {
  std::string out = "x,value\n";
  for (std::size_t i = 0; i < result.grid.size(); ++i) {
    out += format_double(result.grid[i]);
    out += ',';
    out += format_double(result.values[i]);
    out += '\n';
  }
  return out;
}

SizeParams ExperimentConfig::size_params() const {
  if (theta_rational)
    return SizeParams::with_rational(theta_rational->num, theta_rational->den,
                                     resources);
  return SizeParams(theta, resources);
}

void ExperimentConfig::validate() const {
  if (!seed_set) throw ConfigError("seed is required (no wall-clock default)");
  if (command.empty()) throw ConfigError("command is required");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (format != "csv" && format != "json")
    throw ConfigError("format must be csv or json");
  size_params();  // validates theta and R
}

json rho_to_json(const RhoSpec& spec) {
  json j;
  j["variant"] = spec.name();
  struct Visitor {
    json& j;
    void operator()(const Neutral&) const {}
    void operator()(const GenicSelection& g) const { j["s"] = g.s; }
    void operator()(const FittestTypeWins& f) const {
      j["weights"] = f.weights;
      j["max_terms"] = f.max_terms;
    }
    void operator()(const Diploid& d) const {
      j["s"] = d.s;
      j["h"] = d.h;
    }
    void operator()(const ParentIndependentMutation& m) const {
      j["beta0"] = m.beta0;
      j["beta1"] = m.beta1;
    }
    void operator()(const CustomTable& t) const {
      j["x"] = t.x;
      j["rho_R"] = t.rho_finite;
      j["rho"] = t.rho_limit;
    }
  };
  std::visit(Visitor{j}, spec.variant());
  return j;
}

RhoSpec rho_from_json(const json& j) {
  const std::string variant = j.value("variant", "neutral");
  if (variant == "neutral") return RhoSpec(Neutral{});
  if (variant == "genic") return RhoSpec(GenicSelection{j.value("s", 0.0)});
  if (variant == "fittest") {
    FittestTypeWins f;
    f.weights = j.at("weights").get<std::vector<double>>();
    f.max_terms = j.value("max_terms", 64);
    return RhoSpec(f);
  }
  if (variant == "diploid")
    return RhoSpec(Diploid{j.value("s", 0.0), j.value("h", 0.0)});
  if (variant == "mutation")
    return RhoSpec(ParentIndependentMutation{j.value("beta0", 0.0),
                                             j.value("beta1", 0.0)});
  if (variant == "table") {
    CustomTable t;
    t.x = j.at("x").get<std::vector<double>>();
    t.rho_finite = j.at("rho_R").get<std::vector<double>>();
    t.rho_limit = j.at("rho").get<std::vector<double>>();
    return RhoSpec(t);
  }
  throw ConfigError("unknown rho variant: " + variant);
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["command"] = c.command;
  j["params"]["R"] = c.resources;
  j["params"]["theta"] = c.theta;
  if (c.theta_rational)
    j["params"]["theta_rational"] = {c.theta_rational->num,
                                     c.theta_rational->den};
  j["rho"] = rho_to_json(c.rho);
  j["strict"] = c.strict;
  j["x0"] = c.x0;
  j["gens"] = c.gens;
  j["reps"] = c.reps;
  j["grid"] = c.grid;
  j["nsim"] = c.n_sim;
  j["order"] = c.order;
  j["h"] = c.h;
  j["T"] = c.horizon;
  j["maxT"] = c.max_t;
  j["s"] = c.s;
  j["beta0"] = c.beta0;
  j["beta1"] = c.beta1;
  j["tol"] = c.tol;
  j["mode"] = c.mode;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["out"] = c.out;
  j["format"] = c.format;
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  c.command = j.value("command", "");
  if (j.contains("params")) {
    const auto& p = j.at("params");
    c.resources = p.value("R", 1.0);
    c.theta = p.value("theta", 0.5);
    if (p.contains("theta_rational")) {
      const auto& r = p.at("theta_rational");
      c.theta_rational = Rational{r.at(0).get<std::int64_t>(),
                                  r.at(1).get<std::int64_t>()};
      c.theta = static_cast<double>(c.theta_rational->num) /
                static_cast<double>(c.theta_rational->den);
    }
  }
  if (j.contains("rho")) c.rho = rho_from_json(j.at("rho"));
  c.strict = j.value("strict", false);
  c.x0 = j.value("x0", 0.5);
  c.gens = j.value("gens", std::int64_t{0});
  c.reps = j.value("reps", std::int64_t{1});
  c.grid = j.value("grid", std::int64_t{101});
  c.n_sim = j.value("nsim", std::int64_t{0});
  c.order = j.value("order", 1);
  c.h = j.value("h", 0.0);
  c.horizon = j.value("T", 0.0);
  c.max_t = j.value("maxT", 0.0);
  c.s = j.value("s", 0.0);
  c.beta0 = j.value("beta0", 0.0);
  c.beta1 = j.value("beta1", 0.0);
  c.tol = j.value("tol", 1e-8);
  c.mode = j.value("mode", "");
  if (j.contains("seed")) {
    c.seed = j.at("seed").get<std::uint64_t>();
    c.seed_set = true;
  }
  c.workers = j.value("workers", 1);
  c.out = j.value("out", "");
  c.format = j.value("format", "csv");
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output_with_manifest(const std::string& path,
                                const std::string& content,
                                const ExperimentConfig& config,
                                std::int64_t streams, double wall_time_s) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());

  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write file: " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);

  std::int64_t rows = 0;
  for (char ch : content)
    if (ch == '\n') ++rows;
  if (rows > 0) --rows;  // header

  json manifest;
  manifest["config"] = config_to_json(config);
  manifest["version"] = kToolkitVersion;
  manifest["seed_derivation"] = kSeedDerivation;
  manifest["streams"] = streams;
  manifest["wall_time_s"] = wall_time_s;
  manifest["rows"] = rows;

  const fs::path mpath = target.string() + ".manifest.json";
  const fs::path mtmp = mpath.string() + ".tmp";
  {
    std::ofstream out(mtmp, std::ios::binary | std::ios::trunc);
    out << manifest.dump(2) << '\n';
  }
  fs::rename(mtmp, mpath);
}

}  // namespace twosize
