#pragma once

// Configuration-driven sweeps over (size, instance, mixer, dt, p) and their CSV output.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "kmix/errors.hpp"
#include "kmix/mixers.hpp"
#include "kmix/problems.hpp"
#include "kmix/tae.hpp"

namespace kmix {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kCsvHeader =
    "schema_version,problem,n,instance_seed,mixer,mode,delta_t,p,p_opt,leakage,optimal_value,n_optima,runtime_ms,status";

struct ExperimentConfig {
  std::string problem = "portfolio";
  std::vector<int> sizes{6};
  int instances = 10;
  std::uint64_t seed_base = 1;
  std::vector<double> delta_t{0.75};
  std::vector<int> steps{5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 110, 120, 130, 140, 150};
  std::vector<MixerKind> mixers{MixerKind::X, MixerKind::XYFullBlocked};
  EvolutionMode mode = EvolutionMode::Exact;
  std::string output = "results.csv";
  int max_qubits = 20;
  std::optional<double> penalty;
  PortfolioOptions portfolio;
  int mcps_ensemble_size = 4;
  MCFPOptions mcfp{6, 0.6, 1, 8, 0, 10000.0, 1000};
  int mcfp_paths_per_commodity = 4;

  void validate() const {
    if (problem != "portfolio" && problem != "mcps" && problem != "mcfp")
      throw std::invalid_argument("config: unknown problem '" + problem + "'");
    if (sizes.empty() || delta_t.empty() || steps.empty() || mixers.empty())
      throw std::invalid_argument("config: sizes, delta_t, steps and mixers must be non-empty");
    if (instances < 1) throw std::invalid_argument("config: instances must be >= 1");
    for (int n : sizes)
      if (n < 2 || n > kStateQubitCap) throw std::invalid_argument("config: size out of simulable range");
    for (double dt : delta_t)
      if (!(dt > 0.0)) throw std::invalid_argument("config: delta_t must be positive");
    for (int p : steps)
      if (p < 1) throw std::invalid_argument("config: steps must be >= 1");
    for (auto m : mixers)
      if (m == MixerKind::XYRing) throw std::invalid_argument("config: the ring mixer is not an experiment backend");
    if (mcps_ensemble_size < 1 || mcfp_paths_per_commodity < 1)
      throw std::invalid_argument("config: group sizes must be >= 1");
  }
};

inline MixerKind parse_mixer(const std::string& s) {
  if (s == "x") return MixerKind::X;
  if (s == "xy" || s == "xy-full") return MixerKind::XYFullBlocked;
  if (s == "xy-ring") return MixerKind::XYRing;
  throw std::invalid_argument("unknown mixer '" + s + "'");
}

inline EvolutionMode parse_mode(const std::string& s) {
  if (s == "exact") return EvolutionMode::Exact;
  if (s == "trotterized") return EvolutionMode::Trotterized;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

inline nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json mixers = nlohmann::json::array();
  for (auto m : c.mixers) mixers.push_back(to_string(m));
  nlohmann::json j{
      {"problem", c.problem},
      {"sizes", c.sizes},
      {"instances", c.instances},
      {"seed_base", c.seed_base},
      {"delta_t", c.delta_t},
      {"steps", c.steps},
      {"mixers", mixers},
      {"mode", to_string(c.mode)},
      {"output", c.output},
      {"max_qubits", c.max_qubits},
      {"portfolio",
       {{"return_lo", c.portfolio.return_lo},
        {"return_hi", c.portfolio.return_hi},
        {"factor_scale", c.portfolio.factor_scale},
        {"risk_factor", c.portfolio.risk_factor}}},
      {"mcps", {{"ensemble_size", c.mcps_ensemble_size}}},
      {"mcfp",
       {{"nodes", c.mcfp.nodes},
        {"arc_probability", c.mcfp.arc_probability},
        {"max_paths_per_commodity", c.mcfp.max_paths_per_commodity},
        {"paths_per_commodity", c.mcfp_paths_per_commodity},
        {"max_attempts", c.mcfp.max_attempts}}},
  };
  if (c.penalty) j["penalty"] = *c.penalty;
  return j;
}

/// Missing keys keep their defaults; unknown keys are rejected.
inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  static const std::vector<std::string> known{"problem", "sizes",      "instances", "seed_base", "delta_t",
                                              "steps",   "mixers",     "mode",      "output",    "max_qubits",
                                              "penalty", "portfolio",  "mcps",      "mcfp"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw std::invalid_argument("config: unknown key '" + it.key() + "'");
  ExperimentConfig c;
  if (j.contains("problem")) j.at("problem").get_to(c.problem);
  if (j.contains("sizes")) j.at("sizes").get_to(c.sizes);
  if (j.contains("instances")) j.at("instances").get_to(c.instances);
  if (j.contains("seed_base")) j.at("seed_base").get_to(c.seed_base);
  if (j.contains("delta_t")) j.at("delta_t").get_to(c.delta_t);
  if (j.contains("steps")) j.at("steps").get_to(c.steps);
  if (j.contains("mixers")) {
    c.mixers.clear();
    for (const auto& m : j.at("mixers")) c.mixers.push_back(parse_mixer(m.get<std::string>()));
  }
  if (j.contains("mode")) c.mode = parse_mode(j.at("mode").get<std::string>());
  if (j.contains("output")) j.at("output").get_to(c.output);
  if (j.contains("max_qubits")) j.at("max_qubits").get_to(c.max_qubits);
  if (j.contains("penalty")) c.penalty = j.at("penalty").get<double>();
  if (j.contains("portfolio")) {
    const auto& p = j.at("portfolio");
    c.portfolio.return_lo = p.value("return_lo", c.portfolio.return_lo);
    c.portfolio.return_hi = p.value("return_hi", c.portfolio.return_hi);
    c.portfolio.factor_scale = p.value("factor_scale", c.portfolio.factor_scale);
    c.portfolio.risk_factor = p.value("risk_factor", c.portfolio.risk_factor);
  }
  if (j.contains("mcps")) c.mcps_ensemble_size = j.at("mcps").value("ensemble_size", c.mcps_ensemble_size);
  if (j.contains("mcfp")) {
    const auto& m = j.at("mcfp");
    c.mcfp.nodes = m.value("nodes", c.mcfp.nodes);
    c.mcfp.arc_probability = m.value("arc_probability", c.mcfp.arc_probability);
    c.mcfp.max_paths_per_commodity = m.value("max_paths_per_commodity", c.mcfp.max_paths_per_commodity);
    c.mcfp_paths_per_commodity = m.value("paths_per_commodity", c.mcfp_paths_per_commodity);
    c.mcfp.max_attempts = m.value("max_attempts", c.mcfp.max_attempts);
  }
  c.validate();
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  return config_from_json(nlohmann::json::parse(in));
}

struct RunRecord {
  std::string problem;
  int n = 0;
  std::uint64_t instance_seed = 0;
  MixerKind mixer = MixerKind::X;
  EvolutionMode mode = EvolutionMode::Exact;
  double delta_t = 0.0;
  int p = 0;
  double p_opt = 0.0;
  double leakage = 0.0;
  double optimal_value = 0.0;
  std::size_t n_optima = 0;
  double runtime_ms = 0.0;
  std::string status = "ok";  // ok | infeasible[: reason] | skipped: <reason> | crashed: <reason>

  bool ok() const { return status == "ok"; }
  bool crashed() const { return status.rfind("crashed", 0) == 0; }

  auto key() const { return std::tie(problem, n, instance_seed, mixer, mode, delta_t, p); }
};

/// The instance for (problem, n, seed) encoded for the given mixer.
inline EncodedProblem build_problem(const ExperimentConfig& c, int n, std::uint64_t seed, MixerKind mixer) {
  const Flavor flavor = mixer == MixerKind::X ? Flavor::X : Flavor::XY;
  if (c.problem == "portfolio") {
    auto opt = c.portfolio;
    if (c.penalty) opt.penalty = *c.penalty;
    return encode_portfolio(generate_portfolio(n, seed, opt), flavor);
  }
  if (c.problem == "mcps") {
    const int m = (n + c.mcps_ensemble_size - 1) / c.mcps_ensemble_size;
    return encode_mcps(generate_mcps(n, m, seed, c.penalty.value_or(1000.0)), flavor);
  }
  auto opt = c.mcfp;
  opt.commodities = (n + c.mcfp_paths_per_commodity - 1) / c.mcfp_paths_per_commodity;
  opt.target_variables = n;
  if (c.penalty) opt.penalty = *c.penalty;
  return encode_mcfp(generate_mcfp(seed, opt), flavor);
}

inline std::string sanitize_reason(std::string s) {
  for (auto& ch : s)
    if (ch == ',' || ch == '"' || ch == '\n' || ch == '\r') ch = ';';
  return s;
}

/// Every row for one (n, instance, mixer) cell; one propagator serves all (dt, p).
inline std::vector<RunRecord> run_cell(const ExperimentConfig& c, int n, std::uint64_t seed, MixerKind mixer) {
  std::vector<RunRecord> rows;
  auto blank = [&](double dt, int p) {
    RunRecord r;
    r.problem = c.problem;
    r.n = n;
    r.instance_seed = seed;
    r.mixer = mixer;
    r.mode = c.mode;
    r.delta_t = dt;
    r.p = p;
    return r;
  };
  auto fail_all = [&](const std::string& status) {
    rows.clear();
    for (double dt : c.delta_t)
      for (int p : c.steps) {
        auto r = blank(dt, p);
        r.status = status;
        rows.push_back(std::move(r));
      }
  };
  if (n > c.max_qubits) {
    fail_all("skipped: n exceeds max_qubits");
    return rows;
  }
  EncodedProblem enc;
  try {
    enc = build_problem(c, n, seed, mixer);
  } catch (const CapacityError& e) {
    fail_all("skipped: " + sanitize_reason(e.what()));
    return rows;
  } catch (const std::exception& e) {
    fail_all("infeasible: " + sanitize_reason(e.what()));
    return rows;
  }
  try {
    const auto opt = brute_force_optimum(enc);
    if (opt.optima.empty()) {
      fail_all("infeasible");
      return rows;
    }
    const MixerSpec spec(mixer, enc.n(), enc.blocks);
    MixerPropagator prop(spec, c.mode);
    const StateVector init = initial_state(spec);
    for (double dt : c.delta_t)
      for (int p : c.steps) {
        auto r = blank(dt, p);
        const auto t0 = std::chrono::steady_clock::now();
        const auto final_state = evolve(init, prop, enc.hf, Schedule(p, dt));
        r.p_opt = std::clamp(success_probability(final_state, opt.optima), 0.0, 1.0);
        r.leakage = std::clamp(leakage(final_state, enc.blocks), 0.0, 1.0);
        r.optimal_value = opt.value;
        r.n_optima = opt.optima.size();
        r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rows.push_back(std::move(r));
      }
  } catch (const CapacityError& e) {
    fail_all("skipped: " + sanitize_reason(e.what()));
  } catch (const std::exception& e) {
    fail_all("crashed: " + sanitize_reason(e.what()));
  }
  return rows;
}

/// Worker count from KMIX_THREADS (default 1).
inline unsigned thread_count_from_env() {
  const char* v = std::getenv("KMIX_THREADS");
  if (!v || !*v) return 1;
  char* end = nullptr;
  const long t = std::strtol(v, &end, 10);
  if (*end != '\0' || t < 1) throw std::invalid_argument("KMIX_THREADS must be a positive integer");
  return static_cast<unsigned>(t);
}

/// All rows of the sweep in canonical order.
inline std::vector<RunRecord> run_experiments(const ExperimentConfig& c, unsigned threads = 1) {
  c.validate();
  struct Cell {
    int n;
    std::uint64_t seed;
    MixerKind mixer;
  };
  std::vector<Cell> cells;
  for (int n : c.sizes)
    for (int i = 0; i < c.instances; ++i)
      for (auto m : c.mixers) cells.push_back({n, c.seed_base + static_cast<std::uint64_t>(i), m});
  std::vector<std::vector<RunRecord>> results(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++)
      results[k] = run_cell(c, cells[k].n, cells[k].seed, cells[k].mixer);
  };
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(cells.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<RunRecord> rows;
  for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(rows));
  std::stable_sort(rows.begin(), rows.end(), [](const RunRecord& a, const RunRecord& b) { return a.key() < b.key(); });
  return rows;
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_row(const RunRecord& r) {
  std::ostringstream o;
  o << kSchemaVersion << ',' << r.problem << ',' << r.n << ',' << r.instance_seed << ',' << to_string(r.mixer) << ','
    << to_string(r.mode) << ',' << format_double(r.delta_t) << ',' << r.p << ',';
  if (r.ok())
    o << format_double(r.p_opt) << ',' << format_double(r.leakage) << ',' << format_double(r.optimal_value) << ','
      << r.n_optima;
  else
    o << ",,,";
  o << ',' << format_double(r.runtime_ms) << ',' << r.status;
  return o.str();
}

inline std::string format_csv(const std::vector<RunRecord>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) out += csv_row(r) + "\n";
  return out;
}

inline void write_csv(const std::string& path, const std::vector<RunRecord>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << format_csv(rows);
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace kmix
