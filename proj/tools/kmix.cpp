#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kmix/kmix.hpp"

namespace {

using namespace kmix;

std::vector<HammingBlock> contiguous_blocks(int n, int block_size, int k) {
  std::vector<HammingBlock> blocks;
  for (int start = 0; start < n; start += block_size) {
    HammingBlock b;
    for (int q = start; q < std::min(n, start + block_size); ++q) b.qubits.push_back(q);
    b.k = std::min(k, static_cast<int>(b.qubits.size()));
    blocks.push_back(std::move(b));
  }
  return blocks;
}

int cmd_run(const std::string& config_path, const std::string& output, int threads) {
  auto cfg = load_config(config_path);
  if (!output.empty()) cfg.output = output;
  const unsigned t = threads > 0 ? static_cast<unsigned>(threads) : thread_count_from_env();
  const auto rows = run_experiments(cfg, t);
  write_csv(cfg.output, rows);
  std::size_t ok = 0, crashed = 0;
  for (const auto& r : rows) {
    ok += r.ok();
    crashed += r.crashed();
  }
  std::fprintf(stderr, "%zu rows written to %s (%zu ok, %zu crashed)\n", rows.size(), cfg.output.c_str(), ok, crashed);
  return crashed == 0 ? 0 : 1;
}

int cmd_census(const std::string& mixer, int n, int block_size, int k, const std::vector<double>& times) {
  const auto kind = parse_mixer(mixer);
  if (block_size <= 0) block_size = n;
  const MixerSpec spec(kind, n, contiguous_blocks(n, block_size, k));
  const auto c = census(spec);
  std::printf("mixer,n,block_size,terms,commuting_pairs,noncommuting_pairs,norm_sum\n");
  std::printf("%s,%d,%d,%zu,%zu,%zu,%s\n", to_string(kind).c_str(), n, block_size, c.terms, c.commuting_pairs,
              c.noncommuting_pairs, c.norm_sum ? format_double(*c.norm_sum).c_str() : "n/a");
  if (!times.empty() && c.norm_sum) {
    std::printf("\nt,first_order_bound\n");
    for (double t : times) std::printf("%s,%s\n", format_double(t).c_str(), format_double(first_order_bound(c, t)).c_str());
  }
  return 0;
}

int cmd_error_scan(const std::string& mixer, int n, int k, int block_size, double beta_min, int points) {
  const auto kind = parse_mixer(mixer);
  if (block_size <= 0) block_size = n;
  const MixerSpec spec(kind, n, contiguous_blocks(n, block_size, k));
  const auto grid = decade_grid(beta_min, points);
  const auto c = census(spec);
  std::printf("beta,empirical_error,first_order_bound\n");
  for (double b : grid)
    std::printf("%s,%s,%s\n", format_double(b).c_str(), format_double(empirical_step_error(spec, b)).c_str(),
                format_double(first_order_bound(c, b)).c_str());
  const auto slope = error_scaling_exponent(spec, grid);
  std::printf("\nscaling_exponent,%s\n", slope ? format_double(*slope).c_str() : "n/a");
  return 0;
}

int cmd_tsp_check(int cities, int steps, double beta) {
  std::printf("cities,qubits,plaquettes,pauli_strings,commutator_norm,steps,beta,leakage\n");
  const auto h = build_tsp_mixer(cities);
  const std::string norm = cities <= kTspDenseCityCap ? format_double(feasibility_commutation_norm(cities)) : "n/a";
  auto s = StateVector::basis(cities * cities, permutation_states(cities).front());
  for (int i = 0; i < steps; ++i) trotter_tsp_step(s, cities, beta);
  const double leak = std::max(0.0, 1.0 - permutation_mass(s, cities));
  std::printf("%d,%d,%zu,%zu,%s,%d,%s,%s\n", cities, cities * cities, plaquettes(cities).size(), h.size(), norm.c_str(),
              steps, format_double(beta).c_str(), format_double(leak).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kmix: XY-mixer adiabatic evolution experiments"};
  app.require_subcommand(1);

  std::string config, output;
  int threads = 0;
  auto* run = app.add_subcommand("run", "Run an experiment sweep from a JSON config and write CSV");
  run->add_option("--config", config, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--output", output, "Override the config's output path");
  run->add_option("--threads", threads, "Worker threads (default: KMIX_THREADS or 1)");

  std::string mixer = "xy-full";
  int n = 4, k = 1, block_size = 0, points = 10, cities = 3, steps = 100;
  double beta_min = 0.01, beta = 0.3;
  std::vector<double> times;
  auto* cen = app.add_subcommand("census", "Count (non-)commuting edge-term pairs of a mixer");
  cen->add_option("--mixer", mixer, "x, xy-full or xy-ring");
  cen->add_option("--n", n, "Qubits")->required();
  cen->add_option("--k", k, "Hamming weight per block");
  cen->add_option("--block-size", block_size, "Split qubits into contiguous blocks of this size");
  cen->add_option("--t", times, "Evaluate the first-order bound at these times");

  auto* scan = app.add_subcommand("error-scan", "Single-step Trotter error over a decade of beta");
  scan->add_option("--mixer", mixer, "x, xy-full or xy-ring");
  scan->add_option("--n", n, "Qubits")->required();
  scan->add_option("--k", k, "Hamming weight per block");
  scan->add_option("--block-size", block_size, "Split qubits into contiguous blocks of this size");
  scan->add_option("--beta-min", beta_min, "Smallest beta; the grid spans [beta_min, 10 beta_min]");
  scan->add_option("--points", points, "Grid points")->check(CLI::Range(2, 1000));

  auto* tsp = app.add_subcommand("tsp-check", "Plaquette mixer closure checks");
  tsp->add_option("--cities", cities, "Number of cities")->required()->check(CLI::Range(2, 4));
  tsp->add_option("--steps", steps, "Trotter steps from a permutation state");
  tsp->add_option("--beta", beta, "Step angle");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(config, output, threads);
    if (*cen) return cmd_census(mixer, n, block_size, k, times);
    if (*scan) return cmd_error_scan(mixer, n, k, block_size, beta_min, points);
    if (*tsp) return cmd_tsp_check(cities, steps, beta);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
