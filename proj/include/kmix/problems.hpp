#pragma once

// Problem instances, their binary encodings, and exhaustive classical optima.
//
// Portfolio optimization, multi-car paint shop (MCPS) and a path-based
// multi-commodity flow problem (MCFP). Each encoding keeps the objective and the
// block-constraint penalty as separate models so that penalties evaluate to
// exactly zero on feasible bitstrings.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "kmix/errors.hpp"
#include "kmix/ising.hpp"
#include "kmix/rng.hpp"
#include "kmix/statevector.hpp"
#include "kmix/subspace.hpp"

namespace kmix {

/// XY: block constraints are enforced by the mixer. X: they are folded into the Hamiltonian as penalties.
enum class Flavor { XY, X };

/// Upper bound on the number of feasible bitstrings an exhaustive scan will visit.
inline constexpr double kFeasibleScanCap = 1e7;

/// P * (sum_i w_i x_i - target)^2 expanded over binary variables.
inline void add_equality_penalty(IsingModel& m, const std::vector<int>& vars, const std::vector<double>& weights,
                                 double target, double penalty) {
  for (std::size_t a = 0; a < vars.size(); ++a) {
    m.add_linear(vars[a], penalty * (weights[a] * weights[a] - 2.0 * target * weights[a]));
    for (std::size_t b = a + 1; b < vars.size(); ++b)
      m.add_quadratic(vars[a], vars[b], penalty * 2.0 * weights[a] * weights[b]);
  }
  m.add_offset(penalty * target * target);
}

struct EncodedProblem {
  std::string problem;
  Flavor flavor = Flavor::XY;
  IsingModel objective;      // what the XY flavor minimizes
  IsingModel block_penalty;  // zero model for the XY flavor
  std::vector<HammingBlock> blocks;
  DiagonalHamiltonian hf;

  int n() const { return objective.n(); }
};

/// hf[x] = objective(x) (+ block_penalty(x) for the X flavor).
inline EncodedProblem make_encoded(std::string problem, Flavor flavor, IsingModel objective, IsingModel penalty,
                                   std::vector<HammingBlock> blocks) {
  EncodedProblem e;
  e.problem = std::move(problem);
  e.flavor = flavor;
  e.hf = ising_to_diagonal(objective);
  if (flavor == Flavor::X) {
    const auto pen = ising_to_diagonal(penalty);
    for (std::size_t x = 0; x < e.hf.energies.size(); ++x) e.hf.energies[x] += pen.energies[x];
  } else {
    penalty = IsingModel(objective.n());
  }
  e.objective = std::move(objective);
  e.block_penalty = std::move(penalty);
  e.blocks = std::move(blocks);
  return e;
}

// --- Portfolio optimization --------------------------------------------------

struct PortfolioInstance {
  int n = 0;
  std::vector<double> returns;
  std::vector<double> covariance;  // row-major n x n
  double risk_factor = 1.0;
  int k = 1;
  double penalty = 1000.0;

  double cov(int i, int j) const {
    return covariance[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
  }
};

struct PortfolioOptions {
  double return_lo = 0.0;
  double return_hi = 100.0;
  double factor_scale = 2.0;  // A_ij ~ N(0, factor_scale^2), S = A^T A / n
  double risk_factor = 1.0;
  double penalty = 1000.0;
};

inline void validate(const PortfolioInstance& p) {
  if (p.n < 2) throw std::invalid_argument("portfolio: need at least 2 assets");
  const auto nn = static_cast<std::size_t>(p.n);
  if (p.returns.size() != nn || p.covariance.size() != nn * nn)
    throw std::invalid_argument("portfolio: field sizes do not match n");
  if (p.k < 1 || p.k > p.n - 1) throw std::invalid_argument("portfolio: k must lie in [1, n-1]");
  if (!(p.risk_factor > 0.0)) throw std::invalid_argument("portfolio: risk factor must be positive");
  Eigen::MatrixXd s(p.n, p.n);
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j) {
      if (std::abs(p.cov(i, j) - p.cov(j, i)) > 1e-12) throw std::invalid_argument("portfolio: covariance not symmetric");
      s(i, j) = p.cov(i, j);
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9) throw std::invalid_argument("portfolio: covariance not PSD");
}

/// Draw order: returns r_0..r_{n-1}; factor matrix A row-major; k.
inline PortfolioInstance generate_portfolio(int n, std::uint64_t seed, const PortfolioOptions& opt = {}) {
  if (n < 2) throw std::invalid_argument("generate_portfolio: n must be >= 2");
  SplitMix64 rng(seed);
  PortfolioInstance p;
  p.n = n;
  p.risk_factor = opt.risk_factor;
  p.penalty = opt.penalty;
  for (int i = 0; i < n; ++i) p.returns.push_back(rng.uniform(opt.return_lo, opt.return_hi));
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = opt.factor_scale * rng.normal();
  Eigen::MatrixXd s = a.transpose() * a / static_cast<double>(n);
  s = 0.5 * (s + s.transpose()).eval();
  p.covariance.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p.covariance[static_cast<std::size_t>(i * n + j)] = s(i, j);
  const int klo = std::max(1, n / 5);
  const int khi = std::min(n - 1, std::max(klo, (2 * n) / 3));
  p.k = rng.uniform_int(klo, khi);
  double best_single = -1e300;
  for (int i = 0; i < n; ++i) best_single = std::max(best_single, p.returns[i] - p.risk_factor * p.cov(i, i));
  if (best_single > p.penalty)
    throw std::logic_error("generate_portfolio: penalty factor does not dominate the best single-asset profit");
  validate(p);
  return p;
}

/// mu x^T S x - r^T x with the cardinality block ({0..n-1}, k).
inline EncodedProblem encode_portfolio(const PortfolioInstance& p, Flavor flavor) {
  validate(p);
  IsingModel obj(p.n);
  for (int i = 0; i < p.n; ++i) {
    obj.add_linear(i, p.risk_factor * p.cov(i, i) - p.returns[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < p.n; ++j) obj.add_quadratic(i, j, 2.0 * p.risk_factor * p.cov(i, j));
  }
  HammingBlock block;
  block.qubits.resize(static_cast<std::size_t>(p.n));
  std::iota(block.qubits.begin(), block.qubits.end(), 0);
  block.k = p.k;
  IsingModel pen(p.n);
  add_equality_penalty(pen, block.qubits, std::vector<double>(block.qubits.size(), 1.0), p.k, p.penalty);
  return make_encoded("portfolio", flavor, std::move(obj), std::move(pen), {block});
}

// --- Multi-car paint shop ----------------------------------------------------

struct MCPSInstance {
  int n = 0;
  std::vector<int> ensemble_of;  // car -> ensemble id
  std::vector<int> counts;       // ensemble id -> number of blue cars
  double penalty = 1000.0;

  int ensembles() const { return static_cast<int>(counts.size()); }

  std::vector<std::vector<int>> members() const {
    std::vector<std::vector<int>> m(counts.size());
    for (int i = 0; i < n; ++i) m.at(static_cast<std::size_t>(ensemble_of[static_cast<std::size_t>(i)])).push_back(i);
    return m;
  }
};

inline void validate(const MCPSInstance& inst) {
  if (inst.n < 1 || static_cast<int>(inst.ensemble_of.size()) != inst.n)
    throw std::invalid_argument("mcps: ensemble assignment must cover every car");
  for (int q : inst.ensemble_of)
    if (q < 0 || q >= inst.ensembles()) throw std::invalid_argument("mcps: ensemble id out of range");
  auto m = inst.members();
  for (std::size_t q = 0; q < m.size(); ++q) {
    if (m[q].empty()) throw std::invalid_argument("mcps: empty ensemble");
    if (inst.counts[q] < 0 || inst.counts[q] > static_cast<int>(m[q].size()))
      throw std::invalid_argument("mcps: blue count exceeds ensemble size");
  }
}

/// Cars are shuffled and cut into m ensembles of near-equal size (larger ones first);
/// an ensemble of size c >= 2 gets k uniform in [1, c-1], a singleton k in {0, 1}.
inline MCPSInstance generate_mcps(int n, int m, std::uint64_t seed, double penalty = 1000.0) {
  if (n < 1 || m < 1 || m > n) throw std::invalid_argument("generate_mcps: need 1 <= m <= n");
  SplitMix64 rng(seed);
  std::vector<int> cars(static_cast<std::size_t>(n));
  std::iota(cars.begin(), cars.end(), 0);
  rng.shuffle(cars);
  MCPSInstance inst;
  inst.n = n;
  inst.penalty = penalty;
  inst.ensemble_of.assign(static_cast<std::size_t>(n), 0);
  std::size_t pos = 0;
  for (int q = 0; q < m; ++q) {
    const int size = n / m + (q < n % m ? 1 : 0);
    for (int c = 0; c < size; ++c) inst.ensemble_of[static_cast<std::size_t>(cars[pos++])] = q;
    inst.counts.push_back(size >= 2 ? rng.uniform_int(1, size - 1) : rng.uniform_int(0, 1));
  }
  validate(inst);
  return inst;
}

/// sum_{i=0}^{n-2} (x_i + x_{i+1} - 2 x_i x_{i+1}) with one block per ensemble.
inline EncodedProblem encode_mcps(const MCPSInstance& inst, Flavor flavor) {
  validate(inst);
  IsingModel obj(inst.n);
  for (int i = 0; i + 1 < inst.n; ++i) {
    obj.add_linear(i, 1.0);
    obj.add_linear(i + 1, 1.0);
    obj.add_quadratic(i, i + 1, -2.0);
  }
  IsingModel pen(inst.n);
  std::vector<HammingBlock> blocks;
  auto members = inst.members();
  for (std::size_t q = 0; q < members.size(); ++q) {
    blocks.push_back({members[q], inst.counts[q]});
    add_equality_penalty(pen, members[q], std::vector<double>(members[q].size(), 1.0), inst.counts[q], inst.penalty);
  }
  return make_encoded("mcps", flavor, std::move(obj), std::move(pen), std::move(blocks));
}

// --- Multi-commodity flow ----------------------------------------------------

struct Arc {
  int from = 0;
  int to = 0;
  int capacity = 0;
  int cost = 0;
};

struct Commodity {
  int source = 0;
  int sink = 0;
  int demand = 0;
};

/// A simple path as a sequence of arc indices.
using ArcPath = std::vector<int>;

struct MCFPInstance {
  int nodes = 0;
  std::vector<Arc> arcs;
  std::vector<Commodity> commodities;
  std::vector<std::vector<ArcPath>> paths;  // per commodity, in variable order
  double penalty = 10000.0;

  int variables() const {
    int n = 0;
    for (const auto& p : paths) n += static_cast<int>(p.size());
    return n;
  }
  int path_cost(const ArcPath& p) const {
    int c = 0;
    for (int a : p) c += arcs.at(static_cast<std::size_t>(a)).cost;
    return c;
  }
  std::vector<int> node_sequence(const ArcPath& p) const {
    std::vector<int> seq;
    if (p.empty()) return seq;
    seq.push_back(arcs[static_cast<std::size_t>(p.front())].from);
    for (int a : p) seq.push_back(arcs[static_cast<std::size_t>(a)].to);
    return seq;
  }
};

/// Ceiling on the raw number of simple paths enumerated for one commodity.
inline constexpr std::size_t kPathEnumerationCap = 100000;

/// All simple source->sink paths by depth-first search, outgoing arcs visited
/// in ascending (head node, arc index) order.
inline std::vector<ArcPath> enumerate_simple_paths(int nodes, const std::vector<Arc>& arcs, int source, int sink) {
  if (source < 0 || source >= nodes || sink < 0 || sink >= nodes)
    throw std::out_of_range("enumerate_simple_paths: endpoint outside graph");
  std::vector<std::vector<int>> out(static_cast<std::size_t>(nodes));
  for (std::size_t a = 0; a < arcs.size(); ++a) out.at(static_cast<std::size_t>(arcs[a].from)).push_back(static_cast<int>(a));
  for (auto& lst : out)
    std::sort(lst.begin(), lst.end(), [&](int a, int b) {
      return std::tie(arcs[static_cast<std::size_t>(a)].to, a) < std::tie(arcs[static_cast<std::size_t>(b)].to, b);
    });
  std::vector<ArcPath> result;
  if (source == sink) return result;
  std::vector<char> on_path(static_cast<std::size_t>(nodes), 0);
  ArcPath current;
  auto dfs = [&](auto&& self, int v) -> void {
    if (v == sink) {
      result.push_back(current);
      if (result.size() > kPathEnumerationCap) throw CapacityError("enumerate_simple_paths: too many paths");
      return;
    }
    on_path[static_cast<std::size_t>(v)] = 1;
    for (int a : out[static_cast<std::size_t>(v)]) {
      const int w = arcs[static_cast<std::size_t>(a)].to;
      if (on_path[static_cast<std::size_t>(w)]) continue;
      current.push_back(a);
      self(self, w);
      current.pop_back();
    }
    on_path[static_cast<std::size_t>(v)] = 0;
  };
  dfs(dfs, source);
  return result;
}

/// Keeps the `keep` cheapest paths; ties by node sequence, then arc sequence.
inline std::vector<ArcPath> cheapest_paths(const MCFPInstance& g, std::vector<ArcPath> paths, std::size_t keep) {
  std::stable_sort(paths.begin(), paths.end(), [&](const ArcPath& a, const ArcPath& b) {
    const int ca = g.path_cost(a);
    const int cb = g.path_cost(b);
    if (ca != cb) return ca < cb;
    const auto na = g.node_sequence(a);
    const auto nb = g.node_sequence(b);
    if (na != nb) return na < nb;
    return a < b;
  });
  if (paths.size() > keep) paths.resize(keep);
  return paths;
}

inline void validate(const MCFPInstance& g) {
  if (g.paths.size() != g.commodities.size()) throw std::invalid_argument("mcfp: one path set per commodity required");
  for (std::size_t k = 0; k < g.commodities.size(); ++k) {
    if (g.paths[k].empty()) throw std::invalid_argument("mcfp: commodity " + std::to_string(k) + " has no path");
    for (const auto& p : g.paths[k]) {
      auto seq = g.node_sequence(p);
      if (seq.front() != g.commodities[k].source || seq.back() != g.commodities[k].sink)
        throw std::invalid_argument("mcfp: path endpoints do not match commodity");
      auto sorted = seq;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("mcfp: path is not simple");
      for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (g.arcs[static_cast<std::size_t>(p[i])].to != g.arcs[static_cast<std::size_t>(p[i + 1])].from)
          throw std::invalid_argument("mcfp: path arcs are not contiguous");
    }
  }
}

struct MCFPOptions {
  int nodes = 5;
  double arc_probability = 0.5;
  int commodities = 2;
  int max_paths_per_commodity = 8;
  int target_variables = 0;  // 0: keep up to the cap per commodity
  double penalty = 10000.0;
  int max_attempts = 1000;
};

/// Random digraph with single-digit capacities, costs and demands.
///
/// Each attempt draws, in order: arcs (a, b) for a, b ascending with a != b, each
/// kept with probability arc_probability and given capacity then cost in [1, 9];
/// then per commodity source, sink and demand. Attempts repeat with the same
/// stream until every commodity has enough paths.
inline MCFPInstance generate_mcfp(std::uint64_t seed, const MCFPOptions& opt = {}) {
  if (opt.nodes < 2 || opt.commodities < 1 || opt.max_paths_per_commodity < 1)
    throw std::invalid_argument("generate_mcfp: invalid size parameters");
  std::vector<std::size_t> quota(static_cast<std::size_t>(opt.commodities),
                                 static_cast<std::size_t>(opt.max_paths_per_commodity));
  if (opt.target_variables > 0) {
    for (int k = 0; k < opt.commodities; ++k)
      quota[static_cast<std::size_t>(k)] = static_cast<std::size_t>(opt.target_variables / opt.commodities +
                                                                    (k < opt.target_variables % opt.commodities ? 1 : 0));
    for (auto q : quota)
      if (q < 1 || q > static_cast<std::size_t>(opt.max_paths_per_commodity))
        throw std::invalid_argument("generate_mcfp: target variables incompatible with commodities and path cap");
  }
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    MCFPInstance g;
    g.nodes = opt.nodes;
    g.penalty = opt.penalty;
    for (int a = 0; a < opt.nodes; ++a)
      for (int b = 0; b < opt.nodes; ++b) {
        if (a == b) continue;
        if (rng.uniform() < opt.arc_probability) {
          Arc arc{a, b, 0, 0};
          arc.capacity = rng.uniform_int(1, 9);
          arc.cost = rng.uniform_int(1, 9);
          g.arcs.push_back(arc);
        }
      }
    for (int k = 0; k < opt.commodities; ++k) {
      Commodity c;
      c.source = rng.uniform_int(0, opt.nodes - 1);
      c.sink = rng.uniform_int(0, opt.nodes - 2);
      if (c.sink >= c.source) ++c.sink;
      c.demand = rng.uniform_int(1, 9);
      g.commodities.push_back(c);
    }
    bool ok = true;
    for (std::size_t k = 0; k < g.commodities.size() && ok; ++k) {
      auto all = enumerate_simple_paths(g.nodes, g.arcs, g.commodities[k].source, g.commodities[k].sink);
      const std::size_t need = opt.target_variables > 0 ? quota[k] : 1;
      if (all.size() < need) {
        ok = false;
        break;
      }
      g.paths.push_back(cheapest_paths(g, std::move(all), quota[k]));
    }
    if (!ok) continue;
    validate(g);
    return g;
  }
  throw std::runtime_error("generate_mcfp: no instance with the requested path counts after " +
                           std::to_string(opt.max_attempts) + " attempts");
}

/// Variable index of path p of commodity k (commodity-major).
inline int mcfp_variable(const MCFPInstance& g, std::size_t k, std::size_t p) {
  int v = 0;
  for (std::size_t j = 0; j < k; ++j) v += static_cast<int>(g.paths[j].size());
  return v + static_cast<int>(p);
}

/// Path cost objective plus P * sum_e (load_e - u_e)^2 (equality capacity);
/// one 1-hot block per commodity.
inline EncodedProblem encode_mcfp(const MCFPInstance& g, Flavor flavor) {
  validate(g);
  const int n = g.variables();
  IsingModel obj(n);
  std::vector<std::vector<int>> vars_on_arc(g.arcs.size());
  std::vector<std::vector<double>> demand_on_arc(g.arcs.size());
  std::vector<HammingBlock> blocks;
  IsingModel pen(n);
  for (std::size_t k = 0; k < g.paths.size(); ++k) {
    HammingBlock block{{}, 1};
    for (std::size_t p = 0; p < g.paths[k].size(); ++p) {
      const int v = mcfp_variable(g, k, p);
      block.qubits.push_back(v);
      obj.add_linear(v, g.path_cost(g.paths[k][p]));
      for (int a : g.paths[k][p]) {
        vars_on_arc[static_cast<std::size_t>(a)].push_back(v);
        demand_on_arc[static_cast<std::size_t>(a)].push_back(g.commodities[k].demand);
      }
    }
    add_equality_penalty(pen, block.qubits, std::vector<double>(block.qubits.size(), 1.0), 1.0, g.penalty);
    blocks.push_back(std::move(block));
  }
  for (std::size_t a = 0; a < g.arcs.size(); ++a)
    add_equality_penalty(obj, vars_on_arc[a], demand_on_arc[a], g.arcs[a].capacity, g.penalty);
  return make_encoded("mcfp", flavor, std::move(obj), std::move(pen), std::move(blocks));
}

/// Sum over arcs of |load_e - u_e| for a selection given as a basis index.
inline long capacity_violation(const MCFPInstance& g, BasisIndex selection) {
  std::vector<long> load(g.arcs.size(), 0);
  for (std::size_t k = 0; k < g.paths.size(); ++k)
    for (std::size_t p = 0; p < g.paths[k].size(); ++p)
      if ((selection >> mcfp_variable(g, k, p)) & 1U)
        for (int a : g.paths[k][p]) load[static_cast<std::size_t>(a)] += g.commodities[k].demand;
  long v = 0;
  for (std::size_t a = 0; a < g.arcs.size(); ++a) v += std::labs(load[a] - g.arcs[a].capacity);
  return v;
}

/// Two parallel unit-cost arcs s->t of capacity sum(S)/2 and one commodity per
/// element. Returns nullopt when sum(S) is odd (no balanced split can exist).
inline std::optional<MCFPInstance> partition_to_mcfp(const std::vector<int>& values, double penalty = 10000.0) {
  if (values.empty()) throw std::invalid_argument("partition_to_mcfp: empty multiset");
  long total = 0;
  for (int v : values) {
    if (v < 1) throw std::invalid_argument("partition_to_mcfp: elements must be positive");
    total += v;
  }
  if (total % 2 != 0) return std::nullopt;
  MCFPInstance g;
  g.nodes = 2;
  g.penalty = penalty;
  const int half = static_cast<int>(total / 2);
  g.arcs = {{0, 1, half, 1}, {0, 1, half, 1}};
  for (int v : values) {
    g.commodities.push_back({0, 1, v});
    g.paths.push_back({{0}, {1}});
  }
  validate(g);
  return g;
}

/// True when some one-path-per-commodity selection meets every capacity exactly.
inline bool has_capacity_exact_selection(const MCFPInstance& g) {
  std::vector<HammingBlock> blocks;
  for (std::size_t k = 0; k < g.paths.size(); ++k) {
    HammingBlock b{{}, 1};
    for (std::size_t p = 0; p < g.paths[k].size(); ++p) b.qubits.push_back(mcfp_variable(g, k, p));
    blocks.push_back(std::move(b));
  }
  for (BasisIndex x : blocked_sector(g.variables(), blocks).indices)
    if (capacity_violation(g, x) == 0) return true;
  return false;
}

// --- Exhaustive optimum ------------------------------------------------------

struct Optimum {
  double value = 0.0;
  std::vector<BasisIndex> optima;  // every feasible minimizer, ascending
  std::size_t feasible_count = 0;
};

/// Relative tolerance used to collect tied minimizers.
inline constexpr double kTieTol = 1e-9;

inline double feasible_set_size(int n, const std::vector<HammingBlock>& blocks) {
  double count = 1.0;
  int covered = 0;
  for (const auto& b : blocks) {
    const int m = static_cast<int>(b.qubits.size());
    double c = 1.0;
    for (int i = 1; i <= b.k; ++i) c = c * (m - b.k + i) / i;
    count *= std::round(c);
    covered += m;
  }
  return count * std::pow(2.0, n - covered);
}

/// Scans every block-feasible bitstring of the Hamiltonian.
inline Optimum brute_force_optimum(const EncodedProblem& enc) {
  if (feasible_set_size(enc.n(), enc.blocks) > kFeasibleScanCap)
    throw CapacityError("brute_force_optimum: feasible set too large to enumerate");
  auto basis = blocked_sector(enc.n(), enc.blocks);
  Optimum out;
  out.feasible_count = basis.size();
  if (basis.indices.empty()) return out;
  double best = std::numeric_limits<double>::infinity();
  for (BasisIndex x : basis.indices) best = std::min(best, enc.hf.energies[static_cast<std::size_t>(x)]);
  const double tol = kTieTol * std::max(1.0, std::abs(best));
  for (BasisIndex x : basis.indices)
    if (enc.hf.energies[static_cast<std::size_t>(x)] <= best + tol) out.optima.push_back(x);
  out.value = best;
  return out;
}

// --- Serialization -----------------------------------------------------------

using nlohmann::json;

inline json to_json(const PortfolioInstance& p) {
  return json{{"type", "portfolio"}, {"n", p.n},         {"returns", p.returns},
              {"covariance", p.covariance}, {"risk_factor", p.risk_factor}, {"k", p.k},
              {"penalty", p.penalty}};
}

inline PortfolioInstance portfolio_from_json(const json& j) {
  if (j.at("type") != "portfolio") throw std::invalid_argument("instance type is not portfolio");
  PortfolioInstance p;
  j.at("n").get_to(p.n);
  j.at("returns").get_to(p.returns);
  j.at("covariance").get_to(p.covariance);
  j.at("risk_factor").get_to(p.risk_factor);
  j.at("k").get_to(p.k);
  j.at("penalty").get_to(p.penalty);
  validate(p);
  return p;
}

inline json to_json(const MCPSInstance& m) {
  return json{{"type", "mcps"}, {"n", m.n}, {"ensemble_of", m.ensemble_of}, {"counts", m.counts}, {"penalty", m.penalty}};
}

inline MCPSInstance mcps_from_json(const json& j) {
  if (j.at("type") != "mcps") throw std::invalid_argument("instance type is not mcps");
  MCPSInstance m;
  j.at("n").get_to(m.n);
  j.at("ensemble_of").get_to(m.ensemble_of);
  j.at("counts").get_to(m.counts);
  j.at("penalty").get_to(m.penalty);
  validate(m);
  return m;
}

inline json to_json(const MCFPInstance& g) {
  json arcs = json::array();
  for (const auto& a : g.arcs) arcs.push_back({{"from", a.from}, {"to", a.to}, {"capacity", a.capacity}, {"cost", a.cost}});
  json comms = json::array();
  for (const auto& c : g.commodities) comms.push_back({{"source", c.source}, {"sink", c.sink}, {"demand", c.demand}});
  return json{{"type", "mcfp"}, {"nodes", g.nodes}, {"arcs", arcs}, {"commodities", comms},
              {"paths", g.paths}, {"penalty", g.penalty}};
}

inline MCFPInstance mcfp_from_json(const json& j) {
  if (j.at("type") != "mcfp") throw std::invalid_argument("instance type is not mcfp");
  MCFPInstance g;
  j.at("nodes").get_to(g.nodes);
  for (const auto& a : j.at("arcs"))
    g.arcs.push_back({a.at("from").get<int>(), a.at("to").get<int>(), a.at("capacity").get<int>(), a.at("cost").get<int>()});
  for (const auto& c : j.at("commodities"))
    g.commodities.push_back({c.at("source").get<int>(), c.at("sink").get<int>(), c.at("demand").get<int>()});
  j.at("paths").get_to(g.paths);
  j.at("penalty").get_to(g.penalty);
  validate(g);
  return g;
}

}  // namespace kmix
