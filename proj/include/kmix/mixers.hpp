#pragma once

// Mixer Hamiltonians (X, blocked full-XY, XY-ring), their initial states,
// and exact or Trotterized single-step evolution.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kmix/pauli.hpp"
#include "kmix/statevector.hpp"
#include "kmix/subspace.hpp"

namespace kmix {

enum class MixerKind { X, XYFullBlocked, XYRing };

inline std::string to_string(MixerKind k) {
  switch (k) {
    case MixerKind::X: return "x";
    case MixerKind::XYFullBlocked: return "xy";
    case MixerKind::XYRing: return "xy-ring";
  }
  return "?";
}

using Edge = std::pair<int, int>;

/// Declarative mixer: kind, constraint blocks and the deterministic Trotter edge order.
///
/// Blocks are kept in ascending order of their first qubit and each block's
/// qubits ascending. For the X kind blocks are metadata only (the penalty lives
/// in the problem Hamiltonian) and no edges are generated.
class MixerSpec {
 public:
  MixerSpec(MixerKind kind, int n, std::vector<HammingBlock> blocks) : kind_(kind), n_(n), blocks_(std::move(blocks)) {
    if (n < 1 || n > kStateQubitCap) throw std::invalid_argument("MixerSpec: bad register size");
    BasisIndex covered = 0;
    for (auto& b : blocks_) {
      if (b.qubits.empty()) throw std::invalid_argument("MixerSpec: empty block");
      std::sort(b.qubits.begin(), b.qubits.end());
      if (std::adjacent_find(b.qubits.begin(), b.qubits.end()) != b.qubits.end())
        throw std::invalid_argument("MixerSpec: repeated qubit in block");
      for (int q : b.qubits)
        if (q < 0 || q >= n) throw std::out_of_range("MixerSpec: block qubit outside register");
      if (b.k < 0 || b.k > static_cast<int>(b.qubits.size()))
        throw std::invalid_argument("MixerSpec: block weight out of range");
      const BasisIndex m = b.mask();
      if (m & covered) throw std::invalid_argument("MixerSpec: blocks overlap");
      covered |= m;
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const HammingBlock& a, const HammingBlock& b) { return a.qubits.front() < b.qubits.front(); });
    for (const auto& b : blocks_) edges_.push_back(make_edges(b));
  }

  MixerKind kind() const { return kind_; }
  int n() const { return n_; }
  bool is_xy() const { return kind_ != MixerKind::X; }
  const std::vector<HammingBlock>& blocks() const { return blocks_; }
  /// Edge list per block, in Trotter application order.
  const std::vector<std::vector<Edge>>& edges() const { return edges_; }

  std::size_t edge_count() const {
    std::size_t c = 0;
    for (const auto& e : edges_) c += e.size();
    return c;
  }

 private:
  std::vector<Edge> make_edges(const HammingBlock& b) const {
    std::vector<Edge> out;
    const auto& q = b.qubits;
    const std::size_t m = q.size();
    if (kind_ == MixerKind::XYFullBlocked) {
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) out.emplace_back(q[i], q[j]);
    } else if (kind_ == MixerKind::XYRing && m >= 2) {
      for (std::size_t i = 0; i + 1 < m; ++i) out.emplace_back(q[i], q[i + 1]);
      // Closing edge; for two qubits it duplicates (q0, q1) and is dropped.
      if (m > 2) out.emplace_back(q[m - 1], q[0]);
    }
    return out;
  }

  MixerKind kind_;
  int n_;
  std::vector<HammingBlock> blocks_;
  std::vector<std::vector<Edge>> edges_;
};

/// One block covering every qubit.
inline MixerSpec single_block_spec(MixerKind kind, int n, int k) {
  HammingBlock b;
  for (int q = 0; q < n; ++q) b.qubits.push_back(q);
  b.k = k;
  return MixerSpec(kind, n, {b});
}

/// -(X_i X_j + Y_i Y_j).
inline PauliSum xy_edge_term(int i, int j) {
  PauliSum h;
  h.add(-1.0, PauliString{{i, Axis::X}, {j, Axis::X}});
  h.add(-1.0, PauliString{{i, Axis::Y}, {j, Axis::Y}});
  h.canonicalize();
  return h;
}

/// XY kinds: -sum_blocks sum_edges (XX + YY). X kind: -sum_i X_i.
inline PauliSum build_mixer(const MixerSpec& spec) {
  PauliSum h;
  if (spec.kind() == MixerKind::X) {
    for (int q = 0; q < spec.n(); ++q) h.add(-1.0, PauliString::single(q, Axis::X));
  } else {
    for (const auto& block_edges : spec.edges())
      for (auto [i, j] : block_edges) {
        h.add(-1.0, PauliString{{i, Axis::X}, {j, Axis::X}});
        h.add(-1.0, PauliString{{i, Axis::Y}, {j, Axis::Y}});
      }
  }
  h.canonicalize();
  return h;
}

/// Mixer restricted to one block's edges.
inline PauliSum build_block_mixer(const MixerSpec& spec, std::size_t block) {
  PauliSum h;
  for (auto [i, j] : spec.edges().at(block)) h += xy_edge_term(i, j);
  return h;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

/// Uniform superposition of weight-k basis states on n qubits.
inline StateVector dicke_state(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("dicke_state: k out of range");
  auto sector = hamming_sector(n, k);
  std::vector<cplx> amps(std::size_t{1} << n, cplx(0.0, 0.0));
  const double a = 1.0 / std::sqrt(static_cast<double>(sector.size()));
  for (BasisIndex x : sector.indices) amps[static_cast<std::size_t>(x)] = a;
  return StateVector::from_amplitudes(n, std::move(amps));
}

/// Tensor product of per-block Dicke states; qubits outside all blocks are |0>.
inline StateVector blocked_dicke_state(int n, std::span<const HammingBlock> blocks) {
  double count = 1.0;
  for (const auto& b : blocks) {
    if (b.k < 0 || b.k > static_cast<int>(b.qubits.size()))
      throw std::invalid_argument("blocked_dicke_state: k out of range");
    count *= binomial(static_cast<int>(b.qubits.size()), b.k);
  }
  // Restrict the free qubits to |0> by adding them as weight-0 blocks.
  std::vector<HammingBlock> all(blocks.begin(), blocks.end());
  BasisIndex covered = 0;
  for (const auto& b : blocks) covered |= b.mask();
  for (int q = 0; q < n; ++q)
    if (!((covered >> q) & 1U)) all.push_back({{q}, 0});
  auto sector = blocked_sector(n, all);
  std::vector<cplx> amps(std::size_t{1} << n, cplx(0.0, 0.0));
  const double a = 1.0 / std::sqrt(count);
  for (BasisIndex x : sector.indices) amps[static_cast<std::size_t>(x)] = a;
  return StateVector::from_amplitudes(n, std::move(amps));
}

/// Blocked Dicke state for XY kinds; |+>^n for the X kind.
inline StateVector initial_state(const MixerSpec& spec) {
  if (spec.kind() == MixerKind::X) return StateVector::uniform(spec.n());
  return blocked_dicke_state(spec.n(), spec.blocks());
}

/// One first-order pass: prod over edges of exp(-i beta * -(XX + YY)), XX then YY per edge.
/// The X kind applies exp(i beta X_q) on every qubit, which is exact.
inline void trotter_mixer_step(StateVector& s, const MixerSpec& spec, double beta) {
  if (s.n() != spec.n()) throw std::invalid_argument("trotter_mixer_step: register mismatch");
  if (spec.kind() == MixerKind::X) {
    for (int q = 0; q < s.n(); ++q) apply_rx(s, q, -2.0 * beta);
    return;
  }
  for (const auto& block_edges : spec.edges())
    for (auto [i, j] : block_edges) {
      apply_xx(s, i, j, -beta);
      apply_yy(s, i, j, -beta);
    }
}

/// Exact exp(-i beta H_mixer) with eigensystems computed once and reused across steps.
///
/// XY kinds decompose each block into Hamming-weight sectors of its local
/// register; a sector's eigensystem is built the first time amplitude is found
/// in it. The X kind exponentiates each single-qubit term through the same
/// eigendecomposition path.
class ExactMixer {
 public:
  explicit ExactMixer(const MixerSpec& spec) : spec_(spec) {
    if (spec.kind() == MixerKind::X) {
      PauliSum minus_x;
      minus_x.add(-1.0, PauliString::single(0, Axis::X));
      single_qubit_ = HermitianPropagator(to_dense(minus_x, 1));
      return;
    }
    for (std::size_t b = 0; b < spec.blocks().size(); ++b) {
      const auto& qubits = spec.blocks()[b].qubits;
      const int m = static_cast<int>(qubits.size());
      std::map<int, int> local;
      for (int i = 0; i < m; ++i) local[qubits[static_cast<std::size_t>(i)]] = i;
      BlockData data;
      data.qubits = qubits;
      data.hamiltonian = relabel(build_block_mixer(spec, b), local);
      data.sectors.resize(static_cast<std::size_t>(m) + 1);
      for (int w = 0; w <= m; ++w)
        for (BasisIndex l : hamming_sector(m, w).indices)
          data.sectors[static_cast<std::size_t>(w)].offsets.push_back(deposit(l, qubits));
      blocks_.push_back(std::move(data));
    }
  }

  const MixerSpec& spec() const { return spec_; }

  void apply(StateVector& s, double beta) {
    if (s.n() != spec_.n()) throw std::invalid_argument("ExactMixer: register mismatch");
    if (spec_.kind() == MixerKind::X) {
      const Eigen::MatrixXcd u = single_qubit_.unitary(beta);
      const Mat2 m{u(0, 0), u(0, 1), u(1, 0), u(1, 1)};
      for (int q = 0; q < s.n(); ++q) apply_single(s, q, m);
      return;
    }
    for (auto& block : blocks_) apply_block(s, block, beta);
  }

 private:
  struct Sector {
    bool ready = false;
    std::vector<BasisIndex> offsets;  // global bit patterns of the local sector states
    HermitianPropagator prop;
  };
  struct BlockData {
    std::vector<int> qubits;
    PauliSum hamiltonian;  // on local qubits 0..m-1
    std::vector<Sector> sectors;
  };

  static BasisIndex deposit(BasisIndex local, const std::vector<int>& qubits) {
    BasisIndex g = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i)
      if ((local >> i) & 1U) g |= BasisIndex{1} << qubits[i];
    return g;
  }

  void prepare(BlockData& block, int w) {
    Sector& sec = block.sectors[static_cast<std::size_t>(w)];
    const int m = static_cast<int>(block.qubits.size());
    auto basis = hamming_sector(m, w);
    if (basis.size() > kDenseSubspaceCap)
      throw CapacityError("ExactMixer: sector dimension " + std::to_string(basis.size()) + " exceeds dense cap");
    sec.prop = HermitianPropagator(restrict_to(block.hamiltonian, basis));
    sec.ready = true;
  }

  void apply_block(StateVector& s, BlockData& block, double beta) {
    BasisIndex mask = 0;
    for (int q : block.qubits) mask |= BasisIndex{1} << q;
    const int m = static_cast<int>(block.qubits.size());
    const BasisIndex rest_mask = (s.dim() - 1) & ~mask;
    for (int w = 0; w <= m; ++w) {
      Sector& sec = block.sectors[static_cast<std::size_t>(w)];
      const std::vector<BasisIndex>& offsets = sec.offsets;
      const auto dim = static_cast<Eigen::Index>(offsets.size());
      Eigen::VectorXcd v(dim);
      // Enumerate every configuration of the qubits outside the block.
      BasisIndex rest = 0;
      while (true) {
        bool nonzero = false;
        for (Eigen::Index i = 0; i < dim; ++i) {
          v(i) = s[rest | offsets[static_cast<std::size_t>(i)]];
          nonzero = nonzero || v(i) != cplx(0.0, 0.0);
        }
        if (nonzero) {
          if (!sec.ready) prepare(block, w);
          sec.prop.apply(beta, v);
          for (Eigen::Index i = 0; i < dim; ++i) s[rest | offsets[static_cast<std::size_t>(i)]] = v(i);
        }
        if (rest == rest_mask) break;
        rest = ((rest | ~rest_mask) + 1) & rest_mask;  // next subset of rest_mask
      }
    }
  }

  MixerSpec spec_;
  HermitianPropagator single_qubit_;
  std::vector<BlockData> blocks_;
};

inline void exact_mixer_step(StateVector& s, const MixerSpec& spec, double beta) {
  ExactMixer(spec).apply(s, beta);
}

/// Off-ray residual || H_ring|D> - <D|H_ring|D> |D> || for the n-qubit ring mixer.
inline double ring_dicke_residual(int n, int k) {
  const auto spec = single_block_spec(MixerKind::XYRing, n, k);
  const auto d = dicke_state(n, k);
  const auto hd = apply_pauli_sum(build_mixer(spec), d);
  cplx expectation{0.0, 0.0};
  for (std::size_t x = 0; x < hd.size(); ++x) expectation += std::conj(d[x]) * hd[x];
  double r2 = 0.0;
  for (std::size_t x = 0; x < hd.size(); ++x) r2 += std::norm(hd[x] - expectation * d[x]);
  return std::sqrt(r2);
}

/// For each weight-k state (bitstring text, char i = x_i), the number of distinct
/// weight-k states reachable by one ring-edge exchange.
inline std::map<std::string, int> ring_degree_table(int n, int k) {
  const auto spec = single_block_spec(MixerKind::XYRing, n, k);
  std::map<std::string, int> table;
  for (BasisIndex x : hamming_sector(n, k).indices) {
    std::set<BasisIndex> reach;
    for (auto [i, j] : spec.edges().front()) {
      if (((x >> i) & 1U) != ((x >> j) & 1U)) reach.insert(x ^ ((BasisIndex{1} << i) | (BasisIndex{1} << j)));
    }
    table[index_to_bits(x, n)] = static_cast<int>(reach.size());
  }
  return table;
}

}  // namespace kmix
