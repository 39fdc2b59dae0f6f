#pragma once

// Dense statevector with gate kernels. Bit i of a basis index is qubit i.

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmix/errors.hpp"
#include "kmix/ising.hpp"
#include "kmix/pauli.hpp"

namespace kmix {

/// Largest register the statevector will allocate (2^30 amplitudes = 16 GiB).
inline constexpr int kStateQubitCap = 30;

using Mat2 = std::array<cplx, 4>;  // row-major {m00, m01, m10, m11}

/// A set of qubits whose Hamming weight is fixed to k.
struct HammingBlock {
  std::vector<int> qubits;
  int k = 0;

  BasisIndex mask() const {
    BasisIndex m = 0;
    for (int q : qubits) m |= BasisIndex{1} << q;
    return m;
  }
};

class StateVector {
 public:
  StateVector() = default;

  /// |index> on n qubits.
  static StateVector basis(int n, BasisIndex index = 0) {
    StateVector s(n);
    if (index >= s.dim()) throw std::out_of_range("StateVector::basis: index out of range");
    s.amps_[static_cast<std::size_t>(index)] = 1.0;
    return s;
  }

  /// |+>^n.
  static StateVector uniform(int n) {
    StateVector s(n);
    const double a = 1.0 / std::sqrt(static_cast<double>(s.dim()));
    std::fill(s.amps_.begin(), s.amps_.end(), cplx(a, 0.0));
    return s;
  }

  /// Takes ownership of raw amplitudes; the caller is responsible for normalization.
  static StateVector from_amplitudes(int n, std::vector<cplx> amps) {
    StateVector s;
    check_size(n);
    if (amps.size() != (std::size_t{1} << n))
      throw std::invalid_argument("StateVector: amplitude count must be 2^n");
    s.n_ = n;
    s.amps_ = std::move(amps);
    return s;
  }

  int n() const { return n_; }
  BasisIndex dim() const { return BasisIndex{1} << n_; }
  std::span<const cplx> amps() const { return amps_; }
  std::span<cplx> amps() { return amps_; }
  const cplx& operator[](BasisIndex i) const { return amps_[static_cast<std::size_t>(i)]; }
  cplx& operator[](BasisIndex i) { return amps_[static_cast<std::size_t>(i)]; }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }

  void check_qubit(int q) const {
    if (q < 0 || q >= n_)
      throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(n_) +
                              "-qubit register");
  }

 private:
  explicit StateVector(int n) : n_(n) {
    check_size(n);
    amps_.assign(std::size_t{1} << n, cplx(0.0, 0.0));
  }
  static void check_size(int n) {
    if (n < 0 || n > kStateQubitCap)
      throw CapacityError("StateVector: " + std::to_string(n) + " qubits outside supported range");
  }

  int n_ = 0;
  std::vector<cplx> amps_;
};

inline cplx inner(const StateVector& a, const StateVector& b) {
  if (a.n() != b.n()) throw std::invalid_argument("inner: register size mismatch");
  cplx s{0.0, 0.0};
  auto aa = a.amps();
  auto bb = b.amps();
  for (std::size_t i = 0; i < aa.size(); ++i) s += std::conj(aa[i]) * bb[i];
  return s;
}

/// Euclidean distance between amplitude vectors.
inline double distance(const StateVector& a, const StateVector& b) {
  if (a.n() != b.n()) throw std::invalid_argument("distance: register size mismatch");
  double s = 0.0;
  auto aa = a.amps();
  auto bb = b.amps();
  for (std::size_t i = 0; i < aa.size(); ++i) s += std::norm(aa[i] - bb[i]);
  return std::sqrt(s);
}

inline void apply_single(StateVector& s, int q, const Mat2& m) {
  s.check_qubit(q);
  const BasisIndex bit = BasisIndex{1} << q;
  const BasisIndex dim = s.dim();
  auto a = s.amps();
  for (BasisIndex base = 0; base < dim; base += 2 * bit) {
    for (BasisIndex off = 0; off < bit; ++off) {
      const std::size_t i0 = static_cast<std::size_t>(base + off);
      const std::size_t i1 = i0 + static_cast<std::size_t>(bit);
      const cplx a0 = a[i0];
      const cplx a1 = a[i1];
      a[i0] = m[0] * a0 + m[1] * a1;
      a[i1] = m[2] * a0 + m[3] * a1;
    }
  }
}

/// exp(-i theta/2 X).
inline void apply_rx(StateVector& s, int q, double theta) {
  const double c = std::cos(theta / 2);
  const double sn = std::sin(theta / 2);
  apply_single(s, q, {cplx(c, 0), cplx(0, -sn), cplx(0, -sn), cplx(c, 0)});
}

/// exp(-i theta/2 Y).
inline void apply_ry(StateVector& s, int q, double theta) {
  const double c = std::cos(theta / 2);
  const double sn = std::sin(theta / 2);
  apply_single(s, q, {cplx(c, 0), cplx(-sn, 0), cplx(sn, 0), cplx(c, 0)});
}

namespace detail {

template <class F>
void for_each_controlled_pair(StateVector& s, int control, int target, F&& f) {
  s.check_qubit(control);
  s.check_qubit(target);
  if (control == target) throw std::invalid_argument("controlled gate: control equals target");
  const BasisIndex cbit = BasisIndex{1} << control;
  const BasisIndex tbit = BasisIndex{1} << target;
  auto a = s.amps();
  for (BasisIndex x = 0; x < s.dim(); ++x) {
    if ((x & cbit) && !(x & tbit)) f(a[static_cast<std::size_t>(x)], a[static_cast<std::size_t>(x | tbit)]);
  }
}

}  // namespace detail

inline void apply_cx(StateVector& s, int control, int target) {
  detail::for_each_controlled_pair(s, control, target, [](cplx& a0, cplx& a1) { std::swap(a0, a1); });
}

/// Controlled-Y: Y|0> = i|1>, Y|1> = -i|0> on the target when the control is set.
inline void apply_cy(StateVector& s, int control, int target) {
  detail::for_each_controlled_pair(s, control, target, [](cplx& a0, cplx& a1) {
    const cplx t0 = a0;
    a0 = cplx(0, -1) * a1;
    a1 = cplx(0, 1) * t0;
  });
}

/// exp(-i beta X_i X_j) = CX(i,j) Rx_i(2 beta) CX(i,j).
inline void apply_xx(StateVector& s, int i, int j, double beta) {
  if (i == j) throw std::invalid_argument("apply_xx: qubits must differ");
  apply_cx(s, i, j);
  apply_rx(s, i, 2 * beta);
  apply_cx(s, i, j);
}

/// exp(-i beta Y_i Y_j) = CY(i,j) Ry_i(2 beta) CY(i,j).
inline void apply_yy(StateVector& s, int i, int j, double beta) {
  if (i == j) throw std::invalid_argument("apply_yy: qubits must differ");
  apply_cy(s, i, j);
  apply_ry(s, i, 2 * beta);
  apply_cy(s, i, j);
}

/// exp(-i theta P) for a Pauli string P (P^2 = I).
inline void apply_pauli_rotation(StateVector& s, const PauliString& p, double theta) {
  if (p.max_qubit() >= s.n()) throw std::out_of_range("apply_pauli_rotation: string acts outside register");
  const double c = std::cos(theta);
  const cplx minus_i_sin(0.0, -std::sin(theta));
  if (p.is_identity()) {
    const cplx ph = std::exp(cplx(0.0, -theta));
    for (auto& a : s.amps()) a *= ph;
    return;
  }
  PauliAction act(p);
  const BasisIndex top = BasisIndex{1} << (std::bit_width(act.flip) - 1);
  auto a = s.amps();
  if (act.flip == 0) {
    // Diagonal string: eigenvalue phase(x) = +-1.
    for (BasisIndex x = 0; x < s.dim(); ++x) {
      const double ev = act.phase(x).real();
      a[static_cast<std::size_t>(x)] *= cplx(c, 0.0) + minus_i_sin * ev;
    }
    return;
  }
  for (BasisIndex x = 0; x < s.dim(); ++x) {
    if (x & top) continue;  // visit each {x, x^flip} pair once
    const BasisIndex y = x ^ act.flip;
    const cplx ax = a[static_cast<std::size_t>(x)];
    const cplx ay = a[static_cast<std::size_t>(y)];
    // <y|P|x> = phase(x), <x|P|y> = phase(y)
    a[static_cast<std::size_t>(x)] = c * ax + minus_i_sin * act.phase(y) * ay;
    a[static_cast<std::size_t>(y)] = c * ay + minus_i_sin * act.phase(x) * ax;
  }
}

/// h|psi> as a raw (unnormalized) amplitude vector.
inline std::vector<cplx> apply_pauli_sum(const PauliSum& h, const StateVector& s) {
  if (h.max_qubit() >= s.n()) throw std::out_of_range("apply_pauli_sum: operator acts outside register");
  std::vector<cplx> out(static_cast<std::size_t>(s.dim()), cplx(0.0, 0.0));
  for (const auto& t : h.terms()) {
    PauliAction act(t.str);
    for (BasisIndex x = 0; x < s.dim(); ++x) {
      const cplx ax = s[x];
      if (ax == cplx(0.0, 0.0)) continue;
      out[static_cast<std::size_t>(x ^ act.flip)] += t.coeff * act.phase(x) * ax;
    }
  }
  return out;
}

/// amp_x <- amp_x * exp(-i gamma E_x).
inline void apply_diagonal(StateVector& s, const DiagonalHamiltonian& h, double gamma) {
  if (h.n != s.n() || h.energies.size() != s.dim())
    throw std::invalid_argument("apply_diagonal: Hamiltonian size does not match register");
  if (gamma == 0.0) return;
  auto a = s.amps();
  for (std::size_t x = 0; x < a.size(); ++x) a[x] *= std::polar(1.0, -gamma * h.energies[x]);
}

inline double probability_of_set(const StateVector& s, std::span<const BasisIndex> targets) {
  double p = 0.0;
  for (BasisIndex x : targets) {
    if (x >= s.dim()) throw std::out_of_range("probability_of_set: target outside register");
    p += std::norm(s[x]);
  }
  return p;
}

inline bool satisfies_blocks(BasisIndex x, std::span<const BasisIndex> masks, std::span<const int> ks) {
  for (std::size_t b = 0; b < masks.size(); ++b)
    if (std::popcount(x & masks[b]) != ks[b]) return false;
  return true;
}

/// Probability on basis states meeting every block's Hamming-weight constraint.
inline double hamming_mass(const StateVector& s, std::span<const HammingBlock> blocks) {
  std::vector<BasisIndex> masks;
  std::vector<int> ks;
  for (const auto& b : blocks) {
    for (int q : b.qubits) s.check_qubit(q);
    masks.push_back(b.mask());
    ks.push_back(b.k);
  }
  double p = 0.0;
  for (BasisIndex x = 0; x < s.dim(); ++x)
    if (satisfies_blocks(x, masks, ks)) p += std::norm(s[x]);
  return p;
}

inline double leakage(const StateVector& s, std::span<const HammingBlock> blocks) {
  return std::max(0.0, 1.0 - hamming_mass(s, blocks));
}

}  // namespace kmix
