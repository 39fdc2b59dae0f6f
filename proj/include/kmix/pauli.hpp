#pragma once

// Pauli-string algebra: weighted sums of Pauli strings, their commutators,
// and dense matrix evaluation for small registers.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kmix/errors.hpp"

namespace kmix {

using BasisIndex = std::uint64_t;
using cplx = std::complex<double>;

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

inline char axis_char(Axis a) { return "XYZ"[static_cast<int>(a)]; }

/// Largest register for which dense operator matrices are built.
inline constexpr int kDenseQubitCap = 12;

/// Coefficients whose magnitude falls below this are dropped on canonicalization.
inline constexpr double kCoefficientZeroTol = 1e-13;

/// Tensor product of single-qubit Paulis; absent qubits act as identity.
class PauliString {
 public:
  PauliString() = default;
  PauliString(std::initializer_list<std::pair<int, Axis>> ops) {
    for (auto [q, a] : ops) set(q, a);
  }

  static PauliString single(int q, Axis a) { return PauliString{{q, a}}; }

  void set(int q, Axis a) {
    if (q < 0 || q >= 64) throw std::out_of_range("PauliString: qubit index out of range");
    ops_[q] = a;
  }

  const std::map<int, Axis>& ops() const { return ops_; }
  bool is_identity() const { return ops_.empty(); }
  std::size_t weight() const { return ops_.size(); }

  /// Bit q set when the string flips qubit q (X or Y).
  BasisIndex x_mask() const {
    BasisIndex m = 0;
    for (auto [q, a] : ops_)
      if (a != Axis::Z) m |= BasisIndex{1} << q;
    return m;
  }
  /// Bit q set when the string carries a Z component on q (Y or Z).
  BasisIndex z_mask() const {
    BasisIndex m = 0;
    for (auto [q, a] : ops_)
      if (a != Axis::X) m |= BasisIndex{1} << q;
    return m;
  }
  int y_count() const {
    int c = 0;
    for (auto [q, a] : ops_) c += (a == Axis::Y);
    return c;
  }
  int max_qubit() const { return ops_.empty() ? -1 : ops_.rbegin()->first; }

  std::string to_string() const {
    if (ops_.empty()) return "I";
    std::string s;
    for (auto [q, a] : ops_) {
      if (!s.empty()) s += ' ';
      s += axis_char(a);
      s += std::to_string(q);
    }
    return s;
  }

  /// Lexicographic over the (qubit, axis) sequence.
  friend auto operator<=>(const PauliString&, const PauliString&) = default;
  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::map<int, Axis> ops_;
};

/// Number of qubits on which both strings act with different axes.
inline int anticommuting_sites(const PauliString& a, const PauliString& b) {
  int count = 0;
  const auto& ma = a.ops();
  const auto& mb = b.ops();
  auto ia = ma.begin();
  auto ib = mb.begin();
  while (ia != ma.end() && ib != mb.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      count += (ia->second != ib->second);
      ++ia;
      ++ib;
    }
  }
  return count;
}

inline bool commutes(const PauliString& a, const PauliString& b) {
  return anticommuting_sites(a, b) % 2 == 0;
}

/// Product a*b = phase * result, phase = i^phase_power.
struct PauliProduct {
  int phase_power = 0;  // 0..3
  PauliString result;
};

inline PauliProduct multiply(const PauliString& a, const PauliString& b) {
  std::map<int, Axis> merged = a.ops();
  int power = 0;
  for (auto [q, ab] : b.ops()) {
    auto it = merged.find(q);
    if (it == merged.end()) {
      merged.emplace(q, ab);
      continue;
    }
    const Axis aa = it->second;
    if (aa == ab) {
      merged.erase(it);
      continue;
    }
    const int ia = static_cast<int>(aa);
    const int ib = static_cast<int>(ab);
    // XY = iZ, YZ = iX, ZX = iY; reversed order gives -i.
    power += ((ib - ia + 3) % 3 == 1) ? 1 : 3;
    it->second = static_cast<Axis>(3 - ia - ib);
  }
  PauliProduct out;
  for (auto [q, ax] : merged) out.result.set(q, ax);
  out.phase_power = power % 4;
  return out;
}

struct PauliTerm {
  double coeff = 0.0;
  PauliString str;
};

/// Real-weighted sum of Pauli strings (a Hermitian operator).
class PauliSum {
 public:
  PauliSum() = default;
  PauliSum(std::initializer_list<PauliTerm> terms) : terms_(terms) { canonicalize(); }

  void add(double coeff, PauliString s) {
    if (!std::isfinite(coeff)) throw std::invalid_argument("PauliSum: non-finite coefficient");
    terms_.push_back({coeff, std::move(s)});
  }

  PauliSum& operator+=(const PauliSum& o) {
    for (const auto& t : o.terms_) terms_.push_back(t);
    canonicalize();
    return *this;
  }
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }

  PauliSum& operator*=(double s) {
    for (auto& t : terms_) t.coeff *= s;
    canonicalize();
    return *this;
  }
  friend PauliSum operator*(double s, PauliSum a) { return a *= s; }
  friend PauliSum operator-(PauliSum a) { return a *= -1.0; }

  /// Sorts by string, merges duplicates and drops vanishing coefficients.
  void canonicalize() {
    std::stable_sort(terms_.begin(), terms_.end(),
                     [](const PauliTerm& x, const PauliTerm& y) { return x.str < y.str; });
    std::vector<PauliTerm> merged;
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().str == t.str)
        merged.back().coeff += t.coeff;
      else
        merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const PauliTerm& t) { return std::abs(t.coeff) < kCoefficientZeroTol; });
    terms_ = std::move(merged);
  }

  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  int max_qubit() const {
    int m = -1;
    for (const auto& t : terms_) m = std::max(m, t.str.max_qubit());
    return m;
  }

  /// Sorted list of qubits touched by any term.
  std::vector<int> support() const {
    std::vector<int> s;
    for (const auto& t : terms_)
      for (auto [q, a] : t.str.ops()) s.push_back(q);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }

  friend bool operator==(const PauliSum& a, const PauliSum& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].str != b.terms_[i].str || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
      if (!s.empty()) s += " + ";
      s += std::to_string(t.coeff) + "*" + t.str.to_string();
    }
    return s;
  }

 private:
  std::vector<PauliTerm> terms_;
};

/// Commutator of two Pauli strings, returned as a real sum C with [a,b] = i*C.
/// Empty when the strings commute; otherwise a single term with coefficient +-2.
inline PauliSum pauli_commutator(const PauliString& a, const PauliString& b) {
  PauliSum out;
  if (commutes(a, b)) return out;
  auto prod = multiply(a, b);
  // ab - ba = 2ab for anticommuting strings; 2 i^p R = i * (2 i^(p-1)) R with p odd.
  double c = (prod.phase_power == 1) ? 2.0 : -2.0;
  out.add(c, std::move(prod.result));
  out.canonicalize();
  return out;
}

/// Commutator of two sums, [a,b] = i*C with C real-weighted.
inline PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  PauliSum out;
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) {
      auto c = pauli_commutator(ta.str, tb.str);
      for (const auto& t : c.terms()) out.add(ta.coeff * tb.coeff * t.coeff, t.str);
    }
  out.canonicalize();
  return out;
}

/// Action of a Pauli string on a basis state: P|x> = phase(x) |x ^ x_mask>.
struct PauliAction {
  BasisIndex flip = 0;
  BasisIndex zmask = 0;
  cplx base_phase{1.0, 0.0};  // i^{#Y}

  explicit PauliAction(const PauliString& s) : flip(s.x_mask()), zmask(s.z_mask()) {
    static const cplx powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    base_phase = powers[s.y_count() % 4];
  }

  cplx phase(BasisIndex x) const {
    return (std::popcount(x & zmask) & 1) ? -base_phase : base_phase;
  }
};

/// Renumbers qubits through `map` (old index -> new index).
inline PauliSum relabel(const PauliSum& h, const std::map<int, int>& map) {
  PauliSum out;
  for (const auto& t : h.terms()) {
    PauliString s;
    for (auto [q, a] : t.str.ops()) {
      auto it = map.find(q);
      if (it == map.end()) throw std::invalid_argument("relabel: qubit missing from map");
      s.set(it->second, a);
    }
    out.add(t.coeff, std::move(s));
  }
  out.canonicalize();
  return out;
}

/// Dense 2^n x 2^n matrix; bit i of the row/column index is qubit i.
inline Eigen::MatrixXcd to_dense(const PauliSum& h, int n) {
  if (n > kDenseQubitCap)
    throw CapacityError("to_dense: register of " + std::to_string(n) + " qubits exceeds dense cap");
  if (h.max_qubit() >= n) throw std::invalid_argument("to_dense: operator acts outside register");
  const BasisIndex dim = BasisIndex{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : h.terms()) {
    PauliAction act(t.str);
    for (BasisIndex x = 0; x < dim; ++x)
      m(static_cast<Eigen::Index>(x ^ act.flip), static_cast<Eigen::Index>(x)) += t.coeff * act.phase(x);
  }
  return m;
}

/// Largest absolute eigenvalue of a Hermitian matrix.
inline double hermitian_spectral_norm(const Eigen::MatrixXcd& h) {
  if (h.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
}

/// Spectral norm of [a, b] by dense evaluation on the union of supports.
inline double norm_of_commutator(const PauliSum& a, const PauliSum& b) {
  std::vector<int> sup = a.support();
  auto sb = b.support();
  sup.insert(sup.end(), sb.begin(), sb.end());
  std::sort(sup.begin(), sup.end());
  sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
  if (sup.empty()) return 0.0;
  const int m = static_cast<int>(sup.size());
  if (m > kDenseQubitCap)
    throw CapacityError("norm_of_commutator: support of " + std::to_string(m) + " qubits exceeds dense cap");
  std::map<int, int> map;
  for (int i = 0; i < m; ++i) map[sup[i]] = i;
  Eigen::MatrixXcd da = to_dense(relabel(a, map), m);
  Eigen::MatrixXcd db = to_dense(relabel(b, map), m);
  Eigen::MatrixXcd comm = da * db - db * da;
  // [A,B] is anti-Hermitian for Hermitian A,B; -i[A,B] is Hermitian with the same norm.
  Eigen::MatrixXcd herm = cplx(0.0, -1.0) * comm;
  herm = 0.5 * (herm + herm.adjoint()).eval();
  return hermitian_spectral_norm(herm);
}

}  // namespace kmix
