#pragma once

// Quadratic binary objectives and their diagonal Hamiltonians.
//
// Variables are binary (x_i in {0,1}); bit i of a basis index is x_i.

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmix/errors.hpp"
#include "kmix/pauli.hpp"

namespace kmix {

/// Default ceiling on the register size of a materialized diagonal.
inline constexpr int kDiagonalQubitCap = 28;

/// f(x) = offset + sum_i linear_i x_i + sum_{i<j} quad_ij x_i x_j over binary x.
class IsingModel {
 public:
  IsingModel() = default;
  explicit IsingModel(int n) : n_(n), linear_(static_cast<std::size_t>(n), 0.0),
                               quad_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {
    if (n < 0 || n > 63) throw std::invalid_argument("IsingModel: qubit count out of range");
  }

  int n() const { return n_; }
  double offset() const { return offset_; }
  double linear(int i) const { return linear_.at(static_cast<std::size_t>(i)); }
  double quadratic(int i, int j) const {
    if (i > j) std::swap(i, j);
    check(i);
    check(j);
    return quad_[idx(i, j)];
  }

  void add_offset(double v) { offset_ += finite(v); }
  void add_linear(int i, double v) {
    check(i);
    linear_[static_cast<std::size_t>(i)] += finite(v);
  }
  /// x_i x_i = x_i, so a diagonal pair folds into the linear term.
  void add_quadratic(int i, int j, double v) {
    check(i);
    check(j);
    if (i == j) {
      add_linear(i, v);
      return;
    }
    if (i > j) std::swap(i, j);
    quad_[idx(i, j)] += finite(v);
  }

  /// Objective at the basis index x. Terms are accumulated over set bits in ascending order.
  double energy(BasisIndex x) const {
    double e = offset_;
    BasisIndex rest = x;
    while (rest) {
      const int i = std::countr_zero(rest);
      rest &= rest - 1;
      e += linear_[static_cast<std::size_t>(i)];
      BasisIndex hi = rest;
      while (hi) {
        const int j = std::countr_zero(hi);
        hi &= hi - 1;
        e += quad_[idx(i, j)];
      }
    }
    return e;
  }

 private:
  void check(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("IsingModel: variable index out of range");
  }
  static double finite(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("IsingModel: non-finite coefficient");
    return v;
  }
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  double offset_ = 0.0;
  std::vector<double> linear_;
  std::vector<double> quad_;
};

/// Energy per computational basis state.
struct DiagonalHamiltonian {
  int n = 0;
  std::vector<double> energies;
};

inline BasisIndex bits_to_index(std::span<const std::uint8_t> x) {
  if (x.size() > 63) throw std::invalid_argument("bitstring longer than 63 variables");
  BasisIndex idx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 1) throw std::invalid_argument("bitstring entries must be 0 or 1");
    if (x[i]) idx |= BasisIndex{1} << i;
  }
  return idx;
}

/// Bitstring text: character i is x_i.
inline std::string index_to_bits(BasisIndex x, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if ((x >> i) & 1U) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

inline BasisIndex bits_to_index(const std::string& s) {
  std::vector<std::uint8_t> v;
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring must contain only 0/1");
    v.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return bits_to_index(v);
}

inline double evaluate(const IsingModel& m, std::span<const std::uint8_t> x) {
  if (static_cast<int>(x.size()) != m.n())
    throw std::invalid_argument("evaluate: bitstring length " + std::to_string(x.size()) +
                                " does not match model size " + std::to_string(m.n()));
  return m.energy(bits_to_index(x));
}

inline DiagonalHamiltonian ising_to_diagonal(const IsingModel& m, int max_qubits = kDiagonalQubitCap) {
  if (m.n() > max_qubits)
    throw CapacityError("ising_to_diagonal: " + std::to_string(m.n()) + " qubits exceeds cap of " +
                        std::to_string(max_qubits));
  DiagonalHamiltonian h;
  h.n = m.n();
  const BasisIndex dim = BasisIndex{1} << m.n();
  h.energies.resize(static_cast<std::size_t>(dim));
  for (BasisIndex x = 0; x < dim; ++x) h.energies[static_cast<std::size_t>(x)] = m.energy(x);
  return h;
}

}  // namespace kmix
