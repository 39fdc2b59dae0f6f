#pragma once

// Plaquette mixer on a permutation-encoded register: city u at position t is qubit u*n + t.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "kmix/errors.hpp"
#include "kmix/pauli.hpp"
#include "kmix/statevector.hpp"

namespace kmix {

inline int tsp_qubit(int n, int city, int position) { return city * n + position; }

struct Plaquette {
  int u = 0, v = 0;    // cities, u < v
  int t1 = 0, t2 = 0;  // positions, t1 < t2
};

/// All plaquettes in lexicographic (u, v, t1, t2) order.
inline std::vector<Plaquette> plaquettes(int n) {
  if (n < 2) throw std::invalid_argument("plaquettes: need at least two cities");
  std::vector<Plaquette> out;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int t1 = 0; t1 < n; ++t1)
        for (int t2 = t1 + 1; t2 < n; ++t2) out.push_back({u, v, t1, t2});
  return out;
}

/// (X_a X_b + Y_a Y_b)(X_c X_d + Y_c Y_d), a = (u,t1), b = (v,t1), c = (u,t2), d = (v,t2).
inline std::vector<PauliString> plaquette_strings(int n, const Plaquette& p) {
  const int a = tsp_qubit(n, p.u, p.t1), b = tsp_qubit(n, p.v, p.t1);
  const int c = tsp_qubit(n, p.u, p.t2), d = tsp_qubit(n, p.v, p.t2);
  std::vector<PauliString> out;
  for (Axis first : {Axis::X, Axis::Y})
    for (Axis second : {Axis::X, Axis::Y}) out.push_back(PauliString{{a, first}, {b, first}, {c, second}, {d, second}});
  return out;
}

inline PauliSum plaquette_term(int n, const Plaquette& p) {
  PauliSum h;
  for (auto& s : plaquette_strings(n, p)) h.add(1.0, std::move(s));
  return h;
}

inline PauliSum build_tsp_mixer(int n) {
  PauliSum h;
  for (const auto& p : plaquettes(n))
    for (auto& s : plaquette_strings(n, p)) h.add(1.0, std::move(s));
  return h;
}

/// Basis indices of the n! permutation matrices, ascending.
inline std::vector<BasisIndex> permutation_states(int n) {
  if (n < 1 || n * n > 63) throw std::invalid_argument("permutation_states: unsupported city count");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<BasisIndex> out;
  do {
    BasisIndex x = 0;
    for (int t = 0; t < n; ++t) x |= BasisIndex{1} << tsp_qubit(n, perm[static_cast<std::size_t>(t)], t);
    out.push_back(x);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  return out;
}

/// Largest city count for the dense projector check (2^(n^2) dimensional).
inline constexpr int kTspDenseCityCap = 3;

inline Eigen::MatrixXcd feasibility_projector(int n) {
  if (n > kTspDenseCityCap) throw CapacityError("feasibility_projector: register too large for dense evaluation");
  const auto dim = static_cast<Eigen::Index>(BasisIndex{1} << (n * n));
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
  for (BasisIndex x : permutation_states(n)) p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = 1.0;
  return p;
}

/// Spectral norm of [H, P_feasible] for a Hamiltonian on the n^2-qubit register.
inline double projector_commutator_norm(const PauliSum& h, int n) {
  const Eigen::MatrixXcd m = to_dense(h, n * n);
  const Eigen::MatrixXcd p = feasibility_projector(n);
  const Eigen::MatrixXcd c = m * p - p * m;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(c);
  return svd.singularValues()(0);
}

inline double feasibility_commutation_norm(int n) { return projector_commutator_norm(build_tsp_mixer(n), n); }

/// One Trotter pass: exp(-i beta plaquette) per plaquette in lexicographic order.
/// The four strings of a plaquette commute, so each factor is exact.
inline void trotter_tsp_step(StateVector& s, int n, double beta) {
  if (s.n() != n * n) throw std::invalid_argument("trotter_tsp_step: register must have n^2 qubits");
  for (const auto& p : plaquettes(n))
    for (const auto& str : plaquette_strings(n, p)) apply_pauli_rotation(s, str, beta);
}

inline double permutation_mass(const StateVector& s, int n) {
  const auto perms = permutation_states(n);
  return probability_of_set(s, perms);
}

}  // namespace kmix
