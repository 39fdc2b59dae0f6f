#pragma once

// Trotter error of the split mixer: commutator census, first-order bound,
// and the measured single-step distance to the exact exponential.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "kmix/mixers.hpp"
#include "kmix/pauli.hpp"
#include "kmix/subspace.hpp"

namespace kmix {

struct CommutatorCensus {
  std::size_t terms = 0;
  std::size_t commuting_pairs = 0;
  std::size_t noncommuting_pairs = 0;
  std::optional<double> norm_sum;  // sum of ||[H_a, H_b]|| over non-commuting pairs
};

/// One term per edge, -(XX + YY); the X mixer contributes one -X_i per qubit.
inline std::vector<PauliSum> edge_terms(const MixerSpec& spec) {
  std::vector<PauliSum> out;
  if (spec.kind() == MixerKind::X) {
    for (int q = 0; q < spec.n(); ++q) {
      PauliSum t;
      t.add(-1.0, PauliString::single(q, Axis::X));
      out.push_back(std::move(t));
    }
    return out;
  }
  for (const auto& block : spec.edges())
    for (auto [i, j] : block) out.push_back(xy_edge_term(i, j));
  return out;
}

/// Classifies every unordered pair of terms; norms are evaluated when the
/// register has at most kDenseQubitCap qubits.
inline CommutatorCensus census(std::span<const PauliSum> terms, int n) {
  CommutatorCensus c;
  c.terms = terms.size();
  const bool with_norms = n <= kDenseQubitCap;
  double total = 0.0;
  for (std::size_t a = 0; a < terms.size(); ++a)
    for (std::size_t b = a + 1; b < terms.size(); ++b) {
      if (commutator(terms[a], terms[b]).empty()) {
        ++c.commuting_pairs;
        continue;
      }
      ++c.noncommuting_pairs;
      if (with_norms) total += norm_of_commutator(terms[a], terms[b]);
    }
  if (with_norms) c.norm_sum = total;
  return c;
}

inline CommutatorCensus census(const MixerSpec& spec) {
  const auto terms = edge_terms(spec);
  return census(terms, spec.n());
}

/// Non-commuting pairs (a, b) with a drawn from `left` and b from `right`.
inline std::size_t cross_noncommuting_pairs(std::span<const PauliSum> left, std::span<const PauliSum> right) {
  std::size_t count = 0;
  for (const auto& a : left)
    for (const auto& b : right)
      if (!commutator(a, b).empty()) ++count;
  return count;
}

/// (t^2 / 2) * sum_{a<b} ||[H_a, H_b]||.
inline double first_order_bound(const CommutatorCensus& c, double t) {
  if (!c.norm_sum) throw CapacityError("first_order_bound: commutator norms unavailable for this register size");
  return 0.5 * t * t * *c.norm_sum;
}

inline double first_order_bound(const MixerSpec& spec, double t) { return first_order_bound(census(spec), t); }

/// Largest register accepted by empirical_step_error.
inline constexpr int kStepErrorQubitCap = 10;

/// ||exp(-i beta H) - S(beta)||_2 on the feasible sector, S being one Trotter
/// pass. The X mixer is compared on the full space.
inline double empirical_step_error(const MixerSpec& spec, double beta) {
  if (spec.n() > kStepErrorQubitCap) throw CapacityError("empirical_step_error: register too large");
  const SubspaceBasis basis = spec.is_xy() ? blocked_sector(spec.n(), spec.blocks()) : blocked_sector(spec.n(), {});
  const auto dim = static_cast<Eigen::Index>(basis.size());

  const Eigen::MatrixXcd exact = expm_on_subspace(build_mixer(spec), basis, beta).matrix;
  Eigen::MatrixXcd trotter(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    auto s = StateVector::basis(spec.n(), basis.indices[static_cast<std::size_t>(c)]);
    trotter_mixer_step(s, spec, beta);
    double inside = 0.0;
    for (Eigen::Index r = 0; r < dim; ++r) {
      trotter(r, c) = s[basis.indices[static_cast<std::size_t>(r)]];
      inside += std::norm(trotter(r, c));
    }
    if (1.0 - inside > kLeakageTol) throw LeakageError("empirical_step_error: Trotter step left the feasible sector");
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(exact - trotter);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

/// Errors below this are treated as exact and give no scaling information.
inline constexpr double kScalingErrorFloor = 1e-13;

/// Least-squares slope of log(error) against log(beta); nullopt when the
/// splitting is exact at every grid point.
inline std::optional<double> error_scaling_exponent(const MixerSpec& spec, std::span<const double> betas) {
  if (betas.size() < 2) throw std::invalid_argument("error_scaling_exponent: need at least two step sizes");
  std::vector<double> lx, ly;
  for (double b : betas) {
    if (!(b > 0.0)) throw std::invalid_argument("error_scaling_exponent: step sizes must be positive");
    const double e = empirical_step_error(spec, b);
    if (e < kScalingErrorFloor) return std::nullopt;
    lx.push_back(std::log(b));
    ly.push_back(std::log(e));
  }
  const double m = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double den = m * sxx - sx * sx;
  if (den <= 0.0) throw std::invalid_argument("error_scaling_exponent: step sizes must not all coincide");
  return (m * sxy - sx * sy) / den;
}

/// Log-spaced step sizes spanning one decade, [lo, 10 lo].
inline std::vector<double> decade_grid(double lo, int points = 10) {
  std::vector<double> g;
  for (int i = 0; i < points; ++i) g.push_back(lo * std::pow(10.0, static_cast<double>(i) / (points - 1)));
  return g;
}

}  // namespace kmix
