#pragma once

// Trotterized adiabatic evolution: schedule, per-step angles and the evolution loop.

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "kmix/ising.hpp"
#include "kmix/mixers.hpp"
#include "kmix/statevector.hpp"

namespace kmix {

/// p steps of length dt; total annealing time T = p * dt.
struct Schedule {
  int p = 1;
  double dt = 0.1;

  Schedule() = default;
  Schedule(int steps, double step_length) : p(steps), dt(step_length) {
    if (steps < 1) throw std::invalid_argument("Schedule: p must be >= 1");
    if (!(step_length > 0.0) || !std::isfinite(step_length)) throw std::invalid_argument("Schedule: dt must be > 0");
  }

  double total_time() const { return p * dt; }
};

enum class EvolutionMode { Exact, Trotterized };

inline std::string to_string(EvolutionMode m) { return m == EvolutionMode::Exact ? "exact" : "trotterized"; }

/// s(t) = sin^2( pi/2 * sin^2( pi t / (2T) ) ).
inline double schedule_value(const Schedule& sch, double t) {
  const double T = sch.total_time();
  if (t < 0.0 || t > T * (1.0 + 1e-12)) throw std::out_of_range("schedule_value: t outside [0, T]");
  const double inner = std::sin(std::numbers::pi * t / (2.0 * T));
  const double outer = std::sin(0.5 * std::numbers::pi * inner * inner);
  return outer * outer;
}

struct StepAngles {
  double beta = 0.0;   // mixer
  double gamma = 0.0;  // phase separator
};

/// beta_l = (1 - s(l dt)) dt, gamma_l = s(l dt) dt for l in 1..p.
inline StepAngles step_angles(const Schedule& sch, int l) {
  if (l < 1 || l > sch.p) throw std::out_of_range("step_angles: l outside 1..p");
  const double s = (l == sch.p) ? 1.0 : schedule_value(sch, l * sch.dt);
  return {(1.0 - s) * sch.dt, s * sch.dt};
}

/// Mixer application strategy for one evolution mode, reusable across runs on the same spec.
class MixerPropagator {
 public:
  MixerPropagator(const MixerSpec& spec, EvolutionMode mode) : spec_(spec), mode_(mode) {
    if (mode == EvolutionMode::Exact) exact_.emplace(spec);
  }

  const MixerSpec& spec() const { return spec_; }
  EvolutionMode mode() const { return mode_; }

  void apply(StateVector& s, double beta) {
    if (mode_ == EvolutionMode::Exact)
      exact_->apply(s, beta);
    else
      trotter_mixer_step(s, spec_, beta);
  }

 private:
  MixerSpec spec_;
  EvolutionMode mode_;
  std::optional<ExactMixer> exact_;
};

/// For l = 1..p: phase separator exp(-i gamma_l H_final), then mixer exp(-i beta_l H_init).
inline StateVector evolve(StateVector state, MixerPropagator& mixer, const DiagonalHamiltonian& hf,
                          const Schedule& sch) {
  if (state.n() != mixer.spec().n() || hf.n != state.n())
    throw std::invalid_argument("evolve: register sizes disagree");
  for (int l = 1; l <= sch.p; ++l) {
    const auto [beta, gamma] = step_angles(sch, l);
    apply_diagonal(state, hf, gamma);
    if (beta != 0.0) mixer.apply(state, beta);
  }
  return state;
}

inline StateVector evolve(const StateVector& init, const MixerSpec& spec, const DiagonalHamiltonian& hf,
                          const Schedule& sch, EvolutionMode mode) {
  MixerPropagator mixer(spec, mode);
  return evolve(init, mixer, hf, sch);
}

inline double success_probability(const StateVector& final_state, std::span<const BasisIndex> optima) {
  return probability_of_set(final_state, optima);
}

}  // namespace kmix
