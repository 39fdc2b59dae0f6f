#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace kmix;
using oracle::cplx;
using oracle::MatrixXcd;
using oracle::VectorXcd;

TEST(ScheduleTest, Endpoints) {
  const Schedule sch(20, 0.5);
  EXPECT_EQ(sch.total_time(), 10.0);
  EXPECT_EQ(schedule_value(sch, 0.0), 0.0);
  EXPECT_NEAR(schedule_value(sch, 10.0), 1.0, 1e-15);
  EXPECT_NEAR(schedule_value(sch, 5.0), 0.5, 1e-15);
}

TEST(ScheduleTest, MonotoneAndBounded) {
  const Schedule sch(100, 0.3);
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double v = schedule_value(sch, sch.total_time() * i / 1000.0);
    ASSERT_GE(v, prev - 1e-15);
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
    prev = v;
  }
}

TEST(ScheduleTest, Errors) {
  EXPECT_THROW(Schedule(0, 0.1), std::invalid_argument);
  EXPECT_THROW(Schedule(3, 0.0), std::invalid_argument);
  EXPECT_THROW(Schedule(3, -1.0), std::invalid_argument);
  EXPECT_THROW(schedule_value(Schedule(3, 0.1), -0.01), std::out_of_range);
  EXPECT_THROW(schedule_value(Schedule(3, 0.1), 0.5), std::out_of_range);
}

TEST(StepAnglesTest, Definition) {
  const Schedule sch(7, 0.4);
  for (int l = 1; l <= 7; ++l) {
    const auto a = step_angles(sch, l);
    const double s = schedule_value(sch, l * 0.4);
    EXPECT_NEAR(a.beta, (1.0 - s) * 0.4, 1e-15);
    EXPECT_NEAR(a.gamma, s * 0.4, 1e-15);
    EXPECT_NEAR(a.beta + a.gamma, 0.4, 1e-15);
  }
  const auto last = step_angles(sch, 7);
  EXPECT_EQ(last.beta, 0.0);
  EXPECT_EQ(last.gamma, 0.4);
  EXPECT_THROW(step_angles(sch, 0), std::out_of_range);
  EXPECT_THROW(step_angles(sch, 8), std::out_of_range);
}

namespace {

/// prod_l exp(-i beta_l M) exp(-i gamma_l diag(E)) applied to v, all dense.
VectorXcd dense_tae(const VectorXcd& v0, const std::vector<MatrixXcd>& mixer_factors_per_edge,
                    const std::vector<double>& energies, const Schedule& sch, bool split) {
  VectorXcd v = v0;
  MatrixXcd m = MatrixXcd::Zero(v.size(), v.size());
  for (const auto& f : mixer_factors_per_edge) m += f;
  for (int l = 1; l <= sch.p; ++l) {
    const auto a = step_angles(sch, l);
    for (Eigen::Index x = 0; x < v.size(); ++x) v(x) *= std::exp(cplx(0, -a.gamma * energies[static_cast<std::size_t>(x)]));
    if (split)
      for (const auto& f : mixer_factors_per_edge) v = oracle::expm(f, a.beta) * v;
    else
      v = oracle::expm(m, a.beta) * v;
  }
  return v;
}

DiagonalHamiltonian random_diagonal(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  DiagonalHamiltonian h{n, std::vector<double>(std::size_t{1} << n)};
  for (auto& e : h.energies) e = d(rng);
  return h;
}

}  // namespace

TEST(Evolve, ExactModeMatchesDenseOracle) {
  std::mt19937_64 rng(1);
  const auto spec = single_block_spec(MixerKind::XYFullBlocked, 4, 2);
  const auto hf = random_diagonal(4, rng);
  const Schedule sch(6, 0.35);
  std::vector<MatrixXcd> edges;
  for (auto e : spec.edges().front()) edges.push_back(oracle::xy_matrix(4, {e}));
  const auto init = initial_state(spec);
  const auto out = evolve(init, spec, hf, sch, EvolutionMode::Exact);
  const VectorXcd expected = dense_tae(oracle::vec(init), edges, hf.energies, sch, false);
  EXPECT_LT((oracle::vec(out) - expected).norm(), 1e-9);
}

TEST(Evolve, TrotterizedModeMatchesDenseProduct) {
  std::mt19937_64 rng(2);
  const auto spec = single_block_spec(MixerKind::XYFullBlocked, 4, 2);
  const auto hf = random_diagonal(4, rng);
  const Schedule sch(6, 0.35);
  std::vector<MatrixXcd> edges;
  for (auto e : spec.edges().front()) edges.push_back(oracle::xy_matrix(4, {e}));
  const auto init = initial_state(spec);
  const auto out = evolve(init, spec, hf, sch, EvolutionMode::Trotterized);
  const VectorXcd expected = dense_tae(oracle::vec(init), edges, hf.energies, sch, true);
  EXPECT_LT((oracle::vec(out) - expected).norm(), 1e-9);
  // Splitting error is visible at this step size.
  const auto exact = evolve(init, spec, hf, sch, EvolutionMode::Exact);
  EXPECT_GT(distance(out, exact), 1e-4);
}

TEST(Evolve, XMixerModesAgree) {
  std::mt19937_64 rng(3);
  const auto spec = single_block_spec(MixerKind::X, 5, 2);
  const auto hf = random_diagonal(5, rng);
  const Schedule sch(30, 0.6);
  const auto init = initial_state(spec);
  const auto a = evolve(init, spec, hf, sch, EvolutionMode::Exact);
  const auto b = evolve(init, spec, hf, sch, EvolutionMode::Trotterized);
  EXPECT_LT(distance(a, b), 1e-10);
  EXPECT_NEAR(a.norm(), 1.0, 1e-10);
}

TEST(Evolve, SingleStepIsPhaseSeparatorOnly) {
  // With p = 1, s(T) = 1 so beta_1 = 0 and only exp(-i dt H_final) acts.
  std::mt19937_64 rng(4);
  const auto spec = single_block_spec(MixerKind::XYFullBlocked, 3, 1);
  const auto hf = random_diagonal(3, rng);
  const auto init = initial_state(spec);
  const auto out = evolve(init, spec, hf, Schedule(1, 0.7), EvolutionMode::Exact);
  for (BasisIndex x = 0; x < 8; ++x)
    EXPECT_LT(std::abs(out[x] - init[x] * std::exp(cplx(0, -0.7 * hf.energies[x]))), 1e-14);
}

TEST(Evolve, PropagatorReuseIsStateless) {
  std::mt19937_64 rng(5);
  const MixerSpec spec(MixerKind::XYFullBlocked, 6, {{{0, 1, 2}, 1}, {{3, 4, 5}, 2}});
  const auto hf = random_diagonal(6, rng);
  MixerPropagator prop(spec, EvolutionMode::Exact);
  const auto init = initial_state(spec);
  const auto first = evolve(init, prop, hf, Schedule(10, 0.5));
  evolve(init, prop, hf, Schedule(3, 0.2));
  const auto again = evolve(init, prop, hf, Schedule(10, 0.5));
  EXPECT_EQ(distance(first, again), 0.0);
  EXPECT_LT(leakage(first, spec.blocks()), 1e-10);
}

TEST(Evolve, RegisterMismatch) {
  const auto spec = single_block_spec(MixerKind::XYFullBlocked, 3, 1);
  DiagonalHamiltonian wrong{4, std::vector<double>(16, 0.0)};
  EXPECT_THROW(evolve(initial_state(spec), spec, wrong, Schedule(2, 0.1), EvolutionMode::Exact), std::invalid_argument);
}

TEST(SuccessProbability, SumsOptimalAmplitudes) {
  const auto d = dicke_state(4, 2);
  const std::vector<BasisIndex> opt{3, 5};
  EXPECT_NEAR(success_probability(d, opt), 2.0 / 6.0, 1e-15);
}

TEST(Evolve, SlowScheduleFindsGroundState) {
  // Long anneal on a 4-qubit 2-hot problem with a unique, well separated minimum.
  DiagonalHamiltonian hf{4, std::vector<double>(16, 0.0)};
  for (BasisIndex x = 0; x < 16; ++x) hf.energies[x] = static_cast<double>(x % 7);
  const auto spec = single_block_spec(MixerKind::XYFullBlocked, 4, 2);
  const auto out = evolve(initial_state(spec), spec, hf, Schedule(200, 0.5), EvolutionMode::Exact);
  // Among weight-2 states {3,5,6,9,10,12}, energies are {3,5,6,2,3,5}: x = 9 is the unique minimum.
  const std::vector<BasisIndex> opt{9};
  EXPECT_GT(success_probability(out, opt), 0.9);
}
