#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace kmix;
using oracle::cplx;
using oracle::MatrixXcd;

namespace {

PauliString str(std::initializer_list<std::pair<int, Axis>> ops) { return PauliString(ops); }

std::map<int, char> ops_of(const PauliString& s) {
  std::map<int, char> m;
  for (auto [q, a] : s.ops()) m[q] = axis_char(a);
  return m;
}

/// Every string on n qubits, including the identity.
std::vector<PauliString> all_strings(int n) {
  std::vector<PauliString> out;
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 4;
  for (int code = 0; code < total; ++code) {
    PauliString s;
    int c = code;
    for (int q = 0; q < n; ++q, c /= 4)
      if (c % 4) s.set(q, static_cast<Axis>(c % 4 - 1));
    out.push_back(s);
  }
  return out;
}

PauliString random_string(int n, std::mt19937_64& rng) {
  PauliString s;
  std::uniform_int_distribution<int> d(0, 3);
  for (int q = 0; q < n; ++q) {
    const int a = d(rng);
    if (a) s.set(q, static_cast<Axis>(a - 1));
  }
  return s;
}

}  // namespace

TEST(PauliCommutator, DisjointStringsCommute) {
  EXPECT_TRUE(pauli_commutator(str({{0, Axis::X}, {1, Axis::X}}), str({{2, Axis::X}, {3, Axis::X}})).empty());
}

TEST(PauliCommutator, DisjointEdgeTermsCommute) {
  EXPECT_TRUE(commutator(xy_edge_term(0, 1), xy_edge_term(2, 3)).empty());
}

TEST(PauliCommutator, SharedQubitWithSameAxisCommutes) {
  // Both strings carry X on qubit 0, so there is no anticommuting site.
  const auto a = str({{0, Axis::X}, {1, Axis::X}});
  const auto b = str({{0, Axis::X}, {2, Axis::X}});
  const MatrixXcd da = oracle::string_matrix(3, ops_of(a));
  const MatrixXcd db = oracle::string_matrix(3, ops_of(b));
  EXPECT_LT((da * db - db * da).norm(), 1e-14);
  EXPECT_TRUE(pauli_commutator(a, b).empty());
}

TEST(PauliCommutator, SingleAnticommutingSiteGivesNonzero) {
  const auto a = str({{0, Axis::X}, {1, Axis::X}});
  const auto b = str({{0, Axis::Y}, {2, Axis::Y}});
  auto c = pauli_commutator(a, b);
  ASSERT_EQ(c.size(), 1U);
  const MatrixXcd da = oracle::string_matrix(3, ops_of(a));
  const MatrixXcd db = oracle::string_matrix(3, ops_of(b));
  const MatrixXcd expected = da * db - db * da;
  const MatrixXcd got = cplx(0, 1) * oracle::sum_matrix(c, 3);
  EXPECT_LT((got - expected).norm(), 1e-13);
  EXPECT_GT(expected.norm(), 1.0);
}

TEST(PauliCommutator, ExhaustiveAgainstDenseMatricesOnThreeQubits) {
  const auto strings = all_strings(3);
  std::vector<MatrixXcd> dense;
  for (const auto& s : strings) dense.push_back(oracle::string_matrix(3, ops_of(s)));
  for (std::size_t a = 0; a < strings.size(); ++a)
    for (std::size_t b = 0; b < strings.size(); ++b) {
      const auto c = pauli_commutator(strings[a], strings[b]);
      const MatrixXcd expected = dense[a] * dense[b] - dense[b] * dense[a];
      const MatrixXcd got = cplx(0, 1) * oracle::sum_matrix(c, 3);
      ASSERT_LT((got - expected).norm(), 1e-12) << strings[a].to_string() << " vs " << strings[b].to_string();
    }
}

TEST(PauliCommutator, ParityRuleExhaustiveOnFourQubits) {
  const auto strings = all_strings(4);
  for (const auto& a : strings)
    for (const auto& b : strings) {
      int anti = 0;
      for (int q = 0; q < 4; ++q) {
        auto ia = a.ops().find(q);
        auto ib = b.ops().find(q);
        if (ia != a.ops().end() && ib != b.ops().end() && ia->second != ib->second) ++anti;
      }
      ASSERT_EQ(pauli_commutator(a, b).empty(), anti % 2 == 0);
    }
}

TEST(PauliCommutator, Antisymmetry) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 6;
    const auto a = random_string(n, rng);
    const auto b = random_string(n, rng);
    EXPECT_EQ(pauli_commutator(a, b), -pauli_commutator(b, a));
  }
}

TEST(PauliMultiply, MatchesDenseProducts) {
  const auto strings = all_strings(2);
  for (const auto& a : strings)
    for (const auto& b : strings) {
      const auto p = multiply(a, b);
      static const cplx powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      const MatrixXcd got = powers[p.phase_power % 4] * oracle::string_matrix(2, ops_of(p.result));
      const MatrixXcd expected = oracle::string_matrix(2, ops_of(a)) * oracle::string_matrix(2, ops_of(b));
      ASSERT_LT((got - expected).norm(), 1e-14);
    }
}

TEST(PauliSumTest, CanonicalFormMergesAndDrops) {
  PauliSum h;
  h.add(1.0, str({{1, Axis::X}}));
  h.add(2.0, str({{0, Axis::Z}}));
  h.add(-1.0, str({{1, Axis::X}}));
  h.add(0.5, str({{0, Axis::X}}));
  h.canonicalize();
  ASSERT_EQ(h.size(), 2U);
  EXPECT_EQ(h.terms()[0].str.to_string(), "X0");
  EXPECT_EQ(h.terms()[1].str.to_string(), "Z0");
  EXPECT_THROW(h.add(std::nan(""), PauliString()), std::invalid_argument);
}

TEST(NormOfCommutator, CommutingSingleQubitTerms) {
  PauliSum a{{1.0, PauliString::single(0, Axis::X)}};
  PauliSum b{{1.0, PauliString::single(1, Axis::X)}};
  EXPECT_EQ(norm_of_commutator(a, b), 0.0);
}

TEST(NormOfCommutator, OverlappingEdgesMatchDenseOracle) {
  const auto a = xy_edge_term(0, 1);
  const auto b = xy_edge_term(0, 2);
  const MatrixXcd da = oracle::xy_matrix(3, {{0, 1}});
  const MatrixXcd db = oracle::xy_matrix(3, {{0, 2}});
  const MatrixXcd c = da * db - db * da;
  Eigen::JacobiSVD<MatrixXcd> svd(c);
  const double expected = svd.singularValues()(0);
  EXPECT_GT(expected, 0.0);
  EXPECT_NEAR(norm_of_commutator(a, b), expected, 1e-12);
}

TEST(NormOfCommutator, SelfCommutatorVanishes) {
  auto h = xy_edge_term(0, 1) + xy_edge_term(1, 2);
  EXPECT_LT(norm_of_commutator(h, h), 1e-12);
}

TEST(NormOfCommutator, NonAdjacentSupportIsRelabelled) {
  const auto a = xy_edge_term(3, 40);
  const auto b = xy_edge_term(40, 17);
  EXPECT_NEAR(norm_of_commutator(a, b), norm_of_commutator(xy_edge_term(0, 1), xy_edge_term(1, 2)), 1e-12);
}

TEST(NormOfCommutator, RejectsOversizedSupport) {
  PauliSum a, b;
  for (int q = 0; q < 7; ++q) a.add(1.0, PauliString::single(q, Axis::X));
  for (int q = 7; q < 14; ++q) b.add(1.0, PauliString::single(q, Axis::Z));
  EXPECT_THROW(norm_of_commutator(a, b), CapacityError);
}

TEST(ToDense, MatchesKroneckerOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    PauliSum h;
    for (int t = 0; t < 4; ++t) h.add(static_cast<double>(t + 1) * 0.5 - 1.1, random_string(4, rng));
    h.canonicalize();
    EXPECT_LT((to_dense(h, 4) - oracle::sum_matrix(h, 4)).norm(), 1e-13);
  }
  EXPECT_THROW(to_dense(PauliSum{}, 13), CapacityError);
}

TEST(Ising, SingleVariableWithOffset) {
  IsingModel m(1);
  m.add_linear(0, 2.0);
  m.add_offset(1.0);
  EXPECT_EQ(ising_to_diagonal(m).energies, (std::vector<double>{1.0, 3.0}));
}

TEST(Ising, AdjacentPairTerm) {
  IsingModel m(2);
  m.add_linear(0, 1.0);
  m.add_linear(1, 1.0);
  m.add_quadratic(0, 1, -2.0);
  EXPECT_EQ(ising_to_diagonal(m).energies, (std::vector<double>{0.0, 1.0, 1.0, 0.0}));
  const std::vector<std::uint8_t> x{1, 1};
  EXPECT_EQ(evaluate(m, x), 0.0);
}

TEST(Ising, ZeroModel) {
  IsingModel m(3);
  for (double e : ising_to_diagonal(m).energies) EXPECT_EQ(e, 0.0);
}

TEST(Ising, DiagonalEqualsEvaluateExactly) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> d(0.0, 3.0);
  for (int n = 1; n <= 12; ++n) {
    IsingModel m(n);
    m.add_offset(d(rng));
    for (int i = 0; i < n; ++i) {
      m.add_linear(i, d(rng));
      for (int j = i + 1; j < n; ++j) m.add_quadratic(i, j, d(rng));
    }
    const auto h = ising_to_diagonal(m);
    for (BasisIndex x = 0; x < (BasisIndex{1} << n); ++x) {
      std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) bits[static_cast<std::size_t>(i)] = (x >> i) & 1U;
      ASSERT_EQ(h.energies[x], evaluate(m, bits));
    }
  }
}

TEST(Ising, DirectSumMatchesDefinition) {
  IsingModel m(3);
  m.add_linear(0, 1.5);
  m.add_linear(2, -0.25);
  m.add_quadratic(2, 0, 4.0);
  m.add_quadratic(1, 1, 2.0);  // x_1^2 = x_1
  EXPECT_EQ(m.linear(1), 2.0);
  EXPECT_EQ(m.quadratic(0, 2), 4.0);
  EXPECT_DOUBLE_EQ(m.energy(bits_to_index(std::string("101"))), 1.5 - 0.25 + 4.0);
}

TEST(Ising, Errors) {
  IsingModel m(3);
  const std::vector<std::uint8_t> short_bits{1, 0};
  EXPECT_THROW(evaluate(m, short_bits), std::invalid_argument);
  EXPECT_THROW(ising_to_diagonal(IsingModel(5), 4), CapacityError);
  EXPECT_THROW(m.add_linear(3, 1.0), std::out_of_range);
  EXPECT_THROW(m.add_quadratic(0, 1, std::numeric_limits<double>::infinity()), std::invalid_argument);
  EXPECT_THROW(bits_to_index(std::string("012")), std::invalid_argument);
}

TEST(Bitstrings, LittleEndianText) {
  EXPECT_EQ(bits_to_index(std::string("100")), 1U);
  EXPECT_EQ(index_to_bits(6, 3), "011");
}
