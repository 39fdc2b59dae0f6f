#pragma once

// Exact exponentials of Pauli-sum Hamiltonians restricted to invariant subspaces.

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "kmix/errors.hpp"
#include "kmix/pauli.hpp"
#include "kmix/statevector.hpp"

namespace kmix {

/// Ceiling on the dimension of a dense subspace eigendecomposition.
inline constexpr std::size_t kDenseSubspaceCap = 4096;

/// Matrix elements leaving the subspace above this magnitude count as leakage.
inline constexpr double kLeakageTol = 1e-12;

/// Sorted set of basis indices spanning one invariant block.
struct SubspaceBasis {
  int n = 0;
  std::vector<BasisIndex> indices;

  std::size_t size() const { return indices.size(); }

  void validate() const {
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (indices[i] >> n) throw std::invalid_argument("SubspaceBasis: index outside register");
      if (i > 0 && indices[i] <= indices[i - 1])
        throw std::invalid_argument("SubspaceBasis: indices must be strictly increasing");
    }
  }
};

/// All x on n qubits with |x| = k.
inline SubspaceBasis hamming_sector(int n, int k) {
  if (n < 0 || n > 63) throw std::invalid_argument("hamming_sector: bad register size");
  if (k < 0 || k > n) throw std::invalid_argument("hamming_sector: weight out of range");
  SubspaceBasis b{n, {}};
  if (k == 0) {
    b.indices.push_back(0);
    return b;
  }
  // Gosper's hack enumerates same-weight integers in increasing order.
  BasisIndex x = (BasisIndex{1} << k) - 1;
  const BasisIndex limit = BasisIndex{1} << n;
  while (x < limit) {
    b.indices.push_back(x);
    const BasisIndex c = x & (~x + 1);
    const BasisIndex r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
  }
  return b;
}

/// Basis states meeting every block's weight; qubits outside all blocks are free.
inline SubspaceBasis blocked_sector(int n, std::span<const HammingBlock> blocks) {
  std::vector<BasisIndex> masks;
  std::vector<int> ks;
  BasisIndex covered = 0;
  for (const auto& b : blocks) {
    const BasisIndex m = b.mask();
    if (m & covered) throw std::invalid_argument("blocked_sector: blocks overlap");
    covered |= m;
    masks.push_back(m);
    ks.push_back(b.k);
  }
  // Expand per-block local patterns, then all assignments of free qubits.
  std::vector<BasisIndex> partial{0};
  for (const auto& b : blocks) {
    const int m = static_cast<int>(b.qubits.size());
    auto local = hamming_sector(m, b.k);
    std::vector<BasisIndex> next;
    for (BasisIndex p : partial)
      for (BasisIndex l : local.indices) {
        BasisIndex g = 0;
        for (int i = 0; i < m; ++i)
          if ((l >> i) & 1U) g |= BasisIndex{1} << b.qubits[static_cast<std::size_t>(i)];
        next.push_back(p | g);
      }
    partial = std::move(next);
  }
  std::vector<int> free;
  for (int q = 0; q < n; ++q)
    if (!((covered >> q) & 1U)) free.push_back(q);
  SubspaceBasis out{n, {}};
  const BasisIndex nfree = BasisIndex{1} << free.size();
  out.indices.reserve(partial.size() * static_cast<std::size_t>(nfree));
  for (BasisIndex p : partial)
    for (BasisIndex f = 0; f < nfree; ++f) {
      BasisIndex g = p;
      for (std::size_t i = 0; i < free.size(); ++i)
        if ((f >> i) & 1U) g |= BasisIndex{1} << free[i];
      out.indices.push_back(g);
    }
  std::sort(out.indices.begin(), out.indices.end());
  return out;
}

/// Dense matrix of h within the span of `basis`; throws LeakageError if h leaves it.
inline Eigen::MatrixXcd restrict_to(const PauliSum& h, const SubspaceBasis& basis) {
  if (h.max_qubit() >= basis.n) throw std::invalid_argument("restrict_to: operator acts outside register");
  const auto dim = static_cast<Eigen::Index>(basis.size());
  std::unordered_map<BasisIndex, Eigen::Index> pos;
  pos.reserve(basis.size());
  for (Eigen::Index i = 0; i < dim; ++i) pos.emplace(basis.indices[static_cast<std::size_t>(i)], i);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  // Accumulate outgoing weight first so cancelling strings are not reported as leakage.
  std::map<std::pair<BasisIndex, BasisIndex>, cplx> outside;
  for (const auto& t : h.terms()) {
    PauliAction act(t.str);
    for (Eigen::Index c = 0; c < dim; ++c) {
      const BasisIndex x = basis.indices[static_cast<std::size_t>(c)];
      const BasisIndex y = x ^ act.flip;
      const cplx v = t.coeff * act.phase(x);
      auto it = pos.find(y);
      if (it != pos.end())
        m(it->second, c) += v;
      else
        outside[{y, x}] += v;
    }
  }
  for (const auto& [key, v] : outside)
    if (std::abs(v) > kLeakageTol) throw LeakageError("restrict_to: operator does not preserve the subspace");
  return m;
}

/// Cached eigensystem of a Hermitian matrix; yields exp(-i beta H) for any beta.
class HermitianPropagator {
 public:
  HermitianPropagator() = default;
  explicit HermitianPropagator(const Eigen::MatrixXcd& h) {
    if (static_cast<std::size_t>(h.rows()) > kDenseSubspaceCap)
      throw CapacityError("HermitianPropagator: dimension " + std::to_string(h.rows()) + " exceeds dense cap");
    Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
    if (es.info() != Eigen::Success) throw std::runtime_error("HermitianPropagator: eigensolver failed");
    vectors_ = es.eigenvectors();
    values_ = es.eigenvalues();
  }

  Eigen::Index dim() const { return values_.size(); }
  const Eigen::VectorXd& eigenvalues() const { return values_; }
  const Eigen::MatrixXcd& eigenvectors() const { return vectors_; }

  Eigen::MatrixXcd unitary(double beta) const {
    return vectors_ * phases(beta).asDiagonal() * vectors_.adjoint();
  }

  /// v <- exp(-i beta H) v.
  void apply(double beta, Eigen::VectorXcd& v) const {
    Eigen::VectorXcd w = vectors_.adjoint() * v;
    w = w.cwiseProduct(phases(beta));
    v.noalias() = vectors_ * w;
  }

 private:
  Eigen::VectorXcd phases(double beta) const {
    Eigen::VectorXcd p(values_.size());
    for (Eigen::Index i = 0; i < values_.size(); ++i) p(i) = std::polar(1.0, -beta * values_(i));
    return p;
  }

  Eigen::MatrixXcd vectors_;
  Eigen::VectorXd values_;
};

/// exp(-i beta H) restricted to an invariant subspace.
struct SubspaceOperator {
  SubspaceBasis basis;
  Eigen::MatrixXcd matrix;

  /// Applies the operator to the basis components of s; other amplitudes are untouched.
  void apply(StateVector& s) const {
    if (s.n() != basis.n) throw std::invalid_argument("SubspaceOperator: register mismatch");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) v(static_cast<Eigen::Index>(i)) = s[basis.indices[i]];
    Eigen::VectorXcd w = matrix * v;
    for (std::size_t i = 0; i < basis.size(); ++i) s[basis.indices[i]] = w(static_cast<Eigen::Index>(i));
  }
};

inline SubspaceOperator expm_on_subspace(const PauliSum& h, const SubspaceBasis& basis, double beta) {
  basis.validate();
  if (basis.size() > kDenseSubspaceCap)
    throw CapacityError("expm_on_subspace: dimension " + std::to_string(basis.size()) + " exceeds dense cap");
  HermitianPropagator prop(restrict_to(h, basis));
  return {basis, prop.unitary(beta)};
}

}  // namespace kmix
