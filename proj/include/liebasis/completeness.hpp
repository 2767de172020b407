#pragma once

// Commutation diagnostics, matrix rank, joint eigenspaces and the
// completeness verdict for a declared operator set.

#include "liebasis/basis_sets.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace liebasis {

struct CompletenessOptions {
  double commute_tol = tol::commute;
  double cluster_tol = tol::cluster;
  double scalar_tol = tol::scalar;
};

struct CommutationReport {
  double max_residual = 0.0;
  std::pair<std::string, std::string> worst_pair;
  bool pass = true;
};

/// Operators whose norm is below this fraction of the largest norm in a set
/// are numerically zero (e.g. the cubic Casimir of a self-conjugate irrep).
inline constexpr double kZeroFraction = 1e-12;

namespace detail {

inline double zero_floor(const OperatorSet& set) {
  double top = 0.0;
  for (const auto& it : set.items) top = std::max(top, it.matrix.norm());
  return kZeroFraction * top;
}

}  // namespace detail

/// max over pairs of ||[O_i, O_j]||_F / (||O_i||_F ||O_j||_F). Numerically
/// zero operators contribute 0 (the 0/0 -> 0 convention).
inline CommutationReport check_commuting(const OperatorSet& set, double commute_tol = tol::commute) {
  if (set.items.empty()) throw DomainError("check_commuting: empty operator set");
  CommutationReport rep;
  const double floor = detail::zero_floor(set);
  std::vector<double> norms;
  std::vector<bool> skip;
  for (const auto& it : set.items) {
    norms.push_back(it.matrix.norm());
    skip.push_back(norms.back() <= floor || scalar_defect(it.matrix) == 0.0);
  }
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      const double denom = norms[i] * norms[j];
      if (denom == 0.0 || skip[i] || skip[j]) continue;
      const double r = commutator(set.items[i].matrix, set.items[j].matrix).norm() / denom;
      if (r > rep.max_residual || rep.worst_pair.first.empty()) {
        rep.max_residual = r;
        rep.worst_pair = {render(set.items[i].label), render(set.items[j].label)};
      }
    }
  rep.pass = rep.max_residual < commute_tol;
  return rep;
}

struct RankReport {
  int rank = 0;
  int nonscalar_rank = 0;
  std::vector<bool> scalar_flags;
  std::vector<double> gram_singular_values;
};

namespace detail {

inline int gram_rank(const std::vector<const Matrix*>& ops, std::vector<double>* svals = nullptr) {
  const auto k = static_cast<Eigen::Index>(ops.size());
  if (k == 0) return 0;
  Matrix gram(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) gram(i, j) = (ops[i]->adjoint() * *ops[j]).trace();
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  RealVector ev = es.eigenvalues().cwiseAbs();
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
  if (svals) svals->assign(ev.data(), ev.data() + ev.size());
  const double top = ev.size() ? ev(0) : 0.0;
  if (top == 0.0) return 0;
  return static_cast<int>((ev.array() > tol::rank * top).count());
}

}  // namespace detail

/// Rank of the Gram matrix of the vectorized operators (eigenvalues above
/// 1e-8 times the largest), plus flags for operators that are multiples of
/// the identity. Matrix-level rank, not abstract independence: factor
/// Casimirs on irreducible factors are scalars and hence collinear.
inline RankReport matrix_rank(const OperatorSet& set, double scalar_tol = tol::scalar) {
  if (set.items.empty()) throw DomainError("matrix_rank: empty operator set");
  RankReport rep;
  std::vector<const Matrix*> all, nonscalar;
  const double floor = detail::zero_floor(set);
  for (const auto& it : set.items) {
    const double norm = it.matrix.norm();
    const bool is_scalar = norm <= floor || scalar_defect(it.matrix) <= scalar_tol * norm;
    rep.scalar_flags.push_back(is_scalar);
    all.push_back(&it.matrix);
    if (!is_scalar) nonscalar.push_back(&it.matrix);
  }
  rep.rank = detail::gram_rank(all, &rep.gram_singular_values);
  rep.nonscalar_rank = detail::gram_rank(nonscalar);
  return rep;
}

struct JointBlock {
  std::vector<double> eigenvalues;  // one per operator, in set order
  int dim = 0;
  Matrix basis;  // orthonormal columns
};

struct JointSpectrum {
  std::vector<std::string> labels;
  std::vector<JointBlock> blocks;

  int total_dim() const {
    int s = 0;
    for (const auto& b : blocks) s += b.dim;
    return s;
  }
  int max_block_dim() const {
    int m = 0;
    for (const auto& b : blocks) m = std::max(m, b.dim);
    return m;
  }
  /// Sorted block dimensions.
  std::vector<int> block_dims() const {
    std::vector<int> d;
    for (const auto& b : blocks) d.push_back(b.dim);
    std::sort(d.begin(), d.end());
    return d;
  }
  /// max |<u, v>| over columns of distinct blocks.
  double cross_orthogonality_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (std::size_t j = i + 1; j < blocks.size(); ++j)
        worst = std::max(worst, (blocks[i].basis.adjoint() * blocks[j].basis).cwiseAbs().maxCoeff());
    return worst;
  }
};

namespace detail {

inline Matrix orthonormalize(const Matrix& m) {
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
}

/// max(spectral range, spectral radius) of a Hermitian matrix.
inline double spectral_scale(const Matrix& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(op, Eigen::EigenvaluesOnly);
  const RealVector& ev = es.eigenvalues();
  if (ev.size() == 0) return 0.0;
  const double range = ev.maxCoeff() - ev.minCoeff();
  return std::max(range, ev.cwiseAbs().maxCoeff());
}

/// Iterative refinement without the commutation precondition check.
inline JointSpectrum refine(const OperatorSet& set, double cluster_tol) {
  const int dim = set.dim();
  JointSpectrum out;
  out.labels = set.labels();
  out.blocks.push_back({{}, dim, Matrix::Identity(dim, dim)});
  const double floor = zero_floor(set);
  for (const auto& item : set.items) {
    const Matrix& op = item.matrix;
    if (op.norm() <= floor) {
      for (auto& block : out.blocks) block.eigenvalues.push_back(0.0);
      continue;
    }
    const double gap = cluster_tol * spectral_scale(op);
    std::vector<JointBlock> next;
    for (auto& block : out.blocks) {
      const Matrix compressed = block.basis.adjoint() * op * block.basis;
      Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (compressed + compressed.adjoint()));
      const RealVector& ev = es.eigenvalues();
      const Matrix& vecs = es.eigenvectors();
      Eigen::Index start = 0;
      while (start < ev.size()) {
        Eigen::Index end = start + 1;
        while (end < ev.size() && ev(end) - ev(end - 1) <= gap) ++end;
        const Eigen::Index count = end - start;
        JointBlock child;
        child.eigenvalues = block.eigenvalues;
        child.eigenvalues.push_back(ev.segment(start, count).mean());
        child.dim = static_cast<int>(count);
        const Matrix cols = block.basis * vecs.middleCols(start, count);
        child.basis = count == block.dim ? cols : orthonormalize(cols);
        next.push_back(std::move(child));
        start = end;
      }
    }
    out.blocks = std::move(next);
  }
  return out;
}

}  // namespace detail

/// Joint eigenspace decomposition by successive refinement in set order.
/// Refuses sets that fail the commutation check.
inline JointSpectrum joint_eigenspaces(const OperatorSet& set, const CompletenessOptions& opts = {}) {
  const auto comm = check_commuting(set, opts.commute_tol);
  if (!comm.pass)
    throw InvariantError("joint_eigenspaces: operators " + comm.worst_pair.first + " and " + comm.worst_pair.second +
                         " do not commute (residual " + std::to_string(comm.max_residual) + ")");
  return detail::refine(set, opts.cluster_tol);
}

enum class Verdict { complete, incomplete };

inline std::string_view to_string(Verdict v) { return v == Verdict::complete ? "complete" : "incomplete"; }

struct CompletenessReport {
  CommutationReport commutation;
  RankReport rank;
  JointSpectrum spectrum;
  int max_block_dim = 0;
  Verdict verdict = Verdict::incomplete;
  long long expected_count = 0;  // closed form for the basis kind
  long long actual_count = 0;    // operators analysed, extras included
  int extra_operators = 0;
};

/// Full completeness analysis. An optional extra operator (the exchange
/// operator) is appended after verifying that it commutes with the set.
inline CompletenessReport completeness_report(const OperatorSet& set, const std::optional<Matrix>& extra = std::nullopt,
                                              const CompletenessOptions& opts = {}) {
  CompletenessReport rep;
  rep.commutation = check_commuting(set, opts.commute_tol);
  if (!rep.commutation.pass)
    throw InvariantError("operator set does not commute: " + rep.commutation.worst_pair.first + ", " +
                         rep.commutation.worst_pair.second);

  OperatorSet full = set;
  if (extra) {
    if (extra->rows() != set.dim()) throw DomainError("appended operator has the wrong dimension");
    const double en = extra->norm();
    const double floor = detail::zero_floor(set);
    for (const auto& it : set.items) {
      const double norm = it.matrix.norm();
      const double denom = en * norm;
      const double r = denom == 0.0 || norm <= floor ? 0.0 : commutator(*extra, it.matrix).norm() / denom;
      if (r >= opts.commute_tol)
        throw InvariantError("appended operator does not commute with " + render(it.label) + " (residual " +
                             std::to_string(r) + ")");
    }
    full.items.push_back({Exchange{}, *extra});
    rep.extra_operators = 1;
  }

  rep.rank = matrix_rank(full, opts.scalar_tol);
  rep.spectrum = detail::refine(full, opts.cluster_tol);
  rep.max_block_dim = rep.spectrum.max_block_dim();
  rep.verdict = rep.max_block_dim == 1 ? Verdict::complete : Verdict::incomplete;
  rep.expected_count = closed_form_count(set.n, set.basis_kind);
  rep.actual_count = static_cast<long long>(full.size());
  return rep;
}

}  // namespace liebasis
