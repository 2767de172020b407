#pragma once

// Casimir operators of the full algebra and of every embedded su(m), built as
// Gelfand invariants.
//
// For the subalgebra su(m) the mixing matrix is M = sum_a t_a (x) R(T_a),
// where t_a is the top-left m x m block of T_a and a runs over the su(m)
// indices. Its partial trace over the auxiliary factor,
//
//     C_k = 2 Tr_aux(M^k) = 2 sum Tr(t_a1 ... t_ak) R_a1 ... R_ak,
//
// commutes with R(su(m)). C_2 = sum_a R_a^2. The cubic invariant carries a
// -(m/4) C_2 admixture from the f-part of Tr(t_a t_b t_c); it is removed so
// that C_3 = 1/2 sum d_abc R_a R_b R_c is odd under conjugation. Higher
// orders keep their lower-order admixtures, which leave eigenspaces intact.

#include "liebasis/lie_core.hpp"

#include <string>

namespace liebasis {

struct CasimirKey {
  int subgroup_m = 2;
  int order_k = 2;

  friend bool operator==(const CasimirKey&, const CasimirKey&) = default;
  friend auto operator<=>(const CasimirKey&, const CasimirKey&) = default;
};

inline void validate_key(const CasimirKey& key, int n) {
  if (!(2 <= key.order_k && key.order_k <= key.subgroup_m && key.subgroup_m <= n))
    throw DomainError("Casimir key (m=" + std::to_string(key.subgroup_m) + ", k=" + std::to_string(key.order_k) +
                      ") out of range for su(" + std::to_string(n) + ")");
}

/// Conventional operator symbol for a Casimir key: I2, F2, G3, A3, B3, C3
/// where these exist, C[m,k] otherwise.
inline std::string casimir_name(const CasimirKey& key) {
  const int m = key.subgroup_m, k = key.order_k;
  if (m == 2 && k == 2) return "I2";
  if (m == 3 && k == 2) return "F2";
  if (m == 3 && k == 3) return "G3";
  if (m == 4 && k == 2) return "A3";
  if (m == 4 && k == 3) return "B3";
  if (m == 4 && k == 4) return "C3";
  return "C[" + std::to_string(m) + "," + std::to_string(k) + "]";
}

namespace detail {

/// Mixing matrix for su(m): block (i, j) equals sum_a (t_a)_ij R(T_a).
inline Matrix mixing_matrix(const Representation& rep, const GeneratorBasis& basis, int m) {
  const int dim = rep.dim;
  Matrix mix = Matrix::Zero(static_cast<Eigen::Index>(m) * dim, static_cast<Eigen::Index>(m) * dim);
  for (int a = 0; a < subalgebra_size(m); ++a) {
    const Matrix& t = basis[a];
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (t(i, j) != cplx(0.0)) mix.block(i * dim, j * dim, dim, dim) += t(i, j) * rep[a];
  }
  return mix;
}

/// Sum of the diagonal dim x dim blocks of power * mix.
inline Matrix trace_of_product(const Matrix& power, const Matrix& mix, int m, int dim) {
  Matrix out = Matrix::Zero(dim, dim);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      out.noalias() += power.block(i * dim, j * dim, dim, dim) * mix.block(j * dim, i * dim, dim, dim);
  return out;
}

/// All Gelfand invariants 2 Tr_aux(M^k) for k = 2..max_k (index k-2).
inline std::vector<Matrix> gelfand_invariants(const Representation& rep, const GeneratorBasis& basis, int m,
                                              int max_k) {
  const int dim = rep.dim;
  const Matrix mix = mixing_matrix(rep, basis, m);
  std::vector<Matrix> out;
  Matrix power = mix;
  for (int k = 2; k <= max_k; ++k) {
    out.push_back(2.0 * trace_of_product(power, mix, m, dim));
    if (k < max_k) power = power * mix;
  }
  return out;
}

inline Matrix finish(const Matrix& raw, const std::vector<Matrix>& lower, int m, int k) {
  Matrix c = raw;
  if (k == 3) c += (m / 4.0) * lower[0];
  return 0.5 * (c + c.adjoint());
}

}  // namespace detail

/// Casimir operator of order key.order_k of the embedded su(key.subgroup_m),
/// evaluated in rep. Commutes with every R(T_a) with subgroup level <= m.
inline Matrix casimir(const Representation& rep, const GeneratorBasis& basis, const CasimirKey& key) {
  validate_key(key, basis.n());
  if (rep.generator_count() != basis.size()) throw DomainError("representation does not match generator basis");
  const auto inv = detail::gelfand_invariants(rep, basis, key.subgroup_m, key.order_k);
  return detail::finish(inv.back(), inv, key.subgroup_m, key.order_k);
}

/// Casimirs of orders 2..m of su(m) in one pass (shares the matrix powers).
inline std::vector<Matrix> casimir_tower(const Representation& rep, const GeneratorBasis& basis, int m) {
  validate_key({m, 2}, basis.n());
  const auto inv = detail::gelfand_invariants(rep, basis, m, m);
  std::vector<Matrix> out;
  for (int k = 2; k <= m; ++k) out.push_back(detail::finish(inv[static_cast<std::size_t>(k - 2)], inv, m, k));
  return out;
}

/// Quadratic Casimir by direct summation, sum_a R(T_a)^2 over su(m) indices.
inline Matrix quadratic_casimir_direct(const Representation& rep, int m) {
  Matrix c = Matrix::Zero(rep.dim, rep.dim);
  for (int a = 0; a < subalgebra_size(m); ++a) c.noalias() += rep[a] * rep[a];
  return c;
}

/// Scalar value of a Casimir on an irreducible representation. Throws when
/// the Casimir is not proportional to the identity.
inline double casimir_eigenvalue_on_irrep(const Representation& rep, const GeneratorBasis& basis,
                                          const CasimirKey& key, double scalar_tol = tol::scalar) {
  const Matrix c = casimir(rep, basis, key);
  const double value = c.trace().real() / rep.dim;
  const double norm = c.norm();
  if (scalar_defect(c) > scalar_tol * std::max(norm, 1.0))
    throw InvariantError("representation not irreducible or tolerance too tight");
  return value;
}

}  // namespace liebasis
