#include "liebasis/casimir.hpp"
#include "liebasis/tensor_space.hpp"

#include <gtest/gtest.h>

using namespace liebasis;

namespace {

/// sum_abc d_abc R_a R_b R_c over the full algebra.
Matrix d_tensor_cubic(const Representation& rep, const StructureConstants& sc) {
  const int N = sc.count();
  Matrix out = Matrix::Zero(rep.dim, rep.dim);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      Matrix ab = Matrix::Zero(rep.dim, rep.dim);
      for (int c = 0; c < N; ++c)
        if (sc.d(a, b, c) != 0.0) ab += sc.d(a, b, c) * rep[c];
      if (!ab.isZero(0.0)) out += rep[a] * rep[b] * ab;
    }
  return out;
}

std::vector<Representation> irreps(const GeneratorBasis& basis, const StructureConstants& sc) {
  return {defining_rep(basis), conjugate_rep(basis), adjoint_rep(basis, sc)};
}

}  // namespace

TEST(Casimir, Su2DefiningQuadratic) {
  const auto basis = build_generators(2);
  // Oracle: sum_a (sigma_a / 2)^2 = 3/4 I.
  Matrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, cplx(0, -1), cplx(0, 1), 0;
  sz << 1, 0, 0, -1;
  const Matrix oracle = (sx * sx + sy * sy + sz * sz) / 4.0;
  const Matrix c = casimir(defining_rep(basis), basis, {2, 2});
  EXPECT_LT((c - oracle).norm(), 1e-14);
  EXPECT_LT((c - 0.75 * Matrix::Identity(2, 2)).norm(), 1e-14);
  EXPECT_NEAR(casimir_eigenvalue_on_irrep(defining_rep(basis), basis, {2, 2}), 0.75, 1e-14);
}

TEST(Casimir, Su3QuadraticValues) {
  const auto basis = build_generators(3);
  const auto sc = structure_constants(basis);
  EXPECT_LT((casimir(defining_rep(basis), basis, {3, 2}) - (4.0 / 3.0) * Matrix::Identity(3, 3)).norm(), 1e-13);
  const auto adj = adjoint_rep(basis, sc);
  const Matrix direct = quadratic_casimir_direct(adj, 3);
  EXPECT_LT((direct - 3.0 * Matrix::Identity(8, 8)).norm(), 1e-12);
  EXPECT_LT((casimir(adj, basis, {3, 2}) - direct).norm(), 1e-12);
}

TEST(Casimir, Su4AdjointQuadraticIsFour) {
  const auto basis = build_generators(4);
  const auto adj = adjoint_rep(basis, structure_constants(basis));
  EXPECT_NEAR(quadratic_casimir_direct(adj, 4)(0, 0).real(), 4.0, 1e-12);
  EXPECT_NEAR(casimir_eigenvalue_on_irrep(adj, basis, {4, 2}), 4.0, 1e-12);
}

TEST(Casimir, Su3CubicOddUnderConjugation) {
  const auto basis = build_generators(3);
  const auto sc = structure_constants(basis);
  const auto def = defining_rep(basis), conj = conjugate_rep(basis);
  const double oracle_def = d_tensor_cubic(def, sc).trace().real() / 3.0;
  const double oracle_conj = d_tensor_cubic(conj, sc).trace().real() / 3.0;
  EXPECT_NEAR(oracle_def, 10.0 / 9.0, 1e-13);
  EXPECT_NEAR(oracle_conj, -10.0 / 9.0, 1e-13);
  const double g_def = casimir_eigenvalue_on_irrep(def, basis, {3, 3});
  const double g_conj = casimir_eigenvalue_on_irrep(conj, basis, {3, 3});
  EXPECT_NEAR(g_def, -g_conj, 1e-13);
  EXPECT_GT(std::abs(g_def), 0.1);
}

TEST(Casimir, CubicAgreesWithDTensorUpToFixedAffineMap) {
  const auto basis = build_generators(3);
  const auto sc = structure_constants(basis);
  const auto def = defining_rep(basis), conj = conjugate_rep(basis);
  // c_gelfand = alpha * c_d + beta, calibrated on the defining/conjugate pair.
  const double gd = casimir_eigenvalue_on_irrep(def, basis, {3, 3});
  const double gc = casimir_eigenvalue_on_irrep(conj, basis, {3, 3});
  const double dd = d_tensor_cubic(def, sc).trace().real() / 3.0;
  const double dc = d_tensor_cubic(conj, sc).trace().real() / 3.0;
  const double alpha = (gd - gc) / (dd - dc);
  const double beta = gd - alpha * dd;
  const ProductSpace ps(adjoint_rep(basis, sc), adjoint_rep(basis, sc));
  const auto coupled = ps.coupled_rep();
  const Matrix g = casimir(coupled, basis, {3, 3});
  const Matrix d = d_tensor_cubic(coupled, sc);
  EXPECT_LT((g - (alpha * d + beta * Matrix::Identity(64, 64))).norm() / d.norm(), 1e-10);
}

TEST(Casimir, KeyValidation) {
  const auto basis = build_generators(3);
  const auto def = defining_rep(basis);
  EXPECT_THROW(casimir(def, basis, {2, 3}), DomainError);
  EXPECT_THROW(casimir(def, basis, {4, 2}), DomainError);
  EXPECT_THROW(casimir(def, basis, {3, 1}), DomainError);
}

TEST(Casimir, CommutantHermiticityScalarity) {
  for (int n = 2; n <= 4; ++n) {
    const auto basis = build_generators(n);
    const auto sc = structure_constants(basis);
    for (const auto& rep : irreps(basis, sc)) {
      for (int m = 2; m <= n; ++m) {
        const auto raw = detail::gelfand_invariants(rep, basis, m, m);
        const auto tower = casimir_tower(rep, basis, m);
        for (int k = 2; k <= m; ++k) {
          const Matrix& c = tower[static_cast<std::size_t>(k - 2)];
          const Matrix& r = raw[static_cast<std::size_t>(k - 2)];
          // Odd orders vanish on self-conjugate irreps, so floor the scale at 1.
          const double scale = std::max(c.norm(), 1.0);
          EXPECT_LT(hermitian_defect(r), 1e-10 * std::max(r.norm(), 1.0));
          for (int a = 0; a < subalgebra_size(m); ++a)
            EXPECT_LT(commutator(c, rep[a]).norm() / scale, 1e-9)
                << "n=" << n << " " << to_string(rep.kind) << " m=" << m << " k=" << k;
          if (m == n) {
            EXPECT_LT(scalar_defect(c), 1e-8 * std::max(c.norm(), 1.0));
          }
          EXPECT_LT((c - casimir(rep, basis, {m, k})).norm(), 1e-12 * std::max(scale, 1.0));
        }
        EXPECT_LT((tower[0] - quadratic_casimir_direct(rep, m)).norm(), 1e-10 * tower[0].norm());
      }
    }
  }
}

TEST(Casimir, ProductRepresentationIsNotScalar) {
  const auto basis = build_generators(2);
  const ProductSpace ps(defining_rep(basis), defining_rep(basis));
  EXPECT_THROW(casimir_eigenvalue_on_irrep(ps.coupled_rep(), basis, {2, 2}), InvariantError);
}

TEST(Casimir, Names) {
  EXPECT_EQ(casimir_name({3, 3}), "G3");
  EXPECT_EQ(casimir_name({3, 2}), "F2");
  EXPECT_EQ(casimir_name({2, 2}), "I2");
  EXPECT_EQ(casimir_name({4, 2}), "A3");
  EXPECT_EQ(casimir_name({4, 3}), "B3");
  EXPECT_EQ(casimir_name({4, 4}), "C3");
  EXPECT_EQ(casimir_name({5, 4}), "C[5,4]");
}
