#pragma once

// su(n) generator bases in subgroup-chain order, structure constants and the
// three concretely materialized representations (defining, conjugate,
// adjoint).
//
// Normalization is Tr(T_a T_b) = 1/2 delta_ab throughout. Generator indices
// are 0-based in code; index a belongs to the embedded su(m) block for every
// m with a < m*m - 1.

#include "liebasis/types.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace liebasis {

struct AlgebraSpec {
  int n = 2;

  explicit AlgebraSpec(int n_) : n(n_) {
    if (n < 2) throw DomainError("su(n) requires n >= 2, got n = " + std::to_string(n));
  }
  int rank() const { return n - 1; }
  int generator_count() const { return n * n - 1; }
};

/// Number of generators spanning the embedded su(m).
constexpr int subalgebra_size(int m) { return m * m - 1; }

class GeneratorBasis {
 public:
  const AlgebraSpec& spec() const { return spec_; }
  int n() const { return spec_.n; }
  int size() const { return static_cast<int>(matrices_.size()); }

  const Matrix& operator[](int a) const { return matrices_[static_cast<std::size_t>(a)]; }
  const std::vector<Matrix>& matrices() const { return matrices_; }

  /// Smallest m such that generator a lies in the embedded su(m).
  int subgroup_level(int a) const { return levels_[static_cast<std::size_t>(a)]; }
  bool is_cartan(int a) const { return cartan_[static_cast<std::size_t>(a)]; }

  /// Index of the diagonal generator introduced at level m (2 <= m <= n).
  static int cartan_index(int m) { return subalgebra_size(m) - 1; }

 private:
  explicit GeneratorBasis(AlgebraSpec spec) : spec_(spec) {}
  friend GeneratorBasis build_generators(int n);

  AlgebraSpec spec_;
  std::vector<Matrix> matrices_;
  std::vector<int> levels_;
  std::vector<bool> cartan_;
};

/// Generalized Gell-Mann basis. Level m contributes the symmetric and
/// antisymmetric off-diagonal pairs (i, m-1) for i < m-1 followed by one
/// diagonal generator, so that n = 3 reproduces lambda_1..lambda_8 / 2.
inline GeneratorBasis build_generators(int n) {
  GeneratorBasis basis{AlgebraSpec(n)};
  const cplx I(0.0, 1.0);
  for (int m = 2; m <= n; ++m) {
    const int j = m - 1;
    for (int i = 0; i < j; ++i) {
      Matrix sym = Matrix::Zero(n, n);
      sym(i, j) = 0.5;
      sym(j, i) = 0.5;
      Matrix asym = Matrix::Zero(n, n);
      asym(i, j) = -0.5 * I;
      asym(j, i) = 0.5 * I;
      for (Matrix* g : {&sym, &asym}) {
        basis.matrices_.push_back(std::move(*g));
        basis.levels_.push_back(m);
        basis.cartan_.push_back(false);
      }
    }
    Matrix diag = Matrix::Zero(n, n);
    const double scale = 1.0 / std::sqrt(2.0 * m * (m - 1));
    for (int i = 0; i < j; ++i) diag(i, i) = scale;
    diag(j, j) = -static_cast<double>(j) * scale;
    basis.matrices_.push_back(std::move(diag));
    basis.levels_.push_back(m);
    basis.cartan_.push_back(true);
  }
  return basis;
}

/// Largest violation of the GeneratorBasis invariants (hermiticity,
/// tracelessness, orthonormality, block support, Cartan diagonality).
inline double basis_defect(const GeneratorBasis& basis) {
  double worst = 0.0;
  const int n = basis.n();
  for (int a = 0; a < basis.size(); ++a) {
    const Matrix& t = basis[a];
    worst = std::max(worst, hermitian_defect(t));
    worst = std::max(worst, std::abs(t.trace()));
    for (int b = 0; b < basis.size(); ++b) {
      const double expect = a == b ? 0.5 : 0.0;
      worst = std::max(worst, std::abs((t * basis[b]).trace() - expect));
    }
    const int m = basis.subgroup_level(a);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (r >= m || c >= m) worst = std::max(worst, std::abs(t(r, c)));
    if (basis.is_cartan(a)) {
      Matrix off = t;
      off.diagonal().setZero();
      worst = std::max(worst, off.norm());
    }
  }
  return worst;
}

/// Expansion coefficients c_a = 2 Tr(T_a X) of a traceless n x n matrix X,
/// so that X = sum_a c_a T_a (complex coefficients for non-Hermitian X).
inline std::vector<cplx> algebra_coefficients(const GeneratorBasis& basis, const Matrix& x) {
  std::vector<cplx> c(static_cast<std::size_t>(basis.size()));
  for (int a = 0; a < basis.size(); ++a) c[static_cast<std::size_t>(a)] = 2.0 * (basis[a] * x).trace();
  return c;
}

// ---------------------------------------------------------------------------
// Structure constants

class StructureConstants {
 public:
  explicit StructureConstants(int count)
      : count_(count),
        f_(static_cast<std::size_t>(count) * count * count, 0.0),
        d_(static_cast<std::size_t>(count) * count * count, 0.0) {}

  int count() const { return count_; }
  double f(int a, int b, int c) const { return f_[idx(a, b, c)]; }
  double d(int a, int b, int c) const { return d_[idx(a, b, c)]; }
  double& f(int a, int b, int c) { return f_[idx(a, b, c)]; }
  double& d(int a, int b, int c) { return d_[idx(a, b, c)]; }

  /// max |sum_d (f_abd f_dce + f_bcd f_dae + f_cad f_dbe)|
  double jacobi_residual() const {
    double worst = 0.0;
    const int N = count_;
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        for (int c = 0; c < N; ++c)
          for (int e = 0; e < N; ++e) {
            double s = 0.0;
            for (int x = 0; x < N; ++x)
              s += f(a, b, x) * f(x, c, e) + f(b, c, x) * f(x, a, e) + f(c, a, x) * f(x, b, e);
            worst = std::max(worst, std::abs(s));
          }
    return worst;
  }

 private:
  std::size_t idx(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * count_ + b) * count_ + c;
  }

  int count_;
  std::vector<double> f_;
  std::vector<double> d_;
};

/// f_abc = -2i Tr([T_a, T_b] T_c), d_abc = 2 Tr({T_a, T_b} T_c). Throws if
/// either comes out non-real beyond the construction tolerance.
inline StructureConstants structure_constants(const GeneratorBasis& basis) {
  const int N = basis.size();
  StructureConstants sc(N);
  const cplx I(0.0, 1.0);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      const Matrix comm = commutator(basis[a], basis[b]);
      const Matrix anti = basis[a] * basis[b] + basis[b] * basis[a];
      for (int c = 0; c < N; ++c) {
        const cplx fv = -2.0 * I * (comm * basis[c]).trace();
        const cplx dv = 2.0 * (anti * basis[c]).trace();
        if (std::abs(fv.imag()) > tol::construction || std::abs(dv.imag()) > tol::construction)
          throw InvariantError("structure constants are not real");
        sc.f(a, b, c) = fv.real();
        sc.d(a, b, c) = dv.real();
      }
    }
  return sc;
}

// ---------------------------------------------------------------------------
// Representations

enum class RepKind { defining, conjugate, adjoint, product };

inline std::string_view to_string(RepKind k) {
  switch (k) {
    case RepKind::defining: return "defining";
    case RepKind::conjugate: return "conjugate";
    case RepKind::adjoint: return "adjoint";
    case RepKind::product: return "product";
  }
  return "?";
}

inline std::optional<RepKind> parse_rep_kind(std::string_view s) {
  if (s == "defining") return RepKind::defining;
  if (s == "conjugate") return RepKind::conjugate;
  if (s == "adjoint") return RepKind::adjoint;
  if (s == "product") return RepKind::product;
  return std::nullopt;
}

struct Representation {
  RepKind kind = RepKind::defining;
  int n = 2;
  int dim = 0;
  std::vector<Matrix> matrices;  // R(T_a), one per generator index

  const Matrix& operator[](int a) const { return matrices[static_cast<std::size_t>(a)]; }
  int generator_count() const { return static_cast<int>(matrices.size()); }

  /// sum_a c_a R(T_a)
  Matrix image(const std::vector<cplx>& coeffs) const {
    Matrix out = Matrix::Zero(dim, dim);
    for (std::size_t a = 0; a < coeffs.size(); ++a)
      if (coeffs[a] != cplx(0.0)) out += coeffs[a] * matrices[a];
    return out;
  }
};

inline Representation defining_rep(const GeneratorBasis& basis) {
  return {RepKind::defining, basis.n(), basis.n(), basis.matrices()};
}

inline Representation conjugate_rep(const GeneratorBasis& basis) {
  Representation rep{RepKind::conjugate, basis.n(), basis.n(), {}};
  rep.matrices.reserve(static_cast<std::size_t>(basis.size()));
  for (const Matrix& t : basis.matrices()) rep.matrices.push_back(-t.transpose());
  return rep;
}

/// (R(T_a))_bc = -i f_abc
inline Representation adjoint_rep(const GeneratorBasis& basis, const StructureConstants& sc) {
  const int N = basis.size();
  Representation rep{RepKind::adjoint, basis.n(), N, {}};
  rep.matrices.reserve(static_cast<std::size_t>(N));
  for (int a = 0; a < N; ++a) {
    Matrix r(N, N);
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) r(b, c) = cplx(0.0, -sc.f(a, b, c));
    rep.matrices.push_back(std::move(r));
  }
  return rep;
}

/// Builds one of the three irreducible representations materialized here.
inline Representation make_rep(RepKind kind, const GeneratorBasis& basis, const StructureConstants& sc) {
  switch (kind) {
    case RepKind::defining: return defining_rep(basis);
    case RepKind::conjugate: return conjugate_rep(basis);
    case RepKind::adjoint: return adjoint_rep(basis, sc);
    case RepKind::product: break;
  }
  throw DomainError("make_rep: product representations are built by coupled_rep");
}

/// max_{a,b} ||[R_a, R_b] - i sum_c f_abc R_c||_F
inline double homomorphism_residual(const Representation& rep, const StructureConstants& sc) {
  const int N = rep.generator_count();
  if (N != sc.count()) throw DomainError("representation and structure constants disagree on generator count");
  const cplx I(0.0, 1.0);
  double worst = 0.0;
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b) {
      Matrix r = commutator(rep[a], rep[b]);
      for (int c = 0; c < N; ++c) {
        const double fv = sc.f(a, b, c);
        if (fv != 0.0) r -= I * fv * rep[c];
      }
      worst = std::max(worst, r.norm());
    }
  return worst;
}

inline double rep_hermitian_defect(const Representation& rep) {
  double worst = 0.0;
  for (const Matrix& m : rep.matrices) worst = std::max(worst, hermitian_defect(m));
  return worst;
}

// ---------------------------------------------------------------------------
// Cartan weight operators

/// sqrt(2k/(k+1)): rescales the k-th Cartan generator so that the defining
/// representation has eigenvalues 1/(k+1) (k times) and -k/(k+1).
inline double weight_scale(int k) { return std::sqrt(2.0 * k / (k + 1.0)); }

/// Generator index carrying weight operator W_k (1 <= k <= n-1).
inline int weight_generator(int k) { return GeneratorBasis::cartan_index(k + 1); }

struct WeightOperator {
  int index = 1;  // k, 1-based
  std::string label;
  Matrix matrix;  // defining-representation matrix
};

/// Conventional name of W_k: I3, Y, Z for k = 1, 2, 3 and W[k] beyond.
inline std::string weight_name(int k) {
  switch (k) {
    case 1: return "I3";
    case 2: return "Y";
    case 3: return "Z";
    default: return "W[" + std::to_string(k) + "]";
  }
}

inline std::vector<WeightOperator> weight_operators(const GeneratorBasis& basis) {
  std::vector<WeightOperator> out;
  for (int k = 1; k < basis.n(); ++k)
    out.push_back({k, weight_name(k), weight_scale(k) * basis[weight_generator(k)]});
  return out;
}

/// Image of W_k in an arbitrary representation.
inline Matrix weight_in_rep(const Representation& rep, int k) {
  if (k < 1 || k >= rep.n) throw DomainError("weight index out of range: " + std::to_string(k));
  return weight_scale(k) * rep[weight_generator(k)];
}

}  // namespace liebasis
