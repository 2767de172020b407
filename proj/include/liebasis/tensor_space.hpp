#pragma once

// Operators on a two-factor product space. Kronecker convention: the first
// factor varies slowest, so basis vector (i, j) sits at index i * dim2 + j.

#include "liebasis/lie_core.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <memory>

namespace liebasis {

class ProductSpace {
 public:
  ProductSpace(Representation rep1, Representation rep2)
      : rep1_(std::make_shared<const Representation>(std::move(rep1))),
        rep2_(std::make_shared<const Representation>(std::move(rep2))) {
    if (rep1_->n != rep2_->n || rep1_->generator_count() != rep2_->generator_count())
      throw DomainError("product factors must represent the same su(n)");
  }

  const Representation& rep1() const { return *rep1_; }
  const Representation& rep2() const { return *rep2_; }
  const Representation& factor(int f) const { return f == 1 ? *rep1_ : *rep2_; }
  int n() const { return rep1_->n; }
  int dim() const { return rep1_->dim * rep2_->dim; }
  bool identical_factors() const { return rep1_->kind == rep2_->kind && rep1_->dim == rep2_->dim; }

  /// A (x) I
  Matrix lift_first(const Matrix& a) const {
    check_dim(a, rep1_->dim, "lift_first");
    return Eigen::kroneckerProduct(a, Matrix::Identity(rep2_->dim, rep2_->dim)).eval();
  }

  /// I (x) A
  Matrix lift_second(const Matrix& a) const {
    check_dim(a, rep2_->dim, "lift_second");
    return Eigen::kroneckerProduct(Matrix::Identity(rep1_->dim, rep1_->dim), a).eval();
  }

  Matrix lift(int f, const Matrix& a) const { return f == 1 ? lift_first(a) : lift_second(a); }

  /// A1 (x) I + I (x) A2
  Matrix couple(const Matrix& a1, const Matrix& a2) const { return lift_first(a1) + lift_second(a2); }

  /// Generator-wise coupling R(T_a) = R1(T_a) (x) I + I (x) R2(T_a).
  Representation coupled_rep() const {
    Representation rep{RepKind::product, n(), dim(), {}};
    rep.matrices.reserve(rep1_->matrices.size());
    for (int a = 0; a < rep1_->generator_count(); ++a) rep.matrices.push_back(couple((*rep1_)[a], (*rep2_)[a]));
    return rep;
  }

  /// Factor swap u (x) v -> v (x) u; defined only for identical factors.
  Matrix exchange_operator() const {
    if (!identical_factors()) throw DomainError("exchange undefined for distinct factors");
    const int d = rep1_->dim;
    Matrix p = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) p(j * d + i, i * d + j) = 1.0;
    return p;
  }

 private:
  static void check_dim(const Matrix& a, int dim, const char* what) {
    if (a.rows() != dim || a.cols() != dim)
      throw DomainError(std::string(what) + ": expected " + std::to_string(dim) + "x" + std::to_string(dim) +
                        " matrix, got " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }

  std::shared_ptr<const Representation> rep1_;
  std::shared_ptr<const Representation> rep2_;
};

}  // namespace liebasis
