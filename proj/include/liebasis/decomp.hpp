#pragma once

// Isotypic decomposition of a product representation by coupled Casimir
// fingerprints.
//
// Each component is the joint eigenspace of the coupled full-algebra
// Casimirs (orders 2..n). Its multiplicity is read off independently as the
// dimension of the highest-weight space inside it (vectors annihilated by
// the simple raising operators E_{i,i+1}); the highest weight gives Dynkin
// labels and, through the Weyl dimension formula, the irrep dimension. For
// su(3) components are additionally identified as D(p, q) from the Casimir
// values alone.

#include "liebasis/completeness.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace liebasis {

/// Weyl dimension formula for su(n) in Dynkin labels a_1..a_{n-1}:
/// prod_{i<j} (sum_{k=i}^{j-1} (a_k + 1)) / (j - i).
inline long long weyl_dimension(const std::vector<int>& dynkin) {
  const int r = static_cast<int>(dynkin.size());
  // Evaluate as a rational product; numerator and denominator stay small for
  // the representations handled here.
  long double num = 1.0L, den = 1.0L;
  for (int i = 0; i < r; ++i) {
    long long partial = 0;
    for (int j = i; j < r; ++j) {
      partial += dynkin[static_cast<std::size_t>(j)] + 1;
      num *= static_cast<long double>(partial);
      den *= static_cast<long double>(j - i + 1);
    }
  }
  return std::llround(num / den);
}

/// dim D(p, q) = (p+1)(q+1)(p+q+2)/2
inline long long su3_dimension(int p, int q) { return static_cast<long long>(p + 1) * (q + 1) * (p + q + 2) / 2; }

struct Su3Label {
  int p = 0;
  int q = 0;
  long long dim = 1;
  friend bool operator==(const Su3Label&, const Su3Label&) = default;
};

/// Maps (p, q) to this library's Casimir values. Both constants are measured
/// once on the defining representation D(1, 0):
///   c2(p, q) = quad * (p^2 + q^2 + pq + 3p + 3q) / 3
///   c3(p, q) = cubic * (p - q)(2p + q + 3)(p + 2q + 3)
struct Su3Calibration {
  double quad = 1.0;
  double cubic = 1.0;

  double c2(int p, int q) const { return quad * (p * p + q * q + p * q + 3.0 * p + 3.0 * q) / 3.0; }
  double c3(int p, int q) const { return cubic * (p - q) * (2.0 * p + q + 3.0) * (p + 2.0 * q + 3.0); }

  static Su3Calibration from_basis(const GeneratorBasis& basis) {
    if (basis.n() != 3) throw DomainError("su(3) calibration requires n = 3");
    const Representation def = defining_rep(basis);
    Su3Calibration cal;
    cal.quad = casimir_eigenvalue_on_irrep(def, basis, {3, 2}) / (4.0 / 3.0);
    cal.cubic = casimir_eigenvalue_on_irrep(def, basis, {3, 3}) / 20.0;
    return cal;
  }
};

/// Identifies an su(3) irrep from its (c2, c3) fingerprint by scanning
/// p + q <= p_max. Returns nullopt when nothing matches.
inline std::optional<Su3Label> su3_identify(const std::vector<double>& fingerprint, const Su3Calibration& cal,
                                            int p_max = 8, double match_tol = tol::fingerprint) {
  if (fingerprint.size() != 2) throw DomainError("su(3) fingerprints have two entries (orders 2 and 3)");
  const auto close = [&](double a, double b) { return std::abs(a - b) <= match_tol * std::max({1.0, std::abs(a), std::abs(b)}); };
  for (int s = 0; s <= p_max; ++s)
    for (int p = s; p >= 0; --p) {
      const int q = s - p;
      if (close(fingerprint[0], cal.c2(p, q)) && close(fingerprint[1], cal.c3(p, q))) return Su3Label{p, q, su3_dimension(p, q)};
    }
  return std::nullopt;
}

struct IsotypicComponent {
  std::vector<double> fingerprint;  // coupled Casimir values, orders 2..n
  int total_dim = 0;
  std::optional<long long> irrep_dim;
  std::optional<int> multiplicity;
  std::vector<int> highest_weight;  // Dynkin labels, empty when unresolved
  int highest_weight_space_dim = 0;
  std::optional<Su3Label> su3_labels;
  Matrix basis;  // orthonormal columns spanning the component
};

namespace detail {

/// Raising operator E_{i,i+1} and Cartan element E_ii - E_{i+1,i+1} in rep.
inline std::pair<Matrix, Matrix> simple_root_pair(const Representation& rep, const GeneratorBasis& basis, int i) {
  const int n = basis.n();
  Matrix e = Matrix::Zero(n, n);
  e(i, i + 1) = 1.0;
  Matrix h = Matrix::Zero(n, n);
  h(i, i) = 1.0;
  h(i + 1, i + 1) = -1.0;
  return {rep.image(algebra_coefficients(basis, e)), rep.image(algebra_coefficients(basis, h))};
}

inline void resolve_highest_weight(IsotypicComponent& comp, const Representation& rep, const GeneratorBasis& basis) {
  const int n = basis.n();
  const Eigen::Index d = comp.basis.cols();
  Matrix k = Matrix::Zero(d, d);
  std::vector<Matrix> cartans;
  for (int i = 0; i + 1 < n; ++i) {
    auto [raise, cartan] = simple_root_pair(rep, basis, i);
    const Matrix img = raise * comp.basis;
    k.noalias() += img.adjoint() * img;
    cartans.push_back(std::move(cartan));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (k + k.adjoint()));
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  int kernel = 0;
  while (kernel < d && es.eigenvalues()(kernel) <= 1e-8 * scale) ++kernel;
  comp.highest_weight_space_dim = kernel;
  if (kernel == 0) return;
  const Matrix v = comp.basis * es.eigenvectors().col(0);
  std::vector<int> dynkin;
  for (const Matrix& h : cartans) {
    const double w = (v.adjoint() * h * v)(0, 0).real();
    const long r = std::lround(w);
    if (std::abs(w - static_cast<double>(r)) > 1e-6 || r < 0) return;
    dynkin.push_back(static_cast<int>(r));
  }
  comp.highest_weight = std::move(dynkin);
}

}  // namespace detail

/// Multiplicity sigma = total_dim / irrep_dim; throws when the ratio is not an
/// exact integer or disagrees with the highest-weight-space dimension.
inline int multiplicity_of(const IsotypicComponent& comp) {
  if (!comp.irrep_dim || *comp.irrep_dim <= 0) throw InvariantError("irrep dimension unknown");
  if (comp.total_dim % *comp.irrep_dim != 0) throw InvariantError("identification inconsistent: non-integer multiplicity");
  const int sigma = static_cast<int>(comp.total_dim / *comp.irrep_dim);
  if (comp.highest_weight_space_dim != 0 && sigma != comp.highest_weight_space_dim)
    throw InvariantError("identification inconsistent: highest-weight space has dimension " +
                         std::to_string(comp.highest_weight_space_dim) + ", expected " + std::to_string(sigma));
  return sigma;
}

/// Components sorted by descending total_dim, then lexicographic fingerprint.
inline std::vector<IsotypicComponent> isotypic_decomposition(const ProductSpace& ps, const GeneratorBasis& basis,
                                                             const CompletenessOptions& opts = {},
                                                             const OperatorCache* cache = nullptr) {
  const int n = basis.n();
  std::vector<OperatorLabel> labels;
  for (int k = 2; k <= n; ++k) labels.emplace_back(CoupledCasimir{{n, k}});
  const OperatorSet casimirs = materialize(labels, ps, basis, BasisKind::coupled, cache);
  const JointSpectrum spectrum = joint_eigenspaces(casimirs, opts);

  const Representation coupled = ps.coupled_rep();
  std::optional<Su3Calibration> cal;
  if (n == 3) cal = Su3Calibration::from_basis(basis);

  std::vector<IsotypicComponent> out;
  for (const auto& block : spectrum.blocks) {
    IsotypicComponent comp;
    comp.fingerprint = block.eigenvalues;
    comp.total_dim = block.dim;
    comp.basis = block.basis;
    detail::resolve_highest_weight(comp, coupled, basis);
    if (!comp.highest_weight.empty()) comp.irrep_dim = weyl_dimension(comp.highest_weight);
    if (cal) comp.su3_labels = su3_identify(comp.fingerprint, *cal);
    if (comp.irrep_dim && comp.total_dim % *comp.irrep_dim == 0) comp.multiplicity = multiplicity_of(comp);
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end(), [](const IsotypicComponent& a, const IsotypicComponent& b) {
    if (a.total_dim != b.total_dim) return a.total_dim > b.total_dim;
    return a.fingerprint < b.fingerprint;
  });
  return out;
}

struct MultiplicityEntry {
  std::vector<int> highest_weight;
  std::optional<Su3Label> su3_labels;
  long long irrep_dim = 0;
  int sigma = 0;
};

/// sigma for every component. For su(3) the (p, q) identification must agree
/// with the highest weight found in the component.
inline std::vector<MultiplicityEntry> multiplicities(const std::vector<IsotypicComponent>& comps) {
  std::vector<MultiplicityEntry> out;
  for (const auto& c : comps) {
    if (c.su3_labels && !c.highest_weight.empty() &&
        (c.highest_weight != std::vector<int>{c.su3_labels->p, c.su3_labels->q}))
      throw InvariantError("identification inconsistent: Casimir labels disagree with highest weight");
    out.push_back({c.highest_weight, c.su3_labels, c.irrep_dim.value_or(0), multiplicity_of(c)});
  }
  return out;
}

}  // namespace liebasis
