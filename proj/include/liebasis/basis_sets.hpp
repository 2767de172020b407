#pragma once

// Symbolic label sets for the single-IR, product (uncoupled) and coupled
// bases, their closed-form sizes, and materialization as matrices.

#include "liebasis/casimir.hpp"
#include "liebasis/operator_cache.hpp"
#include "liebasis/tensor_space.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace liebasis {

// ---------------------------------------------------------------------------
// Closed-form counts

inline void require_n(int n) {
  if (n < 2) throw DomainError("su(n) requires n >= 2, got n = " + std::to_string(n));
}

/// Labels for one irreducible representation: n(n+1)/2 - 1.
inline long long count_single_ir(long long n) {
  require_n(static_cast<int>(n));
  return n * (n + 1) / 2 - 1;
}

/// Uncoupled basis: (n+2)(n-1).
inline long long count_product(long long n) {
  require_n(static_cast<int>(n));
  return (n + 2) * (n - 1);
}

/// Coupled basis: (n^2 + 5n - 6)/2.
inline long long count_coupled(long long n) {
  require_n(static_cast<int>(n));
  return (n * n + 5 * n - 6) / 2;
}

/// Missing labels: (n-1)(n-2)/2.
inline long long count_difference(long long n) {
  require_n(static_cast<int>(n));
  return (n - 1) * (n - 2) / 2;
}

// ---------------------------------------------------------------------------
// Labels

/// Casimir of one factor, e.g. G3(1).
struct FactorCasimir {
  int factor = 1;
  CasimirKey key;
  friend auto operator<=>(const FactorCasimir&, const FactorCasimir&) = default;
};

/// Casimir of the whole (coupled, or single-IR) representation, e.g. G3.
struct CoupledCasimir {
  CasimirKey key;
  friend auto operator<=>(const CoupledCasimir&, const CoupledCasimir&) = default;
};

struct FactorWeight {
  int factor = 1;
  int index = 1;
  friend auto operator<=>(const FactorWeight&, const FactorWeight&) = default;
};

struct CoupledWeight {
  int index = 1;
  friend auto operator<=>(const CoupledWeight&, const CoupledWeight&) = default;
};

/// Factor swap on identical-factor products.
struct Exchange {
  friend auto operator<=>(const Exchange&, const Exchange&) = default;
};

using OperatorLabel = std::variant<FactorCasimir, CoupledCasimir, FactorWeight, CoupledWeight, Exchange>;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline std::string render(const OperatorLabel& label) {
  const auto suffix = [](int f) { return "(" + std::to_string(f) + ")"; };
  return std::visit(overloaded{
                        [&](const FactorCasimir& l) { return casimir_name(l.key) + suffix(l.factor); },
                        [](const CoupledCasimir& l) { return casimir_name(l.key); },
                        [&](const FactorWeight& l) { return weight_name(l.index) + suffix(l.factor); },
                        [](const CoupledWeight& l) { return weight_name(l.index); },
                        [](const Exchange&) { return std::string("P"); },
                    },
                    label);
}

/// File-name-safe structural key, e.g. "fc1_m3_k3".
inline std::string cache_key(const OperatorLabel& label) {
  const auto key = [](const CasimirKey& k) {
    return "_m" + std::to_string(k.subgroup_m) + "_k" + std::to_string(k.order_k);
  };
  return std::visit(overloaded{
                        [&](const FactorCasimir& l) { return "fc" + std::to_string(l.factor) + key(l.key); },
                        [&](const CoupledCasimir& l) { return "cc" + key(l.key); },
                        [](const FactorWeight& l) {
                          return "fw" + std::to_string(l.factor) + "_w" + std::to_string(l.index);
                        },
                        [](const CoupledWeight& l) { return "cw_w" + std::to_string(l.index); },
                        [](const Exchange&) { return std::string("exchange"); },
                    },
                    label);
}

inline bool is_casimir(const OperatorLabel& l) {
  return std::holds_alternative<FactorCasimir>(l) || std::holds_alternative<CoupledCasimir>(l);
}

enum class BasisKind { single_ir, product, coupled };

inline std::string_view to_string(BasisKind k) {
  switch (k) {
    case BasisKind::single_ir: return "single_ir";
    case BasisKind::product: return "product";
    case BasisKind::coupled: return "coupled";
  }
  return "?";
}

inline long long closed_form_count(int n, BasisKind kind) {
  switch (kind) {
    case BasisKind::single_ir: return count_single_ir(n);
    case BasisKind::product: return count_product(n);
    case BasisKind::coupled: return count_coupled(n);
  }
  return 0;
}

/// Label set of a basis kind.
///
/// single_ir: full Casimirs (orders 2..n), subgroup Casimirs of su(m) for
///            m = n-1 down to 2 (orders 2..m each), weights W_1..W_{n-1};
/// product:   every single_ir label tagged (1) and (2);
/// coupled:   factor Casimirs of both factors, coupled full Casimirs,
///            coupled subgroup Casimirs, coupled weights.
///
/// Single-IR labels are expressed as CoupledCasimir / CoupledWeight, i.e.
/// operators on the whole representation.
inline std::vector<OperatorLabel> enumerate_labels(int n, BasisKind kind) {
  require_n(n);
  std::vector<OperatorLabel> single;
  for (int k = 2; k <= n; ++k) single.emplace_back(CoupledCasimir{{n, k}});
  for (int m = n - 1; m >= 2; --m)
    for (int k = 2; k <= m; ++k) single.emplace_back(CoupledCasimir{{m, k}});
  for (int w = 1; w < n; ++w) single.emplace_back(CoupledWeight{w});

  switch (kind) {
    case BasisKind::single_ir: return single;
    case BasisKind::product: {
      std::vector<OperatorLabel> out;
      for (const auto& l : single) {
        for (int f = 1; f <= 2; ++f) {
          if (const auto* c = std::get_if<CoupledCasimir>(&l))
            out.emplace_back(FactorCasimir{f, c->key});
          else
            out.emplace_back(FactorWeight{f, std::get<CoupledWeight>(l).index});
        }
      }
      return out;
    }
    case BasisKind::coupled: {
      std::vector<OperatorLabel> out;
      for (int k = n; k >= 2; --k)
        for (int f = 1; f <= 2; ++f) out.emplace_back(FactorCasimir{f, {n, k}});
      for (const auto& l : single) out.push_back(l);
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Materialized sets

struct LabeledOperator {
  OperatorLabel label;
  Matrix matrix;
};

struct OperatorSet {
  BasisKind basis_kind = BasisKind::coupled;
  int n = 2;
  std::vector<LabeledOperator> items;
  std::pair<RepKind, RepKind> provenance{RepKind::defining, RepKind::defining};

  std::size_t size() const { return items.size(); }
  int dim() const { return items.empty() ? 0 : static_cast<int>(items.front().matrix.rows()); }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& it : items) out.push_back(render(it.label));
    return out;
  }

  /// Copy with the listed operators removed (by rendered label).
  OperatorSet without(const std::set<std::string>& drop) const {
    OperatorSet out{basis_kind, n, {}, provenance};
    for (const auto& it : items)
      if (!drop.count(render(it.label))) out.items.push_back(it);
    return out;
  }
};

namespace detail {

/// Computes the Casimir towers lazily and shares them across labels.
class CasimirMemo {
 public:
  CasimirMemo(const GeneratorBasis& basis) : basis_(basis) {}

  const Matrix& get(int which, const Representation& rep, const CasimirKey& key) {
    auto it = towers_.find({which, key.subgroup_m});
    if (it == towers_.end()) it = towers_.emplace(std::pair{which, key.subgroup_m}, casimir_tower(rep, basis_, key.subgroup_m)).first;
    return it->second[static_cast<std::size_t>(key.order_k - 2)];
  }

 private:
  const GeneratorBasis& basis_;
  std::map<std::pair<int, int>, std::vector<Matrix>> towers_;
};

}  // namespace detail

/// Binds labels to matrices on the product space. Coupled operators are
/// evaluated in the coupled representation; factor operators are lifted.
/// When a cache is given, matrices are loaded from / stored to it.
inline OperatorSet materialize(const std::vector<OperatorLabel>& labels, const ProductSpace& ps,
                               const GeneratorBasis& basis, BasisKind kind,
                               const OperatorCache* cache = nullptr) {
  if (ps.n() != basis.n()) throw DomainError("product space and basis disagree on n");
  OperatorSet set{kind, basis.n(), {}, {ps.rep1().kind, ps.rep2().kind}};
  std::optional<Representation> coupled;
  const auto coupled_rep = [&]() -> const Representation& {
    if (!coupled) coupled = ps.coupled_rep();
    return *coupled;
  };
  detail::CasimirMemo memo(basis);
  const std::string prefix = "n" + std::to_string(basis.n()) + "_" + std::string(to_string(ps.rep1().kind)) + "_" +
                             std::string(to_string(ps.rep2().kind)) + "_";

  for (const auto& label : labels) {
    const std::string key = prefix + cache_key(label);
    if (cache) {
      if (auto hit = cache->load(key); hit && hit->rows() == ps.dim()) {
        set.items.push_back({label, std::move(*hit)});
        continue;
      }
    }
    Matrix m = std::visit(
        overloaded{
            [&](const FactorCasimir& l) -> Matrix {
              validate_key(l.key, basis.n());
              return ps.lift(l.factor, memo.get(l.factor, ps.factor(l.factor), l.key));
            },
            [&](const CoupledCasimir& l) -> Matrix {
              validate_key(l.key, basis.n());
              return memo.get(0, coupled_rep(), l.key);
            },
            [&](const FactorWeight& l) -> Matrix { return ps.lift(l.factor, weight_in_rep(ps.factor(l.factor), l.index)); },
            [&](const CoupledWeight& l) -> Matrix { return weight_in_rep(coupled_rep(), l.index); },
            [&](const Exchange&) -> Matrix { return ps.exchange_operator(); },
        },
        label);
    if (cache) cache->store(key, m);
    set.items.push_back({label, std::move(m)});
  }
  return set;
}

/// Single-IR label set evaluated directly on one representation.
inline OperatorSet materialize_single(const std::vector<OperatorLabel>& labels, const Representation& rep,
                                      const GeneratorBasis& basis) {
  OperatorSet set{BasisKind::single_ir, basis.n(), {}, {rep.kind, rep.kind}};
  detail::CasimirMemo memo(basis);
  for (const auto& label : labels) {
    if (const auto* c = std::get_if<CoupledCasimir>(&label)) {
      validate_key(c->key, basis.n());
      set.items.push_back({label, memo.get(0, rep, c->key)});
    } else if (const auto* w = std::get_if<CoupledWeight>(&label)) {
      set.items.push_back({label, weight_in_rep(rep, w->index)});
    } else {
      throw DomainError("single-IR sets contain only whole-representation Casimirs and weights");
    }
  }
  return set;
}

/// enumerate_labels + materialize for a product or coupled basis.
inline OperatorSet build_set(BasisKind kind, const ProductSpace& ps, const GeneratorBasis& basis,
                             const OperatorCache* cache = nullptr) {
  if (kind == BasisKind::single_ir) throw DomainError("build_set: single_ir sets live on one representation");
  return materialize(enumerate_labels(basis.n(), kind), ps, basis, kind, cache);
}

}  // namespace liebasis
