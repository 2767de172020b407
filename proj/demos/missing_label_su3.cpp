// The missing label in su(3) octet x octet: the coupled label set leaves the
// two octets degenerate, the factor exchange operator separates them.

#include "liebasis/liebasis.hpp"

#include <iostream>

int main() {
  using namespace liebasis;
  const auto basis = build_generators(3);
  const auto sc = structure_constants(basis);
  const ProductSpace ps(adjoint_rep(basis, sc), adjoint_rep(basis, sc));

  const auto print = [](const char* name, const CompletenessReport& r) {
    std::cout << name << ": " << r.actual_count << " operators, " << r.spectrum.blocks.size() << " joint blocks, max dim "
              << r.max_block_dim << " -> " << to_string(r.verdict) << "\n";
  };
  print("product", completeness_report(build_set(BasisKind::product, ps, basis)));
  const auto coupled = build_set(BasisKind::coupled, ps, basis);
  print("coupled", completeness_report(coupled));
  print("coupled + exchange", completeness_report(coupled, ps.exchange_operator()));

  for (const auto& c : isotypic_decomposition(ps, basis)) {
    std::cout << "  component dim " << c.total_dim;
    if (c.su3_labels) std::cout << "  D(" << c.su3_labels->p << "," << c.su3_labels->q << ")";
    if (c.multiplicity) std::cout << "  sigma " << *c.multiplicity;
    std::cout << "\n";
  }
}
