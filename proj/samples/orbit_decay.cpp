// Prints ||A_n e_s|| for the combined ladder graph at powers of two, together
// with the sink values of T^n e_s that keep the orbit away from c0.
#include <cstdint>
#include <iostream>

#include "ergolab/ergolab.hpp"

int main() {
  using ergolab::ladder::LadderVertex;
  const auto g = ergolab::ladder::make_counterexample();
  const auto op = ergolab::ladder_operator(g);
  const auto x = ergolab::SparseVector<LadderVertex>::unit(LadderVertex::source());

  const auto trace = ergolab::cesaro_trace(op, x, {16, 64, 256, 1024, 4096});
  std::cout << "n,sup_norm,decimal,support\n";
  for (const auto& r : trace.records) {
    std::cout << r.n << ',' << r.sup_norm.to_fraction() << ',' << r.sup_norm.to_decimal(6) << ',' << r.support
              << '\n';
  }

  const auto w = ergolab::weak_compactness_witness(g, 5, 5);
  std::cout << "\n(T^(2^(m+2)) e_s) at V(0..5):\n";
  for (std::uint64_t m = 0; m <= w.max_exponent; ++m) {
    std::cout << "m=" << m << ':';
    for (const auto& v : w.entries[m]) std::cout << ' ' << v.to_fraction();
    std::cout << '\n';
  }
  std::cout << w.conclusion << '\n';
}
