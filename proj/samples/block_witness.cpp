// Contrasts the two regimes of the block-diagonal operator: odd powers average
// to U uniformly in the block index, even powers leave a coefficient near
// (1 - e^-2) / 2 on the block m = n.
#include <cstdint>
#include <iostream>

#include "ergolab/ergolab.hpp"

int main() {
  namespace bd = ergolab::blockdiag;
  std::cout << "n,sup_deviation_p1,bound_2_over_n,b_nn_j1\n";
  for (std::uint64_t n : {10, 100, 1000}) {
    const auto dev = bd::sup_deviation(n, n, 1);
    const auto b = bd::b_coeff(n, n, 1);
    std::cout << n << ',' << dev.value.to_decimal(6) << ',' << ergolab::Rational(2, n).to_decimal(6) << ','
              << b.to_decimal(6) << '\n';
  }
}
