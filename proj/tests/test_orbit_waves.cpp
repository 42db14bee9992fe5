#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ergolab/graphop/operators.hpp"
#include "ergolab/ladder/graphs.hpp"
#include "ergolab/ladder/orbit_waves.hpp"

using ergolab::Rational;
using ergolab::ladder::LadderFamilyGraph;
using ergolab::ladder::LadderVertex;
using LV = LadderVertex;

namespace {

struct Observed {
  Rational sup;
  std::uint64_t support;
};

// Oracle: materialize sum_k sign^k T^{stride k} e_start with the generic sparse
// engine and read off the mean after every term.
std::vector<Observed> brute_force(const LadderFamilyGraph& g, const LV& start, std::uint64_t stride,
                                  std::uint64_t terms, int sign) {
  std::vector<Observed> out;
  ergolab::SparseVector<LV> total;
  const std::uint64_t horizon = stride * (terms - 1);
  ergolab::power_sweep(g.graph, ergolab::SparseVector<LV>::unit(start), horizon,
                       [&](std::uint64_t t, const ergolab::SparseVector<LV>& x) {
                         if (t % stride) return;
                         const std::uint64_t k = t / stride;
                         total = total + x * Rational(sign < 0 && (k & 1) ? -1 : 1);
                         out.push_back({ergolab::sup_norm(total) / Rational(k + 1), total.support_size()});
                       });
  return out;
}

std::vector<double> brute_force_complex_sup(const LadderFamilyGraph& g, const LV& start,
                                        std::uint64_t stride, std::uint64_t terms,
                                        std::complex<double> lambda) {
  ergolab::ComplexSparseVector<LV> total;
  std::complex<double> power(1.0, 0.0);
  std::vector<double> sups;
  ergolab::power_sweep(g.graph, ergolab::to_complex(ergolab::SparseVector<LV>::unit(start)), stride * (terms - 1),
                       [&](std::uint64_t t, const ergolab::ComplexSparseVector<LV>& x) {
                         if (t % stride) return;
                         total = total + x * power;
                         power *= lambda;
                         sups.push_back(ergolab::sup_norm(total) / static_cast<double>(t / stride + 1));
                       });
  return sups;
}

struct StartCase {
  std::string label;
  LadderFamilyGraph graph;
  LV start;
};

std::vector<StartCase> start_cases() {
  const auto g0 = ergolab::ladder::make_g0();
  const auto g2 = ergolab::ladder::make_gk(2);
  const auto comb = ergolab::ladder::make_counterexample();
  return {
      {"comb S", comb, LV::source()},
      {"comb E(0)", comb, LV::entry(0)},
      {"comb E(3)", comb, LV::entry(3)},
      {"comb T(1,4)", comb, LV::top(1, 4)},
      {"comb B(0,11) landing", comb, LV::bottom(0, 11)},
      {"comb B(2,12) above landing", comb, LV::bottom(2, 12)},
      {"comb B(1,9)", comb, LV::bottom(1, 9)},
      {"comb V(2)", comb, LV::sink(2)},
      {"G0 E(0)", g0, LV::entry(0)},
      {"G0 T(0,1)", g0, LV::top(0, 1)},
      {"G0 B(0,57)", g0, LV::bottom(0, 57)},
      {"G2 E(2)", g2, LV::entry(2)},
      {"G2 T(2,5)", g2, LV::top(2, 5)},
  };
}

}  // namespace

TEST(OrbitWaves, MatchesGenericEngineOnAllStartRoles) {
  for (const auto& c : start_cases()) {
    for (std::uint64_t stride = 1; stride <= 3; ++stride) {
      const std::uint64_t terms = stride == 1 ? 48 : 24;
      for (int sign : {1, -1}) {
        const auto expected = brute_force(c.graph, c.start, stride, terms, sign);
        for (std::uint64_t n = 1; n <= terms; ++n) {
          const auto got = ergolab::ladder::orbit_cesaro_exact(c.graph, c.start, stride, n, sign);
          ASSERT_EQ(got.sup_norm, expected[n - 1].sup)
              << c.label << " stride=" << stride << " sign=" << sign << " n=" << n;
          ASSERT_EQ(got.support, expected[n - 1].support)
              << c.label << " stride=" << stride << " sign=" << sign << " n=" << n;
        }
      }
    }
  }
}

// A start far up a bottom chain: the descent crosses no landing within the
// horizon except the one it may start on.
TEST(OrbitWaves, LongBottomDescent) {
  const auto comb = ergolab::ladder::make_counterexample();
  for (const LV& start : {LV::bottom(0, 200), LV::bottom(3, 247), LV::bottom(1, 248)}) {
    const auto expected = brute_force(comb, start, 1, 20, 1);
    for (std::uint64_t n = 1; n <= 20; ++n) {
      const auto got = ergolab::ladder::orbit_cesaro_exact(comb, start, 1, n);
      ASSERT_EQ(got.sup_norm, expected[n - 1].sup) << start << " n=" << n;
      ASSERT_EQ(got.support, expected[n - 1].support) << start << " n=" << n;
    }
  }
}

TEST(OrbitWaves, LongHorizonFromSource) {
  const auto comb = ergolab::ladder::make_counterexample();
  const auto expected = brute_force(comb, LV::source(), 1, 128, 1);
  for (std::uint64_t n : {64, 100, 127, 128}) {
    const auto got = ergolab::ladder::orbit_cesaro_exact(comb, LV::source(), 1, n);
    EXPECT_EQ(got.sup_norm, expected[n - 1].sup) << n;
    EXPECT_EQ(got.support, expected[n - 1].support) << n;
  }
  EXPECT_EQ(ergolab::ladder::orbit_cesaro_exact(comb, LV::source(), 1, 128).sup_norm, Rational(5, 128));
}

TEST(OrbitWaves, CoefficientScalesLinearly) {
  const auto comb = ergolab::ladder::make_counterexample();
  const auto one = ergolab::ladder::orbit_cesaro_exact(comb, LV::source(), 2, 30);
  const auto scaled = ergolab::ladder::orbit_cesaro_exact(comb, LV::source(), 2, 30, 1, Rational(-7, 3));
  EXPECT_EQ(scaled.sup_norm, one.sup_norm * Rational(7, 3));
  EXPECT_EQ(scaled.support, one.support);
  const auto zero = ergolab::ladder::orbit_cesaro_exact(comb, LV::source(), 2, 30, 1, Rational(0));
  EXPECT_EQ(zero.sup_norm, Rational(0));
  EXPECT_EQ(zero.support, 0u);
}

TEST(OrbitWaves, ComplexRotationMatchesGenericFloat) {
  const std::complex<double> lambdas[] = {{0.0, 1.0}, {0.0, -1.0}, {std::cos(1.0), std::sin(1.0)}};
  for (const auto& c : start_cases()) {
    for (const auto lambda : lambdas) {
      for (std::uint64_t stride : {1, 2}) {
        const std::uint64_t terms = 30;
        const auto expected = brute_force_complex_sup(c.graph, c.start, stride, terms, lambda);
        for (std::uint64_t n : {1, 7, 19, 30}) {
          const auto got = ergolab::ladder::orbit_cesaro_complex(c.graph, c.start, stride, n, lambda);
          ASSERT_NEAR(got.sup_norm, expected[n - 1], 1e-12) << c.label << " n=" << n;
        }
      }
    }
  }
}

TEST(OrbitWaves, ThreadCountDoesNotChangeResults) {
  const auto comb = ergolab::ladder::make_counterexample();
  for (std::uint64_t stride = 1; stride <= 3; ++stride) {
    const auto a = ergolab::ladder::orbit_cesaro_exact(comb, LV::source(), stride, 400, 1, Rational(1), 1);
    const auto b = ergolab::ladder::orbit_cesaro_exact(comb, LV::source(), stride, 400, 1, Rational(1), 3);
    EXPECT_EQ(a.sup_norm, b.sup_norm);
    EXPECT_EQ(a.support, b.support);
  }
}

TEST(OrbitWaves, RejectsBadArguments) {
  const auto g0 = ergolab::ladder::make_g0();
  EXPECT_THROW(ergolab::ladder::orbit_cesaro_exact(g0, LV::entry(0), 0, 5), std::invalid_argument);
  EXPECT_THROW(ergolab::ladder::orbit_cesaro_exact(g0, LV::entry(0), 1, 0), std::invalid_argument);
  EXPECT_THROW(ergolab::ladder::orbit_cesaro_exact(g0, LV::entry(0), 1, 5, 2), std::invalid_argument);
  EXPECT_THROW(ergolab::ladder::orbit_cesaro_exact(g0, LV::source(), 1, 5), std::invalid_argument);
  EXPECT_THROW(ergolab::ladder::orbit_cesaro_exact(g0, LV::entry(1), 1, 5), std::invalid_argument);
}
