#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ergolab/blockdiag/block.hpp"
#include "ergolab/ergodic/cesaro.hpp"
#include "ergolab/ergodic/diagnostics.hpp"
#include "ergolab/ergodic/operator.hpp"
#include "ergolab/graphop/operators.hpp"
#include "ergolab/ladder/graphs.hpp"

using ergolab::Engine;
using ergolab::Rational;
using ergolab::ladder::LadderVertex;
using LV = LadderVertex;
using LVec = ergolab::SparseVector<LV>;

namespace {

LVec e(const LV& v) { return LVec::unit(v); }

// Oracle: (1/n) sum_{k<n} T^k x with every power recomputed from scratch.
LVec direct_mean(const ergolab::ladder::LadderGraph& g, const LVec& x, std::uint64_t n, std::uint64_t stride = 1) {
  LVec sum;
  for (std::uint64_t k = 0; k < n; ++k) sum = sum + ergolab::power_apply(g, x, stride * k);
  return sum * Rational(1, n);
}

std::vector<std::uint64_t> range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out(hi - lo + 1);
  std::iota(out.begin(), out.end(), lo);
  return out;
}

ergolab::CesaroOptions with(Engine engine, std::uint64_t stride = 1, int sign = 1) {
  ergolab::CesaroOptions opt;
  opt.engine = engine;
  opt.stride = stride;
  opt.sign = sign;
  return opt;
}

}  // namespace

TEST(CesaroApply, Examples) {
  const auto g0 = ergolab::ladder::make_g0();
  const auto op = ergolab::graph_operator(g0.graph);
  const LVec x = e(LV::bottom(0, 7)) + e(LV::top(0, 3)) * Rational(-2);
  EXPECT_EQ(ergolab::cesaro_apply(op, x, 1), x);
  EXPECT_EQ(ergolab::cesaro_apply(op, e(LV::entry(0)), 2), (e(LV::entry(0)) + e(LV::top(0, 1))) * Rational(1, 2));
  EXPECT_THROW(ergolab::cesaro_apply(op, x, 0), std::invalid_argument);
}

TEST(CesaroApply, RecurrenceAgainstDirectSummation) {
  const auto comb = ergolab::ladder::make_counterexample();
  const auto op = ergolab::graph_operator(comb.graph);
  const LVec x = e(LV::source()) + e(LV::bottom(1, 5)) * Rational(3, 2);
  LVec previous;
  for (std::uint64_t n = 1; n <= 32; ++n) {
    const LVec mean = ergolab::cesaro_apply(op, x, n);
    ASSERT_EQ(mean, direct_mean(comb.graph, x, n)) << n;
    if (n > 1) {
      const LVec step = ergolab::power_apply(comb.graph, x, n - 1);
      ASSERT_EQ(mean, (previous * Rational(n - 1) + step) * Rational(1, n)) << n;
    }
    previous = mean;
  }
}

TEST(CesaroTrace, CombinedSourceDecays) {
  const auto comb = ergolab::ladder::make_counterexample();
  const auto op = ergolab::ladder_operator(comb);
  const auto trace = ergolab::cesaro_trace(op, e(LV::source()), {128, 256, 512, 1024});
  EXPECT_EQ(trace.engine, "structured");
  ASSERT_EQ(trace.records.size(), 4u);
  const std::vector<Rational> frozen{Rational(5, 128), Rational(3, 128), Rational(7, 512), Rational(1, 128)};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(trace.records[i].sup_norm, frozen[i]);
    if (i) {
      EXPECT_LT(trace.records[i].sup_norm, trace.records[i - 1].sup_norm);
    }
  }
  EXPECT_LE(trace.records.back().sup_norm, Rational(1, 20));
  EXPECT_EQ(trace.records.back().support, 178397468u);
}

TEST(CesaroTrace, SinkAndEmptySchedule) {
  const auto g0 = ergolab::ladder::make_g0();
  const auto op = ergolab::graph_operator(g0.graph);
  const auto trace = ergolab::cesaro_trace(op, e(LV::sink(0)), {1, 2, 4});
  EXPECT_EQ(trace.engine, "generic");
  ASSERT_EQ(trace.records.size(), 3u);
  EXPECT_EQ(trace.records[0].sup_norm, Rational(1));
  EXPECT_EQ(trace.records[1].sup_norm, Rational(1, 2));
  EXPECT_EQ(trace.records[2].sup_norm, Rational(1, 4));
  EXPECT_TRUE(ergolab::cesaro_trace(op, e(LV::sink(0)), {}).records.empty());
  EXPECT_THROW(ergolab::cesaro_trace(op, e(LV::sink(0)), {4, 2}), std::invalid_argument);
  EXPECT_THROW(ergolab::cesaro_trace(op, e(LV::sink(0)), {0, 2}), std::invalid_argument);
}

TEST(CesaroTrace, EnginesAgreeAcrossStridesAndSigns) {
  const auto comb = ergolab::ladder::make_counterexample();
  const auto op = ergolab::ladder_operator(comb);
  for (std::uint64_t stride = 1; stride <= 3; ++stride) {
    for (int sign : {1, -1}) {
      const auto schedule = range(1, stride == 1 ? 64 : 32);
      const auto a = ergolab::cesaro_trace(op, e(LV::source()), schedule, with(Engine::structured, stride, sign));
      const auto b = ergolab::cesaro_trace(op, e(LV::source()), schedule, with(Engine::generic, stride, sign));
      ASSERT_EQ(a.records.size(), b.records.size());
      for (std::size_t i = 0; i < a.records.size(); ++i) {
        ASSERT_EQ(a.records[i].sup_norm, b.records[i].sup_norm) << stride << " " << sign << " " << i;
        ASSERT_EQ(a.records[i].support, b.records[i].support);
      }
    }
  }
}

TEST(CesaroTrace, AutomaticFallsBackWhenShortcutDeclines) {
  const auto comb = ergolab::ladder::make_counterexample();
  const auto op = ergolab::ladder_operator(comb);
  const LVec two = e(LV::source()) + e(LV::sink(3));
  const auto trace = ergolab::cesaro_trace(op, two, {4, 8});
  EXPECT_EQ(trace.engine, "generic");
  EXPECT_EQ(trace.records[0].sup_norm, ergolab::sup_norm(direct_mean(comb.graph, two, 4)));
  EXPECT_THROW(ergolab::cesaro_trace(op, two, {4}, with(Engine::structured)), std::invalid_argument);
  EXPECT_THROW(ergolab::cesaro_trace(ergolab::graph_operator(comb.graph), two, {4}, with(Engine::structured)),
               std::invalid_argument);
}

// Each coordinate is reached by at most floor(log2 n) + 1 unit waves of weight
// at most 2 within n steps.
TEST(CesaroTrace, LogarithmicEnvelopeForAllN) {
  const auto comb = ergolab::ladder::make_counterexample();
  const auto op = ergolab::ladder_operator(comb);
  const auto trace = ergolab::cesaro_trace(op, e(LV::source()), range(64, 1024));
  for (const auto& r : trace.records) {
    const std::uint64_t log2n = std::bit_width(r.n) - 1;
    ASSERT_LE(r.sup_norm, Rational(2 * (log2n + 2), r.n)) << r.n;
  }
}

TEST(PowerConsistency, StrideEngineMatchesComposedOperator) {
  const auto comb = ergolab::ladder::make_counterexample();
  const auto base = ergolab::graph_operator(comb.graph);
  const LVec x = e(LV::source());
  for (std::uint64_t m = 1; m <= 3; ++m) {
    const auto composed = ergolab::power_operator(base, m);
    for (std::uint64_t n : {1, 2, 5, 11, 20}) {
      ASSERT_EQ(ergolab::cesaro_apply(composed, x, n), direct_mean(comb.graph, x, n, m)) << m << " " << n;
    }
    const std::vector<std::uint64_t> schedule{8, 16, 32, 48, 64};
    const auto strided = ergolab::cesaro_trace(base, x, schedule, with(Engine::generic, m));
    const auto via_composed = ergolab::cesaro_trace(composed, x, schedule, with(Engine::generic));
    const auto structured =
        ergolab::cesaro_trace(ergolab::power_operator(ergolab::ladder_operator(comb), m), x, schedule);
    EXPECT_EQ(structured.engine, "structured");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      ASSERT_EQ(strided.records[i].sup_norm, via_composed.records[i].sup_norm) << m << " " << schedule[i];
      ASSERT_EQ(strided.records[i].support, via_composed.records[i].support);
      ASSERT_EQ(structured.records[i].sup_norm, strided.records[i].sup_norm);
      ASSERT_EQ(structured.records[i].support, strided.records[i].support);
    }
  }
}

TEST(PowerCheck, Examples) {
  const auto comb = ergolab::ladder::make_counterexample();
  const auto op = ergolab::ladder_operator(comb);
  const LVec s = e(LV::source());
  const auto two = ergolab::power_mean_ergodic_check(op, s, 2, 1024, Rational(1, 10));
  EXPECT_TRUE(two.passed);
  EXPECT_EQ(two.value, Rational(9, 1024));
  const auto three = ergolab::power_mean_ergodic_check(op, s, 3, 1024, Rational(1, 10));
  EXPECT_TRUE(three.passed);
  EXPECT_EQ(three.value, Rational(5, 1024));
  const auto trivial = ergolab::power_mean_ergodic_check(op, s, 1, 1, Rational(2));
  EXPECT_TRUE(trivial.passed);
  EXPECT_EQ(trivial.value, Rational(1));
  EXPECT_FALSE(ergolab::power_mean_ergodic_check(op, s, 2, 64, Rational(1, 100)).passed);
}

TEST(RotationCheck, Examples) {
  const auto comb = ergolab::ladder::make_counterexample();
  const auto op = ergolab::ladder_operator(comb);
  const LVec s = e(LV::source());
  const auto minus = ergolab::scalar_rotation_check(op, s, {-1.0, 0.0}, 1024, Rational(1, 10));
  EXPECT_TRUE(minus.passed);
  EXPECT_TRUE(minus.exact);
  const auto plus = ergolab::scalar_rotation_check(op, s, {1.0, 0.0}, 1024, Rational(1, 10));
  EXPECT_TRUE(plus.passed);
  EXPECT_EQ(*plus.exact_value, ergolab::cesaro_trace(op, s, {1024}).records[0].sup_norm);
  const auto i = ergolab::scalar_rotation_check(op, s, {0.0, 1.0}, 1024, Rational(1, 10) + Rational(1, 1000000000));
  EXPECT_TRUE(i.passed);
  EXPECT_FALSE(i.exact);
  EXPECT_EQ(i.engine, "structured-float");
  EXPECT_THROW(ergolab::scalar_rotation_check(op, s, {2.0, 0.0}, 8, Rational(1)), std::invalid_argument);
  EXPECT_THROW(ergolab::scalar_rotation_check(op, s, {0.6, 0.6}, 8, Rational(1)), std::invalid_argument);
}

TEST(RotationCheck, NegatedOperatorMatchesMinusOne) {
  const auto comb = ergolab::ladder::make_counterexample();
  const auto op = ergolab::ladder_operator(comb);
  const auto neg = ergolab::negated_operator(op);
  const auto schedule = range(1, 40);
  for (std::uint64_t stride = 1; stride <= 2; ++stride) {
    const auto a = ergolab::cesaro_trace(neg, e(LV::source()), schedule, with(Engine::structured, stride));
    const auto b = ergolab::cesaro_trace(neg, e(LV::source()), schedule, with(Engine::generic, stride));
    for (std::size_t k = 0; k < schedule.size(); ++k) ASSERT_EQ(a.records[k].sup_norm, b.records[k].sup_norm);
  }
}

TEST(RotationCheck, ComplexEnginesAgree) {
  const auto comb = ergolab::ladder::make_counterexample();
  const auto op = ergolab::ladder_operator(comb);
  for (const std::complex<double> lambda : {std::complex<double>(0, 1), std::polar(1.0, 2.0)}) {
    const auto a = ergolab::scalar_rotation_check(op, e(LV::source()), lambda, 48, Rational(1), Engine::structured);
    const auto b = ergolab::scalar_rotation_check(op, e(LV::source()), lambda, 48, Rational(1), Engine::generic);
    EXPECT_EQ(b.engine, "generic-float");
    EXPECT_NEAR(a.value, b.value, 1e-12);
  }
}

TEST(Budget, CapsAreEnforced) {
  const auto comb = ergolab::ladder::make_counterexample();
  const auto op = ergolab::graph_operator(comb.graph);
  ergolab::Budget tiny;
  tiny.max_support = 100;
  EXPECT_THROW(ergolab::cesaro_apply(op, e(LV::source()), 64, tiny), ergolab::BudgetExceeded);
  ergolab::Budget short_steps;
  short_steps.max_steps = 5;
  auto opt = with(Engine::generic);
  opt.budget = short_steps;
  EXPECT_THROW(ergolab::cesaro_trace(op, e(LV::source()), {10}, opt), ergolab::BudgetExceeded);
  EXPECT_NO_THROW(ergolab::cesaro_trace(op, e(LV::source()), {6}, opt));
}

TEST(BlockAdapter, CesaroMatchesBlockFormula) {
  const ergolab::blockdiag::BlockOperator b(2, 8);
  const auto op = ergolab::block_operator(b);
  std::vector<std::pair<std::uint64_t, Rational>> entries;
  for (std::uint64_t m = 1; m <= 8; ++m) {
    entries.emplace_back(2 * (m - 1), Rational(1));
    entries.emplace_back(2 * (m - 1) + 1, Rational(-1));
  }
  const auto x = ergolab::SparseVector<std::uint64_t>::from_entries(entries);
  for (std::uint64_t n : {1, 3, 10}) {
    const auto mean = ergolab::cesaro_apply(op, x, n);
    const auto witness = ergolab::blockdiag::witness_apply(8, n, 1);
    for (std::uint64_t m = 1; m <= 8; ++m) {
      ASSERT_EQ(mean.at(2 * (m - 1)), witness[m - 1]);
      ASSERT_EQ(mean.at(2 * (m - 1) + 1), -witness[m - 1]);
    }
  }
}

TEST(Witness, Examples) {
  const auto comb = ergolab::ladder::make_counterexample();
  const auto single = ergolab::weak_compactness_witness(comb, 0, 0);
  ASSERT_EQ(single.entries.size(), 1u);
  EXPECT_EQ(single.entries[0][0], Rational(1));
  const auto small = ergolab::weak_compactness_witness(comb, 3, 1);
  for (std::uint64_t m = 0; m <= 1; ++m) {
    for (std::uint64_t k = 0; k <= 3; ++k) {
      EXPECT_EQ(small.entries[m][k], Rational(k <= m ? 1 : 0)) << m << " " << k;
    }
  }
  const auto full = ergolab::weak_compactness_witness(comb, 4, 6);
  EXPECT_TRUE(full.lower_triangular);
  EXPECT_TRUE(full.matches_predicate);
  EXPECT_THROW(ergolab::weak_compactness_witness(ergolab::ladder::make_g0(), 1, 1), std::invalid_argument);
  EXPECT_THROW(ergolab::weak_compactness_witness(comb, 1, 13), std::invalid_argument);
}

TEST(Renorm, Examples) {
  const auto comb = ergolab::ladder::make_counterexample();
  EXPECT_EQ(ergolab::renorm_estimate(comb, e(LV::source()), 0), Rational(1));
  const Rational h16 = ergolab::renorm_estimate(comb, e(LV::source()), 16);
  EXPECT_GE(h16, Rational(1));
  EXPECT_LE(h16, Rational(4));
  for (std::uint64_t h : {0, 3, 50}) {
    EXPECT_EQ(ergolab::renorm_estimate(ergolab::ladder::make_g0(), e(LV::sink(0)), h), Rational(1));
  }
  // Sign of x is irrelevant.
  EXPECT_EQ(ergolab::renorm_estimate(comb, e(LV::source()) * Rational(-3), 16), h16 * Rational(3));
}
