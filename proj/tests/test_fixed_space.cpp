#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ergolab/ergodic/fixed_space.hpp"
#include "ergolab/ladder/graphs.hpp"

using ergolab::DischargeRule;
using ergolab::Rational;

namespace {

const ergolab::Derivation* find(const ergolab::FixedSpaceCertificate& cert, const std::string& family) {
  for (const auto& d : cert.relations) {
    if (d.family == family) return &d;
  }
  return nullptr;
}

std::size_t position(const ergolab::FixedSpaceCertificate& cert, const std::string& family) {
  auto it = std::find(cert.forced_zero.begin(), cert.forced_zero.end(), family);
  return static_cast<std::size_t>(it - cert.forced_zero.begin());
}

}  // namespace

TEST(FixedSpace, G0OnlyZero) {
  const auto g0 = ergolab::ladder::make_g0();
  const auto cert = ergolab::fixed_space_certificate(g0);
  EXPECT_TRUE(cert.only_zero());
  EXPECT_TRUE(cert.undischarged.empty());
  ASSERT_NE(find(cert, "V(0)"), nullptr);
  EXPECT_EQ(find(cert, "V(0)")->rule, DischargeRule::terminal);
  EXPECT_EQ(find(cert, "B(0,.)")->rule, DischargeRule::induction);
  EXPECT_EQ(find(cert, "T(0,.)")->rule, DischargeRule::null_class);
  EXPECT_EQ(find(cert, "E(0)")->rule, DischargeRule::direct);
  EXPECT_EQ(cert.equality_classes, (std::vector<std::string>{"T(0,.)"}));
  // Sink before bottoms before tops before the entry.
  EXPECT_LT(position(cert, "V(0)"), position(cert, "B(0,.)"));
  EXPECT_LT(position(cert, "B(0,.)"), position(cert, "T(0,.)"));
  EXPECT_LT(position(cert, "T(0,.)"), position(cert, "E(0)"));
  EXPECT_TRUE(ergolab::replay_certificate(g0.graph, ergolab::ladder_structure(g0), cert, 1, 200).passed);
}

TEST(FixedSpace, EveryStandaloneCopyOnlyZero) {
  for (std::uint64_t k = 1; k <= 5; ++k) {
    const auto g = ergolab::ladder::make_gk(k);
    const auto cert = ergolab::fixed_space_certificate(g);
    EXPECT_TRUE(cert.only_zero()) << k;
    EXPECT_EQ(cert.relations.size(), 4u);
    EXPECT_TRUE(ergolab::replay_certificate(g.graph, ergolab::ladder_structure(g), cert, 1, 120).passed) << k;
  }
}

TEST(FixedSpace, CombinedTranscript) {
  const auto comb = ergolab::ladder::make_counterexample();
  const auto cert = ergolab::fixed_space_certificate(comb);
  ASSERT_TRUE(cert.only_zero());
  EXPECT_EQ(cert.forced_zero, (std::vector<std::string>{"V(c)", "B(c,.)", "T(c,.)", "E(.)", "S"}));
  const auto* bottoms = find(cert, "B(c,.)");
  EXPECT_EQ(bottoms->equation, "y[B(0,2)] = 1/2*y[B(0,1)]");
  EXPECT_EQ(bottoms->depends_on, (std::vector<std::string>{"V(c)"}));
  const auto* entries = find(cert, "E(.)");
  EXPECT_EQ(entries->rule, DischargeRule::null_class);
  EXPECT_EQ(entries->equation, "y[E(1)] = 1/1*y[E(2)] + 1/1*y[T(1,2)]");
  EXPECT_EQ(find(cert, "S")->rule, DischargeRule::direct);
  EXPECT_EQ(find(cert, "S")->equation, "y[S] = 1/1*y[E(0)]");
  for (const auto& d : cert.relations) EXPECT_GT(d.members_checked, 0u) << d.family;
}

TEST(FixedSpace, ReplayOnLargerWindow) {
  const auto comb = ergolab::ladder::make_counterexample();
  const auto st = ergolab::ladder_structure(comb);
  const auto cert = ergolab::fixed_space_certificate(comb.graph, st);
  const auto report = ergolab::replay_certificate(comb.graph, st, cert, 10, 64);
  EXPECT_TRUE(report.passed);
  EXPECT_TRUE(report.failures.empty());
}

TEST(FixedSpace, ReplayRejectsReorderedDerivations) {
  const auto comb = ergolab::ladder::make_counterexample();
  const auto st = ergolab::ladder_structure(comb);
  auto cert = ergolab::fixed_space_certificate(comb.graph, st);
  std::swap(cert.relations[0], cert.relations[1]);
  EXPECT_FALSE(ergolab::replay_certificate(comb.graph, st, cert, 4, 20).passed);
}

TEST(FixedSpace, ReplayRejectsWrongRule) {
  const auto g0 = ergolab::ladder::make_g0();
  const auto st = ergolab::ladder_structure(g0);
  auto cert = ergolab::fixed_space_certificate(g0.graph, st);
  for (auto& d : cert.relations) {
    if (d.family == "T(0,.)") d.rule = DischargeRule::direct;
  }
  const auto report = ergolab::replay_certificate(g0.graph, st, cert, 1, 40);
  EXPECT_FALSE(report.passed);
}

TEST(FixedSpace, SelfLoopIsInconclusive) {
  const auto loop = ergolab::make_index_graph({{0, 0, Rational(1)}}, "self-loop");
  const auto cert = ergolab::fixed_space_certificate(loop, ergolab::singleton_structure<std::uint64_t>({0}));
  EXPECT_FALSE(cert.only_zero());
  EXPECT_EQ(cert.undischarged, (std::vector<std::string>{"0"}));
}

TEST(FixedSpace, FiniteChainIntoSink) {
  // 0 -> 1 -> 2, 2 terminal: every coordinate is forced to zero.
  const auto g = ergolab::make_index_graph({{0, 1, Rational(1)}, {1, 2, Rational(3)}}, "path");
  const auto cert = ergolab::fixed_space_certificate(g, ergolab::singleton_structure<std::uint64_t>({0, 1, 2}));
  EXPECT_TRUE(cert.only_zero());
  EXPECT_EQ(cert.forced_zero, (std::vector<std::string>{"2", "1", "0"}));
}
