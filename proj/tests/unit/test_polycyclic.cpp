#include <gtest/gtest.h>

#include <random>

#include "nilcap/arith.hpp"
#include "nilcap/engine.hpp"
#include "nilcap/oracle.hpp"
#include "nilcap/polycyclic.hpp"

using namespace nilcap;

namespace {

GroupSpec spec(std::uint64_t p, int k, std::vector<int> orders) {
  GroupSpec s;
  s.prime = p;
  s.nilpotency_class = k;
  s.orders = std::move(orders);
  return s;
}

}  // namespace

TEST(PcCenter, AgreesWithEnumeration) {
  for (const auto& s : {spec(3, 2, {1, 2}), spec(3, 3, {1, 1}), spec(5, 2, {1, 1, 2}), spec(3, 3, {1, 2})}) {
    const auto pc = build_pc_group(s);
    const BuiltGroup b = build_group(s);
    EXPECT_EQ(pc.pc->center_modulo(pc.relators).order(), center(*b.group).order());
  }
}

TEST(PcCenter, QuotientByRelators) {
  GroupSpec s = spec(3, 2, {2, 2});
  s.relators = {parse_word("[x2,x1]^3")};
  const auto pc = build_pc_group(s);
  const BuiltGroup b = build_group(s);
  EXPECT_EQ(arith::checked_pow(3, pc.log_order()), b.group->order());
  EXPECT_EQ(pc.center_preimage().order() / pc.relators.order(), center(*b.group).order());
}

TEST(PcClosure, FullRankAndMembership) {
  const auto pc = build_pc_group(spec(5, 3, {2, 2, 2}));
  const auto all = pc.pc->closure(pc.pc->generators());
  EXPECT_EQ(all.rank(), pc.pc->length());
  const auto x1 = pc.pc->generators()[0];
  const auto cyc = pc.pc->closure({x1});
  EXPECT_EQ(cyc.order(), 25u);
  EXPECT_TRUE(pc.pc->contains(cyc, pc.pc->collector().inv_pow(x1, 7)));
  EXPECT_FALSE(pc.pc->contains(cyc, pc.pc->generators()[1]));
}

TEST(Weights, CoordinatesMatchSeries) {
  const TestGroup g = TestGroup::make(3, 3, {1, 2});
  ASSERT_TRUE(g.enumerable());
  std::mt19937_64 rng(9);
  for (int t = 0; t < 500; ++t) {
    const NormalForm x = g.random(rng);
    EXPECT_EQ(g.coordinate_weight(x), g.weight(x));
  }
}
