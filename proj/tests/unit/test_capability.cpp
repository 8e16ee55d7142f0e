#include <gtest/gtest.h>

#include "nilcap/capability.hpp"
#include "nilcap/polycyclic.hpp"
#include "nilcap/wordlang.hpp"

using namespace nilcap;

TEST(Necessity, Examples) {
  EXPECT_FALSE(necessity_check(3, 2, {1, 2}));
  EXPECT_TRUE(necessity_check(2, 2, {1, 2}));
  for (int k = 2; k <= 6; ++k) EXPECT_TRUE(necessity_check(2, k, {1, k}));
  EXPECT_FALSE(necessity_check(2, 2, {1}));
  EXPECT_TRUE(necessity_check(3, 2, {1, 1, 1, 1}));
}

TEST(Verdicts, NilpotentProducts) {
  EXPECT_EQ(capable_nilprod(5, 3, {1, 2, 2}).status, Status::kCapable);
  EXPECT_EQ(capable_nilprod(2, 2, {1, 3}).status, Status::kNotCapable);
  EXPECT_EQ(capable_nilprod(2, 2, {1, 3}).justification, Justification::kBinaryClassTwoCriterion);
  EXPECT_EQ(capable_nilprod(3, 3, {1, 1}).status, Status::kUnknown);
  EXPECT_EQ(capable_nilprod(3, 2, {1, 2}).status, Status::kNotCapable);
  EXPECT_EQ(capable_nilprod(2, 2, {2, 3}).status, Status::kCapable);
}

TEST(Verdicts, WitnessedProducts) {
  const Verdict v = capable_nilprod(3, 2, {1, 1}, {true, kDefaultBudget});
  ASSERT_TRUE(v.witness);
  EXPECT_TRUE(v.witness->verified);
  EXPECT_EQ(v.witness->log_central_quotient, 3);
  const Verdict d = capable_nilprod(2, 2, {1, 2}, {true, kDefaultBudget});
  ASSERT_TRUE(d.witness);
  EXPECT_TRUE(d.witness->verified);
  EXPECT_EQ(d.witness->k_variant, BasisVariant::kK3P2);
}

TEST(Verdicts, PresentationFamily) {
  EXPECT_EQ(capable_presentation11(3, {1, 1, 1, 1}).status, Status::kCapable);
  EXPECT_EQ(capable_presentation11(5, {2, 1, 1, 0}).status, Status::kNotCapable);
  EXPECT_EQ(capable_presentation11(3, {3, 3, 2, 1}).status, Status::kCapable);
  EXPECT_EQ(capable_presentation11(3, {3, 2, 2, 1}).status, Status::kNotCapable);
  EXPECT_THROW(capable_presentation11(3, {2, 2, 2, 1}), std::invalid_argument);
}

TEST(Witnesses, QuotientFamily) {
  const auto a = witness_quotient_family(3, {2, 2}, {{{2, 1}, 1}});
  EXPECT_TRUE(a.verified);
  EXPECT_EQ(a.log_order_k, 10);
  EXPECT_EQ(a.log_order_q, 8);
  EXPECT_EQ(a.log_order_center, 3);
  EXPECT_EQ(a.log_central_quotient, 5);
  const auto b = witness_quotient_family(3, {1, 1}, {{{2, 1}, 1}});
  EXPECT_TRUE(b.verified);
  EXPECT_EQ(b.log_order_m, 0);
  const auto c = witness_quotient_family(5, {1, 1}, {{{2, 1}, 1}});
  EXPECT_TRUE(c.verified);
  EXPECT_EQ(c.log_central_quotient, 3);
}

TEST(Witnesses, PresentationChain) {
  const auto a = witness_presentation11(3, 3, 2, 1);
  EXPECT_TRUE(a.verified) << a.note;
  EXPECT_EQ(a.log_central_quotient, 7);
  EXPECT_THROW(witness_presentation11(3, 2, 2, 1), std::invalid_argument);
  const auto b = witness_presentation11(3, 2, 1, 0);
  EXPECT_TRUE(b.verified) << b.note;
  EXPECT_EQ(b.log_central_quotient, 4);
  const auto c = witness_presentation11(5, 2, 1, 0);
  EXPECT_TRUE(c.verified) << c.note;
  EXPECT_EQ(c.log_central_quotient, 4);
}

TEST(Extraspecial, Verdicts) {
  EXPECT_EQ(capable_extraspecial(3, 3, ExtraspecialKind::kExponentP).status, Status::kCapable);
  EXPECT_EQ(capable_extraspecial(3, 5, ExtraspecialKind::kExponentP).status, Status::kNotCapable);
  EXPECT_EQ(capable_extraspecial(3, 5, ExtraspecialKind::kExponentP2).status, Status::kNotCapable);
  EXPECT_EQ(capable_extraspecial(2, 3, ExtraspecialKind::kMinus).status, Status::kNotCapable);
  EXPECT_EQ(capable_extraspecial(2, 3, ExtraspecialKind::kPlus).status, Status::kCapable);
}

TEST(Extraspecial, GroupOfOrderThreeToTheFive) {
  const BuiltGroup g = build_extraspecial_p5(3);
  EXPECT_EQ(g.group->order(), 243u);
  EXPECT_EQ(center(*g.group).order(), 3u);
  for (const auto& [name, x] : g.assignment()) EXPECT_EQ(g.group->element_order(x), 3u) << name;
}

TEST(Extraspecial, GroupOfOrderFiveToTheFive) {
  // The ambient product has 5^10 elements, so count in the power-commutator series.
  GroupSpec s;
  s.prime = 5;
  s.nilpotency_class = 2;
  s.orders = {1, 1, 1, 1};
  for (const char* w : {"[x3,x1] [x4,x1]^-1", "[x3,x2] [x4,x1]^-1", "[x4,x2]", "[x4,x3]", "[x2,x1]"}) {
    s.relators.push_back(parse_word(w));
  }
  const auto pc = build_pc_group(s);
  EXPECT_EQ(pc.log_order(), 5);
  EXPECT_EQ(pc.center_preimage().rank() - pc.relators.rank(), 1);
  EXPECT_THROW(build_extraspecial_p5(5), BudgetExceeded);
}
