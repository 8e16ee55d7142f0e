#include <gtest/gtest.h>

#include <random>

#include "nilcap/collector.hpp"
#include "nilcap/wordlang.hpp"

using namespace nilcap;

TEST(ParseWord, Shapes) {
  EXPECT_EQ(parse_word("x2*x1"), WordAST::product({WordAST::gen("x2"), WordAST::gen("x1")}));
  EXPECT_EQ(parse_word("[b,a,a]^3"),
            WordAST::power(WordAST::bracket({WordAST::gen("b"), WordAST::gen("a"), WordAST::gen("a")}), 3));
  EXPECT_EQ(parse_word("a^-1 b a"),
            WordAST::product({WordAST::power(WordAST::gen("a"), -1), WordAST::gen("b"), WordAST::gen("a")}));
  EXPECT_EQ(parse_word("e").kind, WordAST::Kind::kIdentity);
}

TEST(ParseWord, ErrorsCarryPositions) {
  for (const std::string bad : {"", "[a", "a^", "a^x", "[a]", "a,b", "(a", "a)", "[a,,b]", "a^99999999999999999999"}) {
    try {
      parse_word(bad);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const ParseError& e) {
      EXPECT_LE(e.position(), bad.size()) << bad;
    }
  }
}

TEST(ParseWord, FormatRoundTrip) {
  for (const std::string s : {"x1", "x2 x1", "[x2,x1]^2", "[[a,b],c]^-1 a", "(a b)^3", "[a,b,c]"}) {
    const WordAST w = parse_word(s);
    EXPECT_EQ(parse_word(format_word(w)), w) << s;
  }
}

TEST(ParseWord, NormalFormsRoundTripThroughText) {
  const auto c = std::make_shared<const Collector>(std::make_shared<const HallBasis>(HallBasis::make(3, 3, {1, 2, 2})));
  const auto names = c->default_assignment();
  std::mt19937_64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    std::vector<std::int64_t> v(c->size());
    for (int i = 0; i < c->size(); ++i) v[i] = static_cast<std::int64_t>(rng() % c->basis().modulus(i));
    const NormalForm g = c->element(v);
    ASSERT_EQ(c->evaluate_word(parse_word(format_normal_form(g)), names), g) << format_normal_form(g);
  }
}

TEST(ParseWord, RandomBytesNeverCrash) {
  std::mt19937_64 rng(17);
  const std::string alphabet = "ab12x[],^-*() e";
  int parsed = 0, rejected = 0;
  for (int t = 0; t < 5000; ++t) {
    std::string s;
    const int len = static_cast<int>(rng() % 12);
    for (int i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
    try {
      const WordAST w = parse_word(s);
      EXPECT_EQ(parse_word(format_word(w)), w) << s;
      ++parsed;
    } catch (const ParseError& e) {
      EXPECT_LE(e.position(), s.size());
      ++rejected;
    }
  }
  EXPECT_GT(parsed, 0);
  EXPECT_GT(rejected, 0);
}

TEST(GroupSpecJson, Accepted) {
  const auto a = parse_group_spec(R"({"prime":3,"class":2,"orders":[1,1]})");
  EXPECT_EQ(a.prime, 3u);
  EXPECT_EQ(a.variant, BasisVariant::kStandard);
  const auto b = parse_group_spec(R"({"prime":2,"class":3,"orders":[1,2],"variant":"k3p2"})");
  EXPECT_EQ(b.variant, BasisVariant::kK3P2);
  const auto c = parse_group_spec(R"({"prime":3,"presentation11":{"alpha":3,"beta":3,"gamma":2,"sigma":1}})");
  ASSERT_TRUE(c.presentation11.has_value());
  EXPECT_EQ(*c.presentation11, (Presentation11{3, 3, 2, 1}));
  EXPECT_EQ(c.orders, (std::vector<int>{3, 3}));
  const auto d = parse_group_spec(R"({"prime":3,"class":2,"orders":[2,2],"relators":["[x2,x1]^3"]})");
  ASSERT_EQ(d.relators.size(), 1u);
  const auto again = parse_group_spec(group_spec_to_json(d));
  EXPECT_EQ(again.relators, d.relators);
  EXPECT_EQ(again.orders, d.orders);
}

TEST(GroupSpecJson, Rejected) {
  for (const char* bad : {
           R"({"prime":4,"class":2,"orders":[1,1]})",
           R"({"prime":3,"class":2,"orders":[]})",
           R"({"prime":3,"class":2,"orders":[0,1]})",
           R"({"prime":2,"class":3,"orders":[1,1]})",
           R"({"prime":3,"class":3,"orders":[1,1],"variant":"k3p2"})",
           R"({"prime":3,"presentation11":{"alpha":2,"beta":2,"gamma":2,"sigma":0}})",
           R"({"prime":3,"class":2,"orders":[1,1],"relators":["[x2,"]})",
           R"({"prime":3,"class":2)",
       }) {
    EXPECT_THROW(parse_group_spec(bad), std::invalid_argument) << bad;
  }
}

TEST(Presentation11Params, Constraints) {
  EXPECT_NO_THROW(validate_presentation11(3, {3, 3, 2, 1}));
  EXPECT_NO_THROW(validate_presentation11(3, {1, 1, 1, 1}));
  EXPECT_THROW(validate_presentation11(3, {2, 2, 2, 1}), std::invalid_argument);  // alpha + sigma < 2 gamma
  EXPECT_THROW(validate_presentation11(3, {2, 1, 2, 1}), std::invalid_argument);  // beta < gamma
  EXPECT_THROW(validate_presentation11(3, {1, 2, 1, 1}), std::invalid_argument);  // sigma = gamma needs alpha >= beta
}
