#include <gtest/gtest.h>

#include <array>
#include <functional>
#include <random>
#include <set>

#include "nilcap/collector.hpp"
#include "nilcap/oracle.hpp"
#include "nilcap/wordlang.hpp"

using namespace nilcap;

namespace {

std::shared_ptr<const Collector> make_collector(std::uint64_t p, int k, std::vector<int> orders,
                                                BasisVariant v = BasisVariant::kStandard) {
  return std::make_shared<const Collector>(std::make_shared<const HallBasis>(HallBasis::make(p, k, orders, v)));
}

// Images of the basis entries in a concrete group, built from the entry
// definitions only.
template <class T>
std::vector<T> entry_images(const HallBasis& b, const std::vector<T>& gens, const std::function<T(T, T)>& mul,
                            const std::function<T(T)>& inv) {
  auto comm = [&](T a, T c) { return mul(mul(inv(a), inv(c)), mul(a, c)); };
  std::vector<T> img;
  for (int i = 0; i < b.size(); ++i) {
    const auto& e = b.entry(i);
    switch (e.kind) {
      case BasicCommutator::Kind::kGenerator: img.push_back(gens[e.generator]); break;
      case BasicCommutator::Kind::kBracket: img.push_back(comm(img[e.left], img[e.right])); break;
      case BasicCommutator::Kind::kSquareRight:
        img.push_back(comm(gens[e.pair_j], mul(gens[e.pair_i], gens[e.pair_i])));
        break;
      case BasicCommutator::Kind::kSquareLeft:
        img.push_back(comm(mul(gens[e.pair_j], gens[e.pair_j]), gens[e.pair_i]));
        break;
    }
  }
  return img;
}

template <class T>
T image(const NormalForm& nf, const std::vector<T>& img, T one, const std::function<T(T, T)>& mul) {
  T r = one;
  for (std::size_t i = 0; i < nf.exps.size(); ++i) {
    for (std::int64_t n = 0; n < nf.exps[i]; ++n) r = mul(r, img[i]);
  }
  return r;
}

std::vector<NormalForm> all_elements(const Collector& c) {
  std::vector<NormalForm> out{c.identity()};
  for (int i = 0; i < c.size(); ++i) {
    std::vector<NormalForm> next;
    for (const auto& g : out) {
      for (std::uint64_t e = 0; e < c.basis().modulus(i); ++e) {
        auto v = g.exps;
        v[i] = static_cast<std::int64_t>(e);
        next.push_back(c.element(v));
      }
    }
    out = std::move(next);
  }
  return out;
}

using Mat = std::array<int, 9>;  // 3x3 over Z/3

Mat mat_mul(Mat a, Mat b) {
  Mat c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int s = 0;
      for (int k = 0; k < 3; ++k) s += a[i * 3 + k] * b[k * 3 + j];
      c[i * 3 + j] = s % 3;
    }
  return c;
}


using Perm = std::array<int, 8>;

Perm perm_mul(Perm a, Perm b) {  // a first, then b
  Perm c{};
  for (int i = 0; i < 8; ++i) c[i] = b[a[i]];
  return c;
}

Perm perm_inv(Perm a) {
  Perm c{};
  for (int i = 0; i < 8; ++i) c[a[i]] = i;
  return c;
}

}  // namespace

TEST(Collect, Examples) {
  const auto c = make_collector(3, 2, {1, 1});
  const Word w21{{{1, 1}, {0, 1}}};
  EXPECT_EQ(c->collect(w21).exps, (std::vector<std::int64_t>{1, 1, 1}));
  EXPECT_TRUE(c->collect(Word{{{0, 3}}}).is_identity());
  const auto x1 = c->generator(0), x2 = c->generator(1);
  EXPECT_TRUE(c->inv_pow(c->mul(x1, x2), 3).is_identity());
}

TEST(Multiply, Examples) {
  const auto c = make_collector(3, 2, {1, 1});
  const auto x1 = c->generator(0), x2 = c->generator(1);
  EXPECT_EQ(c->mul(x2, x1).exps, (std::vector<std::int64_t>{1, 1, 1}));
  EXPECT_EQ(c->mul(x2, c->identity()), x2);
  EXPECT_EQ(c->mul(c->element({2, 2, 0}), x1).exps, (std::vector<std::int64_t>{0, 2, 2}));
  EXPECT_EQ(c->inv_pow(c->mul(x1, x2), 2).exps, (std::vector<std::int64_t>{2, 2, 1}));
  EXPECT_EQ(c->inv_pow(x2, 1), x2);
  EXPECT_EQ(c->inv_pow(c->element({0, 0, 1}), -1).exps, (std::vector<std::int64_t>{0, 0, 2}));
  EXPECT_EQ(c->comm(x2, x1).exps, (std::vector<std::int64_t>{0, 0, 1}));
  EXPECT_TRUE(c->comm(x2, x2).is_identity());
}

TEST(Multiply, PowerCommutatorInClassThree) {
  const auto c = make_collector(3, 3, {2, 2});
  const auto x1 = c->generator(0), x2 = c->generator(1);
  EXPECT_EQ(c->comm(c->inv_pow(x2, 3), x1).exps, (std::vector<std::int64_t>{0, 0, 3, 0, 3}));
}

TEST(Evaluate, Words) {
  const auto c = make_collector(3, 2, {1, 1});
  const std::map<std::string, NormalForm> as{{"a", c->generator(0)}, {"b", c->generator(1)}};
  EXPECT_EQ(c->evaluate_word(parse_word("[b,a]"), as), c->comm(c->generator(1), c->generator(0)));
  EXPECT_TRUE(c->evaluate_word(parse_word("a^3 * [b,a]^3"), as).is_identity());
  EXPECT_EQ(c->evaluate_word(parse_word("[a,b,b]"), as),
            c->comm(c->comm(c->generator(0), c->generator(1)), c->generator(1)));
  EXPECT_THROW(c->evaluate_word(parse_word("q"), as), std::invalid_argument);
}

TEST(MatrixModel, HeisenbergGroupModThree) {
  const auto c = make_collector(3, 2, {1, 1});
  const std::function<Mat(Mat, Mat)> mul = mat_mul;
  const std::function<Mat(Mat)> inv = [](Mat a) { return mat_mul(a, a); };
  const Mat one{1, 0, 0, 0, 1, 0, 0, 0, 1};
  const std::vector<Mat> gens{Mat{1, 1, 0, 0, 1, 0, 0, 0, 1}, Mat{1, 0, 0, 0, 1, 1, 0, 0, 1}};
  const auto img = entry_images(c->basis(), gens, mul, inv);
  const auto elems = all_elements(*c);
  ASSERT_EQ(elems.size(), 27u);
  std::set<Mat> seen;
  for (const auto& a : elems) {
    seen.insert(image(a, img, one, mul));
    for (const auto& b : elems) {
      ASSERT_EQ(image(c->mul(a, b), img, one, mul), mat_mul(image(a, img, one, mul), image(b, img, one, mul)));
    }
  }
  EXPECT_EQ(seen.size(), 27u);
}

TEST(PermutationModel, DihedralOrderSixteen) {
  const auto c = make_collector(2, 3, {1, 1}, BasisVariant::kK3P2);
  const std::function<Perm(Perm, Perm)> mul = perm_mul;
  const std::function<Perm(Perm)> inv = perm_inv;
  Perm s{}, t{}, one{};
  for (int i = 0; i < 8; ++i) {
    s[i] = (8 - i) % 8;
    t[i] = (9 - i) % 8;
    one[i] = i;
  }
  const auto img = entry_images(c->basis(), std::vector<Perm>{s, t}, mul, inv);
  const auto elems = all_elements(*c);
  ASSERT_EQ(elems.size(), 16u);
  std::set<Perm> seen;
  for (const auto& a : elems) {
    seen.insert(image(a, img, one, mul));
    for (const auto& b : elems) {
      ASSERT_EQ(image(c->mul(a, b), img, one, mul), perm_mul(image(a, img, one, mul), image(b, img, one, mul)));
    }
  }
  EXPECT_EQ(seen.size(), 16u);
}

TEST(Inverse, RandomElements) {
  const auto c = make_collector(5, 3, {1, 2, 2});
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::int64_t> v(c->size());
    for (int i = 0; i < c->size(); ++i) v[i] = static_cast<std::int64_t>(rng() % c->basis().modulus(i));
    const auto g = c->element(v);
    EXPECT_TRUE(c->mul(g, c->inverse(g)).is_identity());
    EXPECT_TRUE(c->mul(c->inverse(g), g).is_identity());
    EXPECT_EQ(c->inv_pow(g, 7), c->mul(c->inv_pow(g, 3), c->inv_pow(g, 4)));
  }
}

TEST(Strategies, AgreeAndMatchFreeModel) {
  EXPECT_TRUE(verify_confluence(TestGroup::make(3, 3, {1, 2}), 200, 1).passed());
  EXPECT_TRUE(verify_confluence(TestGroup::make(2, 3, {1, 2}, BasisVariant::kK3P2), 200, 1).passed());
  EXPECT_TRUE(verify_against_magnus(2, 4, 100, 2).passed());
  EXPECT_TRUE(verify_against_magnus(3, 3, 100, 3).passed());
}

TEST(Consistency, CertificateAcceptsBuiltGroups) {
  EXPECT_TRUE(check_consistency(*make_collector(3, 3, {1, 2})).consistent);
  EXPECT_TRUE(check_consistency(*make_collector(5, 3, {1, 1, 1})).consistent);
}

TEST(Consistency, RejectsModuliThatBreakThePresentation) {
  // [x2,x1] of order 9 while x1 has order 3 contradicts [x2,x1]^3 = [x2,x1^3] = e.
  const auto fg = FreeNilpotentGroup::get(2, 2);
  EXPECT_FALSE(check_consistency(*fg, {3, 3, 9}).consistent);
  EXPECT_TRUE(check_consistency(*fg, {3, 3, 3}).consistent);
}

TEST(Format, NormalForms) {
  const auto c = make_collector(3, 2, {1, 1});
  EXPECT_EQ(format_normal_form(c->identity()), "e");
  EXPECT_EQ(format_normal_form(c->element({1, 1, 1})), "x1 x2 [x2,x1]");
  const auto k = make_collector(2, 3, {2, 2}, BasisVariant::kK3P2);
  std::set<std::string> names;
  for (int i = 0; i < k->size(); ++i) names.insert(k->basis().name(i));
  EXPECT_TRUE(names.count("[x2^2,x1]"));
  EXPECT_TRUE(names.count("[x2,x1^2]"));
}
