#include "nilcap/oracle.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "nilcap/arith.hpp"
#include "nilcap/magnus.hpp"
#include "nilcap/polycyclic.hpp"

namespace nilcap {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass:
      return "PASS";
    case CheckStatus::kFail:
      return "FAIL";
    case CheckStatus::kNotApplicable:
      return "NOT_APPLICABLE";
  }
  return "FAIL";
}

void CheckReport::fail(std::string counterexample) {
  status = CheckStatus::kFail;
  constexpr std::size_t kKept = 10;
  if (failures.size() < kKept) {
    failures.push_back(std::move(counterexample));
  } else if (failures.size() == kKept) {
    failures.push_back("(further counterexamples omitted)");
  }
}

namespace {

const std::vector<std::pair<IdentityId, std::string>>& identity_names() {
  static const std::vector<std::pair<IdentityId, std::string>> names = {
      {IdentityId::kEq1, "EQ1"},       {IdentityId::kEq2, "EQ2"},     {IdentityId::kEq3, "EQ3"},
      {IdentityId::kEq4, "EQ4"},       {IdentityId::kP23II, "P23_II"}, {IdentityId::kP23IV, "P23_IV"},
      {IdentityId::kH1, "H1"},         {IdentityId::kH2, "H2"},       {IdentityId::kH2Prime, "H2PRIME"},
      {IdentityId::kHall1231, "HALL1231"},
  };
  return names;
}

}  // namespace

std::string to_string(IdentityId id) {
  for (const auto& [i, n] : identity_names()) {
    if (i == id) return n;
  }
  return "?";
}

IdentityId parse_identity_id(const std::string& text) {
  for (const auto& [i, n] : identity_names()) {
    if (n == text) return i;
  }
  throw std::invalid_argument("unknown identity id '" + text + "'");
}

const std::vector<IdentityId>& all_identities() {
  static const std::vector<IdentityId> ids = [] {
    std::vector<IdentityId> v;
    for (const auto& [i, _] : identity_names()) v.push_back(i);
    return v;
  }();
  return ids;
}

// ---------------------------------------------------------------------------

namespace {

bool fits_budget(const HallBasis& b, std::uint64_t budget) {
  try {
    return b.order() <= budget;
  } catch (const std::overflow_error&) {
    return false;
  }
}

std::string spec_line(std::uint64_t p, int k, const std::vector<int>& orders, BasisVariant v) {
  std::ostringstream os;
  os << "p=" << p << " k=" << k << " orders=[";
  for (std::size_t i = 0; i < orders.size(); ++i) os << (i ? "," : "") << orders[i];
  os << "]";
  if (v != BasisVariant::kStandard) os << " " << to_string(v);
  return os.str();
}

void require_plain_product(const GroupSpec& spec) {
  spec.validate();
  if (!spec.relators.empty() || spec.presentation11) {
    throw std::invalid_argument("this check runs on nilpotent products without relators");
  }
}

int add_weights(int a, int b) {
  if (a == kInfiniteWeight || b == kInfiniteWeight) return kInfiniteWeight;
  return a + b;
}

std::string wtext(int w) { return w == kInfiniteWeight ? std::string("inf") : std::to_string(w); }

}  // namespace

TestGroup TestGroup::make(const GroupSpec& spec, std::uint64_t budget) {
  require_plain_product(spec);
  std::vector<int> sorted;
  sort_by_order(spec.orders, sorted);
  return make(spec.prime, spec.nilpotency_class, sorted, spec.variant, budget);
}

TestGroup TestGroup::make(std::uint64_t p, int k, const std::vector<int>& orders, BasisVariant variant,
                          std::uint64_t budget) {
  auto basis = std::make_shared<const HallBasis>(HallBasis::make(p, k, orders, variant));
  TestGroup g;
  if (fits_budget(*basis, budget)) {
    g.product_ = std::make_shared<const NilpotentProduct>(basis);
    g.collector_ = std::shared_ptr<const Collector>(g.product_, &g.product_->collector());
    g.series_ = lower_central_series(*g.product_);
  } else {
    if (variant != BasisVariant::kStandard) {
      throw BudgetExceeded("test group (modified basis needs enumeration)", 0, budget);
    }
    g.collector_ = std::make_shared<const Collector>(basis);
  }
  return g;
}

std::string TestGroup::describe() const {
  return spec_line(basis().prime(), nilpotency_class(), basis().orders(), basis().variant());
}

int TestGroup::coordinate_weight(const NormalForm& g) const {
  for (std::size_t t = 0; t < g.exps.size(); ++t) {
    if (g.exps[t] != 0) return basis().weight(static_cast<int>(t));
  }
  return kInfiniteWeight;
}

int TestGroup::weight(const NormalForm& g) const {
  if (enumerable()) return weight_W(series_, product_->encode(g));
  return coordinate_weight(g);
}

NormalForm TestGroup::random(std::mt19937_64& rng) const {
  std::vector<std::int64_t> e(basis().size());
  for (int t = 0; t < basis().size(); ++t) {
    e[t] = static_cast<std::int64_t>(std::uniform_int_distribution<std::uint64_t>(0, basis().modulus(t) - 1)(rng));
  }
  return collector_->element(std::move(e));
}

std::optional<NormalForm> TestGroup::random_of_weight(int w, std::mt19937_64& rng) const {
  if (w < 1) return std::nullopt;
  if (enumerable()) {
    const std::size_t i = static_cast<std::size_t>(w - 1);
    if (i + 1 >= series_.size()) return std::nullopt;
    const Subgroup& top = series_[i];
    const Subgroup& next = series_[i + 1];
    if (top.order() == next.order()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, top.members().size() - 1);
    for (;;) {
      const ElementId x = top.members()[pick(rng)];
      if (!next.contains(x)) return product_->decode(x);
    }
  }
  bool any = false;
  for (int t = 0; t < basis().size(); ++t) any = any || basis().weight(t) == w;
  if (!any) return std::nullopt;
  for (;;) {
    std::vector<std::int64_t> e(basis().size(), 0);
    bool hit = false;
    for (int t = 0; t < basis().size(); ++t) {
      if (basis().weight(t) < w) continue;
      e[t] = static_cast<std::int64_t>(std::uniform_int_distribution<std::uint64_t>(0, basis().modulus(t) - 1)(rng));
      if (basis().weight(t) == w && e[t] != 0) hit = true;
    }
    if (hit) return collector_->element(std::move(e));
  }
}

// ---------------------------------------------------------------------------

namespace {

class Arith {
 public:
  explicit Arith(const TestGroup& g) : g_(g), c_(g.collector()) {}

  NormalForm mul(const NormalForm& a, const NormalForm& b) const { return c_.mul(a, b); }
  NormalForm mul(std::initializer_list<NormalForm> xs) const {
    NormalForm out = c_.identity();
    for (const auto& x : xs) out = c_.mul(out, x);
    return out;
  }
  NormalForm inv(const NormalForm& a) const { return c_.inverse(a); }
  NormalForm pow(const NormalForm& a, std::int64_t n) const { return c_.inv_pow(a, n); }
  NormalForm comm(const NormalForm& a, const NormalForm& b) const { return c_.comm(a, b); }
  NormalForm comm(const std::vector<NormalForm>& xs) const {
    NormalForm out = xs.at(0);
    for (std::size_t i = 1; i < xs.size(); ++i) out = c_.comm(out, xs[i]);
    return out;
  }
  /// a^-1 b
  NormalForm quot(const NormalForm& a, const NormalForm& b) const { return c_.mul(c_.inverse(a), b); }
  int W(const NormalForm& a) const { return g_.weight(a); }

 private:
  const TestGroup& g_;
  const Collector& c_;
};

std::string nf(const NormalForm& x) { return "(" + format_normal_form(x) + ")"; }

constexpr int kFitSamples = 8;

// values[a-1] is the element at alpha = a, alpha = 1..8; at alpha = 0 the
// element is e. Each coordinate must be sum_j a_j binom(alpha, j) modulo its
// modulus, j = 1..d, with the a_j fitted from alpha = 1..d.
std::optional<std::string> binomial_fit(const TestGroup& g, const std::vector<NormalForm>& values) {
  const HallBasis& b = g.basis();
  static const std::int64_t binom[kFitSamples + 1][kFitSamples + 1] = {
      {1, 0, 0, 0, 0, 0, 0, 0, 0},       {1, 1, 0, 0, 0, 0, 0, 0, 0},      {1, 2, 1, 0, 0, 0, 0, 0, 0},
      {1, 3, 3, 1, 0, 0, 0, 0, 0},       {1, 4, 6, 4, 1, 0, 0, 0, 0},      {1, 5, 10, 10, 5, 1, 0, 0, 0},
      {1, 6, 15, 20, 15, 6, 1, 0, 0},    {1, 7, 21, 35, 35, 21, 7, 1, 0}, {1, 8, 28, 56, 70, 56, 28, 8, 1},
  };
  for (int t = 0; t < b.size(); ++t) {
    const auto m = static_cast<std::int64_t>(b.modulus(t));
    const int d = b.variant() == BasisVariant::kStandard ? b.weight(t) : b.nilpotency_class();
    if (d >= kFitSamples) throw std::logic_error("binomial_fit: degree too large for the sample range");
    auto f = [&](int alpha) -> std::int64_t { return alpha == 0 ? 0 : values[alpha - 1].exps[t]; };
    std::vector<std::int64_t> coef(d + 1, 0);
    for (int j = 1; j <= d; ++j) {
      std::int64_t s = 0;
      for (int i = 0; i <= j; ++i) {
        const std::int64_t term = binom[j][i] % m * f(i) % m;
        s = ((j - i) % 2 == 0) ? (s + term) % m : (s - term + m) % m;
      }
      coef[j] = s;
    }
    for (int alpha = d + 1; alpha <= kFitSamples; ++alpha) {
      std::int64_t pred = 0;
      for (int j = 1; j <= d; ++j) pred = (pred + coef[j] * (binom[alpha][j] % m)) % m;
      if (pred != f(alpha)) {
        return "coordinate " + b.name(t) + " at alpha=" + std::to_string(alpha) + ": fit predicts " +
               std::to_string(pred) + ", collected " + std::to_string(f(alpha));
      }
    }
  }
  return std::nullopt;
}

std::int64_t rand_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Random element whose weight is itself random (so deep elements show up).
NormalForm random_layered(const TestGroup& g, std::mt19937_64& rng) {
  const int w = static_cast<int>(rand_int(rng, 1, g.nilpotency_class()));
  if (auto x = g.random_of_weight(w, rng)) return *x;
  return g.random(rng);
}

}  // namespace

CheckReport verify_identity(IdentityId id, const TestGroup& g, std::uint64_t samples, std::uint64_t seed) {
  CheckReport rep;
  rep.check_id = to_string(id);
  rep.group = g.describe();
  rep.seed = seed;
  rep.method = "collector, W by " + g.weight_method();
  std::mt19937_64 rng(seed);
  const Arith A(g);
  const int k = g.nilpotency_class();

  auto run_triples = [&](auto&& body) {
    const bool exhaustive = g.enumerable() && g.product()->order() <= 2000 &&
                            g.product()->order() * g.product()->order() * g.product()->order() <= samples;
    if (exhaustive) {
      const auto n = static_cast<ElementId>(g.product()->order());
      for (ElementId a = 0; a < n; ++a) {
        for (ElementId b = 0; b < n; ++b) {
          for (ElementId c = 0; c < n; ++c) {
            body(g.product()->decode(a), g.product()->decode(b), g.product()->decode(c));
            ++rep.samples;
          }
        }
      }
      rep.method += ", all triples";
      return;
    }
    for (std::uint64_t s = 0; s < samples; ++s) {
      body(g.random(rng), g.random(rng), g.random(rng));
      ++rep.samples;
    }
  };

  switch (id) {
    case IdentityId::kEq1:
      run_triples([&](const NormalForm& x, const NormalForm& y, const NormalForm& z) {
        const NormalForm lhs = A.comm(A.mul(x, y), z);
        const NormalForm xz = A.comm(x, z);
        const NormalForm rhs = A.mul({xz, A.comm(xz, y), A.comm(y, z)});
        if (!(lhs == rhs)) rep.fail("x=" + nf(x) + " y=" + nf(y) + " z=" + nf(z));
      });
      break;
    case IdentityId::kEq2:
      run_triples([&](const NormalForm& x, const NormalForm& y, const NormalForm& z) {
        const NormalForm lhs = A.comm(x, A.mul(y, z));
        const NormalForm rhs = A.mul({A.comm(x, z), A.comm(z, A.comm(y, x)), A.comm(x, y)});
        if (!(lhs == rhs)) rep.fail("x=" + nf(x) + " y=" + nf(y) + " z=" + nf(z));
      });
      break;
    case IdentityId::kEq3:
    case IdentityId::kEq4:
      rep.method += ", compared modulo G_4";
      for (std::uint64_t s = 0; s < samples; ++s, ++rep.samples) {
        const NormalForm a = g.random(rng), b = g.random(rng);
        const std::int64_t r = rand_int(rng, -12, 12), t = rand_int(rng, -12, 12);
        const NormalForm ab = A.comm(a, b), aba = A.comm(ab, a), abb = A.comm(ab, b);
        NormalForm lhs, rhs;
        if (id == IdentityId::kEq3) {
          lhs = A.comm(A.pow(a, r), A.pow(b, t));
          rhs = A.mul({A.pow(ab, r * t), A.pow(aba, t * arith::choose2(r)), A.pow(abb, r * arith::choose2(t))});
        } else {
          lhs = A.comm(A.pow(b, r), A.pow(a, t));
          rhs = A.mul({A.pow(ab, -r * t), A.pow(aba, -r * arith::choose2(t)), A.pow(abb, -t * arith::choose2(r))});
        }
        const int w = A.W(A.quot(lhs, rhs));
        if (w < 4) {
          rep.fail("a=" + nf(a) + " b=" + nf(b) + " r=" + std::to_string(r) + " s=" + std::to_string(t) +
                   ": lhs^-1 rhs has weight " + wtext(w));
        }
      }
      break;
    case IdentityId::kP23II:
      for (std::uint64_t s = 0; s < samples; ++s) {
        const int w1 = static_cast<int>(rand_int(rng, 1, k)), w2 = static_cast<int>(rand_int(rng, 1, k));
        const int ni = static_cast<int>(rand_int(rng, 1, 3)), nj = static_cast<int>(rand_int(rng, 1, 3));
        std::vector<NormalForm> as, bs;
        std::vector<std::int64_t> al, be;
        bool ok = true;
        for (int i = 0; i < ni && ok; ++i) {
          auto x = g.random_of_weight(w1, rng);
          ok = x.has_value();
          if (ok) as.push_back(*x), al.push_back(rand_int(rng, -6, 6));
        }
        for (int j = 0; j < nj && ok; ++j) {
          auto x = g.random_of_weight(w2, rng);
          ok = x.has_value();
          if (ok) bs.push_back(*x), be.push_back(rand_int(rng, -6, 6));
        }
        if (!ok) continue;
        ++rep.samples;
        NormalForm pa = g.collector().identity(), pb = g.collector().identity();
        for (int i = 0; i < ni; ++i) pa = A.mul(pa, A.pow(as[i], al[i]));
        for (int j = 0; j < nj; ++j) pb = A.mul(pb, A.pow(bs[j], be[j]));
        NormalForm rhs = g.collector().identity();
        for (int i = 0; i < ni; ++i) {
          for (int j = 0; j < nj; ++j) rhs = A.mul(rhs, A.pow(A.comm(as[i], bs[j]), al[i] * be[j]));
        }
        const int w = A.W(A.quot(A.comm(pa, pb), rhs));
        const int wc = A.W(A.comm(as[0], bs[0]));
        if (w < w1 + w2 + 1) {
          rep.fail("W(a_i)=" + std::to_string(w1) + " W(b_j)=" + std::to_string(w2) + " a_1=" + nf(as[0]) +
                   " b_1=" + nf(bs[0]) + ": quotient has weight " + wtext(w));
        } else if (wc < w1 + w2) {
          rep.fail("W([a,b]) = " + wtext(wc) + " < " + std::to_string(w1 + w2) + " for a=" + nf(as[0]) +
                   " b=" + nf(bs[0]));
        }
      }
      break;
    case IdentityId::kP23IV:
      for (std::uint64_t s = 0; s < samples; ++s, ++rep.samples) {
        const NormalForm a = random_layered(g, rng), b = random_layered(g, rng), c = random_layered(g, rng);
        const NormalForm jac = A.mul({A.comm({a, b, c}), A.comm({b, c, a}), A.comm({c, a, b})});
        const int bound = add_weights(add_weights(A.W(a), A.W(b)), add_weights(A.W(c), 1));
        const int w = A.W(jac);
        if (w < bound) {
          rep.fail("a=" + nf(a) + " b=" + nf(b) + " c=" + nf(c) + ": product has weight " + wtext(w) +
                   " < " + wtext(bound));
        }
      }
      break;
    case IdentityId::kH1:
      rep.method += ", binomial fit over alpha=1..8";
      for (std::uint64_t s = 0; s < samples; ++s, ++rep.samples) {
        const NormalForm x = random_layered(g, rng), y = random_layered(g, rng);
        const NormalForm xy = A.comm(x, y);
        const int bound = add_weights(A.W(x), A.W(xy));
        std::vector<NormalForm> vals, rest;
        for (int alpha = 1; alpha <= kFitSamples; ++alpha) {
          vals.push_back(A.comm(A.pow(x, alpha), y));
          rest.push_back(A.quot(A.pow(xy, alpha), vals.back()));
          if (A.W(rest.back()) < bound) {
            rep.fail("x=" + nf(x) + " y=" + nf(y) + " alpha=" + std::to_string(alpha) +
                     ": tail below W(x)+W([x,y])");
          }
        }
        for (const auto* series : {&vals, &rest}) {
          if (auto why = binomial_fit(g, *series)) rep.fail("x=" + nf(x) + " y=" + nf(y) + ": " + *why);
        }
      }
      break;
    case IdentityId::kH2:
    case IdentityId::kH2Prime:
      rep.method += ", binomial fit over alpha=1..8";
      for (std::uint64_t s = 0; s < samples; ++s, ++rep.samples) {
        const int r = static_cast<int>(rand_int(rng, 2, std::max(2, std::min(3, k))));
        std::vector<NormalForm> bs;
        int bound = 1;
        for (int j = 0; j < r; ++j) {
          bs.push_back(random_layered(g, rng));
          bound = add_weights(bound, A.W(bs.back()));
        }
        const int pos = static_cast<int>(rand_int(rng, 0, r - 1));
        const NormalForm plain = A.comm(bs);
        std::vector<NormalForm> vals, rest;
        for (int alpha = 1; alpha <= kFitSamples; ++alpha) {
          auto powered = bs;
          powered[pos] = A.pow(bs[pos], alpha);
          vals.push_back(A.comm(powered));
          // H2: [.., b^alpha, ..] = [..]^alpha * tail; H2PRIME: [..]^alpha = [.., b^alpha, ..] * tail'.
          rest.push_back(id == IdentityId::kH2 ? A.quot(A.pow(plain, alpha), vals.back())
                                               : A.quot(vals.back(), A.pow(plain, alpha)));
          if (A.W(rest.back()) < bound) {
            std::string who;
            for (const auto& b : bs) who += nf(b);
            rep.fail("b=" + who + " i=" + std::to_string(pos + 1) + " alpha=" + std::to_string(alpha) +
                     ": tail weight " + wtext(A.W(rest.back())) + " < " + wtext(bound));
          }
        }
        const auto& fitted = id == IdentityId::kH2 ? vals : rest;
        if (auto why = binomial_fit(g, fitted)) rep.fail("b_1=" + nf(bs[0]) + ": " + *why);
        if (auto why = binomial_fit(g, id == IdentityId::kH2 ? rest : vals)) rep.fail("b_1=" + nf(bs[0]) + ": " + *why);
      }
      break;
    case IdentityId::kHall1231:
      rep.method += ", binomial fit over alpha=1..8";
      for (std::uint64_t s = 0; s < samples; ++s, ++rep.samples) {
        const int n = static_cast<int>(rand_int(rng, 2, 3));
        std::vector<NormalForm> xs;
        std::vector<int> ws;
        for (int j = 0; j < n; ++j) {
          xs.push_back(random_layered(g, rng));
          ws.push_back(A.W(xs.back()));
        }
        std::sort(ws.begin(), ws.end());
        const int bound = add_weights(ws[0], ws[1]);
        NormalForm prod = g.collector().identity();
        for (const auto& x : xs) prod = A.mul(prod, x);
        std::vector<NormalForm> vals, rest;
        for (int alpha = 1; alpha <= kFitSamples; ++alpha) {
          vals.push_back(A.pow(prod, alpha));
          NormalForm sep = g.collector().identity();
          for (const auto& x : xs) sep = A.mul(sep, A.pow(x, alpha));
          rest.push_back(A.quot(sep, vals.back()));
          if (A.W(rest.back()) < bound) {
            rep.fail("x_1=" + nf(xs[0]) + " alpha=" + std::to_string(alpha) + ": commutator part below weight " +
                     wtext(bound));
          }
        }
        for (const auto* series : {&vals, &rest}) {
          if (auto why = binomial_fit(g, *series)) rep.fail("x_1=" + nf(xs[0]) + ": " + *why);
        }
      }
      break;
  }
  return rep;
}

// ---------------------------------------------------------------------------

CheckReport verify_exponent_bounds(const TestGroup& g, const NormalForm& y, const NormalForm& z, int a) {
  if (!g.enumerable()) throw BudgetExceeded("verify_exponent_bounds", 0, kDefaultBudget);
  CheckReport rep;
  rep.check_id = "EXPONENT_BOUNDS";
  rep.group = g.describe();
  rep.method = "enumeration of <y,z> and its lower central series";
  const auto& prod = *g.product();
  const Arith A(g);
  const std::uint64_t p = g.basis().prime();
  const int k = g.nilpotency_class();
  auto ppow = [&](int e) { return static_cast<std::int64_t>(arith::checked_pow(p, static_cast<std::uint64_t>(e))); };

  for (int i = a; i <= a + 3; ++i) {
    const NormalForm c = A.comm(z, A.pow(y, ppow(i)));
    if (!A.comm(c, y).is_identity() || !A.comm(c, z).is_identity()) {
      rep.status = CheckStatus::kNotApplicable;
      rep.detail = "hypothesis fails at i=" + std::to_string(i);
      return rep;
    }
  }
  const ElementId yi = prod.encode(y), zi = prod.encode(z);
  // Lower central series of H = <y, z>, closed under conjugation by y and z.
  std::vector<Subgroup> hs;
  hs.push_back(subgroup_closure(prod, {yi, zi}));
  while (static_cast<int>(hs.size()) < k && hs.back().order() > 1) {
    ClosureBuilder b(prod);
    for (auto h : hs.back().generators()) {
      b.add(prod.comm(h, yi));
      b.add(prod.comm(h, zi));
    }
    for (bool grew = true; grew;) {
      grew = false;
      const auto gens = b.generators();
      for (auto h : gens) {
        grew = b.add(prod.conj(h, yi)) || grew;
        grew = b.add(prod.conj(h, zi)) || grew;
      }
    }
    hs.push_back(b.finish());
  }
  std::ostringstream detail;
  for (int m = 0; m <= k - 3; ++m) {
    const int term = k - m;
    const int e = a + m / static_cast<int>(p - 1);
    ++rep.samples;
    if (term - 1 >= static_cast<int>(hs.size())) continue;  // already trivial
    const ElementId bad = [&]() -> ElementId {
      for (auto h : hs[term - 1].members()) {
        if (prod.pow(h, ppow(e)) != GroupView::identity()) return h;
      }
      return GroupView::identity();
    }();
    detail << "<y,z>_" << term << " exponent | p^" << e << "; ";
    if (bad != GroupView::identity()) {
      rep.fail("m=" + std::to_string(m) + ": element " + prod.format(bad) + " of <y,z>_" + std::to_string(term) +
               " has order above p^" + std::to_string(e));
    }
  }
  if (k >= 2) {
    const int n = a + (k - 2) / static_cast<int>(p - 1);
    const NormalForm left = A.comm(A.pow(z, ppow(n)), y);
    const NormalForm mid = A.pow(A.comm(z, y), ppow(n));
    const NormalForm right = A.comm(z, A.pow(y, ppow(n)));
    ++rep.samples;
    detail << "N=" << n;
    if (!(left == mid) || !(mid == right)) {
      rep.fail("N=" + std::to_string(n) + ": [z^p^N,y]=" + nf(left) + " [z,y]^p^N=" + nf(mid) +
               " [z,y^p^N]=" + nf(right));
    }
  }
  rep.detail = detail.str();
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

// Generators predicted for the center of the product on sorted generators.
std::vector<NormalForm> center_formula(const Collector& c) {
  const HallBasis& b = c.basis();
  const std::uint64_t p = b.prime();
  const int k = b.nilpotency_class();
  const int r = b.rank();
  const auto& al = b.orders();
  std::vector<NormalForm> out;
  if (r == 1) {
    out.push_back(c.generator(0));
    return out;
  }
  const bool k3p2 = b.variant() == BasisVariant::kK3P2;
  const int top = k3p2 ? al[r - 2] + 1 : al[r - 2];
  out.push_back(c.inv_pow(c.generator(r - 1), static_cast<std::int64_t>(arith::checked_pow(p, top))));
  // G_k: left-normed commutators of weight k in the generators.
  std::vector<int> idx(k, 0);
  for (;;) {
    NormalForm x = c.generator(idx[0]);
    for (int i = 1; i < k; ++i) x = c.comm(x, c.generator(idx[i]));
    out.push_back(x);
    int pos = k - 1;
    while (pos >= 0 && ++idx[pos] == r) idx[pos--] = 0;
    if (pos < 0) break;
  }
  if (k3p2) {
    for (int j = 0; j < r; ++j) {
      for (int i = 0; i < j; ++i) {
        out.push_back(c.inv_pow(c.comm(c.generator(j), c.generator(i)),
                                static_cast<std::int64_t>(arith::checked_pow(p, al[i]))));
      }
    }
  }
  return out;
}

}  // namespace

CheckReport verify_center_theorem(const GroupSpec& spec, std::uint64_t budget) {
  require_plain_product(spec);
  const bool regime = spec.nilpotency_class == 2 || (spec.variant == BasisVariant::kStandard &&
                                                      spec.prime >= static_cast<std::uint64_t>(spec.nilpotency_class)) ||
                      spec.variant == BasisVariant::kK3P2;
  if (!regime) throw std::invalid_argument("verify_center_theorem: no center description for this regime");
  std::vector<int> sorted;
  sort_by_order(spec.orders, sorted);
  auto basis = std::make_shared<const HallBasis>(HallBasis::make(spec.prime, spec.nilpotency_class, sorted, spec.variant));
  CheckReport rep;
  rep.check_id = "CENTER";
  rep.group = spec_line(spec.prime, spec.nilpotency_class, sorted, spec.variant);
  if (fits_budget(*basis, budget)) {
    rep.method = "brute force over all elements";
    const auto g = std::make_shared<const NilpotentProduct>(basis);
    const Subgroup z = center(*g);
    std::vector<ElementId> f;
    for (const auto& x : center_formula(g->collector())) f.push_back(g->encode(x));
    const Subgroup predicted = subgroup_closure(*g, f);
    rep.samples = g->order();
    rep.detail = "|Z| = " + std::to_string(z.order()) + ", predicted " + std::to_string(predicted.order());
    if (!(z == predicted)) {
      for (auto x : z.members()) {
        if (!predicted.contains(x)) rep.fail("central, not predicted: " + g->format(x));
      }
      for (auto x : predicted.members()) {
        if (!z.contains(x)) rep.fail("predicted, not central: " + g->format(x));
      }
    }
    return rep;
  }
  if (spec.variant != BasisVariant::kStandard) throw BudgetExceeded("verify_center_theorem", 0, budget);
  rep.method = "centralizer of the generators through the power-commutator series";
  const PcGroup pc(basis);
  const PcSubgroup z = pc.center_modulo(pc.trivial());
  const PcSubgroup predicted = pc.closure(center_formula(pc.collector()));
  rep.samples = static_cast<std::uint64_t>(pc.length());
  rep.detail = "|Z| = p^" + std::to_string(z.rank()) + ", predicted p^" + std::to_string(predicted.rank());
  for (const auto& x : z.elements()) {
    if (!pc.contains(predicted, x)) rep.fail("central, not predicted: " + format_normal_form(x));
  }
  for (const auto& x : predicted.elements()) {
    if (!pc.contains(z, x)) rep.fail("predicted, not central: " + format_normal_form(x));
  }
  return rep;
}

CheckReport verify_struik_order(const GroupSpec& spec, std::uint64_t budget) {
  require_plain_product(spec);
  std::vector<int> sorted;
  sort_by_order(spec.orders, sorted);
  auto basis = std::make_shared<const HallBasis>(HallBasis::make(spec.prime, spec.nilpotency_class, sorted, spec.variant));
  CheckReport rep;
  rep.check_id = "ORDER_COUNT";
  rep.group = spec_line(spec.prime, spec.nilpotency_class, sorted, spec.variant);
  int log_moduli = 0;
  for (auto m : basis->moduli()) log_moduli += static_cast<int>(arith::floor_log(spec.prime, m));
  if (fits_budget(*basis, budget)) {
    rep.method = "closure of the generators, element by element";
    const NilpotentProduct g(basis);
    const Subgroup all = subgroup_closure(g, g.generators());
    rep.samples = all.order();
    const std::uint64_t expected = basis->order();
    rep.detail = "reached " + std::to_string(all.order()) + ", product of moduli " + std::to_string(expected);
    if (all.order() != expected) rep.fail(rep.detail);
    return rep;
  }
  if (spec.variant != BasisVariant::kStandard) throw BudgetExceeded("verify_struik_order", 0, budget);
  rep.method = "consistency certificate and closure in the power-commutator series";
  const Collector col(basis);
  const auto cert = check_consistency(col);
  const PcGroup pc(basis);
  const int reached = pc.closure(pc.generators()).rank();
  rep.samples = cert.checks;
  rep.detail = "consistency: " + std::to_string(cert.checks) + " checks; closure p^" + std::to_string(reached) +
               ", product of moduli p^" + std::to_string(log_moduli);
  if (!cert.consistent) rep.fail("inconsistent: " + cert.failure);
  if (reached != log_moduli) rep.fail(rep.detail);
  return rep;
}

// ---------------------------------------------------------------------------

CheckReport verify_associativity(const GroupView& g, std::uint64_t random_triples, std::uint64_t seed,
                                 std::uint64_t table_limit) {
  CheckReport rep;
  rep.check_id = "ASSOCIATIVITY";
  rep.seed = seed;
  const std::uint64_t n = g.order();
  rep.group = "order " + std::to_string(n);
  if (n <= table_limit && n <= 65535) {
    rep.method = "Light's test on the Cayley table";
    std::vector<std::uint16_t> t(n * n);
    for (std::uint64_t a = 0; a < n; ++a) {
      for (std::uint64_t b = 0; b < n; ++b) {
        t[a * n + b] = static_cast<std::uint16_t>(g.mul(static_cast<ElementId>(a), static_cast<ElementId>(b)));
      }
    }
    // Elements reached from e by right multiplication with the generators.
    std::vector<char> seen(n, 0);
    std::vector<std::uint64_t> stack{GroupView::identity()};
    seen[GroupView::identity()] = 1;
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      for (auto s : g.generators()) {
        const auto y = t[x * n + s];
        if (!seen[y]) seen[y] = 1, stack.push_back(y);
      }
    }
    if (std::count(seen.begin(), seen.end(), 1) != static_cast<std::ptrdiff_t>(n)) {
      rep.fail("generators do not reach every element");
    }
    for (auto s : g.generators()) {
      for (std::uint64_t x = 0; x < n; ++x) {
        const auto xs = t[x * n + s];
        for (std::uint64_t y = 0; y < n; ++y) {
          ++rep.samples;
          if (t[xs * n + y] != t[x * n + t[s * n + y]]) {
            rep.fail("(" + g.format(static_cast<ElementId>(x)) + ")(" + g.format(s) + ")(" +
                     g.format(static_cast<ElementId>(y)) + ")");
          }
        }
      }
    }
    return rep;
  }
  rep.method = "random triples";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
  for (std::uint64_t i = 0; i < random_triples; ++i, ++rep.samples) {
    const auto a = static_cast<ElementId>(pick(rng)), b = static_cast<ElementId>(pick(rng)),
               c = static_cast<ElementId>(pick(rng));
    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) {
      rep.fail("(" + g.format(a) + ")(" + g.format(b) + ")(" + g.format(c) + ")");
    }
  }
  return rep;
}

CheckReport verify_associativity(const TestGroup& g, std::uint64_t random_triples, std::uint64_t seed) {
  CheckReport rep;
  rep.check_id = "ASSOCIATIVITY";
  rep.group = g.describe();
  rep.seed = seed;
  rep.method = "random triples of normal forms";
  std::mt19937_64 rng(seed);
  const Collector& c = g.collector();
  for (std::uint64_t i = 0; i < random_triples; ++i, ++rep.samples) {
    const NormalForm a = g.random(rng), b = g.random(rng), d = g.random(rng);
    if (!(c.mul(c.mul(a, b), d) == c.mul(a, c.mul(b, d)))) rep.fail(nf(a) + nf(b) + nf(d));
  }
  return rep;
}

CheckReport verify_against_magnus(int rank, int nilpotency_class, std::uint64_t samples, std::uint64_t seed) {
  CheckReport rep;
  rep.check_id = "MAGNUS";
  rep.group = "free nilpotent, rank " + std::to_string(rank) + ", class " + std::to_string(nilpotency_class);
  rep.method = "collected free coordinates against peeled Magnus series";
  rep.seed = seed;
  // Any prime >= k gives the standard basis; moduli play no part in free coordinates.
  std::uint64_t p = 2;
  while (p < static_cast<std::uint64_t>(nilpotency_class) || !arith::is_prime(p)) ++p;
  const Collector col(std::make_shared<const HallBasis>(HallBasis::make(p, nilpotency_class, std::vector<int>(rank, 1))));
  const MagnusCoordinates& mc = col.free_group().magnus();
  const MagnusAlgebra& alg = mc.algebra();
  std::mt19937_64 rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s, ++rep.samples) {
    Letters letters;
    MagnusAlgebra::Series series = alg.one();
    const int len = static_cast<int>(rand_int(rng, 1, 10));
    std::string word;
    for (int i = 0; i < len; ++i) {
      const int g = static_cast<int>(rand_int(rng, 0, rank - 1));
      std::int64_t e = rand_int(rng, -4, 4);
      if (e == 0) e = 1;
      letters.push_back({col.basis().generator_index(g), e});
      series = alg.mul(series, alg.power(alg.generator(g), e));
      word += (i ? " x" : "x") + std::to_string(g + 1) + "^" + std::to_string(e);
    }
    std::vector<std::int64_t> v(col.size(), 0);
    col.multiply_into(v, letters);
    if (v != mc.peel(series)) rep.fail(word);
  }
  return rep;
}

CheckReport verify_confluence(const TestGroup& g, std::uint64_t samples, std::uint64_t seed) {
  CheckReport rep;
  rep.check_id = "CONFLUENCE";
  rep.group = g.describe();
  rep.method = "three collection strategies and re-collection of the result";
  rep.seed = seed;
  const Collector& c = g.collector();
  std::mt19937_64 rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s, ++rep.samples) {
    Word w;
    const int len = static_cast<int>(rand_int(rng, 1, 8));
    for (int i = 0; i < len; ++i) {
      const int atom = static_cast<int>(rand_int(rng, 0, c.size() - 1));
      std::int64_t e = rand_int(rng, -5, 5);
      if (e == 0) e = 2;
      w.letters.push_back({atom, e});
    }
    const NormalForm a = c.collect(w, Strategy::kFromLeft);
    const NormalForm b = c.collect(w, Strategy::kLeftmostFirst);
    const NormalForm d = c.collect(w, Strategy::kRightmostMinimal);
    const NormalForm again = c.collect(c.to_word(a), Strategy::kFromLeft);
    if (!(a == b) || !(a == d) || !(a == again)) {
      std::string text;
      for (const auto& l : w.letters) text += c.basis().name(l.atom) + "^" + std::to_string(l.exponent) + " ";
      rep.fail(text + "-> " + nf(a) + " / " + nf(b) + " / " + nf(d));
    }
  }
  return rep;
}

}  // namespace nilcap
