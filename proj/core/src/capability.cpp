#include "nilcap/capability.hpp"

#include <algorithm>

#include "nilcap/arith.hpp"
#include "nilcap/polycyclic.hpp"

namespace nilcap {

std::string to_string(Status s) {
  switch (s) {
    case Status::kCapable:
      return "CAPABLE";
    case Status::kNotCapable:
      return "NOT_CAPABLE";
    case Status::kUnknown:
      return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::string to_string(Justification j) {
  switch (j) {
    case Justification::kOrderBoundViolated:
      return "order-bound-violated";
    case Justification::kSmallClassCriterion:
      return "small-class-criterion";
    case Justification::kBinaryClassTwoCriterion:
      return "binary-class-two-criterion";
    case Justification::kTwoGeneratorClassTwoCriterion:
      return "two-generator-class-two-criterion";
    case Justification::kExtraspecialClassification:
      return "extraspecial-classification";
    case Justification::kVerifiedWitness:
      return "verified-witness";
    case Justification::kOpenRegime:
      return "open-regime";
  }
  return "open-regime";
}

namespace {

std::uint64_t ppow(std::uint64_t p, int e) { return arith::checked_pow(p, static_cast<std::uint64_t>(e)); }

void require_ascending(const std::vector<int>& orders) {
  if (orders.empty()) throw std::invalid_argument("need at least one generator order");
  if (!std::is_sorted(orders.begin(), orders.end())) throw std::invalid_argument("orders must be ascending");
  for (int a : orders) {
    if (a < 1) throw std::invalid_argument("orders must be positive");
  }
}

std::vector<ElementId> project_all(const QuotientGroup& q, const std::vector<ElementId>& ids) {
  std::vector<ElementId> out;
  for (auto id : ids) out.push_back(q.project(id));
  return out;
}

bool all_central(const GroupView& g, const std::vector<ElementId>& ids) {
  for (auto v : ids) {
    for (auto s : g.generators()) {
      if (g.mul(v, s) != g.mul(s, v)) return false;
    }
  }
  return true;
}

}  // namespace

bool necessity_check(std::uint64_t p, int k, const std::vector<int>& orders) {
  require_ascending(orders);
  if (k < 1) throw std::invalid_argument("class must be positive");
  const std::size_t r = orders.size();
  if (r < 2) return false;
  const auto slack = arith::capability_slack(p, static_cast<std::uint64_t>(k));
  return static_cast<std::uint64_t>(orders[r - 1]) <= static_cast<std::uint64_t>(orders[r - 2]) + slack;
}

Verdict capable_nilprod(std::uint64_t p, int k, const std::vector<int>& orders, const WitnessOptions& options) {
  arith::require_prime(p);
  require_ascending(orders);
  const std::size_t r = orders.size();
  Verdict v;
  std::optional<std::vector<int>> k_orders;
  if (r < 2) {
    v.status = Status::kNotCapable;
    v.justification = Justification::kOrderBoundViolated;
    v.detail = "a nontrivial cyclic group is not capable";
    return v;
  }
  if (static_cast<std::uint64_t>(k) < p) {
    v.justification = Justification::kSmallClassCriterion;
    v.status = orders[r - 2] == orders[r - 1] ? Status::kCapable : Status::kNotCapable;
    v.detail = "class " + std::to_string(k) + " < p = " + std::to_string(p) +
               ": capable iff the two largest orders agree (" + std::to_string(orders[r - 2]) + " vs " +
               std::to_string(orders[r - 1]) + ")";
    k_orders = orders;
  } else if (p == 2 && k == 2) {
    v.justification = Justification::kBinaryClassTwoCriterion;
    v.status = necessity_check(p, k, orders) ? Status::kCapable : Status::kNotCapable;
    v.detail = "p = 2, class 2: capable iff alpha_r <= alpha_{r-1} + 1 (" + std::to_string(orders[r - 1]) +
               " vs " + std::to_string(orders[r - 2]) + " + 1)";
    k_orders = orders;
  } else if (!necessity_check(p, k, orders)) {
    v.status = Status::kNotCapable;
    v.justification = Justification::kOrderBoundViolated;
    v.detail = "alpha_r = " + std::to_string(orders[r - 1]) + " exceeds alpha_{r-1} + " +
               std::to_string(arith::capability_slack(p, k)) + " = " +
               std::to_string(orders[r - 2] + static_cast<int>(arith::capability_slack(p, k)));
    return v;
  } else {
    v.status = Status::kUnknown;
    v.justification = Justification::kOpenRegime;
    v.detail = "order bound holds; no criterion is known for class " + std::to_string(k) + " >= p = " +
               std::to_string(p);
  }
  if (!options.search || v.status == Status::kNotCapable) return v;
  GroupSpec spec;
  spec.prime = p;
  spec.nilpotency_class = k;
  spec.orders = orders;
  try {
    v.witness = witness_search(spec, k_orders, options.budget);
  } catch (const BudgetExceeded& e) {
    WitnessReport w;
    w.note = std::string("inconclusive: ") + e.what();
    v.witness = w;
  } catch (const std::invalid_argument& e) {
    WitnessReport w;
    w.note = std::string("inconclusive: ") + e.what();
    v.witness = w;
  }
  if (v.status == Status::kUnknown && v.witness->verified) {
    v.status = Status::kCapable;
    v.justification = Justification::kVerifiedWitness;
    v.detail = "verified finite witness of class " + std::to_string(k + 1);
  }
  return v;
}

namespace {

// Words are bound by name to generator positions of the ambient K.
using Binding = std::map<std::string, int>;

struct WitnessInput {
  std::uint64_t p = 2;
  int k_class = 1;
  std::vector<int> k_orders;  // ascending
  BasisVariant variant = BasisVariant::kStandard;
  Binding names;
  std::vector<WordAST> g_relators;  // must become central in K/M
  std::vector<WordAST> m_words;     // M = normal closure of these ...
  bool m_is_commutator = false;     // ... or M = [N, K] with N from g_relators
  std::vector<WordAST> formula;     // optional: predicted generators of Z(K/M) modulo M
};

struct WitnessOutcome {
  std::string method;
  int log_k = 0, log_m = 0, log_q = 0, log_center = 0;
  bool relators_central = false;
  bool center_matches = true;
};

int log_of(std::uint64_t p, std::uint64_t n) { return static_cast<int>(arith::floor_log(p, n)); }

bool fits(std::uint64_t p, int k, const std::vector<int>& orders, BasisVariant variant, std::uint64_t budget) {
  try {
    return HallBasis::make(p, k, orders, variant).order() <= budget;
  } catch (const std::overflow_error&) {
    return false;
  }
}

WitnessOutcome run_enumerated(const WitnessInput& in, std::uint64_t budget) {
  const auto k = NilpotentProduct::make(in.p, in.k_class, in.k_orders, in.variant, budget);
  std::map<std::string, ElementId> names;
  for (const auto& [n, idx] : in.names) names[n] = k->generators()[idx];
  std::vector<ElementId> rel;
  for (const auto& w : in.g_relators) rel.push_back(evaluate(*k, w, names));
  std::vector<ElementId> m_gens;
  if (in.m_is_commutator) {
    const Subgroup n = normal_closure(*k, rel);
    for (auto a : n.generators()) {
      for (auto s : k->generators()) m_gens.push_back(k->comm(a, s));
    }
  } else {
    for (const auto& w : in.m_words) m_gens.push_back(evaluate(*k, w, names));
  }
  const Subgroup m = normal_closure(*k, m_gens);
  const auto q = quotient(k, m);
  const Subgroup z = center(*q);
  WitnessOutcome out;
  out.method = "enumeration";
  out.log_k = log_of(in.p, k->order());
  out.log_m = log_of(in.p, m.order());
  out.log_q = log_of(in.p, q->order());
  out.log_center = log_of(in.p, z.order());
  out.relators_central = all_central(*q, project_all(*q, rel));
  if (!in.formula.empty()) {
    std::vector<ElementId> f;
    for (const auto& w : in.formula) f.push_back(q->project(evaluate(*k, w, names)));
    out.center_matches = subgroup_closure(*q, f) == z;
  }
  return out;
}

WitnessOutcome run_polycyclic(const WitnessInput& in) {
  const PcGroup k(std::make_shared<const HallBasis>(HallBasis::make(in.p, in.k_class, in.k_orders, in.variant)));
  const auto& col = k.collector();
  std::map<std::string, NormalForm> names;
  for (const auto& [n, idx] : in.names) names[n] = col.generator(idx);
  std::vector<NormalForm> rel;
  for (const auto& w : in.g_relators) rel.push_back(col.evaluate_word(w, names));
  std::vector<NormalForm> m_gens;
  if (in.m_is_commutator) {
    const PcSubgroup n = k.normal_closure(rel);
    for (const auto& a : n.elements()) {
      for (const auto& s : k.generators()) m_gens.push_back(col.comm(a, s));
    }
  } else {
    for (const auto& w : in.m_words) m_gens.push_back(col.evaluate_word(w, names));
  }
  const PcSubgroup m = k.normal_closure(m_gens);
  const PcSubgroup z = k.center_modulo(m);
  WitnessOutcome out;
  out.method = "polycyclic";
  out.log_k = k.length();
  out.log_m = m.rank();
  out.log_q = k.length() - m.rank();
  out.log_center = z.rank() - m.rank();
  out.relators_central = true;
  for (const auto& v : rel) {
    for (const auto& s : k.generators()) {
      if (!k.contains(m, col.comm(v, s))) out.relators_central = false;
    }
  }
  if (!in.formula.empty()) {
    std::vector<NormalForm> f = m.elements();
    for (const auto& w : in.formula) f.push_back(col.evaluate_word(w, names));
    out.center_matches = k.equal(k.closure(f), z);
  }
  return out;
}

WitnessOutcome run_witness(const WitnessInput& in, std::uint64_t budget) {
  if (fits(in.p, in.k_class, in.k_orders, in.variant, budget)) return run_enumerated(in, budget);
  if (in.variant != BasisVariant::kStandard) {
    throw BudgetExceeded("witness K (modified basis, enumeration only)", 0, budget);
  }
  return run_polycyclic(in);
}

// log_p |G| for a spec, by enumeration when it fits.
int target_log_order(const GroupSpec& spec, std::uint64_t budget) {
  std::vector<int> sorted;
  sort_by_order(spec.orders, sorted);
  if (fits(spec.prime, spec.nilpotency_class, sorted, spec.variant, budget)) {
    return log_of(spec.prime, build_group(spec, budget).group->order());
  }
  if (spec.variant != BasisVariant::kStandard) throw BudgetExceeded("target group", 0, budget);
  return build_pc_group(spec).log_order();
}

void fill(WitnessReport& rep, const WitnessOutcome& o, int log_target) {
  rep.method = o.method;
  rep.log_order_k = o.log_k;
  rep.log_order_m = o.log_m;
  rep.log_order_q = o.log_q;
  rep.log_order_center = o.log_center;
  rep.log_central_quotient = o.log_q - o.log_center;
  rep.log_target = log_target;
  rep.relators_central = o.relators_central;
  rep.center_matches_formula = o.center_matches;
  rep.verified = o.relators_central && o.center_matches && rep.log_central_quotient == log_target;
}

WordAST gen_power(const std::string& name, std::uint64_t e) {
  return WordAST::power(WordAST::gen(name), static_cast<std::int64_t>(e));
}

std::string xname(int i) { return "x" + std::to_string(i + 1); }

}  // namespace

std::string WitnessReport::order_text(int e) const {
  std::string s = std::to_string(prime) + "^" + std::to_string(e);
  try {
    s += " = " + std::to_string(ppow(prime, e));
  } catch (const std::overflow_error&) {
  }
  return s;
}

WitnessReport witness_search(const GroupSpec& g_spec, std::optional<std::vector<int>> k_orders,
                             std::uint64_t budget) {
  g_spec.validate();
  const std::uint64_t p = g_spec.prime;
  WitnessInput in;
  in.p = p;
  in.k_class = g_spec.nilpotency_class + 1;
  if (p >= static_cast<std::uint64_t>(in.k_class)) {
    in.variant = BasisVariant::kStandard;
  } else if (p == 2 && in.k_class == 3) {
    in.variant = BasisVariant::kK3P2;
  } else {
    throw std::invalid_argument("no normal-form basis for class " + std::to_string(in.k_class) + " at p = " +
                                std::to_string(p));
  }
  std::vector<int> alphas;
  const auto sorted_index = sort_by_order(g_spec.orders, alphas);
  WitnessReport rep;
  if (k_orders) {
    if (k_orders->size() != alphas.size() || !std::is_sorted(k_orders->begin(), k_orders->end())) {
      throw std::invalid_argument("witness K orders must be ascending, one per generator");
    }
    in.k_orders = *k_orders;
    rep.construction = "class-" + std::to_string(in.k_class) + " nilpotent product with the given orders";
  } else {
    const auto extra = static_cast<int>(arith::capability_slack(p, static_cast<std::uint64_t>(in.k_class))) + 1;
    for (int a : alphas) in.k_orders.push_back(a + extra);
    rep.construction = "class-" + std::to_string(in.k_class) + " nilpotent product, orders alpha_i + " +
                       std::to_string(extra);
  }
  for (std::size_t i = 0; i < sorted_index.size(); ++i) in.names[xname(static_cast<int>(i))] = sorted_index[i];
  for (std::size_t i = 0; i < g_spec.orders.size(); ++i) {
    in.g_relators.push_back(gen_power(xname(static_cast<int>(i)), ppow(p, g_spec.orders[i])));
  }
  in.g_relators.insert(in.g_relators.end(), g_spec.relators.begin(), g_spec.relators.end());
  if (g_spec.presentation11) {
    const auto extra = presentation11_relators(p, *g_spec.presentation11);
    in.g_relators.insert(in.g_relators.end(), extra.begin(), extra.end());
  }
  in.m_is_commutator = true;

  const int target = target_log_order(g_spec, budget);
  const auto outcome = run_witness(in, budget);
  rep.prime = p;
  rep.k_class = in.k_class;
  rep.k_orders = in.k_orders;
  rep.k_variant = in.variant;
  rep.m_description = "M = [N, K], N = normal closure of the " + std::to_string(in.g_relators.size()) +
                      " relators of G";
  fill(rep, outcome, target);
  rep.note = rep.verified ? "K/M has central quotient of order |G| and the relators are central"
                          : "inconclusive: this K does not realize G";
  return rep;
}

BuiltGroup build_presentation11(std::uint64_t p, const Presentation11& params, std::uint64_t budget) {
  validate_presentation11(p, params);
  GroupSpec spec;
  spec.prime = p;
  spec.nilpotency_class = 2;
  spec.orders = {params.alpha, params.beta};
  spec.presentation11 = params;
  return build_group(spec, budget);
}

Verdict capable_presentation11(std::uint64_t p, const Presentation11& q) {
  validate_presentation11(p, q);
  Verdict v;
  v.justification = Justification::kTwoGeneratorClassTwoCriterion;
  v.status = q.alpha == q.beta ? Status::kCapable : Status::kNotCapable;
  std::string family = q.sigma == q.gamma ? "coproduct type (sigma = gamma)"
                       : q.sigma == 0     ? "split metacyclic (sigma = 0)"
                                          : "third family (0 < sigma < gamma)";
  v.detail = family + ": capable iff alpha = beta (" + std::to_string(q.alpha) + " vs " + std::to_string(q.beta) + ")";
  return v;
}

WitnessReport witness_quotient_family(std::uint64_t p, const std::vector<int>& orders,
                                      const std::map<std::pair<int, int>, int>& betas, std::uint64_t budget) {
  arith::require_prime(p);
  if (p < 3) throw std::invalid_argument("witness_quotient_family: p must be odd");
  require_ascending(orders);
  const int r = static_cast<int>(orders.size());
  if (r < 2 || orders[r - 2] != orders[r - 1]) {
    throw std::invalid_argument("witness_quotient_family: need r >= 2 and alpha_{r-1} = alpha_r");
  }
  for (const auto& [key, _] : betas) {
    if (key.first <= key.second || key.second < 1 || key.first > r) {
      throw std::invalid_argument("witness_quotient_family: beta keys must be (j, i) with r >= j > i >= 1");
    }
  }
  auto beta_of = [&](int j, int i) {  // 0-based, j > i
    auto it = betas.find({j + 1, i + 1});
    const int b = it == betas.end() ? orders[i] : it->second;
    if (b < 1 || b > orders[i]) throw std::invalid_argument("witness_quotient_family: need 1 <= beta_ji <= alpha_i");
    return b;
  };
  WitnessInput in;
  in.p = p;
  in.k_class = 3;
  in.k_orders = orders;
  GroupSpec g_spec;
  g_spec.prime = p;
  g_spec.nilpotency_class = 2;
  g_spec.orders = orders;
  for (int i = 0; i < r; ++i) in.names[xname(i)] = i;
  for (int j = 0; j < r; ++j) {
    for (int i = 0; i < j; ++i) {
      const auto e = static_cast<std::int64_t>(ppow(p, beta_of(j, i)));
      const WordAST c = WordAST::bracket({WordAST::gen(xname(j)), WordAST::gen(xname(i))});
      for (int t = 0; t < r; ++t) in.m_words.push_back(WordAST::power(WordAST::bracket({c, WordAST::gen(xname(t))}), e));
      g_spec.relators.push_back(WordAST::power(c, e));
      in.g_relators.push_back(WordAST::power(c, e));
      in.formula.push_back(WordAST::power(c, e));
    }
  }
  // Predicted center: G_3, x_r^{p^{alpha_{r-1}}} and the [x_j,x_i]^{p^beta_ji}.
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b) {
      for (int c = 0; c < r; ++c) {
        in.formula.push_back(WordAST::bracket({WordAST::gen(xname(a)), WordAST::gen(xname(b)), WordAST::gen(xname(c))}));
      }
    }
  }
  in.formula.push_back(gen_power(xname(r - 1), ppow(p, orders[r - 2])));

  const int target = target_log_order(g_spec, budget);
  const auto outcome = run_witness(in, budget);
  WitnessReport rep;
  rep.construction = "class-3 nilpotent product H modulo M";
  rep.prime = p;
  rep.k_class = 3;
  rep.k_orders = orders;
  rep.m_description = "M = normal closure of [x_j,x_i,x_k]^{p^beta_ji}";
  fill(rep, outcome, target);
  rep.note = outcome.center_matches ? "center equals the predicted subgroup" : "center differs from the predicted subgroup";
  return rep;
}

WitnessReport witness_presentation11(std::uint64_t p, int alpha, int gamma, int sigma, std::uint64_t budget) {
  const Presentation11 params{alpha, alpha, gamma, sigma};
  validate_presentation11(p, params);
  if (sigma >= gamma) {
    throw std::invalid_argument("witness_presentation11: needs sigma < gamma (use witness_quotient_family)");
  }
  auto pw = [&](int e) { return std::to_string(ppow(p, e)); };
  WitnessInput in;
  in.p = p;
  in.k_class = 3;
  in.k_orders = {alpha, alpha};
  in.names = {{"x", 0}, {"y", 1}};
  // The successive quotients H -> K -> L -> M collapse to one normal closure.
  for (const auto& w : {"[y,x,x]^" + pw(gamma), "[y,x,y]^" + pw(gamma), "[y,x,x]^" + pw(sigma),
                        "[y,x]^" + pw(alpha + sigma - gamma) + " [y,x,y]^-" + pw(sigma)}) {
    in.m_words.push_back(parse_word(w));
  }
  for (const auto& w : {"x^" + pw(alpha), "y^" + pw(alpha), "[y,x]^" + pw(gamma),
                        "x^" + pw(alpha + sigma - gamma) + " [y,x]^" + pw(sigma)}) {
    in.g_relators.push_back(parse_word(w));
  }
  GroupSpec g_spec;
  g_spec.prime = p;
  g_spec.nilpotency_class = 2;
  g_spec.orders = {alpha, alpha};
  g_spec.presentation11 = params;

  const int target = target_log_order(g_spec, budget);
  const auto outcome = run_witness(in, budget);
  WitnessReport rep;
  rep.construction = "class-3 nilpotent product of two cyclic groups of order p^alpha, three successive quotients";
  rep.prime = p;
  rep.k_class = 3;
  rep.k_orders = {alpha, alpha};
  rep.m_description = "<[y,x,x]^{p^gamma},[y,x,y]^{p^gamma}>, then <[y,x,x]^{p^sigma}>, then "
                      "<[y,x]^{p^{alpha+sigma-gamma}} [y,x,y]^{-p^sigma}>";
  fill(rep, outcome, target);
  rep.note = rep.verified ? "central quotient has order |G| and the relators are central"
                          : "central quotient does not match G";
  return rep;
}

Verdict capable_extraspecial(std::uint64_t p, int n, ExtraspecialKind kind) {
  arith::require_prime(p);
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("extra-special groups have order p^n with n odd, n >= 3");
  const bool binary_kind = kind == ExtraspecialKind::kPlus || kind == ExtraspecialKind::kMinus;
  if ((p == 2) != binary_kind) {
    throw std::invalid_argument(p == 2 ? "for p = 2 the kind is plus or minus"
                                       : "for odd p the kind is exponent p or exponent p^2");
  }
  Verdict v;
  v.justification = Justification::kExtraspecialClassification;
  const bool capable = n == 3 && (kind == ExtraspecialKind::kPlus || kind == ExtraspecialKind::kExponentP);
  v.status = capable ? Status::kCapable : Status::kNotCapable;
  v.detail = "an extra-special p-group is capable only if dihedral of order 8 or of order p^3 and exponent p, p odd";
  return v;
}

BuiltGroup build_extraspecial_p5(std::uint64_t p, std::uint64_t budget) {
  arith::require_prime(p);
  if (p == 2) throw std::invalid_argument("build_extraspecial_p5: p must be odd");
  GroupSpec spec;
  spec.prime = p;
  spec.nilpotency_class = 2;
  spec.orders = {1, 1, 1, 1};
  for (const char* w : {"[x3,x1] [x4,x1]^-1", "[x3,x2] [x4,x1]^-1", "[x4,x2]", "[x4,x3]", "[x2,x1]"}) {
    spec.relators.push_back(parse_word(w));
  }
  return build_group(spec, budget);
}

}  // namespace nilcap
