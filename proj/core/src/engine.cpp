#include "nilcap/engine.hpp"

#include <algorithm>
#include <numeric>

#include "nilcap/arith.hpp"

namespace nilcap {

BudgetExceeded::BudgetExceeded(const std::string& what, std::uint64_t needed, std::uint64_t budget)
    : std::runtime_error(what + ": needs " + (needed ? std::to_string(needed) : std::string(">2^64")) +
                         " elements, budget is " + std::to_string(budget)),
      needed_(needed),
      budget_(budget) {}

ElementId GroupView::pow(ElementId a, std::int64_t n) const {
  ElementId base = n < 0 ? inv(a) : a;
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  ElementId out = identity();
  while (e) {
    if (e & 1) out = mul(out, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return out;
}

ElementId GroupView::comm(ElementId a, ElementId b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

ElementId GroupView::element_order(ElementId a) const {
  ElementId n = 1;
  for (ElementId x = a; x != identity(); x = mul(x, a)) ++n;
  return n;
}

std::shared_ptr<const NilpotentProduct> NilpotentProduct::make(std::uint64_t p, int k, std::vector<int> orders,
                                                               BasisVariant variant, std::uint64_t budget) {
  auto basis = std::make_shared<const HallBasis>(HallBasis::make(p, k, std::move(orders), variant));
  std::uint64_t size = 0;
  try {
    size = basis->order();
  } catch (const std::overflow_error&) {
    throw BudgetExceeded("nilpotent product", 0, budget);
  }
  if (size > budget || size > std::numeric_limits<ElementId>::max()) {
    throw BudgetExceeded("nilpotent product", size, budget);
  }
  return std::make_shared<const NilpotentProduct>(std::move(basis));
}

NilpotentProduct::NilpotentProduct(std::shared_ptr<const HallBasis> basis) : collector_(std::move(basis)) {
  const auto& b = collector_.basis();
  order_ = b.order();
  if (order_ > std::numeric_limits<ElementId>::max()) {
    throw BudgetExceeded("nilpotent product ids", order_, std::numeric_limits<ElementId>::max());
  }
  std::uint64_t stride = 1;
  for (int i = 0; i < b.size(); ++i) {
    strides_.push_back(stride);
    stride *= b.modulus(i);
  }
  for (int g = 0; g < b.rank(); ++g) {
    generators_.push_back(encode(collector_.generator(g)));
    names_.push_back("x" + std::to_string(g + 1));
  }
}

ElementId NilpotentProduct::encode(const NormalForm& nf) const {
  std::uint64_t id = 0;
  for (std::size_t i = 0; i < nf.exps.size(); ++i) id += static_cast<std::uint64_t>(nf.exps[i]) * strides_[i];
  return static_cast<ElementId>(id);
}

NormalForm NilpotentProduct::decode(ElementId id) const {
  const auto& b = collector_.basis();
  NormalForm nf{collector_.basis_ptr(), std::vector<std::int64_t>(b.size())};
  std::uint64_t rest = id;
  for (int i = 0; i < b.size(); ++i) {
    nf.exps[i] = static_cast<std::int64_t>(rest % b.modulus(i));
    rest /= b.modulus(i);
  }
  return nf;
}

ElementId NilpotentProduct::mul(ElementId a, ElementId b) const {
  return encode(collector_.mul(decode(a), decode(b)));
}

ElementId NilpotentProduct::inv(ElementId a) const { return encode(collector_.inverse(decode(a))); }

std::string NilpotentProduct::format(ElementId a) const { return format_normal_form(decode(a)); }

Subgroup::Subgroup(const GroupView* parent, std::vector<ElementId> members, std::vector<ElementId> generators)
    : parent_(parent), members_(std::move(members)), generators_(std::move(generators)) {
  std::sort(members_.begin(), members_.end());
  bitmap_.assign(parent_->order(), false);
  for (auto m : members_) bitmap_[m] = true;
}

ClosureBuilder::ClosureBuilder(const GroupView& g) : g_(g), member_(g.order(), 0) {
  elements_.push_back(GroupView::identity());
  member_[GroupView::identity()] = 1;
}

bool ClosureBuilder::add(ElementId x) {
  if (member_[x]) return false;
  generators_.push_back(x);
  const std::size_t prev = elements_.size();
  auto add_coset = [&](ElementId rep) {
    for (std::size_t i = 0; i < prev; ++i) {
      const ElementId y = g_.mul(elements_[i], rep);
      member_[y] = 1;
      elements_.push_back(y);
    }
  };
  add_coset(x);
  for (std::size_t rep_pos = prev; rep_pos < elements_.size(); rep_pos += prev) {
    const ElementId rep = elements_[rep_pos];
    for (const ElementId s : generators_) {
      const ElementId y = g_.mul(rep, s);
      if (!member_[y]) add_coset(y);
    }
  }
  return true;
}

Subgroup ClosureBuilder::finish() const { return Subgroup(&g_, elements_, generators_); }

Subgroup subgroup_closure(const GroupView& g, const std::vector<ElementId>& gens) {
  ClosureBuilder b(g);
  for (auto x : gens) b.add(x);
  return b.finish();
}

Subgroup normal_closure(const GroupView& g, const std::vector<ElementId>& gens) {
  ClosureBuilder b(g);
  for (auto x : gens) b.add(x);
  for (bool changed = true; changed;) {
    changed = false;
    const auto current = b.generators();
    for (auto h : current) {
      for (auto s : g.generators()) {
        if (b.add(g.conj(h, s))) changed = true;
      }
    }
  }
  return b.finish();
}

Subgroup whole_group(const GroupView& g) {
  auto s = subgroup_closure(g, g.generators());
  if (s.order() != g.order()) throw std::logic_error("generators do not generate the group");
  return s;
}

bool is_normal(const GroupView& g, const Subgroup& n) {
  for (auto h : n.generators()) {
    for (auto s : g.generators()) {
      if (!n.contains(g.conj(h, s))) return false;
    }
  }
  return true;
}

std::vector<Subgroup> lower_central_series(const GroupView& g) {
  std::vector<Subgroup> series;
  series.push_back(whole_group(g));
  while (series.back().order() > 1) {
    std::vector<ElementId> comms;
    for (auto a : series.back().generators()) {
      for (auto s : g.generators()) comms.push_back(g.comm(a, s));
    }
    auto next = normal_closure(g, comms);
    if (next.order() == series.back().order()) throw std::logic_error("group is not nilpotent");
    series.push_back(std::move(next));
  }
  return series;
}

int weight_W(const std::vector<Subgroup>& series, ElementId a) {
  if (a == GroupView::identity()) return kInfiniteWeight;
  int w = 0;
  for (std::size_t n = 0; n < series.size(); ++n) {
    if (!series[n].contains(a)) break;
    w = static_cast<int>(n) + 1;
  }
  return w;
}

Subgroup center(const GroupView& g) {
  const auto& gens = g.generators();
  std::vector<ElementId> members;
  for (std::uint64_t x = 0; x < g.order(); ++x) {
    const auto id = static_cast<ElementId>(x);
    bool central = true;
    for (auto s : gens) {
      if (g.mul(id, s) != g.mul(s, id)) {
        central = false;
        break;
      }
    }
    if (central) members.push_back(id);
  }
  ClosureBuilder b(g);
  for (auto m : members) b.add(m);
  if (b.size() != members.size()) throw std::logic_error("center is not closed");
  return Subgroup(&g, std::move(members), b.generators());
}

QuotientGroup::QuotientGroup(std::shared_ptr<const GroupView> parent, const Subgroup& normal)
    : parent_(std::move(parent)) {
  constexpr ElementId kUnset = std::numeric_limits<ElementId>::max();
  proj_.assign(parent_->order(), kUnset);
  for (std::uint64_t x = 0; x < parent_->order(); ++x) {
    if (proj_[x] != kUnset) continue;
    const auto c = static_cast<ElementId>(reps_.size());
    reps_.push_back(static_cast<ElementId>(x));
    for (auto n : normal.members()) proj_[parent_->mul(static_cast<ElementId>(x), n)] = c;
  }
  for (auto s : parent_->generators()) generators_.push_back(proj_[s]);
}

ElementId QuotientGroup::mul(ElementId a, ElementId b) const { return proj_[parent_->mul(reps_[a], reps_[b])]; }

ElementId QuotientGroup::inv(ElementId a) const { return proj_[parent_->inv(reps_[a])]; }

std::string QuotientGroup::format(ElementId a) const { return parent_->format(reps_[a]); }

std::shared_ptr<const QuotientGroup> quotient(std::shared_ptr<const GroupView> g, const Subgroup& n) {
  if (&n.parent() != g.get()) throw std::invalid_argument("quotient: subgroup of a different group");
  if (!is_normal(*g, n)) throw std::invalid_argument("quotient: subgroup is not normal");
  return std::make_shared<const QuotientGroup>(std::move(g), n);
}

ElementId evaluate(const GroupView& g, const WordAST& w, const std::map<std::string, ElementId>& assignment) {
  switch (w.kind) {
    case WordAST::Kind::kIdentity:
      return GroupView::identity();
    case WordAST::Kind::kGen: {
      auto it = assignment.find(w.name);
      if (it == assignment.end()) throw std::invalid_argument("unbound name '" + w.name + "'");
      return it->second;
    }
    case WordAST::Kind::kPower:
      return g.pow(evaluate(g, w.children.at(0), assignment), w.exponent);
    case WordAST::Kind::kProduct: {
      ElementId out = GroupView::identity();
      for (const auto& c : w.children) out = g.mul(out, evaluate(g, c, assignment));
      return out;
    }
    case WordAST::Kind::kBracket: {
      if (w.children.size() < 2) throw std::invalid_argument("bracket needs at least two entries");
      ElementId out = evaluate(g, w.children[0], assignment);
      for (std::size_t i = 1; i < w.children.size(); ++i) out = g.comm(out, evaluate(g, w.children[i], assignment));
      return out;
    }
  }
  return GroupView::identity();
}

bool check_words_central(const GroupView& q, const std::vector<WordAST>& words,
                         const std::map<std::string, ElementId>& assignment) {
  if (words.empty()) return true;
  std::vector<ElementId> values;
  for (const auto& w : words) values.push_back(evaluate(q, w, assignment));
  for (auto v : values) {
    for (auto s : q.generators()) {
      if (q.mul(v, s) != q.mul(s, v)) return false;
    }
  }
  return true;
}

std::map<std::string, ElementId> BuiltGroup::assignment() const {
  std::map<std::string, ElementId> out;
  const auto* q = dynamic_cast<const QuotientGroup*>(group.get());
  for (std::size_t i = 0; i < sorted_index.size(); ++i) {
    const ElementId id = product->generators()[sorted_index[i]];
    out["x" + std::to_string(i + 1)] = q ? q->project(id) : id;
  }
  return out;
}

std::vector<WordAST> presentation11_relators(std::uint64_t p, const Presentation11& q) {
  validate_presentation11(p, q);
  auto ppow = [&](int e) { return static_cast<std::int64_t>(arith::checked_pow(p, static_cast<std::uint64_t>(e))); };
  const auto ba = WordAST::bracket({WordAST::gen("x2"), WordAST::gen("x1")});
  return {WordAST::power(ba, ppow(q.gamma)),
          WordAST::product({WordAST::power(WordAST::gen("x1"), ppow(q.alpha + q.sigma - q.gamma)),
                            WordAST::power(ba, ppow(q.sigma))})};
}

std::vector<int> sort_by_order(const std::vector<int>& orders, std::vector<int>& sorted_orders) {
  const int r = static_cast<int>(orders.size());
  std::vector<int> by_order(r);
  std::iota(by_order.begin(), by_order.end(), 0);
  std::stable_sort(by_order.begin(), by_order.end(), [&](int a, int b) { return orders[a] < orders[b]; });
  std::vector<int> sorted_index(r, 0);
  sorted_orders.clear();
  for (int pos = 0; pos < r; ++pos) {
    sorted_index[by_order[pos]] = pos;
    sorted_orders.push_back(orders[by_order[pos]]);
  }
  return sorted_index;
}

BuiltGroup build_group(const GroupSpec& spec, std::uint64_t budget) {
  spec.validate();
  BuiltGroup out;
  out.spec = spec;
  std::vector<int> sorted_orders;
  out.sorted_index = sort_by_order(spec.orders, sorted_orders);
  out.product = NilpotentProduct::make(spec.prime, spec.nilpotency_class, sorted_orders, spec.variant, budget);
  out.group = out.product;
  auto relators = spec.relators;
  if (spec.presentation11) {
    const auto extra = presentation11_relators(spec.prime, *spec.presentation11);
    relators.insert(relators.end(), extra.begin(), extra.end());
  }
  if (!relators.empty()) {
    const auto names = out.assignment();
    std::vector<ElementId> values;
    for (const auto& w : relators) values.push_back(evaluate(*out.product, w, names));
    out.group = quotient(out.product, normal_closure(*out.product, values));
  }
  return out;
}

}  // namespace nilcap
