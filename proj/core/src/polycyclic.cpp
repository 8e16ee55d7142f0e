#include "nilcap/polycyclic.hpp"

#include <stdexcept>

#include "nilcap/arith.hpp"

namespace nilcap {

namespace {

std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  for (std::int64_t x = 1; x < p; ++x) {
    if (a * x % p == 1) return x;
  }
  throw std::logic_error("inverse_mod: not invertible");
}

}  // namespace

std::uint64_t PcSubgroup::order() const { return arith::checked_pow(prime_, static_cast<std::uint64_t>(rank_)); }

std::vector<NormalForm> PcSubgroup::elements() const {
  std::vector<NormalForm> out;
  for (const auto& s : slots_) {
    if (s) out.push_back(*s);
  }
  return out;
}

PcGroup::PcGroup(std::shared_ptr<const HallBasis> basis) : collector_(basis), prime_(basis->prime()) {
  if (basis->variant() != BasisVariant::kStandard) {
    throw std::invalid_argument("PcGroup: standard basis only");
  }
  for (int t = 0; t < basis->size(); ++t) {
    if (t > 0 && basis->weight(t) < basis->weight(t - 1)) {
      throw std::logic_error("PcGroup: basis is not ordered by weight");
    }
    offset_.push_back(length_);
    std::uint64_t m = basis->modulus(t);
    int a = 0;
    while (m > 1) {
      if (m % prime_ != 0) throw std::logic_error("PcGroup: modulus is not a power of p");
      m /= prime_;
      entry_of_.push_back(t);
      power_of_.push_back(a);
      ++a;
      ++length_;
    }
  }
}

std::vector<NormalForm> PcGroup::generators() const {
  std::vector<NormalForm> out;
  for (int g = 0; g < collector_.basis().rank(); ++g) out.push_back(collector_.generator(g));
  return out;
}

int PcGroup::depth(const NormalForm& g) const {
  for (std::size_t t = 0; t < g.exps.size(); ++t) {
    std::int64_t e = g.exps[t];
    if (e == 0) continue;
    int v = 0;
    while (e % static_cast<std::int64_t>(prime_) == 0) {
      e /= static_cast<std::int64_t>(prime_);
      ++v;
    }
    return offset_[t] + v;
  }
  return length_;
}

std::int64_t PcGroup::leading_digit(const NormalForm& g) const {
  const auto p = static_cast<std::int64_t>(prime_);
  for (std::int64_t e : g.exps) {
    if (e == 0) continue;
    while (e % p == 0) e /= p;
    return ((e % p) + p) % p;
  }
  return 0;
}

NormalForm PcGroup::pcgs_element(int pos) const {
  std::vector<std::int64_t> e(collector_.size(), 0);
  e[entry_of_[pos]] = static_cast<std::int64_t>(arith::checked_pow(prime_, power_of_[pos]));
  return collector_.element(std::move(e));
}

NormalForm PcGroup::normalize(const NormalForm& g) const {
  const auto l = leading_digit(g);
  const auto inv = inverse_mod(l, static_cast<std::int64_t>(prime_));
  return inv == 1 ? g : collector_.inv_pow(g, inv);
}

PcSubgroup PcGroup::trivial() const {
  PcSubgroup u;
  u.prime_ = prime_;
  u.slots_.assign(length_, std::nullopt);
  return u;
}

PcSubgroup PcGroup::whole() const {
  PcSubgroup u = trivial();
  for (int d = 0; d < length_; ++d) u.slots_[d] = pcgs_element(d);
  u.rank_ = length_;
  return u;
}

NormalForm PcGroup::reduce(const PcSubgroup& m, NormalForm g) const {
  while (!g.is_identity()) {
    const int d = depth(g);
    if (!m.has_depth(d)) break;
    g = collector_.mul(g, collector_.inv_pow(m.at_depth(d), -leading_digit(g)));
  }
  return g;
}

std::optional<NormalForm> PcGroup::insert(PcSubgroup& u, NormalForm g) const {
  g = reduce(u, std::move(g));
  if (g.is_identity()) return std::nullopt;
  g = normalize(g);
  u.slots_[depth(g)] = g;
  ++u.rank_;
  return g;
}

void PcGroup::extend(PcSubgroup& u, const std::vector<NormalForm>& gens, bool normal) const {
  const auto conjugators = generators();
  std::vector<NormalForm> queue(gens.rbegin(), gens.rend());
  while (!queue.empty()) {
    NormalForm g = std::move(queue.back());
    queue.pop_back();
    const auto h = insert(u, std::move(g));
    if (!h) continue;
    queue.push_back(collector_.inv_pow(*h, static_cast<std::int64_t>(prime_)));
    for (const auto& s : u.slots_) {
      if (s) queue.push_back(collector_.comm(*h, *s));
    }
    if (normal) {
      for (const auto& x : conjugators) queue.push_back(collector_.comm(*h, x));
    }
  }
}

PcSubgroup PcGroup::closure(const std::vector<NormalForm>& gens) const {
  PcSubgroup u = trivial();
  extend(u, gens, false);
  return u;
}

PcSubgroup PcGroup::normal_closure(const std::vector<NormalForm>& gens) const {
  PcSubgroup u = trivial();
  extend(u, gens, true);
  return u;
}

bool PcGroup::contains(const PcSubgroup& u, const NormalForm& g) const { return reduce(u, g).is_identity(); }

bool PcGroup::is_subset(const PcSubgroup& u, const PcSubgroup& v) const {
  for (const auto& s : u.slots_) {
    if (s && !contains(v, *s)) return false;
  }
  return true;
}

bool PcGroup::equal(const PcSubgroup& u, const PcSubgroup& v) const {
  return u.rank_ == v.rank_ && is_subset(u, v);
}

PcSubgroup PcGroup::centralizer_modulo(const std::vector<NormalForm>& s_list, const PcSubgroup& m) const {
  const auto p = static_cast<std::int64_t>(prime_);
  const std::size_t ns = s_list.size();
  PcSubgroup c = whole();
  // Layer by layer: on the current c, h -> [h, s] lands in G_i M and is a
  // homomorphism onto the layer G_i M / G_{i+1} M, which has order p.
  for (int i = 0; i < length_; ++i) {
    if (m.has_depth(i)) continue;
    const auto elems = c.elements();
    struct Row {
      std::vector<std::int64_t> image;
      std::size_t pivot;
      NormalForm elem;
    };
    std::vector<Row> rows;
    PcSubgroup next = trivial();
    for (auto it = elems.rbegin(); it != elems.rend(); ++it) {
      std::vector<std::int64_t> v(ns, 0);
      for (std::size_t s = 0; s < ns; ++s) {
        const NormalForm r = reduce(m, collector_.comm(*it, s_list[s]));
        const int d = depth(r);
        if (d < i) throw std::logic_error("centralizer_modulo: commutator above the current layer");
        if (d == i) v[s] = leading_digit(r);
      }
      NormalForm w = *it;
      for (const auto& row : rows) {
        const std::int64_t k = v[row.pivot];
        if (k == 0) continue;
        for (std::size_t s = 0; s < ns; ++s) v[s] = ((v[s] - k * row.image[s]) % p + p) % p;
        w = collector_.mul(w, collector_.inv_pow(row.elem, -k));
      }
      std::size_t piv = 0;
      while (piv < ns && v[piv] == 0) ++piv;
      if (piv == ns) {
        next.slots_[depth(w)] = w;
        ++next.rank_;
        continue;
      }
      const auto inv = inverse_mod(v[piv], p);
      for (auto& x : v) x = x * inv % p;
      rows.push_back({std::move(v), piv, collector_.inv_pow(w, inv)});
    }
    c = std::move(next);
  }
  return c;
}

std::map<std::string, NormalForm> PcPresentedGroup::assignment() const {
  std::map<std::string, NormalForm> out;
  for (std::size_t i = 0; i < sorted_index.size(); ++i) {
    out["x" + std::to_string(i + 1)] = pc->collector().generator(sorted_index[i]);
  }
  return out;
}

PcPresentedGroup build_pc_group(const GroupSpec& spec) {
  spec.validate();
  PcPresentedGroup out;
  out.spec = spec;
  std::vector<int> sorted_orders;
  out.sorted_index = sort_by_order(spec.orders, sorted_orders);
  out.pc = std::make_shared<const PcGroup>(
      std::make_shared<const HallBasis>(HallBasis::make(spec.prime, spec.nilpotency_class, sorted_orders, spec.variant)));
  auto relators = spec.relators;
  if (spec.presentation11) {
    const auto extra = presentation11_relators(spec.prime, *spec.presentation11);
    relators.insert(relators.end(), extra.begin(), extra.end());
  }
  const auto names = out.assignment();
  std::vector<NormalForm> values;
  for (const auto& w : relators) values.push_back(out.pc->collector().evaluate_word(w, names));
  out.relators = out.pc->normal_closure(values);
  return out;
}

PcSubgroup PcGroup::center_modulo(const PcSubgroup& m) const { return centralizer_modulo(generators(), m); }

}  // namespace nilcap
