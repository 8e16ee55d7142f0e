#include "nilcap/collector.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace nilcap {

namespace {

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("exponent overflow during collection");
  return out;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Representative of a modulo m in (-m/2, m/2].
std::int64_t symmetric_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = floor_mod(a, m);
  if (2 * r > m) r -= m;
  return r;
}

// Appends w^n as letters.
void append_power(Letters& out, const Letters& w, std::int64_t n) {
  if (n > 0) {
    for (std::int64_t r = 0; r < n; ++r) out.insert(out.end(), w.begin(), w.end());
    return;
  }
  for (std::int64_t r = 0; r < -n; ++r) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->atom, -it->exponent});
  }
}

}  // namespace

std::shared_ptr<const FreeNilpotentGroup> FreeNilpotentGroup::get(int rank, int nilpotency_class) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const FreeNilpotentGroup>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{rank, nilpotency_class}];
  if (!slot) slot = std::make_shared<const FreeNilpotentGroup>(rank, nilpotency_class);
  return slot;
}

FreeNilpotentGroup::FreeNilpotentGroup(int rank, int nilpotency_class)
    : rank_(rank), class_(nilpotency_class), magnus_(rank, nilpotency_class) {
  const auto& entries = magnus_.entries();
  const int n = static_cast<int>(entries.size());
  for (const auto& c : entries) weights_.push_back(c.weight);
  tail_end_.resize(n);
  for (int i = 0; i < n; ++i) {
    int j = i + 1;
    while (j < n && weights_[i] + weights_[j] <= class_) ++j;
    tail_end_[i] = j;
  }
  conj_pos_.resize(static_cast<std::size_t>(n) * n);
  conj_neg_.resize(static_cast<std::size_t>(n) * n);
  const auto& alg = magnus_.algebra();
  for (int i = 0; i < n; ++i) {
    const auto& ai = magnus_.series_of(i);
    const auto ai_inv = alg.inverse(ai);
    for (int j = i + 1; j < tail_end_[i]; ++j) {
      const auto& aj = magnus_.series_of(j);
      for (int s : {1, -1}) {
        const auto series = s > 0 ? alg.mul(alg.mul(ai_inv, aj), ai) : alg.mul(alg.mul(ai, aj), ai_inv);
        const auto coords = magnus_.peel(series);
        Letters letters;
        for (int t = 0; t < n; ++t) {
          if (coords[t] == 0) continue;
          if (t < j || (t == j && coords[t] != 1)) {
            throw std::logic_error("conjugate of a basic commutator has an unexpected leading part");
          }
          letters.push_back({t, coords[t]});
        }
        (s > 0 ? conj_pos_ : conj_neg_)[static_cast<std::size_t>(j) * n + i] = std::move(letters);
      }
    }
  }
}

const Letters& FreeNilpotentGroup::conjugate(int j, int i, int s) const {
  const std::size_t idx = static_cast<std::size_t>(j) * size() + i;
  return s > 0 ? conj_pos_[idx] : conj_neg_[idx];
}

Collector::Collector(std::shared_ptr<const HallBasis> basis)
    : basis_(std::move(basis)), free_(FreeNilpotentGroup::get(basis_->rank(), basis_->nilpotency_class())) {
  for (auto m : basis_->moduli()) moduli_.push_back(static_cast<std::int64_t>(m));
  if (basis_->variant() == BasisVariant::kK3P2) {
    const auto& std_entries = basis_->standard_entries();
    auto find = [&](int a, int b) {
      for (int t = 0; t < static_cast<int>(std_entries.size()); ++t) {
        const auto& c = std_entries[t];
        if (c.kind == BasicCommutator::Kind::kBracket && c.left == a && c.right == b) return t;
      }
      throw std::logic_error("missing basic commutator in class-3 basis");
    };
    for (int j = 0; j < basis_->rank(); ++j) {
      for (int i = 0; i < j; ++i) {
        const int br = find(j, i);
        squares_.push_back({br, find(br, i), find(br, j)});
      }
    }
  }
}

void Collector::check_same(const NormalForm& a) const {
  if (a.basis != basis_ && (!a.basis || a.basis->entries().size() != basis_->entries().size() ||
                            a.basis->moduli() != basis_->moduli())) {
    throw std::invalid_argument("normal form belongs to a different basis");
  }
}

NormalForm Collector::identity() const { return {basis_, std::vector<std::int64_t>(size(), 0)}; }

NormalForm Collector::generator(int g) const {
  auto nf = identity();
  nf.exps.at(basis_->generator_index(g)) = 1;
  for (std::size_t i = 0; i < nf.exps.size(); ++i) nf.exps[i] = floor_mod(nf.exps[i], basis_->modulus(i));
  return nf;
}

NormalForm Collector::element(std::vector<std::int64_t> exps) const {
  if (static_cast<int>(exps.size()) != size()) throw std::invalid_argument("element: wrong vector length");
  for (std::size_t i = 0; i < exps.size(); ++i) {
    exps[i] = floor_mod(exps[i], static_cast<std::int64_t>(basis_->modulus(i)));
  }
  return {basis_, std::move(exps)};
}

std::vector<std::int64_t> Collector::to_free(const NormalForm& nf) const {
  check_same(nf);
  auto f = nf.exps;
  for (const auto& sq : squares_) {
    f[sq.bracket] = add_checked(f[sq.bracket], 2 * (nf.exps[sq.right_entry] + nf.exps[sq.left_entry]));
  }
  return f;
}

NormalForm Collector::from_free(std::vector<std::int64_t> f) const {
  for (const auto& sq : squares_) {
    f[sq.bracket] -= 2 * (f[sq.right_entry] + f[sq.left_entry]);
  }
  return element(std::move(f));
}

Letters Collector::free_letters(int atom, std::int64_t exponent) const {
  if (atom < 0 || atom >= size()) {
    throw std::invalid_argument("atom " + std::to_string(atom) + " is not in the basis");
  }
  if (exponent == 0) return {};
  const auto kind = basis_->entry(atom).kind;
  if (kind == BasicCommutator::Kind::kSquareLeft || kind == BasicCommutator::Kind::kSquareRight) {
    // [x_j,x_i^2] = [x_j,x_i]^2 [x_j,x_i,x_i] and [x_j^2,x_i] = [x_j,x_i]^2 [x_j,x_i,x_j];
    // both factors lie in the abelian group G_2 of class 3.
    for (const auto& sq : squares_) {
      if (sq.right_entry == atom || sq.left_entry == atom) {
        return {{sq.bracket, 2 * exponent}, {atom, exponent}};
      }
    }
  }
  return {{atom, exponent}};
}

template <bool Reduce>
void Collector::collect_into(std::vector<std::int64_t>& v, const Letters& letters) const {
  const auto& fg = *free_;
  const int n = fg.size();
  Letters stack(letters.rbegin(), letters.rend());
  Letters tail;
  while (!stack.empty()) {
    const Letter cur = stack.back();
    stack.pop_back();
    if (cur.exponent == 0) continue;
    const int g = cur.atom;
    const int end = fg.tail_end(g);
    bool blocked = false;
    for (int j = g + 1; j < end; ++j) {
      if (v[j] != 0) {
        blocked = true;
        break;
      }
    }
    if (!blocked) {
      v[g] = add_checked(v[g], cur.exponent);
      if constexpr (Reduce) v[g] = symmetric_mod(v[g], moduli_[g]);
      continue;
    }
    const int s = cur.exponent > 0 ? 1 : -1;
    if (cur.exponent != s) stack.push_back({g, cur.exponent - s});
    // v = u a_g^{v_g} T, so v a_g^s = u a_g^{v_g + s} (a_g^{-s} T a_g^s).
    tail.clear();
    for (int j = g + 1; j < n; ++j) {
      if (v[j] == 0) continue;
      if (j >= end) {
        tail.push_back({j, v[j]});
      } else {
        append_power(tail, fg.conjugate(j, g, s), v[j]);
      }
      v[j] = 0;
    }
    v[g] = add_checked(v[g], s);
    if constexpr (Reduce) v[g] = symmetric_mod(v[g], moduli_[g]);
    stack.insert(stack.end(), tail.rbegin(), tail.rend());
  }
}

void Collector::multiply_into(std::vector<std::int64_t>& v, const Letters& letters) const {
  collect_into<false>(v, letters);
}

void Collector::multiply_into_reduced(std::vector<std::int64_t>& v, const Letters& letters) const {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = symmetric_mod(v[i], moduli_[i]);
  collect_into<true>(v, letters);
}

void Collector::product_into(std::vector<std::int64_t>& v, const Letters& letters) const {
  if (squares_.empty()) {
    Letters reduced = letters;
    for (auto& l : reduced) l.exponent = symmetric_mod(l.exponent, moduli_[l.atom]);
    multiply_into_reduced(v, reduced);
  } else {
    multiply_into(v, letters);
  }
}

Letters Collector::rewrite(Letters w, Strategy strategy) const {
  const auto& fg = *free_;
  for (;;) {
    Letters merged;
    merged.reserve(w.size());
    for (const auto& l : w) {
      if (l.exponent == 0) continue;
      if (!merged.empty() && merged.back().atom == l.atom) {
        merged.back().exponent = add_checked(merged.back().exponent, l.exponent);
        if (merged.back().exponent == 0) merged.pop_back();
      } else {
        merged.push_back(l);
      }
    }
    w = std::move(merged);
    std::ptrdiff_t pick = -1;
    for (std::size_t p = 0; p + 1 < w.size(); ++p) {
      if (w[p].atom <= w[p + 1].atom) continue;
      if (strategy == Strategy::kLeftmostFirst) {
        pick = static_cast<std::ptrdiff_t>(p);
        break;
      }
      if (pick < 0 || w[p + 1].atom <= w[pick + 1].atom) pick = static_cast<std::ptrdiff_t>(p);
    }
    if (pick < 0) return w;
    const Letter y = w[pick];
    const Letter x = w[pick + 1];
    Letters repl;
    if (y.atom >= fg.tail_end(x.atom)) {
      repl = {x, y};
    } else {
      // y^a x^b = x^s (x^{-s} y x^s)^a x^{b-s}
      const int s = x.exponent > 0 ? 1 : -1;
      repl.push_back({x.atom, s});
      append_power(repl, fg.conjugate(y.atom, x.atom, s), y.exponent);
      if (x.exponent != s) repl.push_back({x.atom, x.exponent - s});
    }
    Letters next(w.begin(), w.begin() + pick);
    next.insert(next.end(), repl.begin(), repl.end());
    next.insert(next.end(), w.begin() + pick + 2, w.end());
    w = std::move(next);
  }
}

NormalForm Collector::collect(const Word& w, Strategy strategy) const {
  Letters letters;
  for (const auto& l : w.letters) {
    auto part = free_letters(l.atom, l.exponent);
    letters.insert(letters.end(), part.begin(), part.end());
  }
  std::vector<std::int64_t> v(size(), 0);
  if (strategy == Strategy::kFromLeft) {
    multiply_into(v, letters);
  } else {
    for (const auto& l : rewrite(std::move(letters), strategy)) v[l.atom] = add_checked(v[l.atom], l.exponent);
  }
  return from_free(std::move(v));
}

NormalForm Collector::mul(const NormalForm& a, const NormalForm& b) const {
  auto v = to_free(a);
  const auto fb = to_free(b);
  Letters letters;
  for (int i = 0; i < size(); ++i) {
    if (fb[i] != 0) letters.push_back({i, fb[i]});
  }
  product_into(v, letters);
  return from_free(std::move(v));
}

NormalForm Collector::inv_pow(const NormalForm& a, std::int64_t n) const {
  check_same(a);
  NormalForm base = a;
  if (n < 0) {
    const auto f = to_free(a);
    Letters letters;
    for (int i = size() - 1; i >= 0; --i) {
      if (f[i] != 0) letters.push_back({i, -f[i]});
    }
    std::vector<std::int64_t> v(size(), 0);
    product_into(v, letters);
    base = from_free(std::move(v));
    if (n == -1) return base;
  }
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  NormalForm out = identity();
  while (e) {
    if (e & 1) out = mul(out, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return out;
}

NormalForm Collector::comm(const NormalForm& a, const NormalForm& b) const {
  return mul(mul(inverse(a), inverse(b)), mul(a, b));
}

Word Collector::to_word(const NormalForm& nf) const {
  check_same(nf);
  Word w;
  for (int i = 0; i < size(); ++i) {
    if (nf.exps[i] != 0) w.letters.push_back({i, nf.exps[i]});
  }
  return w;
}

std::map<std::string, NormalForm> Collector::default_assignment() const {
  std::map<std::string, NormalForm> out;
  for (int g = 0; g < basis_->rank(); ++g) out.emplace("x" + std::to_string(g + 1), generator(g));
  return out;
}

NormalForm Collector::evaluate_word(const WordAST& ast, const std::map<std::string, NormalForm>& assignment) const {
  switch (ast.kind) {
    case WordAST::Kind::kIdentity:
      return identity();
    case WordAST::Kind::kGen: {
      auto it = assignment.find(ast.name);
      if (it == assignment.end()) throw std::invalid_argument("unbound name '" + ast.name + "'");
      check_same(it->second);
      return it->second;
    }
    case WordAST::Kind::kPower:
      return inv_pow(evaluate_word(ast.children.at(0), assignment), ast.exponent);
    case WordAST::Kind::kProduct: {
      NormalForm out = identity();
      for (const auto& c : ast.children) out = mul(out, evaluate_word(c, assignment));
      return out;
    }
    case WordAST::Kind::kBracket: {
      if (ast.children.size() < 2) throw std::invalid_argument("bracket needs at least two entries");
      NormalForm out = evaluate_word(ast.children[0], assignment);
      for (std::size_t i = 1; i < ast.children.size(); ++i) {
        out = comm(out, evaluate_word(ast.children[i], assignment));
      }
      return out;
    }
  }
  return identity();
}

namespace {

// Collector for the power-conjugate presentation: every exponent is kept in
// [0, m) using a_i^{m_i} = e, and only the relations a_j^{a_i} are used.
class PcCollector {
 public:
  PcCollector(const FreeNilpotentGroup& fg, const std::vector<std::uint64_t>& moduli)
      : fg_(fg), n_(fg.size()) {
    for (auto m : moduli) moduli_.push_back(static_cast<std::int64_t>(m));
    conj_.resize(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < fg_.tail_end(i); ++j) {
        Letters reduced;
        for (const auto& l : fg_.conjugate(j, i, 1)) {
          const std::int64_t e = floor_mod(l.exponent, moduli_[l.atom]);
          if (e != 0) reduced.push_back({l.atom, e});
        }
        conj_[static_cast<std::size_t>(j) * n_ + i] = std::move(reduced);
      }
    }
  }

  void multiply(std::vector<std::int64_t>& v, const Letters& letters) const {
    Letters stack(letters.rbegin(), letters.rend());
    while (!stack.empty()) {
      const Letter cur = stack.back();
      stack.pop_back();
      const int g = cur.atom;
      const std::int64_t e = floor_mod(cur.exponent, moduli_[g]);
      if (e == 0) continue;
      const int end = fg_.tail_end(g);
      bool blocked = false;
      for (int j = g + 1; j < end; ++j) {
        if (v[j] != 0) {
          blocked = true;
          break;
        }
      }
      if (!blocked) {
        v[g] = (v[g] + e) % moduli_[g];
        continue;
      }
      if (e > 1) stack.push_back({g, e - 1});
      Letters tail;
      for (int j = g + 1; j < n_; ++j) {
        if (v[j] == 0) continue;
        if (j >= end) {
          tail.push_back({j, v[j]});
        } else {
          append_power(tail, conj_[static_cast<std::size_t>(j) * n_ + g], v[j]);
        }
        v[j] = 0;
      }
      v[g] = (v[g] + 1) % moduli_[g];
      stack.insert(stack.end(), tail.rbegin(), tail.rend());
    }
  }

  std::vector<std::int64_t> unit(int i, std::int64_t e = 1) const {
    std::vector<std::int64_t> v(n_, 0);
    v[i] = floor_mod(e, moduli_[i]);
    return v;
  }

  static Letters letters_of(const std::vector<std::int64_t>& v) {
    Letters out;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      if (v[i] != 0) out.push_back({i, v[i]});
    }
    return out;
  }

  std::int64_t modulus(int i) const { return moduli_[i]; }

 private:
  const FreeNilpotentGroup& fg_;
  int n_;
  std::vector<std::int64_t> moduli_;
  std::vector<Letters> conj_;
};

}  // namespace

ConsistencyResult check_consistency(const Collector& collector) {
  if (collector.basis().variant() != BasisVariant::kStandard) {
    throw std::invalid_argument("check_consistency: standard basis only");
  }
  return check_consistency(collector.free_group(), collector.basis().moduli());
}

ConsistencyResult check_consistency(const FreeNilpotentGroup& fg, const std::vector<std::uint64_t>& moduli) {
  if (static_cast<int>(moduli.size()) != fg.size()) {
    throw std::invalid_argument("check_consistency: one modulus per basis entry required");
  }
  for (auto m : moduli) {
    if (m == 0) throw std::invalid_argument("check_consistency: moduli must be positive");
  }
  const PcCollector pc(fg, moduli);
  const int n = fg.size();
  ConsistencyResult out;
  auto name = [&](int i) { return commutator_name(fg.magnus().entries(), i); };
  auto fail = [&](const std::string& what) {
    if (out.consistent) {
      out.consistent = false;
      out.failure = what;
    }
  };
  auto product = [&](int a, int b) {
    auto v = pc.unit(a);
    pc.multiply(v, {{b, 1}});
    return v;
  };
  for (int i = 0; i < n; ++i) {
    if (pc.modulus(i) == 1) continue;
    for (int j = i + 1; j < n; ++j) {
      if (pc.modulus(j) == 1) continue;
      const auto ji = product(j, i);
      for (int k = j + 1; k < n; ++k) {
        if (pc.modulus(k) == 1) continue;
        auto lhs = product(k, j);
        pc.multiply(lhs, {{i, 1}});
        auto rhs = pc.unit(k);
        pc.multiply(rhs, PcCollector::letters_of(ji));
        ++out.checks;
        if (lhs != rhs) fail("(" + name(k) + " " + name(j) + ") " + name(i));
      }
      // a_j^{m_j} a_i = a_j^{m_j - 1} (a_j a_i)
      {
        auto rhs = pc.unit(j, pc.modulus(j) - 1);
        pc.multiply(rhs, PcCollector::letters_of(ji));
        ++out.checks;
        if (rhs != pc.unit(i)) fail(name(j) + "^m " + name(i));
      }
      // a_j a_i^{m_i} = (a_j a_i) a_i^{m_i - 1}
      {
        auto lhs = ji;
        pc.multiply(lhs, {{i, pc.modulus(i) - 1}});
        ++out.checks;
        if (lhs != pc.unit(j)) fail(name(j) + " " + name(i) + "^m");
      }
    }
  }
  return out;
}

}  // namespace nilcap
