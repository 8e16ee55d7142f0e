#include "nilcap/hall_basis.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "nilcap/arith.hpp"

namespace nilcap {

std::string to_string(BasisVariant v) {
  return v == BasisVariant::kK3P2 ? "k3p2" : "standard";
}

int BasicCommutator::support_size() const { return std::popcount(support); }

int BasicCommutator::min_support() const { return std::countr_zero(support); }

std::vector<BasicCommutator> build_basis(int r, int k) {
  if (r < 1 || r > kMaxRank) {
    throw std::invalid_argument("build_basis: rank must be in [1, " + std::to_string(kMaxRank) +
                                "], got " + std::to_string(r));
  }
  if (k < 1 || k > kMaxClass) {
    throw std::invalid_argument("build_basis: class must be in [1, " +
                                std::to_string(kMaxClass) + "], got " + std::to_string(k));
  }
  std::vector<BasicCommutator> out;
  for (int g = 0; g < r; ++g) {
    BasicCommutator c;
    c.kind = BasicCommutator::Kind::kGenerator;
    c.generator = g;
    c.weight = 1;
    c.support = 1u << g;
    out.push_back(c);
  }
  for (int w = 2; w <= k; ++w) {
    std::vector<std::pair<int, int>> candidates;  // (v, u) so the sort is right-to-left
    const int known = static_cast<int>(out.size());
    for (int u = 0; u < known; ++u) {
      for (int v = 0; v < u; ++v) {
        if (out[u].weight + out[v].weight != w) continue;
        if (!out[u].is_generator() && out[u].right > v) continue;
        candidates.emplace_back(v, u);
      }
    }
    std::sort(candidates.begin(), candidates.end());
    for (auto [v, u] : candidates) {
      BasicCommutator c;
      c.kind = BasicCommutator::Kind::kBracket;
      c.left = u;
      c.right = v;
      c.weight = w;
      c.support = out[u].support | out[v].support;
      out.push_back(c);
    }
  }
  return out;
}

std::uint64_t witt_number(int r, int w) {
  if (r < 1 || w < 1) throw std::invalid_argument("witt_number: r and w must be positive");
  auto mobius = [](int n) {
    int result = 1;
    for (int d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        n /= d;
        if (n % d == 0) return 0;
        result = -result;
      }
    }
    if (n > 1) result = -result;
    return result;
  };
  std::int64_t sum = 0;
  for (int d = 1; d <= w; ++d) {
    if (w % d != 0) continue;
    sum += mobius(d) * static_cast<std::int64_t>(arith::checked_pow(r, w / d));
  }
  return static_cast<std::uint64_t>(sum / w);
}

bool hall_less(const std::vector<BasicCommutator>& entries, int a, int b) {
  const auto& x = entries.at(a);
  const auto& y = entries.at(b);
  if (x.weight != y.weight) return x.weight < y.weight;
  if (x.is_generator()) return x.generator < y.generator;
  if (x.kind != BasicCommutator::Kind::kBracket || y.kind != BasicCommutator::Kind::kBracket) {
    return a < b;
  }
  if (x.right != y.right) return hall_less(entries, x.right, y.right);
  if (x.left != y.left) return hall_less(entries, x.left, y.left);
  return false;
}

std::vector<int> left_normed(const std::vector<BasicCommutator>& entries, int i) {
  std::vector<int> parts;
  int cur = i;
  while (entries.at(cur).kind == BasicCommutator::Kind::kBracket) {
    parts.push_back(entries[cur].right);
    cur = entries[cur].left;
  }
  parts.push_back(cur);
  std::reverse(parts.begin(), parts.end());
  return parts;
}

std::string commutator_name(const std::vector<BasicCommutator>& entries, int i) {
  const auto& c = entries.at(i);
  auto gen = [](int g) { return "x" + std::to_string(g + 1); };
  switch (c.kind) {
    case BasicCommutator::Kind::kGenerator:
      return gen(c.generator);
    case BasicCommutator::Kind::kSquareLeft:
      return "[" + gen(c.pair_j) + "^2," + gen(c.pair_i) + "]";
    case BasicCommutator::Kind::kSquareRight:
      return "[" + gen(c.pair_j) + "," + gen(c.pair_i) + "^2]";
    case BasicCommutator::Kind::kBracket:
      break;
  }
  std::string s = "[";
  const auto parts = left_normed(entries, i);
  for (std::size_t n = 0; n < parts.size(); ++n) {
    if (n) s += ",";
    s += commutator_name(entries, parts[n]);
  }
  return s + "]";
}

TwoGenDecomposition two_gen_shape(const std::vector<BasicCommutator>& entries, int i) {
  const auto& c = entries.at(i);
  if (c.kind != BasicCommutator::Kind::kBracket || c.weight < 3) {
    throw std::invalid_argument("two_gen_shape: need a bracket of weight >= 3");
  }
  if (c.support_size() != 2) {
    throw std::invalid_argument("two_gen_shape: commutator must involve exactly two generators");
  }
  const auto parts = left_normed(entries, i);
  if (parts.size() < 3 || !entries[parts[0]].is_generator() || !entries[parts[1]].is_generator() ||
      !entries[parts[2]].is_generator()) {
    throw std::invalid_argument("two_gen_shape: " + commutator_name(entries, i) +
                                " does not start with three generator entries");
  }
  TwoGenDecomposition out;
  out.z = entries[parts[0]].generator;
  out.y = entries[parts[1]].generator;
  const int w = entries[parts[2]].generator;
  if (w == out.y) {
    out.shape = TwoGenShape::kZYY;
  } else if (w == out.z) {
    out.shape = TwoGenShape::kZYZ;
  } else {
    throw std::invalid_argument("two_gen_shape: third entry is neither y nor z");
  }
  out.tail.assign(parts.begin() + 3, parts.end());
  return out;
}

std::vector<BasicCommutator> substitute_squares(std::vector<BasicCommutator> entries) {
  for (auto& c : entries) {
    if (c.kind != BasicCommutator::Kind::kBracket || c.weight != 3 || c.support_size() != 2) continue;
    const auto& inner = entries[c.left];
    const int j = entries[inner.left].generator;
    const int i = entries[inner.right].generator;
    const int third = entries[c.right].generator;
    c.kind = (third == i) ? BasicCommutator::Kind::kSquareRight : BasicCommutator::Kind::kSquareLeft;
    c.pair_j = j;
    c.pair_i = i;
    c.left = c.right = -1;
  }
  return entries;
}

std::vector<std::uint64_t> assign_moduli(const std::vector<BasicCommutator>& entries,
                                         std::uint64_t p, int k, const std::vector<int>& orders,
                                         BasisVariant variant) {
  arith::require_prime(p);
  for (int a : orders) {
    if (a < 1) throw std::invalid_argument("assign_moduli: generator orders must be >= 1");
  }
  std::vector<std::uint64_t> moduli;
  moduli.reserve(entries.size());
  if (variant == BasisVariant::kStandard) {
    if (p < static_cast<std::uint64_t>(k)) {
      throw std::invalid_argument("standard basis needs p >= k (p=" + std::to_string(p) +
                                  ", k=" + std::to_string(k) + ")");
    }
    for (const auto& c : entries) {
      int lo = std::numeric_limits<int>::max();
      for (int g = 0; g < static_cast<int>(orders.size()); ++g) {
        if (c.support & (1u << g)) lo = std::min(lo, orders[g]);
      }
      moduli.push_back(arith::checked_pow(p, lo));
    }
    return moduli;
  }
  if (p != 2 || k != 3) throw std::invalid_argument("k3p2 basis needs p = 2 and k = 3");
  if (!std::is_sorted(orders.begin(), orders.end())) {
    throw std::invalid_argument("k3p2 basis needs ascending generator orders");
  }
  auto pow2 = [](int e) {
    if (e < 0) throw std::invalid_argument("k3p2 modulus exponent would be negative");
    return arith::checked_pow(2, e);
  };
  for (std::size_t idx = 0; idx < entries.size(); ++idx) {
    const auto& c = entries[idx];
    switch (c.kind) {
      case BasicCommutator::Kind::kGenerator:
        moduli.push_back(pow2(orders.at(c.generator)));
        break;
      case BasicCommutator::Kind::kSquareRight:
        moduli.push_back(pow2(orders.at(c.pair_i) - 1));
        break;
      case BasicCommutator::Kind::kSquareLeft: {
        const int ai = orders.at(c.pair_i);
        const int aj = orders.at(c.pair_j);
        moduli.push_back(pow2(ai == aj ? ai - 1 : ai));
        break;
      }
      case BasicCommutator::Kind::kBracket: {
        const int lo = orders.at(c.min_support());
        if (c.weight == 2) {
          moduli.push_back(pow2(lo + 1));
        } else if (c.weight == 3 && c.support_size() == 3) {
          moduli.push_back(pow2(lo));
        } else {
          throw std::invalid_argument("k3p2: unexpected entry " + commutator_name(entries, static_cast<int>(idx)));
        }
        break;
      }
    }
  }
  return moduli;
}

HallBasis HallBasis::make(std::uint64_t p, int k, std::vector<int> orders, BasisVariant variant) {
  arith::require_prime(p);
  if (orders.empty()) throw std::invalid_argument("HallBasis: need at least one generator");
  HallBasis b;
  b.prime_ = p;
  b.class_ = k;
  b.variant_ = variant;
  b.standard_entries_ = build_basis(static_cast<int>(orders.size()), k);
  if (variant == BasisVariant::kK3P2) {
    if (p != 2 || k != 3) throw std::invalid_argument("k3p2 basis needs p = 2 and k = 3");
    b.entries_ = substitute_squares(b.standard_entries_);
  } else {
    b.entries_ = b.standard_entries_;
  }
  b.moduli_ = assign_moduli(b.entries_, p, k, orders, variant);
  b.orders_ = std::move(orders);
  return b;
}

int HallBasis::generator_index(int g) const {
  if (g < 0 || g >= rank()) throw std::out_of_range("generator index out of range");
  return g;
}

int HallBasis::find_bracket(int a, int b) const {
  for (int i = 0; i < size(); ++i) {
    const auto& c = entries_[i];
    if (c.kind == BasicCommutator::Kind::kBracket && c.left == a && c.right == b) return i;
  }
  return -1;
}

std::uint64_t HallBasis::order() const {
  std::uint64_t total = 1;
  for (auto m : moduli_) {
    if (m != 0 && total > std::numeric_limits<std::uint64_t>::max() / m) {
      throw std::overflow_error("group order exceeds 2^64");
    }
    total *= m;
  }
  return total;
}

}  // namespace nilcap
