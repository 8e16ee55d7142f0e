#include "nilcap/arith.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace nilcap::arith {

std::uint64_t Valuation::value() const {
  if (infinite_) throw std::logic_error("valuation is infinite");
  return value_;
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
  if (v.is_infinite()) return os << "inf";
  return os << v.value();
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not a prime");
}

Valuation vp(const BigInt& a, std::uint64_t p) {
  require_prime(p);
  if (a < 0) throw std::invalid_argument("vp: negative argument");
  if (a == 0) return Valuation::infinity();
  BigInt x = a;
  std::uint64_t r = 0;
  while (x % p == 0) {
    x /= p;
    ++r;
  }
  return Valuation(r);
}

Valuation vp(std::uint64_t a, std::uint64_t p) {
  require_prime(p);
  if (a == 0) return Valuation::infinity();
  std::uint64_t r = 0;
  while (a % p == 0) {
    a /= p;
    ++r;
  }
  return Valuation(r);
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
      throw std::overflow_error("checked_pow: " + std::to_string(base) + "^" +
                                std::to_string(exp) + " overflows");
    }
    result *= base;
  }
  return result;
}

std::uint64_t floor_log(std::uint64_t base, std::uint64_t x) {
  if (base < 2 || x < 1) throw std::invalid_argument("floor_log: need base >= 2 and x >= 1");
  std::uint64_t d = 0;
  std::uint64_t power = base;  // base^(d+1)
  while (power <= x) {
    ++d;
    if (power > std::numeric_limits<std::uint64_t>::max() / base) break;
    power *= base;
  }
  return d;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

std::int64_t choose2(std::int64_t r) { return r * (r - 1) / 2; }

namespace {

void check_range(std::uint64_t p, std::uint64_t n, std::uint64_t a, const char* what) {
  require_prime(p);
  if (n < 1) throw std::invalid_argument(std::string(what) + ": n must be positive");
  const std::uint64_t top = checked_pow(p, n);
  if (a == 0 || a > top) {
    throw std::invalid_argument(std::string(what) + ": argument " + std::to_string(a) +
                                " outside (0, " + std::to_string(top) + "]");
  }
}

}  // namespace

std::uint64_t kummer_binom_val(std::uint64_t p, std::uint64_t n, std::uint64_t a) {
  check_range(p, n, a, "kummer_binom_val");
  return n - vp(a, p).value();
}

std::uint64_t binom_sum_bound(std::uint64_t p, std::uint64_t n, std::uint64_t m) {
  check_range(p, n, m, "binom_sum_bound");
  return n - floor_log(p, m);
}

HallBound hall_bound_max(std::uint64_t k, std::uint64_t n) {
  if (k < 1 || n < 2) throw std::invalid_argument("hall_bound_max: need k >= 1, n >= 2");
  HallBound out;
  out.max = k / (n - 1);
  out.argmax = (k >= n - 1) ? n - 1 : 1;
  return out;
}

HallBound hall_bound_max_brute(std::uint64_t k, std::uint64_t n) {
  if (k < 1 || n < 2) throw std::invalid_argument("hall_bound_max: need k >= 1, n >= 2");
  HallBound best;
  bool first = true;
  for (std::uint64_t s = 1; s <= k; ++s) {
    const std::uint64_t value = (k - s) / (n - 1) + floor_log(n, s + 1);
    if (first || value > best.max) {
      best = {value, s};
      first = false;
    }
  }
  return best;
}

std::uint64_t capability_slack(std::uint64_t p, std::uint64_t k) {
  require_prime(p);
  if (k < 1) throw std::invalid_argument("capability_slack: class must be positive");
  return (k - 1) / (p - 1);
}

}  // namespace nilcap::arith
