#pragma once

// Exact integer helpers: p-adic valuations, binomials and the floor-log bound
// functions that drive the exponent estimates in the capability module.

#include <compare>
#include <cstdint>
#include <ostream>

#include <boost/multiprecision/cpp_int.hpp>

namespace nilcap::arith {

using BigInt = boost::multiprecision::cpp_int;

/// p-adic valuation of an integer. The valuation of 0 is the distinguished
/// value infinity, which compares greater than every finite valuation.
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr explicit Valuation(std::uint64_t v) : value_(v) {}

  static constexpr Valuation infinity() {
    Valuation v;
    v.infinite_ = true;
    return v;
  }

  constexpr bool is_infinite() const { return infinite_; }
  /// Finite value; throws std::logic_error on infinity.
  std::uint64_t value() const;

  friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
  friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

 private:
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

bool is_prime(std::uint64_t n);

/// Throws std::invalid_argument unless p is a prime.
void require_prime(std::uint64_t p);

/// Largest r with p^r | a; infinity for a == 0.
Valuation vp(const BigInt& a, std::uint64_t p);
Valuation vp(std::uint64_t a, std::uint64_t p);

/// base^exp, throwing std::overflow_error if it does not fit in 64 bits.
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp);

/// floor(log_base(x)) computed by repeated multiplication; x >= 1, base >= 2.
std::uint64_t floor_log(std::uint64_t base, std::uint64_t x);

/// Exact binomial coefficient C(n, k) for n >= 0.
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// C(r, 2) = r(r-1)/2 for any integer r.
std::int64_t choose2(std::int64_t r);

/// Valuation of C(p^n, a) for 0 < a <= p^n, via n - vp(a).
std::uint64_t kummer_binom_val(std::uint64_t p, std::uint64_t n, std::uint64_t a);

/// Largest e such that p^e divides every integer combination
/// a_1 C(p^n,1) + ... + a_m C(p^n,m); equals n - floor(log_p m).
std::uint64_t binom_sum_bound(std::uint64_t p, std::uint64_t n, std::uint64_t m);

struct HallBound {
  std::uint64_t max = 0;
  std::uint64_t argmax = 1;
};

/// max over 1 <= s <= k of floor((k-s)/(n-1)) + floor(log_n(s+1)).
/// The maximum is floor(k/(n-1)); when k >= n-1 the reported maximiser is
/// s = n-1, otherwise every s ties and s = 1 is reported.
HallBound hall_bound_max(std::uint64_t k, std::uint64_t n);

/// Exhaustive evaluation of the same maximum (smallest maximiser on ties).
HallBound hall_bound_max_brute(std::uint64_t k, std::uint64_t n);

/// floor((k-1)/(p-1)): how far the top generator order of a capable p-group
/// of class k may exceed the next one.
std::uint64_t capability_slack(std::uint64_t p, std::uint64_t k);

}  // namespace nilcap::arith
