#pragma once

// Capability verdicts. A group is capable when it is the central quotient
// H/Z(H) of some group H. Verdicts are three-valued: the order bound gives
// non-capability, a handful of regimes have iff criteria, and everything else
// is UNKNOWN unless a finite witness is found and verified.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilcap/engine.hpp"
#include "nilcap/wordlang.hpp"

namespace nilcap {

enum class Status { kCapable, kNotCapable, kUnknown };

enum class Justification {
  kOrderBoundViolated,          // top order exceeds the next one by more than the slack
  kSmallClassCriterion,         // class below p: capable iff the two largest orders agree
  kBinaryClassTwoCriterion,     // p = 2, class 2: capable iff the order bound holds
  kTwoGeneratorClassTwoCriterion,  // two generators, class 2, odd p: capable iff alpha = beta
  kExtraspecialClassification,
  kVerifiedWitness,
  kOpenRegime,
};

std::string to_string(Status s);
std::string to_string(Justification j);

/// A candidate H with H/Z(H) = G, and the checks that were run on it. All
/// groups involved are p-groups, so orders are stored as exponents of p.
struct WitnessReport {
  std::string construction;  // how K and M were built
  std::string method;        // "enumeration" or "polycyclic"
  std::uint64_t prime = 0;
  int k_class = 0;
  std::vector<int> k_orders;
  BasisVariant k_variant = BasisVariant::kStandard;
  std::string m_description;
  int log_order_k = 0;
  int log_order_m = 0;
  int log_order_q = 0;             // |K/M|
  int log_order_center = 0;        // |Z(K/M)|
  int log_central_quotient = 0;    // |K/M| / |Z(K/M)|
  int log_target = 0;              // |G|
  bool center_matches_formula = true;  // only checked by witness_quotient_family
  bool relators_central = false;
  bool verified = false;
  std::string note;

  /// p^e as text, e.g. "3^5 = 243" (the value is omitted past 2^64).
  std::string order_text(int e) const;
};

struct Verdict {
  Status status = Status::kUnknown;
  Justification justification = Justification::kOpenRegime;
  std::string detail;
  std::optional<WitnessReport> witness;
};

/// r > 1 and alpha_r <= alpha_{r-1} + floor((k-1)/(p-1)); orders ascending.
bool necessity_check(std::uint64_t p, int k, const std::vector<int>& orders);

struct WitnessOptions {
  bool search = false;  // attach (and, in the open regime, try) a witness
  std::uint64_t budget = kDefaultBudget;
};

Verdict capable_nilprod(std::uint64_t p, int k, const std::vector<int>& orders, const WitnessOptions& options = {});

/// Builds K (class k+1, orders k_orders or alpha_i + slack + 1), N = normal
/// closure of the relator values, M = [N, K], Q = K/M, and checks
/// |Q/Z(Q)| = |G|. A failed check is inconclusive. K is enumerated when it
/// fits in the budget and handled through its power-commutator series
/// otherwise; the latter needs the standard basis (BudgetExceeded if not).
WitnessReport witness_search(const GroupSpec& g_spec, std::optional<std::vector<int>> k_orders = std::nullopt,
                             std::uint64_t budget = kDefaultBudget);

BuiltGroup build_presentation11(std::uint64_t p, const Presentation11& params, std::uint64_t budget = kDefaultBudget);
Verdict capable_presentation11(std::uint64_t p, const Presentation11& params);

/// betas[{j, i}] (1-based, j > i) is the exponent beta_ji of [x_j,x_i]^{p^beta_ji};
/// missing pairs default to alpha_i.
WitnessReport witness_quotient_family(std::uint64_t p, const std::vector<int>& orders,
                                      const std::map<std::pair<int, int>, int>& betas,
                                      std::uint64_t budget = kDefaultBudget);

/// Witness chain for the presentation with alpha = beta and sigma < gamma.
WitnessReport witness_presentation11(std::uint64_t p, int alpha, int gamma, int sigma,
                                     std::uint64_t budget = kDefaultBudget);

enum class ExtraspecialKind {
  kExponentP,   // odd p
  kExponentP2,  // odd p
  kPlus,        // p = 2; dihedral at order 8
  kMinus,       // p = 2; quaternion at order 8
};

/// Extra-special group of order p^n (n odd, n >= 3).
Verdict capable_extraspecial(std::uint64_t p, int n, ExtraspecialKind kind);

/// The order-p^5 extra-special group on four generators of order p.
BuiltGroup build_extraspecial_p5(std::uint64_t p, std::uint64_t budget = kDefaultBudget);

}  // namespace nilcap
