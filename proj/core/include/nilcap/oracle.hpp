#pragma once

// Brute-force verifiers. They treat the collector as untrusted: identities
// are checked elementwise on sampled (or all) elements, centers and series are
// recomputed from their definitions, and nothing here calls the capability
// module.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nilcap/collector.hpp"
#include "nilcap/engine.hpp"
#include "nilcap/wordlang.hpp"

namespace nilcap {

enum class CheckStatus { kPass, kFail, kNotApplicable };
std::string to_string(CheckStatus s);

struct CheckReport {
  std::string check_id;
  std::string group;   // one-line description of the group
  std::string method;  // how the check was carried out
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> failures;  // counterexamples as normal-form words
  std::string detail;
  CheckStatus status = CheckStatus::kPass;

  void fail(std::string counterexample);
  bool passed() const { return status == CheckStatus::kPass; }
};

enum class IdentityId { kEq1, kEq2, kEq3, kEq4, kP23II, kP23IV, kH1, kH2, kH2Prime, kHall1231 };
std::string to_string(IdentityId id);
/// Accepts EQ1..EQ4, P23_II, P23_IV, H1, H2, H2PRIME, HALL1231; throws
/// std::invalid_argument otherwise.
IdentityId parse_identity_id(const std::string& text);
const std::vector<IdentityId>& all_identities();

/// A nilpotent product of cyclic p-groups under test. Arithmetic comes from
/// the collector; W comes from the lower central series when the group fits
/// the budget and from the normal-form coordinates otherwise (standard basis).
class TestGroup {
 public:
  static TestGroup make(const GroupSpec& spec, std::uint64_t budget = kDefaultBudget);
  static TestGroup make(std::uint64_t p, int k, const std::vector<int>& orders,
                        BasisVariant variant = BasisVariant::kStandard, std::uint64_t budget = kDefaultBudget);

  const Collector& collector() const { return *collector_; }
  const HallBasis& basis() const { return collector_->basis(); }
  int nilpotency_class() const { return basis().nilpotency_class(); }
  bool enumerable() const { return product_ != nullptr; }
  /// Only when enumerable().
  const std::shared_ptr<const NilpotentProduct>& product() const { return product_; }
  const std::vector<Subgroup>& series() const { return series_; }
  std::string describe() const;
  std::string weight_method() const { return enumerable() ? "lower central series" : "coordinates"; }

  /// W(g); kInfiniteWeight for e.
  int weight(const NormalForm& g) const;
  /// W(g) read off the normal form: the least weight of a nonzero coordinate.
  int coordinate_weight(const NormalForm& g) const;

  NormalForm random(std::mt19937_64& rng) const;
  /// A random element with W exactly w, or nothing if G_w = G_{w+1}.
  std::optional<NormalForm> random_of_weight(int w, std::mt19937_64& rng) const;

  NormalForm generator(int g) const { return collector_->generator(g); }

 private:
  std::shared_ptr<const Collector> collector_;
  std::shared_ptr<const NilpotentProduct> product_;
  std::vector<Subgroup> series_;
};

/// Checks one identity on `samples` random instances (seeded). EQ1 and EQ2
/// run over all triples instead when |G|^3 <= samples and G is enumerable.
CheckReport verify_identity(IdentityId id, const TestGroup& g, std::uint64_t samples, std::uint64_t seed = 0);

/// Exponent bounds for <y,z> under the p-power hypothesis with threshold a.
/// The group must be enumerable (BudgetExceeded otherwise).
CheckReport verify_exponent_bounds(const TestGroup& g, const NormalForm& y, const NormalForm& z, int a);

/// Center by definition against the closed-form generator list of the center.
/// Brute force when the group fits the budget, otherwise a layer-by-layer
/// centralizer computation in the power-commutator series.
CheckReport verify_center_theorem(const GroupSpec& spec, std::uint64_t budget = kDefaultBudget);

/// Number of elements reached from the generators against the product of the
/// moduli. Over budget: consistency certificate plus series closure.
CheckReport verify_struik_order(const GroupSpec& spec, std::uint64_t budget = kDefaultBudget);

/// Associativity: Light's test on the Cayley table up to table_limit
/// elements (which covers every triple), random triples otherwise.
CheckReport verify_associativity(const GroupView& g, std::uint64_t random_triples = 100000, std::uint64_t seed = 0,
                                 std::uint64_t table_limit = 5000);
/// Random triples of normal forms, for groups too large to enumerate.
CheckReport verify_associativity(const TestGroup& g, std::uint64_t random_triples = 100000, std::uint64_t seed = 0);

/// Collector against the Magnus model on random words in the free class-k
/// group (no moduli); an independent route for group multiplication.
CheckReport verify_against_magnus(int rank, int nilpotency_class, std::uint64_t samples, std::uint64_t seed = 0);

/// Three collection strategies agree on random words.
CheckReport verify_confluence(const TestGroup& g, std::uint64_t samples, std::uint64_t seed = 0);

}  // namespace nilcap
