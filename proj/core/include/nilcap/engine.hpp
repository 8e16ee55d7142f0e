#pragma once

// Finite groups realized as enumerable element ids: nilpotent products of
// cyclic p-groups (ids are mixed-radix encodings of normal forms), their
// quotients, and subgroup machinery on top (closure, normal closure, lower
// central series, center).

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilcap/collector.hpp"
#include "nilcap/hall_basis.hpp"
#include "nilcap/wordlang.hpp"

namespace nilcap {

using ElementId = std::uint32_t;

inline constexpr std::uint64_t kDefaultBudget = 2'000'000;

/// Thrown when a group (or an intermediate group) is larger than allowed.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t needed, std::uint64_t budget);
  /// Size that was requested; 0 if it does not fit in 64 bits.
  std::uint64_t needed() const { return needed_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t needed_;
  std::uint64_t budget_;
};

/// A finite group with elements 0..order()-1; 0 is the identity.
class GroupView {
 public:
  virtual ~GroupView() = default;

  virtual std::uint64_t order() const = 0;
  virtual ElementId mul(ElementId a, ElementId b) const = 0;
  virtual ElementId inv(ElementId a) const = 0;
  virtual const std::vector<ElementId>& generators() const = 0;
  virtual const std::vector<std::string>& generator_names() const = 0;
  virtual std::string format(ElementId a) const = 0;

  static constexpr ElementId identity() { return 0; }
  ElementId pow(ElementId a, std::int64_t n) const;
  /// a^-1 b^-1 a b
  ElementId comm(ElementId a, ElementId b) const;
  ElementId conj(ElementId a, ElementId by) const { return mul(inv(by), mul(a, by)); }
  ElementId element_order(ElementId a) const;
};

/// Nilpotent product of cyclic p-groups, orders ascending.
class NilpotentProduct : public GroupView {
 public:
  /// Throws BudgetExceeded if the product of the moduli exceeds the budget.
  static std::shared_ptr<const NilpotentProduct> make(std::uint64_t p, int k, std::vector<int> orders,
                                                      BasisVariant variant = BasisVariant::kStandard,
                                                      std::uint64_t budget = kDefaultBudget);

  explicit NilpotentProduct(std::shared_ptr<const HallBasis> basis);

  std::uint64_t order() const override { return order_; }
  ElementId mul(ElementId a, ElementId b) const override;
  ElementId inv(ElementId a) const override;
  const std::vector<ElementId>& generators() const override { return generators_; }
  const std::vector<std::string>& generator_names() const override { return names_; }
  std::string format(ElementId a) const override;

  const HallBasis& basis() const { return collector_.basis(); }
  const Collector& collector() const { return collector_; }

  ElementId encode(const NormalForm& nf) const;
  NormalForm decode(ElementId id) const;

 private:
  Collector collector_;
  std::uint64_t order_ = 1;
  std::vector<std::uint64_t> strides_;
  std::vector<ElementId> generators_;
  std::vector<std::string> names_;
};

class Subgroup;

/// Cosets of a normal subgroup; the representative of each coset is its least
/// parent id, and coset ids follow the order of the representatives.
class QuotientGroup : public GroupView {
 public:
  QuotientGroup(std::shared_ptr<const GroupView> parent, const Subgroup& normal);

  std::uint64_t order() const override { return reps_.size(); }
  ElementId mul(ElementId a, ElementId b) const override;
  ElementId inv(ElementId a) const override;
  const std::vector<ElementId>& generators() const override { return generators_; }
  const std::vector<std::string>& generator_names() const override { return parent_->generator_names(); }
  std::string format(ElementId a) const override;

  const GroupView& parent() const { return *parent_; }
  std::shared_ptr<const GroupView> parent_ptr() const { return parent_; }
  ElementId project(ElementId parent_id) const { return proj_[parent_id]; }
  ElementId representative(ElementId coset) const { return reps_[coset]; }

 private:
  std::shared_ptr<const GroupView> parent_;
  std::vector<ElementId> reps_;
  std::vector<ElementId> proj_;
  std::vector<ElementId> generators_;
};

class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(const GroupView* parent, std::vector<ElementId> members, std::vector<ElementId> generators);

  const GroupView& parent() const { return *parent_; }
  std::uint64_t order() const { return members_.size(); }
  const std::vector<ElementId>& members() const { return members_; }
  const std::vector<ElementId>& generators() const { return generators_; }
  bool contains(ElementId a) const { return a < bitmap_.size() && bitmap_[a]; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members_ == b.members_; }

 private:
  const GroupView* parent_ = nullptr;
  std::vector<ElementId> members_;  // sorted
  std::vector<ElementId> generators_;
  std::vector<bool> bitmap_;
};

/// Incremental subgroup closure (Dimino's algorithm over right cosets).
class ClosureBuilder {
 public:
  explicit ClosureBuilder(const GroupView& g);

  /// Adds a generator; returns false if it was already a member.
  bool add(ElementId x);
  bool contains(ElementId x) const { return member_[x] != 0; }
  std::uint64_t size() const { return elements_.size(); }
  const std::vector<ElementId>& generators() const { return generators_; }
  Subgroup finish() const;

 private:
  const GroupView& g_;
  std::vector<ElementId> elements_;
  std::vector<std::uint8_t> member_;
  std::vector<ElementId> generators_;
};

Subgroup subgroup_closure(const GroupView& g, const std::vector<ElementId>& gens);
Subgroup normal_closure(const GroupView& g, const std::vector<ElementId>& gens);
Subgroup whole_group(const GroupView& g);
bool is_normal(const GroupView& g, const Subgroup& n);

/// G = G_1 >= G_2 >= ... ending with the trivial subgroup.
std::vector<Subgroup> lower_central_series(const GroupView& g);

inline constexpr int kInfiniteWeight = std::numeric_limits<int>::max();

/// Largest n with a in G_n; kInfiniteWeight for the identity.
int weight_W(const std::vector<Subgroup>& series, ElementId a);

Subgroup center(const GroupView& g);

/// Throws std::invalid_argument if n is not normal.
std::shared_ptr<const QuotientGroup> quotient(std::shared_ptr<const GroupView> g, const Subgroup& n);

/// Evaluate a word with names bound to elements of g.
ElementId evaluate(const GroupView& g, const WordAST& w, const std::map<std::string, ElementId>& assignment);

bool check_words_central(const GroupView& q, const std::vector<WordAST>& words,
                         const std::map<std::string, ElementId>& assignment);

/// A group built from a spec: the ambient nilpotent product (orders sorted)
/// and the group itself (the product, or its quotient by the relators).
struct BuiltGroup {
  GroupSpec spec;
  std::shared_ptr<const NilpotentProduct> product;
  std::shared_ptr<const GroupView> group;
  /// sorted_index[i] is the position of the user's generator x_{i+1} after sorting.
  std::vector<int> sorted_index;

  /// x1..xr in the user's numbering, mapped to elements of group.
  std::map<std::string, ElementId> assignment() const;
};

/// Stable sort of generators by order. Returns sorted_index as in BuiltGroup
/// and writes the ascending orders.
std::vector<int> sort_by_order(const std::vector<int>& orders, std::vector<int>& sorted_orders);

BuiltGroup build_group(const GroupSpec& spec, std::uint64_t budget = kDefaultBudget);

/// Relators of the two-generator class-2 presentation with parameters q, as
/// words in x1 = a and x2 = b.
std::vector<WordAST> presentation11_relators(std::uint64_t p, const Presentation11& q);

}  // namespace nilcap
