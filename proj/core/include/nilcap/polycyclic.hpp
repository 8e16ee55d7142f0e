#pragma once

// Subgroup arithmetic that never lists elements. The basis entries c_t with
// moduli p^{a_t}, refined into the powers c_t^{p^j}, give a chief series of
// the nilpotent product with factors of order p; subgroups are stored as
// induced sequences (one element per occupied depth, leading digit 1).
// Standard variant only: the series needs the basis ordered by weight.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <optional>
#include <vector>

#include "nilcap/collector.hpp"
#include "nilcap/engine.hpp"
#include "nilcap/hall_basis.hpp"
#include "nilcap/normal_form.hpp"

namespace nilcap {

class PcGroup;

class PcSubgroup {
 public:
  /// log_p of the order.
  int rank() const { return rank_; }
  std::uint64_t order() const;
  bool has_depth(int d) const { return slots_[d].has_value(); }
  const NormalForm& at_depth(int d) const { return *slots_[d]; }
  /// Elements in order of increasing depth.
  std::vector<NormalForm> elements() const;

 private:
  friend class PcGroup;
  std::uint64_t prime_ = 2;
  std::vector<std::optional<NormalForm>> slots_;
  int rank_ = 0;
};

class PcGroup {
 public:
  explicit PcGroup(std::shared_ptr<const HallBasis> basis);

  const Collector& collector() const { return collector_; }
  std::uint64_t prime() const { return prime_; }
  /// Number of factors of order p; the group has order p^length().
  int length() const { return length_; }
  std::vector<NormalForm> generators() const;

  /// Position in the chief series of the leading digit; length() for e.
  int depth(const NormalForm& g) const;
  /// Leading digit in 1..p-1 (0 for e).
  std::int64_t leading_digit(const NormalForm& g) const;

  PcSubgroup trivial() const;
  PcSubgroup whole() const;
  PcSubgroup closure(const std::vector<NormalForm>& gens) const;
  /// Closure under conjugation by the generators of the whole group.
  PcSubgroup normal_closure(const std::vector<NormalForm>& gens) const;
  /// Adds gens to u (and to its normal closure if normal is set).
  void extend(PcSubgroup& u, const std::vector<NormalForm>& gens, bool normal) const;

  bool contains(const PcSubgroup& u, const NormalForm& g) const;
  /// u <= v
  bool is_subset(const PcSubgroup& u, const PcSubgroup& v) const;
  bool equal(const PcSubgroup& u, const PcSubgroup& v) const;

  /// Cancels leading digits against m for as long as possible; the result has
  /// its depth outside m's depths (or is e). g lies in G_d M iff the depth of
  /// the result is at least d.
  NormalForm reduce(const PcSubgroup& m, NormalForm g) const;

  /// { h : [h, s] in m for every s in s_list }; m must be normal.
  PcSubgroup centralizer_modulo(const std::vector<NormalForm>& s_list, const PcSubgroup& m) const;
  /// Preimage of Z(G/m) (m normal); the center itself when m is trivial.
  PcSubgroup center_modulo(const PcSubgroup& m) const;

 private:
  NormalForm pcgs_element(int pos) const;
  NormalForm normalize(const NormalForm& g) const;
  /// Inserts g's reduction into u; returns the new element if u grew.
  std::optional<NormalForm> insert(PcSubgroup& u, NormalForm g) const;

  Collector collector_;
  std::uint64_t prime_;
  int length_ = 0;
  std::vector<int> offset_;  // first position of entry t
  std::vector<int> entry_of_;
  std::vector<int> power_of_;
};

/// A GroupSpec realized as (nilpotent product) / (normal closure of relators)
/// without enumeration. Standard variant only.
struct PcPresentedGroup {
  GroupSpec spec;
  std::shared_ptr<const PcGroup> pc;
  PcSubgroup relators;
  std::vector<int> sorted_index;

  /// x1..xr in the user's numbering.
  std::map<std::string, NormalForm> assignment() const;
  /// log_p |G|
  int log_order() const { return pc->length() - relators.rank(); }
  /// Preimage of Z(G) in the product.
  PcSubgroup center_preimage() const { return pc->center_modulo(relators); }
};

PcPresentedGroup build_pc_group(const GroupSpec& spec);

}  // namespace nilcap
