#pragma once

// Basic commutators on r generators up to weight k, in Hall's ordering
// (by weight, then right entry, then left entry), together with the exponent
// moduli that turn them into normal-form coordinates for a nilpotent product
// of cyclic p-groups.

#include <cstdint>
#include <string>
#include <vector>

namespace nilcap {

inline constexpr int kMaxRank = 6;
inline constexpr int kMaxClass = 6;

enum class BasisVariant {
  kStandard,
  /// Class 3, p = 2: [x_j,x_i,x_i] and [x_j,x_i,x_j] are replaced by the
  /// squares [x_j,x_i^2] and [x_j^2,x_i].
  kK3P2,
};

std::string to_string(BasisVariant v);

/// One node of a Hall basis. Children are indices into the owning list and
/// always point to earlier (smaller) entries.
struct BasicCommutator {
  enum class Kind { kGenerator, kBracket, kSquareLeft, kSquareRight };

  Kind kind = Kind::kGenerator;
  int generator = -1;  // kGenerator: 0-based generator index
  int left = -1;       // kBracket: index of u in [u, v]
  int right = -1;      // kBracket: index of v in [u, v]
  int pair_j = -1;     // kSquare*: the pair (j, i), j > i, 0-based
  int pair_i = -1;
  int weight = 1;
  std::uint32_t support = 0;  // bitmask of generators that occur

  bool is_generator() const { return kind == Kind::kGenerator; }
  int support_size() const;
  int min_support() const;
};

/// All basic commutators of weight <= k on r generators, sorted ascending.
/// Rejects r, k outside [1, 6].
std::vector<BasicCommutator> build_basis(int r, int k);

/// Witt's count (1/w) sum_{d | w} mu(d) r^{w/d} of basic commutators of weight w.
std::uint64_t witt_number(int r, int w);

/// Strict Hall order between two entries of the same list.
bool hall_less(const std::vector<BasicCommutator>& entries, int a, int b);

/// Render entry i, left-normed, e.g. "[x2,x1,x1]" or "[x2^2,x1]".
std::string commutator_name(const std::vector<BasicCommutator>& entries, int i);

/// Unfold entry i as a left-normed list [a1, a2, ..., am] of entry indices.
std::vector<int> left_normed(const std::vector<BasicCommutator>& entries, int i);

enum class TwoGenShape { kZYY, kZYZ };

struct TwoGenDecomposition {
  TwoGenShape shape;
  int z = -1;  // generator index of z (the larger one)
  int y = -1;  // generator index of y
  std::vector<int> tail;  // c_4, ..., c_m as entry indices
};

/// Classify a weight >= 3 basic commutator on exactly two generators as
/// [z,y,y,c4,...] or [z,y,z,c4,...]. Throws std::invalid_argument otherwise.
TwoGenDecomposition two_gen_shape(const std::vector<BasicCommutator>& entries, int i);

/// Basic commutators with exponent moduli for a nilpotent product of cyclic
/// p-groups with generator orders p^orders[i] (orders ascending). Immutable.
class HallBasis {
 public:
  /// Builds the class-k basis on orders.size() generators and assigns moduli.
  /// Standard: modulus p^{min orders over support}, requires p >= k.
  /// K3P2: requires p = 2, k = 3.
  static HallBasis make(std::uint64_t p, int k, std::vector<int> orders,
                        BasisVariant variant = BasisVariant::kStandard);

  std::uint64_t prime() const { return prime_; }
  int nilpotency_class() const { return class_; }
  int rank() const { return static_cast<int>(orders_.size()); }
  const std::vector<int>& orders() const { return orders_; }
  BasisVariant variant() const { return variant_; }

  int size() const { return static_cast<int>(entries_.size()); }
  const std::vector<BasicCommutator>& entries() const { return entries_; }
  const BasicCommutator& entry(int i) const { return entries_.at(i); }
  const std::vector<std::uint64_t>& moduli() const { return moduli_; }
  std::uint64_t modulus(int i) const { return moduli_.at(i); }
  int weight(int i) const { return entries_.at(i).weight; }
  std::string name(int i) const { return commutator_name(entries_, i); }

  /// Index of generator x_{g+1}.
  int generator_index(int g) const;
  /// Index of the bracket [a, b] of two entries, or -1 if it is not in the basis.
  int find_bracket(int a, int b) const;

  /// Product of the moduli, or throws std::overflow_error past 2^64.
  std::uint64_t order() const;

  /// The standard class-k basis on the same generators (for K3P2 this is the
  /// basis before the square substitution; otherwise the same entries).
  const std::vector<BasicCommutator>& standard_entries() const { return standard_entries_; }

 private:
  HallBasis() = default;

  std::uint64_t prime_ = 2;
  int class_ = 1;
  std::vector<int> orders_;
  BasisVariant variant_ = BasisVariant::kStandard;
  std::vector<BasicCommutator> entries_;
  std::vector<BasicCommutator> standard_entries_;
  std::vector<std::uint64_t> moduli_;
};

/// Moduli for a given entry list, as described on HallBasis::make.
/// For K3P2 the entry list must already carry the square substitution.
std::vector<std::uint64_t> assign_moduli(const std::vector<BasicCommutator>& entries,
                                         std::uint64_t p, int k, const std::vector<int>& orders,
                                         BasisVariant variant);

/// Replace [x_j,x_i,x_i] by [x_j,x_i^2] and [x_j,x_i,x_j] by [x_j^2,x_i] in a
/// standard class-3 list, keeping positions.
std::vector<BasicCommutator> substitute_squares(std::vector<BasicCommutator> entries);

}  // namespace nilcap
