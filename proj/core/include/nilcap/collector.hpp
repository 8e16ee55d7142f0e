#pragma once

// Group arithmetic on Hall normal forms. Words are collected in the free
// class-k nilpotent group (standard basis, unreduced integer exponents) and
// reduced modulo the basis moduli at the end. Conjugation relations
// a_i^{-s} a_j a_i^{s} come from the Magnus model, so they are exact.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nilcap/hall_basis.hpp"
#include "nilcap/magnus.hpp"
#include "nilcap/normal_form.hpp"
#include "nilcap/wordlang.hpp"

namespace nilcap {

struct Letter {
  int atom = 0;
  std::int64_t exponent = 0;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Sequence of basis atoms with integer exponents; the empty word is e.
struct Word {
  std::vector<Letter> letters;
};

enum class Strategy {
  kFromLeft,          // stack-based collection to the left
  kLeftmostFirst,     // rewrite the leftmost out-of-order pair
  kRightmostMinimal,  // rewrite the rightmost pair whose right letter is least
};

using Letters = std::vector<Letter>;

/// Conjugation table of the free nilpotent group of class k on r generators.
class FreeNilpotentGroup {
 public:
  /// Shared instance per (r, k); built on first use.
  static std::shared_ptr<const FreeNilpotentGroup> get(int rank, int nilpotency_class);

  FreeNilpotentGroup(int rank, int nilpotency_class);

  int rank() const { return rank_; }
  int nilpotency_class() const { return class_; }
  int size() const { return static_cast<int>(weights_.size()); }
  int weight(int i) const { return weights_[i]; }
  const MagnusCoordinates& magnus() const { return magnus_; }

  /// Entries j > i with j < tail_end(i) may fail to commute with a_i.
  int tail_end(int i) const { return tail_end_[i]; }

  /// Normal form of a_i^{-s} a_j a_i^{s} (s = +1 or -1, j > i) as letters.
  const Letters& conjugate(int j, int i, int s) const;

 private:
  int rank_;
  int class_;
  MagnusCoordinates magnus_;
  std::vector<int> weights_;
  std::vector<int> tail_end_;
  std::vector<Letters> conj_pos_;  // index j * n + i
  std::vector<Letters> conj_neg_;
};

class Collector {
 public:
  explicit Collector(std::shared_ptr<const HallBasis> basis);

  const HallBasis& basis() const { return *basis_; }
  const std::shared_ptr<const HallBasis>& basis_ptr() const { return basis_; }
  const FreeNilpotentGroup& free_group() const { return *free_; }
  int size() const { return basis_->size(); }

  NormalForm identity() const;
  NormalForm generator(int g) const;
  /// Normal form with the given exponents, reduced into range.
  NormalForm element(std::vector<std::int64_t> exps) const;

  NormalForm collect(const Word& w, Strategy strategy = Strategy::kFromLeft) const;
  NormalForm mul(const NormalForm& a, const NormalForm& b) const;
  NormalForm inv_pow(const NormalForm& a, std::int64_t n) const;
  NormalForm inverse(const NormalForm& a) const { return inv_pow(a, -1); }
  /// a^-1 b^-1 a b
  NormalForm comm(const NormalForm& a, const NormalForm& b) const;

  /// The normal form written out as a word over basis atoms.
  Word to_word(const NormalForm& nf) const;

  /// Binds x1..xr to the generators.
  std::map<std::string, NormalForm> default_assignment() const;
  NormalForm evaluate_word(const WordAST& ast, const std::map<std::string, NormalForm>& assignment) const;

  /// Free-group coordinates of a normal form (differs from exps only for K3P2).
  std::vector<std::int64_t> to_free(const NormalForm& nf) const;
  /// Reduce free coordinates to a normal form.
  NormalForm from_free(std::vector<std::int64_t> free) const;
  /// Letters over the free standard basis representing one basis atom power.
  Letters free_letters(int atom, std::int64_t exponent) const;

  /// Right-multiply free coordinates by a sequence of free letters.
  void multiply_into(std::vector<std::int64_t>& v, const Letters& letters) const;

 private:
  // Same, keeping every coordinate a symmetric residue modulo its modulus.
  // Only meaningful when free and basis coordinates agree (standard basis).
  void multiply_into_reduced(std::vector<std::int64_t>& v, const Letters& letters) const;
  template <bool Reduce>
  void collect_into(std::vector<std::int64_t>& v, const Letters& letters) const;
  /// Right-multiplies free coordinates, reducing on the way when allowed.
  void product_into(std::vector<std::int64_t>& v, const Letters& letters) const;

  void check_same(const NormalForm& a) const;
  Letters rewrite(Letters letters, Strategy strategy) const;

  std::shared_ptr<const HallBasis> basis_;
  std::shared_ptr<const FreeNilpotentGroup> free_;
  struct SquarePair {
    int bracket;      // [x_j,x_i]
    int right_entry;  // [x_j,x_i,x_i] / SQ_R slot
    int left_entry;   // [x_j,x_i,x_j] / SQ_L slot
  };
  std::vector<SquarePair> squares_;  // K3P2 only
  std::vector<std::int64_t> moduli_;  // as signed integers, for reduction
};

/// Result of the power-conjugate consistency test.
struct ConsistencyResult {
  bool consistent = true;
  std::size_t checks = 0;
  std::string failure;  // first failing test, if any
};

/// Checks that the power-conjugate presentation with relations a_i^{m_i} = e and
/// the free conjugation relations (reduced modulo the moduli) is consistent, so
/// that the group it defines has order exactly the product of the moduli.
/// Standard variant only.
ConsistencyResult check_consistency(const Collector& collector);

/// Same test for arbitrary moduli on the standard basis of fg.
ConsistencyResult check_consistency(const FreeNilpotentGroup& fg, const std::vector<std::uint64_t>& moduli);

}  // namespace nilcap
