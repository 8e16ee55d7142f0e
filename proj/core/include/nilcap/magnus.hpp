#pragma once

// Magnus embedding of the free nilpotent group F/F_{k+1} into the units of the
// truncated free associative ring Z<X_1..X_r>/(degree > k), x_i -> 1 + X_i.
// The embedding is faithful, so it gives an exact model of the free nilpotent
// group that does not depend on any collection strategy. Peeling a series back
// into Hall coordinates goes weight by weight through the Lie leading terms.

#include <cstdint>
#include <memory>
#include <vector>

#include "nilcap/hall_basis.hpp"

namespace nilcap {

/// Truncated noncommutative power series with integer coefficients.
/// Monomials of degree d are indexed by offset(d) + (base-r digits of the word).
class MagnusAlgebra {
 public:
  using Series = std::vector<std::int64_t>;

  MagnusAlgebra(int rank, int max_degree);

  int rank() const { return rank_; }
  int max_degree() const { return max_degree_; }
  std::size_t dimension() const { return offsets_.back(); }
  std::size_t offset(int degree) const { return offsets_.at(degree); }
  std::size_t count(int degree) const { return offsets_.at(degree + 1) - offsets_.at(degree); }

  Series one() const;
  /// Image of x_g.
  Series generator(int g) const;
  Series mul(const Series& a, const Series& b) const;
  /// Inverse of a series with constant term 1.
  Series inverse(const Series& a) const;
  Series power(const Series& a, std::int64_t n) const;
  /// a^-1 b^-1 a b
  Series commutator(const Series& a, const Series& b) const;

  /// Coefficients of the degree-d part, in word order.
  std::vector<std::int64_t> homogeneous(const Series& a, int degree) const;

 private:
  int rank_;
  int max_degree_;
  std::vector<std::size_t> offsets_;
};

/// Exact Hall coordinates of free nilpotent group elements given as Magnus
/// series, for the standard basis of class k on r generators.
class MagnusCoordinates {
 public:
  MagnusCoordinates(int rank, int nilpotency_class);

  const MagnusAlgebra& algebra() const { return algebra_; }
  const std::vector<BasicCommutator>& entries() const { return entries_; }
  const MagnusAlgebra::Series& series_of(int entry) const { return entry_series_.at(entry); }

  /// Series of the normal-form product prod_i c_i^{exps[i]}.
  MagnusAlgebra::Series series_of(const std::vector<std::int64_t>& exps) const;

  /// Hall coordinates of a series with constant term 1. Throws std::logic_error
  /// if the series is not the image of a group element.
  std::vector<std::int64_t> peel(MagnusAlgebra::Series s) const;

 private:
  struct WeightSolver;

  MagnusAlgebra algebra_;
  std::vector<BasicCommutator> entries_;
  std::vector<MagnusAlgebra::Series> entry_series_;
  std::vector<std::shared_ptr<const WeightSolver>> solvers_;  // indexed by weight
  std::vector<int> weight_begin_;                              // first entry of each weight
};

}  // namespace nilcap
