#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "nilcap/hall_basis.hpp"

namespace nilcap {

/// Exponent vector over a Hall basis, each coordinate in [0, modulus).
struct NormalForm {
  std::shared_ptr<const HallBasis> basis;
  std::vector<std::int64_t> exps;

  bool is_identity() const;

  friend bool operator==(const NormalForm& a, const NormalForm& b) {
    return a.basis == b.basis && a.exps == b.exps;
  }
};

}  // namespace nilcap
