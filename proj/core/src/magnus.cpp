#include "nilcap/magnus.hpp"

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace nilcap {

namespace {

using Rational = boost::multiprecision::cpp_rational;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("Magnus coefficient overflow");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("Magnus coefficient overflow");
  return out;
}

}  // namespace

MagnusAlgebra::MagnusAlgebra(int rank, int max_degree) : rank_(rank), max_degree_(max_degree) {
  if (rank < 1 || max_degree < 1) throw std::invalid_argument("MagnusAlgebra: bad shape");
  offsets_.push_back(0);
  std::size_t block = 1;
  for (int d = 0; d <= max_degree; ++d) {
    offsets_.push_back(offsets_.back() + block);
    block *= static_cast<std::size_t>(rank);
  }
}

MagnusAlgebra::Series MagnusAlgebra::one() const {
  Series s(dimension(), 0);
  s[0] = 1;
  return s;
}

MagnusAlgebra::Series MagnusAlgebra::generator(int g) const {
  Series s = one();
  s[offset(1) + g] = 1;
  return s;
}

MagnusAlgebra::Series MagnusAlgebra::mul(const Series& a, const Series& b) const {
  Series out(dimension(), 0);
  for (int da = 0; da <= max_degree_; ++da) {
    const std::size_t oa = offset(da);
    const std::size_t na = count(da);
    for (std::size_t ia = 0; ia < na; ++ia) {
      const std::int64_t ca = a[oa + ia];
      if (ca == 0) continue;
      for (int db = 0; da + db <= max_degree_; ++db) {
        const std::size_t ob = offset(db);
        const std::size_t nb = count(db);
        const std::size_t base = offset(da + db) + ia * nb;
        for (std::size_t ib = 0; ib < nb; ++ib) {
          const std::int64_t cb = b[ob + ib];
          if (cb == 0) continue;
          out[base + ib] = checked_add(out[base + ib], checked_mul(ca, cb));
        }
      }
    }
  }
  return out;
}

MagnusAlgebra::Series MagnusAlgebra::inverse(const Series& a) const {
  if (a.at(0) != 1) throw std::invalid_argument("MagnusAlgebra::inverse: constant term must be 1");
  // (1 + A)^-1 = sum_n (-A)^n, truncated.
  Series neg = a;
  neg[0] = 0;
  for (auto& c : neg) c = -c;
  Series term = one();
  Series out = one();
  for (int n = 1; n <= max_degree_; ++n) {
    term = mul(term, neg);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = checked_add(out[i], term[i]);
  }
  return out;
}

MagnusAlgebra::Series MagnusAlgebra::power(const Series& a, std::int64_t n) const {
  Series base = n < 0 ? inverse(a) : a;
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  Series out = one();
  while (e) {
    if (e & 1) out = mul(out, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return out;
}

MagnusAlgebra::Series MagnusAlgebra::commutator(const Series& a, const Series& b) const {
  return mul(mul(inverse(a), inverse(b)), mul(a, b));
}

std::vector<std::int64_t> MagnusAlgebra::homogeneous(const Series& a, int degree) const {
  return {a.begin() + static_cast<std::ptrdiff_t>(offset(degree)),
          a.begin() + static_cast<std::ptrdiff_t>(offset(degree + 1))};
}

// Solves d = sum_c e_c L_c over the Lie leading terms L_c of the weight-w basic
// commutators, using a square invertible row selection.
struct MagnusCoordinates::WeightSolver {
  std::vector<std::vector<std::int64_t>> columns;  // L_c as word-coefficient vectors
  std::vector<std::size_t> rows;                   // selected word indices
  std::vector<std::vector<Rational>> inverse;      // inverse of the selected square block

  explicit WeightSolver(std::vector<std::vector<std::int64_t>> cols) : columns(std::move(cols)) {
    const std::size_t m = columns.size();
    if (m == 0) return;
    const std::size_t words = columns[0].size();
    // Greedy row selection by incremental elimination.
    std::vector<std::vector<Rational>> echelon;
    std::vector<std::size_t> pivots;
    for (std::size_t w = 0; w < words && rows.size() < m; ++w) {
      std::vector<Rational> row(m);
      bool any = false;
      for (std::size_t c = 0; c < m; ++c) {
        row[c] = columns[c][w];
        any = any || columns[c][w] != 0;
      }
      if (!any) continue;
      for (std::size_t e = 0; e < echelon.size(); ++e) {
        const Rational f = row[pivots[e]];
        if (f == 0) continue;
        for (std::size_t c = 0; c < m; ++c) row[c] -= f * echelon[e][c];
      }
      std::size_t piv = m;
      for (std::size_t c = 0; c < m; ++c) {
        if (row[c] != 0) {
          piv = c;
          break;
        }
      }
      if (piv == m) continue;
      const Rational lead = row[piv];
      for (auto& x : row) x /= lead;
      for (std::size_t e = 0; e < echelon.size(); ++e) {
        const Rational f = echelon[e][piv];
        if (f == 0) continue;
        for (std::size_t c = 0; c < m; ++c) echelon[e][c] -= f * row[c];
      }
      echelon.push_back(std::move(row));
      pivots.push_back(piv);
      rows.push_back(w);
    }
    if (rows.size() != m) throw std::logic_error("Lie leading terms are not independent");
    // Invert the selected block by Gauss-Jordan.
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(2 * m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t c = 0; c < m; ++c) a[i][c] = columns[c][rows[i]];
      a[i][m + i] = 1;
    }
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t piv = col;
      while (piv < m && a[piv][col] == 0) ++piv;
      if (piv == m) throw std::logic_error("singular Lie block");
      std::swap(a[piv], a[col]);
      const Rational lead = a[col][col];
      for (auto& x : a[col]) x /= lead;
      for (std::size_t i = 0; i < m; ++i) {
        if (i == col || a[i][col] == 0) continue;
        const Rational f = a[i][col];
        for (std::size_t c = 0; c < 2 * m; ++c) a[i][c] -= f * a[col][c];
      }
    }
    inverse.assign(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t c = 0; c < m; ++c) inverse[i][c] = a[i][m + c];
    }
  }

  std::vector<std::int64_t> solve(const std::vector<std::int64_t>& d) const {
    const std::size_t m = columns.size();
    std::vector<std::int64_t> out(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      Rational acc = 0;
      for (std::size_t j = 0; j < m; ++j) acc += inverse[i][j] * d[rows[j]];
      if (boost::multiprecision::denominator(acc) != 1) {
        throw std::logic_error("series is not a group element: non-integral Hall coordinate");
      }
      out[i] = static_cast<std::int64_t>(boost::multiprecision::numerator(acc));
    }
    for (std::size_t w = 0; w < d.size(); ++w) {
      std::int64_t acc = 0;
      for (std::size_t c = 0; c < m; ++c) acc = checked_add(acc, checked_mul(out[c], columns[c][w]));
      if (acc != d[w]) throw std::logic_error("series is not a group element: leading term not Lie");
    }
    return out;
  }
};

MagnusCoordinates::MagnusCoordinates(int rank, int nilpotency_class)
    : algebra_(rank, nilpotency_class), entries_(build_basis(rank, nilpotency_class)) {
  entry_series_.reserve(entries_.size());
  for (const auto& c : entries_) {
    if (c.is_generator()) {
      entry_series_.push_back(algebra_.generator(c.generator));
    } else {
      entry_series_.push_back(algebra_.commutator(entry_series_[c.left], entry_series_[c.right]));
    }
  }
  weight_begin_.assign(nilpotency_class + 2, static_cast<int>(entries_.size()));
  for (int i = static_cast<int>(entries_.size()) - 1; i >= 0; --i) {
    weight_begin_[entries_[i].weight] = i;
  }
  for (int w = nilpotency_class; w >= 1; --w) {
    weight_begin_[w] = std::min(weight_begin_[w], weight_begin_[w + 1]);
  }
  solvers_.resize(nilpotency_class + 1);
  for (int w = 1; w <= nilpotency_class; ++w) {
    std::vector<std::vector<std::int64_t>> cols;
    for (int i = weight_begin_[w]; i < weight_begin_[w + 1]; ++i) {
      cols.push_back(algebra_.homogeneous(entry_series_[i], w));
    }
    solvers_[w] = std::make_shared<const WeightSolver>(std::move(cols));
  }
}

MagnusAlgebra::Series MagnusCoordinates::series_of(const std::vector<std::int64_t>& exps) const {
  if (exps.size() != entries_.size()) throw std::invalid_argument("series_of: dimension mismatch");
  auto s = algebra_.one();
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] != 0) s = algebra_.mul(s, algebra_.power(entry_series_[i], exps[i]));
  }
  return s;
}

std::vector<std::int64_t> MagnusCoordinates::peel(MagnusAlgebra::Series s) const {
  if (s.size() != algebra_.dimension() || s[0] != 1) {
    throw std::logic_error("peel: series must have constant term 1");
  }
  std::vector<std::int64_t> coords(entries_.size(), 0);
  const int k = algebra_.max_degree();
  for (int w = 1; w <= k; ++w) {
    const auto lead = algebra_.homogeneous(s, w);
    const int begin = weight_begin_[w];
    const int end = weight_begin_[w + 1];
    if (begin == end) {
      for (auto c : lead) {
        if (c != 0) throw std::logic_error("peel: nonzero term with no basic commutators");
      }
      continue;
    }
    const auto e = solvers_[w]->solve(lead);
    auto layer = algebra_.one();
    for (int i = begin; i < end; ++i) {
      coords[i] = e[i - begin];
      if (coords[i] != 0) layer = algebra_.mul(layer, algebra_.power(entry_series_[i], coords[i]));
    }
    s = algebra_.mul(algebra_.inverse(layer), s);
  }
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] != 0) throw std::logic_error("peel: residual series is not the identity");
  }
  return coords;
}

}  // namespace nilcap
