#pragma once

// Builders and independent oracles shared by the test binaries. Nothing here
// calls triangularize, invariant_exponents or dist.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "btpgl/lattice.hpp"

namespace btpgl::testing {

inline Matrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vector> out;
  std::size_t cols = 0;
  for (const auto& r : rows) {
    Vector v;
    for (long x : r) v.emplace_back(x);
    cols = v.size();
    out.push_back(std::move(v));
  }
  return Matrix::from_rows(out, cols);
}

inline Matrix diag(std::initializer_list<Scalar> entries) {
  std::vector<Scalar> v(entries);
  return Matrix::diagonal(v);
}

// Cofactor expansion: slow, but shares no code with the Bareiss determinant.
inline Scalar cofactor_det(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return Scalar(1);
  if (n == 1) return a(0, 0);
  Scalar total(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j).is_zero()) continue;
    Matrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    Scalar term = a(0, j) * cofactor_det(minor);
    total = (j % 2 == 0) ? total + term : total - term;
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t t = i; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

// Elementary-divisor exponents from determinantal divisors: d_k is the
// minimal valuation of the k x k minors and e_k = d_k - d_{k-1}.
inline std::vector<std::int64_t> determinantal_exponents(const PAdicContext& ctx, const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::int64_t> out;
  std::int64_t prev = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<std::size_t>> sets;
    subsets(n, k, sets);
    Valuation best = Valuation::infinity();
    for (const auto& rs : sets) {
      for (const auto& cs : sets) {
        Matrix m(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m(i, j) = a(rs[i], cs[j]);
        best = std::min(best, val(ctx, cofactor_det(m)));
      }
    }
    out.push_back(best.value() - prev);
    prev = best.value();
  }
  return out;
}

// Distance from containments: with T the coordinates of l2 in l1,
// p^s l2 in l1 iff s >= -minval(T) and l1 in p^r l2 iff r <= minval(T^-1).
inline std::int64_t containment_dist(const LatticeBasis& l1, const LatticeBasis& l2) {
  const PAdicContext& ctx = l1.ctx();
  Matrix t = solve(l1.matrix(), l2.matrix());
  return -min_valuation(ctx, t).value() - min_valuation(ctx, inverse(t)).value();
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }

  // u * p^e with e geometric, or zero.
  Scalar entry(std::int64_t p, std::int64_t max_val) {
    std::int64_t e = 0;
    while (e <= max_val && uniform(0, 1) == 1) ++e;
    if (e > max_val) return Scalar(0);
    std::int64_t u;
    do {
      u = uniform(-2 * p, 2 * p);
    } while (u % p == 0);
    return Scalar(u) * Scalar::power(mpz_class(static_cast<long>(p)), e);
  }

  Matrix integral(std::size_t rows, std::size_t cols, std::int64_t p, std::int64_t max_val) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = entry(p, max_val);
    return m;
  }

  Matrix nonsingular(std::size_t n, std::int64_t p, std::int64_t max_val) {
    while (true) {
      Matrix m = integral(n, n, p, max_val);
      if (!determinant(m).is_zero()) return m;
    }
  }

  // Product of random elementary operations over R, unit scalings with
  // denominators prime to p, and a permutation.
  Matrix unimodular(std::size_t n, std::int64_t p) {
    Matrix u = Matrix::identity(n);
    for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
      std::size_t i = static_cast<std::size_t>(uniform(0, n - 1));
      std::size_t j = static_cast<std::size_t>(uniform(0, n - 1));
      if (i == j) continue;
      Scalar f = entry(p, 3) / Scalar(unit(p));
      u.axpy_row(i, j, f);
    }
    for (std::size_t i = 0; i < n; ++i) u.scale_row(i, Scalar(unit(p), unit(p)));
    for (std::size_t i = n; i > 1; --i) u.swap_rows(i - 1, static_cast<std::size_t>(uniform(0, i - 1)));
    return u;
  }

  std::int64_t unit(std::int64_t p) {
    std::int64_t u;
    do {
      u = uniform(1, 3 * p);
    } while (u % p == 0);
    return uniform(0, 1) ? u : -u;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace btpgl::testing
