// Copyright 2026 The nspoly Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense exact linear algebra over Rational.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "nspoly/rational.hpp"

namespace nspoly {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;
using IntegerVector = std::vector<Integer>;

inline Rational reduce(const Integer& n, const Integer& d) {
  if (d == 0) throw std::domain_error("division by zero");
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(q);
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() || b[i].is_zero()) continue;
    s += a[i] * b[i];
  }
  return s;
}

inline void check_rectangular(const RationalMatrix& m) {
  for (const auto& row : m) {
    if (row.size() != m.front().size()) throw std::invalid_argument("matrix rows have unequal length");
  }
}

inline RationalMatrix transpose(const RationalMatrix& m) {
  if (m.empty()) return {};
  check_rectangular(m);
  RationalMatrix t(m.front().size(), RationalVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

inline RationalVector mat_vec(const RationalMatrix& a, std::span<const Rational> x) {
  RationalVector out;
  out.reserve(a.size());
  for (const auto& row : a) out.push_back(dot(row, x));
  return out;
}

namespace detail {

// Multiplies a row by the lcm of its denominators so every entry is integral.
inline void clear_denominators(RationalVector& row) {
  Integer l = 1;
  for (const auto& v : row) {
    if (!v.is_integer()) {
      Integer d = v.denominator();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
  }
  if (l == 1) return;
  Rational f(l);
  for (auto& v : row) v *= f;
}

struct Echelon {
  RationalMatrix rows;            // integer-valued, fraction-free echelon form
  std::vector<std::size_t> pivots;  // pivot column of each leading row
};

// Fraction-free (Bareiss) forward elimination. Only the first `ncols` columns
// are eligible as pivots; trailing columns are carried along.
inline Echelon bareiss(RationalMatrix m, std::size_t ncols) {
  for (auto& row : m) clear_denominators(row);
  Echelon e;
  const std::size_t nrows = m.size();
  const std::size_t width = nrows ? m.front().size() : 0;
  Rational prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t piv = r;
    while (piv < nrows && m[piv][c].is_zero()) ++piv;
    if (piv == nrows) continue;
    std::swap(m[r], m[piv]);
    const Rational p = m[r][c];
    for (std::size_t i = r + 1; i < nrows; ++i) {
      const Rational f = m[i][c];
      for (std::size_t j = c + 1; j < width; ++j) {
        Rational v = p * m[i][j];
        if (!f.is_zero() && !m[r][j].is_zero()) v -= f * m[r][j];
        m[i][j] = v / prev;
      }
      m[i][c] = Rational();
    }
    prev = p;
    e.pivots.push_back(c);
    ++r;
  }
  m.resize(nrows);
  e.rows = std::move(m);
  return e;
}

}  // namespace detail

inline std::size_t rank(const RationalMatrix& m) {
  if (m.empty()) return 0;
  check_rectangular(m);
  return detail::bareiss(m, m.front().size()).pivots.size();
}

// Any exact solution of a·x = b, or nullopt when the system is inconsistent.
inline std::optional<RationalVector> solve_linear(const RationalMatrix& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("solve_linear: row count differs from rhs length");
  if (a.empty()) return RationalVector{};
  check_rectangular(a);
  const std::size_t n = a.front().size();
  RationalMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto e = detail::bareiss(std::move(aug), n);
  const std::size_t r = e.pivots.size();
  for (std::size_t i = r; i < e.rows.size(); ++i) {
    if (!e.rows[i][n].is_zero()) return std::nullopt;
  }
  RationalVector x(n);
  for (std::size_t k = r; k-- > 0;) {
    const auto& row = e.rows[k];
    Rational s = row[n];
    for (std::size_t j = e.pivots[k] + 1; j < n; ++j) {
      if (!row[j].is_zero() && !x[j].is_zero()) s -= row[j] * x[j];
    }
    x[e.pivots[k]] = s / row[e.pivots[k]];
  }
  return x;
}

// Scales v by a positive factor to coprime integers (direction preserved).
inline IntegerVector positive_integer_scaling(std::span<const Rational> v) {
  Integer l = 1;
  bool nonzero = false;
  for (const auto& x : v) {
    if (x.is_zero()) continue;
    nonzero = true;
    Integer d = x.denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  if (!nonzero) throw std::invalid_argument("primitive integer form of the zero vector");
  IntegerVector out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer n = x.numerator() * (l / x.denominator());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    out.push_back(std::move(n));
  }
  for (auto& x : out) x /= g;
  return out;
}

// Scales v to coprime integers with its first nonzero entry positive.
inline IntegerVector primitive_integer_form(std::span<const Rational> v) {
  IntegerVector out = positive_integer_scaling(v);
  auto first = std::find_if(out.begin(), out.end(), [](const Integer& x) { return x != 0; });
  if (first != out.end() && *first < 0) {
    for (auto& x : out) x = -x;
  }
  return out;
}

// Reduced row echelon form with exact rationals; returns pivot columns.
inline std::vector<std::size_t> rref(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    const Rational inv = m[r][c].reciprocal();
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

// Basis of {x : a·x = 0}, one vector per free column of the rref.
inline RationalMatrix nullspace(const RationalMatrix& a, std::size_t ncols) {
  RationalMatrix m = a;
  auto piv = rref(m);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : piv) is_pivot[c] = true;
  RationalMatrix basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(ncols);
    v[f] = Rational(1);
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m[k][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace nspoly
