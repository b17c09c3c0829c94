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

// Exact double description method.
//
// Both conversions reduce to the same primitive: the extreme rays of a pointed
// polyhedral cone {x : R·x >= 0} with integer R. Vertex enumeration
// parametrizes the affine hull of the equalities and homogenizes; facet
// enumeration takes the cone of valid inequalities of the projected points.
//
// The cone engine is templated on its integer type. It first runs on
// overflow-checked 64-bit words and transparently restarts on GMP integers if
// any product overflows.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "nspoly/linalg.hpp"

namespace nspoly {

// {x : eq·x = eq_rhs, ineq·x >= ineq_rhs} in R^dimension.
struct HRepresentation {
  std::size_t dimension = 0;
  RationalMatrix eq;
  RationalVector eq_rhs;
  RationalMatrix ineq;
  RationalVector ineq_rhs;

  void validate() const {
    if (eq.size() != eq_rhs.size() || ineq.size() != ineq_rhs.size())
      throw std::invalid_argument("HRepresentation: row count differs from rhs length");
    for (const auto& r : eq)
      if (r.size() != dimension) throw std::invalid_argument("HRepresentation: equality row has wrong dimension");
    for (const auto& r : ineq)
      if (r.size() != dimension) throw std::invalid_argument("HRepresentation: inequality row has wrong dimension");
  }
};

struct VRepresentation {
  std::vector<RationalVector> vertices;
  std::vector<RationalVector> rays;
};

class PolytopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace dd {

class Overflow : public std::overflow_error {
 public:
  Overflow() : std::overflow_error("64-bit overflow in double description") {}
};

template <class Int>
struct IntOps;

template <>
struct IntOps<std::int64_t> {
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow();
    return r;
  }
  static std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow();
    return r;
  }
  static std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow();
    return r;
  }
  static std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
  static int sign(std::int64_t a) { return (a > 0) - (a < 0); }
  static std::int64_t from(const Integer& z) {
    if (!z.fits_slong_p() || z.get_si() == std::numeric_limits<long>::min()) throw Overflow();
    return z.get_si();
  }
  static Integer to_integer(std::int64_t v) { return Integer(static_cast<long>(v)); }
};

template <>
struct IntOps<Integer> {
  static Integer mul(const Integer& a, const Integer& b) { return a * b; }
  static Integer add(const Integer& a, const Integer& b) { return a + b; }
  static Integer sub(const Integer& a, const Integer& b) { return a - b; }
  static Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }
  static int sign(const Integer& a) { return sgn(a); }
  static Integer from(const Integer& z) { return z; }
  static Integer to_integer(const Integer& v) { return v; }
};

// Extreme rays of a pointed cone plus, for each, the set of constraints it
// satisfies with equality.
struct ConeRays {
  std::size_t dim = 0;
  std::vector<IntegerVector> rays;
  std::vector<std::vector<std::size_t>> tight;
};

template <class Int>
class ConeEnumerator {
  using Ops = IntOps<Int>;

 public:
  ConeEnumerator(const std::vector<IntegerVector>& rows, std::size_t dim, unsigned threads)
      : dim_(dim), threads_(std::max(1u, threads)) {
    rows_.reserve(rows.size() * dim);
    for (const auto& r : rows) {
      if (r.size() != dim) throw std::invalid_argument("cone constraint has wrong dimension");
      for (const auto& v : r) rows_.push_back(Ops::from(v));
    }
    nrows_ = rows.size();
    words_ = (nrows_ + 63) / 64;
    if (words_ == 0) words_ = 1;
  }

  ConeRays run() {
    initialize();
    for (std::size_t c = 0; c < nrows_; ++c) {
      if (!processed_[c]) add_constraint(c);
    }
    ConeRays out;
    out.dim = dim_;
    const std::size_t n = ray_count();
    out.rays.reserve(n);
    out.tight.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      IntegerVector r(dim_);
      for (std::size_t k = 0; k < dim_; ++k) r[k] = Ops::to_integer(rays_[j * dim_ + k]);
      out.rays.push_back(std::move(r));
      std::vector<std::size_t> t;
      for (std::size_t c = 0; c < nrows_; ++c)
        if (zero_[j * words_ + c / 64] >> (c % 64) & 1) t.push_back(c);
      out.tight.push_back(std::move(t));
    }
    return out;
  }

 private:
  std::size_t ray_count() const { return rays_.size() / dim_; }

  Int row_dot(std::size_t c, const Int* ray) const {
    Int s{};
    const Int* a = &rows_[c * dim_];
    for (std::size_t k = 0; k < dim_; ++k) {
      if (Ops::sign(a[k]) == 0 || Ops::sign(ray[k]) == 0) continue;
      s = Ops::add(s, Ops::mul(a[k], ray[k]));
    }
    return s;
  }

  // Simplicial start: the first `dim` linearly independent rows in index order.
  void initialize() {
    processed_.assign(nrows_, false);
    RationalMatrix basis;
    std::vector<std::size_t> chosen;
    for (std::size_t c = 0; c < nrows_ && chosen.size() < dim_; ++c) {
      RationalVector row(dim_);
      for (std::size_t k = 0; k < dim_; ++k) row[k] = Rational(Ops::to_integer(rows_[c * dim_ + k]));
      basis.push_back(row);
      if (rank(basis) == basis.size()) {
        chosen.push_back(c);
      } else {
        basis.pop_back();
      }
    }
    if (chosen.size() < dim_) throw PolytopeError("cone is not pointed (constraint rank deficient)");
    // Columns of the inverse: ray j is positive on row j and zero on the others.
    for (std::size_t j = 0; j < dim_; ++j) {
      RationalVector e(dim_);
      e[j] = Rational(1);
      auto sol = solve_linear(basis, e);
      if (!sol) throw PolytopeError("singular initial basis");
      IntegerVector r = positive_integer_scaling(*sol);
      for (const auto& v : r) rays_.push_back(Ops::from(v));
      zero_.resize(zero_.size() + words_, 0);
      std::uint64_t* z = &zero_[zero_.size() - words_];
      for (std::size_t i = 0; i < dim_; ++i)
        if (i != j) z[chosen[i] / 64] |= std::uint64_t{1} << (chosen[i] % 64);
    }
    for (auto c : chosen) processed_[c] = true;
  }

  struct Candidate {
    std::uint32_t pos, neg;
  };

  void add_constraint(std::size_t c) {
    const std::size_t n = ray_count();
    std::vector<Int> value(n);
    std::vector<std::uint32_t> pos, neg, zer;
    for (std::size_t j = 0; j < n; ++j) {
      value[j] = row_dot(c, &rays_[j * dim_]);
      int s = Ops::sign(value[j]);
      (s > 0 ? pos : s < 0 ? neg : zer).push_back(static_cast<std::uint32_t>(j));
    }
    processed_[c] = true;
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    if (neg.empty()) {
      for (auto j : zer) zero_[j * words_ + w] |= bit;
      return;
    }

    // Rays tight on each processed constraint, for the combinatorial test.
    std::vector<std::vector<std::uint32_t>> incidence(nrows_);
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t* z = &zero_[j * words_];
      for (std::size_t k = 0; k < words_; ++k) {
        std::uint64_t m = z[k];
        while (m) {
          int b = std::countr_zero(m);
          incidence[k * 64 + b].push_back(static_cast<std::uint32_t>(j));
          m &= m - 1;
        }
      }
    }

    const std::size_t need = dim_ >= 2 ? dim_ - 2 : 0;
    std::vector<std::vector<Candidate>> found(threads_);
    auto scan = [&](std::size_t t) {
      std::vector<std::uint64_t> common(words_);
      for (std::size_t pi = t; pi < pos.size(); pi += threads_) {
        const std::uint32_t p = pos[pi];
        const std::uint64_t* zp = &zero_[p * words_];
        for (std::uint32_t q : neg) {
          const std::uint64_t* zq = &zero_[q * words_];
          std::size_t cnt = 0;
          for (std::size_t k = 0; k < words_; ++k) {
            common[k] = zp[k] & zq[k];
            cnt += static_cast<std::size_t>(std::popcount(common[k]));
          }
          if (cnt < need) continue;
          if (adjacent(common, p, q, incidence)) found[t].push_back({p, q});
        }
      }
    };
    if (threads_ == 1) {
      scan(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < threads_; ++t) pool.emplace_back(scan, t);
      for (auto& th : pool) th.join();
    }
    // Deterministic merge: order by (pos index, neg index) regardless of schedule.
    std::vector<Candidate> all;
    for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
    std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
      return a.pos != b.pos ? a.pos < b.pos : a.neg < b.neg;
    });

    std::vector<Int> next_rays;
    std::vector<std::uint64_t> next_zero;
    next_rays.reserve((pos.size() + zer.size() + all.size()) * dim_);
    next_zero.reserve((pos.size() + zer.size() + all.size()) * words_);
    for (std::size_t j = 0; j < n; ++j) {
      if (Ops::sign(value[j]) < 0) continue;
      next_rays.insert(next_rays.end(), rays_.begin() + j * dim_, rays_.begin() + (j + 1) * dim_);
      next_zero.insert(next_zero.end(), zero_.begin() + j * words_, zero_.begin() + (j + 1) * words_);
      if (Ops::sign(value[j]) == 0) next_zero[next_zero.size() - words_ + w] |= bit;
    }
    std::vector<Int> r(dim_);
    for (const auto& cand : all) {
      const Int& vp = value[cand.pos];
      const Int& vn = value[cand.neg];
      const Int* rp = &rays_[cand.pos * dim_];
      const Int* rn = &rays_[cand.neg * dim_];
      Int g{};
      for (std::size_t k = 0; k < dim_; ++k) {
        r[k] = Ops::sub(Ops::mul(vp, rn[k]), Ops::mul(vn, rp[k]));
        g = Ops::gcd(g, r[k]);
      }
      if (Ops::sign(g) == 0) throw PolytopeError("degenerate ray combination");
      for (auto& v : r) v = v / g;
      next_rays.insert(next_rays.end(), r.begin(), r.end());
      for (std::size_t k = 0; k < words_; ++k) next_zero.push_back(zero_[cand.pos * words_ + k] & zero_[cand.neg * words_ + k]);
      next_zero[next_zero.size() - words_ + w] |= bit;
    }
    rays_ = std::move(next_rays);
    zero_ = std::move(next_zero);
  }

  // p and q are adjacent iff no third extreme ray is tight on all their
  // common tight constraints.
  bool adjacent(const std::vector<std::uint64_t>& common, std::uint32_t p, std::uint32_t q,
                const std::vector<std::vector<std::uint32_t>>& incidence) const {
    const std::vector<std::uint32_t>* shortest = nullptr;
    for (std::size_t k = 0; k < words_; ++k) {
      std::uint64_t m = common[k];
      while (m) {
        int b = std::countr_zero(m);
        const auto& list = incidence[k * 64 + b];
        if (!shortest || list.size() < shortest->size()) shortest = &list;
        m &= m - 1;
      }
    }
    if (!shortest) return true;  // only reachable for cones of dimension <= 2
    for (std::uint32_t j : *shortest) {
      if (j == p || j == q) continue;
      const std::uint64_t* z = &zero_[j * words_];
      bool superset = true;
      for (std::size_t k = 0; k < words_; ++k) {
        if (common[k] & ~z[k]) {
          superset = false;
          break;
        }
      }
      if (superset) return false;
    }
    return true;
  }

  std::size_t dim_;
  std::size_t nrows_ = 0;
  std::size_t words_ = 1;
  std::size_t threads_;
  std::vector<Int> rows_;
  std::vector<Int> rays_;
  std::vector<std::uint64_t> zero_;
  std::vector<bool> processed_;
};

inline ConeRays extreme_rays(const std::vector<IntegerVector>& rows, std::size_t dim, unsigned threads = 1) {
  try {
    return ConeEnumerator<std::int64_t>(rows, dim, threads).run();
  } catch (const Overflow&) {
    return ConeEnumerator<Integer>(rows, dim, threads).run();
  }
}

inline bool lex_less(const RationalVector& a, const RationalVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace dd

// All vertices of the bounded polytope h, sorted lexicographically.
inline VRepresentation enumerate_vertices(const HRepresentation& h, unsigned threads = 1) {
  h.validate();
  const std::size_t n = h.dimension;
  RationalVector x0(n);
  RationalMatrix basis;
  if (!h.eq.empty()) {
    auto p = solve_linear(h.eq, h.eq_rhs);
    if (!p) throw PolytopeError("empty polytope: equalities are inconsistent");
    x0 = *p;
    basis = nullspace(h.eq, n);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      RationalVector e(n);
      e[i] = Rational(1);
      basis.push_back(std::move(e));
    }
  }
  const std::size_t k = basis.size();

  // Homogenized constraints on (t, y) with x = x0 + basis·y / t, t >= 0 first.
  std::vector<IntegerVector> rows;
  {
    IntegerVector t(k + 1, Integer(0));
    t[0] = 1;
    rows.push_back(std::move(t));
  }
  for (std::size_t i = 0; i < h.ineq.size(); ++i) {
    RationalVector row(k + 1);
    row[0] = dot(h.ineq[i], x0) - h.ineq_rhs[i];
    bool trivial = true;
    for (std::size_t j = 0; j < k; ++j) {
      row[j + 1] = dot(h.ineq[i], basis[j]);
      if (!row[j + 1].is_zero()) trivial = false;
    }
    if (trivial) {
      if (row[0].sign() < 0) throw PolytopeError("empty polytope: constant inequality violated");
      continue;
    }
    rows.push_back(positive_integer_scaling(row));
  }

  VRepresentation v;
  if (k == 0) {
    v.vertices.push_back(x0);
    return v;
  }
  dd::ConeRays cone = dd::extreme_rays(rows, k + 1, threads);
  if (cone.rays.empty()) throw PolytopeError("empty polytope");
  for (const auto& r : cone.rays) {
    if (r[0] == 0) throw PolytopeError("unbounded polytope: ray detected");
  }
  v.vertices.reserve(cone.rays.size());
  for (const auto& r : cone.rays) {
    const Rational t(r[0]);
    RationalVector y(k);
    for (std::size_t j = 0; j < k; ++j) y[j] = Rational(r[j + 1]) / t;
    RationalVector x = x0;
    for (std::size_t j = 0; j < k; ++j) {
      if (y[j].is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (!basis[j][i].is_zero()) x[i] += basis[j][i] * y[j];
      }
    }
    v.vertices.push_back(std::move(x));
  }
  std::sort(v.vertices.begin(), v.vertices.end(), dd::lex_less);
  v.vertices.erase(std::unique(v.vertices.begin(), v.vertices.end()), v.vertices.end());
  return v;
}

// Facets of conv(v.vertices), each row a·x >= b scaled to coprime integers,
// plus the equalities of the affine hull. Sorted lexicographically.
inline HRepresentation enumerate_facets(const VRepresentation& v, unsigned threads = 1) {
  if (v.vertices.empty()) throw PolytopeError("enumerate_facets: no points");
  if (!v.rays.empty()) throw PolytopeError("enumerate_facets: rays are not supported");
  const std::size_t n = v.vertices.front().size();
  for (const auto& p : v.vertices)
    if (p.size() != n) throw std::invalid_argument("enumerate_facets: points have unequal dimension");
  const RationalVector& p0 = v.vertices.front();
  RationalMatrix dirs;
  for (const auto& p : v.vertices) {
    RationalVector d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = p[i] - p0[i];
    dirs.push_back(std::move(d));
  }
  RationalMatrix reduced = dirs;
  std::vector<std::size_t> coords = rref(reduced);
  const std::size_t k = coords.size();

  HRepresentation h;
  h.dimension = n;
  for (auto& c : nullspace(dirs, n)) {
    IntegerVector ci = primitive_integer_form(c);
    RationalVector row;
    for (auto& z : ci) row.emplace_back(z);
    h.eq_rhs.push_back(dot(row, p0));
    h.eq.push_back(std::move(row));
  }
  if (k == 0) return h;

  std::vector<IntegerVector> rows;
  rows.reserve(v.vertices.size());
  for (const auto& p : v.vertices) {
    RationalVector row(k + 1);
    row[0] = Rational(1);
    for (std::size_t j = 0; j < k; ++j) row[j + 1] = p[coords[j]];
    rows.push_back(positive_integer_scaling(row));
  }
  dd::ConeRays cone = dd::extreme_rays(rows, k + 1, threads);

  std::vector<std::pair<RationalVector, Rational>> facets;
  for (const auto& r : cone.rays) {
    RationalVector full(n + 1);
    for (std::size_t j = 0; j < k; ++j) full[coords[j]] = Rational(r[j + 1]);
    full[n] = -Rational(r[0]);
    IntegerVector s = positive_integer_scaling(full);
    RationalVector a;
    for (std::size_t i = 0; i < n; ++i) a.emplace_back(s[i]);
    facets.emplace_back(std::move(a), Rational(s[n]));
  }
  std::sort(facets.begin(), facets.end());
  for (auto& [a, b] : facets) {
    h.ineq.push_back(std::move(a));
    h.ineq_rhs.push_back(std::move(b));
  }
  return h;
}

// True iff the constraints active at p have full rank. Throws if p is infeasible.
inline bool is_vertex(const RationalVector& p, const HRepresentation& h) {
  h.validate();
  if (p.size() != h.dimension) throw std::invalid_argument("is_vertex: point has wrong dimension");
  RationalMatrix active;
  for (std::size_t i = 0; i < h.eq.size(); ++i) {
    if (dot(h.eq[i], p) != h.eq_rhs[i]) throw PolytopeError("is_vertex: point violates an equality");
    active.push_back(h.eq[i]);
  }
  for (std::size_t i = 0; i < h.ineq.size(); ++i) {
    Rational s = dot(h.ineq[i], p);
    if (s < h.ineq_rhs[i]) throw PolytopeError("is_vertex: point violates an inequality");
    if (s == h.ineq_rhs[i]) active.push_back(h.ineq[i]);
  }
  return rank(active) == h.dimension;
}

}  // namespace nspoly
