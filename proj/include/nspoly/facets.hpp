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

// Facets of the local polytope and their use as Bell inequalities.
//
// An inequality B·P <= L is stored in canonical form: B is rewritten in the
// input-averaged correlator gauge (which the relabeling group preserves), any
// constant is folded into L, and (B, L) is scaled to coprime integers.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <vector>

#include "nspoly/box.hpp"
#include "nspoly/linalg.hpp"
#include "nspoly/polytope.hpp"
#include "nspoly/scenario.hpp"
#include "nspoly/symmetry.hpp"

namespace nspoly {

// Coprime integers: 4^n coefficients followed by the bound.
using CanonicalInequality = IntegerVector;

// Canonical form of coefficients·P <= bound over the n-party no-signaling space.
inline CanonicalInequality canonical_inequality(int n, std::span<const Rational> coefficients, const Rational& bound) {
  const std::size_t m = scenario::size(n);
  if (coefficients.size() != m) throw std::invalid_argument("canonical_inequality: wrong number of coefficients");
  const auto terms = scenario::correlator_terms(n);
  const RationalMatrix rows = scenario::correlator_map(n);
  const Rational offset = dot(coefficients, scenario::probabilities_from_correlators(n, RationalVector(terms.size())));
  RationalVector gauge(m + 1);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    RationalVector e(terms.size());
    e[k] = Rational(1);
    const Rational w = dot(coefficients, scenario::probabilities_from_correlators(n, e)) - offset;
    if (w.is_zero()) continue;
    for (std::size_t i = 0; i < m; ++i)
      if (!rows[k][i].is_zero()) gauge[i] += w * rows[k][i];
  }
  gauge[m] = bound - offset;
  return positive_integer_scaling(gauge);
}

inline CanonicalInequality canonical_inequality(const BellFunctional& f, const Rational& bound) {
  return canonical_inequality(kParties, f.coefficients, bound - f.offset);
}

inline BellInequality to_bell_inequality(const CanonicalInequality& c) {
  if (c.size() != kEntries + 1) throw std::invalid_argument("tripartite inequality has 65 integers");
  BellInequality out;
  for (std::size_t i = 0; i < kEntries; ++i) out.functional.coefficients[i] = Rational(c[i]);
  out.bound = Rational(c[kEntries]);
  return out;
}

inline Table coefficient_table(const CanonicalInequality& c) {
  Table t;
  for (std::size_t i = 0; i < kEntries; ++i) t[i] = Rational(c[i]);
  return t;
}

// Facets B·P <= L of the local polytope of the n-party scenario, canonical and sorted.
inline std::vector<CanonicalInequality> local_polytope_facets(int n, unsigned threads = 1) {
  VRepresentation v;
  v.vertices = scenario::deterministic_points(n);
  const HRepresentation h = enumerate_facets(v, threads);
  std::vector<CanonicalInequality> out;
  out.reserve(h.ineq.size());
  const std::size_t m = scenario::size(n);
  for (std::size_t r = 0; r < h.ineq.size(); ++r) {
    RationalVector b(m);
    for (std::size_t i = 0; i < m; ++i) b[i] = -h.ineq[r][i];
    out.push_back(canonical_inequality(n, b, -h.ineq_rhs[r]));
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw std::logic_error("local_polytope_facets: two facets share a canonical form");
  return out;
}

inline Rational local_bound(const BellFunctional& f) {
  static const std::vector<RationalVector> det = scenario::deterministic_points(kParties);
  std::optional<Rational> best;
  for (const auto& p : det) {
    Rational v = evaluate(f, to_table(p));
    if (!best || v > *best) best = std::move(v);
  }
  return *best;
}

enum class InequalityName { Positivity, CHSH, Mermin, GYNI };

inline std::string_view name_of(InequalityName n) {
  switch (n) {
    case InequalityName::Positivity:
      return "Positivity";
    case InequalityName::CHSH:
      return "CHSH";
    case InequalityName::Mermin:
      return "Mermin";
    case InequalityName::GYNI:
      return "GYNI";
  }
  return "?";
}

// CHSH between A and B restricted to the event c = 0 at z = 0:
// sum (-1)^(a+b+xy) P(ab0|xy0) <= 2 P_C(0|0). The plain CHSH with C ignored is
// the sum of this and its c = 1 twin, so it is valid but not a facet.
inline BellFunctional lifted_chsh_functional() {
  BellFunctional f;
  for (unsigned x = 0; x < 2; ++x)
    for (unsigned y = 0; y < 2; ++y)
      for (unsigned a = 0; a < 2; ++a)
        for (unsigned b = 0; b < 2; ++b) {
          const int sign = (a + b + x * y) % 2 ? -1 : 1;
          f.coefficients[entry_index(x, y, 0, a, b, 0)] += Rational(sign);
          if (x == 0 && y == 0) f.coefficients[entry_index(0, 0, 0, a, b, 0)] -= Rational(2);
        }
  return f;
}

inline std::vector<std::pair<InequalityName, BellInequality>> named_inequalities() {
  return {
      {InequalityName::Positivity, {negated_probability_functional(0), Rational(0)}},
      {InequalityName::CHSH, {lifted_chsh_functional(), Rational(0)}},
      {InequalityName::Mermin, {mermin_functional(), Rational(2)}},
      {InequalityName::GYNI, {gyni_functional(), Rational(1, 4)}},
  };
}

struct InequalityClass {
  std::size_t id = 0;
  CanonicalInequality representative;  // lexicographically smallest orbit member
  std::size_t orbit_size = 0;
  std::vector<std::size_t> members;  // indices into the facet list
  std::optional<InequalityName> name;
};

struct FacetCensus {
  std::vector<CanonicalInequality> facets;
  std::vector<InequalityClass> classes;
  std::vector<std::size_t> class_of;  // facet index -> class id

  std::optional<std::size_t> find(InequalityName n) const {
    for (const auto& c : classes)
      if (c.name == n) return c.id;
    return std::nullopt;
  }
};

inline CanonicalInequality apply(const Relabeling& g, const CanonicalInequality& c) {
  CanonicalInequality out = c;
  const auto perm = entry_permutation(g);
  for (std::size_t i = 0; i < kEntries; ++i) out[perm[i]] = c[i];
  return out;
}

// Groups tripartite facets into relabeling orbits and attaches the known names.
inline FacetCensus facet_classes(std::vector<CanonicalInequality> facets) {
  FacetCensus census;
  census.facets = std::move(facets);
  std::vector<Table> tables;
  tables.reserve(census.facets.size());
  for (const auto& f : census.facets) {
    if (f.size() != kEntries + 1) throw std::invalid_argument("facet_classes: tripartite facets expected");
    tables.push_back(coefficient_table(f));
  }
  ClassTable ct = orbit_partition_tables(tables);
  census.class_of = ct.class_of;
  std::map<Table, std::size_t> by_rep;
  for (auto& c : ct.classes) {
    InequalityClass ic;
    ic.id = c.id;
    ic.orbit_size = c.orbit_size;
    ic.members = std::move(c.members);
    const Integer& bound = census.facets[ic.members.front()][kEntries];
    for (std::size_t i = 0; i < kEntries; ++i) ic.representative.push_back(c.representative[i].numerator());
    ic.representative.push_back(bound);
    by_rep.emplace(c.representative, ic.id);
    census.classes.push_back(std::move(ic));
  }
  for (const auto& [name, ineq] : named_inequalities()) {
    const auto canon = canonical_inequality(ineq.functional, ineq.bound);
    const auto image = canonical_image(coefficient_table(canon)).first;
    auto it = by_rep.find(image);
    if (it != by_rep.end()) census.classes[it->second].name = name;
  }
  return census;
}

// Vertices as integer rows over a common denominator, for fast evaluation.
struct ScaledPoints {
  std::vector<std::array<std::int64_t, kEntries>> rows;
  std::vector<std::int64_t> scale;

  explicit ScaledPoints(std::span<const Table> points) {
    rows.reserve(points.size());
    for (const auto& t : points) {
      RationalVector v(t.begin(), t.end());
      Integer den = 1;
      for (const auto& x : v) den = lcm(den, x.denominator());
      std::array<std::int64_t, kEntries> r{};
      for (std::size_t i = 0; i < kEntries; ++i) {
        Integer z = v[i].numerator() * (den / v[i].denominator());
        r[i] = z.get_si();
      }
      rows.push_back(r);
      scale.push_back(den.get_si());
    }
  }

  Rational value(std::size_t k, std::span<const std::int64_t> coeff) const {
    __int128 s = 0;
    for (std::size_t i = 0; i < kEntries; ++i) s += static_cast<__int128>(coeff[i]) * rows[k][i];
    return Rational(static_cast<std::int64_t>(s), scale[k]);
  }
};

inline std::vector<std::int64_t> small_coefficients(const CanonicalInequality& c) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < kEntries; ++i) {
    if (!c[i].fits_slong_p()) throw std::overflow_error("inequality coefficient exceeds 64 bits");
    out.push_back(c[i].get_si());
  }
  return out;
}

struct ViolationRecord {
  std::size_t inequality_class = 0;
  Rational local_bound;
  Rational ns_max;
  std::vector<std::size_t> achieving_classes;  // vertex classes holding a maximizer
  std::size_t maximizers = 0;                  // vertices attaining ns_max
};

// Maximum of f over the given vertices and the classes of the maximizers.
inline ViolationRecord ns_max(const BellFunctional& f, std::span<const Table> vertices, const ClassTable& classes) {
  if (vertices.empty()) throw std::invalid_argument("ns_max: no vertices");
  ViolationRecord rec;
  std::vector<Rational> values;
  values.reserve(vertices.size());
  std::optional<Rational> best;
  for (const auto& v : vertices) {
    values.push_back(evaluate(f, v));
    if (!best || values.back() > *best) best = values.back();
  }
  rec.ns_max = *best;
  rec.local_bound = local_bound(f);
  std::set<std::size_t> cls;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (values[i] == rec.ns_max) {
      ++rec.maximizers;
      cls.insert(classes.class_of[i]);
    }
  rec.achieving_classes.assign(cls.begin(), cls.end());
  return rec;
}

// Same as ns_max for a canonical inequality class, using integer arithmetic.
inline ViolationRecord class_violation(const FacetCensus& census, std::size_t ineq_class, const ScaledPoints& points,
                                       const ClassTable& classes) {
  const auto& rep = census.classes.at(ineq_class).representative;
  const auto coeff = small_coefficients(rep);
  ViolationRecord rec;
  rec.inequality_class = ineq_class;
  rec.local_bound = Rational(rep[kEntries]);
  std::optional<Rational> best;
  std::vector<Rational> values(points.rows.size());
  for (std::size_t k = 0; k < points.rows.size(); ++k) {
    values[k] = points.value(k, coeff);
    if (!best || values[k] > *best) best = values[k];
  }
  rec.ns_max = *best;
  std::set<std::size_t> cls;
  for (std::size_t k = 0; k < values.size(); ++k)
    if (values[k] == rec.ns_max) {
      ++rec.maximizers;
      cls.insert(classes.class_of[k]);
    }
  rec.achieving_classes.assign(cls.begin(), cls.end());
  return rec;
}

// Number of vertices in each class attaining value `target` of f.
inline std::vector<std::size_t> attaining_counts(const BellFunctional& f, const Rational& target,
                                                 std::span<const Table> vertices, const ClassTable& classes) {
  std::vector<std::size_t> counts(classes.classes.size(), 0);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (evaluate(f, vertices[i]) == target) ++counts[classes.class_of[i]];
  return counts;
}

enum class BoundaryCategory { Violates, Tight, Interior };

inline std::string_view name_of(BoundaryCategory c) {
  switch (c) {
    case BoundaryCategory::Violates:
      return "violates";
    case BoundaryCategory::Tight:
      return "tight";
    case BoundaryCategory::Interior:
      return "interior";
  }
  return "?";
}

struct BoundaryResult {
  BoundaryCategory category = BoundaryCategory::Interior;
  Rational value;  // noise threshold if violated, 0 if tight, negative slack otherwise
};

// Position of box b relative to all members of one inequality class.
inline BoundaryResult noise_to_class_boundary(const Table& b, const FacetCensus& census, std::size_t ineq_class) {
  const auto& cls = census.classes.at(ineq_class);
  const Rational eighth(1, 8);
  std::optional<Rational> violation, slack;
  bool tight = false;
  for (std::size_t idx : cls.members) {
    const auto& c = census.facets[idx];
    Rational v, u;
    for (std::size_t i = 0; i < kEntries; ++i) {
      if (c[i] == 0) continue;
      const Rational ci(c[i]);
      if (!b[i].is_zero()) v += ci * b[i];
      u += ci;
    }
    u *= eighth;
    const Rational L(c[kEntries]);
    if (v > L) {
      Rational t = (v - L) / (v - u);
      if (!violation || t > *violation) violation = std::move(t);
    } else if (v == L) {
      tight = true;
    } else {
      Rational s = (v - L) / (L - u);
      if (!slack || s > *slack) slack = std::move(s);
    }
  }
  if (violation) return {BoundaryCategory::Violates, *violation};
  if (tight) return {BoundaryCategory::Tight, Rational()};
  return {BoundaryCategory::Interior, *slack};
}

// boundary[box][ineq] for every pair, spread over `threads` workers.
inline std::vector<std::vector<BoundaryResult>> boundary_table(std::span<const Table> boxes, const FacetCensus& census,
                                                               unsigned threads = 1) {
  std::vector<std::vector<BoundaryResult>> out(boxes.size(), std::vector<BoundaryResult>(census.classes.size()));
  const std::size_t jobs = boxes.size() * census.classes.size();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      const std::size_t i = j / census.classes.size(), k = j % census.classes.size();
      out[i][k] = noise_to_class_boundary(boxes[i], census, k);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, threads); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

struct BestInequality {
  std::optional<Rational> threshold;       // absent when no inequality is violated
  std::vector<std::size_t> ineq_classes;   // all classes attaining the threshold
};

// For each box, the inequality classes with the largest violation threshold.
inline std::vector<BestInequality> best_inequality_per_class(const std::vector<std::vector<BoundaryResult>>& table) {
  std::vector<BestInequality> out;
  for (const auto& row : table) {
    BestInequality best;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k].category != BoundaryCategory::Violates) continue;
      if (!best.threshold || row[k].value > *best.threshold) {
        best.threshold = row[k].value;
        best.ineq_classes = {k};
      } else if (row[k].value == *best.threshold) {
        best.ineq_classes.push_back(k);
      }
    }
    out.push_back(std::move(best));
  }
  return out;
}

}  // namespace nspoly
