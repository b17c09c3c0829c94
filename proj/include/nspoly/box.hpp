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

// Tripartite behaviors P(abc|xyz) with binary inputs and outputs.
//
// Outputs are stored in the 0/1 convention â, b̂, ĉ; the ±1 values are
// a = (-1)^â etc. Entry index = 8·(4x+2y+z) + (4â+2b̂+ĉ).

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nspoly/linalg.hpp"
#include "nspoly/scenario.hpp"

namespace nspoly {

inline constexpr int kParties = 3;
inline constexpr std::size_t kEntries = 64;
inline constexpr std::size_t kCorrelators = 26;

using Table = std::array<Rational, kEntries>;

constexpr std::size_t entry_index(unsigned x, unsigned y, unsigned z, unsigned a, unsigned b, unsigned c) {
  return 8 * (4 * x + 2 * y + z) + (4 * a + 2 * b + c);
}

struct TableHash {
  std::size_t operator()(const Table& t) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const auto& v : t) h = (h ^ v.hash()) * 0x100000001b3ULL;
    return h;
  }
};

inline Table to_table(std::span<const Rational> v) {
  if (v.size() != kEntries) throw std::invalid_argument("a behavior has 64 entries");
  Table t;
  std::copy(v.begin(), v.end(), t.begin());
  return t;
}

inline RationalVector to_vector(const Table& t) { return RationalVector(t.begin(), t.end()); }

struct Violation {
  std::string family;  // positivity | normalization | no-signaling(C->AB) | no-signaling(A->BC) | no-signaling(B->CA)
  std::string detail;
};

struct ValidityReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  bool has_family(std::string_view f) const {
    for (const auto& v : violations)
      if (v.family == f) return true;
    return false;
  }
};

// Every violated positivity, normalization and no-signaling constraint.
inline ValidityReport validate(const Table& p) {
  ValidityReport r;
  for (unsigned in = 0; in < 8; ++in) {
    for (unsigned out = 0; out < 8; ++out) {
      const auto& v = p[8 * in + out];
      if (v.sign() < 0) {
        r.violations.push_back({"positivity", "P(" + std::to_string(out >> 2) + std::to_string((out >> 1) & 1) +
                                                  std::to_string(out & 1) + "|" + std::to_string(in >> 2) +
                                                  std::to_string((in >> 1) & 1) + std::to_string(in & 1) + ") = " + v.str()});
      }
    }
  }
  for (unsigned in = 0; in < 8; ++in) {
    Rational s;
    for (unsigned out = 0; out < 8; ++out) s += p[8 * in + out];
    if (s != Rational(1)) {
      r.violations.push_back({"normalization", "inputs xyz=" + std::to_string(in >> 2) + std::to_string((in >> 1) & 1) +
                                                   std::to_string(in & 1) + " sum to " + s.str()});
    }
  }
  // Party k's input must not change the marginal of the other two.
  static constexpr const char* kFamilies[3] = {"no-signaling(A->BC)", "no-signaling(B->CA)", "no-signaling(C->AB)"};
  for (int k = 0; k < 3; ++k) {
    const unsigned kb = 1u << (2 - k);
    for (unsigned in = 0; in < 8; ++in) {
      if (in & kb) continue;
      for (unsigned out = 0; out < 8; ++out) {
        if (out & kb) continue;
        Rational m0 = p[8 * in + out] + p[8 * in + (out | kb)];
        Rational m1 = p[8 * (in | kb) + out] + p[8 * (in | kb) + (out | kb)];
        if (m0 != m1) {
          r.violations.push_back({kFamilies[k], "inputs " + std::to_string(in) + " vs " + std::to_string(in | kb) +
                                                    ", outputs " + std::to_string(out) + ": " + m0.str() + " != " + m1.str()});
        }
      }
    }
  }
  return r;
}

class InvalidBehavior : public std::invalid_argument {
 public:
  explicit InvalidBehavior(ValidityReport report)
      : std::invalid_argument("not a valid behavior"), report_(std::move(report)) {}
  const ValidityReport& report() const { return report_; }

 private:
  ValidityReport report_;
};

// A valid no-signaling behavior.
class Box {
 public:
  Box() : Box(uniform_table()) {}

  static Box from_table(const Table& t) {
    auto rep = validate(t);
    if (!rep.valid()) throw InvalidBehavior(std::move(rep));
    return Box(t);
  }
  static Box from_vector(std::span<const Rational> v) { return from_table(to_table(v)); }
  // For tables that are valid by construction (vertex lists, relabelings).
  static Box trusted(const Table& t) { return Box(t); }

  static Box uniform() { return Box(uniform_table()); }

  const Table& table() const { return p_; }
  const Rational& operator[](std::size_t i) const { return p_[i]; }
  const Rational& at(unsigned x, unsigned y, unsigned z, unsigned a, unsigned b, unsigned c) const {
    return p_[entry_index(x, y, z, a, b, c)];
  }
  RationalVector vector() const { return to_vector(p_); }

  friend bool operator==(const Box&, const Box&) = default;
  friend auto operator<=>(const Box& a, const Box& b) {
    return std::lexicographical_compare_three_way(a.p_.begin(), a.p_.end(), b.p_.begin(), b.p_.end());
  }

 private:
  explicit Box(const Table& t) : p_(t) {}
  static Table uniform_table() {
    Table t;
    t.fill(Rational(1, 8));
    return t;
  }
  Table p_;
};

struct BoxHash {
  std::size_t operator()(const Box& b) const noexcept { return TableHash{}(b.table()); }
};

// ⟨A_x⟩, ⟨B_y⟩, ⟨C_z⟩, ⟨A_xB_y⟩, ⟨A_xC_z⟩, ⟨B_yC_z⟩, ⟨A_xB_yC_z⟩ in that order,
// inputs in binary order within each group.
class Correlators {
 public:
  Correlators() = default;
  explicit Correlators(std::span<const Rational> v) {
    if (v.size() != kCorrelators) throw std::invalid_argument("26 correlators expected");
    std::copy(v.begin(), v.end(), e_.begin());
  }

  enum Party { A = 0, B = 1, C = 2 };

  static constexpr std::size_t single_index(Party p, unsigned x) { return 2 * p + x; }
  static constexpr std::size_t pair_index(Party p, Party q, unsigned xp, unsigned xq) {
    // AB, AC, BC blocks
    const std::size_t block = (p == A && q == B) ? 0 : (p == A && q == C) ? 1 : 2;
    return 6 + 4 * block + 2 * xp + xq;
  }
  static constexpr std::size_t triple_index(unsigned x, unsigned y, unsigned z) { return 18 + 4 * x + 2 * y + z; }

  Rational& single(Party p, unsigned x) { return e_[single_index(p, x)]; }
  const Rational& single(Party p, unsigned x) const { return e_[single_index(p, x)]; }
  Rational& pair(Party p, Party q, unsigned xp, unsigned xq) { return e_[pair_index(p, q, xp, xq)]; }
  const Rational& pair(Party p, Party q, unsigned xp, unsigned xq) const { return e_[pair_index(p, q, xp, xq)]; }
  Rational& triple(unsigned x, unsigned y, unsigned z) { return e_[triple_index(x, y, z)]; }
  const Rational& triple(unsigned x, unsigned y, unsigned z) const { return e_[triple_index(x, y, z)]; }

  Rational& operator[](std::size_t i) { return e_[i]; }
  const Rational& operator[](std::size_t i) const { return e_[i]; }
  const std::array<Rational, kCorrelators>& values() const { return e_; }
  RationalVector vector() const { return RationalVector(e_.begin(), e_.end()); }

  friend bool operator==(const Correlators&, const Correlators&) = default;

 private:
  std::array<Rational, kCorrelators> e_;
};

// The affine reconstruction from correlators, without any validity check.
inline Table table_from_correlators(const Correlators& c) {
  return to_table(scenario::probabilities_from_correlators(kParties, c.vector()));
}

inline Box box_from_correlators(const Correlators& c) {
  Table t = table_from_correlators(c);
  auto rep = validate(t);
  if (!rep.valid()) throw InvalidBehavior(std::move(rep));
  return Box::trusted(t);
}

inline const RationalMatrix& correlator_rows() {
  static const RationalMatrix m = scenario::correlator_map(kParties);
  return m;
}

inline Correlators correlators_of_table(const Table& t) {
  const auto& m = correlator_rows();
  Correlators c;
  for (std::size_t k = 0; k < kCorrelators; ++k) c[k] = dot(m[k], t);
  return c;
}

inline Correlators correlators_from_box(const Box& b) { return correlators_of_table(b.table()); }

// Σ coefficients·P + offset.
struct BellFunctional {
  Table coefficients{};
  Rational offset;
};

inline Rational evaluate(const BellFunctional& f, const Table& p) {
  Rational s = f.offset;
  for (std::size_t i = 0; i < kEntries; ++i) {
    if (f.coefficients[i].is_zero() || p[i].is_zero()) continue;
    s += f.coefficients[i] * p[i];
  }
  return s;
}

inline Rational evaluate(const BellFunctional& f, const Box& b) { return evaluate(f, b.table()); }

// Functional Σ_k w_k E_k + offset over correlators, written on probabilities
// with the input-averaged correlator rows.
inline BellFunctional functional_from_correlator_weights(std::span<const Rational> w, const Rational& offset = Rational()) {
  if (w.size() != kCorrelators) throw std::invalid_argument("26 correlator weights expected");
  const auto& m = correlator_rows();
  BellFunctional f;
  f.offset = offset;
  for (std::size_t k = 0; k < kCorrelators; ++k) {
    if (w[k].is_zero()) continue;
    for (std::size_t i = 0; i < kEntries; ++i)
      if (!m[k][i].is_zero()) f.coefficients[i] += w[k] * m[k][i];
  }
  return f;
}

// Restriction of f to the no-signaling affine space: f = offset + Σ w_k E_k.
struct CorrelatorForm {
  std::array<Rational, kCorrelators> weights;
  Rational offset;
};

inline CorrelatorForm correlator_form(const BellFunctional& f) {
  CorrelatorForm out;
  Correlators zero;
  out.offset = evaluate(f, table_from_correlators(zero));
  for (std::size_t k = 0; k < kCorrelators; ++k) {
    Correlators e;
    e[k] = Rational(1);
    out.weights[k] = evaluate(f, table_from_correlators(e)) - out.offset;
  }
  return out;
}

// The same functional on no-signaling boxes, in the input-averaged gauge.
inline BellFunctional symmetric_gauge(const BellFunctional& f) {
  auto cf = correlator_form(f);
  return functional_from_correlator_weights(cf.weights, cf.offset);
}

// Convex combination; weights must be nonnegative and sum to one.
inline Box mix(std::span<const Box> boxes, std::span<const Rational> weights) {
  if (boxes.size() != weights.size() || boxes.empty()) throw std::invalid_argument("mix: boxes and weights must have equal nonzero length");
  Rational total;
  for (const auto& w : weights) {
    if (w.sign() < 0) throw std::invalid_argument("mix: negative weight");
    total += w;
  }
  if (total != Rational(1)) throw std::invalid_argument("mix: weights must sum to 1");
  Table t{};
  for (std::size_t j = 0; j < boxes.size(); ++j) {
    if (weights[j].is_zero()) continue;
    for (std::size_t i = 0; i < kEntries; ++i) {
      if (!boxes[j][i].is_zero()) t[i] += weights[j] * boxes[j][i];
    }
  }
  return Box::trusted(t);
}

// (1-q)·b + q/8.
inline Table noisy_table(const Table& b, const Rational& q) {
  const Rational keep = Rational(1) - q;
  const Rational add = q * Rational(1, 8);
  Table t;
  for (std::size_t i = 0; i < kEntries; ++i) t[i] = keep * b[i] + add;
  return t;
}

inline Box noisy(const Box& b, const Rational& q) {
  if (q.sign() < 0 || q > Rational(1)) throw std::invalid_argument("noisy: q must lie in [0, 1]");
  return Box::trusted(noisy_table(b.table(), q));
}

// ---------------------------------------------------------------------------
// Named behaviors.

enum class NamedBox { Det0, PRBC, Box3, Box44, Box45, Box46, Box46Prime, GHZ };

inline constexpr std::array<std::pair<NamedBox, std::string_view>, 8> kNamedBoxes{{
    {NamedBox::Det0, "Det0"},
    {NamedBox::PRBC, "PR-BC"},
    {NamedBox::Box3, "Box3"},
    {NamedBox::Box44, "Box44"},
    {NamedBox::Box45, "Box45"},
    {NamedBox::Box46, "Box46"},
    {NamedBox::Box46Prime, "Box46Prime"},
    {NamedBox::GHZ, "GHZ"},
}};

inline std::string_view name_of(NamedBox b) {
  for (auto [k, s] : kNamedBoxes)
    if (k == b) return s;
  return "?";
}

namespace detail {

inline Box full_correlation_box(const std::function<int(unsigned, unsigned, unsigned)>& value) {
  Correlators c;
  for (unsigned x = 0; x < 2; ++x)
    for (unsigned y = 0; y < 2; ++y)
      for (unsigned z = 0; z < 2; ++z) c.triple(x, y, z) = Rational(value(x, y, z));
  return box_from_correlators(c);
}

inline int parity_sign(unsigned e) { return e % 2 ? -1 : 1; }

}  // namespace detail

inline Box named_box(NamedBox which) {
  using P = Correlators::Party;
  switch (which) {
    case NamedBox::Det0: {
      Table t{};
      for (unsigned in = 0; in < 8; ++in) t[8 * in] = Rational(1);
      return Box::from_table(t);
    }
    case NamedBox::PRBC: {
      // â_x = 0, b̂_y ⊕ ĉ_z = yz.
      Table t{};
      for (unsigned x = 0; x < 2; ++x)
        for (unsigned y = 0; y < 2; ++y)
          for (unsigned z = 0; z < 2; ++z)
            for (unsigned b = 0; b < 2; ++b) t[entry_index(x, y, z, 0, b, b ^ (y & z))] = Rational(1, 2);
      return Box::from_table(t);
    }
    case NamedBox::Box3: {
      // â_0 ⊕ b̂_y = 1, â_1 ⊕ ĉ_0 = 1, â_1 ⊕ b̂_y ⊕ ĉ_1 = y; all other correlators 0.
      Correlators c;
      for (unsigned y = 0; y < 2; ++y) {
        c.pair(P::A, P::B, 0, y) = Rational(-1);
        c.triple(1, y, 1) = Rational(detail::parity_sign(y));
      }
      c.pair(P::A, P::C, 1, 0) = Rational(-1);
      return box_from_correlators(c);
    }
    case NamedBox::Box44:
      return detail::full_correlation_box([](unsigned x, unsigned y, unsigned z) { return detail::parity_sign(x & y & z); });
    case NamedBox::Box45:
      return detail::full_correlation_box([](unsigned x, unsigned y, unsigned z) { return detail::parity_sign(x * (y + z)); });
    case NamedBox::Box46:
      return detail::full_correlation_box(
          [](unsigned x, unsigned y, unsigned z) { return detail::parity_sign(x * y + x * z + y * z); });
    case NamedBox::Box46Prime:
      return detail::full_correlation_box(
          [](unsigned x, unsigned y, unsigned z) { return detail::parity_sign(1 + x + y + z + x * y + x * z + y * z); });
    case NamedBox::GHZ:
      // ⟨A1B0C0⟩ = ⟨A0B1C0⟩ = ⟨A0B0C1⟩ = -⟨A1B1C1⟩ = 1, even-parity triples 0.
      return detail::full_correlation_box([](unsigned x, unsigned y, unsigned z) {
        if ((x + y + z) % 2 == 0) return 0;
        return x & y & z ? -1 : 1;
      });
  }
  throw std::invalid_argument("unknown named box");
}

inline Box named_box(std::string_view name) {
  for (auto [k, s] : kNamedBoxes)
    if (s == name) return named_box(k);
  throw std::invalid_argument("unknown named box '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Bell functionals with a closed form.

// M3 = ⟨A1B0C0⟩ + ⟨A0B1C0⟩ + ⟨A0B0C1⟩ - ⟨A1B1C1⟩.
inline BellFunctional mermin_functional() {
  std::array<Rational, kCorrelators> w{};
  w[Correlators::triple_index(1, 0, 0)] = Rational(1);
  w[Correlators::triple_index(0, 1, 0)] = Rational(1);
  w[Correlators::triple_index(0, 0, 1)] = Rational(1);
  w[Correlators::triple_index(1, 1, 1)] = Rational(-1);
  return functional_from_correlator_weights(w);
}

// S = Σ_xyz (-1)^{xy+xz+yz} ⟨A_xB_yC_z⟩.
inline BellFunctional svetlichny_functional() {
  std::array<Rational, kCorrelators> w{};
  for (unsigned x = 0; x < 2; ++x)
    for (unsigned y = 0; y < 2; ++y)
      for (unsigned z = 0; z < 2; ++z)
        w[Correlators::triple_index(x, y, z)] = Rational(detail::parity_sign(x * y + x * z + y * z));
  return functional_from_correlator_weights(w);
}

// Guess-your-neighbour's-input winning probability.
inline BellFunctional gyni_functional() {
  BellFunctional f;
  const Rational q(1, 4);
  f.coefficients[entry_index(0, 0, 0, 0, 0, 0)] = q;
  f.coefficients[entry_index(0, 1, 1, 1, 1, 0)] = q;
  f.coefficients[entry_index(1, 0, 1, 0, 1, 1)] = q;
  f.coefficients[entry_index(1, 1, 0, 1, 0, 1)] = q;
  return f;
}

// ⟨A0B0⟩ + ⟨A0B1⟩ + ⟨A1B0⟩ - ⟨A1B1⟩, third party ignored.
inline BellFunctional chsh_functional() {
  using P = Correlators::Party;
  std::array<Rational, kCorrelators> w{};
  w[Correlators::pair_index(P::A, P::B, 0, 0)] = Rational(1);
  w[Correlators::pair_index(P::A, P::B, 0, 1)] = Rational(1);
  w[Correlators::pair_index(P::A, P::B, 1, 0)] = Rational(1);
  w[Correlators::pair_index(P::A, P::B, 1, 1)] = Rational(-1);
  return functional_from_correlator_weights(w);
}

// -P(000|000), so that "≤ 0" is positivity.
inline BellFunctional negated_probability_functional(std::size_t index = 0) {
  BellFunctional f;
  f.coefficients.at(index) = Rational(-1);
  return f;
}

}  // namespace nspoly
