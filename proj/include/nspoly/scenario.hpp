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

// Bell scenarios with n parties, two inputs and two outputs each.
//
// A behavior is a vector of 4^n probabilities P(outputs|inputs) laid out
// inputs-major: index = 2^n * inputs + outputs, where both words carry the
// first party in their most significant bit. For three parties this is
// 8·(4x+2y+z) + (4â+2b̂+ĉ).

#include <algorithm>
#include <bit>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "nspoly/polytope.hpp"

namespace nspoly::scenario {

inline void check_parties(int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("scenario: only 1 to 3 parties are supported");
}

inline std::size_t size(int n) { return std::size_t{1} << (2 * n); }

inline std::size_t index(int n, unsigned inputs, unsigned outputs) { return (std::size_t{inputs} << n) | outputs; }

// Bit of party k (0 = first) inside an n-bit word.
inline unsigned bit(int n, int k, unsigned word) { return (word >> (n - 1 - k)) & 1u; }

// A correlator <Π_{k in subset} X_k> at fixed inputs of the parties in subset.
struct CorrelatorTerm {
  unsigned subset;  // party mask, first party in the most significant bit
  unsigned inputs;  // full n-bit input word; bits outside subset are zero
};

// Correlators ordered by subset size, then subset (first party first), then
// inputs in binary order: for three parties A0 A1 B0 B1 C0 C1, AB00..AB11,
// AC00..AC11, BC00..BC11, ABC000..ABC111.
inline std::vector<CorrelatorTerm> correlator_terms(int n) {
  check_parties(n);
  std::vector<unsigned> subsets;
  for (int s = 1; s <= n; ++s) {
    std::vector<unsigned> level;
    for (unsigned m = 1; m < (1u << n); ++m)
      if (std::popcount(m) == s) level.push_back(m);
    // Higher mask = earlier party set for equal size (A before B before C).
    std::sort(level.rbegin(), level.rend());
    subsets.insert(subsets.end(), level.begin(), level.end());
  }
  std::vector<CorrelatorTerm> terms;
  for (unsigned s : subsets) {
    const int k = std::popcount(s);
    for (unsigned local = 0; local < (1u << k); ++local) {
      // Spread the k local bits over the parties of s, first party = high bit.
      unsigned inputs = 0;
      int used = 0;
      for (int p = 0; p < n; ++p) {
        if (bit(n, p, s)) {
          unsigned b = (local >> (k - 1 - used)) & 1u;
          inputs |= b << (n - 1 - p);
          ++used;
        }
      }
      terms.push_back({s, inputs});
    }
  }
  return terms;
}

inline int output_sign(unsigned subset, unsigned outputs) {
  return std::popcount(subset & outputs) % 2 ? -1 : 1;
}

// Row t maps probabilities to correlator t, averaging over the inputs of the
// parties outside the subset.
inline RationalMatrix correlator_map(int n) {
  const auto terms = correlator_terms(n);
  const std::size_t m = size(n);
  RationalMatrix map(terms.size(), RationalVector(m));
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const auto& term = terms[t];
    const unsigned outside = ((1u << n) - 1) & ~term.subset;
    const Rational w(1, std::int64_t{1} << std::popcount(outside));
    for (unsigned in = 0; in < (1u << n); ++in) {
      if ((in & term.subset) != term.inputs) continue;
      for (unsigned out = 0; out < (1u << n); ++out) map[t][index(n, in, out)] = w * output_sign(term.subset, out);
    }
  }
  return map;
}

// P(o|i) = 2^-n [1 + Σ_terms sign·E] as a linear map on (1, E); no validity check.
inline RationalVector probabilities_from_correlators(int n, const RationalVector& corr) {
  const auto terms = correlator_terms(n);
  if (corr.size() != terms.size()) throw std::invalid_argument("wrong number of correlators");
  const std::size_t m = size(n);
  const Rational scale(1, std::int64_t{1} << n);
  RationalVector p(m, Rational(1));
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (corr[t].is_zero()) continue;
    for (unsigned in = 0; in < (1u << n); ++in) {
      if ((in & terms[t].subset) != terms[t].inputs) continue;
      for (unsigned out = 0; out < (1u << n); ++out) {
        auto& v = p[index(n, in, out)];
        v = output_sign(terms[t].subset, out) > 0 ? v + corr[t] : v - corr[t];
      }
    }
  }
  for (auto& v : p) v *= scale;
  return p;
}

inline RationalVector correlators_from_probabilities(int n, const RationalVector& p) {
  return mat_vec(correlator_map(n), p);
}

// Positivity, normalization and no-signaling for every party.
inline HRepresentation no_signaling_hrep(int n) {
  check_parties(n);
  const std::size_t m = size(n);
  const unsigned words = 1u << n;
  HRepresentation h;
  h.dimension = m;
  for (std::size_t i = 0; i < m; ++i) {
    RationalVector row(m);
    row[i] = Rational(1);
    h.ineq.push_back(std::move(row));
    h.ineq_rhs.emplace_back(0);
  }
  for (unsigned in = 0; in < words; ++in) {
    RationalVector row(m);
    for (unsigned out = 0; out < words; ++out) row[index(n, in, out)] = Rational(1);
    h.eq.push_back(std::move(row));
    h.eq_rhs.push_back(Rational(1));
  }
  // The marginal of everyone but party k must not depend on k's input.
  for (int k = 0; k < n; ++k) {
    const unsigned kb = 1u << (n - 1 - k);
    for (unsigned in = 0; in < words; ++in) {
      if (in & kb) continue;
      for (unsigned out = 0; out < words; ++out) {
        if (out & kb) continue;
        RationalVector row(m);
        for (unsigned ok = 0; ok < 2; ++ok) {
          const unsigned o = out | (ok ? kb : 0u);
          row[index(n, in, o)] += Rational(1);
          row[index(n, in | kb, o)] -= Rational(1);
        }
        h.eq.push_back(std::move(row));
        h.eq_rhs.emplace_back(0);
      }
    }
  }
  return h;
}

// Deterministic local behaviors: each party's output is a function of its own
// input. Response function r of a party maps input 0 to bit 1 of r and
// input 1 to bit 0 (r = 2·out(0) + out(1)).
inline std::vector<RationalVector> deterministic_points(int n) {
  check_parties(n);
  const std::size_t m = size(n);
  const unsigned words = 1u << n;
  std::vector<RationalVector> pts;
  const unsigned count = 1u << (2 * n);
  for (unsigned code = 0; code < count; ++code) {
    RationalVector p(m);
    for (unsigned in = 0; in < words; ++in) {
      unsigned out = 0;
      for (int k = 0; k < n; ++k) {
        const unsigned r = (code >> (2 * (n - 1 - k))) & 3u;
        const unsigned x = bit(n, k, in);
        const unsigned o = x ? (r & 1u) : (r >> 1);
        out |= o << (n - 1 - k);
      }
      p[index(n, in, out)] = Rational(1);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace nspoly::scenario
