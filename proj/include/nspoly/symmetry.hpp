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

// Local relabelings of parties, inputs and outputs.
//
// Every relabeling permutes the 64 table entries, so boxes and Bell
// functionals are acted on by the same permutation. Output flips may depend
// on the party's own input only.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "nspoly/box.hpp"

namespace nspoly {

struct Relabeling {
  std::array<std::uint8_t, 3> party_perm{0, 1, 2};  // old party k moves to position party_perm[k]
  std::array<bool, 3> input_swap{};                  // x_k -> x_k ⊕ 1
  std::array<std::array<bool, 2>, 3> output_flip{};  // â_k -> â_k ⊕ output_flip[k][x_k]

  friend bool operator==(const Relabeling&, const Relabeling&) = default;
  friend auto operator<=>(const Relabeling&, const Relabeling&) = default;
};

using EntryPermutation = std::array<std::uint8_t, kEntries>;

// new[perm[i]] = old[i].
inline EntryPermutation entry_permutation(const Relabeling& g) {
  EntryPermutation perm{};
  for (unsigned in = 0; in < 8; ++in) {
    for (unsigned out = 0; out < 8; ++out) {
      unsigned nin = 0, nout = 0;
      for (int k = 0; k < 3; ++k) {
        const unsigned x = (in >> (2 - k)) & 1u;
        const unsigned a = (out >> (2 - k)) & 1u;
        const unsigned nx = x ^ static_cast<unsigned>(g.input_swap[k]);
        const unsigned na = a ^ static_cast<unsigned>(g.output_flip[k][x]);
        const int pos = g.party_perm[k];
        nin |= nx << (2 - pos);
        nout |= na << (2 - pos);
      }
      perm[8 * in + out] = static_cast<std::uint8_t>(8 * nin + nout);
    }
  }
  return perm;
}

template <class T>
std::array<T, kEntries> permute(const EntryPermutation& perm, const std::array<T, kEntries>& v) {
  std::array<T, kEntries> out;
  for (std::size_t i = 0; i < kEntries; ++i) out[perm[i]] = v[i];
  return out;
}

struct BellInequality {
  BellFunctional functional;  // functional(P) <= bound
  Rational bound;
};

// The full group of 3! · 8^3 = 3072 relabelings with cached permutations.
class RelabelingGroup {
 public:
  static const RelabelingGroup& instance() {
    static const RelabelingGroup g;
    return g;
  }

  std::size_t size() const { return elements_.size(); }
  const std::vector<Relabeling>& elements() const { return elements_; }
  const Relabeling& operator[](std::size_t i) const { return elements_[i]; }
  const EntryPermutation& permutation(std::size_t i) const { return perms_[i]; }
  const EntryPermutation& inverse_permutation(std::size_t i) const { return inverse_[i]; }
  std::size_t identity() const { return 0; }

  std::size_t index_of(const Relabeling& g) const { return index_of(entry_permutation(g)); }
  std::size_t index_of(const EntryPermutation& p) const {
    auto it = by_perm_.find(p);
    if (it == by_perm_.end()) throw std::invalid_argument("permutation is not a local relabeling");
    return it->second;
  }

  // g∘h: apply h first, then g.
  std::size_t compose(std::size_t g, std::size_t h) const {
    EntryPermutation p{};
    for (std::size_t i = 0; i < kEntries; ++i) p[i] = perms_[g][perms_[h][i]];
    return index_of(p);
  }
  std::size_t inverse(std::size_t g) const { return index_of(inverse_[g]); }

 private:
  RelabelingGroup() {
    std::array<std::uint8_t, 3> perm{0, 1, 2};
    do {
      for (unsigned local = 0; local < 512; ++local) {
        Relabeling g;
        g.party_perm = perm;
        for (int k = 0; k < 3; ++k) {
          const unsigned bits = (local >> (3 * (2 - k))) & 7u;
          g.input_swap[k] = bits & 4u;
          g.output_flip[k][0] = bits & 2u;
          g.output_flip[k][1] = bits & 1u;
        }
        elements_.push_back(g);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      perms_.push_back(entry_permutation(elements_[i]));
      EntryPermutation inv{};
      for (std::size_t j = 0; j < kEntries; ++j) inv[perms_[i][j]] = static_cast<std::uint8_t>(j);
      inverse_.push_back(inv);
      by_perm_.emplace(perms_[i], i);
    }
  }

  std::vector<Relabeling> elements_;
  std::vector<EntryPermutation> perms_;
  std::vector<EntryPermutation> inverse_;
  std::map<EntryPermutation, std::size_t> by_perm_;
};

inline const std::vector<Relabeling>& all_relabelings() { return RelabelingGroup::instance().elements(); }

inline Table apply(const Relabeling& g, const Table& t) { return permute(entry_permutation(g), t); }
inline Box apply(const Relabeling& g, const Box& b) { return Box::trusted(apply(g, b.table())); }

// Contragredient action: evaluate(g·f, b) = evaluate(f, g⁻¹·b).
inline BellInequality apply_to_inequality(const Relabeling& g, const BellInequality& f) {
  BellInequality out;
  out.functional.coefficients = permute(entry_permutation(g), f.functional.coefficients);
  out.functional.offset = f.functional.offset;
  out.bound = f.bound;
  return out;
}

namespace detail {

// Order-preserving small codes for the distinct entries of a table.
inline std::array<std::uint16_t, kEntries> rank_codes(const Table& t, std::vector<Rational>& distinct) {
  distinct.assign(t.begin(), t.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::array<std::uint16_t, kEntries> codes{};
  for (std::size_t i = 0; i < kEntries; ++i)
    codes[i] = static_cast<std::uint16_t>(std::lower_bound(distinct.begin(), distinct.end(), t[i]) - distinct.begin());
  return codes;
}

}  // namespace detail

// Lexicographically smallest image of t under the group, plus the index of one
// element that attains it.
inline std::pair<Table, std::size_t> canonical_image(const Table& t) {
  const auto& group = RelabelingGroup::instance();
  std::vector<Rational> distinct;
  const auto codes = detail::rank_codes(t, distinct);
  std::array<std::uint16_t, kEntries> best{};
  std::size_t best_g = 0;
  bool have = false;
  for (std::size_t g = 0; g < group.size(); ++g) {
    const auto& inv = group.inverse_permutation(g);
    if (!have) {
      for (std::size_t j = 0; j < kEntries; ++j) best[j] = codes[inv[j]];
      have = true;
      continue;
    }
    // Compare lazily and stop at the first difference.
    std::size_t j = 0;
    while (j < kEntries && codes[inv[j]] == best[j]) ++j;
    if (j < kEntries && codes[inv[j]] < best[j]) {
      for (; j < kEntries; ++j) best[j] = codes[inv[j]];
      best_g = g;
    }
  }
  Table out;
  for (std::size_t j = 0; j < kEntries; ++j) out[j] = distinct[best[j]];
  return {out, best_g};
}

inline Box canonical_form(const Box& b) { return Box::trusted(canonical_image(b.table()).first); }

// Number of group elements fixing t.
inline std::size_t stabilizer_size(const Table& t) {
  const auto& group = RelabelingGroup::instance();
  std::size_t n = 0;
  for (std::size_t g = 0; g < group.size(); ++g)
    if (permute(group.permutation(g), t) == t) ++n;
  return n;
}

// All distinct images of t, sorted.
inline std::vector<Table> orbit(const Table& t) {
  const auto& group = RelabelingGroup::instance();
  std::vector<Table> out;
  out.reserve(group.size());
  for (std::size_t g = 0; g < group.size(); ++g) out.push_back(permute(group.permutation(g), t));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct EquivalenceClass {
  std::size_t id = 0;
  Table representative;  // canonical form
  std::size_t orbit_size = 0;
  std::vector<std::size_t> members;  // indices into the partitioned list
};

struct ClassTable {
  std::vector<EquivalenceClass> classes;
  std::vector<std::size_t> class_of;  // point index -> class id

  std::size_t total_members() const {
    std::size_t n = 0;
    for (const auto& c : classes) n += c.members.size();
    return n;
  }
};

// Groups tables by canonical form. Class ids follow the lexicographic order of
// the canonical representatives.
inline ClassTable orbit_partition_tables(std::span<const Table> points) {
  std::unordered_map<Table, std::size_t, TableHash> where;
  where.reserve(points.size() * 2);
  for (std::size_t i = 0; i < points.size(); ++i) where.emplace(points[i], i);

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> provisional(points.size(), kNone);
  std::vector<EquivalenceClass> found;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (provisional[i] != kNone || where.at(points[i]) != i) continue;
    EquivalenceClass cls;
    auto images = orbit(points[i]);
    cls.representative = images.front();
    cls.orbit_size = images.size();
    for (const auto& img : images) {
      auto it = where.find(img);
      if (it == where.end()) continue;
      provisional[it->second] = found.size();
    }
    found.push_back(std::move(cls));
  }
  // Repeated points all map to the first occurrence; record them explicitly.
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (provisional[i] == kNone) provisional[i] = provisional[where.at(points[i])];
    found[provisional[i]].members.push_back(i);
  }
  std::vector<std::size_t> order(found.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return found[a].representative < found[b].representative; });
  std::vector<std::size_t> new_id(found.size());
  ClassTable table;
  for (std::size_t k = 0; k < order.size(); ++k) {
    new_id[order[k]] = k;
    table.classes.push_back(std::move(found[order[k]]));
    table.classes.back().id = k;
  }
  table.class_of.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) table.class_of[i] = new_id[provisional[i]];
  return table;
}

inline ClassTable orbit_partition(std::span<const Box> points) {
  std::vector<Table> tables;
  tables.reserve(points.size());
  for (const auto& b : points) tables.push_back(b.table());
  return orbit_partition_tables(tables);
}

}  // namespace nspoly
