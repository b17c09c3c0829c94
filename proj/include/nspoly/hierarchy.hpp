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

// Locality hierarchy L ⊆ NS2 ⊆ US2 ⊆ KS2 ⊆ S2.
//
// Every model set is a finite list of terms. A term owns a list of primary
// columns and, for the time-ordered models, a list of partner columns whose
// weighted sum must equal the primary sum. A box is a member when it equals
// the sum of all primary contributions with nonnegative weights.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nspoly/box.hpp"
#include "nspoly/lp.hpp"

namespace nspoly {

enum class ModelSet { L, NS2, US2, KS2, S2 };

inline constexpr std::array<ModelSet, 5> kModelSets{ModelSet::L, ModelSet::NS2, ModelSet::US2, ModelSet::KS2,
                                                    ModelSet::S2};

inline std::string_view name_of(ModelSet m) {
  switch (m) {
    case ModelSet::L:
      return "L";
    case ModelSet::NS2:
      return "NS2";
    case ModelSet::US2:
      return "US2";
    case ModelSet::KS2:
      return "KS2";
    case ModelSet::S2:
      return "S2";
  }
  return "?";
}

inline ModelSet parse_model_set(std::string_view s) {
  for (auto m : kModelSets)
    if (name_of(m) == s) return m;
  throw std::invalid_argument("unknown model set: " + std::string(s));
}

// Two parties P, Q grouped together against a third party R.
enum class Bipartition { AB_C, AC_B, BC_A, None };

inline constexpr std::array<Bipartition, 3> kBipartitions{Bipartition::AB_C, Bipartition::AC_B, Bipartition::BC_A};

inline std::string_view name_of(Bipartition g) {
  switch (g) {
    case Bipartition::AB_C:
      return "AB|C";
    case Bipartition::AC_B:
      return "AC|B";
    case Bipartition::BC_A:
      return "BC|A";
    case Bipartition::None:
      return "none";
  }
  return "?";
}

enum class Ordering { FirstSignalsSecond, SecondSignalsFirst, None };

struct StrategyColumn {
  Table behavior;
  Bipartition bipartition = Bipartition::None;
  Ordering ordering = Ordering::None;
  int third_party = -1;  // deterministic response code of R, -1 if not fixed
};

namespace hierarchy_detail {

struct Parties {
  int p, q, r;
};

inline Parties parties_of(Bipartition g) {
  switch (g) {
    case Bipartition::AB_C:
      return {0, 1, 2};
    case Bipartition::AC_B:
      return {0, 2, 1};
    case Bipartition::BC_A:
      return {1, 2, 0};
    case Bipartition::None:
      break;
  }
  throw std::invalid_argument("bipartition required");
}

inline unsigned input_bit(unsigned in, int party) { return (in >> (2 - party)) & 1u; }

// Table of a deterministic strategy: out(party, inputs) gives each output bit.
inline Table deterministic_table(const std::function<unsigned(int, unsigned)>& out) {
  Table t;
  for (unsigned in = 0; in < 8; ++in) {
    unsigned o = 0;
    for (int k = 0; k < 3; ++k) o |= (out(k, in) & 1u) << (2 - k);
    t[8 * in + o] = Rational(1);
  }
  return t;
}

// Output of a response code over `bits` input bits: code bit (bits-1-v) for input word v.
inline unsigned response(unsigned code, unsigned bits, unsigned word) { return (code >> ((1u << bits) - 1 - word)) & 1u; }

// Bipartite table on (P, Q) tensored with a deterministic R: pq(xp, xq, ap, aq).
inline Table product_table(const Parties& s, const std::function<Rational(unsigned, unsigned, unsigned, unsigned)>& pq,
                           unsigned r_code) {
  Table t;
  for (unsigned in = 0; in < 8; ++in) {
    const unsigned xp = input_bit(in, s.p), xq = input_bit(in, s.q), xr = input_bit(in, s.r);
    const unsigned ar = response(r_code, 1, xr);
    for (unsigned ap = 0; ap < 2; ++ap) {
      for (unsigned aq = 0; aq < 2; ++aq) {
        Rational v = pq(xp, xq, ap, aq);
        if (v.is_zero()) continue;
        const unsigned o = (ap << (2 - s.p)) | (aq << (2 - s.q)) | (ar << (2 - s.r));
        t[8 * in + o] = std::move(v);
      }
    }
  }
  return t;
}

inline Rational indicator(bool b) { return b ? Rational(1) : Rational(0); }

}  // namespace hierarchy_detail

// All 64 product response functions â(x), b̂(y), ĉ(z).
inline std::vector<StrategyColumn> deterministic_local_columns() {
  using namespace hierarchy_detail;
  std::vector<StrategyColumn> cols;
  for (unsigned code = 0; code < 64; ++code) {
    StrategyColumn c;
    c.behavior = deterministic_table([&](int k, unsigned in) {
      return response((code >> (2 * (2 - k))) & 3u, 1, input_bit(in, k));
    });
    cols.push_back(std::move(c));
  }
  return cols;
}

// P and Q both respond to (x_P, x_Q); R responds to x_R.
inline std::vector<StrategyColumn> bipartite_signaling_columns(Bipartition g) {
  using namespace hierarchy_detail;
  const Parties s = parties_of(g);
  std::vector<StrategyColumn> cols;
  cols.reserve(1024);
  for (unsigned cp = 0; cp < 16; ++cp) {
    for (unsigned cq = 0; cq < 16; ++cq) {
      for (unsigned cr = 0; cr < 4; ++cr) {
        StrategyColumn c;
        c.bipartition = g;
        c.third_party = static_cast<int>(cr);
        c.behavior = product_table(
            s,
            [&](unsigned xp, unsigned xq, unsigned ap, unsigned aq) {
              const unsigned w = 2 * xp + xq;
              return indicator(ap == response(cp, 2, w) && aq == response(cq, 2, w));
            },
            cr);
        cols.push_back(std::move(c));
      }
    }
  }
  return cols;
}

// Bipartite deterministic one-way strategies on (P, Q) for a fixed R response.
// FirstSignalsSecond: â_P(x_P), â_Q(x_P, x_Q). SecondSignalsFirst: the reverse.
inline std::vector<StrategyColumn> one_way_block_columns(Bipartition g, Ordering ord, unsigned r_code) {
  using namespace hierarchy_detail;
  if (ord == Ordering::None) throw std::invalid_argument("ordering required");
  const Parties s = parties_of(g);
  std::vector<StrategyColumn> cols;
  cols.reserve(64);
  for (unsigned c1 = 0; c1 < 4; ++c1) {
    for (unsigned c2 = 0; c2 < 16; ++c2) {
      StrategyColumn c;
      c.bipartition = g;
      c.ordering = ord;
      c.third_party = static_cast<int>(r_code);
      c.behavior = product_table(
          s,
          [&](unsigned xp, unsigned xq, unsigned ap, unsigned aq) {
            const unsigned w = 2 * xp + xq;
            if (ord == Ordering::FirstSignalsSecond)
              return indicator(ap == response(c1, 1, xp) && aq == response(c2, 2, w));
            return indicator(aq == response(c1, 1, xq) && ap == response(c2, 2, w));
          },
          r_code);
      cols.push_back(std::move(c));
    }
  }
  return cols;
}

inline std::vector<StrategyColumn> one_way_columns(Bipartition g, Ordering ord) {
  std::vector<StrategyColumn> cols;
  for (unsigned r = 0; r < 4; ++r) {
    auto block = one_way_block_columns(g, ord, r);
    cols.insert(cols.end(), block.begin(), block.end());
  }
  return cols;
}

// Bipartite no-signaling extremal boxes on (P, Q): 16 deterministic and 8 PR
// boxes â_P ⊕ â_Q = x_P x_Q ⊕ α x_P ⊕ β x_Q ⊕ γ, each with a deterministic R.
inline std::vector<StrategyColumn> ns2_columns(Bipartition g) {
  using namespace hierarchy_detail;
  const Parties s = parties_of(g);
  const Rational half(1, 2);
  std::vector<StrategyColumn> cols;
  cols.reserve(96);
  for (unsigned k = 0; k < 24; ++k) {
    for (unsigned cr = 0; cr < 4; ++cr) {
      StrategyColumn c;
      c.bipartition = g;
      c.third_party = static_cast<int>(cr);
      c.behavior = product_table(
          s,
          [&](unsigned xp, unsigned xq, unsigned ap, unsigned aq) {
            if (k < 16) return indicator(ap == response(k >> 2, 1, xp) && aq == response(k & 3u, 1, xq));
            const unsigned pr = k - 16;
            const unsigned rhs = (xp & xq) ^ (((pr >> 2) & 1u) & xp) ^ (((pr >> 1) & 1u) & xq) ^ (pr & 1u);
            return (ap ^ aq) == rhs ? half : Rational(0);
          },
          cr);
      cols.push_back(std::move(c));
    }
  }
  return cols;
}

// A term of a model: primary columns, and partner columns whose weighted sum
// must reproduce the primary sum. With share_third_party set, both sides must
// also give the same total weight to each deterministic response of R.
struct ModelTerm {
  std::vector<StrategyColumn> primary;
  std::vector<StrategyColumn> partner;
  bool share_third_party = false;
};

inline std::vector<ModelTerm> model_terms(ModelSet m) {
  std::vector<ModelTerm> terms;
  switch (m) {
    case ModelSet::L:
      terms.push_back({deterministic_local_columns(), {}});
      break;
    case ModelSet::NS2:
      for (auto g : kBipartitions) terms.push_back({ns2_columns(g), {}});
      break;
    case ModelSet::S2:
      for (auto g : kBipartitions) terms.push_back({bipartite_signaling_columns(g), {}});
      break;
    case ModelSet::KS2:
      for (auto g : kBipartitions)
        terms.push_back({one_way_columns(g, Ordering::FirstSignalsSecond), one_way_columns(g, Ordering::SecondSignalsFirst)});
      break;
    case ModelSet::US2:
      for (auto g : kBipartitions)
        terms.push_back({one_way_columns(g, Ordering::FirstSignalsSecond), one_way_columns(g, Ordering::SecondSignalsFirst),
                         true});
      break;
  }
  return terms;
}

namespace hierarchy_detail {

inline const std::vector<ModelTerm>& cached_terms(ModelSet m) {
  static const std::array<std::vector<ModelTerm>, 5> all{model_terms(ModelSet::L), model_terms(ModelSet::NS2),
                                                          model_terms(ModelSet::US2), model_terms(ModelSet::KS2),
                                                          model_terms(ModelSet::S2)};
  return all[static_cast<std::size_t>(m)];
}

}  // namespace hierarchy_detail

struct WeightedColumn {
  StrategyColumn column;
  Rational weight;
  std::size_t term = 0;
  bool partner = false;
};

struct MembershipCertificate {
  ModelSet model = ModelSet::L;
  std::vector<WeightedColumn> weights;  // nonzero weights only
  Table residual;                       // target minus the primary reconstruction

  bool residual_is_zero() const {
    return std::all_of(residual.begin(), residual.end(), [](const Rational& v) { return v.is_zero(); });
  }
};

// Recomputes the residual and checks every tie; true iff the certificate is exact.
inline bool check_certificate(const MembershipCertificate& cert, const Table& target) {
  std::unordered_map<std::size_t, std::pair<Table, Table>> sums;
  std::unordered_map<std::size_t, std::array<Rational, 4>> r_weight;  // primary minus partner
  Table total;
  for (const auto& wc : cert.weights) {
    if (wc.weight.sign() < 0) return false;
    if (wc.column.third_party >= 0) {
      auto& w = r_weight[wc.term][static_cast<std::size_t>(wc.column.third_party)];
      w = wc.partner ? w - wc.weight : w + wc.weight;
    }
    auto& [primary, partner] = sums[wc.term];
    Table& acc = wc.partner ? partner : primary;
    for (std::size_t i = 0; i < kEntries; ++i) {
      if (wc.column.behavior[i].is_zero()) continue;
      acc[i] += wc.weight * wc.column.behavior[i];
      if (!wc.partner) total[i] += wc.weight * wc.column.behavior[i];
    }
  }
  const auto& terms = hierarchy_detail::cached_terms(cert.model);
  for (const auto& [t, pair] : sums) {
    if (t >= terms.size()) return false;
    if (!terms[t].partner.empty() && pair.first != pair.second) return false;
    if (terms[t].share_third_party)
      for (const auto& w : r_weight[t])
        if (!w.is_zero()) return false;
  }
  return total == target && cert.residual_is_zero();
}

namespace hierarchy_detail {

struct LpLayout {
  LinearProgram lp;
  std::vector<std::pair<std::size_t, bool>> var_term;  // (term, partner) per weight variable
  std::vector<const StrategyColumn*> var_column;
};

// Rows of a tie that carry information: entries touched by the term, with
// duplicate rows (identical across all the term's columns) dropped.
inline std::vector<std::size_t> tie_rows(const ModelTerm& term) {
  std::vector<std::size_t> rows;
  std::vector<std::vector<Rational>> seen;
  for (std::size_t i = 0; i < kEntries; ++i) {
    std::vector<Rational> row;
    row.reserve(term.primary.size() + term.partner.size());
    bool any = false;
    for (const auto& c : term.primary) {
      row.push_back(c.behavior[i]);
      any = any || !c.behavior[i].is_zero();
    }
    for (const auto& c : term.partner) {
      row.push_back(c.behavior[i]);
      any = any || !c.behavior[i].is_zero();
    }
    if (!any || std::find(seen.begin(), seen.end(), row) != seen.end()) continue;
    seen.push_back(std::move(row));
    rows.push_back(i);
  }
  return rows;
}

// Σ primary + q·(target − uniform) = target, ties per term. With noise off,
// q is absent and the problem is pure feasibility.
inline LpLayout build(const std::vector<ModelTerm>& terms, const Table& target, bool with_noise) {
  LpLayout out;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    for (const auto& c : terms[t].primary) {
      out.var_term.emplace_back(t, false);
      out.var_column.push_back(&c);
    }
    for (const auto& c : terms[t].partner) {
      out.var_term.emplace_back(t, true);
      out.var_column.push_back(&c);
    }
  }
  const std::size_t nw = out.var_column.size();
  LinearProgram& lp = out.lp;
  lp.num_vars = nw + (with_noise ? 1 : 0);
  const Rational eighth(1, 8);
  for (std::size_t i = 0; i < kEntries; ++i) {
    RationalVector row(lp.num_vars);
    for (std::size_t v = 0; v < nw; ++v)
      if (!out.var_term[v].second) row[v] = out.var_column[v]->behavior[i];
    if (with_noise) row[nw] = target[i] - eighth;
    lp.eq.push_back(std::move(row));
    lp.eq_rhs.push_back(target[i]);
  }
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (terms[t].partner.empty()) continue;
    for (std::size_t i : tie_rows(terms[t])) {
      RationalVector row(lp.num_vars);
      for (std::size_t v = 0; v < nw; ++v) {
        if (out.var_term[v].first != t) continue;
        const Rational& e = out.var_column[v]->behavior[i];
        row[v] = out.var_term[v].second ? -e : e;
      }
      lp.eq.push_back(std::move(row));
      lp.eq_rhs.emplace_back(0);
    }
    if (!terms[t].share_third_party) continue;
    for (int r = 0; r < 4; ++r) {
      RationalVector row(lp.num_vars);
      for (std::size_t v = 0; v < nw; ++v) {
        if (out.var_term[v].first != t || out.var_column[v]->third_party != r) continue;
        row[v] = out.var_term[v].second ? Rational(-1) : Rational(1);
      }
      lp.eq.push_back(std::move(row));
      lp.eq_rhs.emplace_back(0);
    }
  }
  if (with_noise) {
    lp.objective.assign(lp.num_vars, Rational());
    lp.objective[nw] = Rational(1);
    lp.sense = Sense::Minimize;
  }
  return out;
}

inline MembershipCertificate certificate_from(ModelSet m, const LpLayout& layout, const RationalVector& x,
                                              const Table& target) {
  MembershipCertificate cert;
  cert.model = m;
  cert.residual = target;
  for (std::size_t v = 0; v < layout.var_column.size(); ++v) {
    if (x[v].is_zero()) continue;
    const auto& col = *layout.var_column[v];
    cert.weights.push_back({col, x[v], layout.var_term[v].first, layout.var_term[v].second});
    if (layout.var_term[v].second) continue;
    for (std::size_t i = 0; i < kEntries; ++i)
      if (!col.behavior[i].is_zero()) cert.residual[i] -= x[v] * col.behavior[i];
  }
  return cert;
}

}  // namespace hierarchy_detail

inline std::optional<MembershipCertificate> membership(const Box& b, ModelSet m) {
  using namespace hierarchy_detail;
  const auto layout = build(cached_terms(m), b.table(), false);
  const auto res = lp_solve(layout.lp);
  if (res.status != LpStatus::Optimal) return std::nullopt;
  auto cert = certificate_from(m, layout, *res.point, b.table());
  if (!check_certificate(cert, b.table())) throw std::logic_error("membership: certificate does not reconstruct the box");
  return cert;
}

struct NoiseResult {
  Rational q;
  MembershipCertificate certificate;  // for noisy(b, q)
};

// Minimal q with (1−q)·b + q·uniform in the model set, solved as one LP.
inline NoiseResult noise_resistance_with_certificate(const Box& b, ModelSet m) {
  using namespace hierarchy_detail;
  const auto layout = build(cached_terms(m), b.table(), true);
  const auto res = lp_solve(layout.lp);
  if (res.status != LpStatus::Optimal) throw std::logic_error("noise LP must be feasible and bounded");
  NoiseResult out;
  out.q = *res.value;
  const Table target = noisy_table(b.table(), out.q);
  out.certificate = certificate_from(m, layout, *res.point, target);
  if (!check_certificate(out.certificate, target))
    throw std::logic_error("noise_resistance: certificate does not reconstruct the noisy box");
  return out;
}

inline Rational noise_resistance(const Box& b, ModelSet m) { return noise_resistance_with_certificate(b, m).q; }

using NoiseRow = std::array<Rational, 5>;  // L, NS2, US2, KS2, S2

// Rows for each box, computed as independent LPs over `threads` workers.
inline std::vector<NoiseRow> noise_table(std::span<const Box> boxes, unsigned threads = 1) {
  for (auto m : kModelSets) (void)hierarchy_detail::cached_terms(m);
  std::vector<NoiseRow> rows(boxes.size());
  const std::size_t jobs = boxes.size() * kModelSets.size();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      const std::size_t i = j / kModelSets.size(), k = j % kModelSets.size();
      rows[i][k] = noise_resistance(boxes[i], kModelSets[k]);
    }
  };
  const unsigned n = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

// Ascending by S2, KS2, US2, NS2, then L; equal tuples keep their input order.
inline std::vector<std::size_t> paper_order(const std::vector<NoiseRow>& rows) {
  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = rows[a];
    const auto& y = rows[b];
    for (std::size_t k : {4u, 3u, 2u, 1u, 0u})
      if (x[k] != y[k]) return x[k] < y[k];
    return false;
  });
  return order;
}

// Groups of positions (in the given order) whose rows are identical.
inline std::vector<std::vector<std::size_t>> tied_groups(const std::vector<NoiseRow>& rows,
                                                         const std::vector<std::size_t>& order) {
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && rows[order[j]] == rows[order[i]]) ++j;
    if (j - i > 1) {
      std::vector<std::size_t> g;
      for (std::size_t k = i; k < j; ++k) g.push_back(k);
      groups.push_back(std::move(g));
    }
    i = j;
  }
  return groups;
}

}  // namespace nspoly
