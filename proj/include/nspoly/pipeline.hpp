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

// Cached end-to-end computations over a workspace, shared by the command-line
// tool and the acceptance runner.

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nspoly/box.hpp"
#include "nspoly/facets.hpp"
#include "nspoly/hierarchy.hpp"
#include "nspoly/io.hpp"
#include "nspoly/polytope.hpp"
#include "nspoly/scenario.hpp"
#include "nspoly/symmetry.hpp"
#include "nspoly/workspace.hpp"

namespace nspoly::pipeline {

struct Context {
  Workspace& ws;
  unsigned threads = 1;
  std::ostream* log = nullptr;

  void note(std::string_view msg) const {
    if (log) *log << msg << std::endl;
  }
};

inline int parties_for(std::string_view scenario) {
  if (scenario == "tripartite") return 3;
  if (scenario == "bipartite") return 2;
  throw std::invalid_argument("unknown scenario '" + std::string(scenario) + "' (expected tripartite or bipartite)");
}

inline std::string scenario_name(int n) {
  if (n == 3) return "tripartite";
  if (n == 2) return "bipartite";
  throw std::invalid_argument("only the bipartite and tripartite scenarios are supported");
}

inline std::vector<RationalVector> vertices(const Context& ctx, int n) {
  const std::string s = scenario_name(n), name = "vertices-" + s;
  bool computed = false;
  const auto text = ctx.ws.get_or_make(
      name, name + ".txt", "enumerate --scenario " + s,
      [&] {
        ctx.note("enumerating " + s + " no-signaling vertices");
        return io::write_vertex_file(enumerate_vertices(scenario::no_signaling_hrep(n), ctx.threads).vertices);
      },
      &computed);
  if (!computed) ctx.note("using cached " + name);
  return io::parse_vertex_file(text);
}

inline std::vector<CanonicalInequality> facets(const Context& ctx, int n) {
  const std::string s = scenario_name(n), name = "facets-" + s;
  bool computed = false;
  const auto text = ctx.ws.get_or_make(
      name, name + ".txt", "enumerate --facets --scenario " + s,
      [&] {
        ctx.note("enumerating " + s + " local polytope facets");
        return io::write_facet_file(local_polytope_facets(n, ctx.threads));
      },
      &computed);
  if (!computed) ctx.note("using cached " + name);
  return io::parse_facet_file(text);
}

struct VertexCensus {
  std::vector<Table> points;
  ClassTable classes;
};

// Tripartite vertices with their relabeling classes; the class file is stored
// as an artifact.
inline VertexCensus vertex_census(const Context& ctx) {
  VertexCensus out;
  for (const auto& v : vertices(ctx, 3)) out.points.push_back(to_table(v));
  out.classes = orbit_partition_tables(out.points);
  const auto text = io::write_class_file(io::class_records(out.classes));
  const auto cached = ctx.ws.load("classes");
  if (!cached || *cached != text) ctx.ws.store("classes", "classes.txt", text, "classify");
  return out;
}

inline std::vector<Box> class_representatives(const ClassTable& ct) {
  std::vector<Box> reps;
  for (const auto& c : ct.classes) reps.push_back(Box::trusted(c.representative));
  return reps;
}

// ---------------------------------------------------------------------------
// CSV tables. `label` maps a class id to the id printed in the output.

using Labels = std::vector<std::size_t>;

inline Labels canonical_labels(std::size_t n) {
  Labels l(n);
  for (std::size_t i = 0; i < n; ++i) l[i] = i;
  return l;
}

// 1-based rank of each class in the noise order.
inline Labels paper_labels(const std::vector<NoiseRow>& rows) {
  const auto order = paper_order(rows);
  Labels l(rows.size());
  for (std::size_t k = 0; k < order.size(); ++k) l[order[k]] = k + 1;
  return l;
}

inline std::string noise_csv(const std::vector<NoiseRow>& rows, const Labels& label) {
  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return label[a] < label[b]; });
  std::string s = io::csv_line({"class", "L", "NS2", "US2", "KS2", "S2"});
  for (std::size_t i : order) {
    std::vector<std::string> f{std::to_string(label[i])};
    for (const auto& q : rows[i]) f.push_back(q.str());
    s += io::csv_line(f);
  }
  return s;
}

inline std::vector<NoiseRow> parse_noise_csv(std::string_view text) {
  const auto table = io::parse_csv(text);
  if (table.empty() || table.front() != std::vector<std::string>{"class", "L", "NS2", "US2", "KS2", "S2"})
    throw io::FormatError("noise table: unexpected header");
  std::vector<NoiseRow> rows(table.size() - 1);
  std::vector<bool> seen(rows.size(), false);
  for (std::size_t r = 1; r < table.size(); ++r) {
    const auto& f = table[r];
    if (f.size() != 6) throw io::FormatError("noise table: expected 6 fields on row " + std::to_string(r));
    const std::size_t id = std::stoull(f[0]);
    if (id >= rows.size() || seen[id]) throw io::FormatError("noise table: bad class id " + f[0]);
    seen[id] = true;
    for (std::size_t k = 0; k < 5; ++k) rows[id][k] = Rational::parse(f[k + 1]);
  }
  return rows;
}

// Noise resistances of every class representative (canonical class order).
inline std::vector<NoiseRow> noise_rows(const Context& ctx, const ClassTable& ct) {
  bool computed = false;
  const auto text = ctx.ws.get_or_make(
      "noise-table", "noise-table.csv", "analyze",
      [&] {
        ctx.note("solving " + std::to_string(ct.classes.size() * kModelSets.size()) + " noise-resistance LPs");
        const auto reps = class_representatives(ct);
        return noise_csv(noise_table(reps, ctx.threads), canonical_labels(ct.classes.size()));
      },
      &computed);
  if (!computed) ctx.note("using cached noise-table");
  auto rows = parse_noise_csv(text);
  if (rows.size() != ct.classes.size()) throw WorkspaceError("cached noise table does not match the class list");
  return rows;
}

inline std::vector<ViolationRecord> violation_records(const FacetCensus& census, const VertexCensus& vc) {
  const ScaledPoints points(vc.points);
  std::vector<ViolationRecord> out;
  for (const auto& c : census.classes) out.push_back(class_violation(census, c.id, points, vc.classes));
  return out;
}

inline std::string join_labels(const std::vector<std::size_t>& ids, const Labels& label) {
  std::vector<std::size_t> l;
  for (auto i : ids) l.push_back(label[i]);
  std::sort(l.begin(), l.end());
  std::string s;
  for (std::size_t k = 0; k < l.size(); ++k) s += (k ? " " : "") + std::to_string(l[k]);
  return s;
}

inline std::string violation_csv(const FacetCensus& census, const std::vector<ViolationRecord>& recs,
                                 const Labels& box_label) {
  std::string s = io::csv_line({"ineq_class", "name", "local_bound", "ns_max", "achieving_classes"});
  for (const auto& r : recs) {
    const auto& c = census.classes[r.inequality_class];
    s += io::csv_line({std::to_string(c.id), c.name ? std::string(name_of(*c.name)) : "", r.local_bound.str(),
                       r.ns_max.str(), join_labels(r.achieving_classes, box_label)});
  }
  return s;
}

inline std::string boundary_csv(const std::vector<std::vector<BoundaryResult>>& table, const Labels& box_label) {
  std::vector<std::size_t> order(table.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return box_label[a] < box_label[b]; });
  std::string s = io::csv_line({"box_class", "ineq_class", "category", "value"});
  for (std::size_t i : order)
    for (std::size_t k = 0; k < table[i].size(); ++k)
      s += io::csv_line({std::to_string(box_label[i]), std::to_string(k), std::string(name_of(table[i][k].category)),
                         table[i][k].value.str()});
  return s;
}

inline bool integral_correlators(const Table& t) {
  const auto c = correlators_of_table(t);
  return std::all_of(c.values().begin(), c.values().end(),
                     [](const Rational& v) { return v == Rational(0) || v == Rational(1) || v == Rational(-1); });
}

inline std::string flags_csv(const ClassTable& ct, const Labels& label) {
  std::vector<std::size_t> order(ct.classes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return label[a] < label[b]; });
  std::string s = io::csv_line({"class", "size", "correlators_in_0_pm1"});
  for (std::size_t i : order)
    s += io::csv_line({std::to_string(label[i]), std::to_string(ct.classes[i].orbit_size),
                       integral_correlators(ct.classes[i].representative) ? "1" : "0"});
  return s;
}

// "ranks 6-7: classes 29 32" lines for groups of identical noise rows.
inline std::vector<std::string> tie_report(const std::vector<NoiseRow>& rows) {
  const auto order = paper_order(rows);
  std::vector<std::string> out;
  for (const auto& g : tied_groups(rows, order)) {
    std::string s = "ranks " + std::to_string(g.front() + 1) + "-" + std::to_string(g.back() + 1) + ": classes";
    for (auto k : g) s += " " + std::to_string(order[k]);
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Single-box inspection.

// Class id of a tripartite vertex by its canonical image, if listed.
inline std::optional<std::size_t> class_of(const Table& t, const std::vector<io::ClassRecord>& records) {
  const Table canon = canonical_image(t).first;
  for (const auto& r : records)
    if (r.representative == canon) return r.id;
  return std::nullopt;
}

struct Decomposition {
  std::vector<std::pair<Table, Rational>> terms;
};

// Convex weights expressing t over `points`; nullopt if t is outside their hull.
inline std::optional<Decomposition> convex_decomposition(const Table& t, std::span<const Table> points) {
  LinearProgram lp;
  lp.num_vars = points.size();
  for (std::size_t i = 0; i < kEntries; ++i) {
    RationalVector row(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) row[k] = points[k][i];
    lp.eq.push_back(std::move(row));
    lp.eq_rhs.push_back(t[i]);
  }
  lp.eq.push_back(RationalVector(points.size(), Rational(1)));
  lp.eq_rhs.push_back(Rational(1));
  const auto res = lp_solve(lp);
  if (res.status != LpStatus::Optimal) return std::nullopt;
  Decomposition d;
  for (std::size_t k = 0; k < points.size(); ++k)
    if (!(*res.point)[k].is_zero()) d.terms.emplace_back(points[k], (*res.point)[k]);
  return d;
}

}  // namespace nspoly::pipeline
