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

// The acceptance suite: one pass/fail line per criterion.

#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nspoly/pipeline.hpp"
#include "nspoly/reference.hpp"

namespace nspoly::verify {

struct CheckResult {
  std::string id;
  std::string title;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline std::string tuple_str(const NoiseRow& r) {
  std::string s = "(";
  for (std::size_t k = 0; k < r.size(); ++k) s += (k ? "," : "") + r[k].str();
  return s + ")";
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Set of inequalities (a, b) scaled to coprime integers, direction kept.
inline std::set<IntegerVector> inequality_set(const HRepresentation& h) {
  std::set<IntegerVector> out;
  for (std::size_t i = 0; i < h.ineq.size(); ++i) {
    RationalVector row = h.ineq[i];
    row.push_back(h.ineq_rhs[i]);
    out.insert(positive_integer_scaling(row));
  }
  return out;
}

inline std::set<RationalVector> point_set(const std::vector<RationalVector>& v) { return {v.begin(), v.end()}; }

inline HRepresentation cube(std::size_t d) {
  HRepresentation h;
  h.dimension = d;
  for (std::size_t i = 0; i < d; ++i)
    for (int s : {1, -1}) {
      RationalVector row(d);
      row[i] = Rational(s);
      h.ineq.push_back(row);
      h.ineq_rhs.push_back(Rational(s == 1 ? 0 : -1));
    }
  return h;
}

inline VRepresentation cross_polytope(std::size_t d) {
  VRepresentation v;
  for (std::size_t i = 0; i < d; ++i)
    for (int s : {1, -1}) {
      RationalVector p(d);
      p[i] = Rational(s);
      v.vertices.push_back(p);
    }
  return v;
}

inline std::size_t class_of_box(const Box& b, const ClassTable& ct) {
  const Table canon = canonical_image(b.table()).first;
  for (const auto& c : ct.classes)
    if (c.representative == canon) return c.id;
  throw std::logic_error("box is not a listed vertex class");
}

inline std::vector<std::size_t> matching_reference_rows(const NoiseRow& row, const std::vector<NoiseRow>& ref) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < ref.size(); ++k)
    if (ref[k] == row) out.push_back(k + 1);
  return out;
}

// Bipartite facets split into those some no-signaling vertex violates and the rest.
inline std::pair<std::size_t, std::size_t> bipartite_facet_split(const std::vector<CanonicalInequality>& facets,
                                                                 const std::vector<RationalVector>& ns_vertices) {
  std::size_t violated = 0;
  for (const auto& f : facets) {
    bool v = false;
    for (const auto& p : ns_vertices) {
      Rational s;
      for (std::size_t i = 0; i + 1 < f.size(); ++i) s += Rational(f[i]) * p[i];
      if (s > Rational(f.back())) v = true;
    }
    violated += v;
  }
  return {facets.size() - violated, violated};
}

}  // namespace detail

class Suite {
 public:
  Suite(const pipeline::Context& ctx, std::ostream& out) : ctx_(ctx), out_(out) {}

  void report(CheckResult r) {
    out_ << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title;
    if (!r.detail.empty()) out_ << ": " << r.detail;
    out_ << std::endl;
    results_.push_back(std::move(r));
  }

  // Runs a check, turning exceptions into failures.
  void run(const std::string& id, const std::string& title, const std::function<bool(std::string&)>& body) {
    CheckResult r{id, title, false, ""};
    try {
      r.pass = body(r.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail += std::string(r.detail.empty() ? "" : "; ") + "error: " + e.what();
    }
    report(std::move(r));
  }

  bool all_passed() const {
    return std::all_of(results_.begin(), results_.end(), [](const CheckResult& r) { return r.pass; });
  }
  const std::vector<CheckResult>& results() const { return results_; }

  void run_quick() {
    bipartite_vertices();
    bipartite_facets();
    named_rows();
    ghz_identity();
  }

  void run_full() {
    vertex_census();
    class_census();
    hierarchy_counts();
    noise_spot_values();
    facet_census();
    named_inequalities();
    mermin_census();
    ghz_identity();
    correlator_flags();
    best_inequality_census();
    property_suites();
  }

 private:
  const pipeline::VertexCensus& vc() {
    if (!vc_) vc_ = pipeline::vertex_census(ctx_);
    return *vc_;
  }
  const std::vector<NoiseRow>& rows() {
    if (!rows_) rows_ = pipeline::noise_rows(ctx_, vc().classes);
    return *rows_;
  }
  const FacetCensus& census() {
    if (!census_) census_ = facet_classes(pipeline::facets(ctx_, 3));
    return *census_;
  }
  const std::vector<BestInequality>& best() {
    if (!best_) {
      std::vector<Table> reps;
      for (const auto& c : vc().classes.classes) reps.push_back(c.representative);
      best_ = best_inequality_per_class(boundary_table(reps, census(), ctx_.threads));
    }
    return *best_;
  }

  void bipartite_vertices() {
    run("1b", "bipartite vertex enumeration", [&](std::string& d) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto v = enumerate_vertices(scenario::no_signaling_hrep(2), ctx_.threads);
      const double s = detail::seconds_since(t0);
      d = std::to_string(v.vertices.size()) + " vertices in " + std::to_string(s) + " s (expected 24 in < 1 s)";
      return v.vertices.size() == 24 && s < 1.0;
    });
  }

  void bipartite_facets() {
    run("5b", "bipartite facets", [&](std::string& d) {
      const auto f = local_polytope_facets(2, ctx_.threads);
      const auto ns = enumerate_vertices(scenario::no_signaling_hrep(2), ctx_.threads).vertices;
      const auto [positivity, chsh] = detail::bipartite_facet_split(f, ns);
      d = std::to_string(f.size()) + " facets: " + std::to_string(positivity) + " never violated by a no-signaling box, " +
          std::to_string(chsh) + " violated (expected 16 + 8)";
      return f.size() == 24 && positivity == 16 && chsh == 8;
    });
  }

  void named_rows() {
    run("4q", "noise rows of named boxes", [&](std::string& d) {
      const NoiseRow pr = noise_row(named_box(NamedBox::PRBC));
      const NoiseRow b44 = noise_row(named_box(NamedBox::Box44));
      d = "PR-BC " + detail::tuple_str(pr) + ", Box44 " + detail::tuple_str(b44);
      const auto ref = reference::noise_rows();
      return pr == ref[reference::kPrRow - 1] && b44 == ref[reference::kFullCorrelationRow - 1];
    });
  }

  static NoiseRow noise_row(const Box& b) {
    NoiseRow r;
    for (std::size_t k = 0; k < kModelSets.size(); ++k) r[k] = noise_resistance(b, kModelSets[k]);
    return r;
  }

  void vertex_census() {
    run("1", "vertex census", [&](std::string& d) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto& points = vc().points;
      const auto h = scenario::no_signaling_hrep(3);
      std::size_t invalid = 0, not_vertex = 0;
      for (const auto& p : points) {
        if (!validate(p).valid()) ++invalid;
        if (!is_vertex(to_vector(p), h)) ++not_vertex;
      }
      const auto bt0 = std::chrono::steady_clock::now();
      const auto bip = enumerate_vertices(scenario::no_signaling_hrep(2), ctx_.threads);
      const double bs = detail::seconds_since(bt0);
      d = std::to_string(points.size()) + " vertices, " + std::to_string(invalid) + " invalid, " +
          std::to_string(not_vertex) + " failing the vertex test; bipartite " + std::to_string(bip.vertices.size()) +
          " in " + std::to_string(bs) + " s; " + std::to_string(detail::seconds_since(t0)) + " s total";
      return points.size() == 53856 && invalid == 0 && not_vertex == 0 && bip.vertices.size() == 24 && bs < 1.0;
    });
  }

  void class_census() {
    run("2", "class census", [&](std::string& d) {
      const auto& ct = vc().classes;
      std::size_t sum = 0, size16 = 0, size3072 = 0, size64 = 0;
      for (const auto& c : ct.classes) {
        sum += c.orbit_size;
        size16 += c.orbit_size == 16;
        size3072 += c.orbit_size == 3072;
        size64 += c.orbit_size == 64;
      }
      const auto c46 = detail::class_of_box(named_box(NamedBox::Box46), ct);
      const auto c0 = detail::class_of_box(named_box(NamedBox::Det0), ct);
      bool det_ok = ct.classes[c0].orbit_size == 64;
      for (auto i : ct.classes[c0].members) {
        const auto& p = vc().points[i];
        det_ok = det_ok && std::all_of(p.begin(), p.end(), [](const Rational& x) { return x == 0 || x == 1; });
      }
      d = std::to_string(ct.classes.size()) + " classes, sizes sum " + std::to_string(sum) + ", size-16 classes " +
          std::to_string(size16) + " (Box46 class size " + std::to_string(ct.classes[c46].orbit_size) +
          "), size-3072 classes " + std::to_string(size3072) + ", size-64 classes " + std::to_string(size64);
      return ct.classes.size() == 46 && sum == 53856 && size16 == 1 && ct.classes[c46].orbit_size == 16 &&
             size3072 == 6 && size64 == 1 && det_ok;
    });
  }

  void hierarchy_counts() {
    run("3", "zero-resistance counts per model set", [&](std::string& d) {
      std::array<std::size_t, 5> zeros{};
      for (const auto& r : rows())
        for (std::size_t k = 0; k < 5; ++k) zeros[k] += r[k].is_zero();
      const std::array<std::size_t, 5> want{1, 2, 5, 8, 12};
      for (std::size_t k = 0; k < 5; ++k)
        d += std::string(k ? " " : "") + std::string(name_of(kModelSets[k])) + "=" + std::to_string(zeros[k]) + "/" +
             std::to_string(want[k]);
      return zeros == want;
    });
  }

  void noise_spot_values() {
    run("4", "noise table spot values", [&](std::string& d) {
      const auto& r = rows();
      const auto& ct = vc().classes;
      const auto ref = reference::noise_rows();
      bool ok = true;
      auto fail = [&](const std::string& why) {
        ok = false;
        d += (d.empty() ? "" : "; ") + why;
      };
      const auto pr = detail::class_of_box(named_box(NamedBox::PRBC), ct);
      if (r[pr] != ref[reference::kPrRow - 1]) fail("PR row " + detail::tuple_str(r[pr]));
      // Row 13 is located by its first four columns.
      const auto& spot = ref[reference::kSpotRow - 1];
      std::vector<std::size_t> hits;
      for (std::size_t i = 0; i < r.size(); ++i)
        if (std::equal(spot.begin(), spot.begin() + 4, r[i].begin())) hits.push_back(i);
      if (hits.empty()) {
        fail("no class has the first four columns of row 13 " + detail::tuple_str(spot));
      } else {
        for (auto i : hits)
          if (r[i][4] != spot[4]) fail("class " + std::to_string(i) + " S2 " + r[i][4].str());
      }
      const auto c44 = detail::class_of_box(named_box(NamedBox::Box44), ct);
      if (r[c44] != ref[reference::kFullCorrelationRow - 1]) fail("Box44 row " + detail::tuple_str(r[c44]));
      for (auto nb : {NamedBox::Box45, NamedBox::Box46}) {
        const auto c = detail::class_of_box(named_box(nb), ct);
        for (std::size_t k = 1; k < 5; ++k)
          if (r[c][k] != Rational(1, 2)) fail(std::string(name_of(nb)) + " row " + detail::tuple_str(r[c]));
      }
      for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t k = 1; k < 5; ++k)
          if (r[i][k] > r[i][k - 1]) fail("class " + std::to_string(i) + " not nonincreasing");
      for (std::size_t k = 0; k < 5; ++k) {
        Rational mx = r[0][k];
        for (const auto& row : r) mx = std::max(mx, row[k]);
        std::vector<std::size_t> at;
        for (std::size_t i = 0; i < r.size(); ++i)
          if (r[i][k] == mx) at.push_back(i);
        const bool good = k == 0 ? (mx == Rational(2, 3) && at == std::vector<std::size_t>{pr})
                                 : (mx == Rational(1, 2) && at.size() == 2);
        if (!good) fail(std::string(name_of(kModelSets[k])) + " column max " + mx.str() + " at " +
                        std::to_string(at.size()) + " classes");
      }
      if (ok) d = "PR, row 13, Box44, maximal classes, monotonicity and column maxima agree";
      return ok;
    });
  }

  void facet_census() {
    run("5", "facet census", [&](std::string& d) {
      const auto& c = census();
      std::size_t sum = 0;
      for (const auto& k : c.classes) sum += k.orbit_size;
      const auto f2 = pipeline::facets(ctx_, 2);
      const auto ns2 = pipeline::vertices(ctx_, 2);
      const auto [positivity, chsh] = detail::bipartite_facet_split(f2, ns2);
      d = std::to_string(c.facets.size()) + " facets in " + std::to_string(c.classes.size()) + " classes (orbit sum " +
          std::to_string(sum) + "); bipartite " + std::to_string(positivity) + " positivity + " + std::to_string(chsh) +
          " CHSH";
      return c.facets.size() == 53856 && c.classes.size() == 46 && sum == 53856 && positivity == 16 && chsh == 8;
    });
  }

  void named_inequalities() {
    run("6", "named inequalities", [&](std::string& d) {
      const auto& pts = vc().points;
      const auto& ct = vc().classes;
      const auto m = ns_max(mermin_functional(), pts, ct);
      const auto s = ns_max(svetlichny_functional(), pts, ct);
      const auto g = ns_max(gyni_functional(), pts, ct);
      const auto chsh_id = census().find(InequalityName::CHSH);
      if (!chsh_id) {
        d = "CHSH facet class not found";
        return false;
      }
      const auto chsh = class_violation(census(), *chsh_id, ScaledPoints(pts), ct);
      const auto pr = detail::class_of_box(named_box(NamedBox::PRBC), ct);
      d = "Mermin " + m.local_bound.str() + "/" + m.ns_max.str() + ", Svetlichny " + s.local_bound.str() + "/" +
          s.ns_max.str() + ", GYNI " + g.local_bound.str() + "/" + g.ns_max.str() + " over " +
          std::to_string(g.achieving_classes.size()) + " classes, CHSH class maximized by " +
          std::to_string(chsh.achieving_classes.size()) + " class(es)";
      return m.local_bound == 2 && m.ns_max == 4 && s.local_bound == 4 && s.ns_max == 8 &&
             g.local_bound == Rational(1, 4) && g.ns_max == Rational(1, 3) && g.achieving_classes.size() == 2 &&
             chsh.achieving_classes == std::vector<std::size_t>{pr} && census().find(InequalityName::Mermin) &&
             census().find(InequalityName::GYNI) && census().find(InequalityName::Positivity);
    });
  }

  void mermin_census() {
    run("7", "Mermin census", [&](std::string& d) {
      const auto& ct = vc().classes;
      const auto counts = attaining_counts(mermin_functional(), Rational(4), vc().points, ct);
      const auto ref = reference::noise_rows();
      const std::map<std::size_t, std::size_t> want_count{{46, 2}, {44, 8}, {2, 12}, {21, 32}, {22, 32}, {34, 32}};
      std::size_t total = 0;
      std::multiset<std::size_t> dist;
      std::set<std::size_t> covered;
      bool signatures = true;
      std::string sig;
      for (std::size_t i = 0; i < counts.size(); ++i) {
        if (!counts[i]) continue;
        total += counts[i];
        dist.insert(counts[i]);
        const auto match = detail::matching_reference_rows(rows()[i], ref);
        bool found = false;
        for (auto k : match) {
          auto it = want_count.find(k);
          if (it != want_count.end() && it->second == counts[i]) {
            covered.insert(k);
            found = true;
            break;
          }
        }
        // Rows 34 and 35 share a tuple; either one stands for row 34.
        if (!found)
          for (auto k : match)
            if (k == 35 && counts[i] == 32) {
              covered.insert(34);
              found = true;
            }
        if (!found) {
          signatures = false;
          sig += " class " + std::to_string(i) + " (" + std::to_string(counts[i]) + ") tuple " +
                 detail::tuple_str(rows()[i]) + " matches no expected row;";
        }
      }
      d = std::to_string(total) + " vertices over " + std::to_string(dist.size()) + " classes, counts";
      for (auto c : dist) d += " " + std::to_string(c);
      if (!sig.empty()) d += ";" + sig;
      return total == 118 && dist == std::multiset<std::size_t>{2, 8, 12, 32, 32, 32} && signatures &&
             covered.size() == 6;
    });
  }

  void ghz_identity() {
    run("8", "GHZ mixture identity", [&](std::string& d) {
      const Box b46 = named_box(NamedBox::Box46), b46p = named_box(NamedBox::Box46Prime);
      const std::array<Box, 2> parts{b46, b46p};
      const std::array<Rational, 2> w{Rational(1, 2), Rational(1, 2)};
      const Box mixed = mix(parts, w);
      const auto c = correlators_from_box(mixed);
      bool pattern = true;
      for (std::size_t k = 0; k < 18; ++k) pattern = pattern && c[k].is_zero();
      for (unsigned x = 0; x < 2; ++x)
        for (unsigned y = 0; y < 2; ++y)
          for (unsigned z = 0; z < 2; ++z) {
            const Rational want = (x + y + z) % 2 == 0 ? Rational(0) : Rational(x & y & z ? -1 : 1);
            pattern = pattern && c.triple(x, y, z) == want;
          }
      const bool equal = mixed == named_box(NamedBox::GHZ);
      std::vector<Table> attaining;
      const auto mf = mermin_functional();
      const auto members = orbit(b46.table());
      for (const auto& t : members)
        if (evaluate(mf, t) == 4) attaining.push_back(t);
      std::sort(attaining.begin(), attaining.end());
      std::vector<Table> expected{b46.table(), b46p.table()};
      std::sort(expected.begin(), expected.end());
      d = "mixture " + std::string(equal && pattern ? "matches" : "differs from") + " the GHZ correlators; " +
          std::to_string(attaining.size()) + " of " + std::to_string(members.size()) +
          " class members reach M3 = 4";
      return equal && pattern && attaining == expected;
    });
  }

  void correlator_flags() {
    run("9", "classes with correlators in {-1,0,1}", [&](std::string& d) {
      std::size_t n = 0;
      for (const auto& c : vc().classes.classes) n += pipeline::integral_correlators(c.representative);
      d = std::to_string(n) + " classes (expected 13)";
      return n == 13;
    });
  }

  void best_inequality_census() {
    run("10", "CHSH as best inequality", [&](std::string& d) {
      const auto chsh = census().find(InequalityName::CHSH);
      if (!chsh) {
        d = "CHSH facet class not found";
        return false;
      }
      std::size_t nonlocal = 0, with_chsh = 0;
      for (const auto& b : best()) {
        if (!b.threshold) continue;
        ++nonlocal;
        with_chsh += std::find(b.ineq_classes.begin(), b.ineq_classes.end(), *chsh) != b.ineq_classes.end();
      }
      d = std::to_string(with_chsh) + " of " + std::to_string(nonlocal) + " nonlocal classes";
      return nonlocal == 45 && with_chsh == 29;
    });
  }

  void property_suites() {
    run("11", "property suites", [&](std::string& d) {
      std::vector<std::string> failed;
      const auto& group = RelabelingGroup::instance();
      bool closure = group.size() == 3072;
      for (std::size_t g = 0; g < group.size() && closure; ++g) {
        closure = group.compose(g, group.inverse(g)) == group.identity();
        for (std::size_t h = 0; h < group.size() && closure; ++h) (void)group.compose(g, h);  // throws if not closed
      }
      if (!closure) failed.push_back("group closure/inverse");

      bool orbit_stab = true;
      for (const auto& c : vc().classes.classes)
        orbit_stab = orbit_stab && c.orbit_size * stabilizer_size(c.representative) == group.size();
      if (!orbit_stab) failed.push_back("orbit-stabilizer");

      bool l_match = true;
      for (std::size_t i = 0; i < rows().size(); ++i) {
        const Rational facet = best()[i].threshold.value_or(Rational(0));
        l_match = l_match && facet == rows()[i][0];
      }
      if (!l_match) failed.push_back("L resistance vs facet threshold");

      if (!roundtrips()) failed.push_back("V/H roundtrips");
      if (!lp_permutation_invariance()) failed.push_back("LP permutation invariance");

      d = failed.empty() ? "group (3072), orbit-stabilizer, L vs facets, V/H roundtrips, LP permutations"
                         : "failed:";
      for (const auto& f : failed) d += " " + f + ";";
      return failed.empty();
    });
  }

  bool roundtrips() const {
    // cube: H -> V -> H
    const auto h = detail::cube(3);
    const auto v = enumerate_vertices(h);
    bool ok = v.vertices.size() == 8 && detail::inequality_set(enumerate_facets(v)) == detail::inequality_set(h);
    // cross-polytope: V -> H -> V
    const auto x = detail::cross_polytope(3);
    const auto xh = enumerate_facets(x);
    ok = ok && xh.ineq.size() == 8 && detail::point_set(enumerate_vertices(xh).vertices) == detail::point_set(x.vertices);
    // bipartite Bell polytope, both directions
    VRepresentation bell;
    bell.vertices = scenario::deterministic_points(2);
    const auto bh = enumerate_facets(bell);
    const auto bv = enumerate_vertices(bh);
    ok = ok && bh.ineq.size() == 24 && detail::point_set(bv.vertices) == detail::point_set(bell.vertices) &&
         detail::inequality_set(enumerate_facets(bv)) == detail::inequality_set(bh);
    return ok;
  }

  static bool lp_permutation_invariance() {
    const Box pr = named_box(NamedBox::PRBC);
    const auto layout = hierarchy_detail::build(hierarchy_detail::cached_terms(ModelSet::L), pr.table(), true);
    const auto base = lp_solve(layout.lp);
    std::mt19937 rng(20260101);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<std::size_t> perm(layout.lp.num_vars);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      LinearProgram p = layout.lp;
      auto shuffle_row = [&](const RationalVector& r) {
        RationalVector o(r.size());
        for (std::size_t j = 0; j < r.size(); ++j) o[perm[j]] = r[j];
        return o;
      };
      if (!p.objective.empty()) p.objective = shuffle_row(p.objective);
      for (auto& r : p.eq) r = shuffle_row(r);
      for (auto& r : p.ineq) r = shuffle_row(r);
      if (!p.lower.empty()) {
        std::vector<std::optional<Rational>> lo(p.lower.size());
        for (std::size_t j = 0; j < lo.size(); ++j) lo[perm[j]] = p.lower[j];
        p.lower = std::move(lo);
      }
      const auto res = lp_solve(p);
      if (res.status != base.status || res.value != base.value) return false;
    }
    return base.value == Rational(2, 3);
  }

  const pipeline::Context& ctx_;
  std::ostream& out_;
  std::vector<CheckResult> results_;
  std::optional<pipeline::VertexCensus> vc_;
  std::optional<std::vector<NoiseRow>> rows_;
  std::optional<FacetCensus> census_;
  std::optional<std::vector<BestInequality>> best_;
};

}  // namespace nspoly::verify
