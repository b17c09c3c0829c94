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


// nspoly: vertex/facet enumeration, classification and analysis of the
// tripartite no-signaling polytope.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nspoly/pipeline.hpp"
#include "nspoly/verify.hpp"

namespace {

namespace fs = std::filesystem;
using namespace nspoly;

struct RunConfig {
  std::string workspace;
  unsigned threads = 1;
  std::string scenario = "tripartite";
  bool facets = false;
  bool paper_order = false;
  bool quick = false;
  std::string out_dir;
  std::string named;
  std::string file;
};

std::string default_workspace() {
  const char* env = std::getenv("NSPOLY_WORKSPACE");
  return env ? env : "nspoly-workspace";
}

int cmd_enumerate(const RunConfig& cfg) {
  Workspace ws(cfg.workspace);
  pipeline::Context ctx{ws, cfg.threads, &std::cerr};
  const int n = pipeline::parties_for(cfg.scenario);
  const std::string name = std::string(cfg.facets ? "facets-" : "vertices-") + cfg.scenario;
  const std::size_t count = cfg.facets ? pipeline::facets(ctx, n).size() : pipeline::vertices(ctx, n).size();
  std::cout << name << ": count=" << count << " file=" << ws.path_of(name).string() << " sha256=" << ws.digest(name)
            << "\n";
  return 0;
}

int cmd_classify(const RunConfig& cfg) {
  Workspace ws(cfg.workspace);
  pipeline::Context ctx{ws, cfg.threads, &std::cerr};
  const auto vc = pipeline::vertex_census(ctx);
  std::cout << "class,size\n";
  std::size_t total = 0;
  for (const auto& c : vc.classes.classes) {
    std::cout << c.id << "," << c.orbit_size << "\n";
    total += c.orbit_size;
  }
  std::cerr << vc.classes.classes.size() << " classes, " << total << " vertices; class file "
            << ws.path_of("classes").string() << "\n";
  return 0;
}

int cmd_analyze(const RunConfig& cfg) {
  Workspace ws(cfg.workspace);
  pipeline::Context ctx{ws, cfg.threads, &std::cerr};
  const auto vc = pipeline::vertex_census(ctx);
  const auto rows = pipeline::noise_rows(ctx, vc.classes);
  const auto label = cfg.paper_order ? pipeline::paper_labels(rows) : pipeline::canonical_labels(rows.size());
  const auto census = facet_classes(pipeline::facets(ctx, 3));
  ctx.note("evaluating facet classes on all vertices");
  const auto violations = pipeline::violation_records(census, vc);
  std::vector<Table> reps;
  for (const auto& c : vc.classes.classes) reps.push_back(c.representative);
  const auto boundary = boundary_table(reps, census, cfg.threads);

  const fs::path out = cfg.out_dir.empty() ? fs::path(cfg.workspace) : fs::path(cfg.out_dir);
  fs::create_directories(out);
  const std::pair<const char*, std::string> files[] = {
      {"noise.csv", pipeline::noise_csv(rows, label)},
      {"violations.csv", pipeline::violation_csv(census, violations, label)},
      {"boundary.csv", pipeline::boundary_csv(boundary, label)},
      {"flags.csv", pipeline::flags_csv(vc.classes, label)},
  };
  for (const auto& [name, text] : files) {
    write_file(out / name, text);
    std::cout << (out / name).string() << "\n";
  }
  if (cfg.paper_order) {
    std::cout << "tied ranks (order within each group is by canonical class id):\n";
    for (const auto& t : pipeline::tie_report(rows)) std::cout << "  " << t << "\n";
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  Workspace ws(cfg.workspace);
  pipeline::Context ctx{ws, cfg.threads, &std::cerr};
  verify::Suite suite(ctx, std::cout);
  if (cfg.quick)
    suite.run_quick();
  else
    suite.run_full();
  return suite.all_passed() ? 0 : 1;
}

int cmd_box(const RunConfig& cfg) {
  Table t;
  std::string label;
  if (!cfg.named.empty()) {
    t = named_box(cfg.named).table();
    label = cfg.named;
  } else {
    const auto boxes = io::parse_box_lines(read_file(cfg.file));
    if (boxes.size() != 1) throw io::FormatError("expected exactly one behavior (64 values) in " + cfg.file);
    t = boxes.front();
    label = cfg.file;
  }
  std::cout << "box: " << label << "\n";
  const auto report = validate(t);
  if (!report.valid()) {
    std::cout << "valid: no (" << report.violations.size() << " violated constraints)\n";
    for (const auto& v : report.violations) std::cout << "  " << v.family << ": " << v.detail << "\n";
    return 2;
  }
  std::cout << "valid: yes\n";
  const auto corr = correlators_of_table(t);
  std::cout << "correlators:";
  for (const auto& c : corr.values()) std::cout << " " << c.str();
  std::cout << "\n";

  Workspace ws(cfg.workspace);
  pipeline::Context ctx{ws, cfg.threads, &std::cerr};
  const bool vertex = is_vertex(to_vector(t), scenario::no_signaling_hrep(3));
  std::cout << "vertex: " << (vertex ? "yes" : "no") << "\n";
  const auto vc = pipeline::vertex_census(ctx);
  const auto records = io::class_records(vc.classes);
  if (vertex) {
    const auto id = pipeline::class_of(t, records);
    std::cout << "class: " << (id ? std::to_string(*id) : "unlisted") << " (orbit size " << orbit(t).size() << ")\n";
  } else {
    // Decompose over the vertices of the smallest face containing the box.
    std::vector<Table> face;
    for (const auto& p : vc.points) {
      bool inside = true;
      for (std::size_t i = 0; i < kEntries && inside; ++i) inside = !(t[i].is_zero() && !p[i].is_zero());
      if (inside) face.push_back(p);
    }
    if (const auto d = pipeline::convex_decomposition(t, face)) {
      std::cout << "decomposition over " << face.size() << " face vertices:\n";
      for (const auto& [p, w] : d->terms) {
        const auto id = pipeline::class_of(p, records);
        std::cout << "  weight " << w.str() << " class " << (id ? std::to_string(*id) : "?") << "\n";
      }
    }
  }
  for (auto m : kModelSets)
    std::cout << "member of " << name_of(m) << ": " << (membership(Box::trusted(t), m) ? "yes" : "no") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of the three-party two-input two-output no-signaling polytope"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.workspace = default_workspace();
  app.add_option("--workspace", cfg.workspace, "Artifact cache directory (default $NSPOLY_WORKSPACE)");
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 256u));

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate no-signaling vertices (or local facets)");
  enumerate->add_option("--scenario", cfg.scenario, "tripartite or bipartite")
      ->check(CLI::IsMember({"tripartite", "bipartite"}));
  enumerate->add_flag("--facets", cfg.facets, "Enumerate the facets of the local polytope instead");

  auto* classify = app.add_subcommand("classify", "Group vertices into relabeling classes");
  auto* analyze = app.add_subcommand("analyze", "Noise, violation, boundary and flag tables");
  analyze->add_flag("--paper-order", cfg.paper_order, "Number classes by noise order and report ties");
  analyze->add_option("--out", cfg.out_dir, "Output directory (default: the workspace)");

  auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance checks");
  verify_cmd->add_flag("--quick", cfg.quick, "Only the sub-minute checks");

  auto* box = app.add_subcommand("box", "Inspect one behavior");
  auto* named = box->add_option("--named", cfg.named, "Det0, PR-BC, Box3, Box44, Box45, Box46, Box46Prime or GHZ");
  auto* file = box->add_option("--file", cfg.file, "File holding one behavior as 64 values")->check(CLI::ExistingFile);
  named->excludes(file);
  box->callback([&] {
    if (cfg.named.empty() && cfg.file.empty()) throw CLI::ValidationError("box", "one of --named or --file is required");
  });

  CLI11_PARSE(app, argc, argv);
  try {
    if (*enumerate) return cmd_enumerate(cfg);
    if (*classify) return cmd_classify(cfg);
    if (*analyze) return cmd_analyze(cfg);
    if (*verify_cmd) return cmd_verify(cfg);
    if (*box) return cmd_box(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
