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


// Acceptance runner: prints one PASS/FAIL line per criterion.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nspoly/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"nspoly acceptance checks"};
  std::string workspace = "acceptance_workspace";
  unsigned threads = 1;
  bool quick = false;
  app.add_option("--workspace", workspace, "Artifact cache directory");
  app.add_option("--threads", threads, "Worker threads");
  app.add_flag("--quick", quick, "Only the sub-minute checks");
  CLI11_PARSE(app, argc, argv);
  try {
    nspoly::Workspace ws(workspace);
    nspoly::pipeline::Context ctx{ws, threads, &std::cerr};
    nspoly::verify::Suite suite(ctx, std::cout);
    if (quick)
      suite.run_quick();
    else
      suite.run_full();
    std::size_t passed = 0;
    for (const auto& r : suite.results()) passed += r.pass;
    std::cout << passed << "/" << suite.results().size() << " criteria passed" << std::endl;
    return suite.all_passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
