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


#include "nspoly/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "nspoly/pipeline.hpp"
#include "nspoly/workspace.hpp"

namespace nspoly {
namespace {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("nspoly-io-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

TEST(Io, VertexFileRoundTrip) {
  const std::vector<RationalVector> v{named_box(NamedBox::Box46).vector(), Box::uniform().vector()};
  EXPECT_EQ(io::parse_vertex_file(io::write_vertex_file(v)), v);
}

TEST(Io, FacetFileRoundTrip) {
  const std::vector<IntegerVector> f{{Integer(1), Integer(-2), Integer(0)}, {Integer(0), Integer(3), Integer(4)}};
  EXPECT_EQ(io::parse_facet_file(io::write_facet_file(f)), f);
}

TEST(Io, ClassFileRoundTrip) {
  std::vector<Box> pts{named_box(NamedBox::Det0), named_box(NamedBox::Box46), named_box(NamedBox::Box46Prime)};
  const auto recs = io::class_records(orbit_partition(pts));
  const auto back = io::parse_class_file(io::write_class_file(recs));
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].id, recs[i].id);
    EXPECT_EQ(back[i].size, recs[i].size);
    EXPECT_EQ(back[i].representative, recs[i].representative);
  }
}

TEST(Io, FormatErrors) {
  EXPECT_THROW(io::parse_vertex_file("1 2 3\n"), io::FormatError);
  EXPECT_THROW(io::parse_vertex_file("# nspoly vertices v1 count=2\n1 2\n"), io::FormatError);
  EXPECT_THROW(io::parse_vertex_file("# nspoly vertices v1 count=2\n1 2\n1\n"), io::FormatError);
  EXPECT_THROW(io::parse_vertex_file("# nspoly vertices v1 count=1\n1 x\n"), io::FormatError);
  EXPECT_THROW(io::parse_facet_file("# nspoly facets v1 count=1\n1 1/2\n"), io::FormatError);
  EXPECT_THROW(io::parse_facet_file("# nspoly facets v1 count=x\n"), io::FormatError);
  EXPECT_THROW(io::parse_class_file("class 0 size 1 rep 1 2\n"), io::FormatError);
  EXPECT_THROW(io::parse_box_lines("1 2 3\n"), io::FormatError);
  EXPECT_EQ(io::parse_box_lines("# comment\n\n" + io::format_row(Box::uniform().vector()) + "\n").size(), 1u);
}

TEST(Io, Csv) {
  const std::string text = io::csv_line({"a", "b", ""}) + io::csv_line({"1"});
  const auto rows = io::parse_csv(text);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"a", "b", ""}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"1"}));
}

TEST(Io, NoiseCsvRoundTrip) {
  std::vector<NoiseRow> rows(2);
  rows[0] = {Rational(2, 3), Rational(0), Rational(0), Rational(0), Rational(0)};
  rows[1] = {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)};
  EXPECT_EQ(pipeline::parse_noise_csv(pipeline::noise_csv(rows, pipeline::canonical_labels(2))), rows);
  EXPECT_THROW(pipeline::parse_noise_csv("class,L\n"), io::FormatError);
}

TEST(Io, WorkspaceStoresAndVerifiesArtifacts) {
  const auto dir = fresh_dir("ws");
  {
    Workspace ws(dir);
    EXPECT_FALSE(ws.has("x"));
    ws.store("x", "x.txt", "hello\n", "test");
    EXPECT_EQ(ws.load("x"), std::optional<std::string>("hello\n"));
    EXPECT_EQ(ws.digest("x"), sha256_hex("hello\n"));
    int calls = 0;
    auto make = [&] {
      ++calls;
      return std::string("made");
    };
    bool computed = false;
    EXPECT_EQ(ws.get_or_make("y", "y.txt", "test", make, &computed), "made");
    EXPECT_TRUE(computed);
    EXPECT_EQ(ws.get_or_make("y", "y.txt", "test", make, &computed), "made");
    EXPECT_FALSE(computed);
    EXPECT_EQ(calls, 1);
  }
  {
    Workspace ws(dir);
    EXPECT_TRUE(ws.has("x"));
    std::ofstream(dir / "x.txt") << "tampered\n";
    try {
      ws.load("x");
      FAIL() << "no exception";
    } catch (const WorkspaceError& e) {
      EXPECT_NE(std::string(e.what()).find("digest mismatch"), std::string::npos);
    }
    fs::remove(dir / "y.txt");
    EXPECT_THROW(ws.load("y"), WorkspaceError);
  }
  fs::remove_all(dir);
}

TEST(Io, WorkspaceLockExcludesSecondUser) {
  const auto dir = fresh_dir("lock");
  {
    Workspace first(dir);
    EXPECT_THROW(Workspace second(dir), WorkspaceError);
  }
  EXPECT_NO_THROW(Workspace again(dir));
  fs::remove_all(dir);
}

TEST(Io, Sha256KnownAnswer) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // namespace
}  // namespace nspoly
