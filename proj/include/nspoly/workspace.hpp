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

// Artifact cache: a directory with a manifest of content digests.
//
// manifest.json maps an artifact name to its file, SHA-256 digest, the
// command that produced it and the tool version. A lock file serializes
// commands on one workspace.

#include <fcntl.h>
#include <openssl/evp.h>
#include <sys/file.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#ifndef NSPOLY_VERSION
#define NSPOLY_VERSION "1.0.0"
#endif

namespace nspoly {

inline constexpr std::string_view kToolVersion = NSPOLY_VERSION;

class WorkspaceError : public std::runtime_error {
 public:
  explicit WorkspaceError(const std::string& what) : std::runtime_error(what) {}
};

inline std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw WorkspaceError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::filesystem::path& p, std::string_view data) {
  const auto tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw WorkspaceError("cannot write " + tmp);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw WorkspaceError("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, p);
}

class Workspace {
 public:
  explicit Workspace(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
    lock_fd_ = ::open((dir_ / ".lock").c_str(), O_CREAT | O_RDWR, 0644);
    if (lock_fd_ < 0) throw WorkspaceError("cannot open lock file in " + dir_.string());
    if (::flock(lock_fd_, LOCK_EX | LOCK_NB) != 0) {
      ::close(lock_fd_);
      throw WorkspaceError("workspace " + dir_.string() + " is in use by another command");
    }
    const auto mpath = dir_ / "manifest.json";
    if (std::filesystem::exists(mpath)) {
      try {
        manifest_ = nlohmann::json::parse(read_file(mpath));
      } catch (const nlohmann::json::exception& e) {
        throw WorkspaceError(std::string("corrupt manifest: ") + e.what());
      }
    }
    if (!manifest_.is_object()) manifest_ = nlohmann::json::object();
    if (!manifest_.contains("artifacts")) manifest_["artifacts"] = nlohmann::json::object();
  }

  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  ~Workspace() {
    if (lock_fd_ >= 0) {
      ::flock(lock_fd_, LOCK_UN);
      ::close(lock_fd_);
    }
  }

  const std::filesystem::path& dir() const { return dir_; }

  bool has(std::string_view name) const { return manifest_["artifacts"].contains(std::string(name)); }

  // Contents of a cached artifact; throws if the file no longer matches its digest.
  std::optional<std::string> load(std::string_view name) const {
    const auto& arts = manifest_["artifacts"];
    const std::string key(name);
    if (!arts.contains(key)) return std::nullopt;
    const auto& entry = arts[key];
    const auto path = dir_ / entry.at("file").get<std::string>();
    if (!std::filesystem::exists(path)) throw WorkspaceError("artifact '" + key + "' is missing: " + path.string());
    std::string data = read_file(path);
    if (sha256_hex(data) != entry.at("sha256").get<std::string>())
      throw WorkspaceError("digest mismatch for artifact '" + key + "' (" + path.string() + ")");
    return data;
  }

  std::string digest(std::string_view name) const {
    return manifest_["artifacts"].at(std::string(name)).at("sha256").get<std::string>();
  }

  std::filesystem::path path_of(std::string_view name) const {
    return dir_ / manifest_["artifacts"].at(std::string(name)).at("file").get<std::string>();
  }

  void store(std::string_view name, std::string_view file, std::string_view data, std::string_view command) {
    write_file(dir_ / file, data);
    nlohmann::json entry;
    entry["file"] = std::string(file);
    entry["sha256"] = sha256_hex(data);
    entry["command"] = std::string(command);
    entry["tool_version"] = std::string(kToolVersion);
    manifest_["artifacts"][std::string(name)] = std::move(entry);
    write_file(dir_ / "manifest.json", manifest_.dump(2) + "\n");
  }

  // Cached contents of `name`, producing and storing them on a miss.
  std::string get_or_make(std::string_view name, std::string_view file, std::string_view command,
                          const std::function<std::string()>& make, bool* computed = nullptr) {
    if (auto cached = load(name)) {
      if (computed) *computed = false;
      return *cached;
    }
    std::string data = make();
    store(name, file, data, command);
    if (computed) *computed = true;
    return data;
  }

 private:
  std::filesystem::path dir_;
  int lock_fd_ = -1;
  nlohmann::json manifest_;
};

}  // namespace nspoly
