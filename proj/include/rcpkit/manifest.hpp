#pragma once

// Run manifests and all-or-nothing output staging.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rcpkit {

inline constexpr std::string_view digest_algorithm = "sha256";

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

struct OutputFile {
  std::string name;
  std::string digest;
};

struct RunManifest {
  std::string subcommand;
  nlohmann::json arguments = nlohmann::json::object();
  std::vector<std::uint64_t> seeds;
  std::string version;
  std::vector<OutputFile> outputs;
  nlohmann::json extra = nlohmann::json::object();  // merged into the top level

  nlohmann::json to_json() const;
};

/// Collects output files in memory and writes them only on commit, so a
/// failing run leaves nothing behind. Each file goes to a temporary name
/// first and is renamed into place.
class OutputStage {
 public:
  explicit OutputStage(std::string dir) : dir_(std::move(dir)) {}

  void add(std::string name, std::string content);

  /// Writes every staged file, then the manifest (digests filled in) as
  /// `manifest_name`. Returns the paths written.
  std::vector<std::string> commit(RunManifest manifest, const std::string& manifest_name = "manifest.json");

  const std::vector<std::pair<std::string, std::string>>& files() const noexcept { return files_; }

 private:
  std::string dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

}  // namespace rcpkit
