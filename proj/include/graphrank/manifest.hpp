#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace graphrank {

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);
/// Hash of the canonical (sorted-key, compact) dump.
std::string json_hash(const nlohmann::json& j);

/// File hashes keyed by path relative to the output directory.
using FileHashes = std::map<std::string, std::string>;

struct StageRecord {
  std::string config_hash;
  FileHashes inputs;
  FileHashes outputs;
  std::string completed_at;
};

/// manifest.json of one output directory: which stage produced which files
/// under which configuration.
class RunManifest {
 public:
  /// Empty manifest when the file does not exist yet.
  static RunManifest load(const std::filesystem::path& out_dir);
  void save() const;

  const std::filesystem::path& dir() const noexcept { return dir_; }
  FileHashes hash_files(const std::vector<std::string>& relative) const;

  const StageRecord* find(const std::string& stage) const;
  std::vector<std::string> stages_with_prefix(std::string_view prefix) const;
  void record(const std::string& stage, StageRecord rec);

  /// Throws MissingArtifacts if the stage never ran, StaleArtifacts if its
  /// config hash differs or any recorded file changed on disk.
  void require_fresh(const std::string& stage, const std::string& config_hash) const;

  /// True when the stage ran with this config and inputs and its outputs are intact.
  bool is_cached(const std::string& stage, const std::string& config_hash,
                 const FileHashes& inputs) const;

 private:
  bool files_match(const FileHashes& files) const;

  std::filesystem::path dir_;
  std::map<std::string, StageRecord> stages_;
};

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace graphrank
