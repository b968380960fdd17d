#include "graphrank/manifest.hpp"

#include <array>
#include <chrono>
#include <ctime>
#include <memory>

#include <openssl/evp.h>

#include "graphrank/error.hpp"
#include "graphrank/text_io.hpp"

namespace graphrank {

namespace {

constexpr const char* kManifestFile = "manifest.json";
constexpr int kManifestVersion = 1;

nlohmann::json hashes_json(const FileHashes& files) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [path, hash] : files) j[path] = hash;
  return j;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw Error(ErrorCode::Io, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(text::read_file(path)); }

std::string json_hash(const nlohmann::json& j) { return sha256_hex(j.dump()); }

RunManifest RunManifest::load(const std::filesystem::path& out_dir) {
  RunManifest m;
  m.dir_ = out_dir;
  const auto path = out_dir / kManifestFile;
  if (!std::filesystem::exists(path)) return m;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text::read_file(path));
    if (j.at("version").get<int>() != kManifestVersion) {
      throw Error(ErrorCode::StaleArtifacts, path.string() + ": unsupported manifest version");
    }
    for (const auto& [stage, rec] : j.at("stages").items()) {
      StageRecord r;
      r.config_hash = rec.at("config_hash").get<std::string>();
      r.inputs = rec.at("inputs").get<FileHashes>();
      r.outputs = rec.at("outputs").get<FileHashes>();
      r.completed_at = rec.value("completed_at", "");
      m.stages_.emplace(stage, std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::StaleArtifacts, path.string() + ": corrupt manifest: " + e.what());
  }
  return m;
}

void RunManifest::save() const {
  nlohmann::json stages = nlohmann::json::object();
  for (const auto& [stage, rec] : stages_) {
    stages[stage] = {{"config_hash", rec.config_hash},
                     {"inputs", hashes_json(rec.inputs)},
                     {"outputs", hashes_json(rec.outputs)},
                     {"completed_at", rec.completed_at}};
  }
  const nlohmann::json j = {{"version", kManifestVersion}, {"stages", stages}};
  text::write_file(dir_ / kManifestFile, j.dump(2) + "\n");
}

FileHashes RunManifest::hash_files(const std::vector<std::string>& relative) const {
  FileHashes out;
  for (const std::string& rel : relative) {
    const auto path = dir_ / rel;
    require(std::filesystem::exists(path), ErrorCode::MissingArtifacts, path.string() + " not found");
    out[rel] = sha256_file(path);
  }
  return out;
}

const StageRecord* RunManifest::find(const std::string& stage) const {
  const auto it = stages_.find(stage);
  return it == stages_.end() ? nullptr : &it->second;
}

std::vector<std::string> RunManifest::stages_with_prefix(std::string_view prefix) const {
  std::vector<std::string> out;
  for (const auto& [stage, rec] : stages_) {
    if (stage.starts_with(prefix)) out.push_back(stage);
  }
  return out;
}

void RunManifest::record(const std::string& stage, StageRecord rec) {
  if (rec.completed_at.empty()) rec.completed_at = utc_timestamp();
  stages_[stage] = std::move(rec);
}

bool RunManifest::files_match(const FileHashes& files) const {
  for (const auto& [rel, hash] : files) {
    const auto path = dir_ / rel;
    if (!std::filesystem::exists(path) || sha256_file(path) != hash) return false;
  }
  return true;
}

void RunManifest::require_fresh(const std::string& stage, const std::string& config_hash) const {
  const StageRecord* rec = find(stage);
  require(rec != nullptr, ErrorCode::MissingArtifacts,
          "stage '" + stage + "' has not been run in " + dir_.string());
  require(rec->config_hash == config_hash, ErrorCode::StaleArtifacts,
          "stage '" + stage + "' ran with a different configuration; rerun it");
  require(files_match(rec->inputs) && files_match(rec->outputs), ErrorCode::StaleArtifacts,
          "artifacts of stage '" + stage + "' changed on disk; rerun it");
}

bool RunManifest::is_cached(const std::string& stage, const std::string& config_hash,
                            const FileHashes& inputs) const {
  const StageRecord* rec = find(stage);
  return rec != nullptr && rec->config_hash == config_hash && rec->inputs == inputs &&
         files_match(rec->outputs);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace graphrank
