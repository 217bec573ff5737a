#pragma once

#include "sdf/group.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sdf {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

std::string sha256_hex(std::string_view bytes);
// Throws InvalidArgument when the file cannot be read.
std::string file_sha256(const std::filesystem::path& path);

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> params;
  std::string version = kToolVersion;
  std::string timestamp;   // informational, not hashed
  std::string input_hash;  // SHA-256 over the bytes of all input files, in order

  // Content hash over command, params, version and input hash.
  std::string hash() const;
  Json to_json() const;
};

std::string utc_timestamp();

struct CacheEntry {
  std::string key;
  std::string output;  // exact bytes written to stdout
  double elapsed_ms = 0;
};

// JSON-lines store: one {key, output, elapsed_ms, checksum} object per line.
// Writes go to a temporary file renamed over the store.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  const std::filesystem::path& file() const { return file_; }
  std::optional<CacheEntry> lookup(const std::string& key);
  void store(const CacheEntry& entry);
  // Warnings about evicted entries since construction.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::vector<CacheEntry> load();
  void write_all(const std::vector<CacheEntry>& entries);

  std::filesystem::path file_;
  std::vector<std::string> warnings_;
};

// Flag value if given, else $SDFLAB_CACHE_DIR, else none.
std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag);

// Tabular output: `rows` (array of flat objects) becomes a header plus rows;
// anything else becomes key,value lines over the scalar leaves.
std::string to_csv(const Json& result);

Json group_function_json(const GroupFunction& f);
Json rational_json(const Rational& r);

}  // namespace sdf
