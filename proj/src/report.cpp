#include "sdf/report.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace sdf {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::InvalidArgument, "SHA-256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < length; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

std::string file_sha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return sha256_hex(buffer.str());
}

std::string RunManifest::hash() const {
  Json key{{"command", command}, {"params", params}, {"version", version}, {"input_hash", input_hash}};
  return sha256_hex(key.dump());
}

Json RunManifest::to_json() const {
  return {{"command", command}, {"params", params}, {"version", version},
          {"timestamp", timestamp}, {"input_hash", input_hash}, {"hash", hash()}};
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

ResultCache::ResultCache(std::filesystem::path dir) {
  std::filesystem::create_directories(dir);
  file_ = dir / "cache.jsonl";
}

std::vector<CacheEntry> ResultCache::load() {
  std::vector<CacheEntry> entries;
  std::ifstream in(file_);
  if (!in) return entries;
  std::string line;
  std::size_t number = 0, bad = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      const auto j = Json::parse(line);
      CacheEntry e{j.at("key").get<std::string>(), j.at("output").get<std::string>(), j.at("elapsed_ms").get<double>()};
      if (j.at("checksum").get<std::string>() != sha256_hex(e.key + '\n' + e.output))
        throw Error(ErrorKind::InvalidArgument, "checksum mismatch");
      entries.push_back(std::move(e));
    } catch (const std::exception& ex) {
      ++bad;
      warnings_.push_back("evicted corrupt cache line " + std::to_string(number) + " of " + file_.string() + ": " +
                          ex.what());
    }
  }
  in.close();
  if (bad) write_all(entries);
  return entries;
}

void ResultCache::write_all(const std::vector<CacheEntry>& entries) {
  auto tmp = file_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    for (const auto& e : entries) {
      Json j{{"key", e.key}, {"output", e.output}, {"elapsed_ms", e.elapsed_ms},
             {"checksum", sha256_hex(e.key + '\n' + e.output)}};
      out << j.dump() << '\n';
    }
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, file_);
}

std::optional<CacheEntry> ResultCache::lookup(const std::string& key) {
  for (auto& e : load())
    if (e.key == key) return e;
  return std::nullopt;
}

void ResultCache::store(const CacheEntry& entry) {
  auto entries = load();
  std::erase_if(entries, [&](const CacheEntry& e) { return e.key == entry.key; });
  entries.push_back(entry);
  write_all(entries);
}

std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag) {
  if (!flag.empty()) return std::filesystem::path(flag);
  if (const char* env = std::getenv("SDFLAB_CACHE_DIR"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

namespace {

std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  return quoted + "\"";
}

void flatten(const Json& v, const std::string& prefix, std::vector<std::pair<std::string, Json>>& out) {
  if (v.is_object()) {
    for (const auto& [k, child] : v.items()) flatten(child, prefix.empty() ? k : prefix + "." + k, out);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), out);
  } else {
    out.emplace_back(prefix, v);
  }
}

}  // namespace

std::string to_csv(const Json& result) {
  std::ostringstream out;
  if (result.is_object() && result.contains("rows") && result["rows"].is_array() && !result["rows"].empty()) {
    const auto& rows = result["rows"];
    bool first = true;
    for (const auto& [k, v] : rows[0].items()) {
      out << (first ? "" : ",") << k;
      first = false;
    }
    out << '\n';
    for (const auto& row : rows) {
      first = true;
      for (const auto& [k, v] : row.items()) {
        out << (first ? "" : ",") << csv_cell(v);
        first = false;
      }
      out << '\n';
    }
    return out.str();
  }
  std::vector<std::pair<std::string, Json>> leaves;
  flatten(result, "", leaves);
  out << "key,value\n";
  for (const auto& [k, v] : leaves) out << csv_cell(k) << ',' << csv_cell(v) << '\n';
  return out.str();
}

Json group_function_json(const GroupFunction& f) {
  Json values = Json::array();
  for (Eigen::Index i = 0; i < f.values().size(); ++i) values.push_back({f.values()(i).real(), f.values()(i).imag()});
  return {{"moduli", f.modulus_set().moduli()}, {"values", values}};
}

Json rational_json(const Rational& r) {
  return {{"num", numerator(r).str()}, {"den", denominator(r).str()}};
}

}  // namespace sdf
