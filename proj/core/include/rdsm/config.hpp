#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

// Flat key = value experiment configuration. Sections ([name]) prefix keys
// as "name.key". A JSON document is accepted as an alternative body and is
// flattened the same way.

namespace rdsm {

class Config {
 public:
  Config() = default;

  static Config from_file(const std::filesystem::path& path);
  static Config from_string(const std::string& text,
                            const std::string& origin = "<string>");

  bool has(const std::string& key) const { return kv_.count(key) > 0; }
  void set(const std::string& key, const std::string& value) { kv_[key] = value; }

  // Accessors throw ConfigError on missing keys (no default) or bad values.
  std::string str(const std::string& key) const;
  std::string str(const std::string& key, const std::string& fallback) const;
  double num(const std::string& key) const;
  double num(const std::string& key, double fallback) const;
  int integer(const std::string& key) const;
  int integer(const std::string& key, int fallback) const;
  std::uint64_t uinteger(const std::string& key, std::uint64_t fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<double> num_list(const std::string& key) const;
  std::vector<std::string> str_list(const std::string& key, char sep = ',') const;

  // "key=value key=value ..." in key order; used for CSV audit comments.
  std::string describe() const;

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace rdsm
