#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sdd/types.hpp"

namespace sdd::config {

// Flat, line-oriented key=value format with [section] headers. '#' starts a
// comment; keys are addressed as "section.key". The full grammar is
// documented in the README.
class Config {
 public:
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<long> get_int_list(const std::string& key) const;
  std::vector<std::string> get_token_list(const std::string& key) const;

  void set(const std::string& key, const std::string& value);

  // FNV-1a over the raw config text, fixed at parse time.
  std::uint64_t content_hash() const { return content_hash_; }

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
  std::uint64_t content_hash_ = 0;
};

std::uint64_t fnv1a64(const std::string& text);

}  // namespace sdd::config
