#include "sdd/config.hpp"

#include <fstream>
#include <sstream>

namespace sdd::config {

namespace {

std::string strip(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_string(buffer.str());
}

Config Config::from_string(const std::string& text) {
  Config cfg;
  cfg.content_hash_ = fnv1a64(text);
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = strip(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config line " + std::to_string(line_no) + ": unterminated section");
      }
      section = strip(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError("config line " + std::to_string(line_no) + ": empty section name");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    }
    const std::string full_key = section.empty() ? key : section + "." + key;
    if (cfg.entries_.count(full_key)) {
      throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" +
                        full_key + "'");
    }
    cfg.entries_[full_key] = value;
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string Config::get_string(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing config key '" + key + "'");
  return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
  const std::string raw = get_string(key);
  try {
    std::size_t used = 0;
    const double value = std::stod(raw, &used);
    if (used != raw.size()) throw std::invalid_argument(raw);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + raw + "'");
  }
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long Config::get_int(const std::string& key) const {
  const std::string raw = get_string(key);
  try {
    std::size_t used = 0;
    const long value = std::stol(raw, &used);
    if (used != raw.size()) throw std::invalid_argument(raw);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + raw + "'");
  }
}

long Config::get_int(const std::string& key, long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::vector<std::string> Config::get_token_list(const std::string& key) const {
  std::istringstream in(get_string(key));
  std::vector<std::string> tokens;
  std::string token;
  while (in >> token) tokens.push_back(token);
  if (tokens.empty()) throw ConfigError("config key '" + key + "': empty list");
  return tokens;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  std::vector<double> values;
  for (const auto& token : get_token_list(key)) {
    try {
      values.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': expected numbers, got '" + token + "'");
    }
  }
  return values;
}

std::vector<long> Config::get_int_list(const std::string& key) const {
  std::vector<long> values;
  for (const auto& token : get_token_list(key)) {
    try {
      values.push_back(std::stol(token));
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': expected integers, got '" + token + "'");
    }
  }
  return values;
}

void Config::set(const std::string& key, const std::string& value) { entries_[key] = value; }

}  // namespace sdd::config
