// Copyright 2026 The mipll Authors.
//
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

#ifndef MIPLL_TOOLS_CONFIG_HPP_
#define MIPLL_TOOLS_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace mipll::tools {

/// Flat `key = value` text. '#' starts a comment; later keys override
/// earlier ones. Typed getters throw InvalidInput naming the key.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  /// Applies "key=value".
  void set_assignment(const std::string& assignment);
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  void erase(const std::string& key);

  std::string get_string(const std::string& key, const std::string& fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<int> get_int_list(const std::string& key) const;

  /// Keys never read by a getter, ascending.
  std::vector<std::string> unread_keys() const;

  const std::map<std::string, std::string>& values() const noexcept { return values_; }

 private:
  const std::string* find(const std::string& key) const;

  std::map<std::string, std::string> values_;
  mutable std::set<std::string> read_;
};

std::string trim(const std::string& s);

/// Splits on `sep`, trimming each piece; empty input gives an empty list.
std::vector<std::string> split(const std::string& s, char sep);

int parse_int(const std::string& text, const std::string& what);
std::uint64_t parse_u64(const std::string& text, const std::string& what);
double parse_double(const std::string& text, const std::string& what);
std::vector<int> parse_int_list(const std::string& text, const std::string& what);
std::vector<double> parse_double_list(const std::string& text, const std::string& what);

}  // namespace mipll::tools

#endif  // MIPLL_TOOLS_CONFIG_HPP_
