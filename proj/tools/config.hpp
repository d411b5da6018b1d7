// Copyright 2026 The fermiq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace fermiq::cli {

// Flat key=value configuration. Later assignments win, so flags applied
// after the file override it.
class Config {
 public:
  // Lines are `key = value`; `#` starts a comment; blank lines are skipped.
  void parse(std::istream& in, const std::string& origin);
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  // Throws ConfigParse for any key outside `allowed`.
  void restrict_to(const std::set<std::string>& allowed) const;

  std::string str(const std::string& key, const std::string& fallback) const;
  double real(const std::string& key, double fallback) const;
  long long integer(const std::string& key, long long fallback) const;
  std::uint64_t seed(const std::string& key, std::uint64_t fallback) const;
  // Comma- or space-separated lists.
  std::vector<double> reals(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<int> integers(const std::string& key, const std::vector<int>& fallback) const;

  // Resolved values (defaults included) in key order, for embedding in reports.
  const std::map<std::string, std::string>& resolved() const { return resolved_; }

 private:
  const std::string* find(const std::string& key) const;
  void note(const std::string& key, const std::string& value) const;

  std::map<std::string, std::string> values_;
  mutable std::map<std::string, std::string> resolved_;
};

}  // namespace fermiq::cli
