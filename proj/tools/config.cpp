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

#include "config.hpp"

#include <charconv>
#include <sstream>

#include "fermiq/errors.hpp"

namespace fermiq::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double parse_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size())
    fail(ErrorCode::ConfigParse, "key '" + key + "': expected a number, got '" + text + "'");
  return v;
}

long long parse_int(const std::string& key, const std::string& text) {
  // Accept integral values written in floating notation such as 1e5.
  long long v = 0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec == std::errc() && r.ptr == text.data() + text.size()) return v;
  const double d = parse_real(key, text);
  if (d != static_cast<double>(static_cast<long long>(d)))
    fail(ErrorCode::ConfigParse, "key '" + key + "': expected an integer, got '" + text + "'");
  return static_cast<long long>(d);
}

}  // namespace

void Config::parse(std::istream& in, const std::string& origin) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::ConfigParse, origin + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) fail(ErrorCode::ConfigParse, origin + ":" + std::to_string(lineno) + ": empty key");
    set(key, trim(line.substr(eq + 1)));
  }
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

void Config::restrict_to(const std::set<std::string>& allowed) const {
  for (const auto& [k, v] : values_)
    if (allowed.count(k) == 0) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      fail(ErrorCode::ConfigParse, "unknown key '" + k + "' (accepted: " + list + ")");
    }
}

const std::string* Config::find(const std::string& key) const {
  const auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

void Config::note(const std::string& key, const std::string& value) const { resolved_[key] = value; }

std::string Config::str(const std::string& key, const std::string& fallback) const {
  const std::string* v = find(key);
  const std::string out = v ? *v : fallback;
  note(key, out);
  return out;
}

double Config::real(const std::string& key, double fallback) const {
  const std::string* v = find(key);
  const double out = v ? parse_real(key, *v) : fallback;
  note(key, shortest(out));
  return out;
}

long long Config::integer(const std::string& key, long long fallback) const {
  const std::string* v = find(key);
  const long long out = v ? parse_int(key, *v) : fallback;
  note(key, std::to_string(out));
  return out;
}

std::uint64_t Config::seed(const std::string& key, std::uint64_t fallback) const {
  const std::string* v = find(key);
  std::uint64_t out = fallback;
  if (v) {
    const auto r = std::from_chars(v->data(), v->data() + v->size(), out);
    if (r.ec != std::errc() || r.ptr != v->data() + v->size())
      fail(ErrorCode::ConfigParse, "key '" + key + "': expected an unsigned integer, got '" + *v + "'");
  }
  note(key, std::to_string(out));
  return out;
}

std::vector<double> Config::reals(const std::string& key, const std::vector<double>& fallback) const {
  const std::string* v = find(key);
  std::vector<double> out = fallback;
  if (v) {
    out.clear();
    for (const auto& item : split_list(*v)) out.push_back(parse_real(key, item));
  }
  std::string text;
  for (double d : out) text += (text.empty() ? "" : ",") + shortest(d);
  note(key, text);
  return out;
}

std::vector<int> Config::integers(const std::string& key, const std::vector<int>& fallback) const {
  const std::string* v = find(key);
  std::vector<int> out = fallback;
  if (v) {
    out.clear();
    for (const auto& item : split_list(*v)) out.push_back(static_cast<int>(parse_int(key, item)));
  }
  std::string text;
  for (int d : out) text += (text.empty() ? "" : ",") + std::to_string(d);
  note(key, text);
  return out;
}

}  // namespace fermiq::cli
