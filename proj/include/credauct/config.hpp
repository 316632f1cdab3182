// Copyright 2026 The Authors.
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

#ifndef CREDAUCT_CONFIG_HPP_
#define CREDAUCT_CONFIG_HPP_

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "credauct/dra.hpp"
#include "credauct/spec_format.hpp"

namespace credauct {

// Flat key = value config with '#' comments. Keys are experiment-specific;
// the full schema is in the README. Distributions may be listed inline
// ("exp(1), exp(1)") and tabulated CDFs may reference a two-column CSV file
// ("tabulated:path.csv").
class ExperimentConfig {
 public:
  static ExperimentConfig from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
  }

  static ExperimentConfig from_string(const std::string& text) {
    ExperimentConfig cfg;
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t pos = text.find('\n', start);
      if (pos == std::string::npos) pos = text.size();
      std::string line = text.substr(start, pos - start);
      start = pos + 1;
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = detail::strip(line);
      if (line.empty()) continue;
      std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw InputError("config line without '=': " + line);
      cfg.values_[detail::strip(line.substr(0, eq))] =
          detail::strip(line.substr(eq + 1));
    }
    return cfg;
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw InputError("missing config key: " + key);
    return it->second;
  }

  std::string get_or(const std::string& key, const std::string& dflt) const {
    auto it = values_.find(key);
    return it == values_.end() ? dflt : it->second;
  }

  double get_double(const std::string& key) const {
    return std::strtod(get(key).c_str(), nullptr);
  }
  double get_double_or(const std::string& key, double dflt) const {
    return has(key) ? get_double(key) : dflt;
  }
  long long get_int(const std::string& key) const {
    return std::stoll(get(key));
  }
  long long get_int_or(const std::string& key, long long dflt) const {
    return has(key) ? get_int(key) : dflt;
  }

  void set(const std::string& key, const std::string& value) {
    values_[key] = value;
  }

  Matroid matroid() const { return parse_matroid(get("matroid")); }

  // Comma-separated specs; commas inside "uniform(a,b)" need a paren-aware
  // scan.
  std::vector<VirtualValueProfile> profiles() const {
    std::vector<VirtualValueProfile> out;
    std::string spec = get("dists");
    int depth = 0;
    std::string cur;
    auto flush = [&]() {
      std::string s = detail::strip(cur);
      if (!s.empty()) {
        if (s.rfind("tabulated:", 0) == 0) {
          out.emplace_back(load_tabulated_csv(s.substr(10)));
        } else {
          out.emplace_back(parse_dist(s));
        }
      }
      cur.clear();
    };
    for (char c : spec) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        flush();
      } else {
        cur += c;
      }
    }
    flush();
    if (out.empty()) throw InputError("config: dists is empty");
    return out;
  }

  CollateralRule collateral() const {
    std::string s = get_or("collateral", "max-reserve");
    if (s == "max-reserve") return CollateralRule::max_reserve();
    if (s.rfind("fixed:", 0) == 0)
      return CollateralRule::fixed_rule(std::strtod(s.c_str() + 6, nullptr));
    if (s.rfind("alpha:", 0) == 0)
      return CollateralRule::alpha_regular(std::strtod(s.c_str() + 6, nullptr));
    throw InputError("unknown collateral rule: " + s);
  }

  // Two-column CSV (value, cdf), one point per line, '#' comments allowed.
  static ValueDistribution load_tabulated_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open tabulated cdf: " + path);
    std::vector<std::pair<double, double>> pts;
    std::string line;
    while (std::getline(in, line)) {
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = detail::strip(line);
      if (line.empty()) continue;
      auto parts = detail::split(line, ',');
      if (parts.size() != 2)
        throw InputError("tabulated cdf line needs value,cdf: " + line);
      pts.emplace_back(std::strtod(parts[0].c_str(), nullptr),
                       std::strtod(parts[1].c_str(), nullptr));
    }
    return ValueDistribution::tabulated(std::move(pts));
  }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace credauct

#endif  // CREDAUCT_CONFIG_HPP_
