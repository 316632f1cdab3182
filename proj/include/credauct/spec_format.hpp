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

#ifndef CREDAUCT_SPEC_FORMAT_HPP_
#define CREDAUCT_SPEC_FORMAT_HPP_

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "credauct/matroid.hpp"
#include "credauct/valuedist.hpp"

// Textual specs for matroids and distributions. The same grammar is used in
// experiment config files and in the ledger's declaration records, so dumps
// are self-contained and replayable:
//   uniform(k=2,n=4)
//   partition(0 1:1|2:1)
//   graphic(v=3;0-1 1-2 0-2)
//   explicit(n=3;0 1|2)
//   exp(1)   uniform(0,1)   tab(0:0,1:0.6,2:0.65,3:1)

namespace credauct {

namespace detail {

inline std::string dtos(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

// "name(args)" -> args, after verifying the name.
inline std::string call_args(const std::string& s, const std::string& name) {
  if (s.size() < name.size() + 2 || s.compare(0, name.size(), name) != 0 ||
      s[name.size()] != '(' || s.back() != ')')
    throw InputError("bad spec: " + s);
  return s.substr(name.size() + 1, s.size() - name.size() - 2);
}

}  // namespace detail

inline std::string matroid_to_spec(const Matroid& m) {
  using detail::dtos;
  switch (m.kind()) {
    case MatroidKind::Uniform:
      return "uniform(k=" + std::to_string(m.uniform_rank()) +
             ",n=" + std::to_string(m.ground_size()) + ")";
    case MatroidKind::Partition: {
      std::string out = "partition(";
      bool first_blk = true;
      for (const auto& [blk, cap] : m.blocks()) {
        if (!first_blk) out += "|";
        first_blk = false;
        bool first = true;
        for_each_element(blk, [&](ElementId e) {
          if (!first) out += " ";
          out += std::to_string(e);
          first = false;
        });
        out += ":" + std::to_string(cap);
      }
      return out + ")";
    }
    case MatroidKind::Graphic: {
      std::string out = "graphic(v=" + std::to_string(m.graphic_vertices()) + ";";
      bool first = true;
      for (const auto& [u, v] : m.graphic_edges()) {
        if (!first) out += " ";
        out += std::to_string(u) + "-" + std::to_string(v);
        first = false;
      }
      return out + ")";
    }
    case MatroidKind::Explicit: {
      std::string out = "explicit(n=" + std::to_string(m.ground_size()) + ";";
      bool first_set = true;
      for (Eset s : m.family().maximal_sets) {
        if (!first_set) out += "|";
        first_set = false;
        bool first = true;
        for_each_element(s, [&](ElementId e) {
          if (!first) out += " ";
          out += std::to_string(e);
          first = false;
        });
      }
      return out + ")";
    }
  }
  throw InternalError("matroid_to_spec: unknown kind");
}

inline Matroid parse_matroid(const std::string& raw) {
  using detail::call_args;
  using detail::split;
  using detail::strip;
  std::string s = strip(raw);
  if (s.rfind("uniform", 0) == 0) {
    std::string args = call_args(s, "uniform");
    int k = -1, n = -1;
    for (const auto& part : split(args, ',')) {
      auto kv = split(strip(part), '=');
      if (kv.size() == 2 && strip(kv[0]) == "k") k = std::stoi(kv[1]);
      else if (kv.size() == 2 && strip(kv[0]) == "n") n = std::stoi(kv[1]);
      else if (kv.size() == 1 && k < 0) k = std::stoi(kv[0]);
      else if (kv.size() == 1) n = std::stoi(kv[0]);
    }
    if (k < 0 || n < 0) throw InputError("uniform spec needs k and n");
    return Matroid::uniform(k, n);
  }
  if (s.rfind("partition", 0) == 0) {
    std::vector<std::pair<Eset, int>> blocks;
    for (const auto& blk_str : split(call_args(s, "partition"), '|')) {
      auto halves = split(blk_str, ':');
      if (halves.size() != 2) throw InputError("partition block needs ids:cap");
      Eset blk = 0;
      for (const auto& id : split(strip(halves[0]), ' ')) {
        if (!id.empty()) blk |= bit(std::stoi(id));
      }
      blocks.emplace_back(blk, std::stoi(strip(halves[1])));
    }
    return Matroid::partition(std::move(blocks));
  }
  if (s.rfind("graphic", 0) == 0) {
    auto halves = split(call_args(s, "graphic"), ';');
    if (halves.size() != 2) throw InputError("graphic spec needs v=..;edges");
    auto vkv = split(strip(halves[0]), '=');
    int vertices = std::stoi(vkv.back());
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : split(strip(halves[1]), ' ')) {
      if (e.empty()) continue;
      auto uv = split(e, '-');
      if (uv.size() != 2) throw InputError("bad edge: " + e);
      edges.emplace_back(std::stoi(uv[0]), std::stoi(uv[1]));
    }
    return Matroid::graphic(vertices, std::move(edges));
  }
  if (s.rfind("explicit", 0) == 0) {
    auto halves = split(call_args(s, "explicit"), ';');
    if (halves.size() != 2) throw InputError("explicit spec needs n=..;sets");
    DownwardClosedFamily f;
    f.ground_size = std::stoi(split(strip(halves[0]), '=').back());
    for (const auto& set_str : split(strip(halves[1]), '|')) {
      Eset m = 0;
      for (const auto& id : split(strip(set_str), ' ')) {
        if (!id.empty()) m |= bit(std::stoi(id));
      }
      if (m != 0) f.maximal_sets.push_back(m);
    }
    return Matroid::explicit_family(std::move(f));
  }
  throw InputError("unknown matroid spec: " + s);
}

inline std::string dist_to_spec(const ValueDistribution& d) {
  using detail::dtos;
  switch (d.kind()) {
    case DistKind::Exponential:
      return "exp(" + dtos(d.exp_mean()) + ")";
    case DistKind::Uniform:
      return "uniform(" + dtos(d.uni_lo()) + "," + dtos(d.uni_hi()) + ")";
    case DistKind::Tabulated: {
      std::string out = "tab(";
      bool first = true;
      for (const auto& [v, c] : d.points()) {
        if (!first) out += ",";
        out += dtos(v) + ":" + dtos(c);
        first = false;
      }
      return out + ")";
    }
  }
  throw InternalError("dist_to_spec: unknown kind");
}

inline ValueDistribution parse_dist(const std::string& raw) {
  using detail::call_args;
  using detail::split;
  using detail::strip;
  std::string s = strip(raw);
  if (s.rfind("exp", 0) == 0)
    return ValueDistribution::exponential(std::strtod(call_args(s, "exp").c_str(), nullptr));
  if (s.rfind("uniform", 0) == 0) {
    auto parts = split(call_args(s, "uniform"), ',');
    if (parts.size() != 2) throw InputError("uniform dist needs lo,hi");
    return ValueDistribution::uniform(std::strtod(strip(parts[0]).c_str(), nullptr),
                                      std::strtod(strip(parts[1]).c_str(), nullptr));
  }
  if (s.rfind("tab", 0) == 0) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : split(call_args(s, "tab"), ',')) {
      auto vc = split(strip(p), ':');
      if (vc.size() != 2) throw InputError("tab point needs v:c");
      pts.emplace_back(std::strtod(vc[0].c_str(), nullptr),
                       std::strtod(vc[1].c_str(), nullptr));
    }
    return ValueDistribution::tabulated(std::move(pts));
  }
  throw InputError("unknown distribution spec: " + s);
}

inline std::string profiles_to_spec(const std::vector<VirtualValueProfile>& ps) {
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ";";
    out += dist_to_spec(ps[i].dist());
  }
  return out;
}

inline std::vector<VirtualValueProfile> parse_profiles(const std::string& s) {
  std::vector<VirtualValueProfile> out;
  for (const auto& part : detail::split(s, ';')) {
    if (!detail::strip(part).empty())
      out.emplace_back(parse_dist(part));
  }
  return out;
}

}  // namespace credauct

#endif  // CREDAUCT_SPEC_FORMAT_HPP_
