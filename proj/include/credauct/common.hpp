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

#ifndef CREDAUCT_COMMON_HPP_
#define CREDAUCT_COMMON_HPP_

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace credauct {

// Element ids are dense indices into a ground set of size <= 64; element
// sets are bitmasks over those ids.
using ElementId = int;
using Eset = std::uint64_t;

inline constexpr int kMaxGround = 64;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr Eset bit(ElementId i) { return Eset{1} << i; }
inline constexpr bool contains(Eset s, ElementId i) { return (s >> i) & 1; }
inline constexpr int set_size(Eset s) { return std::popcount(s); }
inline constexpr Eset full_set(int n) {
  return n >= kMaxGround ? ~Eset{0} : (Eset{1} << n) - 1;
}

inline Eset make_set(std::initializer_list<ElementId> ids) {
  Eset s = 0;
  for (ElementId i : ids) s |= bit(i);
  return s;
}

inline std::vector<ElementId> set_elements(Eset s) {
  std::vector<ElementId> out;
  out.reserve(static_cast<std::size_t>(set_size(s)));
  while (s) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

template <typename Fn>
inline void for_each_element(Eset s, Fn&& fn) {
  while (s) {
    fn(std::countr_zero(s));
    s &= s - 1;
  }
}

// Ascending-id sequence lexicographic order: the set holding the smallest
// element of the symmetric difference comes first; equal sets are not less.
inline bool set_seq_less(Eset a, Eset b) {
  Eset d = a ^ b;
  if (d == 0) return false;
  Eset low = d & (~d + 1);
  return (a & low) != 0;
}

inline std::string set_to_string(Eset s) {
  std::string out = "{";
  bool first = true;
  for_each_element(s, [&](ElementId i) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  });
  out += "}";
  return out;
}

}  // namespace credauct

#endif  // CREDAUCT_COMMON_HPP_
