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

#ifndef CREDAUCT_TESTS_TEST_UTIL_HPP_
#define CREDAUCT_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <vector>

#include "credauct/matroid.hpp"
#include "credauct/rng.hpp"

namespace credauct::testutil {

// Independent-of-the-implementation oracles: everything here works by
// exhaustive enumeration over subsets and trusts only is_independent.

inline int rank_oracle(const Matroid& m, Eset s) {
  int best = 0;
  Eset sub = s;
  while (true) {
    if (m.is_independent(sub)) best = std::max(best, set_size(sub));
    if (sub == 0) break;
    sub = (sub - 1) & s;
  }
  return best;
}

// Brute-force max-positive-weight independent set with the project's tie
// rule: larger total weight wins, ties resolved by ascending-id-sequence
// lexicographic order on the selected set.
inline Eset max_weight_oracle(const Matroid& m, const std::vector<double>& w,
                              Eset eligible) {
  Eset best = 0;
  double best_w = 0.0;
  Eset sub = eligible;
  while (true) {
    if (m.is_independent(sub)) {
      double tot = 0.0;
      bool all_pos = true;
      for_each_element(sub, [&](ElementId e) {
        if (w[static_cast<std::size_t>(e)] <= 0.0) all_pos = false;
        tot += w[static_cast<std::size_t>(e)];
      });
      if (all_pos &&
          (tot > best_w + 1e-12 ||
           (tot > best_w - 1e-12 && set_seq_less(sub, best)))) {
        best = sub;
        best_w = tot;
      }
    }
    if (sub == 0) break;
    sub = (sub - 1) & eligible;
  }
  return best;
}

inline bool clinches_oracle(const Matroid& m, Eset a, ElementId i) {
  Eset sub = a;
  while (true) {
    if (m.is_independent(sub) && !m.is_independent(sub | bit(i))) return false;
    if (sub == 0) break;
    sub = (sub - 1) & a;
  }
  return true;
}

inline bool clinches_set_oracle(const Matroid& m, Eset a, Eset b) {
  Eset sub = a;
  while (true) {
    if (m.is_independent(sub) && !m.is_independent(sub | b)) return false;
    if (sub == 0) break;
    sub = (sub - 1) & a;
  }
  return true;
}

inline Eset random_subset(Rng& rng, Eset pool) {
  Eset out = 0;
  for_each_element(pool, [&](ElementId e) {
    if (rng.next_u64() & 1) out |= bit(e);
  });
  return out;
}

// A random maximal independent subset of pool, built in random element order.
inline Eset random_independent(const Matroid& m, Rng& rng, Eset pool,
                               int max_size = kMaxGround) {
  std::vector<ElementId> elems = set_elements(pool);
  for (std::size_t i = elems.size(); i > 1; --i) {
    std::swap(elems[i - 1], elems[rng.below(i)]);
  }
  Eset out = 0;
  for (ElementId e : elems) {
    if (set_size(out) >= max_size) break;
    if (m.is_independent(out | bit(e))) out |= bit(e);
  }
  return out;
}

// Rotates through the three concrete matroid kinds with random parameters.
inline Matroid random_matroid(Rng& rng, int max_ground = 8) {
  int n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_ground - 1)));
  switch (rng.below(3)) {
    case 0:
      return Matroid::uniform(static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 1))), n);
    case 1: {
      std::vector<std::pair<Eset, int>> blocks;
      Eset remaining = full_set(n);
      while (remaining) {
        Eset blk = 0;
        int take = 1 + static_cast<int>(rng.below(3));
        for (int i = 0; i < take && remaining; ++i) {
          ElementId e = set_elements(remaining)[0];
          blk |= bit(e);
          remaining &= ~bit(e);
        }
        blocks.emplace_back(blk, 1 + static_cast<int>(rng.below(2)));
      }
      return Matroid::partition(std::move(blocks));
    }
    default: {
      int vertices = 2 + static_cast<int>(rng.below(4));
      std::vector<std::pair<int, int>> edges;
      for (int e = 0; e < n; ++e) {
        int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(vertices)));
        int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(vertices)));
        if (u == v) v = (v + 1) % vertices;
        edges.emplace_back(u, v);
      }
      return Matroid::graphic(vertices, std::move(edges));
    }
  }
}

}  // namespace credauct::testutil

#endif  // CREDAUCT_TESTS_TEST_UTIL_HPP_
