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

#ifndef CREDAUCT_PARALLEL_HPP_
#define CREDAUCT_PARALLEL_HPP_

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

namespace credauct {

template <int K>
struct McStats {
  std::uint64_t trials = 0;
  std::array<double, K> mean{};
  std::array<double, K> std_err{};
};

// Runs fn(trial) for trial in [0, trials) and reduces component-wise sums.
// Trials are grouped into fixed blocks; a block is always summed
// sequentially by one worker and block partials are reduced in block order,
// so results are bit-identical for any worker count.
template <int K, typename Fn>
McStats<K> mc_run(std::uint64_t trials, int workers, Fn&& fn) {
  constexpr std::uint64_t kBlock = 4096;
  const std::uint64_t nblocks = (trials + kBlock - 1) / kBlock;
  struct Partial {
    std::array<double, K> sum{};
    std::array<double, K> sumsq{};
  };
  std::vector<Partial> partials(nblocks);

  std::atomic<std::uint64_t> next{0};
  auto work = [&]() {
    while (true) {
      std::uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
      if (b >= nblocks) break;
      Partial p;
      std::uint64_t lo = b * kBlock;
      std::uint64_t hi = std::min(trials, lo + kBlock);
      for (std::uint64_t t = lo; t < hi; ++t) {
        std::array<double, K> v = fn(t);
        for (int k = 0; k < K; ++k) {
          p.sum[static_cast<std::size_t>(k)] += v[static_cast<std::size_t>(k)];
          p.sumsq[static_cast<std::size_t>(k)] +=
              v[static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(k)];
        }
      }
      partials[b] = p;
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  McStats<K> out;
  out.trials = trials;
  std::array<double, K> sum{}, sumsq{};
  for (const auto& p : partials) {
    for (int k = 0; k < K; ++k) {
      sum[static_cast<std::size_t>(k)] += p.sum[static_cast<std::size_t>(k)];
      sumsq[static_cast<std::size_t>(k)] += p.sumsq[static_cast<std::size_t>(k)];
    }
  }
  for (int k = 0; k < K; ++k) {
    double n = static_cast<double>(trials);
    double m = sum[static_cast<std::size_t>(k)] / n;
    out.mean[static_cast<std::size_t>(k)] = m;
    if (trials > 1) {
      double var = (sumsq[static_cast<std::size_t>(k)] - n * m * m) / (n - 1.0);
      out.std_err[static_cast<std::size_t>(k)] =
          std::sqrt(std::max(0.0, var) / n);
    }
  }
  return out;
}

struct McStatsDyn {
  std::uint64_t trials = 0;
  std::vector<double> mean;
  std::vector<double> std_err;
};

// Runtime-width variant; fn(trial, out_span) fills `width` components.
template <typename Fn>
McStatsDyn mc_run_dyn(std::uint64_t trials, int workers, std::size_t width,
                      Fn&& fn) {
  constexpr std::uint64_t kBlock = 4096;
  const std::uint64_t nblocks = (trials + kBlock - 1) / kBlock;
  std::vector<double> block_sums(nblocks * width, 0.0);
  std::vector<double> block_sumsqs(nblocks * width, 0.0);

  std::atomic<std::uint64_t> next{0};
  auto work = [&]() {
    std::vector<double> v(width);
    while (true) {
      std::uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
      if (b >= nblocks) break;
      double* sums = &block_sums[b * width];
      double* sumsqs = &block_sumsqs[b * width];
      std::uint64_t lo = b * kBlock;
      std::uint64_t hi = std::min(trials, lo + kBlock);
      for (std::uint64_t t = lo; t < hi; ++t) {
        fn(t, v);
        for (std::size_t k = 0; k < width; ++k) {
          sums[k] += v[k];
          sumsqs[k] += v[k] * v[k];
        }
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  McStatsDyn out;
  out.trials = trials;
  out.mean.assign(width, 0.0);
  out.std_err.assign(width, 0.0);
  std::vector<double> sum(width, 0.0), sumsq(width, 0.0);
  for (std::uint64_t b = 0; b < nblocks; ++b) {
    for (std::size_t k = 0; k < width; ++k) {
      sum[k] += block_sums[b * width + k];
      sumsq[k] += block_sumsqs[b * width + k];
    }
  }
  for (std::size_t k = 0; k < width; ++k) {
    double n = static_cast<double>(trials);
    double m = sum[k] / n;
    out.mean[k] = m;
    if (trials > 1) {
      double var = (sumsq[k] - n * m * m) / (n - 1.0);
      out.std_err[k] = std::sqrt(std::max(0.0, var) / n);
    }
  }
  return out;
}

}  // namespace credauct

#endif  // CREDAUCT_PARALLEL_HPP_
