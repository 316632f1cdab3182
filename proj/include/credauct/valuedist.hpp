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

#ifndef CREDAUCT_VALUEDIST_HPP_
#define CREDAUCT_VALUEDIST_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "credauct/common.hpp"

namespace credauct {

enum class DistKind { Exponential, Uniform, Tabulated };

class ValueDistribution {
 public:
  static ValueDistribution exponential(double mean) {
    if (!(mean > 0)) throw InputError("exponential: mean must be > 0");
    ValueDistribution d;
    d.kind_ = DistKind::Exponential;
    d.a_ = mean;
    return d;
  }

  static ValueDistribution uniform(double lo, double hi) {
    if (!(lo < hi)) throw InputError("uniform: lo must be < hi");
    ValueDistribution d;
    d.kind_ = DistKind::Uniform;
    d.a_ = lo;
    d.b_ = hi;
    return d;
  }

  // Piecewise-linear CDF through (value, cdf) points; cdf runs 0 to 1.
  static ValueDistribution tabulated(std::vector<std::pair<double, double>> pts) {
    if (pts.size() < 2) throw InputError("tabulated: need >= 2 points");
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (!(pts[i].first > pts[i - 1].first) || pts[i].second < pts[i - 1].second)
        throw InputError("tabulated: points must be increasing");
    }
    if (pts.front().second != 0.0 || pts.back().second != 1.0)
      throw InputError("tabulated: cdf must run from 0 to 1");
    ValueDistribution d;
    d.kind_ = DistKind::Tabulated;
    d.pts_ = std::move(pts);
    return d;
  }

  DistKind kind() const { return kind_; }
  double exp_mean() const { return a_; }
  double uni_lo() const { return a_; }
  double uni_hi() const { return b_; }
  const std::vector<std::pair<double, double>>& points() const { return pts_; }

  double support_lo() const {
    switch (kind_) {
      case DistKind::Exponential: return 0.0;
      case DistKind::Uniform: return a_;
      case DistKind::Tabulated: return pts_.front().first;
    }
    return 0.0;
  }

  double support_hi() const {
    switch (kind_) {
      case DistKind::Exponential:
        return std::numeric_limits<double>::infinity();
      case DistKind::Uniform: return b_;
      case DistKind::Tabulated: return pts_.back().first;
    }
    return 0.0;
  }

  double cdf(double v) const {
    switch (kind_) {
      case DistKind::Exponential:
        return v <= 0 ? 0.0 : 1.0 - std::exp(-v / a_);
      case DistKind::Uniform:
        return std::clamp((v - a_) / (b_ - a_), 0.0, 1.0);
      case DistKind::Tabulated: {
        if (v <= pts_.front().first) return 0.0;
        if (v >= pts_.back().first) return 1.0;
        std::size_t j = segment(v);
        const auto& [v0, f0] = pts_[j];
        const auto& [v1, f1] = pts_[j + 1];
        return f0 + (f1 - f0) * (v - v0) / (v1 - v0);
      }
    }
    return 0.0;
  }

  double pdf(double v) const {
    switch (kind_) {
      case DistKind::Exponential:
        return v < 0 ? 0.0 : std::exp(-v / a_) / a_;
      case DistKind::Uniform:
        return (v < a_ || v > b_) ? 0.0 : 1.0 / (b_ - a_);
      case DistKind::Tabulated: {
        if (v < pts_.front().first || v > pts_.back().first) return 0.0;
        std::size_t j = segment(v);
        const auto& [v0, f0] = pts_[j];
        const auto& [v1, f1] = pts_[j + 1];
        return (f1 - f0) / (v1 - v0);
      }
    }
    return 0.0;
  }

  // Inverse CDF; u in [0, 1].
  double quantile(double u) const {
    if (u < 0.0 || u > 1.0) throw InputError("quantile: u out of [0,1]");
    switch (kind_) {
      case DistKind::Exponential:
        return u >= 1.0 ? std::numeric_limits<double>::infinity()
                        : -a_ * std::log1p(-u);
      case DistKind::Uniform:
        return a_ + u * (b_ - a_);
      case DistKind::Tabulated: {
        std::size_t lo = 0, hi = pts_.size() - 1;
        while (hi - lo > 1) {
          std::size_t mid = (lo + hi) / 2;
          if (pts_[mid].second <= u) lo = mid; else hi = mid;
        }
        const auto& [v0, f0] = pts_[lo];
        const auto& [v1, f1] = pts_[hi];
        if (f1 == f0) return v0;
        return v0 + (v1 - v0) * (u - f0) / (f1 - f0);
      }
    }
    return 0.0;
  }

 private:
  std::size_t segment(double v) const {
    std::size_t lo = 0, hi = pts_.size() - 1;
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if (pts_[mid].first <= v) lo = mid; else hi = mid;
    }
    return lo;
  }

  DistKind kind_ = DistKind::Exponential;
  double a_ = 1.0;
  double b_ = 0.0;
  std::vector<std::pair<double, double>> pts_;
};

// Virtual value phi(v) = v - (1-F(v))/f(v), its ironed version phibar
// (non-decreasing), the monopoly reserve, and the inverse map used by the
// virtual-pricing transformation. Exponential and Uniform take analytic
// paths; Tabulated distributions are ironed numerically on a quantile grid
// via the upper concave envelope of the revenue curve R(q) = q * F^{-1}(1-q).
class VirtualValueProfile {
 public:
  explicit VirtualValueProfile(ValueDistribution dist, int grid_points = 10001)
      : dist_(std::move(dist)) {
    if (dist_.kind() == DistKind::Tabulated) build_ironing(grid_points);
    reserve_ = compute_reserve();
  }

  const ValueDistribution& dist() const { return dist_; }

  double virtual_value(double v) const {
    range_check(v);
    switch (dist_.kind()) {
      case DistKind::Exponential:
        return v - dist_.exp_mean();
      case DistKind::Uniform:
        return 2.0 * v - dist_.uni_hi();
      case DistKind::Tabulated: {
        double f = dist_.pdf(v);
        if (f <= 0.0) return -std::numeric_limits<double>::infinity();
        return v - (1.0 - dist_.cdf(v)) / f;
      }
    }
    return 0.0;
  }

  double ironed_virtual_value(double v) const {
    range_check(v);
    switch (dist_.kind()) {
      case DistKind::Exponential:
      case DistKind::Uniform:
        return virtual_value(v);  // regular: ironing is the identity
      case DistKind::Tabulated:
        return hull_slope_at_q(1.0 - dist_.cdf(v));
    }
    return 0.0;
  }

  double monopoly_reserve() const { return reserve_; }

  // sup{v : phibar(v) <= target}; right endpoint on ironed flats. Bounded
  // supports clamp at the support upper end.
  double inverse_virtual_value(double target) const {
    switch (dist_.kind()) {
      case DistKind::Exponential: {
        double mu = dist_.exp_mean();
        if (target < -mu) throw InputError("inverse_virtual_value: target below range");
        return target + mu;
      }
      case DistKind::Uniform: {
        double lo = dist_.uni_lo(), hi = dist_.uni_hi();
        if (target < 2.0 * lo - hi)
          throw InputError("inverse_virtual_value: target below range");
        return std::clamp((target + hi) / 2.0, lo, hi);
      }
      case DistKind::Tabulated: {
        double lo = dist_.support_lo(), hi = dist_.support_hi();
        if (ironed_virtual_value(lo) > target)
          throw InputError("inverse_virtual_value: target below range");
        if (ironed_virtual_value(hi) <= target) return hi;
        while (hi - lo > 1e-9) {
          double mid = 0.5 * (lo + hi);
          if (ironed_virtual_value(mid) <= target) lo = mid; else hi = mid;
        }
        return lo;
      }
    }
    return 0.0;
  }

  // Largest alpha with all consecutive slopes of phi on the grid >= alpha.
  // Analytic kinds have exactly constant slope and report it directly.
  double alpha_regularity(const std::vector<double>& grid) const {
    switch (dist_.kind()) {
      case DistKind::Exponential: return 1.0;
      case DistKind::Uniform: return 2.0;
      case DistKind::Tabulated: {
        if (grid.size() < 2) throw InputError("alpha_regularity: need >= 2 points");
        double alpha = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < grid.size(); ++i) {
          if (!(grid[i] > grid[i - 1]))
            throw InputError("alpha_regularity: grid must be increasing");
          double slope = (virtual_value(grid[i]) - virtual_value(grid[i - 1])) /
                         (grid[i] - grid[i - 1]);
          alpha = std::min(alpha, slope);
        }
        return alpha;
      }
    }
    return 0.0;
  }

  // Inverse-CDF sampling; u in [0, 1).
  double sample(double u) const {
    if (u < 0.0 || u >= 1.0) throw InputError("sample: u out of [0,1)");
    return dist_.quantile(u);
  }

 private:
  void range_check(double v) const {
    if (v < dist_.support_lo() || v > dist_.support_hi())
      throw InputError("value outside support");
  }

  // Quantile grid over q = 1 - F(v); hull slopes are phibar in value space.
  void build_ironing(int grid_points) {
    if (grid_points < 3) throw InputError("ironing grid too coarse");
    const int n = grid_points;
    std::vector<double> qs(static_cast<std::size_t>(n));
    std::vector<double> rs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      double q = static_cast<double>(i) / static_cast<double>(n - 1);
      double v = dist_.quantile(1.0 - q);
      qs[static_cast<std::size_t>(i)] = q;
      rs[static_cast<std::size_t>(i)] = q * v;
    }
    hull_q_.clear();
    hull_r_.clear();
    for (int i = 0; i < n; ++i) {
      double q = qs[static_cast<std::size_t>(i)];
      double r = rs[static_cast<std::size_t>(i)];
      while (hull_q_.size() >= 2) {
        std::size_t k = hull_q_.size();
        double cross = (hull_q_[k - 1] - hull_q_[k - 2]) * (r - hull_r_[k - 2]) -
                       (hull_r_[k - 1] - hull_r_[k - 2]) * (q - hull_q_[k - 2]);
        if (cross >= 0) {
          hull_q_.pop_back();
          hull_r_.pop_back();
        } else {
          break;
        }
      }
      hull_q_.push_back(q);
      hull_r_.push_back(r);
    }
  }

  double hull_slope_at_q(double q) const {
    std::size_t lo = 0, hi = hull_q_.size() - 1;
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if (hull_q_[mid] <= q) lo = mid; else hi = mid;
    }
    return (hull_r_[hi] - hull_r_[lo]) / (hull_q_[hi] - hull_q_[lo]);
  }

  double compute_reserve() const {
    switch (dist_.kind()) {
      case DistKind::Exponential:
        return dist_.exp_mean();
      case DistKind::Uniform:
        return std::clamp(dist_.uni_hi() / 2.0, dist_.uni_lo(), dist_.uni_hi());
      case DistKind::Tabulated: {
        double lo = dist_.support_lo(), hi = dist_.support_hi();
        if (ironed_virtual_value(lo) >= 0.0) return lo;
        if (ironed_virtual_value(hi) < 0.0) return hi;
        while (hi - lo > 1e-12 * std::max(1.0, std::abs(hi))) {
          double mid = 0.5 * (lo + hi);
          if (ironed_virtual_value(mid) < 0.0) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
      }
    }
    return 0.0;
  }

  ValueDistribution dist_;
  double reserve_ = 0.0;
  std::vector<double> hull_q_;
  std::vector<double> hull_r_;
};

}  // namespace credauct

#endif  // CREDAUCT_VALUEDIST_HPP_
