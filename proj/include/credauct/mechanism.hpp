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

#ifndef CREDAUCT_MECHANISM_HPP_
#define CREDAUCT_MECHANISM_HPP_

#include <algorithm>
#include <utility>
#include <vector>

#include "credauct/matroid.hpp"
#include "credauct/parallel.hpp"
#include "credauct/rng.hpp"
#include "credauct/valuedist.hpp"

namespace credauct {

struct Bid {
  ElementId bidder = 0;
  double amount = 0.0;
  int profile = 0;
  bool real = true;
};

struct SealedOutcome {
  Eset allocated = 0;
  std::vector<std::pair<ElementId, double>> payments;  // allocated, ascending id
  double virtual_surplus = 0.0;

  double payment_for(ElementId i) const {
    for (const auto& [id, p] : payments) {
      if (id == i) return p;
    }
    return 0.0;
  }
  double payment_total() const {
    double t = 0.0;
    for (const auto& [id, p] : payments) t += p;
    return t;
  }
};

namespace detail {

inline void check_bids(const std::vector<Bid>& bids,
                       const std::vector<VirtualValueProfile>& profiles,
                       const Matroid& m) {
  Eset seen = 0;
  for (const Bid& b : bids) {
    if (b.bidder < 0 || b.bidder >= m.ground_size())
      throw InputError("bid id out of matroid ground");
    if (contains(seen, b.bidder)) throw InputError("duplicate bidder id");
    seen |= bit(b.bidder);
    if (b.profile < 0 || static_cast<std::size_t>(b.profile) >= profiles.size())
      throw InputError("bid profile index out of range");
  }
}

inline std::vector<double> bid_weights(const std::vector<Bid>& bids,
                                       const std::vector<VirtualValueProfile>& profiles,
                                       int ground) {
  std::vector<double> w(static_cast<std::size_t>(ground),
                        -std::numeric_limits<double>::infinity());
  for (const Bid& b : bids) {
    const auto& p = profiles[static_cast<std::size_t>(b.profile)];
    double amt = std::min(b.amount, p.dist().support_hi());
    w[static_cast<std::size_t>(b.bidder)] =
        amt < p.dist().support_lo()
            ? -std::numeric_limits<double>::infinity()
            : p.ironed_virtual_value(amt);
  }
  return w;
}

}  // namespace detail

// Ironed-virtual-surplus-maximizing allocation with the fixed tie order
// (descending weight, ascending id); only positive virtual values allocate.
inline Eset optimal_allocation(const std::vector<Bid>& bids,
                               const std::vector<VirtualValueProfile>& profiles,
                               const Matroid& m) {
  detail::check_bids(bids, profiles, m);
  std::vector<double> w = detail::bid_weights(bids, profiles, m.ground_size());
  Eset eligible = 0;
  for (const Bid& b : bids) eligible |= bit(b.bidder);
  return max_weight_basis(m, w, eligible);
}

// Infimum bid keeping bidder i allocated, other bids fixed; monotone
// bisection on the allocation oracle, floored at i's monopoly reserve.
inline double critical_bid(ElementId i, const std::vector<Bid>& bids,
                           const std::vector<VirtualValueProfile>& profiles,
                           const Matroid& m) {
  const Bid* self = nullptr;
  for (const Bid& b : bids) {
    if (b.bidder == i) self = &b;
  }
  if (self == nullptr) throw InputError("critical_bid: no bid from i");
  if (!contains(optimal_allocation(bids, profiles, m), i))
    throw InputError("critical_bid: i is not allocated");

  std::vector<Bid> probe = bids;
  auto allocated_at = [&](double x) {
    for (Bid& b : probe) {
      if (b.bidder == i) b.amount = x;
    }
    return contains(optimal_allocation(probe, profiles, m), i);
  };

  const auto& prof = profiles[static_cast<std::size_t>(self->profile)];
  double lo = prof.monopoly_reserve();
  double hi = self->amount;
  if (hi <= lo || allocated_at(lo)) return lo;
  while (hi - lo > 1e-9) {
    double mid = 0.5 * (lo + hi);
    if (allocated_at(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

// Fast path for Monte Carlo loops: all critical payments from one greedy
// sweep. Bidder i's threshold weight is the weight of the first element of
// the greedy-without-i prefix that spans i; the payment maps the threshold
// back through the bidder's own inverse ironed virtual value. Equivalence
// with the bisection route is pinned by a property test.
inline std::vector<std::pair<ElementId, double>> critical_payments_fast(
    const std::vector<Bid>& bids, const std::vector<VirtualValueProfile>& profiles,
    const Matroid& m, Eset allocated) {
  std::vector<double> w = detail::bid_weights(bids, profiles, m.ground_size());
  std::vector<std::pair<ElementId, double>> out;
  std::vector<ElementId> order;
  for (const Bid& b : bids) {
    if (w[static_cast<std::size_t>(b.bidder)] > 0.0) order.push_back(b.bidder);
  }
  std::sort(order.begin(), order.end(), [&](ElementId a, ElementId b) {
    double wa = w[static_cast<std::size_t>(a)], wb = w[static_cast<std::size_t>(b)];
    if (wa != wb) return wa > wb;
    return a < b;
  });
  for (const Bid& b : bids) {
    if (!contains(allocated, b.bidder)) continue;
    // Greedy over the others; stop at the first accepted element whose
    // prefix spans i.
    Eset prefix = 0;
    double threshold = 0.0;
    int rank_prefix = 0;
    for (ElementId e : order) {
      if (e == b.bidder) continue;
      if (!m.is_independent(prefix | bit(e))) continue;
      prefix |= bit(e);
      ++rank_prefix;
      if (m.rank(prefix | bit(b.bidder)) == rank_prefix) {
        threshold = w[static_cast<std::size_t>(e)];
        break;
      }
    }
    const auto& prof = profiles[static_cast<std::size_t>(b.profile)];
    double pay = std::max(prof.monopoly_reserve(),
                          prof.inverse_virtual_value(std::max(threshold, 0.0)));
    out.emplace_back(b.bidder, pay);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline SealedOutcome run_sealed(const std::vector<Bid>& bids,
                                const std::vector<VirtualValueProfile>& profiles,
                                const Matroid& m, bool fast_payments = false) {
  SealedOutcome out;
  if (bids.empty()) return out;
  out.allocated = optimal_allocation(bids, profiles, m);
  std::vector<double> w = detail::bid_weights(bids, profiles, m.ground_size());
  for_each_element(out.allocated, [&](ElementId e) {
    out.virtual_surplus += w[static_cast<std::size_t>(e)];
  });
  if (fast_payments) {
    out.payments = critical_payments_fast(bids, profiles, m, out.allocated);
  } else {
    for_each_element(out.allocated, [&](ElementId e) {
      out.payments.emplace_back(e, critical_bid(e, bids, profiles, m));
    });
  }
  return out;
}

// Testable form of the conceal-monotonicity lemma: dropping the bids in c
// keeps every other previously-allocated bidder allocated.
inline bool conceal_monotonicity_check(const std::vector<Bid>& bids,
                                       const std::vector<VirtualValueProfile>& profiles,
                                       const Matroid& m, Eset c) {
  Eset before = optimal_allocation(bids, profiles, m);
  std::vector<Bid> rest;
  for (const Bid& b : bids) {
    if (!contains(c, b.bidder)) rest.push_back(b);
  }
  Eset after = optimal_allocation(rest, profiles, m);
  return (before & ~c & ~after) == 0;
}

struct RevenueEstimate {
  std::uint64_t trials = 0;
  double mean = 0.0;
  double std_err = 0.0;
  double vs_mean = 0.0;
  double vs_std_err = 0.0;
  double diff_mean = 0.0;
  double diff_std_err = 0.0;
};

// Monte Carlo expected revenue under truthful bidding, with the paired
// virtual-surplus estimate for the payment identity check.
inline RevenueEstimate expected_revenue_mc(
    const std::vector<VirtualValueProfile>& profiles, const Matroid& m,
    std::uint64_t trials, std::uint64_t seed, int workers = 1) {
  RevenueEstimate est;
  est.trials = trials;
  if (profiles.empty() || trials == 0) return est;
  auto stats = mc_run<3>(trials, workers, [&](std::uint64_t t) {
    Rng rng(seed, t, 0);
    std::vector<Bid> bids;
    bids.reserve(profiles.size());
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      bids.push_back(Bid{static_cast<ElementId>(i),
                         profiles[i].sample(rng.uniform01()),
                         static_cast<int>(i), true});
    }
    SealedOutcome o = run_sealed(bids, profiles, m, /*fast_payments=*/true);
    double pay = o.payment_total();
    return std::array<double, 3>{pay, o.virtual_surplus, pay - o.virtual_surplus};
  });
  est.mean = stats.mean[0];
  est.std_err = stats.std_err[0];
  est.vs_mean = stats.mean[1];
  est.vs_std_err = stats.std_err[1];
  est.diff_mean = stats.mean[2];
  est.diff_std_err = stats.std_err[2];
  return est;
}

}  // namespace credauct

#endif  // CREDAUCT_MECHANISM_HPP_
