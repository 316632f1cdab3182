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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "credauct/mechanism.hpp"
#include "test_util.hpp"

using namespace credauct;
using namespace credauct::testutil;

namespace {

std::vector<VirtualValueProfile> exp1_profiles(int n) {
  std::vector<VirtualValueProfile> ps;
  for (int i = 0; i < n; ++i)
    ps.emplace_back(ValueDistribution::exponential(1.0));
  return ps;
}

std::vector<Bid> truthful(const std::vector<double>& values) {
  std::vector<Bid> bids;
  for (std::size_t i = 0; i < values.size(); ++i)
    bids.push_back(Bid{static_cast<ElementId>(i), values[i],
                       static_cast<int>(i), true});
  return bids;
}

}  // namespace

TEST_CASE("optimal_allocation examples") {
  auto ps = exp1_profiles(4);
  auto m = Matroid::uniform(2, 4);
  CHECK(optimal_allocation(truthful({3, 2, 1.5, 0.5}), ps, m) ==
        make_set({0, 1}));
  CHECK(optimal_allocation(truthful({0.9, 0.5, 0.2, 0.1}), ps, m) == 0);

  auto part = Matroid::partition({{make_set({0, 1}), 1}, {make_set({2}), 1}});
  CHECK(optimal_allocation(truthful({5, 4, 2}), exp1_profiles(3), part) ==
        make_set({0, 2}));
}

TEST_CASE("critical_bid examples") {
  auto ps = exp1_profiles(4);
  auto m = Matroid::uniform(2, 4);
  auto bids = truthful({3, 2, 1.5, 0.5});
  CHECK(critical_bid(0, bids, ps, m) == doctest::Approx(1.5).epsilon(1e-6));

  // Single bidder pays the monopoly reserve.
  CHECK(critical_bid(0, truthful({2}), exp1_profiles(1),
                     Matroid::uniform(1, 1)) == doctest::Approx(1.0));

  // Second-price-with-reserve behavior at rank 1.
  CHECK(critical_bid(0, truthful({3, 2}), exp1_profiles(2),
                     Matroid::uniform(1, 2)) ==
        doctest::Approx(2.0).epsilon(1e-6));

  CHECK_THROWS_AS((void)critical_bid(3, bids, ps, m), InputError);
}

TEST_CASE("critical_bid is the exact allocation threshold") {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    Matroid m = random_matroid(rng, 6);
    int n = m.ground_size();
    auto ps = exp1_profiles(n);
    std::vector<double> vals;
    for (int i = 0; i < n; ++i) vals.push_back(rng.uniform01() * 4.0);
    auto bids = truthful(vals);
    Eset alloc = optimal_allocation(bids, ps, m);
    for_each_element(alloc, [&](ElementId i) {
      double cb = critical_bid(i, bids, ps, m);
      auto probe = bids;
      probe[static_cast<std::size_t>(i)].amount = cb + 1e-6;
      CHECK(contains(optimal_allocation(probe, ps, m), i));
      if (cb > ps[static_cast<std::size_t>(i)].monopoly_reserve() + 1e-7) {
        probe[static_cast<std::size_t>(i)].amount = cb - 1e-6;
        CHECK_FALSE(contains(optimal_allocation(probe, ps, m), i));
      }
    });
  }
}

TEST_CASE("fast critical payments equal bisection payments") {
  Rng rng(22);
  for (int t = 0; t < 300; ++t) {
    Matroid m = random_matroid(rng, 6);
    int n = m.ground_size();
    auto ps = exp1_profiles(n);
    std::vector<double> vals;
    for (int i = 0; i < n; ++i) vals.push_back(rng.uniform01() * 4.0);
    auto bids = truthful(vals);
    SealedOutcome slow = run_sealed(bids, ps, m, false);
    SealedOutcome fast = run_sealed(bids, ps, m, true);
    REQUIRE(slow.allocated == fast.allocated);
    REQUIRE(slow.payments.size() == fast.payments.size());
    for (std::size_t i = 0; i < slow.payments.size(); ++i) {
      CHECK(slow.payments[i].first == fast.payments[i].first);
      CHECK(slow.payments[i].second ==
            doctest::Approx(fast.payments[i].second).epsilon(1e-7));
    }
  }
}

TEST_CASE("run_sealed composition and edge cases") {
  auto out = run_sealed(truthful({3, 2, 1.5, 0.5}), exp1_profiles(4),
                        Matroid::uniform(2, 4));
  CHECK(out.allocated == make_set({0, 1}));
  CHECK(out.payment_for(0) == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(out.payment_for(1) == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(out.virtual_surplus == doctest::Approx(3.0));

  CHECK(run_sealed({}, {}, Matroid::uniform(1, 1)).allocated == 0);

  // Equal bids at rank 1: lexicographic winner 0 pays the shared bid.
  auto tie = run_sealed(truthful({2, 2, 2}), exp1_profiles(3),
                        Matroid::uniform(1, 3));
  CHECK(tie.allocated == make_set({0}));
  CHECK(tie.payment_for(0) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("allocation is monotone in own bid") {
  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    Matroid m = random_matroid(rng, 8);
    int n = m.ground_size();
    auto ps = exp1_profiles(n);
    std::vector<double> vals;
    for (int i = 0; i < n; ++i) vals.push_back(rng.uniform01() * 4.0);
    auto bids = truthful(vals);
    Eset alloc = optimal_allocation(bids, ps, m);
    for_each_element(alloc, [&](ElementId i) {
      auto probe = bids;
      for (double up : {0.1, 0.7, 2.0}) {
        probe[static_cast<std::size_t>(i)].amount = vals[static_cast<std::size_t>(i)] + up;
        CHECK(contains(optimal_allocation(probe, ps, m), i));
      }
    });
  }
}

TEST_CASE("individual rationality: payment never exceeds bid") {
  Rng rng(24);
  for (int t = 0; t < 200; ++t) {
    Matroid m = random_matroid(rng, 6);
    int n = m.ground_size();
    auto ps = exp1_profiles(n);
    std::vector<double> vals;
    for (int i = 0; i < n; ++i) vals.push_back(rng.uniform01() * 4.0);
    SealedOutcome o = run_sealed(truthful(vals), ps, m, true);
    for (const auto& [id, pay] : o.payments) {
      CHECK(pay <= vals[static_cast<std::size_t>(id)] + 1e-7);
      CHECK(pay >= ps[static_cast<std::size_t>(id)].monopoly_reserve() - 1e-12);
    }
  }
}

TEST_CASE("conceal monotonicity holds on matroids") {
  auto ps = exp1_profiles(3);
  auto m = Matroid::uniform(2, 3);
  auto bids = truthful({3, 2, 1.5});
  CHECK(conceal_monotonicity_check(bids, ps, m, make_set({1})));
  CHECK(conceal_monotonicity_check(bids, ps, m, 0));

  Rng rng(25);
  for (int t = 0; t < 500; ++t) {
    Matroid mm = random_matroid(rng, 8);
    int n = mm.ground_size();
    auto pps = exp1_profiles(n);
    std::vector<double> vals;
    for (int i = 0; i < n; ++i) vals.push_back(rng.uniform01() * 4.0);
    Eset c = random_subset(rng, mm.ground_set());
    CHECK(conceal_monotonicity_check(truthful(vals), pps, mm, c));
  }
}

TEST_CASE("expected revenue of the single-bidder reserve auction") {
  auto est = expected_revenue_mc(exp1_profiles(1), Matroid::uniform(1, 1),
                                 200000, 42, 2);
  // Allocate iff v >= 1, pay the reserve 1: mean = 1/e.
  CHECK(std::abs(est.mean - std::exp(-1.0)) <= 4.0 * est.std_err);
  CHECK(std::abs(est.diff_mean) <= 4.0 * est.diff_std_err);

  auto est2 = expected_revenue_mc(exp1_profiles(2), Matroid::uniform(2, 2),
                                  200000, 43, 2);
  CHECK(std::abs(est2.mean - 2.0 * std::exp(-1.0)) <= 4.0 * est2.std_err);

  auto est0 = expected_revenue_mc({}, Matroid::uniform(1, 1), 100, 1, 1);
  CHECK(est0.mean == 0.0);
}

TEST_CASE("payment identity on mixed profiles") {
  std::vector<VirtualValueProfile> ps;
  ps.emplace_back(ValueDistribution::exponential(1.0));
  ps.emplace_back(ValueDistribution::uniform(0.0, 2.0));
  ps.emplace_back(ValueDistribution::exponential(2.0));
  auto est = expected_revenue_mc(ps, Matroid::uniform(2, 3), 200000, 7, 2);
  CHECK(std::abs(est.diff_mean) <= 4.0 * est.diff_std_err);
}

TEST_CASE("deterministic across worker counts") {
  auto a = expected_revenue_mc(exp1_profiles(3), Matroid::uniform(2, 3),
                               50000, 99, 1);
  auto b = expected_revenue_mc(exp1_profiles(3), Matroid::uniform(2, 3),
                               50000, 99, 2);
  auto c = expected_revenue_mc(exp1_profiles(3), Matroid::uniform(2, 3),
                               50000, 99, 8);
  CHECK(a.mean == b.mean);
  CHECK(b.mean == c.mean);
  CHECK(a.std_err == c.std_err);
}
