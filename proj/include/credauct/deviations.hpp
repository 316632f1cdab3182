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

#ifndef CREDAUCT_DEVIATIONS_HPP_
#define CREDAUCT_DEVIATIONS_HPP_

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "credauct/dra.hpp"

namespace credauct {

// ---------------------------------------------------------------------------
// Closed-form expected revenue gaps (strategic minus honest), Exp(1) bidders.

// Single bidder, fake bid 1+delta, conceal iff v in [1, 1+delta), f = 1-eps.
inline double gap_single(double delta, double eps) {
  if (!(delta > 0.0) || eps < 0.0 || eps >= 1.0)
    throw InputError("gap_single: need delta > 0, eps in [0,1)");
  return delta * std::exp(-(1.0 + delta)) -
         (1.0 - eps) * (std::exp(-1.0) - std::exp(-(1.0 + delta)));
}

// k items, k iid bidders.
inline double gap_kk(int k, double delta, double eps) {
  if (k < 1) throw InputError("gap_kk: k >= 1");
  double kd = static_cast<double>(k);
  return kd * delta * std::exp(-kd * (1.0 + delta)) -
         (1.0 - eps) * (std::exp(-kd) - std::exp(-kd * (1.0 + delta)));
}

// One item, n iid bidders.
inline double gap_1n(int n, double delta, double eps) {
  if (n < 1) throw InputError("gap_1n: n >= 1");
  double nd = static_cast<double>(n);
  double a = 1.0 - std::exp(-(1.0 + delta));
  double b = 1.0 - std::exp(-1.0);
  return delta * nd * std::exp(-(1.0 + delta)) * std::pow(b, nd - 1.0) -
         (1.0 - eps) * (std::pow(a, nd) - std::pow(b, nd));
}

// Private-channel k-item separation: extra revenue k*delta*e^{-(1+delta)}
// against the one-unit license fee.
inline double private_sep_gain(int k, double delta) {
  if (k < 1) throw InputError("private_sep_gain: k >= 1");
  return static_cast<double>(k) * delta * std::exp(-(1.0 + delta)) - 1.0;
}

// ---------------------------------------------------------------------------
// Reported-matroid extension: one fabricated element competing alongside a
// target element (same block / parallel edge), or globally for uniform.

inline Matroid extend_with_fake(const Matroid& m,
                                std::optional<ElementId> target = std::nullopt) {
  switch (m.kind()) {
    case MatroidKind::Uniform:
      return Matroid::uniform(m.uniform_rank(), m.ground_size() + 1);
    case MatroidKind::Partition: {
      if (!target.has_value())
        throw InputError("extend_with_fake: partition needs a target element");
      auto blocks = m.blocks();
      for (auto& [blk, cap] : blocks) {
        if (contains(blk, *target)) blk |= bit(m.ground_size());
      }
      return Matroid::partition(std::move(blocks));
    }
    case MatroidKind::Graphic: {
      if (!target.has_value())
        throw InputError("extend_with_fake: graphic needs a target edge");
      auto edges = m.graphic_edges();
      edges.push_back(edges[static_cast<std::size_t>(*target)]);
      return Matroid::graphic(m.graphic_vertices(), std::move(edges));
    }
    case MatroidKind::Explicit:
      throw InputError("extend_with_fake: explicit families unsupported");
  }
  throw InternalError("extend_with_fake: unknown kind");
}

// ---------------------------------------------------------------------------
// Conceal-interval strategies (the section-5 lower-bound deviations, and the
// finite families scanned by credibility_scan).

class ConcealIntervalStrategy : public DraStrategy {
 public:
  enum class Mode { MaxIn, MinAllAbove };

  ConcealIntervalStrategy(double fake_bid, double lo, double hi, Mode mode,
                          Eset scope = 0,
                          std::optional<ElementId> parallel_to = std::nullopt)
      : fake_bid_(fake_bid), lo_(lo), hi_(hi), mode_(mode), scope_(scope),
        parallel_to_(parallel_to) {
    if (!(lo <= hi) || !(hi <= fake_bid))
      throw InputError("conceal interval: need lo <= hi <= fake_bid");
  }

  std::string label() const override {
    char buf[96];
    std::snprintf(buf, sizeof buf, "fake=%.4g conceal=[%.4g,%.4g) %s", fake_bid_,
                  lo_, hi_, mode_ == Mode::MaxIn ? "max-in" : "min-all-above");
    return buf;
  }

  DraFabrication fabricate(const DraConfig& cfg) const override {
    DraFabrication fab;
    fab.fake_bids.push_back(Bid{0, fake_bid_, 0, false});
    fab.reported_matroid = extend_with_fake(cfg.true_matroid, parallel_to_);
    fab.reported_profiles = cfg.real_profiles;
    // Fake declares the same distribution kind the real bidders carry.
    fab.reported_profiles.push_back(cfg.real_profiles.front());
    return fab;
  }

  Eset conceal(const std::vector<double>& revealed_real,
               const DraFabrication& fab) const override {
    Eset scope = scope_ ? scope_ : full_set(static_cast<int>(revealed_real.size()));
    double mn = 1e300, mx = -1e300;
    for (std::size_t i = 0; i < revealed_real.size(); ++i) {
      if (!contains(scope, static_cast<ElementId>(i))) continue;
      mn = std::min(mn, revealed_real[i]);
      mx = std::max(mx, revealed_real[i]);
    }
    bool trigger = mode_ == Mode::MaxIn ? (mx >= lo_ && mx < hi_)
                                        : (mn >= lo_ && mn < hi_);
    ElementId fake_id = static_cast<ElementId>(revealed_real.size());
    (void)fab;
    return trigger ? bit(fake_id) : 0;
  }

 private:
  double fake_bid_, lo_, hi_;
  Mode mode_;
  Eset scope_;
  std::optional<ElementId> parallel_to_;
};

// Single-fake deviation: one fake at `fake_bid`, concealed iff the relevant real
// bid lands in [lo, hi). The kk variant conceals on the minimum (with all
// bids above lo), the 1n variant on the maximum.
inline ConcealIntervalStrategy conceal_interval_strategy(
    double fake_bid, double lo, double hi,
    ConcealIntervalStrategy::Mode mode = ConcealIntervalStrategy::Mode::MaxIn) {
  return ConcealIntervalStrategy(fake_bid, lo, hi, mode);
}

// ---------------------------------------------------------------------------
// Relaxed DRA over downward-closed (possibly non-matroid) reported
// constraints. Only this module may run it; the runner in dra.hpp restricts
// reported constraints to matroids, as the protocol prescribes.

inline Eset family_optimal_allocation(
    const std::vector<Bid>& bids, const std::vector<VirtualValueProfile>& profiles,
    const DownwardClosedFamily& fam) {
  std::vector<double> w(static_cast<std::size_t>(fam.ground_size),
                        -std::numeric_limits<double>::infinity());
  Eset present = 0;
  for (const Bid& b : bids) {
    const auto& p = profiles[static_cast<std::size_t>(b.profile)];
    double amt = std::min(b.amount, p.dist().support_hi());
    if (amt >= p.dist().support_lo())
      w[static_cast<std::size_t>(b.bidder)] = p.ironed_virtual_value(amt);
    present |= bit(b.bidder);
  }
  Eset best = 0;
  double best_surplus = 0.0;
  for (Eset m : fam.maximal_sets) {
    Eset cand = 0;
    double surplus = 0.0;
    for_each_element(m & present, [&](ElementId e) {
      if (w[static_cast<std::size_t>(e)] > 0.0) {
        cand |= bit(e);
        surplus += w[static_cast<std::size_t>(e)];
      }
    });
    if (surplus > best_surplus + 1e-15 ||
        (surplus > best_surplus - 1e-15 && cand != best &&
         set_seq_less(cand, best) && best != 0)) {
      best = cand;
      best_surplus = surplus;
    }
  }
  return best;
}

// Exact critical bid under the family allocator: the infimum winning virtual
// value is best_rival - best_cohabitant, where best_rival is the largest
// positive-weight surplus of any feasible set ignoring i and best_cohabitant
// is the largest co-surplus of a maximal set containing i.
inline double family_critical_bid(ElementId i, const std::vector<Bid>& bids,
                                  const std::vector<VirtualValueProfile>& profiles,
                                  const DownwardClosedFamily& fam) {
  const Bid* self = nullptr;
  for (const Bid& b : bids) {
    if (b.bidder == i) self = &b;
  }
  if (self == nullptr || !contains(family_optimal_allocation(bids, profiles, fam), i))
    throw InputError("family_critical_bid: i not allocated");

  std::vector<double> w(static_cast<std::size_t>(fam.ground_size), 0.0);
  Eset present = 0;
  for (const Bid& b : bids) {
    if (b.bidder == i) continue;
    const auto& p = profiles[static_cast<std::size_t>(b.profile)];
    double amt = std::min(b.amount, p.dist().support_hi());
    if (amt >= p.dist().support_lo()) {
      double vv = p.ironed_virtual_value(amt);
      if (vv > 0.0) {
        w[static_cast<std::size_t>(b.bidder)] = vv;
        present |= bit(b.bidder);
      }
    }
  }
  double best_rival = 0.0, best_co = -1.0;
  for (Eset m : fam.maximal_sets) {
    double co = 0.0;
    for_each_element(m & present, [&](ElementId e) {
      co += w[static_cast<std::size_t>(e)];
    });
    best_rival = std::max(best_rival, co);
    if (contains(m, i)) best_co = std::max(best_co, co);
  }
  if (best_co < 0.0) throw InputError("family_critical_bid: i never feasible");
  const auto& prof = profiles[static_cast<std::size_t>(self->profile)];
  double threshold = std::max(0.0, best_rival - best_co);
  return std::max(prof.monopoly_reserve(), prof.inverse_virtual_value(threshold));
}

struct RelaxedFabrication {
  std::vector<Bid> fake_bids;
  DownwardClosedFamily reported_family;
  std::vector<VirtualValueProfile> reported_profiles;
};

class RelaxedDraStrategy {
 public:
  virtual ~RelaxedDraStrategy() = default;
  virtual RelaxedFabrication fabricate(const DraConfig& cfg) const = 0;
  virtual Eset conceal(const std::vector<double>& revealed_real,
                       const RelaxedFabrication& fab) const = 0;
};

inline DraResult run_dra_relaxed(const DraConfig& cfg,
                                 const RelaxedDraStrategy& strat,
                                 const std::vector<double>& real_values) {
  const int n_real = static_cast<int>(cfg.real_profiles.size());
  if (static_cast<int>(real_values.size()) != n_real)
    throw InputError("run_dra_relaxed: one value per real profile");
  RelaxedFabrication fab = strat.fabricate(cfg);
  const int n_commit = n_real + static_cast<int>(fab.fake_bids.size());

  std::vector<Bid> all_bids;
  for (int i = 0; i < n_real; ++i)
    all_bids.push_back(Bid{i, quantize_amount(real_values[static_cast<std::size_t>(i)]), i, true});
  for (std::size_t j = 0; j < fab.fake_bids.size(); ++j) {
    Bid b = fab.fake_bids[j];
    b.bidder = n_real + static_cast<int>(j);
    b.profile = n_real + static_cast<int>(j);
    b.real = false;
    all_bids.push_back(b);
  }
  const double f = detail::collateral_for(cfg, fab.reported_profiles, n_commit);

  std::vector<double> revealed_real;
  for (int i = 0; i < n_real; ++i)
    revealed_real.push_back(all_bids[static_cast<std::size_t>(i)].amount);
  Eset concealed = strat.conceal(revealed_real, fab);
  if (concealed & full_set(n_real))
    throw ProtocolError("run_dra_relaxed: cannot conceal a real bid");

  std::vector<Bid> revealed;
  for (const Bid& b : all_bids) {
    if (!contains(concealed, b.bidder)) revealed.push_back(b);
  }

  DraResult res;
  res.collateral = f;
  res.outcome.allocated =
      family_optimal_allocation(revealed, fab.reported_profiles, fab.reported_family);
  for_each_element(res.outcome.allocated, [&](ElementId e) {
    const Bid* b = nullptr;
    for (const Bid& rb : revealed) {
      if (rb.bidder == e) b = &rb;
    }
    const auto& p = fab.reported_profiles[static_cast<std::size_t>(b->profile)];
    res.outcome.virtual_surplus += p.ironed_virtual_value(
        std::min(b->amount, p.dist().support_hi()));
    res.outcome.payments.emplace_back(
        e, family_critical_bid(e, revealed, fab.reported_profiles,
                               fab.reported_family));
  });
  res.burned = f * set_size(concealed);
  double real_payments = 0.0;
  res.bidder_utilities.assign(static_cast<std::size_t>(n_real), 0.0);
  for (const auto& [id, pay] : res.outcome.payments) {
    if (id < n_real) {
      real_payments += pay;
      res.bidder_utilities[static_cast<std::size_t>(id)] =
          all_bids[static_cast<std::size_t>(id)].amount - pay;
    }
  }
  res.auctioneer_net = real_payments - res.burned;
  res.protocol_failure = !cfg.true_matroid.is_independent(
      res.outcome.allocated & full_set(n_real));
  return res;
}

// ---------------------------------------------------------------------------
// Creative-constraint attack: report F-hat = {W u {x}, W : W in F} u {y},
// fabricate b_x = b_y = f+2, conceal x exactly when the chosen bidder alone
// clears the reserve and bids above f+2.

class CreativeConstraintAttack : public RelaxedDraStrategy {
 public:
  explicit CreativeConstraintAttack(double f) : f_(f) {
    if (f < 0) throw InputError("creative_constraint_attack: f >= 0");
  }

  RelaxedFabrication fabricate(const DraConfig& cfg) const override {
    const int n = static_cast<int>(cfg.real_profiles.size());
    RelaxedFabrication fab;
    DownwardClosedFamily base = cfg.true_matroid.kind() == MatroidKind::Explicit
                                    ? cfg.true_matroid.family()
                                    : to_explicit(cfg.true_matroid);
    fab.reported_family.ground_size = n + 2;
    const ElementId x = n, y = n + 1;
    for (Eset w : base.maximal_sets)
      fab.reported_family.maximal_sets.push_back(w | bit(x));
    if (base.maximal_sets.empty())
      fab.reported_family.maximal_sets.push_back(bit(x));
    fab.reported_family.maximal_sets.push_back(bit(y));
    fab.fake_bids.push_back(Bid{x, f_ + 2.0, 0, false});
    fab.fake_bids.push_back(Bid{y, f_ + 2.0, 0, false});
    fab.reported_profiles = cfg.real_profiles;
    fab.reported_profiles.push_back(cfg.real_profiles.front());
    fab.reported_profiles.push_back(cfg.real_profiles.front());
    return fab;
  }

  Eset conceal(const std::vector<double>& revealed_real,
               const RelaxedFabrication& fab) const override {
    // Bidder i = lowest-id feasible singleton = bidder 0 for our configs.
    const ElementId i = 0;
    bool others_below_reserve = true;
    for (std::size_t j = 0; j < revealed_real.size(); ++j) {
      if (static_cast<ElementId>(j) != i && revealed_real[j] >= 1.0)
        others_below_reserve = false;
    }
    const ElementId x = static_cast<ElementId>(revealed_real.size());
    if (others_below_reserve && revealed_real[static_cast<std::size_t>(i)] > f_ + 2.0)
      return bit(x);
    (void)fab;
    return 0;
  }

 private:
  double f_;
};

// ---------------------------------------------------------------------------
// Fixed non-matroid attack (the lower bound for a known non-matroid F):
// fabricate X u Y at f+2 with (X-hat, Y) the non-matroid witness, conceal all
// of X when the real bidder in X-hat bids above |X|(f+1)+1.

class FixedNonMatroidAttack : public RelaxedDraStrategy {
 public:
  FixedNonMatroidAttack(const DownwardClosedFamily& family, double f)
      : family_(family), f_(f) {
    auto [xh, y] = non_matroid_witness(family);
    xhat_ = xh;
    y_ = y;
    real_slot_ = set_elements(xh)[0];
    x_ = xh & ~bit(real_slot_);
  }

  // The single real bidder occupies real_slot_ in the reported family; the
  // remaining |X-hat|-1 + |Y| elements are all fabricated.
  ElementId real_slot() const { return real_slot_; }
  double predicted_conceal_net() const { return set_size(x_) + 1.0; }
  double conceal_threshold() const {
    return set_size(x_) * (f_ + 1.0) + 1.0;
  }

  RelaxedFabrication fabricate(const DraConfig& cfg) const override {
    RelaxedFabrication fab;
    fab.reported_family = family_;
    // One real bidder mapped onto real_slot_; every other witness element is
    // fabricated at f+2. Ids in the reported family are the family's own.
    for_each_element(x_ | y_, [&](ElementId e) {
      fab.fake_bids.push_back(Bid{e, f_ + 2.0, 0, false});
    });
    fab.reported_profiles.assign(static_cast<std::size_t>(family_.ground_size),
                                 cfg.real_profiles.front());
    return fab;
  }

  Eset conceal(const std::vector<double>& revealed_real,
               const RelaxedFabrication&) const override {
    if (revealed_real[0] > conceal_threshold()) return x_;
    return 0;
  }

  Eset x() const { return x_; }
  Eset y() const { return y_; }

 private:
  DownwardClosedFamily family_;
  double f_;
  Eset xhat_ = 0, y_ = 0, x_ = 0;
  ElementId real_slot_ = 0;
};

// Runs the fixed-nonmatroid attack protocol for a single real bidder whose
// bid lands on the witness slot. Ids are family-element ids throughout.
inline DraResult run_fixed_nonmatroid(const FixedNonMatroidAttack& attack,
                                      const DraConfig& cfg, double real_value,
                                      double f) {
  RelaxedFabrication fab = attack.fabricate(cfg);
  std::vector<Bid> bids;
  bids.push_back(Bid{attack.real_slot(), quantize_amount(real_value),
                     attack.real_slot(), true});
  for (const Bid& b : fab.fake_bids) {
    Bid fb = b;
    fb.profile = fb.bidder;
    bids.push_back(fb);
  }
  Eset concealed = attack.conceal({quantize_amount(real_value)}, fab);

  std::vector<Bid> revealed;
  for (const Bid& b : bids) {
    if (!contains(concealed, b.bidder)) revealed.push_back(b);
  }
  DraResult res;
  res.collateral = f;
  res.outcome.allocated =
      family_optimal_allocation(revealed, fab.reported_profiles, fab.reported_family);
  for_each_element(res.outcome.allocated, [&](ElementId e) {
    res.outcome.payments.emplace_back(
        e, family_critical_bid(e, revealed, fab.reported_profiles,
                               fab.reported_family));
  });
  res.burned = f * set_size(concealed);
  double real_pay = res.outcome.payment_for(attack.real_slot());
  res.auctioneer_net = real_pay - res.burned;
  res.bidder_utilities = {contains(res.outcome.allocated, attack.real_slot())
                              ? real_value - real_pay
                              : 0.0};
  return res;
}

// ---------------------------------------------------------------------------
// Private-communication k-item construction: k per-bidder views, each facing
// k-1 large fakes plus one fake at 1+delta concealed from bidders in
// [1, 1+delta); one collateral unit backs the shared fake identity and is
// burned unconditionally (the license-fee lower bound).

struct PrivateKkResult {
  std::uint64_t trials = 0;
  double strategic_mean = 0.0, strategic_std_err = 0.0;
  double honest_mean = 0.0, honest_std_err = 0.0;
  double diff_mean = 0.0, diff_std_err = 0.0;
};

inline PrivateKkResult private_kk_simulation(int k, double delta,
                                             double collateral,
                                             std::uint64_t trials,
                                             std::uint64_t seed,
                                             int workers = 1) {
  if (k < 1) throw InputError("private_kk_simulation: k >= 1");
  auto stats = mc_run<3>(trials, workers, [&](std::uint64_t t) {
    Rng rng(seed, t, 0);
    double honest = 0.0, strategic = 0.0;
    for (int i = 0; i < k; ++i) {
      double v = -std::log1p(-rng.uniform01());
      if (v >= 1.0) honest += 1.0;
      if (v >= 1.0 + delta) strategic += 1.0 + delta;
      else if (v >= 1.0) strategic += 1.0;  // fake concealed from this bidder
    }
    strategic -= collateral;
    return std::array<double, 3>{strategic, honest, strategic - honest};
  });
  PrivateKkResult r;
  r.trials = trials;
  r.strategic_mean = stats.mean[0];
  r.strategic_std_err = stats.std_err[0];
  r.honest_mean = stats.mean[1];
  r.honest_std_err = stats.std_err[1];
  r.diff_mean = stats.mean[2];
  r.diff_std_err = stats.std_err[2];
  return r;
}

// ---------------------------------------------------------------------------
// Stratified Monte Carlo twin for the k-item k-bidder gap. Strata partition
// the value space on the strategy's trigger events, with exact Exponential
// stratum probabilities; each stratum runs the real protocol on conditional
// draws. The paired difference is constant within each stratum, so the
// variance collapses and coarse trial counts resolve ~1e-5 gaps.

struct GapEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  std::uint64_t trials = 0;
};

inline GapEstimate kk_gap_mc_stratified(int k, double delta, double f,
                                        std::uint64_t trials, std::uint64_t seed,
                                        int workers = 1) {
  const double kd = static_cast<double>(k);
  const double p_all_above_hi = std::exp(-kd * (1.0 + delta));
  const double p_trigger = std::exp(-kd) - p_all_above_hi;
  const double p_rest = 1.0 - p_all_above_hi - p_trigger;

  DraConfig cfg;
  cfg.true_matroid = Matroid::uniform(k, k);
  for (int i = 0; i < k; ++i)
    cfg.real_profiles.emplace_back(ValueDistribution::exponential(1.0));
  cfg.collateral = CollateralRule::fixed_rule(f);
  cfg.reserve_upper_bound = 1.0;
  ConcealIntervalStrategy strat(1.0 + delta, 1.0, 1.0 + delta,
                                ConcealIntervalStrategy::Mode::MinAllAbove);
  HonestDraStrategy honest;

  struct Stratum {
    double prob;
    int mode;  // 0: all >= 1+delta, 1: trigger, 2: rest
  };
  const Stratum strata[3] = {{p_all_above_hi, 0}, {p_trigger, 1}, {p_rest, 2}};

  double mean = 0.0, var = 0.0;
  std::uint64_t used = 0;
  for (const auto& st : strata) {
    std::uint64_t n = std::max<std::uint64_t>(1000, static_cast<std::uint64_t>(
        static_cast<double>(trials) * st.prob));
    n = std::min(n, trials);
    auto stats = mc_run<1>(n, workers, [&](std::uint64_t t) {
      Rng rng(seed ^ (0x9e37u + static_cast<unsigned>(st.mode)), t, 0);
      std::vector<double> values(static_cast<std::size_t>(k));
      while (true) {
        bool all_above_lo = true, all_above_hi = true;
        for (auto& v : values) {
          double u = rng.uniform01();
          double e = -std::log1p(-u);
          // Conditional sampling: memoryless shift for the >=1 strata.
          v = st.mode == 2 ? e : 1.0 + e;
          if (v < 1.0) all_above_lo = false;
          if (v < 1.0 + delta) all_above_hi = false;
        }
        if (st.mode == 0) {
          // Need all >= 1+delta: shift again instead of rejecting.
          for (auto& v : values) v += delta;
          break;
        }
        if (st.mode == 1 && all_above_lo && !all_above_hi) break;
        if (st.mode == 2 && !all_above_lo) break;
      }
      DraResult h = run_dra(cfg, honest, values, seed);
      DraResult s = run_dra(cfg, strat, values, seed);
      return std::array<double, 1>{s.auctioneer_net - h.auctioneer_net};
    });
    mean += st.prob * stats.mean[0];
    var += st.prob * st.prob * stats.std_err[0] * stats.std_err[0];
    used += n;
  }
  return GapEstimate{mean, std::sqrt(var), used};
}

}  // namespace credauct

#endif  // CREDAUCT_DEVIATIONS_HPP_
