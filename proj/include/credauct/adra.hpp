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

#ifndef CREDAUCT_ADRA_HPP_
#define CREDAUCT_ADRA_HPP_

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "credauct/ledger.hpp"
#include "credauct/mechanism.hpp"
#include "credauct/spec_format.hpp"

namespace credauct {

// ---------------------------------------------------------------------------
// Ascending-price clock auction with clinching, on an epsilon grid in value
// space. This is the oracle the analytic simulation is cross-validated
// against; the production path never uses it.

struct ClockResult {
  std::vector<std::pair<ElementId, double>> promised;  // (id, price), asc id
  int levels = 0;

  double price_for(ElementId i) const {
    for (const auto& [id, p] : promised) {
      if (id == i) return p;
    }
    return -1.0;
  }
  Eset allocation() const {
    Eset s = 0;
    for (const auto& [id, p] : promised) s |= bit(id);
    return s;
  }
};

inline ClockResult run_clock_auction(
    const Matroid& m, const std::vector<std::pair<ElementId, double>>& values,
    double eps) {
  if (!(eps > 0)) throw InputError("run_clock_auction: eps must be > 0");
  Eset competing = 0;
  double vmax = 0.0;
  std::vector<double> value_of(static_cast<std::size_t>(m.ground_size()), 0.0);
  for (const auto& [id, v] : values) {
    competing |= bit(id);
    value_of[static_cast<std::size_t>(id)] = v;
    vmax = std::max(vmax, v);
  }
  const long max_levels = static_cast<long>(vmax / eps) + 4;

  std::map<ElementId, double> promised;
  Eset promised_ids = 0;
  double p = 0.0;
  long level = 0;
  while ((competing & ~promised_ids) != 0) {
    ++level;
    if (level > max_levels)
      throw InternalError("run_clock_auction: level guard exceeded");
    p += eps;

    Eset quitters = 0;
    for_each_element(competing, [&](ElementId i) {
      if (value_of[static_cast<std::size_t>(i)] < p) quitters |= bit(i);
    });

    if (quitters != 0) {
      // Simultaneous-drop salvage: re-admit a subset of the quitters that
      // can be allocated irrespective of how the *remaining* bidders are
      // allocated, greedily over ascending ids, at the prior price. The
      // test quantifies over survivors and promised bidders only; this is
      // what breaks ties when a whole group exits in one price step.
      Eset base = (competing & ~quitters) | promised_ids;
      Eset salvaged = 0;
      for_each_element(quitters & ~promised_ids, [&](ElementId q) {
        Eset cand = salvaged | bit(q);
        if (clinches_set(m, base | cand, cand)) salvaged = cand;
      });
      for_each_element(salvaged, [&](ElementId q) {
        promised[q] = p - eps;
        promised_ids |= bit(q);
      });
      competing &= ~quitters;
    }

    // The clinch test depends only on competing | promised, which changes
    // only at drop levels, so sweeps elsewhere cannot promote anyone.
    if (level == 1 || quitters != 0) {
      Eset sweep_set = competing | promised_ids;
      for_each_element(competing & ~promised_ids, [&](ElementId i) {
        if (clinches(m, sweep_set, i)) {
          promised[i] = p;
          promised_ids |= bit(i);
        }
      });
    }
  }

  ClockResult out;
  out.levels = static_cast<int>(level);
  for (const auto& [id, price] : promised) out.promised.emplace_back(id, price);
  return out;
}

// ---------------------------------------------------------------------------
// Analytic eps->0 simulation of the virtual-pricing transformation. Event
// prices are the distinct ironed virtual values of revealed bids; active
// bidders (bids unknown) never quit. Bids with negative ironed virtual value
// never enter the competition: the transformation's entry price at clock 0
// is already the bidder's reserve.

struct MhatResult {
  std::vector<std::pair<ElementId, double>> promised_virtual;  // (id, price)
  Eset competing = 0;

  bool promised(ElementId i) const {
    for (const auto& [id, p] : promised_virtual) {
      if (id == i) return true;
    }
    return false;
  }
  double virtual_price_for(ElementId i) const {
    for (const auto& [id, p] : promised_virtual) {
      if (id == i) return p;
    }
    return -1.0;
  }
};

// theta = sup{theta : phibar(theta) <= p_virtual}.
inline double virtual_price_to_posted(const VirtualValueProfile& profile,
                                      double p_virtual) {
  return profile.inverse_virtual_value(p_virtual);
}

inline MhatResult simulate_mhat(
    const Matroid& m, const std::vector<VirtualValueProfile>& profiles,
    const std::vector<std::pair<ElementId, double>>& revealed, Eset active,
    double up_to) {
  std::vector<std::pair<double, ElementId>> events;  // (virtual value, id)
  for (const auto& [id, bidv] : revealed) {
    const auto& prof = profiles[static_cast<std::size_t>(id)];
    double amt = std::min(bidv, prof.dist().support_hi());
    double w = amt < prof.dist().support_lo()
                   ? -1.0
                   : prof.ironed_virtual_value(amt);
    if (!(w < up_to))
      throw InputError("simulate_mhat: revealed bid at or above the stop price");
    if (w >= 0.0) events.emplace_back(w, id);
  }
  std::sort(events.begin(), events.end());

  Eset competing = active;
  for (const auto& [w, id] : events) competing |= bit(id);

  std::map<ElementId, double> promised;
  Eset promised_ids = 0;

  auto clinch_sweep = [&](double price) {
    Eset sweep_set = competing | promised_ids;
    for_each_element(competing & ~promised_ids, [&](ElementId i) {
      if (clinches(m, sweep_set, i)) {
        promised[i] = price;
        promised_ids |= bit(i);
      }
    });
  };

  clinch_sweep(0.0);

  std::size_t i = 0;
  while (i < events.size()) {
    double w = events[i].first;
    Eset group = 0;
    while (i < events.size() && events[i].first == w) {
      group |= bit(events[i].second);
      ++i;
    }
    Eset base = (competing & ~group) | promised_ids;
    Eset salvaged = 0;
    for_each_element(group & ~promised_ids, [&](ElementId q) {
      Eset cand = salvaged | bit(q);
      if (clinches_set(m, base | cand, cand)) salvaged = cand;
    });
    for_each_element(salvaged, [&](ElementId q) {
      promised[q] = w;
      promised_ids |= bit(q);
    });
    competing &= ~group;
    clinch_sweep(w);
  }

  MhatResult out;
  out.competing = competing;
  for (const auto& [id, price] : promised)
    out.promised_virtual.emplace_back(id, price);
  return out;
}

// ---------------------------------------------------------------------------
// The ascending deferred-revelation protocol.

struct AdraConfig {
  Matroid matroid;
  std::vector<VirtualValueProfile> profiles;  // real bidders
  double p_min = 1e-3;        // Gamma(0); pure doubling has no takeoff point
  double gamma_factor = 2.0;
  int max_levels = 200;
  bool stop_when_jointly_allocatable = false;  // appendix variant, A/B flag

  double gamma(double p) const {
    return std::max(gamma_factor * p, p_min);
  }
};

struct AdraFabrication {
  std::vector<Bid> fake_bids;                      // amounts; ids assigned
  std::vector<VirtualValueProfile> fake_profiles;  // adversary-chosen
  Matroid reported_matroid;
};

struct AdraPublicState {
  int level = 0;
  double price = 0.0;
  double prev_price = 0.0;
  bool final_level = false;
  const std::vector<std::optional<double>>* revealed = nullptr;  // by id
  Eset active = 0;
  Eset promised = 0;
  Eset aborted = 0;
  const std::vector<double>* deposits = nullptr;
};

class AdraStrategy {
 public:
  virtual ~AdraStrategy() = default;
  virtual std::string label() const = 0;
  virtual AdraFabrication fabricate(const AdraConfig& cfg) const = 0;
  // Fake ids to abort at this level (= fail to reveal or to top up).
  virtual Eset aborts(const AdraPublicState& state) const = 0;
};

class HonestAdraStrategy : public AdraStrategy {
 public:
  std::string label() const override { return "honest"; }
  AdraFabrication fabricate(const AdraConfig& cfg) const override {
    return AdraFabrication{{}, {}, cfg.matroid};
  }
  Eset aborts(const AdraPublicState&) const override { return 0; }
};

struct AdraResult {
  Eset allocation = 0;
  std::vector<double> payments;        // by id, 0 when unallocated
  std::vector<std::pair<ElementId, double>> promises;  // sticky, value space
  double burned = 0.0;
  double auctioneer_net = 0.0;
  int levels_used = 0;
  std::vector<double> bidder_utilities;  // per real bidder
  bool protocol_failure = false;

  double payment_for(ElementId i) const {
    return static_cast<std::size_t>(i) < payments.size()
               ? payments[static_cast<std::size_t>(i)]
               : 0.0;
  }
};

inline AdraResult run_adra(const AdraConfig& cfg, const AdraStrategy& strat,
                           const std::vector<double>& real_values,
                           std::uint64_t seed, Ledger* ledger = nullptr,
                           const AdraFabrication* prefab = nullptr) {
  const int n_real = static_cast<int>(cfg.profiles.size());
  if (static_cast<int>(real_values.size()) != n_real)
    throw InputError("run_adra: one value per real profile required");
  if (n_real > cfg.matroid.ground_size())
    throw InputError("run_adra: matroid ground smaller than bidder count");

  AdraFabrication local_fab;
  if (prefab == nullptr) {
    local_fab = strat.fabricate(cfg);
    prefab = &local_fab;
  }
  const AdraFabrication& fab = *prefab;
  const int n_fake = static_cast<int>(fab.fake_bids.size());
  const int n = n_real + n_fake;
  if (fab.reported_matroid.ground_size() < n)
    throw InputError("run_adra: reported matroid too small");
  if (static_cast<int>(fab.fake_profiles.size()) != n_fake)
    throw InputError("run_adra: one profile per fake bid required");

  std::vector<VirtualValueProfile> all_profiles = cfg.profiles;
  for (const auto& p : fab.fake_profiles) all_profiles.push_back(p);

  std::vector<double> bid_of(static_cast<std::size_t>(n));
  std::vector<double> phibar(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double raw = i < n_real ? real_values[static_cast<std::size_t>(i)]
                            : fab.fake_bids[static_cast<std::size_t>(i - n_real)].amount;
    double b = quantize_amount(raw);
    const auto& prof = all_profiles[static_cast<std::size_t>(i)];
    bid_of[static_cast<std::size_t>(i)] = b;
    double amt = std::min(b, prof.dist().support_hi());
    phibar[static_cast<std::size_t>(i)] =
        amt < prof.dist().support_lo()
            ? -std::numeric_limits<double>::infinity()
            : prof.ironed_virtual_value(amt);
  }

  // Level-indexed collateral schedule: f(p) covers every bid that can still
  // be revealed two price updates out.
  auto deposit_level = [&](double p) {
    double f = 0.0;
    for (const auto& prof : all_profiles)
      f = std::max(f, prof.inverse_virtual_value(cfg.gamma(cfg.gamma(p))));
    return f;
  };

  const Eset everyone = full_set(n);
  const Eset fake_mask = everyone & ~full_set(n_real);
  std::vector<std::optional<double>> revealed(static_cast<std::size_t>(n));
  std::vector<double> deposits(static_cast<std::size_t>(n), 0.0);
  Eset active = everyone;
  Eset aborted = 0;
  std::map<ElementId, double> promised_virtual;  // sticky
  std::map<ElementId, double> promised_pay;      // value space, sticky
  Eset promised_ids = 0;
  double burned = 0.0;

  std::vector<Pad> pads(static_cast<std::size_t>(n));
  const double f0 = deposit_level(0.0);
  if (ledger != nullptr) {
    Rng pad_rng(seed, 0, 1);
    ledger->must_append(LedgerEntry::announce());
    for (int i = 0; i < n; ++i) {
      pads[static_cast<std::size_t>(i)] = random_pad(pad_rng);
      ledger->must_append(LedgerEntry::commit_entry(
          i, commit(i, bid_of[static_cast<std::size_t>(i)],
                    pads[static_cast<std::size_t>(i)])));
    }
    for (int i = 0; i < n; ++i)
      ledger->must_append(LedgerEntry::deposit(i, f0));
    ledger->must_append(
        LedgerEntry::declare_constraint(matroid_to_spec(fab.reported_matroid)));
    ledger->must_append(
        LedgerEntry::declare_distributions(profiles_to_spec(all_profiles)));
    ledger->must_append(LedgerEntry::end_init());
  }
  for (int i = 0; i < n; ++i) deposits[static_cast<std::size_t>(i)] = f0;

  auto do_reveal = [&](ElementId id) {
    if (ledger != nullptr)
      ledger->must_append(LedgerEntry::reveal(
          id, bid_of[static_cast<std::size_t>(id)], pads[static_cast<std::size_t>(id)]));
    revealed[static_cast<std::size_t>(id)] = bid_of[static_cast<std::size_t>(id)];
    active &= ~bit(id);
  };
  auto do_abort = [&](ElementId id) {
    if (ledger != nullptr)
      ledger->must_append(
          LedgerEntry::burn(id, deposits[static_cast<std::size_t>(id)]));
    burned += deposits[static_cast<std::size_t>(id)];
    aborted |= bit(id);
    active &= ~bit(id);
  };
  auto resim = [&](double up_to) {
    std::vector<std::pair<ElementId, double>> rev;
    for (int i = 0; i < n; ++i) {
      if (revealed[static_cast<std::size_t>(i)].has_value() && !contains(aborted, i))
        rev.emplace_back(i, *revealed[static_cast<std::size_t>(i)]);
    }
    MhatResult r = simulate_mhat(fab.reported_matroid, all_profiles, rev,
                                 active, up_to);
    // Promises are sticky: the price is set the first time a bidder is
    // promised and later simulations cannot change it.
    for (const auto& [id, w] : r.promised_virtual) {
      if (!promised_virtual.count(id)) {
        promised_virtual[id] = w;
        promised_pay[id] = virtual_price_to_posted(
            all_profiles[static_cast<std::size_t>(id)], w);
        promised_ids |= bit(id);
      }
    }
  };

  int level = 0;
  double p_prev = 0.0;
  while ((active & ~promised_ids) != 0) {
    ++level;
    if (level > cfg.max_levels)
      throw InternalError("run_adra: level guard exceeded");
    double p = cfg.gamma(p_prev);
    if (ledger != nullptr)
      ledger->must_append(LedgerEntry::level_advance(level, p));

    bool event = false;
    for (int i = 0; i < n_real; ++i) {
      if (contains(active, i) && phibar[static_cast<std::size_t>(i)] < p) {
        do_reveal(i);
        event = true;
      }
    }

    AdraPublicState st{level, p, p_prev, false, &revealed, active,
                       promised_ids, aborted, &deposits};
    Eset strategy_aborts = strat.aborts(st) & active & fake_mask;
    for_each_element(strategy_aborts, [&](ElementId id) {
      do_abort(id);
      event = true;
    });

    for (int i = n_real; i < n; ++i) {
      if (contains(active, i) && phibar[static_cast<std::size_t>(i)] < p) {
        do_reveal(i);
        event = true;
      }
    }

    double f = deposit_level(p);
    for_each_element(active, [&](ElementId id) {
      if (f > deposits[static_cast<std::size_t>(id)]) {
        if (ledger != nullptr)
          ledger->must_append(LedgerEntry::deposit(
              id, f - deposits[static_cast<std::size_t>(id)]));
        deposits[static_cast<std::size_t>(id)] = f;
      }
    });

    if (event) resim(p);
    p_prev = p;

    if (cfg.stop_when_jointly_allocatable &&
        fab.reported_matroid.is_independent((active | promised_ids) &
                                            ~aborted)) {
      break;
    }
  }

  // Final level: remaining actives reveal; abort detection is one-sided
  // (a final reveal below the last loop price should have quit earlier).
  ++level;
  if (ledger != nullptr)
    ledger->must_append(LedgerEntry::level_advance(level, p_prev));
  AdraPublicState fst{level, p_prev, p_prev, true, &revealed, active,
                      promised_ids, aborted, &deposits};
  Eset final_aborts = strat.aborts(fst) & active & fake_mask;
  for_each_element(final_aborts, [&](ElementId id) { do_abort(id); });
  for_each_element(active, [&](ElementId id) {
    if (level >= 2 && phibar[static_cast<std::size_t>(id)] < p_prev) {
      do_abort(id);
    } else {
      do_reveal(id);
    }
  });
  resim(std::numeric_limits<double>::infinity());

  AdraResult res;
  res.levels_used = level;
  res.burned = burned;
  res.allocation = promised_ids & ~aborted;
  res.payments.assign(static_cast<std::size_t>(n), 0.0);
  double real_payments = 0.0;
  for (const auto& [id, pay] : promised_pay) {
    if (!contains(res.allocation, id)) continue;
    res.payments[static_cast<std::size_t>(id)] = pay;
    res.promises.emplace_back(id, pay);
    if (id < n_real) real_payments += pay;
  }
  res.auctioneer_net = real_payments - burned;
  res.bidder_utilities.assign(static_cast<std::size_t>(n_real), 0.0);
  for (int i = 0; i < n_real; ++i) {
    if (contains(res.allocation, i))
      res.bidder_utilities[static_cast<std::size_t>(i)] =
          bid_of[static_cast<std::size_t>(i)] -
          res.payments[static_cast<std::size_t>(i)];
  }
  res.protocol_failure =
      !cfg.matroid.is_independent(res.allocation & full_set(n_real));

  if (ledger != nullptr) {
    ledger->must_append(LedgerEntry::end_reveal());
    ledger->must_append(LedgerEntry::allocate(res.allocation));
    for_each_element(res.allocation, [&](ElementId id) {
      ledger->must_append(
          LedgerEntry::pay(id, res.payments[static_cast<std::size_t>(id)]));
    });
  }
  return res;
}

// Monte Carlo mean level count under the honest strategy, with the per-trial
// doubling-rule bound check.
struct LevelsEstimate {
  std::uint64_t trials = 0;
  double mean_levels = 0.0;
  double std_err = 0.0;
  int max_levels_seen = 0;
  std::uint64_t bound_violations = 0;
};

inline int adra_level_bound(const AdraConfig& cfg, double phibar_max) {
  if (!(phibar_max > cfg.p_min)) return 2;  // one loop level plus the reveal
  return static_cast<int>(
             std::ceil(std::log2(phibar_max / cfg.p_min) + 1e-12)) + 2;
}

inline LevelsEstimate expected_levels(const AdraConfig& cfg,
                                      std::uint64_t trials, std::uint64_t seed,
                                      int workers = 1) {
  HonestAdraStrategy honest;
  AdraFabrication fab = honest.fabricate(cfg);
  std::atomic<std::uint64_t> violations{0};
  std::atomic<int> max_seen{0};
  auto stats = mc_run<1>(trials, workers, [&](std::uint64_t t) {
    Rng rng(seed, t, 0);
    std::vector<double> values;
    values.reserve(cfg.profiles.size());
    double pb_max = 0.0;
    for (const auto& p : cfg.profiles) {
      double v = p.sample(rng.uniform01());
      values.push_back(v);
      // The protocol quantizes bids on entry; the bound must track the
      // quantized virtual value or boundary crossings shift the quit level.
      double vq = std::min(quantize_amount(v), p.dist().support_hi());
      pb_max = std::max(pb_max, p.ironed_virtual_value(vq));
    }
    AdraResult r = run_adra(cfg, honest, values, seed, nullptr, &fab);
    if (r.levels_used > adra_level_bound(cfg, pb_max))
      violations.fetch_add(1, std::memory_order_relaxed);
    int prev = max_seen.load(std::memory_order_relaxed);
    while (r.levels_used > prev &&
           !max_seen.compare_exchange_weak(prev, r.levels_used)) {
    }
    return std::array<double, 1>{static_cast<double>(r.levels_used)};
  });
  LevelsEstimate est;
  est.trials = trials;
  est.mean_levels = stats.mean[0];
  est.std_err = stats.std_err[0];
  est.max_levels_seen = max_seen.load();
  est.bound_violations = violations.load();
  return est;
}

// ---------------------------------------------------------------------------
// Replay: re-run the promise engine from a recorded ADRA trace. Reveals and
// burns are taken from the record per level; prices, promises, payments and
// the final allocation are recomputed and compared.

struct AdraReplayOutcome {
  bool valid = false;
  std::string error;
  AdraResult result;
};

inline AdraReplayOutcome replay_adra(const std::vector<LedgerEntry>& entries) {
  AdraReplayOutcome out;
  auto fail = [&](std::string why) {
    out.valid = false;
    out.error = std::move(why);
    return out;
  };

  Ledger check;
  for (const auto& e : entries) {
    if (!check.append(e).has_value())
      return fail("illegal entry at seq " + std::to_string(e.seq) + ": " +
                  check.audit_log().back().second);
  }

  std::optional<Matroid> matroid;
  std::vector<VirtualValueProfile> profiles;
  int n = 0;
  bool saw_allocate = false;
  Eset recorded_alloc = 0;
  std::vector<std::pair<ElementId, double>> recorded_pays;
  for (const auto& e : entries) {
    if (e.kind == EntryKind::Commit) ++n;
    if (e.kind == EntryKind::DeclareConstraint) matroid = parse_matroid(e.text);
    if (e.kind == EntryKind::DeclareDistributions)
      profiles = parse_profiles(e.text);
    if (e.kind == EntryKind::Allocate) {
      saw_allocate = true;
      recorded_alloc = e.set;
    }
    if (e.kind == EntryKind::Pay) recorded_pays.emplace_back(e.who, e.amount);
  }
  if (!matroid.has_value() || static_cast<int>(profiles.size()) != n)
    return fail("incomplete protocol: missing or short declarations");
  if (!saw_allocate) return fail("incomplete protocol: no allocation");

  Eset active = full_set(n);
  Eset aborted = 0;
  std::vector<std::pair<ElementId, double>> revealed;
  std::map<ElementId, double> promised_virtual, promised_pay;
  Eset promised_ids = 0;
  double burned = 0.0;
  double price = 0.0;
  bool in_levels = false;

  auto resim = [&](double up_to) {
    std::vector<std::pair<ElementId, double>> rev;
    for (const auto& [id, b] : revealed) {
      if (!contains(aborted, id)) rev.emplace_back(id, b);
    }
    MhatResult r = simulate_mhat(*matroid, profiles, rev, active, up_to);
    for (const auto& [id, w] : r.promised_virtual) {
      if (!promised_virtual.count(id)) {
        promised_virtual[id] = w;
        promised_pay[id] = virtual_price_to_posted(
            profiles[static_cast<std::size_t>(id)], w);
        promised_ids |= bit(id);
      }
    }
  };

  // Walk level blocks: each LevelAdvance closes the previous block.
  bool block_event = false;
  double block_price = 0.0;
  bool final_block = false;
  auto close_block = [&]() {
    if (in_levels && block_event)
      resim(final_block ? std::numeric_limits<double>::infinity() : block_price);
  };
  for (const auto& e : entries) {
    switch (e.kind) {
      case EntryKind::LevelAdvance:
        close_block();
        in_levels = true;
        final_block = e.amount <= price && price > 0.0;  // no price increase
        price = e.amount;
        block_price = e.amount;
        block_event = false;
        break;
      case EntryKind::Reveal: {
        const LedgerEntry* c = nullptr;
        for (const auto& e2 : entries) {
          if (e2.kind == EntryKind::Commit && e2.who == e.who) c = &e2;
        }
        if (c == nullptr || !verify_reveal(Commitment{c->digest}, e.who,
                                           nano_to_amount(e.nano), e.pad))
          return fail("reveal does not verify for id " + std::to_string(e.who));
        revealed.emplace_back(e.who, nano_to_amount(e.nano));
        active &= ~bit(e.who);
        block_event = true;
        break;
      }
      case EntryKind::Burn:
        burned += e.amount;
        aborted |= bit(e.who);
        active &= ~bit(e.who);
        block_event = true;
        break;
      case EntryKind::EndReveal:
        // Final block always simulates to completion.
        final_block = true;
        close_block();
        in_levels = false;
        break;
      default:
        break;
    }
  }

  AdraResult res;
  res.allocation = promised_ids & ~aborted;
  res.burned = burned;
  res.payments.assign(static_cast<std::size_t>(n), 0.0);
  for (const auto& [id, pay] : promised_pay) {
    if (contains(res.allocation, id)) {
      res.payments[static_cast<std::size_t>(id)] = pay;
      res.promises.emplace_back(id, pay);
    }
  }
  if (res.allocation != recorded_alloc)
    return fail("recorded allocation differs from recomputation");
  std::sort(recorded_pays.begin(), recorded_pays.end());
  if (recorded_pays.size() != res.promises.size())
    return fail("recorded payments differ from recomputation");
  for (std::size_t i = 0; i < recorded_pays.size(); ++i) {
    if (recorded_pays[i] != res.promises[i])
      return fail("recorded payment differs for id " +
                  std::to_string(recorded_pays[i].first));
  }
  out.valid = true;
  out.result = std::move(res);
  return out;
}

}  // namespace credauct

#endif  // CREDAUCT_ADRA_HPP_
