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

#ifndef CREDAUCT_EXPERIMENTS_HPP_
#define CREDAUCT_EXPERIMENTS_HPP_

#include <memory>
#include <string>
#include <vector>

#include "credauct/adra.hpp"
#include "credauct/config.hpp"
#include "credauct/deviations.hpp"

namespace credauct {

// Exit codes follow the CI convention: 0 ok, 2 acceptance-threshold
// violation, 1 error (thrown as exceptions and mapped by the CLI).
struct ExperimentOutput {
  int exit_code = 0;
  std::string csv;
};

namespace csvdetail {

inline std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace csvdetail

// The scanned strategy family, built from the declared grid in the config:
// one conceal-interval strategy per delta, with the conceal mode, scope and
// parallel target configured per matroid kind.
inline std::vector<std::unique_ptr<ConcealIntervalStrategy>> scan_family(
    const ExperimentConfig& cfg, double reserve) {
  std::vector<std::unique_ptr<ConcealIntervalStrategy>> out;
  std::string deltas = cfg.get_or("scan_deltas", "0.02,0.05,0.1,0.2,0.3,0.5");
  auto mode = cfg.get_or("scan_mode", "max-in") == "min-all-above"
                  ? ConcealIntervalStrategy::Mode::MinAllAbove
                  : ConcealIntervalStrategy::Mode::MaxIn;
  Eset scope = 0;
  if (cfg.has("scan_scope")) {
    for (const auto& id : detail::split(cfg.get("scan_scope"), ' ')) {
      if (!detail::strip(id).empty()) scope |= bit(std::stoi(id));
    }
  }
  std::optional<ElementId> target;
  if (cfg.has("scan_target")) target = static_cast<ElementId>(cfg.get_int("scan_target"));
  for (const auto& ds : detail::split(deltas, ',')) {
    double d = std::strtod(detail::strip(ds).c_str(), nullptr);
    if (!(d > 0)) continue;
    out.push_back(std::make_unique<ConcealIntervalStrategy>(
        reserve * (1.0 + d), reserve, reserve * (1.0 + d), mode, scope, target));
  }
  return out;
}

inline ExperimentOutput run_payment_identity(const ExperimentConfig& cfg) {
  Matroid m = cfg.matroid();
  auto ps = cfg.profiles();
  std::uint64_t trials = static_cast<std::uint64_t>(cfg.get_int_or("trials", 1000000));
  std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int_or("seed", 1));
  int workers = static_cast<int>(cfg.get_int_or("workers", 1));
  RevenueEstimate est = expected_revenue_mc(ps, m, trials, seed, workers);
  double sigmas = est.diff_std_err > 0 ? std::abs(est.diff_mean) / est.diff_std_err : 0.0;
  bool pass = std::abs(est.diff_mean) <= 4.0 * est.diff_std_err;
  std::string csv =
      "experiment,matroid,dists,trials,seed,mean_payment,se_payment,"
      "mean_virtual_surplus,se_virtual_surplus,diff,se_diff,sigmas,pass\n";
  csv += "payment-identity," + matroid_to_spec(m) + "," +
         cfg.get("dists") + "," + std::to_string(trials) + "," +
         std::to_string(seed) + "," + csvdetail::num(est.mean) + "," +
         csvdetail::num(est.std_err) + "," + csvdetail::num(est.vs_mean) + "," +
         csvdetail::num(est.vs_std_err) + "," + csvdetail::num(est.diff_mean) +
         "," + csvdetail::num(est.diff_std_err) + "," + csvdetail::num(sigmas) +
         "," + (pass ? "yes" : "no") + "\n";
  return {pass ? 0 : 2, csv};
}

inline ExperimentOutput run_credibility_scan(const ExperimentConfig& cfg) {
  DraConfig dcfg;
  dcfg.true_matroid = cfg.matroid();
  dcfg.real_profiles = cfg.profiles();
  dcfg.collateral = cfg.collateral();
  dcfg.reserve_upper_bound =
      cfg.get_double_or("reserve", collateral_mhr(dcfg.real_profiles));
  std::uint64_t trials = static_cast<std::uint64_t>(cfg.get_int_or("trials", 1000000));
  std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int_or("seed", 1));
  int workers = static_cast<int>(cfg.get_int_or("workers", 1));

  auto family = scan_family(cfg, collateral_mhr(dcfg.real_profiles));
  std::vector<const DraStrategy*> ptrs;
  for (const auto& s : family) ptrs.push_back(s.get());
  ScanReport rep = credibility_scan(dcfg, ptrs, trials, seed, workers);

  std::string csv =
      "experiment,strategy,trials,seed,mean_net,se_net,diff_vs_honest,"
      "se_diff,sigmas,flagged,protocol_failures\n";
  csv += "credibility-scan,honest," + std::to_string(trials) + "," +
         std::to_string(seed) + "," + csvdetail::num(rep.honest_mean) + "," +
         csvdetail::num(rep.honest_std_err) + ",0,0,0,no,0\n";
  bool any_flag = false;
  for (const auto& row : rep.rows) {
    double sigmas = row.diff_std_err > 0 ? row.diff_mean / row.diff_std_err : 0.0;
    any_flag = any_flag || row.flagged;
    csv += "credibility-scan," + row.label + "," + std::to_string(trials) +
           "," + std::to_string(seed) + "," + csvdetail::num(row.mean_net) +
           "," + csvdetail::num(row.std_err) + "," +
           csvdetail::num(row.diff_mean) + "," + csvdetail::num(row.diff_std_err) +
           "," + csvdetail::num(sigmas) + "," + (row.flagged ? "yes" : "no") +
           "," + std::to_string(row.failures) + "\n";
  }
  return {any_flag ? 2 : 0, csv};
}

inline ExperimentOutput run_gap_formulas(const ExperimentConfig& cfg) {
  double delta = cfg.get_double_or("delta", 0.1);
  double eps = cfg.get_double_or("eps", 0.1);
  int k = static_cast<int>(cfg.get_int_or("k", 2));
  int n = static_cast<int>(cfg.get_int_or("n", 2));
  std::string csv = "experiment,formula,k,n,delta,eps,gap,sign\n";
  auto row = [&](const std::string& name, int kk, int nn, double gap) {
    csv += "gap-formulas," + name + "," + std::to_string(kk) + "," +
           std::to_string(nn) + "," + csvdetail::num(delta) + "," +
           csvdetail::num(eps) + "," + csvdetail::num(gap) + "," +
           (gap > 0 ? "positive" : "non-positive") + "\n";
  };
  row("gap_single", 1, 1, gap_single(delta, eps));
  row("gap_kk", k, k, gap_kk(k, delta, eps));
  row("gap_1n", 1, n, gap_1n(n, delta, eps));
  row("private_sep_gain", k, k, private_sep_gain(k, delta));
  return {0, csv};
}

inline ExperimentOutput run_adra_vs_sealed(const ExperimentConfig& cfg) {
  AdraConfig acfg;
  acfg.matroid = cfg.matroid();
  acfg.profiles = cfg.profiles();
  acfg.p_min = cfg.get_double_or("p_min", 1e-3);
  std::uint64_t instances = static_cast<std::uint64_t>(cfg.get_int_or("trials", 1000));
  std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int_or("seed", 1));
  HonestAdraStrategy honest;
  AdraFabrication fab = honest.fabricate(acfg);

  std::string csv = "experiment,instance,seed,match,max_payment_diff\n";
  bool all_match = true;
  for (std::uint64_t t = 0; t < instances; ++t) {
    Rng rng(seed, t, 0);
    std::vector<double> values;
    std::vector<Bid> bids;
    for (std::size_t i = 0; i < acfg.profiles.size(); ++i) {
      double v = quantize_amount(acfg.profiles[i].sample(rng.uniform01()));
      values.push_back(v);
      bids.push_back(Bid{static_cast<ElementId>(i), v, static_cast<int>(i), true});
    }
    AdraResult a = run_adra(acfg, honest, values, seed, nullptr, &fab);
    SealedOutcome s = run_sealed(bids, acfg.profiles, acfg.matroid, true);
    double max_diff = 0.0;
    bool match = a.allocation == s.allocated;
    for (const auto& [id, pay] : s.payments)
      max_diff = std::max(max_diff, std::abs(a.payment_for(id) - pay));
    match = match && max_diff <= 1e-6;
    all_match = all_match && match;
    csv += "adra-vs-sealed," + std::to_string(t) + "," + std::to_string(seed) +
           "," + (match ? "yes" : "no") + "," + csvdetail::num(max_diff) + "\n";
  }
  return {all_match ? 0 : 2, csv};
}

inline ExperimentOutput run_nonmatroid_attack(const ExperimentConfig& cfg) {
  Matroid m = cfg.matroid();
  if (m.kind() != MatroidKind::Explicit)
    throw InputError("nonmatroid-attack: matroid must be an explicit family");
  double f = cfg.get_double_or("f", 1.0);
  std::uint64_t trials = static_cast<std::uint64_t>(cfg.get_int_or("trials", 1000000));
  std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int_or("seed", 1));
  int workers = static_cast<int>(cfg.get_int_or("workers", 1));

  DraConfig dcfg;
  dcfg.true_matroid = Matroid::uniform(1, 1);
  dcfg.real_profiles.emplace_back(ValueDistribution::exponential(1.0));
  dcfg.collateral = CollateralRule::fixed_rule(f);
  dcfg.reserve_upper_bound = 1.0;
  FixedNonMatroidAttack attack(m.family(), f);
  HonestDraStrategy honest;
  DraFabrication hfab = honest.fabricate(dcfg);

  auto stats = mc_run<3>(trials, workers, [&](std::uint64_t t) {
    Rng rng(seed, t, 0);
    double v = dcfg.real_profiles[0].sample(rng.uniform01());
    DraResult s = run_fixed_nonmatroid(attack, dcfg, v, f);
    DraResult h = run_dra(dcfg, honest, {v}, seed, nullptr, &hfab);
    return std::array<double, 3>{s.auctioneer_net, h.auctioneer_net,
                                 s.auctioneer_net - h.auctioneer_net};
  });
  double predicted = set_size(attack.x()) *
                     std::exp(-attack.conceal_threshold());
  bool separated = stats.mean[2] > 4.0 * stats.std_err[2];
  bool matches = std::abs(stats.mean[2] - predicted) <=
                 4.0 * stats.std_err[2] + 1e-8;
  std::string csv =
      "experiment,family,f,trials,seed,strategic_mean,honest_mean,diff,"
      "se_diff,predicted_gap,separated,matches_closed_form\n";
  csv += "nonmatroid-attack," + matroid_to_spec(m) + "," + csvdetail::num(f) +
         "," + std::to_string(trials) + "," + std::to_string(seed) + "," +
         csvdetail::num(stats.mean[0]) + "," + csvdetail::num(stats.mean[1]) +
         "," + csvdetail::num(stats.mean[2]) + "," +
         csvdetail::num(stats.std_err[2]) + "," + csvdetail::num(predicted) +
         "," + (separated ? "yes" : "no") + "," + (matches ? "yes" : "no") + "\n";
  return {(separated && matches) ? 0 : 2, csv};
}

inline ExperimentOutput run_private_kk(const ExperimentConfig& cfg) {
  int k = static_cast<int>(cfg.get_int_or("k", 31));
  double delta = cfg.get_double_or("delta", 0.1);
  double collateral = cfg.get_double_or("f", 1.0);
  std::uint64_t trials = static_cast<std::uint64_t>(cfg.get_int_or("trials", 1000000));
  std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int_or("seed", 1));
  int workers = static_cast<int>(cfg.get_int_or("workers", 1));
  PrivateKkResult r = private_kk_simulation(k, delta, collateral, trials, seed,
                                            workers);
  double closed = static_cast<double>(k) * delta * std::exp(-(1.0 + delta)) -
                  collateral;
  bool matches = std::abs(r.diff_mean - closed) <= 4.0 * r.diff_std_err + 1e-8;
  std::string csv =
      "experiment,k,delta,collateral,trials,seed,strategic_mean,honest_mean,"
      "diff,se_diff,closed_form,matches\n";
  csv += "private-kk," + std::to_string(k) + "," + csvdetail::num(delta) + "," +
         csvdetail::num(collateral) + "," + std::to_string(trials) + "," +
         std::to_string(seed) + "," + csvdetail::num(r.strategic_mean) + "," +
         csvdetail::num(r.honest_mean) + "," + csvdetail::num(r.diff_mean) +
         "," + csvdetail::num(r.diff_std_err) + "," + csvdetail::num(closed) +
         "," + (matches ? "yes" : "no") + "\n";
  return {matches ? 0 : 2, csv};
}

inline ExperimentOutput run_collateral_solve(const ExperimentConfig& cfg) {
  double alpha = cfg.get_double_or("alpha", 0.5);
  int n = static_cast<int>(cfg.get_int_or("n", 2));
  double reserve = cfg.get_double_or("reserve", 1.0);
  double gamma_root = alpha_collateral_ratio(alpha, n);
  double gamma_closed = alpha_collateral_closed_form(n, alpha);
  std::string csv =
      "experiment,alpha,n,reserve,gamma_root,f_root,gamma_closed,f_closed,"
      "lhs_at_root,lhs_at_closed\n";
  csv += "collateral-solve," + csvdetail::num(alpha) + "," + std::to_string(n) +
         "," + csvdetail::num(reserve) + "," + csvdetail::num(gamma_root) +
         "," + csvdetail::num(gamma_root * reserve) + "," +
         csvdetail::num(gamma_closed) + "," +
         csvdetail::num(gamma_closed * reserve) + "," +
         csvdetail::num(alpha_collateral_lhs(gamma_root, alpha)) + "," +
         csvdetail::num(alpha_collateral_lhs(gamma_closed, alpha)) + "\n";
  return {0, csv};
}

inline ExperimentOutput run_levels(const ExperimentConfig& cfg) {
  AdraConfig acfg;
  acfg.matroid = cfg.matroid();
  acfg.profiles = cfg.profiles();
  acfg.p_min = cfg.get_double_or("p_min", 1e-3);
  std::uint64_t trials = static_cast<std::uint64_t>(cfg.get_int_or("trials", 10000));
  std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int_or("seed", 1));
  int workers = static_cast<int>(cfg.get_int_or("workers", 1));
  LevelsEstimate est = expected_levels(acfg, trials, seed, workers);
  std::string csv =
      "experiment,matroid,p_min,trials,seed,mean_levels,se_levels,"
      "max_levels_seen,bound_violations\n";
  csv += "levels," + matroid_to_spec(acfg.matroid) + "," +
         csvdetail::num(acfg.p_min) + "," + std::to_string(trials) + "," +
         std::to_string(seed) + "," + csvdetail::num(est.mean_levels) + "," +
         csvdetail::num(est.std_err) + "," +
         std::to_string(est.max_levels_seen) + "," +
         std::to_string(est.bound_violations) + "\n";
  return {est.bound_violations == 0 ? 0 : 2, csv};
}

inline ExperimentOutput run_experiment(const std::string& name,
                                       const ExperimentConfig& cfg) {
  if (name == "payment-identity") return run_payment_identity(cfg);
  if (name == "credibility-scan") return run_credibility_scan(cfg);
  if (name == "gap-formulas") return run_gap_formulas(cfg);
  if (name == "adra-vs-sealed") return run_adra_vs_sealed(cfg);
  if (name == "nonmatroid-attack") return run_nonmatroid_attack(cfg);
  if (name == "private-kk") return run_private_kk(cfg);
  if (name == "collateral-solve") return run_collateral_solve(cfg);
  if (name == "levels") return run_levels(cfg);
  throw InputError("unknown experiment: " + name);
}

}  // namespace credauct

#endif  // CREDAUCT_EXPERIMENTS_HPP_
