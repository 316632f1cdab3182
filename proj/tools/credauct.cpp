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

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "credauct/experiments.hpp"

namespace {

using namespace credauct;

int run_named_experiment(const std::string& name, const std::string& config_path,
                         long long seed, long long trials, int workers,
                         const std::string& out_path) {
  ExperimentConfig cfg = config_path.empty()
                             ? ExperimentConfig::from_string("")
                             : ExperimentConfig::from_file(config_path);
  if (seed >= 0) cfg.set("seed", std::to_string(seed));
  if (trials >= 0) cfg.set("trials", std::to_string(trials));
  if (workers > 0) cfg.set("workers", std::to_string(workers));

  ExperimentOutput out = run_experiment(name, cfg);
  if (out_path.empty()) {
    std::fputs(out.csv.c_str(), stdout);
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
      return 1;
    }
    f << out.csv;
  }
  return out.exit_code;
}

int run_replay(const std::string& dump_path) {
  std::ifstream in(dump_path);
  if (!in) {
    std::fprintf(stderr, "error: cannot open %s\n", dump_path.c_str());
    return 1;
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  auto entries = Ledger::parse_dump(text);
  bool is_adra = false;
  for (const auto& e : entries) {
    if (e.kind == EntryKind::LevelAdvance) is_adra = true;
  }
  if (is_adra) {
    AdraReplayOutcome rep = replay_adra(entries);
    if (!rep.valid) {
      std::fprintf(stderr, "replay failed: %s\n", rep.error.c_str());
      return 1;
    }
    std::printf("protocol,allocation,burned\n");
    std::printf("adra,%s,%.12g\n", set_to_string(rep.result.allocation).c_str(),
                rep.result.burned);
    for (const auto& [id, pay] : rep.result.promises)
      std::printf("pay,%d,%.12g\n", id, pay);
    return 0;
  }
  ReplayOutcome rep = replay_dra(entries);
  if (!rep.valid) {
    std::fprintf(stderr, "replay failed: %s\n", rep.error.c_str());
    return 1;
  }
  std::printf("protocol,allocation,burned,net\n");
  std::printf("dra,%s,%.12g,%.12g\n",
              set_to_string(rep.result.outcome.allocated).c_str(),
              rep.result.burned, rep.result.auctioneer_net);
  for (const auto& [id, pay] : rep.result.outcome.payments)
    std::printf("pay,%d,%.12g\n", id, pay);
  return 0;
}

int run_trace(const std::string& config_path, long long seed,
              const std::string& out_path) {
  ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
  if (seed >= 0) cfg.set("seed", std::to_string(seed));
  std::uint64_t s = static_cast<std::uint64_t>(cfg.get_int_or("seed", 1));
  std::string protocol = cfg.get_or("protocol", "dra");

  Ledger ledger;
  Rng rng(s, 0, 0);
  if (protocol == "dra") {
    DraConfig dcfg;
    dcfg.true_matroid = cfg.matroid();
    dcfg.real_profiles = cfg.profiles();
    dcfg.collateral = cfg.collateral();
    dcfg.reserve_upper_bound =
        cfg.get_double_or("reserve", collateral_mhr(dcfg.real_profiles));
    std::vector<double> values;
    for (const auto& p : dcfg.real_profiles)
      values.push_back(p.sample(rng.uniform01()));
    HonestDraStrategy honest;
    run_dra(dcfg, honest, values, s, &ledger);
  } else if (protocol == "adra") {
    AdraConfig acfg;
    acfg.matroid = cfg.matroid();
    acfg.profiles = cfg.profiles();
    acfg.p_min = cfg.get_double_or("p_min", 1e-3);
    std::vector<double> values;
    for (const auto& p : acfg.profiles)
      values.push_back(p.sample(rng.uniform01()));
    HonestAdraStrategy honest;
    run_adra(acfg, honest, values, s, &ledger);
  } else {
    std::fprintf(stderr, "error: protocol must be dra or adra\n");
    return 1;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
    return 1;
  }
  f << ledger.dump();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"credauct: deferred-revelation auction simulator"};
  app.require_subcommand(1);

  static const char* kExperiments[] = {
      "payment-identity", "credibility-scan", "gap-formulas", "adra-vs-sealed",
      "nonmatroid-attack", "private-kk",      "collateral-solve", "levels"};

  std::string config_path, out_path;
  long long seed = -1, trials = -1;
  int workers = 0;
  std::string picked;
  for (const char* name : kExperiments) {
    auto* sub = app.add_subcommand(name, "run the experiment");
    sub->add_option("--config", config_path, "config file (key = value)");
    sub->add_option("--seed", seed, "override seed");
    sub->add_option("--trials", trials, "override trial count");
    sub->add_option("--workers", workers, "worker threads");
    sub->add_option("--out", out_path, "CSV output path (default stdout)");
    sub->callback([&picked, name]() { picked = name; });
  }

  std::string dump_path;
  auto* replay =
      app.add_subcommand("replay", "re-derive an outcome from a ledger dump");
  replay->add_option("--dump", dump_path, "ledger dump file")->required();

  std::string trace_config, trace_out;
  long long trace_seed = -1;
  auto* trace =
      app.add_subcommand("trace", "run one honest protocol and dump its ledger");
  trace->add_option("--config", trace_config, "config file")->required();
  trace->add_option("--seed", trace_seed, "override seed");
  trace->add_option("--out", trace_out, "dump output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (replay->parsed()) return run_replay(dump_path);
    if (trace->parsed()) return run_trace(trace_config, trace_seed, trace_out);
    return run_named_experiment(picked, config_path, seed, trials, workers,
                                out_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
