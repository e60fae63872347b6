// Copyright 2026 The hetrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/cli.h"

#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "cli/commands.h"
#include "hetrank/common/error.h"

namespace hetrank::cli {
namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
  std::string config;
  std::optional<uint64_t> seed;
  std::string out;
};

// defaults -> --config file -> HETRANK_* environment -> --seed/--out.
ExperimentConfig ResolveConfig(const GlobalOptions& g, const EnvLookup& env) {
  ExperimentConfig cfg =
      g.config.empty() ? ExperimentConfig{} : LoadExperimentConfig(g.config);
  if (env) cfg = ApplyEnvironmentOverrides(cfg, env);
  if (g.seed) {
    cfg.seed = *g.seed;
    cfg.train.seed = *g.seed;
  }
  if (!g.out.empty()) cfg.output_dir = g.out;
  cfg.Validate();
  return cfg;
}

std::string EnvHelp() {
  std::string text = "Environment overrides (applied after --config):\n";
  for (const std::string& name : EnvironmentOverrideNames()) {
    text += "  " + name + "\n";
  }
  return text;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err, const EnvLookup& env) {
  CLI::App app{"Heterogeneous-negative ranking simulator and trainer",
               "hetrank"};
  app.footer(EnvHelp() +
             "Exit codes: 0 ok, 1 usage, 2 config, 3 runtime failure.");
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--config", global.config, "JSON config file")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", global.seed, "Master seed");
  app.add_option("--out", global.out, "Run directory (default: output_dir)");

  GenerateOptions gen;
  CLI::App* generate =
      app.add_subcommand("generate", "Simulate the cascade and write a corpus");
  generate->add_option("--requests", gen.requests, "Number of requests");

  TrainOptions train;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a scorer");
  train_cmd->add_option("--regime", train.regime,
                        "bce_single|infonce_single|bce_mix|infonce_mix|ghcl|"
                        "hap_full");
  train_cmd->add_option("--type", train.type, "EN|RN|PRN|GN for single-type");
  train_cmd->add_option("--preset", train.preset, "lightweight|expressive");
  train_cmd->add_option("--steps", train.steps, "Total optimizer steps");
  train_cmd->add_option("--name", train.name, "Artifact name");
  train_cmd->add_option("--corpus", train.corpus, "Corpus JSONL");
  train_cmd->add_flag("--resume", train.resume,
                      "Continue from the named checkpoint");

  auto add_models = [](CLI::App* cmd, ModelOptions& m) {
    cmd->add_option("--name", m.name, "Trained artifact name");
    cmd->add_option("--light", m.light, "Lightweight scorer checkpoint");
    cmd->add_option("--complex", m.complex, "Expressive scorer checkpoint");
    cmd->add_option("--corpus", m.corpus, "Corpus JSONL");
  };
  ModelOptions eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Metrics on the test sets");
  add_models(eval_cmd, eval);

  SweepOptions sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep-gate", "Serve test requests across gate sizes");
  add_models(sweep_cmd, sweep.models);
  sweep_cmd->add_option("--G", sweep.G, "Gate sizes")->delimiter(',');

  CompareOptions compare;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare-unified", "Two-stage system against one expressive model");
  compare_cmd->add_option("--hap", compare.hap, "Two-stage artifact name");
  compare_cmd->add_option("--unified", compare.unified,
                          "Unified artifact name");
  compare_cmd->add_option("--corpus", compare.corpus, "Corpus JSONL");

  GradDiagOptions diag;
  CLI::App* diag_cmd =
      app.add_subcommand("grad-diag", "Gradient-ratio and gradient checks");
  diag_cmd->add_option("--s-p", diag.s_p, "Positive score");
  diag_cmd->add_option("--hard", diag.hard, "Hard negative scores")
      ->delimiter(',');
  diag_cmd->add_option("--easy", diag.easy, "Easy negative scores")
      ->delimiter(',');
  diag_cmd->add_option("--hard-index", diag.hard_index, "Hard score for ratio");
  diag_cmd->add_option("--easy-index", diag.easy_index, "Easy score for ratio");
  diag_cmd->add_option("--cases", diag.cases, "Random identity cases")
      ->check(CLI::PositiveNumber);
  diag_cmd->add_option("--fd-cases", diag.fd_cases, "Finite-difference cases")
      ->check(CLI::PositiveNumber);
  diag_cmd->add_flag("--fd", diag.fd, "Also run the finite-difference suite");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "hetrank: " << e.what() << "\n";
    if (e.get_exit_code() != 0) err << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    Context ctx;
    ctx.config = ResolveConfig(global, env);
    ctx.out_dir = ctx.config.output_dir;
    ctx.out = &out;
    ctx.err = &err;
    const bool diag_only = diag_cmd->parsed();
    if (!diag_only) {
      fs::create_directories(ctx.out_dir);
      std::ofstream f(ctx.out_dir / "config.json");
      f << SerializeExperimentConfig(ctx.config);
      if (!f) {
        throw Error(ErrorCode::kIo,
                    "cannot write " + (ctx.out_dir / "config.json").string());
      }
    }
    if (generate->parsed()) return RunGenerate(ctx, gen);
    if (train_cmd->parsed()) return RunTrain(ctx, train);
    if (eval_cmd->parsed()) return RunEval(ctx, eval);
    if (sweep_cmd->parsed()) return RunSweepGate(ctx, sweep);
    if (compare_cmd->parsed()) return RunCompareUnified(ctx, compare);
    return RunGradDiag(ctx, diag);
  } catch (const UsageError& e) {
    err << "hetrank: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "hetrank: " << e.what() << "\n";
    return e.code() == ErrorCode::kConfig ? kExitConfig : kExitRuntime;
  } catch (const fs::filesystem_error& e) {
    err << "hetrank: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "hetrank: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace hetrank::cli
