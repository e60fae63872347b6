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

#include "cli/commands.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "cli/cli.h"
#include "cli/grad_diag.h"
#include "hetrank/cascade/cascade.h"
#include "hetrank/common/error.h"
#include "hetrank/eval/damr_eval.h"
#include "hetrank/experiment/benchmark.h"
#include "hetrank/losses/gradient_ratio.h"
#include "hetrank/model/checkpoint.h"
#include "hetrank/sim/dataset_io.h"
#include "hetrank/sim/pipeline.h"
#include "hetrank/sim/samples.h"
#include "hetrank/sim/world.h"
#include "hetrank/train/telemetry.h"
#include "hetrank/train/trainer.h"

namespace hetrank::cli {
namespace {

namespace fs = std::filesystem;

std::string Fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

void WriteFile(const fs::path& path, const std::string& text, bool append) {
  std::ofstream f(path, append ? std::ios::app : std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  f << text;
  if (!f) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

// Appends CSV rows to an existing file, dropping the header line.
void WriteCsv(const fs::path& path, const std::string& csv, bool append) {
  if (append && fs::exists(path)) {
    const size_t eol = csv.find('\n');
    WriteFile(path, eol == std::string::npos ? "" : csv.substr(eol + 1), true);
  } else {
    WriteFile(path, csv, false);
  }
}

void CheckFeatures(const World& world, const DatasetFeatures& imported) {
  const FeatureTable& table = world.features();
  auto same = [](std::span<const double> a, const std::vector<double>& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
  };
  for (const auto& [id, row] : imported.users) {
    if (id < 0 || static_cast<size_t>(id) >= table.users.rows() ||
        !same(table.user(id), row)) {
      throw Error(ErrorCode::kConfig,
                  "corpus features disagree with the world for user " +
                      std::to_string(id) + "; check seed and world config");
    }
  }
  for (const auto& [id, row] : imported.items) {
    if (id < 0 || static_cast<size_t>(id) >= table.items.rows() ||
        !same(table.item(id), row)) {
      throw Error(ErrorCode::kConfig,
                  "corpus features disagree with the world for item " +
                      std::to_string(id) + "; check seed and world config");
    }
  }
}

struct Workspace {
  World world;
  CorpusSplit split;
};

// The world is always rebuilt from (config, seed); the corpus comes from
// --corpus, then <out>/corpus.jsonl, then is generated in memory.
Workspace LoadWorkspace(const Context& ctx, const std::string& corpus_flag) {
  const ExperimentConfig& cfg = ctx.config;
  World world = GenerateWorld(cfg.world, cfg.seed);
  const fs::path path =
      corpus_flag.empty() ? ctx.out_dir / "corpus.jsonl" : fs::path(corpus_flag);
  std::vector<Request> requests;
  if (fs::exists(path)) {
    ImportedDataset data = ImportDataset(path);
    CheckFeatures(world, data.features);
    requests = std::move(data.requests);
  } else if (!corpus_flag.empty()) {
    throw Error(ErrorCode::kIo, "corpus not found: " + path.string());
  } else {
    *ctx.err << "no corpus at " << path.string() << ", generating one\n";
    requests =
        GenerateCorpus(world, cfg.pipeline, cfg.corpus.n_requests, cfg.seed);
  }
  CorpusSplit split =
      SplitChronologically(std::move(requests), cfg.corpus.train_fraction);
  return {std::move(world), std::move(split)};
}

fs::path ScorerPath(const Context& ctx, const std::string& name) {
  return ctx.out_dir / (name + ".scorer.ckpt.json");
}
fs::path ExpertPath(const Context& ctx, const std::string& name) {
  return ctx.out_dir / (name + ".expert.ckpt.json");
}

struct ModelPair {
  MlpScorer light;
  MlpScorer complex;
};

ModelPair LoadPair(const Context& ctx, const ModelOptions& opts) {
  if (!opts.light.empty()) {
    MlpScorer light = LoadCheckpoint(opts.light).scorer;
    MlpScorer complex =
        opts.complex.empty() ? light : LoadCheckpoint(opts.complex).scorer;
    return {std::move(light), std::move(complex)};
  }
  if (!opts.complex.empty()) {
    throw UsageError("--complex needs --light");
  }
  MlpScorer light = LoadCheckpoint(ScorerPath(ctx, opts.name)).scorer;
  const fs::path expert = ExpertPath(ctx, opts.name);
  MlpScorer complex = fs::exists(expert) ? LoadCheckpoint(expert).scorer : light;
  return {std::move(light), std::move(complex)};
}

std::span<const Request> SweepRequests(const ExperimentConfig& cfg,
                                       const CorpusSplit& split) {
  const size_t n = std::min(split.test.size(),
                            static_cast<size_t>(cfg.sweep.requests));
  return {split.test.data(), n};
}

}  // namespace

int RunGenerate(const Context& ctx, const GenerateOptions& opts) {
  ExperimentConfig cfg = ctx.config;
  if (opts.requests) {
    if (*opts.requests < 1) throw UsageError("--requests must be >= 1");
    cfg.corpus.n_requests = *opts.requests;
  }
  const World world = GenerateWorld(cfg.world, cfg.seed);
  *ctx.err << "generating " << cfg.corpus.n_requests << " requests\n";
  const std::vector<Request> requests =
      GenerateCorpus(world, cfg.pipeline, cfg.corpus.n_requests, cfg.seed);
  const fs::path corpus = ctx.out_dir / "corpus.jsonl";
  ExportDataset(requests, &world.features(), corpus);

  const CorpusStats stats = ComputeCorpusStats(world, requests);
  std::ostringstream csv;
  csv << "type,count,mean_relevance\n";
  std::ostringstream summary;
  summary << "requests=" << stats.requests
          << " clickless=" << stats.clickless_requests << "\n";
  for (size_t t = 0; t < stats.count.size(); ++t) {
    const std::string_view name = SampleTypeName(static_cast<SampleType>(t));
    const std::string rel = Fmt("%.6f", stats.mean_relevance[t]);
    csv << name << "," << stats.count[t] << "," << rel << "\n";
    summary << name << " count=" << stats.count[t] << " mean_relevance=" << rel
            << "\n";
  }
  WriteFile(ctx.out_dir / "stats.csv", csv.str(), false);
  WriteFile(ctx.out_dir / "stats.txt", summary.str(), false);
  *ctx.out << summary.str() << "wrote " << corpus.string() << "\n";
  return 0;
}

int RunTrain(const Context& ctx, const TrainOptions& opts) {
  ExperimentConfig cfg = ctx.config;
  TrainConfig& train = cfg.train;
  if (!opts.regime.empty()) {
    const auto regime = ParseLossRegime(opts.regime);
    if (!regime) throw UsageError("unknown --regime '" + opts.regime + "'");
    train.regime = *regime;
  }
  if (!opts.type.empty()) {
    const auto type = ParseNegativeType(opts.type);
    if (!type) throw UsageError("unknown --type '" + opts.type + "'");
    train.single_type = *type;
  }
  if (opts.steps) train.steps = *opts.steps;
  if (!opts.preset.empty()) {
    const auto preset = ParseCapacityPreset(opts.preset);
    if (!preset) throw UsageError("unknown --preset '" + opts.preset + "'");
    if (train.regime == LossRegime::kHapFull) {
      throw UsageError("--preset does not apply to hap_full");
    }
    cfg.model.preset = *preset;
  }
  cfg.Validate();

  const std::string name = opts.name.empty() ? train.RegimeLabel() : opts.name;
  const bool hap = train.regime == LossRegime::kHapFull;

  ModelSet models;
  if (opts.resume) {
    Checkpoint scorer = LoadCheckpoint(ScorerPath(ctx, name));
    if (!scorer.optimizer) {
      throw Error(ErrorCode::kConfig,
                  "checkpoint for '" + name + "' has no optimizer state");
    }
    models.scorer = {std::move(scorer.scorer), std::move(*scorer.optimizer)};
    models.step = scorer.train_step;
    if (hap) {
      Checkpoint expert = LoadCheckpoint(ExpertPath(ctx, name));
      if (!expert.optimizer || expert.train_step != models.step) {
        throw Error(ErrorCode::kConfig,
                    "expert checkpoint for '" + name + "' is inconsistent");
      }
      models.expert =
          TrainedModel{std::move(expert.scorer), std::move(*expert.optimizer)};
    }
    if (models.step > train.steps) {
      throw UsageError("checkpoint is at step " + std::to_string(models.step) +
                       ", past --steps " + std::to_string(train.steps));
    }
  } else {
    const CapacityPreset preset =
        hap ? CapacityPreset::kLightweight : cfg.model.preset;
    std::optional<MlpScorer> expert;
    if (hap) {
      expert = InitialModel(cfg, CapacityPreset::kExpressive,
                            ModelRole::kExpert, cfg.seed);
    }
    models = MakeModelSet(InitialModel(cfg, preset, ModelRole::kScorer, cfg.seed),
                          expert, train.optimizer);
  }
  const int64_t first_step = models.step;

  const Workspace ws = LoadWorkspace(ctx, opts.corpus);
  *ctx.err << "training " << name << " from step " << first_step << " to "
           << train.steps << "\n";
  const TrainResult result =
      Train(std::move(models), ws.split.train, ws.world.features(), train);

  WriteFile(ctx.out_dir / (name + ".config.json"),
            SerializeExperimentConfig(cfg), false);
  SaveCheckpoint({result.models.scorer.model, result.models.scorer.optimizer,
                  result.models.step},
                 ScorerPath(ctx, name));
  if (result.models.expert) {
    SaveCheckpoint({result.models.expert->model,
                    result.models.expert->optimizer, result.models.step},
                   ExpertPath(ctx, name));
  }
  std::ostringstream telemetry, loss;
  WriteTelemetryCsv(telemetry, result.telemetry);
  WriteLossCsv(loss, result.loss_curve);
  WriteCsv(ctx.out_dir / (name + ".telemetry.csv"), telemetry.str(),
           opts.resume);
  WriteCsv(ctx.out_dir / (name + ".loss.csv"), loss.str(), opts.resume);

  *ctx.out << "trained " << name << " steps " << first_step << "->"
           << result.models.step;
  if (!result.loss_curve.empty()) {
    const LossTrend trend = SmoothedLossTrend(result.loss_curve, 50);
    *ctx.out << " loss " << Fmt("%.6f", trend.head) << "->"
             << Fmt("%.6f", trend.tail);
  }
  *ctx.out << "\n";
  return 0;
}

int RunEval(const Context& ctx, const ModelOptions& opts) {
  const ModelPair models = LoadPair(ctx, opts);
  const Workspace ws = LoadWorkspace(ctx, opts.corpus);
  const TestSets sets = BuildTestSets(ws.split.test);
  const MetricsTable table = EvaluateDamr(&models.light, &models.complex, sets,
                                          ws.world.features(),
                                          ctx.config.eval);
  std::ostringstream csv;
  WriteMetricsCsv(csv, table);
  const std::string text = FormatMetricsTable(table);
  WriteFile(ctx.out_dir / (opts.name + ".metrics.csv"), csv.str(), false);
  WriteFile(ctx.out_dir / (opts.name + ".metrics.txt"), text, false);
  *ctx.out << text;
  return 0;
}

int RunSweepGate(const Context& ctx, const SweepOptions& opts) {
  const ExperimentConfig& cfg = ctx.config;
  std::vector<int64_t> G = opts.G.empty() ? cfg.sweep.G_values : opts.G;
  for (int64_t g : G) {
    if (g < 1) throw UsageError("--G values must be >= 1");
  }
  const ModelPair models = LoadPair(ctx, opts.models);
  const Workspace ws = LoadWorkspace(ctx, opts.models.corpus);
  const std::vector<SweepRow> rows =
      SweepGate(SweepRequests(cfg, ws.split), models.light, models.complex,
                ws.world, G, cfg.gate.final_k, cfg.cost, cfg.seed);
  std::ostringstream csv;
  WriteSweepCsv(csv, rows);
  WriteFile(ctx.out_dir / "sweep_gate.csv", csv.str(), false);
  WriteFile(ctx.out_dir / "sweep_gate.svg", RenderSweepSvg(rows), false);
  for (const SweepRow& r : rows) {
    *ctx.out << "G=" << r.G << " engagement=" << Fmt("%.6f", r.engagement)
             << " latency_ms=" << Fmt("%.4f", r.latency_ms)
             << " failure_rate=" << Fmt("%.4f", r.failure_rate)
             << " megaflops=" << Fmt("%.4f", r.megaflops) << "\n";
  }
  return 0;
}

int RunCompareUnified(const Context& ctx, const CompareOptions& opts) {
  const ExperimentConfig& cfg = ctx.config;
  ModelOptions hap_opts;
  hap_opts.name = opts.hap;
  const ModelPair hap = LoadPair(ctx, hap_opts);
  const MlpScorer unified = LoadCheckpoint(ScorerPath(ctx, opts.unified)).scorer;
  const Workspace ws = LoadWorkspace(ctx, opts.corpus);
  const TestSets sets = BuildTestSets(ws.split.test);
  const UnifiedComparison report =
      CompareUnified(SweepRequests(cfg, ws.split), sets, unified, hap.light,
                     hap.complex, ws.world, cfg.gate, cfg.cost, cfg.seed);
  std::ostringstream csv;
  WriteComparisonCsv(csv, report);
  WriteFile(ctx.out_dir / "compare_unified.csv", csv.str(), false);
  for (const SystemReport* s : {&report.unified, &report.hap}) {
    *ctx.out << s->name << " thard_auc=" << Fmt("%.6f", s->thard_auc)
             << " teasy_auc=" << Fmt("%.6f", s->teasy_auc)
             << " megaflops=" << Fmt("%.6f", s->megaflops_per_request)
             << " latency_ms=" << Fmt("%.4f", s->latency_ms)
             << " failure_rate=" << Fmt("%.4f", s->failure_rate)
             << " engagement=" << Fmt("%.6f", s->engagement) << "\n";
  }
  return 0;
}

int RunGradDiag(const Context& ctx, const GradDiagOptions& opts) {
  const bool explicit_mode = opts.s_p || !opts.hard.empty() || !opts.easy.empty();
  int code = 0;
  if (explicit_mode) {
    if (!opts.s_p || opts.hard.empty() || opts.easy.empty()) {
      throw UsageError("--s-p, --hard and --easy go together");
    }
    if (opts.hard_index >= opts.hard.size() ||
        opts.easy_index >= opts.easy.size()) {
      throw UsageError("--hard-index/--easy-index out of range");
    }
    const double r_org =
        GradientRatioOrg(opts.hard[opts.hard_index], opts.easy[opts.easy_index]);
    const double c = CorrectionFactor(*opts.s_p, opts.hard, opts.easy);
    const double r_ghcl =
        GradientRatioGhcl(*opts.s_p, opts.hard[opts.hard_index], opts.hard,
                          opts.easy[opts.easy_index], opts.easy);
    *ctx.out << "R_ORG=" << Fmt("%.15g", r_org) << " C=" << Fmt("%.15g", c)
             << " R_GHCL=" << Fmt("%.15g", r_ghcl) << "\n";
  } else {
    const RatioIdentityReport r = CheckRatioIdentity(ctx.config.seed, opts.cases);
    const bool ok =
        r.max_error <= kRatioTolerance && r.ordering_violations == 0;
    *ctx.out << "identity R_GHCL=R_ORG*C cases=" << r.cases
             << " max_error=" << Fmt("%.3e", r.max_error)
             << " hard_heavier=" << r.hard_heavier
             << " ordering_violations=" << r.ordering_violations << " "
             << (ok ? "ok" : "FAILED") << "\n";
    if (!ok) code = kExitRuntime;
  }
  if (opts.fd || !explicit_mode) {
    const FiniteDiffReport r = RunFiniteDiffSuite(ctx.config.seed, opts.fd_cases);
    const bool ok = r.loss_max_error <= kFiniteDiffTolerance &&
                    r.mlp_max_error <= kFiniteDiffTolerance;
    *ctx.out << "finite-diff loss_checks=" << r.loss_checks
             << " loss_max_error=" << Fmt("%.3e", r.loss_max_error)
             << " mlp_checks=" << r.mlp_checks
             << " mlp_max_error=" << Fmt("%.3e", r.mlp_max_error) << " "
             << (ok ? "ok" : "FAILED") << "\n";
    if (!ok) code = kExitRuntime;
  }
  return code;
}

}  // namespace hetrank::cli
