/*
 * Copyright 2026 The ccsynth Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// ccsynth command-line tool. Links only against the C API in ccsynth.h.

#include <algorithm>
#include <cstdio>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ccsynth/ccsynth.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsageError = 2;

struct DatasetDeleter {
  void operator()(ccs_dataset* d) const { ccs_dataset_free(d); }
};
struct ProfileDeleter {
  void operator()(ccs_profile* p) const { ccs_profile_free(p); }
};
struct ReportDeleter {
  void operator()(ccs_report* r) const { ccs_report_free(r); }
};
struct DriftDeleter {
  void operator()(ccs_drift* d) const { ccs_drift_free(d); }
};
struct ResponsibilityDeleter {
  void operator()(ccs_responsibility* r) const { ccs_responsibility_free(r); }
};
struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

using DatasetPtr = std::unique_ptr<ccs_dataset, DatasetDeleter>;
using ProfilePtr = std::unique_ptr<ccs_profile, ProfileDeleter>;
using ReportPtr = std::unique_ptr<ccs_report, ReportDeleter>;
using DriftPtr = std::unique_ptr<ccs_drift, DriftDeleter>;
using ResponsibilityPtr =
    std::unique_ptr<ccs_responsibility, ResponsibilityDeleter>;
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct CliConfig {
  std::string input_path;
  std::string profile_path;
  std::string output_path;
  std::vector<std::string> exclude_columns;
  std::vector<std::string> column_types;
  double c_factor = 4.0;
  std::size_t partition_max_distinct = 50;
  std::size_t min_partition_rows = 0;
  std::size_t window_size = 0;
  double tau = 0.01;
  bool emit_per_constraint = false;
  bool retain_bad_rows = false;
  unsigned threads = 1;
  std::optional<std::string> seed;
};

int ReportFailure(ccs_status status, const char* action) {
  std::fprintf(stderr, "ccsynth: %s failed [%s]: %s\n", action,
               ccs_status_name(status), ccs_last_error());
  return status == CCS_ERR_INVALID_ARGUMENT ||
                 status == CCS_ERR_INVALID_THRESHOLD
             ? kExitUsageError
             : kExitDataError;
}

int UsageError(const std::string& message) {
  std::fprintf(stderr, "ccsynth: %s\n", message.c_str());
  return kExitUsageError;
}

FilePtr OpenOutput(const std::string& path) {
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) {
    std::fprintf(stderr, "ccsynth: cannot open '%s' for writing\n", path.c_str());
  }
  return file;
}

int FinishOutput(FilePtr file, const std::string& path) {
  const bool ok = std::ferror(file.get()) == 0;
  if (std::fclose(file.release()) != 0 || !ok) {
    std::fprintf(stderr, "ccsynth: write to '%s' failed\n", path.c_str());
    return kExitDataError;
  }
  return kExitOk;
}

std::optional<ccs_column_kind> ParseKind(const std::string& text) {
  if (text == "numeric") return CCS_COLUMN_NUMERIC;
  if (text == "categorical") return CCS_COLUMN_CATEGORICAL;
  if (text == "ignored") return CCS_COLUMN_IGNORED;
  return std::nullopt;
}

int LoadProfileAndData(const CliConfig& config, ProfilePtr& profile,
                       DatasetPtr& dataset) {
  ccs_profile* raw_profile = nullptr;
  ccs_status status = ccs_profile_load(config.profile_path.c_str(), &raw_profile);
  if (status != CCS_OK) return ReportFailure(status, "loading profile");
  profile.reset(raw_profile);

  ccs_dataset* raw_dataset = nullptr;
  status = ccs_dataset_load_csv_for_profile(config.input_path.c_str(),
                                            profile.get(),
                                            config.retain_bad_rows ? 1 : 0,
                                            &raw_dataset);
  if (status != CCS_OK) return ReportFailure(status, "reading input");
  dataset.reset(raw_dataset);
  return kExitOk;
}

int CmdLearn(const CliConfig& config) {
  std::vector<std::string> override_names;
  std::vector<ccs_column_kind> override_kinds;
  for (const std::string& spec : config.column_types) {
    const auto eq = spec.rfind('=');
    if (eq == std::string::npos || eq == 0) {
      return UsageError("--col-type expects name=kind, got '" + spec + "'");
    }
    const auto kind = ParseKind(spec.substr(eq + 1));
    if (!kind) {
      return UsageError("unknown column kind in '" + spec +
                        "' (numeric, categorical or ignored)");
    }
    override_names.push_back(spec.substr(0, eq));
    override_kinds.push_back(*kind);
  }
  if (!(config.c_factor > 0.0)) return UsageError("--c-factor must be positive");

  std::vector<const char*> exclude_ptrs;
  for (const auto& name : config.exclude_columns) exclude_ptrs.push_back(name.c_str());
  std::vector<const char*> override_ptrs;
  for (const auto& name : override_names) override_ptrs.push_back(name.c_str());

  ccs_csv_options options;
  ccs_csv_options_init(&options);
  options.exclude = exclude_ptrs.data();
  options.exclude_count = exclude_ptrs.size();
  options.override_names = override_ptrs.data();
  options.override_kinds = override_kinds.data();
  options.override_count = override_kinds.size();

  ccs_dataset* raw_dataset = nullptr;
  ccs_status status =
      ccs_dataset_load_csv(config.input_path.c_str(), &options, &raw_dataset);
  if (status != CCS_OK) return ReportFailure(status, "reading input");
  DatasetPtr dataset(raw_dataset);

  ccs_synthesis_config synthesis;
  ccs_synthesis_config_init(&synthesis);
  synthesis.c_factor = config.c_factor;
  synthesis.max_distinct_for_partition = config.partition_max_distinct;
  synthesis.min_partition_rows = config.min_partition_rows;
  synthesis.threads = config.threads;

  ccs_profile* raw_profile = nullptr;
  status = ccs_profile_learn(dataset.get(), &synthesis, &raw_profile);
  if (status != CCS_OK) return ReportFailure(status, "learning");
  ProfilePtr profile(raw_profile);

  status = ccs_profile_save(profile.get(), config.output_path.c_str());
  if (status != CCS_OK) return ReportFailure(status, "writing profile");

  const std::size_t conjuncts = ccs_profile_global_conjuncts(profile.get());
  std::printf("learned %zu global conjuncts over %zu numeric attributes from %zu rows\n",
              conjuncts, ccs_profile_numeric_columns(profile.get()),
              ccs_dataset_rows(dataset.get()));
  for (std::size_t k = 0; k < conjuncts; ++k) {
    double stddev = 0, lb = 0, ub = 0, gamma = 0;
    ccs_profile_conjunct(profile.get(), k, &stddev, &lb, &ub, &gamma);
    std::printf("  c%zu: sigma=%.6g bounds=[%.6g, %.6g] gamma=%.6f\n", k, stddev,
                lb, ub, gamma);
  }
  for (std::size_t d = 0; d < ccs_profile_disjunctive_count(profile.get()); ++d) {
    std::printf("  disjunction on '%s': %zu branches\n",
                ccs_profile_disjunctive_attribute(profile.get(), d),
                ccs_profile_disjunctive_branches(profile.get(), d));
  }
  std::printf("skipped rows: %zu\n", ccs_dataset_skipped_rows(dataset.get()));
  return kExitOk;
}

int CmdScore(const CliConfig& config) {
  ProfilePtr profile;
  DatasetPtr dataset;
  if (int rc = LoadProfileAndData(config, profile, dataset); rc != kExitOk) return rc;

  ccs_report* raw_report = nullptr;
  const ccs_status status =
      ccs_score(profile.get(), dataset.get(), config.emit_per_constraint ? 1 : 0,
                config.threads, &raw_report);
  if (status != CCS_OK) return ReportFailure(status, "scoring");
  ReportPtr report(raw_report);

  FilePtr out = OpenOutput(config.output_path);
  if (!out) return kExitDataError;
  const std::size_t constraints =
      config.emit_per_constraint ? ccs_report_constraints(report.get()) : 0;
  std::fputs("row_index,violation", out.get());
  for (std::size_t k = 0; k < constraints; ++k) std::fprintf(out.get(), ",c%zu", k);
  std::fputc('\n', out.get());
  for (std::size_t i = 0; i < ccs_report_rows(report.get()); ++i) {
    std::fprintf(out.get(), "%zu,%.6f", ccs_dataset_source_row(dataset.get(), i),
                 ccs_report_violation(report.get(), i));
    for (std::size_t k = 0; k < constraints; ++k) {
      std::fprintf(out.get(), ",%.6f",
                   ccs_report_constraint_violation(report.get(), i, k));
    }
    std::fputc('\n', out.get());
  }
  if (int rc = FinishOutput(std::move(out), config.output_path); rc != kExitOk) {
    return rc;
  }
  std::printf("mean violation: %.6f over %zu rows (skipped %zu)\n",
              ccs_report_mean(report.get()), ccs_report_rows(report.get()),
              ccs_dataset_skipped_rows(dataset.get()));
  return kExitOk;
}

int CmdDrift(const CliConfig& config) {
  if (config.window_size == 0) return UsageError("--window must be at least 1");
  ProfilePtr profile;
  DatasetPtr dataset;
  if (int rc = LoadProfileAndData(config, profile, dataset); rc != kExitOk) return rc;

  ccs_drift* raw_drift = nullptr;
  const ccs_status status = ccs_drift_compute(profile.get(), dataset.get(),
                                              config.window_size, &raw_drift);
  if (status != CCS_OK) return ReportFailure(status, "drift");
  DriftPtr drift(raw_drift);

  FilePtr out = OpenOutput(config.output_path);
  if (!out) return kExitDataError;
  std::fputs("window_index,raw,normalized\n", out.get());
  for (std::size_t w = 0; w < ccs_drift_windows(drift.get()); ++w) {
    std::fprintf(out.get(), "%zu,%.6f,%.6f\n", w, ccs_drift_raw(drift.get(), w),
                 ccs_drift_normalized(drift.get(), w));
  }
  if (int rc = FinishOutput(std::move(out), config.output_path); rc != kExitOk) {
    return rc;
  }
  std::printf("windows: %zu\n", ccs_drift_windows(drift.get()));
  return kExitOk;
}

int CmdExplain(const CliConfig& config) {
  if (!(config.tau >= 0.0 && config.tau < 1.0)) {
    return UsageError("--tau must lie in [0, 1)");
  }
  ProfilePtr profile;
  DatasetPtr dataset;
  if (int rc = LoadProfileAndData(config, profile, dataset); rc != kExitOk) return rc;

  ccs_responsibility* raw_report = nullptr;
  const ccs_status status =
      ccs_explain(profile.get(), dataset.get(), config.tau, &raw_report);
  if (status != CCS_OK) return ReportFailure(status, "explain");
  ResponsibilityPtr report(raw_report);

  const std::size_t count = ccs_responsibility_attributes(report.get());
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ccs_responsibility_value(report.get(), a) >
           ccs_responsibility_value(report.get(), b);
  });

  FilePtr out = OpenOutput(config.output_path);
  if (!out) return kExitDataError;
  std::fputs("attribute,responsibility\n", out.get());
  for (std::size_t idx : order) {
    std::fprintf(out.get(), "%s,%.6f\n", ccs_responsibility_name(report.get(), idx),
                 ccs_responsibility_value(report.get(), idx));
  }
  if (int rc = FinishOutput(std::move(out), config.output_path); rc != kExitOk) {
    return rc;
  }
  std::printf("non-convergent tuples: %zu\n",
              ccs_responsibility_non_convergent(report.get()));
  return kExitOk;
}

void AddSeed(CLI::App* command, CliConfig& config) {
  command->add_option("--seed", config.seed,
                      "Reserved and rejected; every command is deterministic")
      ->group("");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ccsynth: learn conformance constraints and score violations"};
  app.set_version_flag("--version", std::string(ccs_version()));
  app.require_subcommand(1);
  CliConfig config;

  CLI::App* learn = app.add_subcommand("learn", "Learn a conformance profile");
  learn->add_option("--input", config.input_path, "Training CSV")->required();
  learn->add_option("--output", config.output_path, "Profile path")->required();
  learn->add_option("--exclude-cols", config.exclude_columns,
                    "Columns to ignore, comma separated")
      ->delimiter(',');
  learn->add_option("--col-type", config.column_types,
                    "Column kind override name=numeric|categorical|ignored");
  learn->add_option("--c-factor", config.c_factor, "Bound width in sigmas")
      ->capture_default_str();
  learn->add_option("--partition-max-distinct", config.partition_max_distinct,
                    "Largest categorical domain used for disjunctions")
      ->capture_default_str();
  learn->add_option("--min-partition-rows", config.min_partition_rows,
                    "Smallest partition that learns a branch (0: automatic)")
      ->capture_default_str();
  learn->add_option("--threads", config.threads, "Worker threads")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  AddSeed(learn, config);

  CLI::App* score = app.add_subcommand("score", "Score tuples against a profile");
  score->add_option("--profile", config.profile_path, "Profile path")->required();
  score->add_option("--input", config.input_path, "Serving CSV")->required();
  score->add_option("--output", config.output_path, "Scores CSV")->required();
  score->add_flag("--per-constraint", config.emit_per_constraint,
                  "Add one column per global conjunct");
  score->add_flag("--retain-bad-rows", config.retain_bad_rows,
                  "Keep rows with unparseable numerics; they score 1");
  score->add_option("--threads", config.threads, "Worker threads")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  AddSeed(score, config);

  CLI::App* drift = app.add_subcommand(
      "drift",
      "Mean violation per non-overlapping window; a trailing window is kept "
      "when at least half full");
  drift->add_option("--profile", config.profile_path, "Profile path")->required();
  drift->add_option("--input", config.input_path, "Stream CSV")->required();
  drift->add_option("--window", config.window_size, "Rows per window")->required();
  drift->add_option("--output", config.output_path, "Drift CSV")->required();
  AddSeed(drift, config);

  CLI::App* explain =
      app.add_subcommand("explain", "Aggregate per-attribute responsibility");
  explain->add_option("--profile", config.profile_path, "Profile path")->required();
  explain->add_option("--input", config.input_path, "Serving CSV")->required();
  explain->add_option("--output", config.output_path, "Responsibility CSV")
      ->required();
  explain->add_option("--tau", config.tau, "Conformance threshold")
      ->capture_default_str();
  AddSeed(explain, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsageError;
  }

  if (config.seed) {
    return UsageError(
        "--seed is not supported: nothing in the pipeline is randomized");
  }
  if (learn->parsed()) return CmdLearn(config);
  if (score->parsed()) return CmdScore(config);
  if (drift->parsed()) return CmdDrift(config);
  return CmdExplain(config);
}
