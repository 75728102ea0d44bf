//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "app.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "ocsrbench/evaluate/report.hpp"
#include "ocsrbench/evaluate/scoring.hpp"
#include "ocsrbench/harness/corpus.hpp"
#include "ocsrbench/harness/runner.hpp"

namespace ocsrbench::cli {
namespace fs = std::filesystem;

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> corpus_seed;
  std::vector<std::string> only;
  std::optional<int> parallelism;
  std::optional<double> timeout_secs;
  std::string format;
  std::string molfiles, corpus, results, reports;
  // subcommand specific
  std::string adapter;
  std::string rates;
  std::size_t total = 0;
  std::string from;
  std::string image;
};

void add_common(CLI::App *cmd, Flags &f) {
  cmd->add_option("--config", f.config, "JSON configuration file");
  cmd->add_option("--corpus-seed", f.corpus_seed, "corpus seed override");
  cmd->add_option("--only", f.only, "restrict to these subset labels")
      ->take_all();
  cmd->add_option("--parallelism", f.parallelism, "concurrent workers")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--timeout-secs", f.timeout_secs,
                  "per-image adapter timeout override")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--molfiles", f.molfiles, "molfile directory override");
  cmd->add_option("--corpus", f.corpus, "corpus directory override");
  cmd->add_option("--results", f.results, "results directory override");
  cmd->add_option("--reports", f.reports, "report directory override");
}

RunConfig effective_config(const Flags &f) {
  RunConfig cfg = f.config.empty() ? RunConfig {} : load_config(f.config);
  if (!f.molfiles.empty()) {
    cfg.molfile_dir = f.molfiles;
  }
  if (!f.corpus.empty()) {
    cfg.corpus_dir = f.corpus;
  }
  if (!f.results.empty()) {
    cfg.results_dir = f.results;
  }
  if (!f.reports.empty()) {
    cfg.reports_dir = f.reports;
  }
  if (f.corpus_seed) {
    cfg.corpus_seed = *f.corpus_seed;
  }
  if (f.parallelism) {
    cfg.parallelism = *f.parallelism;
  }
  if (f.timeout_secs) {
    for (harness::AdapterConfig &a: cfg.adapters) {
      a.timeout_secs = *f.timeout_secs;
    }
  }
  return cfg;
}

std::vector<std::string> selected_labels(const Flags &f,
                                         const harness::CorpusManifest &m) {
  if (f.only.empty()) {
    std::vector<std::string> all;
    for (const harness::CorpusSubset &s: m.subsets) {
      all.push_back(s.label);
    }
    return all;
  }
  for (const std::string &label: f.only) {
    if (m.find_subset(label) == nullptr) {
      throw std::runtime_error("subset '" + label + "' is not in "
                               + (m.root / harness::kManifestName).string());
    }
  }
  return f.only;
}

std::string failure_summary(const std::vector<harness::RecognitionOutcome> &os) {
  std::map<std::string_view, std::size_t> counts;
  for (const auto &o: os) {
    if (!o.recognized()) {
      ++counts[harness::reason_name(*o.failure)];
    }
  }
  std::string out;
  for (const auto &[reason, n]: counts) {
    out += " " + std::string(reason) + "=" + std::to_string(n);
  }
  return out;
}

std::size_t recognized_count(const std::vector<harness::RecognitionOutcome> &os) {
  return static_cast<std::size_t>(std::count_if(
      os.begin(), os.end(), [](const auto &o) { return o.recognized(); }));
}

int cmd_gen(const Flags &f, std::ostream &out) {
  const RunConfig cfg = effective_config(f);
  std::vector<degrade::DamageSpec> specs;
  if (f.only.empty()) {
    specs = cfg.damage;
  } else {
    for (const std::string &label: f.only) {
      if (label == harness::kBaseLabel) {
        continue;
      }
      degrade::DamageSpec s = degrade::parse_label(label);
      degrade::validate(s, cfg.allow_off_grid);
      specs.push_back(s);
    }
  }
  harness::CorpusOptions opts;
  opts.render = cfg.render;
  opts.shepards_points = cfg.shepards_points;
  opts.parallelism = cfg.parallelism;
  const harness::CorpusManifest m = harness::build_corpus(
      cfg.molfile_dir, cfg.corpus_dir, specs, opts, cfg.corpus_seed);
  for (const harness::SkippedInput &s: m.skipped) {
    out << "skipped " << s.file.string() << ": " << s.reason << "\n";
  }
  out << "corpus " << cfg.corpus_dir.string() << ": " << m.subsets.size()
      << " subsets x " << m.entries.size() << " images = "
      << m.subsets.size() * m.entries.size() << " images, "
      << m.skipped.size() << " skipped\n";
  return kExitOk;
}

int cmd_run(const Flags &f, std::ostream &out) {
  const RunConfig cfg = effective_config(f);
  const harness::AdapterConfig &adapter = cfg.adapter(f.adapter);
  const harness::CorpusManifest m = harness::read_manifest(cfg.corpus_dir);
  const auto refs = evaluate::load_references(m);
  std::size_t recognized = 0;
  for (const std::string &label: selected_labels(f, m)) {
    harness::SubsetRun run { adapter.name, label,
                             harness::run_subset(adapter, m, label,
                                                 cfg.parallelism) };
    const fs::path file = harness::write_results(cfg.results_dir, run);
    const evaluate::SubsetResult r =
        evaluate::score_subset(adapter.name, label, run.outcomes, refs);
    recognized += recognized_count(run.outcomes);
    out << adapter.name << " " << label << ": " << r.matches << "/" << r.total
        << " matched (" << evaluate::format_rate(r.matches, r.total) << "%)"
        << failure_summary(run.outcomes) << " -> " << file.string() << "\n";
  }
  return recognized == 0 ? kExitNothingRecognized : kExitOk;
}

std::vector<evaluate::ReportFormat> formats_for(const std::string &name) {
  if (name.empty() || name == "all") {
    return { evaluate::ReportFormat::kCsv, evaluate::ReportFormat::kJson,
             evaluate::ReportFormat::kMarkdown };
  }
  return { evaluate::parse_report_format(name) };
}

int cmd_eval(const Flags &f, std::ostream &out) {
  const RunConfig cfg = effective_config(f);
  std::vector<evaluate::SubsetResult> results;
  if (!f.rates.empty()) {
    if (f.total == 0) {
      throw std::runtime_error("--rates needs --total <images per subset>");
    }
    std::ifstream in(f.rates, std::ios::binary);
    if (!in) {
      throw std::runtime_error("cannot read " + f.rates);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    results = evaluate::read_rate_matrix_csv(ss.str(), f.total);
  } else {
    const auto files = harness::list_results(cfg.results_dir);
    if (!files.empty()) {
      const harness::CorpusManifest m = harness::read_manifest(cfg.corpus_dir);
      const auto refs = evaluate::load_references(m);
      for (const fs::path &file: files) {
        harness::SubsetRun run = harness::read_results(file);
        if (!f.only.empty() && run.subset_label != harness::kBaseLabel
            && std::find(f.only.begin(), f.only.end(), run.subset_label)
                   == f.only.end()) {
          continue;
        }
        results.push_back(evaluate::score_subset(run.adapter, run.subset_label,
                                                 run.outcomes, refs));
      }
    }
  }
  if (results.empty()) {
    throw std::runtime_error("no results in " + cfg.results_dir.string());
  }
  for (evaluate::ReportFormat format: formats_for(f.format)) {
    for (const fs::path &p: evaluate::emit_report(results, format,
                                                  cfg.reports_dir)) {
      if (p.parent_path() == cfg.reports_dir) {
        out << "wrote " << p.string() << "\n";
      }
    }
  }
  out << "\nrecognition rate (%)\n"
      << evaluate::rate_matrix_text(results, evaluate::ReportFormat::kMarkdown)
      << "\ndecrease from base (%)\n"
      << evaluate::decrease_matrix_text(evaluate::decrease_table(results),
                                        evaluate::ReportFormat::kMarkdown);
  return kExitOk;
}

int cmd_ensemble(const Flags &f, std::ostream &out) {
  const RunConfig cfg = effective_config(f);
  const ensemble::EnsembleConfig ecfg = cfg.ensemble_config();
  const harness::CorpusManifest m = harness::read_manifest(cfg.corpus_dir);
  const auto refs = evaluate::load_references(m);

  // Earlier results of a fast adapter are reused when they cover the subset.
  auto stored = [&](const harness::AdapterConfig &a, const std::string &label)
      -> std::vector<harness::RecognitionOutcome> {
    const fs::path file = cfg.results_dir / harness::sanitize_name(a.name)
                          / (label + ".json");
    if (!fs::exists(file)) {
      return {};
    }
    harness::SubsetRun run = harness::read_results(file);
    if (run.outcomes.size() != m.entries.size()) {
      return {};
    }
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
      if (run.outcomes[i].image_id != m.entries[i].image_id) {
        return {};
      }
    }
    return std::move(run.outcomes);
  };

  std::size_t recognized = 0;
  for (const std::string &label: selected_labels(f, m)) {
    const auto a = stored(ecfg.fast_a, label);
    const auto b = stored(ecfg.fast_b, label);
    ensemble::EnsembleRun er = ensemble::run_ensemble_subset(
        ecfg, m, label, cfg.parallelism, a, b);
    harness::SubsetRun run { ecfg.name(), label, std::move(er.outcomes) };
    const fs::path file = harness::write_results(cfg.results_dir, run);
    const evaluate::SubsetResult r =
        evaluate::score_subset(run.adapter, label, run.outcomes, refs);
    recognized += recognized_count(run.outcomes);
    const std::size_t disagreements = static_cast<std::size_t>(
        std::count(er.used_fallback.begin(), er.used_fallback.end(), true));
    out << run.adapter << " " << label << ": " << r.matches << "/" << r.total
        << " matched (" << evaluate::format_rate(r.matches, r.total)
        << "%), fallback used on " << disagreements << "/" << r.total
        << ", fallback runs " << er.fallback_invocations << " -> "
        << file.string() << "\n";
  }
  return recognized == 0 ? kExitNothingRecognized : kExitOk;
}

int cmd_report(const Flags &f, std::ostream &out) {
  const RunConfig cfg = effective_config(f);
  const fs::path from =
      f.from.empty() ? cfg.reports_dir / "report.json" : fs::path(f.from);
  std::ifstream in(from, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + from.string()
                             + " (run eval with --format json first)");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto results = evaluate::read_report_json(ss.str());
  const evaluate::ReportFormat format = evaluate::parse_report_format(
      f.format.empty() ? "markdown" : f.format);
  if (format == evaluate::ReportFormat::kJson) {
    out << evaluate::report_json(results);
    return kExitOk;
  }
  out << evaluate::rate_matrix_text(results, format) << "\n"
      << evaluate::decrease_matrix_text(evaluate::decrease_table(results),
                                        format);
  return kExitOk;
}

int cmd_check(const Flags &f, std::ostream &out) {
  const RunConfig cfg = effective_config(f);
  const harness::ConformanceReport report =
      harness::check_conformance(cfg.adapter(f.adapter), f.image);
  out << f.adapter << ": "
      << (report.outcome.recognized()
              ? "recognized"
              : "failed(" + std::string(harness::reason_name(
                                *report.outcome.failure))
                    + ")")
      << "\n";
  for (const std::string &p: report.problems) {
    out << "  problem: " << p << "\n";
  }
  out << (report.ok() ? "conformant" : "not conformant") << "\n";
  return report.ok() ? kExitOk : kExitError;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err) {
  CLI::App app { "Benchmark harness for optical chemical structure recognition",
                 "ocsrbench" };
  app.require_subcommand(1);
  Flags f;

  CLI::App *gen = app.add_subcommand("gen", "render and damage the corpus");
  add_common(gen, f);
  CLI::App *run = app.add_subcommand("run", "run one adapter over subsets");
  add_common(run, f);
  run->add_option("--adapter", f.adapter, "adapter name from the config")
      ->required();
  CLI::App *eval = app.add_subcommand("eval", "score results and write reports");
  add_common(eval, f);
  eval->add_option("--format", f.format, "csv, json, markdown or all")
      ->check(CLI::IsMember({ "csv", "json", "markdown", "md", "all" }));
  eval->add_option("--rates", f.rates, "score a rate matrix CSV instead");
  eval->add_option("--total", f.total, "images per subset for --rates");
  CLI::App *ens = app.add_subcommand("ensemble", "run the agreement ensemble");
  add_common(ens, f);
  CLI::App *report = app.add_subcommand("report", "print a saved report");
  add_common(report, f);
  report->add_option("--format", f.format, "csv, json or markdown")
      ->check(CLI::IsMember({ "csv", "json", "markdown", "md" }));
  report->add_option("--from", f.from, "report.json to read");
  CLI::App *check = app.add_subcommand("check-adapter",
                                       "check an adapter against the protocol");
  add_common(check, f);
  check->add_option("--adapter", f.adapter, "adapter name")->required();
  check->add_option("--image", f.image, "image to recognize")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*gen) {
      return cmd_gen(f, out);
    }
    if (*run) {
      return cmd_run(f, out);
    }
    if (*eval) {
      return cmd_eval(f, out);
    }
    if (*ens) {
      return cmd_ensemble(f, out);
    }
    if (*report) {
      return cmd_report(f, out);
    }
    if (*check) {
      return cmd_check(f, out);
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace ocsrbench::cli
