//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrbench/ensemble/ensemble.hpp"

#include <optional>

#include "ocsrbench/chemgraph/canonical.hpp"
#include "ocsrbench/error.hpp"
#include "ocsrbench/harness/runner.hpp"

namespace ocsrbench::ensemble {
namespace fs = std::filesystem;

std::string ensemble_name(std::string_view a, std::string_view b,
                          std::string_view fallback) {
  return "ensemble(" + std::string(a) + "+" + std::string(b) + "|"
         + std::string(fallback) + ")";
}

std::string EnsembleConfig::name() const {
  return ensemble_name(fast_a.name, fast_b.name, fallback.name);
}

void validate(const EnsembleConfig &cfg) {
  harness::validate(cfg.fast_a);
  harness::validate(cfg.fast_b);
  harness::validate(cfg.fallback);
  if (cfg.fast_a.name == cfg.fast_b.name || cfg.fast_a.name == cfg.fallback.name
      || cfg.fast_b.name == cfg.fallback.name) {
    throw HarnessError("ensemble needs three distinct adapters, got "
                       + cfg.name());
  }
}

RecognitionOutcome combine(const RecognitionOutcome &a,
                           const RecognitionOutcome &b,
                           const FallbackSupplier &fallback) {
  if (a.recognized() && b.recognized() && !a.molecule.is_placeholder()
      && !b.molecule.is_placeholder()
      && chemgraph::canonical_id(a.molecule)
             == chemgraph::canonical_id(b.molecule)) {
    return a;
  }
  return fallback();
}

EnsembleRun combine_runs(
    std::span<const RecognitionOutcome> a, std::span<const RecognitionOutcome> b,
    const std::function<RecognitionOutcome(std::size_t)> &fallback) {
  if (a.size() != b.size()) {
    throw HarnessError("ensemble inputs differ in length");
  }
  EnsembleRun run;
  run.outcomes.reserve(a.size());
  run.used_fallback.assign(a.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].image_id != b[i].image_id) {
      throw HarnessError("ensemble inputs misaligned at " + a[i].image_id
                         + " / " + b[i].image_id);
    }
    run.outcomes.push_back(combine(a[i], b[i], [&] {
      run.used_fallback[i] = true;
      ++run.fallback_invocations;
      return fallback(i);
    }));
  }
  return run;
}

EnsembleRun run_ensemble_subset(const EnsembleConfig &cfg,
                                const harness::CorpusManifest &manifest,
                                std::string_view label, int parallelism,
                                std::span<const RecognitionOutcome> fast_a,
                                std::span<const RecognitionOutcome> fast_b) {
  validate(cfg);
  const harness::CorpusSubset *subset = manifest.find_subset(label);
  if (subset == nullptr) {
    throw HarnessError("subset '" + std::string(label)
                       + "' is not in the manifest");
  }
  std::vector<RecognitionOutcome> ran_a;
  std::vector<RecognitionOutcome> ran_b;
  if (fast_a.empty()) {
    ran_a = harness::run_subset(cfg.fast_a, manifest, label, parallelism);
    fast_a = ran_a;
  }
  if (fast_b.empty()) {
    ran_b = harness::run_subset(cfg.fast_b, manifest, label, parallelism);
    fast_b = ran_b;
  }
  if (fast_a.size() != manifest.entries.size()
      || fast_b.size() != manifest.entries.size()) {
    throw HarnessError("ensemble inputs do not cover subset "
                       + std::string(label));
  }

  auto run_fallback = [&](std::size_t i) {
    const harness::CorpusEntry &entry = manifest.entries[i];
    return harness::run_adapter(
        cfg.fallback, fs::absolute(manifest.image_path(*subset, entry)),
        entry.image_id);
  };

  // Disagreements are found first so the fallback can run in parallel,
  // still at most once per image.
  const std::size_t n = fast_a.size();
  std::vector<std::optional<RecognitionOutcome>> fallback(n);
  EnsembleRun probe = combine_runs(fast_a, fast_b, [&](std::size_t i) {
    return RecognitionOutcome::failed(fast_a[i].image_id,
                                      harness::FailureReason::kEmptyOutput);
  });
  harness::parallel_for(n, parallelism, [&](std::size_t i) {
    if (probe.used_fallback[i] || !cfg.lazy_fallback) {
      fallback[i] = run_fallback(i);
    }
  });

  EnsembleRun run = combine_runs(fast_a, fast_b, [&](std::size_t i) {
    return *fallback[i];
  });
  run.fallback_invocations = 0;
  for (const auto &f: fallback) {
    run.fallback_invocations += f.has_value() ? 1 : 0;
  }
  return run;
}

}  // namespace ocsrbench::ensemble
