//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocsrbench/harness/adapter.hpp"
#include "ocsrbench/harness/corpus.hpp"

namespace ocsrbench::ensemble {

using harness::RecognitionOutcome;
using FallbackSupplier = std::function<RecognitionOutcome()>;

struct EnsembleConfig {
  harness::AdapterConfig fast_a;
  harness::AdapterConfig fast_b;
  harness::AdapterConfig fallback;
  /// Run the fallback only for images where the fast adapters disagree.
  /// When false it runs on every image, but its answer is still used only
  /// on disagreement.
  bool lazy_fallback = true;

  /// "ensemble(<a>+<b>|<fallback>)"
  std::string name() const;
};

std::string ensemble_name(std::string_view a, std::string_view b,
                          std::string_view fallback);

/// Throws HarnessError unless the three adapters are valid and distinctly
/// named.
void validate(const EnsembleConfig &cfg);

/// Returns `a` when both outcomes are recognized with equal canonical ids,
/// without calling `fallback`; otherwise returns fallback(). A failure on
/// either side counts as disagreement.
RecognitionOutcome combine(const RecognitionOutcome &a,
                           const RecognitionOutcome &b,
                           const FallbackSupplier &fallback);

struct EnsembleRun {
  std::vector<RecognitionOutcome> outcomes;
  std::vector<bool> used_fallback;  // per image
  std::size_t fallback_invocations = 0;
};

/// Combines two aligned outcome lists (same image ids, same order).
/// `fallback(i)` supplies the fallback outcome for image i. Throws
/// HarnessError on misalignment.
EnsembleRun combine_runs(
    std::span<const RecognitionOutcome> a, std::span<const RecognitionOutcome> b,
    const std::function<RecognitionOutcome(std::size_t)> &fallback);

/// Full ensemble over one subset. Fast outcomes may be passed in (e.g. read
/// from earlier results); empty spans make the fast adapters run here.
EnsembleRun run_ensemble_subset(const EnsembleConfig &cfg,
                                const harness::CorpusManifest &manifest,
                                std::string_view label, int parallelism,
                                std::span<const RecognitionOutcome> fast_a = {},
                                std::span<const RecognitionOutcome> fast_b = {});

}  // namespace ocsrbench::ensemble
