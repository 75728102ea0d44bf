//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ocsrbench/harness/adapter.hpp"
#include "ocsrbench/harness/corpus.hpp"

namespace ocsrbench::harness {

/// Applies `task` to every index in [0, n) on up to `parallelism` threads.
/// The first exception thrown by a task is rethrown after all threads stop.
void parallel_for(std::size_t n, int parallelism,
                  const std::function<void(std::size_t)> &task);

/// One outcome per manifest entry, in entry (image_id) order whatever the
/// completion order. Throws HarnessError for an unknown label.
std::vector<RecognitionOutcome> run_subset(const AdapterConfig &cfg,
                                           const CorpusManifest &manifest,
                                           std::string_view label,
                                           int parallelism);

struct SubsetRun {
  std::string adapter;
  std::string subset_label;
  std::vector<RecognitionOutcome> outcomes;
};

/// Adapter names as directory names: characters outside [A-Za-z0-9._-]
/// become '_'.
std::string sanitize_name(std::string_view name);

/// Results document without timings, so equal outcomes give equal bytes.
std::string results_to_json(const SubsetRun &run);
SubsetRun results_from_json(std::string_view text);

/// Writes <results_dir>/<adapter>/<label>.json and the per-image wall
/// times to <label>.timing.json next to it. Returns the results path.
std::filesystem::path write_results(const std::filesystem::path &results_dir,
                                    const SubsetRun &run);
SubsetRun read_results(const std::filesystem::path &file);

/// Every <adapter>/<label>.json under results_dir (timing files
/// excluded), sorted.
std::vector<std::filesystem::path>
list_results(const std::filesystem::path &results_dir);

}  // namespace ocsrbench::harness
