//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocsrbench/chemgraph/molecule.hpp"
#include "ocsrbench/harness/adapter.hpp"
#include "ocsrbench/harness/corpus.hpp"

namespace ocsrbench::evaluate {

/// generated_id recorded for a failed recognition.
inline constexpr std::string_view kFailedId = "FAILED";

struct ReferenceMolecule {
  std::string image_id;
  chemgraph::Molecule molecule;
};

struct ImageScore {
  std::string image_id;
  bool matched = false;
  std::string generated_id;
  std::string reference_id;

  bool operator==(const ImageScore &) const = default;
};

struct SubsetResult {
  std::string adapter;
  std::string subset_label;
  std::size_t total = 0;
  std::size_t matches = 0;
  std::vector<ImageScore> per_image;  // empty for results built from counts

  double rate() const;  // matches / total
  bool operator==(const SubsetResult &) const = default;
};

/// Pairs outcomes with references by image_id (both sides must hold the
/// same set of ids, each once) and scores each pair by canonical identity.
/// Failed outcomes never match. per_image follows the outcome order.
/// Throws EvaluationError on misalignment or an empty input.
SubsetResult score_subset(std::string adapter, std::string subset_label,
                          std::span<const harness::RecognitionOutcome> outcomes,
                          std::span<const ReferenceMolecule> references);

/// Reads every reference molfile listed in the manifest.
std::vector<ReferenceMolecule>
load_references(const harness::CorpusManifest &manifest);

/// Throws EvaluationError unless 0 <= matches <= total and total > 0.
SubsetResult result_from_counts(std::string adapter, std::string subset_label,
                                std::size_t matches, std::size_t total);

/// The count k with format_rate(k, total) equal to the 1 dp rendering of
/// `percent`. Throws EvaluationError when no such count exists.
SubsetResult result_from_rate(std::string adapter, std::string subset_label,
                              double percent, std::size_t total);

/// 100 * matches / total rounded half up to one decimal, computed in
/// integers (e.g. 122/129 -> "94.6").
std::string format_rate(std::size_t matches, std::size_t total);

/// One decimal place, half away from zero, never "-0.0".
std::string format_percent(double value);

/// Cell of the decrease matrix: absent when the adapter has no result for
/// the subset; present without a value ("n/a") when the base rate is 0.
struct DecreaseCell {
  bool present = false;
  std::optional<double> percent;  // (1 - rate / base_rate) * 100, unrounded
};

struct DecreaseMatrix {
  std::vector<std::string> rows;     // adapters, first-appearance order
  std::vector<std::string> columns;  // subset labels, report order
  std::vector<std::vector<DecreaseCell>> cells;

  const DecreaseCell &at(std::string_view adapter,
                         std::string_view label) const;
};

/// Report column order: base, blend_*, noise_*, compress_*, distort_*, each
/// family by ascending label number, then any other labels alphabetically.
std::vector<std::string> order_columns(std::vector<std::string> labels);

/// Requires a base result for every adapter; throws EvaluationError
/// otherwise or when an (adapter, subset) pair occurs twice.
DecreaseMatrix decrease_table(std::span<const SubsetResult> results);

}  // namespace ocsrbench::evaluate
