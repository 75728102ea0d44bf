//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocsrbench/evaluate/scoring.hpp"

namespace ocsrbench::evaluate {

enum class ReportFormat {
  kCsv,
  kJson,
  kMarkdown,
};

ReportFormat parse_report_format(std::string_view name);
std::string_view report_extension(ReportFormat format);

/// Rate matrix (percent, 1 dp) as CSV or markdown. Rows are adapters in
/// first-appearance order, columns follow order_columns(); a missing
/// result is an empty cell.
std::string rate_matrix_text(std::span<const SubsetResult> results,
                             ReportFormat format);

/// Decrease matrix in the same layout; "n/a" where the base rate is 0.
std::string decrease_matrix_text(const DecreaseMatrix &matrix,
                                 ReportFormat format);

/// Both matrices plus every SubsetResult with its per-image records.
std::string report_json(std::span<const SubsetResult> results);

/// Inverse of report_json for the SubsetResult list.
std::vector<SubsetResult> read_report_json(std::string_view text);

/// Tab-separated per-image records of one subset, header first.
std::string detail_text(const SubsetResult &result);

/// Writes rates.<ext> and decrease.<ext> (report.json for kJson) into
/// out_dir, plus details/<adapter>/<label>.tsv for every result with
/// per-image records. Returns the written paths. Throws EvaluationError
/// for an empty result list or an unwritable destination.
std::vector<std::filesystem::path>
emit_report(std::span<const SubsetResult> results, ReportFormat format,
            const std::filesystem::path &out_dir);

/// Reads a rate matrix CSV ("adapter,<label>,..." header, percentages in
/// the cells, empty cells skipped) into count-only results over `total`
/// images per subset.
std::vector<SubsetResult> read_rate_matrix_csv(std::string_view text,
                                               std::size_t total);

}  // namespace ocsrbench::evaluate
