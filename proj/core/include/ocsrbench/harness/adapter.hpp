//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ocsrbench/chemgraph/molecule.hpp"

namespace ocsrbench::harness {

enum class OutputKind {
  kMolfile,  // stdout is a V2000 block ending in "M  END"
  kSmiles,   // stdout holds a line "SMILES: <string>"
};

std::string_view output_kind_name(OutputKind kind);
OutputKind parse_output_kind(std::string_view name);

inline constexpr double kDefaultTimeoutSecs = 60.0;
inline constexpr std::string_view kImagePlaceholder = "{image}";
inline constexpr std::string_view kTimeoutEnv = "OCSR_TIMEOUT_SECS";

struct AdapterConfig {
  std::string name;
  /// Executable followed by its arguments. Every "{image}" is replaced by
  /// the image path; without a placeholder the path is appended.
  std::vector<std::string> command;
  OutputKind output_kind = OutputKind::kMolfile;
  double timeout_secs = kDefaultTimeoutSecs;
};

/// Throws HarnessError for an empty name or command, or timeout <= 0.
void validate(const AdapterConfig &cfg);

/// Replaces cfg.timeout_secs with OCSR_TIMEOUT_SECS when that variable
/// holds a positive number. Throws HarnessError for any other value.
void apply_timeout_env(AdapterConfig &cfg);

std::vector<std::string> expand_command(const AdapterConfig &cfg,
                                        const std::filesystem::path &image);

enum class FailureReason {
  kNonzeroExit,
  kTimeout,
  kEmptyOutput,
  kParseError,
};

std::string_view reason_name(FailureReason reason);
FailureReason parse_reason(std::string_view name);

/// Result of one adapter invocation. A failed outcome carries the
/// placeholder molecule, which never matches anything when scored.
struct RecognitionOutcome {
  std::string image_id;
  std::optional<FailureReason> failure;
  chemgraph::Molecule molecule;
  std::string raw_output;
  double wall_time = 0.0;

  bool recognized() const { return !failure.has_value(); }

  static RecognitionOutcome success(std::string image_id,
                                    chemgraph::Molecule m,
                                    std::string raw_output = {});
  static RecognitionOutcome failed(std::string image_id, FailureReason why,
                                   std::string raw_output = {});
};

/// Interprets the stdout of an adapter that exited 0. Blank output or a
/// molecule without atoms is kEmptyOutput; text that does not parse is
/// kParseError. For kSmiles the first line starting with "SMILES:" is
/// used; for kMolfile the text up to and including "M  END".
RecognitionOutcome interpret_output(std::string image_id,
                                    std::string_view stdout_text,
                                    OutputKind kind);

/// Spawns the adapter on one image. Never throws for adapter misbehavior:
/// a missing image gives kEmptyOutput without spawning, a nonzero exit
/// kNonzeroExit, and a process still running at the deadline kTimeout.
RecognitionOutcome run_adapter(const AdapterConfig &cfg,
                               const std::filesystem::path &image,
                               std::string image_id = {});

struct ConformanceReport {
  RecognitionOutcome outcome;
  std::vector<std::string> problems;  // empty means conformant

  bool ok() const { return problems.empty(); }
};

/// Runs the adapter once and checks the protocol strictly: exit 0, a
/// parseable payload, and no text on stdout besides that payload.
ConformanceReport check_conformance(const AdapterConfig &cfg,
                                    const std::filesystem::path &image);

}  // namespace ocsrbench::harness
