//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrbench/harness/adapter.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <system_error>

#include "ocsrbench/chemgraph/molfile.hpp"
#include "ocsrbench/chemgraph/smiles.hpp"
#include "ocsrbench/error.hpp"
#include "ocsrbench/harness/process.hpp"

namespace ocsrbench::harness {
namespace {

constexpr std::string_view kSmilesTag = "SMILES:";
constexpr std::string_view kMolfileEnd = "M  END";

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

std::string_view trim(std::string_view s) {
  const std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) {
    return {};
  }
  const std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct Payload {
  std::string_view text;
  std::string_view before;  // stdout preceding the payload
  std::string_view after;   // stdout following it
  bool found = false;
};

Payload locate_smiles(std::string_view out) {
  std::size_t pos = 0;
  while (pos <= out.size()) {
    std::size_t eol = out.find('\n', pos);
    if (eol == std::string_view::npos) {
      eol = out.size();
    }
    const std::string_view line = out.substr(pos, eol - pos);
    if (line.substr(0, kSmilesTag.size()) == kSmilesTag) {
      return { trim(line.substr(kSmilesTag.size())), out.substr(0, pos),
               out.substr(std::min(eol + 1, out.size())), true };
    }
    pos = eol + 1;
  }
  return {};
}

Payload locate_molfile(std::string_view out) {
  std::size_t pos = 0;
  while (pos < out.size()) {
    std::size_t eol = out.find('\n', pos);
    if (eol == std::string_view::npos) {
      eol = out.size();
    }
    std::string_view line = out.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (line.substr(0, kMolfileEnd.size()) == kMolfileEnd
        && is_blank(line.substr(kMolfileEnd.size()))) {
      const std::size_t end = std::min(eol + 1, out.size());
      return { out.substr(0, end), {}, out.substr(end), true };
    }
    pos = eol + 1;
  }
  return {};
}

}  // namespace

std::string_view output_kind_name(OutputKind kind) {
  return kind == OutputKind::kMolfile ? "molfile" : "smiles";
}

OutputKind parse_output_kind(std::string_view name) {
  if (name == "molfile") {
    return OutputKind::kMolfile;
  }
  if (name == "smiles") {
    return OutputKind::kSmiles;
  }
  throw HarnessError("unknown output kind '" + std::string(name)
                     + "' (expected molfile or smiles)");
}

void validate(const AdapterConfig &cfg) {
  if (cfg.name.empty()) {
    throw HarnessError("adapter name is empty");
  }
  if (cfg.command.empty() || cfg.command.front().empty()) {
    throw HarnessError("adapter " + cfg.name + ": empty command");
  }
  if (!(cfg.timeout_secs > 0) || !std::isfinite(cfg.timeout_secs)) {
    throw HarnessError("adapter " + cfg.name + ": timeout must be positive");
  }
}

void apply_timeout_env(AdapterConfig &cfg) {
  const char *env = std::getenv(std::string(kTimeoutEnv).c_str());
  if (env == nullptr || *env == '\0') {
    return;
  }
  const std::string_view text(env);
  double v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || !(v > 0)
      || !std::isfinite(v)) {
    throw HarnessError(std::string(kTimeoutEnv) + "='" + env
                       + "' is not a positive number of seconds");
  }
  cfg.timeout_secs = v;
}

std::vector<std::string> expand_command(const AdapterConfig &cfg,
                                        const std::filesystem::path &image) {
  const std::string path = image.string();
  std::vector<std::string> argv;
  bool substituted = false;
  for (const std::string &arg: cfg.command) {
    std::string out;
    std::size_t pos = 0;
    while (true) {
      const std::size_t hit = arg.find(kImagePlaceholder, pos);
      if (hit == std::string::npos) {
        out.append(arg, pos);
        break;
      }
      out.append(arg, pos, hit - pos);
      out += path;
      pos = hit + kImagePlaceholder.size();
      substituted = true;
    }
    argv.push_back(std::move(out));
  }
  if (!substituted) {
    argv.push_back(path);
  }
  return argv;
}

std::string_view reason_name(FailureReason reason) {
  switch (reason) {
  case FailureReason::kNonzeroExit: return "nonzero_exit";
  case FailureReason::kTimeout: return "timeout";
  case FailureReason::kEmptyOutput: return "empty_output";
  case FailureReason::kParseError: return "parse_error";
  }
  return "unknown";
}

FailureReason parse_reason(std::string_view name) {
  for (FailureReason r: { FailureReason::kNonzeroExit, FailureReason::kTimeout,
                          FailureReason::kEmptyOutput,
                          FailureReason::kParseError }) {
    if (reason_name(r) == name) {
      return r;
    }
  }
  throw HarnessError("unknown failure reason '" + std::string(name) + "'");
}

RecognitionOutcome RecognitionOutcome::success(std::string image_id,
                                               chemgraph::Molecule m,
                                               std::string raw_output) {
  RecognitionOutcome o;
  o.image_id = std::move(image_id);
  o.molecule = std::move(m);
  o.raw_output = std::move(raw_output);
  return o;
}

RecognitionOutcome RecognitionOutcome::failed(std::string image_id,
                                              FailureReason why,
                                              std::string raw_output) {
  RecognitionOutcome o;
  o.image_id = std::move(image_id);
  o.failure = why;
  o.raw_output = std::move(raw_output);
  return o;
}

RecognitionOutcome interpret_output(std::string image_id,
                                    std::string_view stdout_text,
                                    OutputKind kind) {
  std::string raw(stdout_text);
  if (is_blank(stdout_text)) {
    return RecognitionOutcome::failed(std::move(image_id),
                                      FailureReason::kEmptyOutput,
                                      std::move(raw));
  }
  const Payload p = kind == OutputKind::kSmiles ? locate_smiles(stdout_text)
                                                : locate_molfile(stdout_text);
  if (!p.found) {
    return RecognitionOutcome::failed(std::move(image_id),
                                      FailureReason::kParseError,
                                      std::move(raw));
  }
  if (kind == OutputKind::kSmiles && p.text.empty()) {
    return RecognitionOutcome::failed(std::move(image_id),
                                      FailureReason::kEmptyOutput,
                                      std::move(raw));
  }
  chemgraph::Molecule m;
  try {
    m = kind == OutputKind::kSmiles ? chemgraph::parse_smiles(p.text)
                                    : chemgraph::parse_molfile(p.text);
  } catch (const ParseError &) {
    return RecognitionOutcome::failed(std::move(image_id),
                                      FailureReason::kParseError,
                                      std::move(raw));
  } catch (const MoleculeError &) {
    return RecognitionOutcome::failed(std::move(image_id),
                                      FailureReason::kParseError,
                                      std::move(raw));
  }
  if (m.empty()) {
    return RecognitionOutcome::failed(std::move(image_id),
                                      FailureReason::kEmptyOutput,
                                      std::move(raw));
  }
  return RecognitionOutcome::success(std::move(image_id), std::move(m),
                                     std::move(raw));
}

RecognitionOutcome run_adapter(const AdapterConfig &cfg,
                               const std::filesystem::path &image,
                               std::string image_id) {
  validate(cfg);
  if (image_id.empty()) {
    image_id = image.stem().string();
  }
  std::error_code ec;
  if (!std::filesystem::is_regular_file(image, ec)) {
    return RecognitionOutcome::failed(std::move(image_id),
                                      FailureReason::kEmptyOutput);
  }
  ProcessResult pr = run_process(expand_command(cfg, image), cfg.timeout_secs);
  RecognitionOutcome out;
  if (pr.timed_out) {
    out = RecognitionOutcome::failed(std::move(image_id),
                                     FailureReason::kTimeout,
                                     std::move(pr.stdout_text));
  } else if (pr.exit_code != 0) {
    out = RecognitionOutcome::failed(std::move(image_id),
                                     FailureReason::kNonzeroExit,
                                     std::move(pr.stdout_text));
  } else {
    out = interpret_output(std::move(image_id), pr.stdout_text,
                           cfg.output_kind);
  }
  out.wall_time = pr.wall_time;
  return out;
}

ConformanceReport check_conformance(const AdapterConfig &cfg,
                                    const std::filesystem::path &image) {
  ConformanceReport report;
  validate(cfg);
  ProcessResult pr = run_process(expand_command(cfg, image), cfg.timeout_secs);
  const std::string id = image.stem().string();
  if (pr.timed_out) {
    report.outcome = RecognitionOutcome::failed(id, FailureReason::kTimeout,
                                                pr.stdout_text);
    report.problems.push_back("did not finish within "
                              + std::to_string(cfg.timeout_secs) + " s");
  } else if (pr.exit_code != 0) {
    report.outcome = RecognitionOutcome::failed(
        id, FailureReason::kNonzeroExit, pr.stdout_text);
    report.problems.push_back("exit code " + std::to_string(pr.exit_code));
  } else {
    report.outcome = interpret_output(id, pr.stdout_text, cfg.output_kind);
    if (!report.outcome.recognized()) {
      report.problems.push_back(
          "payload rejected: "
          + std::string(reason_name(*report.outcome.failure)));
    }
    const Payload p = cfg.output_kind == OutputKind::kSmiles
                          ? locate_smiles(pr.stdout_text)
                          : locate_molfile(pr.stdout_text);
    if (p.found && (!is_blank(p.before) || !is_blank(p.after))) {
      report.problems.push_back("stdout carries text besides the payload");
    }
  }
  report.outcome.wall_time = pr.wall_time;
  return report;
}

}  // namespace ocsrbench::harness
