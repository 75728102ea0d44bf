//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ocsrbench/degrade/degrade.hpp"
#include "ocsrbench/ensemble/ensemble.hpp"
#include "ocsrbench/harness/adapter.hpp"
#include "ocsrbench/render/render.hpp"

namespace ocsrbench::cli {

inline constexpr std::uint64_t kDefaultCorpusSeed = 20240501;

struct EnsembleSettings {
  std::string fast_a;
  std::string fast_b;
  std::string fallback;
  bool lazy_fallback = true;
};

struct RunConfig {
  std::filesystem::path molfile_dir = "data/corpus";
  std::filesystem::path corpus_dir = "out/corpus";
  std::filesystem::path results_dir = "out/results";
  std::filesystem::path reports_dir = "out/reports";
  std::uint64_t corpus_seed = kDefaultCorpusSeed;
  std::vector<degrade::DamageSpec> damage = degrade::default_grid();
  bool allow_off_grid = false;
  render::RenderOptions render;
  int shepards_points = degrade::kDefaultShepardsPoints;
  int parallelism = 1;
  std::vector<harness::AdapterConfig> adapters;
  std::optional<EnsembleSettings> ensemble;

  /// Throws std::runtime_error for an unknown name.
  const harness::AdapterConfig &adapter(std::string_view name) const;
  ensemble::EnsembleConfig ensemble_config() const;
};

/// Parses the JSON configuration documented in docs/config.md. Relative
/// paths, including adapter executables containing '/', resolve against
/// base_dir. OCSR_TIMEOUT_SECS overrides every adapter timeout. Throws
/// std::runtime_error with the offending key on invalid input.
RunConfig config_from_json(std::string_view text,
                           const std::filesystem::path &base_dir);

RunConfig load_config(const std::filesystem::path &file);

}  // namespace ocsrbench::cli
