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
#include "ocsrbench/render/render.hpp"

namespace ocsrbench::harness {

inline constexpr std::string_view kBaseLabel = "base";
inline constexpr std::string_view kReferenceDir = "reference";
inline constexpr std::string_view kManifestName = "manifest.json";
/// Minimum white margin applied before Shepard's distortion.
inline constexpr std::size_t kDistortMargin = 30;

struct CorpusEntry {
  std::string image_id;
  std::filesystem::path reference_molfile;  // relative to the corpus root
};

struct CorpusSubset {
  std::string label;
  std::optional<degrade::DamageSpec> damage;  // nullopt for the base subset
  std::filesystem::path directory;            // relative to the corpus root
};

struct SkippedInput {
  std::filesystem::path file;
  std::string reason;
};

struct CorpusManifest {
  std::filesystem::path root;  // directory holding manifest.json
  std::uint64_t corpus_seed = 0;
  render::RenderOptions render;
  int shepards_points = degrade::kDefaultShepardsPoints;
  std::vector<CorpusEntry> entries;  // sorted by image_id
  std::vector<CorpusSubset> subsets; // base first
  std::vector<SkippedInput> skipped;

  const CorpusSubset *find_subset(std::string_view label) const;
  std::filesystem::path image_path(const CorpusSubset &subset,
                                   const CorpusEntry &entry) const;
  std::filesystem::path reference_path(const CorpusEntry &entry) const;
};

struct CorpusOptions {
  render::RenderOptions render;
  int shepards_points = degrade::kDefaultShepardsPoints;
  int parallelism = 1;  // images of one subset are processed concurrently
};

/// Renders every *.mol file of molfile_dir (image id = file stem) into
/// out_dir/base, writes each damaged variant to out_dir/<label>, copies the
/// molfiles to out_dir/reference and writes out_dir/manifest.json. Files
/// that fail to parse or render are listed as skipped. Distortion inputs
/// are first padded to a 30 px white margin. Stale PNGs in the subset
/// directories are removed. Throws HarnessError when no molfile is usable
/// or two specs share a label.
CorpusManifest build_corpus(const std::filesystem::path &molfile_dir,
                            const std::filesystem::path &out_dir,
                            const std::vector<degrade::DamageSpec> &specs,
                            const CorpusOptions &opts,
                            std::uint64_t corpus_seed);

std::string manifest_to_json(const CorpusManifest &manifest);
CorpusManifest manifest_from_json(std::string_view text,
                                  const std::filesystem::path &root);

void write_manifest(const CorpusManifest &manifest);
/// Reads <corpus_dir>/manifest.json. Throws HarnessError.
CorpusManifest read_manifest(const std::filesystem::path &corpus_dir);

}  // namespace ocsrbench::harness
