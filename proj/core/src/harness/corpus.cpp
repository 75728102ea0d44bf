//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrbench/harness/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ocsrbench/chemgraph/molfile.hpp"
#include "ocsrbench/error.hpp"
#include "ocsrbench/harness/runner.hpp"
#include "ocsrbench/io/png.hpp"

namespace ocsrbench::harness {
namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kFormat = "ocsrbench-manifest";
constexpr int kVersion = 1;

std::string read_text(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    throw HarnessError("cannot read " + p.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path &p, std::string_view text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw HarnessError("cannot write " + p.string());
  }
}

void prepare_dir(const fs::path &dir) {
  fs::create_directories(dir);
  for (const auto &e: fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".png") {
      fs::remove(e.path());
    }
  }
}

template <class T>
T field(const Json &j, const char *key) {
  if (!j.contains(key)) {
    throw HarnessError(std::string("manifest: missing field '") + key + "'");
  }
  return j.at(key).get<T>();
}

}  // namespace

const CorpusSubset *CorpusManifest::find_subset(std::string_view label) const {
  for (const CorpusSubset &s: subsets) {
    if (s.label == label) {
      return &s;
    }
  }
  return nullptr;
}

fs::path CorpusManifest::image_path(const CorpusSubset &subset,
                                    const CorpusEntry &entry) const {
  return root / subset.directory / (entry.image_id + ".png");
}

fs::path CorpusManifest::reference_path(const CorpusEntry &entry) const {
  return root / entry.reference_molfile;
}

CorpusManifest build_corpus(const fs::path &molfile_dir,
                            const fs::path &out_dir,
                            const std::vector<degrade::DamageSpec> &specs,
                            const CorpusOptions &opts,
                            std::uint64_t corpus_seed) {
  if (!fs::is_directory(molfile_dir)) {
    throw HarnessError("molfile directory " + molfile_dir.string()
                       + " does not exist");
  }
  std::set<std::string> labels { std::string(kBaseLabel),
                                 std::string(kReferenceDir) };
  for (const degrade::DamageSpec &s: specs) {
    if (!labels.insert(s.label()).second) {
      throw HarnessError("duplicate or reserved subset label " + s.label());
    }
  }

  std::vector<fs::path> inputs;
  for (const auto &e: fs::directory_iterator(molfile_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".mol") {
      inputs.push_back(e.path());
    }
  }
  std::sort(inputs.begin(), inputs.end());
  if (inputs.empty()) {
    throw HarnessError("no .mol files in " + molfile_dir.string());
  }

  CorpusManifest manifest;
  manifest.root = out_dir;
  manifest.corpus_seed = corpus_seed;
  manifest.render = opts.render;
  manifest.shepards_points = opts.shepards_points;

  std::vector<RasterImage> base_images;
  std::vector<std::string> molfiles;
  for (const fs::path &p: inputs) {
    try {
      std::string text = read_text(p);
      const chemgraph::Molecule m = chemgraph::parse_molfile(text);
      RasterImage img = render::render(m, opts.render);
      manifest.entries.push_back(
          { p.stem().string(),
            fs::path(kReferenceDir) / (p.stem().string() + ".mol") });
      base_images.push_back(std::move(img));
      molfiles.push_back(std::move(text));
    } catch (const std::exception &e) {
      manifest.skipped.push_back({ p.filename(), e.what() });
    }
  }
  if (manifest.entries.empty()) {
    throw HarnessError("none of the molfiles in " + molfile_dir.string()
                       + " could be rendered");
  }

  fs::create_directories(out_dir / kReferenceDir);
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
    write_text(manifest.reference_path(manifest.entries[i]), molfiles[i]);
  }

  manifest.subsets.push_back(
      { std::string(kBaseLabel), std::nullopt, fs::path(kBaseLabel) });
  for (const degrade::DamageSpec &s: specs) {
    manifest.subsets.push_back({ s.label(), s, fs::path(s.label()) });
  }

  const std::size_t n = manifest.entries.size();
  for (const CorpusSubset &subset: manifest.subsets) {
    prepare_dir(out_dir / subset.directory);
    parallel_for(n, opts.parallelism, [&](std::size_t i) {
      const CorpusEntry &entry = manifest.entries[i];
      if (!subset.damage) {
        io::write_png(manifest.image_path(subset, entry), base_images[i]);
        return;
      }
      degrade::DamageSpec spec = *subset.damage;
      spec.seed = degrade::derive_seed(corpus_seed, subset.label,
                                       entry.image_id);
      RasterImage damaged = [&] {
        if (spec.kind == degrade::DamageKind::kDistort
            && opts.render.padding < kDistortMargin) {
          const RasterImage padded = pad_white(
              base_images[i], kDistortMargin - opts.render.padding);
          return degrade::apply(padded, spec, opts.shepards_points);
        }
        return degrade::apply(base_images[i], spec, opts.shepards_points);
      }();
      io::write_png(manifest.image_path(subset, entry), damaged);
    });
  }

  write_manifest(manifest);
  return manifest;
}

std::string manifest_to_json(const CorpusManifest &m) {
  Json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["corpus_seed"] = m.corpus_seed;
  j["render"] = { { "scale", m.render.scale },
                  { "stroke_width", m.render.stroke_width },
                  { "padding", m.render.padding },
                  { "label_hetero_only", m.render.label_hetero_only } };
  j["shepards_points"] = m.shepards_points;
  Json entries = Json::array();
  for (const CorpusEntry &e: m.entries) {
    entries.push_back(
        { { "image_id", e.image_id },
          { "base_image",
            (fs::path(kBaseLabel) / (e.image_id + ".png")).generic_string() },
          { "reference_molfile", e.reference_molfile.generic_string() } });
  }
  j["entries"] = std::move(entries);
  Json subsets = Json::array();
  for (const CorpusSubset &s: m.subsets) {
    Json js;
    js["label"] = s.label;
    if (s.damage) {
      js["kind"] = degrade::kind_name(s.damage->kind);
      js["param"] = s.damage->param;
    } else {
      js["kind"] = nullptr;
      js["param"] = nullptr;
    }
    js["directory"] = s.directory.generic_string();
    subsets.push_back(std::move(js));
  }
  j["subsets"] = std::move(subsets);
  Json skipped = Json::array();
  for (const SkippedInput &s: m.skipped) {
    skipped.push_back({ { "file", s.file.generic_string() },
                        { "reason", s.reason } });
  }
  j["skipped"] = std::move(skipped);
  return j.dump(2) + "\n";
}

CorpusManifest manifest_from_json(std::string_view text, const fs::path &root) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception &e) {
    throw HarnessError(std::string("manifest: ") + e.what());
  }
  try {
    if (field<std::string>(j, "format") != kFormat) {
      throw HarnessError("manifest: not an ocsrbench manifest");
    }
    if (field<int>(j, "version") != kVersion) {
      throw HarnessError("manifest: unsupported version");
    }
    CorpusManifest m;
    m.root = root;
    m.corpus_seed = field<std::uint64_t>(j, "corpus_seed");
    const Json &r = j.at("render");
    m.render.scale = field<double>(r, "scale");
    m.render.stroke_width = field<double>(r, "stroke_width");
    m.render.padding = field<std::size_t>(r, "padding");
    m.render.label_hetero_only = field<bool>(r, "label_hetero_only");
    m.shepards_points = field<int>(j, "shepards_points");

    std::set<std::string> ids;
    for (const Json &e: j.at("entries")) {
      CorpusEntry entry { field<std::string>(e, "image_id"),
                          fs::path(field<std::string>(e, "reference_molfile")) };
      if (!ids.insert(entry.image_id).second) {
        throw HarnessError("manifest: duplicate image id " + entry.image_id);
      }
      m.entries.push_back(std::move(entry));
    }
    for (const Json &s: j.at("subsets")) {
      CorpusSubset subset;
      subset.label = field<std::string>(s, "label");
      subset.directory = fs::path(field<std::string>(s, "directory"));
      if (!s.at("kind").is_null()) {
        subset.damage = degrade::parse_label(subset.label);
        if (degrade::kind_name(subset.damage->kind)
                != field<std::string>(s, "kind")
            || subset.damage->param != field<int>(s, "param")) {
          throw HarnessError("manifest: subset " + subset.label
                             + " disagrees with its kind/param");
        }
      }
      m.subsets.push_back(std::move(subset));
    }
    if (m.subsets.empty() || m.subsets.front().label != kBaseLabel) {
      throw HarnessError("manifest: first subset must be base");
    }
    if (j.contains("skipped")) {
      for (const Json &s: j.at("skipped")) {
        m.skipped.push_back({ fs::path(field<std::string>(s, "file")),
                              field<std::string>(s, "reason") });
      }
    }
    return m;
  } catch (const Json::exception &e) {
    throw HarnessError(std::string("manifest: ") + e.what());
  } catch (const std::invalid_argument &e) {
    throw HarnessError(std::string("manifest: ") + e.what());
  }
}

void write_manifest(const CorpusManifest &manifest) {
  fs::create_directories(manifest.root);
  write_text(manifest.root / kManifestName, manifest_to_json(manifest));
}

CorpusManifest read_manifest(const fs::path &corpus_dir) {
  return manifest_from_json(read_text(corpus_dir / kManifestName), corpus_dir);
}

}  // namespace ocsrbench::harness
