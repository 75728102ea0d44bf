//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ocsrbench::cli {
namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string &key, const std::string &what) {
  throw std::runtime_error("config: " + key + ": " + what);
}

const std::set<std::string> kTopKeys { "paths",        "corpus_seed",
                                       "damage",       "allow_off_grid",
                                       "render",       "shepards_points",
                                       "parallelism",  "adapters",
                                       "ensemble" };

void reject_unknown(const Json &j, const std::set<std::string> &known,
                    const std::string &where) {
  for (const auto &[key, _]: j.items()) {
    if (!known.contains(key)) {
      fail(where + key, "unknown key");
    }
  }
}

fs::path resolve(const fs::path &base, const std::string &p) {
  const fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

template <class T>
T get(const Json &j, const std::string &key) {
  try {
    return j.get<T>();
  } catch (const Json::exception &e) {
    fail(key, e.what());
  }
}

}  // namespace

const harness::AdapterConfig &RunConfig::adapter(std::string_view name) const {
  for (const harness::AdapterConfig &a: adapters) {
    if (a.name == name) {
      return a;
    }
  }
  std::string known;
  for (const harness::AdapterConfig &a: adapters) {
    known += (known.empty() ? "" : ", ") + a.name;
  }
  throw std::runtime_error("unknown adapter '" + std::string(name)
                           + "' (configured: "
                           + (known.empty() ? "none" : known) + ")");
}

ensemble::EnsembleConfig RunConfig::ensemble_config() const {
  if (!ensemble) {
    throw std::runtime_error("the configuration has no ensemble section");
  }
  ensemble::EnsembleConfig cfg { adapter(ensemble->fast_a),
                                 adapter(ensemble->fast_b),
                                 adapter(ensemble->fallback),
                                 ensemble->lazy_fallback };
  ensemble::validate(cfg);
  return cfg;
}

RunConfig config_from_json(std::string_view text, const fs::path &base_dir) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception &e) {
    throw std::runtime_error(std::string("config: ") + e.what());
  }
  if (!j.is_object()) {
    fail("<root>", "expected an object");
  }
  reject_unknown(j, kTopKeys, "");

  RunConfig cfg;
  cfg.molfile_dir = resolve(base_dir, cfg.molfile_dir);
  cfg.corpus_dir = resolve(base_dir, cfg.corpus_dir);
  cfg.results_dir = resolve(base_dir, cfg.results_dir);
  cfg.reports_dir = resolve(base_dir, cfg.reports_dir);

  if (j.contains("paths")) {
    const Json &p = j["paths"];
    reject_unknown(p, { "molfiles", "corpus", "results", "reports" }, "paths.");
    if (p.contains("molfiles")) {
      cfg.molfile_dir = resolve(base_dir, get<std::string>(p["molfiles"], "paths.molfiles"));
    }
    if (p.contains("corpus")) {
      cfg.corpus_dir = resolve(base_dir, get<std::string>(p["corpus"], "paths.corpus"));
    }
    if (p.contains("results")) {
      cfg.results_dir = resolve(base_dir, get<std::string>(p["results"], "paths.results"));
    }
    if (p.contains("reports")) {
      cfg.reports_dir = resolve(base_dir, get<std::string>(p["reports"], "paths.reports"));
    }
  }
  if (j.contains("corpus_seed")) {
    cfg.corpus_seed = get<std::uint64_t>(j["corpus_seed"], "corpus_seed");
  }
  if (j.contains("allow_off_grid")) {
    cfg.allow_off_grid = get<bool>(j["allow_off_grid"], "allow_off_grid");
  }
  if (j.contains("damage")) {
    cfg.damage.clear();
    for (const Json &label: j["damage"]) {
      try {
        degrade::DamageSpec spec =
            degrade::parse_label(get<std::string>(label, "damage"));
        degrade::validate(spec, cfg.allow_off_grid);
        cfg.damage.push_back(spec);
      } catch (const std::invalid_argument &e) {
        fail("damage", e.what());
      }
    }
  }
  if (j.contains("render")) {
    const Json &r = j["render"];
    reject_unknown(r, { "scale", "stroke_width", "padding", "label_hetero_only" },
                   "render.");
    if (r.contains("scale")) {
      cfg.render.scale = get<double>(r["scale"], "render.scale");
    }
    if (r.contains("stroke_width")) {
      cfg.render.stroke_width = get<double>(r["stroke_width"], "render.stroke_width");
    }
    if (r.contains("padding")) {
      cfg.render.padding = get<std::size_t>(r["padding"], "render.padding");
    }
    if (r.contains("label_hetero_only")) {
      cfg.render.label_hetero_only =
          get<bool>(r["label_hetero_only"], "render.label_hetero_only");
    }
    if (!(cfg.render.scale > 0)) {
      fail("render.scale", "must be positive");
    }
    if (!(cfg.render.stroke_width > 0)) {
      fail("render.stroke_width", "must be positive");
    }
  }
  if (j.contains("shepards_points")) {
    cfg.shepards_points = get<int>(j["shepards_points"], "shepards_points");
    if (cfg.shepards_points < 0) {
      fail("shepards_points", "must be non-negative");
    }
  }
  if (j.contains("parallelism")) {
    cfg.parallelism = get<int>(j["parallelism"], "parallelism");
    if (cfg.parallelism < 1) {
      fail("parallelism", "must be at least 1");
    }
  }
  if (j.contains("adapters")) {
    std::set<std::string> names;
    for (const Json &a: j["adapters"]) {
      reject_unknown(a, { "name", "command", "output", "timeout_secs" },
                     "adapters[].");
      harness::AdapterConfig ac;
      ac.name = get<std::string>(a.value("name", Json()), "adapters[].name");
      ac.command = get<std::vector<std::string>>(a.value("command", Json()),
                                                 "adapters[" + ac.name + "].command");
      if (!ac.command.empty() && ac.command[0].find('/') != std::string::npos) {
        ac.command[0] = resolve(base_dir, ac.command[0]).string();
      }
      try {
        if (a.contains("output")) {
          ac.output_kind = harness::parse_output_kind(
              get<std::string>(a["output"], "adapters[" + ac.name + "].output"));
        }
        if (a.contains("timeout_secs")) {
          ac.timeout_secs = get<double>(a["timeout_secs"],
                                        "adapters[" + ac.name + "].timeout_secs");
        }
        harness::apply_timeout_env(ac);
        harness::validate(ac);
      } catch (const std::runtime_error &e) {
        fail("adapters[" + ac.name + "]", e.what());
      }
      if (!names.insert(ac.name).second) {
        fail("adapters", "duplicate name " + ac.name);
      }
      cfg.adapters.push_back(std::move(ac));
    }
  }
  if (j.contains("ensemble")) {
    const Json &e = j["ensemble"];
    reject_unknown(e, { "fast_a", "fast_b", "fallback", "lazy_fallback" },
                   "ensemble.");
    EnsembleSettings s;
    s.fast_a = get<std::string>(e.value("fast_a", Json()), "ensemble.fast_a");
    s.fast_b = get<std::string>(e.value("fast_b", Json()), "ensemble.fast_b");
    s.fallback = get<std::string>(e.value("fallback", Json()), "ensemble.fallback");
    s.lazy_fallback = e.value("lazy_fallback", true);
    cfg.ensemble = s;
  }
  return cfg;
}

RunConfig load_config(const fs::path &file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read config " + file.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str(), file.parent_path().empty()
                                        ? fs::path(".")
                                        : file.parent_path());
}

}  // namespace ocsrbench::cli
