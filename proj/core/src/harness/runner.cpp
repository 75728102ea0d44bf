//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrbench/harness/runner.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ocsrbench/chemgraph/molfile.hpp"
#include "ocsrbench/error.hpp"

namespace ocsrbench::harness {
namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kFormat = "ocsrbench-results";
constexpr std::string_view kTimingSuffix = ".timing.json";

void write_text(const fs::path &p, std::string_view text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw HarnessError("cannot write " + p.string());
  }
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size()
         && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

void parallel_for(std::size_t n, int parallelism,
                  const std::function<void(std::size_t)> &task) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, parallelism)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      task(i);
    }
    return;
  }
  std::atomic<std::size_t> next { 0 };
  std::atomic<bool> stop { false };
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) {
        return;
      }
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) {
          error = std::current_exception();
        }
        stop = true;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back(worker);
  }
  pool.clear();
  if (error) {
    std::rethrow_exception(error);
  }
}

std::vector<RecognitionOutcome> run_subset(const AdapterConfig &cfg,
                                           const CorpusManifest &manifest,
                                           std::string_view label,
                                           int parallelism) {
  validate(cfg);
  const CorpusSubset *subset = manifest.find_subset(label);
  if (subset == nullptr) {
    throw HarnessError("subset '" + std::string(label)
                       + "' is not in the manifest");
  }
  std::vector<RecognitionOutcome> outcomes(manifest.entries.size());
  parallel_for(outcomes.size(), parallelism, [&](std::size_t i) {
    const CorpusEntry &entry = manifest.entries[i];
    outcomes[i] = run_adapter(cfg, fs::absolute(manifest.image_path(*subset, entry)),
                              entry.image_id);
  });
  return outcomes;
}

std::string sanitize_name(std::string_view name) {
  std::string out(name);
  for (char &c: out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')
                    || (c >= '0' && c <= '9') || c == '.' || c == '_'
                    || c == '-';
    if (!ok) {
      c = '_';
    }
  }
  if (out.empty() || out == "." || out == "..") {
    out = "_" + out;
  }
  return out;
}

std::string results_to_json(const SubsetRun &run) {
  Json j;
  j["format"] = kFormat;
  j["adapter"] = run.adapter;
  j["subset"] = run.subset_label;
  Json outcomes = Json::array();
  for (const RecognitionOutcome &o: run.outcomes) {
    Json jo;
    jo["image_id"] = o.image_id;
    if (o.recognized()) {
      jo["status"] = "recognized";
      jo["reason"] = nullptr;
      jo["molfile"] = chemgraph::write_molfile(o.molecule, o.image_id);
    } else {
      jo["status"] = "failed";
      jo["reason"] = reason_name(*o.failure);
      jo["molfile"] = nullptr;
    }
    jo["raw_output"] = o.raw_output;
    outcomes.push_back(std::move(jo));
  }
  j["outcomes"] = std::move(outcomes);
  // Invalid UTF-8 from a misbehaving tool is replaced instead of aborting.
  return j.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

SubsetRun results_from_json(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    if (j.at("format").get<std::string>() != kFormat) {
      throw HarnessError("not an ocsrbench results document");
    }
    SubsetRun run;
    run.adapter = j.at("adapter").get<std::string>();
    run.subset_label = j.at("subset").get<std::string>();
    for (const Json &jo: j.at("outcomes")) {
      std::string id = jo.at("image_id").get<std::string>();
      std::string raw = jo.at("raw_output").get<std::string>();
      const std::string status = jo.at("status").get<std::string>();
      if (status == "recognized") {
        run.outcomes.push_back(RecognitionOutcome::success(
            std::move(id),
            chemgraph::parse_molfile(jo.at("molfile").get<std::string>()),
            std::move(raw)));
      } else if (status == "failed") {
        run.outcomes.push_back(RecognitionOutcome::failed(
            std::move(id), parse_reason(jo.at("reason").get<std::string>()),
            std::move(raw)));
      } else {
        throw HarnessError("unknown outcome status '" + status + "'");
      }
    }
    return run;
  } catch (const Json::exception &e) {
    throw HarnessError(std::string("results: ") + e.what());
  } catch (const ParseError &e) {
    throw HarnessError(std::string("results: stored molfile: ") + e.what());
  }
}

fs::path write_results(const fs::path &results_dir, const SubsetRun &run) {
  const fs::path dir = results_dir / sanitize_name(run.adapter);
  fs::create_directories(dir);
  const fs::path file = dir / (run.subset_label + ".json");
  write_text(file, results_to_json(run));

  Json timing = Json::object();
  for (const RecognitionOutcome &o: run.outcomes) {
    timing[o.image_id] = o.wall_time;
  }
  write_text(dir / (run.subset_label + std::string(kTimingSuffix)),
             timing.dump(2) + "\n");
  return file;
}

SubsetRun read_results(const fs::path &file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw HarnessError("cannot read " + file.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return results_from_json(ss.str());
}

std::vector<fs::path> list_results(const fs::path &results_dir) {
  std::vector<fs::path> out;
  if (!fs::is_directory(results_dir)) {
    return out;
  }
  for (const auto &adapter: fs::directory_iterator(results_dir)) {
    if (!adapter.is_directory()) {
      continue;
    }
    for (const auto &e: fs::directory_iterator(adapter.path())) {
      const std::string name = e.path().filename().string();
      if (e.is_regular_file() && ends_with(name, ".json")
          && !ends_with(name, kTimingSuffix)) {
        out.push_back(e.path());
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ocsrbench::harness
