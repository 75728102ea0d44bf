//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrbench/evaluate/scoring.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "ocsrbench/chemgraph/canonical.hpp"
#include "ocsrbench/chemgraph/molfile.hpp"
#include "ocsrbench/degrade/degrade.hpp"
#include "ocsrbench/error.hpp"

namespace ocsrbench::evaluate {
namespace {

std::string id_of(const chemgraph::Molecule &m) {
  return chemgraph::canonical_id(m).value;
}

}  // namespace

double SubsetResult::rate() const {
  return total == 0 ? 0.0
                    : static_cast<double>(matches) / static_cast<double>(total);
}

SubsetResult score_subset(std::string adapter, std::string subset_label,
                          std::span<const harness::RecognitionOutcome> outcomes,
                          std::span<const ReferenceMolecule> references) {
  if (outcomes.empty()) {
    throw EvaluationError("score_subset: no outcomes for " + subset_label);
  }
  if (outcomes.size() != references.size()) {
    throw EvaluationError("score_subset: " + std::to_string(outcomes.size())
                          + " outcomes but "
                          + std::to_string(references.size())
                          + " references in " + subset_label);
  }
  std::map<std::string_view, const ReferenceMolecule *> by_id;
  for (const ReferenceMolecule &r: references) {
    if (!by_id.emplace(r.image_id, &r).second) {
      throw EvaluationError("score_subset: duplicate reference " + r.image_id);
    }
  }

  SubsetResult result;
  result.adapter = std::move(adapter);
  result.subset_label = std::move(subset_label);
  result.total = outcomes.size();
  std::set<std::string_view> seen;
  for (const harness::RecognitionOutcome &o: outcomes) {
    const auto it = by_id.find(o.image_id);
    if (it == by_id.end()) {
      throw EvaluationError("score_subset: outcome " + o.image_id
                            + " has no reference");
    }
    if (!seen.insert(o.image_id).second) {
      throw EvaluationError("score_subset: duplicate outcome " + o.image_id);
    }
    if (it->second->molecule.is_placeholder()) {
      throw EvaluationError("score_subset: reference " + o.image_id
                            + " is empty");
    }
    ImageScore s;
    s.image_id = o.image_id;
    s.reference_id = id_of(it->second->molecule);
    if (o.recognized() && !o.molecule.is_placeholder()) {
      s.generated_id = id_of(o.molecule);
      s.matched = s.generated_id == s.reference_id;
    } else {
      s.generated_id = kFailedId;
    }
    result.matches += s.matched ? 1 : 0;
    result.per_image.push_back(std::move(s));
  }
  return result;
}

std::vector<ReferenceMolecule>
load_references(const harness::CorpusManifest &manifest) {
  std::vector<ReferenceMolecule> out;
  out.reserve(manifest.entries.size());
  for (const harness::CorpusEntry &e: manifest.entries) {
    const auto path = manifest.reference_path(e);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw EvaluationError("cannot read reference " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
      out.push_back({ e.image_id, chemgraph::parse_molfile(ss.str()) });
    } catch (const ParseError &err) {
      throw EvaluationError("reference " + path.string() + ": " + err.what());
    }
  }
  return out;
}

SubsetResult result_from_counts(std::string adapter, std::string subset_label,
                                std::size_t matches, std::size_t total) {
  if (total == 0 || matches > total) {
    throw EvaluationError("invalid counts " + std::to_string(matches) + "/"
                          + std::to_string(total) + " for " + subset_label);
  }
  SubsetResult r;
  r.adapter = std::move(adapter);
  r.subset_label = std::move(subset_label);
  r.total = total;
  r.matches = matches;
  return r;
}

SubsetResult result_from_rate(std::string adapter, std::string subset_label,
                              double percent, std::size_t total) {
  if (total == 0 || !(percent >= 0.0 && percent <= 100.0)) {
    throw EvaluationError("rate " + std::to_string(percent) + " for "
                          + subset_label + " is not a percentage");
  }
  const std::string want = format_percent(percent);
  const auto guess = static_cast<long long>(
      std::llround(percent * static_cast<double>(total) / 100.0));
  for (long long k = guess - 1; k <= guess + 1; ++k) {
    if (k >= 0 && k <= static_cast<long long>(total)
        && format_rate(static_cast<std::size_t>(k), total) == want) {
      return result_from_counts(std::move(adapter), std::move(subset_label),
                                static_cast<std::size_t>(k), total);
    }
  }
  throw EvaluationError("rate " + want + "% for " + subset_label
                        + " is not k/" + std::to_string(total)
                        + " for any k");
}

std::string format_rate(std::size_t matches, std::size_t total) {
  if (total == 0) {
    throw EvaluationError("format_rate: zero total");
  }
  const std::size_t tenths = (matches * 2000 + total) / (2 * total);
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

std::string format_percent(double value) {
  const long long tenths = std::llround(value * 10.0);
  const long long mag = tenths < 0 ? -tenths : tenths;
  std::string out = tenths < 0 ? "-" : "";
  out += std::to_string(mag / 10) + "." + std::to_string(mag % 10);
  return out;
}

const DecreaseCell &DecreaseMatrix::at(std::string_view adapter,
                                       std::string_view label) const {
  const auto r = std::find(rows.begin(), rows.end(), adapter);
  const auto c = std::find(columns.begin(), columns.end(), label);
  if (r == rows.end() || c == columns.end()) {
    throw EvaluationError("decrease matrix has no cell " + std::string(adapter)
                          + "/" + std::string(label));
  }
  return cells[r - rows.begin()][c - columns.begin()];
}

std::vector<std::string> order_columns(std::vector<std::string> labels) {
  using Key = std::tuple<int, int, std::string>;
  auto key = [](const std::string &label) -> Key {
    if (label == harness::kBaseLabel) {
      return { 0, 0, label };
    }
    try {
      const degrade::DamageSpec spec = degrade::parse_label(label);
      int family = 5;
      switch (spec.kind) {
      case degrade::DamageKind::kBlend: family = 1; break;
      case degrade::DamageKind::kNoise: family = 2; break;
      case degrade::DamageKind::kCompress: family = 3; break;
      case degrade::DamageKind::kDistort: family = 4; break;
      }
      const std::string_view num =
          std::string_view(label).substr(label.rfind('_') + 1);
      int shown = 0;
      std::from_chars(num.data(), num.data() + num.size(), shown);
      return { family, shown, label };
    } catch (const std::invalid_argument &) {
      return { 6, 0, label };
    }
  };
  std::sort(labels.begin(), labels.end(),
            [&](const std::string &a, const std::string &b) {
              return key(a) < key(b);
            });
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

DecreaseMatrix decrease_table(std::span<const SubsetResult> results) {
  DecreaseMatrix m;
  std::vector<std::string> labels;
  std::map<std::pair<std::string, std::string>, const SubsetResult *> index;
  for (const SubsetResult &r: results) {
    if (std::find(m.rows.begin(), m.rows.end(), r.adapter) == m.rows.end()) {
      m.rows.push_back(r.adapter);
    }
    labels.push_back(r.subset_label);
    if (!index.emplace(std::pair(r.adapter, r.subset_label), &r).second) {
      throw EvaluationError("two results for " + r.adapter + "/"
                            + r.subset_label);
    }
  }
  m.columns = order_columns(std::move(labels));

  for (const std::string &adapter: m.rows) {
    const auto base = index.find({ adapter, std::string(harness::kBaseLabel) });
    if (base == index.end()) {
      throw EvaluationError("adapter " + adapter + " has no base result");
    }
    const SubsetResult &b = *base->second;
    std::vector<DecreaseCell> row;
    for (const std::string &label: m.columns) {
      DecreaseCell cell;
      const auto it = index.find({ adapter, label });
      if (it != index.end()) {
        cell.present = true;
        const SubsetResult &s = *it->second;
        if (b.matches > 0) {
          // 1 - (ms / ts) / (mb / tb), from exact integer products.
          const double num = static_cast<double>(s.matches) * b.total;
          const double den = static_cast<double>(s.total) * b.matches;
          cell.percent = (1.0 - num / den) * 100.0;
        }
      }
      row.push_back(cell);
    }
    m.cells.push_back(std::move(row));
  }
  return m;
}

}  // namespace ocsrbench::evaluate
