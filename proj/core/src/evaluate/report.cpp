//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrbench/evaluate/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>

#include <json.hpp>

#include "ocsrbench/error.hpp"
#include "ocsrbench/harness/runner.hpp"

namespace ocsrbench::evaluate {
namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kFormat = "ocsrbench-report";

struct Grid {
  std::vector<std::string> rows;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> cells;
};

std::string md_escape(std::string_view s) {
  std::string out;
  for (char c: s) {
    if (c == '|') {
      out += '\\';
    }
    out += c;
  }
  return out;
}

std::string render_grid(const Grid &g, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::kCsv) {
    out += "adapter";
    for (const std::string &c: g.columns) {
      out += "," + c;
    }
    out += "\n";
    for (std::size_t r = 0; r < g.rows.size(); ++r) {
      out += g.rows[r];
      for (const std::string &cell: g.cells[r]) {
        out += "," + cell;
      }
      out += "\n";
    }
    return out;
  }
  if (format != ReportFormat::kMarkdown) {
    throw EvaluationError("tables are rendered as csv or markdown only");
  }
  out += "| adapter |";
  for (const std::string &c: g.columns) {
    out += " " + md_escape(c) + " |";
  }
  out += "\n| --- |";
  for (std::size_t i = 0; i < g.columns.size(); ++i) {
    out += " ---: |";
  }
  out += "\n";
  for (std::size_t r = 0; r < g.rows.size(); ++r) {
    out += "| " + md_escape(g.rows[r]) + " |";
    for (const std::string &cell: g.cells[r]) {
      out += " " + cell + " |";
    }
    out += "\n";
  }
  return out;
}

Grid rate_grid(std::span<const SubsetResult> results) {
  Grid g;
  std::vector<std::string> labels;
  std::map<std::pair<std::string, std::string>, const SubsetResult *> index;
  for (const SubsetResult &r: results) {
    if (std::find(g.rows.begin(), g.rows.end(), r.adapter) == g.rows.end()) {
      g.rows.push_back(r.adapter);
    }
    labels.push_back(r.subset_label);
    index[{ r.adapter, r.subset_label }] = &r;
  }
  g.columns = order_columns(std::move(labels));
  for (const std::string &row: g.rows) {
    std::vector<std::string> cells;
    for (const std::string &col: g.columns) {
      const auto it = index.find({ row, col });
      cells.push_back(it == index.end()
                          ? std::string()
                          : format_rate(it->second->matches, it->second->total));
    }
    g.cells.push_back(std::move(cells));
  }
  return g;
}

Grid decrease_grid(const DecreaseMatrix &m) {
  Grid g { m.rows, m.columns, {} };
  for (const auto &row: m.cells) {
    std::vector<std::string> cells;
    for (const DecreaseCell &c: row) {
      if (!c.present) {
        cells.emplace_back();
      } else if (!c.percent) {
        cells.emplace_back("n/a");
      } else {
        cells.push_back(format_percent(*c.percent));
      }
    }
    g.cells.push_back(std::move(cells));
  }
  return g;
}

// 1 dp cells go into JSON as numbers parsed back from their text form, so
// the JSON and CSV renderings carry the same values.
Json grid_json(const Grid &g) {
  Json cells = Json::array();
  for (const auto &row: g.cells) {
    Json jr = Json::array();
    for (const std::string &c: row) {
      if (c.empty()) {
        jr.push_back(nullptr);
      } else if (c == "n/a") {
        jr.push_back(c);
      } else {
        jr.push_back(std::stod(c));
      }
    }
    cells.push_back(std::move(jr));
  }
  return { { "rows", g.rows }, { "columns", g.columns },
           { "cells", std::move(cells) } };
}

void write_text(const fs::path &p, std::string_view text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw EvaluationError("cannot write " + p.string());
  }
}

std::string_view trim(std::string_view s) {
  const std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) {
      return out;
    }
    pos = comma + 1;
  }
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") {
    return ReportFormat::kCsv;
  }
  if (name == "json") {
    return ReportFormat::kJson;
  }
  if (name == "markdown" || name == "md") {
    return ReportFormat::kMarkdown;
  }
  throw EvaluationError("unknown report format '" + std::string(name)
                        + "' (expected csv, json or markdown)");
}

std::string_view report_extension(ReportFormat format) {
  switch (format) {
  case ReportFormat::kCsv: return "csv";
  case ReportFormat::kJson: return "json";
  case ReportFormat::kMarkdown: return "md";
  }
  return "txt";
}

std::string rate_matrix_text(std::span<const SubsetResult> results,
                             ReportFormat format) {
  return render_grid(rate_grid(results), format);
}

std::string decrease_matrix_text(const DecreaseMatrix &matrix,
                                 ReportFormat format) {
  return render_grid(decrease_grid(matrix), format);
}

std::string report_json(std::span<const SubsetResult> results) {
  Json j;
  j["format"] = kFormat;
  j["rate_matrix"] = grid_json(rate_grid(results));
  j["decrease_matrix"] = grid_json(decrease_grid(decrease_table(results)));
  Json list = Json::array();
  for (const SubsetResult &r: results) {
    Json per_image = Json::array();
    for (const ImageScore &s: r.per_image) {
      per_image.push_back({ { "image_id", s.image_id },
                            { "matched", s.matched },
                            { "generated_id", s.generated_id },
                            { "reference_id", s.reference_id } });
    }
    list.push_back({ { "adapter", r.adapter },
                     { "subset", r.subset_label },
                     { "total", r.total },
                     { "matches", r.matches },
                     { "rate_percent", format_rate(r.matches, r.total) },
                     { "per_image", std::move(per_image) } });
  }
  j["results"] = std::move(list);
  return j.dump(2) + "\n";
}

std::vector<SubsetResult> read_report_json(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    if (j.at("format").get<std::string>() != kFormat) {
      throw EvaluationError("not an ocsrbench report");
    }
    std::vector<SubsetResult> out;
    for (const Json &jr: j.at("results")) {
      SubsetResult r = result_from_counts(
          jr.at("adapter").get<std::string>(), jr.at("subset").get<std::string>(),
          jr.at("matches").get<std::size_t>(), jr.at("total").get<std::size_t>());
      for (const Json &s: jr.at("per_image")) {
        r.per_image.push_back({ s.at("image_id").get<std::string>(),
                                s.at("matched").get<bool>(),
                                s.at("generated_id").get<std::string>(),
                                s.at("reference_id").get<std::string>() });
      }
      out.push_back(std::move(r));
    }
    return out;
  } catch (const Json::exception &e) {
    throw EvaluationError(std::string("report: ") + e.what());
  }
}

std::string detail_text(const SubsetResult &result) {
  std::string out = "image_id\tmatched\tgenerated_id\treference_id\n";
  for (const ImageScore &s: result.per_image) {
    out += s.image_id + "\t" + (s.matched ? "true" : "false") + "\t"
           + s.generated_id + "\t" + s.reference_id + "\n";
  }
  return out;
}

std::vector<fs::path> emit_report(std::span<const SubsetResult> results,
                                  ReportFormat format, const fs::path &out_dir) {
  if (results.empty()) {
    throw EvaluationError("no results to report");
  }
  std::vector<fs::path> written;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw EvaluationError("cannot create " + out_dir.string() + ": "
                          + ec.message());
  }
  if (format == ReportFormat::kJson) {
    written.push_back(out_dir / "report.json");
    write_text(written.back(), report_json(results));
  } else {
    const std::string ext(report_extension(format));
    written.push_back(out_dir / ("rates." + ext));
    write_text(written.back(), rate_matrix_text(results, format));
    written.push_back(out_dir / ("decrease." + ext));
    write_text(written.back(),
               decrease_matrix_text(decrease_table(results), format));
  }
  for (const SubsetResult &r: results) {
    if (r.per_image.empty()) {
      continue;
    }
    const fs::path dir = out_dir / "details" / harness::sanitize_name(r.adapter);
    fs::create_directories(dir, ec);
    written.push_back(dir / (r.subset_label + ".tsv"));
    write_text(written.back(), detail_text(r));
  }
  return written;
}

std::vector<SubsetResult> read_rate_matrix_csv(std::string_view text,
                                               std::size_t total) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      eol = text.size();
    }
    const std::string_view line = trim(text.substr(pos, eol - pos));
    if (!line.empty() && line.front() != '#') {
      lines.push_back(line);
    }
    pos = eol + 1;
  }
  if (lines.empty()) {
    throw EvaluationError("rate matrix: no header line");
  }
  const std::vector<std::string_view> header = split_csv(lines.front());
  std::vector<SubsetResult> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string_view> cells = split_csv(lines[i]);
    if (cells.size() != header.size()) {
      throw EvaluationError("rate matrix line " + std::to_string(i + 1)
                            + ": expected " + std::to_string(header.size())
                            + " cells");
    }
    for (std::size_t c = 1; c < cells.size(); ++c) {
      if (cells[c].empty()) {
        continue;
      }
      double v = 0;
      const auto [end, ec] =
          std::from_chars(cells[c].data(), cells[c].data() + cells[c].size(), v);
      if (ec != std::errc() || end != cells[c].data() + cells[c].size()) {
        throw EvaluationError("rate matrix line " + std::to_string(i + 1)
                              + ": '" + std::string(cells[c])
                              + "' is not a number");
      }
      out.push_back(result_from_rate(std::string(cells[0]),
                                     std::string(header[c]), v, total));
    }
  }
  return out;
}

}  // namespace ocsrbench::evaluate
