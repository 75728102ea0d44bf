//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrbench/chemgraph/molfile.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "ocsrbench/chemgraph/elements.hpp"
#include "ocsrbench/error.hpp"

namespace ocsrbench::chemgraph {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    lines.push_back(line);
    if (nl == std::string_view::npos) {
      break;
    }
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::string_view field(std::string_view line, std::size_t pos,
                       std::size_t len) {
  if (pos >= line.size()) {
    return {};
  }
  return line.substr(pos, len);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<int> to_int(std::string_view s) {
  s = trim(s);
  if (s.empty()) {
    return std::nullopt;
  }
  if (s.front() == '+') {
    s.remove_prefix(1);
  }
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return v;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) {
    return std::nullopt;
  }
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return v;
}

[[noreturn]] void fail(std::size_t line_no, const std::string &msg) {
  throw ParseError("line " + std::to_string(line_no) + ": " + msg, line_no);
}

// Legacy atom-block charge column: 1..3 -> +3..+1, 5..7 -> -1..-3,
// 4 is a doublet radical (no charge).
int legacy_charge(int code) {
  switch (code) {
  case 1:
    return 3;
  case 2:
    return 2;
  case 3:
    return 1;
  case 5:
    return -1;
  case 6:
    return -2;
  case 7:
    return -3;
  default:
    return 0;
  }
}

int legacy_charge_code(int charge) {
  switch (charge) {
  case 3:
    return 1;
  case 2:
    return 2;
  case 1:
    return 3;
  case -1:
    return 5;
  case -2:
    return 6;
  case -3:
    return 7;
  default:
    return 0;
  }
}

struct AtomLine {
  Atom atom;
  int legacy_code = 0;
};

std::optional<AtomLine> read_atom_line(std::string_view line) {
  if (line.size() < 32) {
    return std::nullopt;
  }
  auto x = to_double(field(line, 0, 10));
  auto y = to_double(field(line, 10, 10));
  auto z = to_double(field(line, 20, 10));
  if (!x || !y || !z) {
    return std::nullopt;
  }
  AtomLine out;
  out.atom.element = std::string(trim(field(line, 31, 3)));
  out.atom.x = *x;
  out.atom.y = *y;
  if (auto code = to_int(field(line, 36, 3))) {
    out.legacy_code = *code;
  }
  return out;
}

}  // namespace

Molecule parse_molfile(std::string_view text) {
  const std::vector<std::string_view> lines = split_lines(text);
  if (lines.size() < 4) {
    fail(lines.size() + 1, "truncated header: expected 3 header lines and a "
                           "counts line");
  }

  const std::string_view counts = lines[3];
  if (counts.find("V3000") != std::string_view::npos) {
    fail(4, "V3000 connection tables are not supported");
  }
  const auto n_atoms = to_int(field(counts, 0, 3));
  const auto n_bonds = to_int(field(counts, 3, 3));
  if (!n_atoms || !n_bonds || *n_atoms < 0 || *n_bonds < 0) {
    fail(4, "malformed counts line '" + std::string(counts) + "'");
  }

  const std::size_t atom_begin = 4;
  const std::size_t bond_begin = atom_begin + *n_atoms;
  const std::size_t props_begin = bond_begin + *n_bonds;

  Molecule mol;
  for (std::size_t i = atom_begin; i < bond_begin; ++i) {
    const std::size_t line_no = i + 1;
    if (i >= lines.size()) {
      fail(line_no, "counts line declares " + std::to_string(*n_atoms)
                        + " atoms but the atom block ends early");
    }
    auto parsed = read_atom_line(lines[i]);
    if (!parsed) {
      fail(line_no, "malformed atom line (counts line declares "
                        + std::to_string(*n_atoms) + " atoms)");
    }
    if (!is_element(parsed->atom.element)) {
      fail(line_no, "unsupported atom symbol '" + parsed->atom.element + "'");
    }
    parsed->atom.charge = legacy_charge(parsed->legacy_code);
    mol.add_atom(std::move(parsed->atom));
  }

  for (std::size_t i = bond_begin; i < props_begin; ++i) {
    const std::size_t line_no = i + 1;
    if (i >= lines.size()) {
      fail(line_no, "counts line declares " + std::to_string(*n_bonds)
                        + " bonds but the bond block ends early");
    }
    const std::string_view line = lines[i];
    const auto a = to_int(field(line, 0, 3));
    const auto b = to_int(field(line, 3, 3));
    const auto type = to_int(field(line, 6, 3));
    if (!a || !b || !type) {
      if (read_atom_line(line)) {
        fail(line_no, "atom line where a bond line was expected; counts "
                      "line declares "
                          + std::to_string(*n_atoms) + " atoms");
      }
      fail(line_no, "malformed bond line '" + std::string(line) + "'");
    }
    if (*a < 1 || *a > *n_atoms || *b < 1 || *b > *n_atoms) {
      fail(line_no, "bond references atom outside 1.."
                        + std::to_string(*n_atoms));
    }
    if (*type < 1 || *type > 4) {
      fail(line_no, "unsupported bond type " + std::to_string(*type));
    }
    try {
      mol.add_bond(*a - 1, *b - 1, static_cast<BondOrder>(*type));
    } catch (const MoleculeError &e) {
      fail(line_no, e.what());
    }
  }

  bool saw_chg = false;
  std::vector<int> charges(*n_atoms, 0);
  for (std::size_t i = props_begin;; ++i) {
    const std::size_t line_no = i + 1;
    if (i >= lines.size()) {
      fail(line_no, "missing 'M  END'");
    }
    const std::string_view line = lines[i];
    if (line.starts_with("M  END")) {
      break;
    }
    if (line.starts_with("M  CHG")) {
      saw_chg = true;
      const auto count = to_int(field(line, 6, 3));
      if (!count || *count < 1 || *count > 8) {
        fail(line_no, "malformed 'M  CHG' entry count");
      }
      for (int k = 0; k < *count; ++k) {
        const auto idx = to_int(field(line, 9 + 8 * k, 4));
        const auto chg = to_int(field(line, 13 + 8 * k, 4));
        if (!idx || !chg) {
          fail(line_no, "malformed 'M  CHG' entry");
        }
        if (*idx < 1 || *idx > *n_atoms) {
          fail(line_no, "'M  CHG' references atom outside 1.."
                            + std::to_string(*n_atoms));
        }
        if (*chg < kMinCharge || *chg > kMaxCharge) {
          fail(line_no, "formal charge " + std::to_string(*chg)
                            + " outside [-4, 4]");
        }
        charges[*idx - 1] = *chg;
      }
      continue;
    }
    if (line.starts_with("M  ")) {
      // Other property records (isotopes, radicals, sgroups) carry nothing
      // this graph model keeps.
      continue;
    }
    if (line.starts_with("A  ") || line.starts_with("G  ")) {
      ++i;  // the record's value sits on the following line
      continue;
    }
    if (line.starts_with("V  ")) {
      continue;
    }
    if (line.starts_with("S  SKP")) {
      const auto skip = to_int(field(line, 6, 3));
      i += skip.value_or(0);
      continue;
    }
    if (read_atom_line(line)) {
      fail(line_no, "more atom lines than the counts line declares ("
                        + std::to_string(*n_atoms) + ")");
    }
    fail(line_no, "expected a property line or 'M  END', got '"
                      + std::string(line) + "'");
  }

  if (!saw_chg) {
    return mol;
  }
  std::vector<Atom> atoms(mol.atoms().begin(), mol.atoms().end());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    atoms[i].charge = charges[i];
  }
  return Molecule(std::move(atoms),
                  std::vector<Bond>(mol.bonds().begin(), mol.bonds().end()));
}

std::string write_molfile(const Molecule &m, std::string_view name) {
  if (m.empty()) {
    throw MoleculeError("cannot write a molfile for an empty molecule");
  }
  if (m.num_atoms() > 999 || m.num_bonds() > 999) {
    throw MoleculeError("V2000 supports at most 999 atoms and bonds");
  }

  std::string out;
  char buf[128];
  out.append(name).append("\n");
  out.append("  ocsrbench\n");
  out.append("\n");
  std::snprintf(buf, sizeof(buf), "%3zu%3zu  0  0  0  0  0  0  0  0999 V2000\n",
                m.num_atoms(), m.num_bonds());
  out.append(buf);

  for (const Atom &a: m.atoms()) {
    std::snprintf(buf, sizeof(buf),
                  "%10.4f%10.4f%10.4f %-3s 0%3d  0  0  0  0  0  0  0  0  0  0\n",
                  a.x, a.y, 0.0, a.element.c_str(),
                  legacy_charge_code(a.charge));
    out.append(buf);
  }
  for (const Bond &b: m.bonds()) {
    std::snprintf(buf, sizeof(buf), "%3zu%3zu%3d  0\n", b.a + 1, b.b + 1,
                  static_cast<int>(b.order));
    out.append(buf);
  }

  std::vector<std::pair<std::size_t, int>> charged;
  for (std::size_t i = 0; i < m.num_atoms(); ++i) {
    if (m.atom(i).charge != 0) {
      charged.emplace_back(i + 1, m.atom(i).charge);
    }
  }
  for (std::size_t start = 0; start < charged.size(); start += 8) {
    const std::size_t n = std::min<std::size_t>(8, charged.size() - start);
    std::snprintf(buf, sizeof(buf), "M  CHG%3zu", n);
    out.append(buf);
    for (std::size_t k = start; k < start + n; ++k) {
      std::snprintf(buf, sizeof(buf), " %3zu %3d", charged[k].first,
                    charged[k].second);
      out.append(buf);
    }
    out.append("\n");
  }
  out.append("M  END\n");
  return out;
}

}  // namespace ocsrbench::chemgraph
