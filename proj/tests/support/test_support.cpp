//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "test_support.hpp"

#include <stdlib.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "ocsrbench/chemgraph/canonical.hpp"
#include "ocsrbench/chemgraph/molfile.hpp"
#include "ocsrbench/render/render.hpp"

namespace ocsrbench::test {
namespace fs = std::filesystem;
using chemgraph::Atom;
using chemgraph::Bond;
using chemgraph::BondOrder;
using chemgraph::Molecule;

fs::path source_dir() {
  return OCSRBENCH_SOURCE_DIR;
}

fs::path corpus_dir() {
  return source_dir() / "data" / "corpus";
}

fs::path fixture_dir() {
  return source_dir() / "data" / "fixtures";
}

fs::path mock_adapter() {
  return OCSRBENCH_MOCK_ADAPTER;
}

fs::path cli_binary() {
  return OCSRBENCH_CLI;
}

std::string read_file(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + p.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path &p, std::string_view text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw std::runtime_error("cannot write " + p.string());
  }
}

const std::vector<NamedMolecule> &corpus_molecules() {
  static const std::vector<NamedMolecule> cached = [] {
    std::vector<fs::path> files;
    for (const auto &e: fs::directory_iterator(corpus_dir())) {
      if (e.path().extension() == ".mol") {
        files.push_back(e.path());
      }
    }
    std::sort(files.begin(), files.end());
    std::vector<NamedMolecule> out;
    for (const fs::path &f: files) {
      out.push_back({ f.stem().string(),
                      chemgraph::parse_molfile(read_file(f)) });
    }
    return out;
  }();
  return cached;
}

const std::vector<RasterImage> &corpus_renderings() {
  static const std::vector<RasterImage> cached = [] {
    std::vector<RasterImage> out;
    for (const NamedMolecule &nm: corpus_molecules()) {
      out.push_back(render::render(nm.molecule));
    }
    return out;
  }();
  return cached;
}

TempDir::TempDir() {
  std::string tmpl = (fs::temp_directory_path() / "ocsrbench-XXXXXX").string();
  if (::mkdtemp(tmpl.data()) == nullptr) {
    throw std::runtime_error("mkdtemp failed");
  }
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void copy_corpus_subset(const fs::path &dir, std::size_t n) {
  fs::create_directories(dir);
  const auto &mols = corpus_molecules();
  for (std::size_t i = 0; i < n && i < mols.size(); ++i) {
    fs::copy_file(corpus_dir() / (mols[i].id + ".mol"),
                  dir / (mols[i].id + ".mol"),
                  fs::copy_options::overwrite_existing);
  }
}

namespace {

struct Dense {
  std::size_t n = 0;
  std::vector<std::string> element;
  std::vector<int> charge;
  std::vector<int> degree;
  std::vector<std::vector<int>> order;  // 0 = no bond
  std::size_t edges = 0;
};

Dense dense(const Molecule &raw) {
  const Molecule m = chemgraph::normalize_aromatic(raw);
  Dense d;
  d.n = m.num_atoms();
  d.order.assign(d.n, std::vector<int>(d.n, 0));
  d.degree.assign(d.n, 0);
  for (const Atom &a: m.atoms()) {
    d.element.push_back(a.element);
    d.charge.push_back(a.charge);
  }
  for (const Bond &b: m.bonds()) {
    d.order[b.a][b.b] = d.order[b.b][b.a] = static_cast<int>(b.order);
    ++d.degree[b.a];
    ++d.degree[b.b];
  }
  d.edges = m.num_bonds();
  return d;
}

bool extend(const Dense &a, const Dense &b, std::vector<int> &map,
            std::vector<bool> &used, std::size_t i) {
  if (i == a.n) {
    return true;
  }
  for (std::size_t c = 0; c < b.n; ++c) {
    if (used[c] || a.element[i] != b.element[c] || a.charge[i] != b.charge[c]
        || a.degree[i] != b.degree[c]) {
      continue;
    }
    bool ok = true;
    for (std::size_t j = 0; j < i && ok; ++j) {
      ok = a.order[i][j] == b.order[c][map[j]];
    }
    if (!ok) {
      continue;
    }
    map[i] = static_cast<int>(c);
    used[c] = true;
    if (extend(a, b, map, used, i + 1)) {
      return true;
    }
    used[c] = false;
  }
  return false;
}

}  // namespace

bool isomorphic_brute_force(const Molecule &ma, const Molecule &mb) {
  const Dense a = dense(ma);
  const Dense b = dense(mb);
  if (a.n != b.n || a.edges != b.edges) {
    return false;
  }
  std::vector<int> map(a.n, -1);
  std::vector<bool> used(b.n, false);
  return extend(a, b, map, used, 0);
}

Molecule random_molecule(std::mt19937_64 &rng, std::size_t max_atoms) {
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  auto chance = [&](double p) {
    return std::uniform_real_distribution<double>(0, 1)(rng) < p;
  };
  static const char *const kElements[] = { "C", "C", "C", "C", "C",
                                           "N", "O", "S", "Cl", "F" };

  const std::size_t n = uniform(1, max_atoms);
  Molecule m;
  std::size_t ring_atoms = 0;
  if (n >= 6 && chance(0.3)) {
    // Kekule benzene or pyridine core
    for (int k = 0; k < 6; ++k) {
      m.add_atom({ (k == 0 && chance(0.3)) ? "N" : "C", 0, 0, 0 });
    }
    const bool shift = chance(0.5);
    for (std::size_t k = 0; k < 6; ++k) {
      const bool dbl = (k % 2 == 0) != shift;
      m.add_bond(k, (k + 1) % 6, dbl ? BondOrder::kDouble : BondOrder::kSingle);
    }
    ring_atoms = 6;
  }
  for (std::size_t i = ring_atoms; i < n; ++i) {
    Atom a { kElements[uniform(0, 9)], 0, 0, 0 };
    if (chance(0.1)) {
      a.charge = chance(0.5) ? 1 : -1;
    }
    m.add_atom(a);
  }
  auto random_order = [&] {
    const double r = std::uniform_real_distribution<double>(0, 1)(rng);
    if (r < 0.7) {
      return BondOrder::kSingle;
    }
    if (r < 0.88) {
      return BondOrder::kDouble;
    }
    if (r < 0.95) {
      return BondOrder::kTriple;
    }
    return BondOrder::kAromatic;
  };
  const bool split = chance(0.1);
  for (std::size_t i = std::max<std::size_t>(ring_atoms, 1); i < n; ++i) {
    if (split && i == n - 1) {
      continue;  // leave the last atom as a separate fragment
    }
    m.add_bond(i, uniform(0, i - 1), random_order());
  }
  const std::size_t extra = n >= 3 ? uniform(0, 3) : 0;
  for (std::size_t k = 0; k < extra; ++k) {
    const std::size_t a = uniform(0, n - 1);
    const std::size_t b = uniform(0, n - 1);
    if (a != b && m.find_bond(a, b) == m.num_bonds()) {
      m.add_bond(a, b, random_order());
    }
  }
  return m;
}

Molecule relabeled(const Molecule &m, std::mt19937_64 &rng) {
  std::vector<std::size_t> perm(m.num_atoms());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Atom> atoms(m.num_atoms());
  for (std::size_t i = 0; i < m.num_atoms(); ++i) {
    atoms[perm[i]] = m.atom(i);
  }
  std::vector<Bond> bonds;
  for (const Bond &b: m.bonds()) {
    Bond nb { perm[b.a], perm[b.b], b.order };
    if (rng() & 1) {
      std::swap(nb.a, nb.b);
    }
    bonds.push_back(nb);
  }
  std::shuffle(bonds.begin(), bonds.end(), rng);
  return Molecule(std::move(atoms), std::move(bonds));
}

namespace {

std::optional<Molecule> edge_switch(const Molecule &m, std::mt19937_64 &rng) {
  if (m.num_bonds() < 2) {
    return std::nullopt;
  }
  std::uniform_int_distribution<std::size_t> pick(0, m.num_bonds() - 1);
  const std::size_t i = pick(rng);
  const std::size_t j = pick(rng);
  if (i == j) {
    return std::nullopt;
  }
  std::vector<Bond> bonds(m.bonds().begin(), m.bonds().end());
  Bond &x = bonds[i];
  Bond &y = bonds[j];
  // (a-b, c-d) -> (a-d, c-b): every degree is unchanged.
  const std::size_t a = x.a, b = x.b, c = y.a, d = y.b;
  if (a == d || c == b || a == c || b == d) {
    return std::nullopt;
  }
  if (m.find_bond(a, d) != m.num_bonds() || m.find_bond(c, b) != m.num_bonds()) {
    return std::nullopt;
  }
  x.b = d;
  y.b = b;
  return Molecule(std::vector<Atom>(m.atoms().begin(), m.atoms().end()),
                  std::move(bonds));
}

Molecule point_mutation(const Molecule &m, std::mt19937_64 &rng) {
  std::vector<Atom> atoms(m.atoms().begin(), m.atoms().end());
  std::vector<Bond> bonds(m.bonds().begin(), m.bonds().end());
  const auto kind = rng() % 3;
  if (kind == 0 || bonds.empty()) {
    Atom &a = atoms[rng() % atoms.size()];
    if (rng() & 1) {
      a.element = a.element == "C" ? "N" : "C";
    } else {
      a.charge = a.charge == 0 ? 1 : 0;
    }
  } else if (kind == 1) {
    Bond &b = bonds[rng() % bonds.size()];
    b.order = b.order == BondOrder::kSingle ? BondOrder::kDouble
                                            : BondOrder::kSingle;
  } else {
    bonds.erase(bonds.begin() + static_cast<long>(rng() % bonds.size()));
  }
  return Molecule(std::move(atoms), std::move(bonds));
}

}  // namespace

Molecule decoy(const Molecule &m, std::mt19937_64 &rng) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::optional<Molecule> d;
    if (attempt < 100 && (rng() & 1)) {
      d = edge_switch(m, rng);
    } else {
      d = point_mutation(m, rng);
    }
    if (d && !isomorphic_brute_force(m, *d)) {
      return relabeled(*d, rng);
    }
  }
  return Molecule();
}

std::vector<std::pair<std::string, std::string>>
snapshot_tree(const fs::path &root) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto &e: fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      out.emplace_back(fs::relative(e.path(), root).generic_string(),
                       read_file(e.path()));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ocsrbench::test
