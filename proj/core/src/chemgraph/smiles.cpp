//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrbench/chemgraph/smiles.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ocsrbench/chemgraph/elements.hpp"
#include "ocsrbench/error.hpp"

namespace ocsrbench::chemgraph {
namespace {

constexpr std::string_view kOrganic[] = { "Cl", "Br", "B", "C", "N",
                                          "O",  "P",  "S", "F", "I" };
constexpr std::string_view kAromatic[] = { "se", "as", "b", "c",
                                           "n",  "o",  "p", "s" };

bool is_organic_subset(std::string_view el) {
  return std::find(std::begin(kOrganic), std::end(kOrganic), el)
         != std::end(kOrganic);
}

bool has_aromatic_form(std::string_view el) {
  return el == "B" || el == "C" || el == "N" || el == "O" || el == "P"
         || el == "S";
}

std::string capitalize(std::string_view s) {
  std::string out(s);
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

class SmilesParser {
 public:
  explicit SmilesParser(std::string_view text): text_(text) { }

  Molecule parse() {
    // Anything after the first whitespace is a title, as in .smi files.
    const std::size_t ws = text_.find_first_of(" \t\r\n");
    if (ws != std::string_view::npos) {
      text_ = text_.substr(0, ws);
    }
    if (text_.empty()) {
      fail("empty SMILES");
    }

    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '[' || std::isalpha(static_cast<unsigned char>(c))) {
        parse_atom();
      } else if (c == '(') {
        if (!prev_) {
          fail("branch without a preceding atom");
        }
        if (pending_) {
          fail("bond symbol before '('");
        }
        branches_.push_back({ *prev_, pos_ });
        branch_has_atom_ = false;
        ++pos_;
      } else if (c == ')') {
        if (branches_.empty()) {
          fail("unbalanced ')'");
        }
        if (pending_) {
          fail("dangling bond before ')'");
        }
        if (!branch_has_atom_) {
          fail("empty branch");
        }
        prev_ = branches_.back().atom;
        branches_.pop_back();
        ++pos_;
      } else if (c == '-' || c == '=' || c == '#' || c == ':') {
        if (!prev_) {
          fail(std::string("bond '") + c + "' without a preceding atom");
        }
        if (pending_) {
          fail("two consecutive bond symbols");
        }
        pending_ = c;
        ++pos_;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        parse_ring_bond();
      } else if (c == '.') {
        if (pending_) {
          fail("dangling bond before '.'");
        }
        if (!prev_) {
          fail("'.' without a preceding atom");
        }
        prev_.reset();
        ++pos_;
      } else if (c == '/' || c == '\\' || c == '@') {
        fail("stereo marks are not supported");
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
    }

    if (!branches_.empty()) {
      pos_ = branches_.back().open_pos;
      fail("unbalanced '('");
    }
    if (!rings_.empty()) {
      pos_ = rings_.begin()->second.pos;
      fail("unclosed ring bond " + std::to_string(rings_.begin()->first));
    }
    if (pending_) {
      fail("dangling bond at end of input");
    }
    if (!prev_) {
      fail("SMILES ends with '.'");
    }
    return std::move(mol_);
  }

 private:
  struct Branch {
    std::size_t atom;
    std::size_t open_pos;
  };
  struct RingOpen {
    std::size_t atom;
    std::optional<char> bond;
    std::size_t pos;
  };

  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError("SMILES offset " + std::to_string(pos_) + ": " + msg,
                     pos_);
  }

  BondOrder order_for(std::optional<char> symbol, std::size_t a,
                      std::size_t b) const {
    if (!symbol) {
      return aromatic_[a] && aromatic_[b] ? BondOrder::kAromatic
                                          : BondOrder::kSingle;
    }
    switch (*symbol) {
    case '=':
      return BondOrder::kDouble;
    case '#':
      return BondOrder::kTriple;
    case ':':
      return BondOrder::kAromatic;
    default:
      return BondOrder::kSingle;
    }
  }

  void connect(std::size_t a, std::size_t b, std::optional<char> symbol) {
    try {
      mol_.add_bond(a, b, order_for(symbol, a, b));
    } catch (const MoleculeError &e) {
      fail(e.what());
    }
  }

  void parse_atom() {
    Atom atom;
    bool aromatic = false;
    if (text_[pos_] == '[') {
      parse_bracket(atom, aromatic);
    } else {
      parse_bare(atom, aromatic);
    }

    std::size_t idx;
    try {
      idx = mol_.add_atom(std::move(atom));
    } catch (const MoleculeError &e) {
      fail(e.what());
    }
    aromatic_.push_back(aromatic);
    if (prev_) {
      connect(*prev_, idx, pending_);
    }
    pending_.reset();
    prev_ = idx;
    branch_has_atom_ = true;
  }

  void parse_bare(Atom &atom, bool &aromatic) {
    const std::string_view rest = text_.substr(pos_);
    for (std::string_view sym: kOrganic) {
      if (rest.starts_with(sym)) {
        atom.element = std::string(sym);
        pos_ += sym.size();
        return;
      }
    }
    for (std::string_view sym: kAromatic) {
      if (sym.size() == 1 && rest.starts_with(sym)) {
        atom.element = capitalize(sym);
        aromatic = true;
        pos_ += 1;
        return;
      }
    }
    fail(std::string("unknown atom symbol '") + text_[pos_]
         + "' outside brackets");
  }

  void parse_bracket(Atom &atom, bool &aromatic) {
    ++pos_;  // '['
    while (pos_ < text_.size()
           && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;  // isotope, dropped
    }

    const std::string_view rest = text_.substr(pos_);
    if (rest.empty()) {
      fail("unterminated bracket atom");
    }
    if (std::isupper(static_cast<unsigned char>(rest[0]))) {
      if (rest.size() > 1
          && std::islower(static_cast<unsigned char>(rest[1]))
          && is_element(rest.substr(0, 2))) {
        atom.element = std::string(rest.substr(0, 2));
        pos_ += 2;
      } else if (is_element(rest.substr(0, 1))) {
        atom.element = std::string(rest.substr(0, 1));
        pos_ += 1;
      } else {
        fail("unknown element in bracket atom");
      }
    } else {
      bool found = false;
      for (std::string_view sym: kAromatic) {
        if (rest.starts_with(sym)) {
          atom.element = capitalize(sym);
          aromatic = true;
          pos_ += sym.size();
          found = true;
          break;
        }
      }
      if (!found) {
        fail("unknown element in bracket atom");
      }
    }

    if (pos_ < text_.size() && text_[pos_] == '@') {
      fail("stereo marks are not supported");
    }
    if (pos_ < text_.size() && text_[pos_] == 'H') {
      ++pos_;
      while (pos_ < text_.size()
             && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
    }
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      const char sign = text_[pos_];
      int magnitude = 1;
      ++pos_;
      if (pos_ < text_.size()
          && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        magnitude = 0;
        while (pos_ < text_.size()
               && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          magnitude = magnitude * 10 + (text_[pos_] - '0');
          if (magnitude > kMaxCharge) {
            fail("charge outside [-4, 4]");
          }
          ++pos_;
        }
      } else {
        while (pos_ < text_.size() && text_[pos_] == sign) {
          ++magnitude;
          ++pos_;
        }
      }
      atom.charge = sign == '+' ? magnitude : -magnitude;
    }
    if (pos_ < text_.size() && text_[pos_] == ':') {
      ++pos_;
      while (pos_ < text_.size()
             && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;  // atom class, dropped
      }
    }
    if (pos_ >= text_.size() || text_[pos_] != ']') {
      fail("expected ']' to close bracket atom");
    }
    ++pos_;
  }

  void parse_ring_bond() {
    const std::size_t start = pos_;
    int number;
    if (text_[pos_] == '%') {
      if (pos_ + 2 >= text_.size()
          || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))
          || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2]))) {
        fail("'%' must be followed by two digits");
      }
      number = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      number = text_[pos_] - '0';
      pos_ += 1;
    }
    if (!prev_) {
      pos_ = start;
      fail("ring bond without a preceding atom");
    }

    auto it = rings_.find(number);
    if (it == rings_.end()) {
      rings_.emplace(number, RingOpen { *prev_, pending_, start });
      pending_.reset();
      return;
    }

    std::optional<char> symbol = pending_;
    if (it->second.bond) {
      if (symbol && *symbol != *it->second.bond) {
        pos_ = start;
        fail("conflicting bond symbols on ring bond "
             + std::to_string(number));
      }
      symbol = it->second.bond;
    }
    const std::size_t other = it->second.atom;
    rings_.erase(it);
    pending_.reset();
    pos_ = start;
    connect(other, *prev_, symbol);
    pos_ = start + (text_[start] == '%' ? 3 : 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Molecule mol_;
  std::vector<bool> aromatic_;
  std::optional<std::size_t> prev_;
  std::optional<char> pending_;
  std::vector<Branch> branches_;
  bool branch_has_atom_ = false;
  std::map<int, RingOpen> rings_;
};

class SmilesWriter {
 public:
  explicit SmilesWriter(const Molecule &m)
      : m_(m), adj_(m.adjacency()), lower_(m.num_atoms(), false) {
    for (const Bond &b: m.bonds()) {
      if (b.order != BondOrder::kAromatic) {
        continue;
      }
      for (std::size_t a: { b.a, b.b }) {
        if (has_aromatic_form(m.atom(a).element)) {
          lower_[a] = true;
        }
      }
    }
    for (auto &nbrs: adj_) {
      std::sort(nbrs.begin(), nbrs.end());
    }
  }

  std::string write() {
    const std::size_t n = m_.num_atoms();
    visited_.assign(n, false);
    bond_used_.assign(m_.num_bonds(), false);
    children_.assign(n, {});
    ring_open_.assign(n, {});
    ring_close_.assign(n, {});

    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < n; ++i) {
      if (!visited_[i]) {
        roots.push_back(i);
        discover(i);
      }
    }

    std::string out;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (i > 0) {
        out.push_back('.');
      }
      emit(roots[i], out);
    }
    return out;
  }

 private:
  // Child atom plus the bond used to reach it.
  using Edge = std::pair<std::size_t, std::size_t>;

  void discover(std::size_t u) {
    visited_[u] = true;
    for (auto [v, bond]: adj_[u]) {
      if (bond_used_[bond]) {
        continue;
      }
      bond_used_[bond] = true;
      if (visited_[v]) {
        ring_open_[v].push_back(bond);
        ring_close_[u].push_back(bond);
      } else {
        children_[u].emplace_back(v, bond);
        discover(v);
      }
    }
  }

  std::string bond_symbol(std::size_t bond) const {
    const Bond &b = m_.bonds()[bond];
    const bool both_lower = lower_[b.a] && lower_[b.b];
    switch (b.order) {
    case BondOrder::kSingle:
      return both_lower ? "-" : "";
    case BondOrder::kDouble:
      return "=";
    case BondOrder::kTriple:
      return "#";
    case BondOrder::kAromatic:
      return both_lower ? "" : ":";
    }
    return "";
  }

  std::string atom_text(std::size_t i) const {
    const Atom &a = m_.atom(i);
    std::string sym = a.element;
    if (lower_[i]) {
      for (char &c: sym) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
    }
    if (a.charge == 0 && is_organic_subset(a.element)) {
      return sym;
    }
    std::string out = "[" + sym;
    if (a.charge != 0) {
      out.push_back(a.charge > 0 ? '+' : '-');
      const int mag = a.charge > 0 ? a.charge : -a.charge;
      if (mag > 1) {
        out += std::to_string(mag);
      }
    }
    out.push_back(']');
    return out;
  }

  static std::string ring_label(int digit) {
    return digit < 10 ? std::to_string(digit) : "%" + std::to_string(digit);
  }

  int take_digit() {
    for (int d = 1; d < 100; ++d) {
      if (std::find(in_use_.begin(), in_use_.end(), d) == in_use_.end()) {
        in_use_.push_back(d);
        return d;
      }
    }
    throw MoleculeError("more than 99 simultaneously open ring bonds");
  }

  void emit(std::size_t u, std::string &out) {
    out += atom_text(u);
    for (std::size_t bond: ring_close_[u]) {
      const int d = digit_of_.at(bond);
      out += bond_symbol(bond) + ring_label(d);
      std::erase(in_use_, d);
    }
    for (std::size_t bond: ring_open_[u]) {
      const int d = take_digit();
      digit_of_[bond] = d;
      out += ring_label(d);
    }
    const auto &kids = children_[u];
    for (std::size_t k = 0; k < kids.size(); ++k) {
      const bool last = k + 1 == kids.size();
      if (!last) {
        out.push_back('(');
      }
      out += bond_symbol(kids[k].second);
      emit(kids[k].first, out);
      if (!last) {
        out.push_back(')');
      }
    }
  }

  const Molecule &m_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj_;
  std::vector<bool> lower_;
  std::vector<bool> visited_;
  std::vector<bool> bond_used_;
  std::vector<std::vector<Edge>> children_;
  std::vector<std::vector<std::size_t>> ring_open_;
  std::vector<std::vector<std::size_t>> ring_close_;
  std::map<std::size_t, int> digit_of_;
  std::vector<int> in_use_;
};

}  // namespace

Molecule parse_smiles(std::string_view text) {
  return SmilesParser(text).parse();
}

std::string write_smiles(const Molecule &m) {
  if (m.empty()) {
    throw MoleculeError("cannot write SMILES for an empty molecule");
  }
  return SmilesWriter(m).write();
}

}  // namespace ocsrbench::chemgraph
