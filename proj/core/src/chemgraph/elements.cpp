//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrbench/chemgraph/elements.hpp"

#include <array>
#include <cstdlib>

namespace ocsrbench::chemgraph {
namespace {

constexpr std::array<std::string_view, 118> kSymbols = {
  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
  "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr",
  "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr",
  "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
  "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
  "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf",
  "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po",
  "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm",
  "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs",
  "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
};

}  // namespace

std::optional<int> atomic_number(std::string_view symbol) {
  for (std::size_t i = 0; i < kSymbols.size(); ++i) {
    if (kSymbols[i] == symbol) {
      return static_cast<int>(i + 1);
    }
  }
  return std::nullopt;
}

std::optional<int> default_valence(std::string_view symbol, int charge) {
  int v;
  if (symbol == "C" || symbol == "Si") {
    v = 4 - std::abs(charge);
  } else if (symbol == "N" || symbol == "P" || symbol == "As") {
    v = 3 + charge;
  } else if (symbol == "O" || symbol == "S" || symbol == "Se") {
    v = 2 + charge;
  } else if (symbol == "B") {
    v = 3 - charge;
  } else if (symbol == "F" || symbol == "Cl" || symbol == "Br"
             || symbol == "I") {
    v = 1 + charge;
  } else if (symbol == "H") {
    v = 1 - std::abs(charge);
  } else {
    return std::nullopt;
  }
  return v < 0 ? 0 : v;
}

}  // namespace ocsrbench::chemgraph
