//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrbench/render/render.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "ocsrbench/chemgraph/smiles.hpp"
#include "ocsrbench/error.hpp"
#include "test_support.hpp"

namespace ocsrbench::render {
namespace {

using chemgraph::Atom;
using chemgraph::BondOrder;
using chemgraph::Molecule;

Molecule ethane() {
  Molecule m;
  m.add_atom({ "C", 0, 0, 0 });
  m.add_atom({ "C", 0, 1, 0 });
  m.add_bond(0, 1, BondOrder::kSingle);
  return m;
}

std::size_t black_count(const RasterImage &img) {
  std::size_t n = 0;
  for (auto p: img.pixels()) {
    n += p == kBlack ? 1 : 0;
  }
  return n;
}

// Number of maximal runs of black pixels along row y.
std::size_t runs_on_row(const RasterImage &img, std::size_t y) {
  std::size_t runs = 0;
  bool in = false;
  for (std::size_t x = 0; x < img.width(); ++x) {
    const bool black = img.at(x, y) == kBlack;
    runs += black && !in ? 1 : 0;
    in = black;
  }
  return runs;
}

TEST(RenderTest, EthaneSize) {
  const RasterImage img = render(ethane());
  const double stroke = RenderOptions {}.stroke_width;
  EXPECT_NEAR(static_cast<double>(img.width()), 110.0, stroke + 1);
  EXPECT_NEAR(static_cast<double>(img.height()), 60.0, stroke + 1);
}

TEST(RenderTest, EthaneOneSegment) {
  const RasterImage img = render(ethane());
  InkBox box {};
  ASSERT_TRUE(ink_box(img, box));
  // every inked row carries exactly one horizontal run
  for (std::size_t y = box.y0; y <= box.y1; ++y) {
    EXPECT_EQ(runs_on_row(img, y), 1u) << y;
  }
  EXPECT_GE(box.width(), 50u);
  EXPECT_LE(box.height(), 3u);
  EXPECT_EQ(runs_on_row(img, img.height() / 2), 1u);
}

TEST(RenderTest, DoubleBondTwoSegments) {
  Molecule m;
  m.add_atom({ "C", 0, 0, 0 });
  m.add_atom({ "C", 0, 1, 0 });
  m.add_bond(0, 1, BondOrder::kDouble);
  const RasterImage img = render(m);
  const std::size_t x = img.width() / 2;
  std::size_t runs = 0;
  bool in = false;
  for (std::size_t y = 0; y < img.height(); ++y) {
    const bool black = img.at(x, y) == kBlack;
    runs += black && !in ? 1 : 0;
    in = black;
  }
  EXPECT_EQ(runs, 2u);
}

TEST(RenderTest, MethaneLabel) {
  Molecule m;
  m.add_atom({ "C", 0, 0, 0 });
  EXPECT_EQ(atom_label(m, 0, {}), "CH4");
  const RasterImage img = render(m);
  EXPECT_GT(black_count(img), 0u);
  InkBox box {};
  ASSERT_TRUE(ink_box(img, box));
  // three glyphs side by side are wider than tall
  EXPECT_GT(box.width(), box.height());
}

TEST(RenderTest, AtomLabels) {
  const Molecule ethanol = chemgraph::parse_smiles("CCO");
  EXPECT_EQ(atom_label(ethanol, 0, {}), "");
  EXPECT_EQ(atom_label(ethanol, 2, {}), "OH");
  EXPECT_EQ(atom_label(chemgraph::parse_smiles("CN"), 1, {}), "NH2");
  EXPECT_EQ(atom_label(chemgraph::parse_smiles("C[N+](C)(C)C"), 1, {}), "N+");
  EXPECT_EQ(atom_label(chemgraph::parse_smiles("C[O-]"), 1, {}), "O-");
  EXPECT_EQ(atom_label(chemgraph::parse_smiles("[O--]"), 0, {}), "O2-");
  EXPECT_EQ(atom_label(chemgraph::parse_smiles("C[CH2-]"), 1, {}), "CH2-");
  RenderOptions all;
  all.label_hetero_only = false;
  EXPECT_EQ(atom_label(ethanol, 0, all), "CH3");
}

TEST(RenderTest, IsBinary) {
  for (const RasterImage &img: test::corpus_renderings()) {
    for (auto p: img.pixels()) {
      ASSERT_TRUE(p == kBlack || p == kWhite);
    }
  }
}

TEST(RenderTest, MarginOverCorpus) {
  for (const RasterImage &img: test::corpus_renderings()) {
    InkBox box {};
    ASSERT_TRUE(ink_box(img, box));
    EXPECT_GE(box.x0, 30u);
    EXPECT_GE(box.y0, 30u);
    EXPECT_GE(img.width() - 1 - box.x1, 30u);
    EXPECT_GE(img.height() - 1 - box.y1, 30u);
  }
}

TEST(RenderTest, CustomPadding) {
  for (std::size_t pad: { 0u, 5u, 64u }) {
    RenderOptions opts;
    opts.padding = pad;
    const RasterImage img = render(ethane(), opts);
    InkBox box {};
    ASSERT_TRUE(ink_box(img, box));
    EXPECT_GE(box.x0, pad);
    EXPECT_GE(box.y0, pad);
    EXPECT_GE(img.width() - 1 - box.x1, pad);
    EXPECT_GE(img.height() - 1 - box.y1, pad);
  }
}

TEST(RenderTest, Deterministic) {
  const auto &mols = test::corpus_molecules();
  for (std::size_t i = 0; i < mols.size(); i += 7) {
    EXPECT_EQ(render(mols[i].molecule), render(mols[i].molecule));
  }
}

bool has_labels(const Molecule &m, const RenderOptions &opts) {
  for (std::size_t i = 0; i < m.num_atoms(); ++i) {
    if (!atom_label(m, i, opts).empty()) {
      return true;
    }
  }
  return false;
}

// Doubling scale and stroke together doubles the ink box; each edge of the
// smaller image may be off by one sampled pixel, hence 2 px.
TEST(RenderTest, ScaleDoublesInkBox) {
  for (double stroke: { 1.0, 2.0 }) {
    RenderOptions one;
    one.stroke_width = stroke;
    RenderOptions two = one;
    two.scale = 2 * one.scale;
    two.stroke_width = 2 * stroke;
    for (const auto &nm: test::corpus_molecules()) {
      if (has_labels(nm.molecule, one)) {
        continue;  // glyphs do not scale with the bond length
      }
      InkBox a {}, b {};
      ASSERT_TRUE(ink_box(render(nm.molecule, one), a));
      ASSERT_TRUE(ink_box(render(nm.molecule, two), b));
      EXPECT_NEAR(static_cast<double>(b.width()), 2.0 * a.width(), 2.0)
          << nm.id;
      EXPECT_NEAR(static_cast<double>(b.height()), 2.0 * a.height(), 2.0)
          << nm.id;
    }
  }
}

// With a fixed stroke the stroke itself does not double, so the bound
// grows by the stroke width.
TEST(RenderTest, ScaleWithFixedStroke) {
  RenderOptions one;
  one.stroke_width = 1;
  RenderOptions two = one;
  two.scale = 2 * one.scale;
  const double tol = one.stroke_width + 3;
  for (const auto &nm: test::corpus_molecules()) {
    if (has_labels(nm.molecule, one)) {
      continue;
    }
    InkBox a {}, b {};
    ASSERT_TRUE(ink_box(render(nm.molecule, one), a));
    ASSERT_TRUE(ink_box(render(nm.molecule, two), b));
    EXPECT_NEAR(static_cast<double>(b.width()), 2.0 * a.width(), tol)
        << nm.id;
    EXPECT_NEAR(static_cast<double>(b.height()), 2.0 * a.height(), tol)
        << nm.id;
  }
}

TEST(RenderTest, ScaleDoublesHydrocarbonSkeleton) {
  RenderOptions one;
  one.stroke_width = 1;
  RenderOptions two = one;
  two.scale = 100;
  for (const char *smi: { "CC", "C1CCCCC1" }) {
    Molecule m = chemgraph::parse_smiles(smi);
    for (std::size_t i = 0; i < m.num_atoms(); ++i) {
      const double t = 2 * M_PI * static_cast<double>(i)
                       / static_cast<double>(m.num_atoms());
      m.set_coordinates(i, std::cos(t), std::sin(t));
    }
    InkBox a {}, b {};
    ASSERT_TRUE(ink_box(render(m, one), a));
    ASSERT_TRUE(ink_box(render(m, two), b));
    EXPECT_NEAR(static_cast<double>(b.width()), 2.0 * a.width(), 2.0) << smi;
    EXPECT_NEAR(static_cast<double>(b.height()), 2.0 * a.height(), 2.0)
        << smi;
  }
}

TEST(RenderTest, Errors) {
  EXPECT_THROW(render(Molecule()), RenderError);
  Molecule coincident;
  coincident.add_atom({ "C", 0, 1, 1 });
  coincident.add_atom({ "O", 0, 1, 1 });
  coincident.add_bond(0, 1, BondOrder::kSingle);
  EXPECT_THROW(render(coincident), RenderError);
  RenderOptions bad;
  bad.scale = 0;
  EXPECT_THROW(render(ethane(), bad), RenderError);
  bad.scale = 50;
  bad.stroke_width = -1;
  EXPECT_THROW(render(ethane(), bad), RenderError);
}

TEST(RenderTest, AromaticDrawnKekulized) {
  Molecule arom = chemgraph::parse_smiles("c1ccccc1");
  Molecule kek = chemgraph::parse_smiles("C1=CC=CC=C1");
  for (std::size_t i = 0; i < 6; ++i) {
    const double t = M_PI / 3 * static_cast<double>(i);
    arom.set_coordinates(i, std::cos(t), std::sin(t));
    kek.set_coordinates(i, std::cos(t), std::sin(t));
  }
  EXPECT_EQ(black_count(render(arom)), black_count(render(kek)));
}

}  // namespace
}  // namespace ocsrbench::render
