//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>

#include "ocsrbench/chemgraph/molecule.hpp"
#include "ocsrbench/render/raster_image.hpp"

namespace ocsrbench::render {

struct RenderOptions {
  double scale = 50.0;           // pixels per molfile coordinate unit
  double stroke_width = 2.0;     // pixels
  std::size_t padding = 30;      // white margin around the ink box
  bool label_hetero_only = true; // carbons stay implicit unless charged/isolated
};

/// Text drawn at atom i, or "" if the atom is an implicit carbon vertex.
/// Includes implicit hydrogens and charge, e.g. "OH", "NH2", "O-", "N+".
std::string atom_label(const chemgraph::Molecule &m, std::size_t i,
                       const RenderOptions &opts);

/// Skeletal-formula depiction from the molecule's 2D coordinates.
///
/// The output is strictly two-level (0/255). Bonds are capsule strokes;
/// double and triple bonds are drawn as parallel lines 0.15 bond lengths
/// apart, aromatic bonds are drawn as a Kekule structure, and labels use
/// the built-in 5x7 font with bonds clipped to the label boxes. The image is
/// sized so every black pixel lies at least `padding` pixels from the edge.
///
/// Throws RenderError for an empty molecule, for a molecule with neither
/// bonds nor labels, or when all atoms share one position while bonded.
RasterImage render(const chemgraph::Molecule &m,
                   const RenderOptions &opts = {});

}  // namespace ocsrbench::render
