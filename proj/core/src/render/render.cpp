//
// Project ocsrbench
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrbench/render/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "ocsrbench/chemgraph/elements.hpp"
#include "ocsrbench/error.hpp"
#include "render/font.hpp"

namespace ocsrbench::render {
namespace {

using chemgraph::Bond;
using chemgraph::BondOrder;
using chemgraph::Molecule;

struct Vec2 {
  double x = 0, y = 0;
};

Vec2 operator+(Vec2 a, Vec2 b) { return { a.x + b.x, a.y + b.y }; }
Vec2 operator-(Vec2 a, Vec2 b) { return { a.x - b.x, a.y - b.y }; }
Vec2 operator*(Vec2 a, double s) { return { a.x * s, a.y * s }; }
double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

struct Box {
  double x0, y0, x1, y1;

  bool contains(Vec2 p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
};

struct Segment {
  Vec2 p, q;
};

// A placed label: glyph cells start at integer pixel (left, top).
struct Label {
  std::string text;
  long left = 0;
  long top = 0;
  int cell = 1;  // font pixel size
  Box clip;      // bond clip box, in pixel-center coordinates
};

std::string charge_suffix(int charge) {
  if (charge == 0) {
    return {};
  }
  const int mag = std::abs(charge);
  std::string s = mag > 1 ? std::to_string(mag) : "";
  s.push_back(charge > 0 ? '+' : '-');
  return s;
}

int implicit_hydrogens(const Molecule &m, std::size_t i) {
  const auto &a = m.atom(i);
  const auto valence = chemgraph::default_valence(a.element, a.charge);
  if (!valence) {
    return 0;
  }
  const int used =
      static_cast<int>(std::lround(chemgraph::bond_order_sum(m, i)));
  return std::max(0, *valence - used);
}

// Maximum-cardinality assignment of aromatic bonds to double bonds via
// augmenting paths. Exact for benzenoid (bipartite) systems.
std::vector<bool> kekulize(const Molecule &m) {
  const std::size_t n = m.num_atoms();
  std::vector<bool> has_double(n, false);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> arom(n);
  for (std::size_t i = 0; i < m.num_bonds(); ++i) {
    const Bond &b = m.bonds()[i];
    if (b.order == BondOrder::kDouble) {
      has_double[b.a] = has_double[b.b] = true;
    } else if (b.order == BondOrder::kAromatic) {
      arom[b.a].emplace_back(b.b, i);
      arom[b.b].emplace_back(b.a, i);
    }
  }

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> mate(n, kNone);
  std::vector<std::size_t> mate_bond(n, kNone);
  std::vector<bool> seen(n);

  auto augment = [&](auto &&self, std::size_t u) -> bool {
    for (auto [v, bond]: arom[u]) {
      if (has_double[v] || seen[v]) {
        continue;
      }
      seen[v] = true;
      if (mate[v] == kNone || (mate[v] != u && self(self, mate[v]))) {
        mate[u] = v;
        mate[v] = u;
        mate_bond[u] = mate_bond[v] = bond;
        return true;
      }
    }
    return false;
  };

  for (std::size_t u = 0; u < n; ++u) {
    if (arom[u].empty() || has_double[u] || mate[u] != kNone) {
      continue;
    }
    std::fill(seen.begin(), seen.end(), false);
    seen[u] = true;
    augment(augment, u);
  }

  std::vector<bool> as_double(m.num_bonds(), false);
  for (std::size_t u = 0; u < n; ++u) {
    if (mate[u] != kNone && mate[mate[u]] == u) {
      as_double[mate_bond[u]] = true;
    }
  }
  return as_double;
}

// Shortens the segment where it runs inside either endpoint's label box.
std::optional<Segment> clip_to_labels(Segment s, const Box *at_p,
                                      const Box *at_q) {
  auto exit_param = [](Vec2 from, Vec2 dir, const Box &box) {
    // Largest t in [0,1] with from + t*dir still inside the box.
    double t = 1.0;
    if (dir.x > 0) t = std::min(t, (box.x1 - from.x) / dir.x);
    if (dir.x < 0) t = std::min(t, (box.x0 - from.x) / dir.x);
    if (dir.y > 0) t = std::min(t, (box.y1 - from.y) / dir.y);
    if (dir.y < 0) t = std::min(t, (box.y0 - from.y) / dir.y);
    return std::max(0.0, t);
  };

  Vec2 p = s.p;
  Vec2 q = s.q;
  if (at_p && at_p->contains(p)) {
    p = p + (q - p) * exit_param(p, q - p, *at_p);
  }
  if (at_q && at_q->contains(q)) {
    q = q + (p - q) * exit_param(q, p - q, *at_q);
  }
  if (norm(q - p) < 1.0 || dot(q - p, s.q - s.p) <= 0) {
    return std::nullopt;
  }
  return Segment { p, q };
}

class Canvas {
 public:
  Canvas(std::size_t w, std::size_t h): img_(w, h) { }

  void stroke(const Segment &s, double radius, long dx, long dy) {
    const Vec2 p = s.p + Vec2 { double(dx), double(dy) };
    const Vec2 q = s.q + Vec2 { double(dx), double(dy) };
    const long x0 = static_cast<long>(std::floor(std::min(p.x, q.x) - radius));
    const long x1 = static_cast<long>(std::ceil(std::max(p.x, q.x) + radius));
    const long y0 = static_cast<long>(std::floor(std::min(p.y, q.y) - radius));
    const long y1 = static_cast<long>(std::ceil(std::max(p.y, q.y) + radius));
    const Vec2 d = q - p;
    const double len2 = dot(d, d);
    for (long y = y0; y <= y1; ++y) {
      for (long x = x0; x <= x1; ++x) {
        if (!inside(x, y)) {
          continue;
        }
        const Vec2 c { x + 0.5, y + 0.5 };
        double t = len2 > 0 ? dot(c - p, d) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        if (norm(c - (p + d * t)) <= radius) {
          img_.at(x, y) = kBlack;
        }
      }
    }
  }

  void text(const Label &l, long dx, long dy) {
    long pen = l.left + dx;
    for (char ch: l.text) {
      const Glyph &g = glyph(ch);
      for (int row = 0; row < kGlyphHeight; ++row) {
        for (int col = 0; col < kGlyphWidth; ++col) {
          if (!(g[row] & (1u << (kGlyphWidth - 1 - col)))) {
            continue;
          }
          for (int sy = 0; sy < l.cell; ++sy) {
            for (int sx = 0; sx < l.cell; ++sx) {
              const long x = pen + col * l.cell + sx;
              const long y = l.top + dy + row * l.cell + sy;
              if (inside(x, y)) {
                img_.at(x, y) = kBlack;
              }
            }
          }
        }
      }
      pen += (kGlyphWidth + 1) * l.cell;
    }
  }

  RasterImage take() { return std::move(img_); }

 private:
  bool inside(long x, long y) const {
    return x >= 0 && y >= 0 && x < static_cast<long>(img_.width())
           && y < static_cast<long>(img_.height());
  }

  RasterImage img_;
};

long text_width(std::size_t chars, int cell) {
  return chars == 0 ? 0
                    : static_cast<long>(chars) * (kGlyphWidth + 1) * cell
                          - cell;
}

}  // namespace

std::string atom_label(const Molecule &m, std::size_t i,
                       const RenderOptions &opts) {
  const auto &a = m.atom(i);
  bool degree_zero = true;
  for (const Bond &b: m.bonds()) {
    if (b.a == i || b.b == i) {
      degree_zero = false;
      break;
    }
  }
  const bool implicit_carbon = a.element == "C" && a.charge == 0
                               && !degree_zero && opts.label_hetero_only;
  if (implicit_carbon) {
    return {};
  }
  std::string s = a.element;
  const int h = implicit_hydrogens(m, i);
  if (h > 0) {
    s += "H";
    if (h > 1) {
      s += std::to_string(h);
    }
  }
  return s + charge_suffix(a.charge);
}

RasterImage render(const Molecule &m, const RenderOptions &opts) {
  if (m.empty()) {
    throw RenderError("cannot render an empty molecule");
  }
  if (!(opts.scale > 0) || !(opts.stroke_width > 0)) {
    throw RenderError("scale and stroke width must be positive");
  }

  const std::size_t n = m.num_atoms();
  if (n > 1) {
    const bool coincident = std::all_of(
        m.atoms().begin(), m.atoms().end(), [&](const chemgraph::Atom &a) {
          return a.x == m.atom(0).x && a.y == m.atom(0).y;
        });
    if (coincident) {
      throw RenderError("degenerate geometry: all atoms share one position");
    }
  }

  double max_y = -std::numeric_limits<double>::infinity();
  double min_x = std::numeric_limits<double>::infinity();
  for (const auto &a: m.atoms()) {
    max_y = std::max(max_y, a.y);
    min_x = std::min(min_x, a.x);
  }
  std::vector<Vec2> pos(n);
  for (std::size_t i = 0; i < n; ++i) {
    pos[i] = { (m.atom(i).x - min_x) * opts.scale,
               (max_y - m.atom(i).y) * opts.scale };
  }

  // Labels. The element symbol is centered on the atom; hydrogens and
  // charge trail to the right.
  const int cell = std::max(1, static_cast<int>(opts.scale / 25.0));
  std::vector<std::optional<Label>> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string text = atom_label(m, i, opts);
    if (text.empty()) {
      continue;
    }
    const std::size_t sym_len = m.atom(i).element.size();
    Label l;
    l.cell = cell;
    l.left = std::lround(pos[i].x - text_width(sym_len, cell) / 2.0);
    l.top = std::lround(pos[i].y - kGlyphHeight * cell / 2.0);
    const double gap = cell;
    l.clip = { l.left - gap, l.top - gap,
               l.left + text_width(text.size(), cell) + gap,
               l.top + kGlyphHeight * cell + gap };
    l.text = std::move(text);
    labels[i] = std::move(l);
  }

  const bool any_label = std::any_of(labels.begin(), labels.end(),
                                     [](const auto &l) { return l.has_value(); });
  if (m.num_bonds() == 0 && !any_label) {
    throw RenderError("nothing to draw: no bonds and no labeled atoms");
  }

  // Bond strokes.
  const std::vector<bool> kekule_double = kekulize(m);
  const auto adj = m.adjacency();
  std::vector<Segment> segments;
  for (std::size_t bi = 0; bi < m.num_bonds(); ++bi) {
    const Bond &b = m.bonds()[bi];
    const Vec2 pa = pos[b.a];
    const Vec2 pb = pos[b.b];
    const double len = norm(pb - pa);
    if (len == 0) {
      continue;
    }
    const Vec2 dir = (pb - pa) * (1.0 / len);
    const Vec2 normal { -dir.y, dir.x };
    const Box *box_a = labels[b.a] ? &labels[b.a]->clip : nullptr;
    const Box *box_b = labels[b.b] ? &labels[b.b]->clip : nullptr;
    auto add = [&](Vec2 p, Vec2 q) {
      if (auto s = clip_to_labels({ p, q }, box_a, box_b)) {
        segments.push_back(*s);
      }
    };

    int lines = 1;
    if (b.order == BondOrder::kDouble
        || (b.order == BondOrder::kAromatic && kekule_double[bi])) {
      lines = 2;
    } else if (b.order == BondOrder::kTriple) {
      lines = 3;
    }

    const double spacing = 0.15 * len;
    if (lines == 1) {
      add(pa, pb);
    } else if (lines == 3) {
      add(pa, pb);
      add(pa + normal * spacing, pb + normal * spacing);
      add(pa - normal * spacing, pb - normal * spacing);
    } else {
      // Put the second line on the side with more substituents (the ring
      // interior for ring bonds); center the pair when balanced.
      int side = 0;
      for (auto [v, _]: adj[b.a]) {
        if (v != b.b) {
          side += cross(dir, pos[v] - pa) > 0 ? 1 : -1;
        }
      }
      for (auto [v, _]: adj[b.b]) {
        if (v != b.a) {
          side += cross(dir, pos[v] - pa) > 0 ? 1 : -1;
        }
      }
      if (side == 0 || (box_a && box_b)) {
        const Vec2 off = normal * (spacing / 2);
        add(pa + off, pb + off);
        add(pa - off, pb - off);
      } else {
        const Vec2 off = normal * (side > 0 ? spacing : -spacing);
        const Vec2 inset = dir * (box_a ? 0.0 : spacing);
        const Vec2 inset_b = dir * (box_b ? 0.0 : spacing);
        add(pa, pb);
        add(pa + off + inset, pb + off - inset_b);
      }
    }
  }

  // Ink extent in pixel-center coordinates: pixel i can be black only if
  // i + 0.5 lies inside [lo, hi].
  const double radius = opts.stroke_width / 2.0;
  double lo_x = std::numeric_limits<double>::infinity();
  double lo_y = lo_x;
  double hi_x = -lo_x;
  double hi_y = -lo_x;
  for (const Segment &s: segments) {
    lo_x = std::min({ lo_x, s.p.x - radius, s.q.x - radius });
    hi_x = std::max({ hi_x, s.p.x + radius, s.q.x + radius });
    lo_y = std::min({ lo_y, s.p.y - radius, s.q.y - radius });
    hi_y = std::max({ hi_y, s.p.y + radius, s.q.y + radius });
  }
  for (const auto &l: labels) {
    if (!l) {
      continue;
    }
    lo_x = std::min(lo_x, l->left + 0.5);
    lo_y = std::min(lo_y, l->top + 0.5);
    hi_x = std::max(hi_x, l->left + text_width(l->text.size(), cell) - 0.5);
    hi_y = std::max(hi_y, l->top + kGlyphHeight * cell - 0.5);
  }
  if (!(lo_x <= hi_x) || !(lo_y <= hi_y)) {
    throw RenderError("nothing to draw after clipping bonds to labels");
  }

  const long first_x = static_cast<long>(std::ceil(lo_x - 0.5));
  const long last_x = static_cast<long>(std::floor(hi_x - 0.5));
  const long first_y = static_cast<long>(std::ceil(lo_y - 0.5));
  const long last_y = static_cast<long>(std::floor(hi_y - 0.5));
  const long pad = static_cast<long>(opts.padding);
  const long dx = pad - first_x;
  const long dy = pad - first_y;
  const auto width = static_cast<std::size_t>(last_x - first_x + 1 + 2 * pad);
  const auto height = static_cast<std::size_t>(last_y - first_y + 1 + 2 * pad);

  Canvas canvas(width, height);
  for (const Segment &s: segments) {
    canvas.stroke(s, radius, dx, dy);
  }
  for (const auto &l: labels) {
    if (l) {
      canvas.text(*l, dx, dy);
    }
  }
  return canvas.take();
}

}  // namespace ocsrbench::render
