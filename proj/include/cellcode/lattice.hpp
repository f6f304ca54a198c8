#pragma once

#include <array>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cellcode/chain_complex.hpp"
#include "cellcode/gf2.hpp"

namespace cellcode {

/// An lx x ly square lattice on an identified square. Twists select the
/// surface: none -> torus, one -> Klein bottle, both -> real projective
/// plane.
///
/// Twist conventions, fixed and load-bearing for code distances:
///  - Klein bottle (one twist): crossing the twisted seam glides the
///    transverse coordinate, y -> ly - 1 - y. No lattice row is fixed when
///    ly is even, which is what makes the shortest twisted-direction loop
///    one step longer on even lattices.
///  - Projective plane (both twists): antipodal boundary identification of
///    the closed square, (x, 0) ~ (lx - x, ly) and (0, y) ~ (lx, ly - y).
struct SurfaceSpec {
  int lx = 0;
  int ly = 0;
  bool twist_x = false;
  bool twist_y = false;
};

/// Periodic (untwisted) nx x ny x nz cubic lattice on the 3-torus.
struct CubicSpec {
  int nx = 0;
  int ny = 0;
  int nz = 0;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent_[b] = a;  // keep the smaller raw id as representative
    else parent_[a] = b;
  }

 private:
  std::vector<std::size_t> parent_;
};

inline int floor_mod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace detail

/// Builds the 2-complex of an identified lx x ly square lattice.
/// Cell order: in-domain vertices (x, y) with id y*lx + x; edges interleaved
/// as 2*(y*lx + x) + {0: x-directed, 1: y-directed}; faces by lower-left
/// vertex. Quotient cells that have no in-domain representative (the extra
/// projective-plane vertex) are appended after the in-domain ones.
inline ChainComplex build_surface(const SurfaceSpec& spec) {
  const int lx = spec.lx, ly = spec.ly;
  if (lx < 2 || ly < 2)
    throw std::invalid_argument("build_surface: lattice must be at least 2x2 per direction");

  const bool rp2 = spec.twist_x && spec.twist_y;

  // Raw cells live on the closed grid [0,lx] x [0,ly]; in-domain cells get
  // the canonical ids first so the quotient keeps their ordering.
  const std::size_t n_v_in = static_cast<std::size_t>(lx) * ly;
  const std::size_t n_e_in = 2 * n_v_in;

  std::vector<std::size_t> v_raw(static_cast<std::size_t>(lx + 1) * (ly + 1));
  std::vector<std::array<int, 2>> v_coord;  // raw id -> (x, y)
  {
    std::size_t next_boundary = n_v_in;
    v_coord.resize(v_raw.size());
    for (int y = 0; y <= ly; ++y)
      for (int x = 0; x <= lx; ++x) {
        const std::size_t slot = static_cast<std::size_t>(y) * (lx + 1) + x;
        const std::size_t id = (x < lx && y < ly) ? static_cast<std::size_t>(y) * lx + x : next_boundary++;
        v_raw[slot] = id;
        v_coord[id] = {x, y};
      }
  }
  auto rv = [&](int x, int y) { return v_raw[static_cast<std::size_t>(y) * (lx + 1) + x]; };
  const std::size_t n_v_raw = v_raw.size();

  // Raw edges: x-directed h(x, y) for x in [0,lx), y in [0,ly]; y-directed
  // v(x, y) for x in [0,lx], y in [0,ly).
  const std::size_t n_h_raw = static_cast<std::size_t>(lx) * (ly + 1);
  const std::size_t n_vv_raw = static_cast<std::size_t>(lx + 1) * ly;
  std::vector<std::size_t> h_raw(n_h_raw), vv_raw(n_vv_raw);
  std::vector<std::array<int, 3>> e_coord(2 * n_v_in + (n_h_raw - n_v_in) + (n_vv_raw - n_v_in));
  {
    std::size_t next_boundary = n_e_in;
    for (int y = 0; y <= ly; ++y)
      for (int x = 0; x < lx; ++x) {
        const std::size_t slot = static_cast<std::size_t>(y) * lx + x;
        const std::size_t id = (y < ly) ? 2 * (static_cast<std::size_t>(y) * lx + x) : next_boundary++;
        h_raw[slot] = id;
        e_coord[id] = {x, y, 0};
      }
    for (int y = 0; y < ly; ++y)
      for (int x = 0; x <= lx; ++x) {
        const std::size_t slot = static_cast<std::size_t>(y) * (lx + 1) + x;
        const std::size_t id = (x < lx) ? 2 * (static_cast<std::size_t>(y) * lx + x) + 1 : next_boundary++;
        vv_raw[slot] = id;
        e_coord[id] = {x, y, 1};
      }
  }
  auto rh = [&](int x, int y) { return h_raw[static_cast<std::size_t>(y) * lx + x]; };
  auto rvv = [&](int x, int y) { return vv_raw[static_cast<std::size_t>(y) * (lx + 1) + x]; };
  const std::size_t n_e_raw = e_coord.size();

  detail::DisjointSets v_sets(n_v_raw), e_sets(n_e_raw);

  // Seam identifications. Partners are expressed in raw closed-grid
  // coordinates; orbits close up through the union-find.
  if (rp2) {
    for (int y = 0; y <= ly; ++y) v_sets.unite(rv(lx, y), rv(0, ly - y));
    for (int x = 0; x <= lx; ++x) v_sets.unite(rv(x, ly), rv(lx - x, 0));
    for (int y = 0; y < ly; ++y) e_sets.unite(rvv(lx, y), rvv(0, ly - 1 - y));
    for (int x = 0; x < lx; ++x) e_sets.unite(rh(x, ly), rh(lx - 1 - x, 0));
  } else {
    if (spec.twist_x) {
      for (int y = 0; y < ly; ++y) v_sets.unite(rv(lx, y), rv(0, ly - 1 - y));
      v_sets.unite(rv(lx, ly), rv(lx, 0));
      for (int y = 0; y < ly; ++y) e_sets.unite(rvv(lx, y), rvv(0, detail::floor_mod(ly - 2 - y, ly)));
    } else {
      for (int y = 0; y <= ly; ++y) v_sets.unite(rv(lx, y), rv(0, y));
      for (int y = 0; y < ly; ++y) e_sets.unite(rvv(lx, y), rvv(0, y));
    }
    if (spec.twist_y) {
      for (int x = 0; x < lx; ++x) v_sets.unite(rv(x, ly), rv(lx - 1 - x, 0));
      v_sets.unite(rv(lx, ly), rv(0, ly));
      for (int x = 0; x < lx; ++x) e_sets.unite(rh(x, ly), rh(detail::floor_mod(lx - 2 - x, lx), 0));
    } else {
      for (int x = 0; x <= lx; ++x) v_sets.unite(rv(x, ly), rv(x, 0));
      for (int x = 0; x < lx; ++x) e_sets.unite(rh(x, ly), rh(x, 0));
    }
  }

  // Compact roots to canonical indices in raw-id order.
  auto compact = [](detail::DisjointSets& sets, std::size_t n_raw, std::vector<std::size_t>& canon) {
    canon.assign(n_raw, 0);
    std::size_t count = 0;
    for (std::size_t i = 0; i < n_raw; ++i)
      if (sets.find(i) == i) canon[i] = count++;
    for (std::size_t i = 0; i < n_raw; ++i) canon[i] = canon[sets.find(i)];
    return count;
  };
  std::vector<std::size_t> v_canon, e_canon;
  const std::size_t n_v = compact(v_sets, n_v_raw, v_canon);
  const std::size_t n_e = compact(e_sets, n_e_raw, e_canon);
  const std::size_t n_f = static_cast<std::size_t>(lx) * ly;

  ChainComplex x;
  x.dim = 2;
  x.cell_count = {n_v, n_e, n_f};
  x.boundary.resize(3);
  x.labels.resize(3);
  x.preferred_cycles.resize(3);
  x.preferred_cocycles.resize(3);

  auto cv = [&](int xx, int yy) { return v_canon[rv(xx, yy)]; };
  auto ch = [&](int xx, int yy) { return e_canon[rh(xx, yy)]; };
  auto cvv = [&](int xx, int yy) { return e_canon[rvv(xx, yy)]; };

  // boundary[1]: endpoints of each canonical edge, taken from the
  // representative raw edge. Identified endpoints cancel mod 2.
  GF2Matrix d1(n_v, n_e);
  {
    std::vector<bool> done(n_e, false);
    auto add_edge = [&](std::size_t canon_id, std::size_t va, std::size_t vb) {
      if (done[canon_id]) return;
      done[canon_id] = true;
      d1.flip(va, canon_id);
      d1.flip(vb, canon_id);
    };
    for (int y = 0; y < ly; ++y)
      for (int xx = 0; xx < lx; ++xx) {
        add_edge(ch(xx, y), cv(xx, y), cv(xx + 1, y));
        add_edge(cvv(xx, y), cv(xx, y), cv(xx, y + 1));
      }
  }
  x.boundary[1] = std::move(d1);

  // boundary[2]: the four raw sides of each face; seam-identified sides
  // accumulate mod 2.
  GF2Matrix d2(n_e, n_f);
  for (int y = 0; y < ly; ++y)
    for (int xx = 0; xx < lx; ++xx) {
      const std::size_t f = static_cast<std::size_t>(y) * lx + xx;
      d2.flip(ch(xx, y), f);
      d2.flip(ch(xx, y + 1), f);
      d2.flip(cvv(xx, y), f);
      d2.flip(cvv(xx + 1, y), f);
    }
  x.boundary[2] = std::move(d2);

  // Labels from representative raw coordinates.
  auto coord_str = [](int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; };
  x.labels[0].resize(n_v);
  for (std::size_t raw = 0; raw < n_v_raw; ++raw)
    if (v_sets.find(raw) == raw) x.labels[0][v_canon[raw]] = "v" + coord_str(v_coord[raw][0], v_coord[raw][1]);
  x.labels[1].resize(n_e);
  for (std::size_t raw = 0; raw < n_e_raw; ++raw)
    if (e_sets.find(raw) == raw)
      x.labels[1][e_canon[raw]] =
          (e_coord[raw][2] == 0 ? "ex" : "ey") + coord_str(e_coord[raw][0], e_coord[raw][1]);
  x.labels[2].resize(n_f);
  for (int y = 0; y < ly; ++y)
    for (int xx = 0; xx < lx; ++xx) x.labels[2][static_cast<std::size_t>(y) * lx + xx] = "f" + coord_str(xx, y);

  // Preferred generator loops: one winding per direction, each built from
  // the straight run whose closing connector is shortest, so the generator
  // represents the lightest class of its winding sector. The projective
  // plane has a single class and is left to the algebraic basis.
  if (!rp2) {
    // Arc of y-edges along column x0 from y_from to y_to, the short way.
    auto y_arc = [&](GF2Vector& cyc, int x0, int y_from, int y_to) {
      const int down = detail::floor_mod(y_from - y_to, ly);
      const int up = ly - down;
      if (down == 0) return;
      if (down <= up)
        for (int y = y_to; y != y_from; y = (y + 1) % ly) cyc.flip(cvv(x0, y));
      else
        for (int y = y_from; y != y_to; y = (y + 1) % ly) cyc.flip(cvv(x0, y));
    };
    auto x_arc = [&](GF2Vector& cyc, int y0, int x_from, int x_to) {
      const int down = detail::floor_mod(x_from - x_to, lx);
      const int up = lx - down;
      if (down == 0) return;
      if (down <= up)
        for (int xx = x_to; xx != x_from; xx = (xx + 1) % lx) cyc.flip(ch(xx, y0));
      else
        for (int xx = x_from; xx != x_to; xx = (xx + 1) % lx) cyc.flip(ch(xx, y0));
    };
    auto find_on_column = [&](int x0, std::size_t vertex) {
      for (int y = 0; y < ly; ++y)
        if (cv(x0, y) == vertex) return y;
      throw std::logic_error("build_surface: loop endpoint left its column");
    };
    auto find_on_row = [&](int y0, std::size_t vertex) {
      for (int xx = 0; xx < lx; ++xx)
        if (cv(xx, y0) == vertex) return xx;
      throw std::logic_error("build_surface: loop endpoint left its row");
    };

    GF2Vector x_loop, y_loop;
    std::size_t best = n_e + 1;
    for (int y0 = 0; y0 < ly; ++y0) {
      GF2Vector loop(n_e);
      for (int xx = 0; xx < lx; ++xx) loop.flip(ch(xx, y0));
      y_arc(loop, 0, y0, find_on_column(0, cv(lx, y0)));
      if (loop.weight() < best) {
        best = loop.weight();
        x_loop = std::move(loop);
      }
    }
    best = n_e + 1;
    for (int x0 = 0; x0 < lx; ++x0) {
      GF2Vector loop(n_e);
      for (int y = 0; y < ly; ++y) loop.flip(cvv(x0, y));
      x_arc(loop, 0, x0, find_on_row(0, cv(x0, ly)));
      if (loop.weight() < best) {
        best = loop.weight();
        y_loop = std::move(loop);
      }
    }
    for (const auto& loop : {x_loop, y_loop})
      if (!x.boundary[1].mul(loop).is_zero())
        throw std::logic_error("build_surface: constructed generator is not a cycle");
    x.preferred_cycles[1] = {std::move(x_loop), std::move(y_loop)};
  }

  return x;
}

/// Periodic cubic lattice complex. Vertex id = x + nx*(y + ny*z); edges and
/// faces interleave three orientations per vertex: edge orientation is the
/// spanned axis, face orientation is the normal axis.
inline ChainComplex build_cubic(const CubicSpec& spec) {
  const int nx = spec.nx, ny = spec.ny, nz = spec.nz;
  if (nx < 2 || ny < 2 || nz < 2)
    throw std::invalid_argument("build_cubic: lattice must be at least 2 per direction");

  const std::size_t nv = static_cast<std::size_t>(nx) * ny * nz;
  auto vid = [&](int x, int y, int z) {
    return static_cast<std::size_t>(detail::floor_mod(x, nx)) +
           static_cast<std::size_t>(nx) *
               (static_cast<std::size_t>(detail::floor_mod(y, ny)) +
                static_cast<std::size_t>(ny) * detail::floor_mod(z, nz));
  };
  auto shifted = [&](int x, int y, int z, int axis) {
    const int dx = axis == 0, dy = axis == 1, dz = axis == 2;
    return vid(x + dx, y + dy, z + dz);
  };
  auto eid = [&](int x, int y, int z, int axis) { return 3 * vid(x, y, z) + axis; };
  auto fid = [&](int x, int y, int z, int normal) { return 3 * vid(x, y, z) + normal; };

  ChainComplex out;
  out.dim = 3;
  out.cell_count = {nv, 3 * nv, 3 * nv, nv};
  out.boundary.resize(4);
  out.labels.resize(4);
  out.preferred_cycles.resize(4);
  out.preferred_cocycles.resize(4);

  GF2Matrix d1(nv, 3 * nv);
  GF2Matrix d2(3 * nv, 3 * nv);
  GF2Matrix d3(3 * nv, nv);
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x) {
        for (int a = 0; a < 3; ++a) {
          d1.flip(vid(x, y, z), eid(x, y, z, a));
          d1.flip(shifted(x, y, z, a), eid(x, y, z, a));
        }
        for (int normal = 0; normal < 3; ++normal) {
          // The face with this normal spans the two remaining axes b < c.
          const int b = normal == 0 ? 1 : 0;
          const int c = normal == 2 ? 1 : 2;
          const std::size_t f = fid(x, y, z, normal);
          d2.flip(eid(x, y, z, b), f);
          d2.flip(eid(x, y, z, c), f);
          const int cb[3] = {x + (c == 0), y + (c == 1), z + (c == 2)};
          const int bc[3] = {x + (b == 0), y + (b == 1), z + (b == 2)};
          d2.flip(eid(cb[0], cb[1], cb[2], b), f);
          d2.flip(eid(bc[0], bc[1], bc[2], c), f);
        }
        for (int normal = 0; normal < 3; ++normal) {
          d3.flip(fid(x, y, z, normal), vid(x, y, z));
          const int s[3] = {x + (normal == 0), y + (normal == 1), z + (normal == 2)};
          d3.flip(fid(s[0], s[1], s[2], normal), vid(x, y, z));
        }
      }
  out.boundary[1] = std::move(d1);
  out.boundary[2] = std::move(d2);
  out.boundary[3] = std::move(d3);

  auto coord_str = [](int a, int b, int c) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  };
  static const char* edge_names[3] = {"ex", "ey", "ez"};
  static const char* face_names[3] = {"fyz", "fzx", "fxy"};
  out.labels[0].resize(nv);
  out.labels[1].resize(3 * nv);
  out.labels[2].resize(3 * nv);
  out.labels[3].resize(nv);
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x) {
        out.labels[0][vid(x, y, z)] = "v" + coord_str(x, y, z);
        out.labels[3][vid(x, y, z)] = "c" + coord_str(x, y, z);
        for (int a = 0; a < 3; ++a) {
          out.labels[1][eid(x, y, z, a)] = edge_names[a] + coord_str(x, y, z);
          out.labels[2][fid(x, y, z, a)] = face_names[a] + coord_str(x, y, z);
        }
      }

  // Generator cycles: one straight loop per axis, one coordinate sheet per
  // normal direction.
  {
    std::vector<GF2Vector> loops;
    for (int a = 0; a < 3; ++a) {
      GF2Vector loop(3 * nv);
      const int extent = a == 0 ? nx : a == 1 ? ny : nz;
      for (int i = 0; i < extent; ++i)
        loop.flip(eid(a == 0 ? i : 0, a == 1 ? i : 0, a == 2 ? i : 0, a));
      loops.push_back(std::move(loop));
    }
    out.preferred_cycles[1] = std::move(loops);

    std::vector<GF2Vector> sheets;
    for (int normal = 0; normal < 3; ++normal) {
      GF2Vector sheet(3 * nv);
      for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y)
          for (int x = 0; x < nx; ++x) {
            const int fixed = normal == 0 ? x : normal == 1 ? y : z;
            if (fixed == 0) sheet.flip(fid(x, y, z, normal));
          }
      sheets.push_back(std::move(sheet));
    }
    out.preferred_cycles[2] = std::move(sheets);

    // Cochain generators dual to the loops/sheets above: an edge "wall"
    // transverse to each axis, and one straight run of faces per axis.
    std::vector<GF2Vector> walls;
    for (int a = 0; a < 3; ++a) {
      GF2Vector wall(3 * nv);
      for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y)
          for (int x = 0; x < nx; ++x) {
            const int fixed = a == 0 ? x : a == 1 ? y : z;
            if (fixed == 0) wall.flip(eid(x, y, z, a));
          }
      walls.push_back(std::move(wall));
    }
    out.preferred_cocycles[1] = std::move(walls);

    std::vector<GF2Vector> dual_loops;
    for (int a = 0; a < 3; ++a) {
      GF2Vector dual_loop(3 * nv);
      const int extent = a == 0 ? nx : a == 1 ? ny : nz;
      for (int i = 0; i < extent; ++i)
        dual_loop.flip(fid(a == 0 ? i : 0, a == 1 ? i : 0, a == 2 ? i : 0, a));
      dual_loops.push_back(std::move(dual_loop));
    }
    out.preferred_cocycles[2] = std::move(dual_loops);
  }

  for (int k = 1; k < 3; ++k)
    for (const auto& cyc : out.preferred_cycles[static_cast<std::size_t>(k)])
      if (!out.boundary_map(k).mul(cyc).is_zero())
        throw std::logic_error("build_cubic: constructed generator is not a cycle");

  return out;
}

/// Unit-weight graph whose links are bijective with qubit-carrying cells.
struct AdjacencyGraph {
  struct Link {
    int a = 0;
    int b = 0;
    std::size_t cell = 0;
  };
  std::size_t node_count = 0;
  std::vector<Link> links;
  std::vector<std::vector<std::pair<int, std::size_t>>> neighbors;  // node -> (node, cell)
};

namespace detail {

inline AdjacencyGraph graph_from_incidence(const GF2Matrix& incidence) {
  AdjacencyGraph g;
  g.node_count = incidence.rows();
  g.neighbors.resize(incidence.rows());
  const GF2Matrix by_link = incidence.transposed();
  for (std::size_t link = 0; link < by_link.rows(); ++link) {
    const auto ends = by_link.row(link).support();
    if (ends.size() != 2)
      throw std::invalid_argument("adjacency_graph: a link must join exactly two nodes");
    const int a = static_cast<int>(ends[0]), b = static_cast<int>(ends[1]);
    g.links.push_back({a, b, link});
    g.neighbors[ends[0]].push_back({b, link});
    g.neighbors[ends[1]].push_back({a, link});
  }
  return g;
}

}  // namespace detail

/// Primal graph (vertices joined by edges) or dual graph (top cells joined
/// by codimension-1 cells) of a 2- or 3-complex.
inline AdjacencyGraph adjacency_graph(const ChainComplex& x, bool dual) {
  if (x.dim != 2 && x.dim != 3)
    throw std::invalid_argument("adjacency_graph: only 2- and 3-complexes are supported");
  if (!dual) return detail::graph_from_incidence(x.boundary_map(1));
  return detail::graph_from_incidence(x.boundary_map(x.dim).transposed());
}

}  // namespace cellcode
