#pragma once

// Alternating link diagrams, their checkerboard (Tait) graphs, and the flow and
// cut lattices of plane multigraphs.
//
// PD convention: each crossing lists its four arc labels counterclockwise,
// starting from the incoming under-strand, so positions 0 and 2 are under and
// 1 and 3 are over. Corner j of a crossing is the region between positions j
// and j+1.

#include <array>
#include <utility>
#include <vector>

#include "dlat/lattice.hpp"

namespace dlat {

using PdCode = std::vector<std::array<Int, 4>>;

struct Corner {
  int crossing;
  int position;
  bool operator==(const Corner&) const = default;
};

struct Diagram {
  PdCode pd;
  std::vector<std::vector<Corner>> faces;  // corners in boundary order
  int components = 1;                      // of the projection graph
  bool connected = true;
  bool alternating = true;
  bool reduced = true;  // black Tait graph has neither loops nor bridges
  int crossings() const { return static_cast<int>(pd.size()); }
};

// Throws MalformedCode, NonPlanar, and (when require_alternating) NotAlternating.
Diagram parse_pd(const PdCode& code, bool require_alternating = true);

struct EdgeEnd {
  int edge;
  int end;  // 0: edges[edge].first, 1: edges[edge].second
  bool operator==(const EdgeEnd&) const = default;
  auto operator<=>(const EdgeEnd&) const = default;
};

struct PlaneMultigraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;       // loops and parallel edges allowed
  std::vector<std::vector<EdgeEnd>> rotations;  // cyclic order at each vertex

  int edge_count() const { return static_cast<int>(edges.size()); }
  // Orbits of the face permutation (next end in rotation after crossing the edge).
  std::vector<std::vector<EdgeEnd>> faces() const;
  bool is_connected() const;
  bool operator==(const PlaneMultigraph&) const = default;
};

// Throws BadInput for an inconsistent rotation system, NonPlanar when the
// traced faces violate V - E + F = 2.
void validate(const PlaneMultigraph& g);

enum class FaceColor { Black, White };

struct Checkerboard {
  PlaneMultigraph black;  // faces at even corners; crossing c joins its corner-0 and corner-2 faces
  PlaneMultigraph white;  // faces at odd corners; crossing c joins its corner-1 and corner-3 faces
};
Checkerboard checkerboard(const Diagram& d);
const PlaneMultigraph& tait_graph(const Checkerboard& cb, FaceColor color);

struct FlowLattice {
  IntegralLattice lattice;
  IntMatrix cycle_basis;  // rows in Z^E
};

// Fundamental cycles of the breadth-first spanning tree from vertex 0.
FlowLattice flow_lattice(const PlaneMultigraph& g);
// Stars of vertices 0 .. V-2 (edges oriented first -> second).
IntegralLattice cut_lattice(const PlaneMultigraph& g);
IntMatrix cut_generators(const PlaneMultigraph& g);
// Faces become vertices; dual edge i joins the faces of ends (i,0) and (i,1).
PlaneMultigraph planar_dual(const PlaneMultigraph& g);
BigInt spanning_tree_count(const PlaneMultigraph& g);

bool has_loop(const PlaneMultigraph& g);
bool has_bridge(const PlaneMultigraph& g);

// The positive-definite lattice of a diagram: flow lattice of its black graph.
IntegralLattice diagram_lattice(const Diagram& d, FaceColor color = FaceColor::Black);

}  // namespace dlat
