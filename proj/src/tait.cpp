#include "dlat/tait.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "dlat/errors.hpp"

namespace dlat {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void join(int a, int b) { parent[find(a)] = find(b); }
};

int count_components(int n, const std::vector<std::pair<int, int>>& edges) {
  UnionFind uf(n);
  for (auto [a, b] : edges) uf.join(a, b);
  int c = 0;
  for (int v = 0; v < n; ++v)
    if (uf.find(v) == v) ++c;
  return c;
}

void require_connected(const PlaneMultigraph& g) {
  if (g.vertex_count == 0 || !g.is_connected()) throw Error(ErrorCode::Disconnected, "graph is not connected");
}

// Builds the Tait graph whose vertices are the faces with corners of parity
// `parity`; crossing c joins its corner `parity` face to its corner `parity+2` face.
PlaneMultigraph tait_from_faces(const Diagram& d, int parity) {
  PlaneMultigraph g;
  const int n = d.crossings();
  g.edges.assign(n, {-1, -1});
  for (const auto& face : d.faces) {
    if (face.front().position % 2 != parity) continue;
    const int v = g.vertex_count++;
    std::vector<EdgeEnd> rot;
    for (const Corner& c : face) {
      const int end = c.position == parity ? 0 : 1;
      (end == 0 ? g.edges[c.crossing].first : g.edges[c.crossing].second) = v;
      rot.push_back(EdgeEnd{c.crossing, end});
    }
    g.rotations.push_back(std::move(rot));
  }
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// Diagrams

Diagram parse_pd(const PdCode& code, bool require_alternating) {
  if (code.empty()) throw Error(ErrorCode::MalformedCode, "empty PD code");
  const int n = static_cast<int>(code.size());
  std::map<Int, std::vector<Corner>> occurrences;
  for (int c = 0; c < n; ++c)
    for (int j = 0; j < 4; ++j) occurrences[code[c][j]].push_back(Corner{c, j});
  for (const auto& [label, occ] : occurrences) {
    if (occ.size() != 2) {
      throw Error(ErrorCode::MalformedCode,
                  "arc " + std::to_string(label) + " occurs " + std::to_string(occ.size()) + " times");
    }
  }
  // Partner of each dart (crossing, position).
  std::vector<std::array<Corner, 4>> partner(n);
  std::vector<std::pair<int, int>> arcs;
  Diagram d;
  d.pd = code;
  for (const auto& [label, occ] : occurrences) {
    partner[occ[0].crossing][occ[0].position] = occ[1];
    partner[occ[1].crossing][occ[1].position] = occ[0];
    arcs.emplace_back(occ[0].crossing, occ[1].crossing);
    // Each arc runs from an under position to an over position.
    if ((occ[0].position % 2) == (occ[1].position % 2)) d.alternating = false;
  }
  if (require_alternating && !d.alternating) throw Error(ErrorCode::NotAlternating, "diagram is not alternating");
  d.components = count_components(n, arcs);
  d.connected = d.components == 1;

  // Faces: leave along position j, arrive at (c', j'), continue from j'+1.
  std::vector<std::array<bool, 4>> seen(n, {false, false, false, false});
  for (int c = 0; c < n; ++c) {
    for (int j = 0; j < 4; ++j) {
      if (seen[c][j]) continue;
      std::vector<Corner> face;
      Corner cur{c, j};
      while (!seen[cur.crossing][cur.position]) {
        seen[cur.crossing][cur.position] = true;
        const Corner next = partner[cur.crossing][cur.position];
        face.push_back(Corner{next.crossing, next.position});
        cur = Corner{next.crossing, (next.position + 1) % 4};
      }
      d.faces.push_back(std::move(face));
    }
  }
  const int faces = static_cast<int>(d.faces.size());
  if (n - 2 * n + faces != 2 * d.components) {
    throw Error(ErrorCode::NonPlanar, "V - E + F = " + std::to_string(faces - n) + " for " +
                                          std::to_string(d.components) + " component(s)");
  }
  bool coherent = true;
  for (const auto& face : d.faces)
    for (const Corner& c : face)
      if (c.position % 2 != face.front().position % 2) coherent = false;
  if (!coherent) {
    d.alternating = false;
    if (require_alternating) throw Error(ErrorCode::NotAlternating, "face corners do not alternate");
  }
  if (d.alternating && d.connected) {
    PlaneMultigraph black = tait_from_faces(d, 0);
    d.reduced = !has_loop(black) && !has_bridge(black);
  } else {
    d.reduced = false;
  }
  return d;
}

Checkerboard checkerboard(const Diagram& d) {
  if (!d.alternating) throw Error(ErrorCode::NotAlternating, "diagram is not alternating");
  if (!d.connected) throw Error(ErrorCode::Disconnected, "diagram is not connected");
  Checkerboard cb{tait_from_faces(d, 0), tait_from_faces(d, 1)};
  validate(cb.black);
  validate(cb.white);
  return cb;
}

const PlaneMultigraph& tait_graph(const Checkerboard& cb, FaceColor color) {
  return color == FaceColor::Black ? cb.black : cb.white;
}

IntegralLattice diagram_lattice(const Diagram& d, FaceColor color) {
  return flow_lattice(tait_graph(checkerboard(d), color)).lattice;
}

// ---------------------------------------------------------------------------
// Plane multigraphs

std::vector<std::vector<EdgeEnd>> PlaneMultigraph::faces() const {
  // Position of each end in its rotation.
  std::map<EdgeEnd, std::pair<int, int>> where;
  for (int v = 0; v < vertex_count; ++v)
    for (int k = 0; k < static_cast<int>(rotations[v].size()); ++k) where[rotations[v][k]] = {v, k};
  std::vector<std::vector<EdgeEnd>> out;
  std::set<EdgeEnd> seen;
  for (int v = 0; v < vertex_count; ++v) {
    if (rotations[v].empty()) {
      out.push_back({});  // isolated vertex bounds one face
      continue;
    }
    for (const EdgeEnd& start : rotations[v]) {
      if (seen.count(start)) continue;
      std::vector<EdgeEnd> face;
      EdgeEnd cur = start;
      while (!seen.count(cur)) {
        seen.insert(cur);
        face.push_back(cur);
        auto [w, k] = where.at(EdgeEnd{cur.edge, 1 - cur.end});
        cur = rotations[w][(k + 1) % rotations[w].size()];
      }
      out.push_back(std::move(face));
    }
  }
  return out;
}

bool PlaneMultigraph::is_connected() const {
  return vertex_count > 0 && count_components(vertex_count, edges) == 1;
}

void validate(const PlaneMultigraph& g) {
  if (g.vertex_count < 0 || static_cast<int>(g.rotations.size()) != g.vertex_count) {
    throw Error(ErrorCode::BadInput, "rotation system has the wrong number of vertices");
  }
  std::set<EdgeEnd> ends;
  for (int v = 0; v < g.vertex_count; ++v) {
    for (const EdgeEnd& e : g.rotations[v]) {
      if (e.edge < 0 || e.edge >= g.edge_count() || (e.end != 0 && e.end != 1)) {
        throw Error(ErrorCode::BadInput, "rotation refers to a missing edge end");
      }
      const int at = e.end == 0 ? g.edges[e.edge].first : g.edges[e.edge].second;
      if (at != v) throw Error(ErrorCode::BadInput, "edge end listed at the wrong vertex");
      if (!ends.insert(e).second) throw Error(ErrorCode::BadInput, "edge end listed twice");
    }
  }
  if (static_cast<int>(ends.size()) != 2 * g.edge_count()) throw Error(ErrorCode::BadInput, "edge end missing from rotations");
  for (auto [a, b] : g.edges)
    if (a < 0 || b < 0 || a >= g.vertex_count || b >= g.vertex_count) throw Error(ErrorCode::BadInput, "edge endpoint out of range");
  const int components = g.vertex_count == 0 ? 0 : count_components(g.vertex_count, g.edges);
  const int f = static_cast<int>(g.faces().size());
  // Each component contributes V_i - E_i + F_i = 2; isolated vertices count one face each.
  if (g.vertex_count - g.edge_count() + f != 2 * components) {
    throw Error(ErrorCode::NonPlanar, "rotation system does not describe a plane embedding");
  }
}

FlowLattice flow_lattice(const PlaneMultigraph& g) {
  require_connected(g);
  const int n = g.vertex_count, m = g.edge_count();
  // BFS tree: parent edge and parent vertex.
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int e = 0; e < m; ++e) {
    adj[g.edges[e].first].emplace_back(e, g.edges[e].second);
    adj[g.edges[e].second].emplace_back(e, g.edges[e].first);
  }
  std::vector<int> parent_edge(n, -1), parent(n, -1), depth(n, -1);
  std::vector<bool> tree_edge(m, false);
  std::queue<int> q;
  q.push(0);
  depth[0] = 0;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (auto [e, w] : adj[v]) {
      if (depth[w] >= 0) continue;
      depth[w] = depth[v] + 1;
      parent[w] = v;
      parent_edge[w] = e;
      tree_edge[e] = true;
      q.push(w);
    }
  }
  // Walking v -> parent[v] along parent_edge[v]; sign +1 when that is the edge's direction.
  auto step_sign = [&](int v) { return g.edges[parent_edge[v]].first == v ? 1 : -1; };
  IntMatrix basis;
  for (int e = 0; e < m; ++e) {
    if (tree_edge[e]) continue;
    IntVec cyc(m, 0);
    // Edge e from a to b, then b back up to a through the tree.
    int a = g.edges[e].first, b = g.edges[e].second;
    cyc[e] += 1;
    int x = b, y = a;
    while (x != y) {
      if (depth[x] >= depth[y]) {
        cyc[parent_edge[x]] += step_sign(x);
        x = parent[x];
      } else {
        cyc[parent_edge[y]] -= step_sign(y);
        y = parent[y];
      }
    }
    basis.push_back(std::move(cyc));
  }
  IntMatrix gram = multiply_transpose(basis, basis);
  return FlowLattice{lattice_from_gram(std::move(gram)), std::move(basis)};
}

IntMatrix cut_generators(const PlaneMultigraph& g) {
  IntMatrix stars;
  for (int v = 0; v + 1 < g.vertex_count; ++v) {
    IntVec s(g.edge_count(), 0);
    for (int e = 0; e < g.edge_count(); ++e) {
      if (g.edges[e].first == g.edges[e].second) continue;
      if (g.edges[e].first == v) s[e] = 1;
      if (g.edges[e].second == v) s[e] = -1;
    }
    stars.push_back(std::move(s));
  }
  return stars;
}

IntegralLattice cut_lattice(const PlaneMultigraph& g) {
  require_connected(g);
  IntMatrix stars = cut_generators(g);
  return lattice_from_gram(multiply_transpose(stars, stars));
}

PlaneMultigraph planar_dual(const PlaneMultigraph& g) {
  validate(g);
  auto faces = g.faces();
  PlaneMultigraph d;
  d.vertex_count = static_cast<int>(faces.size());
  d.edges.assign(g.edge_count(), {-1, -1});
  d.rotations.assign(faces.size(), {});
  for (int f = 0; f < d.vertex_count; ++f) {
    for (const EdgeEnd& e : faces[f]) {
      (e.end == 0 ? d.edges[e.edge].first : d.edges[e.edge].second) = f;
      d.rotations[f].push_back(e);
    }
  }
  validate(d);
  return d;
}

BigInt spanning_tree_count(const PlaneMultigraph& g) {
  require_connected(g);
  const int n = g.vertex_count;
  if (n == 1) return 1;
  IntMatrix lap(n - 1, IntVec(n - 1, 0));
  for (auto [a, b] : g.edges) {
    if (a == b) continue;
    if (a < n - 1) ++lap[a][a];
    if (b < n - 1) ++lap[b][b];
    if (a < n - 1 && b < n - 1) {
      --lap[a][b];
      --lap[b][a];
    }
  }
  return determinant(lap);
}

bool has_loop(const PlaneMultigraph& g) {
  return std::any_of(g.edges.begin(), g.edges.end(), [](const auto& e) { return e.first == e.second; });
}

bool has_bridge(const PlaneMultigraph& g) {
  const int base = count_components(g.vertex_count, g.edges);
  for (int e = 0; e < g.edge_count(); ++e) {
    if (g.edges[e].first == g.edges[e].second) continue;
    auto rest = g.edges;
    rest.erase(rest.begin() + e);
    if (count_components(g.vertex_count, rest) != base) return true;
  }
  return false;
}

}  // namespace dlat
