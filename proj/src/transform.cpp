#include "msens/transform.hpp"

#include <algorithm>

namespace msens {

void validate_bundle(const Multigraph& g, const EdgeBundle& b) {
  require(b.anchor >= 0 && b.anchor < g.n(), "bundle anchor out of range");
  require(!b.edges.empty(), "empty edge bundle");
  for (int id : b.edges) {
    require(g.has_edge(id), "bundle edge does not exist");
    const Edge& e = g.edge(id);
    require(e.u == b.anchor || e.v == b.anchor, "bundle edge misses the anchor");
  }
}

Strip build_strip_above(const Multigraph& g, const std::vector<int>& a_side, int t) {
  require(!a_side.empty(), "empty side");
  require(t >= 0 && t < g.n(), "vertex out of range");
  std::vector<char> in(g.n(), 0);
  for (int v : a_side) {
    require(v >= 0 && v < g.n(), "vertex out of range");
    in[v] = 1;
  }
  require(!in[t], "t lies in A");
  int c = cut_value_mask(g, in);
  bool is_mincut = false;
  for (int s : a_side)
    if (max_flow_value(g, s, t) == c) {
      is_mincut = true;
      break;
    }
  require(is_mincut, "A is not an (s,t)-mincut side");
  return build_strip(g, a_side, {t});
}

namespace {

// Node holding the far endpoint of each bundle edge.
std::vector<int> far_nodes(const Multigraph& g, const Strip& st, const EdgeBundle& b) {
  std::vector<int> out;
  for (int id : b.edges) out.push_back(st.node_of[g.edge(id).other(b.anchor)]);
  return out;
}

}  // namespace

BundleSide bundle_side(const Multigraph& g, const Strip& st, const EdgeBundle& b) {
  validate_bundle(g, b);
  int y = st.node_of[b.anchor];
  require(y != st.source(), "bundle anchor lies in A");
  bool toward_s = false, toward_t = false;
  for (int x : far_nodes(g, st, b)) {
    if (x == y) return BundleSide::Split;  // an edge no strip cut can reach
    // Arcs follow the topological numbering, so smaller nodes are upstream.
    (x < y ? toward_s : toward_t) = true;
  }
  if (toward_s && toward_t) return BundleSide::Split;
  return toward_s ? BundleSide::Source : BundleSide::Sink;
}

std::vector<int> bundle_region(const Multigraph& g, const Strip& st, const EdgeBundle& b) {
  BundleSide side = bundle_side(g, st, b);
  require(side != BundleSide::Split, "bundle spans both sides of its node");
  std::vector<int> from =
      side == BundleSide::Source ? far_nodes(g, st, b) : std::vector<int>{st.node_of[b.anchor]};
  std::vector<int> out;
  for (int x : cone(st, from, Toward::Source))
    if (x != st.source()) out.push_back(x);
  return out;
}

TransformResult transform_edge_bundle(const Multigraph& g, const Strip& st, const EdgeBundle& b) {
  TransformResult res;
  if (bundle_side(g, st, b) == BundleSide::Split) return res;
  res.feasible = true;
  std::vector<char> region(st.num_nodes(), 0);
  for (int x : bundle_region(g, st, b)) region[x] = 1;
  for (int a : st.out_arcs[st.source()])
    if (region[st.arcs[a].head]) res.edges_on_a.push_back(st.arcs[a].edge);
  for (int id : b.edges)
    if (st.node_of[g.edge(id).other(b.anchor)] == st.source()) res.edges_on_a.push_back(id);
  std::sort(res.edges_on_a.begin(), res.edges_on_a.end());
  res.edges_on_a.erase(std::unique(res.edges_on_a.begin(), res.edges_on_a.end()),
                       res.edges_on_a.end());
  return res;
}

Cut lift_cut(const Multigraph& g, const Strip& st, const Cut& cut, const EdgeBundle& b) {
  TransformResult tr = transform_edge_bundle(g, st, b);
  require(tr.feasible, "bundle cannot be cut by any (r,s)-mincut");
  std::vector<char> in(g.n(), 0);
  for (int v : cut.side) {
    require(v >= 0 && v < g.n(), "vertex out of range");
    in[v] = 1;
  }
  int t = st.members[st.sink()].front();
  if (in[t])
    for (auto& c : in) c = !c;
  for (int id : tr.edges_on_a) {
    const Edge& e = g.edge(id);
    require(in[e.u] != in[e.v], "cut misses an edge of the transformed set");
  }
  int before = cut_value_mask(g, in);
  for (int x : bundle_region(g, st, b))
    for (int v : st.members[x]) in[v] = 1;
  Cut out = make_cut(g, in);
  check_internal(out.value == before, "lifted cut changed value");
  for (int id : b.edges) {
    const Edge& e = g.edge(id);
    check_internal(in[e.u] != in[e.v], "lifted cut misses a bundle edge");
  }
  return out;
}

std::vector<int> source_side_edges(const Multigraph& g, const Strip& st, int y) {
  require(y >= 0 && y < g.n(), "vertex out of range");
  int x = st.node_of[y];
  std::vector<int> out;
  if (x == st.source()) return out;
  for (int a : st.in_arcs[x]) {
    const Edge& e = g.edge(st.arcs[a].edge);
    if (e.u == y || e.v == y) out.push_back(e.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> nearest_witness_edges(const Multigraph& g, const Strip& st, int y) {
  require(y >= 0 && y < g.n(), "vertex out of range");
  require(st.node_of[y] != st.source(), "y lies in A");
  std::vector<char> region(st.num_nodes(), 0);
  for (int x : cone(st, {st.node_of[y]}, Toward::Source)) region[x] = 1;
  std::vector<int> out;
  for (int a : st.out_arcs[st.source()])
    if (region[st.arcs[a].head]) out.push_back(st.arcs[a].edge);
  std::sort(out.begin(), out.end());
  return out;
}

bool nearest_check_local(const Multigraph& g, const Strip& st, int y, int s,
                         bool nearest_in_quotient, const ContainsQuery& contains) {
  require(y >= 0 && y < g.n() && s >= 0 && s < g.n(), "vertex out of range");
  if (y == s) return true;
  require(st.node_of[y] != st.source(), "y lies in A");
  if (!nearest_in_quotient) return false;
  // The sink terminal always stays with s.
  if (st.node_of[y] == st.sink()) return true;
  return !contains(nearest_witness_edges(g, st, y));
}

ThreeVertexReport three_vertex_assertions(const Multigraph& g, const std::vector<char>& a_side,
                                          const std::vector<char>& b_side, int s, int r, int t) {
  const int n = g.n();
  require(static_cast<int>(a_side.size()) == n && static_cast<int>(b_side.size()) == n,
          "side masks have the wrong length");
  ThreeVertexReport rep;
  rep.no_diagonal = true;
  for (const Edge& e : g.edges()) {
    auto diag = [&](int p, int q) { return !a_side[p] && b_side[p] && a_side[q] && !b_side[q]; };
    if (diag(e.u, e.v) || diag(e.v, e.u)) rep.no_diagonal = false;
  }
  std::vector<char> inner(n), outer(n);
  for (int v = 0; v < n; ++v) {
    inner[v] = a_side[v] && b_side[v];
    outer[v] = !a_side[v] && !b_side[v];
  }
  int crs = max_flow_value(g, r, s), cst = max_flow_value(g, s, t), crt = max_flow_value(g, r, t);
  rep.inner_is_mincut = inner[r] && !inner[s] && cut_value_mask(g, inner) == crs;
  int co = cut_value_mask(g, outer);
  rep.outer_is_mincut = outer[t] && !outer[s] && !outer[r] && co == cst && co == crt;
  return rep;
}

}  // namespace msens
