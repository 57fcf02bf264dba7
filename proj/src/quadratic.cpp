#include "msens/quadratic.hpp"

#include <algorithm>

#include "msens/tree_index.hpp"

namespace msens {

namespace {
long long pair_key(int x, int y) {
  if (x > y) std::swap(x, y);
  return static_cast<long long>(x) << 32 | static_cast<unsigned>(y);
}
}  // namespace

QuadraticOracle QuadraticOracle::build(const Multigraph& g, CarcassOptions opts) {
  require(g.n() >= 1, "empty graph");
  require(g.connected(), "graph is not connected");
  opts.keep_bunch_strips = false;
  QuadraticOracle o;
  o.g_ = g;
  o.h_ = build_hierarchy(build_gomory_hu(g));
  o.slot_.assign(o.h_.size(), -1);
  for (int nu : o.h_.internal_nodes()) {
    o.slot_[nu] = static_cast<int>(o.carcass_.size());
    o.carcass_.push_back(build_carcass(g, o.h_.node(nu).steiner, opts));
    check_internal(o.carcass_.back().value == o.h_.node(nu).val,
                   "carcass value differs from the hierarchy value");
  }
  for (const Edge& e : g.edges()) o.adjacent_.insert(pair_key(e.u, e.v));
  return o;
}

const Carcass& QuadraticOracle::carcass_at(int hnode) const {
  require(hnode >= 0 && hnode < h_.size() && slot_[hnode] >= 0, "not an internal hierarchy node");
  return carcass_[slot_[hnode]];
}

void QuadraticOracle::check_pair(int s, int t) const {
  require(s >= 0 && s < g_.n() && t >= 0 && t < g_.n(), "vertex out of range");
  require(s != t, "s == t");
}

void QuadraticOracle::check_edge(int x, int y) const {
  require(x >= 0 && x < g_.n() && y >= 0 && y < g_.n(), "vertex out of range");
  require(adjacent_.count(pair_key(x, y)) > 0, "no such edge");
}

int QuadraticOracle::node_for(int s, int t) const { return h_.lca_of_vertices(s, t); }

int QuadraticOracle::value(int s, int t) const {
  check_pair(s, t);
  return h_.node(node_for(s, t)).val;
}

bool QuadraticOracle::edge_contained(int s, int t, int x, int y) const {
  check_pair(s, t);
  check_edge(x, y);
  const Carcass& c = carcass_[slot_[node_for(s, t)]];
  ops::tick(4);  // unit and projection reads for both endpoints
  return c.edge_contained(s, t, x, y);
}

int QuadraticOracle::ft_value(int s, int t, int x, int y) const {
  int nu = node_for(s, t);
  return h_.node(nu).val - (edge_contained(s, t, x, y) ? 1 : 0);
}

bool QuadraticOracle::in_nearest(int s, int t, int x) const {
  check_pair(s, t);
  require(x >= 0 && x < g_.n(), "vertex out of range");
  const Carcass& c = carcass_[slot_[node_for(s, t)]];
  ops::tick(3);  // unit, projection and node reads
  return c.in_nearest(s, t, x);
}

int QuadraticOracle::in_value(int s, int t, int x, int y) const {
  check_pair(s, t);
  require(x != y, "inserted edge would be a self-loop");
  int c = h_.node(node_for(s, t)).val;
  bool up = (in_nearest(s, t, x) && in_nearest(t, s, y)) || (in_nearest(s, t, y) && in_nearest(t, s, x));
  return c + (up ? 1 : 0);
}

namespace {

int tree_edge_index(const Skeleton& sk, int a, int b) {
  std::pair<int, int> key{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(sk.tree_edges.begin(), sk.tree_edges.end(), key);
  check_internal(it != sk.tree_edges.end() && *it == key, "missing tree edge");
  return static_cast<int>(it - sk.tree_edges.begin());
}

// Two edges of the cycle through tree node `cn` that separate both path
// (ps,pt) and path (ha,hb) at this cycle.
SkeletonCut cycle_cut(const Skeleton& sk, int cn, int ps, int pt, int ha, int hb) {
  const TreeIndex& tr = sk.tree;
  int c = sk.cycle_of(cn);
  int k = static_cast<int>(sk.cycles[c].size());
  int p = sk.position_in_cycle(c, tr.next_on_path(cn, ps));
  auto lin = [&](int node) { return (sk.position_in_cycle(c, tr.next_on_path(cn, node)) - p + k) % k; };
  int q = lin(pt), h1 = lin(ha), h2 = lin(hb);
  if (h1 > h2) std::swap(h1, h2);
  // Cycle positions in [l, r] go to the sink side. Among the valid choices
  // take the widest, so the source side stays closest to s.
  int l, r;
  if (h1 == 0 || q < h1) {
    l = 1;
    r = h1 == 0 ? k - 1 : h2 - 1;
  } else if (q >= h2) {
    l = h1 + 1;
    r = k - 1;
  } else if (q == h1 || h2 - 1 >= k - 1 - h1) {
    l = 1;
    r = h2 - 1;
  } else {
    l = h1 + 1;
    r = k - 1;
  }
  int e1 = (p + l - 1) % k, e2 = (p + r) % k;
  return {-1, c, std::min(e1, e2), std::max(e1, e2)};
}

}  // namespace

Cut QuadraticOracle::report_ft_cut(int s, int t, int x, int y) const {
  if (!edge_contained(s, t, x, y)) throw NotContained("edge lies in no (s,t)-mincut");
  const Carcass& c = carcass_[slot_[node_for(s, t)]];
  const Skeleton& sk = c.skeleton;
  const TreeIndex& tr = sk.tree;
  int ps = c.node_of_vertex(s), pt = c.node_of_vertex(t);
  NodePath h = c.edge_projection(x, y);
  auto inter = tr.path_intersection(ps, pt, h.a, h.b);
  check_internal(inter.has_value(), "contained edge without intersection");
  auto [i1, i2] = *inter;

  // First skeleton cut along the intersection, seen from s.
  SkeletonCut cut;
  if (sk.is_cycle_node(i1)) {
    cut = cycle_cut(sk, i1, ps, pt, h.a, h.b);
  } else {
    int nx = tr.next_on_path(i1, i2);
    if (sk.is_cycle_node(nx))
      cut = cycle_cut(sk, nx, ps, pt, h.a, h.b);
    else
      cut.tree_edge = tree_edge_index(sk, i1, nx);
  }
  std::vector<char> side = cut_sides(sk, cut, ps);

  const int nu = c.units.size();
  // 0: source side, 1: sink side, 2: crosses the cut.
  std::vector<int> grp(nu);
  for (int u = 0; u < nu; ++u) {
    if (c.units.terminal[u]) {
      grp[u] = side[sk.node_of_unit[u]] ? 0 : 1;
    } else {
      bool sa = side[c.proj[u].a], sb = side[c.proj[u].b];
      grp[u] = sa && sb ? 0 : (!sa && !sb ? 1 : 2);
    }
  }
  int ux = c.units.unit_of[x], uy = c.units.unit_of[y];
  check_internal(grp[ux] != grp[uy] || grp[ux] == 2, "failed edge does not cross the cut");
  int eid = g_.edges_between(x, y).front();
  int tail;
  if (grp[ux] == 2 || grp[uy] == 2) {
    int w = grp[ux] == 2 ? x : y;
    const NodePath& pw = c.proj[c.units.unit_of[w]];
    int toward = c.side_at(g_, eid, w) == 0 ? pw.a : pw.b;
    tail = side[toward] ? (w == x ? y : x) : w;
  } else {
    tail = grp[ux] == 0 ? x : y;
  }
  int ua = c.units.unit_of[tail];
  std::vector<char> keep(nu, 0);
  for (int u = 0; u < nu; ++u) keep[u] = grp[u] == 0;
  if (grp[ua] == 2) {
    const NodePath& pa = c.proj[ua];
    int sigma = side[pa.a] ? pa.a : pa.b;
    bool ascending = sigma == pa.a;
    for (int u = 0; u < nu; ++u) {
      if (grp[u] != 2) continue;
      if (c.proj[u] == pa)
        keep[u] = ascending ? c.tau[u] <= c.tau[ua] : c.tau[u] >= c.tau[ua];
      else
        keep[u] = extendable(sk, pa, sigma, c.proj[u]).has_value();
    }
  }
  std::vector<char> mask(g_.n(), 0);
  for (int v = 0; v < g_.n(); ++v) mask[v] = keep[c.units.unit_of[v]];
  Cut out = make_cut(g_, mask);
  check_internal(out.value == c.value && mask[x] != mask[y] && mask[s] && !mask[t],
                 "reported failure cut is not a mincut containing the edge");
  return out;
}

Strip QuadraticOracle::report_strip(int s, int t) const {
  check_pair(s, t);
  const Carcass& c = carcass_[slot_[node_for(s, t)]];
  return strip_between(g_, c, c.node_of_vertex(s), c.node_of_vertex(t));
}

Cut QuadraticOracle::report_in_cut(int s, int t, int x, int y) const {
  check_pair(s, t);
  require(x >= 0 && x < g_.n() && y >= 0 && y < g_.n() && x != y, "invalid inserted edge");
  Strip st = report_strip(s, t);
  int c = st.value;
  if (in_value(s, t, x, y) > c) return cut_from_prefix(g_, st, st.source());
  int nx = st.node_of[x], ny = st.node_of[y];
  std::vector<std::vector<int>> candidates;
  candidates.push_back({st.source()});
  std::vector<int> not_sink;
  for (int z = 0; z < st.sink(); ++z) not_sink.push_back(z);
  candidates.push_back(not_sink);
  if (nx != st.sink() && ny != st.sink()) candidates.push_back(cone(st, {nx, ny}, Toward::Source));
  if (nx != st.source() && ny != st.source()) {
    std::vector<int> down = cone(st, {nx, ny}, Toward::Sink), comp;
    std::vector<char> in(st.num_nodes(), 0);
    for (int z : down) in[z] = 1;
    for (int z = 0; z < st.num_nodes(); ++z)
      if (!in[z]) comp.push_back(z);
    candidates.push_back(comp);
  }
  for (const auto& nodes : candidates) {
    std::vector<char> mask = nodes_to_mask(g_, st, nodes);
    if (mask[x] != mask[y]) continue;
    Cut cut = make_cut(g_, mask);
    check_internal(cut.value == c, "insertion candidate is not a mincut");
    return cut;
  }
  throw InternalError("no old mincut keeps the inserted edge inside one side");
}

}  // namespace msens
