#include "msens/compact.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <tuple>

#include "msens/serialize.hpp"
#include "msens/tree_index.hpp"

namespace msens {

namespace {

long long pair_key(int x, int y) {
  if (x > y) std::swap(x, y);
  return static_cast<long long>(x) << 32 | static_cast<unsigned>(y);
}

// Vertices of every compact graph are numbered by smallest original vertex,
// so a vertex standing alone is found by binary search.
int singleton_of(const Multigraph& g, int orig) {
  int lo = 0, hi = g.n() - 1;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (g.min_origin(mid) < orig)
      lo = mid + 1;
    else
      hi = mid;
  }
  check_internal(g.origin(lo).size() == 1 && g.min_origin(lo) == orig,
                 "Steiner vertex is not a singleton of the compact graph");
  return lo;
}

// Skeleton tree neighbor of `nu` toward cactus node x, or -1 for x == nu.
int branch(const TreeIndex& tr, int nu, int x) { return x == nu ? -1 : tr.next_on_path(nu, x); }

int contracted_at(const std::vector<ContractedVertex>& cs, int neighbor) {
  auto it = std::lower_bound(cs.begin(), cs.end(), neighbor,
                             [](const ContractedVertex& c, int w) { return c.neighbor < w; });
  check_internal(it != cs.end() && it->neighbor == neighbor, "unknown skeleton neighbor");
  return static_cast<int>(it - cs.begin());
}

// Contracted vertex index for one unit of the parent carcass, or -1 if the
// unit stays. Terminal units follow their node; a stretched unit follows
// its path, preferring a path end at `nu`'s far side and otherwise the
// lesser-ranked of the two subcactuses it touches.
int route_unit(const Carcass& c, int nu, int u, const std::vector<ContractedVertex>& cs) {
  const TreeIndex& tr = c.skeleton.tree;
  if (c.units.terminal[u]) {
    int b = branch(tr, nu, c.skeleton.node_of_unit[u]);
    return b < 0 ? -1 : contracted_at(cs, b);
  }
  int ga = branch(tr, nu, c.proj[u].a), gb = branch(tr, nu, c.proj[u].b);
  if (ga == gb) return ga < 0 ? -1 : contracted_at(cs, ga);
  if (ga < 0) return contracted_at(cs, gb);
  if (gb < 0) return contracted_at(cs, ga);
  int ia = contracted_at(cs, ga), ib = contracted_at(cs, gb);
  return cs[ia].rank < cs[ib].rank ? ia : ib;
}

}  // namespace

enum class StepKind { Keep, Transform, Replace };

struct CompactOracle::Step {
  int parent_slot = -1;
  int child_slot = -1;
  StepKind kind = StepKind::Keep;
  int v_parent = -1;  // tracked vertex above the step
  Strip d;            // strip above the absorbing contracted vertex
  EdgeBundle before;  // carried bundle above a Transform step
};

struct CompactOracle::Descent {
  std::vector<Step> steps;
  int v = -1;  // tracked vertex in the last graph
  std::optional<EdgeBundle> e;
  bool infeasible = false;
};

CompactNode CompactOracle::contract_child(int parent_slot, int hnode) const {
  const CompactNode& p = nodes_[parent_slot];
  const Carcass& c = p.carcass;
  const Skeleton& sk = c.skeleton;
  const TreeIndex& tr = sk.tree;
  CompactNode child;
  child.hnode = hnode;
  child.parent_slot = parent_slot;
  for (int v : h_.node(hnode).steiner) {
    int x = c.node_of_vertex(singleton_of(p.graph, v));
    check_internal(x >= 0 && (child.nu < 0 || x == child.nu),
                   "child Steiner set spans several skeleton nodes");
    child.nu = x;
  }
  const int nu = child.nu;
  std::vector<int> nbrs = tr.children(nu);
  if (tr.parent(nu) >= 0) nbrs.push_back(tr.parent(nu));
  std::sort(nbrs.begin(), nbrs.end());
  const int k = static_cast<int>(nbrs.size());
  for (int w : nbrs) child.contracted.push_back({-1, w, -1});

  // Order: smallest original vertex in the subcactus's terminal units, then
  // tree edges before cycles, then neighbor id.
  constexpr int kNone = std::numeric_limits<int>::max();
  std::vector<int> least(k, kNone);
  for (int u = 0; u < c.units.size(); ++u) {
    if (!c.units.terminal[u]) continue;
    int b = branch(tr, nu, sk.node_of_unit[u]);
    if (b < 0) continue;
    int i = contracted_at(child.contracted, b);
    least[i] = std::min(least[i], p.graph.min_origin(c.units.members[u].front()));
  }
  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::make_tuple(least[a], sk.is_cycle_node(nbrs[a]), nbrs[a]) <
           std::make_tuple(least[b], sk.is_cycle_node(nbrs[b]), nbrs[b]);
  });
  for (int r = 0; r < k; ++r) child.contracted[order[r]].rank = r;

  std::vector<int> unit_to(c.units.size());
  for (int u = 0; u < c.units.size(); ++u) unit_to[u] = route_unit(c, nu, u, child.contracted);
  std::vector<std::vector<int>> groups(k);
  for (int v = 0; v < p.graph.n(); ++v) {
    int i = unit_to[c.units.unit_of[v]];
    if (i >= 0) groups[i].push_back(v);
  }
  for (const auto& grp : groups) check_internal(!grp.empty(), "empty subcactus");
  ContractResult r = contract_map(p.graph, groups);
  for (int i = 0; i < k; ++i) {
    child.contracted[i].vertex = r.new_of_old[groups[i].front()];
    check_internal(r.graph.degree(child.contracted[i].vertex) == c.value,
                   "contracted vertex degree differs from the parent value");
  }
  for (int v = 0; v < p.graph.n(); ++v)
    if (unit_to[c.units.unit_of[v]] < 0) child.kept.push_back({v, r.new_of_old[v]});
  child.graph = std::move(r.graph);
  return child;
}

void CompactOracle::assemble(const CarcassMaker& make_carcass) {
  slot_.assign(h_.size(), -1);
  nodes_.clear();
  stats_ = {};
  // Per slot and vertex: id of the contracted vertex it is, -1 for others.
  std::vector<std::vector<int>> cid;
  std::vector<int> appearances;
  for (int h : h_.internal_nodes()) {
    CompactNode node;
    std::vector<int> ids;
    if (h == h_.index().root()) {
      node.hnode = h;
      node.graph = g_;
      ids.assign(g_.n(), -1);
    } else {
      int ps = slot_[h_.node(h).parent];
      check_internal(ps >= 0, "parent of an internal node has no compact graph");
      node = contract_child(ps, h);
      ids.assign(node.graph.n(), -1);
      for (auto [pv, cv] : node.kept) ids[cv] = cid[ps][pv];
      for (ContractedVertex& cv : node.contracted) {
        ids[cv.vertex] = static_cast<int>(appearances.size());
        appearances.push_back(0);
      }
    }
    std::vector<int> steiner;
    for (int v : h_.node(h).steiner) steiner.push_back(singleton_of(node.graph, v));
    node.carcass = make_carcass(node, steiner);
    check_internal(node.carcass.value == h_.node(h).val,
                   "carcass value differs from the hierarchy value");

    const Carcass& c = node.carcass;
    ++stats_.internal_nodes;
    stats_.graph_vertices += node.graph.n();
    stats_.graph_edges += node.graph.m();
    stats_.units += c.units.size();
    stats_.contracted_vertices += static_cast<long long>(node.contracted.size());
    for (int u = 0; u < c.units.size(); ++u) {
      if (c.units.steiner[u]) {
        ++stats_.steiner_units;
        continue;
      }
      ++stats_.nonsteiner_units;
      for (int v : c.units.members[u]) {
        if (ids[v] >= 0) ++appearances[ids[v]];
        for (int pos : node.graph.incident(v)) {
          int w = node.graph.edge_at(pos).other(v);
          if (c.units.unit_of[w] != u) ++stats_.nonsteiner_degree;
        }
      }
    }
    slot_[h] = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(node));
    cid.push_back(std::move(ids));
  }
  for (int a : appearances) stats_.max_nonsteiner_appearances = std::max(stats_.max_nonsteiner_appearances, a);
  adjacent_.clear();
  for (const Edge& e : g_.edges()) adjacent_.insert(pair_key(e.u, e.v));
}

CompactOracle CompactOracle::build(const Multigraph& g, CarcassOptions opts) {
  require(g.n() >= 1, "empty graph");
  require(g.connected(), "graph is not connected");
  opts.keep_bunch_strips = false;
  CompactOracle o;
  o.g_ = g;
  o.h_ = build_hierarchy(build_gomory_hu(g));
  o.assemble([&](const CompactNode& node, const std::vector<int>& steiner) {
    return build_carcass(node.graph, steiner, opts);
  });
  return o;
}

const CompactNode& CompactOracle::node_at(int hnode) const {
  require(hnode >= 0 && hnode < h_.size() && slot_[hnode] >= 0, "not an internal hierarchy node");
  return nodes_[slot_[hnode]];
}

void CompactOracle::check_pair(int s, int t) const {
  require(s >= 0 && s < g_.n() && t >= 0 && t < g_.n(), "vertex out of range");
  require(s != t, "s == t");
}

int CompactOracle::value(int s, int t) const {
  check_pair(s, t);
  return h_.node(h_.lca_of_vertices(s, t)).val;
}

std::vector<int> CompactOracle::path_to(int s, int t) const {
  std::vector<int> path;
  for (int h = h_.lca_of_vertices(s, t); h >= 0; h = h_.node(h).parent) path.push_back(slot_[h]);
  std::reverse(path.begin(), path.end());
  return path;
}

int CompactOracle::route(const CompactNode& child, int v) const {
  auto it = std::lower_bound(child.kept.begin(), child.kept.end(), std::make_pair(v, -1));
  if (it != child.kept.end() && it->first == v) return -1;
  const Carcass& c = nodes_[child.parent_slot].carcass;
  int i = route_unit(c, child.nu, c.units.unit_of[v], child.contracted);
  check_internal(i >= 0, "vertex neither kept nor contracted");
  return i;
}

int CompactOracle::child_vertex(const CompactNode& child, int v) const {
  auto it = std::lower_bound(child.kept.begin(), child.kept.end(), std::make_pair(v, -1));
  if (it != child.kept.end() && it->first == v) return it->second;
  return child.contracted[route(child, v)].vertex;
}

std::vector<int> CompactOracle::child_map(const CompactNode& child) const {
  const CompactNode& p = nodes_[child.parent_slot];
  const Carcass& c = p.carcass;
  std::vector<int> unit_to(c.units.size());
  for (int u = 0; u < c.units.size(); ++u) unit_to[u] = route_unit(c, child.nu, u, child.contracted);
  std::vector<int> out(p.graph.n(), -1);
  for (int v = 0; v < p.graph.n(); ++v) {
    int i = unit_to[c.units.unit_of[v]];
    if (i >= 0) out[v] = child.contracted[i].vertex;
  }
  for (auto [pv, cv] : child.kept) out[pv] = cv;
  return out;
}

Strip CompactOracle::strip_above(const CompactNode& child, int contracted) const {
  const CompactNode& p = nodes_[child.parent_slot];
  const Carcass& c = p.carcass;
  std::vector<int> map = child_map(child);
  const int target = child.contracted[contracted].vertex;
  std::vector<char> a_side(p.graph.n());
  for (int v = 0; v < p.graph.n(); ++v) a_side[v] = map[v] != target;
  int z = -1;
  for (int v : c.steiner)
    if (!a_side[v]) {
      z = v;
      break;
    }
  check_internal(z >= 0, "contracted vertex holds no Steiner vertex");
  Strip st = strip_between(p.graph, c, child.nu, c.node_of_vertex(z));
  return merge_into_source(p.graph, st, a_side);
}

Strip CompactOracle::pair_strip(const CompactNode& node, int s, int t) const {
  const Carcass& c = node.carcass;
  return strip_between(node.graph, c, c.node_of_vertex(singleton_of(node.graph, s)),
                       c.node_of_vertex(singleton_of(node.graph, t)));
}

CompactOracle::Descent CompactOracle::descend(const std::vector<int>& path, int v,
                                              std::optional<EdgeBundle> e, bool nearest) const {
  Descent d;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const CompactNode& parent = nodes_[path[i]];
    const CompactNode& child = nodes_[path[i + 1]];
    Step step;
    step.parent_slot = path[i];
    step.child_slot = path[i + 1];
    step.v_parent = v;
    ops::tick();
    int k = route(child, v);
    int vc = child_vertex(child, v);
    if (k < 0) {
      if (e) e->anchor = vc;
    } else if (e || nearest) {
      step.d = strip_above(child, k);
      std::optional<EdgeBundle> next;
      if (e) {
        TransformResult tr = transform_edge_bundle(parent.graph, step.d, *e);
        if (tr.feasible) {
          step.kind = StepKind::Transform;
          step.before = *e;
          next = EdgeBundle{vc, std::move(tr.edges_on_a)};
        } else if (!nearest) {
          d.infeasible = true;
          return d;
        }
      }
      // A vertex in the sink of the strip above is nearest exactly when its
      // contracted vertex is; otherwise the witness edges decide.
      if (nearest && !next && step.d.node_of[v] != step.d.sink()) {
        step.kind = StepKind::Replace;
        next = EdgeBundle{vc, nearest_witness_edges(parent.graph, step.d, v)};
      }
      e = std::move(next);
    }
    v = vc;
    d.steps.push_back(std::move(step));
  }
  d.v = v;
  d.e = std::move(e);
  return d;
}

std::vector<char> CompactOracle::lift(const std::vector<Step>& steps, int from, int to,
                                      std::vector<char> mask) const {
  for (int i = from - 1; i >= to; --i) {
    const Step& st = steps[i];
    const CompactNode& parent = nodes_[st.parent_slot];
    std::vector<int> map = child_map(nodes_[st.child_slot]);
    std::vector<char> up(parent.graph.n());
    for (int v = 0; v < parent.graph.n(); ++v) up[v] = mask[map[v]];
    if (st.kind == StepKind::Transform) {
      Cut cut = lift_cut(parent.graph, st.d, make_cut(parent.graph, up), st.before);
      std::fill(up.begin(), up.end(), 0);
      for (int v : cut.side) up[v] = 1;
    }
    mask = std::move(up);
  }
  return mask;
}

std::vector<char> CompactOracle::expand(const CompactNode& node, const std::vector<char>& mask) const {
  std::vector<char> out(g_.n(), 0);
  for (int v = 0; v < node.graph.n(); ++v)
    if (mask[v])
      for (int o : node.graph.origin(v)) out[o] = 1;
  return out;
}

Cut CompactOracle::oriented(std::vector<char> mask, int s) const {
  if (!mask[s])
    for (char& b : mask) b = !b;
  return make_cut(g_, mask);
}

std::optional<Cut> CompactOracle::edge_contained(int s, int t, const EdgeBundle& b) const {
  check_pair(s, t);
  validate_bundle(g_, b);
  std::vector<int> path = path_to(s, t);
  Descent d = descend(path, b.anchor, b, false);
  if (d.infeasible) return std::nullopt;
  const CompactNode& last = nodes_[path.back()];
  Strip st = pair_strip(last, s, t);
  std::vector<int> nodes;
  ops::tick();
  if (!common_mincut(st, last.graph, d.e->edges, &nodes)) return std::nullopt;
  std::vector<char> mask = nodes_to_mask(last.graph, st, nodes);
  mask = lift(d.steps, static_cast<int>(d.steps.size()), 0, std::move(mask));
  Cut out = oriented(std::move(mask), s);
  std::vector<char> in(g_.n(), 0);
  for (int v : out.side) in[v] = 1;
  bool all_cut = true;
  for (int id : b.edges) all_cut = all_cut && in[g_.edge(id).u] != in[g_.edge(id).v];
  check_internal(out.value == st.value && !in[t] && all_cut,
                 "lifted cut is not a mincut containing the bundle");
  return out;
}

int CompactOracle::ft_value(int s, int t, int x, int y) const {
  check_pair(s, t);
  require(x >= 0 && x < g_.n() && y >= 0 && y < g_.n(), "vertex out of range");
  require(adjacent_.count(pair_key(x, y)) > 0, "no such edge");
  int id = g_.edges_between(x, y).front();
  return value(s, t) - (edge_contained(s, t, EdgeBundle{x, {id}}) ? 1 : 0);
}

Cut CompactOracle::report_ft_cut(int s, int t, int x, int y) const {
  check_pair(s, t);
  require(x >= 0 && x < g_.n() && y >= 0 && y < g_.n(), "vertex out of range");
  require(adjacent_.count(pair_key(x, y)) > 0, "no such edge");
  auto cut = edge_contained(s, t, EdgeBundle{x, {g_.edges_between(x, y).front()}});
  if (!cut) throw NotContained("edge lies in no (s,t)-mincut");
  return *cut;
}

bool CompactOracle::check_nearest(int s, int t, int y) const {
  check_pair(s, t);
  require(y >= 0 && y < g_.n(), "vertex out of range");
  if (y == s) return true;
  if (y == t) return false;
  std::vector<int> path = path_to(s, t);
  Descent d = descend(path, y, std::nullopt, true);
  const CompactNode& last = nodes_[path.back()];
  const Carcass& c = last.carcass;
  ops::tick(3);
  if (!c.in_nearest(singleton_of(last.graph, s), singleton_of(last.graph, t), d.v)) return false;
  if (!d.e) return true;
  return !common_mincut(pair_strip(last, s, t), last.graph, d.e->edges, nullptr);
}

int CompactOracle::in_value(int s, int t, int x, int y) const {
  check_pair(s, t);
  require(x >= 0 && x < g_.n() && y >= 0 && y < g_.n(), "vertex out of range");
  require(x != y, "inserted edge would be a self-loop");
  bool up = (check_nearest(s, t, x) && check_nearest(t, s, y)) ||
            (check_nearest(s, t, y) && check_nearest(t, s, x));
  return value(s, t) + (up ? 1 : 0);
}

std::optional<Cut> CompactOracle::in_cut_via_witness(int s, int t, int free, int other) const {
  check_pair(s, t);
  std::vector<int> path = path_to(s, t);
  Descent d = descend(path, free, std::nullopt, true);
  if (!d.e) return std::nullopt;
  const CompactNode& last = nodes_[path.back()];
  Strip st = pair_strip(last, s, t);
  std::vector<int> nodes;
  if (!common_mincut(st, last.graph, d.e->edges, &nodes)) return std::nullopt;
  int star = static_cast<int>(d.steps.size()) - 1;
  while (star >= 0 && d.steps[star].kind != StepKind::Replace) --star;
  check_internal(star >= 0, "witness set without a re-anchoring step");
  const Step& rs = d.steps[star];
  const CompactNode& top = nodes_[rs.parent_slot];
  const Multigraph& gt = top.graph;

  // B: a mincut cutting every witness edge, on the side away from the sink
  // of the strip above. Adding the witness region keeps it a mincut; so
  // does dropping the tracked vertex's own node from that union.
  std::vector<char> below = lift(d.steps, static_cast<int>(d.steps.size()), star + 1,
                                 nodes_to_mask(last.graph, st, nodes));
  std::vector<int> map = child_map(nodes_[rs.child_slot]);
  std::vector<char> b(gt.n());
  for (int v = 0; v < gt.n(); ++v) b[v] = below[map[v]];
  if (b[rs.d.members[rs.d.sink()].front()])
    for (char& x : b) x = !x;
  int home = rs.d.node_of[rs.v_parent];
  std::vector<int> region = cone(rs.d, {home}, Toward::Source);
  std::vector<char> c1 = b;
  for (int x : region)
    if (x != rs.d.source())
      for (int v : rs.d.members[x]) c1[v] = 1;
  std::vector<char> c2 = c1;
  for (int v : rs.d.members[home]) c2[v] = 0;
  for (const auto& cand : {c1, c2}) {
    std::vector<char> mask = expand(top, cand);
    if (mask[s] == mask[t] || mask[free] != mask[other]) continue;
    Cut cut = oriented(std::move(mask), s);
    if (cut.value == st.value) return cut;
  }
  return std::nullopt;
}

Cut CompactOracle::report_in_cut(int s, int t, int x, int y) const {
  check_pair(s, t);
  require(x >= 0 && x < g_.n() && y >= 0 && y < g_.n() && x != y, "invalid inserted edge");
  std::vector<int> path = path_to(s, t);
  const CompactNode& last = nodes_[path.back()];
  Strip st = pair_strip(last, s, t);
  const int c = st.value;
  auto from_nodes = [&](const std::vector<int>& nodes) {
    return oriented(expand(last, nodes_to_mask(last.graph, st, nodes)), s);
  };
  if (in_value(s, t, x, y) > c) return from_nodes({st.source()});

  // Mincuts of the split node's graph are mincuts of the input graph; try
  // the ones keeping both images together first.
  int xl = descend(path, x, std::nullopt, false).v, yl = descend(path, y, std::nullopt, false).v;
  int nx = st.node_of[xl], ny = st.node_of[yl];
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
    Cut cut = from_nodes(nodes);
    std::vector<char> in(g_.n(), 0);
    for (int v : cut.side) in[v] = 1;
    if (in[x] != in[y]) continue;
    check_internal(cut.value == c, "insertion candidate is not a mincut");
    return cut;
  }
  // Otherwise a contracted vertex hides the split; rebuild around the last
  // re-anchoring step, from either end and for either endpoint.
  for (auto [a, b] : {std::pair{s, t}, std::pair{t, s}})
    for (auto [f, o] : {std::pair{x, y}, std::pair{y, x}})
      if (auto cut = in_cut_via_witness(a, b, f, o)) {
        std::vector<char> m(g_.n(), 0);
        for (int v : cut->side) m[v] = 1;
        return oriented(std::move(m), s);
      }
  throw InternalError("no old mincut keeps the inserted edge inside one side");
}

void CompactOracle::save(std::ostream& out) const {
  out << "msens-oracle " << kDumpVersion << " compact\n";
  dump_graph(out, g_);
  dump_hierarchy(out, h_);
  for (const CompactNode& node : nodes_) {
    out << "node " << node.hnode << '\n';
    dump_carcass(out, node.carcass);
  }
  out << "end\n";
}

CompactOracle CompactOracle::load(std::istream& in) {
  DumpReader r(in);
  r.expect("msens-oracle");
  if (r.next_int() != kDumpVersion) r.fail("unsupported dump version");
  if (r.next_word() != "compact") r.fail("not a compact oracle dump");
  CompactOracle o;
  o.g_ = load_graph(r);
  if (!o.g_.connected()) r.fail("graph is not connected");
  o.h_ = load_hierarchy(r);
  if (o.h_.index().size() != o.h_.size()) r.fail("hierarchy is not a tree");
  // Child graphs are replayed from the parent carcasses as they load; a
  // carcass that does not fit its graph is a bad dump, not a bug.
  try {
    o.assemble([&](const CompactNode& node, const std::vector<int>& steiner) {
      r.expect("node");
      if (r.next_int() != node.hnode) r.fail("carcass for the wrong hierarchy node");
      Carcass c = load_carcass(r, node.graph);
      if (c.steiner != steiner) r.fail("carcass Steiner set mismatch");
      return c;
    });
  } catch (const InternalError& e) {
    r.fail(e.what());
  } catch (const InvalidArgument& e) {
    r.fail(e.what());
  }
  r.expect("end");
  return o;
}

}  // namespace msens
