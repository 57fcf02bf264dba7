#include "msens/distributed.hpp"

#include <algorithm>
#include <set>

#include "msens/errors.hpp"
#include "msens/quadratic.hpp"
#include "msens/tree_index.hpp"

namespace msens {

int LabelShared::node_of(int h, int v) const {
  return node_in_parent[hierarchy.child_toward(h, v)];
}

const LabelEntry& VertexLabel::entry(int slot) const {
  ++reads;
  ops::tick();
  return entries[slot];
}

bool VertexLabel::adjacent(int v) const {
  return std::binary_search(neighbors.begin(), neighbors.end(), v);
}

std::vector<std::optional<VertexLabel>> build_labels(const Multigraph& g,
                                                     const std::optional<std::vector<int>>& only,
                                                     CarcassOptions opts) {
  std::vector<char> wanted(g.n(), only ? 0 : 1);
  if (only)
    for (int v : *only) {
      require(v >= 0 && v < g.n(), "label owner out of range");
      wanted[v] = 1;
    }
  opts.keep_bunch_strips = false;
  QuadraticOracle q = QuadraticOracle::build(g, opts);
  auto shared = std::make_shared<LabelShared>();
  shared->hierarchy = q.hierarchy();
  const HierarchyTree& h = shared->hierarchy;
  shared->slot.assign(h.size(), -1);
  shared->node_in_parent.assign(h.size(), -1);
  std::vector<const Carcass*> carcasses;
  for (int nu : h.internal_nodes()) {
    shared->slot[nu] = static_cast<int>(carcasses.size());
    const Carcass& c = q.carcass_at(nu);
    carcasses.push_back(&c);
    shared->skeletons.push_back(c.skeleton);
    for (int ch : h.node(nu).children)
      shared->node_in_parent[ch] = c.node_of_vertex(h.node(ch).steiner.front());
  }

  std::vector<std::optional<VertexLabel>> out(g.n());
  for (int v = 0; v < g.n(); ++v) {
    if (!wanted[v]) continue;
    VertexLabel lab;
    lab.owner = v;
    lab.shared = shared;
    for (const Carcass* c : carcasses) {
      int u = c->units.unit_of[v];
      lab.entries.push_back({u, c->proj[u]});
    }
    for (int pos : g.incident(v)) {
      const Edge& e = g.edge_at(pos);
      lab.neighbors.push_back(e.u == v ? e.v : e.u);
    }
    std::sort(lab.neighbors.begin(), lab.neighbors.end());
    lab.neighbors.erase(std::unique(lab.neighbors.begin(), lab.neighbors.end()),
                        lab.neighbors.end());
    out[v] = std::move(lab);
  }
  return out;
}

namespace {

void check_labels(const VertexLabel& lx, const VertexLabel& ly, ChangeMode mode) {
  require(lx.shared && lx.shared == ly.shared, "labels come from different builds");
  require(lx.owner != ly.owner, "edge endpoints must differ");
  if (mode == ChangeMode::Fail) require(lx.adjacent(ly.owner), "failed edge is not in the graph");
}

// Path joining two projections with one node in common with each; a common
// cactus node when they overlap.
NodePath joining_path(const Skeleton& sk, NodePath px, NodePath py, bool largest_common) {
  const TreeIndex& t = sk.tree;
  if (auto common = t.path_intersection(px.a, px.b, py.a, py.b)) {
    int pick = -1;
    for (int v : t.path(common->first, common->second)) {
      if (sk.is_cycle_node(v)) continue;
      if (pick < 0 || (largest_common ? v > pick : v < pick)) pick = v;
    }
    // Overlap in a single cycle node: no cactus node joins them.
    if (pick < 0) pick = common->first;
    return {pick, pick};
  }
  int q = t.project(py.a, px.a, px.b);
  int r = t.project(q, py.a, py.b);
  return {q, r};
}

}  // namespace

namespace {

int split_node(const LabelShared& sh, int s, int t) {
  const int n = static_cast<int>(sh.hierarchy.node(0).steiner.size());
  require(s >= 0 && t >= 0 && s < n && t < n, "vertex out of range");
  require(s != t, "query pair must be distinct");
  return sh.hierarchy.lca_of_vertices(s, t);
}

}  // namespace

bool on_nearest_side(const VertexLabel& ly, int s, int t) {
  require(ly.shared != nullptr, "empty label");
  const LabelShared& sh = *ly.shared;
  int h = split_node(sh, s, t);
  int slot = sh.slot[h];
  return projection_near(sh.skeletons[slot], sh.node_of(h, s), sh.node_of(h, t), ly.entry(slot).proj);
}

bool value_changed(const VertexLabel& lx, const VertexLabel& ly, int s, int t, ChangeMode mode) {
  check_labels(lx, ly, mode);
  const LabelShared& sh = *lx.shared;
  int h = split_node(sh, s, t);
  int slot = sh.slot[h];
  const Skeleton& sk = sh.skeletons[slot];
  int ps = sh.node_of(h, s), pt = sh.node_of(h, t);
  const LabelEntry& ex = lx.entry(slot);
  const LabelEntry& ey = ly.entry(slot);
  if (mode == ChangeMode::Fail) {
    if (ex.unit == ey.unit) return false;
    return crosses_pair(sk, projection_hull(sk, ex.proj, ey.proj), ps, pt);
  }
  return (projection_near(sk, ps, pt, ex.proj) && projection_near(sk, pt, ps, ey.proj)) ||
         (projection_near(sk, ps, pt, ey.proj) && projection_near(sk, pt, ps, ex.proj));
}

AffectedPairsEncoding affected_pairs(const VertexLabel& lx, const VertexLabel& ly, ChangeMode mode,
                                     bool largest_common) {
  check_labels(lx, ly, mode);
  const LabelShared& sh = *lx.shared;
  const HierarchyTree& h = sh.hierarchy;
  AffectedPairsEncoding enc;
  enc.mode = mode;
  enc.shared = lx.shared;
  // Pairs outside the subtree where x and y split keep x and y together.
  std::vector<int> queue{h.lca_of_vertices(lx.owner, ly.owner)};
  while (!queue.empty()) {
    int mu = queue.back();
    queue.pop_back();
    int slot = sh.slot[mu];
    const LabelEntry& ex = lx.entry(slot);
    const LabelEntry& ey = ly.entry(slot);
    const Skeleton& sk = sh.skeletons[slot];
    if (ex.unit == ey.unit) {
      // Pairs split here keep x and y together, but a Steiner unit holding
      // both can still separate them at its own, higher value.
      if (ex.proj.a != ex.proj.b) continue;
      for (int ch : h.node(mu).children)
        if (sh.node_in_parent[ch] == ex.proj.a && !h.node(ch).is_leaf()) queue.push_back(ch);
      continue;
    }
    NodePath p = mode == ChangeMode::Fail ? projection_hull(sk, ex.proj, ey.proj)
                                          : joining_path(sk, ex.proj, ey.proj, largest_common);
    std::vector<int> on_path;
    for (int ch : h.node(mu).children)
      if (sk.tree.on_path(sh.node_in_parent[ch], p.a, p.b)) on_path.push_back(ch);
    bool reports = false;
    if (mode == ChangeMode::Insert) {
      reports = on_path.size() >= 2;
    } else {
      Link link = build_link(sk, p.a, p.b);
      std::set<int> groups;
      for (int ch : h.node(mu).children) groups.insert(link.group_of[sh.node_in_parent[ch]]);
      reports = groups.size() >= 2;
    }
    if (reports) enc.records.push_back({mu, p});
    // For insertions a unit off the path is cut away from both x and y by a
    // Steiner mincut, so one of its mincuts keeps x and y together. A failure
    // needs every mincut to avoid the edge, which that argument does not give;
    // each child decides by its own units instead.
    const std::vector<int>& next = mode == ChangeMode::Insert ? on_path : h.node(mu).children;
    for (int ch : next)
      if (!h.node(ch).is_leaf()) queue.push_back(ch);
  }
  std::sort(enc.records.begin(), enc.records.end(),
            [](const AffectedRecord& a, const AffectedRecord& b) { return a.hnode < b.hnode; });
  return enc;
}

std::vector<std::pair<int, int>> AffectedPairsEncoding::expand() const {
  std::vector<std::pair<int, int>> out;
  if (!shared) return out;
  const LabelShared& sh = *shared;
  const HierarchyTree& h = sh.hierarchy;
  for (const AffectedRecord& rec : records) {
    const Skeleton& sk = sh.skeletons[sh.slot[rec.hnode]];
    const auto& children = h.node(rec.hnode).children;
    std::vector<int> group(children.size(), -1);
    if (mode == ChangeMode::Insert) {
      for (size_t i = 0; i < children.size(); ++i)
        if (sk.tree.on_path(sh.node_in_parent[children[i]], rec.path.a, rec.path.b))
          group[i] = static_cast<int>(i);
    } else {
      Link link = build_link(sk, rec.path.a, rec.path.b);
      for (size_t i = 0; i < children.size(); ++i)
        group[i] = link.group_of[sh.node_in_parent[children[i]]];
    }
    for (size_t i = 0; i < children.size(); ++i)
      for (size_t j = i + 1; j < children.size(); ++j) {
        if (group[i] < 0 || group[j] < 0 || group[i] == group[j]) continue;
        for (int u : h.node(children[i]).steiner)
          for (int v : h.node(children[j]).steiner) out.push_back({std::min(u, v), std::max(u, v)});
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace msens
