#include "msens/gomory_hu.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace msens {

int GomoryHuTree::path_min(int s, int t) const {
  require(s != t, "s == t");
  std::vector<int> depth(n, -1);
  auto depth_of = [&](auto&& self, int v) -> int {
    if (depth[v] >= 0) return depth[v];
    return depth[v] = parent[v] < 0 ? 0 : self(self, parent[v]) + 1;
  };
  int best = std::numeric_limits<int>::max();
  int a = s, b = t;
  while (a != b) {
    if (depth_of(depth_of, a) >= depth_of(depth_of, b)) {
      best = std::min(best, weight[a]);
      a = parent[a];
    } else {
      best = std::min(best, weight[b]);
      b = parent[b];
    }
  }
  return best;
}

long long GomoryHuTree::total_weight() const {
  long long w = 0;
  for (int v = 1; v < n; ++v) w += weight[v];
  return w;
}

// Gusfield's variant: n-1 flow computations on the unmodified graph.
GomoryHuTree build_gomory_hu(const Multigraph& g) {
  require(g.n() >= 1, "empty graph");
  require(g.connected(), "graph is not connected");
  const int n = g.n();
  GomoryHuTree t;
  t.n = n;
  t.parent.assign(n, 0);
  t.weight.assign(n, 0);
  t.parent[0] = -1;
  for (int s = 1; s < n; ++s) {
    int u = t.parent[s];
    FlowResult f = max_flow(g, {s}, {u});
    std::vector<char> x = nearest_source_side(g, f, {s});
    t.weight[s] = f.value;
    for (int i = 0; i < n; ++i)
      if (i != s && x[i] && t.parent[i] == u) t.parent[i] = s;
    if (t.parent[u] >= 0 && x[t.parent[u]]) {
      t.parent[s] = t.parent[u];
      t.parent[u] = s;
      t.weight[s] = t.weight[u];
      t.weight[u] = f.value;
    }
  }
  // The swap step can move the root; re-root at vertex 0.
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int v = 0; v < n; ++v)
    if (t.parent[v] >= 0) {
      adj[v].push_back({t.parent[v], t.weight[v]});
      adj[t.parent[v]].push_back({v, t.weight[v]});
    }
  GomoryHuTree r;
  r.n = n;
  r.parent.assign(n, -1);
  r.weight.assign(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [w, c] : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        r.parent[w] = v;
        r.weight[w] = c;
        stack.push_back(w);
      }
  }
  for (char c : seen) check_internal(c, "cut tree is not spanning");
  return r;
}

HierarchyTree::HierarchyTree(std::vector<HierarchyNode> nodes) : nodes_(std::move(nodes)) {
  const int k = size();
  require(k >= 1, "empty hierarchy");
  std::vector<std::vector<int>> adj(k);
  int n = 0;
  for (int i = 0; i < k; ++i) {
    if (nodes_[i].parent >= 0) {
      adj[i].push_back(nodes_[i].parent);
      adj[nodes_[i].parent].push_back(i);
    }
    if (nodes_[i].is_leaf()) n = std::max(n, nodes_[i].vertex + 1);
  }
  leaf_of_.assign(n, -1);
  for (int i = 0; i < k; ++i)
    if (nodes_[i].is_leaf()) leaf_of_[nodes_[i].vertex] = i;
  for (int v = 0; v < n; ++v) check_internal(leaf_of_[v] >= 0, "vertex without a leaf");
  index_ = TreeIndex(adj, 0);
}

int HierarchyTree::lca_of_vertices(int s, int t) const {
  return index_.lca(leaf_of_[s], leaf_of_[t]);
}

int HierarchyTree::child_toward(int a, int v) const {
  return index_.level_ancestor(leaf_of_[v], index_.depth(a) + 1);
}

std::vector<int> HierarchyTree::internal_nodes() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (!nodes_[i].is_leaf()) out.push_back(i);
  return out;
}

HierarchyTree build_hierarchy(const GomoryHuTree& ght) {
  const int n = ght.n;
  require(n >= 1, "empty cut tree");
  std::vector<HierarchyNode> nodes;
  std::vector<int> comp(n, 0);  // current component label per vertex
  struct Work {
    std::vector<int> verts;  // sorted
    int parent;
  };
  std::vector<Work> work{{std::vector<int>(n), -1}};
  std::iota(work[0].verts.begin(), work[0].verts.end(), 0);
  // Preorder numbering: children are pushed in reverse so the smallest vertex
  // group is numbered first.
  while (!work.empty()) {
    Work w = std::move(work.back());
    work.pop_back();
    int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes[id].parent = w.parent;
    nodes[id].steiner = w.verts;
    if (w.parent >= 0) nodes[w.parent].children.push_back(id);
    if (w.verts.size() == 1) {
      nodes[id].vertex = w.verts[0];
      continue;
    }
    for (int v : w.verts) comp[v] = id + 1;
    auto inside = [&](int v) { return ght.parent[v] >= 0 && comp[ght.parent[v]] == id + 1; };
    int cmin = std::numeric_limits<int>::max();
    for (int v : w.verts)
      if (inside(v)) cmin = std::min(cmin, ght.weight[v]);
    nodes[id].val = cmin;
    // Components after deleting every edge of weight cmin.
    std::vector<int> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int v) {
      while (uf[v] != v) v = uf[v] = uf[uf[v]];
      return v;
    };
    for (int v : w.verts)
      if (inside(v) && ght.weight[v] != cmin) uf[find(v)] = find(ght.parent[v]);
    std::vector<std::vector<int>> groups;
    std::vector<int> group_of_root(n, -1);
    for (int v : w.verts) {
      int r = find(v);
      if (group_of_root[r] < 0) {
        group_of_root[r] = static_cast<int>(groups.size());
        groups.emplace_back();
      }
      groups[group_of_root[r]].push_back(v);
    }
    check_internal(groups.size() >= 2, "cut tree component did not split");
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) work.push_back({*it, id});
  }
  return HierarchyTree(std::move(nodes));
}

int lookup_mincut_value(const HierarchyTree& h, int s, int t) {
  require(s != t, "s == t");
  return h.node(h.lca_of_vertices(s, t)).val;
}

}  // namespace msens
