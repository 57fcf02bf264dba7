#include "msens/carcass.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>

namespace msens {

using Bits = boost::dynamic_bitset<>;

namespace {

std::vector<int> checked_steiner(const Multigraph& g, const std::vector<int>& steiner) {
  std::vector<int> s = steiner;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  require(s.size() >= 2, "Steiner set needs at least two vertices");
  require(s.front() >= 0 && s.back() < g.n(), "Steiner vertex out of range");
  return s;
}

Bunch make_bunch(const Multigraph& g, const std::vector<int>& steiner, std::vector<int> side,
                 int value) {
  Bunch b;
  std::set_difference(steiner.begin(), steiner.end(), side.begin(), side.end(),
                      std::back_inserter(b.sink_side));
  b.source_side = std::move(side);
  b.strip = build_strip(g, b.source_side, b.sink_side);
  check_internal(b.strip.value == value, "bunch strip value differs from the Steiner mincut");
  return b;
}

}  // namespace

int steiner_mincut_value(const Multigraph& g, const std::vector<int>& steiner) {
  std::vector<int> s = checked_steiner(g, steiner);
  int best = -1;
  for (size_t i = 1; i < s.size(); ++i) {
    int v = max_flow_value(g, s[0], s[i]);
    if (best < 0 || v < best) best = v;
  }
  return best;
}

std::vector<Bunch> compute_bunches(const Multigraph& g, const std::vector<int>& steiner_in) {
  std::vector<int> steiner = checked_steiner(g, steiner_in);
  require(g.connected(), "graph is not connected");
  const int s0 = steiner[0];
  std::vector<int> val(steiner.size(), 0);
  int lambda = -1;
  for (size_t i = 1; i < steiner.size(); ++i) {
    val[i] = max_flow_value(g, s0, steiner[i]);
    if (lambda < 0 || val[i] < lambda) lambda = val[i];
  }
  std::vector<char> is_steiner(g.n(), 0);
  for (int v : steiner) is_steiner[v] = 1;

  std::set<std::vector<int>> sides;
  for (size_t i = 1; i < steiner.size(); ++i) {
    if (val[i] != lambda) continue;
    Strip st = build_strip(g, s0, steiner[i]);
    // Only nodes holding Steiner vertices decide the induced bipartition.
    std::vector<int> marked, mark_id(st.num_nodes(), -1);
    for (int x = 0; x < st.num_nodes(); ++x) {
      bool any = false;
      for (int v : st.members[x]) any = any || is_steiner[v];
      if (any && x != st.sink()) {
        mark_id[x] = static_cast<int>(marked.size());
        marked.push_back(x);
      }
    }
    const int k = static_cast<int>(marked.size());
    std::vector<Bits> pred(k, Bits(k));
    for (int j = 0; j < k; ++j)
      for (int y : cone(st, {marked[j]}, Toward::Source))
        if (y != marked[j] && mark_id[y] >= 0) pred[j].set(mark_id[y]);
    Bits start(k);
    start.set(mark_id[st.source()]);
    std::set<Bits> seen{start};
    std::vector<Bits> queue{start};
    while (!queue.empty()) {
      Bits ideal = std::move(queue.back());
      queue.pop_back();
      std::vector<int> side;
      for (int j = 0; j < k; ++j)
        if (ideal[j])
          for (int v : st.members[marked[j]])
            if (is_steiner[v]) side.push_back(v);
      std::sort(side.begin(), side.end());
      sides.insert(std::move(side));
      for (int j = 0; j < k; ++j) {
        if (ideal[j] || !pred[j].is_subset_of(ideal)) continue;
        Bits next = ideal;
        next.set(j);
        if (seen.insert(next).second) queue.push_back(std::move(next));
      }
    }
  }
  std::vector<Bunch> out;
  for (const auto& side : sides) out.push_back(make_bunch(g, steiner, side, lambda));
  return out;
}

std::vector<Bunch> compute_bunches_exhaustive(const Multigraph& g,
                                              const std::vector<int>& steiner_in, int cap) {
  std::vector<int> steiner = checked_steiner(g, steiner_in);
  if (static_cast<int>(steiner.size()) > cap)
    throw CapacityError("Steiner set of size " + std::to_string(steiner.size()) +
                        " exceeds the bunch enumeration cap " + std::to_string(cap));
  require(g.connected(), "graph is not connected");
  const int r = static_cast<int>(steiner.size()) - 1;
  int lambda = -1;
  std::vector<std::vector<int>> best;
  for (unsigned long mask = 0; mask + 1 < (1UL << r); ++mask) {
    std::vector<int> side{steiner[0]}, sink;
    for (int i = 0; i < r; ++i) (mask >> i & 1 ? side : sink).push_back(steiner[i + 1]);
    int v = max_flow(g, side, sink).value;
    if (lambda >= 0 && v > lambda) continue;
    if (v != lambda) best.clear();
    lambda = v;
    std::sort(side.begin(), side.end());
    best.push_back(side);
  }
  std::sort(best.begin(), best.end());
  std::vector<Bunch> out;
  for (auto& side : best) out.push_back(make_bunch(g, steiner, side, lambda));
  return out;
}

UnitPartition compute_units(const Multigraph& g, const std::vector<int>& steiner,
                            const std::vector<Bunch>& bunches) {
  const int n = g.n();
  std::vector<long long> label(n, 0);
  for (const Bunch& b : bunches) {
    std::vector<long long> key(n);
    for (int v = 0; v < n; ++v) key[v] = label[v] * (b.strip.num_nodes() + 1) + b.strip.node_of[v];
    std::vector<long long> sorted = key;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v = 0; v < n; ++v)
      label[v] = std::lower_bound(sorted.begin(), sorted.end(), key[v]) - sorted.begin();
  }
  UnitPartition up;
  up.unit_of.assign(n, -1);
  std::map<long long, int> unit_of_label;
  for (int v = 0; v < n; ++v) {
    auto [it, fresh] = unit_of_label.try_emplace(label[v], up.size());
    if (fresh) up.members.emplace_back();
    up.unit_of[v] = it->second;
    up.members[it->second].push_back(v);
  }
  up.terminal.assign(up.size(), 1);
  up.steiner.assign(up.size(), 0);
  for (int u = 0; u < up.size(); ++u) {
    int rep = up.members[u][0];
    for (const Bunch& b : bunches)
      if (!b.strip.is_terminal(b.strip.node_of[rep])) up.terminal[u] = 0;
  }
  for (int s : steiner) {
    up.steiner[up.unit_of[s]] = 1;
    check_internal(up.terminal[up.unit_of[s]], "Steiner vertex in a stretched unit");
  }
  return up;
}

void index_skeleton(Skeleton& sk) {
  sk.cycle_index.assign(sk.cycles.size(), {});
  for (int c = 0; c < static_cast<int>(sk.cycles.size()); ++c)
    for (int i = 0; i < static_cast<int>(sk.cycles[c].size()); ++i)
      sk.cycle_index[c][sk.cycles[c][i]] = i;
  std::vector<std::vector<int>> adj(sk.tree_size());
  for (auto [a, b] : sk.tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (int c = 0; c < static_cast<int>(sk.cycles.size()); ++c)
    for (int v : sk.cycles[c]) {
      adj[sk.cycle_node(c)].push_back(v);
      adj[v].push_back(sk.cycle_node(c));
    }
  sk.tree = TreeIndex(adj, 0);
}

int Skeleton::position_in_cycle(int c, int v) const {
  auto it = cycle_index[c].find(v);
  return it == cycle_index[c].end() ? -1 : it->second;
}

int Skeleton::num_cuts() const {
  int k = static_cast<int>(tree_edges.size());
  for (const auto& cy : cycles) k += static_cast<int>(cy.size() * (cy.size() - 1) / 2);
  return k;
}

namespace {

// Cactus edge list: tree edges first, then cycle edges cycle by cycle.
struct CactusEdges {
  std::vector<std::pair<int, int>> ends;
  std::vector<int> cycle_offset;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, edge index)
};

CactusEdges cactus_edges(const Skeleton& sk) {
  CactusEdges ce;
  ce.ends = sk.tree_edges;
  for (const auto& cy : sk.cycles) {
    ce.cycle_offset.push_back(static_cast<int>(ce.ends.size()));
    for (size_t i = 0; i < cy.size(); ++i) ce.ends.push_back({cy[i], cy[(i + 1) % cy.size()]});
  }
  ce.adj.assign(sk.num_nodes, {});
  for (int e = 0; e < static_cast<int>(ce.ends.size()); ++e) {
    ce.adj[ce.ends[e].first].push_back({ce.ends[e].second, e});
    ce.adj[ce.ends[e].second].push_back({ce.ends[e].first, e});
  }
  return ce;
}

std::vector<char> side_without(const CactusEdges& ce, int n, int cut1, int cut2, int anchor) {
  std::vector<char> side(n, 0);
  std::vector<int> stack{anchor};
  side[anchor] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [w, e] : ce.adj[v])
      if (e != cut1 && e != cut2 && !side[w]) {
        side[w] = 1;
        stack.push_back(w);
      }
  }
  return side;
}

void validate_cut(const Skeleton& sk, const SkeletonCut& cut) {
  if (cut.is_tree()) {
    require(cut.tree_edge < static_cast<int>(sk.tree_edges.size()), "unknown tree edge");
    return;
  }
  require(cut.cycle >= 0 && cut.cycle < static_cast<int>(sk.cycles.size()), "unknown cycle");
  int len = static_cast<int>(sk.cycles[cut.cycle].size());
  require(cut.e1 >= 0 && cut.e2 >= 0 && cut.e1 < len && cut.e2 < len && cut.e1 != cut.e2,
          "cycle cut needs two distinct cycle edges");
}

}  // namespace

std::vector<char> cut_sides(const Skeleton& sk, const SkeletonCut& cut, int anchor) {
  validate_cut(sk, cut);
  require(anchor >= 0 && anchor < sk.num_nodes, "anchor is not a cactus node");
  CactusEdges ce = cactus_edges(sk);
  if (cut.is_tree()) return side_without(ce, sk.num_nodes, cut.tree_edge, -1, anchor);
  int off = ce.cycle_offset[cut.cycle];
  return side_without(ce, sk.num_nodes, off + cut.e1, off + cut.e2, anchor);
}

std::vector<SkeletonCut> all_skeleton_cuts(const Skeleton& sk) {
  std::vector<SkeletonCut> out;
  for (int i = 0; i < static_cast<int>(sk.tree_edges.size()); ++i) out.push_back({i, -1, -1, -1});
  for (int c = 0; c < static_cast<int>(sk.cycles.size()); ++c) {
    int len = static_cast<int>(sk.cycles[c].size());
    for (int i = 0; i < len; ++i)
      for (int j = i + 1; j < len; ++j) out.push_back({-1, c, i, j});
  }
  return out;
}

namespace {

struct SkeletonBuild {
  Skeleton sk;
  std::vector<SkeletonCut> bunch_cut;
};

Bits normalized(Bits x) {
  if (x[0]) x.flip();
  return x;
}

bool crossing(const Bits& x, const Bits& y) {
  return x.intersects(y) && !x.is_subset_of(y) && !y.is_subset_of(x);
}

// Matches every skeleton cut to the bunch it induces. The cactus must realize
// the bunch family exactly; a bunch may own a second cut only when that cut
// isolates an empty cycle node hanging a single subtree, in which case the
// earlier tree cut is kept.
std::vector<SkeletonCut> match_bunch_cuts(const Skeleton& sk, const UnitPartition& units,
                                          const std::vector<Bunch>& bunches) {
  std::vector<int> tus;
  for (int u = 0; u < units.size(); ++u)
    if (units.terminal[u]) tus.push_back(u);
  const int k = static_cast<int>(tus.size());
  const int nb = static_cast<int>(bunches.size());
  std::map<Bits, int> fam_index;
  for (int b = 0; b < nb; ++b) {
    Bits x(k);
    for (int i = 0; i < k; ++i)
      if (bunches[b].strip.node_of[units.members[tus[i]][0]] == 0) x.set(i);
    fam_index.emplace(normalized(x), b);
  }
  auto isolated_empty = [&](const SkeletonCut& cut) {
    if (cut.is_tree()) return false;
    const auto& cy = sk.cycles[cut.cycle];
    int len = static_cast<int>(cy.size());
    int v = -1;
    if (cut.e2 == cut.e1 + 1) v = cy[cut.e2];
    else if (cut.e1 == 0 && cut.e2 == len - 1) v = cy[0];
    return v >= 0 && sk.node_units[v].empty();
  };
  std::vector<SkeletonCut> bunch_cut(nb, SkeletonCut{});
  std::vector<char> hit(nb, 0);
  CactusEdges ce = cactus_edges(sk);
  int u0node = sk.node_of_unit[tus[0]];
  for (const SkeletonCut& cut : all_skeleton_cuts(sk)) {
    std::vector<char> side =
        cut.is_tree() ? side_without(ce, sk.num_nodes, cut.tree_edge, -1, u0node)
                      : side_without(ce, sk.num_nodes, ce.cycle_offset[cut.cycle] + cut.e1,
                                     ce.cycle_offset[cut.cycle] + cut.e2, u0node);
    Bits x(k);
    for (int i = 0; i < k; ++i)
      if (!side[sk.node_of_unit[tus[i]]]) x.set(i);
    auto it = fam_index.find(x);
    check_internal(it != fam_index.end(), "skeleton cut is not a bunch");
    if (hit[it->second]) {
      check_internal(isolated_empty(cut), "two skeleton cuts induce the same bunch");
      continue;
    }
    hit[it->second] = 1;
    bunch_cut[it->second] = cut;
  }
  for (int b = 0; b < nb; ++b) check_internal(hit[b], "bunch missing from the skeleton");
  return bunch_cut;
}

SkeletonBuild assemble_skeleton(const UnitPartition& units, const std::vector<Bunch>& bunches) {
  std::vector<int> tus, tu_of(units.size(), -1);
  for (int u = 0; u < units.size(); ++u)
    if (units.terminal[u]) {
      tu_of[u] = static_cast<int>(tus.size());
      tus.push_back(u);
    }
  const int k = static_cast<int>(tus.size());
  check_internal(k >= 2, "fewer than two terminal units");
  const int nb = static_cast<int>(bunches.size());
  std::vector<Bits> fam(nb, Bits(k));
  std::map<Bits, int> fam_index;
  for (int b = 0; b < nb; ++b) {
    for (int i = 0; i < k; ++i)
      if (bunches[b].strip.node_of[units.members[tus[i]][0]] == 0) fam[b].set(i);
    fam[b] = normalized(fam[b]);
    check_internal(fam[b].any(), "bunch does not split the terminal units");
    check_internal(fam_index.emplace(fam[b], b).second, "two bunches induce the same split");
  }

  // Crossing-connected classes of the cut family.
  std::vector<int> uf(nb);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
  for (int i = 0; i < nb; ++i)
    for (int j = i + 1; j < nb; ++j)
      if (crossing(fam[i], fam[j])) uf[find(i)] = find(j);
  std::map<int, std::vector<int>> classes;
  for (int i = 0; i < nb; ++i) classes[find(i)].push_back(i);

  std::vector<char> absorbed(nb, 0);
  struct CycleBuild {
    std::vector<Bits> pieces;  // piece 0 holds terminal unit 0
    std::vector<int> order;    // cyclic order of piece indices, starting at 0
  };
  std::vector<CycleBuild> cyc;
  for (auto& [root, mem] : classes) {
    if (mem.size() < 2) continue;
    std::vector<long long> label(k, 0);
    for (int m : mem) {
      std::map<long long, long long> remap;
      for (int i = 0; i < k; ++i) {
        long long key = label[i] * 2 + (fam[m][i] ? 1 : 0);
        label[i] = remap.try_emplace(key, static_cast<long long>(remap.size())).first->second;
      }
    }
    CycleBuild cb;
    std::map<long long, int> piece_of;
    for (int i = 0; i < k; ++i) {
      auto [it, fresh] = piece_of.try_emplace(label[i], static_cast<int>(cb.pieces.size()));
      if (fresh) cb.pieces.emplace_back(k);
      cb.pieces[it->second].set(i);
    }
    const int np = static_cast<int>(cb.pieces.size());
    check_internal(np >= 4, "crossing class with fewer than four pieces");
    std::vector<std::vector<int>> adj(np);
    for (int i = 0; i < np; ++i)
      for (int j = i + 1; j < np; ++j)
        if (fam_index.count(normalized(cb.pieces[i] | cb.pieces[j]))) {
          adj[i].push_back(j);
          adj[j].push_back(i);
        }
    for (int i = 0; i < np; ++i)
      check_internal(adj[i].size() == 2, "crossing class is not circular");
    cb.order.push_back(0);
    int prev = 0, cur = adj[0][0];
    while (cur != 0) {
      cb.order.push_back(cur);
      int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = nxt;
    }
    check_internal(static_cast<int>(cb.order.size()) == np, "circular order does not close");
    for (int m : mem) absorbed[m] = 1;
    for (int i = 1; i < np; ++i) {
      auto it = fam_index.find(cb.pieces[i]);
      check_internal(it != fam_index.end(), "cycle piece is not a Steiner cut");
      absorbed[it->second] = 1;
    }
    auto it = fam_index.find(normalized(cb.pieces[0]));
    check_internal(it != fam_index.end(), "cycle region is not a Steiner cut");
    absorbed[it->second] = 1;
    cyc.push_back(std::move(cb));
  }

  // Laminar family: root, tree-edge sides, pieces, and one region per cycle
  // (everything except piece 0).
  enum Role { kRoot = 0, kTree = 1, kPiece = 2, kRegion = 3 };
  struct LSet {
    Bits set;
    Role role;
    int cycle = -1, piece = -1;
    int bunch = -1;
  };
  std::vector<LSet> ls;
  Bits all(k);
  all.set();
  ls.push_back({all, kRoot});
  for (int b = 0; b < nb; ++b)
    if (!absorbed[b]) ls.push_back({fam[b], kTree, -1, -1, b});
  for (int c = 0; c < static_cast<int>(cyc.size()); ++c) {
    for (int i = 1; i < static_cast<int>(cyc[c].pieces.size()); ++i)
      ls.push_back({cyc[c].pieces[i], kPiece, c, i});
    Bits z = cyc[c].pieces[0];
    z.flip();
    ls.push_back({z, kRegion, c, -1});
  }
  const int nl = static_cast<int>(ls.size());
  std::vector<int> order(nl);
  std::iota(order.begin(), order.end(), 0);
  auto rank = [&](int i) { return ls[i].role == kRoot ? 0 : ls[i].role == kRegion ? 2 : 1; };
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    size_t cx = ls[x].set.count(), cy = ls[y].set.count();
    if (cx != cy) return cx > cy;
    return rank(x) < rank(y);
  });
  check_internal(order[0] == 0, "root is not the largest set");
  std::vector<int> parent(nl, -1), deepest(k, 0);
  for (int idx = 1; idx < nl; ++idx) {
    int x = order[idx];
    int p = deepest[ls[x].set.find_first()];
    check_internal(ls[x].set.is_subset_of(ls[p].set), "cut family is not laminar");
    parent[x] = p;
    for (size_t i = ls[x].set.find_first(); i != Bits::npos; i = ls[x].set.find_next(i))
      deepest[i] = x;
  }

  // Provisional nodes: every non-region set.
  std::vector<int> pnode(nl, -1);
  std::vector<int> pnode_set;
  for (int idx = 0; idx < nl; ++idx) {
    int x = order[idx];
    if (ls[x].role == kRegion) continue;
    pnode[x] = static_cast<int>(pnode_set.size());
    pnode_set.push_back(x);
  }
  const int np = static_cast<int>(pnode_set.size());
  std::vector<std::vector<int>> pnode_units(np);
  for (int i = 0; i < k; ++i) {
    check_internal(ls[deepest[i]].role != kRegion, "terminal unit inside a cycle region");
    pnode_units[pnode[deepest[i]]].push_back(tus[i]);
  }
  std::vector<std::pair<int, int>> tedges;
  std::vector<int> tedge_set;  // laminar set below each tree edge
  std::vector<std::vector<int>> pcycles;
  for (int x = 0; x < nl; ++x) {
    if (ls[x].role == kTree) {
      check_internal(pnode[parent[x]] >= 0, "tree edge below a cycle region");
      tedges.push_back({pnode[x], pnode[parent[x]]});
      tedge_set.push_back(x);
    } else if (ls[x].role == kPiece) {
      const LSet& z = ls[parent[x]];
      check_internal(z.role == kRegion && z.cycle == ls[x].cycle, "piece outside its region");
    }
  }
  std::vector<std::vector<int>> piece_node(cyc.size());
  for (int c = 0; c < static_cast<int>(cyc.size()); ++c)
    piece_node[c].assign(cyc[c].pieces.size(), -1);
  for (int x = 0; x < nl; ++x)
    if (ls[x].role == kPiece) piece_node[ls[x].cycle][ls[x].piece] = pnode[x];
  for (int x = 0; x < nl; ++x) {
    if (ls[x].role != kRegion) continue;
    int c = ls[x].cycle;
    check_internal(pnode[parent[x]] >= 0, "cycle region below another region");
    piece_node[c][0] = pnode[parent[x]];
    std::vector<int> cy;
    for (int p : cyc[c].order) cy.push_back(piece_node[c][p]);
    pcycles.push_back(cy);
  }

  // An empty node with three tree edges and nothing else is the center of
  // a star that is equivalent to a 3-cycle; use the cycle unless some
  // stretched unit needs the center as a path end. Such a unit crosses one
  // of the three edges and sits on the center side of the other two.
  auto center_needed = [&](int v, const std::vector<int>& inc) {
    for (int u = 0; u < units.size(); ++u) {
      if (units.terminal[u]) continue;
      int rep = units.members[u][0];
      int center_side = 0;
      for (int e : inc) {
        const LSet& l = ls[tedge_set[e]];
        const Strip& st = bunches[l.bunch].strip;
        int x = st.node_of[rep];
        if (x != st.source() && x != st.sink()) continue;
        Bits same(k);
        for (int i = 0; i < k; ++i)
          if ((st.node_of[units.members[tus[i]][0]] == st.source()) == (x == st.source())) same.set(i);
        Bits far = l.set;
        if (tedges[e].first == v) far.flip();
        if (same != far) ++center_side;
      }
      if (center_side >= 2) return true;
    }
    return false;
  };
  std::vector<char> alive(np, 1), edge_alive(tedges.size(), 1);
  std::vector<int> cycle_count(np, 0);
  for (const auto& cy : pcycles)
    for (int v : cy) ++cycle_count[v];
  for (int v = 0; v < np; ++v) {
    if (!pnode_units[v].empty() || cycle_count[v] > 0) continue;
    std::vector<int> inc;
    for (int e = 0; e < static_cast<int>(tedges.size()); ++e)
      if (edge_alive[e] && (tedges[e].first == v || tedges[e].second == v)) inc.push_back(e);
    if (inc.size() != 3 || center_needed(v, inc)) continue;
    std::vector<int> cy;
    for (int e : inc) {
      edge_alive[e] = 0;
      cy.push_back(tedges[e].first == v ? tedges[e].second : tedges[e].first);
    }
    alive[v] = 0;
    for (int w : cy) ++cycle_count[w];
    pcycles.push_back(cy);
  }

  // Final numbering: nonempty nodes by smallest vertex, then empty nodes.
  std::vector<int> live;
  for (int v = 0; v < np; ++v)
    if (alive[v]) live.push_back(v);
  auto min_vertex = [&](int v) {
    int best = -1;
    for (int u : pnode_units[v])
      if (best < 0 || units.members[u][0] < best) best = units.members[u][0];
    return best;
  };
  std::stable_sort(live.begin(), live.end(), [&](int x, int y) {
    int mx = min_vertex(x), my = min_vertex(y);
    if ((mx < 0) != (my < 0)) return mx >= 0;
    return mx < my;
  });
  std::vector<int> final_id(np, -1);
  for (int i = 0; i < static_cast<int>(live.size()); ++i) final_id[live[i]] = i;

  SkeletonBuild out;
  Skeleton& sk = out.sk;
  sk.num_nodes = static_cast<int>(live.size());
  sk.node_units.assign(sk.num_nodes, {});
  sk.node_of_unit.assign(units.size(), -1);
  for (int v : live) {
    auto us = pnode_units[v];
    std::sort(us.begin(), us.end());
    for (int u : us) sk.node_of_unit[u] = final_id[v];
    sk.node_units[final_id[v]] = us;
  }
  for (int e = 0; e < static_cast<int>(tedges.size()); ++e)
    if (edge_alive[e]) {
      int a = final_id[tedges[e].first], b = final_id[tedges[e].second];
      sk.tree_edges.push_back({std::min(a, b), std::max(a, b)});
    }
  std::sort(sk.tree_edges.begin(), sk.tree_edges.end());
  for (auto cy : pcycles) {
    for (int& v : cy) v = final_id[v];
    int len = static_cast<int>(cy.size());
    int start = static_cast<int>(std::min_element(cy.begin(), cy.end()) - cy.begin());
    std::rotate(cy.begin(), cy.begin() + start, cy.end());
    if (cy[len - 1] < cy[1]) std::reverse(cy.begin() + 1, cy.end());
    sk.cycles.push_back(cy);
  }
  std::sort(sk.cycles.begin(), sk.cycles.end());
  index_skeleton(sk);

  out.bunch_cut = match_bunch_cuts(sk, units, bunches);
  return out;
}

}  // namespace

Skeleton build_skeleton(const UnitPartition& units, const std::vector<Bunch>& bunches) {
  return assemble_skeleton(units, bunches).sk;
}

bool is_proper(const Skeleton& sk, int a, int b) {
  std::vector<int> p = sk.tree.path(a, b);
  for (size_t i = 1; i + 1 < p.size(); ++i) {
    if (!sk.is_cycle_node(p[i])) continue;
    int c = sk.cycle_of(p[i]);
    int len = static_cast<int>(sk.cycles[c].size());
    int x = sk.position_in_cycle(c, p[i - 1]), y = sk.position_in_cycle(c, p[i + 1]);
    int d = (x - y + len) % len;
    if (d != 1 && d != len - 1) return false;
  }
  return true;
}

std::optional<Witness> skeleton_paths_intersect(const Skeleton& sk, NodePath p1, NodePath p2) {
  if (p1.empty() || p2.empty()) return std::nullopt;
  auto inter = sk.tree.path_intersection(p1.a, p1.b, p2.a, p2.b);
  if (!inter) return std::nullopt;
  auto [x, y] = *inter;
  Witness w;
  if (x == y) {
    if (!sk.is_cycle_node(x)) return std::nullopt;
    w.cycle = sk.cycle_of(x);
    return w;
  }
  int nxt = sk.tree.next_on_path(x, y);
  if (sk.is_cycle_node(x)) {
    w.cycle = sk.cycle_of(x);
  } else if (sk.is_cycle_node(nxt)) {
    w.cycle = sk.cycle_of(nxt);
  } else {
    w.u = x;
    w.v = nxt;
  }
  return w;
}

std::optional<NodePath> extendable(const Skeleton& sk, NodePath p1, int toward, NodePath p2) {
  require(toward == p1.a || toward == p1.b, "direction must be an endpoint of the first path");
  const int far = toward, near = toward == p1.a ? p1.b : p1.a;
  if ((p1.a == p2.a && p1.b == p2.b) || (p1.a == p2.b && p1.b == p2.a))
    return NodePath{near, far};
  const TreeIndex& t = sk.tree;
  for (int flip = 0; flip < 2; ++flip) {
    int w = flip ? p2.b : p2.a, z = flip ? p2.a : p2.b;
    if (!t.on_path(far, near, z) || !t.on_path(w, near, z)) continue;
    if (t.on_path(w, near, far) || is_proper(sk, near, z)) return NodePath{near, z};
  }
  return std::nullopt;
}

Link build_link(const Skeleton& sk, int a, int b) {
  require(a >= 0 && a < sk.num_nodes && b >= 0 && b < sk.num_nodes,
          "link ends must be non-cycle nodes");
  const TreeIndex& t = sk.tree;
  Link link;
  link.path = t.path(a, b);
  const int size = sk.tree_size();
  link.group_of.assign(size, -1);
  std::vector<char> on_path(size, 0);
  for (int v : link.path) on_path[v] = 1;
  auto neighbors = [&](int v) {
    std::vector<int> nb = t.children(v);
    if (t.parent(v) >= 0) nb.push_back(t.parent(v));
    return nb;
  };
  auto flood = [&](int start, int gid) {
    std::vector<int> stack{start};
    link.group_of[start] = gid;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : neighbors(v))
        if (link.group_of[w] < 0 && !on_path[w]) {
          link.group_of[w] = gid;
          stack.push_back(w);
        }
    }
  };
  const int len = static_cast<int>(link.path.size());
  for (int i = 0; i < len; ++i) {
    int v = link.path[i];
    int gid = link.num_groups();
    link.key.push_back({i, 0});
    if (!sk.is_cycle_node(v)) {
      flood(v, gid);
      continue;
    }
    link.group_of[v] = gid;
    int c = sk.cycle_of(v);
    const auto& cy = sk.cycles[c];
    int k = static_cast<int>(cy.size());
    int from = sk.position_in_cycle(c, link.path[i - 1]);
    int to = sk.position_in_cycle(c, link.path[i + 1]);
    for (int dir : {1, -1})
      for (int q = 1;; ++q) {
        int pos = ((from + dir * q) % k + k) % k;
        if (pos == to) break;
        link.key.push_back({i, q});
        flood(cy[pos], link.num_groups() - 1);
      }
  }
  for (int v = 0; v < size; ++v) {
    int p = t.parent(v);
    if (p < 0 || link.group_of[v] == link.group_of[p]) continue;
    int x = link.group_of[v], y = link.group_of[p];
    link.edges.push_back({std::min(x, y), std::max(x, y)});
  }
  std::sort(link.edges.begin(), link.edges.end());
  link.edges.erase(std::unique(link.edges.begin(), link.edges.end()), link.edges.end());
  return link;
}

int Carcass::side_at(const Multigraph& g, int edge_id, int w) const {
  const Edge& e = g.edge(edge_id);
  return end_side[edge_id][e.u == w ? 0 : 1];
}

NodePath projection_hull(const Skeleton& sk, NodePath px, NodePath py) {
  const TreeIndex& t = sk.tree;
  if (px.a == px.b && py.a == py.b) return {px.a, py.a};
  std::array<int, 4> e{px.a, px.b, py.a, py.b};
  NodePath best{e[0], e[0]};
  int bd = -1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (e[i] == e[j]) continue;
      int d = t.dist(e[i], e[j]);
      if (d > bd) {
        bd = d;
        best = {e[i], e[j]};
      }
    }
  return best;
}

bool crosses_pair(const Skeleton& sk, NodePath p, int ps, int pt) {
  check_internal(ps >= 0 && pt >= 0 && ps != pt, "query pair is not split by the skeleton");
  auto inter = sk.tree.path_intersection(p.a, p.b, ps, pt);
  if (!inter) return false;
  return inter->first != inter->second || sk.is_cycle_node(inter->first);
}

bool projection_near(const Skeleton& sk, int ps, int pt, NodePath px) {
  check_internal(ps >= 0 && pt >= 0 && ps != pt, "query pair is not split by the skeleton");
  const TreeIndex& tr = sk.tree;
  return tr.on_path(ps, px.a, pt) && tr.on_path(ps, px.b, pt);
}

NodePath Carcass::edge_projection(int x, int y) const {
  int ux = units.unit_of[x], uy = units.unit_of[y];
  if (ux == uy) return {};
  return projection_hull(skeleton, proj[ux], proj[uy]);
}

bool Carcass::edge_contained(int s, int t, int x, int y) const {
  NodePath p = edge_projection(x, y);
  if (p.empty()) return false;
  return crosses_pair(skeleton, p, node_of_vertex(s), node_of_vertex(t));
}

bool Carcass::in_nearest(int s, int t, int x) const {
  return projection_near(skeleton, node_of_vertex(s), node_of_vertex(t), proj[units.unit_of[x]]);
}

Carcass build_carcass(const Multigraph& g, const std::vector<int>& steiner, CarcassOptions opts) {
  Carcass c;
  c.steiner = checked_steiner(g, steiner);
  c.bunches = opts.exhaustive_bunches ? compute_bunches_exhaustive(g, c.steiner, opts.bunch_cap)
                                      : compute_bunches(g, c.steiner);
  c.value = c.bunches.front().strip.value;
  c.units = compute_units(g, c.steiner, c.bunches);
  SkeletonBuild sb = assemble_skeleton(c.units, c.bunches);
  c.skeleton = std::move(sb.sk);
  c.bunch_cut = std::move(sb.bunch_cut);
  const Skeleton& sk = c.skeleton;
  const int nb = static_cast<int>(c.bunches.size());
  const int nu = c.units.size();
  const int s0node = c.node_of_vertex(c.steiner[0]);
  c.bunch_source_anchor.assign(nb, s0node);

  std::vector<Bits> source_nodes;
  auto index_bunch_sides = [&] {
    source_nodes.assign(nb, Bits(sk.num_nodes));
    for (int b = 0; b < nb; ++b) {
      std::vector<char> side = cut_sides(sk, c.bunch_cut[b], s0node);
      for (int v = 0; v < sk.num_nodes; ++v)
        if (side[v]) source_nodes[b].set(v);
    }
  };
  // Projection: a stretched unit lies on the source or sink side of every
  // bunch in which it is terminal; those sides meet in its path.
  auto sides_meet = [&](int u) {
    Bits w(sk.num_nodes);
    w.set();
    int rep = c.units.members[u][0];
    for (int b = 0; b < nb; ++b) {
      const Strip& st = c.bunches[b].strip;
      int x = st.node_of[rep];
      if (x == st.source()) w &= source_nodes[b];
      if (x == st.sink()) w &= ~source_nodes[b];
    }
    return w;
  };
  index_bunch_sides();

  // A stretched unit whose sides meet in a single cycle node X crosses only
  // the bunch isolating X on that cycle. The canonical cactus has no room for
  // it, so X leaves the cycle: an empty node takes its place and X hangs off
  // it by a tree edge. The bunch then owns both the new tree cut and the
  // cycle cut around the empty node.
  std::set<std::pair<int, int>> detach;  // (cycle, node)
  for (int u = 0; u < nu; ++u) {
    if (c.units.terminal[u]) continue;
    Bits w = sides_meet(u);
    if (w.count() != 1) continue;
    int x = static_cast<int>(w.find_first());
    int rep = c.units.members[u][0];
    int cyc = -1;
    for (int b = 0; b < nb && cyc < 0; ++b) {
      const Strip& st = c.bunches[b].strip;
      int y = st.node_of[rep];
      const SkeletonCut& cut = c.bunch_cut[b];
      if (y == st.source() || y == st.sink() || cut.is_tree()) continue;
      std::vector<char> side = cut_sides(sk, cut, x);
      if (std::count(side.begin(), side.end(), 1) == 1) cyc = cut.cycle;
    }
    check_internal(cyc >= 0, "stretched unit spans fewer than two nodes");
    detach.insert({cyc, x});
  }
  if (!detach.empty()) {
    Skeleton& msk = c.skeleton;
    for (auto [cyc, x] : detach) {
      int e = msk.num_nodes++;
      msk.node_units.push_back({});
      auto& cy = msk.cycles[cyc];
      *std::find(cy.begin(), cy.end(), x) = e;
      msk.tree_edges.push_back({x, e});
    }
    for (auto& cy : msk.cycles) {
      int len = static_cast<int>(cy.size());
      std::rotate(cy.begin(), std::min_element(cy.begin(), cy.end()), cy.end());
      if (cy[len - 1] < cy[1]) std::reverse(cy.begin() + 1, cy.end());
    }
    std::sort(msk.tree_edges.begin(), msk.tree_edges.end());
    std::sort(msk.cycles.begin(), msk.cycles.end());
    index_skeleton(msk);
    c.bunch_cut = match_bunch_cuts(msk, c.units, c.bunches);
    index_bunch_sides();
  }

  c.proj.assign(nu, {});
  for (int u = 0; u < nu; ++u) {
    if (c.units.terminal[u]) {
      int v = sk.node_of_unit[u];
      c.proj[u] = {v, v};
      continue;
    }
    Bits w = sides_meet(u);
    check_internal(w.count() >= 2, "stretched unit spans fewer than two nodes");
    std::vector<int> nodes;
    for (size_t i = w.find_first(); i != Bits::npos; i = w.find_next(i))
      nodes.push_back(static_cast<int>(i));
    auto farthest = [&](int from) {
      int best = from, bd = -1;
      for (int v : nodes) {
        int d = sk.tree.dist(from, v);
        if (d > bd) {
          bd = d;
          best = v;
        }
      }
      return best;
    };
    int a = farthest(nodes[0]);
    int b = farthest(a);
    if (a > b) std::swap(a, b);
    Bits on(sk.num_nodes);
    for (int v : sk.tree.path(a, b))
      if (!sk.is_cycle_node(v)) on.set(v);
    check_internal(on == w, "stretched unit sides do not form a path");
    check_internal(is_proper(sk, a, b), "stretched unit path is not proper");
    c.proj[u] = {a, b};
  }

  // Inherent partitions of stretched units, read off the bunch strips.
  c.end_side.assign(g.id_bound(), {-1, -1});
  for (int b = 0; b < nb; ++b) {
    const Strip& st = c.bunches[b].strip;
    for (const StripArc& arc : st.arcs) {
      const Edge& e = g.edge(arc.edge);
      for (int slot = 0; slot < 2; ++slot) {
        int w = slot == 0 ? e.u : e.v;
        int x = st.node_of[w];
        if (st.is_terminal(x)) continue;
        int u = c.units.unit_of[w];
        int toward_source = source_nodes[b][c.proj[u].a] ? 0 : 1;
        int side = x == arc.head ? toward_source : 1 - toward_source;
        auto& cell = c.end_side[arc.edge][slot];
        check_internal(cell < 0 || cell == side, "inconsistent inherent partition");
        cell = static_cast<std::int8_t>(side);
      }
    }
  }
  std::vector<int> balance(nu, 0);
  for (const Edge& e : g.edges()) {
    int uu = c.units.unit_of[e.u], uv = c.units.unit_of[e.v];
    for (int slot = 0; slot < 2; ++slot) {
      int u = slot == 0 ? uu : uv;
      auto cell = c.end_side[e.id][slot];
      if (uu == uv || c.units.terminal[u]) {
        c.end_side[e.id][slot] = -1;
        continue;
      }
      check_internal(cell >= 0, "edge side of a stretched unit is undetermined");
      balance[u] += cell == 0 ? 1 : -1;
    }
  }
  for (int u = 0; u < nu; ++u) check_internal(balance[u] == 0, "unbalanced stretched unit");

  // Topological order of stretched units sharing a path.
  c.tau.assign(nu, -1);
  std::map<std::pair<int, int>, std::vector<int>> groups;
  for (int u = 0; u < nu; ++u)
    if (!c.units.terminal[u]) groups[{c.proj[u].a, c.proj[u].b}].push_back(u);
  std::vector<std::vector<int>> succ(nu);
  std::vector<int> indeg(nu, 0);
  for (const Edge& e : g.edges()) {
    int uu = c.units.unit_of[e.u], uv = c.units.unit_of[e.v];
    if (uu == uv || c.units.terminal[uu] || c.units.terminal[uv] || !(c.proj[uu] == c.proj[uv]))
      continue;
    int su = c.end_side[e.id][0], sv = c.end_side[e.id][1];
    check_internal(su != sv, "edge between units of one path points the same way");
    if (su == 1) {
      succ[uu].push_back(uv);
      ++indeg[uv];
    } else {
      succ[uv].push_back(uu);
      ++indeg[uu];
    }
  }
  for (auto& [key, mem] : groups) {
    std::priority_queue<int, std::vector<int>, std::greater<int>> pq;
    for (int u : mem)
      if (indeg[u] == 0) pq.push(u);
    int next = 0;
    while (!pq.empty()) {
      int u = pq.top();
      pq.pop();
      c.tau[u] = next++;
      for (int w : succ[u])
        if (--indeg[w] == 0) pq.push(w);
    }
    check_internal(next == static_cast<int>(mem.size()), "stretched units of a path form a cycle");
  }
  if (!opts.keep_bunch_strips)
    for (Bunch& b : c.bunches) b.strip = Strip{};
  return c;
}

Strip strip_for_skeleton_cut(const Multigraph& g, const Carcass& c, const SkeletonCut& cut,
                             int source_anchor) {
  std::vector<char> side = cut_sides(c.skeleton, cut, source_anchor);
  const int nu = c.units.size();
  std::vector<int> unit_group(nu);
  int next = 2;
  for (int u = 0; u < nu; ++u) {
    if (c.units.terminal[u]) {
      unit_group[u] = side[c.skeleton.node_of_unit[u]] ? 0 : 1;
      continue;
    }
    bool sa = side[c.proj[u].a], sb = side[c.proj[u].b];
    unit_group[u] = sa && sb ? 0 : (!sa && !sb ? 1 : next++);
  }
  std::vector<int> group_of(g.n());
  for (int v = 0; v < g.n(); ++v) group_of[v] = unit_group[c.units.unit_of[v]];
  auto straddler = [&](int v) { return unit_group[c.units.unit_of[v]] >= 2; };
  std::vector<StripArc> arcs;
  for (const Edge& e : g.edges()) {
    int gu = group_of[e.u], gv = group_of[e.v];
    if (gu == gv) continue;
    int tail = gu, head = gv;
    if (straddler(e.u) || straddler(e.v)) {
      int w = straddler(e.u) ? e.u : e.v;
      int s = c.side_at(g, e.id, w);
      const NodePath& p = c.proj[c.units.unit_of[w]];
      bool toward_source = side[s == 0 ? p.a : p.b];
      // An edge on the source side of w has its other end as the tail.
      bool w_is_tail = !toward_source;
      int gw = group_of[w], go = group_of[e.other(w)];
      tail = w_is_tail ? gw : go;
      head = w_is_tail ? go : gw;
    } else if (gu == 1) {
      std::swap(tail, head);
    }
    arcs.push_back({e.id, tail, head});
  }
  return make_strip(g, group_of, next, 0, 1, arcs);
}

Strip strip_between(const Multigraph& g, const Carcass& c, int a, int b) {
  require(a != b, "strip between equal nodes");
  Link link = build_link(c.skeleton, a, b);
  const int nu = c.units.size();
  const int ng = link.num_groups();
  std::vector<int> unit_group(nu);
  int next = ng;
  for (int u = 0; u < nu; ++u) {
    if (c.units.terminal[u]) {
      unit_group[u] = link.group_of[c.skeleton.node_of_unit[u]];
      continue;
    }
    int ga = link.group_of[c.proj[u].a], gb = link.group_of[c.proj[u].b];
    unit_group[u] = ga == gb ? ga : next++;
  }
  std::vector<int> group_of(g.n());
  for (int v = 0; v < g.n(); ++v) group_of[v] = unit_group[c.units.unit_of[v]];
  auto standalone = [&](int v) { return group_of[v] >= ng; };
  auto node_key = [&](int node) { return link.key[link.group_of[node]]; };
  std::vector<StripArc> arcs;
  for (const Edge& e : g.edges()) {
    int gu = group_of[e.u], gv = group_of[e.v];
    if (gu == gv) continue;
    int tail, head;
    if (standalone(e.u) || standalone(e.v)) {
      int w = standalone(e.u) ? e.u : e.v;
      const NodePath& p = c.proj[c.units.unit_of[w]];
      int s = c.side_at(g, e.id, w);
      int toward = s == 0 ? p.a : p.b, away = s == 0 ? p.b : p.a;
      bool w_is_tail = !(node_key(toward) < node_key(away));
      int gw = group_of[w], go = group_of[e.other(w)];
      tail = w_is_tail ? gw : go;
      head = w_is_tail ? go : gw;
    } else {
      bool u_first = link.key[gu] < link.key[gv];
      tail = u_first ? gu : gv;
      head = u_first ? gv : gu;
    }
    arcs.push_back({e.id, tail, head});
  }
  return make_strip(g, group_of, next, link.group_of[a], link.group_of[b], arcs);
}

Strip merge_into_source(const Multigraph& g, const Strip& st, const std::vector<char>& side) {
  require(static_cast<int>(side.size()) == g.n(), "side mask size mismatch");
  const int k = st.num_nodes();
  std::vector<char> in(k, 0);
  for (int x = 0; x < k; ++x) {
    int count = 0;
    for (int v : st.members[x]) count += side[v] ? 1 : 0;
    require(count == 0 || count == static_cast<int>(st.members[x].size()),
            "merged side splits a strip node");
    in[x] = count > 0;
  }
  require(!in[st.sink()], "merged side contains the sink");
  in[st.source()] = 1;
  for (const StripArc& a : st.arcs)
    require(!(in[a.head] && !in[a.tail]), "merged side is not closed toward the source");
  std::vector<int> group_of(g.n());
  for (int v = 0; v < g.n(); ++v) {
    int x = st.node_of[v];
    group_of[v] = in[x] ? 0 : x;
  }
  std::vector<StripArc> arcs;
  for (const StripArc& a : st.arcs) {
    int t = in[a.tail] ? 0 : a.tail, h = in[a.head] ? 0 : a.head;
    if (t != h) arcs.push_back({a.edge, t, h});
  }
  return make_strip(g, group_of, k, 0, st.sink(), arcs);
}

}  // namespace msens
