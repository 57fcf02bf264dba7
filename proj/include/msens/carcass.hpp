#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "msens/graph.hpp"
#include "msens/tree_index.hpp"

namespace msens {

// One bipartition of the Steiner set realized by minimum Steiner cuts,
// with the strip of all of those cuts. The source side holds the smallest
// Steiner vertex.
struct Bunch {
  std::vector<int> source_side;  // sorted Steiner vertices
  std::vector<int> sink_side;
  Strip strip;
};

inline constexpr int kDefaultBunchCap = 16;

// Steiner mincut value of S (minimum over pairs).
int steiner_mincut_value(const Multigraph& g, const std::vector<int>& steiner);

// Enumerates bunches through the strips from the smallest Steiner vertex to
// every other Steiner vertex at Steiner distance; polynomial in the output.
std::vector<Bunch> compute_bunches(const Multigraph& g, const std::vector<int>& steiner);
// One flow per bipartition of S; throws CapacityError when |S| > cap.
std::vector<Bunch> compute_bunches_exhaustive(const Multigraph& g, const std::vector<int>& steiner,
                                              int cap = kDefaultBunchCap);

struct UnitPartition {
  std::vector<int> unit_of;                // per vertex
  std::vector<std::vector<int>> members;   // per unit, sorted; units ordered by smallest vertex
  std::vector<char> terminal;              // terminal in every bunch strip
  std::vector<char> steiner;               // holds a Steiner vertex
  int size() const { return static_cast<int>(members.size()); }
};

UnitPartition compute_units(const Multigraph& g, const std::vector<int>& steiner,
                            const std::vector<Bunch>& bunches);

// A cut of the cactus: one tree edge, or two edges of one cycle. Cycle edge i
// joins cycle[i] and cycle[i+1 mod len].
struct SkeletonCut {
  int tree_edge = -1;
  int cycle = -1;
  int e1 = -1, e2 = -1;
  bool is_tree() const { return tree_edge >= 0; }
};

// Cactus over the terminal units plus its tree encoding. Tree nodes
// 0..num_nodes-1 are cactus nodes; num_nodes + c stands for cycle c.
struct Skeleton {
  int num_nodes = 0;
  std::vector<std::vector<int>> node_units;        // terminal units per cactus node
  std::vector<int> node_of_unit;                   // per unit; -1 for stretched units
  std::vector<std::pair<int, int>> tree_edges;
  std::vector<std::vector<int>> cycles;            // cyclic order, smallest node first
  TreeIndex tree;
  std::vector<std::unordered_map<int, int>> cycle_index;  // per cycle: node -> position

  int tree_size() const { return num_nodes + static_cast<int>(cycles.size()); }
  bool is_cycle_node(int x) const { return x >= num_nodes; }
  int cycle_of(int x) const { return x - num_nodes; }
  int cycle_node(int c) const { return num_nodes + c; }
  // Position of cactus node v inside cycle c, or -1.
  int position_in_cycle(int c, int v) const;
  int num_cuts() const;
};

Skeleton build_skeleton(const UnitPartition& units, const std::vector<Bunch>& bunches);
// Rebuilds the tree encoding and cycle positions from tree_edges and cycles.
void index_skeleton(Skeleton& sk);

// Side of the cactus node set cut off by the given cut: the side that holds
// `anchor` (a cactus node) is marked 1.
std::vector<char> cut_sides(const Skeleton& sk, const SkeletonCut& cut, int anchor);
std::vector<SkeletonCut> all_skeleton_cuts(const Skeleton& sk);

// Path in the skeleton tree between two cactus nodes; equal ends for
// terminal units.
struct NodePath {
  int a = -1, b = -1;
  bool empty() const { return a < 0; }
  bool operator==(const NodePath&) const = default;
};

// Where a tree path crosses another: a tree edge or a whole cycle.
struct Witness {
  int cycle = -1;
  int u = -1, v = -1;  // tree edge endpoints (cactus nodes)
  bool is_cycle() const { return cycle >= 0; }
};

std::optional<Witness> skeleton_paths_intersect(const Skeleton& sk, NodePath p1, NodePath p2);
bool is_proper(const Skeleton& sk, int a, int b);
// Proper path with p1 (oriented so `toward` is its far end) as prefix and p2
// as suffix.
std::optional<NodePath> extendable(const Skeleton& sk, NodePath p1, int toward, NodePath p2);

// Smallest path covering two projections of distinct units.
NodePath projection_hull(const Skeleton& sk, NodePath px, NodePath py);
// Path p meets some cut separating cactus nodes ps and pt.
bool crosses_pair(const Skeleton& sk, NodePath p, int ps, int pt);
// A unit projected to px lies on the ps side of the nearest cut from ps to pt.
bool projection_near(const Skeleton& sk, int ps, int pt, NodePath px);

// Compression of the skeleton tree around path P: one group per non-cycle
// path node with its hanging subtrees, one per cycle node on P, and one per
// off-path cycle neighbor with its subtree.
struct Link {
  std::vector<int> path;                     // skeleton tree nodes from a to b
  std::vector<int> group_of;                 // per skeleton tree node
  std::vector<std::pair<int, int>> key;      // per group: (path index, steps along the cycle arc)
  std::vector<std::pair<int, int>> edges;    // link tree edges between groups
  int num_groups() const { return static_cast<int>(key.size()); }
};

Link build_link(const Skeleton& sk, int a, int b);

struct Carcass {
  std::vector<int> steiner;  // sorted
  int value = 0;
  std::vector<Bunch> bunches;
  UnitPartition units;
  Skeleton skeleton;
  std::vector<NodePath> proj;            // per unit
  std::vector<int> tau;                  // per stretched unit, else -1
  // Per edge id and endpoint slot (0 = edge.u, 1 = edge.v): for endpoints in
  // a stretched unit, 0 if the edge leaves toward proj.a, 1 toward proj.b;
  // -1 otherwise.
  std::vector<std::array<std::int8_t, 2>> end_side;
  std::vector<SkeletonCut> bunch_cut;     // per bunch
  std::vector<int> bunch_source_anchor;   // per bunch: a cactus node on its source side

  int node_of_vertex(int v) const { return skeleton.node_of_unit[units.unit_of[v]]; }
  bool stretched(int u) const { return !units.terminal[u]; }
  // Side of edge `edge_id` at vertex w toward proj.a (0) or proj.b (1).
  int side_at(const Multigraph& g, int edge_id, int w) const;
  // Hull of the projections of the endpoints of an edge; empty when both
  // endpoints share a unit.
  NodePath edge_projection(int x, int y) const;
  // Edge (x,y) lies in some (s,t)-mincut, for Steiner s,t separated by a
  // Steiner mincut.
  bool edge_contained(int s, int t, int x, int y) const;
  // x lies on the source side of the nearest Steiner mincut from s to t.
  bool in_nearest(int s, int t, int x) const;
};

struct CarcassOptions {
  bool exhaustive_bunches = false;
  int bunch_cap = kDefaultBunchCap;
  // Bunch strips are only needed during construction; oracles drop them.
  bool keep_bunch_strips = true;
};

Carcass build_carcass(const Multigraph& g, const std::vector<int>& steiner,
                      CarcassOptions opts = {});

// Strip of the subbunch at one skeleton cut. The source side is the side
// holding cactus node `source_anchor`.
Strip strip_for_skeleton_cut(const Multigraph& g, const Carcass& c, const SkeletonCut& cut,
                             int source_anchor);
// Strip of all Steiner mincuts separating cactus nodes a and b.
Strip strip_between(const Multigraph& g, const Carcass& c, int a, int b);
// Merges every node holding a vertex of `side` into the source. The side must
// be a union of nodes closed toward the source.
Strip merge_into_source(const Multigraph& g, const Strip& st, const std::vector<char>& side);

}  // namespace msens
