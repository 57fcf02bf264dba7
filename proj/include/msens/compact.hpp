#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <unordered_set>
#include <vector>

#include "msens/carcass.hpp"
#include "msens/gomory_hu.hpp"
#include "msens/graph.hpp"
#include "msens/transform.hpp"

namespace msens {

// Vertex of a child graph standing for one subcactus hanging off the node
// that holds the child's Steiner set.
struct ContractedVertex {
  int vertex = -1;    // id in the child graph
  int neighbor = -1;  // skeleton tree neighbor of that node (cactus node or cycle node)
  int rank = -1;      // position in the order used for straddling stretched units
};

// Quotient of the input graph attached to one internal hierarchy node,
// together with the carcass of the node's leaf set in it.
struct CompactNode {
  int hnode = -1;
  Multigraph graph;
  Carcass carcass;
  int parent_slot = -1;  // -1 at the root
  int nu = -1;           // skeleton node of the parent holding this node's Steiner set
  std::vector<std::pair<int, int>> kept;  // parent vertex -> vertex here, sorted
  std::vector<ContractedVertex> contracted;  // sorted by neighbor
};

struct CompactStats {
  int internal_nodes = 0;
  long long graph_vertices = 0;
  long long graph_edges = 0;
  long long units = 0;
  long long steiner_units = 0;
  long long nonsteiner_units = 0;
  long long nonsteiner_degree = 0;
  long long contracted_vertices = 0;
  // Largest number of non-Steiner units one contracted vertex lands in.
  int max_nonsteiner_appearances = 0;
};

class CompactOracle {
 public:
  static CompactOracle build(const Multigraph& g, CarcassOptions opts = {});

  const Multigraph& graph() const { return nodes_.empty() ? g_ : nodes_[0].graph; }
  const HierarchyTree& hierarchy() const { return h_; }
  const CompactNode& node_at(int hnode) const;
  const CompactStats& stats() const { return stats_; }
  int value(int s, int t) const;

  // An (s,t)-mincut of the input graph cutting every bundle edge, side holding s.
  std::optional<Cut> edge_contained(int s, int t, const EdgeBundle& b) const;
  int ft_value(int s, int t, int x, int y) const;
  int in_value(int s, int t, int x, int y) const;
  // y lies on the nearest s-side among all (s,t)-mincuts.
  bool check_nearest(int s, int t, int y) const;
  Cut report_ft_cut(int s, int t, int x, int y) const;
  Cut report_in_cut(int s, int t, int x, int y) const;
  // Witness route for insertions: descends for `free` as in check_nearest
  // and, if its witness set is contained at the split node, rebuilds a
  // mincut around the last re-anchoring step. None if that route fails.
  std::optional<Cut> in_cut_via_witness(int s, int t, int free, int other) const;

  void save(std::ostream& out) const;
  static CompactOracle load(std::istream& in);

 private:
  struct Step;
  struct Descent;
  using CarcassMaker = std::function<Carcass(const CompactNode&, const std::vector<int>&)>;

  void check_pair(int s, int t) const;
  // Slots from the root down to the node where s and t split.
  std::vector<int> path_to(int s, int t) const;
  // Index into child.contracted of the vertex absorbing parent vertex v, or -1.
  int route(const CompactNode& child, int v) const;
  int child_vertex(const CompactNode& child, int v) const;
  std::vector<int> child_map(const CompactNode& child) const;
  // Strip of the mincuts enclosing everything outside one contracted vertex,
  // sinking at the smallest Steiner vertex beyond it.
  Strip strip_above(const CompactNode& child, int contracted) const;
  Strip pair_strip(const CompactNode& node, int s, int t) const;
  // Follows v down the path. Edge-containment mode carries `e` and stops at
  // an infeasible transform; nearest mode also re-anchors witnesses.
  Descent descend(const std::vector<int>& path, int v, std::optional<EdgeBundle> e,
                  bool nearest) const;
  // Pulls a vertex mask of the graph below steps[to..from) up to the graph
  // above steps[to].
  std::vector<char> lift(const std::vector<Step>& steps, int from, int to,
                         std::vector<char> mask) const;
  std::vector<char> expand(const CompactNode& node, const std::vector<char>& mask) const;
  Cut oriented(std::vector<char> mask, int s) const;

  CompactNode contract_child(int parent_slot, int hnode) const;
  void assemble(const CarcassMaker& make_carcass);

  Multigraph g_;
  HierarchyTree h_;
  std::vector<int> slot_;  // hierarchy node -> index into nodes_, -1 for leaves
  std::vector<CompactNode> nodes_;
  std::unordered_set<long long> adjacent_;
  CompactStats stats_;
};

}  // namespace msens
