#pragma once

#include <vector>

#include "msens/graph.hpp"
#include "msens/tree_index.hpp"

namespace msens {

// Cut tree: vertex 0 is the root, every other vertex v hangs below parent[v]
// with weight[v] = mincut value between the two.
struct GomoryHuTree {
  int n = 0;
  std::vector<int> parent;
  std::vector<int> weight;

  int path_min(int s, int t) const;
  long long total_weight() const;
};

GomoryHuTree build_gomory_hu(const Multigraph& g);

struct HierarchyNode {
  int parent = -1;
  std::vector<int> children;
  int val = 0;       // Steiner mincut value of the leaf set (0 for leaves)
  int vertex = -1;   // leaves only
  std::vector<int> steiner;  // sorted leaf vertices below
  bool is_leaf() const { return vertex >= 0; }
};

// Nested partition of V by strictly increasing connectivity. Node 0 is the
// root; children are listed by smallest contained vertex.
class HierarchyTree {
 public:
  HierarchyTree() = default;
  explicit HierarchyTree(std::vector<HierarchyNode> nodes);

  int size() const { return static_cast<int>(nodes_.size()); }
  const HierarchyNode& node(int i) const { return nodes_[i]; }
  const std::vector<HierarchyNode>& nodes() const { return nodes_; }
  int leaf_of(int v) const { return leaf_of_[v]; }
  int lca_of_vertices(int s, int t) const;
  // Child of ancestor a that lies on the path to vertex v's leaf.
  int child_toward(int a, int v) const;
  const TreeIndex& index() const { return index_; }
  std::vector<int> internal_nodes() const;

 private:
  std::vector<HierarchyNode> nodes_;
  std::vector<int> leaf_of_;
  TreeIndex index_;
};

HierarchyTree build_hierarchy(const GomoryHuTree& ght);
int lookup_mincut_value(const HierarchyTree& h, int s, int t);

}  // namespace msens
