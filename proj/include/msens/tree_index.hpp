#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace msens {

// Primitive-operation counter used to evidence constant-time queries.
// Thread-local so concurrent queries never share a count.
namespace ops {
void tick(std::uint64_t k = 1);
std::uint64_t read();
void reset();
}  // namespace ops

// Rooted tree with constant-time LCA (Euler tour + sparse table) plus
// binary-lifting level ancestors for the few non-constant helpers.
class TreeIndex {
 public:
  TreeIndex() = default;
  TreeIndex(const std::vector<std::vector<int>>& adj, int root);

  int size() const { return static_cast<int>(depth_.size()); }
  int root() const { return root_; }
  int parent(int v) const { return parent_[v]; }
  int depth(int v) const { return depth_[v]; }
  const std::vector<int>& children(int v) const { return children_[v]; }

  int lca(int u, int v) const;
  bool is_ancestor(int a, int v) const;  // a == v counts
  int dist(int u, int v) const;
  bool on_path(int w, int a, int b) const;
  // Ancestor of v at the given depth (<= depth(v)).
  int level_ancestor(int v, int d) const;
  // Neighbor of u on the path toward v; u != v.
  int next_on_path(int u, int v) const;
  // Closest node to w on path(a,b).
  int project(int w, int a, int b) const;
  // Intersection of path(a,b) and path(c,d) as its two ends, ordered so the
  // first end is the one closer to a.
  std::optional<std::pair<int, int>> path_intersection(int a, int b, int c, int d) const;
  std::vector<int> path(int a, int b) const;

  int tin(int v) const { return tin_[v]; }
  int tout(int v) const { return tout_[v]; }

 private:
  int root_ = 0;
  std::vector<int> parent_, depth_, tin_, tout_, first_;
  std::vector<std::vector<int>> children_;
  std::vector<int> euler_;
  std::vector<std::vector<int>> sparse_;
  std::vector<std::vector<int>> up_;
};

}  // namespace msens
