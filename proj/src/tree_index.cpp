#include "msens/tree_index.hpp"

#include <algorithm>

#include "msens/errors.hpp"

namespace msens {

namespace ops {
namespace {
thread_local std::uint64_t counter = 0;
}
void tick(std::uint64_t k) { counter += k; }
std::uint64_t read() { return counter; }
void reset() { counter = 0; }
}  // namespace ops

TreeIndex::TreeIndex(const std::vector<std::vector<int>>& adj, int root) : root_(root) {
  const int n = static_cast<int>(adj.size());
  require(root >= 0 && root < n, "tree root out of range");
  parent_.assign(n, -1);
  depth_.assign(n, -1);
  tin_.assign(n, 0);
  tout_.assign(n, 0);
  first_.assign(n, 0);
  children_.assign(n, {});
  // Iterative DFS producing the Euler tour.
  std::vector<std::pair<int, size_t>> stack{{root, 0}};
  depth_[root] = 0;
  int timer = 0;
  tin_[root] = timer++;
  first_[root] = 0;
  euler_.push_back(root);
  while (!stack.empty()) {
    auto& [v, i] = stack.back();
    if (i < adj[v].size()) {
      int w = adj[v][i++];
      if (w == parent_[v] && depth_[w] >= 0) continue;
      check_internal(depth_[w] < 0, "tree adjacency has a cycle");
      parent_[w] = v;
      depth_[w] = depth_[v] + 1;
      children_[v].push_back(w);
      tin_[w] = timer++;
      first_[w] = static_cast<int>(euler_.size());
      euler_.push_back(w);
      stack.push_back({w, 0});
    } else {
      tout_[v] = timer;
      stack.pop_back();
      if (!stack.empty()) euler_.push_back(stack.back().first);
    }
  }
  for (int v = 0; v < n; ++v) check_internal(depth_[v] >= 0, "tree is not connected");

  const int len = static_cast<int>(euler_.size());
  int levels = 1;
  while ((1 << levels) <= len) ++levels;
  sparse_.assign(levels, std::vector<int>(len));
  sparse_[0] = euler_;
  for (int k = 1; k < levels; ++k)
    for (int i = 0; i + (1 << k) <= len; ++i) {
      int a = sparse_[k - 1][i], b = sparse_[k - 1][i + (1 << (k - 1))];
      sparse_[k][i] = depth_[a] <= depth_[b] ? a : b;
    }
  int lift = 1;
  while ((1 << lift) < n) ++lift;
  up_.assign(lift, std::vector<int>(n));
  for (int v = 0; v < n; ++v) up_[0][v] = parent_[v] < 0 ? v : parent_[v];
  for (int k = 1; k < lift; ++k)
    for (int v = 0; v < n; ++v) up_[k][v] = up_[k - 1][up_[k - 1][v]];
}

int TreeIndex::lca(int u, int v) const {
  ops::tick();
  int a = first_[u], b = first_[v];
  if (a > b) std::swap(a, b);
  int k = 31 - __builtin_clz(static_cast<unsigned>(b - a + 1));
  int x = sparse_[k][a], y = sparse_[k][b - (1 << k) + 1];
  return depth_[x] <= depth_[y] ? x : y;
}

bool TreeIndex::is_ancestor(int a, int v) const {
  ops::tick();
  return tin_[a] <= tin_[v] && tout_[v] <= tout_[a];
}

int TreeIndex::dist(int u, int v) const { return depth_[u] + depth_[v] - 2 * depth_[lca(u, v)]; }

bool TreeIndex::on_path(int w, int a, int b) const {
  int l = lca(a, b);
  return is_ancestor(l, w) && (is_ancestor(w, a) || is_ancestor(w, b));
}

int TreeIndex::level_ancestor(int v, int d) const {
  require(d >= 0 && d <= depth_[v], "level ancestor depth out of range");
  int diff = depth_[v] - d;
  for (int k = 0; diff > 0; ++k, diff >>= 1)
    if (diff & 1) v = up_[k][v];
  return v;
}

int TreeIndex::next_on_path(int u, int v) const {
  require(u != v, "next_on_path with equal ends");
  if (is_ancestor(u, v)) return level_ancestor(v, depth_[u] + 1);
  return parent_[u];
}

int TreeIndex::project(int w, int a, int b) const {
  int x = lca(w, a), y = lca(w, b), z = lca(a, b);
  int best = x;
  if (depth_[y] > depth_[best]) best = y;
  if (depth_[z] > depth_[best]) best = z;
  return best;
}

std::optional<std::pair<int, int>> TreeIndex::path_intersection(int a, int b, int c, int d) const {
  int x = project(c, a, b);
  if (!on_path(x, c, d)) return std::nullopt;
  int y = project(d, a, b);
  if (dist(a, x) > dist(a, y)) std::swap(x, y);
  return std::make_pair(x, y);
}

std::vector<int> TreeIndex::path(int a, int b) const {
  int l = lca(a, b);
  std::vector<int> left, right;
  for (int v = a; v != l; v = parent_[v]) left.push_back(v);
  for (int v = b; v != l; v = parent_[v]) right.push_back(v);
  left.push_back(l);
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

}  // namespace msens
