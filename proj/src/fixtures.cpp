#include "msens/fixtures.hpp"

namespace msens {
namespace fixtures {

namespace {
Multigraph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Multigraph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}
}  // namespace

Multigraph p3() { return from_edges(3, {{0, 1}, {1, 2}}); }
Multigraph p4() { return from_edges(4, {{0, 1}, {1, 2}, {2, 3}}); }
Multigraph c4() { return from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }
Multigraph k4() { return from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }
Multigraph tb() {
  return from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}});
}
Multigraph h1() { return from_edges(4, {{0, 1}, {0, 1}, {0, 2}, {2, 3}, {1, 3}}); }
Multigraph k2() { return from_edges(2, {{0, 1}}); }

std::vector<Named> all() {
  return {{"P3", p3()}, {"P4", p4()}, {"C4", c4()}, {"K4", k4()}, {"TB", tb()}, {"H1", h1()}};
}

}  // namespace fixtures

int uniform_int(Rng& rng, int lo, int hi) {
  require(lo <= hi, "empty range");
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Multigraph random_connected_multigraph(Rng& rng, int n, int max_m) {
  require(n >= 2, "need at least two vertices");
  require(max_m >= n - 1, "edge budget below a spanning tree");
  Multigraph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(uniform_int(rng, 0, v - 1), v);
  int m = uniform_int(rng, n - 1, max_m);
  while (g.m() < m) {
    int u = uniform_int(rng, 0, n - 1), v = uniform_int(rng, 0, n - 1);
    if (u != v) g.add_edge(u, v);
  }
  return g;
}

}  // namespace msens
