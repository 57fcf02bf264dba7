#include "msens/reference.hpp"

#include <string>

namespace msens::bf {

int ft(const Multigraph& g, int s, int t, int edge_id) {
  return max_flow_value(g.without_edge(edge_id), s, t);
}

int in(const Multigraph& g, int s, int t, int x, int y) {
  require(x != y, "inserted edge would be a self-loop");
  return max_flow_value(g.with_edge(x, y), s, t);
}

namespace {
void check_cap(const Multigraph& g, int cap) {
  if (g.n() > cap)
    throw CapacityError("enumeration over " + std::to_string(g.n()) + " vertices exceeds cap " +
                        std::to_string(cap));
}
}  // namespace

std::vector<std::vector<char>> mincut_sides(const Multigraph& g, int s, int t, int cap) {
  require(s != t, "s == t");
  check_cap(g, cap);
  const int n = g.n();
  const int c = max_flow_value(g, s, t);
  std::vector<int> free;
  for (int v = 0; v < n; ++v)
    if (v != s && v != t) free.push_back(v);
  std::vector<std::vector<char>> out;
  std::vector<char> in(n, 0);
  for (unsigned long mask = 0; mask < (1UL << free.size()); ++mask) {
    std::fill(in.begin(), in.end(), 0);
    in[s] = 1;
    for (size_t i = 0; i < free.size(); ++i)
      if (mask >> i & 1) in[free[i]] = 1;
    if (cut_value_mask(g, in) == c) out.push_back(in);
  }
  return out;
}

bool edge_contained(const Multigraph& g, int s, int t, const std::vector<int>& edge_ids, int cap) {
  for (const auto& side : mincut_sides(g, s, t, cap)) {
    bool all = true;
    for (int id : edge_ids) {
      const Edge& e = g.edge(id);
      if (side[e.u] == side[e.v]) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

std::vector<int> nearest_side(const Multigraph& g, int s, int t) {
  Strip st = build_strip(g, s, t);
  return st.members[st.source()];
}

std::vector<int> nearest_side_enum(const Multigraph& g, int s, int t, int cap) {
  std::vector<char> meet(g.n(), 1);
  for (const auto& side : mincut_sides(g, s, t, cap))
    for (int v = 0; v < g.n(); ++v) meet[v] = meet[v] && side[v];
  std::vector<int> out;
  for (int v = 0; v < g.n(); ++v)
    if (meet[v]) out.push_back(v);
  return out;
}

std::vector<std::vector<int>> all_pairs_values(const Multigraph& g) {
  const int n = g.n();
  std::vector<std::vector<int>> val(n, std::vector<int>(n, 0));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) val[u][v] = val[v][u] = max_flow_value(g, u, v);
  return val;
}

std::vector<std::pair<int, int>> affected_pairs(const Multigraph& g, const Change& change,
                                                int cap) {
  check_cap(g, cap);
  Multigraph h = change.insert ? g.with_edge(change.x, change.y) : g.without_edge(change.edge_id);
  auto before = all_pairs_values(g);
  auto after = all_pairs_values(h);
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (before[u][v] != after[u][v]) out.push_back({u, v});
  return out;
}

}  // namespace msens::bf
