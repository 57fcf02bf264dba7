#pragma once

#include <algorithm>
#include <tuple>
#include <vector>

#include <optional>

#include "msens/fixtures.hpp"
#include "msens/graph.hpp"
#include "msens/reference.hpp"

namespace msens::testing {

inline std::vector<int> mask_to_list(const std::vector<char>& m) {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(m.size()); ++v)
    if (m[v]) out.push_back(v);
  return out;
}

// Node-by-node description of a strip in original vertices:
// (rank, original vertices, side toward source, side toward sink) with the
// source first and the sink last; the middle is sorted by vertex set.
using StripNodeView = std::tuple<int, std::vector<int>, std::vector<int>, std::vector<int>>;

inline std::vector<StripNodeView> canonical(const Multigraph& g, const Strip& st) {
  std::vector<StripNodeView> out;
  for (int x = 0; x < st.num_nodes(); ++x) {
    std::vector<int> verts;
    for (int v : st.members[x]) verts.insert(verts.end(), g.origin(v).begin(), g.origin(v).end());
    std::sort(verts.begin(), verts.end());
    int rank = x == st.source() ? 0 : x == st.sink() ? 2 : 1;
    out.emplace_back(rank, verts, st.side_s(x), st.side_t(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// All transversals of a strip as vertex sides, sorted (exponential).
inline std::vector<std::vector<int>> transversal_sides(const Multigraph& g, const Strip& st) {
  const int k = st.num_nodes();
  std::vector<std::vector<int>> out;
  for (unsigned long mask = 0; mask < (1UL << (k - 2)); ++mask) {
    std::vector<int> nodes{0};
    for (int i = 0; i < k - 2; ++i)
      if (mask >> i & 1) nodes.push_back(i + 1);
    if (is_transversal(st, nodes)) out.push_back(mask_to_list(nodes_to_mask(g, st, nodes)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Three distinct vertices with c(s,r) >= c(s,t) and an (s,t)-mincut side A
// holding both s and r.
struct TripleInstance {
  Multigraph g;
  int s = -1, r = -1, t = -1;
  std::vector<char> a;
};

inline std::optional<TripleInstance> sample_triple(Rng& rng, int n_lo, int n_hi) {
  int n = uniform_int(rng, n_lo, n_hi);
  TripleInstance in;
  in.g = random_connected_multigraph(rng, n, 3 * n);
  in.s = uniform_int(rng, 0, n - 1);
  do in.r = uniform_int(rng, 0, n - 1); while (in.r == in.s);
  do in.t = uniform_int(rng, 0, n - 1); while (in.t == in.s || in.t == in.r);
  if (max_flow_value(in.g, in.s, in.r) < max_flow_value(in.g, in.s, in.t)) return std::nullopt;
  std::vector<std::vector<char>> sides;
  for (auto& m : bf::mincut_sides(in.g, in.s, in.t))
    if (m[in.r]) sides.push_back(m);
  if (sides.empty()) return std::nullopt;
  in.a = sides[uniform_int(rng, 0, static_cast<int>(sides.size()) - 1)];
  return in;
}

}  // namespace msens::testing
