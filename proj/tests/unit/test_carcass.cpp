#include <algorithm>
#include <set>

#include "doctest.h"
#include "msens/carcass.hpp"
#include "msens/fixtures.hpp"
#include "msens/reference.hpp"
#include "support.hpp"

using namespace msens;
using namespace msens::testing;

namespace {

std::vector<int> all_vertices(const Multigraph& g) {
  std::vector<int> v(g.n());
  for (int i = 0; i < g.n(); ++i) v[i] = i;
  return v;
}

// Every vertex side A holding the smallest Steiner vertex that splits S with
// value c_S, by enumeration.
std::vector<std::vector<char>> steiner_mincut_sides(const Multigraph& g,
                                                    const std::vector<int>& steiner, int lambda) {
  const int n = g.n();
  std::vector<std::vector<char>> out;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    if (!(mask >> steiner[0] & 1)) continue;
    bool splits = false;
    for (int s : steiner) splits = splits || !(mask >> s & 1);
    if (!splits) continue;
    std::vector<char> in(n);
    for (int v = 0; v < n; ++v) in[v] = mask >> v & 1;
    if (cut_value_mask(g, in) == lambda) out.push_back(in);
  }
  return out;
}

std::vector<int> steiner_part(const std::vector<char>& side, const std::vector<int>& steiner) {
  std::vector<int> out;
  for (int s : steiner)
    if (side[s]) out.push_back(s);
  return out;
}

std::vector<int> sides_of(const Bunch& b) { return b.source_side; }

// Steiner source side induced by a skeleton cut, oriented to hold the
// smallest Steiner vertex.
std::vector<int> induced(const Carcass& c, const SkeletonCut& cut) {
  int anchor = c.node_of_vertex(c.steiner[0]);
  std::vector<char> side = cut_sides(c.skeleton, cut, anchor);
  std::vector<int> out;
  for (int s : c.steiner)
    if (side[c.node_of_vertex(s)]) out.push_back(s);
  return out;
}

std::vector<int> random_subset(Rng& rng, int n, int k) {
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  for (int i = 0; i < k; ++i) std::swap(all[i], all[uniform_int(rng, i, n - 1)]);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

TEST_CASE("bunch examples") {
  std::vector<Bunch> c4 = compute_bunches(fixtures::c4(), {0, 1, 2, 3});
  CHECK(c4.size() == 6);
  std::set<std::vector<int>> sides;
  for (const Bunch& b : c4) sides.insert(b.source_side);
  CHECK(sides.count({0}));
  CHECK(sides.count({0, 1}));
  CHECK(sides.count({0, 3}));
  CHECK(sides.count({0, 1, 2}));
  CHECK(sides.count({0, 1, 3}));
  CHECK(sides.count({0, 2, 3}));

  std::vector<Bunch> p3 = compute_bunches(fixtures::p3(), {0, 2});
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].strip.num_nodes() == 3);
  CHECK(p3[0].strip.members[1] == std::vector<int>{1});

  std::vector<Bunch> tb = compute_bunches(fixtures::tb(), all_vertices(fixtures::tb()));
  REQUIRE(tb.size() == 1);
  CHECK(tb[0].source_side == std::vector<int>{0, 1, 2});
  CHECK(tb[0].strip.value == 1);

  CHECK_THROWS_AS(compute_bunches(fixtures::c4(), {1}), InvalidArgument);
  Multigraph big = fixtures::c4();
  Rng rng(3);
  Multigraph g20 = random_connected_multigraph(rng, 20, 40);
  CHECK_THROWS_AS(compute_bunches_exhaustive(g20, all_vertices(g20)), CapacityError);
  CHECK_NOTHROW(compute_bunches(g20, all_vertices(g20)));
}

TEST_CASE("unit examples") {
  Multigraph tb = fixtures::tb();
  UnitPartition u = compute_units(tb, all_vertices(tb), compute_bunches(tb, all_vertices(tb)));
  CHECK(u.size() == 2);
  CHECK(u.terminal == std::vector<char>{1, 1});

  Multigraph c4 = fixtures::c4();
  UnitPartition w = compute_units(c4, {0, 2}, compute_bunches(c4, {0, 2}));
  REQUIRE(w.size() == 4);
  CHECK(w.terminal == std::vector<char>{1, 0, 1, 0});
  CHECK(w.steiner == std::vector<char>{1, 0, 1, 0});

  UnitPartition all = compute_units(c4, all_vertices(c4), compute_bunches(c4, all_vertices(c4)));
  CHECK(all.size() == 4);
  CHECK(all.terminal == std::vector<char>{1, 1, 1, 1});
}

TEST_CASE("skeleton examples") {
  Carcass c4 = build_carcass(fixtures::c4(), {0, 1, 2, 3});
  CHECK(c4.skeleton.num_nodes == 4);
  REQUIRE(c4.skeleton.cycles.size() == 1);
  CHECK(c4.skeleton.cycles[0] == std::vector<int>{0, 1, 2, 3});
  CHECK(c4.skeleton.tree_edges.empty());

  Carcass tb = build_carcass(fixtures::tb(), all_vertices(fixtures::tb()));
  CHECK(tb.skeleton.num_nodes == 2);
  CHECK(tb.skeleton.tree_edges.size() == 1);
  CHECK(tb.skeleton.cycles.empty());

  Carcass p3 = build_carcass(fixtures::p3(), {0, 2});
  CHECK(p3.skeleton.num_nodes == 2);
  CHECK(p3.skeleton.tree_edges.size() == 1);
  CHECK(p3.skeleton.node_of_unit[p3.units.unit_of[1]] == -1);
  CHECK(p3.proj[p3.units.unit_of[1]] == NodePath{0, 1});
  CHECK(p3.tau[p3.units.unit_of[1]] == 0);

  // One bunch with all its mincuts on one tree edge.
  Carcass c4t = build_carcass(fixtures::c4(), {0, 2});
  CHECK(c4t.skeleton.num_nodes == 2);
  CHECK(c4t.skeleton.tree_edges.size() == 1);
  CHECK(c4t.proj[1] == NodePath{0, 1});
  CHECK(c4t.proj[3] == NodePath{0, 1});
  CHECK(c4t.tau[1] == 0);
  CHECK(c4t.tau[3] == 1);

  // A triangle inside a larger graph: three singleton bunches form a 3-cycle.
  Carcass tri = build_carcass(fixtures::tb(), {0, 1, 2});
  CHECK(tri.skeleton.num_nodes == 3);
  REQUIRE(tri.skeleton.cycles.size() == 1);
  CHECK(tri.skeleton.cycles[0].size() == 3);

  // K4: four singleton bunches around an empty center.
  Carcass k4 = build_carcass(fixtures::k4(), {0, 1, 2, 3});
  CHECK(k4.skeleton.num_nodes == 5);
  CHECK(k4.skeleton.tree_edges.size() == 4);
  CHECK(k4.skeleton.node_units[4].empty());

  Carcass none = build_carcass(fixtures::tb(), all_vertices(fixtures::tb()));
  for (int u = 0; u < none.units.size(); ++u) CHECK(none.tau[u] == -1);
}

TEST_CASE("path intersection, extension and link examples") {
  Carcass c4 = build_carcass(fixtures::c4(), {0, 1, 2, 3});
  const Skeleton& sk = c4.skeleton;
  auto w = skeleton_paths_intersect(sk, {0, 2}, {1, 3});
  REQUIRE(w);
  CHECK(w->is_cycle());
  CHECK_FALSE(skeleton_paths_intersect(sk, {1, 1}, {1, 1}));
  CHECK_FALSE(extendable(sk, {0, 1}, 1, {1, 2}));
  CHECK(extendable(sk, {0, 1}, 1, {0, 1}) == NodePath{0, 1});

  Link l = build_link(sk, 0, 2);
  std::set<int> groups;
  for (int v = 0; v < 4; ++v) groups.insert(l.group_of[v]);
  CHECK(groups.size() == 4);
  Link single = build_link(sk, 1, 1);
  CHECK(single.num_groups() == 1);
  CHECK_THROWS_AS(build_link(sk, 0, sk.cycle_node(0)), InvalidArgument);

  Carcass tb = build_carcass(fixtures::tb(), all_vertices(fixtures::tb()));
  auto te = skeleton_paths_intersect(tb.skeleton, {0, 1}, {0, 1});
  REQUIRE(te);
  CHECK_FALSE(te->is_cycle());
  CHECK(extendable(tb.skeleton, {0, 1}, 1, {0, 1}) == NodePath{0, 1});
  Link tl = build_link(tb.skeleton, 0, 1);
  CHECK(tl.num_groups() == 2);
}

TEST_CASE("strips from the carcass") {
  Multigraph c4g = fixtures::c4();
  Carcass c4 = build_carcass(c4g, {0, 1, 2, 3});
  // The two cycle edges around node(v1).
  Strip st = strip_for_skeleton_cut(c4g, c4, {-1, 0, 0, 3}, 0);
  REQUIRE(st.num_nodes() == 2);
  CHECK(st.members[0] == std::vector<int>{0});
  CHECK(st.members[1] == std::vector<int>{1, 2, 3});

  Multigraph p3g = fixtures::p3();
  Carcass p3 = build_carcass(p3g, {0, 2});
  CHECK(canonical(p3g, strip_for_skeleton_cut(p3g, p3, {0, -1, -1, -1}, 0)) ==
        canonical(p3g, build_strip(p3g, 0, 2)));

  Multigraph tbg = fixtures::tb();
  Carcass tb = build_carcass(tbg, all_vertices(tbg));
  Strip ts = strip_for_skeleton_cut(tbg, tb, {0, -1, -1, -1}, 0);
  REQUIRE(ts.num_nodes() == 2);
  CHECK(ts.members[0] == std::vector<int>{0, 1, 2});
  CHECK_THROWS_AS(strip_for_skeleton_cut(tbg, tb, {5, -1, -1, -1}, 0), InvalidArgument);
}

TEST_CASE("carcass properties on random graphs") {
  Rng rng(2024);
  for (int iter = 0; iter < 250; ++iter) {
    int n = uniform_int(rng, 2, 9);
    Multigraph g = random_connected_multigraph(rng, n, 3 * n);
    int k = iter % 3 == 0 ? n : uniform_int(rng, 2, std::min(n, 6));
    std::vector<int> steiner = random_subset(rng, n, k);
    CAPTURE(iter);
    Carcass c = build_carcass(g, steiner);
    const Skeleton& sk = c.skeleton;

    // Polynomial and exhaustive enumerations agree.
    auto ex = compute_bunches_exhaustive(g, steiner);
    REQUIRE(ex.size() == c.bunches.size());
    for (size_t i = 0; i < ex.size(); ++i) CHECK(sides_of(ex[i]) == sides_of(c.bunches[i]));

    // Skeleton cuts induce exactly the Steiner bipartitions of value c_S.
    auto bf_sides = steiner_mincut_sides(g, steiner, c.value);
    std::set<std::vector<int>> expect, got;
    for (const auto& side : bf_sides) expect.insert(steiner_part(side, steiner));
    for (const SkeletonCut& cut : all_skeleton_cuts(sk)) got.insert(induced(c, cut));
    CHECK(got == expect);

    // Units are the classes never split by a Steiner mincut.
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        bool split = false;
        for (const auto& side : bf_sides) split = split || side[x] != side[y];
        CHECK(split == (c.units.unit_of[x] != c.units.unit_of[y]));
      }

    // Edge containment for Steiner pairs at Steiner distance.
    for (size_t i = 0; i < steiner.size(); ++i)
      for (size_t j = 0; j < steiner.size(); ++j) {
        int s = steiner[i], t = steiner[j];
        if (s == t || max_flow_value(g, s, t) != c.value) continue;
        for (const Edge& e : g.edges())
          CHECK(c.edge_contained(s, t, e.u, e.v) == bf::edge_contained(g, s, t, {e.id}));
        int a = c.node_of_vertex(s), b = c.node_of_vertex(t);
        Strip mine = strip_between(g, c, a, b);
        CHECK(canonical(g, mine) == canonical(g, build_strip(g, s, t)));
        // Stretched units sharing a path appear in tau order.
        for (const StripArc& arc : mine.arcs) {
          int ut = c.units.unit_of[mine.members[arc.tail][0]];
          int uh = c.units.unit_of[mine.members[arc.head][0]];
          if (c.stretched(ut) && c.stretched(uh) && c.proj[ut] == c.proj[uh] &&
              c.proj[ut] == NodePath{std::min(a, b), std::max(a, b)})
            CHECK((a < b ? c.tau[ut] < c.tau[uh] : c.tau[ut] > c.tau[uh]));
        }
      }

    // Subbunch strips equal the strips of the correspondingly contracted graph.
    int anchor = c.node_of_vertex(steiner[0]);
    for (const SkeletonCut& cut : all_skeleton_cuts(sk)) {
      Strip st = strip_for_skeleton_cut(g, c, cut, anchor);
      ContractResult cr = contract_map(g, {st.members[st.source()], st.members[st.sink()]});
      Strip ref = build_strip(cr.graph, cr.new_of_old[st.members[st.source()][0]],
                              cr.new_of_old[st.members[st.sink()][0]]);
      CHECK(canonical(g, st) == canonical(cr.graph, ref));
      CHECK(st.value == c.value);
    }

    // Link property: separated groups are exactly the pairs whose paths cross P.
    for (int a = 0; a < sk.num_nodes; ++a)
      for (int b = 0; b < sk.num_nodes; ++b) {
        if ((a * 7 + b) % 3 != 0) continue;
        Link link = build_link(sk, a, b);
        for (int x = 0; x < sk.num_nodes; ++x)
          for (int y = 0; y < sk.num_nodes; ++y) {
            bool differ = link.group_of[x] != link.group_of[y];
            CHECK(differ == skeleton_paths_intersect(sk, {a, b}, {x, y}).has_value());
          }
      }

    // Extension returns a proper path with the right prefix and suffix.
    std::vector<NodePath> paths;
    for (int u = 0; u < c.units.size(); ++u)
      if (c.stretched(u)) paths.push_back(c.proj[u]);
    for (const NodePath& p1 : paths)
      for (const NodePath& p2 : paths)
        for (int toward : {p1.a, p1.b}) {
          int near = toward == p1.a ? p1.b : p1.a;
          auto prefix = sk.tree.path(near, toward);
          bool exists = false;
          for (int flip = 0; flip < 2; ++flip) {
            int w = flip ? p2.b : p2.a, z = flip ? p2.a : p2.b;
            auto full = sk.tree.path(near, z);
            auto suffix = sk.tree.path(w, z);
            bool ok = full.size() >= prefix.size() && full.size() >= suffix.size() &&
                      std::equal(prefix.begin(), prefix.end(), full.begin()) &&
                      std::equal(suffix.rbegin(), suffix.rend(), full.rbegin()) &&
                      is_proper(sk, near, z);
            exists = exists || ok;
          }
          auto r = extendable(sk, p1, toward, p2);
          CHECK(r.has_value() == exists);
        }
  }
}

TEST_CASE("stretched unit between a cycle node and its empty stand-in") {
  // Several units cross only the bunch isolating the node of vertex 4 on a
  // 4-cycle, so that node hangs off an empty cycle node.
  const std::vector<int> ends{0,  1,  1,  2,  0,  3,  2,  4,  3,  5,  4,  6,  6,  7,  4,  8,  2,
                              9,  4,  10, 9,  11, 9,  12, 8,  13, 0,  14, 10, 15, 7,  16, 13, 17,
                              10, 18, 14, 19, 2,  20, 7,  21, 2,  22, 19, 23, 5,  24, 1,  25, 0,
                              26, 12, 27, 24, 28, 15, 29, 1,  22, 21, 6,  3,  15, 1,  26, 5,  17,
                              20, 18, 12, 11, 6,  28, 16, 0,  16, 29};
  Multigraph g(30);
  for (size_t i = 0; i < ends.size(); i += 2) g.add_edge(ends[i], ends[i + 1]);
  const std::vector<int> steiner{0, 1, 2, 4};
  Carcass c = build_carcass(g, steiner);
  const Skeleton& sk = c.skeleton;
  REQUIRE(sk.cycles.size() == 1);
  CHECK(sk.cycles[0].size() == 4);
  const int x = c.node_of_vertex(4);
  CHECK(sk.position_in_cycle(0, x) < 0);
  REQUIRE(sk.tree_edges.size() == 1);
  const int e = sk.tree_edges[0].second;
  CHECK(sk.tree_edges[0].first == x);
  CHECK(sk.node_units[e].empty());
  CHECK(sk.position_in_cycle(0, e) >= 0);

  int hanging = 0;
  for (int u = 0; u < c.units.size(); ++u)
    if (c.stretched(u) && c.proj[u] == NodePath{x, e}) ++hanging;
  CHECK(hanging >= 2);

  for (int s : steiner)
    for (int t : steiner) {
      if (s == t || max_flow_value(g, s, t) != c.value) continue;
      // A single edge lies in some mincut exactly when failing it lowers the value.
      for (const Edge& ed : g.edges())
        CHECK(c.edge_contained(s, t, ed.u, ed.v) == (bf::ft(g, s, t, ed.id) == c.value - 1));
      for (int v = 0; v < g.n(); ++v) {
        std::vector<int> near = bf::nearest_side(g, s, t);
        CHECK(c.in_nearest(s, t, v) == std::binary_search(near.begin(), near.end(), v));
      }
      Strip mine = strip_between(g, c, c.node_of_vertex(s), c.node_of_vertex(t));
      CHECK(canonical(g, mine) == canonical(g, build_strip(g, s, t)));
    }

  int anchor = c.node_of_vertex(steiner[0]);
  for (const SkeletonCut& cut : all_skeleton_cuts(sk)) {
    Strip st = strip_for_skeleton_cut(g, c, cut, anchor);
    ContractResult cr = contract_map(g, {st.members[st.source()], st.members[st.sink()]});
    Strip ref = build_strip(cr.graph, cr.new_of_old[st.members[st.source()][0]],
                            cr.new_of_old[st.members[st.sink()][0]]);
    CHECK(canonical(g, st) == canonical(cr.graph, ref));
  }
}
