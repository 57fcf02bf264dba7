#include "doctest.h"
#include "msens/fixtures.hpp"
#include "msens/gomory_hu.hpp"

using namespace msens;

namespace {
// Fundamental cut of the tree edge above v: the subtree of v.
std::vector<int> subtree(const GomoryHuTree& t, int v) {
  std::vector<int> out;
  for (int w = 0; w < t.n; ++w) {
    int x = w;
    while (x >= 0 && x != v) x = t.parent[x];
    if (x == v) out.push_back(w);
  }
  return out;
}
}  // namespace

TEST_CASE("cut tree examples") {
  Multigraph p4 = fixtures::p4();
  GomoryHuTree t = build_gomory_hu(p4);
  for (int v = 1; v < 4; ++v) {
    CHECK(t.weight[v] == 1);
    CHECK(p4.edges_between(v, t.parent[v]).size() == 1);
  }
  GomoryHuTree c = build_gomory_hu(fixtures::c4());
  for (int v = 1; v < 4; ++v) CHECK(c.weight[v] == 2);
  GomoryHuTree b = build_gomory_hu(fixtures::tb());
  int ones = 0, twos = 0;
  for (int v = 1; v < 6; ++v) (b.weight[v] == 1 ? ones : twos) += 1;
  CHECK(ones == 1);
  CHECK(twos == 4);
  Multigraph split(2);
  CHECK_THROWS_AS(build_gomory_hu(split), InvalidArgument);
}

TEST_CASE("hierarchy examples") {
  HierarchyTree c = build_hierarchy(build_gomory_hu(fixtures::c4()));
  CHECK(c.size() == 5);
  CHECK(c.node(0).val == 2);
  CHECK(c.node(0).children.size() == 4);
  CHECK(lookup_mincut_value(c, 0, 2) == 2);

  HierarchyTree b = build_hierarchy(build_gomory_hu(fixtures::tb()));
  REQUIRE(b.node(0).children.size() == 2);
  CHECK(b.node(0).val == 1);
  for (int ch : b.node(0).children) {
    CHECK(b.node(ch).val == 2);
    CHECK(b.node(ch).children.size() == 3);
  }
  CHECK(b.node(b.node(0).children[0]).steiner == std::vector<int>{0, 1, 2});
  CHECK(lookup_mincut_value(b, 0, 4) == 1);
  CHECK(lookup_mincut_value(b, 0, 1) == 2);
  CHECK_THROWS_AS(lookup_mincut_value(b, 1, 1), InvalidArgument);

  HierarchyTree one = build_hierarchy(build_gomory_hu(Multigraph(1)));
  CHECK(one.size() == 1);
  CHECK(one.node(0).is_leaf());
}

TEST_CASE("cut tree and hierarchy agree with max flow on random graphs") {
  Rng rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    int n = uniform_int(rng, 2, 12);
    Multigraph g = random_connected_multigraph(rng, n, 3 * n);
    GomoryHuTree t = build_gomory_hu(g);
    CHECK(t.total_weight() >= g.m());
    CHECK(t.total_weight() <= 2 * g.m());
    for (int v = 1; v < n; ++v) CHECK(cut_value(g, subtree(t, v)) == t.weight[v]);
    HierarchyTree h = build_hierarchy(t);
    long long hw = 0;
    for (int i = 0; i < h.size(); ++i) {
      const HierarchyNode& nd = h.node(i);
      if (nd.parent >= 0) {
        hw += h.node(nd.parent).val;
        if (!nd.is_leaf()) CHECK(nd.val > h.node(nd.parent).val);
      }
      if (!nd.is_leaf()) CHECK(nd.children.size() >= 2);
    }
    CHECK(hw <= 4 * g.m());
    for (int s = 0; s < n; ++s)
      for (int u = s + 1; u < n; ++u) {
        int c = max_flow_value(g, s, u);
        CHECK(t.path_min(s, u) == c);
        CHECK(lookup_mincut_value(h, s, u) == c);
      }
  }
}
