#include <algorithm>

#include "doctest.h"
#include "msens/fixtures.hpp"
#include "msens/reference.hpp"
#include "msens/transform.hpp"
#include "support.hpp"

using namespace msens;
using namespace msens::testing;

namespace {

// H1 edge ids: 0,1 = (s,r) twice, 2 = (s,y), 3 = (y,t), 4 = (r,t).
constexpr int S = 0, R = 1, Y = 2, T = 3;

bool cuts_all(const Cut& c, const Multigraph& g, const std::vector<int>& ids) {
  for (int id : ids) {
    const Edge& e = g.edge(id);
    bool iu = std::binary_search(c.side.begin(), c.side.end(), e.u);
    bool iv = std::binary_search(c.side.begin(), c.side.end(), e.v);
    if (iu == iv) return false;
  }
  return true;
}

std::vector<int> incident_ids(const Multigraph& g, int v) {
  std::vector<int> out;
  for (int p : g.incident(v)) out.push_back(g.edge_at(p).id);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("strip above a fixed mincut") {
  Multigraph h1 = fixtures::h1();
  Strip st = build_strip_above(h1, {S, R}, T);
  REQUIRE(st.num_nodes() == 3);
  CHECK(st.members[st.source()] == std::vector<int>{S, R});
  CHECK(st.node_of[Y] == 1);
  CHECK(st.side_s(1) == std::vector<int>{2});
  CHECK(st.side_t(1) == std::vector<int>{3});
  bool direct = false;
  for (const StripArc& a : st.arcs) direct = direct || (a.edge == 4 && a.tail == 0 && a.head == 2);
  CHECK(direct);

  Multigraph p3 = fixtures::p3();
  CHECK(canonical(p3, build_strip_above(p3, {0}, 2)) == canonical(p3, build_strip(p3, 0, 2)));

  Multigraph c4 = fixtures::c4();
  Strip sc = build_strip_above(c4, {0, 1}, 2);
  REQUIRE(sc.num_nodes() == 3);
  CHECK(sc.members[1] == std::vector<int>{3});
  CHECK(sc.members[sc.sink()] == std::vector<int>{2});

  CHECK_THROWS_AS(build_strip_above(c4, {0, 2}, 1), InvalidArgument);
  CHECK_THROWS_AS(build_strip_above(c4, {0, 1}, 1), InvalidArgument);
}

TEST_CASE("edge bundle transformation examples") {
  Multigraph h1 = fixtures::h1();
  Strip st = build_strip_above(h1, {S, R}, T);

  EdgeBundle toward_t{Y, {3}};
  CHECK(bundle_side(h1, st, toward_t) == BundleSide::Sink);
  TransformResult a = transform_edge_bundle(h1, st, toward_t);
  CHECK(a.feasible);
  CHECK(a.edges_on_a == std::vector<int>{2});

  EdgeBundle toward_s{Y, {2}};
  CHECK(bundle_side(h1, st, toward_s) == BundleSide::Source);
  TransformResult b = transform_edge_bundle(h1, st, toward_s);
  CHECK(b.feasible);
  CHECK(b.edges_on_a == std::vector<int>{2});

  // C4 above {v1,v2} toward v3: v4 has one edge on each side.
  Multigraph c4 = fixtures::c4();
  Strip sc = build_strip_above(c4, {0, 1}, 2);
  EdgeBundle both{3, incident_ids(c4, 3)};
  CHECK(bundle_side(c4, sc, both) == BundleSide::Split);
  CHECK_FALSE(transform_edge_bundle(c4, sc, both).feasible);

  CHECK_THROWS_AS(transform_edge_bundle(h1, st, EdgeBundle{S, {2}}), InvalidArgument);
  CHECK_THROWS_AS(transform_edge_bundle(h1, st, EdgeBundle{Y, {0}}), InvalidArgument);
  CHECK_THROWS_AS(transform_edge_bundle(h1, st, EdgeBundle{Y, {}}), InvalidArgument);
}

TEST_CASE("lifting a cut back to the bundle") {
  Multigraph h1 = fixtures::h1();
  Strip st = build_strip_above(h1, {S, R}, T);
  Cut b = make_cut(h1, {1, 0, 0, 0});
  REQUIRE(b.value == 3);
  Cut lifted = lift_cut(h1, st, b, EdgeBundle{Y, {3}});
  CHECK(lifted.side == std::vector<int>{S, Y});
  CHECK(lifted.value == 3);

  // The bundle is already cut and the region adds nothing new.
  Cut same = lift_cut(h1, st, b, EdgeBundle{Y, {2}});
  CHECK(same.side == std::vector<int>{S});

  Cut misses = make_cut(h1, {0, 1, 0, 0});
  CHECK_THROWS_AS(lift_cut(h1, st, misses, EdgeBundle{Y, {3}}), InvalidArgument);
}

TEST_CASE("nearest check above a fixed mincut") {
  Multigraph h1 = fixtures::h1();
  Strip st = build_strip_above(h1, {S, R}, T);
  auto contains = [&](const std::vector<int>& ids) { return bf::edge_contained(h1, S, R, ids); };
  CHECK(nearest_witness_edges(h1, st, Y) == std::vector<int>{2});
  CHECK_FALSE(nearest_check_local(h1, st, Y, S, true, contains));
  CHECK(nearest_check_local(h1, st, S, S, true, contains));
  CHECK_FALSE(nearest_check_local(h1, st, T, S, false, contains));
  CHECK_THROWS_AS(nearest_check_local(h1, st, R, S, true, contains), InvalidArgument);
}

TEST_CASE("3-vertex assertions on sampled instances") {
  Rng rng(3303);
  int checked = 0;
  while (checked < 400) {
    auto in = sample_triple(rng, 3, 9);
    if (!in) continue;
    // B may hold r or s; orient the roles so B holds the first of the pair.
    for (auto [p, q] : {std::pair{in->r, in->s}, std::pair{in->s, in->r}})
      for (const auto& b : bf::mincut_sides(in->g, p, q)) {
        if (b[in->t]) continue;
        ThreeVertexReport rep = three_vertex_assertions(in->g, in->a, b, q, p, in->t);
        CHECK(rep.no_diagonal);
        CHECK(rep.inner_is_mincut);
        CHECK(rep.outer_is_mincut);
        ++checked;
      }
  }
}

TEST_CASE("transformation preserves (r,s)-mincut containment") {
  Rng rng(1717);
  int bundles = 0, nearest = 0;
  while (bundles < 500) {
    auto in = sample_triple(rng, 3, 9);
    if (!in) continue;
    const Multigraph& g = in->g;
    std::vector<int> a_side = mask_to_list(in->a);
    Strip st = build_strip_above(g, a_side, in->t);
    for (int y = 0; y < g.n(); ++y) {
      if (in->a[y]) continue;
      std::vector<int> inc = incident_ids(g, y);
      unsigned long full = (1UL << std::min<int>(inc.size(), 6)) - 1;
      unsigned long pick = std::uniform_int_distribution<unsigned long>(1, full)(rng);
      EdgeBundle eb{y, {}};
      for (int i = 0; i < static_cast<int>(inc.size()) && i < 6; ++i)
        if (pick >> i & 1) eb.edges.push_back(inc[i]);
      bool truth = bf::edge_contained(g, in->r, in->s, eb.edges);
      TransformResult tr = transform_edge_bundle(g, st, eb);
      INFO("y " << y);
      if (!tr.feasible) {
        CHECK_FALSE(truth);
      } else {
        CHECK(bf::edge_contained(g, in->r, in->s, tr.edges_on_a) == truth);
        if (truth) {
          int crs = max_flow_value(g, in->r, in->s);
          for (const auto& m : bf::mincut_sides(g, in->r, in->s)) {
            Cut b = make_cut(g, m);
            if (!cuts_all(b, g, tr.edges_on_a)) continue;
            Cut lifted = lift_cut(g, st, b, eb);
            CHECK(lifted.value == crs);
            CHECK(cuts_all(lifted, g, eb.edges));
            break;
          }
        }
      }
      ++bundles;

      // Nearest membership through the quotient with the complement of A contracted.
      std::vector<int> rest;
      for (int v = 0; v < g.n(); ++v)
        if (!in->a[v]) rest.push_back(v);
      ContractResult q = contract_map(g, {rest});
      std::vector<int> qnear = bf::nearest_side(q.graph, q.new_of_old[in->s], q.new_of_old[in->r]);
      bool in_quotient = std::binary_search(qnear.begin(), qnear.end(), q.new_of_old[in->t]);
      auto contains = [&](const std::vector<int>& ids) {
        return bf::edge_contained(g, in->s, in->r, ids);
      };
      std::vector<int> near = bf::nearest_side(g, in->s, in->r);
      CHECK(nearest_check_local(g, st, y, in->s, in_quotient, contains) ==
            std::binary_search(near.begin(), near.end(), y));
      ++nearest;
    }
  }
  CHECK(nearest >= 500);
}

TEST_CASE("nearest check agrees for every sink beyond A") {
  Rng rng(0x2e7a);
  int instances = 0, multi = 0;
  while (instances < 300) {
    auto in = sample_triple(rng, 3, 9);
    if (!in) continue;
    const Multigraph& g = in->g;
    std::vector<int> a_side = mask_to_list(in->a);
    int c = cut_value_mask(g, in->a);
    std::vector<int> sinks;
    for (int z = 0; z < g.n(); ++z)
      if (!in->a[z] && max_flow_value(g, in->s, z) == c) sinks.push_back(z);
    REQUIRE(std::find(sinks.begin(), sinks.end(), in->t) != sinks.end());
    if (sinks.size() > 1) ++multi;

    std::vector<int> rest;
    for (int v = 0; v < g.n(); ++v)
      if (!in->a[v]) rest.push_back(v);
    ContractResult q = contract_map(g, {rest});
    std::vector<int> qnear = bf::nearest_side(q.graph, q.new_of_old[in->s], q.new_of_old[in->r]);
    bool in_quotient = std::binary_search(qnear.begin(), qnear.end(), q.new_of_old[in->t]);
    auto contains = [&](const std::vector<int>& ids) {
      return bf::edge_contained(g, in->s, in->r, ids);
    };
    std::vector<int> near = bf::nearest_side(g, in->s, in->r);
    for (int z : sinks) {
      Strip st = build_strip_above(g, a_side, z);
      for (int y : rest) {
        INFO("sink " << z << " y " << y);
        CHECK(nearest_check_local(g, st, y, in->s, in_quotient, contains) ==
              std::binary_search(near.begin(), near.end(), y));
      }
    }
    ++instances;
  }
  CHECK(multi > 0);
}
