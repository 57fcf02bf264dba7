// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every expected value comes from the brute-force oracles.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "msens/compact.hpp"
#include "msens/distributed.hpp"
#include "msens/fixtures.hpp"
#include "msens/gomory_hu.hpp"
#include "msens/quadratic.hpp"
#include "msens/reference.hpp"
#include "msens/transform.hpp"
#include "msens/tree_index.hpp"
#include "support.hpp"

using namespace msens;
using namespace msens::testing;

namespace {

constexpr int kRandomGraphs = 200;
constexpr std::uint64_t kCorpusSeed = 20261018;
constexpr std::uint64_t kOpBound = 64;

struct Criterion {
  int id;
  std::string title;
  long long checks = 0;
  long long failures = 0;
  std::string first;
  std::string note;

  void expect(bool ok, const std::function<std::string()>& where) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = where();
  }
};

struct Case {
  std::string name;
  Multigraph g;
};

std::vector<Case> corpus() {
  std::vector<Case> out;
  for (auto& f : fixtures::all())
    if (f.name != "K2") out.push_back({f.name, f.graph});
  Rng rng(kCorpusSeed);
  for (int i = 0; i < kRandomGraphs; ++i) {
    int n = uniform_int(rng, 3, 10);
    out.push_back({"random#" + std::to_string(i), random_connected_multigraph(rng, n, 3 * n)});
  }
  return out;
}

bool holds(const Cut& c, int v) { return std::binary_search(c.side.begin(), c.side.end(), v); }

std::string at(const std::string& name, std::initializer_list<int> ids) {
  std::string s = name;
  for (int v : ids) s += ' ' + std::to_string(v);
  return s;
}

void report(const Criterion& c) {
  bool pass = c.failures == 0 && c.checks > 0;
  std::printf("%s %d %s: %lld checks, %lld failures", pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
              c.checks, c.failures);
  if (!c.note.empty()) std::printf(" (%s)", c.note.c_str());
  if (c.failures) std::printf(" first: %s", c.first.c_str());
  std::printf("\n");
  std::fflush(stdout);
}

bool cuts_all(const Cut& c, const Multigraph& g, const std::vector<int>& ids) {
  for (int id : ids) {
    const Edge& e = g.edge(id);
    if (holds(c, e.u) == holds(c, e.v)) return false;
  }
  return true;
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<Case> cases = corpus();

  Criterion c1{1, "oracle values equal brute force"};
  Criterion c2{2, "reported cuts are valid"};
  Criterion c3{3, "strips equal brute-force mincut families"};
  Criterion c4{4, "cut tree and hierarchy"};
  Criterion c5{5, "quadratic query op count is flat in n"};
  Criterion c6{6, "3-vertex assertions and bundle transformation"};
  Criterion c7{7, "compact structure accounting"};
  Criterion c8{8, "distributed labels"};
  Criterion c9{9, "nearest-mincut membership"};

  for (const Case& cs : cases) {
    const Multigraph& g = cs.g;
    const int n = g.n();
    auto values = bf::all_pairs_values(g);
    QuadraticOracle quad = QuadraticOracle::build(g);
    CompactOracle compact = CompactOracle::build(g);
    auto labels = build_labels(g);

    // 4
    GomoryHuTree ght = build_gomory_hu(g);
    for (int s = 0; s < n; ++s)
      for (int t = s + 1; t < n; ++t) {
        c4.expect(ght.path_min(s, t) == max_flow_value(g, s, t), [&] { return at(cs.name, {s, t}); });
        c4.expect(lookup_mincut_value(quad.hierarchy(), s, t) == values[s][t],
                  [&] { return at(cs.name + " hierarchy", {s, t}); });
      }
    long long w = ght.total_weight();
    c4.expect(w >= g.m() && w <= 2LL * g.m(), [&] { return cs.name + " weight sum"; });

    // 7
    const CompactStats& st = compact.stats();
    c7.expect(st.units <= 4LL * n, [&] { return cs.name + " units"; });
    c7.expect(st.max_nonsteiner_appearances <= 1, [&] { return cs.name + " appearances"; });
    for (int nu : compact.hierarchy().internal_nodes()) {
      const CompactNode& node = compact.node_at(nu);
      if (node.parent_slot < 0) continue;
      const Carcass& pc = compact.node_at(compact.hierarchy().node(nu).parent).carcass;
      const TreeIndex& tr = pc.skeleton.tree;
      std::size_t around = tr.children(node.nu).size() + (tr.parent(node.nu) >= 0 ? 1 : 0);
      c7.expect(node.contracted.size() == around, [&] { return at(cs.name + " count", {nu}); });
      for (const ContractedVertex& cv : node.contracted)
        c7.expect(node.graph.degree(cv.vertex) == pc.value,
                  [&] { return at(cs.name + " degree", {nu, cv.vertex}); });
    }

    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        if (s == t) continue;
        const int c = values[s][t];

        // 9
        auto near = bf::nearest_side(g, s, t);
        for (int y = 0; y < n; ++y) {
          bool want = std::binary_search(near.begin(), near.end(), y);
          c9.expect(compact.check_nearest(s, t, y) == want, [&] { return at(cs.name, {s, t, y}); });
          c9.expect(quad.in_nearest(s, t, y) == want, [&] { return at(cs.name + " quad", {s, t, y}); });
        }

        // 3
        if (n <= 8) {
          Strip strip = build_strip(g, s, t);
          auto sides = bf::mincut_sides(g, s, t);
          std::vector<std::vector<int>> want;
          for (auto& m : sides) want.push_back(mask_to_list(m));
          std::sort(want.begin(), want.end());
          c3.expect(transversal_sides(g, strip) == want, [&] { return at(cs.name, {s, t}); });
          c3.expect(canonical(g, quad.report_strip(s, t)) == canonical(g, strip),
                    [&] { return at(cs.name + " report_strip", {s, t}); });
        }

        for (const Edge& e : g.edges()) {
          int want = bf::ft(g, s, t, e.id);
          // 1
          c1.expect(quad.ft_value(s, t, e.u, e.v) == want, [&] { return at(cs.name + " quad ft", {s, t, e.id}); });
          c1.expect(compact.ft_value(s, t, e.u, e.v) == want,
                    [&] { return at(cs.name + " compact ft", {s, t, e.id}); });
          // 8
          bool changed = value_changed(*labels[e.u], *labels[e.v], s, t, ChangeMode::Fail);
          c8.expect(changed == (want != c), [&] { return at(cs.name + " fail", {s, t, e.id}); });
          // 2
          Multigraph after = g.without_edge(e.id);
          auto fail_cut_ok = [&](const Cut& cut) {
            bool ok = holds(cut, s) && !holds(cut, t) && cut_value(after, cut.side) == want &&
                      cut.value == cut_value(g, cut.side);
            if (want < c) ok = ok && holds(cut, e.u) != holds(cut, e.v);
            return ok;
          };
          if (want < c) {
            c2.expect(fail_cut_ok(quad.report_ft_cut(s, t, e.u, e.v)),
                      [&] { return at(cs.name + " quad ft cut", {s, t, e.id}); });
            c2.expect(fail_cut_ok(compact.report_ft_cut(s, t, e.u, e.v)),
                      [&] { return at(cs.name + " compact ft cut", {s, t, e.id}); });
          } else {
            // Unchanged value: the nearest mincut of g must survive the failure.
            c2.expect(fail_cut_ok(quad.report_in_cut(s, t, s, t)),
                      [&] { return at(cs.name + " quad kept cut", {s, t, e.id}); });
            c2.expect(fail_cut_ok(compact.report_in_cut(s, t, s, t)),
                      [&] { return at(cs.name + " compact kept cut", {s, t, e.id}); });
          }
        }

        for (int x = 0; x < n; ++x)
          for (int y = x + 1; y < n; ++y) {
            int want = bf::in(g, s, t, x, y);
            // 1 asks for non-edge pairs; edge pairs are checked as well.
            c1.expect(quad.in_value(s, t, x, y) == want, [&] { return at(cs.name + " quad in", {s, t, x, y}); });
            c1.expect(compact.in_value(s, t, x, y) == want,
                      [&] { return at(cs.name + " compact in", {s, t, x, y}); });
            // 8
            bool changed = value_changed(*labels[x], *labels[y], s, t, ChangeMode::Insert);
            c8.expect(changed == (want != c), [&] { return at(cs.name + " insert", {s, t, x, y}); });
            // 2
            Multigraph after = g.with_edge(x, y);
            auto in_cut_ok = [&](const Cut& cut) {
              bool ok = holds(cut, s) && !holds(cut, t) && cut_value(after, cut.side) == want;
              if (want == c) ok = ok && holds(cut, x) == holds(cut, y);
              return ok;
            };
            c2.expect(in_cut_ok(quad.report_in_cut(s, t, x, y)),
                      [&] { return at(cs.name + " quad in cut", {s, t, x, y}); });
            c2.expect(in_cut_ok(compact.report_in_cut(s, t, x, y)),
                      [&] { return at(cs.name + " compact in cut", {s, t, x, y}); });
          }
      }

    // 8: affected pairs against brute force.
    for (const Edge& e : g.edges()) {
      auto got = affected_pairs(*labels[e.u], *labels[e.v], ChangeMode::Fail).expand();
      c8.expect(got == bf::affected_pairs(g, {false, e.u, e.v, e.id}),
                [&] { return at(cs.name + " ap fail", {e.id}); });
    }
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        auto got = affected_pairs(*labels[x], *labels[y], ChangeMode::Insert).expand();
        c8.expect(got == bf::affected_pairs(g, {true, x, y, -1}),
                  [&] { return at(cs.name + " ap ins", {x, y}); });
      }

    // 8: access harness. Only the two endpoint labels are ever built, so no
    // other label data exists to be read; every read is counted.
    for (const Edge& e : g.edges()) {
      auto only = build_labels(g, std::vector<int>{e.u, e.v});
      const VertexLabel& lx = *only[e.u];
      const VertexLabel& ly = *only[e.v];
      bool out_of_label = false;
      for (int v = 0; v < n; ++v)
        if (v != e.u && v != e.v && only[v]) out_of_label = true;
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
          if (s == t) continue;
          lx.reads = ly.reads = 0;
          bool changed = value_changed(lx, ly, s, t, ChangeMode::Fail);
          bool ok = !out_of_label && lx.reads == 1 && ly.reads == 1 &&
                    changed == (bf::ft(g, s, t, e.id) != values[s][t]);
          c8.expect(ok, [&] { return at(cs.name + " access", {s, t, e.id}); });
        }
      lx.reads = ly.reads = 0;
      auto got = affected_pairs(lx, ly, ChangeMode::Fail).expand();
      c8.expect(lx.reads <= lx.entries.size() && ly.reads <= ly.entries.size() &&
                    got == bf::affected_pairs(g, {false, e.u, e.v, e.id}),
                [&] { return at(cs.name + " access ap", {e.id}); });
    }
  }
  c1.note = std::to_string(cases.size()) + " graphs";
  report(c1);
  report(c2);
  report(c3);
  report(c4);

  // 5
  {
    Rng rng(5005);
    std::uint64_t worst = 0;
    std::string per_n;
    for (int n : {8, 32, 128, 512}) {
      Multigraph g = random_connected_multigraph(rng, n, 3 * n);
      QuadraticOracle o = QuadraticOracle::build(g);
      std::uint64_t worst_n = 0;
      for (int q = 0; q < 1000; ++q) {
        int s = uniform_int(rng, 0, n - 1), t = uniform_int(rng, 0, n - 2);
        if (t >= s) ++t;
        const Edge& e = g.edges()[uniform_int(rng, 0, g.m() - 1)];
        int x = uniform_int(rng, 0, n - 1), y = uniform_int(rng, 0, n - 2);
        if (y >= x) ++y;
        ops::reset();
        o.ft_value(s, t, e.u, e.v);
        std::uint64_t a = ops::read();
        ops::reset();
        o.in_value(s, t, x, y);
        std::uint64_t b = ops::read();
        worst_n = std::max({worst_n, a, b});
        c5.expect(a <= kOpBound && b <= kOpBound, [&] { return at("n", {n, q}); });
      }
      worst = std::max(worst, worst_n);
      per_n += (per_n.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) +
               " max " + std::to_string(worst_n);
    }
    c5.note = per_n + ", bound " + std::to_string(kOpBound);
    report(c5);
  }

  // 6
  {
    Rng rng(6006);
    int instances = 0;
    while (instances < 1000) {
      auto in = sample_triple(rng, 3, 9);
      if (!in) continue;
      for (auto [p, q] : {std::pair{in->r, in->s}, std::pair{in->s, in->r}})
        for (const auto& b : bf::mincut_sides(in->g, p, q)) {
          if (b[in->t]) continue;
          ThreeVertexReport rep = three_vertex_assertions(in->g, in->a, b, q, p, in->t);
          c6.expect(rep.no_diagonal && rep.inner_is_mincut && rep.outer_is_mincut,
                    [&] { return at("triple", {instances}); });
          ++instances;
        }
    }
    int bundles = 0;
    while (bundles < 500) {
      auto in = sample_triple(rng, 3, 9);
      if (!in) continue;
      const Multigraph& g = in->g;
      Strip strip = build_strip_above(g, mask_to_list(in->a), in->t);
      for (int y = 0; y < g.n(); ++y) {
        if (in->a[y]) continue;
        std::vector<int> inc;
        for (int pos : g.incident(y)) inc.push_back(g.edge_at(pos).id);
        std::sort(inc.begin(), inc.end());
        int k = std::min<int>(static_cast<int>(inc.size()), 6);
        int pick = uniform_int(rng, 1, (1 << k) - 1);
        EdgeBundle eb{y, {}};
        for (int i = 0; i < k; ++i)
          if (pick >> i & 1) eb.edges.push_back(inc[i]);
        bool truth = bf::edge_contained(g, in->r, in->s, eb.edges);
        TransformResult tr = transform_edge_bundle(g, strip, eb);
        bool ok = tr.feasible ? bf::edge_contained(g, in->r, in->s, tr.edges_on_a) == truth : !truth;
        if (ok && tr.feasible && truth) {
          // The lifted cut must be an (r,s)-mincut cutting the whole bundle.
          int crs = max_flow_value(g, in->r, in->s);
          for (const auto& m : bf::mincut_sides(g, in->r, in->s)) {
            Cut b = make_cut(g, m);
            if (!cuts_all(b, g, tr.edges_on_a)) continue;
            Cut lifted = lift_cut(g, strip, b, eb);
            ok = lifted.value == crs && cut_value(g, lifted.side) == crs && cuts_all(lifted, g, eb.edges);
            break;
          }
        }
        c6.expect(ok, [&] { return at("bundle", {bundles, y}); });
        ++bundles;
      }
    }
    c6.note = std::to_string(instances) + " triples, " + std::to_string(bundles) + " bundles";
    report(c6);
  }

  report(c7);
  report(c8);
  report(c9);

  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("elapsed %.1f s\n", secs);
  for (const Criterion* c : {&c1, &c2, &c3, &c4, &c5, &c6, &c7, &c8, &c9})
    if (c->failures || !c->checks) return 1;
  return 0;
}
