#include "msens/cli.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "msens/errors.hpp"
#include "msens/fixtures.hpp"
#include "msens/gomory_hu.hpp"
#include "msens/reference.hpp"
#include "msens/tree_index.hpp"

namespace msens {

namespace {

std::string side_text(const std::vector<int>& side) {
  std::string out = "cut:";
  for (int v : side) out += ' ' + std::to_string(v + 1);
  return out;
}

// Edge ids from y to each listed neighbor; a repeated neighbor takes the next
// parallel copy.
EdgeBundle bundle_of(const Multigraph& g, int y, const std::vector<int>& others) {
  EdgeBundle b{y, {}};
  std::map<int, int> used;
  for (int w : others) {
    auto ids = g.edges_between(y, w);
    int k = used[w]++;
    require(k < static_cast<int>(ids.size()), "bundle names more edges than exist");
    b.edges.push_back(ids[k]);
  }
  return b;
}

std::string pairs_text(const std::vector<std::pair<int, int>>& pairs, bool list) {
  std::string out = "pairs: " + std::to_string(pairs.size());
  if (list)
    for (auto [u, v] : pairs) out += '\n' + std::to_string(u + 1) + ' ' + std::to_string(v + 1);
  return out;
}

}  // namespace

std::optional<OracleKind> parse_oracle_kind(const std::string& name) {
  if (name == "quad") return OracleKind::Quad;
  if (name == "compact") return OracleKind::Compact;
  if (name == "dist") return OracleKind::Dist;
  return std::nullopt;
}

const char* oracle_name(OracleKind kind) {
  switch (kind) {
    case OracleKind::Quad: return "quad";
    case OracleKind::Compact: return "compact";
    case OracleKind::Dist: return "dist";
  }
  return "?";
}

QueryEngine QueryEngine::build(OracleKind kind, const Multigraph& g) {
  QueryEngine e;
  e.kind_ = kind;
  e.g_ = g;
  switch (kind) {
    case OracleKind::Quad: e.quad_ = QuadraticOracle::build(g); break;
    case OracleKind::Compact: e.compact_ = CompactOracle::build(g); break;
    case OracleKind::Dist: e.labels_ = build_labels(g); break;
  }
  return e;
}

QueryEngine QueryEngine::load(std::istream& in) {
  std::string header;
  std::getline(in, header);
  std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::istringstream body(header + '\n' + rest);
  QueryEngine e;
  if (header == "msens-oracle 1 quad") {
    e.kind_ = OracleKind::Quad;
    e.quad_ = QuadraticOracle::load(body);
    e.g_ = e.quad_->graph();
  } else if (header == "msens-oracle 1 compact") {
    e.kind_ = OracleKind::Compact;
    e.compact_ = CompactOracle::load(body);
    e.g_ = e.compact_->graph();
  } else {
    throw ParseError(1, "unknown dump header: " + header);
  }
  return e;
}

void QueryEngine::save(std::ostream& out) const {
  if (quad_) return quad_->save(out);
  if (compact_) return compact_->save(out);
  throw InvalidArgument("distributed labels cannot be saved");
}

int QueryEngine::value(int s, int t) const {
  if (quad_) return quad_->value(s, t);
  if (compact_) return compact_->value(s, t);
  require(s != t, "s and t must differ");
  return lookup_mincut_value(labels_.at(s)->shared->hierarchy, s, t);
}

int QueryEngine::fail_value(int s, int t, int x, int y) const {
  if (quad_) return quad_->ft_value(s, t, x, y);
  if (compact_) return compact_->ft_value(s, t, x, y);
  bool changed = value_changed(*labels_[x], *labels_[y], s, t, ChangeMode::Fail);
  return value(s, t) - (changed ? 1 : 0);
}

int QueryEngine::insert_value(int s, int t, int x, int y) const {
  if (quad_) return quad_->in_value(s, t, x, y);
  if (compact_) return compact_->in_value(s, t, x, y);
  bool changed = value_changed(*labels_[x], *labels_[y], s, t, ChangeMode::Insert);
  return value(s, t) + (changed ? 1 : 0);
}

std::string QueryEngine::affected(const QueryRecord& q, const QueryOptions& opts) const {
  const bool insert = q.kind == QueryKind::AffectedInsert;
  if (kind_ == OracleKind::Dist) {
    ChangeMode mode = insert ? ChangeMode::Insert : ChangeMode::Fail;
    return pairs_text(affected_pairs(*labels_[q.x], *labels_[q.y], mode).expand(), opts.list_pairs);
  }
  // The centralized oracles answer one query per pair.
  const int n = g_.n();
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      int after = insert ? insert_value(u, v, q.x, q.y) : fail_value(u, v, q.x, q.y);
      if (after != value(u, v)) pairs.push_back({u, v});
    }
  return pairs_text(pairs, opts.list_pairs);
}

std::string QueryEngine::answer(const QueryRecord& q, const QueryOptions& opts) const {
  const bool cuts = opts.report_cuts && kind_ != OracleKind::Dist;
  switch (q.kind) {
    case QueryKind::Fail: {
      int c = value(q.s, q.t);
      int after = fail_value(q.s, q.t, q.x, q.y);
      std::string out = std::to_string(after);
      if (!cuts) return out;
      Cut cut;
      if (after < c) {
        cut = quad_ ? quad_->report_ft_cut(q.s, q.t, q.x, q.y)
                    : compact_->report_ft_cut(q.s, q.t, q.x, q.y);
      } else {
        // No mincut holds the edge, so any mincut survives; inserting (s,t)
        // always raises the value and yields the nearest one.
        cut = quad_ ? quad_->report_in_cut(q.s, q.t, q.s, q.t)
                    : compact_->report_in_cut(q.s, q.t, q.s, q.t);
      }
      return out + ' ' + side_text(cut.side);
    }
    case QueryKind::Insert: {
      std::string out = std::to_string(insert_value(q.s, q.t, q.x, q.y));
      if (!cuts) return out;
      Cut cut = quad_ ? quad_->report_in_cut(q.s, q.t, q.x, q.y)
                      : compact_->report_in_cut(q.s, q.t, q.x, q.y);
      return out + ' ' + side_text(cut.side);
    }
    case QueryKind::EdgeContained: {
      require(q.s != q.t, "s and t must differ");
      EdgeBundle b = bundle_of(g_, q.y, q.others);
      if (compact_) {
        auto cut = compact_->edge_contained(q.s, q.t, b);
        return cut ? "YES " + side_text(cut->side) : "NO";
      }
      if (quad_) {
        if (b.edges.size() == 1) {
          int w = q.others[0];
          if (!quad_->edge_contained(q.s, q.t, q.y, w)) return "NO";
          return "YES " + side_text(quad_->report_ft_cut(q.s, q.t, q.y, w).side);
        }
        // Bundles go through the stored strip.
        Strip st = quad_->report_strip(q.s, q.t);
        std::vector<int> nodes;
        if (!common_mincut(st, g_, b.edges, &nodes)) return "NO";
        return "YES " + side_text(make_cut(g_, nodes_to_mask(g_, st, nodes)).side);
      }
      require(b.edges.size() == 1, "distributed labels answer single-edge bundles only");
      const VertexLabel& ly = *labels_[q.y];
      const VertexLabel& lw = *labels_[q.others[0]];
      return value_changed(ly, lw, q.s, q.t, ChangeMode::Fail) ? "YES" : "NO";
    }
    case QueryKind::Nearest: {
      bool in;
      if (quad_) in = quad_->in_nearest(q.s, q.t, q.y);
      else if (compact_) in = compact_->check_nearest(q.s, q.t, q.y);
      else {
        require(q.s != q.t, "s and t must differ");
        in = on_nearest_side(*labels_[q.y], q.s, q.t);
      }
      return in ? "TRUE" : "FALSE";
    }
    case QueryKind::AffectedFail:
    case QueryKind::AffectedInsert:
      require(q.x != q.y, "x and y must differ");
      return affected(q, opts);
  }
  return "";
}

const char* query_kind_name(QueryKind kind) {
  switch (kind) {
    case QueryKind::Fail: return "ft";
    case QueryKind::Insert: return "in";
    case QueryKind::EdgeContained: return "ec";
    case QueryKind::Nearest: return "cn";
    case QueryKind::AffectedFail: return "ap-fail";
    case QueryKind::AffectedInsert: return "ap-ins";
  }
  return "?";
}

int run_queries(const QueryEngine& engine, std::istream& queries, std::ostream& out,
                const QueryOptions& opts, QueryStats* stats) {
  int errors = 0, line_no = 0;
  for (std::string line; std::getline(queries, line);) {
    ++line_no;
    try {
      auto q = parse_query(line, line_no, engine.graph().n());
      if (!q) continue;
      ops::reset();
      auto t0 = std::chrono::steady_clock::now();
      std::string text = engine.answer(*q, opts);
      if (stats) {
        QueryCost& c = (*stats)[query_kind_name(q->kind)];
        ++c.count;
        c.ops += ops::read();
        c.us += std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
      }
      out << text << '\n';
    } catch (const ParseError& e) {
      ++errors;
      out << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
      ++errors;
      out << "error: line " << line_no << ": " << e.what() << '\n';
    }
  }
  return errors;
}

long long VerifyReport::checks() const {
  long long k = 0;
  for (const auto& [name, t] : by_check) k += t.checks;
  return k;
}

long long VerifyReport::mismatches() const {
  long long k = 0;
  for (const auto& [name, t] : by_check) k += t.mismatches;
  return k;
}

namespace {

// Strip shape keyed by vertex sets, independent of node numbering.
using StripShape = std::pair<std::vector<std::vector<int>>, std::vector<std::tuple<int, int, int>>>;

StripShape shape_of(const Multigraph& g, const Strip& st) {
  StripShape out;
  std::vector<int> key(st.num_nodes());
  for (int x = 0; x < st.num_nodes(); ++x) {
    std::vector<int> verts;
    for (int v : st.members[x]) verts.insert(verts.end(), g.origin(v).begin(), g.origin(v).end());
    std::sort(verts.begin(), verts.end());
    key[x] = verts.front();
    out.first.push_back(verts);
  }
  // Terminals stay in front and back; the middle is order-free.
  if (out.first.size() > 2) std::sort(out.first.begin() + 1, out.first.end() - 1);
  for (const StripArc& a : st.arcs) out.second.emplace_back(a.edge, key[a.tail], key[a.head]);
  std::sort(out.second.begin(), out.second.end());
  return out;
}

class Verifier {
 public:
  explicit Verifier(VerifyReport& r) : r_(r) {}

  void run(const std::string& name, const Multigraph& g) {
    name_ = name;
    ++r_.graphs;
    const int n = g.n();
    auto values = bf::all_pairs_values(g);

    GomoryHuTree ght = build_gomory_hu(g);
    for (int s = 0; s < n; ++s)
      for (int t = s + 1; t < n; ++t)
        expect("gh", ght.path_min(s, t) == values[s][t], s, t);
    long long w = ght.total_weight();
    expect("gh", w >= g.m() && w <= 2LL * g.m(), -1, -1);

    QuadraticOracle quad = QuadraticOracle::build(g);
    CompactOracle compact = CompactOracle::build(g);
    auto labels = build_labels(g);
    auto dist_value = [&](int s, int t, int x, int y, ChangeMode mode) {
      int d = value_changed(*labels[x], *labels[y], s, t, mode) ? 1 : 0;
      return values[s][t] + (mode == ChangeMode::Insert ? d : -d);
    };

    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        if (s == t) continue;
        auto near = bf::nearest_side(g, s, t);
        for (int y = 0; y < n; ++y) {
          bool want = std::binary_search(near.begin(), near.end(), y);
          expect("quad.cn", quad.in_nearest(s, t, y) == want, s, t, y);
          expect("compact.cn", compact.check_nearest(s, t, y) == want, s, t, y);
          expect("dist.cn", on_nearest_side(*labels[y], s, t) == want, s, t, y);
        }
        if (s < t)
          expect("strip", shape_of(g, quad.report_strip(s, t)) == shape_of(g, build_strip(g, s, t)), s, t);

        for (const Edge& e : g.edges()) {
          int want = bf::ft(g, s, t, e.id);
          expect("quad.ft", quad.ft_value(s, t, e.u, e.v) == want, s, t, e.u, e.v);
          expect("compact.ft", compact.ft_value(s, t, e.u, e.v) == want, s, t, e.u, e.v);
          expect("dist.ft", dist_value(s, t, e.u, e.v, ChangeMode::Fail) == want, s, t, e.u, e.v);
          if (want < values[s][t]) {
            Multigraph after = g.without_edge(e.id);
            check_fail_cut("quad.cuts", g, after, quad.report_ft_cut(s, t, e.u, e.v), s, e, want);
            check_fail_cut("compact.cuts", g, after, compact.report_ft_cut(s, t, e.u, e.v), s, e, want);
          }
        }
        for (int x = 0; x < n; ++x)
          for (int y = x + 1; y < n; ++y) {
            int want = bf::in(g, s, t, x, y);
            expect("quad.in", quad.in_value(s, t, x, y) == want, s, t, x, y);
            expect("compact.in", compact.in_value(s, t, x, y) == want, s, t, x, y);
            expect("dist.in", dist_value(s, t, x, y, ChangeMode::Insert) == want, s, t, x, y);
            Multigraph after = g.with_edge(x, y);
            bool same = want == values[s][t];
            check_in_cut("quad.cuts", after, quad.report_in_cut(s, t, x, y), s, t, x, y, want, same);
            check_in_cut("compact.cuts", after, compact.report_in_cut(s, t, x, y), s, t, x, y, want, same);
          }
      }

    for (const Edge& e : g.edges()) {
      auto got = affected_pairs(*labels[e.u], *labels[e.v], ChangeMode::Fail).expand();
      expect("dist.ap", got == bf::affected_pairs(g, {false, e.u, e.v, e.id}), e.u, e.v);
    }
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        auto got = affected_pairs(*labels[x], *labels[y], ChangeMode::Insert).expand();
        expect("dist.ap", got == bf::affected_pairs(g, {true, x, y, -1}), x, y);
      }
  }

 private:
  void expect(const std::string& check, bool ok, int a, int b, int c = -1, int d = -1) {
    CheckTally& t = r_.by_check[check];
    ++t.checks;
    if (ok) return;
    ++t.mismatches;
    if (r_.first_mismatches.size() >= 10) return;
    std::string where = name_ + " " + check;
    for (int v : {a, b, c, d})
      if (v >= 0) where += ' ' + std::to_string(v + 1);
    r_.first_mismatches.push_back(where);
  }

  void check_fail_cut(const std::string& check, const Multigraph& g, const Multigraph& after,
                      const Cut& cut, int s, const Edge& e, int want) {
    bool holds_s = std::binary_search(cut.side.begin(), cut.side.end(), s);
    bool eu = std::binary_search(cut.side.begin(), cut.side.end(), e.u);
    bool ev = std::binary_search(cut.side.begin(), cut.side.end(), e.v);
    expect(check, holds_s && eu != ev && cut_value(after, cut.side) == want &&
                      cut_value(g, cut.side) == want + 1,
           s, e.u, e.v);
  }

  void check_in_cut(const std::string& check, const Multigraph& after, const Cut& cut, int s,
                    int t, int x, int y, int want, bool same) {
    auto in = [&](int v) { return std::binary_search(cut.side.begin(), cut.side.end(), v); };
    bool ok = in(s) && !in(t) && cut_value(after, cut.side) == want;
    if (same) ok = ok && in(x) == in(y);
    expect(check, ok, s, t, x, y);
  }

  VerifyReport& r_;
  std::string name_;
};

}  // namespace

VerifyReport verify(const VerifyOptions& opts) {
  require(opts.graphs >= 0, "graph count must be non-negative");
  require(opts.min_n >= 2 && opts.min_n <= opts.max_n, "need 2 <= min n <= max n");
  VerifyReport report;
  Verifier v(report);
  if (opts.fixtures)
    for (const auto& f : fixtures::all()) v.run(f.name, f.graph);
  Rng rng(opts.seed);
  for (int i = 0; i < opts.graphs; ++i) {
    int n = uniform_int(rng, opts.min_n, opts.max_n);
    Multigraph g = random_connected_multigraph(rng, n, 3 * n);
    v.run("random#" + std::to_string(i), g);
  }
  return report;
}

std::string verify_json(const VerifyOptions& opts, const VerifyReport& report) {
  nlohmann::ordered_json j;
  j["seed"] = opts.seed;
  j["graphs"] = report.graphs;
  j["checks"] = report.checks();
  j["mismatches"] = report.mismatches();
  nlohmann::ordered_json by = nlohmann::ordered_json::object();
  for (const auto& [name, t] : report.by_check)
    by[name] = {{"checks", t.checks}, {"mismatches", t.mismatches}};
  j["by_check"] = by;
  j["first_mismatches"] = report.first_mismatches;
  if (report.empty()) j["warning"] = "empty corpus, nothing checked";
  return j.dump(2);
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

long long units_of_kind(const QuadraticOracle* quad, const CompactOracle* compact,
                        const std::vector<std::optional<VertexLabel>>* labels) {
  long long k = 0;
  if (quad)
    for (int h : quad->hierarchy().internal_nodes())
      k += static_cast<long long>(quad->carcass_at(h).units.members.size());
  if (compact) k = compact->stats().units;
  if (labels)
    for (const auto& l : *labels) k += static_cast<long long>(l->owned_records());
  return k;
}

}  // namespace

void bench(const BenchOptions& opts, std::ostream& csv) {
  require(opts.queries > 0, "query count must be positive");
  csv << "oracle,n,m,build_ms,query_kind,ops,us\n";
  for (int n : opts.sizes) {
    require(n >= 2, "bench sizes must be at least 2");
    Rng rng(opts.seed + static_cast<std::uint64_t>(n));
    Multigraph g = random_connected_multigraph(rng, n, 3 * n);
    for (OracleKind kind : opts.oracles) {
      auto t0 = Clock::now();
      std::optional<QuadraticOracle> quad;
      std::optional<CompactOracle> compact;
      std::vector<std::optional<VertexLabel>> labels;
      if (kind == OracleKind::Quad) quad = QuadraticOracle::build(g);
      if (kind == OracleKind::Compact) compact = CompactOracle::build(g);
      if (kind == OracleKind::Dist) labels = build_labels(g);
      double build_ms = ms_since(t0);

      Rng qrng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
      std::vector<std::array<int, 4>> qs;
      for (int i = 0; i < opts.queries; ++i) {
        int s = uniform_int(qrng, 0, n - 1);
        int t = (s + uniform_int(qrng, 1, n - 1)) % n;
        const Edge& e = g.edges()[uniform_int(qrng, 0, g.m() - 1)];
        int x = uniform_int(qrng, 0, n - 1);
        int y = (x + uniform_int(qrng, 1, n - 1)) % n;
        qs.push_back({s, t, e.id, 0});
        qs.back()[3] = x * n + y;
      }

      auto row = [&](const char* what, auto&& one) {
        ops::reset();
        auto q0 = Clock::now();
        for (const auto& q : qs) one(q);
        double us = ms_since(q0) * 1000.0 / opts.queries;
        csv << oracle_name(kind) << ',' << n << ',' << g.m() << ',' << build_ms << ',' << what << ','
            << static_cast<double>(ops::read()) / opts.queries << ',' << us << '\n';
      };

      row("ft", [&](const auto& q) {
        const Edge& e = g.edge(q[2]);
        if (quad) quad->ft_value(q[0], q[1], e.u, e.v);
        else if (compact) compact->ft_value(q[0], q[1], e.u, e.v);
        else value_changed(*labels[e.u], *labels[e.v], q[0], q[1], ChangeMode::Fail);
      });
      row("in", [&](const auto& q) {
        int x = q[3] / n, y = q[3] % n;
        if (quad) quad->in_value(q[0], q[1], x, y);
        else if (compact) compact->in_value(q[0], q[1], x, y);
        else value_changed(*labels[x], *labels[y], q[0], q[1], ChangeMode::Insert);
      });
      row("cn", [&](const auto& q) {
        int y = q[3] % n;
        if (quad) quad->in_nearest(q[0], q[1], y);
        else if (compact) compact->check_nearest(q[0], q[1], y);
        else on_nearest_side(*labels[y], q[0], q[1]);
      });
      // Space row: stored units (records per label for dist) in the ops column.
      csv << oracle_name(kind) << ',' << n << ',' << g.m() << ',' << build_ms << ",units,"
          << units_of_kind(quad ? &*quad : nullptr, compact ? &*compact : nullptr,
                           labels.empty() ? nullptr : &labels)
          << ",0\n";
    }
  }
}

}  // namespace msens
