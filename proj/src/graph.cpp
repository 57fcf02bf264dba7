#include "msens/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <string>

namespace msens {

Multigraph::Multigraph(int n) : n_(n), orig_n_(n), inc_(n), origin_(n) {
  require(n >= 0, "negative vertex count");
  for (int v = 0; v < n; ++v) origin_[v] = {v};
}

int Multigraph::add_edge(int u, int v) {
  int id = id_bound();
  add_edge_with_id(id, u, v);
  return id;
}

void Multigraph::add_edge_with_id(int id, int u, int v) {
  require(u >= 0 && u < n_ && v >= 0 && v < n_, "edge endpoint out of range");
  require(u != v, "self-loop");
  require(id >= 0, "negative edge id");
  if (id >= id_bound()) pos_.resize(id + 1, -1);
  require(pos_[id] < 0, "duplicate edge id");
  pos_[id] = m();
  inc_[u].push_back(m());
  inc_[v].push_back(m());
  edges_.push_back({id, u, v});
}

const Edge& Multigraph::edge(int id) const {
  int p = pos_of(id);
  require(p >= 0, "unknown edge id");
  return edges_[p];
}

std::vector<int> Multigraph::edges_between(int u, int v) const {
  std::vector<int> ids;
  if (u < 0 || u >= n_ || v < 0 || v >= n_) return ids;
  for (int p : inc_[u])
    if (edges_[p].other(u) == v && u != v) ids.push_back(edges_[p].id);
  return ids;
}

Multigraph Multigraph::without_edge(int id) const {
  require(has_edge(id), "unknown edge id");
  Multigraph h(n_);
  h.set_origins(origin_, orig_n_);
  for (const Edge& e : edges_)
    if (e.id != id) h.add_edge_with_id(e.id, e.u, e.v);
  return h;
}

Multigraph Multigraph::with_edge(int u, int v) const {
  Multigraph h = *this;
  h.add_edge(u, v);
  return h;
}

bool Multigraph::connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(n_, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int p : inc_[v]) {
      int w = edges_[p].other(v);
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n_;
}

void Multigraph::set_origins(std::vector<std::vector<int>> origin, int original_n) {
  require(static_cast<int>(origin.size()) == n_, "origin count mismatch");
  std::vector<char> hit(original_n, 0);
  for (auto& o : origin) {
    require(!o.empty(), "empty origin set");
    std::sort(o.begin(), o.end());
    for (int x : o) {
      require(x >= 0 && x < original_n && !hit[x], "origin sets must partition");
      hit[x] = 1;
    }
  }
  for (char h : hit) require(h, "origin sets must cover the original vertices");
  origin_ = std::move(origin);
  orig_n_ = original_n;
}

int cut_value_mask(const Multigraph& g, const std::vector<char>& in_side) {
  int c = 0;
  for (const Edge& e : g.edges()) c += in_side[e.u] != in_side[e.v];
  return c;
}

int cut_value(const Multigraph& g, const std::vector<int>& side) {
  std::vector<char> in(g.n(), 0);
  int count = 0;
  for (int v : side) {
    require(v >= 0 && v < g.n(), "vertex out of range");
    if (!in[v]) ++count;
    in[v] = 1;
  }
  require(count > 0 && count < g.n(), "cut side must be nonempty and proper");
  return cut_value_mask(g, in);
}

Cut make_cut(const Multigraph& g, const std::vector<char>& in_side) {
  Cut c;
  for (int v = 0; v < g.n(); ++v)
    if (in_side[v]) c.side.push_back(v);
  c.value = cut_value_mask(g, in_side);
  return c;
}

ContractResult contract_map(const Multigraph& g, const std::vector<std::vector<int>>& groups) {
  std::vector<int> group_of(g.n(), -1);
  for (int i = 0; i < static_cast<int>(groups.size()); ++i)
    for (int v : groups[i]) {
      require(v >= 0 && v < g.n(), "vertex out of range");
      require(group_of[v] < 0, "contraction groups overlap");
      group_of[v] = i;
    }
  // Provisional classes: one per group, one per ungrouped vertex.
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of(g.n(), -1);
  std::vector<int> class_of_group(groups.size(), -1);
  for (int v = 0; v < g.n(); ++v) {
    int gi = group_of[v];
    if (gi >= 0) {
      if (class_of_group[gi] < 0) {
        class_of_group[gi] = static_cast<int>(classes.size());
        classes.emplace_back();
      }
      class_of[v] = class_of_group[gi];
    } else {
      class_of[v] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[class_of[v]].push_back(v);
  }
  std::vector<std::vector<int>> origin(classes.size());
  for (size_t c = 0; c < classes.size(); ++c) {
    for (int v : classes[c]) origin[c].insert(origin[c].end(), g.origin(v).begin(), g.origin(v).end());
    std::sort(origin[c].begin(), origin[c].end());
  }
  std::vector<int> order(classes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return origin[a].front() < origin[b].front(); });
  std::vector<int> rank(classes.size());
  for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);

  ContractResult r;
  r.graph = Multigraph(static_cast<int>(classes.size()));
  std::vector<std::vector<int>> new_origin(classes.size());
  r.old_of_new.resize(classes.size());
  r.new_of_old.resize(g.n());
  for (size_t c = 0; c < classes.size(); ++c) {
    new_origin[rank[c]] = origin[c];
    r.old_of_new[rank[c]] = classes[c];
  }
  for (int v = 0; v < g.n(); ++v) r.new_of_old[v] = rank[class_of[v]];
  r.graph.set_origins(std::move(new_origin), g.original_n());
  for (const Edge& e : g.edges()) {
    int a = r.new_of_old[e.u], b = r.new_of_old[e.v];
    if (a != b) r.graph.add_edge_with_id(e.id, a, b);
  }
  return r;
}

Multigraph contract(const Multigraph& g, const std::vector<std::vector<int>>& groups) {
  return contract_map(g, groups).graph;
}

namespace {

// Dinic over unit-capacity undirected edges. Edge position p with flow f
// (+1 = u->v) has residual 1-f from u to v and 1+f from v to u.
class Dinic {
 public:
  Dinic(const Multigraph& g, const std::vector<int>& sources, const std::vector<int>& sinks)
      : g_(g), flow_(g.m(), 0), level_(g.n()), it_(g.n()), is_sink_(g.n(), 0), is_source_(g.n(), 0) {
    for (int v : sources) {
      require(v >= 0 && v < g.n(), "source out of range");
      is_source_[v] = 1;
    }
    for (int v : sinks) {
      require(v >= 0 && v < g.n(), "sink out of range");
      require(!is_source_[v], "source and sink sets overlap");
      is_sink_[v] = 1;
    }
    for (int v = 0; v < g.n(); ++v)
      if (is_source_[v]) sources_.push_back(v);
  }

  int run() {
    int total = 0;
    while (bfs()) {
      std::fill(it_.begin(), it_.end(), 0);
      for (int s : sources_)
        while (dfs(s)) ++total;
    }
    return total;
  }

  std::vector<std::int8_t> take_flow() { return std::move(flow_); }

 private:
  int residual(int p, int from) const {
    const Edge& e = g_.edge_at(p);
    return from == e.u ? 1 - flow_[p] : 1 + flow_[p];
  }
  void push(int p, int from) {
    const Edge& e = g_.edge_at(p);
    flow_[p] += from == e.u ? 1 : -1;
  }

  bool bfs() {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    for (int s : sources_) {
      level_[s] = 0;
      q.push(s);
    }
    bool reached = false;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      if (is_sink_[v]) {
        reached = true;
        continue;
      }
      for (int p : g_.incident(v)) {
        int w = g_.edge_at(p).other(v);
        if (level_[w] < 0 && residual(p, v) > 0) {
          level_[w] = level_[v] + 1;
          q.push(w);
        }
      }
    }
    return reached;
  }

  bool dfs(int v) {
    if (is_sink_[v]) return true;
    const auto& inc = g_.incident(v);
    for (int& i = it_[v]; i < static_cast<int>(inc.size()); ++i) {
      int p = inc[i];
      int w = g_.edge_at(p).other(v);
      if (level_[w] == level_[v] + 1 && residual(p, v) > 0 && !is_source_[w] && dfs(w)) {
        push(p, v);
        return true;
      }
    }
    return false;
  }

  const Multigraph& g_;
  std::vector<std::int8_t> flow_;
  std::vector<int> level_, it_;
  std::vector<char> is_sink_, is_source_;
  std::vector<int> sources_;
};

}  // namespace

FlowResult max_flow(const Multigraph& g, const std::vector<int>& sources,
                    const std::vector<int>& sinks) {
  require(!sources.empty() && !sinks.empty(), "empty terminal set");
  Dinic d(g, sources, sinks);
  FlowResult r;
  r.value = d.run();
  r.flow = d.take_flow();
  return r;
}

int max_flow_value(const Multigraph& g, int s, int t) {
  require(s != t, "s == t");
  return max_flow(g, {s}, {t}).value;
}

namespace {

int residual_of(const Multigraph& g, const FlowResult& f, int p, int from) {
  return from == g.edge_at(p).u ? 1 - f.flow[p] : 1 + f.flow[p];
}

}  // namespace

std::vector<char> nearest_source_side(const Multigraph& g, const FlowResult& f,
                                      const std::vector<int>& sources) {
  std::vector<char> seen(g.n(), 0);
  std::vector<int> stack;
  for (int s : sources) {
    if (!seen[s]) stack.push_back(s);
    seen[s] = 1;
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int p : g.incident(v)) {
      int w = g.edge_at(p).other(v);
      if (!seen[w] && residual_of(g, f, p, v) > 0) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<int> Strip::side_s(int x) const {
  std::vector<int> ids;
  for (int a : in_arcs[x]) ids.push_back(arcs[a].edge);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<int> Strip::side_t(int x) const {
  std::vector<int> ids;
  for (int a : out_arcs[x]) ids.push_back(arcs[a].edge);
  std::sort(ids.begin(), ids.end());
  return ids;
}

Strip make_strip(const Multigraph& g, const std::vector<int>& group_of, int num_groups,
                 int source_group, int sink_group, const std::vector<StripArc>& arcs) {
  std::vector<int> size(num_groups, 0), key(num_groups, g.original_n());
  for (int v = 0; v < g.n(); ++v) {
    int gr = group_of[v];
    check_internal(gr >= 0 && gr < num_groups, "vertex without strip group");
    ++size[gr];
    key[gr] = std::min(key[gr], g.min_origin(v));
  }
  check_internal(size[source_group] > 0 && size[sink_group] > 0, "empty strip terminal");
  check_internal(source_group != sink_group, "source and sink coincide");

  std::vector<std::vector<int>> succ(num_groups);
  std::vector<int> indeg(num_groups, 0);
  for (const StripArc& a : arcs) {
    check_internal(a.tail != a.head, "arc inside a strip node");
    succ[a.tail].push_back(a.head);
    ++indeg[a.head];
  }
  // Kahn's algorithm; the source always first, the sink always last, other
  // ties by smallest original vertex.
  auto prio = [&](int gr) -> long long {
    if (gr == source_group) return -1;
    if (gr == sink_group) return static_cast<long long>(g.original_n()) + 1;
    return key[gr];
  };
  using Item = std::pair<long long, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  for (int gr = 0; gr < num_groups; ++gr)
    if (size[gr] > 0 && indeg[gr] == 0) pq.push({prio(gr), gr});
  std::vector<int> rank(num_groups, -1);
  int next = 0;
  while (!pq.empty()) {
    int gr = pq.top().second;
    pq.pop();
    rank[gr] = next++;
    for (int h : succ[gr])
      if (--indeg[h] == 0) pq.push({prio(h), h});
  }
  int live = 0;
  for (int gr = 0; gr < num_groups; ++gr) live += size[gr] > 0;
  check_internal(next == live, "strip is not acyclic");
  check_internal(rank[source_group] == 0 && rank[sink_group] == live - 1,
                 "strip terminals are not extreme in the order");

  Strip st;
  st.members.assign(live, {});
  st.key.assign(live, 0);
  st.node_of.assign(g.n(), -1);
  for (int v = 0; v < g.n(); ++v) {
    int x = rank[group_of[v]];
    st.node_of[v] = x;
    st.members[x].push_back(v);
  }
  for (int gr = 0; gr < num_groups; ++gr)
    if (size[gr] > 0) st.key[rank[gr]] = key[gr];
  st.in_arcs.assign(live, {});
  st.out_arcs.assign(live, {});
  for (const StripArc& a : arcs) {
    StripArc b{a.edge, rank[a.tail], rank[a.head]};
    int i = static_cast<int>(st.arcs.size());
    st.arcs.push_back(b);
    st.out_arcs[b.tail].push_back(i);
    st.in_arcs[b.head].push_back(i);
  }
  st.value = static_cast<int>(st.out_arcs[0].size());
  check_internal(static_cast<int>(st.in_arcs[st.sink()].size()) == st.value,
                 "strip source and sink degrees differ");
  for (int x = 1; x + 1 < live; ++x)
    check_internal(!st.in_arcs[x].empty() && st.in_arcs[x].size() == st.out_arcs[x].size(),
                   "unbalanced inherent partition");
  return st;
}

Strip build_strip(const Multigraph& g, int s, int t) {
  require(s != t, "s == t");
  return build_strip(g, std::vector<int>{s}, std::vector<int>{t});
}

Strip build_strip(const Multigraph& g, const std::vector<int>& sources,
                  const std::vector<int>& sinks) {
  FlowResult f = max_flow(g, sources, sinks);
  const int n = g.n();
  std::vector<char> src = nearest_source_side(g, f, sources);
  // Vertices that reach a sink in the residual graph.
  std::vector<char> snk(n, 0);
  std::vector<int> stack;
  for (int t : sinks) {
    if (!snk[t]) stack.push_back(t);
    snk[t] = 1;
  }
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int p : g.incident(x)) {
      int w = g.edge_at(p).other(x);
      if (!snk[w] && residual_of(g, f, p, w) > 0) {
        snk[w] = 1;
        stack.push_back(w);
      }
    }
  }
  std::vector<int> group(n, -1);
  for (int v = 0; v < n; ++v) {
    check_internal(!(src[v] && snk[v]), "flow is not maximum");
    if (src[v]) group[v] = 0;
    if (snk[v]) group[v] = 1;
  }
  // Tarjan SCC over residual arcs among the remaining vertices.
  int num_groups = 2;
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> scc_stack;
  int counter = 0;
  struct Frame {
    int v;
    size_t i;
  };
  for (int root = 0; root < n; ++root) {
    if (group[root] >= 0 || index[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    scc_stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& fr = call.back();
      int v = fr.v;
      const auto& inc = g.incident(v);
      if (fr.i < inc.size()) {
        int p = inc[fr.i++];
        int w = g.edge_at(p).other(v);
        if (group[w] >= 0 || residual_of(g, f, p, v) <= 0) continue;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          scc_stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        if (low[v] == index[v]) {
          while (true) {
            int w = scc_stack.back();
            scc_stack.pop_back();
            on_stack[w] = 0;
            group[w] = num_groups;
            if (w == v) break;
          }
          ++num_groups;
        }
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  std::vector<StripArc> arcs;
  for (int p = 0; p < g.m(); ++p) {
    const Edge& e = g.edge_at(p);
    if (group[e.u] == group[e.v]) continue;
    check_internal(f.flow[p] != 0, "crossing edge without flow");
    if (f.flow[p] > 0)
      arcs.push_back({e.id, group[e.u], group[e.v]});
    else
      arcs.push_back({e.id, group[e.v], group[e.u]});
  }
  Strip st = make_strip(g, group, num_groups, 0, 1, arcs);
  check_internal(st.value == f.value, "strip value differs from flow value");
  return st;
}

bool is_transversal(const Strip& st, const std::vector<int>& nodes) {
  std::vector<char> in(st.num_nodes(), 0);
  for (int x : nodes) {
    require(x >= 0 && x < st.num_nodes(), "node out of range");
    in[x] = 1;
  }
  require(in[st.source()] && !in[st.sink()], "side must contain the source and not the sink");
  for (const StripArc& a : st.arcs)
    if (in[a.head] && !in[a.tail]) return false;
  return true;
}

std::vector<int> cone(const Strip& st, const std::vector<int>& from, Toward dir) {
  std::vector<char> seen(st.num_nodes(), 0);
  std::vector<int> stack;
  for (int x : from)
    if (!seen[x]) {
      seen[x] = 1;
      stack.push_back(x);
    }
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    const auto& list = dir == Toward::Source ? st.in_arcs[x] : st.out_arcs[x];
    for (int a : list) {
      int y = dir == Toward::Source ? st.arcs[a].tail : st.arcs[a].head;
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  std::vector<int> out;
  for (int x = 0; x < st.num_nodes(); ++x)
    if (seen[x]) out.push_back(x);
  return out;
}

std::vector<int> reachability_cone(const Strip& st, int x, Toward dir) {
  require(x >= 0 && x < st.num_nodes(), "node out of range");
  require(!st.is_terminal(x), "reachability cone of a terminal");
  return cone(st, {x}, dir);
}

std::vector<int> topological_order(const Strip& st) {
  std::vector<int> rank(st.num_nodes());
  std::iota(rank.begin(), rank.end(), 0);
  return rank;
}

std::vector<char> nodes_to_mask(const Multigraph& g, const Strip& st, const std::vector<int>& nodes) {
  std::vector<char> in(g.n(), 0);
  for (int x : nodes)
    for (int v : st.members[x]) in[v] = 1;
  return in;
}

Cut cut_from_prefix(const Multigraph& g, const Strip& st, int x) {
  require(x >= 0 && x < st.num_nodes(), "node out of range");
  require(x != st.sink(), "prefix ending at the sink");
  std::vector<int> nodes(x + 1);
  std::iota(nodes.begin(), nodes.end(), 0);
  return make_cut(g, nodes_to_mask(g, st, nodes));
}

bool common_mincut(const Strip& st, const Multigraph& g, const std::vector<int>& edge_ids,
                   std::vector<int>* nodes_out) {
  std::vector<int> tails{st.source()};
  std::vector<char> is_head(st.num_nodes(), 0);
  for (int id : edge_ids) {
    const Edge& e = g.edge(id);
    int a = st.node_of[e.u], b = st.node_of[e.v];
    if (a == b) return false;
    int t = std::min(a, b), h = std::max(a, b);  // topological numbering orients the arc
    tails.push_back(t);
    is_head[h] = 1;
  }
  std::vector<int> side = cone(st, tails, Toward::Source);
  for (int x : side)
    if (is_head[x] || x == st.sink()) return false;
  if (nodes_out) *nodes_out = side;
  return true;
}

}  // namespace msens
