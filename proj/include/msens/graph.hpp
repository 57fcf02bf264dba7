#pragma once

#include <cstdint>
#include <vector>

#include "msens/errors.hpp"

namespace msens {

struct Edge {
  int id = -1;
  int u = -1;
  int v = -1;
  int other(int w) const { return w == u ? v : u; }
};

// Undirected multigraph with stable edge ids. Every vertex carries the sorted
// set of original vertices it stands for; a freshly built graph has identity
// origins, and contract() composes them.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int n);

  int add_edge(int u, int v);
  void add_edge_with_id(int id, int u, int v);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  int original_n() const { return orig_n_; }
  // One past the largest edge id ever used.
  int id_bound() const { return static_cast<int>(pos_.size()); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge_at(int pos) const { return edges_[pos]; }
  int pos_of(int id) const { return id >= 0 && id < id_bound() ? pos_[id] : -1; }
  bool has_edge(int id) const { return pos_of(id) >= 0; }
  const Edge& edge(int id) const;
  const std::vector<int>& incident(int v) const { return inc_[v]; }
  int degree(int v) const { return static_cast<int>(inc_[v].size()); }
  std::vector<int> edges_between(int u, int v) const;

  const std::vector<int>& origin(int v) const { return origin_[v]; }
  int min_origin(int v) const { return origin_[v].front(); }

  // Copies that model a single failure or insertion.
  Multigraph without_edge(int id) const;
  Multigraph with_edge(int u, int v) const;

  bool connected() const;

  // Replaces the origin sets; they must partition 0..original_n-1.
  void set_origins(std::vector<std::vector<int>> origin, int original_n);

 private:
  int n_ = 0;
  int orig_n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> pos_;
  std::vector<std::vector<int>> inc_;
  std::vector<std::vector<int>> origin_;
};

struct Cut {
  std::vector<int> side;  // sorted
  int value = 0;
};

int cut_value(const Multigraph& g, const std::vector<int>& side);
// Unchecked variant over a membership mask.
int cut_value_mask(const Multigraph& g, const std::vector<char>& in_side);
Cut make_cut(const Multigraph& g, const std::vector<char>& in_side);

struct ContractResult {
  Multigraph graph;
  std::vector<int> new_of_old;
  std::vector<std::vector<int>> old_of_new;
};

// Each group becomes one vertex; every other vertex stays. New vertices are
// numbered by their smallest original vertex.
ContractResult contract_map(const Multigraph& g, const std::vector<std::vector<int>>& groups);
Multigraph contract(const Multigraph& g, const std::vector<std::vector<int>>& groups);

struct FlowResult {
  int value = 0;
  // Per edge position: +1 flow u->v, -1 flow v->u, 0 none.
  std::vector<std::int8_t> flow;
};

FlowResult max_flow(const Multigraph& g, const std::vector<int>& sources,
                    const std::vector<int>& sinks);
int max_flow_value(const Multigraph& g, int s, int t);
// Vertices residual-reachable from the sources of a maximum flow: the
// nearest minimum cut.
std::vector<char> nearest_source_side(const Multigraph& g, const FlowResult& f,
                                      const std::vector<int>& sources);

struct StripArc {
  int edge = -1;  // edge id
  int tail = -1;  // node toward the source
  int head = -1;
};

// All minimum cuts between a source set and a sink set. Nodes are numbered in
// topological order: node 0 is the source, node count-1 the sink. Edges inside
// a node are not listed; every listed arc is one crossing edge.
struct Strip {
  int value = 0;
  std::vector<int> node_of;
  std::vector<std::vector<int>> members;
  std::vector<int> key;  // smallest original vertex per node
  std::vector<StripArc> arcs;
  std::vector<std::vector<int>> in_arcs;   // side toward the source
  std::vector<std::vector<int>> out_arcs;  // side toward the sink

  int num_nodes() const { return static_cast<int>(members.size()); }
  int source() const { return 0; }
  int sink() const { return num_nodes() - 1; }
  bool is_terminal(int x) const { return x == source() || x == sink(); }
  std::vector<int> side_s(int x) const;
  std::vector<int> side_t(int x) const;
};

Strip build_strip(const Multigraph& g, int s, int t);
Strip build_strip(const Multigraph& g, const std::vector<int>& sources,
                  const std::vector<int>& sinks);

// Assembles a strip from a vertex grouping and oriented crossing edges.
// Empty groups are dropped; arcs inside a group are an error.
Strip make_strip(const Multigraph& g, const std::vector<int>& group_of, int num_groups,
                 int source_group, int sink_group, const std::vector<StripArc>& arcs);

enum class Toward { Source, Sink };

bool is_transversal(const Strip& st, const std::vector<int>& nodes);
std::vector<int> reachability_cone(const Strip& st, int x, Toward dir);
// Unchecked cone that also accepts terminals; sorted node ids.
std::vector<int> cone(const Strip& st, const std::vector<int>& from, Toward dir);
std::vector<int> topological_order(const Strip& st);
Cut cut_from_prefix(const Multigraph& g, const Strip& st, int x);
std::vector<char> nodes_to_mask(const Multigraph& g, const Strip& st, const std::vector<int>& nodes);

// Smallest transversal cutting every listed edge, if one exists.
bool common_mincut(const Strip& st, const Multigraph& g, const std::vector<int>& edge_ids,
                   std::vector<int>* nodes_out);

}  // namespace msens
