#pragma once

#include <functional>
#include <vector>

#include "msens/graph.hpp"

namespace msens {

// Edges that share one endpoint, the anchor.
struct EdgeBundle {
  int anchor = -1;
  std::vector<int> edges;  // edge ids
};

void validate_bundle(const Multigraph& g, const EdgeBundle& b);

// Strip of every (s,t)-mincut whose source side encloses A. A must itself be
// an (s,t)-mincut side for some s in A.
Strip build_strip_above(const Multigraph& g, const std::vector<int>& a_side, int t);

enum class BundleSide { Source, Sink, Split };

// Where the bundle sits in the inherent partition of its anchor's node.
// Split also covers edges inside one node. Every edge at an anchor inside the
// sink terminal points toward the source and counts as Source.
BundleSide bundle_side(const Multigraph& g, const Strip& st, const EdgeBundle& b);

// Strip nodes, other than the source, swept by the bundle's cones toward
// the source: the cones of the far endpoints for a Source bundle, the cone
// of the anchor for a Sink bundle.
std::vector<int> bundle_region(const Multigraph& g, const Strip& st, const EdgeBundle& b);

struct TransformResult {
  bool feasible = false;
  // Edges of the cut around A; some (r,s)-mincut cuts all of them iff one
  // cuts the whole bundle.
  std::vector<int> edges_on_a;  // sorted edge ids
};

// st = build_strip_above(g, A, t) with s,r in A and c(s,r) >= c(s,t); the
// anchor must lie outside A. Infeasible when no (r,s)-mincut can cut the
// bundle at all.
TransformResult transform_edge_bundle(const Multigraph& g, const Strip& st, const EdgeBundle& b);

// Turns an (r,s)-mincut cutting every edge of the transformed set into one
// cutting the whole bundle, with the same value. Either side of `cut` may be
// given; the result is the side away from t.
Cut lift_cut(const Multigraph& g, const Strip& st, const Cut& cut, const EdgeBundle& b);

// Edges on the source side of y's node in st; empty for y in the source.
std::vector<int> source_side_edges(const Multigraph& g, const Strip& st, int y);

// Edges from A into the cone of y's node toward the source. y stays on the
// nearest s-side exactly when no (s,r)-mincut cuts all of them (provided the
// contracted complement of A does in the quotient).
std::vector<int> nearest_witness_edges(const Multigraph& g, const Strip& st, int y);

// Answers whether some (s,r)-mincut cuts every listed edge.
using ContainsQuery = std::function<bool(const std::vector<int>&)>;

// Membership of y in the nearest s-side of the (s,r)-mincuts, given that
// membership for the contracted complement of A in the quotient.
bool nearest_check_local(const Multigraph& g, const Strip& st, int y, int s,
                         bool nearest_in_quotient, const ContainsQuery& contains);

struct ThreeVertexReport {
  bool no_diagonal = false;       // no edge between A-B and B-A
  bool inner_is_mincut = false;   // A and B cut as an (r,s)-mincut
  bool outer_is_mincut = false;   // complement of A union B cuts s,t and r,t minimally
};

// Evaluates the three 3-vertex assertions for A (an (s,t)-mincut holding
// s and r) and B (an (r,s)-mincut side holding r, not t).
ThreeVertexReport three_vertex_assertions(const Multigraph& g, const std::vector<char>& a_side,
                                          const std::vector<char>& b_side, int s, int r, int t);

}  // namespace msens
