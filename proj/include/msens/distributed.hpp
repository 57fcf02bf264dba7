#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "msens/carcass.hpp"
#include "msens/gomory_hu.hpp"
#include "msens/graph.hpp"

namespace msens {

// Structure every label points at: the hierarchy tree and, per internal
// hierarchy node, its skeleton. Steiner units map to cactus nodes through
// the hierarchy children.
struct LabelShared {
  HierarchyTree hierarchy;
  std::vector<int> slot;  // hierarchy node -> index into skeletons, -1 for leaves
  std::vector<Skeleton> skeletons;
  std::vector<int> node_in_parent;  // per hierarchy node: cactus node of its parent, -1 at the root

  // Cactus node at internal hierarchy node h holding Steiner vertex v.
  int node_of(int h, int v) const;
};

// The owner's unit at one internal hierarchy node and its projection.
struct LabelEntry {
  int unit = -1;
  NodePath proj;
};

struct VertexLabel {
  int owner = -1;
  std::shared_ptr<const LabelShared> shared;
  std::vector<LabelEntry> entries;  // per slot
  std::vector<int> neighbors;       // distinct, sorted
  // Owner-specific entries read so far.
  mutable std::uint64_t reads = 0;

  const LabelEntry& entry(int slot) const;
  bool adjacent(int v) const;
  std::size_t owned_records() const { return entries.size() + neighbors.size(); }
};

enum class ChangeMode { Fail, Insert };

// Labels for every vertex, or only for `only` when given.
std::vector<std::optional<VertexLabel>> build_labels(
    const Multigraph& g, const std::optional<std::vector<int>>& only = std::nullopt,
    CarcassOptions opts = {});

// Does failing (or inserting) edge (x,y) change the (s,t) mincut value? Reads
// nothing but the two endpoint labels.
bool value_changed(const VertexLabel& lx, const VertexLabel& ly, int s, int t, ChangeMode mode);

// Owner of ly lies on the nearest s-side of the (s,t)-mincuts. Reads only ly.
bool on_nearest_side(const VertexLabel& ly, int s, int t);

// One processed hierarchy node with at least one affected pair: for insertions
// every pair split between cactus nodes on `path`, for failures every pair in
// distinct groups of the link around `path`.
struct AffectedRecord {
  int hnode = -1;
  NodePath path;
};

struct AffectedPairsEncoding {
  ChangeMode mode = ChangeMode::Fail;
  std::shared_ptr<const LabelShared> shared;
  std::vector<AffectedRecord> records;

  // Every affected pair (u,v) with u < v, in lexicographic order.
  std::vector<std::pair<int, int>> expand() const;
};

// For insertions with overlapping projections the processed path is one
// common cactus node; `largest_common` picks the largest instead of the
// smallest so tests can compare both choices.
AffectedPairsEncoding affected_pairs(const VertexLabel& lx, const VertexLabel& ly, ChangeMode mode,
                                     bool largest_common = false);

}  // namespace msens
