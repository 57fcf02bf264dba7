#pragma once

#include <iosfwd>
#include <unordered_set>
#include <vector>

#include "msens/carcass.hpp"
#include "msens/gomory_hu.hpp"
#include "msens/graph.hpp"

namespace msens {

// Hierarchy tree whose internal nodes each carry the carcass of their leaf
// set in the full graph. Value queries cost a constant number of LCA calls.
class QuadraticOracle {
 public:
  static QuadraticOracle build(const Multigraph& g, CarcassOptions opts = {});

  const Multigraph& graph() const { return g_; }
  const HierarchyTree& hierarchy() const { return h_; }
  // Carcass at an internal hierarchy node.
  const Carcass& carcass_at(int hnode) const;
  int value(int s, int t) const;

  bool edge_contained(int s, int t, int x, int y) const;
  int ft_value(int s, int t, int x, int y) const;
  int in_value(int s, int t, int x, int y) const;
  // x lies on the source side of the nearest (s,t)-mincut.
  bool in_nearest(int s, int t, int x) const;

  Cut report_ft_cut(int s, int t, int x, int y) const;
  Cut report_in_cut(int s, int t, int x, int y) const;
  Strip report_strip(int s, int t) const;

  void save(std::ostream& out) const;
  static QuadraticOracle load(std::istream& in);

 private:
  void check_pair(int s, int t) const;
  void check_edge(int x, int y) const;
  int node_for(int s, int t) const;

  Multigraph g_;
  HierarchyTree h_;
  std::vector<int> slot_;  // hierarchy node -> index into carcass_, -1 for leaves
  std::vector<Carcass> carcass_;
  std::unordered_set<long long> adjacent_;
};

}  // namespace msens
