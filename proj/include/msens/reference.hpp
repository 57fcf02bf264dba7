#pragma once

#include <utility>
#include <vector>

#include "msens/graph.hpp"

namespace msens {

// Brute-force ground truth. Every exponential routine takes an explicit cap on
// the vertex count and throws CapacityError beyond it.
namespace bf {

inline constexpr int kDefaultEnumCap = 12;

int ft(const Multigraph& g, int s, int t, int edge_id);
int in(const Multigraph& g, int s, int t, int x, int y);

// Every vertex set A with s in A, t not in A and c(A) == c_{s,t}, as masks.
std::vector<std::vector<char>> mincut_sides(const Multigraph& g, int s, int t,
                                            int cap = kDefaultEnumCap);

// Some (s,t)-mincut cuts every listed edge.
bool edge_contained(const Multigraph& g, int s, int t, const std::vector<int>& edge_ids,
                    int cap = kDefaultEnumCap);

// Source node of the strip, as a sorted vertex list.
std::vector<int> nearest_side(const Multigraph& g, int s, int t);
// Same set computed as the intersection of all enumerated mincut sides.
std::vector<int> nearest_side_enum(const Multigraph& g, int s, int t, int cap = kDefaultEnumCap);

struct Change {
  bool insert = false;
  int x = -1, y = -1;
  int edge_id = -1;  // failures only
};

// Unordered pairs u < v whose mincut value differs after the change, sorted.
std::vector<std::pair<int, int>> affected_pairs(const Multigraph& g, const Change& change,
                                                int cap = 64);

std::vector<std::vector<int>> all_pairs_values(const Multigraph& g);

}  // namespace bf
}  // namespace msens
