#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "msens/graph.hpp"

namespace msens {

// Named desk-scale graphs. Vertex numbering:
//   P3: s=0 a=1 t=2          P4, C4, K4: v1..v4 = 0..3
//   TB: a1..a3 = 0..2, b1..b3 = 3..5 (bridge a1-b1)
//   H1: s=0 r=1 y=2 t=3      K2: 0-1
namespace fixtures {
Multigraph p3();
Multigraph p4();
Multigraph c4();
Multigraph k4();
Multigraph tb();
Multigraph h1();
Multigraph k2();

struct Named {
  std::string name;
  Multigraph graph;
};
std::vector<Named> all();
}  // namespace fixtures

using Rng = std::mt19937_64;

// Uniform integer in [lo, hi]; plain modulo keeps results identical across
// standard library implementations.
int uniform_int(Rng& rng, int lo, int hi);

// Connected multigraph: a random spanning tree plus extra random edges, with
// m between n-1 and max_m.
Multigraph random_connected_multigraph(Rng& rng, int n, int max_m);

}  // namespace msens
