#pragma once

#include "orgsim/graph.hpp"
#include "orgsim/rng.hpp"

namespace orgsim {

// G(n, M): exactly m distinct edges drawn uniformly among the C(n,2) pairs.
Graph erdos_renyi(int n, long long m, Rng& rng);

// Preferential attachment starting from a complete clique on seed_size nodes;
// each later node attaches attach_per_node distinct edges, targets drawn with
// probability proportional to degree. Total edges:
// C(seed_size, 2) + (n - seed_size) * attach_per_node.
Graph barabasi_albert(int n, int attach_per_node, int seed_size, Rng& rng);

}  // namespace orgsim
