#pragma once

#include <map>

#include "orgsim/graph.hpp"

namespace orgsim {

// Watts-Strogatz average of local coefficients. Nodes with degree < 2
// contribute 0. OpenMP over nodes; the final sum is sequential so the result
// does not depend on the thread count.
double clustering_coefficient(const Graph& g);

// Mean shortest-path distance over connected node pairs; unreachable pairs
// are excluded. Throws std::domain_error when the graph has no edges.
// OpenMP over BFS sources with exact integer accumulation.
double average_path_length(const Graph& g);

std::map<int, int> degree_histogram(const Graph& g);

// Single-threaded references, kept for tests and the benchmark.
namespace serial {
double clustering_coefficient(const Graph& g);
double average_path_length(const Graph& g);
}  // namespace serial

}  // namespace orgsim
