#include "orgsim/metrics.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace orgsim {

namespace {

double local_clustering(const Graph& g, NodeId v)
{
    const auto& nbrs = g.neighbors(v);
    const int k = static_cast<int>(nbrs.size());
    if (k < 2) {
        return 0.0;
    }
    long long linked = 0;
    for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) {
            if (g.has_link(nbrs[static_cast<std::size_t>(a)],
                           nbrs[static_cast<std::size_t>(b)])) {
                ++linked;
            }
        }
    }
    return static_cast<double>(linked) /
           (static_cast<double>(k) * (k - 1) / 2.0);
}

// Sum of BFS distances from s and the number of nodes reached (s excluded).
void bfs_distance_sums(const Graph& g, NodeId s, std::vector<int>& dist,
                       std::vector<NodeId>& queue, std::int64_t& dist_sum,
                       std::int64_t& reached)
{
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    queue.push_back(s);
    dist[static_cast<std::size_t>(s)] = 0;
    dist_sum = 0;
    reached = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        const int du = dist[static_cast<std::size_t>(u)];
        for (NodeId w : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = du + 1;
                dist_sum += du + 1;
                ++reached;
                queue.push_back(w);
            }
        }
    }
}

}  // namespace

double clustering_coefficient(const Graph& g)
{
    const int n = g.node_count();
    std::vector<double> local(static_cast<std::size_t>(n) + 1, 0.0);
#pragma omp parallel for schedule(dynamic, 16)
    for (int v = 1; v <= n; ++v) {
        local[static_cast<std::size_t>(v)] = local_clustering(g, v);
    }
    // Sequential sum in node order: identical at any thread count.
    double sum = 0.0;
    for (int v = 1; v <= n; ++v) {
        sum += local[static_cast<std::size_t>(v)];
    }
    return sum / n;
}

double average_path_length(const Graph& g)
{
    if (g.edge_count() == 0) {
        throw std::domain_error("average_path_length: graph has no edges");
    }
    const int n = g.node_count();
    std::int64_t total_dist = 0;
    std::int64_t total_pairs = 0;
#pragma omp parallel
    {
        std::vector<int> dist(static_cast<std::size_t>(n) + 1);
        std::vector<NodeId> queue;
        queue.reserve(static_cast<std::size_t>(n));
#pragma omp for schedule(dynamic, 8) reduction(+ : total_dist, total_pairs)
        for (int s = 1; s <= n; ++s) {
            std::int64_t dist_sum = 0;
            std::int64_t reached = 0;
            bfs_distance_sums(g, s, dist, queue, dist_sum, reached);
            total_dist += dist_sum;
            total_pairs += reached;
        }
    }
    // Ordered-pair totals; the ratio equals the unordered mean.
    return static_cast<double>(total_dist) / static_cast<double>(total_pairs);
}

std::map<int, int> degree_histogram(const Graph& g)
{
    std::map<int, int> hist;
    for (NodeId v = 1; v <= g.node_count(); ++v) {
        ++hist[g.degree(v)];
    }
    return hist;
}

namespace serial {

double clustering_coefficient(const Graph& g)
{
    double sum = 0.0;
    for (NodeId v = 1; v <= g.node_count(); ++v) {
        sum += local_clustering(g, v);
    }
    return sum / g.node_count();
}

double average_path_length(const Graph& g)
{
    if (g.edge_count() == 0) {
        throw std::domain_error("average_path_length: graph has no edges");
    }
    const int n = g.node_count();
    std::vector<int> dist(static_cast<std::size_t>(n) + 1);
    std::vector<NodeId> queue;
    std::int64_t total_dist = 0;
    std::int64_t total_pairs = 0;
    for (NodeId s = 1; s <= n; ++s) {
        std::int64_t dist_sum = 0;
        std::int64_t reached = 0;
        bfs_distance_sums(g, s, dist, queue, dist_sum, reached);
        total_dist += dist_sum;
        total_pairs += reached;
    }
    return static_cast<double>(total_dist) / static_cast<double>(total_pairs);
}

}  // namespace serial

}  // namespace orgsim
