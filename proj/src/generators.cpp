#include "orgsim/generators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace orgsim {

namespace {

// Linear index over pairs (i, j), i < j, 1-based, ordered
// (1,2),(1,3),...,(1,n),(2,3),...
std::pair<NodeId, NodeId> decode_pair(long long k, int n)
{
    long long remaining = k;
    for (int i = 1; i < n; ++i) {
        const long long row = n - i;
        if (remaining < row) {
            return {i, static_cast<NodeId>(i + 1 + remaining)};
        }
        remaining -= row;
    }
    throw std::logic_error("decode_pair: index out of range");
}

}  // namespace

Graph erdos_renyi(int n, long long m, Rng& rng)
{
    if (n < 1) {
        throw std::invalid_argument("erdos_renyi: n must be positive");
    }
    const long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
    if (m < 0 || m > max_edges) {
        throw std::invalid_argument("erdos_renyi: m=" + std::to_string(m) +
                                    " outside 0.." + std::to_string(max_edges));
    }
    // Floyd's algorithm: uniform m-subset of edge indices with exactly m draws.
    std::unordered_set<long long> chosen;
    chosen.reserve(static_cast<std::size_t>(m) * 2);
    for (long long t = max_edges - m; t < max_edges; ++t) {
        const long long r = rng.uniform_int(0, t);
        chosen.insert(chosen.count(r) ? t : r);
    }
    Graph g(n);
    for (long long k : chosen) {
        const auto [i, j] = decode_pair(k, n);
        g.add_link(i, j);
    }
    return g;
}

Graph barabasi_albert(int n, int attach_per_node, int seed_size, Rng& rng)
{
    if (attach_per_node < 1 || seed_size < attach_per_node || n < seed_size) {
        throw std::invalid_argument(
            "barabasi_albert: need seed_size >= attach_per_node >= 1 and "
            "n >= seed_size");
    }
    Graph g(n);
    // One entry per degree unit; sampling an entry uniformly is
    // degree-proportional sampling of nodes.
    std::vector<NodeId> targets;
    targets.reserve(static_cast<std::size_t>(n) * attach_per_node * 2);
    for (NodeId i = 1; i <= seed_size; ++i) {
        for (NodeId j = i + 1; j <= seed_size; ++j) {
            g.add_link(i, j);
            targets.push_back(i);
            targets.push_back(j);
        }
    }
    std::vector<NodeId> picks;
    for (NodeId v = seed_size + 1; v <= n; ++v) {
        picks.clear();
        if (targets.empty()) {
            // seed_size == 1: no degree mass yet, fall back to a uniform pick
            picks.push_back(static_cast<NodeId>(rng.uniform_int(1, v - 1)));
        }
        while (static_cast<int>(picks.size()) < attach_per_node) {
            const NodeId cand =
                targets[static_cast<std::size_t>(rng.uniform_int(
                    0, static_cast<std::int64_t>(targets.size()) - 1))];
            if (std::find(picks.begin(), picks.end(), cand) == picks.end()) {
                picks.push_back(cand);
            }
        }
        for (NodeId u : picks) {
            g.add_link(v, u);
            targets.push_back(u);
            targets.push_back(v);
        }
    }
    return g;
}

}  // namespace orgsim
