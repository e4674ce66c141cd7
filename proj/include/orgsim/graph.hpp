#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

namespace orgsim {

using NodeId = int;

// Undirected simple graph over dense node ids 1..n. Id 0 is reserved for the
// unemployed row of the employment matrix and is never a graph node.
//
// Adjacency lists are kept sorted, so the stored representation depends only
// on the edge set, not on insertion order.
class Graph {
public:
    explicit Graph(int node_count);

    int node_count() const { return node_count_; }
    std::size_t edge_count() const { return edge_count_; }

    bool has_link(NodeId i, NodeId j) const;

    // Idempotent: adding an existing link or removing a missing one is a
    // no-op. Returns whether the edge set changed. i == j throws.
    bool add_link(NodeId i, NodeId j);
    bool remove_link(NodeId i, NodeId j);

    int degree(NodeId v) const;
    const std::vector<NodeId>& neighbors(NodeId v) const;  // sorted ascending

    // order 1: adj(v); order 2: adj(v) plus their neighbors. v itself is
    // always excluded. Result is sorted.
    std::vector<NodeId> neighbors_within(NodeId v, int order) const;

    std::vector<std::pair<NodeId, NodeId>> edges() const;  // src < dst, sorted

    // CSV with header "src,dst", one edge per row, src < dst.
    void write_edge_csv(std::ostream& out) const;

private:
    void check_node(NodeId v) const;

    int node_count_;
    std::size_t edge_count_ = 0;
    std::vector<std::vector<NodeId>> adj_;  // index 0 unused
};

}  // namespace orgsim
