#include "orgsim/graph.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace orgsim {

Graph::Graph(int node_count) : node_count_(node_count)
{
    if (node_count < 1) {
        throw std::invalid_argument("Graph: node_count must be positive");
    }
    adj_.resize(static_cast<std::size_t>(node_count) + 1);
}

void Graph::check_node(NodeId v) const
{
    if (v < 1 || v > node_count_) {
        throw std::out_of_range("Graph: node id " + std::to_string(v) +
                                " outside 1.." + std::to_string(node_count_));
    }
}

bool Graph::has_link(NodeId i, NodeId j) const
{
    check_node(i);
    check_node(j);
    const auto& a = adj_[static_cast<std::size_t>(i)];
    return std::binary_search(a.begin(), a.end(), j);
}

bool Graph::add_link(NodeId i, NodeId j)
{
    check_node(i);
    check_node(j);
    if (i == j) {
        throw std::invalid_argument("Graph: self-loops are not allowed");
    }
    auto& ai = adj_[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(ai.begin(), ai.end(), j);
    if (it != ai.end() && *it == j) {
        return false;
    }
    ai.insert(it, j);
    auto& aj = adj_[static_cast<std::size_t>(j)];
    aj.insert(std::lower_bound(aj.begin(), aj.end(), i), i);
    ++edge_count_;
    return true;
}

bool Graph::remove_link(NodeId i, NodeId j)
{
    check_node(i);
    check_node(j);
    if (i == j) {
        throw std::invalid_argument("Graph: self-loops are not allowed");
    }
    auto& ai = adj_[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(ai.begin(), ai.end(), j);
    if (it == ai.end() || *it != j) {
        return false;
    }
    ai.erase(it);
    auto& aj = adj_[static_cast<std::size_t>(j)];
    aj.erase(std::lower_bound(aj.begin(), aj.end(), i));
    --edge_count_;
    return true;
}

int Graph::degree(NodeId v) const
{
    check_node(v);
    return static_cast<int>(adj_[static_cast<std::size_t>(v)].size());
}

const std::vector<NodeId>& Graph::neighbors(NodeId v) const
{
    check_node(v);
    return adj_[static_cast<std::size_t>(v)];
}

std::vector<NodeId> Graph::neighbors_within(NodeId v, int order) const
{
    check_node(v);
    if (order != 1 && order != 2) {
        throw std::invalid_argument("neighbors_within: order must be 1 or 2");
    }
    const auto& direct = adj_[static_cast<std::size_t>(v)];
    if (order == 1) {
        return direct;
    }
    std::vector<char> seen(static_cast<std::size_t>(node_count_) + 1, 0);
    for (NodeId u : direct) {
        seen[static_cast<std::size_t>(u)] = 1;
        for (NodeId w : adj_[static_cast<std::size_t>(u)]) {
            seen[static_cast<std::size_t>(w)] = 1;
        }
    }
    seen[static_cast<std::size_t>(v)] = 0;
    std::vector<NodeId> out;
    for (NodeId u = 1; u <= node_count_; ++u) {
        if (seen[static_cast<std::size_t>(u)]) {
            out.push_back(u);
        }
    }
    return out;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const
{
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edge_count_);
    for (NodeId i = 1; i <= node_count_; ++i) {
        for (NodeId j : adj_[static_cast<std::size_t>(i)]) {
            if (i < j) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

void Graph::write_edge_csv(std::ostream& out) const
{
    out << "src,dst\n";
    for (const auto& [i, j] : edges()) {
        out << i << ',' << j << '\n';
    }
}

}  // namespace orgsim
