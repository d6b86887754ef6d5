#pragma once

#include <map>
#include <set>
#include <vector>

#include "seanode/node.hpp"

namespace seanode {

/// IR graph of a single method: a finite partial map from node ids to nodes.
///
/// Graphs are immutable values. insert_node and replace_node return a new
/// graph and leave the receiver untouched. Usage and predecessor sets are
/// indexed at construction so lookups are logarithmic.
class Graph {
public:
    using NodeMap = std::map<NodeId, NodeKind>;

    Graph() = default;
    /// Throws InvalidEdit if any entry is NoNode.
    explicit Graph(NodeMap nodes);

    /// Total lookup: NoNode for unmapped ids.
    const NodeKind& kind(NodeId nid) const;
    bool contains(NodeId nid) const { return nodes_.count(nid) != 0; }
    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    const NodeMap& nodes() const { return nodes_; }

    std::vector<NodeId> ids() const;
    std::set<NodeId> inputs(NodeId nid) const;
    std::set<NodeId> succ(NodeId nid) const;
    std::set<NodeId> usages(NodeId nid) const;
    std::set<NodeId> predecessors(NodeId nid) const;

    /// 1 + max id, or 0 for the empty graph.
    NodeId fresh_id() const;
    Graph insert_node(NodeId nid, NodeKind n) const;
    Graph replace_node(NodeId nid, NodeKind n) const;

    bool operator==(const Graph& other) const { return nodes_ == other.nodes_; }

private:
    void index();

    NodeMap nodes_;
    std::map<NodeId, std::set<NodeId>> usages_;
    std::map<NodeId, std::set<NodeId>> predecessors_;
};

/// Whole program: method graphs keyed by signature.
using Program = std::map<Signature, Graph>;

/// Builds a graph from (id, node) pairs; convenient for tests and fixtures.
Graph make_graph(std::initializer_list<std::pair<const NodeId, NodeKind>> nodes);

} // namespace seanode
