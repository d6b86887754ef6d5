#include "seanode/graph.hpp"

#include <algorithm>

namespace seanode {

namespace {

const NodeKind kNoNode{NoNode{}};

} // namespace

Graph::Graph(NodeMap nodes) : nodes_(std::move(nodes)) {
    for (const auto& [nid, n] : nodes_) {
        if (holds<NoNode>(n))
            throw InvalidEdit("node " + std::to_string(nid) + " is NoNode");
    }
    index();
}

void Graph::index() {
    usages_.clear();
    predecessors_.clear();
    for (const auto& [nid, n] : nodes_) {
        for (NodeId in : inputs_of(n))
            usages_[in].insert(nid);
        for (NodeId s : successors_of(n))
            predecessors_[s].insert(nid);
    }
}

const NodeKind& Graph::kind(NodeId nid) const {
    auto it = nodes_.find(nid);
    return it == nodes_.end() ? kNoNode : it->second;
}

std::vector<NodeId> Graph::ids() const {
    std::vector<NodeId> out;
    out.reserve(nodes_.size());
    for (const auto& entry : nodes_)
        out.push_back(entry.first);
    return out;
}

std::set<NodeId> Graph::inputs(NodeId nid) const {
    auto edges = inputs_of(kind(nid));
    return {edges.begin(), edges.end()};
}

std::set<NodeId> Graph::succ(NodeId nid) const {
    auto edges = successors_of(kind(nid));
    return {edges.begin(), edges.end()};
}

std::set<NodeId> Graph::usages(NodeId nid) const {
    auto it = usages_.find(nid);
    return it == usages_.end() ? std::set<NodeId>{} : it->second;
}

std::set<NodeId> Graph::predecessors(NodeId nid) const {
    auto it = predecessors_.find(nid);
    return it == predecessors_.end() ? std::set<NodeId>{} : it->second;
}

NodeId Graph::fresh_id() const { return nodes_.empty() ? 0 : nodes_.rbegin()->first + 1; }

Graph Graph::insert_node(NodeId nid, NodeKind n) const {
    if (holds<NoNode>(n))
        throw InvalidEdit("cannot store NoNode at " + std::to_string(nid));
    if (contains(nid))
        throw InvalidEdit("id " + std::to_string(nid) + " is already occupied");
    NodeMap copy = nodes_;
    copy.emplace(nid, std::move(n));
    return Graph(std::move(copy));
}

Graph Graph::replace_node(NodeId nid, NodeKind n) const {
    if (holds<NoNode>(n))
        throw InvalidEdit("cannot store NoNode at " + std::to_string(nid));
    if (!contains(nid))
        throw InvalidEdit("id " + std::to_string(nid) + " is not mapped");
    NodeMap copy = nodes_;
    copy[nid] = std::move(n);
    return Graph(std::move(copy));
}

Graph make_graph(std::initializer_list<std::pair<const NodeId, NodeKind>> nodes) {
    return Graph(Graph::NodeMap(nodes));
}

} // namespace seanode
