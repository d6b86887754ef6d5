#include "seanode/wellformed.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace seanode {

namespace {

enum class Mark { Unvisited, Active, Done };

// Edges followed by data evaluation: inputs of data nodes other than phis.
bool expands(const NodeKind& n) { return is_data(n) && !holds<ValuePhiNode>(n); }

// Returns the first node found on a cycle reachable from root, if any.
std::optional<NodeId> find_cycle(const Graph& g, NodeId root, std::map<NodeId, Mark>& marks) {
    struct Frame {
        NodeId nid;
        std::vector<NodeId> pending;
    };
    if (marks[root] != Mark::Unvisited)
        return std::nullopt;
    std::vector<Frame> stack;
    auto enter = [&](NodeId nid) {
        marks[nid] = Mark::Active;
        const NodeKind& n = g.kind(nid);
        std::vector<NodeId> next;
        if (expands(n))
            next = inputs_of(n);
        std::reverse(next.begin(), next.end());
        stack.push_back({nid, std::move(next)});
    };
    enter(root);
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.pending.empty()) {
            marks[top.nid] = Mark::Done;
            stack.pop_back();
            continue;
        }
        NodeId child = top.pending.back();
        top.pending.pop_back();
        Mark m = marks[child];
        if (m == Mark::Active)
            return child;
        if (m == Mark::Unvisited)
            enter(child);
    }
    return std::nullopt;
}

void rule_start(const Graph& g, std::vector<Violation>& out) {
    if (!g.contains(0))
        out.push_back({"wf_start", 0, "node 0 is not mapped"});
    else if (!holds<StartNode>(g.kind(0)))
        out.push_back({"wf_start", 0, "node 0 is " + std::string(kind_name(g.kind(0))) + ", not StartNode"});
}

void rule_closed(const Graph& g, std::vector<Violation>& out) {
    for (const auto& [nid, n] : g.nodes()) {
        for (NodeId in : inputs_of(n)) {
            if (!g.contains(in))
                out.push_back({"wf_closed", nid, "input " + std::to_string(in) + " is not in the graph"});
        }
        for (NodeId s : successors_of(n)) {
            if (!g.contains(s))
                out.push_back({"wf_closed", nid, "successor " + std::to_string(s) + " is not in the graph"});
        }
    }
}

void rule_ends(const Graph& g, std::vector<Violation>& out) {
    for (const auto& [nid, n] : g.nodes()) {
        if (is_end(n) && g.usages(nid).empty())
            out.push_back({"wf_ends", nid, std::string(kind_name(n)) + " has no usages"});
    }
}

void rule_phis(const Graph& g, std::vector<Violation>& out) {
    for (const auto& [nid, n] : g.nodes()) {
        const auto* phi = std::get_if<ValuePhiNode>(&n);
        if (!phi)
            continue;
        const auto* ends = merge_ends(g.kind(phi->merge));
        if (!ends) {
            out.push_back({"wf_phis", nid, "merge edge " + std::to_string(phi->merge) + " is not a merge node"});
        } else if (ends->size() != phi->values.size()) {
            out.push_back({"wf_phis", nid,
                           std::to_string(phi->values.size()) + " values for a merge with " +
                               std::to_string(ends->size()) + " ends"});
        }
    }
}

void rule_self_ids(const Graph& g, std::vector<Violation>& out) {
    for (const auto& [nid, n] : g.nodes()) {
        auto self = self_id_of(n);
        if (self && *self != nid)
            out.push_back({"self_id", nid, "embedded id " + std::to_string(*self) + " does not match key"});
    }
}

void rule_data_acyclic(const Graph& g, std::vector<Violation>& out) {
    std::map<NodeId, Mark> marks;
    for (const auto& [nid, n] : g.nodes()) {
        if (!expands(n))
            continue;
        if (auto at = find_cycle(g, nid, marks))
            out.push_back({"data_acyclic", *at, "data-flow cycle through input edges"});
    }
}

template <class Rule>
bool passes(const Graph& g, Rule rule) {
    std::vector<Violation> v;
    rule(g, v);
    return v.empty();
}

} // namespace

bool WfReport::violates(std::string_view rule) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

bool wf_start(const Graph& g) { return passes(g, rule_start); }
bool wf_closed(const Graph& g) { return passes(g, rule_closed); }
bool wf_ends(const Graph& g) { return passes(g, rule_ends); }
bool wf_phis(const Graph& g) { return passes(g, rule_phis); }
bool wf_self_ids(const Graph& g) { return passes(g, rule_self_ids); }
bool wf_data_acyclic(const Graph& g) { return passes(g, rule_data_acyclic); }

const std::vector<WfRule>& default_rules() {
    static const std::vector<WfRule> rules{
        {"wf_start", rule_start},   {"wf_closed", rule_closed},   {"wf_ends", rule_ends},
        {"wf_phis", rule_phis},     {"self_id", rule_self_ids},   {"data_acyclic", rule_data_acyclic},
    };
    return rules;
}

WfReport check(const Graph& g, const std::vector<WfRule>& rules) {
    WfReport report;
    for (const auto& rule : rules)
        rule.check(g, report.violations);
    return report;
}

std::string to_string(const WfReport& report) {
    if (report.ok())
        return "ok\n";
    std::ostringstream os;
    for (const auto& v : report.violations)
        os << v.rule << " @" << v.nid << ": " << v.message << "\n";
    return os.str();
}

} // namespace seanode
