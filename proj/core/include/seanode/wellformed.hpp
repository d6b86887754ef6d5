#pragma once

#include <functional>
#include <string>
#include <vector>

#include "seanode/graph.hpp"

namespace seanode {

struct Violation {
    std::string rule;
    NodeId nid = 0;
    std::string message;

    bool operator==(const Violation&) const = default;
};

struct WfReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool violates(std::string_view rule) const;
};

/// A named graph invariant. The checker runs an ordered list of these, so
/// new invariants are added by appending a rule.
struct WfRule {
    std::string name;
    std::function<void(const Graph&, std::vector<Violation>&)> check;
};

bool wf_start(const Graph& g);
bool wf_closed(const Graph& g);
bool wf_ends(const Graph& g);
bool wf_phis(const Graph& g);
/// Every embedded self id equals the key the node is stored under.
bool wf_self_ids(const Graph& g);
/// The input-edge subgraph of data nodes, with phis as leaves, has no cycle.
bool wf_data_acyclic(const Graph& g);

/// wf_start, wf_closed, wf_ends, wf_phis, self_id, data_acyclic.
const std::vector<WfRule>& default_rules();

WfReport check(const Graph& g, const std::vector<WfRule>& rules = default_rules());

/// Formats one violation per line, or "ok".
std::string to_string(const WfReport& report);

} // namespace seanode
