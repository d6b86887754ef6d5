#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seanode/graph.hpp"

namespace seanode {

/// Replacement of the node at target. Rewrites never delete nodes; anything
/// the old node referenced stays in the graph.
struct Rewrite {
    NodeId target = 0;
    NodeKind before;
    NodeKind after;
    std::vector<std::pair<NodeId, NodeKind>> new_nodes;
    std::string rule;
};

struct PassReport {
    std::vector<Rewrite> rewrites;
    std::size_t iterations = 0;
    bool fixpoint = false;
};

/// One line per rewrite: `<rule> @<nid>: <BeforeKind> -> <AfterKind>`.
std::string to_log(const PassReport& report);

struct PassResult {
    Graph graph;
    PassReport report;
};

class IterationCapExceeded : public Error {
public:
    explicit IterationCapExceeded(PassResult partial)
        : Error("optimizer did not reach a fixpoint within " + std::to_string(partial.report.iterations) +
                " sweeps"),
          partial_(std::move(partial)) {}

    const PassResult& partial() const noexcept { return partial_; }

private:
    PassResult partial_;
};

/// Data-node canonicalization. Rules in priority order: constant folding,
/// arithmetic identities, conditional simplification. A rule that forwards
/// to an existing input copies that input's node into nid; when the input
/// is a state leaf (phi, invoke, load, allocation) that cannot be copied,
/// the rule does not fire.
std::optional<Rewrite> canonicalize_data(const Graph& g, NodeId nid);

/// IfNode canonicalization: a constant condition or equal successors turn
/// the node into a RefNode to the branch that is always taken.
std::optional<Rewrite> canonicalize_if(const Graph& g, NodeId nid);

Graph apply_rewrite(const Graph& g, const Rewrite& rw);

/// Dominator-based elimination of branches whose outcome is already fixed by
/// a dominating branch on the same condition (by node id, or by structurally
/// equal pure expression). Repeats until no branch changes.
PassResult conditional_elimination(const Graph& g);

enum class Pass { Canonicalize, CondElim, All };

std::optional<Pass> parse_pass(std::string_view name);

inline constexpr std::size_t kDefaultSweepCap = 100;

/// Sweeps ids in ascending order applying rewrites until a sweep changes
/// nothing. Throws IterationCapExceeded after max_sweeps sweeps that all
/// rewrote something.
PassResult apply_pass(const Graph& g, Pass pass, std::size_t max_sweeps = kDefaultSweepCap);

struct ProgramPassResult {
    Program program;
    std::map<Signature, PassReport> reports;
};

ProgramPassResult apply_pass(const Program& program, Pass pass, std::size_t max_sweeps = kDefaultSweepCap);

} // namespace seanode
