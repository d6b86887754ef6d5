#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "seanode/eval.hpp"

namespace seanode {

/// Local machine configuration: program counter, method state, heap.
struct LocalConfig {
    NodeId nid = 0;
    MethodState m;
    DynamicHeap h;

    bool operator==(const LocalConfig&) const = default;
};

struct HeapWrite {
    std::uint64_t ref = 0;
    std::string field;
    Value value;

    bool operator==(const HeapWrite&) const = default;
};

/// What a step wrote, in order. Used for traces and store-order comparison.
struct StepEffects {
    std::vector<std::pair<NodeId, Value>> m_writes;
    std::vector<HeapWrite> h_writes;
};

/// One small-step transition within a method.
///
/// Throws StepStuck when no local rule applies. That includes ReturnNode,
/// UnwindNode and the invoke nodes, which are handled by the global
/// semantics. When effects is non-null the step's writes are appended to it.
LocalConfig step(const Graph& g, const Params& p, LocalConfig c, StepEffects* effects = nullptr);

/// Phi usages of a merge node whose merge edge is that node, ascending id.
std::vector<NodeId> phis_of(const Graph& g, NodeId merge);

/// The merge an end node flows into: the unique merge usage of an EndNode,
/// or the loopBegin input of a LoopEndNode. Throws StepStuck otherwise.
NodeId merge_of_end(const Graph& g, NodeId end);

/// Latches each phi to its index-th value, all evaluated under m before any
/// update is applied. The result does not depend on the order of phis.
MethodState latch_phis(const Graph& g, const Params& p, const MethodState& m, const std::vector<NodeId>& phis,
                       std::size_t index, StepEffects* effects = nullptr);

enum class LocalOutcome { Running, HitReturn, HitUnwind, HitInvoke, Stuck };

std::string_view to_string(LocalOutcome outcome);

struct LocalRun {
    LocalConfig config;
    LocalOutcome outcome = LocalOutcome::Running;
    std::size_t steps = 0;
    std::string reason;
};

/// Steps until a node owned by the global semantics is reached, the
/// configuration is stuck, or fuel steps have been taken.
LocalRun run_local(const Graph& g, const Params& p, LocalConfig c, std::size_t fuel);

} // namespace seanode
