#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seanode/exec.hpp"

namespace seanode {

/// Finite stand-in for "all integers": enumerated values plus seeded random
/// samples once exhaustive enumeration gets too large.
struct Domain {
    std::vector<std::int32_t> int_values{-2, -1, 0, 1, 2};
    std::size_t random_samples = 256;
    std::uint64_t seed = 0;
};

/// Largest assignment count that is enumerated exhaustively.
inline constexpr std::size_t kExhaustiveLimit = 1'000'000;

enum class EquivStatus { Equivalent, NotEquivalent, Inconclusive };

std::string_view to_string(EquivStatus status);

/// An input on which the two sides disagree. For data equivalence lhs and
/// rhs are the two evaluation results; for behaviour they summarize the runs.
struct Witness {
    MethodState m;
    Params p;
    std::string lhs;
    std::string rhs;
};

struct EquivVerdict {
    EquivStatus status = EquivStatus::Inconclusive;
    std::optional<Witness> witness;
    std::size_t samples_tried = 0;
    /// Inputs on which either side ran out of fuel (behaviour only).
    std::size_t inconclusive = 0;
};

/// The values every leaf ranges over in data_equiv: dom.int_values followed
/// by INT_MIN, INT_MAX and -1 when not already present.
std::vector<std::int32_t> leaf_values(const Domain& dom);

/// Decides whether the expression at nid evaluates identically in g1 and g2
/// for every assignment of integers to its free leaves (parameters and
/// method-state leaves of either graph). Both sides stuck counts as agreement;
/// one side stuck does not.
///
/// Throws CyclicExpression if either expression is not a DAG.
EquivVerdict data_equiv(const Graph& g1, const Graph& g2, NodeId nid, const Domain& dom = {});

/// Runs main in both programs for every parameter vector drawn from
/// dom.int_values and compares outcome, returned value, final heap and the
/// ordered store trace. Inputs where either side runs out of fuel are
/// counted as inconclusive, not as counterexamples.
EquivVerdict behavior_diff(const Program& p1, const Program& p2, const Signature& main, const Domain& dom,
                           std::size_t fuel);

/// Heap cells that differ from the default value, keyed by (ref, field).
std::map<DynamicHeap::Cell, Value> canonical_cells(const DynamicHeap& h);

/// Human-readable verdict, with the witness when there is one.
std::string to_string(const EquivVerdict& verdict);

} // namespace seanode
