#pragma once

#include <vector>

#include "seanode/graph.hpp"
#include "seanode/runtime.hpp"

namespace seanode {

/// Graph, method state and parameters under which expressions are evaluated.
struct EvalContext {
    const Graph& g;
    const MethodState& m;
    const Params& p;
};

/// Big-step evaluation of the expression rooted at nid.
///
/// Phis and side-effecting control nodes (invokes, allocations, loads) are
/// leaves whose value is read from the method state. Arithmetic wraps at 32
/// bits and comparisons yield IntVal 0 or 1.
///
/// Throws EvalStuck when nid has no evaluation rule or an operand is not an
/// integer, and ParamOutOfRange for a parameter index past the end of p.
Value eval(const EvalContext& ctx, NodeId nid);

/// Pointwise eval under one unchanged context. An EvalStuck carries the
/// failing element's index.
std::vector<Value> eval_all(const EvalContext& ctx, const std::vector<NodeId>& nids);

} // namespace seanode
