#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "seanode/errors.hpp"
#include "seanode/value.hpp"

namespace seanode {

/// Identifies a method: declaring class, name, and parameter types.
struct Signature {
    std::string class_name;
    std::string method_name;
    std::vector<std::string> param_types;

    auto operator<=>(const Signature&) const = default;
};

/// "Class.method(int,int)".
std::string to_string(const Signature& sig);

// Node kinds. Field names follow the GraalVM node classes. Fields named
// self_id hold the id under which the node is stored.

struct NoNode {
    bool operator==(const NoNode&) const = default;
};

// Floating (data) nodes.

struct ConstantNode {
    Value value;
    bool operator==(const ConstantNode&) const = default;
};

struct ParameterNode {
    std::size_t index = 0;
    bool operator==(const ParameterNode&) const = default;
};

struct ValuePhiNode {
    NodeId self_id = 0;
    std::vector<NodeId> values;
    NodeId merge = 0;
    bool operator==(const ValuePhiNode&) const = default;
};

struct NegateNode {
    NodeId value = 0;
    bool operator==(const NegateNode&) const = default;
};

struct AddNode {
    NodeId x = 0;
    NodeId y = 0;
    bool operator==(const AddNode&) const = default;
};

struct MulNode {
    NodeId x = 0;
    NodeId y = 0;
    bool operator==(const MulNode&) const = default;
};

struct IntegerLessThanNode {
    NodeId x = 0;
    NodeId y = 0;
    bool operator==(const IntegerLessThanNode&) const = default;
};

struct ConditionalNode {
    NodeId condition = 0;
    NodeId true_value = 0;
    NodeId false_value = 0;
    bool operator==(const ConditionalNode&) const = default;
};

struct ValueProxyNode {
    NodeId value = 0;
    NodeId loop_exit = 0;
    bool operator==(const ValueProxyNode&) const = default;
};

struct MethodCallTargetNode {
    Signature target_method;
    std::vector<NodeId> arguments;
    bool operator==(const MethodCallTargetNode&) const = default;
};

// Fixed (control) nodes.

struct StartNode {
    NodeId next = 0;
    bool operator==(const StartNode&) const = default;
};

struct BeginNode {
    NodeId next = 0;
    bool operator==(const BeginNode&) const = default;
};

/// No-op control node; the residue of eliminated branches.
struct RefNode {
    NodeId next = 0;
    bool operator==(const RefNode&) const = default;
};

struct IfNode {
    NodeId condition = 0;
    NodeId true_successor = 0;
    NodeId false_successor = 0;
    bool operator==(const IfNode&) const = default;
};

struct EndNode {
    bool operator==(const EndNode&) const = default;
};

struct MergeNode {
    std::vector<NodeId> ends;
    NodeId next = 0;
    bool operator==(const MergeNode&) const = default;
};

struct LoopBeginNode {
    std::vector<NodeId> ends;
    NodeId next = 0;
    bool operator==(const LoopBeginNode&) const = default;
};

struct LoopEndNode {
    NodeId loop_begin = 0;
    bool operator==(const LoopEndNode&) const = default;
};

struct LoopExitNode {
    NodeId loop_begin = 0;
    NodeId next = 0;
    bool operator==(const LoopExitNode&) const = default;
};

struct NewInstanceNode {
    NodeId self_id = 0;
    std::string instance_class;
    NodeId next = 0;
    bool operator==(const NewInstanceNode&) const = default;
};

/// An absent object edge addresses the static-field region.
struct LoadFieldNode {
    NodeId self_id = 0;
    std::string field;
    std::optional<NodeId> object;
    NodeId next = 0;
    bool operator==(const LoadFieldNode&) const = default;
};

struct StoreFieldNode {
    NodeId self_id = 0;
    std::string field;
    NodeId value = 0;
    std::optional<NodeId> object;
    NodeId next = 0;
    bool operator==(const StoreFieldNode&) const = default;
};

struct ReturnNode {
    std::optional<NodeId> result;
    bool operator==(const ReturnNode&) const = default;
};

struct InvokeNode {
    NodeId self_id = 0;
    NodeId call_target = 0;
    NodeId next = 0;
    bool operator==(const InvokeNode&) const = default;
};

struct InvokeWithExceptionNode {
    NodeId self_id = 0;
    NodeId call_target = 0;
    NodeId next = 0;
    NodeId exception_edge = 0;
    bool operator==(const InvokeWithExceptionNode&) const = default;
};

struct UnwindNode {
    NodeId exception = 0;
    bool operator==(const UnwindNode&) const = default;
};

using NodeKind =
    std::variant<NoNode, ConstantNode, ParameterNode, ValuePhiNode, NegateNode, AddNode, MulNode,
                 IntegerLessThanNode, ConditionalNode, ValueProxyNode, MethodCallTargetNode, StartNode,
                 BeginNode, RefNode, IfNode, EndNode, MergeNode, LoopBeginNode, LoopEndNode, LoopExitNode,
                 NewInstanceNode, LoadFieldNode, StoreFieldNode, ReturnNode, InvokeNode,
                 InvokeWithExceptionNode, UnwindNode>;

/// Constructor name of the variant, e.g. "AddNode".
std::string_view kind_name(const NodeKind& n);

/// Ordered input edges. For ValuePhiNode the merge edge comes first, then the
/// values. Absent optional inputs are omitted.
std::vector<NodeId> inputs_of(const NodeKind& n);

/// Ordered successor edges; IfNode yields [true, false], InvokeWithExceptionNode
/// yields [next, exceptionEdge].
std::vector<NodeId> successors_of(const NodeKind& n);

/// The id embedded in the node, for kinds that carry one.
std::optional<NodeId> self_id_of(const NodeKind& n);

/// Nodes whose step is "go to next".
bool is_sequential(const NodeKind& n);
bool is_binary_arith(const NodeKind& n);
/// Floating nodes: evaluated by the data-flow semantics, never visited by control flow.
bool is_data(const NodeKind& n);
bool is_control(const NodeKind& n);
/// Control nodes whose value lives in the method state (read as expression leaves).
bool is_state_leaf(const NodeKind& n);
bool is_merge(const NodeKind& n);
bool is_end(const NodeKind& n);

/// Ends of a MergeNode or LoopBeginNode; empty for anything else.
const std::vector<NodeId>* merge_ends(const NodeKind& n);

template <class T>
bool holds(const NodeKind& n) {
    return std::holds_alternative<T>(n);
}

} // namespace seanode
