#include "seanode/node.hpp"

namespace seanode {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void push_opt(std::vector<NodeId>& out, const std::optional<NodeId>& id) {
    if (id)
        out.push_back(*id);
}

} // namespace

std::string to_string(const Signature& sig) {
    std::string s = sig.class_name + "." + sig.method_name + "(";
    for (std::size_t i = 0; i < sig.param_types.size(); ++i) {
        if (i)
            s += ",";
        s += sig.param_types[i];
    }
    return s + ")";
}

std::string_view kind_name(const NodeKind& n) {
    return std::visit(
        Overloaded{
            [](const NoNode&) { return std::string_view("NoNode"); },
            [](const ConstantNode&) { return std::string_view("ConstantNode"); },
            [](const ParameterNode&) { return std::string_view("ParameterNode"); },
            [](const ValuePhiNode&) { return std::string_view("ValuePhiNode"); },
            [](const NegateNode&) { return std::string_view("NegateNode"); },
            [](const AddNode&) { return std::string_view("AddNode"); },
            [](const MulNode&) { return std::string_view("MulNode"); },
            [](const IntegerLessThanNode&) { return std::string_view("IntegerLessThanNode"); },
            [](const ConditionalNode&) { return std::string_view("ConditionalNode"); },
            [](const ValueProxyNode&) { return std::string_view("ValueProxyNode"); },
            [](const MethodCallTargetNode&) { return std::string_view("MethodCallTargetNode"); },
            [](const StartNode&) { return std::string_view("StartNode"); },
            [](const BeginNode&) { return std::string_view("BeginNode"); },
            [](const RefNode&) { return std::string_view("RefNode"); },
            [](const IfNode&) { return std::string_view("IfNode"); },
            [](const EndNode&) { return std::string_view("EndNode"); },
            [](const MergeNode&) { return std::string_view("MergeNode"); },
            [](const LoopBeginNode&) { return std::string_view("LoopBeginNode"); },
            [](const LoopEndNode&) { return std::string_view("LoopEndNode"); },
            [](const LoopExitNode&) { return std::string_view("LoopExitNode"); },
            [](const NewInstanceNode&) { return std::string_view("NewInstanceNode"); },
            [](const LoadFieldNode&) { return std::string_view("LoadFieldNode"); },
            [](const StoreFieldNode&) { return std::string_view("StoreFieldNode"); },
            [](const ReturnNode&) { return std::string_view("ReturnNode"); },
            [](const InvokeNode&) { return std::string_view("InvokeNode"); },
            [](const InvokeWithExceptionNode&) { return std::string_view("InvokeWithExceptionNode"); },
            [](const UnwindNode&) { return std::string_view("UnwindNode"); },
        },
        n);
}

std::vector<NodeId> inputs_of(const NodeKind& n) {
    return std::visit(
        Overloaded{
            [](const ValuePhiNode& k) {
                std::vector<NodeId> out{k.merge};
                out.insert(out.end(), k.values.begin(), k.values.end());
                return out;
            },
            [](const NegateNode& k) { return std::vector<NodeId>{k.value}; },
            [](const AddNode& k) { return std::vector<NodeId>{k.x, k.y}; },
            [](const MulNode& k) { return std::vector<NodeId>{k.x, k.y}; },
            [](const IntegerLessThanNode& k) { return std::vector<NodeId>{k.x, k.y}; },
            [](const ConditionalNode& k) {
                return std::vector<NodeId>{k.condition, k.true_value, k.false_value};
            },
            [](const ValueProxyNode& k) { return std::vector<NodeId>{k.value, k.loop_exit}; },
            [](const MethodCallTargetNode& k) { return k.arguments; },
            [](const IfNode& k) { return std::vector<NodeId>{k.condition}; },
            [](const MergeNode& k) { return k.ends; },
            [](const LoopBeginNode& k) { return k.ends; },
            [](const LoopEndNode& k) { return std::vector<NodeId>{k.loop_begin}; },
            [](const LoopExitNode& k) { return std::vector<NodeId>{k.loop_begin}; },
            [](const LoadFieldNode& k) {
                std::vector<NodeId> out;
                push_opt(out, k.object);
                return out;
            },
            [](const StoreFieldNode& k) {
                std::vector<NodeId> out{k.value};
                push_opt(out, k.object);
                return out;
            },
            [](const ReturnNode& k) {
                std::vector<NodeId> out;
                push_opt(out, k.result);
                return out;
            },
            [](const InvokeNode& k) { return std::vector<NodeId>{k.call_target}; },
            [](const InvokeWithExceptionNode& k) { return std::vector<NodeId>{k.call_target}; },
            [](const UnwindNode& k) { return std::vector<NodeId>{k.exception}; },
            [](const auto&) { return std::vector<NodeId>{}; },
        },
        n);
}

std::vector<NodeId> successors_of(const NodeKind& n) {
    return std::visit(
        Overloaded{
            [](const StartNode& k) { return std::vector<NodeId>{k.next}; },
            [](const BeginNode& k) { return std::vector<NodeId>{k.next}; },
            [](const RefNode& k) { return std::vector<NodeId>{k.next}; },
            [](const IfNode& k) { return std::vector<NodeId>{k.true_successor, k.false_successor}; },
            [](const MergeNode& k) { return std::vector<NodeId>{k.next}; },
            [](const LoopBeginNode& k) { return std::vector<NodeId>{k.next}; },
            [](const LoopExitNode& k) { return std::vector<NodeId>{k.next}; },
            [](const NewInstanceNode& k) { return std::vector<NodeId>{k.next}; },
            [](const LoadFieldNode& k) { return std::vector<NodeId>{k.next}; },
            [](const StoreFieldNode& k) { return std::vector<NodeId>{k.next}; },
            [](const InvokeNode& k) { return std::vector<NodeId>{k.next}; },
            [](const InvokeWithExceptionNode& k) { return std::vector<NodeId>{k.next, k.exception_edge}; },
            [](const auto&) { return std::vector<NodeId>{}; },
        },
        n);
}

std::optional<NodeId> self_id_of(const NodeKind& n) {
    return std::visit(
        Overloaded{
            [](const ValuePhiNode& k) -> std::optional<NodeId> { return k.self_id; },
            [](const NewInstanceNode& k) -> std::optional<NodeId> { return k.self_id; },
            [](const LoadFieldNode& k) -> std::optional<NodeId> { return k.self_id; },
            [](const StoreFieldNode& k) -> std::optional<NodeId> { return k.self_id; },
            [](const InvokeNode& k) -> std::optional<NodeId> { return k.self_id; },
            [](const InvokeWithExceptionNode& k) -> std::optional<NodeId> { return k.self_id; },
            [](const auto&) -> std::optional<NodeId> { return std::nullopt; },
        },
        n);
}

bool is_sequential(const NodeKind& n) {
    return holds<StartNode>(n) || holds<BeginNode>(n) || holds<RefNode>(n) || holds<LoopExitNode>(n) ||
           holds<MergeNode>(n) || holds<LoopBeginNode>(n);
}

bool is_binary_arith(const NodeKind& n) {
    return holds<AddNode>(n) || holds<MulNode>(n) || holds<IntegerLessThanNode>(n);
}

bool is_data(const NodeKind& n) {
    return holds<ConstantNode>(n) || holds<ParameterNode>(n) || holds<ValuePhiNode>(n) || holds<NegateNode>(n) ||
           is_binary_arith(n) || holds<ConditionalNode>(n) || holds<ValueProxyNode>(n) ||
           holds<MethodCallTargetNode>(n);
}

bool is_control(const NodeKind& n) { return !holds<NoNode>(n) && !is_data(n); }

bool is_state_leaf(const NodeKind& n) {
    return holds<InvokeNode>(n) || holds<InvokeWithExceptionNode>(n) || holds<NewInstanceNode>(n) ||
           holds<LoadFieldNode>(n);
}

bool is_merge(const NodeKind& n) { return holds<MergeNode>(n) || holds<LoopBeginNode>(n); }

bool is_end(const NodeKind& n) { return holds<EndNode>(n) || holds<LoopEndNode>(n); }

const std::vector<NodeId>* merge_ends(const NodeKind& n) {
    if (const auto* m = std::get_if<MergeNode>(&n))
        return &m->ends;
    if (const auto* l = std::get_if<LoopBeginNode>(&n))
        return &l->ends;
    return nullptr;
}

} // namespace seanode
