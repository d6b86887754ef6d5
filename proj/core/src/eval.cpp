#include "seanode/eval.hpp"

#include <unordered_map>

namespace seanode {

namespace {

class Evaluator {
public:
    explicit Evaluator(const EvalContext& ctx) : ctx_(ctx) {}

    Value operator()(NodeId nid) { return eval(nid, 0); }

private:
    IntVal integer(NodeId user, NodeId operand, std::size_t depth) {
        Value v = eval(operand, depth + 1);
        if (const auto* i = std::get_if<IntVal>(&v))
            return *i;
        throw EvalStuck(user, "operand " + std::to_string(operand) + " is " + to_string(v) + ", not an integer");
    }

    Value eval(NodeId nid, std::size_t depth) {
        // A well-formed expression is a DAG, so no path is longer than the graph.
        if (depth > ctx_.g.size())
            throw EvalStuck(nid, "cyclic expression");
        if (auto it = memo_.find(nid); it != memo_.end())
            return it->second;
        Value v = compute(nid, depth);
        memo_.emplace(nid, v);
        return v;
    }

    Value compute(NodeId nid, std::size_t depth) {
        const NodeKind& n = ctx_.g.kind(nid);
        if (const auto* c = std::get_if<ConstantNode>(&n))
            return c->value;
        if (const auto* par = std::get_if<ParameterNode>(&n)) {
            if (par->index >= ctx_.p.size())
                throw ParamOutOfRange(nid, par->index, ctx_.p.size());
            return ctx_.p[par->index];
        }
        if (holds<ValuePhiNode>(n) || is_state_leaf(n))
            return ctx_.m[nid];
        if (const auto* neg = std::get_if<NegateNode>(&n))
            return arith::negate(integer(nid, neg->value, depth));
        if (const auto* add = std::get_if<AddNode>(&n))
            return arith::add(integer(nid, add->x, depth), integer(nid, add->y, depth));
        if (const auto* mul = std::get_if<MulNode>(&n))
            return arith::mul(integer(nid, mul->x, depth), integer(nid, mul->y, depth));
        if (const auto* lt = std::get_if<IntegerLessThanNode>(&n))
            return arith::less_than(integer(nid, lt->x, depth), integer(nid, lt->y, depth));
        if (const auto* cond = std::get_if<ConditionalNode>(&n)) {
            IntVal c = integer(nid, cond->condition, depth);
            return eval(c.bits != 0 ? cond->true_value : cond->false_value, depth + 1);
        }
        if (const auto* proxy = std::get_if<ValueProxyNode>(&n))
            return eval(proxy->value, depth + 1);
        throw EvalStuck(nid, "no evaluation rule for " + std::string(kind_name(n)));
    }

    const EvalContext& ctx_;
    std::unordered_map<NodeId, Value> memo_;
};

} // namespace

Value eval(const EvalContext& ctx, NodeId nid) { return Evaluator(ctx)(nid); }

std::vector<Value> eval_all(const EvalContext& ctx, const std::vector<NodeId>& nids) {
    Evaluator evaluator(ctx);
    std::vector<Value> out;
    out.reserve(nids.size());
    for (std::size_t i = 0; i < nids.size(); ++i) {
        try {
            out.push_back(evaluator(nids[i]));
        } catch (const EvalStuck& e) {
            throw EvalStuck(e.nid(), e.reason(), i);
        }
    }
    return out;
}

} // namespace seanode
