#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <set>

#include "seanode/graph.hpp"

namespace fixtures {

using namespace seanode;

// Builds random pure expressions into a node map. Leaves are parameters and
// LoadFieldNode state leaves; every created node gets a fresh id.
class ExprGen {
public:
    explicit ExprGen(std::uint64_t seed) : rng_(seed) {}

    NodeId leaf() {
        if (rng_() % 3 == 0) {
            NodeId id = next_++;
            nodes_[id] = LoadFieldNode{id, "f", std::nullopt, id};
            return id;
        }
        return add(ParameterNode{static_cast<std::size_t>(rng_() % 2)});
    }

    NodeId constant(std::int32_t v) { return add(ConstantNode{IntVal{v}}); }

    NodeId random_constant() {
        static constexpr std::int32_t picks[] = {0, 1, -1, 2, 7, 2147483647, -2147483647 - 1, 65536};
        return constant(picks[rng_() % std::size(picks)]);
    }

    // A relocatable expression (its top node is never a state leaf).
    NodeId expr(int depth) {
        if (depth == 0)
            return add(ParameterNode{static_cast<std::size_t>(rng_() % 2)});
        auto sub = [&] { return depth > 1 && rng_() % 2 ? expr(depth - 1) : leaf(); };
        switch (rng_() % 5) {
        case 0:
            return add(AddNode{sub(), sub()});
        case 1:
            return add(MulNode{sub(), sub()});
        case 2:
            return add(NegateNode{sub()});
        case 3:
            return add(IntegerLessThanNode{sub(), sub()});
        default:
            return add(ConditionalNode{sub(), sub(), sub()});
        }
    }

    NodeId add(NodeKind n) {
        NodeId id = next_++;
        nodes_[id] = std::move(n);
        return id;
    }

    std::mt19937_64& rng() { return rng_; }
    Graph graph() const { return Graph(nodes_); }

private:
    std::mt19937_64 rng_;
    Graph::NodeMap nodes_;
    NodeId next_ = 1;
};

// Distinct parameter indices and state leaves reachable from root.
inline std::size_t leaf_count(const Graph& g, NodeId root) {
    std::set<std::size_t> params;
    std::set<NodeId> state, seen;
    std::vector<NodeId> work{root};
    while (!work.empty()) {
        NodeId nid = work.back();
        work.pop_back();
        if (!seen.insert(nid).second)
            continue;
        const NodeKind& n = g.kind(nid);
        if (const auto* p = std::get_if<ParameterNode>(&n))
            params.insert(p->index);
        else if (is_state_leaf(n) || holds<ValuePhiNode>(n))
            state.insert(nid);
        else
            for (NodeId in : inputs_of(n))
                work.push_back(in);
    }
    return params.size() + state.size();
}

struct RuleCase {
    const char* rule;
    std::function<NodeId(ExprGen&)> build;
};

// One generator per shipped data rule; each builds an instance of the
// rule's pattern at the returned root.
inline std::vector<RuleCase> rule_cases() {
    return {
        {"constant_fold",
         [](ExprGen& gen) {
             NodeId a = gen.random_constant();
             NodeId b = gen.random_constant();
             switch (gen.rng()() % 4) {
             case 0:
                 return gen.add(AddNode{a, b});
             case 1:
                 return gen.add(MulNode{a, b});
             case 2:
                 return gen.add(NegateNode{a});
             default:
                 return gen.add(IntegerLessThanNode{a, b});
             }
         }},
        {"add_zero",
         [](ExprGen& gen) {
             NodeId x = gen.expr(2);
             NodeId z = gen.constant(0);
             return gen.rng()() % 2 ? gen.add(AddNode{x, z}) : gen.add(AddNode{z, x});
         }},
        {"mul_one",
         [](ExprGen& gen) {
             NodeId x = gen.expr(2);
             NodeId one = gen.constant(1);
             return gen.rng()() % 2 ? gen.add(MulNode{x, one}) : gen.add(MulNode{one, x});
         }},
        {"mul_zero",
         [](ExprGen& gen) {
             NodeId x = gen.expr(2);
             NodeId z = gen.constant(0);
             return gen.rng()() % 2 ? gen.add(MulNode{x, z}) : gen.add(MulNode{z, x});
         }},
        {"negate_negate",
         [](ExprGen& gen) {
             NodeId x = gen.expr(2);
             return gen.add(NegateNode{gen.add(NegateNode{x})});
         }},
        {"conditional_constant",
         [](ExprGen& gen) {
             NodeId c = gen.random_constant();
             return gen.add(ConditionalNode{c, gen.expr(2), gen.expr(2)});
         }},
        {"conditional_same_values",
         [](ExprGen& gen) {
             NodeId c = gen.expr(1);
             NodeId v = gen.expr(2);
             return gen.add(ConditionalNode{c, v, v});
         }},
    };
}

} // namespace fixtures
