#include "seanode/optimizer.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "seanode/eval.hpp"
#include "seanode/step.hpp"

namespace seanode {

namespace {

std::optional<std::int32_t> const_int(const Graph& g, NodeId nid) {
    if (const auto* c = std::get_if<ConstantNode>(&g.kind(nid))) {
        if (const auto* i = std::get_if<IntVal>(&c->value))
            return i->bits;
    }
    return std::nullopt;
}

bool is_const(const Graph& g, NodeId nid, std::int32_t v) {
    auto c = const_int(g, nid);
    return c && *c == v;
}

Rewrite make(const Graph& g, NodeId nid, NodeKind after, std::string rule) {
    return Rewrite{nid, g.kind(nid), std::move(after), {}, std::move(rule)};
}

// Pure data nodes whose meaning does not depend on the id they are stored under.
bool relocatable(const NodeKind& n) {
    return is_data(n) && !holds<ValuePhiNode>(n) && !holds<MethodCallTargetNode>(n);
}

std::optional<Rewrite> forward(const Graph& g, NodeId nid, NodeId to, std::string rule) {
    const NodeKind& target = g.kind(to);
    if (!relocatable(target))
        return std::nullopt;
    return make(g, nid, target, std::move(rule));
}

std::optional<Rewrite> fold_constants(const Graph& g, NodeId nid) {
    const NodeKind& n = g.kind(nid);
    auto folded = [&](IntVal v) { return make(g, nid, ConstantNode{v}, "constant_fold"); };
    if (const auto* neg = std::get_if<NegateNode>(&n)) {
        if (auto a = const_int(g, neg->value))
            return folded(arith::negate({*a}));
        return std::nullopt;
    }
    auto binary = [&](NodeId x, NodeId y, IntVal (*op)(IntVal, IntVal)) -> std::optional<Rewrite> {
        auto a = const_int(g, x);
        auto b = const_int(g, y);
        if (a && b)
            return folded(op({*a}, {*b}));
        return std::nullopt;
    };
    if (const auto* add = std::get_if<AddNode>(&n))
        return binary(add->x, add->y, arith::add);
    if (const auto* mul = std::get_if<MulNode>(&n))
        return binary(mul->x, mul->y, arith::mul);
    if (const auto* lt = std::get_if<IntegerLessThanNode>(&n))
        return binary(lt->x, lt->y, arith::less_than);
    return std::nullopt;
}

std::optional<Rewrite> simplify_identity(const Graph& g, NodeId nid) {
    const NodeKind& n = g.kind(nid);
    if (const auto* add = std::get_if<AddNode>(&n)) {
        if (is_const(g, add->y, 0))
            return forward(g, nid, add->x, "add_zero");
        if (is_const(g, add->x, 0))
            return forward(g, nid, add->y, "add_zero");
    }
    if (const auto* mul = std::get_if<MulNode>(&n)) {
        if (is_const(g, mul->y, 1))
            return forward(g, nid, mul->x, "mul_one");
        if (is_const(g, mul->x, 1))
            return forward(g, nid, mul->y, "mul_one");
        if (is_const(g, mul->y, 0) || is_const(g, mul->x, 0))
            return make(g, nid, ConstantNode{IntVal{0}}, "mul_zero");
    }
    if (const auto* neg = std::get_if<NegateNode>(&n)) {
        if (const auto* inner = std::get_if<NegateNode>(&g.kind(neg->value)))
            return forward(g, nid, inner->value, "negate_negate");
    }
    return std::nullopt;
}

std::optional<Rewrite> simplify_conditional(const Graph& g, NodeId nid) {
    const auto* cond = std::get_if<ConditionalNode>(&g.kind(nid));
    if (!cond)
        return std::nullopt;
    if (auto c = const_int(g, cond->condition))
        return forward(g, nid, *c != 0 ? cond->true_value : cond->false_value, "conditional_constant");
    if (cond->true_value == cond->false_value)
        return forward(g, nid, cond->true_value, "conditional_same_values");
    return std::nullopt;
}

// Control-flow successors, including the pseudo-edge from an end node to its merge.
std::vector<NodeId> flow_successors(const Graph& g, NodeId nid) {
    const NodeKind& n = g.kind(nid);
    if (is_end(n)) {
        try {
            return {merge_of_end(g, nid)};
        } catch (const StepStuck&) {
            return {};
        }
    }
    return successors_of(n);
}

struct DominatorTree {
    std::vector<NodeId> order; // reverse postorder from node 0
    std::map<NodeId, NodeId> idom;
    std::map<NodeId, std::vector<NodeId>> children;
    std::map<NodeId, std::set<NodeId>> preds;
    std::map<NodeId, std::pair<std::size_t, std::size_t>> interval; // preorder [enter, exit)

    bool dominates(NodeId a, NodeId b) const {
        auto ia = interval.find(a);
        auto ib = interval.find(b);
        if (ia == interval.end() || ib == interval.end())
            return false;
        return ia->second.first <= ib->second.first && ib->second.first < ia->second.second;
    }
};

DominatorTree dominators(const Graph& g) {
    DominatorTree dt;
    if (!g.contains(0))
        return dt;

    // Iterative DFS postorder.
    std::vector<NodeId> post;
    std::set<NodeId> seen{0};
    std::vector<std::pair<NodeId, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto& [nid, next_child] = stack.back();
        auto succs = flow_successors(g, nid);
        if (next_child < succs.size()) {
            NodeId s = succs[next_child++];
            if (g.contains(s) && seen.insert(s).second)
                stack.push_back({s, 0});
        } else {
            post.push_back(nid);
            stack.pop_back();
        }
    }
    dt.order.assign(post.rbegin(), post.rend());
    std::map<NodeId, std::size_t> rpo;
    for (std::size_t i = 0; i < dt.order.size(); ++i)
        rpo[dt.order[i]] = i;
    for (NodeId nid : dt.order) {
        for (NodeId s : flow_successors(g, nid)) {
            if (rpo.count(s))
                dt.preds[s].insert(nid);
        }
    }

    // Cooper, Harvey and Kennedy's iterative algorithm.
    dt.idom[0] = 0;
    auto intersect = [&](NodeId a, NodeId b) {
        while (a != b) {
            while (rpo[a] > rpo[b])
                a = dt.idom[a];
            while (rpo[b] > rpo[a])
                b = dt.idom[b];
        }
        return a;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 1; i < dt.order.size(); ++i) {
            NodeId b = dt.order[i];
            std::optional<NodeId> new_idom;
            for (NodeId p : dt.preds[b]) {
                if (!dt.idom.count(p))
                    continue;
                new_idom = new_idom ? intersect(p, *new_idom) : p;
            }
            if (new_idom && (!dt.idom.count(b) || dt.idom[b] != *new_idom)) {
                dt.idom[b] = *new_idom;
                changed = true;
            }
        }
    }
    for (NodeId nid : dt.order) {
        if (nid != 0)
            dt.children[dt.idom[nid]].push_back(nid);
    }
    for (auto& entry : dt.children)
        std::sort(entry.second.begin(), entry.second.end());

    std::size_t counter = 0;
    std::function<void(NodeId)> number = [&](NodeId nid) {
        std::size_t enter = counter++;
        for (NodeId c : dt.children[nid])
            number(c);
        dt.interval[nid] = {enter, counter};
    };
    number(0);
    return dt;
}

// Identity of a condition: by node id always, and by shape for pure nodes
// whose value is determined by kind, attributes and inputs.
std::vector<std::string> condition_keys(const Graph& g, NodeId nid) {
    std::vector<std::string> keys{"#" + std::to_string(nid)};
    const NodeKind& n = g.kind(nid);
    if (!relocatable(n))
        return keys;
    std::ostringstream os;
    os << kind_name(n);
    if (const auto* c = std::get_if<ConstantNode>(&n))
        os << "{" << to_string(c->value) << "}";
    if (const auto* p = std::get_if<ParameterNode>(&n))
        os << "{" << p->index << "}";
    for (NodeId in : inputs_of(n))
        os << " " << in;
    keys.push_back(os.str());
    return keys;
}

// Nodes whose execution can change the value of the expression rooted at nid.
std::set<NodeId> writers_of(const Graph& g, NodeId root) {
    std::set<NodeId> writers;
    std::set<NodeId> seen;
    std::vector<NodeId> work{root};
    while (!work.empty()) {
        NodeId nid = work.back();
        work.pop_back();
        if (!seen.insert(nid).second)
            continue;
        const NodeKind& n = g.kind(nid);
        if (const auto* phi = std::get_if<ValuePhiNode>(&n)) {
            if (const auto* ends = merge_ends(g.kind(phi->merge)))
                writers.insert(ends->begin(), ends->end());
        } else if (is_state_leaf(n)) {
            writers.insert(nid);
        } else if (is_data(n)) {
            for (NodeId in : inputs_of(n))
                work.push_back(in);
        }
    }
    return writers;
}

std::vector<Rewrite> eliminate_once(const Graph& g) {
    DominatorTree dt = dominators(g);
    std::vector<Rewrite> rewrites;
    std::map<std::string, bool> facts;

    std::function<void(NodeId)> walk = [&](NodeId nid) {
        const NodeKind& n = g.kind(nid);
        const auto* branch = std::get_if<IfNode>(&n);
        bool decided = false;
        if (branch) {
            for (const auto& key : condition_keys(g, branch->condition)) {
                auto fact = facts.find(key);
                if (fact == facts.end())
                    continue;
                NodeId taken = fact->second ? branch->true_successor : branch->false_successor;
                rewrites.push_back(make(g, nid, RefNode{taken}, "condelim"));
                decided = true;
                break;
            }
        }
        for (NodeId child : dt.children[nid]) {
            std::vector<std::pair<std::string, std::optional<bool>>> saved;
            if (branch && !decided && branch->true_successor != branch->false_successor &&
                (child == branch->true_successor || child == branch->false_successor) &&
                dt.preds[child] == std::set<NodeId>{nid}) {
                bool value = child == branch->true_successor;
                auto writers = writers_of(g, branch->condition);
                bool stable = std::none_of(writers.begin(), writers.end(),
                                           [&](NodeId w) { return dt.dominates(child, w); });
                if (stable) {
                    for (const auto& key : condition_keys(g, branch->condition)) {
                        auto it = facts.find(key);
                        saved.emplace_back(key, it == facts.end() ? std::nullopt : std::optional<bool>(it->second));
                        facts[key] = value;
                    }
                }
            }
            walk(child);
            for (const auto& [key, old] : saved) {
                if (old)
                    facts[key] = *old;
                else
                    facts.erase(key);
            }
        }
    };
    if (g.contains(0))
        walk(0);
    return rewrites;
}

std::size_t canonicalize_sweep(Graph& g, PassReport& report) {
    std::size_t count = 0;
    for (NodeId nid : g.ids()) {
        const NodeKind& n = g.kind(nid);
        std::optional<Rewrite> rw;
        if (holds<IfNode>(n))
            rw = canonicalize_if(g, nid);
        else if (is_data(n))
            rw = canonicalize_data(g, nid);
        if (!rw)
            continue;
        g = apply_rewrite(g, *rw);
        report.rewrites.push_back(std::move(*rw));
        ++count;
    }
    return count;
}

std::size_t condelim_sweep(Graph& g, PassReport& report) {
    auto rewrites = eliminate_once(g);
    for (auto& rw : rewrites) {
        g = apply_rewrite(g, rw);
        report.rewrites.push_back(std::move(rw));
    }
    return rewrites.size();
}

} // namespace

std::string to_log(const PassReport& report) {
    std::ostringstream os;
    for (const auto& rw : report.rewrites)
        os << rw.rule << " @" << rw.target << ": " << kind_name(rw.before) << " -> " << kind_name(rw.after) << "\n";
    return os.str();
}

std::optional<Rewrite> canonicalize_data(const Graph& g, NodeId nid) {
    if (!is_data(g.kind(nid)))
        return std::nullopt;
    if (auto rw = fold_constants(g, nid))
        return rw;
    if (auto rw = simplify_identity(g, nid))
        return rw;
    return simplify_conditional(g, nid);
}

std::optional<Rewrite> canonicalize_if(const Graph& g, NodeId nid) {
    const auto* branch = std::get_if<IfNode>(&g.kind(nid));
    if (!branch)
        return std::nullopt;
    if (auto c = const_int(g, branch->condition)) {
        if (*c != 0)
            return make(g, nid, RefNode{branch->true_successor}, "if_constant_true");
        return make(g, nid, RefNode{branch->false_successor}, "if_constant_false");
    }
    if (branch->true_successor == branch->false_successor)
        return make(g, nid, RefNode{branch->true_successor}, "if_equal_branches");
    return std::nullopt;
}

Graph apply_rewrite(const Graph& g, const Rewrite& rw) {
    Graph out = g;
    for (const auto& [nid, n] : rw.new_nodes)
        out = out.insert_node(nid, n);
    return out.replace_node(rw.target, rw.after);
}

PassResult conditional_elimination(const Graph& g) {
    return apply_pass(g, Pass::CondElim);
}

std::optional<Pass> parse_pass(std::string_view name) {
    if (name == "canonicalize")
        return Pass::Canonicalize;
    if (name == "condelim")
        return Pass::CondElim;
    if (name == "all")
        return Pass::All;
    return std::nullopt;
}

PassResult apply_pass(const Graph& g, Pass pass, std::size_t max_sweeps) {
    PassResult result{g, {}};
    while (result.report.iterations < max_sweeps) {
        ++result.report.iterations;
        std::size_t changed = 0;
        if (pass != Pass::CondElim)
            changed += canonicalize_sweep(result.graph, result.report);
        if (pass != Pass::Canonicalize)
            changed += condelim_sweep(result.graph, result.report);
        if (changed == 0) {
            result.report.fixpoint = true;
            return result;
        }
    }
    throw IterationCapExceeded(std::move(result));
}

ProgramPassResult apply_pass(const Program& program, Pass pass, std::size_t max_sweeps) {
    ProgramPassResult out;
    for (const auto& [sig, g] : program) {
        auto r = apply_pass(g, pass, max_sweeps);
        out.program.emplace(sig, std::move(r.graph));
        out.reports.emplace(sig, std::move(r.report));
    }
    return out;
}

} // namespace seanode
