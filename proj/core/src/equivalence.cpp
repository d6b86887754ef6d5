#include "seanode/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "seanode/eval.hpp"

namespace seanode {

namespace {

struct Leaves {
    std::set<std::size_t> params;
    std::set<NodeId> state;
};

// Collects the free leaves of the expression at root; throws on a cycle.
void collect_leaves(const Graph& g, NodeId root, Leaves& out) {
    enum class Mark { Active, Done };
    std::map<NodeId, Mark> marks;
    std::function<void(NodeId)> visit = [&](NodeId nid) {
        auto it = marks.find(nid);
        if (it != marks.end()) {
            if (it->second == Mark::Active)
                throw CyclicExpression(nid);
            return;
        }
        marks[nid] = Mark::Active;
        const NodeKind& n = g.kind(nid);
        if (const auto* p = std::get_if<ParameterNode>(&n)) {
            out.params.insert(p->index);
        } else if (holds<ValuePhiNode>(n) || is_state_leaf(n)) {
            out.state.insert(nid);
        } else if (is_data(n)) {
            for (NodeId in : inputs_of(n))
                visit(in);
        }
        marks[nid] = Mark::Done;
    };
    visit(root);
}

// Product size, saturating at limit + 1.
std::size_t product_size(std::size_t base, std::size_t k, std::size_t limit) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (base != 0 && total > (limit + 1) / base)
            return limit + 1;
        total *= base;
    }
    return total;
}

/// Drives the assignment sequence: exhaustive over `values` when small enough,
/// otherwise exhaustive over a prefix of `values` followed by seeded random
/// samples. Calls visit(assignment) until it returns false.
template <class Visit>
std::size_t for_each_assignment(std::size_t k, const std::vector<std::int32_t>& values, const Domain& dom,
                                Visit&& visit) {
    std::size_t tried = 0;
    std::vector<std::int32_t> assignment(k);
    std::size_t base = values.size();
    bool exhaustive = product_size(base, k, kExhaustiveLimit) <= kExhaustiveLimit;
    if (!exhaustive) {
        base = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(std::pow(double(kExhaustiveLimit), 1.0 / double(k)))));
        while (base > 1 && product_size(base, k, kExhaustiveLimit) > kExhaustiveLimit)
            --base;
    }

    std::vector<std::size_t> digits(k, 0);
    for (;;) {
        for (std::size_t i = 0; i < k; ++i)
            assignment[i] = values[digits[i]];
        ++tried;
        if (!visit(assignment))
            return tried;
        std::size_t i = 0;
        while (i < k && ++digits[i] == base)
            digits[i++] = 0;
        if (i == k)
            break;
    }
    if (exhaustive)
        return tried;

    std::mt19937_64 rng(dom.seed);
    for (std::size_t s = 0; s < dom.random_samples; ++s) {
        for (auto& a : assignment) {
            std::uint64_t r = rng();
            a = (r & 1) ? values[(r >> 1) % values.size()] : static_cast<std::int32_t>(r >> 32);
        }
        ++tried;
        if (!visit(assignment))
            return tried;
    }
    return tried;
}

struct Observation {
    std::optional<Value> value;
    std::string stuck;

    bool operator==(const Observation& o) const {
        // Two stuck evaluations agree regardless of where they got stuck.
        if (!value || !o.value)
            return !value && !o.value;
        return *value == *o.value;
    }
    std::string describe() const { return value ? to_string(*value) : "stuck (" + stuck + ")"; }
};

Observation observe(const Graph& g, const MethodState& m, const Params& p, NodeId nid) {
    try {
        return {eval({g, m, p}, nid), {}};
    } catch (const EvalStuck& e) {
        return {std::nullopt, e.what()};
    } catch (const ParamOutOfRange& e) {
        return {std::nullopt, e.what()};
    }
}

std::string summarize(const ExecResult& r) {
    std::ostringstream os;
    os << to_string(r.outcome) << "; heap {";
    bool first = true;
    for (const auto& [cell, v] : canonical_cells(r.final_heap)) {
        os << (first ? "" : ", ") << "(" << (cell.first == kStaticRef ? std::string("static") : std::to_string(cell.first))
           << "," << cell.second << ")=" << to_string(v);
        first = false;
    }
    os << "} free=" << r.final_heap.free() << "; stores=" << r.stores.size();
    return os.str();
}

bool same_behavior(const ExecResult& a, const ExecResult& b) {
    if (a.outcome.index() != b.outcome.index())
        return false;
    // Stuck reasons may legitimately name different nodes.
    if (!std::holds_alternative<Stuck>(a.outcome) && a.outcome != b.outcome)
        return false;
    return canonical_cells(a.final_heap) == canonical_cells(b.final_heap) &&
           a.final_heap.free() == b.final_heap.free() && a.stores == b.stores;
}

} // namespace

std::string_view to_string(EquivStatus status) {
    switch (status) {
    case EquivStatus::Equivalent:
        return "Equivalent";
    case EquivStatus::NotEquivalent:
        return "NotEquivalent";
    case EquivStatus::Inconclusive:
        return "Inconclusive";
    }
    return "?";
}

std::vector<std::int32_t> leaf_values(const Domain& dom) {
    std::vector<std::int32_t> values = dom.int_values;
    for (std::int32_t b : {std::numeric_limits<std::int32_t>::min(), std::numeric_limits<std::int32_t>::max(), -1}) {
        if (std::find(values.begin(), values.end(), b) == values.end())
            values.push_back(b);
    }
    return values;
}

std::map<DynamicHeap::Cell, Value> canonical_cells(const DynamicHeap& h) {
    std::map<DynamicHeap::Cell, Value> out;
    for (const auto& [cell, v] : h.cells()) {
        if (v != Value{IntVal{0}})
            out.emplace(cell, v);
    }
    return out;
}

EquivVerdict data_equiv(const Graph& g1, const Graph& g2, NodeId nid, const Domain& dom) {
    Leaves leaves;
    collect_leaves(g1, nid, leaves);
    collect_leaves(g2, nid, leaves);

    std::vector<std::size_t> params(leaves.params.begin(), leaves.params.end());
    std::vector<NodeId> state(leaves.state.begin(), leaves.state.end());
    std::size_t arity = params.empty() ? 0 : params.back() + 1;
    auto values = leaf_values(dom);

    EquivVerdict verdict;
    verdict.status = EquivStatus::Equivalent;
    verdict.samples_tried =
        for_each_assignment(params.size() + state.size(), values, dom, [&](const std::vector<std::int32_t>& a) {
            Params p(arity, IntVal{0});
            MethodState m;
            std::size_t i = 0;
            for (std::size_t index : params)
                p[index] = IntVal{a[i++]};
            for (NodeId leaf : state)
                m.set(leaf, IntVal{a[i++]});
            Observation lhs = observe(g1, m, p, nid);
            Observation rhs = observe(g2, m, p, nid);
            if (lhs == rhs)
                return true;
            verdict.status = EquivStatus::NotEquivalent;
            verdict.witness = Witness{m, p, lhs.describe(), rhs.describe()};
            return false;
        });
    return verdict;
}

EquivVerdict behavior_diff(const Program& p1, const Program& p2, const Signature& main, const Domain& dom,
                           std::size_t fuel) {
    EquivVerdict verdict;
    verdict.status = EquivStatus::Equivalent;
    std::size_t conclusive = 0;
    verdict.samples_tried =
        for_each_assignment(main.param_types.size(), dom.int_values, dom, [&](const std::vector<std::int32_t>& a) {
            Params args;
            for (auto v : a)
                args.push_back(IntVal{v});
            ExecResult lhs = run(p1, main, args, fuel);
            ExecResult rhs = run(p2, main, args, fuel);
            if (std::holds_alternative<OutOfFuel>(lhs.outcome) || std::holds_alternative<OutOfFuel>(rhs.outcome)) {
                ++verdict.inconclusive;
                return true;
            }
            ++conclusive;
            if (same_behavior(lhs, rhs))
                return true;
            verdict.status = EquivStatus::NotEquivalent;
            verdict.witness = Witness{{}, args, summarize(lhs), summarize(rhs)};
            return false;
        });
    if (verdict.status == EquivStatus::Equivalent && conclusive == 0)
        verdict.status = EquivStatus::Inconclusive;
    return verdict;
}

std::string to_string(const EquivVerdict& verdict) {
    std::ostringstream os;
    os << to_string(verdict.status) << " (" << verdict.samples_tried << " inputs tried";
    if (verdict.inconclusive)
        os << ", " << verdict.inconclusive << " out of fuel";
    os << ")\n";
    if (const auto& w = verdict.witness) {
        os << "witness:";
        if (!w->p.empty()) {
            os << " p=[";
            for (std::size_t i = 0; i < w->p.size(); ++i)
                os << (i ? ", " : "") << to_string(w->p[i]);
            os << "]";
        }
        for (const auto& [nid, v] : w->m.slots())
            os << " m[" << nid << "]=" << to_string(v);
        os << "\n  lhs: " << w->lhs << "\n  rhs: " << w->rhs << "\n";
    }
    return os.str();
}

} // namespace seanode
