#include "seanode/step.hpp"

#include <algorithm>

namespace seanode {

namespace {

NodeId only_successor(const NodeKind& n) { return successors_of(n).front(); }

// Resolves an optional object edge. Absent edges address the static region.
std::optional<ObjRef> resolve_object(const Graph& g, const Params& p, const MethodState& m, NodeId nid,
                                     const std::optional<NodeId>& object) {
    if (!object)
        return std::nullopt;
    Value v = eval({g, m, p}, *object);
    if (const auto* r = std::get_if<ObjRef>(&v))
        return *r;
    throw StepStuck(nid, "object input evaluates to " + to_string(v));
}

} // namespace

std::vector<NodeId> phis_of(const Graph& g, NodeId merge) {
    std::vector<NodeId> out;
    for (NodeId u : g.usages(merge)) {
        const auto* phi = std::get_if<ValuePhiNode>(&g.kind(u));
        if (phi && phi->merge == merge)
            out.push_back(u);
    }
    return out;
}

NodeId merge_of_end(const Graph& g, NodeId end) {
    const NodeKind& n = g.kind(end);
    if (const auto* le = std::get_if<LoopEndNode>(&n)) {
        if (!holds<LoopBeginNode>(g.kind(le->loop_begin)))
            throw StepStuck(end, "loopBegin input is not a LoopBeginNode");
        return le->loop_begin;
    }
    if (!holds<EndNode>(n))
        throw StepStuck(end, "not an end node");
    std::vector<NodeId> merges;
    for (NodeId u : g.usages(end)) {
        if (is_merge(g.kind(u)))
            merges.push_back(u);
    }
    if (merges.empty())
        throw StepStuck(end, "end node has no merge usage");
    if (merges.size() > 1)
        throw StepStuck(end, "end node has " + std::to_string(merges.size()) + " merge usages");
    return merges.front();
}

MethodState latch_phis(const Graph& g, const Params& p, const MethodState& m, const std::vector<NodeId>& phis,
                       std::size_t index, StepEffects* effects) {
    std::vector<std::pair<NodeId, Value>> latched;
    latched.reserve(phis.size());
    for (NodeId phi_id : phis) {
        const auto& phi = std::get<ValuePhiNode>(g.kind(phi_id));
        if (index >= phi.values.size())
            throw StepStuck(phi_id, "phi has no value for end " + std::to_string(index));
        latched.emplace_back(phi_id, eval({g, m, p}, phi.values[index]));
    }
    MethodState out = m;
    for (const auto& [phi_id, v] : latched)
        out.set(phi_id, v);
    if (effects)
        effects->m_writes.insert(effects->m_writes.end(), latched.begin(), latched.end());
    return out;
}

LocalConfig step(const Graph& g, const Params& p, LocalConfig c, StepEffects* effects) {
    const NodeId nid = c.nid;
    const NodeKind& n = g.kind(nid);

    auto write_m = [&](NodeId id, const Value& v) {
        c.m.set(id, v);
        if (effects)
            effects->m_writes.emplace_back(id, v);
    };

    try {
        if (is_sequential(n)) {
            c.nid = only_successor(n);
            return c;
        }
        if (const auto* branch = std::get_if<IfNode>(&n)) {
            Value cond = eval({g, c.m, p}, branch->condition);
            if (!is_int(cond))
                throw StepStuck(nid, "condition evaluates to " + to_string(cond));
            c.nid = val_to_bool(cond) ? branch->true_successor : branch->false_successor;
            return c;
        }
        if (is_end(n)) {
            NodeId merge = merge_of_end(g, nid);
            const auto& ends = *merge_ends(g.kind(merge));
            auto pos = std::find(ends.begin(), ends.end(), nid);
            if (pos == ends.end())
                throw StepStuck(nid, "end node is not listed in the ends of merge " + std::to_string(merge));
            auto index = static_cast<std::size_t>(pos - ends.begin());
            c.m = latch_phis(g, p, c.m, phis_of(g, merge), index, effects);
            c.nid = merge;
            return c;
        }
        if (const auto* alloc = std::get_if<NewInstanceNode>(&n)) {
            auto [ref, heap] = new_instance(c.h, alloc->instance_class);
            c.h = std::move(heap);
            write_m(nid, ref);
            c.nid = alloc->next;
            return c;
        }
        if (const auto* load = std::get_if<LoadFieldNode>(&n)) {
            auto object = resolve_object(g, p, c.m, nid, load->object);
            write_m(nid, load_field(load->field, object, c.h));
            c.nid = load->next;
            return c;
        }
        if (const auto* store = std::get_if<StoreFieldNode>(&n)) {
            Value v = eval({g, c.m, p}, store->value);
            auto object = resolve_object(g, p, c.m, nid, store->object);
            c.h = store_field(store->field, object, v, c.h);
            if (effects)
                effects->h_writes.push_back({object ? object->ref : kStaticRef, store->field, v});
            c.nid = store->next;
            return c;
        }
    } catch (const EvalStuck& e) {
        throw StepStuck(nid, e.what());
    } catch (const ParamOutOfRange& e) {
        throw StepStuck(nid, e.what());
    }
    throw StepStuck(nid, "no local rule for " + std::string(kind_name(n)));
}

std::string_view to_string(LocalOutcome outcome) {
    switch (outcome) {
    case LocalOutcome::Running:
        return "Running";
    case LocalOutcome::HitReturn:
        return "HitReturn";
    case LocalOutcome::HitUnwind:
        return "HitUnwind";
    case LocalOutcome::HitInvoke:
        return "HitInvoke";
    case LocalOutcome::Stuck:
        return "Stuck";
    }
    return "?";
}

LocalRun run_local(const Graph& g, const Params& p, LocalConfig c, std::size_t fuel) {
    LocalRun run;
    run.config = std::move(c);
    for (;;) {
        const NodeKind& n = g.kind(run.config.nid);
        if (holds<ReturnNode>(n)) {
            run.outcome = LocalOutcome::HitReturn;
            return run;
        }
        if (holds<UnwindNode>(n)) {
            run.outcome = LocalOutcome::HitUnwind;
            return run;
        }
        if (holds<InvokeNode>(n) || holds<InvokeWithExceptionNode>(n)) {
            run.outcome = LocalOutcome::HitInvoke;
            return run;
        }
        if (run.steps == fuel) {
            run.outcome = LocalOutcome::Running;
            return run;
        }
        try {
            run.config = step(g, p, run.config);
        } catch (const StepStuck& e) {
            run.outcome = LocalOutcome::Stuck;
            run.reason = e.what();
            return run;
        }
        ++run.steps;
    }
}

} // namespace seanode
