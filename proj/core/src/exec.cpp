#include "seanode/exec.hpp"

#include <sstream>

namespace seanode {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

ExecError stuck(const std::string& message) { return ExecError(ExecError::Kind::Stuck, message); }

Value eval_in(const Frame& f, NodeId nid) {
    try {
        return eval({*f.graph, f.m, f.p}, nid);
    } catch (const EvalStuck& e) {
        throw stuck(e.what());
    } catch (const ParamOutOfRange& e) {
        throw stuck(e.what());
    }
}

// Value produced by a ReturnNode in frame f; void returns yield UndefVal.
Value return_value(const Frame& f, const ReturnNode& ret) {
    return ret.result ? eval_in(f, *ret.result) : Value{UndefVal{}};
}

ObjRef exception_value(const Frame& f, const UnwindNode& unwind) {
    Value v = eval_in(f, unwind.exception);
    if (const auto* r = std::get_if<ObjRef>(&v))
        return *r;
    throw stuck("unwind at " + std::to_string(f.nid) + " throws " + to_string(v) + ", not an object");
}

void invoke(const Program& program, GlobalConfig& c, NodeId call_target, StepRecord* record) {
    const Frame& caller = c.stack.back();
    const auto* target = std::get_if<MethodCallTargetNode>(&caller.graph->kind(call_target));
    if (!target)
        throw ExecError(ExecError::Kind::MalformedCall,
                        "call target " + std::to_string(call_target) + " is not a MethodCallTargetNode");
    Params args;
    try {
        args = eval_all({*caller.graph, caller.m, caller.p}, target->arguments);
    } catch (const EvalStuck& e) {
        throw stuck(e.what());
    } catch (const ParamOutOfRange& e) {
        throw stuck(e.what());
    }
    auto it = program.find(target->target_method);
    if (it == program.end())
        throw ExecError(ExecError::Kind::UnknownMethod, "unknown method " + to_string(target->target_method));
    c.stack.push_back(Frame{&it->second, it->first, 0, new_map_state(), std::move(args)});
    if (record)
        record->next = 0;
}

// Pops the callee and resumes the caller at resume_at with v stored under the invoke id.
void resume_caller(GlobalConfig& c, NodeId resume_at, Value v, StepRecord* record) {
    c.stack.pop_back();
    Frame& caller = c.stack.back();
    caller.m.set(caller.nid, v);
    if (record) {
        record->effects.m_writes.emplace_back(caller.nid, v);
        record->next = resume_at;
    }
    caller.nid = resume_at;
}

} // namespace

std::string format_step(const StepRecord& r) {
    std::ostringstream os;
    os << "step " << r.index << ": " << r.nid << " " << r.kind << " -> " << r.next;
    for (const auto& [nid, v] : r.effects.m_writes)
        os << " [m: " << nid << "<-" << to_string(v) << "]";
    for (const auto& w : r.effects.h_writes) {
        os << " [h: (";
        if (w.ref == kStaticRef)
            os << "static";
        else
            os << w.ref;
        os << "," << w.field << ")<-" << to_string(w.value) << "]";
    }
    return os.str();
}

GlobalConfig step_top(const Program& program, GlobalConfig c, StepRecord* record) {
    if (c.stack.empty())
        throw stuck("empty stack");
    const Frame& top = c.stack.back();
    const NodeKind& n = top.graph->kind(top.nid);
    if (record) {
        record->depth_before = c.stack.size();
        record->nid = top.nid;
        record->kind = std::string(kind_name(n));
    }

    if (const auto* inv = std::get_if<InvokeNode>(&n)) {
        invoke(program, c, inv->call_target, record);
    } else if (const auto* inv_ex = std::get_if<InvokeWithExceptionNode>(&n)) {
        invoke(program, c, inv_ex->call_target, record);
    } else if (const auto* ret = std::get_if<ReturnNode>(&n)) {
        if (c.stack.size() < 2)
            throw ExecError(ExecError::Kind::UncaughtTopLevel, "return from the bottom frame");
        Value v = return_value(top, *ret);
        const Frame& caller = c.stack[c.stack.size() - 2];
        const NodeKind& site = caller.graph->kind(caller.nid);
        NodeId next;
        if (const auto* i = std::get_if<InvokeNode>(&site))
            next = i->next;
        else if (const auto* ie = std::get_if<InvokeWithExceptionNode>(&site))
            next = ie->next;
        else
            throw stuck("caller frame is not at an invoke node");
        resume_caller(c, next, std::move(v), record);
    } else if (const auto* unwind = std::get_if<UnwindNode>(&n)) {
        if (c.stack.size() < 2)
            throw ExecError(ExecError::Kind::UncaughtTopLevel, "unwind from the bottom frame");
        ObjRef e = exception_value(top, *unwind);
        const Frame& caller = c.stack[c.stack.size() - 2];
        const auto* site = std::get_if<InvokeWithExceptionNode>(&caller.graph->kind(caller.nid));
        if (!site)
            throw ExecError(ExecError::Kind::UnwindWithoutHandler,
                            "caller node " + std::to_string(caller.nid) + " has no exception edge");
        resume_caller(c, site->exception_edge, e, record);
    } else {
        Frame& frame = c.stack.back();
        LocalConfig local{frame.nid, frame.m, c.h};
        try {
            local = step(*frame.graph, frame.p, std::move(local), record ? &record->effects : nullptr);
        } catch (const StepStuck& e) {
            throw stuck(e.what());
        }
        frame.nid = local.nid;
        frame.m = std::move(local.m);
        c.h = std::move(local.h);
        if (record)
            record->next = frame.nid;
    }

    if (record)
        record->depth_after = c.stack.size();
    return c;
}

std::string to_string(const Outcome& outcome) {
    return std::visit(Overloaded{
                          [](const Returned& r) { return "Returned " + to_string(r.value); },
                          [](const UncaughtException& u) { return "UncaughtException " + to_string(u.exception); },
                          [](const OutOfFuel&) { return std::string("OutOfFuel"); },
                          [](const Stuck& s) { return "Stuck " + s.reason; },
                      },
                      outcome);
}

std::string_view outcome_name(const Outcome& outcome) {
    static constexpr std::string_view names[] = {"Returned", "UncaughtException", "OutOfFuel", "Stuck"};
    return names[outcome.index()];
}

int exit_code(const Outcome& outcome) {
    static constexpr int codes[] = {0, 3, 4, 5};
    return codes[outcome.index()];
}

ExecResult run(const Program& program, const Signature& main, const Params& args, std::size_t fuel,
               const StepObserver& observer) {
    ExecResult result;
    result.outcome = Stuck{"not started"};
    auto it = program.find(main);
    if (it == program.end()) {
        result.outcome = Stuck{"unknown method " + to_string(main)};
        return result;
    }
    GlobalConfig c{{Frame{&it->second, it->first, 0, new_map_state(), args}}, DynamicHeap{}};

    try {
        for (;;) {
            if (c.stack.size() == 1) {
                const Frame& f = c.stack.back();
                const NodeKind& n = f.graph->kind(f.nid);
                if (const auto* ret = std::get_if<ReturnNode>(&n)) {
                    result.outcome = Returned{return_value(f, *ret)};
                    break;
                }
                if (const auto* unwind = std::get_if<UnwindNode>(&n)) {
                    result.outcome = UncaughtException{exception_value(f, *unwind)};
                    break;
                }
            }
            if (result.steps == fuel) {
                result.outcome = OutOfFuel{};
                break;
            }
            StepRecord record;
            c = step_top(program, c, &record);
            record.index = ++result.steps;
            result.stores.insert(result.stores.end(), record.effects.h_writes.begin(),
                                 record.effects.h_writes.end());
            if (observer)
                observer(record);
        }
    } catch (const ExecError& e) {
        result.outcome = Stuck{e.what()};
    }
    result.final_heap = c.h;
    return result;
}

} // namespace seanode
