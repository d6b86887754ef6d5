#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "seanode/step.hpp"

namespace seanode {

/// Activation record. graph points into the Program being executed, which
/// must outlive the frame.
struct Frame {
    const Graph* graph = nullptr;
    Signature method;
    NodeId nid = 0;
    MethodState m;
    Params p;

    bool operator==(const Frame&) const = default;
};

/// Global machine state. stack.back() is the top frame.
struct GlobalConfig {
    std::vector<Frame> stack;
    DynamicHeap h;

    bool operator==(const GlobalConfig&) const = default;
};

/// Errors of the interprocedural semantics.
class ExecError : public Error {
public:
    enum class Kind { UnknownMethod, UncaughtTopLevel, MalformedCall, UnwindWithoutHandler, Stuck };

    ExecError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// One global transition, as observed by trace consumers.
struct StepRecord {
    std::size_t index = 0; ///< 1-based
    std::size_t depth_before = 0;
    std::size_t depth_after = 0;
    NodeId nid = 0;
    std::string kind;
    NodeId next = 0; ///< top-of-stack nid after the step
    StepEffects effects;
};

/// `step <k>: <nid> <Kind> -> <nid'> [m: nid<-v]* [h: (ref,f)<-v]*`
std::string format_step(const StepRecord& record);

using StepObserver = std::function<void(const StepRecord&)>;

/// One global transition: a lifted local step, or invoke/return/unwind.
/// Throws ExecError when no rule applies.
GlobalConfig step_top(const Program& program, GlobalConfig c, StepRecord* record = nullptr);

struct Returned {
    Value value;
    bool operator==(const Returned&) const = default;
};
struct UncaughtException {
    ObjRef exception;
    bool operator==(const UncaughtException&) const = default;
};
struct OutOfFuel {
    bool operator==(const OutOfFuel&) const = default;
};
struct Stuck {
    std::string reason;
    bool operator==(const Stuck&) const = default;
};

using Outcome = std::variant<Returned, UncaughtException, OutOfFuel, Stuck>;

struct ExecResult {
    Outcome outcome;
    std::size_t steps = 0;
    DynamicHeap final_heap;
    /// Every field store in execution order.
    std::vector<HeapWrite> stores;
};

/// "Returned IntVal 120", "UncaughtException ObjRef 0", "OutOfFuel", "Stuck <reason>".
std::string to_string(const Outcome& outcome);
std::string_view outcome_name(const Outcome& outcome);

/// Process exit status for an outcome: Returned 0, UncaughtException 3,
/// OutOfFuel 4, Stuck 5.
int exit_code(const Outcome& outcome);

/// Runs main with args from an empty heap until it returns, throws past the
/// bottom frame, gets stuck, or has taken fuel steps. Never throws.
ExecResult run(const Program& program, const Signature& main, const Params& args, std::size_t fuel,
               const StepObserver& observer = {});

} // namespace seanode
