// seanode: load, validate, execute, optimize and compare sea-of-nodes programs.

#include <charconv>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seanode/equivalence.hpp"
#include "seanode/exec.hpp"
#include "seanode/format.hpp"
#include "seanode/optimizer.hpp"
#include "seanode/wellformed.hpp"

namespace {

using namespace seanode;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::int32_t parse_int(std::string_view s) {
    std::int32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw UsageError("not a 32-bit integer: \"" + std::string(s) + "\"");
    return v;
}

Params parse_args(const std::string& text) {
    Params args;
    std::string_view rest = text;
    while (!rest.empty()) {
        auto comma = rest.find(',');
        args.push_back(IntVal{parse_int(rest.substr(0, comma))});
        if (comma == std::string_view::npos)
            break;
        rest.remove_prefix(comma + 1);
    }
    return args;
}

Domain parse_domain(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos)
        throw UsageError("domain must look like lo..hi");
    std::int32_t lo = parse_int(std::string_view(text).substr(0, dots));
    std::int32_t hi = parse_int(std::string_view(text).substr(dots + 2));
    if (lo > hi)
        throw UsageError("empty domain " + text);
    Domain dom;
    dom.int_values.clear();
    for (std::int64_t v = lo; v <= hi; ++v)
        dom.int_values.push_back(static_cast<std::int32_t>(v));
    return dom;
}

// Prints the report for every method; true iff all are well-formed.
bool validate_all(const Program& program, std::ostream& out) {
    bool ok = true;
    for (const auto& [sig, g] : program) {
        WfReport report = check(g);
        out << to_string(sig) << ": " << to_string(report);
        ok = ok && report.ok();
    }
    return ok;
}

// Execution requires well-formed graphs; reports go to stderr on failure.
bool require_valid(const Program& program) {
    std::ostringstream report;
    if (validate_all(program, report))
        return true;
    std::cerr << "program is not well-formed:\n" << report.str();
    return false;
}

int cmd_validate(const std::string& file) {
    Program program = load_program(file);
    return validate_all(program, std::cout) ? kExitOk : kExitInvalid;
}

int cmd_run(const std::string& file, const std::string& method, const std::string& args, std::size_t fuel,
            bool trace) {
    Program program = load_program(file);
    Signature sig = find_method(program, method);
    Params params = parse_args(args);
    if (!require_valid(program))
        return kExitInvalid;
    StepObserver observer;
    if (trace)
        observer = [](const StepRecord& r) { std::cout << format_step(r) << "\n"; };
    ExecResult result = run(program, sig, params, fuel, observer);
    std::cout << to_string(result.outcome) << "\n";
    return exit_code(result.outcome);
}

int cmd_opt(const std::string& file, const std::string& pass_name, const std::string& out) {
    auto pass = parse_pass(pass_name);
    if (!pass)
        throw UsageError("unknown pass \"" + pass_name + "\"");
    Program program = load_program(file);
    if (!require_valid(program))
        return kExitInvalid;
    ProgramPassResult result = apply_pass(program, *pass);
    for (const auto& [sig, report] : result.reports) {
        std::cout << "# " << to_string(sig) << ": " << report.rewrites.size() << " rewrites, " << report.iterations
                  << " sweeps\n"
                  << to_log(report);
    }
    save_program(result.program, out);
    return kExitOk;
}

int cmd_diff(const std::string& lhs, const std::string& rhs, const std::string& method, const std::string& domain,
             std::uint64_t seed, std::size_t fuel) {
    Program p1 = load_program(lhs);
    Program p2 = load_program(rhs);
    Signature sig = find_method(p1, method);
    if (!p2.count(sig))
        throw UsageError(rhs + " has no method " + to_string(sig));
    Domain dom = parse_domain(domain);
    dom.seed = seed;
    if (!require_valid(p1) || !require_valid(p2))
        return kExitInvalid;
    EquivVerdict verdict = behavior_diff(p1, p2, sig, dom, fuel);
    std::cout << to_string(verdict);
    return verdict.status == EquivStatus::Equivalent ? kExitOk : kExitInvalid;
}

int cmd_export_dot(const std::string& file, const std::string& method) {
    Program program = load_program(file);
    Signature sig = find_method(program, method);
    std::cout << to_dot(program.at(sig), to_string(sig));
    return kExitOk;
}

int cmd_format(const std::string& file, const std::string& out) {
    Program program = load_program(file);
    if (out.empty())
        std::cout << to_text(program);
    else
        save_program(program, out);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"seanode: sea-of-nodes IR interpreter, optimizer and equivalence checker"};
    app.require_subcommand(1);

    std::string file, file2, method, args, pass, out, domain;
    std::size_t fuel = 1'000'000;
    std::uint64_t seed = 0;

    auto* validate = app.add_subcommand("validate", "Check well-formedness of every method");
    validate->add_option("file", file, "Program file")->required();

    auto add_exec_options = [&](CLI::App* sub) {
        sub->add_option("file", file, "Program file")->required();
        sub->add_option("--method", method, "Method signature or unique name")->required();
        sub->add_option("--args", args, "Comma-separated integer arguments");
        sub->add_option("--fuel", fuel, "Step budget")->capture_default_str();
    };
    auto* run_cmd = app.add_subcommand("run", "Execute a method");
    add_exec_options(run_cmd);
    auto* trace_cmd = app.add_subcommand("trace", "Execute a method and print every transition");
    add_exec_options(trace_cmd);

    auto* opt = app.add_subcommand("opt", "Apply an optimization pass");
    opt->add_option("file", file, "Program file")->required();
    opt->add_option("--pass", pass, "canonicalize, condelim or all")->required();
    opt->add_option("-o,--output", out, "Output file")->required();

    auto* diff = app.add_subcommand("diff", "Compare the behaviour of two programs");
    diff->add_option("file1", file, "First program")->required();
    diff->add_option("file2", file2, "Second program")->required();
    diff->add_option("--method", method, "Method signature or unique name")->required();
    diff->add_option("--domain", domain, "Parameter range lo..hi")->required();
    diff->add_option("--seed", seed, "Sampling seed")->capture_default_str();
    diff->add_option("--fuel", fuel, "Step budget per run")->capture_default_str();

    auto* dot = app.add_subcommand("export-dot", "Print a method graph in DOT");
    dot->add_option("file", file, "Program file")->required();
    dot->add_option("--method", method, "Method signature or unique name")->required();

    auto* format = app.add_subcommand("format", "Rewrite a program file in canonical form");
    format->add_option("file", file, "Program file")->required();
    format->add_option("-o,--output", out, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*validate)
            return cmd_validate(file);
        if (*run_cmd)
            return cmd_run(file, method, args, fuel, false);
        if (*trace_cmd)
            return cmd_run(file, method, args, fuel, true);
        if (*opt)
            return cmd_opt(file, pass, out);
        if (*diff)
            return cmd_diff(file, file2, method, domain, seed, fuel);
        if (*dot)
            return cmd_export_dot(file, method);
        if (*format)
            return cmd_format(file, out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const seanode::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
