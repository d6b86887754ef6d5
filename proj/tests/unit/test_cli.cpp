#include "doctest.h"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "fixtures.hpp"

namespace {

struct Result {
    int code = -1;
    std::string out;
};

// Runs the CLI with stderr discarded and returns its exit code and stdout.
Result cli(const std::string& args) {
    std::string cmd = std::string("cd '") + SEANODE_CORPUS_DIR + "' && '" + SEANODE_CLI + "' " + args + " 2>/dev/null";
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::size_t count_lines(const std::string& s, const std::string& prefix) {
    std::istringstream in(s);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);)
        n += line.rfind(prefix, 0) == 0;
    return n;
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

} // namespace

TEST_CASE("run") {
    Result r = cli("run factorial.json --method fact --args 5");
    CHECK(r.code == 0);
    CHECK(r.out == "Returned IntVal 120\n");
    CHECK(cli("run factorial.json --method fact --args 13").out == "Returned IntVal 1932053504\n");
    CHECK(cli("run factorial.json --method 'Factorial.fact(int)' --args 0").out == "Returned IntVal 1\n");
    CHECK(cli("run call-chain.json --method main --args 7").out == "Returned IntVal 10\n");
}

TEST_CASE("exit codes follow the outcome") {
    CHECK(cli("run exception-uncaught.json --method main").code == 3);
    CHECK(cli("run infinite-loop.json --method main --fuel 1000").code == 4);
    CHECK(cli("run infinite-loop.json --method main --fuel 1000").out == "OutOfFuel\n");
    CHECK(cli("run exception-caught.json --method main").code == 0);
}

TEST_CASE("usage and load errors exit 2") {
    CHECK(cli("").code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("run factorial.json").code == 2);
    CHECK(cli("run factorial.json --method fact --args five").code == 2);
    CHECK(cli("run missing.json --method fact").code == 2);
    CHECK(cli("run factorial.json --method nope").code == 2);
    CHECK(cli("opt factorial.json --pass gvn -o /dev/null").code == 2);
    CHECK(cli("diff factorial.json factorial-opt.json --method fact --domain 3").code == 2);
    CHECK(cli("--help").code == 0);
}

TEST_CASE("validate") {
    Result ok = cli("validate factorial.json");
    CHECK(ok.code == 0);
    CHECK(ok.out == "Factorial.fact(int): ok\n");
    Result bad = cli("validate invalid/broken-phi.json");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("wf_phis @4") != std::string::npos);
    CHECK(cli("run invalid/broken-phi.json --method main --args 1").code == 1);
}

TEST_CASE("trace prints one line per step") {
    Result r = cli("trace factorial.json --method fact --args 3");
    CHECK(r.code == 0);
    std::size_t steps = count_lines(r.out, "step ");
    CHECK(steps > 0);
    CHECK(r.out.find("step 1: 0 StartNode -> 2\n") == 0);
    CHECK(r.out.find("step 3: 5 EndNode -> 6 [m: 7<-IntVal 3] [m: 8<-IntVal 1]\n") != std::string::npos);
    CHECK(r.out.size() >= 18);
    CHECK(r.out.substr(r.out.size() - 18) == "Returned IntVal 6\n");

    // The last step line is numbered with the total count.
    CHECK(r.out.find("step " + std::to_string(steps) + ":") != std::string::npos);
    CHECK(r.out.find("step " + std::to_string(steps + 1) + ":") == std::string::npos);

    Result fuel = cli("trace infinite-loop.json --method main --fuel 250");
    CHECK(fuel.code == 4);
    CHECK(count_lines(fuel.out, "step ") == 250);
}

TEST_CASE("trace output is reproducible") {
    CHECK(cli("trace call-chain.json --method main --args 4").out ==
          cli("trace call-chain.json --method main --args 4").out);
}

TEST_CASE("opt writes the program and logs rewrites") {
    auto out = temp_file("seanode_cli_opt.json");
    Result r = cli("opt canon-arith.json --pass canonicalize -o '" + out.string() + "'");
    CHECK(r.code == 0);
    CHECK(r.out.find("constant_fold @2: AddNode -> ConstantNode\n") != std::string::npos);
    CHECK(r.out.find("constant_fold @3: MulNode -> ConstantNode\n") != std::string::npos);
    CHECK(cli("run '" + out.string() + "' --method five").out == "Returned IntVal 5\n");
    std::filesystem::remove(out);
}

TEST_CASE("diff") {
    Result eq = cli("diff factorial.json factorial-opt.json --method fact --domain 0..6");
    CHECK(eq.code == 0);
    CHECK(eq.out.rfind("Equivalent", 0) == 0);
    Result ne = cli("diff if-const-true.json fixtures/if-const-true-broken.json --method pick --domain -2..2");
    CHECK(ne.code == 1);
    CHECK(ne.out.rfind("NotEquivalent", 0) == 0);
    CHECK(ne.out.find("witness: p=[IntVal -2]") != std::string::npos);
    CHECK(cli("diff factorial.json factorial-opt.json --method fact --domain 0..6 --seed 9").out == eq.out);
}

TEST_CASE("export-dot") {
    Result r = cli("export-dot factorial.json --method fact");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("digraph", 0) == 0);
    CHECK(r.out.find("[style=dashed]") != std::string::npos);
}

TEST_CASE("format is a fixpoint on the corpus") {
    std::ifstream in(fixtures::corpus("factorial.json"));
    std::stringstream text;
    text << in.rdbuf();
    CHECK(cli("format factorial.json").out == text.str());
}
