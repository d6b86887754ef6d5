#include "doctest.h"

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "seanode/errors.hpp"
#include "seanode/format.hpp"

using namespace seanode;

namespace {

std::string wrap(const std::string& nodes) {
    return R"({"version":"seanode/1","methods":[{"signature":{"class":"A","name":"f","params":[]},"nodes":[)" + nodes +
           "]}]}";
}

} // namespace

TEST_CASE("factorial file has one method with 22 nodes") {
    Program p = load_program(fixtures::corpus("factorial.json"));
    REQUIRE(p.size() == 1);
    CHECK(p.begin()->first == fixtures::fact_sig());
    CHECK(p.begin()->second.size() == 22);
    CHECK(p.begin()->second == fixtures::factorial_graph());
}

TEST_CASE("every node kind round-trips") {
    Signature callee{"B", "g", {"int", "Obj"}};
    Graph g = make_graph({{0, StartNode{1}},
                          {1, BeginNode{2}},
                          {2, RefNode{3}},
                          {3, IfNode{4, 5, 6}},
                          {4, ConstantNode{IntVal{-2147483647 - 1}}},
                          {5, EndNode{}},
                          {6, EndNode{}},
                          {7, MergeNode{{5, 6}, 8}},
                          {8, NewInstanceNode{8, "Obj", 9}},
                          {9, StoreFieldNode{9, "f", 4, 8, 10}},
                          {10, StoreFieldNode{10, "s", 4, std::nullopt, 11}},
                          {11, LoadFieldNode{11, "f", 8, 12}},
                          {12, LoadFieldNode{12, "s", std::nullopt, 13}},
                          {13, InvokeNode{13, 14, 15}},
                          {14, MethodCallTargetNode{callee, {4, 8}}},
                          {15, InvokeWithExceptionNode{15, 14, 16, 17}},
                          {16, ReturnNode{}},
                          {17, UnwindNode{8}},
                          {18, ValuePhiNode{18, {4, 4}, 7}},
                          {19, NegateNode{4}},
                          {20, AddNode{4, 19}},
                          {21, MulNode{4, 19}},
                          {22, IntegerLessThanNode{4, 19}},
                          {23, ConditionalNode{22, 4, 19}},
                          {24, ConstantNode{ObjRef{7}}},
                          {25, ConstantNode{UndefVal{}}},
                          {26, ParameterNode{1}},
                          {27, LoopBeginNode{{28}, 29}},
                          {28, LoopEndNode{27}},
                          {29, LoopExitNode{27, 30}},
                          {30, ReturnNode{31}},
                          {31, ValueProxyNode{4, 29}}});
    Program p{{Signature{"A", "f", {}}, g}, {callee, make_graph({{0, StartNode{1}}, {1, ReturnNode{}}})}};
    std::string text = to_text(p);
    Program back = parse_program(text);
    CHECK(back == p);
    CHECK(to_text(back) == text);
}

TEST_CASE("load errors") {
    CHECK_THROWS_AS(parse_program(wrap(R"({"id":0,"kind":"StartNode","fields":{"next":1}},
{"id":0,"kind":"ReturnNode","fields":{}})")),
                    DuplicateId);
    CHECK_THROWS_AS(parse_program(wrap(R"({"id":0,"kind":"FrobNode","fields":{}})")), UnknownKind);
    CHECK_THROWS_AS(parse_program(wrap(R"({"id":0,"kind":"StartNode","fields":{}})")), ParseError);
    CHECK_THROWS_AS(parse_program(wrap(R"({"id":0,"kind":"StartNode","fields":{"next":1,"extra":2}})")),
                    ParseError);
    CHECK_THROWS_AS(parse_program(wrap(R"({"id":0,"kind":"ConstantNode","fields":{"const":5}})")), ParseError);
    CHECK_THROWS_AS(parse_program(wrap(R"({"id":0,"kind":"ConstantNode","fields":{"const":{"int":2147483648}}})")),
                    ParseError);
    CHECK_THROWS_AS(parse_program(wrap(R"({"id":-1,"kind":"EndNode","fields":{}})")), ParseError);
    CHECK_THROWS_AS(parse_program(R"({"version":"seanode/2","methods":[]})"), ParseError);
    CHECK_THROWS_AS(parse_program("{"), ParseError);
    CHECK_THROWS_AS(load_program("/nonexistent/file.json"), LoadError);
}

TEST_CASE("parse errors carry the line of the offending record") {
    std::string text = wrap("\n"
                            R"({"id":0,"kind":"StartNode","fields":{"next":1}},)"
                            "\n"
                            R"({"id":1,"kind":"ReturnNode","fields":{"resultOpt":"x"}})");
    try {
        parse_program(text);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("well-formedness is not checked at load") {
    Program p = load_program(fixtures::corpus("invalid/no-start.json"));
    CHECK(p.size() == 1);
}

TEST_CASE("signatures") {
    CHECK(parse_signature("Factorial.fact(int)") == fixtures::fact_sig());
    CHECK(parse_signature("a.b.C.m()") == Signature{"a.b.C", "m", {}});
    Program p = load_program(fixtures::corpus("call-chain.json"));
    CHECK(find_method(p, "main") == Signature{"Calls", "main", {"int"}});
    CHECK(find_method(p, "Calls.helper") == Signature{"Calls", "helper", {"int"}});
    CHECK(find_method(p, "Calls.add3(int)") == Signature{"Calls", "add3", {"int"}});
    CHECK_THROWS_AS(find_method(p, "missing"), Error);
    CHECK_THROWS_AS(find_method(p, "Calls.main()"), Error);
}

TEST_CASE("dot export") {
    std::string dot = to_dot(fixtures::factorial_graph(), "Factorial.fact(int)");
    CHECK(dot.rfind("digraph \"Factorial.fact(int)\" {", 0) == 0);
    CHECK(dot.find("n11 [label=\"11: IntegerLessThanNode\"") != std::string::npos);
    CHECK(dot.find("n12 -> n13") != std::string::npos);
    CHECK(dot.find("n11 -> n12 [style=dashed]") != std::string::npos);
    CHECK(dot.back() == '\n');
}
