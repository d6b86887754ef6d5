#include "doctest.h"

#include <cmath>
#include <functional>

#include "exprgen.hpp"
#include "fixtures.hpp"
#include "seanode/equivalence.hpp"
#include "seanode/optimizer.hpp"
#include "seanode/wellformed.hpp"

using namespace seanode;
using fixtures::ExprGen;
using fixtures::rule_cases;
using fixtures::iv;

namespace {

// Wraps a data graph in a method body returning root, so passes accept it.
Graph with_body(Graph::NodeMap nodes, NodeId root) {
    NodeId ret = nodes.rbegin()->first + 1;
    nodes[0] = StartNode{ret};
    nodes[ret] = ReturnNode{root};
    return Graph(std::move(nodes));
}

} // namespace

TEST_CASE("constant folding") {
    Graph g = make_graph({{1, ConstantNode{IntVal{2}}}, {2, ConstantNode{IntVal{3}}}, {3, AddNode{1, 2}}});
    auto rw = canonicalize_data(g, 3);
    REQUIRE(rw);
    CHECK(rw->rule == "constant_fold");
    CHECK(rw->after == NodeKind{ConstantNode{IntVal{5}}});

    Graph w = make_graph({{1, ConstantNode{IntVal{2147483647}}}, {2, ConstantNode{IntVal{1}}}, {3, AddNode{1, 2}}});
    CHECK(canonicalize_data(w, 3)->after == NodeKind{ConstantNode{IntVal{-2147483647 - 1}}});
}

TEST_CASE("identities forward by duplicating the input node") {
    Graph g = make_graph({{1, ParameterNode{0}}, {2, ConstantNode{IntVal{1}}}, {3, MulNode{1, 2}}});
    auto rw = canonicalize_data(g, 3);
    REQUIRE(rw);
    CHECK(rw->rule == "mul_one");
    CHECK(rw->after == NodeKind{ParameterNode{0}});
    Graph g2 = apply_rewrite(g, *rw);
    CHECK(g2.contains(1));
    CHECK(g2.contains(2));
    CHECK(data_equiv(g, g2, 3).status == EquivStatus::Equivalent);
}

TEST_CASE("forwarding to a state leaf does not fire") {
    Graph g = make_graph({{0, StartNode{1}},
                          {1, LoadFieldNode{1, "f", std::nullopt, 4}},
                          {2, ConstantNode{IntVal{0}}},
                          {3, AddNode{1, 2}},
                          {4, ReturnNode{3}},
                          {5, ValuePhiNode{5, {}, 6}},
                          {6, ConditionalNode{2, 5, 5}}});
    CHECK_FALSE(canonicalize_data(g, 3));
    CHECK_FALSE(canonicalize_data(g, 6));
}

TEST_CASE("no rule for already canonical nodes") {
    Graph g = fixtures::factorial_graph();
    for (NodeId nid : g.ids()) {
        if (is_data(g.kind(nid)))
            CHECK_FALSE(canonicalize_data(g, nid));
    }
}

TEST_CASE("every data rule is sound on generated instances") {
    auto values = leaf_values(Domain{});
    for (std::int32_t b : {-2147483647 - 1, 2147483647, -1})
        CHECK(std::find(values.begin(), values.end(), b) != values.end());

    std::uint64_t seed = 1;
    for (const auto& rc : rule_cases()) {
        int applied = 0;
        for (int attempt = 0; applied < 25 && attempt < 500; ++attempt) {
            ExprGen gen(seed++);
            NodeId root = rc.build(gen);
            Graph g = gen.graph();
            auto rw = canonicalize_data(g, root);
            if (!rw || rw->rule != rc.rule)
                continue;
            ++applied;
            Graph g2 = apply_rewrite(g, *rw);
            EquivVerdict v = data_equiv(g, g2, root);
            CAPTURE(rc.rule);
            CAPTURE(to_string(v));
            REQUIRE(v.status == EquivStatus::Equivalent);
            std::size_t k = fixtures::leaf_count(g, root);
            CHECK(v.samples_tried >= static_cast<std::size_t>(std::pow(5.0, double(std::min<std::size_t>(k, 8)))));
        }
        CAPTURE(rc.rule);
        CHECK(applied >= 20);
    }
}

TEST_CASE("if rules") {
    Graph g = make_graph({{0, StartNode{1}},
                          {1, IfNode{2, 3, 4}},
                          {2, ConstantNode{IntVal{1}}},
                          {3, ReturnNode{}},
                          {4, ReturnNode{}},
                          {5, IfNode{6, 3, 4}},
                          {6, ConstantNode{IntVal{0}}},
                          {7, IfNode{8, 3, 3}},
                          {8, ParameterNode{0}},
                          {9, IfNode{8, 3, 4}}});
    auto t = canonicalize_if(g, 1);
    REQUIRE(t);
    CHECK(t->rule == "if_constant_true");
    CHECK(t->after == NodeKind{RefNode{3}});
    auto f = canonicalize_if(g, 5);
    REQUIRE(f);
    CHECK(f->rule == "if_constant_false");
    CHECK(f->after == NodeKind{RefNode{4}});
    auto e = canonicalize_if(g, 7);
    REQUIRE(e);
    CHECK(e->rule == "if_equal_branches");
    CHECK(e->after == NodeKind{RefNode{3}});
    CHECK_FALSE(canonicalize_if(g, 9));
}

TEST_CASE("fold then fold reaches a fixpoint in two rewrites") {
    Graph g = make_graph({{0, StartNode{1}},
                          {1, ReturnNode{3}},
                          {2, AddNode{4, 5}},
                          {3, MulNode{2, 6}},
                          {4, ConstantNode{IntVal{2}}},
                          {5, ConstantNode{IntVal{3}}},
                          {6, ConstantNode{IntVal{1}}}});
    PassResult r = apply_pass(g, Pass::Canonicalize);
    CHECK(r.report.rewrites.size() == 2);
    CHECK(r.report.fixpoint);
    CHECK(r.graph.kind(3) == NodeKind{ConstantNode{IntVal{5}}});
    CHECK(check(r.graph).ok());
    CHECK(to_log(r.report) == "constant_fold @2: AddNode -> ConstantNode\n"
                              "constant_fold @3: MulNode -> ConstantNode\n");
}

TEST_CASE("factorial is already canonical") {
    PassResult r = apply_pass(fixtures::factorial_graph(), Pass::All);
    CHECK(r.report.rewrites.empty());
    CHECK(r.report.fixpoint);
    CHECK(r.report.iterations == 1);
}

TEST_CASE("sweep cap") {
    ExprGen gen(3);
    NodeId x = gen.add(ParameterNode{0});
    for (int i = 0; i < 6; ++i)
        x = gen.add(NegateNode{gen.add(NegateNode{x})});
    Graph::NodeMap nodes = gen.graph().nodes();
    Graph g = with_body(nodes, x);
    CHECK_THROWS_AS(apply_pass(g, Pass::Canonicalize, 1), IterationCapExceeded);
    try {
        apply_pass(g, Pass::Canonicalize, 1);
    } catch (const IterationCapExceeded& e) {
        CHECK(e.partial().report.iterations == 1);
        CHECK_FALSE(e.partial().report.fixpoint);
        CHECK_FALSE(e.partial().report.rewrites.empty());
    }
    PassResult full = apply_pass(g, Pass::Canonicalize);
    CHECK(full.report.fixpoint);
    CHECK(full.graph.kind(x) == NodeKind{ParameterNode{0}});
}

TEST_CASE("conditional elimination") {
    Graph g = make_graph({{0, StartNode{3}},
                          {1, ParameterNode{0}},
                          {2, ConstantNode{IntVal{0}}},
                          {3, IfNode{4, 5, 6}},
                          {4, IntegerLessThanNode{2, 1}},
                          {5, BeginNode{7}},
                          {6, BeginNode{11}},
                          {7, IfNode{4, 8, 9}},
                          {8, BeginNode{10}},
                          {9, BeginNode{10}},
                          {10, ReturnNode{1}},
                          {11, IfNode{12, 8, 9}},
                          {12, IntegerLessThanNode{2, 1}}});
    PassResult r = conditional_elimination(g);
    REQUIRE(r.report.rewrites.size() == 2);
    CHECK(r.graph.kind(7) == NodeKind{RefNode{8}});
    CHECK(r.graph.kind(11) == NodeKind{RefNode{9}}); // structural match on the false side
    CHECK(r.graph.kind(3) == g.kind(3));
}

TEST_CASE("condelim leaves straight-line code alone") {
    Graph g = make_graph({{0, StartNode{1}}, {1, ReturnNode{2}}, {2, ParameterNode{0}}});
    PassResult r = conditional_elimination(g);
    CHECK(r.report.rewrites.empty());
    CHECK(r.report.fixpoint);
}

TEST_CASE("parse_pass") {
    CHECK(parse_pass("canonicalize") == Pass::Canonicalize);
    CHECK(parse_pass("condelim") == Pass::CondElim);
    CHECK(parse_pass("all") == Pass::All);
    CHECK_FALSE(parse_pass("gvn"));
}
