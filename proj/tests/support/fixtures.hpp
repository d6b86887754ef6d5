#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "seanode/format.hpp"
#include "seanode/graph.hpp"
#include "seanode/runtime.hpp"

namespace fixtures {

using namespace seanode;

inline std::filesystem::path corpus_dir() { return SEANODE_CORPUS_DIR; }
inline std::filesystem::path corpus(const std::string& name) { return corpus_dir() / name; }

// Wrapping factorial computed on uint32, independent of the interpreter.
inline std::int32_t factorial_oracle(std::int32_t n) {
    std::uint32_t acc = 1;
    for (std::int32_t i = n; i > 1; --i)
        acc *= static_cast<std::uint32_t>(i);
    return static_cast<std::int32_t>(acc);
}

inline Value iv(std::int32_t v) { return IntVal{v}; }

inline Signature fact_sig() { return {"Factorial", "fact", {"int"}}; }

// The factorial loop, built in code rather than loaded from the corpus.
inline Graph factorial_graph() {
    return make_graph({
        {0, StartNode{2}},
        {1, ParameterNode{0}},
        {2, BeginNode{5}},
        {3, ConstantNode{IntVal{1}}},
        {4, BeginNode{21}},
        {5, EndNode{}},
        {6, LoopBeginNode{{5, 21}, 12}},
        {7, ValuePhiNode{7, {1, 20}, 6}},
        {8, ValuePhiNode{8, {3, 18}, 6}},
        {9, BeginNode{14}},
        {10, ConstantNode{IntVal{1}}},
        {11, IntegerLessThanNode{10, 7}},
        {12, IfNode{11, 13, 16}},
        {13, BeginNode{4}},
        {14, LoopExitNode{6, 17}},
        {15, ValueProxyNode{8, 14}},
        {16, BeginNode{9}},
        {17, ReturnNode{15}},
        {18, MulNode{8, 7}},
        {19, ConstantNode{IntVal{-1}}},
        {20, AddNode{7, 19}},
        {21, LoopEndNode{6}},
    });
}

inline Program factorial_program() { return {{fact_sig(), factorial_graph()}}; }

// A merge with `ends` predecessors and `phis` phis whose values are drawn
// from constants, parameters and the phis themselves (so that latching one
// phi before another would be observable). Node 0 is a StartNode feeding
// the first end; the remaining ends are unreachable but well-formed.
struct MergeFixture {
    Graph g;
    NodeId merge = 0;
    std::vector<NodeId> ends;
    std::vector<NodeId> phis;
    Params p;
};

inline MergeFixture random_merge(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_int_distribution<std::int32_t> val(-100, 100);
    std::size_t n_ends = static_cast<std::size_t>(count(rng));
    std::size_t n_phis = static_cast<std::size_t>(count(rng)) + 1;
    std::size_t n_params = 2;

    Graph::NodeMap nodes;
    MergeFixture fx;
    NodeId next = 1;
    std::vector<NodeId> leaves;
    for (std::size_t i = 0; i < n_params; ++i) {
        nodes[next] = ParameterNode{i};
        leaves.push_back(next++);
        fx.p.push_back(IntVal{val(rng)});
    }
    for (int i = 0; i < 3; ++i) {
        nodes[next] = ConstantNode{IntVal{val(rng)}};
        leaves.push_back(next++);
    }
    for (std::size_t i = 0; i < n_ends; ++i)
        fx.ends.push_back(next++);
    fx.merge = next++;
    NodeId ret = next++;
    for (std::size_t i = 0; i < n_phis; ++i)
        fx.phis.push_back(next++);

    std::vector<NodeId> pool = leaves;
    pool.insert(pool.end(), fx.phis.begin(), fx.phis.end());
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (NodeId phi : fx.phis) {
        std::vector<NodeId> values;
        for (std::size_t i = 0; i < n_ends; ++i) {
            // Wrap some inputs in arithmetic so evaluation is not just a lookup.
            NodeId a = pool[pick(rng)];
            if (rng() % 2) {
                NodeId b = pool[pick(rng)];
                nodes[next] = AddNode{a, b};
                a = next++;
            }
            values.push_back(a);
        }
        nodes[phi] = ValuePhiNode{phi, values, fx.merge};
    }
    nodes[0] = StartNode{fx.ends[0]};
    for (NodeId e : fx.ends)
        nodes[e] = EndNode{};
    nodes[fx.merge] = MergeNode{fx.ends, ret};
    nodes[ret] = ReturnNode{fx.phis[0]};
    fx.g = Graph(std::move(nodes));
    return fx;
}

inline std::vector<std::filesystem::path> corpus_files() {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(corpus_dir())) {
        if (e.is_regular_file() && e.path().extension() == ".json")
            out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace fixtures
