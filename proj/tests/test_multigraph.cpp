#include <gtest/gtest.h>

#include "oracles.hpp"
#include "parikh/error.hpp"
#include "parikh/multigraph.hpp"

using namespace parikh;

TEST(Multigraph, ZeroWeightEdgesAreDropped)
{
    WeightedMultigraph g;
    NodeId u = g.add_node("u");
    NodeId v = g.add_node();
    EXPECT_FALSE(g.add_edge(u, v, 0).has_value());
    EXPECT_TRUE(g.add_edge(u, v, 2).has_value());
    EXPECT_EQ(g.out_degree(u), 2);
    EXPECT_EQ(g.in_degree(v), 2);
    EXPECT_EQ(g.node_index("u"), u);
    EXPECT_THROW(g.add_node("u"), InputError);
    EXPECT_THROW(g.add_edge(u, v, -1), InputError);
}

TEST(Multigraph, BareissMatchesCofactorExpansion)
{
    oracle::Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = oracle::uniform(rng, 1, 6);
        Matrix m(n, std::vector<BigInt>(n));
        for (auto& row : m)
            for (auto& x : row)
                x = static_cast<long>(oracle::uniform(rng, 0, 10)) - 5;
        EXPECT_EQ(bareiss_determinant(m), oracle::determinant(m));
    }
    EXPECT_EQ(bareiss_determinant({}), 1);
    EXPECT_EQ(bareiss_determinant({{0, 1}, {1, 0}}), -1);
}

TEST(Multigraph, EulerianConnectivity)
{
    WeightedMultigraph g;
    NodeId a = g.add_node("a"), b = g.add_node("b"), c = g.add_node("c");
    g.add_edge(a, b);
    g.add_edge(b, a);
    EXPECT_TRUE(is_eulerian_connected(g));
    g.add_edge(c, c);
    EXPECT_FALSE(is_eulerian_connected(g));
    WeightedMultigraph h;
    NodeId x = h.add_node("x"), y = h.add_node("y");
    h.add_edge(x, y, 2);
    h.add_edge(y, x, 1);
    EXPECT_FALSE(is_eulerian_connected(h));
}

TEST(Multigraph, BestSmallCases)
{
    // Weight-2 edges both ways; copies of an edge are indistinguishable.
    WeightedMultigraph g;
    NodeId a = g.add_node("a"), b = g.add_node("b");
    g.add_edge(a, b, 2);
    g.add_edge(b, a, 2);
    EXPECT_EQ(euler_count(g), oracle::euler_circuits(g));
    EXPECT_EQ(brute_euler_count(g), oracle::euler_circuits(g));

    // Single node with k unit loops: (k-1)! circuits.
    WeightedMultigraph loops;
    NodeId v = loops.add_node("v");
    for (int i = 0; i < 4; ++i)
        loops.add_edge(v, v);
    EXPECT_EQ(euler_count(loops), 6);
    EXPECT_EQ(euler_count_integer(loops), 6);
}

TEST(Multigraph, BestMatchesCircuitEnumeration)
{
    oracle::Rng rng(22);
    for (int trial = 0; trial < 150; ++trial) {
        WeightedMultigraph g = oracle::random_eulerian(rng, oracle::uniform(rng, 1, 4), 10);
        ASSERT_TRUE(is_eulerian_connected(g));
        const Rational expected = oracle::euler_circuits(g);
        EXPECT_EQ(euler_count(g), expected) << "trial " << trial;
        EXPECT_EQ(brute_euler_count(g), expected) << "trial " << trial;
        const auto support = g.support();
        const BigInt t0 = spanning_tree_count(g, support.front());
        for (NodeId r : support)
            EXPECT_EQ(spanning_tree_count(g, r), t0);
    }
}

TEST(Multigraph, NonEulerianGraphs)
{
    WeightedMultigraph g;
    NodeId a = g.add_node("a"), b = g.add_node("b");
    g.add_edge(a, b);
    EXPECT_THROW(euler_count(g), StructuralError);
    EXPECT_EQ(brute_euler_count(g), 0);
}

TEST(Multigraph, BruteGuard)
{
    WeightedMultigraph g;
    NodeId v = g.add_node("v");
    g.add_edge(v, v, 13);
    EXPECT_THROW(brute_euler_count(g), SizeError);
}

TEST(Multigraph, CountPathsMatchesWalks)
{
    oracle::Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        WeightedMultigraph g;
        const std::size_t n = oracle::uniform(rng, 1, 5);
        for (std::size_t i = 0; i < n; ++i)
            g.add_node();
        for (int e = 0; e < 8; ++e)
            g.add_edge(oracle::uniform(rng, 0, n - 1), oracle::uniform(rng, 0, n - 1), oracle::uniform(rng, 1, 3));
        const NodeId u = oracle::uniform(rng, 0, n - 1), v = oracle::uniform(rng, 0, n - 1);
        for (std::uint64_t len = 0; len <= 6; ++len)
            EXPECT_EQ(count_paths(g, u, v, len), oracle::walks(g, u, v, len));
    }
}
