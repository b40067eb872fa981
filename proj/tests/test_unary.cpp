#include <gtest/gtest.h>

#include "oracles.hpp"
#include "parikh/error.hpp"
#include "parikh/reductions.hpp"
#include "parikh/unary.hpp"

using namespace parikh;

namespace {

bool simulate_unary(const Dfa& dfa, std::uint64_t n)
{
    return oracle::run_dfa(dfa, Word(n, "a"));
}

/// Boolean adjacency power by repeated multiplication.
std::vector<std::vector<bool>> reach_matrix(const Nfa& nfa, std::uint64_t c)
{
    const std::size_t m = nfa.states().size();
    std::vector<std::vector<bool>> r(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i)
        r[i][i] = true;
    for (std::uint64_t step = 0; step < c; ++step) {
        std::vector<std::vector<bool>> next(m, std::vector<bool>(m, false));
        for (std::size_t i = 0; i < m; ++i)
            for (const auto& t : nfa.transitions())
                if (r[i][t.source])
                    next[i][t.target] = true;
        r = std::move(next);
    }
    return r;
}

Nfa cycle(std::size_t length)
{
    auto names = oracle::state_names(length);
    std::vector<NamedTransition> delta;
    for (std::size_t i = 0; i < length; ++i)
        delta.emplace_back(names[i], "a", names[(i + 1) % length]);
    return Nfa::from_names({"a"}, names, names[0], {names[0]}, delta);
}

} // namespace

TEST(Unary, LassoShape)
{
    Dfa d = Dfa::from_names({"a"}, {"p", "q", "r"}, "p", {"r"}, {{"p", "a", "q"}, {"q", "a", "r"}, {"r", "a", "q"}});
    LassoShape s = lasso_decompose(d);
    EXPECT_EQ(s.tail, 1u);
    EXPECT_EQ(s.period, 2u);
    EXPECT_EQ(s.accepting, (std::vector<bool>{false, false, true}));
    EXPECT_TRUE(unary_dfa_member(d, BigInt("100000000000000000000")));
    EXPECT_FALSE(unary_dfa_member(d, BigInt("100000000000000000001")));

    Dfa partial = Dfa::from_names({"a"}, {"p", "q"}, "p", {"q"}, {{"p", "a", "q"}});
    EXPECT_TRUE(unary_dfa_member(partial, 1));
    EXPECT_FALSE(unary_dfa_member(partial, 2));
    EXPECT_FALSE(unary_dfa_member(partial, BigInt(1) << 90));
    Dfa binary = Dfa::from_names({"a", "b"}, {"p"}, "p", {"p"}, {});
    EXPECT_THROW(unary_dfa_member(binary, 1), InputError);
}

TEST(Unary, LassoMatchesSimulation)
{
    oracle::Rng rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        Dfa dfa = oracle::random_unary_dfa(rng, oracle::uniform(rng, 1, 6));
        LassoShape s = lasso_decompose(dfa);
        const std::uint64_t limit = 3 * (dfa.states().size() + s.period);
        for (std::uint64_t n = 0; n <= limit; ++n)
            EXPECT_EQ(unary_dfa_member(dfa, n), simulate_unary(dfa, n)) << trial << " " << n;
    }
}

TEST(Unary, BoundedReach)
{
    Nfa two = cycle(2);
    EXPECT_TRUE(bounded_reach(two, 0, 0, 0));
    EXPECT_FALSE(bounded_reach(two, 0, 1, 0));
    EXPECT_TRUE(bounded_reach(two, 0, 0, 6));
    EXPECT_FALSE(bounded_reach(two, 0, 0, 5));
    EXPECT_THROW(bounded_reach(two, 0, 0, 7), SizeError);

    oracle::Rng rng(62);
    for (int trial = 0; trial < 100; ++trial) {
        Nfa nfa = oracle::random_nfa(rng, oracle::uniform(rng, 1, 5), 1);
        const std::size_t m = nfa.states().size();
        const std::uint64_t c = oracle::uniform(rng, 0, m * m + m);
        auto r = reach_matrix(nfa, c);
        const std::size_t p = oracle::uniform(rng, 0, m - 1), q = oracle::uniform(rng, 0, m - 1);
        EXPECT_EQ(bounded_reach(nfa, p, q, c), r[p][q]);
    }
}

TEST(Unary, NfaSmallLengthsMatchSimulation)
{
    oracle::Rng rng(63);
    for (int trial = 0; trial < 80; ++trial) {
        Nfa nfa = oracle::random_nfa(rng, oracle::uniform(rng, 1, 5), 1, 0.3);
        const std::uint64_t m = nfa.states().size();
        for (std::uint64_t n = 0; n <= m * m + 5; ++n) {
            const bool expected = oracle::run_nfa(nfa, Word(n, "a"));
            EXPECT_EQ(unary_nfa_member(nfa, n, UnaryMethod::sawa), expected) << trial << " " << n;
            EXPECT_EQ(unary_nfa_member(nfa, n, UnaryMethod::matpow), expected) << trial << " " << n;
        }
    }
}

TEST(Unary, NfaLargeLengths)
{
    Nfa universal = Nfa::from_names({"a"}, {"p"}, "p", {"p"}, {{"p", "a", "p"}});
    EXPECT_TRUE(unary_nfa_member(universal, 1'000'000'000));
    Nfa even = cycle(2);
    EXPECT_FALSE(unary_nfa_member(even, BigInt("1000000000001")));
    EXPECT_TRUE(unary_nfa_member(even, BigInt("1000000000000")));
    // Lengths 0 mod 3 or 0 mod 5 via a nondeterministic first choice.
    Nfa choice = Nfa::from_names({"a"}, {"s", "x1", "x2", "y1", "y2", "y3", "y4", "x0", "y0"}, "s", {"s", "x0", "y0"},
                                 {{"s", "a", "x1"}, {"x1", "a", "x2"}, {"x2", "a", "x0"}, {"x0", "a", "x1"},
                                  {"s", "a", "y1"}, {"y1", "a", "y2"}, {"y2", "a", "y3"}, {"y3", "a", "y4"},
                                  {"y4", "a", "y0"}, {"y0", "a", "y1"}});
    for (const char* text : {"999999999999", "1000000000000", "1000000000001", "1000000000007"}) {
        BigInt n(text);
        const bool expected = n % 3 == 0 || n % 5 == 0;
        EXPECT_EQ(unary_nfa_member(choice, n, UnaryMethod::sawa), expected) << text;
        EXPECT_EQ(unary_nfa_member(choice, n, UnaryMethod::matpow), expected) << text;
    }
}

TEST(Unary, SawaMatchesMatpowOnRandomNfa)
{
    oracle::Rng rng(64);
    for (int trial = 0; trial < 60; ++trial) {
        Nfa nfa = oracle::random_nfa(rng, oracle::uniform(rng, 1, 6), 1, 0.3);
        for (int i = 0; i < 5; ++i) {
            BigInt n = static_cast<unsigned long>(oracle::uniform(rng, 0, 1'000'000'000'000ULL));
            EXPECT_EQ(unary_nfa_member(nfa, n, UnaryMethod::sawa), unary_nfa_member(nfa, n, UnaryMethod::matpow));
        }
    }
    EXPECT_THROW(parse_unary_method("guess"), InputError);
}

TEST(Unary, Cfg)
{
    Cfg plus = Cfg::make({"S"}, {"a"}, "S", {{"S", {"a", "S"}}, {"S", {"a"}}});
    EXPECT_TRUE(unary_cfg_member(plus, 5));
    EXPECT_FALSE(unary_cfg_member(plus, 0));

    // D_k derives a^(2^k).
    Cfg doubling = Cfg::make({"S", "D1", "D2"}, {"a"}, "S",
                             {{"S", {"D2", "D2"}}, {"D2", {"D1", "D1"}}, {"D1", {"a", "a"}}});
    EXPECT_TRUE(unary_cfg_member(doubling, 8));
    EXPECT_FALSE(unary_cfg_member(doubling, 6));
    EXPECT_THROW(unary_cfg_member(plus, 10'001), SizeError);
}

TEST(Unary, SubsetSumGrammar)
{
    oracle::Rng rng(65);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::uint64_t> values;
        std::vector<BigInt> big;
        std::uint64_t total = 0;
        while (values.size() < 5) {
            std::uint64_t v = oracle::uniform(rng, 1, 9);
            if (total + v > 40)
                break;
            values.push_back(v);
            big.push_back(static_cast<unsigned long>(v));
            total += v;
        }
        auto sums = oracle::subset_sums(values);
        Cfg g = gen_subsetsum_cfg(big);
        for (std::uint64_t n = 0; n <= total + 2; ++n)
            EXPECT_EQ(unary_cfg_member(g, n), sums.count(n) == 1) << trial << " " << n;
    }
    Cfg g = gen_subsetsum_cfg({3, 5});
    EXPECT_TRUE(unary_cfg_member(g, 8));
    EXPECT_FALSE(unary_cfg_member(g, 7));
}

TEST(Unary, Pic)
{
    Dfa all = Dfa::from_names({"a"}, {"p"}, "p", {"p"}, {{"p", "a", "p"}});
    Dfa none = Dfa::from_names({"a"}, {"p"}, "p", {}, {{"p", "a", "p"}});
    EXPECT_TRUE(unary_pic(all, none, 12345));
    EXPECT_FALSE(unary_pic(all, all, 12345));
    EXPECT_FALSE(unary_pic(none, all, 3));

    oracle::Rng rng(66);
    for (int trial = 0; trial < 30; ++trial) {
        Dfa a = oracle::random_unary_dfa(rng, 4), b = oracle::random_unary_dfa(rng, 4);
        for (std::uint64_t n = 0; n <= 30; ++n)
            EXPECT_EQ(unary_pic(a, b, n), simulate_unary(a, n) && !simulate_unary(b, n));
    }
}
