#include <gtest/gtest.h>

#include "oracles.hpp"
#include "parikh/automata.hpp"
#include "parikh/cfg.hpp"
#include "parikh/error.hpp"
#include "parikh/numeric.hpp"

using namespace parikh;

TEST(Numeric, ParseAndPrint)
{
    EXPECT_EQ(to_string(parse_natural("123456789012345678901234567890")), "123456789012345678901234567890");
    EXPECT_EQ(parse_integer("-17"), -17);
    EXPECT_EQ(parse_fraction("9/10"), Rational(9, 10));
    EXPECT_EQ(to_string(parse_fraction("6/4")), "3/2");
    EXPECT_EQ(to_string(parse_fraction("4/2")), "2");
    EXPECT_THROW(parse_fraction("0.9"), InputError);
    EXPECT_THROW(parse_fraction("1/0"), InputError);
    EXPECT_THROW(parse_natural("-1"), InputError);
    EXPECT_THROW(parse_natural(""), InputError);
}

TEST(Numeric, CombinatoricsMatchPascal)
{
    std::vector<std::vector<BigInt>> pascal(30, std::vector<BigInt>(30, 0));
    for (std::size_t n = 0; n < 30; ++n) {
        pascal[n][0] = 1;
        for (std::size_t k = 1; k <= n; ++k)
            pascal[n][k] = pascal[n - 1][k - 1] + (k < n ? pascal[n - 1][k] : BigInt(0));
    }
    for (unsigned long n = 0; n < 30; ++n)
        for (unsigned long k = 0; k <= n; ++k)
            EXPECT_EQ(binomial(n, k), pascal[n][k]) << n << " " << k;
    EXPECT_EQ(multinomial({2, 1, 1}), 12);
    EXPECT_EQ(factorial(10), 3628800);
    BigInt huge = BigInt(1) << 64;
    EXPECT_EQ(binomial(huge, huge - 1), huge);
}

TEST(Numeric, Bits)
{
    EXPECT_TRUE(bit(5, 0));
    EXPECT_FALSE(bit(5, 1));
    EXPECT_TRUE(bit(5, 2));
    EXPECT_FALSE(bit(5, BigInt(1) << 70));
    EXPECT_EQ(parikh::floor(Rational(7, 2)), 3);
}

TEST(ParikhVector, Basics)
{
    ParikhVector p{{"a", 2}, {"b", 0}};
    EXPECT_EQ(p["a"], 2);
    EXPECT_EQ(p["b"], 0);
    EXPECT_EQ(p["z"], 0);
    EXPECT_EQ(p.norm(), 2);
    EXPECT_EQ(p, (ParikhVector{{"a", 2}}));
    EXPECT_EQ(parikh::parikh(Word{"a", "b", "a"}), (ParikhVector{{"a", 2}, {"b", 1}}));
    EXPECT_EQ(p.dense({"b", "a"}), (std::vector<BigInt>{0, 2}));
    EXPECT_THROW(p.dense({"b"}), InputError);
    EXPECT_EQ(p + ParikhVector({{"b", 3}}), (ParikhVector{{"a", 2}, {"b", 3}}));
}

TEST(Automata, ConstructionValidates)
{
    EXPECT_THROW(Dfa::from_names({"a"}, {"p"}, "p", {}, {{"p", "a", "p"}, {"p", "a", "p"}}), InputError);
    EXPECT_THROW(Dfa::from_names({"a"}, {"p"}, "x", {}, {}), InputError);
    EXPECT_THROW(Nfa::from_names({"a"}, {"p"}, "p", {}, {{"p", "b", "p"}}), InputError);
    EXPECT_NO_THROW(Nfa::from_names({"a"}, {"p", "q"}, "p", {"q"}, {{"p", "a", "p"}, {"p", "a", "q"}}));
}

TEST(Automata, AcceptsMatchesSimulation)
{
    oracle::Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        Dfa dfa = oracle::random_dfa(rng, 4, 2);
        Nfa nfa = oracle::random_nfa(rng, 4, 2);
        for (std::uint64_t a = 0; a <= 3; ++a)
            for (std::uint64_t b = 0; b <= 3; ++b)
                oracle::for_each_word({"a", "b"}, {a, b}, [&](const Word& w) {
                    EXPECT_EQ(accepts(dfa, w), oracle::run_dfa(dfa, w));
                    EXPECT_EQ(accepts(nfa, w), oracle::run_nfa(nfa, w));
                });
    }
}

TEST(Automata, DeterminizePreservesLanguage)
{
    oracle::Rng rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        Nfa nfa = oracle::random_nfa(rng, 4, 2);
        Dfa dfa = determinize(nfa);
        for (std::uint64_t a = 0; a <= 3; ++a)
            for (std::uint64_t b = 0; b <= 3; ++b)
                oracle::for_each_word({"a", "b"}, {a, b},
                                      [&](const Word& w) { EXPECT_EQ(oracle::run_dfa(dfa, w), oracle::run_nfa(nfa, w)); });
    }
}

TEST(Automata, FreshAnchorLetter)
{
    EXPECT_EQ(fresh_anchor_letter({"a", "b"}), "##");
    EXPECT_EQ(fresh_anchor_letter({"##", "a"}), "##0");
    EXPECT_EQ(fresh_anchor_letter({"##", "##0"}), "##1");
}

TEST(Automata, AugmentWellFormed)
{
    oracle::Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        Dfa dfa = oracle::random_dfa(rng, 3, 2);
        ParikhVector p{{"a", 2}, {"b", 1}};
        WellFormedDfa wf = augment_well_formed(dfa, p);
        EXPECT_EQ(wf.anchor, "##");
        EXPECT_EQ(wf.parikh, (ParikhVector{{"a", 2}, {"b", 1}, {"##", 1}}));
        ASSERT_EQ(wf.dfa.finals().size(), 1u);
        EXPECT_EQ(wf.dfa.finals()[0], wf.dfa.initial());
        oracle::for_each_word({"a", "b"}, {2, 1}, [&](const Word& w) {
            Word anchored = w;
            anchored.push_back("##");
            EXPECT_EQ(oracle::run_dfa(wf.dfa, anchored), oracle::run_dfa(dfa, w));
        });
    }
}

namespace {

Cfg balanced()
{
    return Cfg::make({"S"}, {"a", "b"}, "S", {{"S", {"a", "S", "b"}}, {"S", {}}});
}

bool is_balanced(const Word& w)
{
    std::size_t i = 0;
    while (i < w.size() && w[i] == "a")
        ++i;
    const std::size_t as = i;
    while (i < w.size() && w[i] == "b")
        ++i;
    return i == w.size() && 2 * as == w.size();
}

} // namespace

TEST(Cfg, Validation)
{
    EXPECT_THROW(Cfg::make({"S"}, {"a"}, "S", {{"S", {"T"}}}), InputError);
    EXPECT_THROW(Cfg::make({"S"}, {"a"}, "X", {{"S", {"a"}}}), InputError);
    EXPECT_THROW(Cfg::make({"a"}, {"a"}, "a", {}), InputError);
}

TEST(Cfg, CykMatchesDefinition)
{
    Cfg g = balanced();
    for (std::uint64_t a = 0; a <= 4; ++a)
        for (std::uint64_t b = 0; b <= 4; ++b)
            oracle::for_each_word({"a", "b"}, {a, b}, [&](const Word& w) { EXPECT_EQ(accepts(g, w), is_balanced(w)); });
}

TEST(Cfg, NormalFormKeepsLanguage)
{
    // Unit chains, nullable symbols and long bodies all at once.
    Cfg g = Cfg::make({"S", "A", "B"}, {"a", "b"}, "S",
                      {{"S", {"A", "B", "A"}}, {"A", {"a"}}, {"A", {}}, {"B", {"b", "B"}}, {"B", {"A"}}});
    Cfg cnf = to_normal_form(g);
    for (const auto& p : cnf.productions()) {
        if (p.head == cnf.start() && p.body.empty())
            continue;
        if (p.body.size() == 1)
            EXPECT_TRUE(cnf.is_terminal(p.body[0]));
        else
            EXPECT_EQ(p.body.size(), 2u);
    }
    // B derives b^k A, so L = a? b* a? a?.
    auto member = [](const Word& w) {
        std::size_t i = 0, n = w.size();
        if (i < n && w[i] == "a")
            ++i;
        while (i < n && w[i] == "b")
            ++i;
        std::size_t trailing = n - i;
        for (std::size_t j = i; j < n; ++j)
            if (w[j] != "a")
                return false;
        return trailing <= 2;
    };
    for (std::uint64_t a = 0; a <= 4; ++a)
        for (std::uint64_t b = 0; b <= 3; ++b)
            oracle::for_each_word({"a", "b"}, {a, b}, [&](const Word& w) {
                EXPECT_EQ(accepts(g, w), member(w));
                EXPECT_EQ(accepts(cnf, w), member(w));
            });
}
