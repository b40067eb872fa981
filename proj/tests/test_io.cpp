#include <gtest/gtest.h>

#include "oracles.hpp"
#include "parikh/error.hpp"
#include "parikh/io.hpp"

using namespace parikh;

namespace {

const char* const minimal_dfa = R"(dfa
alphabet a b
states q0 q1
initial q0
final q1
q0 a q1
q1 b q0
)";

const char* const airport_text = R"(costchain
initial s
target t
s t 20 9/10
s u 15 1/10
u u 5 1/5
u t 10 4/5
t t 0 1
)";

Cfg random_cfg(oracle::Rng& rng)
{
    std::vector<std::string> nts{"S", "A", "B"};
    std::vector<std::string> symbols{"S", "A", "B", "a", "b"};
    std::vector<Production> productions;
    for (const auto& head : nts) {
        const std::size_t alternatives = oracle::uniform(rng, 1, 3);
        for (std::size_t i = 0; i < alternatives; ++i) {
            std::vector<std::string> body;
            const std::size_t len = oracle::uniform(rng, 0, 3);
            for (std::size_t j = 0; j < len; ++j)
                body.push_back(symbols[oracle::uniform(rng, 0, symbols.size() - 1)]);
            productions.push_back({head, body});
        }
    }
    return Cfg::make(nts, {"a", "b"}, "S", productions);
}

} // namespace

TEST(Io, MinimalDfa)
{
    Acceptor a = parse_acceptor(minimal_dfa);
    ASSERT_TRUE(std::holds_alternative<Dfa>(a));
    const Dfa& d = std::get<Dfa>(a);
    EXPECT_EQ(d.states().size(), 2u);
    EXPECT_TRUE(accepts(d, Word{"a", "b", "a"}));
    EXPECT_EQ(std::string(kind_name(a)), "dfa");
}

TEST(Io, AcceptorErrors)
{
    std::string duplicate = std::string(minimal_dfa) + "q0 a q0\n";
    try {
        parse_acceptor(duplicate);
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 8u);
    }
    std::string as_nfa = duplicate;
    as_nfa.replace(0, 3, "nfa");
    EXPECT_NO_THROW(parse_acceptor(as_nfa));
    EXPECT_THROW(parse_acceptor("dfa\nalphabet a\nstates p\ninitial p\nfinal p\np a r\n"), InputError);
    EXPECT_THROW(parse_acceptor("cfg\nalphabet a\nstart S\nS -> a T\n"), InputError);
    EXPECT_THROW(parse_acceptor("tm\n"), ParseError);
    EXPECT_THROW(parse_acceptor(""), ParseError);
}

TEST(Io, CfgSyntax)
{
    Acceptor a = parse_acceptor("cfg\nalphabet a b\nstart S\nS -> a S b | ε\n");
    const Cfg& g = std::get<Cfg>(a);
    EXPECT_EQ(g.productions().size(), 2u);
    EXPECT_TRUE(accepts(g, Word{"a", "a", "b", "b"}));
    EXPECT_TRUE(accepts(g, Word{}));
    Acceptor b = parse_acceptor("cfg\nalphabet a b\nstart S\nS -> a S b |\n");
    EXPECT_EQ(std::get<Cfg>(b), g);
}

TEST(Io, RoundTripDfaAndNfa)
{
    oracle::Rng rng(71);
    for (int trial = 0; trial < 25; ++trial) {
        Dfa d = oracle::random_dfa(rng, oracle::uniform(rng, 1, 5), oracle::uniform(rng, 1, 3));
        Acceptor back = parse_acceptor(serialize_acceptor(d));
        ASSERT_TRUE(std::holds_alternative<Dfa>(back));
        EXPECT_EQ(std::get<Dfa>(back), d);

        Nfa n = oracle::random_nfa(rng, oracle::uniform(rng, 1, 5), oracle::uniform(rng, 1, 3));
        Acceptor back_n = parse_acceptor(serialize_acceptor(n));
        ASSERT_TRUE(std::holds_alternative<Nfa>(back_n));
        EXPECT_EQ(std::get<Nfa>(back_n), n);
    }
}

TEST(Io, RoundTripCfg)
{
    oracle::Rng rng(72);
    for (int trial = 0; trial < 25; ++trial) {
        Cfg g = random_cfg(rng);
        Acceptor back = parse_acceptor(serialize_acceptor(g));
        ASSERT_TRUE(std::holds_alternative<Cfg>(back));
        EXPECT_EQ(std::get<Cfg>(back), g);
    }
}

TEST(Io, RoundTripCostChain)
{
    oracle::Rng rng(73);
    for (int trial = 0; trial < 25; ++trial) {
        CostChain c = oracle::random_chain(rng, oracle::uniform(rng, 1, 4), 9, 0);
        EXPECT_EQ(parse_costchain(serialize_costchain(c)), c);
    }
}

TEST(Io, CostChainFile)
{
    CostChain c = parse_costchain(airport_text);
    EXPECT_EQ(c.states(), (std::vector<std::string>{"s", "t", "u"}));
    EXPECT_EQ(expected_cost(c), Rational(165, 8));

    std::string no_loop = airport_text;
    no_loop.erase(no_loop.find("t t 0 1\n"));
    std::vector<std::string> warnings;
    CostChain patched = parse_costchain(no_loop, &warnings);
    EXPECT_EQ(warnings.size(), 1u);
    EXPECT_EQ(patched, c);

    std::string decimal = airport_text;
    decimal.replace(decimal.find("9/10"), 4, "0.9");
    EXPECT_THROW(parse_costchain(decimal), ParseError);

    std::string unbalanced = airport_text;
    unbalanced.replace(unbalanced.find("9/10"), 4, "8/10");
    EXPECT_THROW(parse_costchain(unbalanced), StructuralError);
}

TEST(Io, Formula)
{
    EXPECT_EQ(parse_formula("x <= 30").max_constant(), 30);
    CostFormula f = parse_formula("!(x <= 5) & x <= 15");
    EXPECT_EQ(f.to_string(), "(!(x <= 5) & x <= 15)");
    EXPECT_TRUE(formula_cofinite(parse_formula("x <= 3 | !(x <= 7)")));
    // & binds tighter than |.
    CostFormula g = parse_formula("x <= 1 | x <= 9 & !(x <= 4)");
    EXPECT_TRUE(g.satisfied_by(0));
    EXPECT_FALSE(g.satisfied_by(3));
    EXPECT_TRUE(g.satisfied_by(7));
    try {
        parse_formula("x <= ");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_GE(e.column(), 5u);
    }
    EXPECT_THROW(parse_formula("y <= 3"), ParseError);
    EXPECT_THROW(parse_formula("(x <= 3"), ParseError);
}

TEST(Io, ParikhVector)
{
    ParikhVector p = parse_parikh("a=2 b=100000000000000000000");
    EXPECT_EQ(p["b"], BigInt("100000000000000000000"));
    EXPECT_EQ(parse_parikh(serialize_parikh(p)), p);
    EXPECT_THROW(parse_parikh("a=1 a=2"), ParseError);
    EXPECT_THROW(parse_parikh("a:1"), ParseError);
    EXPECT_THROW(parse_parikh("a=-1"), ParseError);
}

TEST(Io, DimacsAndMatrix)
{
    CnfFormula psi = parse_dimacs("c example\np cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n");
    EXPECT_EQ(psi.variables, 3u);
    ASSERT_EQ(psi.clauses.size(), 2u);
    EXPECT_EQ(psi.clauses[0][1], (Literal{2, false}));
    EXPECT_EQ(parse_dimacs(serialize_dimacs(psi)), psi);
    EXPECT_THROW(parse_dimacs("p cnf 3 1\n1 2 0\n"), ParseError);

    Matrix m = parse_matrix("1 -2\n3 4\n");
    EXPECT_EQ(m, (Matrix{{1, -2}, {3, 4}}));
    EXPECT_EQ(parse_matrix(serialize_matrix(m)), m);
}
