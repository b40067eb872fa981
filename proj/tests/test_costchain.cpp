#include <gtest/gtest.h>

#include "oracles.hpp"
#include "parikh/costchain.hpp"
#include "parikh/error.hpp"
#include "parikh/formula.hpp"

using namespace parikh;

namespace {

CostChain airport()
{
    return CostChain::from_names({"s", "u", "t"}, "s", "t",
                                 {{"s", "t", 20, Rational(9, 10)},
                                  {"s", "u", 15, Rational(1, 10)},
                                  {"u", "u", 5, Rational(1, 5)},
                                  {"u", "t", 10, Rational(4, 5)},
                                  {"t", "t", 0, Rational(1)}});
}

/// P(K <= b) for the airport chain: 9/10 [b >= 20] + 1/10 * P(25 + 5J <= b)
/// with J geometric, P(J = j) = (1/5)^j * 4/5.
Rational airport_cdf(long b)
{
    Rational p = b >= 20 ? Rational(9, 10) : Rational(0);
    if (b >= 25) {
        const long jmax = (b - 25) / 5;
        Rational geometric = 1;
        for (long j = 0; j <= jmax; ++j)
            geometric /= 5;
        p += Rational(1, 10) * (1 - geometric);
    }
    return p;
}

} // namespace

TEST(Formula, Semantics)
{
    auto interval = CostFormula::conjunction(CostFormula::negation(CostFormula::atom(5)), CostFormula::atom(15));
    EXPECT_EQ(interval.max_constant(), 15);
    EXPECT_FALSE(interval.satisfied_by(5));
    EXPECT_TRUE(interval.satisfied_by(6));
    EXPECT_TRUE(interval.satisfied_by(15));
    EXPECT_FALSE(interval.satisfied_by(16));
    EXPECT_FALSE(formula_cofinite(interval));
    EXPECT_EQ(interval.to_string(), "(!(x <= 5) & x <= 15)");

    auto split = CostFormula::disjunction(CostFormula::atom(3), CostFormula::negation(CostFormula::atom(7)));
    EXPECT_TRUE(formula_cofinite(split));
    EXPECT_TRUE(formula_sat(100, split));
    EXPECT_FALSE(formula_sat(5, split));
    EXPECT_THROW(CostFormula::atom(-1), InputError);
}

TEST(CostChain, Validation)
{
    EXPECT_TRUE(validate(airport()).ok());
    // Probabilities out of s sum to 11/10.
    CostChain bad = CostChain::from_names({"s", "t"}, "s", "t",
                                          {{"s", "t", 1, Rational(1)}, {"s", "s", 1, Rational(1, 10)},
                                           {"t", "t", 0, Rational(1)}});
    EXPECT_FALSE(validate(bad).ok());
    EXPECT_THROW(require_valid(bad), StructuralError);
    // u never reaches t.
    CostChain trap = CostChain::from_names({"s", "u", "t"}, "s", "t",
                                           {{"s", "t", 1, Rational(1, 2)}, {"s", "u", 1, Rational(1, 2)},
                                            {"u", "u", 1, Rational(1)}, {"t", "t", 0, Rational(1)}});
    EXPECT_FALSE(validate(trap).ok());
    // Missing target loop.
    CostChain open = CostChain::from_names({"s", "t"}, "s", "t", {{"s", "t", 1, Rational(1)}});
    EXPECT_FALSE(validate(open).ok());
}

TEST(CostChain, AirportExactValues)
{
    const CostChain chain = airport();
    for (auto method : {CostMethod::cost_dp, CostMethod::parikh_best}) {
        EXPECT_EQ(cost_prob(chain, CostFormula::atom(30), method), Rational(249, 250));
        EXPECT_EQ(cost_prob(chain, CostFormula::atom(19), method), 0);
        EXPECT_FALSE(cost_decide(chain, CostFormula::atom(30), Rational(99999, 100000), method));
        EXPECT_TRUE(cost_decide(chain, CostFormula::atom(30), Rational(99, 100), method));
        EXPECT_EQ(quantile(chain, Rational(9, 10), method), 20);
        EXPECT_EQ(quantile(chain, Rational(1, 2), method), 20);
        EXPECT_EQ(quantile(chain, Rational(999, 1000), method), 35);
    }
    EXPECT_EQ(expected_cost(chain), Rational(165, 8));
    for (long b = 0; b <= 60; ++b)
        EXPECT_EQ(cost_prob(chain, CostFormula::atom(b)), airport_cdf(b)) << b;
    EXPECT_THROW(quantile(chain, Rational(1)), StructuralError);
    EXPECT_THROW(quantile(chain, Rational(0)), InputError);
}

TEST(CostChain, DistributionMatchesRecursion)
{
    oracle::Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        CostChain chain = oracle::random_chain(rng, oracle::uniform(rng, 1, 3), 4);
        const auto expected = oracle::positive_cost_distribution(chain, 20);
        EXPECT_EQ(cost_distribution(chain, 20), expected) << "trial " << trial;
    }
}

TEST(CostChain, MethodsAgree)
{
    oracle::Rng rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        CostChain chain = oracle::random_chain(rng, oracle::uniform(rng, 1, 2), 3, 0);
        CostFormula phi = oracle::random_formula(rng, 8);
        EXPECT_EQ(cost_prob(chain, phi, CostMethod::parikh_best), cost_prob(chain, phi, CostMethod::cost_dp))
            << "trial " << trial << " " << phi.to_string();
    }
}

TEST(CostChain, ContractionPreservesDistribution)
{
    oracle::Rng rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        CostChain chain = oracle::random_chain(rng, oracle::uniform(rng, 1, 4), 3, 0);
        CostChain contracted = contract_zero_cost(chain);
        EXPECT_TRUE(validate(contracted).ok());
        for (const auto& e : contracted.edges())
            if (e.cost == 0)
                EXPECT_EQ(e.target, contracted.target());
        EXPECT_EQ(cost_distribution(contracted, 15), cost_distribution(chain, 15)) << "trial " << trial;
        EXPECT_EQ(expected_cost(contracted), expected_cost(chain));
    }
}

TEST(CostChain, ZeroCostCycle)
{
    // s <-> u at cost zero, leaving to t with cost 1 or 2.
    CostChain chain = CostChain::from_names({"s", "u", "t"}, "s", "t",
                                            {{"s", "u", 0, Rational(1, 2)},
                                             {"s", "t", 1, Rational(1, 2)},
                                             {"u", "s", 0, Rational(1, 2)},
                                             {"u", "t", 2, Rational(1, 2)},
                                             {"t", "t", 0, Rational(1)}});
    // From s the first exit is via s with probability 2/3.
    auto dist = cost_distribution(chain, 3);
    EXPECT_EQ(dist, (std::vector<Rational>{0, Rational(2, 3), Rational(1, 3), 0}));
    EXPECT_EQ(expected_cost(chain), Rational(4, 3));
    EXPECT_EQ(quantile(chain, Rational(1)), 2);
}

TEST(CostChain, ChainPathCounts)
{
    CostChain chain = contract_zero_cost(airport());
    auto index = [&](const std::string& s, const std::string& t) {
        for (std::size_t i = 0; i < chain.edges().size(); ++i)
            if (chain.states()[chain.edges()[i].source] == s && chain.states()[chain.edges()[i].target] == t)
                return i;
        return chain.edges().size();
    };
    std::vector<BigInt> p(chain.edges().size(), 0);
    p[index("s", "u")] = 1;
    p[index("u", "u")] = 3;
    p[index("u", "t")] = 1;
    EXPECT_EQ(count_chain_paths(chain, p), 1);
    p[index("s", "t")] = 1;
    EXPECT_EQ(count_chain_paths(chain, p), 0);
}

TEST(CostChain, ComplementAndBits)
{
    oracle::Rng rng(44);
    for (int trial = 0; trial < 30; ++trial) {
        CostChain chain = oracle::random_chain(rng, oracle::uniform(rng, 1, 3), 5, 0);
        CostFormula phi = oracle::random_formula(rng, 20);
        Rational p = cost_prob(chain, phi);
        EXPECT_EQ(p + cost_prob(chain, CostFormula::negation(phi)), 1);
        BigInt scaled = parikh::floor(p * Rational(BigInt(1) << 16));
        BigInt reassembled = 0;
        for (std::uint64_t j = 0; j <= 16; ++j)
            reassembled = 2 * reassembled + (bitcost(chain, phi, j) ? 1 : 0);
        EXPECT_EQ(reassembled, scaled);
    }
}

TEST(CostChain, Guards)
{
    EngineOptions tight;
    tight.parikh_cost_cap = 10;
    EXPECT_THROW(cost_prob(airport(), CostFormula::atom(30), CostMethod::parikh_best, tight), SizeError);
    EXPECT_THROW(parse_cost_method("guess"), InputError);
    EXPECT_EQ(parse_cost_method("parikh-best"), CostMethod::parikh_best);
}
