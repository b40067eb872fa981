#include <benchmark/benchmark.h>

#include "parikh/costchain.hpp"
#include "parikh/multigraph.hpp"
#include "parikh/parikh_count.hpp"
#include "parikh/reductions.hpp"
#include "parikh/unary.hpp"

using namespace parikh;

namespace {

Dfa universal_ab()
{
    return Dfa::from_names({"a", "b"}, {"q"}, "q", {"q"}, {{"q", "a", "q"}, {"q", "b", "q"}});
}

// Words over {a, b} with no two consecutive b.
Dfa no_bb()
{
    return Dfa::from_names({"a", "b"}, {"p", "q"}, "p", {"p", "q"},
                           {{"p", "a", "p"}, {"p", "b", "q"}, {"q", "a", "p"}});
}

CostChain airport()
{
    return CostChain::from_names({"s", "u", "t"}, "s", "t",
                                 {{"s", "t", 20, Rational(9, 10)},
                                  {"s", "u", 15, Rational(1, 10)},
                                  {"u", "u", 5, Rational(1, 5)},
                                  {"u", "t", 10, Rational(4, 5)},
                                  {"t", "t", 0, Rational(1)}});
}

void BM_CountBest(benchmark::State& state)
{
    const unsigned long n = static_cast<unsigned long>(state.range(0));
    ParikhVector p{{"a", n}, {"b", n / 2}};
    Dfa d = no_bb();
    for (auto _ : state)
        benchmark::DoNotOptimize(count_dfa(d, p, CountMethod::best));
}
BENCHMARK(BM_CountBest)->RangeMultiplier(4)->Range(4, 1024);

void BM_CountDp(benchmark::State& state)
{
    const unsigned long n = static_cast<unsigned long>(state.range(0));
    ParikhVector p{{"a", n}, {"b", n / 2}};
    Dfa d = no_bb();
    for (auto _ : state)
        benchmark::DoNotOptimize(count_dfa(d, p, CountMethod::dp));
}
BENCHMARK(BM_CountDp)->RangeMultiplier(4)->Range(4, 256);

void BM_CountEnumerate(benchmark::State& state)
{
    const unsigned long n = static_cast<unsigned long>(state.range(0));
    ParikhVector p{{"a", n / 2}, {"b", n - n / 2}};
    Dfa d = universal_ab();
    for (auto _ : state)
        benchmark::DoNotOptimize(count_dfa(d, p, CountMethod::enumerate));
}
BENCHMARK(BM_CountEnumerate)->DenseRange(4, 10, 2);

void BM_EulerCount(benchmark::State& state)
{
    // Complete digraph with loops, every edge of weight w.
    const std::size_t nodes = static_cast<std::size_t>(state.range(0));
    WeightedMultigraph g;
    for (std::size_t i = 0; i < nodes; ++i)
        g.add_node();
    for (std::size_t i = 0; i < nodes; ++i)
        for (std::size_t j = 0; j < nodes; ++j)
            g.add_edge(i, j, static_cast<unsigned long>(1 + (i + j) % 3));
    for (auto _ : state)
        benchmark::DoNotOptimize(euler_count(g));
}
BENCHMARK(BM_EulerCount)->RangeMultiplier(2)->Range(2, 32);

void BM_CostProb(benchmark::State& state)
{
    const CostChain chain = airport();
    const CostFormula phi = CostFormula::atom(static_cast<unsigned long>(state.range(0)));
    const CostMethod method = state.range(1) == 0 ? CostMethod::cost_dp : CostMethod::parikh_best;
    for (auto _ : state)
        benchmark::DoNotOptimize(cost_prob(chain, phi, method));
}
BENCHMARK(BM_CostProb)->ArgsProduct({{30, 60}, {0, 1}});

void BM_ThreeSatGadget(benchmark::State& state)
{
    CnfFormula psi{4, {{Literal{1, true}, Literal{2, false}, Literal{3, true}},
                       {Literal{1, false}, Literal{2, true}, Literal{4, false}},
                       {Literal{2, true}, Literal{3, false}, Literal{4, true}}}};
    CountingInstance inst = gen_3sat(psi);
    for (auto _ : state)
        benchmark::DoNotOptimize(count_dfa(inst.dfa, inst.parikh, CountMethod::best));
}
BENCHMARK(BM_ThreeSatGadget);

void BM_UnaryNfa(benchmark::State& state)
{
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m; ++i)
        names.push_back("q" + std::to_string(i));
    std::vector<NamedTransition> delta;
    for (std::size_t i = 0; i < m; ++i) {
        delta.emplace_back(names[i], "a", names[(i + 1) % m]);
        delta.emplace_back(names[i], "a", names[(i * 7 + 3) % m]);
    }
    Nfa nfa = Nfa::from_names({"a"}, names, names[0], {names[m - 1]}, delta);
    const BigInt n("1000000000000");
    const UnaryMethod method = state.range(1) == 0 ? UnaryMethod::sawa : UnaryMethod::matpow;
    for (auto _ : state)
        benchmark::DoNotOptimize(unary_nfa_member(nfa, n, method));
}
BENCHMARK(BM_UnaryNfa)->ArgsProduct({{4, 8, 16}, {0, 1}});

} // namespace

BENCHMARK_MAIN();
