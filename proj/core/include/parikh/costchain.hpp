#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "parikh/automata.hpp"
#include "parikh/formula.hpp"
#include "parikh/numeric.hpp"
#include "parikh/options.hpp"

namespace parikh {

/// Exact probability in [0, 1], always canonical.
using Probability = Rational;

struct ChainEdge {
    std::size_t source;
    BigInt cost;
    std::size_t target;
    Rational probability;

    friend bool operator==(const ChainEdge&, const ChainEdge&) = default;
};

/// (source, target, cost, probability) as written in chain files.
using NamedChainEdge = std::tuple<std::string, std::string, BigInt, Rational>;

/**
 * Markov chain with integer transition costs, an initial state and an
 * absorbing target. Edges with equal (source, cost, target) are merged at
 * construction by adding their probabilities, keeping first-occurrence order.
 *
 * Construction only checks references; validate() checks the probabilistic
 * invariants.
 */
class CostChain {
public:
    CostChain(std::vector<std::string> states, std::size_t initial, std::size_t target, std::vector<ChainEdge> edges);

    static CostChain from_names(std::vector<std::string> states, const std::string& initial, const std::string& target,
                                const std::vector<NamedChainEdge>& edges);

    const std::vector<std::string>& states() const { return states_; }
    std::size_t initial() const { return initial_; }
    std::size_t target() const { return target_; }
    const std::vector<ChainEdge>& edges() const { return edges_; }
    std::optional<std::size_t> state_index(const std::string& name) const;
    /// Index of the (t, 0, t) edge, if present.
    std::optional<std::size_t> target_loop() const;
    BigInt max_cost() const;

    friend bool operator==(const CostChain&, const CostChain&) = default;

private:
    std::vector<std::string> states_;
    std::size_t initial_;
    std::size_t target_;
    std::vector<ChainEdge> edges_;
};

struct Diagnostics {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

/// Checks probabilities in (0, 1], per-state sums of one, the target's sole
/// (t, 0, t, 1) edge, and that every state reachable from the initial state reaches t.
Diagnostics validate(const CostChain& chain);

/// StructuralError listing every problem unless the chain is valid.
void require_valid(const CostChain& chain);

/**
 * Equivalent chain in which every zero-cost edge leads to the target. Each
 * state q gets, for every kept edge e (positive cost or into t), the
 * probability that e is the first kept edge taken from q. States not
 * reachable from the initial state are dropped.
 */
CostChain contract_zero_cost(const CostChain& chain);

/// Letter of edge i in the path automaton: "e<i>".
std::string edge_letter(std::size_t edge);

/// DFA over edge letters (target loop excluded) accepting initial-to-target
/// paths that stop at the first arrival at the target.
Dfa chain_path_dfa(const CostChain& chain);

/**
 * Number of paths from the initial state to the first arrival at the target
 * using edge i exactly p[i] times. Computed through chain_path_dfa and Euler
 * counting and checked against a direct path recursion (InternalError on
 * disagreement). The chain must be contracted; p[target loop] must be 0.
 */
BigInt count_chain_paths(const CostChain& contracted, const std::vector<BigInt>& p, const EngineOptions& options = {});

/// P(K = i) for i = 0..c by a per-cost-layer expected-visit recursion.
std::vector<Probability> cost_distribution(const CostChain& chain, std::uint64_t c, const EngineOptions& options = {});

enum class CostMethod { parikh_best, cost_dp };
CostMethod parse_cost_method(std::string_view name);

/// P(K satisfies phi). Cofinite formulas are evaluated as 1 - P(not phi).
Probability cost_prob(const CostChain& chain, const CostFormula& phi, CostMethod method = CostMethod::cost_dp,
                      const EngineOptions& options = {});

/// cost_prob >= tau.
bool cost_decide(const CostChain& chain, const CostFormula& phi, const Probability& tau,
                 CostMethod method = CostMethod::cost_dp, const EngineOptions& options = {});

/// floor(2^j * cost_prob) mod 2.
bool bitcost(const CostChain& chain, const CostFormula& phi, std::uint64_t j, CostMethod method = CostMethod::cost_dp,
             const EngineOptions& options = {});

/// Least b with P(K <= b) >= tau. tau must lie in (0, 1]; tau = 1 requires a
/// bounded cost support.
BigInt quantile(const CostChain& chain, const Probability& tau, CostMethod method = CostMethod::cost_dp,
                const EngineOptions& options = {});

/// E[K], exact.
Rational expected_cost(const CostChain& chain);

} // namespace parikh
