#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "parikh/acceptor.hpp"
#include "parikh/multigraph.hpp"
#include "parikh/options.hpp"

namespace parikh {

/// Multiplicity of every DFA transition, indexed like Dfa::transitions().
struct FlowAssignment {
    std::vector<BigInt> weights;

    friend bool operator==(const FlowAssignment&, const FlowAssignment&) = default;
};

/**
 * Calls @p visit once for every transition weighting of @p wf_dfa that meets
 * the per-letter totals of @p p, is balanced at every state and whose support
 * is strongly connected and contains the initial state.
 *
 * Letters are assigned in alphabet order; within a letter, weight vectors
 * come in lexicographic order. InputError unless the initial state is the
 * only final state.
 */
void enumerate_flows(const Dfa& wf_dfa, const ParikhVector& p, const std::function<void(const FlowAssignment&)>& visit);

std::vector<FlowAssignment> collect_flows(const Dfa& wf_dfa, const ParikhVector& p);

/// Multigraph on the DFA's states with one edge per positively weighted transition.
WeightedMultigraph flow_graph(const Dfa& dfa, const FlowAssignment& flow);

enum class CountMethod {
    /// Augment, enumerate flows, sum Euler-circuit counts.
    best,
    /// Table over (state, sub-vector of p). NFAs are determinized first.
    dp,
    /// Every arrangement of the letters of p, tested for membership.
    enumerate,
};

CountMethod parse_count_method(std::string_view name);
const char* method_name(CountMethod method);

/// Words of L(dfa) whose Parikh image is @p p.
BigInt count_dfa(const Dfa& dfa, const ParikhVector& p, CountMethod method, const EngineOptions& options = {});

/// Words (not runs) of L(nfa) with image @p p. best and dp work on the subset automaton.
BigInt count_nfa(const Nfa& nfa, const ParikhVector& p, CountMethod method, const EngineOptions& options = {});

/// Words of L(cfg) with image @p p, by enumeration and chart parsing.
BigInt count_cfg(const Cfg& cfg, const ParikhVector& p, const EngineOptions& options = {});

/// Dispatches on the acceptor kind. Without a method: best for automata,
/// enumerate for grammars. Grammars accept only enumerate.
BigInt count(const Acceptor& acceptor, const ParikhVector& p, std::optional<CountMethod> method = std::nullopt,
             const EngineOptions& options = {});

/// N(a, p) > N(b, p). InputError when the alphabets differ as sets.
bool pic(const Acceptor& a, const Acceptor& b, const ParikhVector& p, std::optional<CountMethod> method = std::nullopt,
         const EngineOptions& options = {});

/// Bit @p index of N(a, p), bit 0 least significant.
bool bitp(const Acceptor& a, const ParikhVector& p, const BigInt& index, std::optional<CountMethod> method = std::nullopt,
          const EngineOptions& options = {});

} // namespace parikh
