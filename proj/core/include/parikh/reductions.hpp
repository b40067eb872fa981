#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "parikh/automata.hpp"
#include "parikh/cfg.hpp"
#include "parikh/multigraph.hpp"
#include "parikh/options.hpp"

namespace parikh {

struct Literal {
    /// 1-based variable index.
    std::size_t variable;
    bool positive;

    friend bool operator==(const Literal&, const Literal&) = default;
};

struct CnfFormula {
    std::size_t variables = 0;
    std::vector<std::array<Literal, 3>> clauses;

    /// InputError unless every clause names three distinct variables in 1..variables.
    void validate() const;
    /// Bit v-1 of @p assignment is the value of variable v.
    bool satisfied_by(std::uint64_t assignment) const;

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

struct CountingInstance {
    Dfa dfa;
    ParikhVector parikh;
};

/**
 * DFA and Parikh vector whose count equals the number of satisfying
 * assignments. Letters: x<i>, ~x<i>, c<j>, d<j>_<r> (r in 0..2), 1-based.
 *
 * A first phase walks one diamond per variable: x<i>, then c<j> for every
 * clause j with literal X_i, then ~x<i>; or ~x<i>, the c<j> of clauses with
 * literal not X_i, then x<i>. Each clause then tops its c<j> count up to three
 * with one of d<j>_0 d<j>_1 d<j>_2, d<j>_1 c<j> d<j>_0 d<j>_2 or
 * d<j>_2 c<j> c<j> d<j>_0 d<j>_1.
 */
CountingInstance gen_3sat(const CnfFormula& psi);

struct SignedPathGraph {
    WeightedMultigraph graph;
    NodeId source;
    NodeId plus;
    NodeId minus;
};

/// Nodes v<k>+ and v<k>- per row of M; weight |M_kl| edges keep or flip the
/// sign. (M^n)_ij = N(source, plus, n) - N(source, minus, n) for the 0-based
/// entry (i, j).
SignedPathGraph matpow_entry_gadget(const Matrix& m, std::size_t i, std::size_t j);

struct MatPowInstance {
    Matrix m;
    /// Coefficients b_ij of f(X) = sum b_ij X_ij.
    Matrix f;
    BigInt n;

    /// InputError unless M and f are square of the same size and n >= 1.
    void validate() const;
};

/// One entry gadget per (i, j) fed from a shared source, with |b_ij|-weighted
/// exits into plus/minus by the sign of b_ij. f(M^n) = N(source, plus, n+2) - N(source, minus, n+2).
SignedPathGraph posmat_to_multigraph(const MatPowInstance& inst);

/// Smallest k accepted by unweight for @p g: 1 + floor(log2 max weight), at least 1.
std::uint64_t unweight_length(const WeightedMultigraph& g);

/// Replaces every weight-w edge by w parallel paths of length k built by
/// repeated halving. Original node ids are kept. N(G,u,v,n) = N(G',u,v,n*k)
/// between original nodes. InputError when k < unweight_length(g).
WeightedMultigraph unweight(const WeightedMultigraph& g, std::uint64_t k);

struct OnePathGraphs {
    /// N(shifted, v0, v1, n+2) = N(G, v0, v1, n).
    WeightedMultigraph shifted;
    /// N(plus_one, v0, v1, n+2) = N(G, v0, v1, n) + 1.
    WeightedMultigraph plus_one;
};

/// Moves the edges of v0 and v1 onto fresh copies joined by v0 -> v0*, v1* -> v1;
/// plus_one also gets a fresh looping node between v0 and v1. v0 != v1.
OnePathGraphs add_one_path(const WeightedMultigraph& g, NodeId v0, NodeId v1);

/// DFA over {a, b}: the j-th out-edge (1-based) of a node is read as
/// b^(j-1) a b^(d-j), with common b-prefixes shared. Initial v0, final v1.
/// N(G, v0, v1, n) = N(dfa, {a: n, b: n(d-1)}). All weights must be 1 and d
/// at least the largest out-degree.
Dfa graph_to_dfa(const WeightedMultigraph& g, NodeId v0, NodeId v1, std::uint64_t d);

struct PosMatPowReduction {
    Dfa plus;
    Dfa minus;
    ParikhVector parikh;
    std::uint64_t k;
    std::uint64_t d;
};

/// The full pipeline; N(plus, p) - N(minus, p) = f(M^n) + 1.
PosMatPowReduction reduce_posmatpow(const MatPowInstance& inst);

/// f(M^n) >= 0, decided as N(plus, p) > N(minus, p) with the DP counter.
bool posmatpow_decide(const MatPowInstance& inst, const EngineOptions& options = {});

/// Grammar over {a} generating a^s exactly for the subset sums s of @p values.
Cfg gen_subsetsum_cfg(const std::vector<BigInt>& values);

} // namespace parikh
