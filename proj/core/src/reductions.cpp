#include "parikh/reductions.hpp"

#include <algorithm>

#include "parikh/error.hpp"
#include "parikh/parikh_count.hpp"

namespace parikh {

void CnfFormula::validate() const
{
    if (variables > 63)
        throw InputError("at most 63 variables are supported");
    for (std::size_t c = 0; c < clauses.size(); ++c) {
        const auto& cl = clauses[c];
        for (const auto& lit : cl)
            if (lit.variable < 1 || lit.variable > variables)
                throw InputError("clause " + std::to_string(c + 1) + " mentions an undeclared variable");
        if (cl[0].variable == cl[1].variable || cl[0].variable == cl[2].variable || cl[1].variable == cl[2].variable)
            throw InputError("clause " + std::to_string(c + 1) + " must name three distinct variables");
    }
}

bool CnfFormula::satisfied_by(std::uint64_t assignment) const
{
    return std::all_of(clauses.begin(), clauses.end(), [&](const auto& cl) {
        return std::any_of(cl.begin(), cl.end(), [&](const Literal& lit) {
            bool value = (assignment >> (lit.variable - 1)) & 1u;
            return value == lit.positive;
        });
    });
}

namespace {

/// Accumulates named states and transitions for a DFA under construction.
class DfaBuilder {
public:
    explicit DfaBuilder(std::vector<Letter> alphabet) : alphabet_(std::move(alphabet)) {}

    std::size_t state(std::string name)
    {
        states_.push_back(std::move(name));
        return states_.size() - 1;
    }
    std::size_t fresh() { return state("q" + std::to_string(states_.size())); }

    std::size_t letter(const Letter& l) const
    {
        return static_cast<std::size_t>(std::find(alphabet_.begin(), alphabet_.end(), l) - alphabet_.begin());
    }

    void add(std::size_t from, const Letter& l, std::size_t to) { transitions_.push_back({from, letter(l), to}); }

    /// Reads @p word from @p from, ending in @p to, through fresh states.
    void path(std::size_t from, const std::vector<Letter>& word, std::size_t to)
    {
        std::size_t at = from;
        for (std::size_t i = 0; i + 1 < word.size(); ++i) {
            std::size_t next = fresh();
            add(at, word[i], next);
            at = next;
        }
        add(at, word.back(), to);
    }

    Dfa build(std::size_t initial, std::vector<std::size_t> finals)
    {
        return Dfa(alphabet_, states_, initial, std::move(finals), transitions_);
    }

private:
    std::vector<Letter> alphabet_;
    std::vector<std::string> states_;
    std::vector<Transition> transitions_;
};

} // namespace

CountingInstance gen_3sat(const CnfFormula& psi)
{
    psi.validate();
    const std::size_t n = psi.variables, k = psi.clauses.size();
    auto x = [](std::size_t i) { return "x" + std::to_string(i); };
    auto nx = [](std::size_t i) { return "~x" + std::to_string(i); };
    auto c = [](std::size_t j) { return "c" + std::to_string(j); };
    auto d = [](std::size_t j, int r) { return "d" + std::to_string(j) + "_" + std::to_string(r); };

    std::vector<Letter> alphabet;
    for (std::size_t i = 1; i <= n; ++i) {
        alphabet.push_back(x(i));
        alphabet.push_back(nx(i));
    }
    for (std::size_t j = 1; j <= k; ++j)
        alphabet.push_back(c(j));
    for (std::size_t j = 1; j <= k; ++j)
        for (int r = 0; r < 3; ++r)
            alphabet.push_back(d(j, r));

    DfaBuilder b(alphabet);
    std::size_t hub = b.fresh();
    const std::size_t initial = hub;
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<Letter> when_true{x(i)}, when_false{nx(i)};
        for (std::size_t j = 1; j <= k; ++j)
            for (const Literal& lit : psi.clauses[j - 1])
                if (lit.variable == i)
                    (lit.positive ? when_true : when_false).push_back(c(j));
        when_true.push_back(nx(i));
        when_false.push_back(x(i));
        std::size_t next = b.fresh();
        b.path(hub, when_true, next);
        b.path(hub, when_false, next);
        hub = next;
    }
    for (std::size_t j = 1; j <= k; ++j) {
        std::size_t next = b.fresh();
        b.path(hub, {d(j, 0), d(j, 1), d(j, 2)}, next);
        b.path(hub, {d(j, 1), c(j), d(j, 0), d(j, 2)}, next);
        b.path(hub, {d(j, 2), c(j), c(j), d(j, 0), d(j, 1)}, next);
        hub = next;
    }

    ParikhVector p;
    for (std::size_t i = 1; i <= n; ++i) {
        p.set(x(i), 1);
        p.set(nx(i), 1);
    }
    for (std::size_t j = 1; j <= k; ++j) {
        p.set(c(j), 3);
        for (int r = 0; r < 3; ++r)
            p.set(d(j, r), 1);
    }
    return {b.build(initial, {hub}), std::move(p)};
}

namespace {

std::size_t square_size(const Matrix& m, const char* what)
{
    for (const auto& row : m)
        if (row.size() != m.size())
            throw InputError(std::string(what) + " is not square");
    return m.size();
}

/// Adds the +/- doubled copy of M to g; returns the node ids (plus[k], minus[k]).
std::pair<std::vector<NodeId>, std::vector<NodeId>> add_signed_copy(WeightedMultigraph& g, const Matrix& m,
                                                                    const std::string& tag)
{
    const std::size_t size = m.size();
    std::vector<NodeId> plus(size), minus(size);
    for (std::size_t r = 0; r < size; ++r) {
        plus[r] = g.add_node("v" + std::to_string(r + 1) + "+" + tag);
        minus[r] = g.add_node("v" + std::to_string(r + 1) + "-" + tag);
    }
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t s = 0; s < size; ++s) {
            const BigInt& w = m[r][s];
            if (w > 0) {
                g.add_edge(plus[r], plus[s], w);
                g.add_edge(minus[r], minus[s], w);
            } else if (w < 0) {
                BigInt a = -w;
                g.add_edge(plus[r], minus[s], a);
                g.add_edge(minus[r], plus[s], a);
            }
        }
    return {plus, minus};
}

} // namespace

SignedPathGraph matpow_entry_gadget(const Matrix& m, std::size_t i, std::size_t j)
{
    const std::size_t size = square_size(m, "matrix");
    if (i >= size || j >= size)
        throw InputError("matrix entry out of range");
    SignedPathGraph out;
    auto [plus, minus] = add_signed_copy(out.graph, m, "");
    out.source = plus[i];
    out.plus = plus[j];
    out.minus = minus[j];
    return out;
}

void MatPowInstance::validate() const
{
    const std::size_t size = square_size(m, "matrix");
    if (size == 0)
        throw InputError("empty matrix");
    if (square_size(f, "coefficient matrix") != size)
        throw InputError("coefficient matrix and matrix differ in size");
    if (n < 1)
        throw InputError("exponent must be at least 1");
}

SignedPathGraph posmat_to_multigraph(const MatPowInstance& inst)
{
    inst.validate();
    const std::size_t size = inst.m.size();
    SignedPathGraph out;
    WeightedMultigraph& g = out.graph;
    out.source = g.add_node("v0");
    out.plus = g.add_node("v+");
    out.minus = g.add_node("v-");
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) {
            auto [plus, minus] = add_signed_copy(g, inst.m, "@" + std::to_string(i + 1) + "," + std::to_string(j + 1));
            g.add_edge(out.source, plus[i], 1);
            const BigInt& b = inst.f[i][j];
            if (b > 0) {
                g.add_edge(plus[j], out.plus, b);
                g.add_edge(minus[j], out.minus, b);
            } else if (b < 0) {
                BigInt a = -b;
                g.add_edge(plus[j], out.minus, a);
                g.add_edge(minus[j], out.plus, a);
            }
        }
    return out;
}

std::uint64_t unweight_length(const WeightedMultigraph& g)
{
    BigInt w = g.max_weight();
    if (w <= 1)
        return 1;
    return static_cast<std::uint64_t>(mpz_sizeinbase(w.get_mpz_t(), 2));
}

namespace {

void simple_path(WeightedMultigraph& g, NodeId from, NodeId to, std::uint64_t length)
{
    NodeId at = from;
    for (std::uint64_t i = 1; i < length; ++i) {
        NodeId next = g.add_node();
        g.add_edge(at, next, 1);
        at = next;
    }
    g.add_edge(at, to, 1);
}

void weighted_paths(WeightedMultigraph& g, NodeId from, NodeId to, BigInt w, std::uint64_t budget)
{
    if (w == 1) {
        simple_path(g, from, to, budget);
        return;
    }
    NodeId half = g.add_node();
    g.add_edge(from, half, 1);
    g.add_edge(from, half, 1);
    BigInt rest = w / 2;
    weighted_paths(g, half, to, rest, budget - 1);
    if (w % 2 != 0)
        simple_path(g, from, to, budget);
}

} // namespace

WeightedMultigraph unweight(const WeightedMultigraph& g, std::uint64_t k)
{
    if (k < unweight_length(g))
        throw InputError("path length " + std::to_string(k) + " is below the required " +
                         std::to_string(unweight_length(g)));
    WeightedMultigraph out;
    for (const auto& name : g.node_names())
        out.add_node(name);
    for (const Edge& e : g.edges())
        weighted_paths(out, e.source, e.target, e.weight, k);
    return out;
}

OnePathGraphs add_one_path(const WeightedMultigraph& g, NodeId v0, NodeId v1)
{
    if (v0 >= g.node_count() || v1 >= g.node_count())
        throw InputError("add_one_path: unknown node");
    if (v0 == v1)
        throw InputError("add_one_path needs two distinct nodes");
    WeightedMultigraph shifted;
    for (const auto& name : g.node_names())
        shifted.add_node(name);
    NodeId v0_copy = shifted.add_node(g.node_names()[v0] + "*");
    NodeId v1_copy = shifted.add_node(g.node_names()[v1] + "*");
    auto moved = [&](NodeId v) { return v == v0 ? v0_copy : (v == v1 ? v1_copy : v); };
    shifted.add_edge(v0, v0_copy, 1);
    for (const Edge& e : g.edges())
        shifted.add_edge(moved(e.source), moved(e.target), e.weight);
    shifted.add_edge(v1_copy, v1, 1);

    WeightedMultigraph plus_one = shifted;
    NodeId loop = plus_one.add_node();
    plus_one.add_edge(v0, loop, 1);
    plus_one.add_edge(loop, loop, 1);
    plus_one.add_edge(loop, v1, 1);
    return {std::move(shifted), std::move(plus_one)};
}

Dfa graph_to_dfa(const WeightedMultigraph& g, NodeId v0, NodeId v1, std::uint64_t d)
{
    if (v0 >= g.node_count() || v1 >= g.node_count())
        throw InputError("graph_to_dfa: unknown node");
    std::vector<std::vector<NodeId>> targets(g.node_count());
    for (const Edge& e : g.edges()) {
        if (e.weight != 1)
            throw InputError("graph_to_dfa needs all edge weights equal to 1");
        targets[e.source].push_back(e.target);
    }
    for (const auto& t : targets)
        if (t.size() > d)
            throw InputError("d = " + std::to_string(d) + " is below the largest out-degree " +
                             std::to_string(t.size()));

    std::vector<std::string> states = g.node_names();
    std::vector<Transition> transitions;
    auto fresh = [&](const std::string& name) {
        states.push_back(name);
        return states.size() - 1;
    };
    constexpr std::size_t a = 0, b = 1;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const std::string& base = g.node_names()[u];
        std::size_t prefix = u;
        for (std::size_t j = 1; j <= targets[u].size(); ++j) {
            // prefix has read b^(j-1).
            std::uint64_t tail = d - j;
            std::size_t at = tail == 0 ? targets[u][j - 1] : fresh(base + "/" + std::to_string(j) + ".0");
            transitions.push_back({prefix, a, at});
            for (std::uint64_t s = 1; s <= tail; ++s) {
                std::size_t next = s == tail ? targets[u][j - 1]
                                             : fresh(base + "/" + std::to_string(j) + "." + std::to_string(s));
                transitions.push_back({at, b, next});
                at = next;
            }
            if (j < targets[u].size()) {
                std::size_t next = fresh(base + "/b" + std::to_string(j));
                transitions.push_back({prefix, b, next});
                prefix = next;
            }
        }
    }
    return Dfa({"a", "b"}, std::move(states), v0, {v1}, std::move(transitions));
}

PosMatPowReduction reduce_posmatpow(const MatPowInstance& inst)
{
    SignedPathGraph signed_graph = posmat_to_multigraph(inst);
    const std::uint64_t k = unweight_length(signed_graph.graph);
    WeightedMultigraph flat = unweight(signed_graph.graph, k);
    OnePathGraphs plus = add_one_path(flat, signed_graph.source, signed_graph.plus);
    OnePathGraphs minus = add_one_path(flat, signed_graph.source, signed_graph.minus);

    std::uint64_t d = 1;
    for (const WeightedMultigraph* g : {&plus.plus_one, &minus.shifted}) {
        std::vector<std::uint64_t> degree(g->node_count(), 0);
        for (const Edge& e : g->edges())
            d = std::max(d, ++degree[e.source]);
    }
    const BigInt length = (inst.n + 2) * BigInt(static_cast<unsigned long>(k)) + 2;
    ParikhVector p;
    p.set("a", length);
    p.set("b", length * BigInt(static_cast<unsigned long>(d - 1)));
    return {graph_to_dfa(plus.plus_one, signed_graph.source, signed_graph.plus, d),
            graph_to_dfa(minus.shifted, signed_graph.source, signed_graph.minus, d), std::move(p), k, d};
}

bool posmatpow_decide(const MatPowInstance& inst, const EngineOptions& options)
{
    PosMatPowReduction r = reduce_posmatpow(inst);
    return count_dfa(r.plus, r.parikh, CountMethod::dp, options) >
           count_dfa(r.minus, r.parikh, CountMethod::dp, options);
}

Cfg gen_subsetsum_cfg(const std::vector<BigInt>& values)
{
    std::size_t top = 0;
    for (const auto& v : values) {
        if (v < 1)
            throw InputError("subset-sum values must be positive");
        top = std::max(top, mpz_sizeinbase(v.get_mpz_t(), 2));
    }
    std::vector<std::string> nonterminals{"S"};
    std::vector<Production> productions;
    std::vector<std::string> start_body;
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::string x = "X" + std::to_string(i + 1);
        nonterminals.push_back(x);
        start_body.push_back(x);
    }
    productions.push_back({"S", start_body});
    for (std::size_t t = 0; t < top; ++t) {
        std::string a = "A" + std::to_string(t);
        nonterminals.push_back(a);
        if (t == 0)
            productions.push_back({a, {"a"}});
        else
            productions.push_back({a, {"A" + std::to_string(t - 1), "A" + std::to_string(t - 1)}});
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::string x = "X" + std::to_string(i + 1);
        productions.push_back({x, {}});
        std::vector<std::string> body;
        for (std::size_t t = 0; t < top; ++t)
            if (mpz_tstbit(values[i].get_mpz_t(), t))
                body.push_back("A" + std::to_string(t));
        productions.push_back({x, std::move(body)});
    }
    return Cfg::make(std::move(nonterminals), {"a"}, "S", std::move(productions));
}

} // namespace parikh
