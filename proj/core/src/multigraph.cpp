#include "parikh/multigraph.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "parikh/error.hpp"

namespace parikh {

NodeId WeightedMultigraph::add_node(const std::string& name)
{
    if (name.empty())
        throw InputError("empty node name");
    if (!ids_.emplace(name, names_.size()).second)
        throw InputError("duplicate node '" + name + "'");
    names_.push_back(name);
    return names_.size() - 1;
}

NodeId WeightedMultigraph::add_node()
{
    std::size_t k = names_.size();
    while (ids_.count("v" + std::to_string(k)))
        ++k;
    return add_node("v" + std::to_string(k));
}

std::optional<std::size_t> WeightedMultigraph::add_edge(NodeId source, NodeId target, const BigInt& weight)
{
    if (source >= names_.size() || target >= names_.size())
        throw InputError("edge endpoint out of range");
    if (weight < 0)
        throw InputError("negative edge weight");
    if (weight == 0)
        return std::nullopt;
    edges_.push_back({edges_.size(), source, target, weight});
    return edges_.size() - 1;
}

std::optional<NodeId> WeightedMultigraph::node_index(const std::string& name) const
{
    auto it = ids_.find(name);
    if (it == ids_.end())
        return std::nullopt;
    return it->second;
}

BigInt WeightedMultigraph::out_degree(NodeId v) const
{
    BigInt d = 0;
    for (const Edge& e : edges_)
        if (e.source == v)
            d += e.weight;
    return d;
}

BigInt WeightedMultigraph::in_degree(NodeId v) const
{
    BigInt d = 0;
    for (const Edge& e : edges_)
        if (e.target == v)
            d += e.weight;
    return d;
}

std::vector<NodeId> WeightedMultigraph::support() const
{
    std::vector<bool> touched(names_.size(), false);
    for (const Edge& e : edges_)
        touched[e.source] = touched[e.target] = true;
    std::vector<NodeId> out;
    for (NodeId v = 0; v < names_.size(); ++v)
        if (touched[v])
            out.push_back(v);
    return out;
}

BigInt WeightedMultigraph::max_weight() const
{
    BigInt m = 0;
    for (const Edge& e : edges_)
        if (e.weight > m)
            m = e.weight;
    return m;
}

Matrix WeightedMultigraph::laplacian() const
{
    Matrix l(names_.size(), std::vector<BigInt>(names_.size(), BigInt(0)));
    for (const Edge& e : edges_) {
        if (e.source == e.target)
            continue;
        l[e.source][e.source] += e.weight;
        l[e.source][e.target] -= e.weight;
    }
    return l;
}

BigInt bareiss_determinant(Matrix m)
{
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n)
            throw InputError("determinant of a non-square matrix");
    if (n == 0)
        return 1;
    int sign = 1;
    BigInt previous = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t pivot = k + 1;
            while (pivot < n && m[pivot][k] == 0)
                ++pivot;
            if (pivot == n)
                return 0;
            std::swap(m[k], m[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), previous.get_mpz_t());
                m[i][j] = std::move(v);
            }
            m[i][k] = 0;
        }
        previous = m[k][k];
    }
    BigInt det = m[n - 1][n - 1];
    return sign < 0 ? BigInt(-det) : det;
}

namespace {

// Nodes of the support reachable from `from` along edges (or reversed edges).
std::vector<bool> reach(const WeightedMultigraph& g, NodeId from, bool reversed)
{
    std::vector<std::vector<NodeId>> adj(g.node_count());
    for (const Edge& e : g.edges()) {
        if (reversed)
            adj[e.target].push_back(e.source);
        else
            adj[e.source].push_back(e.target);
    }
    std::vector<bool> seen(g.node_count(), false);
    std::vector<NodeId> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    return seen;
}

bool support_strongly_connected(const WeightedMultigraph& g)
{
    auto support = g.support();
    if (support.empty())
        return true;
    auto forward = reach(g, support.front(), false);
    auto backward = reach(g, support.front(), true);
    return std::all_of(support.begin(), support.end(), [&](NodeId v) { return forward[v] && backward[v]; });
}

} // namespace

bool is_eulerian_connected(const WeightedMultigraph& g)
{
    std::vector<BigInt> balance(g.node_count(), BigInt(0));
    for (const Edge& e : g.edges()) {
        balance[e.source] += e.weight;
        balance[e.target] -= e.weight;
    }
    for (const auto& b : balance)
        if (b != 0)
            return false;
    return support_strongly_connected(g);
}

BigInt spanning_tree_count(const WeightedMultigraph& g, NodeId root)
{
    if (root >= g.node_count())
        throw InputError("root node out of range");
    auto support = g.support();
    if (support.empty())
        return 1;
    if (!std::binary_search(support.begin(), support.end(), root))
        return 0;
    Matrix full = g.laplacian();
    Matrix minor;
    for (NodeId i : support) {
        if (i == root)
            continue;
        std::vector<BigInt> row;
        for (NodeId j : support)
            if (j != root)
                row.push_back(full[i][j]);
        minor.push_back(std::move(row));
    }
    return bareiss_determinant(std::move(minor));
}

Rational euler_count(const WeightedMultigraph& g)
{
    if (!is_eulerian_connected(g))
        throw StructuralError("graph is not a connected Eulerian multigraph");
    auto support = g.support();
    if (support.empty())
        return Rational(1);

    // Per node, (d-1)!/prod w! = multinomial(d-1; w_j - 1, others)/w_j for a
    // chosen out-edge j; picking a weight-one edge keeps the factor integral.
    std::vector<std::vector<BigInt>> out_weights(g.node_count());
    for (const Edge& e : g.edges())
        out_weights[e.source].push_back(e.weight);
    BigInt numerator = spanning_tree_count(g, support.front());
    BigInt denominator = 1;
    for (NodeId v : support) {
        auto& ws = out_weights[v];
        auto chosen = std::find(ws.begin(), ws.end(), BigInt(1));
        if (chosen == ws.end())
            chosen = std::max_element(ws.begin(), ws.end());
        denominator *= *chosen;
        *chosen -= 1;
        numerator *= multinomial(ws);
    }
    Rational result(numerator, denominator);
    result.canonicalize();
    return result;
}

BigInt euler_count_integer(const WeightedMultigraph& g)
{
    Rational r = euler_count(g);
    if (r.get_den() != 1)
        throw InternalError("Euler count " + to_string(r) + " is not integral");
    return r.get_num();
}

Rational brute_euler_count(const WeightedMultigraph& g, std::size_t max_copies)
{
    std::size_t copies = 0;
    for (const Edge& e : g.edges()) {
        if (!fits_u64(e.weight) || e.weight > BigInt(static_cast<unsigned long>(max_copies)))
            throw SizeError("expanded edge count exceeds " + std::to_string(max_copies));
        copies += to_u64(e.weight);
        if (copies > max_copies)
            throw SizeError("expanded edge count exceeds " + std::to_string(max_copies));
    }
    if (copies == 0)
        return Rational(1);

    std::vector<std::pair<NodeId, NodeId>> expanded;
    BigInt symmetry = 1;
    for (const Edge& e : g.edges()) {
        std::uint64_t w = to_u64(e.weight);
        for (std::uint64_t k = 0; k < w; ++k)
            expanded.emplace_back(e.source, e.target);
        symmetry *= factorial(w);
    }
    std::vector<std::vector<std::size_t>> out(g.node_count());
    for (std::size_t i = 0; i < expanded.size(); ++i)
        out[expanded[i].first].push_back(i);

    // Each rotation class has exactly one representative starting with copy 0,
    // so count linear circuits whose first edge is copy 0. Memoized on (used, node).
    const NodeId home = expanded[0].first;
    const std::size_t full = (std::size_t{1} << copies) - 1;
    std::map<std::pair<std::size_t, NodeId>, BigInt> memo;
    auto completions = [&](auto& self, std::size_t used, NodeId at) -> BigInt {
        if (used == full)
            return at == home ? BigInt(1) : BigInt(0);
        auto key = std::make_pair(used, at);
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        BigInt total = 0;
        for (std::size_t c : out[at])
            if (!(used & (std::size_t{1} << c)))
                total += self(self, used | (std::size_t{1} << c), expanded[c].second);
        memo.emplace(key, total);
        return total;
    };
    BigInt circuits = completions(completions, 1, expanded[0].second);
    Rational result(circuits, symmetry);
    result.canonicalize();
    return result;
}

BigInt count_paths(const WeightedMultigraph& g, NodeId u, NodeId v, std::uint64_t n)
{
    if (u >= g.node_count() || v >= g.node_count())
        throw InputError("count_paths: unknown node");
    std::vector<BigInt> layer(g.node_count(), BigInt(0));
    layer[u] = 1;
    for (std::uint64_t step = 0; step < n; ++step) {
        std::vector<BigInt> next(g.node_count(), BigInt(0));
        for (const Edge& e : g.edges())
            if (layer[e.source] != 0)
                next[e.target] += layer[e.source] * e.weight;
        layer = std::move(next);
    }
    return layer[v];
}

} // namespace parikh
