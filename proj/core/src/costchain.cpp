#include "parikh/costchain.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "detail/parallel.hpp"
#include "parikh/error.hpp"
#include "parikh/parikh_count.hpp"

namespace parikh {

namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Solves A X = B by Gauss-Jordan elimination over the rationals.
RationalMatrix solve(RationalMatrix a, RationalMatrix b)
{
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0)
            ++pivot;
        if (pivot == n)
            throw InternalError("singular linear system in cost-chain computation");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        const Rational inv = 1 / a[col][col];
        for (auto& x : a[col])
            x *= inv;
        for (auto& x : b[col])
            x *= inv;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0)
                continue;
            const Rational factor = a[row][col];
            for (std::size_t k = col; k < n; ++k)
                a[row][k] -= factor * a[col][k];
            for (std::size_t k = 0; k < b[row].size(); ++k)
                b[row][k] -= factor * b[col][k];
        }
    }
    return b;
}

std::vector<bool> reachable_from(const CostChain& chain, std::size_t from)
{
    std::vector<std::vector<std::size_t>> adj(chain.states().size());
    for (const auto& e : chain.edges())
        adj[e.source].push_back(e.target);
    std::vector<bool> seen(chain.states().size(), false);
    std::vector<std::size_t> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
        std::size_t q = stack.back();
        stack.pop_back();
        for (std::size_t r : adj[q])
            if (!seen[r]) {
                seen[r] = true;
                stack.push_back(r);
            }
    }
    return seen;
}

/// Non-target states reachable from the initial state, in state order.
std::vector<std::size_t> transient_states(const CostChain& chain)
{
    auto seen = reachable_from(chain, chain.initial());
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < chain.states().size(); ++q)
        if (seen[q] && q != chain.target())
            out.push_back(q);
    return out;
}

std::string describe(const CostChain& chain, const ChainEdge& e)
{
    return "edge " + chain.states()[e.source] + " -> " + chain.states()[e.target] + " (cost " + to_string(e.cost) +
           ")";
}

Rational power(const Rational& base, std::uint64_t exponent)
{
    Rational out(1);
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    return out;
}

} // namespace

CostChain::CostChain(std::vector<std::string> states, std::size_t initial, std::size_t target,
                     std::vector<ChainEdge> edges)
    : states_(std::move(states)), initial_(initial), target_(target)
{
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (states_[i].empty())
            throw InputError("empty state name");
        if (!seen.emplace(states_[i], i).second)
            throw InputError("duplicate state '" + states_[i] + "'");
    }
    if (initial_ >= states_.size() || target_ >= states_.size())
        throw InputError("initial or target state out of range");
    std::map<std::tuple<std::size_t, BigInt, std::size_t>, std::size_t> slot;
    for (auto& e : edges) {
        if (e.source >= states_.size() || e.target >= states_.size())
            throw InputError("edge endpoint out of range");
        if (e.cost < 0)
            throw InputError("negative edge cost");
        e.probability.canonicalize();
        auto [it, inserted] = slot.emplace(std::make_tuple(e.source, e.cost, e.target), edges_.size());
        if (inserted)
            edges_.push_back(std::move(e));
        else
            edges_[it->second].probability += e.probability;
    }
}

CostChain CostChain::from_names(std::vector<std::string> states, const std::string& initial, const std::string& target,
                                const std::vector<NamedChainEdge>& edges)
{
    std::unordered_map<std::string, std::size_t> ids;
    for (std::size_t i = 0; i < states.size(); ++i)
        ids.emplace(states[i], i);
    auto id = [&](const std::string& name) {
        auto it = ids.find(name);
        if (it == ids.end())
            throw InputError("undeclared state '" + name + "'");
        return it->second;
    };
    std::vector<ChainEdge> resolved;
    for (const auto& [src, dst, cost, prob] : edges)
        resolved.push_back({id(src), cost, id(dst), prob});
    std::size_t init = id(initial), tgt = id(target);
    return CostChain(std::move(states), init, tgt, std::move(resolved));
}

std::optional<std::size_t> CostChain::state_index(const std::string& name) const
{
    auto it = std::find(states_.begin(), states_.end(), name);
    if (it == states_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - states_.begin());
}

std::optional<std::size_t> CostChain::target_loop() const
{
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].source == target_ && edges_[i].target == target_ && edges_[i].cost == 0)
            return i;
    return std::nullopt;
}

BigInt CostChain::max_cost() const
{
    BigInt m = 0;
    for (const auto& e : edges_)
        if (e.cost > m)
            m = e.cost;
    return m;
}

Diagnostics validate(const CostChain& chain)
{
    Diagnostics d;
    const std::size_t n = chain.states().size();
    std::vector<Rational> sums(n, Rational(0));
    for (const auto& e : chain.edges()) {
        if (e.probability <= 0 || e.probability > 1)
            d.problems.push_back(describe(chain, e) + ": probability " + to_string(e.probability) +
                                 " outside (0, 1]");
        sums[e.source] += e.probability;
    }
    for (std::size_t q = 0; q < n; ++q)
        if (sums[q] != 1)
            d.problems.push_back("state " + chain.states()[q] + ": outgoing probabilities sum to " +
                                 to_string(sums[q]) + ", not 1");

    const std::size_t t = chain.target();
    std::size_t target_edges = 0;
    for (const auto& e : chain.edges())
        if (e.source == t) {
            ++target_edges;
            if (e.target != t || e.cost != 0 || e.probability != 1)
                d.problems.push_back("target " + chain.states()[t] + ": " + describe(chain, e) +
                                     " is not the (t, 0, t, 1) self-loop");
        }
    if (target_edges != 1)
        d.problems.push_back("target " + chain.states()[t] + " must have exactly the (t, 0, t, 1) self-loop");

    auto from_initial = reachable_from(chain, chain.initial());
    std::vector<std::vector<std::size_t>> reverse(n);
    for (const auto& e : chain.edges())
        reverse[e.target].push_back(e.source);
    std::vector<bool> reaches_target(n, false);
    std::vector<std::size_t> stack{t};
    reaches_target[t] = true;
    while (!stack.empty()) {
        std::size_t q = stack.back();
        stack.pop_back();
        for (std::size_t r : reverse[q])
            if (!reaches_target[r]) {
                reaches_target[r] = true;
                stack.push_back(r);
            }
    }
    for (std::size_t q = 0; q < n; ++q)
        if (from_initial[q] && !reaches_target[q])
            d.problems.push_back("state " + chain.states()[q] + " is reachable but cannot reach the target " +
                                 chain.states()[t]);
    return d;
}

void require_valid(const CostChain& chain)
{
    Diagnostics d = validate(chain);
    if (d.ok())
        return;
    std::string message = "invalid cost chain:";
    for (const auto& p : d.problems)
        message += "\n  " + p;
    throw StructuralError(message);
}

CostChain contract_zero_cost(const CostChain& chain)
{
    require_valid(chain);
    const std::size_t t = chain.target();
    const auto transient = transient_states(chain);
    std::vector<std::size_t> row(chain.states().size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < transient.size(); ++i)
        row[transient[i]] = i;

    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < chain.edges().size(); ++i) {
        const auto& e = chain.edges()[i];
        if (e.source != t && row[e.source] != static_cast<std::size_t>(-1) && (e.cost > 0 || e.target == t))
            kept.push_back(i);
    }

    const std::size_t n = transient.size();
    RationalMatrix a(n, std::vector<Rational>(n, Rational(0)));
    RationalMatrix b(n, std::vector<Rational>(kept.size(), Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        a[i][i] = 1;
    for (const auto& e : chain.edges())
        if (e.source != t && row[e.source] != static_cast<std::size_t>(-1) && e.cost == 0 && e.target != t)
            a[row[e.source]][row[e.target]] -= e.probability;
    for (std::size_t k = 0; k < kept.size(); ++k) {
        const auto& e = chain.edges()[kept[k]];
        b[row[e.source]][k] = e.probability;
    }
    RationalMatrix x = solve(std::move(a), std::move(b));

    // New state list: reachable states in their original order.
    auto seen = reachable_from(chain, chain.initial());
    seen[t] = true;
    std::vector<std::string> names;
    std::vector<std::size_t> renumber(chain.states().size(), 0);
    for (std::size_t q = 0; q < chain.states().size(); ++q)
        if (seen[q]) {
            renumber[q] = names.size();
            names.push_back(chain.states()[q]);
        }
    std::vector<ChainEdge> edges;
    for (std::size_t q : transient)
        for (std::size_t k = 0; k < kept.size(); ++k) {
            const Rational& p = x[row[q]][k];
            if (p == 0)
                continue;
            const auto& e = chain.edges()[kept[k]];
            edges.push_back({renumber[q], e.cost, renumber[e.target], p});
        }
    edges.push_back({renumber[t], 0, renumber[t], Rational(1)});
    return CostChain(std::move(names), renumber[chain.initial()], renumber[t], std::move(edges));
}

std::string edge_letter(std::size_t edge) { return "e" + std::to_string(edge); }

Dfa chain_path_dfa(const CostChain& chain)
{
    std::vector<Letter> alphabet;
    std::vector<Transition> transitions;
    for (std::size_t i = 0; i < chain.edges().size(); ++i) {
        const auto& e = chain.edges()[i];
        if (e.source == chain.target())
            continue;
        transitions.push_back({e.source, alphabet.size(), e.target});
        alphabet.push_back(edge_letter(i));
    }
    return Dfa(std::move(alphabet), chain.states(), chain.initial(), {chain.target()}, std::move(transitions));
}

namespace {

void require_contracted(const CostChain& chain)
{
    for (const auto& e : chain.edges())
        if (e.cost == 0 && e.target != chain.target())
            throw InputError("chain is not contracted: zero-cost " + describe(chain, e) + " avoids the target");
}

/// Direct recursion over (state, remaining multiplicities).
class PathOracle {
public:
    PathOracle(const CostChain& chain, std::vector<std::uint64_t> p) : chain_(chain), remaining_(std::move(p))
    {
        for (std::size_t i = 0; i < chain.edges().size(); ++i)
            if (chain.edges()[i].source != chain.target())
                out_[chain.edges()[i].source].push_back(i);
    }

    BigInt count() { return paths(chain_.initial()); }

private:
    BigInt paths(std::size_t q)
    {
        if (q == chain_.target())
            return std::all_of(remaining_.begin(), remaining_.end(), [](std::uint64_t r) { return r == 0; }) ? 1 : 0;
        auto key = std::make_pair(q, remaining_);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        BigInt total = 0;
        for (std::size_t e : out_[q]) {
            if (remaining_[e] == 0)
                continue;
            --remaining_[e];
            total += paths(chain_.edges()[e].target);
            ++remaining_[e];
        }
        memo_.emplace(std::move(key), total);
        return total;
    }

    const CostChain& chain_;
    std::vector<std::uint64_t> remaining_;
    std::map<std::size_t, std::vector<std::size_t>> out_;
    std::map<std::pair<std::size_t, std::vector<std::uint64_t>>, BigInt> memo_;
};

BigInt count_paths_with(const CostChain& chain, const Dfa& dfa, const std::vector<BigInt>& p,
                        const EngineOptions& options)
{
    if (p.size() != chain.edges().size())
        throw InputError("edge vector has " + std::to_string(p.size()) + " entries, chain has " +
                         std::to_string(chain.edges().size()) + " edges");
    ParikhVector image;
    std::vector<std::uint64_t> small(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0)
            continue;
        if (chain.edges()[i].source == chain.target())
            throw InputError("the target self-loop cannot occur in a path");
        image.set(edge_letter(i), p[i]);
        small[i] = to_u64(p[i]);
    }
    EngineOptions sequential = options;
    sequential.workers = 1;
    BigInt via_euler = count_dfa(dfa, image, CountMethod::best, sequential);
    BigInt direct = PathOracle(chain, std::move(small)).count();
    if (via_euler != direct)
        throw InternalError("path count mismatch: Euler route " + to_string(via_euler) + ", direct " +
                            to_string(direct));
    return via_euler;
}

Probability finite_sum(const std::vector<Probability>& distribution, const CostFormula& phi)
{
    Probability total = 0;
    for (std::size_t i = 0; i < distribution.size(); ++i)
        if (phi.satisfied_by(BigInt(static_cast<unsigned long>(i))))
            total += distribution[i];
    return total;
}

Probability parikh_best(const CostChain& chain, const CostFormula& phi, const EngineOptions& options)
{
    const BigInt c_big = phi.max_constant();
    if (c_big > BigInt(static_cast<unsigned long>(options.parikh_cost_cap)))
        throw SizeError("formula constant " + to_string(c_big) + " exceeds the Parikh-vector engine cap of " +
                        std::to_string(options.parikh_cost_cap));
    const std::uint64_t c = to_u64(c_big);
    const CostChain contracted = contract_zero_cost(chain);
    const std::size_t t = contracted.target();
    if (contracted.initial() == t)
        return phi.satisfied_by(0) ? 1 : 0;

    const auto& edges = contracted.edges();
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].source != t)
            usable.push_back(i);

    // All edge vectors with K(p) <= c, at most c+1 edges, one arrival at t,
    // satisfying phi and balanced like a single initial-to-target path.
    std::vector<std::vector<std::uint64_t>> candidates;
    std::vector<std::uint64_t> p(edges.size(), 0);
    std::vector<long long> balance(contracted.states().size(), 0);
    auto search = [&](auto& self, std::size_t k, std::uint64_t cost, std::uint64_t length, int arrivals) -> void {
        if (k == usable.size()) {
            if (arrivals != 1 || !phi.satisfied_by(BigInt(static_cast<unsigned long>(cost))))
                return;
            for (std::size_t q = 0; q < balance.size(); ++q) {
                long long expected = q == contracted.initial() ? 1 : (q == t ? -1 : 0);
                if (balance[q] != expected)
                    return;
            }
            candidates.push_back(p);
            return;
        }
        const auto& e = edges[usable[k]];
        const std::uint64_t unit = to_u64(e.cost);
        const bool into_target = e.target == t;
        for (std::uint64_t m = 0;; ++m) {
            if (cost + m * unit > c || length + m > c + 1 || (into_target && arrivals + m > 1))
                break;
            p[usable[k]] = m;
            balance[e.source] += static_cast<long long>(m);
            balance[e.target] -= static_cast<long long>(m);
            self(self, k + 1, cost + m * unit, length + m, arrivals + (into_target ? static_cast<int>(m) : 0));
            balance[e.source] -= static_cast<long long>(m);
            balance[e.target] += static_cast<long long>(m);
            if (unit == 0 && !into_target)
                break;
        }
        p[usable[k]] = 0;
    };
    search(search, 0, 0, 0, 0);

    const Dfa dfa = chain_path_dfa(contracted);
    return detail::parallel_sum(candidates.size(), options.workers, [&](std::size_t i) -> Probability {
        const auto& vec = candidates[i];
        std::vector<BigInt> big(vec.begin(), vec.end());
        BigInt n = count_paths_with(contracted, dfa, big, options);
        if (n == 0)
            return Probability(0);
        Probability term(n);
        for (std::size_t e = 0; e < vec.size(); ++e)
            if (vec[e] > 0)
                term *= power(edges[e].probability, vec[e]);
        return term;
    });
}

} // namespace

BigInt count_chain_paths(const CostChain& contracted, const std::vector<BigInt>& p, const EngineOptions& options)
{
    require_contracted(contracted);
    return count_paths_with(contracted, chain_path_dfa(contracted), p, options);
}

std::vector<Probability> cost_distribution(const CostChain& chain, std::uint64_t c, const EngineOptions& options)
{
    require_valid(chain);
    const auto transient = transient_states(chain);
    const std::size_t n = transient.size();
    if (BigInt(static_cast<unsigned long>(c)) + 1 >
        BigInt(static_cast<unsigned long>(options.cost_dp_cap)) / BigInt(static_cast<unsigned long>(n + 1)))
        throw SizeError("cost DP table exceeds the cap of " + std::to_string(options.cost_dp_cap) + " entries");
    std::vector<Probability> dist(c + 1, Probability(0));
    const std::size_t t = chain.target();
    if (chain.initial() == t) {
        dist[0] = 1;
        return dist;
    }
    std::vector<std::size_t> row(chain.states().size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < n; ++i)
        row[transient[i]] = i;

    // Expected visits within one cost layer: v = s + Z^T v.
    RationalMatrix a(n, std::vector<Rational>(n, Rational(0)));
    RationalMatrix identity(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        a[i][i] = identity[i][i] = 1;
    struct Step {
        std::size_t from;
        std::uint64_t cost;
        std::size_t to; // row index, or n for the target
        Rational probability;
    };
    std::vector<Step> steps;
    for (const auto& e : chain.edges()) {
        if (e.source == t || row[e.source] == static_cast<std::size_t>(-1))
            continue;
        std::size_t to = e.target == t ? n : row[e.target];
        if (e.cost == 0 && to != n)
            a[to][row[e.source]] -= e.probability;
        else if (e.cost <= BigInt(static_cast<unsigned long>(c)))
            steps.push_back({row[e.source], to_u64(e.cost), to, e.probability});
    }
    const RationalMatrix inverse = solve(std::move(a), std::move(identity));

    std::vector<std::vector<Rational>> visits(c + 1);
    for (std::uint64_t i = 0; i <= c; ++i) {
        std::vector<Rational> source(n, Rational(0));
        if (i == 0)
            source[row[chain.initial()]] = 1;
        for (const Step& s : steps)
            if (s.cost >= 1 && s.cost <= i && s.to != n)
                source[s.to] += visits[i - s.cost][s.from] * s.probability;
        std::vector<Rational> v(n, Rational(0));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t k = 0; k < n; ++k)
                if (source[k] != 0 && inverse[r][k] != 0)
                    v[r] += inverse[r][k] * source[k];
        visits[i] = std::move(v);
        for (const Step& s : steps)
            if (s.to == n && s.cost <= i)
                dist[i] += visits[i - s.cost][s.from] * s.probability;
    }
    return dist;
}

CostMethod parse_cost_method(std::string_view name)
{
    if (name == "parikh_best" || name == "parikh-best")
        return CostMethod::parikh_best;
    if (name == "cost_dp" || name == "cost-dp" || name == "dp")
        return CostMethod::cost_dp;
    throw InputError("unknown cost method '" + std::string(name) + "'");
}

Probability cost_prob(const CostChain& chain, const CostFormula& phi, CostMethod method, const EngineOptions& options)
{
    require_valid(chain);
    if (formula_cofinite(phi))
        return 1 - cost_prob(chain, CostFormula::negation(phi), method, options);
    if (method == CostMethod::parikh_best)
        return parikh_best(chain, phi, options);
    const BigInt c = phi.max_constant();
    if (!fits_u64(c) || c >= BigInt(static_cast<unsigned long>(options.cost_dp_cap)))
        throw SizeError("formula constant " + to_string(c) + " exceeds the cost DP cap");
    return finite_sum(cost_distribution(chain, to_u64(c), options), phi);
}

bool cost_decide(const CostChain& chain, const CostFormula& phi, const Probability& tau, CostMethod method,
                 const EngineOptions& options)
{
    return cost_prob(chain, phi, method, options) >= tau;
}

bool bitcost(const CostChain& chain, const CostFormula& phi, std::uint64_t j, CostMethod method,
             const EngineOptions& options)
{
    Probability p = cost_prob(chain, phi, method, options);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, j);
    Probability scaled = p * Probability(scale);
    return bit(floor(scaled), 0);
}

BigInt quantile(const CostChain& chain, const Probability& tau, CostMethod method, const EngineOptions& options)
{
    if (tau <= 0 || tau > 1)
        throw InputError("quantile level " + to_string(tau) + " must lie in (0, 1]");
    require_valid(chain);
    if (tau == 1) {
        // After contraction every cycle among transient states carries cost.
        CostChain contracted = contract_zero_cost(chain);
        const std::size_t t = contracted.target();
        const std::size_t n = contracted.states().size();
        std::vector<int> colour(n, 0);
        bool cyclic = false;
        auto dfs = [&](auto& self, std::size_t q) -> void {
            colour[q] = 1;
            for (const auto& e : contracted.edges()) {
                if (e.source != q || e.target == t)
                    continue;
                if (colour[e.target] == 1)
                    cyclic = true;
                else if (colour[e.target] == 0)
                    self(self, e.target);
            }
            colour[q] = 2;
        };
        if (contracted.initial() != t)
            dfs(dfs, contracted.initial());
        if (cyclic)
            throw StructuralError("cost support is unbounded, so no finite bound is reached with probability 1");
    }
    auto reached = [&](const BigInt& b) { return cost_prob(chain, CostFormula::atom(b), method, options) >= tau; };
    BigInt failing = -1;
    BigInt b = chain.max_cost();
    while (!reached(b)) {
        failing = b;
        b = b == 0 ? BigInt(1) : BigInt(2 * b);
    }
    BigInt lo = failing + 1, hi = b;
    while (lo < hi) {
        BigInt mid = (lo + hi) / 2;
        if (reached(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

Rational expected_cost(const CostChain& chain)
{
    require_valid(chain);
    if (chain.initial() == chain.target())
        return 0;
    const auto transient = transient_states(chain);
    const std::size_t n = transient.size();
    std::vector<std::size_t> row(chain.states().size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < n; ++i)
        row[transient[i]] = i;
    RationalMatrix a(n, std::vector<Rational>(n, Rational(0)));
    RationalMatrix b(n, std::vector<Rational>(1, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        a[i][i] = 1;
    for (const auto& e : chain.edges()) {
        if (e.source == chain.target() || row[e.source] == static_cast<std::size_t>(-1))
            continue;
        b[row[e.source]][0] += e.probability * Rational(e.cost);
        if (e.target != chain.target())
            a[row[e.source]][row[e.target]] -= e.probability;
    }
    return solve(std::move(a), std::move(b))[row[chain.initial()]][0];
}

} // namespace parikh
