#include "parikh/parikh_count.hpp"

#include <algorithm>
#include <unordered_map>

#include "detail/parallel.hpp"
#include "parikh/error.hpp"

namespace parikh {

const std::vector<Letter>& alphabet_of(const Acceptor& acceptor)
{
    return std::visit(
        [](const auto& a) -> const std::vector<Letter>& {
            if constexpr (std::is_same_v<std::decay_t<decltype(a)>, Cfg>)
                return a.terminals();
            else
                return a.alphabet();
        },
        acceptor);
}

bool accepts(const Acceptor& acceptor, const Word& word)
{
    return std::visit([&](const auto& a) { return accepts(a, word); }, acceptor);
}

const char* kind_name(const Acceptor& acceptor)
{
    static const char* const names[] = {"dfa", "nfa", "cfg"};
    return names[acceptor.index()];
}

namespace {

class FlowSearch {
public:
    FlowSearch(const Dfa& dfa, const ParikhVector& p, const std::function<void(const FlowAssignment&)>& visit)
        : dfa_(dfa), visit_(visit), states_(dfa.states().size())
    {
        const auto totals = p.dense(dfa.alphabet());
        const std::size_t letters = dfa.alphabet().size();
        std::vector<std::vector<std::size_t>> by_letter(letters);
        for (std::size_t i = 0; i < dfa.transitions().size(); ++i)
            by_letter[dfa.transitions()[i].letter].push_back(i);
        for (std::size_t a = 0; a < letters; ++a) {
            if (by_letter[a].empty()) {
                if (totals[a] != 0)
                    feasible_ = false;
                continue;
            }
            for (std::size_t k = 0; k < by_letter[a].size(); ++k)
                slots_.push_back({by_letter[a][k], totals[a], k == 0, k + 1 == by_letter[a].size()});
        }

        // later_same[s][v]: a later slot of the same letter moves weight across v.
        // future[s][v]: total of later letters whose transitions move weight across v.
        const std::size_t n = slots_.size();
        later_same_.assign(n, std::vector<bool>(states_, false));
        future_.assign(n, std::vector<BigInt>(states_, BigInt(0)));
        for (std::size_t s = n; s-- > 0;) {
            if (s + 1 < n) {
                const Slot& next = slots_[s + 1];
                const Transition& t = dfa.transitions()[next.transition];
                if (next.first_of_letter) {
                    future_[s] = future_[s + 1];
                    std::vector<bool> touched = later_same_[s + 1];
                    if (t.source != t.target)
                        touched[t.source] = touched[t.target] = true;
                    for (std::size_t v = 0; v < states_; ++v)
                        if (touched[v])
                            future_[s][v] += next.total;
                } else {
                    future_[s] = future_[s + 1];
                    later_same_[s] = later_same_[s + 1];
                    if (t.source != t.target)
                        later_same_[s][t.source] = later_same_[s][t.target] = true;
                }
            }
        }
        flow_.weights.assign(dfa.transitions().size(), BigInt(0));
        balance_.assign(states_, BigInt(0));
    }

    void run()
    {
        if (!feasible_)
            return;
        if (slots_.empty()) {
            finish();
            return;
        }
        assign(0, slots_[0].total);
    }

private:
    struct Slot {
        std::size_t transition;
        BigInt total;
        bool first_of_letter;
        bool last_of_letter;
    };

    BigInt bound(std::size_t s, std::size_t v, const BigInt& remaining) const
    {
        BigInt b = future_[s][v];
        if (later_same_[s][v])
            b += remaining;
        return b;
    }

    bool within_bounds(std::size_t s, const BigInt& remaining) const
    {
        for (std::size_t v = 0; v < states_; ++v) {
            const BigInt b = bound(s, v, remaining);
            if (balance_[v] > b || -balance_[v] > b)
                return false;
        }
        return true;
    }

    void assign(std::size_t s, const BigInt& remaining)
    {
        const Slot& slot = slots_[s];
        const Transition& t = dfa_.transitions()[slot.transition];
        BigInt lo = 0, hi = remaining;
        if (slot.last_of_letter) {
            lo = remaining;
        } else if (t.source != t.target) {
            // Bounds at the endpoints, using the largest remaining budget (w = 0).
            const BigInt bs = bound(s, t.source, remaining);
            const BigInt bt = bound(s, t.target, remaining);
            BigInt hi_src = bs - balance_[t.source];
            BigInt hi_dst = bt + balance_[t.target];
            hi = std::min({hi, hi_src, hi_dst});
            BigInt lo_src = -bs - balance_[t.source];
            BigInt lo_dst = balance_[t.target] - bt;
            lo = std::max({lo, lo_src, lo_dst});
        }
        for (BigInt w = lo; w <= hi; ++w) {
            flow_.weights[slot.transition] = w;
            balance_[t.source] += w;
            balance_[t.target] -= w;
            const BigInt left = remaining - w;
            if (within_bounds(s, left)) {
                if (s + 1 == slots_.size())
                    finish();
                else
                    assign(s + 1, slots_[s + 1].first_of_letter ? slots_[s + 1].total : left);
            }
            balance_[t.source] -= w;
            balance_[t.target] += w;
        }
        flow_.weights[slot.transition] = 0;
    }

    void finish()
    {
        for (const auto& b : balance_)
            if (b != 0)
                return;
        WeightedMultigraph g = flow_graph(dfa_, flow_);
        auto support = g.support();
        if (!support.empty() && !std::binary_search(support.begin(), support.end(), dfa_.initial()))
            return;
        if (!is_eulerian_connected(g))
            return;
        visit_(flow_);
    }

    const Dfa& dfa_;
    const std::function<void(const FlowAssignment&)>& visit_;
    std::size_t states_;
    bool feasible_ = true;
    std::vector<Slot> slots_;
    std::vector<std::vector<bool>> later_same_;
    std::vector<std::vector<BigInt>> future_;
    FlowAssignment flow_;
    std::vector<BigInt> balance_;
};

void check_well_formed(const Dfa& dfa)
{
    if (dfa.finals().size() != 1 || dfa.finals()[0] != dfa.initial())
        throw InputError("flow enumeration needs a well-formed DFA (initial state is the only final state)");
}

std::uint64_t lattice_size(const std::vector<BigInt>& totals, std::uint64_t cap)
{
    BigInt size = 1;
    for (const auto& t : totals) {
        size *= t + 1;
        if (size > BigInt(static_cast<unsigned long>(cap)))
            throw SizeError("Parikh lattice exceeds the DP cap of " + std::to_string(cap) + " entries");
    }
    return to_u64(size);
}

BigInt count_dfa_dp(const Dfa& dfa, const ParikhVector& p, const EngineOptions& options)
{
    const auto totals = p.dense(dfa.alphabet());
    lattice_size(totals, options.dp_lattice_cap);
    const std::size_t letters = totals.size();
    const std::size_t states = dfa.states().size();
    std::vector<std::uint64_t> limit(letters), radix(letters);
    std::uint64_t r = 1;
    for (std::size_t a = 0; a < letters; ++a) {
        limit[a] = to_u64(totals[a]);
        radix[a] = r;
        r *= limit[a] + 1;
    }
    const std::uint64_t goal = r - 1;
    const std::uint64_t length = to_u64(p.norm());

    // Layer k maps (sub-vector of norm k, state) to the number of words leading there.
    std::unordered_map<std::uint64_t, BigInt> layer;
    layer.emplace(std::uint64_t{dfa.initial()}, BigInt(1));
    for (std::uint64_t k = 0; k < length; ++k) {
        std::unordered_map<std::uint64_t, BigInt> next;
        next.reserve(layer.size() * 2);
        for (const auto& [key, ways] : layer) {
            const std::uint64_t index = key / states;
            const std::size_t q = key % states;
            for (std::size_t a = 0; a < letters; ++a) {
                if ((index / radix[a]) % (limit[a] + 1) == limit[a])
                    continue;
                const std::size_t to = dfa.step(q, a);
                if (to != Dfa::no_state)
                    next[(index + radix[a]) * states + to] += ways;
            }
        }
        layer = std::move(next);
    }
    BigInt total = 0;
    for (std::size_t f : dfa.finals())
        if (auto it = layer.find(goal * states + f); it != layer.end())
            total += it->second;
    return total;
}

/// Calls @p test on every arrangement of the letters of p (as alphabet indices)
/// and counts the accepted ones.
template <typename Test>
BigInt count_arrangements(const std::vector<Letter>& alphabet, const ParikhVector& p, const EngineOptions& options,
                          const Test& test)
{
    const auto totals = p.dense(alphabet);
    if (p.norm() > BigInt(static_cast<unsigned long>(options.enumerate_cap)))
        throw SizeError("Parikh norm " + to_string(p.norm()) + " exceeds the enumeration cap of " +
                        std::to_string(options.enumerate_cap));
    std::vector<std::size_t> word;
    for (std::size_t a = 0; a < totals.size(); ++a)
        word.insert(word.end(), to_u64(totals[a]), a);
    BigInt count = 0;
    do {
        if (test(word))
            ++count;
    } while (std::next_permutation(word.begin(), word.end()));
    return count;
}

BigInt count_dfa_best(const Dfa& dfa, const ParikhVector& p, const EngineOptions& options)
{
    (void)p.dense(dfa.alphabet());
    WellFormedDfa wf = augment_well_formed(dfa, p);
    std::vector<FlowAssignment> flows = collect_flows(wf.dfa, wf.parikh);
    return detail::parallel_sum(flows.size(), options.workers,
                                [&](std::size_t i) { return euler_count_integer(flow_graph(wf.dfa, flows[i])); });
}

} // namespace

void enumerate_flows(const Dfa& wf_dfa, const ParikhVector& p, const std::function<void(const FlowAssignment&)>& visit)
{
    check_well_formed(wf_dfa);
    FlowSearch(wf_dfa, p, visit).run();
}

std::vector<FlowAssignment> collect_flows(const Dfa& wf_dfa, const ParikhVector& p)
{
    std::vector<FlowAssignment> out;
    enumerate_flows(wf_dfa, p, [&](const FlowAssignment& f) { out.push_back(f); });
    return out;
}

WeightedMultigraph flow_graph(const Dfa& dfa, const FlowAssignment& flow)
{
    if (flow.weights.size() != dfa.transitions().size())
        throw InputError("flow does not match the automaton's transitions");
    WeightedMultigraph g;
    for (const auto& name : dfa.states())
        g.add_node(name);
    for (std::size_t i = 0; i < flow.weights.size(); ++i) {
        const Transition& t = dfa.transitions()[i];
        g.add_edge(t.source, t.target, flow.weights[i]);
    }
    return g;
}

CountMethod parse_count_method(std::string_view name)
{
    if (name == "best")
        return CountMethod::best;
    if (name == "dp" || name == "determinize_dp")
        return CountMethod::dp;
    if (name == "enumerate")
        return CountMethod::enumerate;
    throw InputError("unknown counting method '" + std::string(name) + "'");
}

const char* method_name(CountMethod method)
{
    switch (method) {
    case CountMethod::best:
        return "best";
    case CountMethod::dp:
        return "dp";
    case CountMethod::enumerate:
        return "enumerate";
    }
    return "?";
}

BigInt count_dfa(const Dfa& dfa, const ParikhVector& p, CountMethod method, const EngineOptions& options)
{
    switch (method) {
    case CountMethod::best:
        return count_dfa_best(dfa, p, options);
    case CountMethod::dp:
        return count_dfa_dp(dfa, p, options);
    case CountMethod::enumerate:
        return count_arrangements(dfa.alphabet(), p, options, [&](const std::vector<std::size_t>& word) {
            std::size_t q = dfa.initial();
            for (std::size_t a : word) {
                q = dfa.step(q, a);
                if (q == Dfa::no_state)
                    return false;
            }
            return dfa.is_final(q);
        });
    }
    throw InternalError("unhandled counting method");
}

BigInt count_nfa(const Nfa& nfa, const ParikhVector& p, CountMethod method, const EngineOptions& options)
{
    if (method != CountMethod::enumerate) {
        (void)p.dense(nfa.alphabet());
        return count_dfa(determinize(nfa), p, method, options);
    }
    const std::size_t states = nfa.states().size();
    return count_arrangements(nfa.alphabet(), p, options, [&](const std::vector<std::size_t>& word) {
        std::vector<char> current(states, 0);
        current[nfa.initial()] = 1;
        for (std::size_t a : word) {
            std::vector<char> next(states, 0);
            bool any = false;
            for (const Transition& t : nfa.transitions())
                if (current[t.source] && t.letter == a)
                    next[t.target] = any = true;
            if (!any)
                return false;
            current = std::move(next);
        }
        return std::any_of(nfa.finals().begin(), nfa.finals().end(), [&](std::size_t f) { return current[f] != 0; });
    });
}

BigInt count_cfg(const Cfg& cfg, const ParikhVector& p, const EngineOptions& options)
{
    CfgRecognizer recognizer(cfg);
    const auto& letters = cfg.terminals();
    return count_arrangements(letters, p, options, [&](const std::vector<std::size_t>& word) {
        Word w;
        w.reserve(word.size());
        for (std::size_t a : word)
            w.push_back(letters[a]);
        return recognizer.accepts(w);
    });
}

BigInt count(const Acceptor& acceptor, const ParikhVector& p, std::optional<CountMethod> method,
             const EngineOptions& options)
{
    if (const auto* dfa = std::get_if<Dfa>(&acceptor))
        return count_dfa(*dfa, p, method.value_or(CountMethod::best), options);
    if (const auto* nfa = std::get_if<Nfa>(&acceptor))
        return count_nfa(*nfa, p, method.value_or(CountMethod::best), options);
    if (method && *method != CountMethod::enumerate)
        throw InputError(std::string("grammars are counted by enumeration only, not '") + method_name(*method) + "'");
    return count_cfg(std::get<Cfg>(acceptor), p, options);
}

bool pic(const Acceptor& a, const Acceptor& b, const ParikhVector& p, std::optional<CountMethod> method,
         const EngineOptions& options)
{
    auto sa = alphabet_of(a), sb = alphabet_of(b);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb)
        throw InputError("PIC operands have different alphabets");
    std::optional<CountMethod> method_b = method;
    if (method && std::holds_alternative<Cfg>(b) && !std::holds_alternative<Cfg>(a))
        method_b.reset();
    std::optional<CountMethod> method_a = method;
    if (method && std::holds_alternative<Cfg>(a) && !std::holds_alternative<Cfg>(b))
        method_a.reset();
    return count(a, p, method_a, options) > count(b, p, method_b, options);
}

bool bitp(const Acceptor& a, const ParikhVector& p, const BigInt& index, std::optional<CountMethod> method,
          const EngineOptions& options)
{
    return bit(count(a, p, method, options), index);
}

} // namespace parikh
