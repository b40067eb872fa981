#include "parikh/unary.hpp"

#include <algorithm>
#include <unordered_map>

#include "parikh/error.hpp"

namespace parikh {

namespace {

void require_unary(const std::vector<Letter>& alphabet)
{
    if (alphabet.size() != 1)
        throw InputError("expected a unary alphabet, got " + std::to_string(alphabet.size()) + " letters");
}

using BoolMatrix = std::vector<std::vector<char>>;

BoolMatrix multiply(const BoolMatrix& x, const BoolMatrix& y)
{
    const std::size_t n = x.size();
    BoolMatrix z(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (x[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (y[k][j])
                        z[i][j] = 1;
    return z;
}

} // namespace

LassoShape lasso_decompose(const Dfa& dfa)
{
    require_unary(dfa.alphabet());
    std::unordered_map<std::size_t, std::uint64_t> position;
    std::vector<std::size_t> run;
    std::size_t q = dfa.initial();
    LassoShape shape;
    while (true) {
        position.emplace(q, run.size());
        run.push_back(q);
        std::size_t next = dfa.step(q, 0);
        if (next == Dfa::no_state) {
            shape.tail = run.size();
            shape.period = 1;
            for (std::size_t s : run)
                shape.accepting.push_back(dfa.is_final(s));
            shape.accepting.push_back(false);
            return shape;
        }
        if (auto it = position.find(next); it != position.end()) {
            shape.tail = it->second;
            shape.period = run.size() - it->second;
            for (std::size_t s : run)
                shape.accepting.push_back(dfa.is_final(s));
            return shape;
        }
        q = next;
    }
}

bool lasso_member(const LassoShape& shape, const BigInt& n)
{
    if (n < 0)
        throw InputError("negative word length");
    if (n < BigInt(static_cast<unsigned long>(shape.tail)))
        return shape.accepting[to_u64(n)];
    BigInt offset = n - BigInt(static_cast<unsigned long>(shape.tail));
    BigInt r = offset % BigInt(static_cast<unsigned long>(shape.period));
    return shape.accepting[shape.tail + to_u64(r)];
}

bool unary_dfa_member(const Dfa& dfa, const BigInt& n) { return lasso_member(lasso_decompose(dfa), n); }

bool bounded_reach(const Nfa& nfa, std::size_t from, std::size_t to, std::uint64_t c)
{
    require_unary(nfa.alphabet());
    const std::uint64_t m = nfa.states().size();
    if (from >= m || to >= m)
        throw InputError("bounded_reach: state out of range");
    if (c > m * m + m)
        throw SizeError("run length " + std::to_string(c) + " exceeds m^2 + m = " + std::to_string(m * m + m));
    std::vector<char> layer(m, 0);
    layer[from] = 1;
    for (std::uint64_t step = 0; step < c; ++step) {
        std::vector<char> next(m, 0);
        bool any = false;
        for (const Transition& t : nfa.transitions())
            if (layer[t.source])
                next[t.target] = any = true;
        if (!any)
            return false;
        layer = std::move(next);
    }
    return layer[to] != 0;
}

UnaryMethod parse_unary_method(std::string_view name)
{
    if (name == "sawa")
        return UnaryMethod::sawa;
    if (name == "matpow")
        return UnaryMethod::matpow;
    throw InputError("unknown unary method '" + std::string(name) + "'");
}

bool unary_nfa_member(const Nfa& nfa, const BigInt& n, UnaryMethod method)
{
    require_unary(nfa.alphabet());
    if (n < 0)
        throw InputError("negative word length");
    const std::size_t m = nfa.states().size();
    const std::size_t q0 = nfa.initial();
    const auto& finals = nfa.finals();

    if (method == UnaryMethod::matpow) {
        BoolMatrix step(m, std::vector<char>(m, 0));
        for (const Transition& t : nfa.transitions())
            step[t.source][t.target] = 1;
        // Row vector of q0 times the squares step^(2^i) for the set bits of n.
        const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
        std::vector<char> current(m, 0);
        current[q0] = 1;
        for (std::size_t i = 0; i < bits && n != 0; ++i) {
            if (mpz_tstbit(n.get_mpz_t(), i)) {
                std::vector<char> next(m, 0);
                for (std::size_t k = 0; k < m; ++k)
                    if (current[k])
                        for (std::size_t j = 0; j < m; ++j)
                            if (step[k][j])
                                next[j] = 1;
                current = std::move(next);
            }
            if (i + 1 < bits)
                step = multiply(step, step);
        }
        return std::any_of(finals.begin(), finals.end(), [&](std::size_t f) { return current[f] != 0; });
    }

    const BigInt square = BigInt(static_cast<unsigned long>(m)) * BigInt(static_cast<unsigned long>(m));
    if (m <= 1) {
        if (n == 0)
            return nfa.is_final(q0);
        bool loop = std::any_of(nfa.transitions().begin(), nfa.transitions().end(),
                                [](const Transition& t) { return t.source == t.target; });
        return loop && nfa.is_final(q0);
    }
    if (n < square) {
        const std::uint64_t c = to_u64(n);
        return std::any_of(finals.begin(), finals.end(), [&](std::size_t f) { return bounded_reach(nfa, q0, f, c); });
    }
    const std::uint64_t mm = static_cast<std::uint64_t>(m) * m;
    for (std::size_t q = 0; q < m; ++q) {
        if (!bounded_reach(nfa, q0, q, m - 1))
            continue;
        for (std::uint64_t b = 1; b <= m; ++b) {
            if (!bounded_reach(nfa, q, q, b))
                continue;
            for (std::uint64_t a = mm - b - 1; a <= mm - 2; ++a) {
                if (a < m - 1)
                    continue;
                BigInt gap = n - BigInt(static_cast<unsigned long>(a));
                if (gap % BigInt(static_cast<unsigned long>(b)) != 0)
                    continue;
                for (std::size_t f : finals)
                    if (bounded_reach(nfa, q, f, a - (m - 1)))
                        return true;
            }
        }
    }
    return false;
}

bool unary_cfg_member(const Cfg& cfg, const BigInt& n, std::uint64_t cap)
{
    require_unary(cfg.terminals());
    if (n < 0)
        throw InputError("negative word length");
    if (n > BigInt(static_cast<unsigned long>(cap)))
        throw SizeError("word length " + to_string(n) + " exceeds the unary grammar cap of " + std::to_string(cap));
    const std::size_t len = to_u64(n);
    const Cfg cnf = to_normal_form(cfg);
    const auto& nts = cnf.nonterminals();
    std::unordered_map<std::string, std::size_t> id;
    for (std::size_t i = 0; i < nts.size(); ++i)
        id.emplace(nts[i], i);
    const std::size_t start = id.at(cnf.start());
    if (len == 0)
        return std::any_of(cnf.productions().begin(), cnf.productions().end(),
                           [&](const Production& p) { return p.head == cnf.start() && p.body.empty(); });

    struct Binary {
        std::size_t head, left, right;
    };
    std::vector<Binary> binaries;
    // derives[A][l]: A derives a^l.
    std::vector<std::vector<char>> derives(nts.size(), std::vector<char>(len + 1, 0));
    for (const auto& p : cnf.productions()) {
        if (p.body.size() == 1)
            derives[id.at(p.head)][1] = 1;
        else if (p.body.size() == 2)
            binaries.push_back({id.at(p.head), id.at(p.body[0]), id.at(p.body[1])});
    }
    for (std::size_t l = 2; l <= len; ++l)
        for (const Binary& b : binaries) {
            if (derives[b.head][l])
                continue;
            const auto& left = derives[b.left];
            const auto& right = derives[b.right];
            for (std::size_t i = 1; i < l; ++i)
                if (left[i] && right[l - i]) {
                    derives[b.head][l] = 1;
                    break;
                }
        }
    return derives[start][len] != 0;
}

bool unary_member(const Acceptor& acceptor, const BigInt& n)
{
    if (const auto* dfa = std::get_if<Dfa>(&acceptor))
        return unary_dfa_member(*dfa, n);
    if (const auto* nfa = std::get_if<Nfa>(&acceptor))
        return unary_nfa_member(*nfa, n);
    return unary_cfg_member(std::get<Cfg>(acceptor), n);
}

bool unary_pic(const Acceptor& a, const Acceptor& b, const BigInt& n)
{
    if (alphabet_of(a) != alphabet_of(b))
        throw InputError("unary PIC operands use different letters");
    return unary_member(a, n) && !unary_member(b, n);
}

} // namespace parikh
