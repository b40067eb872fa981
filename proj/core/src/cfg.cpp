#include "parikh/cfg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "parikh/error.hpp"

namespace parikh {

Cfg Cfg::make(std::vector<std::string> nonterminals, std::vector<Letter> terminals, std::string start,
              std::vector<Production> productions)
{
    std::unordered_set<std::string> nts, ts;
    for (const auto& n : nonterminals) {
        if (n.empty())
            throw InputError("empty nonterminal name");
        if (!nts.insert(n).second)
            throw InputError("duplicate nonterminal '" + n + "'");
    }
    for (const auto& t : terminals) {
        if (t.empty())
            throw InputError("empty terminal name");
        if (!ts.insert(t).second)
            throw InputError("duplicate terminal '" + t + "'");
        if (nts.count(t))
            throw InputError("symbol '" + t + "' is both terminal and nonterminal");
    }
    if (!nts.count(start))
        throw InputError("start symbol '" + start + "' is not a nonterminal");
    for (const auto& p : productions) {
        if (!nts.count(p.head))
            throw InputError("production head '" + p.head + "' is not a nonterminal");
        for (const auto& s : p.body)
            if (!nts.count(s) && !ts.count(s))
                throw InputError("undeclared symbol '" + s + "' in production for '" + p.head + "'");
    }
    Cfg g;
    g.nonterminals_ = std::move(nonterminals);
    g.terminals_ = std::move(terminals);
    g.start_ = std::move(start);
    g.productions_ = std::move(productions);
    return g;
}

bool Cfg::is_terminal(const std::string& symbol) const
{
    return std::find(terminals_.begin(), terminals_.end(), symbol) != terminals_.end();
}

bool Cfg::is_nonterminal(const std::string& symbol) const
{
    return std::find(nonterminals_.begin(), nonterminals_.end(), symbol) != nonterminals_.end();
}

namespace {

class NameSupply {
public:
    explicit NameSupply(const Cfg& cfg)
    {
        used_.insert(cfg.nonterminals().begin(), cfg.nonterminals().end());
        used_.insert(cfg.terminals().begin(), cfg.terminals().end());
    }

    std::string fresh(std::string base)
    {
        do
            base += '\'';
        while (used_.count(base));
        used_.insert(base);
        return base;
    }

private:
    std::unordered_set<std::string> used_;
};

} // namespace

Cfg to_normal_form(const Cfg& cfg)
{
    NameSupply names(cfg);
    std::vector<std::string> nonterminals;
    const std::string start = names.fresh(cfg.start());
    nonterminals.push_back(start);
    nonterminals.insert(nonterminals.end(), cfg.nonterminals().begin(), cfg.nonterminals().end());

    std::vector<Production> work;
    work.push_back({start, {cfg.start()}});
    work.insert(work.end(), cfg.productions().begin(), cfg.productions().end());

    // Terminals inside bodies of length >= 2 get a proxy nonterminal.
    std::map<std::string, std::string> proxy;
    std::vector<Production> proxies;
    for (auto& p : work) {
        if (p.body.size() < 2)
            continue;
        for (auto& s : p.body) {
            if (!cfg.is_terminal(s))
                continue;
            auto it = proxy.find(s);
            if (it == proxy.end()) {
                std::string n = names.fresh("T_" + s);
                nonterminals.push_back(n);
                proxies.push_back({n, {s}});
                it = proxy.emplace(s, n).first;
            }
            s = it->second;
        }
    }
    work.insert(work.end(), proxies.begin(), proxies.end());

    // Bodies longer than two become right-nested chains.
    std::vector<Production> binarized;
    for (auto& p : work) {
        if (p.body.size() <= 2) {
            binarized.push_back(std::move(p));
            continue;
        }
        std::string head = p.head;
        for (std::size_t i = 0; i + 2 < p.body.size(); ++i) {
            std::string rest = names.fresh(p.head);
            nonterminals.push_back(rest);
            binarized.push_back({head, {p.body[i], rest}});
            head = rest;
        }
        binarized.push_back({head, {p.body[p.body.size() - 2], p.body.back()}});
    }

    // Nullable elimination.
    std::set<std::string> nullable;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : binarized) {
            if (nullable.count(p.head))
                continue;
            if (std::all_of(p.body.begin(), p.body.end(), [&](const std::string& s) { return nullable.count(s) > 0; })) {
                nullable.insert(p.head);
                changed = true;
            }
        }
    }
    std::vector<Production> nonempty;
    std::set<std::pair<std::string, std::vector<std::string>>> seen;
    auto emit = [&](std::vector<Production>& out, Production p) {
        if (seen.emplace(p.head, p.body).second)
            out.push_back(std::move(p));
    };
    for (const auto& p : binarized) {
        const std::size_t k = p.body.size();
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            Production variant{p.head, {}};
            bool ok = true;
            for (std::size_t i = 0; i < k; ++i) {
                if (mask & (1u << i)) {
                    if (!nullable.count(p.body[i])) {
                        ok = false;
                        break;
                    }
                } else {
                    variant.body.push_back(p.body[i]);
                }
            }
            if (ok && !variant.body.empty())
                emit(nonempty, std::move(variant));
        }
    }

    // Unit elimination through the unit-reachability closure.
    std::map<std::string, std::vector<std::string>> unit_successors;
    for (const auto& p : nonempty)
        if (p.body.size() == 1 && !cfg.is_terminal(p.body[0]))
            unit_successors[p.head].push_back(p.body[0]);
    std::vector<Production> result;
    seen.clear();
    for (const auto& a : nonterminals) {
        std::vector<std::string> closure{a};
        std::set<std::string> in_closure{a};
        for (std::size_t i = 0; i < closure.size(); ++i)
            for (const auto& b : unit_successors[closure[i]])
                if (in_closure.insert(b).second)
                    closure.push_back(b);
        for (const auto& b : closure)
            for (const auto& p : nonempty)
                if (p.head == b && !(p.body.size() == 1 && !cfg.is_terminal(p.body[0])))
                    emit(result, {a, p.body});
    }
    if (nullable.count(start))
        result.push_back({start, {}});

    return Cfg::make(std::move(nonterminals), cfg.terminals(), start, std::move(result));
}

CfgRecognizer::CfgRecognizer(const Cfg& cfg) : cnf_(to_normal_form(cfg)), terminal_names_(cnf_.terminals())
{
    std::unordered_map<std::string, std::size_t> nt_ids, t_ids;
    for (std::size_t i = 0; i < cnf_.nonterminals().size(); ++i)
        nt_ids.emplace(cnf_.nonterminals()[i], i);
    for (std::size_t i = 0; i < terminal_names_.size(); ++i)
        t_ids.emplace(terminal_names_[i], i);
    start_ = nt_ids.at(cnf_.start());
    by_terminal_.assign(terminal_names_.size(), {});
    for (const auto& p : cnf_.productions()) {
        if (p.body.empty())
            accepts_empty_ = true;
        else if (p.body.size() == 1)
            by_terminal_[t_ids.at(p.body[0])].push_back(nt_ids.at(p.head));
        else
            binaries_.push_back({nt_ids.at(p.head), nt_ids.at(p.body[0]), nt_ids.at(p.body[1])});
    }
}

bool CfgRecognizer::accepts(const Word& word) const
{
    const std::size_t n = word.size();
    const std::size_t nts = cnf_.nonterminals().size();
    std::vector<std::size_t> letters;
    letters.reserve(n);
    for (const auto& a : word) {
        auto it = std::find(terminal_names_.begin(), terminal_names_.end(), a);
        if (it == terminal_names_.end())
            throw InputError("letter '" + a + "' is not a terminal of the grammar");
        letters.push_back(static_cast<std::size_t>(it - terminal_names_.begin()));
    }
    if (n == 0)
        return accepts_empty_;

    // table[(i * n + len - 1) * nts + A]: A derives word[i, i+len).
    std::vector<char> table(n * n * nts, 0);
    auto cell = [&](std::size_t i, std::size_t len) { return &table[(i * n + len - 1) * nts]; };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a : by_terminal_[letters[i]])
            cell(i, 1)[a] = 1;
    for (std::size_t len = 2; len <= n; ++len)
        for (std::size_t i = 0; i + len <= n; ++i) {
            char* out = cell(i, len);
            for (std::size_t split = 1; split < len; ++split) {
                const char* left = cell(i, split);
                const char* right = cell(i + split, len - split);
                for (const Binary& b : binaries_)
                    if (left[b.left] && right[b.right])
                        out[b.head] = 1;
            }
        }
    return cell(0, n)[start_] != 0;
}

bool accepts(const Cfg& cfg, const Word& word) { return CfgRecognizer(cfg).accepts(word); }

} // namespace parikh
