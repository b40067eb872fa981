#include "parikh/io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "parikh/error.hpp"

namespace parikh {

namespace {

struct Token {
    std::string text;
    std::size_t column;
};

struct Line {
    std::size_t number;
    std::vector<Token> tokens;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<Token> tokenize(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i]))
            ++i;
        if (i == line.size())
            break;
        std::size_t start = i;
        while (i < line.size() && !is_space(line[i]))
            ++i;
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

/// Non-blank, non-comment lines.
std::vector<Line> content_lines(std::string_view text)
{
    std::vector<Line> out;
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        ++number;
        auto tokens = tokenize(text.substr(pos, end - pos));
        if (!tokens.empty() && tokens[0].text != "#")
            out.push_back({number, std::move(tokens)});
        pos = end + 1;
    }
    return out;
}

[[noreturn]] void fail(const Line& line, std::size_t token, const std::string& message)
{
    std::size_t column = token < line.tokens.size() ? line.tokens[token].column
                                                    : (line.tokens.empty() ? 1 : line.tokens.back().column +
                                                                                      line.tokens.back().text.size());
    throw ParseError(line.number, column, message);
}

[[noreturn]] void fail_end(std::string_view text, const std::string& message)
{
    std::size_t lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1;
    throw ParseError(lines, 1, message);
}

/// Expects line @p index to start with @p keyword; returns the remaining tokens.
std::vector<std::string> keyword_line(const std::vector<Line>& lines, std::size_t index, const std::string& keyword,
                                      std::string_view text)
{
    if (index >= lines.size())
        fail_end(text, "missing '" + keyword + "' line");
    const Line& line = lines[index];
    if (line.tokens[0].text != keyword)
        fail(line, 0, "expected '" + keyword + "', found '" + line.tokens[0].text + "'");
    std::vector<std::string> rest;
    for (std::size_t i = 1; i < line.tokens.size(); ++i)
        rest.push_back(line.tokens[i].text);
    return rest;
}

std::string single(const std::vector<Line>& lines, std::size_t index, const std::string& keyword,
                   std::string_view text)
{
    auto rest = keyword_line(lines, index, keyword, text);
    if (rest.size() != 1)
        fail(lines[index], rest.empty() ? 1 : 2, "'" + keyword + "' takes exactly one name");
    return rest[0];
}

template <typename Body>
auto located(const Line& line, std::size_t token, const Body& body) -> decltype(body())
{
    try {
        return body();
    } catch (const ParseError&) {
        throw;
    } catch (const InputError& e) {
        fail(line, token, e.what());
    }
}

bool is_epsilon(const std::string& s) { return s == "ε" || s == "eps" || s == "epsilon"; }

Acceptor parse_automaton(const std::vector<Line>& lines, bool deterministic, std::string_view text)
{
    std::vector<std::string> alphabet = keyword_line(lines, 1, "alphabet", text);
    std::vector<std::string> states = keyword_line(lines, 2, "states", text);
    std::string initial = single(lines, 3, "initial", text);
    std::vector<std::string> finals = keyword_line(lines, 4, "final", text);

    std::unordered_set<std::string> letter_set(alphabet.begin(), alphabet.end());
    std::unordered_set<std::string> state_set(states.begin(), states.end());
    if (letter_set.size() != alphabet.size())
        fail(lines[1], 1, "duplicate letter in alphabet");
    if (state_set.size() != states.size())
        fail(lines[2], 1, "duplicate state");
    if (!state_set.count(initial))
        fail(lines[3], 1, "undeclared state '" + initial + "'");
    for (std::size_t i = 0; i < finals.size(); ++i)
        if (!state_set.count(finals[i]))
            fail(lines[4], i + 1, "undeclared state '" + finals[i] + "'");

    std::vector<NamedTransition> transitions;
    std::map<std::pair<std::string, std::string>, std::size_t> seen;
    for (std::size_t k = 5; k < lines.size(); ++k) {
        const Line& line = lines[k];
        if (line.tokens.size() != 3)
            fail(line, std::min<std::size_t>(line.tokens.size(), 3), "expected 'source letter target'");
        const auto& src = line.tokens[0].text;
        const auto& letter = line.tokens[1].text;
        const auto& dst = line.tokens[2].text;
        if (!state_set.count(src))
            fail(line, 0, "undeclared state '" + src + "'");
        if (!letter_set.count(letter))
            fail(line, 1, "letter '" + letter + "' is not in the alphabet");
        if (!state_set.count(dst))
            fail(line, 2, "undeclared state '" + dst + "'");
        if (deterministic) {
            auto [it, inserted] = seen.emplace(std::make_pair(src, letter), line.number);
            if (!inserted)
                fail(line, 1,
                     "not deterministic: second transition from '" + src + "' on '" + letter + "' (first on line " +
                         std::to_string(it->second) + ")");
        }
        transitions.emplace_back(src, letter, dst);
    }
    return located(lines[0], 0, [&]() -> Acceptor {
        if (deterministic)
            return Dfa::from_names(alphabet, states, initial, finals, transitions);
        return Nfa::from_names(alphabet, states, initial, finals, transitions);
    });
}

Acceptor parse_grammar(const std::vector<Line>& lines, std::string_view text)
{
    std::vector<std::string> terminals = keyword_line(lines, 1, "alphabet", text);
    std::size_t next = 2;
    std::vector<std::string> declared;
    bool explicit_nonterminals = false;
    if (next < lines.size() && lines[next].tokens[0].text == "nonterminals") {
        declared = keyword_line(lines, next, "nonterminals", text);
        explicit_nonterminals = true;
        ++next;
    }
    std::string start = single(lines, next, "start", text);
    const std::size_t start_line = next++;

    struct RawProduction {
        const Line* line;
        std::string head;
        std::vector<std::size_t> body; // token indices
    };
    std::vector<RawProduction> raw;
    for (std::size_t k = next; k < lines.size(); ++k) {
        const Line& line = lines[k];
        if (line.tokens.size() < 2 || line.tokens[1].text != "->")
            fail(line, 1, "expected 'Head -> body | body'");
        RawProduction current{&line, line.tokens[0].text, {}};
        for (std::size_t i = 2; i < line.tokens.size(); ++i) {
            if (line.tokens[i].text == "|") {
                raw.push_back(current);
                current.body.clear();
            } else {
                current.body.push_back(i);
            }
        }
        raw.push_back(current);
    }

    std::unordered_set<std::string> terminal_set(terminals.begin(), terminals.end());
    std::vector<std::string> nonterminals;
    if (explicit_nonterminals) {
        nonterminals = declared;
    } else {
        std::unordered_set<std::string> added;
        auto add = [&](const std::string& n) {
            if (added.insert(n).second)
                nonterminals.push_back(n);
        };
        add(start);
        for (const auto& r : raw)
            add(r.head);
    }
    std::unordered_set<std::string> nt_set(nonterminals.begin(), nonterminals.end());
    if (!nt_set.count(start))
        fail(lines[start_line], 1, "start symbol '" + start + "' is not a nonterminal");

    std::vector<Production> productions;
    for (const auto& r : raw) {
        const Line& line = *r.line;
        if (!nt_set.count(r.head))
            fail(line, 0, "undeclared nonterminal '" + r.head + "'");
        if (terminal_set.count(r.head))
            fail(line, 0, "'" + r.head + "' is a terminal");
        Production p{r.head, {}};
        if (r.body.size() == 1 && is_epsilon(line.tokens[r.body[0]].text)) {
            productions.push_back(std::move(p));
            continue;
        }
        for (std::size_t i : r.body) {
            const std::string& s = line.tokens[i].text;
            if (is_epsilon(s))
                fail(line, i, "ε must stand alone in an alternative");
            if (!terminal_set.count(s) && !nt_set.count(s))
                fail(line, i, "undeclared symbol '" + s + "'");
            p.body.push_back(s);
        }
        productions.push_back(std::move(p));
    }
    return located(lines[0], 0, [&]() -> Acceptor {
        return Cfg::make(std::move(nonterminals), std::move(terminals), start, std::move(productions));
    });
}

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (const auto& s : items) {
        out += ' ';
        out += s;
    }
    return out;
}

} // namespace

Acceptor parse_acceptor(std::string_view text)
{
    auto lines = content_lines(text);
    if (lines.empty())
        throw ParseError(1, 1, "empty model file");
    const Line& head = lines[0];
    if (head.tokens.size() != 1)
        fail(head, 1, "kind line must contain only the kind");
    const std::string& kind = head.tokens[0].text;
    if (kind == "dfa")
        return parse_automaton(lines, true, text);
    if (kind == "nfa")
        return parse_automaton(lines, false, text);
    if (kind == "cfg")
        return parse_grammar(lines, text);
    fail(head, 0, "unknown model kind '" + kind + "' (expected dfa, nfa or cfg)");
}

std::string serialize_acceptor(const Acceptor& acceptor)
{
    std::ostringstream out;
    if (const auto* g = std::get_if<Cfg>(&acceptor)) {
        out << "cfg\n";
        out << "alphabet" << join(g->terminals()) << '\n';
        out << "nonterminals" << join(g->nonterminals()) << '\n';
        out << "start " << g->start() << '\n';
        for (const auto& p : g->productions()) {
            out << p.head << " ->";
            if (p.body.empty())
                out << " ε";
            for (const auto& s : p.body)
                out << ' ' << s;
            out << '\n';
        }
        return out.str();
    }
    const FiniteAutomaton& a = std::holds_alternative<Dfa>(acceptor)
                                   ? static_cast<const FiniteAutomaton&>(std::get<Dfa>(acceptor))
                                   : static_cast<const FiniteAutomaton&>(std::get<Nfa>(acceptor));
    out << kind_name(acceptor) << '\n';
    out << "alphabet" << join(a.alphabet()) << '\n';
    out << "states" << join(a.states()) << '\n';
    out << "initial " << a.states()[a.initial()] << '\n';
    std::vector<std::string> finals;
    for (std::size_t f : a.finals())
        finals.push_back(a.states()[f]);
    out << "final" << join(finals) << '\n';
    for (const auto& t : a.transitions())
        out << a.states()[t.source] << ' ' << a.alphabet()[t.letter] << ' ' << a.states()[t.target] << '\n';
    return out.str();
}

CostChain parse_costchain(std::string_view text, std::vector<std::string>* warnings)
{
    auto lines = content_lines(text);
    if (lines.empty())
        throw ParseError(1, 1, "empty cost chain file");
    if (lines[0].tokens.size() != 1 || lines[0].tokens[0].text != "costchain")
        fail(lines[0], 0, "expected 'costchain'");
    std::size_t next = 1;
    std::vector<std::string> states;
    bool explicit_states = false;
    if (next < lines.size() && lines[next].tokens[0].text == "states") {
        states = keyword_line(lines, next, "states", text);
        explicit_states = true;
        ++next;
    }
    const std::size_t initial_line = next;
    std::string initial = single(lines, next++, "initial", text);
    const std::size_t target_line = next;
    std::string target = single(lines, next++, "target", text);

    std::unordered_set<std::string> known(states.begin(), states.end());
    if (known.size() != states.size())
        fail(lines[1], 1, "duplicate state");
    auto mention = [&](const std::string& s, const Line& line, std::size_t token) {
        if (known.count(s))
            return;
        if (explicit_states)
            fail(line, token, "undeclared state '" + s + "'");
        known.insert(s);
        states.push_back(s);
    };
    mention(initial, lines[initial_line], 1);
    mention(target, lines[target_line], 1);

    std::vector<NamedChainEdge> edges;
    for (std::size_t k = next; k < lines.size(); ++k) {
        const Line& line = lines[k];
        if (line.tokens.size() != 4)
            fail(line, std::min<std::size_t>(line.tokens.size(), 4), "expected 'source target cost m/d'");
        mention(line.tokens[0].text, line, 0);
        mention(line.tokens[1].text, line, 1);
        BigInt cost = located(line, 2, [&] { return parse_natural(line.tokens[2].text); });
        Rational prob = located(line, 3, [&] { return parse_fraction(line.tokens[3].text); });
        edges.emplace_back(line.tokens[0].text, line.tokens[1].text, cost, prob);
    }
    bool has_loop = std::any_of(edges.begin(), edges.end(), [&](const NamedChainEdge& e) {
        return std::get<0>(e) == target && std::get<1>(e) == target && std::get<2>(e) == 0;
    });
    if (!has_loop) {
        edges.emplace_back(target, target, BigInt(0), Rational(1));
        if (warnings)
            warnings->push_back("target '" + target + "' had no (t, 0, t, 1) loop; added it");
    }
    CostChain chain = located(lines[0], 0, [&] { return CostChain::from_names(states, initial, target, edges); });
    require_valid(chain);
    return chain;
}

std::string serialize_costchain(const CostChain& chain)
{
    std::ostringstream out;
    out << "costchain\n";
    out << "states" << join(chain.states()) << '\n';
    out << "initial " << chain.states()[chain.initial()] << '\n';
    out << "target " << chain.states()[chain.target()] << '\n';
    for (const auto& e : chain.edges())
        out << chain.states()[e.source] << ' ' << chain.states()[e.target] << ' ' << to_string(e.cost) << ' '
            << to_string(e.probability) << '\n';
    return out.str();
}

namespace {

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : text_(text) {}

    CostFormula parse()
    {
        CostFormula f = disjunction();
        skip();
        if (pos_ != text_.size())
            error("unexpected '" + std::string(1, text_[pos_]) + "'");
        return f;
    }

private:
    void skip()
    {
        while (pos_ < text_.size() && (is_space(text_[pos_]) || text_[pos_] == '\n'))
            ++pos_;
    }

    bool accept(std::string_view token)
    {
        skip();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    [[noreturn]] void error(const std::string& message) const { throw ParseError(1, pos_ + 1, message); }

    CostFormula disjunction()
    {
        CostFormula f = conjunction();
        while (accept("|"))
            f = CostFormula::disjunction(std::move(f), conjunction());
        return f;
    }

    CostFormula conjunction()
    {
        CostFormula f = negation();
        while (accept("&"))
            f = CostFormula::conjunction(std::move(f), negation());
        return f;
    }

    CostFormula negation()
    {
        if (accept("!"))
            return CostFormula::negation(negation());
        return primary();
    }

    CostFormula primary()
    {
        if (accept("(")) {
            CostFormula f = disjunction();
            if (!accept(")"))
                error("expected ')'");
            return f;
        }
        skip();
        if (!accept("x"))
            error(pos_ < text_.size() ? "expected 'x <= N', '!' or '('" : "unexpected end of formula");
        if (!accept("<="))
            error("expected '<='");
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9')
            ++pos_;
        if (start == pos_) {
            pos_ = start;
            error("expected a non-negative integer bound");
        }
        return CostFormula::atom(parse_natural(text_.substr(start, pos_ - start)));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

CostFormula parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

ParikhVector parse_parikh(std::string_view text)
{
    ParikhVector p;
    std::set<std::string> seen;
    std::size_t line_number = 1, line_start = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '\n') {
            ++line_number;
            line_start = ++i;
            continue;
        }
        if (is_space(text[i])) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < text.size() && !is_space(text[i]) && text[i] != '\n')
            ++i;
        std::string_view item = text.substr(start, i - start);
        const std::size_t column = start - line_start + 1;
        std::size_t eq = item.rfind('=');
        if (eq == std::string_view::npos || eq == 0)
            throw ParseError(line_number, column, "expected 'letter=count', got '" + std::string(item) + "'");
        std::string letter(item.substr(0, eq));
        if (!seen.insert(letter).second)
            throw ParseError(line_number, column, "letter '" + letter + "' given twice");
        try {
            p.set(letter, parse_natural(item.substr(eq + 1)));
        } catch (const InputError& e) {
            throw ParseError(line_number, column + eq + 1, e.what());
        }
    }
    return p;
}

std::string serialize_parikh(const ParikhVector& p)
{
    std::string out;
    for (const auto& [letter, count] : p.entries()) {
        if (!out.empty())
            out += ' ';
        out += letter + "=" + to_string(count);
    }
    return out;
}

CnfFormula parse_dimacs(std::string_view text)
{
    auto lines = content_lines(text);
    CnfFormula psi;
    bool header = false;
    std::size_t declared_clauses = 0;
    std::vector<Literal> pending;
    const Line* last = nullptr;
    for (const Line& line : lines) {
        last = &line;
        if (line.tokens[0].text == "c")
            continue;
        if (line.tokens[0].text == "p") {
            if (header)
                fail(line, 0, "second header line");
            if (line.tokens.size() != 4 || line.tokens[1].text != "cnf")
                fail(line, 1, "expected 'p cnf <variables> <clauses>'");
            psi.variables = located(line, 2, [&] { return to_u64(parse_natural(line.tokens[2].text)); });
            declared_clauses = located(line, 3, [&] { return to_u64(parse_natural(line.tokens[3].text)); });
            header = true;
            continue;
        }
        if (!header)
            fail(line, 0, "clause before the 'p cnf' header");
        for (std::size_t i = 0; i < line.tokens.size(); ++i) {
            BigInt v = located(line, i, [&] { return parse_integer(line.tokens[i].text); });
            if (v == 0) {
                if (pending.size() != 3)
                    fail(line, i, "clause has " + std::to_string(pending.size()) + " literals, expected 3");
                psi.clauses.push_back({pending[0], pending[1], pending[2]});
                pending.clear();
                continue;
            }
            BigInt magnitude = v < 0 ? BigInt(-v) : v;
            if (magnitude > BigInt(static_cast<unsigned long>(psi.variables)))
                fail(line, i, "variable " + to_string(magnitude) + " exceeds the declared count");
            pending.push_back({static_cast<std::size_t>(to_u64(magnitude)), v > 0});
        }
    }
    if (!header)
        throw ParseError(1, 1, "missing 'p cnf' header");
    if (!pending.empty())
        fail(*last, last->tokens.size(), "last clause is not terminated by 0");
    if (psi.clauses.size() != declared_clauses)
        throw ParseError(last->number, 1,
                         "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                             std::to_string(psi.clauses.size()));
    try {
        psi.validate();
    } catch (const InputError& e) {
        throw ParseError(last->number, 1, e.what());
    }
    return psi;
}

std::string serialize_dimacs(const CnfFormula& psi)
{
    std::ostringstream out;
    out << "p cnf " << psi.variables << ' ' << psi.clauses.size() << '\n';
    for (const auto& clause : psi.clauses) {
        for (const auto& lit : clause)
            out << (lit.positive ? "" : "-") << lit.variable << ' ';
        out << "0\n";
    }
    return out.str();
}

Matrix parse_matrix(std::string_view text)
{
    Matrix m;
    for (const Line& line : content_lines(text)) {
        std::vector<BigInt> row;
        for (std::size_t i = 0; i < line.tokens.size(); ++i)
            row.push_back(located(line, i, [&] { return parse_integer(line.tokens[i].text); }));
        if (!m.empty() && row.size() != m.front().size())
            fail(line, 0, "row has " + std::to_string(row.size()) + " entries, expected " +
                              std::to_string(m.front().size()));
        m.push_back(std::move(row));
    }
    if (m.empty())
        throw ParseError(1, 1, "empty matrix");
    return m;
}

std::string serialize_matrix(const Matrix& m)
{
    std::string out;
    for (const auto& row : m) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j > 0)
                out += ' ';
            out += to_string(row[j]);
        }
        out += '\n';
    }
    return out;
}

} // namespace parikh
