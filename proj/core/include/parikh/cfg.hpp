#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "parikh/automata.hpp"

namespace parikh {

struct Production {
    std::string head;
    /// Terminals and nonterminals by name; empty for an epsilon production.
    std::vector<std::string> body;

    friend bool operator==(const Production&, const Production&) = default;
};

/// A context-free grammar with disjoint, ordered terminal and nonterminal sets.
class Cfg {
public:
    /// Validates that the symbol sets are disjoint, the start symbol and all
    /// heads are nonterminals and every body symbol is declared.
    static Cfg make(std::vector<std::string> nonterminals, std::vector<Letter> terminals, std::string start,
                    std::vector<Production> productions);

    const std::vector<std::string>& nonterminals() const { return nonterminals_; }
    const std::vector<Letter>& terminals() const { return terminals_; }
    const std::string& start() const { return start_; }
    const std::vector<Production>& productions() const { return productions_; }

    bool is_terminal(const std::string& symbol) const;
    bool is_nonterminal(const std::string& symbol) const;

    friend bool operator==(const Cfg&, const Cfg&) = default;

private:
    Cfg() = default;

    std::vector<std::string> nonterminals_;
    std::vector<Letter> terminals_;
    std::string start_;
    std::vector<Production> productions_;
};

/**
 * Chomsky normal form with a fresh start symbol.
 *
 * Every production of the result is A -> B C, A -> a, or start -> epsilon,
 * and the start symbol never occurs in a body. Fresh nonterminals are
 * derived from existing names by appending apostrophes.
 */
Cfg to_normal_form(const Cfg& cfg);

/// CYK recognizer over the normal form of a grammar. Build once, query often.
class CfgRecognizer {
public:
    explicit CfgRecognizer(const Cfg& cfg);

    /// InputError if @p word contains a letter that is not a terminal.
    bool accepts(const Word& word) const;

    const Cfg& normal_form() const { return cnf_; }

private:
    struct Binary {
        std::size_t head, left, right;
    };

    Cfg cnf_;
    std::size_t start_ = 0;
    bool accepts_empty_ = false;
    std::vector<std::string> terminal_names_;
    /// Per terminal index, the nonterminals A with A -> terminal.
    std::vector<std::vector<std::size_t>> by_terminal_;
    std::vector<Binary> binaries_;
};

bool accepts(const Cfg& cfg, const Word& word);

} // namespace parikh
