#pragma once

#include <variant>
#include <vector>

#include "parikh/automata.hpp"
#include "parikh/cfg.hpp"

namespace parikh {

using Acceptor = std::variant<Dfa, Nfa, Cfg>;

/// Alphabet of a DFA/NFA, terminals of a grammar.
const std::vector<Letter>& alphabet_of(const Acceptor& acceptor);

bool accepts(const Acceptor& acceptor, const Word& word);

/// "dfa", "nfa" or "cfg".
const char* kind_name(const Acceptor& acceptor);

} // namespace parikh
