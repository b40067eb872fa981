#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "parikh/acceptor.hpp"
#include "parikh/costchain.hpp"
#include "parikh/formula.hpp"
#include "parikh/reductions.hpp"

namespace parikh {

/**
 * Automaton files:
 *
 *     dfa                  (or nfa)
 *     alphabet a b
 *     states q0 q1
 *     initial q0
 *     final q1
 *     q0 a q1              (one transition per line)
 *
 * Grammar files:
 *
 *     cfg
 *     alphabet a b
 *     nonterminals S T     (optional; default: start, then heads in order)
 *     start S
 *     S -> a S b | ε       (ε or an empty alternative is the empty body)
 *
 * Blank lines and lines starting with "# " are ignored. Errors carry line and column.
 */
Acceptor parse_acceptor(std::string_view text);
std::string serialize_acceptor(const Acceptor& acceptor);

/**
 * Cost chain files:
 *
 *     costchain
 *     states s u t         (optional; default: order of first mention)
 *     initial s
 *     target t
 *     s t 20 9/10          (source target cost probability)
 *
 * Probabilities are integers or m/d fractions; decimals are rejected. A
 * missing (t, 0, t, 1) loop is added and reported in @p warnings. The
 * chain is validated; violations raise StructuralError.
 */
CostChain parse_costchain(std::string_view text, std::vector<std::string>* warnings = nullptr);
std::string serialize_costchain(const CostChain& chain);

/// "x <= 30", "!(x <= 5) & x <= 15", ... with ! binding tighter than &, and & tighter than |.
CostFormula parse_formula(std::string_view text);

/// "a=2 b=1"; counts are arbitrary-precision decimals.
ParikhVector parse_parikh(std::string_view text);
std::string serialize_parikh(const ParikhVector& p);

/// DIMACS CNF: "c" comment lines, a "p cnf <vars> <clauses>" header and
/// zero-terminated clauses of exactly three literals.
CnfFormula parse_dimacs(std::string_view text);
std::string serialize_dimacs(const CnfFormula& psi);

/// Whitespace-separated rows of decimal integers, one row per line.
Matrix parse_matrix(std::string_view text);
std::string serialize_matrix(const Matrix& m);

} // namespace parikh
