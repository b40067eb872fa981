#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "parikh/acceptor.hpp"
#include "parikh/numeric.hpp"

namespace parikh {

/// The run of a unary DFA from its initial state: positions 0..tail-1 form
/// the tail and tail..tail+period-1 the cycle.
struct LassoShape {
    std::uint64_t tail = 0;
    std::uint64_t period = 1;
    /// Indexed by position, size tail + period.
    std::vector<bool> accepting;

    friend bool operator==(const LassoShape&, const LassoShape&) = default;
};

/// Follows the unique run. A missing transition ends the tail in an implicit
/// rejecting sink, which becomes a cycle of period one.
LassoShape lasso_decompose(const Dfa& dfa);

bool lasso_member(const LassoShape& shape, const BigInt& n);

/// a^n in L(dfa), for n of any magnitude.
bool unary_dfa_member(const Dfa& dfa, const BigInt& n);

/// A run of exactly @p c steps from @p from to @p to exists. SizeError when c
/// exceeds m^2 + m for m states.
bool bounded_reach(const Nfa& nfa, std::size_t from, std::size_t to, std::uint64_t c);

enum class UnaryMethod { sawa, matpow };
UnaryMethod parse_unary_method(std::string_view name);

/// a^n in L(nfa). sawa: direct layered reachability below m^2, else a search
/// over (q, q_f, b, a) with n in a + bN and q0 ->^(m-1) q ->^b q ->^(a-m+1) q_f.
/// matpow: boolean matrix powers by repeated squaring.
bool unary_nfa_member(const Nfa& nfa, const BigInt& n, UnaryMethod method = UnaryMethod::sawa);

/// a^n in L(cfg) by a length DP over the normal form. SizeError above @p cap.
bool unary_cfg_member(const Cfg& cfg, const BigInt& n, std::uint64_t cap = 10'000);

bool unary_member(const Acceptor& acceptor, const BigInt& n);

/// a^n in L(a) and not in L(b).
bool unary_pic(const Acceptor& a, const Acceptor& b, const BigInt& n);

} // namespace parikh
