#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "parikh/numeric.hpp"

namespace parikh {

using Letter = std::string;
using Word = std::vector<Letter>;

/// Letter -> occurrence count. Absent letters count zero; zero entries are never stored.
class ParikhVector {
public:
    ParikhVector() = default;
    ParikhVector(std::initializer_list<std::pair<const Letter, BigInt>> entries);

    /// Count of @p letter, zero if absent.
    const BigInt& operator[](const Letter& letter) const;

    void set(const Letter& letter, const BigInt& count);
    void add(const Letter& letter, const BigInt& count);

    /// Sum of all counts.
    BigInt norm() const;
    bool is_zero() const { return counts_.empty(); }

    const std::map<Letter, BigInt>& entries() const { return counts_; }

    /// Counts aligned to @p alphabet. Throws InputError if a letter with a
    /// positive count is not in the alphabet.
    std::vector<BigInt> dense(const std::vector<Letter>& alphabet) const;

    friend ParikhVector operator+(const ParikhVector& lhs, const ParikhVector& rhs);
    friend bool operator==(const ParikhVector& lhs, const ParikhVector& rhs) { return lhs.counts_ == rhs.counts_; }

private:
    std::map<Letter, BigInt> counts_;
};

/// Occurrence count of every letter of @p word.
ParikhVector parikh(const Word& word);

struct Transition {
    std::size_t source;
    std::size_t letter;
    std::size_t target;

    friend bool operator==(const Transition&, const Transition&) = default;
};

/// Named transition as it appears in input files: (source, letter, target).
using NamedTransition = std::tuple<std::string, Letter, std::string>;

/**
 * Common storage for finite automata over an ordered alphabet.
 *
 * States and letters are arbitrary whitespace-free tokens; their order is the
 * order they were given in, and every algorithm that has a choice iterates in
 * that order so outputs are reproducible.
 */
class FiniteAutomaton {
public:
    const std::vector<Letter>& alphabet() const { return alphabet_; }
    const std::vector<std::string>& states() const { return states_; }
    std::size_t initial() const { return initial_; }
    /// Sorted, duplicate-free.
    const std::vector<std::size_t>& finals() const { return finals_; }
    bool is_final(std::size_t state) const { return final_flags_[state]; }
    const std::vector<Transition>& transitions() const { return transitions_; }

    std::optional<std::size_t> letter_index(const Letter& letter) const;
    std::optional<std::size_t> state_index(const std::string& state) const;
    /// Like letter_index but throws InputError for letters outside the alphabet.
    std::size_t require_letter(const Letter& letter) const;

    /// Letter indices of @p word; InputError on foreign letters.
    std::vector<std::size_t> encode(const Word& word) const;

    /// Indices of transitions leaving @p state, in input order.
    const std::vector<std::size_t>& outgoing(std::size_t state) const { return outgoing_[state]; }

    friend bool operator==(const FiniteAutomaton& lhs, const FiniteAutomaton& rhs);

protected:
    FiniteAutomaton(std::vector<Letter> alphabet, std::vector<std::string> states, std::size_t initial,
                    std::vector<std::size_t> finals, std::vector<Transition> transitions);

    static std::tuple<std::vector<Letter>, std::vector<std::string>, std::size_t, std::vector<std::size_t>,
                      std::vector<Transition>>
    resolve(std::vector<Letter> alphabet, std::vector<std::string> states, const std::string& initial,
            const std::vector<std::string>& finals, const std::vector<NamedTransition>& transitions);

    std::vector<Letter> alphabet_;
    std::vector<std::string> states_;
    std::size_t initial_;
    std::vector<std::size_t> finals_;
    std::vector<bool> final_flags_;
    std::vector<Transition> transitions_;
    std::vector<std::vector<std::size_t>> outgoing_;
    std::unordered_map<Letter, std::size_t> letter_ids_;
    std::unordered_map<std::string, std::size_t> state_ids_;
};

class Nfa : public FiniteAutomaton {
public:
    Nfa(std::vector<Letter> alphabet, std::vector<std::string> states, std::size_t initial,
        std::vector<std::size_t> finals, std::vector<Transition> transitions);

    static Nfa from_names(std::vector<Letter> alphabet, std::vector<std::string> states, const std::string& initial,
                          const std::vector<std::string>& finals, const std::vector<NamedTransition>& transitions);
};

/// An automaton with at most one successor per (state, letter). Missing
/// successors are allowed and reject.
class Dfa : public FiniteAutomaton {
public:
    static constexpr std::size_t no_state = static_cast<std::size_t>(-1);

    Dfa(std::vector<Letter> alphabet, std::vector<std::string> states, std::size_t initial,
        std::vector<std::size_t> finals, std::vector<Transition> transitions);

    static Dfa from_names(std::vector<Letter> alphabet, std::vector<std::string> states, const std::string& initial,
                          const std::vector<std::string>& finals, const std::vector<NamedTransition>& transitions);

    /// Successor of @p state on letter index @p letter, or no_state.
    std::size_t step(std::size_t state, std::size_t letter) const { return delta_[state * alphabet_.size() + letter]; }

    Nfa as_nfa() const;

private:
    std::vector<std::size_t> delta_;
};

bool accepts(const Dfa& dfa, const Word& word);
bool accepts(const Nfa& nfa, const Word& word);

/// Subset construction from {initial}. Only reachable non-empty subsets become
/// states; they are numbered in breadth-first order and named "{q,r}".
Dfa determinize(const Nfa& nfa);

struct WellFormedDfa {
    Dfa dfa;
    ParikhVector parikh;
    Letter anchor;
};

/// Letter used by augment_well_formed: "##" if unused, else the first unused of "##0", "##1", ...
Letter fresh_anchor_letter(const std::vector<Letter>& alphabet);

/**
 * Adds a fresh anchor letter b with a b-transition from every final state to
 * the initial state, and makes the initial state the only final state. The
 * returned vector extends @p parikh with b -> 1. Words of the input with image
 * p correspond exactly to words u·b of the result with the extended image.
 *
 * The construction is applied even when the input is already well-formed.
 */
WellFormedDfa augment_well_formed(const Dfa& dfa, const ParikhVector& parikh);

} // namespace parikh
