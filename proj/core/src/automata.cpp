#include "parikh/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "parikh/error.hpp"

namespace parikh {

namespace {

const BigInt zero_count{0};

bool is_token(const std::string& s)
{
    return !s.empty() && std::none_of(s.begin(), s.end(), [](unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
}

template <typename Range>
std::unordered_map<std::string, std::size_t> index_names(const Range& names, const char* what)
{
    std::unordered_map<std::string, std::size_t> ids;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!is_token(names[i]))
            throw InputError(std::string("invalid ") + what + " name '" + names[i] + "'");
        if (!ids.emplace(names[i], i).second)
            throw InputError(std::string("duplicate ") + what + " '" + names[i] + "'");
    }
    return ids;
}

} // namespace

ParikhVector::ParikhVector(std::initializer_list<std::pair<const Letter, BigInt>> entries)
{
    for (const auto& [letter, count] : entries)
        add(letter, count);
}

const BigInt& ParikhVector::operator[](const Letter& letter) const
{
    auto it = counts_.find(letter);
    return it == counts_.end() ? zero_count : it->second;
}

void ParikhVector::set(const Letter& letter, const BigInt& count)
{
    if (count < 0)
        throw InputError("negative Parikh count for '" + letter + "'");
    if (count == 0)
        counts_.erase(letter);
    else
        counts_[letter] = count;
}

void ParikhVector::add(const Letter& letter, const BigInt& count)
{
    BigInt total = (*this)[letter] + count;
    set(letter, total);
}

BigInt ParikhVector::norm() const
{
    BigInt total = 0;
    for (const auto& [letter, count] : counts_)
        total += count;
    return total;
}

std::vector<BigInt> ParikhVector::dense(const std::vector<Letter>& alphabet) const
{
    std::vector<BigInt> out(alphabet.size(), BigInt(0));
    std::size_t matched = 0;
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        auto it = counts_.find(alphabet[i]);
        if (it != counts_.end()) {
            out[i] = it->second;
            ++matched;
        }
    }
    if (matched != counts_.size()) {
        for (const auto& [letter, count] : counts_)
            if (std::find(alphabet.begin(), alphabet.end(), letter) == alphabet.end())
                throw InputError("Parikh vector mentions letter '" + letter + "' outside the alphabet");
    }
    return out;
}

ParikhVector operator+(const ParikhVector& lhs, const ParikhVector& rhs)
{
    ParikhVector out = lhs;
    for (const auto& [letter, count] : rhs.counts_)
        out.add(letter, count);
    return out;
}

ParikhVector parikh(const Word& word)
{
    ParikhVector out;
    for (const Letter& letter : word)
        out.add(letter, 1);
    return out;
}

FiniteAutomaton::FiniteAutomaton(std::vector<Letter> alphabet, std::vector<std::string> states, std::size_t initial,
                                 std::vector<std::size_t> finals, std::vector<Transition> transitions)
    : alphabet_(std::move(alphabet)), states_(std::move(states)), initial_(initial), finals_(std::move(finals)),
      transitions_(std::move(transitions))
{
    letter_ids_ = index_names(alphabet_, "letter");
    state_ids_ = index_names(states_, "state");
    if (initial_ >= states_.size())
        throw InputError("initial state out of range");
    std::sort(finals_.begin(), finals_.end());
    finals_.erase(std::unique(finals_.begin(), finals_.end()), finals_.end());
    final_flags_.assign(states_.size(), false);
    for (std::size_t f : finals_) {
        if (f >= states_.size())
            throw InputError("final state out of range");
        final_flags_[f] = true;
    }
    outgoing_.assign(states_.size(), {});
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        const Transition& t = transitions_[i];
        if (t.source >= states_.size() || t.target >= states_.size())
            throw InputError("transition endpoint out of range");
        if (t.letter >= alphabet_.size())
            throw InputError("transition label out of range");
        outgoing_[t.source].push_back(i);
    }
}

std::tuple<std::vector<Letter>, std::vector<std::string>, std::size_t, std::vector<std::size_t>, std::vector<Transition>>
FiniteAutomaton::resolve(std::vector<Letter> alphabet, std::vector<std::string> states, const std::string& initial,
                         const std::vector<std::string>& finals, const std::vector<NamedTransition>& transitions)
{
    auto letters = index_names(alphabet, "letter");
    auto ids = index_names(states, "state");
    auto state = [&](const std::string& name) {
        auto it = ids.find(name);
        if (it == ids.end())
            throw InputError("undeclared state '" + name + "'");
        return it->second;
    };
    std::vector<std::size_t> final_ids;
    for (const auto& f : finals)
        final_ids.push_back(state(f));
    std::vector<Transition> resolved;
    resolved.reserve(transitions.size());
    for (const auto& [src, letter, dst] : transitions) {
        auto it = letters.find(letter);
        if (it == letters.end())
            throw InputError("transition label '" + letter + "' is not in the alphabet");
        resolved.push_back({state(src), it->second, state(dst)});
    }
    std::size_t init = state(initial);
    return {std::move(alphabet), std::move(states), init, std::move(final_ids), std::move(resolved)};
}

std::optional<std::size_t> FiniteAutomaton::letter_index(const Letter& letter) const
{
    auto it = letter_ids_.find(letter);
    if (it == letter_ids_.end())
        return std::nullopt;
    return it->second;
}

std::optional<std::size_t> FiniteAutomaton::state_index(const std::string& state) const
{
    auto it = state_ids_.find(state);
    if (it == state_ids_.end())
        return std::nullopt;
    return it->second;
}

std::size_t FiniteAutomaton::require_letter(const Letter& letter) const
{
    auto id = letter_index(letter);
    if (!id)
        throw InputError("letter '" + letter + "' is not in the alphabet");
    return *id;
}

std::vector<std::size_t> FiniteAutomaton::encode(const Word& word) const
{
    std::vector<std::size_t> out;
    out.reserve(word.size());
    for (const Letter& letter : word)
        out.push_back(require_letter(letter));
    return out;
}

bool operator==(const FiniteAutomaton& lhs, const FiniteAutomaton& rhs)
{
    return lhs.alphabet_ == rhs.alphabet_ && lhs.states_ == rhs.states_ && lhs.initial_ == rhs.initial_ &&
           lhs.finals_ == rhs.finals_ && lhs.transitions_ == rhs.transitions_;
}

Nfa::Nfa(std::vector<Letter> alphabet, std::vector<std::string> states, std::size_t initial,
         std::vector<std::size_t> finals, std::vector<Transition> transitions)
    : FiniteAutomaton(std::move(alphabet), std::move(states), initial, std::move(finals), std::move(transitions))
{
}

Nfa Nfa::from_names(std::vector<Letter> alphabet, std::vector<std::string> states, const std::string& initial,
                    const std::vector<std::string>& finals, const std::vector<NamedTransition>& transitions)
{
    auto [a, s, i, f, t] = resolve(std::move(alphabet), std::move(states), initial, finals, transitions);
    return Nfa(std::move(a), std::move(s), i, std::move(f), std::move(t));
}

Dfa::Dfa(std::vector<Letter> alphabet, std::vector<std::string> states, std::size_t initial,
         std::vector<std::size_t> finals, std::vector<Transition> transitions)
    : FiniteAutomaton(std::move(alphabet), std::move(states), initial, std::move(finals), std::move(transitions))
{
    delta_.assign(states_.size() * alphabet_.size(), no_state);
    for (const Transition& t : transitions_) {
        std::size_t& slot = delta_[t.source * alphabet_.size() + t.letter];
        if (slot != no_state)
            throw InputError("not deterministic: state '" + states_[t.source] + "' has two transitions on '" +
                             alphabet_[t.letter] + "'");
        slot = t.target;
    }
}

Dfa Dfa::from_names(std::vector<Letter> alphabet, std::vector<std::string> states, const std::string& initial,
                    const std::vector<std::string>& finals, const std::vector<NamedTransition>& transitions)
{
    auto [a, s, i, f, t] = resolve(std::move(alphabet), std::move(states), initial, finals, transitions);
    return Dfa(std::move(a), std::move(s), i, std::move(f), std::move(t));
}

Nfa Dfa::as_nfa() const { return Nfa(alphabet_, states_, initial_, finals_, transitions_); }

bool accepts(const Dfa& dfa, const Word& word)
{
    std::size_t state = dfa.initial();
    for (std::size_t letter : dfa.encode(word)) {
        state = dfa.step(state, letter);
        if (state == Dfa::no_state)
            return false;
    }
    return dfa.is_final(state);
}

bool accepts(const Nfa& nfa, const Word& word)
{
    std::vector<bool> current(nfa.states().size(), false);
    current[nfa.initial()] = true;
    for (std::size_t letter : nfa.encode(word)) {
        std::vector<bool> next(nfa.states().size(), false);
        for (const Transition& t : nfa.transitions())
            if (current[t.source] && t.letter == letter)
                next[t.target] = true;
        current = std::move(next);
    }
    for (std::size_t f : nfa.finals())
        if (current[f])
            return true;
    return false;
}

Dfa determinize(const Nfa& nfa)
{
    using Subset = std::vector<std::size_t>;
    const std::size_t letters = nfa.alphabet().size();

    std::map<Subset, std::size_t> ids;
    std::vector<Subset> subsets;
    std::deque<std::size_t> queue;
    auto intern = [&](Subset s) {
        auto [it, inserted] = ids.emplace(s, subsets.size());
        if (inserted) {
            subsets.push_back(std::move(s));
            queue.push_back(it->second);
        }
        return it->second;
    };
    intern({nfa.initial()});

    std::vector<Transition> transitions;
    while (!queue.empty()) {
        std::size_t id = queue.front();
        queue.pop_front();
        std::vector<std::set<std::size_t>> successors(letters);
        for (std::size_t q : subsets[id])
            for (std::size_t ti : nfa.outgoing(q)) {
                const Transition& t = nfa.transitions()[ti];
                successors[t.letter].insert(t.target);
            }
        for (std::size_t a = 0; a < letters; ++a) {
            if (successors[a].empty())
                continue;
            std::size_t target = intern(Subset(successors[a].begin(), successors[a].end()));
            transitions.push_back({id, a, target});
        }
    }

    std::vector<std::string> names;
    std::vector<std::size_t> finals;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        std::string name = "{";
        bool accepting = false;
        for (std::size_t k = 0; k < subsets[i].size(); ++k) {
            if (k > 0)
                name += ',';
            name += nfa.states()[subsets[i][k]];
            accepting = accepting || nfa.is_final(subsets[i][k]);
        }
        name += '}';
        names.push_back(std::move(name));
        if (accepting)
            finals.push_back(i);
    }
    return Dfa(nfa.alphabet(), std::move(names), 0, std::move(finals), std::move(transitions));
}

Letter fresh_anchor_letter(const std::vector<Letter>& alphabet)
{
    auto used = [&](const Letter& candidate) {
        return std::find(alphabet.begin(), alphabet.end(), candidate) != alphabet.end();
    };
    Letter candidate = "##";
    for (std::size_t k = 0; used(candidate); ++k)
        candidate = "##" + std::to_string(k);
    return candidate;
}

WellFormedDfa augment_well_formed(const Dfa& dfa, const ParikhVector& parikh)
{
    // Validates that p only mentions known letters.
    (void)parikh.dense(dfa.alphabet());

    Letter anchor = fresh_anchor_letter(dfa.alphabet());
    std::vector<Letter> alphabet = dfa.alphabet();
    alphabet.push_back(anchor);
    const std::size_t b = alphabet.size() - 1;

    std::vector<Transition> transitions = dfa.transitions();
    for (std::size_t f : dfa.finals())
        transitions.push_back({f, b, dfa.initial()});

    ParikhVector extended = parikh;
    extended.set(anchor, 1);
    return {Dfa(std::move(alphabet), dfa.states(), dfa.initial(), {dfa.initial()}, std::move(transitions)),
            std::move(extended), std::move(anchor)};
}

} // namespace parikh
