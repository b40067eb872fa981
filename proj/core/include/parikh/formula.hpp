#pragma once

#include <memory>
#include <string>

#include "parikh/numeric.hpp"

namespace parikh {

/// Boolean combination of atoms "x <= b" over one natural-number variable x.
///
/// Immutable; copies share structure.
class CostFormula {
public:
    enum class Kind { atom, negation, conjunction, disjunction };

    static CostFormula atom(const BigInt& bound);
    static CostFormula negation(CostFormula operand);
    static CostFormula conjunction(CostFormula lhs, CostFormula rhs);
    static CostFormula disjunction(CostFormula lhs, CostFormula rhs);

    Kind kind() const;
    /// Bound of an atom.
    const BigInt& bound() const;
    const CostFormula& lhs() const;
    const CostFormula& rhs() const;

    /// Largest atom bound c. Membership of every n > c is the same.
    BigInt max_constant() const;

    bool satisfied_by(const BigInt& n) const;

    /// Binary operators fully parenthesised, e.g. "(!(x <= 5) & x <= 15)". Parses back to the same tree.
    std::string to_string() const;

private:
    struct Node;
    explicit CostFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

inline bool formula_sat(const BigInt& n, const CostFormula& phi) { return phi.satisfied_by(n); }

/// True iff infinitely many naturals satisfy @p phi (decided at c + 1).
bool formula_cofinite(const CostFormula& phi);

} // namespace parikh
