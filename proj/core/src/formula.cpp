#include "parikh/formula.hpp"

#include <vector>

#include "parikh/error.hpp"

namespace parikh {

struct CostFormula::Node {
    Kind kind;
    BigInt bound;
    std::vector<CostFormula> operands;
    BigInt max_constant;
};

CostFormula CostFormula::atom(const BigInt& bound)
{
    if (bound < 0)
        throw InputError("atom bound must be non-negative");
    return CostFormula(std::make_shared<const Node>(Node{Kind::atom, bound, {}, bound}));
}

CostFormula CostFormula::negation(CostFormula operand)
{
    BigInt c = operand.max_constant();
    return CostFormula(std::make_shared<const Node>(Node{Kind::negation, 0, {std::move(operand)}, c}));
}

CostFormula CostFormula::conjunction(CostFormula lhs, CostFormula rhs)
{
    BigInt c = lhs.max_constant() > rhs.max_constant() ? lhs.max_constant() : rhs.max_constant();
    return CostFormula(std::make_shared<const Node>(Node{Kind::conjunction, 0, {std::move(lhs), std::move(rhs)}, c}));
}

CostFormula CostFormula::disjunction(CostFormula lhs, CostFormula rhs)
{
    BigInt c = lhs.max_constant() > rhs.max_constant() ? lhs.max_constant() : rhs.max_constant();
    return CostFormula(std::make_shared<const Node>(Node{Kind::disjunction, 0, {std::move(lhs), std::move(rhs)}, c}));
}

CostFormula::Kind CostFormula::kind() const { return node_->kind; }

const BigInt& CostFormula::bound() const
{
    if (node_->kind != Kind::atom)
        throw InputError("bound() of a non-atomic formula");
    return node_->bound;
}

const CostFormula& CostFormula::lhs() const
{
    if (node_->operands.empty())
        throw InputError("formula has no operand");
    return node_->operands[0];
}

const CostFormula& CostFormula::rhs() const
{
    if (node_->operands.size() < 2)
        throw InputError("formula has no second operand");
    return node_->operands[1];
}

BigInt CostFormula::max_constant() const { return node_->max_constant; }

bool CostFormula::satisfied_by(const BigInt& n) const
{
    switch (node_->kind) {
    case Kind::atom:
        return n <= node_->bound;
    case Kind::negation:
        return !lhs().satisfied_by(n);
    case Kind::conjunction:
        return lhs().satisfied_by(n) && rhs().satisfied_by(n);
    case Kind::disjunction:
        return lhs().satisfied_by(n) || rhs().satisfied_by(n);
    }
    return false;
}

std::string CostFormula::to_string() const
{
    switch (node_->kind) {
    case Kind::atom:
        return "x <= " + parikh::to_string(node_->bound);
    case Kind::negation:
        if (lhs().kind() == Kind::atom)
            return "!(" + lhs().to_string() + ")";
        return "!" + lhs().to_string();
    case Kind::conjunction:
        return "(" + lhs().to_string() + " & " + rhs().to_string() + ")";
    case Kind::disjunction:
        return "(" + lhs().to_string() + " | " + rhs().to_string() + ")";
    }
    return {};
}

bool formula_cofinite(const CostFormula& phi) { return phi.satisfied_by(phi.max_constant() + 1); }

} // namespace parikh
