#pragma once

#include "fotpi/formula.hpp"

namespace fotpi {

/// Core derived formulae used by both the normalizer and the macro library.
/// All binders introduced here are named by the caller-supplied fresh names.

/// X is a.s. a function of Y:  forall U. (indep(U,Y) -> indep(U,X))
inline FormulaPtr make_lei(const Term& x, const Term& y, const std::string& u,
                           std::optional<Hint> hint = std::nullopt) {
    auto body = Formula::implies(Formula::indep(Term::var(u), y),
                                 Formula::indep(Term::var(u), x));
    return Formula::forall({u}, body, std::move(hint));
}

/// Z is informationally the join of parts: each part is a function of Z, and
/// Z is a function of any U that determines every part.
inline FormulaPtr make_joint(const Term& z, const std::vector<Term>& parts,
                             const std::string& u, long long& counter) {
    std::vector<FormulaPtr> conj;
    for (const auto& p : parts)
        conj.push_back(make_lei(p, z, "_w" + std::to_string(++counter)));
    std::vector<FormulaPtr> ante;
    for (const auto& p : parts)
        ante.push_back(make_lei(p, Term::var(u), "_w" + std::to_string(++counter)));
    auto concl = make_lei(z, Term::var(u), "_w" + std::to_string(++counter));
    conj.push_back(Formula::forall(
        {u}, Formula::implies(Formula::land(std::move(ante)), concl)));
    return Formula::land(std::move(conj));
}

}  // namespace fotpi
