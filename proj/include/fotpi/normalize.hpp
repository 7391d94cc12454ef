#pragma once

#include <functional>

#include "fotpi/formula.hpp"

namespace fotpi {

enum class Hierarchy { Pi, H };
enum class JoinMode { Strict, Sugared };

/// Least syntactic Sigma/Pi indices of a formula in a chosen hierarchy,
/// computed by the compositional level algebra (a syntactic upper bound on
/// the semantic level).
struct HierarchyLevel {
    int sigma = 0;
    int pi = 0;

    bool operator==(const HierarchyLevel&) const = default;
    HierarchyLevel swapped() const { return {pi, sigma}; }
    static HierarchyLevel max(HierarchyLevel a, HierarchyLevel b) {
        return {std::max(a.sigma, b.sigma), std::max(a.pi, b.pi)};
    }
    /// "Sigma 3", "Pi 2" or "Delta 0" (quantifier-free).
    std::string str() const;
    /// Total order used when a transformation may pick between shapes.
    static bool better(HierarchyLevel a, HierarchyLevel b);
};

/// Negation normal form. Iff becomes a conjunction of two implications first,
/// then implications are eliminated and negations pushed onto atoms.
/// Requires a MacroCall-free input.
FormulaPtr to_nnf(const FormulaPtr& f);

/// Prenex normal form with greedy merging of adjacent same-kind blocks.
/// Accepts NNF input (implications are tolerated and handled by polarity).
FormulaPtr to_prenex(const FormulaPtr& f);

/// Strict mode rewrites every join-term in an independence atom through a
/// fresh variable constrained by the join characterization; the quantifier
/// kind of each introduced binder is chosen to minimize the classified level.
/// Sugared mode leaves joins in place.
FormulaPtr eliminate_joins(const FormulaPtr& f, JoinMode mode);

/// Level hook for MacroCall nodes (used by the macro-aware classifier).
using MacroLevelFn = std::function<HierarchyLevel(const Formula&)>;

/// Compositional level algebra. Vacuous binders are dropped. MacroCall nodes
/// are resolved through \p macro_level, or rejected when none is given.
HierarchyLevel classify_core(const FormulaPtr& f, Hierarchy hierarchy,
                             const MacroLevelFn* macro_level = nullptr);

}  // namespace fotpi
