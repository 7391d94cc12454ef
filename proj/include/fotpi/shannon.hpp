#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fotpi/formula.hpp"

namespace fotpi {

/// A Shannon-type proving problem: is the goal inequality a nonnegative
/// combination of elemental inequalities (plus +/- multiples of the equality
/// constraints)?
struct ShannonProblem {
    LinearEntropyExpr goal;
    std::vector<LinearEntropyExpr> constraints;  // read as equalities
    size_t max_vars = 6;                         // LP has 2^n - 1 coordinates
};

struct ShannonVerdict {
    bool provable = false;
    /// Provable: nonnegative multipliers over named elemental inequalities and
    /// signed multipliers over constraints; recombines exactly to the goal.
    std::vector<std::pair<std::string, Rat>> multipliers;
    /// NotProvable: a vector satisfying every elemental inequality and every
    /// constraint while violating the goal.
    std::map<std::vector<std::string>, Rat> dual_ray;
};

/// Names and coefficient vectors of the elemental inequalities over the given
/// ordered variables: monotonicity H(all) - H(all minus i) >= 0 and the
/// conditional mutual informations I(Xi;Xj|X_K) >= 0.
std::vector<std::pair<std::string, std::map<std::vector<std::string>, Rat>>>
elemental_inequalities(const std::vector<std::string>& vars);

/// Decides the problem by exact rational simplex with Bland's rule. The
/// returned certificate is re-verified by exact arithmetic before returning.
ShannonVerdict prove_shannon(const ShannonProblem& p);

}  // namespace fotpi
