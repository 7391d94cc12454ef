#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "fotpi/rational.hpp"

namespace fotpi {

/// A marginal independence statement between two disjoint nonempty groups of
/// variable indices, canonicalized so the lexicographically smaller side is
/// first.
struct IndepStatement {
    std::vector<int> left, right;

    IndepStatement() = default;
    IndepStatement(std::vector<int> l, std::vector<int> r);

    auto operator<=>(const IndepStatement&) const = default;
    std::string str() const;
};

/// Closure of the antecedents under the finite axiom system for marginal
/// independence: symmetry, decomposition, and mixing
/// (X indep Y and XY indep Z imply X indep YZ).
std::set<IndepStatement> independence_closure(const std::vector<IndepStatement>& antecedents,
                                              int n);

/// Membership of the consequent in the closure. n is the variable count;
/// indices run over [1..n].
bool decide_indep_implication(const std::vector<IndepStatement>& antecedents,
                              const IndepStatement& consequent, int n, int cap = 8);

}  // namespace fotpi
