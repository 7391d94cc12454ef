#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fotpi/formula.hpp"
#include "fotpi/model.hpp"

namespace fotpi {

/// Exact finite-model decision procedure for one derived predicate.
using SemanticFn = std::function<bool(const FiniteModel&, const std::vector<MacroArg>&)>;

/// Returns the direct semantic oracle for a macro when one is registered.
/// The evaluator uses these for macro calls left unexpanded; tests compare
/// them against bounded evaluation of the expansions.
std::optional<SemanticFn> semantic_oracle(const std::string& macro);
std::vector<std::string> semantic_oracle_names();

/// The integer carried by a representation variable: 0 for Bern(1/3), n for a
/// uniform variable with support n, nothing otherwise.
std::optional<long long> nat_rep_value(const FiniteModel& m, const Term& t);

}  // namespace fotpi
