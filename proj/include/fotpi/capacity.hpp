#pragma once

#include <map>
#include <string>
#include <vector>

#include "fotpi/formula.hpp"
#include "fotpi/normalize.hpp"
#include "fotpi/rational.hpp"

namespace fotpi {

/// A joint source-channel Markov network with k terminals: source pmf,
/// per-time channel with state evolution, input alphabets, initial-state pmf
/// and a strong-coordination decoding requirement.
struct NetworkSpec {
    int k = 0;
    std::vector<std::vector<int>> input_alphabets;
    std::vector<int> state_alphabet;
    std::map<std::vector<int>, Rat> source_pmf;   // over (w_1..w_k)
    std::map<int, Rat> initial_state_pmf;
    // (x_1..x_k, s) -> (y_1..y_k, s') -> probability
    std::map<std::pair<std::vector<int>, int>, std::map<std::pair<std::vector<int>, int>, Rat>>
        channel;
    // (w_1..w_k) -> (z_1..z_k) -> probability
    std::map<std::vector<int>, std::map<std::vector<int>, Rat>> decoding_req;

    void validate() const;
};

NetworkSpec network_from_json(const std::string& text);

struct CompiledCapacityFormula {
    FormulaPtr formula;
    std::vector<std::string> free_variables;
    std::string input_anchor;  // the positive-input-distribution requirement
    std::string closure_note;  // the closure operation is deliberately not emitted
    HierarchyLevel level;      // linear entropy hierarchy, sugared mode
};

/// Compiles the capacity-region formula Q_k of the network. The formula
/// structure depends only on k; the spec contributes validation and the
/// evaluation anchors recorded alongside.
CompiledCapacityFormula compile_qk(const NetworkSpec& spec);

HierarchyLevel level_report(const CompiledCapacityFormula& c);

/// The point-to-point reference formula: there exist coupled channel
/// variables carrying the input distribution with H(M) <= I(X~;Y~). Sits in
/// the first existential level of the linear entropy hierarchy.
FormulaPtr point_to_point_reference();

}  // namespace fotpi
