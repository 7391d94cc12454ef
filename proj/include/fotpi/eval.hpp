#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fotpi/formula.hpp"
#include "fotpi/model.hpp"

namespace fotpi {

enum class Verdict { False_, Unknown, True_ };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::False_: return "false";
        case Verdict::Unknown: return "unknown";
        case Verdict::True_: return "true";
    }
    return "?";
}

/// Witness or counterexample for the outermost quantifier decided by search.
struct Evidence {
    std::vector<std::string> binders;
    FiniteModel model;  // extension of the input model defining the binders
    std::string source; // "hint:<constructor>" or "candidate"
};

struct TruthValue3 {
    Verdict verdict = Verdict::Unknown;
    std::optional<Evidence> evidence;
    bool budget_exhausted = false;  // sound mode only: search was truncated
};

/// sound: definite verdicts only with evidence valid in the unbounded
/// semantics; bounded: the candidate family is the whole quantifier domain.
enum class EvalMode { Sound, Bounded };

struct Budget {
    unsigned max_refine = 2;        // entry refinement factor
    unsigned max_support = 4;       // values per quantified variable
    unsigned max_denominator = 4;   // Bernoulli grid for stochastic candidates
    unsigned long long max_candidates = 10'000'000;  // hard cap per eval call
    bool use_witness_hints = true;

    void validate() const;
};

/// Three-valued bounded-quantifier evaluation. The quantifier domain is the
/// deterministic candidate family: witness-hint constructions first, then all
/// functions of the refined atom partition with at most max_support values,
/// then independent Bernoulli candidates with masses on the denominator grid.
TruthValue3 eval(const FormulaPtr& f, const FiniteModel& m, EvalMode mode, const Budget& b);

/// Registry of proof-guided witness constructors. A constructor receives the
/// current model, the expansion hint and the quantified block variables, and
/// returns candidate model extensions defining those variables. Candidates
/// are always verified exactly by evaluation; a wrong construction costs time
/// but never soundness.
using WitnessFn = std::function<std::vector<FiniteModel>(
    const FiniteModel&, const Hint&, const std::vector<std::string>&)>;

void register_witness_constructor(const std::string& name, WitnessFn fn);
bool witness_constructor_registered(const std::string& name);
/// Registers the built-in constructors extracted from the paper's proofs.
/// Idempotent; called by eval().
void register_builtin_witnesses();

struct SearchParams {
    size_t max_atoms = 8;
    unsigned denominator = 4;  // masses on the 1/q grid, q <= denominator
    uint32_t max_values = 4;
    unsigned long long max_models = 1'000'000;
    unsigned seed = 0;   // 0: plain deterministic order; else seeded shuffle
    unsigned jobs = 1;
};

/// Searches small models satisfying every antecedent and violating the
/// consequent. Absence of a counterexample is not a proof.
std::optional<FiniteModel> find_counterexample(const std::vector<FormulaPtr>& antecedents,
                                               const FormulaPtr& consequent,
                                               const SearchParams& params,
                                               const Budget& budget);

}  // namespace fotpi
