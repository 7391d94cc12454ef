#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fotpi/formula.hpp"
#include "fotpi/rational.hpp"
#include "fotpi/term.hpp"

namespace fotpi {

enum class EntropySign { Negative, Zero, Positive };

/// A finite sample space carried as a list of exact rational atom masses.
struct FiniteSpace {
    std::vector<Rat> atoms;

    void validate() const;  // nonnegative masses summing to exactly 1
    size_t size() const { return atoms.size(); }
};

/// A finite probability model: the space plus named random variables given as
/// labelings of the atoms. Immutable by convention; adjoin/refine return new
/// models.
class FiniteModel {
public:
    FiniteModel() = default;
    FiniteModel(FiniteSpace space, std::map<std::string, std::vector<uint32_t>> vars);

    const FiniteSpace& space() const { return space_; }
    size_t atom_count() const { return space_.size(); }
    const std::map<std::string, std::vector<uint32_t>>& vars() const { return vars_; }

    bool has_var(const std::string& name) const { return vars_.count(name) != 0; }
    const std::vector<uint32_t>& labels(const std::string& name) const;

    /// Atom classes of a term: the label vector of the variable, or the
    /// canonical class ids of the tuple for a join. Throws on unknown names.
    std::vector<uint32_t> resolve(const Term& t) const;

    /// Number of distinct positive-mass values of the term.
    size_t support_size(const Term& t) const;

    /// Masses of the positive-probability classes, indexed by class id.
    std::vector<Rat> distribution(const Term& t) const;

    FiniteModel with_var(const std::string& name, std::vector<uint32_t> labels) const;
    FiniteModel without_var(const std::string& name) const;

    std::string str() const;

private:
    FiniteSpace space_;
    std::map<std::string, std::vector<uint32_t>> vars_;
};

bool check_indep(const FiniteModel& m, const Term& s, const Term& t);
bool check_ci(const FiniteModel& m, const Term& s, const Term& t, const Term& u);
bool is_function_of(const FiniteModel& m, const Term& s, const Term& t);

/// X =i Y: mutual almost-sure functional dependence.
bool relabel_equal(const FiniteModel& m, const Term& s, const Term& t);

/// X r= Y: equality of mass multisets.
bool same_dist_relabel(const FiniteModel& m, const Term& s, const Term& t);

/// lhs_target | lhs_cond  r~  rhs_target | rhs_cond: existence of injective
/// relabellings aligning the conditional kernels. Supports larger than
/// \p support_cap raise an error rather than guessing.
bool cond_dist_relabel(const FiniteModel& m, const std::vector<Term>& lhs_cond,
                       const Term& lhs_target, const std::vector<Term>& rhs_cond,
                       const Term& rhs_target, size_t support_cap = 8);

/// Exact sign of sum_S a_S H(X_S); never consults floating point.
EntropySign entropy_sign(const FiniteModel& m, const LinearEntropyExpr& e);

/// Splits every atom into \p k equal parts; existing variables keep their
/// distributions.
FiniteModel refine(const FiniteModel& m, size_t k);

/// Adjoins a variable through an exact conditional kernel: row i gives the
/// distribution of the new variable on atom i. Zero-mass cells are dropped.
FiniteModel adjoin(const FiniteModel& m, const std::string& name,
                   const std::vector<std::vector<Rat>>& kernel);

/// Adjoins a variable independent of everything with the given pmf.
FiniteModel adjoin_independent(const FiniteModel& m, const std::string& name,
                               const std::vector<Rat>& pmf);

/// JSON model format: {"space": ["1/4","3/4"], "vars": {"X": [0,1]}}.
FiniteModel model_from_json(const std::string& text);
std::string model_to_json(const FiniteModel& m);

}  // namespace fotpi
