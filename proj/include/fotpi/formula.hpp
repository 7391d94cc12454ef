#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "fotpi/rational.hpp"
#include "fotpi/term.hpp"

namespace fotpi {

enum class Cmp { Ge, Gt, Eq };  // compared against zero

/// A linear combination of joint entropies, sum_S a_S * H(X_S) <cmp> 0.
/// Keys are nonempty sorted variable-name sets; coefficients exact rationals.
struct LinearEntropyExpr {
    std::map<std::vector<std::string>, Rat> coeffs;
    Cmp cmp = Cmp::Ge;

    void add(const std::vector<std::string>& vars, const Rat& c);
    void validate() const;  // throws on empty keys / all-zero combination
    std::string str() const;
    bool operator==(const LinearEntropyExpr&) const = default;
};

/// The conditional-distribution atom  lhsTarget | lhsCond  r~  rhsTarget | rhsCond.
struct CondDistRel {
    std::vector<Term> lhs_cond;
    Term lhs_target;
    std::vector<Term> rhs_cond;
    Term rhs_target;
    bool operator==(const CondDistRel&) const = default;
};

enum class Kind {
    Indep,
    EntropyLinear,
    CondDistRelAtom,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Exists,
    Forall,
    MacroCall,
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Witness-constructor metadata attached to a quantifier during macro
/// expansion. Constructors are looked up by name in the evaluator registry;
/// \p args are the macro's argument terms after substitution.
struct Hint {
    std::string constructor;
    std::vector<Term> args;
    std::vector<long long> nats;
    bool operator==(const Hint&) const = default;
};

/// Macro argument: a term, a natural-number constant, or a formula parameter.
using MacroArg = std::variant<Term, long long, FormulaPtr>;

/// Immutable formula node. Build through the factory functions; share freely.
class Formula {
public:
    Kind kind;

    // Indep
    Term t1, t2;  // canonically ordered (t1 <= t2)
    // EntropyLinear
    LinearEntropyExpr ent;
    // CondDistRelAtom
    CondDistRel cdr;
    // Not / And / Or / Implies / Iff / quantifier body
    std::vector<FormulaPtr> kids;
    // Exists / Forall
    std::vector<std::string> binders;
    std::optional<Hint> hint;
    // MacroCall
    std::string macro;
    std::vector<MacroArg> args;

    static FormulaPtr indep(Term a, Term b);
    static FormulaPtr entropy(LinearEntropyExpr e);
    static FormulaPtr cdrel(CondDistRel c);
    static FormulaPtr lnot(FormulaPtr f);
    static FormulaPtr land(std::vector<FormulaPtr> fs);   // flattens nested And
    static FormulaPtr lor(std::vector<FormulaPtr> fs);    // flattens nested Or
    static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
    static FormulaPtr iff(FormulaPtr a, FormulaPtr b);
    static FormulaPtr exists(std::vector<std::string> vars, FormulaPtr body,
                             std::optional<Hint> hint = std::nullopt);
    static FormulaPtr forall(std::vector<std::string> vars, FormulaPtr body,
                             std::optional<Hint> hint = std::nullopt);
    static FormulaPtr call(std::string name, std::vector<MacroArg> args);

    /// True / False as empty conjunction / disjunction.
    static FormulaPtr top() { return land({}); }
    static FormulaPtr bottom() { return lor({}); }

    bool is_atom() const {
        return kind == Kind::Indep || kind == Kind::EntropyLinear ||
               kind == Kind::CondDistRelAtom;
    }
    bool is_quantifier() const { return kind == Kind::Exists || kind == Kind::Forall; }

    std::string str() const;
    std::string str_child() const;

    bool equals(const Formula& o) const;
};

bool eq(const FormulaPtr& a, const FormulaPtr& b);

std::set<std::string> free_vars(const FormulaPtr& f);
bool contains_macro(const FormulaPtr& f);
bool contains_kind(const FormulaPtr& f, Kind k);

/// Capture-free renaming of free variables according to \p map.
FormulaPtr rename_free(const FormulaPtr& f,
                       const std::map<std::string, std::string>& map);

/// Renames bound variables so that every binder in the formula introduces a
/// globally fresh, unique name (counter-based).
FormulaPtr freshen_binders(const FormulaPtr& f, long long& counter);

std::string to_string(const MacroArg& a);

}  // namespace fotpi
