#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fotpi/formula.hpp"
#include "fotpi/normalize.hpp"

namespace fotpi {

enum class ParamKind { RV, Nat, Form };

/// A registered derived predicate. expand1 produces one expansion step (the
/// result may contain further macro calls); recursive expansion terminates
/// because the dependency graph is acyclic except for the card recursion,
/// which unrolls on its constant argument.
struct MacroDef {
    std::string name;
    std::vector<ParamKind> params;
    bool variadic = false;   // extra trailing args allowed, kind params.back()
    size_t min_arity = 0;    // minimum arg count when variadic
    bool h_atomic = false;   // a Delta_0 leaf of the linear entropy hierarchy
    std::vector<std::string> witness_hints;
    std::function<FormulaPtr(const std::vector<MacroArg>&, long long&)> expand1;
    std::string doc;
};

class MacroRegistry {
public:
    MacroRegistry();

    static const MacroRegistry& instance();

    const MacroDef* find(const std::string& name) const;
    const MacroDef& get(const std::string& name) const;
    std::vector<std::string> names() const;

    /// Empty string when the call is well-formed, else a diagnostic.
    std::string check_call(const std::string& name, const std::vector<MacroArg>& args) const;

    FormulaPtr expand_once(const Formula& call, long long& counter) const;

    /// Recursively expands every macro call; the result is MacroCall-free.
    FormulaPtr expand_full(const FormulaPtr& f) const;

    /// expand_full of a single call, with arity checking.
    FormulaPtr expand(const std::string& name, const std::vector<MacroArg>& args) const;

private:
    std::map<std::string, MacroDef> defs_;

    void add(MacroDef d);
    void register_core();
    void register_definable();
    void register_events();
    void register_seq();
};

/// Hierarchy classification. Strict pi mode expands macros and eliminates
/// join-terms first; sugared modes resolve macro calls through memoized
/// per-macro level summaries so large expansions are never materialized.
HierarchyLevel classify(const FormulaPtr& f, Hierarchy hierarchy, JoinMode mode);

}  // namespace fotpi
