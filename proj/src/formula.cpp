#include "fotpi/formula.hpp"

#include <algorithm>

namespace fotpi {

void LinearEntropyExpr::add(const std::vector<std::string>& vars, const Rat& c) {
    auto key = vars;
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    if (key.empty()) throw error("entropy term over empty variable set");
    auto [it, fresh] = coeffs.try_emplace(key, c);
    if (!fresh) it->second += c;
    if (it->second == 0) coeffs.erase(it);
}

void LinearEntropyExpr::validate() const {
    if (coeffs.empty()) throw error("entropy-linear expression has no nonzero coefficient");
    for (const auto& [k, v] : coeffs) {
        if (k.empty()) throw error("entropy term over empty variable set");
        if (v == 0) throw error("zero coefficient stored in entropy expression");
    }
}

std::string LinearEntropyExpr::str() const {
    std::string s;
    bool first = true;
    for (const auto& [vars, c] : coeffs) {
        Rat a = c;
        if (first) {
            if (a < 0) { s += "-"; a = -a; }
        } else {
            s += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        first = false;
        if (a != 1) s += rat_str(a) + "*";
        s += "H(";
        for (size_t i = 0; i < vars.size(); ++i) {
            if (i) s += ",";
            s += vars[i];
        }
        s += ")";
    }
    switch (cmp) {
        case Cmp::Ge: s += " >= 0"; break;
        case Cmp::Gt: s += " > 0"; break;
        case Cmp::Eq: s += " = 0"; break;
    }
    return s;
}

FormulaPtr Formula::indep(Term a, Term b) {
    Formula f;
    f.kind = Kind::Indep;
    if (b < a) std::swap(a, b);
    f.t1 = std::move(a);
    f.t2 = std::move(b);
    return std::make_shared<Formula>(std::move(f));
}

FormulaPtr Formula::entropy(LinearEntropyExpr e) {
    e.validate();
    Formula f;
    f.kind = Kind::EntropyLinear;
    f.ent = std::move(e);
    return std::make_shared<Formula>(std::move(f));
}

FormulaPtr Formula::cdrel(CondDistRel c) {
    if (c.lhs_cond.size() != c.rhs_cond.size())
        throw error("cdrel: conditioning lists differ in length");
    Formula f;
    f.kind = Kind::CondDistRelAtom;
    f.cdr = std::move(c);
    return std::make_shared<Formula>(std::move(f));
}

FormulaPtr Formula::lnot(FormulaPtr g) {
    Formula f;
    f.kind = Kind::Not;
    f.kids = {std::move(g)};
    return std::make_shared<Formula>(std::move(f));
}

FormulaPtr Formula::land(std::vector<FormulaPtr> fs) {
    Formula f;
    f.kind = Kind::And;
    for (auto& g : fs) {
        if (g->kind == Kind::And)
            f.kids.insert(f.kids.end(), g->kids.begin(), g->kids.end());
        else
            f.kids.push_back(std::move(g));
    }
    return std::make_shared<Formula>(std::move(f));
}

FormulaPtr Formula::lor(std::vector<FormulaPtr> fs) {
    Formula f;
    f.kind = Kind::Or;
    for (auto& g : fs) {
        if (g->kind == Kind::Or)
            f.kids.insert(f.kids.end(), g->kids.begin(), g->kids.end());
        else
            f.kids.push_back(std::move(g));
    }
    return std::make_shared<Formula>(std::move(f));
}

FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
    Formula f;
    f.kind = Kind::Implies;
    f.kids = {std::move(a), std::move(b)};
    return std::make_shared<Formula>(std::move(f));
}

FormulaPtr Formula::iff(FormulaPtr a, FormulaPtr b) {
    Formula f;
    f.kind = Kind::Iff;
    f.kids = {std::move(a), std::move(b)};
    return std::make_shared<Formula>(std::move(f));
}

static FormulaPtr quant(Kind k, std::vector<std::string> vars, FormulaPtr body,
                        std::optional<Hint> hint) {
    if (vars.empty()) throw error("quantifier with empty variable list");
    Formula f;
    f.kind = k;
    f.binders = std::move(vars);
    f.kids = {std::move(body)};
    f.hint = std::move(hint);
    return std::make_shared<Formula>(std::move(f));
}

FormulaPtr Formula::exists(std::vector<std::string> vars, FormulaPtr body,
                           std::optional<Hint> hint) {
    return quant(Kind::Exists, std::move(vars), std::move(body), std::move(hint));
}

FormulaPtr Formula::forall(std::vector<std::string> vars, FormulaPtr body,
                           std::optional<Hint> hint) {
    return quant(Kind::Forall, std::move(vars), std::move(body), std::move(hint));
}

FormulaPtr Formula::call(std::string name, std::vector<MacroArg> args) {
    Formula f;
    f.kind = Kind::MacroCall;
    f.macro = std::move(name);
    f.args = std::move(args);
    return std::make_shared<Formula>(std::move(f));
}

std::string to_string(const MacroArg& a) {
    if (std::holds_alternative<Term>(a)) return std::get<Term>(a).str();
    if (std::holds_alternative<long long>(a)) return std::to_string(std::get<long long>(a));
    return std::get<FormulaPtr>(a)->str();
}

std::string Formula::str() const {
    switch (kind) {
        case Kind::Indep:
            return "indep(" + t1.str() + "," + t2.str() + ")";
        case Kind::EntropyLinear:
            return ent.str();
        case Kind::CondDistRelAtom: {
            auto side = [](const Term& tgt, const std::vector<Term>& cond) {
                std::string s = tgt.str() + " | ";
                if (cond.empty()) s += "_";
                for (size_t i = 0; i < cond.size(); ++i) {
                    if (i) s += ",";
                    s += cond[i].str();
                }
                return s;
            };
            return "cdrel(" + side(cdr.lhs_target, cdr.lhs_cond) + " ; " +
                   side(cdr.rhs_target, cdr.rhs_cond) + ")";
        }
        case Kind::Not:
            return "not " + kids[0]->str_child();
        case Kind::And: {
            if (kids.empty()) return "true";
            std::string s = "(";
            for (size_t i = 0; i < kids.size(); ++i) {
                if (i) s += " and ";
                s += kids[i]->str_child();
            }
            return s + ")";
        }
        case Kind::Or: {
            if (kids.empty()) return "false";
            std::string s = "(";
            for (size_t i = 0; i < kids.size(); ++i) {
                if (i) s += " or ";
                s += kids[i]->str_child();
            }
            return s + ")";
        }
        case Kind::Implies:
            return "(" + kids[0]->str_child() + " -> " + kids[1]->str_child() + ")";
        case Kind::Iff:
            return "(" + kids[0]->str_child() + " <-> " + kids[1]->str_child() + ")";
        case Kind::Exists:
        case Kind::Forall: {
            std::string s = kind == Kind::Exists ? "exists " : "forall ";
            for (size_t i = 0; i < binders.size(); ++i) {
                if (i) s += ",";
                s += binders[i];
            }
            return s + ". " + kids[0]->str();
        }
        case Kind::MacroCall: {
            std::string s = macro + "(";
            for (size_t i = 0; i < args.size(); ++i) {
                if (i) s += ", ";
                s += to_string(args[i]);
            }
            return s + ")";
        }
    }
    throw error("unreachable formula kind");
}

std::string Formula::str_child() const {
    // Quantifier bodies extend maximally to the right; parenthesize them when
    // they appear under a connective so printing round-trips.
    if (is_quantifier()) return "(" + str() + ")";
    return str();
}

bool Formula::equals(const Formula& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Indep:
            return t1 == o.t1 && t2 == o.t2;
        case Kind::EntropyLinear:
            return ent == o.ent;
        case Kind::CondDistRelAtom:
            return cdr == o.cdr;
        case Kind::MacroCall: {
            if (macro != o.macro || args.size() != o.args.size()) return false;
            for (size_t i = 0; i < args.size(); ++i) {
                const auto &a = args[i], &b = o.args[i];
                if (a.index() != b.index()) return false;
                if (std::holds_alternative<Term>(a)) {
                    if (!(std::get<Term>(a) == std::get<Term>(b))) return false;
                } else if (std::holds_alternative<long long>(a)) {
                    if (std::get<long long>(a) != std::get<long long>(b)) return false;
                } else if (!eq(std::get<FormulaPtr>(a), std::get<FormulaPtr>(b))) {
                    return false;
                }
            }
            return true;
        }
        default: {
            if (binders != o.binders) return false;
            if (kids.size() != o.kids.size()) return false;
            for (size_t i = 0; i < kids.size(); ++i)
                if (!eq(kids[i], o.kids[i])) return false;
            return true;
        }
    }
}

bool eq(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->equals(*b);
}

static void free_vars_rec(const FormulaPtr& f, std::set<std::string>& bound,
                          std::set<std::string>& out) {
    switch (f->kind) {
        case Kind::Indep:
            for (const auto& n : f->t1.names())
                if (!bound.count(n)) out.insert(n);
            for (const auto& n : f->t2.names())
                if (!bound.count(n)) out.insert(n);
            return;
        case Kind::EntropyLinear:
            for (const auto& [vars, c] : f->ent.coeffs)
                for (const auto& n : vars)
                    if (!bound.count(n)) out.insert(n);
            return;
        case Kind::CondDistRelAtom: {
            auto scan = [&](const Term& t) {
                for (const auto& n : t.names())
                    if (!bound.count(n)) out.insert(n);
            };
            scan(f->cdr.lhs_target);
            scan(f->cdr.rhs_target);
            for (const auto& t : f->cdr.lhs_cond) scan(t);
            for (const auto& t : f->cdr.rhs_cond) scan(t);
            return;
        }
        case Kind::MacroCall:
            for (const auto& a : f->args) {
                if (std::holds_alternative<Term>(a)) {
                    for (const auto& n : std::get<Term>(a).names())
                        if (!bound.count(n)) out.insert(n);
                } else if (std::holds_alternative<FormulaPtr>(a)) {
                    free_vars_rec(std::get<FormulaPtr>(a), bound, out);
                }
            }
            return;
        case Kind::Exists:
        case Kind::Forall: {
            std::vector<std::string> added;
            for (const auto& v : f->binders)
                if (bound.insert(v).second) added.push_back(v);
            free_vars_rec(f->kids[0], bound, out);
            for (const auto& v : added) bound.erase(v);
            return;
        }
        default:
            for (const auto& k : f->kids) free_vars_rec(k, bound, out);
            return;
    }
}

std::set<std::string> free_vars(const FormulaPtr& f) {
    std::set<std::string> bound, out;
    free_vars_rec(f, bound, out);
    return out;
}

bool contains_kind(const FormulaPtr& f, Kind k) {
    if (f->kind == k) return true;
    for (const auto& c : f->kids)
        if (contains_kind(c, k)) return true;
    if (f->kind == Kind::MacroCall)
        for (const auto& a : f->args)
            if (std::holds_alternative<FormulaPtr>(a) &&
                contains_kind(std::get<FormulaPtr>(a), k))
                return true;
    return false;
}

bool contains_macro(const FormulaPtr& f) { return contains_kind(f, Kind::MacroCall); }

FormulaPtr rename_free(const FormulaPtr& f, const std::map<std::string, std::string>& map) {
    if (map.empty()) return f;
    switch (f->kind) {
        case Kind::Indep:
            return Formula::indep(f->t1.renamed(map), f->t2.renamed(map));
        case Kind::EntropyLinear: {
            LinearEntropyExpr e;
            e.cmp = f->ent.cmp;
            for (const auto& [vars, c] : f->ent.coeffs) {
                std::vector<std::string> nv;
                for (const auto& n : vars) {
                    auto it = map.find(n);
                    nv.push_back(it == map.end() ? n : it->second);
                }
                e.add(nv, c);
            }
            return Formula::entropy(std::move(e));
        }
        case Kind::CondDistRelAtom: {
            CondDistRel c;
            c.lhs_target = f->cdr.lhs_target.renamed(map);
            c.rhs_target = f->cdr.rhs_target.renamed(map);
            for (const auto& t : f->cdr.lhs_cond) c.lhs_cond.push_back(t.renamed(map));
            for (const auto& t : f->cdr.rhs_cond) c.rhs_cond.push_back(t.renamed(map));
            return Formula::cdrel(std::move(c));
        }
        case Kind::MacroCall: {
            std::vector<MacroArg> args;
            for (const auto& a : f->args) {
                if (std::holds_alternative<Term>(a))
                    args.push_back(std::get<Term>(a).renamed(map));
                else if (std::holds_alternative<FormulaPtr>(a))
                    args.push_back(rename_free(std::get<FormulaPtr>(a), map));
                else
                    args.push_back(a);
            }
            return Formula::call(f->macro, std::move(args));
        }
        case Kind::Exists:
        case Kind::Forall: {
            auto inner = map;
            for (const auto& v : f->binders) inner.erase(v);
            auto body = rename_free(f->kids[0], inner);
            return f->kind == Kind::Exists ? Formula::exists(f->binders, body, f->hint)
                                           : Formula::forall(f->binders, body, f->hint);
        }
        default: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids) kids.push_back(rename_free(k, map));
            switch (f->kind) {
                case Kind::Not: return Formula::lnot(kids[0]);
                case Kind::And: return Formula::land(std::move(kids));
                case Kind::Or: return Formula::lor(std::move(kids));
                case Kind::Implies: return Formula::implies(kids[0], kids[1]);
                case Kind::Iff: return Formula::iff(kids[0], kids[1]);
                default: throw error("unreachable in rename_free");
            }
        }
    }
}

static FormulaPtr freshen_rec(const FormulaPtr& f, std::map<std::string, std::string> scope,
                              long long& counter) {
    if (f->is_quantifier()) {
        std::vector<std::string> nb;
        for (const auto& v : f->binders) {
            std::string nv = "_q" + std::to_string(++counter);
            scope[v] = nv;
            nb.push_back(nv);
        }
        auto body = freshen_rec(f->kids[0], scope, counter);
        auto hint = f->hint;
        if (hint) {
            for (auto& t : hint->args) t = t.renamed(scope);
        }
        return f->kind == Kind::Exists ? Formula::exists(nb, body, hint)
                                       : Formula::forall(nb, body, hint);
    }
    // Non-binding nodes: rename according to scope, recurse structurally.
    switch (f->kind) {
        case Kind::Indep:
        case Kind::EntropyLinear:
        case Kind::CondDistRelAtom:
        case Kind::MacroCall: {
            // rename_free on atoms/calls with the scope map, but formula args
            // must recurse through this function to reach their own binders.
            if (f->kind == Kind::MacroCall) {
                std::vector<MacroArg> args;
                for (const auto& a : f->args) {
                    if (std::holds_alternative<Term>(a))
                        args.push_back(std::get<Term>(a).renamed(scope));
                    else if (std::holds_alternative<FormulaPtr>(a))
                        args.push_back(freshen_rec(std::get<FormulaPtr>(a), scope, counter));
                    else
                        args.push_back(a);
                }
                return Formula::call(f->macro, std::move(args));
            }
            return rename_free(f, scope);
        }
        default: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids) kids.push_back(freshen_rec(k, scope, counter));
            switch (f->kind) {
                case Kind::Not: return Formula::lnot(kids[0]);
                case Kind::And: return Formula::land(std::move(kids));
                case Kind::Or: return Formula::lor(std::move(kids));
                case Kind::Implies: return Formula::implies(kids[0], kids[1]);
                case Kind::Iff: return Formula::iff(kids[0], kids[1]);
                default: throw error("unreachable in freshen_binders");
            }
        }
    }
}

FormulaPtr freshen_binders(const FormulaPtr& f, long long& counter) {
    std::map<std::string, std::string> scope;
    return freshen_rec(f, std::move(scope), counter);
}

}  // namespace fotpi
