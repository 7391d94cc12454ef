#include "fotpi/normalize.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fotpi/builders.hpp"

namespace fotpi {

std::string HierarchyLevel::str() const {
    if (sigma == pi) return "Delta " + std::to_string(sigma);
    if (sigma < pi) return "Sigma " + std::to_string(sigma);
    return "Pi " + std::to_string(pi);
}

bool HierarchyLevel::better(HierarchyLevel a, HierarchyLevel b) {
    int ma = std::max(a.sigma, a.pi), mb = std::max(b.sigma, b.pi);
    if (ma != mb) return ma < mb;
    if (a.sigma + a.pi != b.sigma + b.pi) return a.sigma + a.pi < b.sigma + b.pi;
    return a.sigma < b.sigma;
}

// ---------------------------------------------------------------------------
// NNF

static FormulaPtr drop_iff_impl(const FormulaPtr& f) {
    switch (f->kind) {
        case Kind::Implies:
            return Formula::lor(
                {Formula::lnot(drop_iff_impl(f->kids[0])), drop_iff_impl(f->kids[1])});
        case Kind::Iff: {
            auto a = drop_iff_impl(f->kids[0]);
            auto b = drop_iff_impl(f->kids[1]);
            return Formula::land({Formula::lor({Formula::lnot(a), b}),
                                  Formula::lor({Formula::lnot(b), a})});
        }
        case Kind::Not:
            return Formula::lnot(drop_iff_impl(f->kids[0]));
        case Kind::And:
        case Kind::Or: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids) kids.push_back(drop_iff_impl(k));
            return f->kind == Kind::And ? Formula::land(std::move(kids))
                                        : Formula::lor(std::move(kids));
        }
        case Kind::Exists:
            return Formula::exists(f->binders, drop_iff_impl(f->kids[0]), f->hint);
        case Kind::Forall:
            return Formula::forall(f->binders, drop_iff_impl(f->kids[0]), f->hint);
        default:
            return f;
    }
}

static FormulaPtr push_not(const FormulaPtr& f, bool negate) {
    switch (f->kind) {
        case Kind::Not:
            return push_not(f->kids[0], !negate);
        case Kind::And:
        case Kind::Or: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids) kids.push_back(push_not(k, negate));
            bool conj = (f->kind == Kind::And) != negate;
            return conj ? Formula::land(std::move(kids)) : Formula::lor(std::move(kids));
        }
        case Kind::Exists:
        case Kind::Forall: {
            auto body = push_not(f->kids[0], negate);
            bool ex = (f->kind == Kind::Exists) != negate;
            return ex ? Formula::exists(f->binders, body, f->hint)
                      : Formula::forall(f->binders, body, f->hint);
        }
        default:
            return negate ? Formula::lnot(f) : f;
    }
}

FormulaPtr to_nnf(const FormulaPtr& f) {
    if (contains_macro(f)) throw error("to_nnf: formula contains unexpanded macro calls");
    return push_not(drop_iff_impl(f), false);
}

// ---------------------------------------------------------------------------
// Prenex

namespace {

struct Prefix {
    // (is_exists, vars) blocks, outermost first
    std::vector<std::pair<bool, std::vector<std::string>>> blocks;
    FormulaPtr matrix;
};

void append_block(Prefix& p, bool ex, const std::vector<std::string>& vars) {
    if (vars.empty()) return;
    if (!p.blocks.empty() && p.blocks.back().first == ex) {
        auto& b = p.blocks.back().second;
        b.insert(b.end(), vars.begin(), vars.end());
    } else {
        p.blocks.push_back({ex, vars});
    }
}

Prefix prenex_rec(const FormulaPtr& f, bool positive) {
    switch (f->kind) {
        case Kind::Exists:
        case Kind::Forall: {
            Prefix body = prenex_rec(f->kids[0], positive);
            Prefix p;
            append_block(p, (f->kind == Kind::Exists) == positive, f->binders);
            for (auto& b : body.blocks) append_block(p, b.first, b.second);
            p.matrix = body.matrix;
            return p;
        }
        case Kind::Not: {
            Prefix inner = prenex_rec(f->kids[0], !positive);
            inner.matrix = Formula::lnot(inner.matrix);
            return inner;
        }
        case Kind::Implies: {
            Prefix a = prenex_rec(f->kids[0], !positive);
            Prefix b = prenex_rec(f->kids[1], positive);
            std::vector<Prefix*> parts{&a, &b};
            Prefix p;
            // Greedy merge: keep extending the current block kind when any
            // child can contribute to it, preferring exists at a fresh start.
            std::vector<size_t> at(parts.size(), 0);
            while (true) {
                std::set<bool> avail;
                for (size_t i = 0; i < parts.size(); ++i)
                    if (at[i] < parts[i]->blocks.size())
                        avail.insert(parts[i]->blocks[at[i]].first);
                if (avail.empty()) break;
                bool pick;
                if (avail.size() == 1)
                    pick = *avail.begin();
                else if (!p.blocks.empty())
                    pick = p.blocks.back().first;
                else
                    pick = true;  // prefer a leading exists block
                for (size_t i = 0; i < parts.size(); ++i)
                    if (at[i] < parts[i]->blocks.size() &&
                        parts[i]->blocks[at[i]].first == pick)
                        append_block(p, pick, parts[i]->blocks[at[i]++].second);
            }
            p.matrix = Formula::implies(a.matrix, b.matrix);
            return p;
        }
        case Kind::Iff: {
            if (contains_kind(f, Kind::Exists) || contains_kind(f, Kind::Forall))
                throw error("to_prenex: quantifier under iff; normalize with to_nnf first");
            Prefix p;
            p.matrix = f;
            return p;
        }
        case Kind::And:
        case Kind::Or: {
            std::vector<Prefix> kids;
            for (const auto& k : f->kids) kids.push_back(prenex_rec(k, positive));
            Prefix p;
            std::vector<size_t> at(kids.size(), 0);
            while (true) {
                std::set<bool> avail;
                for (size_t i = 0; i < kids.size(); ++i)
                    if (at[i] < kids[i].blocks.size())
                        avail.insert(kids[i].blocks[at[i]].first);
                if (avail.empty()) break;
                bool pick;
                if (avail.size() == 1)
                    pick = *avail.begin();
                else if (!p.blocks.empty())
                    pick = p.blocks.back().first;
                else
                    pick = true;
                for (size_t i = 0; i < kids.size(); ++i)
                    if (at[i] < kids[i].blocks.size() && kids[i].blocks[at[i]].first == pick)
                        append_block(p, pick, kids[i].blocks[at[i]++].second);
            }
            std::vector<FormulaPtr> ms;
            for (auto& k : kids) ms.push_back(k.matrix);
            p.matrix = f->kind == Kind::And ? Formula::land(std::move(ms))
                                            : Formula::lor(std::move(ms));
            return p;
        }
        default: {
            Prefix p;
            p.matrix = f;
            return p;
        }
    }
}

void collect_binders(const FormulaPtr& f, std::vector<std::string>& out) {
    if (f->is_quantifier())
        out.insert(out.end(), f->binders.begin(), f->binders.end());
    for (const auto& k : f->kids) collect_binders(k, out);
}

bool has_duplicate_binders(const FormulaPtr& f) {
    std::vector<std::string> all;
    collect_binders(f, all);
    std::set<std::string> seen(all.begin(), all.end());
    return seen.size() != all.size();
}

}  // namespace

FormulaPtr to_prenex(const FormulaPtr& f) {
    if (contains_macro(f)) throw error("to_prenex: formula contains unexpanded macro calls");
    FormulaPtr g = f;
    if (has_duplicate_binders(g)) {
        long long counter = 0;
        g = freshen_binders(g, counter);
    }
    Prefix p = prenex_rec(g, true);
    FormulaPtr out = p.matrix;
    for (auto it = p.blocks.rbegin(); it != p.blocks.rend(); ++it)
        out = it->first ? Formula::exists(it->second, out) : Formula::forall(it->second, out);
    return out;
}

// ---------------------------------------------------------------------------
// Level algebra

HierarchyLevel classify_core(const FormulaPtr& f, Hierarchy hierarchy,
                             const MacroLevelFn* macro_level) {
    switch (f->kind) {
        case Kind::Indep:
            return {0, 0};
        case Kind::EntropyLinear:
        case Kind::CondDistRelAtom:
            if (hierarchy == Hierarchy::Pi)
                throw error("entropy-linear and cdrel atoms are legal only in the H hierarchy");
            return {0, 0};
        case Kind::Not:
            return classify_core(f->kids[0], hierarchy, macro_level).swapped();
        case Kind::And:
        case Kind::Or: {
            HierarchyLevel l{0, 0};
            for (const auto& k : f->kids)
                l = HierarchyLevel::max(l, classify_core(k, hierarchy, macro_level));
            return l;
        }
        case Kind::Implies: {
            auto a = classify_core(f->kids[0], hierarchy, macro_level);
            auto b = classify_core(f->kids[1], hierarchy, macro_level);
            return HierarchyLevel::max(a.swapped(), b);
        }
        case Kind::Iff: {
            auto a = classify_core(f->kids[0], hierarchy, macro_level);
            auto b = classify_core(f->kids[1], hierarchy, macro_level);
            return HierarchyLevel::max(HierarchyLevel::max(a.swapped(), b),
                                       HierarchyLevel::max(b.swapped(), a));
        }
        case Kind::Exists:
        case Kind::Forall: {
            auto body = classify_core(f->kids[0], hierarchy, macro_level);
            auto fv = free_vars(f->kids[0]);
            bool effective = false;
            for (const auto& v : f->binders)
                if (fv.count(v)) { effective = true; break; }
            if (!effective) return body;  // vacuous binder dropped
            if (f->kind == Kind::Exists) {
                int s = std::max(1, std::min(body.sigma, body.pi + 1));
                return {s, s + 1};
            }
            int p = std::max(1, std::min(body.pi, body.sigma + 1));
            return {p + 1, p};
        }
        case Kind::MacroCall:
            if (!macro_level) throw error("classify: unexpanded macro call " + f->macro);
            return (*macro_level)(*f);
    }
    throw error("unreachable in classify_core");
}

// ---------------------------------------------------------------------------
// Join elimination

namespace {

using JoinSet = std::vector<std::string>;  // sorted names, size >= 2

// attachment node (nullptr = root) -> join sets introduced there
struct JoinPlan {
    std::map<const Formula*, std::set<JoinSet>> at;
    int count = 0;
};

void scan_joins(const FormulaPtr& f,
                std::vector<std::pair<const Formula*, std::set<std::string>>>& stack,
                JoinPlan& plan) {
    auto attach = [&](const Term& t) {
        if (!t.is_join()) return;
        const Formula* node = nullptr;
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            bool binds = false;
            for (const auto& n : t.names())
                if (it->second.count(n)) { binds = true; break; }
            if (binds) { node = it->first; break; }
        }
        auto [pos, fresh] = plan.at[node].insert(t.names());
        if (fresh) ++plan.count;
    };
    switch (f->kind) {
        case Kind::Indep:
            attach(f->t1);
            attach(f->t2);
            return;
        case Kind::EntropyLinear:
        case Kind::CondDistRelAtom:
            throw error("eliminate_joins: entropy-linear/cdrel atoms are not allowed in strict mode");
        case Kind::Exists:
        case Kind::Forall: {
            stack.push_back({f.get(), {f->binders.begin(), f->binders.end()}});
            scan_joins(f->kids[0], stack, plan);
            stack.pop_back();
            return;
        }
        default:
            for (const auto& k : f->kids) scan_joins(k, stack, plan);
            return;
    }
}

FormulaPtr replace_join(const FormulaPtr& f, const JoinSet& j, const std::string& w) {
    auto rep = [&](const Term& t) {
        return t.is_join() && t.names() == j ? Term::var(w) : t;
    };
    switch (f->kind) {
        case Kind::Indep:
            return Formula::indep(rep(f->t1), rep(f->t2));
        case Kind::Exists:
            return Formula::exists(f->binders, replace_join(f->kids[0], j, w), f->hint);
        case Kind::Forall:
            return Formula::forall(f->binders, replace_join(f->kids[0], j, w), f->hint);
        case Kind::Not:
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Iff: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids) kids.push_back(replace_join(k, j, w));
            switch (f->kind) {
                case Kind::Not: return Formula::lnot(kids[0]);
                case Kind::And: return Formula::land(std::move(kids));
                case Kind::Or: return Formula::lor(std::move(kids));
                case Kind::Implies: return Formula::implies(kids[0], kids[1]);
                default: return Formula::iff(kids[0], kids[1]);
            }
        }
        default:
            return f;
    }
}

struct ElimState {
    const JoinPlan* plan;
    const std::vector<bool>* use_exists;  // one flag per introduced binder
    int next_binder = 0;
    long long counter = 0;
};

FormulaPtr wrap_joins(FormulaPtr body, const Formula* node, ElimState& st) {
    auto it = st.plan->at.find(node);
    if (it == st.plan->at.end()) return body;
    for (const auto& j : it->second) {
        std::string w = "_j" + std::to_string(++st.counter);
        bool ex = (*st.use_exists)[st.next_binder++];
        body = replace_join(body, j, w);
        std::vector<Term> parts;
        for (const auto& n : j) parts.push_back(Term::var(n));
        std::string u = "_j" + std::to_string(++st.counter);
        auto constraint = make_joint(Term::var(w), parts, u, st.counter);
        body = ex ? Formula::exists({w}, Formula::land({constraint, body}))
                  : Formula::forall({w}, Formula::implies(constraint, body));
    }
    return body;
}

FormulaPtr rebuild_elim(const FormulaPtr& f, ElimState& st) {
    switch (f->kind) {
        case Kind::Exists:
        case Kind::Forall: {
            auto body = rebuild_elim(f->kids[0], st);
            body = wrap_joins(body, f.get(), st);
            return f->kind == Kind::Exists ? Formula::exists(f->binders, body, f->hint)
                                           : Formula::forall(f->binders, body, f->hint);
        }
        case Kind::Not:
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Iff: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids) kids.push_back(rebuild_elim(k, st));
            switch (f->kind) {
                case Kind::Not: return Formula::lnot(kids[0]);
                case Kind::And: return Formula::land(std::move(kids));
                case Kind::Or: return Formula::lor(std::move(kids));
                case Kind::Implies: return Formula::implies(kids[0], kids[1]);
                default: return Formula::iff(kids[0], kids[1]);
            }
        }
        default:
            return f;
    }
}

}  // namespace

FormulaPtr eliminate_joins(const FormulaPtr& f, JoinMode mode) {
    if (contains_macro(f))
        throw error("eliminate_joins: formula contains unexpanded macro calls");
    if (mode == JoinMode::Sugared) return f;

    FormulaPtr g = f;
    if (has_duplicate_binders(g)) {
        long long counter = 0;
        g = freshen_binders(g, counter);
    }
    JoinPlan plan;
    std::vector<std::pair<const Formula*, std::set<std::string>>> stack;
    scan_joins(g, stack, plan);
    if (plan.count == 0) return g;
    if (plan.count > 12)
        throw error("eliminate_joins: too many distinct join terms (" +
                    std::to_string(plan.count) + ") for quantifier-kind search");

    FormulaPtr best;
    HierarchyLevel best_level{0, 0};
    for (unsigned mask = 0; mask < (1u << plan.count); ++mask) {
        std::vector<bool> use_exists(plan.count);
        for (int i = 0; i < plan.count; ++i) use_exists[i] = (mask >> i) & 1u;
        ElimState st{&plan, &use_exists};
        auto cand = rebuild_elim(g, st);
        cand = wrap_joins(cand, nullptr, st);
        auto lvl = classify_core(cand, Hierarchy::Pi);
        if (!best || HierarchyLevel::better(lvl, best_level)) {
            best = cand;
            best_level = lvl;
        }
    }
    return best;
}

}  // namespace fotpi
