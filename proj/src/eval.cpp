#include "fotpi/eval.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "fotpi/macro.hpp"
#include "fotpi/macro_detail.hpp"
#include "fotpi/semantics.hpp"

namespace fotpi {

void Budget::validate() const {
    if (max_refine < 1 || max_support < 1 || max_denominator < 1 || max_candidates < 1)
        throw error("budget fields must all be >= 1");
}

// ---------------------------------------------------------------------------
// Witness constructor registry

namespace {

struct WitnessRegistry {
    std::mutex mu;
    std::map<std::string, WitnessFn> fns;
};

WitnessRegistry& witness_registry() {
    static WitnessRegistry r;
    return r;
}

}  // namespace

void register_witness_constructor(const std::string& name, WitnessFn fn) {
    auto& r = witness_registry();
    std::lock_guard<std::mutex> g(r.mu);
    if (!r.fns.emplace(name, std::move(fn)).second)
        throw error("witness constructor already registered: " + name);
}

bool witness_constructor_registered(const std::string& name) {
    auto& r = witness_registry();
    std::lock_guard<std::mutex> g(r.mu);
    return r.fns.count(name) != 0;
}

static std::optional<WitnessFn> lookup_witness(const std::string& name) {
    auto& r = witness_registry();
    std::lock_guard<std::mutex> g(r.mu);
    auto it = r.fns.find(name);
    if (it == r.fns.end()) return std::nullopt;
    return it->second;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct BudgetExhausted {};

struct EvalCtx {
    EvalMode mode;
    Budget budget;
    unsigned long long candidates_left;

    void spend() {
        if (candidates_left == 0) throw BudgetExhausted{};
        --candidates_left;
    }
};

Verdict vnot(Verdict v) {
    if (v == Verdict::True_) return Verdict::False_;
    if (v == Verdict::False_) return Verdict::True_;
    return Verdict::Unknown;
}

TruthValue3 ev(const FormulaPtr& f, const FiniteModel& m, EvalCtx& ctx);
TruthValue3 eval_atom(const FormulaPtr& f, const FiniteModel& m);

/// Candidate labelings of the current atom partition with at most max_support
/// classes, in restricted-growth-string order (each partition appears once).
struct RgsEnum {
    size_t atoms;
    uint32_t maxv;
    std::vector<uint32_t> cur;
    bool done = false;

    RgsEnum(size_t atoms_, uint32_t maxv_) : atoms(atoms_), maxv(maxv_), cur(atoms_, 0) {}

    std::vector<uint32_t> out;

    const std::vector<uint32_t>* next() {
        if (done) return nullptr;
        out = cur;
        // advance to the next restricted growth string with values < maxv
        for (size_t i = atoms; i-- > 1;) {
            uint32_t prefix_max = 0;
            for (size_t j = 0; j < i; ++j) prefix_max = std::max(prefix_max, cur[j]);
            if (cur[i] < std::min(prefix_max + 1, maxv - 1)) {
                ++cur[i];
                for (size_t j = i + 1; j < atoms; ++j) cur[j] = 0;
                return &out;
            }
        }
        done = true;
        return &out;
    }
};

std::vector<Rat> bern_grid(unsigned max_denominator) {
    std::vector<Rat> out;
    for (unsigned q = 2; q <= max_denominator; ++q)
        for (unsigned j = 1; 2 * j <= q; ++j) {
            Rat p(j, q);
            if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
        }
    std::sort(out.begin(), out.end());
    return out;
}

/// Evaluates a quantifier block variable-by-variable over the candidate
/// family; \p want is the verdict that short-circuits (True for exists).
struct QuantSearch {
    EvalCtx& ctx;
    const FormulaPtr& body;
    const std::vector<std::string>& vars;
    Verdict want;
    bool saw_unknown = false;
    // Atoms that can reject a partial assignment early: conjunct atoms for an
    // existential block, disjunct/antecedent atoms for a universal one.
    std::vector<FormulaPtr> prune_atoms;
    bool prune_on_false = true;

    // atoms, oracle-backed macro calls, and their negations all evaluate
    // exactly and cheaply, so they can reject partial assignments
    static bool cheap(const FormulaPtr& f) {
        if (f->is_atom()) return true;
        return f->kind == Kind::MacroCall && semantic_oracle(f->macro).has_value();
    }
    static bool literal(const FormulaPtr& f) {
        return cheap(f) || (f->kind == Kind::Not && cheap(f->kids[0]));
    }
    static FormulaPtr negate_literal(const FormulaPtr& f) {
        return f->kind == Kind::Not ? f->kids[0] : Formula::lnot(f);
    }

    void collect_prunes() {
        if (want == Verdict::True_) {
            prune_on_false = true;
            if (body->kind == Kind::And)
                for (const auto& k : body->kids)
                    if (literal(k)) prune_atoms.push_back(k);
        } else {
            prune_on_false = false;  // a definitely-true disjunct settles the branch
            if (body->kind == Kind::Or) {
                for (const auto& k : body->kids)
                    if (literal(k)) prune_atoms.push_back(k);
            } else if (body->kind == Kind::Implies) {
                // a false antecedent literal makes the implication hold
                const auto& a = body->kids[0];
                if (literal(a)) {
                    prune_atoms.push_back(negate_literal(a));
                } else if (a->kind == Kind::And) {
                    for (const auto& k : a->kids)
                        if (literal(k)) prune_atoms.push_back(negate_literal(k));
                }
            }
        }
    }

    bool prune(const FiniteModel& ext) {
        for (const auto& atom : prune_atoms) {
            bool ok = true;
            for (const auto& v : free_vars(atom))
                if (!ext.has_var(v)) { ok = false; break; }
            if (!ok) continue;
            const FormulaPtr& check = atom->kind == Kind::Not ? atom->kids[0] : atom;
            Verdict v;
            if (check->kind == Kind::MacroCall) {
                auto sem = semantic_oracle(check->macro);
                v = (*sem)(ext, check->args) ? Verdict::True_ : Verdict::False_;
            } else {
                v = eval_atom(check, ext).verdict;
            }
            if (atom->kind == Kind::Not) v = vnot(v);
            if (prune_on_false && v == Verdict::False_) return true;
            if (!prune_on_false && v == Verdict::True_) return true;
        }
        return false;
    }

    std::optional<TruthValue3> try_candidate(const FiniteModel& ext, size_t next_var,
                                             const std::string& source);
    std::optional<TruthValue3> search(const FiniteModel& cur, size_t var_idx);
};

std::optional<TruthValue3> QuantSearch::try_candidate(const FiniteModel& ext, size_t next_var,
                                                      const std::string& source) {
    ctx.spend();
    if (next_var > 0 && next_var <= vars.size() && prune(ext)) return std::nullopt;
    std::optional<TruthValue3> sub;
    if (next_var >= vars.size()) {
        sub = ev(body, ext, ctx);
    } else {
        sub = search(ext, next_var);
        if (!sub) return std::nullopt;
    }
    if (sub->verdict == want) {
        TruthValue3 out;
        out.verdict = want;
        out.evidence = Evidence{std::vector<std::string>(vars.begin(), vars.end()), ext, source};
        return out;
    }
    if (sub->verdict == Verdict::Unknown) saw_unknown = true;
    return std::nullopt;
}

std::optional<TruthValue3> QuantSearch::search(const FiniteModel& cur, size_t var_idx) {
    const std::string& v = vars[var_idx];
    // (ii) deterministic candidates: functions of the atom partition
    RgsEnum rgs(cur.atom_count(), ctx.budget.max_support);
    while (const auto* labels = rgs.next()) {
        auto r = try_candidate(cur.with_var(v, *labels), var_idx + 1, "candidate");
        if (r) return r;
    }
    // (iii) stochastic candidates: independent Bernoulli on the mass grid
    for (const auto& p : bern_grid(ctx.budget.max_denominator)) {
        auto r = try_candidate(adjoin_independent(cur, v, {1 - p, p}), var_idx + 1,
                               "candidate");
        if (r) return r;
    }
    return std::nullopt;
}

// Constructors that enumerate the candidate space completely up to the
// equivalence the matrix can see: exhausting them settles the quantifier.
static bool constructor_complete(const std::string& name) { return name == "nat_chain"; }

TruthValue3 eval_quantifier(const FormulaPtr& f, const FiniteModel& m, EvalCtx& ctx) {
    bool is_exists = f->kind == Kind::Exists;
    Verdict want = is_exists ? Verdict::True_ : Verdict::False_;
    QuantSearch qs{ctx, f->kids[0], f->binders, want};
    qs.collect_prunes();

    // (i) proof-guided constructions first
    bool settled = false;
    if (ctx.budget.use_witness_hints && f->hint) {
        if (auto fn = lookup_witness(f->hint->constructor)) {
            for (const auto& ext : (*fn)(m, *f->hint, f->binders)) {
                auto r = qs.try_candidate(ext, f->binders.size(),
                                          "hint:" + f->hint->constructor);
                if (r) return *r;
            }
            settled = constructor_complete(f->hint->constructor);
        }
    }
    if (!settled)
        if (auto r = qs.search(m, 0)) return *r;

    TruthValue3 out;
    if (ctx.mode == EvalMode::Bounded) {
        // the family is the whole domain
        out.verdict = qs.saw_unknown ? Verdict::Unknown : vnot(want);
    } else {
        out.verdict = Verdict::Unknown;
    }
    return out;
}

TruthValue3 eval_atom(const FormulaPtr& f, const FiniteModel& m) {
    TruthValue3 out;
    switch (f->kind) {
        case Kind::Indep:
            out.verdict = check_indep(m, f->t1, f->t2) ? Verdict::True_ : Verdict::False_;
            return out;
        case Kind::EntropyLinear: {
            auto s = entropy_sign(m, f->ent);
            bool holds = false;
            switch (f->ent.cmp) {
                case Cmp::Ge: holds = s != EntropySign::Negative; break;
                case Cmp::Gt: holds = s == EntropySign::Positive; break;
                case Cmp::Eq: holds = s == EntropySign::Zero; break;
            }
            out.verdict = holds ? Verdict::True_ : Verdict::False_;
            return out;
        }
        case Kind::CondDistRelAtom: {
            bool holds = cond_dist_relabel(m, f->cdr.lhs_cond, f->cdr.lhs_target,
                                           f->cdr.rhs_cond, f->cdr.rhs_target);
            out.verdict = holds ? Verdict::True_ : Verdict::False_;
            return out;
        }
        default:
            throw error("eval_atom: not an atom");
    }
}

TruthValue3 ev(const FormulaPtr& f, const FiniteModel& m, EvalCtx& ctx) {
    switch (f->kind) {
        case Kind::Indep:
        case Kind::EntropyLinear:
        case Kind::CondDistRelAtom:
            return eval_atom(f, m);
        case Kind::Not: {
            auto r = ev(f->kids[0], m, ctx);
            r.verdict = vnot(r.verdict);
            return r;
        }
        case Kind::And:
        case Kind::Or: {
            bool conj = f->kind == Kind::And;
            Verdict shortv = conj ? Verdict::False_ : Verdict::True_;
            bool unknown = false;
            for (const auto& k : f->kids) {
                auto r = ev(k, m, ctx);
                if (r.verdict == shortv) return r;
                if (r.verdict == Verdict::Unknown) unknown = true;
            }
            TruthValue3 out;
            out.verdict = unknown ? Verdict::Unknown : vnot(shortv);
            return out;
        }
        case Kind::Implies: {
            auto a = ev(f->kids[0], m, ctx);
            if (a.verdict == Verdict::False_) {
                a.verdict = Verdict::True_;
                return a;
            }
            auto b = ev(f->kids[1], m, ctx);
            if (b.verdict == Verdict::True_) return b;
            if (a.verdict == Verdict::Unknown || b.verdict == Verdict::Unknown) {
                TruthValue3 out;
                return out;
            }
            return b;  // a true, b false
        }
        case Kind::Iff: {
            auto a = ev(f->kids[0], m, ctx);
            auto b = ev(f->kids[1], m, ctx);
            TruthValue3 out;
            if (a.verdict == Verdict::Unknown || b.verdict == Verdict::Unknown)
                return out;
            out.verdict = a.verdict == b.verdict ? Verdict::True_ : Verdict::False_;
            return out;
        }
        case Kind::Exists:
        case Kind::Forall:
            return eval_quantifier(f, m, ctx);
        case Kind::MacroCall: {
            // macro calls evaluate through their direct semantic oracle when
            // one is registered, and through one expansion step otherwise
            if (auto sem = semantic_oracle(f->macro)) {
                TruthValue3 out;
                out.verdict = (*sem)(m, f->args) ? Verdict::True_ : Verdict::False_;
                return out;
            }
            long long local = macro_detail::global_counter().fetch_add(1000000);
            auto once = MacroRegistry::instance().expand_once(*f, local);
            return ev(once, m, ctx);
        }
    }
    throw error("unreachable in ev");
}

}  // namespace

TruthValue3 eval(const FormulaPtr& f, const FiniteModel& m, EvalMode mode, const Budget& b) {
    b.validate();
    register_builtin_witnesses();
    for (const auto& v : free_vars(f))
        if (!m.has_var(v)) throw error("eval: free variable not bound in model: " + v);
    EvalCtx ctx{mode, b, b.max_candidates};
    FiniteModel base = refine(m, b.max_refine);
    try {
        return ev(f, base, ctx);
    } catch (const BudgetExhausted&) {
        if (mode == EvalMode::Bounded)
            throw error("eval: candidate budget exhausted in bounded mode");
        TruthValue3 out;
        out.budget_exhausted = true;
        return out;
    }
}

}  // namespace fotpi
