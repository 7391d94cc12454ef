#include "fotpi/arith.hpp"

#include <set>

#include "fotpi/macro_detail.hpp"

namespace fotpi {

using namespace macro_detail;

ATermPtr ATerm::mkvar(std::string name) {
    auto t = std::make_shared<ATerm>();
    t->k = K::Var;
    t->var = std::move(name);
    return t;
}
ATermPtr ATerm::mkconst(long long v) {
    if (v < 0) throw error("arithmetic constants are nonnegative");
    auto t = std::make_shared<ATerm>();
    t->k = K::Const;
    t->value = v;
    return t;
}
static ATermPtr bin(ATerm::K k, ATermPtr a, ATermPtr b) {
    auto t = std::make_shared<ATerm>();
    t->k = k;
    t->a = std::move(a);
    t->b = std::move(b);
    return t;
}
ATermPtr ATerm::add(ATermPtr x, ATermPtr y) { return bin(K::Add, std::move(x), std::move(y)); }
ATermPtr ATerm::mul(ATermPtr x, ATermPtr y) { return bin(K::Mul, std::move(x), std::move(y)); }
ATermPtr ATerm::mod(ATermPtr x, ATermPtr y) { return bin(K::Mod, std::move(x), std::move(y)); }

static APredPtr mkp(APred::K k) {
    auto p = std::make_shared<APred>();
    p->k = k;
    return p;
}
APredPtr APred::eq(ATermPtr a, ATermPtr b) {
    auto p = mkp(K::Eq);
    const_cast<APred*>(p.get())->t1 = std::move(a);
    const_cast<APred*>(p.get())->t2 = std::move(b);
    return p;
}
APredPtr APred::lt(ATermPtr a, ATermPtr b) {
    auto p = mkp(K::Lt);
    const_cast<APred*>(p.get())->t1 = std::move(a);
    const_cast<APred*>(p.get())->t2 = std::move(b);
    return p;
}
APredPtr APred::le(ATermPtr a, ATermPtr b) {
    auto p = mkp(K::Le);
    const_cast<APred*>(p.get())->t1 = std::move(a);
    const_cast<APred*>(p.get())->t2 = std::move(b);
    return p;
}
APredPtr APred::divides(ATermPtr a, ATermPtr b) {
    auto p = mkp(K::Divides);
    const_cast<APred*>(p.get())->t1 = std::move(a);
    const_cast<APred*>(p.get())->t2 = std::move(b);
    return p;
}
APredPtr APred::land(std::vector<APredPtr> ps) {
    auto p = mkp(K::And);
    const_cast<APred*>(p.get())->kids = std::move(ps);
    return p;
}
APredPtr APred::lor(std::vector<APredPtr> ps) {
    auto p = mkp(K::Or);
    const_cast<APred*>(p.get())->kids = std::move(ps);
    return p;
}
APredPtr APred::lnot(APredPtr q) {
    auto p = mkp(K::Not);
    const_cast<APred*>(p.get())->kids = {std::move(q)};
    return p;
}
APredPtr APred::iff(APredPtr a, APredPtr b) {
    auto p = mkp(K::Iff);
    const_cast<APred*>(p.get())->kids = {std::move(a), std::move(b)};
    return p;
}
APredPtr APred::exists(std::string v, APredPtr q) {
    auto p = mkp(K::Exists);
    const_cast<APred*>(p.get())->var = std::move(v);
    const_cast<APred*>(p.get())->kids = {std::move(q)};
    return p;
}
APredPtr APred::forall(std::string v, APredPtr q) {
    auto p = mkp(K::Forall);
    const_cast<APred*>(p.get())->var = std::move(v);
    const_cast<APred*>(p.get())->kids = {std::move(q)};
    return p;
}

static std::string term_str(const ATermPtr& t) {
    switch (t->k) {
        case ATerm::K::Var: return t->var;
        case ATerm::K::Const: return std::to_string(t->value);
        case ATerm::K::Add: return "(" + term_str(t->a) + "+" + term_str(t->b) + ")";
        case ATerm::K::Mul: return "(" + term_str(t->a) + "*" + term_str(t->b) + ")";
        case ATerm::K::Mod: return "(" + term_str(t->a) + " mod " + term_str(t->b) + ")";
    }
    return "?";
}

std::string APred::str() const {
    switch (k) {
        case K::Eq: return term_str(t1) + " = " + term_str(t2);
        case K::Lt: return term_str(t1) + " < " + term_str(t2);
        case K::Le: return term_str(t1) + " <= " + term_str(t2);
        case K::Divides: return term_str(t1) + " | " + term_str(t2);
        case K::Not: return "not (" + kids[0]->str() + ")";
        case K::Iff: return "(" + kids[0]->str() + " <-> " + kids[1]->str() + ")";
        case K::And: {
            if (kids.empty()) return "true";
            std::string s = "(";
            for (size_t i = 0; i < kids.size(); ++i)
                s += (i ? " and " : "") + kids[i]->str();
            return s + ")";
        }
        case K::Or: {
            if (kids.empty()) return "false";
            std::string s = "(";
            for (size_t i = 0; i < kids.size(); ++i)
                s += (i ? " or " : "") + kids[i]->str();
            return s + ")";
        }
        case K::Exists: return "exists " + var + ". " + kids[0]->str();
        case K::Forall: return "forall " + var + ". " + kids[0]->str();
    }
    return "?";
}

static void term_vars(const ATermPtr& t, std::set<std::string>& out) {
    if (!t) return;
    if (t->k == ATerm::K::Var) out.insert(t->var);
    term_vars(t->a, out);
    term_vars(t->b, out);
}

static void pred_vars(const APredPtr& p, std::set<std::string>& bound,
                      std::set<std::string>& out) {
    switch (p->k) {
        case APred::K::Eq:
        case APred::K::Lt:
        case APred::K::Le:
        case APred::K::Divides: {
            std::set<std::string> vs;
            term_vars(p->t1, vs);
            term_vars(p->t2, vs);
            for (const auto& v : vs)
                if (!bound.count(v)) out.insert(v);
            return;
        }
        case APred::K::Exists:
        case APred::K::Forall: {
            bool added = bound.insert(p->var).second;
            pred_vars(p->kids[0], bound, out);
            if (added) bound.erase(p->var);
            return;
        }
        default:
            for (const auto& k : p->kids) pred_vars(k, bound, out);
            return;
    }
}

std::vector<std::string> apred_free_vars(const APredPtr& p) {
    std::set<std::string> bound, out;
    pred_vars(p, bound, out);
    return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

struct CompileCtx {
    std::map<std::string, std::string> map;  // arithmetic var -> FOTPI var
    long long counter = 0;

    std::string fresh_rv() { return "_n" + std::to_string(++counter); }
};

struct Chain {
    std::vector<long long> ops;   // (op, aux) pairs
    std::vector<Term> operands;
};

// Flattens an arithmetic term: emits defining constraints for intermediates
// into \p constraints, records the value chain for the witness constructor,
// and returns the FOTPI variable carrying the value.
std::string flatten(const ATermPtr& t, CompileCtx& ctx,
                    std::vector<FormulaPtr>& constraints,
                    std::vector<std::string>& fresh, Chain& chain) {
    switch (t->k) {
        case ATerm::K::Var: {
            auto it = ctx.map.find(t->var);
            if (it == ctx.map.end())
                throw error("compile_arith: unmapped free variable " + t->var);
            return it->second;
        }
        case ATerm::K::Const: {
            std::string v = ctx.fresh_rv();
            fresh.push_back(v);
            constraints.push_back(mc("natc", V(v), t->value));
            chain.ops.push_back(NatConst);
            chain.ops.push_back(t->value);
            return v;
        }
        case ATerm::K::Add:
        case ATerm::K::Mul:
        case ATerm::K::Mod: {
            std::string a = flatten(t->a, ctx, constraints, fresh, chain);
            std::string b = flatten(t->b, ctx, constraints, fresh, chain);
            std::string v = ctx.fresh_rv();
            fresh.push_back(v);
            constraints.push_back(mc("isnat", V(v)));
            const char* rel = t->k == ATerm::K::Add   ? "nat_add"
                              : t->k == ATerm::K::Mul ? "nat_mul"
                                                      : "nat_mod";
            constraints.push_back(mc(rel, V(a), V(b), V(v)));
            chain.ops.push_back(t->k == ATerm::K::Add   ? NatAdd
                                : t->k == ATerm::K::Mul ? NatMul
                                                        : NatMod);
            chain.ops.push_back(0);
            chain.operands.push_back(V(a));
            chain.operands.push_back(V(b));
            return v;
        }
    }
    throw error("unreachable arithmetic term kind");
}

FormulaPtr compile_atom(const char* rel, const ATermPtr& t1, const ATermPtr& t2,
                        CompileCtx& ctx) {
    std::vector<FormulaPtr> constraints;
    std::vector<std::string> fresh;
    Chain chain;
    std::string a = flatten(t1, ctx, constraints, fresh, chain);
    std::string b = flatten(t2, ctx, constraints, fresh, chain);
    constraints.push_back(mc(rel, V(a), V(b)));
    auto body = Formula::land(std::move(constraints));
    // Intermediates are total and uniquely valued over the integer
    // representations, so existential wrapping is polarity-safe and the
    // value-chain constructor covers the whole candidate space.
    if (fresh.empty()) return body;
    return Formula::exists(fresh, body, nat_chain(chain.ops, chain.operands));
}

FormulaPtr compile_rec(const APredPtr& p, CompileCtx& ctx) {
    switch (p->k) {
        case APred::K::Eq: return compile_atom("nat_eq", p->t1, p->t2, ctx);
        case APred::K::Lt: return compile_atom("nat_lt", p->t1, p->t2, ctx);
        case APred::K::Le: return compile_atom("nat_le", p->t1, p->t2, ctx);
        case APred::K::Divides: return compile_atom("nat_divides", p->t1, p->t2, ctx);
        case APred::K::Not: return Formula::lnot(compile_rec(p->kids[0], ctx));
        case APred::K::Iff:
            return Formula::iff(compile_rec(p->kids[0], ctx), compile_rec(p->kids[1], ctx));
        case APred::K::And: {
            std::vector<FormulaPtr> ks;
            for (const auto& k : p->kids) ks.push_back(compile_rec(k, ctx));
            return Formula::land(std::move(ks));
        }
        case APred::K::Or: {
            std::vector<FormulaPtr> ks;
            for (const auto& k : p->kids) ks.push_back(compile_rec(k, ctx));
            return Formula::lor(std::move(ks));
        }
        case APred::K::Exists:
        case APred::K::Forall: {
            std::string rv = ctx.fresh_rv();
            auto saved = ctx.map;
            ctx.map[p->var] = rv;
            auto body = compile_rec(p->kids[0], ctx);
            ctx.map = std::move(saved);
            if (p->k == APred::K::Exists)
                return Formula::exists({rv}, Formula::land({mc("isnat", V(rv)), body}));
            return Formula::forall({rv}, Formula::implies(mc("isnat", V(rv)), body));
        }
    }
    throw error("unreachable arithmetic predicate kind");
}

}  // namespace

FormulaPtr compile_arith(const APredPtr& p,
                         const std::map<std::string, std::string>& var_map) {
    for (const auto& v : apred_free_vars(p))
        if (!var_map.count(v)) throw error("compile_arith: unmapped free variable " + v);
    CompileCtx ctx;
    ctx.map = var_map;
    ctx.counter = macro_detail::global_counter().fetch_add(1000000);
    return compile_rec(p, ctx);
}

// ---------------------------------------------------------------------------
// Direct integer evaluation (test oracle)

static Int eval_term(const ATermPtr& t, const std::map<std::string, Int>& env) {
    switch (t->k) {
        case ATerm::K::Var: {
            auto it = env.find(t->var);
            if (it == env.end()) throw error("eval_arith: unbound variable " + t->var);
            return it->second;
        }
        case ATerm::K::Const: return Int(t->value);
        case ATerm::K::Add: return eval_term(t->a, env) + eval_term(t->b, env);
        case ATerm::K::Mul: return eval_term(t->a, env) * eval_term(t->b, env);
        case ATerm::K::Mod: {
            Int m = eval_term(t->b, env);
            if (m == 0) throw error("eval_arith: mod by zero");
            return eval_term(t->a, env) % m;
        }
    }
    throw error("unreachable");
}

bool eval_arith(const APredPtr& p, std::map<std::string, Int> env, const Int& bound) {
    switch (p->k) {
        case APred::K::Eq: return eval_term(p->t1, env) == eval_term(p->t2, env);
        case APred::K::Lt: return eval_term(p->t1, env) < eval_term(p->t2, env);
        case APred::K::Le: return eval_term(p->t1, env) <= eval_term(p->t2, env);
        case APred::K::Divides: {
            Int a = eval_term(p->t1, env), b = eval_term(p->t2, env);
            if (a == 0) return b == 0;
            return b % a == 0;
        }
        case APred::K::Not: return !eval_arith(p->kids[0], env, bound);
        case APred::K::Iff:
            return eval_arith(p->kids[0], env, bound) == eval_arith(p->kids[1], env, bound);
        case APred::K::And:
            for (const auto& k : p->kids)
                if (!eval_arith(k, env, bound)) return false;
            return true;
        case APred::K::Or:
            for (const auto& k : p->kids)
                if (eval_arith(k, env, bound)) return true;
            return false;
        case APred::K::Exists:
            for (Int v = 0; v <= bound; ++v) {
                env[p->var] = v;
                if (eval_arith(p->kids[0], env, bound)) return true;
            }
            return false;
        case APred::K::Forall:
            for (Int v = 0; v <= bound; ++v) {
                env[p->var] = v;
                if (!eval_arith(p->kids[0], env, bound)) return false;
            }
            return true;
    }
    throw error("unreachable");
}

// ---------------------------------------------------------------------------
// Godel decoding predicates

APredPtr pred_decn(const std::string& r, const std::string& i, const std::string& a) {
    using T = ATerm;
    auto vb = T::mkvar("_gb"), vc = T::mkvar("_gc");
    auto vr = T::mkvar(r), vi = T::mkvar(i), va = T::mkvar(a);
    auto one = T::mkconst(1), two = T::mkconst(2);
    auto s = T::add(vb, vc);
    // (b+c)(b+c+1) + 2c = 2r encodes pair(b,c) = r without division
    auto pair_eq = APred::eq(T::add(T::mul(s, T::add(s, one)), T::mul(two, vc)),
                             T::mul(two, vr));
    auto len = T::mod(vb, T::add(vc, one));                       // beta(b,c,0)
    auto entry = T::mod(vb, T::add(T::mul(vc, T::add(vi, one)), one));  // beta(b,c,i)
    auto body = APred::land({pair_eq, APred::le(one, vi), APred::le(vi, len),
                             APred::eq(entry, va)});
    return APred::exists("_gb", APred::exists("_gc", body));
}

APredPtr pred_dec(const std::string& r, const std::string& i, const std::string& a) {
    using T = ATerm;
    auto same_decode = APred::forall(
        "_gi", APred::forall("_ga", APred::iff(pred_decn(r, "_gi", "_ga"),
                                               pred_decn("_gr2", "_gi", "_ga"))));
    auto minimal = APred::forall(
        "_gr2",
        APred::lor({APred::lnot(same_decode), APred::le(T::mkvar(r), T::mkvar("_gr2"))}));
    return APred::land({pred_decn(r, i, a), minimal});
}

APredPtr pred_pow(const std::string& x, const std::string& y, const std::string& z) {
    using T = ATerm;
    auto vx = T::mkvar(x), vy = T::mkvar(y), vz = T::mkvar(z);
    auto zero = T::mkconst(0), one = T::mkconst(1);
    auto base0 = APred::land({APred::eq(vy, zero), APred::eq(vz, one)});
    auto zerox = APred::land({APred::eq(vx, zero), APred::le(one, vy), APred::eq(vz, zero)});
    // chain u_1 = x, u_{k+1} = u_k * x, u_y = z, coded by some r
    auto exists_all = APred::forall(
        "_pi", APred::lor({APred::lnot(APred::land({APred::le(one, T::mkvar("_pi")),
                                                    APred::le(T::mkvar("_pi"), vy)})),
                           APred::exists("_pu", pred_decn("_pr", "_pi", "_pu"))}));
    auto step = APred::forall(
        "_pi",
        APred::forall(
            "_pu",
            APred::forall(
                "_pv",
                APred::lor(
                    {APred::lnot(APred::land(
                         {APred::le(one, T::mkvar("_pi")),
                          APred::lt(T::mkvar("_pi"), vy),
                          pred_decn("_pr", "_pi", "_pu"),
                          APred::exists(
                              "_pj",
                              APred::land({APred::eq(T::mkvar("_pj"),
                                                     T::add(T::mkvar("_pi"), one)),
                                           pred_decn("_pr", "_pj", "_pv")}))})),
                     APred::eq(T::mkvar("_pv"), T::mul(T::mkvar("_pu"), vx))}))));
    auto chain = APred::exists(
        "_pr", APred::land({pred_decn("_pr", "_p1", "_px1"), exists_all, step,
                            pred_decn("_pr", "_py1", "_pz1")}));
    // bind helper names for the endpoints
    auto chain_bound = APred::exists(
        "_p1",
        APred::land({APred::eq(T::mkvar("_p1"), one),
                     APred::exists(
                         "_px1",
                         APred::land({APred::eq(T::mkvar("_px1"), vx),
                                      APred::exists(
                                          "_py1",
                                          APred::land(
                                              {APred::eq(T::mkvar("_py1"), vy),
                                               APred::exists(
                                                   "_pz1",
                                                   APred::land({APred::eq(T::mkvar("_pz1"), vz),
                                                                chain}))}))}))}));
    auto pos = APred::land({APred::le(one, vx), APred::le(one, vy), chain_bound});
    return APred::lor({base0, zerox, pos});
}

}  // namespace fotpi
