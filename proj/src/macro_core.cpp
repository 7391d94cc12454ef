// Derived predicates over random variables: functional dependence, the join
// characterization, conditional independence, uniformity, cardinality, the
// integer relations on uniform cardinalities, and the single-mass machinery
// that makes addition expressible.

#include "fotpi/builders.hpp"
#include "fotpi/macro.hpp"
#include "fotpi/macro_detail.hpp"

namespace fotpi {

using namespace macro_detail;

void MacroRegistry::register_core() {
    // X is a.s. a function of Y
    add({.name = "lei",
         .params = {ParamKind::RV, ParamKind::RV},
         .h_atomic = true,
         .witness_hints = {"lei_refuter"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 return make_lei(T(a[0]), T(a[1]), fresh(c),
                                 Hint{"lei_refuter", {T(a[0]), T(a[1])}, {}});
             },
         .doc = "lei(X,Y): X is almost surely a function of Y"});

    add({.name = "ieq",
         .params = {ParamKind::RV, ParamKind::RV},
         .h_atomic = true,
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 return Formula::land({mc("lei", T(a[0]), T(a[1])), mc("lei", T(a[1]), T(a[0]))});
             },
         .doc = "ieq(X,Y): X and Y are informationally equivalent"});

    add({.name = "ine",
         .params = {ParamKind::RV, ParamKind::RV},
         .h_atomic = true,
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 return Formula::lnot(mc("ieq", T(a[0]), T(a[1])));
             },
         .doc = "ine(X,Y): not ieq(X,Y)"});

    add({.name = "ilt",
         .params = {ParamKind::RV, ParamKind::RV},
         .h_atomic = true,
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 return Formula::land({mc("lei", T(a[0]), T(a[1])),
                                       Formula::lnot(mc("lei", T(a[1]), T(a[0])))});
             },
         .doc = "ilt(X,Y): X carries strictly less information than Y"});

    add({.name = "iconst",
         .params = {ParamKind::RV},
         .h_atomic = true,
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 return Formula::indep(T(a[0]), T(a[0]));
             },
         .doc = "iconst(X): X is a.s. constant (X independent of itself)"});

    add({.name = "joint",
         .params = {ParamKind::RV, ParamKind::RV},
         .variadic = true,
         .min_arity = 2,
         .h_atomic = true,
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term z = T(a[0]);
                 std::vector<FormulaPtr> conj;
                 for (size_t i = 1; i < a.size(); ++i) conj.push_back(mc("lei", T(a[i]), z));
                 std::string u = fresh(c);
                 std::vector<FormulaPtr> ante;
                 for (size_t i = 1; i < a.size(); ++i) ante.push_back(mc("lei", T(a[i]), V(u)));
                 conj.push_back(Formula::forall(
                     {u}, Formula::implies(Formula::land(std::move(ante)), mc("lei", z, V(u)))));
                 return Formula::land(std::move(conj));
             },
         .doc = "joint(Z,X1,...,Xn): Z is informationally the joint variable X1...Xn"});

    add({.name = "mutual_indep",
         .params = {ParamKind::RV, ParamKind::RV},
         .variadic = true,
         .min_arity = 2,
         .h_atomic = true,
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 std::vector<FormulaPtr> conj;
                 std::vector<Term> prefix{T(a[0])};
                 for (size_t i = 1; i < a.size(); ++i) {
                     conj.push_back(Formula::indep(T(a[i]), Term::join(prefix)));
                     prefix.push_back(T(a[i]));
                 }
                 return Formula::land(std::move(conj));
             },
         .doc = "mutual_indep(X1,...,Xn): mutual independence"});

    add({.name = "ci",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .h_atomic = true,
         .witness_hints = {"ci_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term x = T(a[0]), y = T(a[1]), z = T(a[2]);
                 std::string u = fresh(c);
                 auto body = Formula::land({Formula::indep(V(u), Term::join({x, z})),
                                            mc("lei", y, Term::join({z, V(u)}))});
                 return Formula::exists({u}, body, Hint{"ci_witness", {x, y, z}, {}});
             },
         .doc = "ci(X,Y,Z): X and Y are conditionally independent given Z"});

    add({.name = "triple",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 Term x = T(a[0]), y = T(a[1]), z = T(a[2]);
                 return Formula::land({Formula::indep(x, y), Formula::indep(x, z),
                                       Formula::indep(y, z),
                                       mc("lei", x, Term::join({y, z})),
                                       mc("lei", y, Term::join({x, z})),
                                       mc("lei", z, Term::join({x, y}))});
             },
         .doc = "triple(X,Y,Z): pairwise independent, each a function of the other two"});

    add({.name = "unif",
         .params = {ParamKind::RV},
         .witness_hints = {"triple_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 std::string y = fresh(c), z = fresh(c);
                 return Formula::exists({y, z}, mc("triple", T(a[0]), V(y), V(z)),
                                        Hint{"triple_witness", {T(a[0])}, {}});
             },
         .doc = "unif(X): X is uniformly distributed over its support"});

    add({.name = "card_le",
         .params = {ParamKind::RV, ParamKind::Nat},
         .witness_hints = {"card_refuter"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 long long n = N(a[1]);
                 if (n < 1) throw error("card_le: n must be >= 1");
                 if (n == 1) return mc("iconst", T(a[0]));
                 std::string u = fresh(c);
                 auto body = Formula::implies(mc("ilt", V(u), T(a[0])),
                                              mc("card_le", V(u), n - 1));
                 return Formula::forall({u}, body, Hint{"card_refuter", {T(a[0])}, {n}});
             },
         .doc = "card_le(X,n): the support of X has at most n values"});

    add({.name = "card_eq",
         .params = {ParamKind::RV, ParamKind::Nat},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 long long n = N(a[1]);
                 if (n < 1) throw error("card_eq: n must be >= 1");
                 if (n == 1) return mc("card_le", T(a[0]), 1LL);
                 return Formula::land({mc("card_le", T(a[0]), n),
                                       Formula::lnot(mc("card_le", T(a[0]), n - 1))});
             },
         .doc = "card_eq(X,n): the support of X has exactly n values"});

    add({.name = "card_ge",
         .params = {ParamKind::RV, ParamKind::Nat},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 long long n = N(a[1]);
                 if (n < 1) throw error("card_ge: n must be >= 1");
                 if (n == 1) return Formula::top();
                 return Formula::lnot(mc("card_le", T(a[0]), n - 1));
             },
         .doc = "card_ge(X,n): the support of X has at least n values"});

    add({.name = "ueq",
         .params = {ParamKind::RV, ParamKind::RV},
         .witness_hints = {"ueq_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 std::string u1 = fresh(c), u2 = fresh(c), u3 = fresh(c);
                 auto body = Formula::land({mc("triple", T(a[0]), V(u1), V(u2)),
                                            mc("triple", T(a[1]), V(u1), V(u3))});
                 return Formula::exists({u1, u2, u3}, body,
                                        Hint{"ueq_witness", {T(a[0]), T(a[1])}, {}});
             },
         .doc = "ueq(X,Y): X,Y uniform with equal support sizes"});

    add({.name = "ueq_n",
         .params = {ParamKind::RV, ParamKind::Nat},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 long long n = N(a[1]);
                 if (n < 1) throw error("ueq_n: n must be >= 1");
                 return Formula::land({mc("unif", T(a[0])), mc("card_eq", T(a[0]), n)});
             },
         .doc = "ueq_n(X,n): X is Unif[n] up to relabelling"});

    add({.name = "uprod",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .witness_hints = {"uprod_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 std::string xt = fresh(c), yt = fresh(c);
                 auto body = Formula::land(
                     {mc("ueq", T(a[0]), V(xt)), mc("ueq", T(a[1]), V(yt)),
                      Formula::indep(V(xt), V(yt)),
                      mc("ieq", Term::join({V(xt), V(yt)}), T(a[2]))});
                 return Formula::exists({xt, yt}, body,
                                        Hint{"uprod_witness", {T(a[0]), T(a[1]), T(a[2])}, {}});
             },
         .doc = "uprod(X,Y,Z): |Z| = |X|*|Y| for uniform X,Y,Z"});

    add({.name = "ule",
         .params = {ParamKind::RV, ParamKind::RV},
         .witness_hints = {"ule_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 std::string g = fresh(c), yt = fresh(c);
                 auto body = Formula::land(
                     {mc("uprod", T(a[0]), T(a[1]), V(g)), mc("ueq", T(a[1]), V(yt)),
                      mc("lei", V(g), Term::join({T(a[1]), V(yt)}))});
                 return Formula::exists({g, yt}, body,
                                        Hint{"ule_witness", {T(a[0]), T(a[1])}, {}});
             },
         .doc = "ule(X,Y): |X| <= |Y| for uniform X,Y"});

    add({.name = "ult",
         .params = {ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 return Formula::lnot(mc("ule", T(a[1]), T(a[0])));
             },
         .doc = "ult(X,Y): |X| < |Y| for uniform X,Y"});

    add({.name = "uge",
         .params = {ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 return mc("ule", T(a[1]), T(a[0]));
             },
         .doc = "uge(X,Y): |X| >= |Y| for uniform X,Y"});

    add({.name = "ugt",
         .params = {ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 return mc("ult", T(a[1]), T(a[0]));
             },
         .doc = "ugt(X,Y): |X| > |Y| for uniform X,Y"});

    for (const char* base : {"ule", "ult", "uge", "ugt"}) {
        std::string name = std::string(base) + "_n";
        add({.name = name,
             .params = {ParamKind::RV, ParamKind::Nat},
             .witness_hints = {"ueq_n_witness"},
             .expand1 =
                 [base](const std::vector<MacroArg>& a, long long& c) {
                     long long n = N(a[1]);
                     if (n < 1) throw error("comparison against n requires n >= 1");
                     std::string u = fresh(c);
                     auto body = Formula::land(
                         {mc("ueq_n", V(u), n), mc(base, T(a[0]), V(u))});
                     return Formula::exists({u}, body, Hint{"ueq_n_witness", {}, {n}});
                 },
             .doc = name + "(X,n): cardinality comparison against the constant n"});
    }

    add({.name = "udiv",
         .params = {ParamKind::RV, ParamKind::RV},
         .witness_hints = {"udiv_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 std::string u = fresh(c);
                 return Formula::exists({u}, mc("uprod", T(a[0]), V(u), T(a[1])),
                                        Hint{"udiv_witness", {T(a[0]), T(a[1])}, {}});
             },
         .doc = "udiv(X,Y): |Y| is divisible by |X| for uniform X,Y"});

    add({.name = "uprime",
         .params = {ParamKind::RV},
         .witness_hints = {"uprime_factor"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 std::string u = fresh(c), v = fresh(c);
                 auto body = Formula::land(
                     {Formula::lnot(mc("iconst", V(u))), Formula::lnot(mc("iconst", V(v))),
                      mc("uprod", V(u), V(v), T(a[0]))});
                 return Formula::lnot(Formula::exists({u, v}, body,
                                                      Hint{"uprime_factor", {T(a[0])}, {}}));
             },
         .doc = "uprime(X): |X| is prime for uniform X"});

    // The minimality quantifier ranges over uniform U: an unrestricted U would
    // make ult(X,U) hold vacuously for non-uniform U and falsify the formula.
    add({.name = "usucc",
         .params = {ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 std::string u = fresh(c);
                 auto minimal = Formula::forall(
                     {u},
                     Formula::implies(Formula::land({mc("unif", V(u)),
                                                     mc("ult", T(a[0]), V(u))}),
                                      mc("ule", T(a[1]), V(u))));
                 return Formula::land({mc("ult", T(a[0]), T(a[1])), minimal});
             },
         .doc = "usucc(X,Y): |Y| = |X|+1 for uniform X,Y"});

    add({.name = "smi",
         .params = {ParamKind::RV, ParamKind::RV},
         .witness_hints = {"smi_refuter", "smi_vsplit"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term x = T(a[0]), y = T(a[1]);
                 std::string u = fresh(c), v = fresh(c);
                 auto no_v = Formula::lnot(Formula::exists(
                     {v},
                     Formula::land({mc("card_le", V(v), 2LL),
                                    mc("lei", V(u), Term::join({y, V(v)}))}),
                     Hint{"smi_vsplit", {x, y, V(u)}, {}}));
                 auto big = Formula::forall(
                     {u},
                     Formula::implies(Formula::land({mc("lei", V(u), x),
                                                     mc("card_eq", V(u), 4LL)}),
                                      no_v),
                     Hint{"smi_refuter", {x, y}, {}});
                 auto nondeg = Formula::land(
                     {mc("lei", y, x), mc("card_eq", y, 2LL), big});
                 return Formula::lor(
                     {Formula::land({mc("iconst", x), mc("iconst", y)}), nondeg});
             },
         .doc = "smi(X,Y): Y is a single-mass indicator of X"});

    add({.name = "frac",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .witness_hints = {"frac_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term x = T(a[0]), y = T(a[1]), z = T(a[2]), u = T(a[3]);
                 auto eqcase = Formula::land({mc("ueq_n", u, 2LL), mc("uprod", x, u, z),
                                              mc("uprod", y, u, z)});
                 std::string xt = fresh(c), yt = fresh(c), v = fresh(c);
                 auto keep = Formula::forall(
                     {v},
                     Formula::implies(
                         mc("smi", z, V(v)),
                         Formula::lor({mc("smi", Term::join({V(xt), u}), V(v)),
                                       mc("smi", Term::join({V(yt), u}), V(v))})));
                 auto mix = Formula::land(
                     {mc("ueq", x, V(xt)), mc("ueq", y, V(yt)), mc("unif", z),
                      mc("card_eq", u, 2LL), Formula::lnot(mc("unif", u)), mc("lei", u, z),
                      mcv("mutual_indep", {V(xt), V(yt), u}),
                      mc("lei", z, Term::join({V(xt), V(yt), u})), keep});
                 auto neqcase = Formula::exists({xt, yt}, mix,
                                                Hint{"frac_witness", {x, y, z, u}, {}});
                 return Formula::lor({eqcase, neqcase});
             },
         .doc = "frac(X,Y,Z,U): |Z|=|X|+|Y| uniform, U ~ Bern(|X|/(|X|+|Y|))"});

    add({.name = "usum",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .witness_hints = {"usum_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 std::string u = fresh(c);
                 return Formula::exists({u}, mc("frac", T(a[0]), T(a[1]), T(a[2]), V(u)),
                                        Hint{"usum_witness", {T(a[0]), T(a[1]), T(a[2])}, {}});
             },
         .doc = "usum(X,Y,Z): |Z| = |X|+|Y| for uniform X,Y,Z"});

    add({.name = "is0",
         .params = {ParamKind::RV},
         .witness_hints = {"is0_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 std::string u = fresh(c);
                 auto body = Formula::land({mc("ueq_n", V(u), 3LL),
                                            Formula::lnot(mc("iconst", T(a[0]))),
                                            mc("ilt", T(a[0]), V(u))});
                 return Formula::exists({u}, body, Hint{"is0_witness", {T(a[0])}, {}});
             },
         .doc = "is0(X): X ~ Bern(1/3) up to relabelling (the representation of zero)"});

    add({.name = "isnat",
         .params = {ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 return Formula::lor({mc("is0", T(a[0])), mc("unif", T(a[0]))});
             },
         .doc = "isnat(X): X represents a nonnegative integer"});
}

}  // namespace fotpi
