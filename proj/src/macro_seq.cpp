// Random-sequence representation: integers are carried by uniform variables
// (Bern(1/3) for zero), sequences by Godel codes, and the entropy test rides
// on the source coding theorem. The arithmetic relations here bridge between
// the integer layer and the uniform-cardinality relations, with the zero
// representation handled case by case.

#include "fotpi/arith.hpp"
#include "fotpi/macro.hpp"
#include "fotpi/macro_detail.hpp"

namespace fotpi {

using namespace macro_detail;

void MacroRegistry::register_seq() {
    add({.name = "natc",
         .params = {ParamKind::RV, ParamKind::Nat},
         .witness_hints = {"natc_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 long long k = N(a[1]);
                 if (k < 0) throw error("natc: constant must be nonnegative");
                 if (k == 0) return mc("is0", T(a[0]));
                 return mc("ueq_n", T(a[0]), k);
             },
         .doc = "natc(X,k): X represents the integer constant k"});

    add({.name = "nat_eq",
         .params = {ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 Term x = T(a[0]), y = T(a[1]);
                 return Formula::lor(
                     {Formula::land({mc("is0", x), mc("is0", y)}),
                      Formula::land({mc("unif", x), mc("unif", y), mc("ueq", x, y)})});
             },
         .doc = "nat_eq(A,B): the represented integers are equal"});

    add({.name = "nat_lt",
         .params = {ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 Term x = T(a[0]), y = T(a[1]);
                 return Formula::lor(
                     {Formula::land({mc("is0", x), mc("unif", y)}),
                      Formula::land({mc("unif", x), mc("unif", y), mc("ult", x, y)})});
             },
         .doc = "nat_lt(A,B): represented integer of A is less than that of B"});

    add({.name = "nat_le",
         .params = {ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 return Formula::lor(
                     {mc("nat_lt", T(a[0]), T(a[1])), mc("nat_eq", T(a[0]), T(a[1]))});
             },
         .doc = "nat_le(A,B)"});

    add({.name = "nat_add",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 Term x = T(a[0]), y = T(a[1]), z = T(a[2]);
                 return Formula::lor(
                     {Formula::land({mc("is0", x), mc("nat_eq", y, z)}),
                      Formula::land({mc("is0", y), mc("nat_eq", x, z)}),
                      Formula::land({mc("unif", x), mc("unif", y), mc("usum", x, y, z)})});
             },
         .doc = "nat_add(A,B,C): C represents the sum of A and B"});

    add({.name = "nat_mul",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 Term x = T(a[0]), y = T(a[1]), z = T(a[2]);
                 return Formula::lor(
                     {Formula::land({mc("is0", x), mc("isnat", y), mc("is0", z)}),
                      Formula::land({mc("is0", y), mc("isnat", x), mc("is0", z)}),
                      Formula::land({mc("unif", x), mc("unif", y), mc("uprod", x, y, z)})});
             },
         .doc = "nat_mul(A,B,C): C represents the product of A and B"});

    add({.name = "nat_divides",
         .params = {ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 Term x = T(a[0]), y = T(a[1]);
                 return Formula::lor(
                     {Formula::land({mc("is0", y), mc("isnat", x)}),
                      Formula::land({mc("unif", x), mc("unif", y), mc("udiv", x, y)})});
             },
         .doc = "nat_divides(A,B): the integer of A divides the integer of B"});

    add({.name = "nat_mod",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term x = T(a[0]), m = T(a[1]), r = T(a[2]);
                 std::string q = fresh(c), t = fresh(c);
                 auto decomp = Formula::exists(
                     {q, t},
                     Formula::land({mc("isnat", V(q)), mc("isnat", V(t)),
                                    mc("nat_mul", V(q), m, V(t)),
                                    mc("nat_add", V(t), r, x)}),
                     nat_chain({NatFloorDiv, 0, NatMul, 0}, {x, m, V(q), m}));
                 return Formula::land({decomp, mc("nat_lt", r, m)});
             },
         .doc = "nat_mod(A,M,R): R represents (A mod M), M >= 1"});

    add({.name = "nat_range1",
         .params = {ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 std::string one = fresh(c);
                 auto body = Formula::land({mc("natc", V(one), 1LL),
                                            mc("nat_le", V(one), T(a[0])),
                                            mc("nat_le", T(a[0]), T(a[1]))});
                 return Formula::exists({one}, body, nat_chain({NatConst, 1}, {}));
             },
         .doc = "nat_range1(I,N): 1 <= I <= N on represented integers"});

    add({.name = "nat_pow",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 return compile_arith(pred_pow("x", "y", "z"),
                                      {{"x", T(a[0]).str()},
                                       {"y", T(a[1]).str()},
                                       {"z", T(a[2]).str()}});
             },
         .doc = "nat_pow(X,Y,Z): Z represents x^y"});

    add({.name = "decn",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 return compile_arith(pred_decn("r", "i", "a"),
                                      {{"r", T(a[0]).str()},
                                       {"i", T(a[1]).str()},
                                       {"a", T(a[2]).str()}});
             },
         .doc = "decn(R,I,A): some code consistent with R decodes entry I to A"});

    add({.name = "dec",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 return compile_arith(pred_dec("r", "i", "a"),
                                      {{"r", T(a[0]).str()},
                                       {"i", T(a[1]).str()},
                                       {"a", T(a[2]).str()}});
             },
         .doc = "dec(R,I,A): the minimal-code sequence R has entry I equal to A"});

    // label with values shifted to {0,1,...}: the event A = a is the
    // labelled event at uniform size a+3.
    add({.name = "labelev0",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term A = T(a[0]), L = T(a[1]), av = T(a[2]), E = T(a[3]);
                 std::string three = fresh(c), a3 = fresh(c);
                 auto defs = Formula::land({mc("natc", V(three), 3LL), mc("isnat", V(a3)),
                                            mc("nat_add", av, V(three), V(a3))});
                 return Formula::forall({three, a3},
                                        Formula::implies(defs, mc("labelev3", A, L, V(a3), E)),
                                        nat_chain({NatConst, 3, NatAdd, 0}, {av, V(three)}));
             },
         .doc = "labelev0(A,L,a,E): E represents the event A = a under the 0-shifted labels"});

    add({.name = "labelev0r",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term A = T(a[0]), L = T(a[1]), av = T(a[2]), E = T(a[3]);
                 std::string three = fresh(c), a3 = fresh(c);
                 auto defs = Formula::land({mc("natc", V(three), 3LL), mc("isnat", V(a3)),
                                            mc("nat_add", av, V(three), V(a3))});
                 return Formula::forall(
                     {three, a3},
                     Formula::implies(defs, mcv("labelev3r", {A, L, V(a3), E})),
                     nat_chain({NatConst, 3, NatAdd, 0}, {av, V(three)}));
             },
         .doc = "labelev0r: labelev0 with label3(A,L) asserted by the caller"});

    add({.name = "label0",
         .params = {ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 return mc("label3", T(a[0]), T(a[1]));
             },
         .doc = "label0(A,L): label3 with values read as {0,1,...} via the +3 shift"});

    add({.name = "levsub",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV,
                    ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term A = T(a[0]), LA = T(a[1]), av = T(a[2]);
                 Term B = T(a[3]), LB = T(a[4]), bv = T(a[5]);
                 std::string e1 = fresh(c), e2 = fresh(c);
                 auto body = Formula::implies(
                     Formula::land({mcv("labelev0r", {A, LA, av, V(e1)}),
                                    mcv("labelev0r", {B, LB, bv, V(e2)})}),
                     mc("subset", V(e1), V(e2)));
                 return Formula::forall({e1, e2}, body);
             },
         .doc = "levsub(A,LA,a,B,LB,b): the event A=a is contained in the event B=b"});

    add({.name = "isseq",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term X = T(a[0]), L = T(a[1]), n = T(a[2]);
                 std::string l = fresh(c), e = fresh(c), i = fresh(c), x = fresh(c),
                             i2 = fresh(c), x2 = fresh(c);
                 auto decodable = Formula::forall(
                     {i},
                     Formula::implies(
                         Formula::land({mc("isnat", V(i)), mc("nat_range1", V(i), n)}),
                         Formula::exists({x},
                                         Formula::land({mc("isnat", V(x)),
                                                        mc("dec", V(l), V(i), V(x))}),
                                         nat_chain({NatDecEntry, 0}, {V(l), V(i)}))));
                 auto bounded = Formula::forall(
                     {i2, x2},
                     Formula::implies(
                         Formula::land({mc("isnat", V(i2)), mc("isnat", V(x2)),
                                        mc("nat_lt", n, V(i2))}),
                         Formula::lnot(mc("dec", V(l), V(i2), V(x2)))));
                 auto per_value = Formula::forall(
                     {l, e},
                     Formula::implies(
                         Formula::land({mc("isnat", V(l)),
                                        mcv("labelev0r", {X, L, V(l), V(e)}),
                                        Formula::lnot(mc("iconst", V(e)))}),
                         Formula::land({decodable, bounded})));
                 return Formula::land({mc("label3", X, L), per_value});
             },
         .doc = "isseq(X,L,N): X with label L encodes a sequence of length N"});

    add({.name = "entry",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV,
                    ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term Xbar = T(a[0]), Lbar = T(a[1]), n = T(a[2]);
                 Term X = T(a[3]), L = T(a[4]), i = T(a[5]);
                 std::string x = fresh(c), l = fresh(c);
                 auto pinned = Formula::forall(
                     {x, l},
                     Formula::implies(
                         Formula::land({mc("isnat", V(x)), mc("isnat", V(l)),
                                        mc("dec", V(l), i, V(x))}),
                         mcv("levsub", {Xbar, Lbar, V(l), X, L, V(x)})));
                 return Formula::land({mc("isseq", Xbar, Lbar, n), mc("label3", X, L),
                                       mc("nat_range1", i, n), pinned});
             },
         .doc = "entry(Xbar,Lbar,N,X,L,I): X with label L is the I-th entry of the sequence"});

    add({.name = "subseq",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV,
                    ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term Xbar = T(a[0]), Lbar = T(a[1]), n = T(a[2]);
                 Term Ybar = T(a[3]), Mbar = T(a[4]), i = T(a[5]), j = T(a[6]);
                 std::string len = fresh(c), one = fresh(c), jp1 = fresh(c), k = fresh(c),
                             k2 = fresh(c), kp1 = fresh(c), t = fresh(c), lt = fresh(c);
                 auto entry_match = Formula::forall(
                     {t, lt},
                     Formula::iff(mcv("entry", {Xbar, Lbar, n, V(t), V(lt), V(k)}),
                                  mcv("entry", {Ybar, Mbar, V(len), V(t), V(lt), V(k2)})));
                 auto shift_defs = Formula::land(
                     {mc("isnat", V(k2)), mc("isnat", V(kp1)),
                      mc("nat_add", V(k), V(one), V(kp1)), mc("nat_add", V(k2), i, V(kp1))});
                 auto shift = Formula::forall(
                     {kp1, k2}, Formula::implies(shift_defs, entry_match),
                     nat_chain({NatAdd, 0, NatSub, 0}, {V(k), V(one), V(kp1), i}));
                 auto per_k = Formula::forall(
                     {k},
                     Formula::implies(
                         Formula::land({mc("isnat", V(k)), mc("nat_le", i, V(k)),
                                        mc("nat_le", V(k), j)}),
                         shift));
                 auto defs = Formula::land(
                     {mc("natc", V(one), 1LL), mc("isnat", V(len)), mc("isnat", V(jp1)),
                      mc("nat_add", j, V(one), V(jp1)), mc("nat_add", V(len), i, V(jp1))});
                 auto rest = Formula::land(
                     {mc("nat_le", V(one), i), mc("nat_le", i, j), mc("nat_le", j, n),
                      mc("isseq", Xbar, Lbar, n), mc("isseq", Ybar, Mbar, V(len)), per_k});
                 return Formula::forall({one, jp1, len}, Formula::implies(defs, rest),
                                        nat_chain({NatConst, 1, NatAdd, 0, NatSub, 0},
                                                  {j, V(one), V(jp1), i}));
             },
         .doc = "subseq(Xbar,Lbar,N,Ybar,Mbar,I,J): Ybar encodes entries I..J of Xbar"});

    add({.name = "prefixseq",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV,
                    ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term Xbar = T(a[0]), Lbar = T(a[1]), n = T(a[2]);
                 Term Ybar = T(a[3]), Mbar = T(a[4]), i = T(a[5]);
                 std::string one = fresh(c), im1 = fresh(c);
                 auto empty = Formula::land(
                     {mc("is0", V(im1)), mc("isseq", Ybar, Mbar, V(im1))});
                 auto proper = Formula::land(
                     {Formula::lnot(mc("is0", V(im1))),
                      mcv("subseq", {Xbar, Lbar, n, Ybar, Mbar, V(one), V(im1)})});
                 auto defs = Formula::land({mc("natc", V(one), 1LL), mc("isnat", V(im1)),
                                            mc("nat_add", V(im1), V(one), i)});
                 return Formula::forall({one, im1},
                                        Formula::implies(defs, Formula::lor({empty, proper})),
                                        nat_chain({NatConst, 1, NatSub, 0}, {i, V(one)}));
             },
         .doc = "prefixseq(Xbar,Lbar,N,Ybar,Mbar,I): Ybar encodes entries 1..I-1"});

    add({.name = "pairseq",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::Nat, ParamKind::RV},
         .variadic = true,
         .min_arity = 5,
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term Xbar = T(a[0]), Lbar = T(a[1]);
                 long long k = N(a[2]);
                 if (k < 1 || a.size() != static_cast<size_t>(3 + 2 * k))
                     throw error("pairseq: expected k followed by k (X,L) pairs");
                 std::string kc = fresh(c);
                 std::vector<FormulaPtr> conj{mc("natc", V(kc), k),
                                              mc("isseq", Xbar, Lbar, V(kc))};
                 for (long long idx = 0; idx < k; ++idx) {
                     std::string ic = fresh(c);
                     conj.push_back(Formula::exists(
                         {ic},
                         Formula::land({mc("natc", V(ic), idx + 1),
                                        mcv("entry", {Xbar, Lbar, V(kc), T(a[3 + 2 * idx]),
                                                      T(a[4 + 2 * idx]), V(ic)})}),
                         nat_chain({NatConst, idx + 1}, {})));
                 }
                 return Formula::exists({kc}, Formula::land(std::move(conj)),
                                        nat_chain({NatConst, k}, {}));
             },
         .doc = "pairseq(Xbar,Lbar,k,X1,L1,...,Xk,Lk): Xbar encodes the fixed-length tuple"});

    // component I of the T-th entry of a sequence of k-tuples
    add({.name = "dentry",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV,
                    ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::Nat},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term Xbar = T(a[0]), Lbar = T(a[1]), n = T(a[2]);
                 Term t = T(a[3]), i = T(a[4]), D = T(a[5]), LD = T(a[6]);
                 long long k = N(a[7]);
                 std::string tup = fresh(c), ltup = fresh(c), kc = fresh(c);
                 auto inner = Formula::exists(
                     {kc},
                     Formula::land({mc("natc", V(kc), k),
                                    mcv("entry", {V(tup), V(ltup), V(kc), D, LD, i})}),
                     nat_chain({NatConst, k}, {}));
                 auto body = Formula::land(
                     {mcv("entry", {Xbar, Lbar, n, V(tup), V(ltup), t}), inner});
                 return Formula::exists({tup, ltup}, body);
             },
         .doc = "dentry(Xbar,Lbar,N,T,I,D,LD,k): D is component I of the T-th entry"});

    // the row sequence (X_{1,i}, ..., X_{Tend,i}) of a sequence of k-tuples
    add({.name = "rowseq",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV,
                    ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::Nat},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term Xbar = T(a[0]), Lbar = T(a[1]), n = T(a[2]);
                 Term R = T(a[3]), LR = T(a[4]), tend = T(a[5]), i = T(a[6]);
                 long long k = N(a[7]);
                 std::string t2 = fresh(c), d = fresh(c), ld = fresh(c);
                 auto pin = Formula::forall(
                     {d, ld},
                     Formula::implies(
                         mcv("dentry", {Xbar, Lbar, n, V(t2), i, V(d), V(ld), k}),
                         mcv("entry", {R, LR, tend, V(d), V(ld), V(t2)})));
                 auto per_t = Formula::forall(
                     {t2},
                     Formula::implies(Formula::land({mc("isnat", V(t2)),
                                                     mc("nat_range1", V(t2), tend)}),
                                      pin));
                 return Formula::land({mc("isseq", R, LR, tend), per_t});
             },
         .doc = "rowseq(Xbar,Lbar,N,R,LR,Tend,I,k): R collects component I of entries 1..Tend"});

    add({.name = "iid",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV,
                    ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term Xbar = T(a[0]), Lbar = T(a[1]), n = T(a[2]), X = T(a[3]), L = T(a[4]);
                 std::string i = fresh(c), x = fresh(c), l = fresh(c), yb = fresh(c),
                             mb = fresh(c);
                 auto body = Formula::implies(
                     Formula::land({mc("isnat", V(i)),
                                    mcv("entry", {Xbar, Lbar, n, V(x), V(l), V(i)}),
                                    mcv("prefixseq", {Xbar, Lbar, n, V(yb), V(mb), V(i)})}),
                     Formula::land({mcv("deq", {V(x), V(l), X, L}),
                                    Formula::indep(V(x), V(yb))}));
                 return Formula::land({mc("isseq", Xbar, Lbar, n),
                                       Formula::forall({i, x, l, yb, mb}, body)});
             },
         .doc = "iid(Xbar,Lbar,N,X,L): the sequence entries are i.i.d. copies of X"});

    add({.name = "ev_eq",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV,
                    ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term A = T(a[0]), LA = T(a[1]), B = T(a[2]), MB = T(a[3]), D = T(a[4]);
                 std::string av = fresh(c), e1 = fresh(c), e2 = fresh(c), i = fresh(c);
                 auto pat = Formula::exists(
                     {av, e1, e2, i},
                     Formula::land({mc("isnat", V(av)),
                                    mcv("labelev0", {A, LA, V(av), V(e1)}),
                                    mcv("labelev0", {B, MB, V(av), V(e2)}),
                                    mc("inter", V(e1), V(e2), V(i)),
                                    mc("eveq", V("_E"), V(i))}));
                 return mc("union_p", D, pat);
             },
         .doc = "ev_eq(A,LA,B,MB,D): D represents the event that A and B take equal values"});

    add({.name = "ev_neq",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV,
                    ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term D = T(a[4]);
                 std::string dq = fresh(c);
                 auto body = Formula::land(
                     {mcv("ev_eq", {T(a[0]), T(a[1]), T(a[2]), T(a[3]), V(dq)}),
                      mc("compl", V(dq), D)});
                 return Formula::exists({dq}, body);
             },
         .doc = "ev_neq(A,LA,B,MB,D): D represents the event that A and B differ"});

    add({.name = "hle",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 Term X = T(a[0]), A = T(a[1]), B = T(a[2]);
                 std::string a2 = fresh(c), b2 = fresh(c), p = fresh(c), q = fresh(c);
                 std::string e = fresh(c);
                 std::string xb = fresh(c), lb = fresh(c), yb = fresh(c), mb = fresh(c),
                             lx = fresh(c), w = fresh(c), n = fresh(c);
                 std::string cw = fresh(c), two = fresh(c), na = fresh(c), p1 = fresh(c),
                             p2 = fresh(c), dm = fresh(c);
                 // |W|^{b'} <= 2^{n a'} through the arithmetic layer
                 auto card_bound = Formula::exists(
                     {cw, two, na, p1, p2},
                     Formula::land({mc("unif", V(cw)), mc("card_cmp_eq", V(w), V(cw)),
                                    mc("natc", V(two), 2LL), mc("isnat", V(na)),
                                    mc("nat_mul", V(n), V(a2), V(na)),
                                    mc("isnat", V(p1)), mc("isnat", V(p2)),
                                    mc("nat_pow", V(cw), V(b2), V(p1)),
                                    mc("nat_pow", V(two), V(na), V(p2)),
                                    mc("nat_le", V(p1), V(p2))}),
                     nat_chain({NatCardOf, 0, NatConst, 2, NatMul, 0, NatPow, 0, NatPow, 0},
                               {V(w), V(n), V(a2), V(cw), V(b2), V(two), V(na)}));
                 auto scheme = Formula::exists(
                     {xb, lb, yb, mb, lx, w, n},
                     Formula::land(
                         {mc("isnat", V(n)), mcv("iid", {V(xb), V(lb), V(n), X, V(lx)}),
                          mc("isseq", V(yb), V(mb), V(n)), mc("lei", V(yb), V(w)),
                          mc("lei", V(w), V(xb)), card_bound,
                          Formula::exists(
                              {dm},
                              Formula::land(
                                  {mcv("ev_neq", {V(xb), V(lb), V(yb), V(mb), V(dm)}),
                                   mc("prle", V(dm), V(e))}))}));
                 auto per_eps = Formula::forall(
                     {e},
                     Formula::implies(Formula::land({mc("isev", V(e)),
                                                     Formula::lnot(mc("iconst", V(e)))}),
                                      scheme));
                 auto worse_rate = Formula::exists(
                     {p, q},
                     Formula::land({mc("isnat", V(p)), mc("isnat", V(q)),
                                    mc("nat_mul", V(a2), B, V(p)),
                                    mc("nat_mul", A, V(b2), V(q)), mc("nat_lt", V(q), V(p))}),
                     nat_chain({NatMul, 0, NatMul, 0}, {V(a2), B, A, V(b2)}));
                 return Formula::forall(
                     {a2, b2},
                     Formula::implies(Formula::land({mc("isnat", V(a2)),
                                                     mc("isnat", V(b2)), worse_rate}),
                                      per_eps));
             },
         .doc = "hle(X,A,B): H(X) <= a/b where A,B represent a,b"});

    add({.name = "hle_c",
         .params = {ParamKind::RV, ParamKind::Nat, ParamKind::Nat},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 long long av = N(a[1]), bv = N(a[2]);
                 if (bv == 0) throw error("hle_c: denominator must be positive");
                 if (av < 0 || bv < 0) throw error("hle_c: constants must be nonnegative");
                 std::string ra = fresh(c), rb = fresh(c);
                 auto body = Formula::land({mc("natc", V(ra), av), mc("natc", V(rb), bv),
                                            mc("hle", T(a[0]), V(ra), V(rb))});
                 return Formula::exists({ra, rb}, body,
                                        nat_chain({NatConst, av, NatConst, bv}, {}));
             },
         .doc = "hle_c(X,a,b): H(X) <= a/b for integer constants, b > 0"});

    add({.name = "entropy_cmp",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::Nat},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 long long m = N(a[2]);
                 if (m < 1) throw error("entropy_cmp: multiplier must be >= 1");
                 std::string av = fresh(c), bv = fresh(c), mc_ = fresh(c), mb = fresh(c);
                 auto scaled = Formula::exists(
                     {mc_, mb},
                     Formula::land({mc("natc", V(mc_), m), mc("isnat", V(mb)),
                                    mc("nat_mul", V(mc_), V(bv), V(mb)),
                                    Formula::implies(mc("hle", T(a[1]), V(av), V(mb)),
                                                     mc("hle", T(a[0]), V(av), V(bv)))}),
                     nat_chain({NatConst, m, NatMul, 0}, {V(mc_), V(bv)}));
                 return Formula::forall(
                     {av, bv},
                     Formula::implies(
                         Formula::land({mc("isnat", V(av)), mc("isnat", V(bv))}), scaled));
             },
         .doc = "entropy_cmp(X,Y,m): H(X) <= m*H(Y) via the hle tests"});
}

}  // namespace fotpi
