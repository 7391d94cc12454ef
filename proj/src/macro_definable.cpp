// Definability layer: Bernoulli comparisons, labels, divided masses, pmf
// definability, same-distribution-up-to-relabelling and cardinality
// comparison for arbitrary (non-uniform) variables; plus the discreteness
// formulae for general random variables.

#include "fotpi/macro.hpp"
#include "fotpi/macro_detail.hpp"

namespace fotpi {

using namespace macro_detail;

void MacroRegistry::register_definable() {
    add({.name = "qeq",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .witness_hints = {"qeq_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 std::string z = fresh(c);
                 return Formula::exists({z}, mc("frac", T(a[0]), T(a[1]), V(z), T(a[2])),
                                        Hint{"qeq_witness", {T(a[0]), T(a[1]), T(a[2])}, {}});
             },
         .doc = "qeq(X,Y,B): B ~ Bern(|X|/(|X|+|Y|)) for uniform X,Y"});

    add({.name = "qlt",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .witness_hints = {"qlt_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term x = T(a[0]), y = T(a[1]), b = T(a[2]);
                 std::string c = fresh(cc), d = fresh(cc);
                 Term bcd = Term::join({b, V(c), V(d)});
                 auto body = Formula::land(
                     {mc("qeq", x, y, V(c)), mc("ueq_n", V(d), 2LL), mc("smi", bcd, V(c)),
                      mc("smi", bcd, V(d)), Formula::lnot(mc("smi", bcd, b))});
                 auto strict = Formula::land(
                     {mc("card_eq", b, 2LL),
                      Formula::exists({c, d}, body, Hint{"qlt_witness", {x, y, b}, {}})});
                 return Formula::lor({mc("ueq_n", b, 2LL), strict});
             },
         .doc = "qlt(X,Y,B): B ~ Bern(t) with |X|/(|X|+|Y|) < t <= 1/2, for uniform |X|<|Y|"});

    add({.name = "qle",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 return Formula::lor({mc("qlt", T(a[0]), T(a[1]), T(a[2])),
                                      mc("qeq", T(a[0]), T(a[1]), T(a[2]))});
             },
         .doc = "qle(X,Y,B): qlt or qeq"});

    add({.name = "ble",
         .params = {ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& c) {
                 std::string x = fresh(c), y = fresh(c);
                 auto mono = Formula::forall(
                     {x, y},
                     Formula::implies(
                         Formula::land({mc("ult", V(x), V(y)), mc("qlt", V(x), V(y), T(a[0]))}),
                         mc("qlt", V(x), V(y), T(a[1]))));
                 return Formula::land(
                     {mc("card_le", T(a[0]), 2LL), mc("card_le", T(a[1]), 2LL), mono});
             },
         .doc = "ble(B,C): Bern parameters in [0,1/2] satisfy theta_B <= theta_C"});

    add({.name = "blt",
         .params = {ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 return Formula::lnot(mc("ble", T(a[1]), T(a[0])));
             },
         .doc = "blt(B,C): theta_B < theta_C"});

    add({.name = "beq",
         .params = {ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 return Formula::land(
                     {mc("ble", T(a[0]), T(a[1])), mc("ble", T(a[1]), T(a[0]))});
             },
         .doc = "beq(B,C): theta_B = theta_C"});

    add({.name = "smis",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .witness_hints = {"smis_usplit"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term x = T(a[0]), y = T(a[1]), b = T(a[2]), c = T(a[3]);
                 std::string u = fresh(cc);
                 auto split = Formula::exists(
                     {u},
                     Formula::land({mc("card_le", V(u), 2LL),
                                    mc("lei", Term::join({b, c}), Term::join({x, V(u)}))}),
                     Hint{"smis_usplit", {x, b, c}, {}});
                 return Formula::land({mc("lei", x, y), mc("smi", y, b), mc("smi", y, c),
                                       Formula::lor({mc("ieq", b, c), Formula::lnot(split)})});
             },
         .doc = "smis(X,Y,B,C): single-mass indicators B,C of Y hit the same value of X"});

    add({.name = "smid",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long&) {
                 return Formula::land(
                     {mc("lei", T(a[0]), T(a[1])), mc("smi", T(a[1]), T(a[2])),
                      mc("smi", T(a[1]), T(a[3])),
                      Formula::lnot(mc("smis", T(a[0]), T(a[1]), T(a[2]), T(a[3])))});
             },
         .doc = "smid(X,Y,B,C): indicators B,C of Y hit different values of X"});

    add({.name = "label3",
         .params = {ParamKind::RV, ParamKind::RV},
         .witness_hints = {"label3_u"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term A = T(a[0]), L = T(a[1]);
                 std::string b = fresh(cc), u = fresh(cc), c = fresh(cc), d = fresh(cc),
                             v = fresh(cc);
                 auto same = Formula::forall(
                     {c}, Formula::implies(mc("smis", A, L, V(b), V(c)),
                                           mc("smi", Term::join({A, V(u)}), V(c))));
                 auto other = Formula::forall(
                     {d},
                     Formula::implies(
                         mc("smid", A, L, V(b), V(d)),
                         Formula::lnot(Formula::exists(
                             {v}, Formula::land({mc("ueq", V(u), V(v)),
                                                 Formula::indep(V(v), A),
                                                 mc("smi", Term::join({A, V(v)}), V(d))})))));
                 auto ex = Formula::exists(
                     {u},
                     Formula::land({mc("uge_n", V(u), 3LL), Formula::indep(V(u), A), same,
                                    other}),
                     Hint{"label3_u", {A, L, V(b)}, {}});
                 auto all = Formula::forall({b}, Formula::implies(mc("smi", L, V(b)), ex));
                 return Formula::land({mc("lei", A, L), all});
             },
         .doc = "label3(A,L): L labels A with values {3,4,...}, L|A=a uniform on a values"});

    add({.name = "divmass3",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .witness_hints = {"divmass_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term A = T(a[0]), L = T(a[1]), U = T(a[2]), B = T(a[3]);
                 std::string ut = fresh(cc);
                 auto body = Formula::land(
                     {mc("label3", A, L), mc("smi", L, B), mc("ueq", U, V(ut)),
                      mc("uge_n", U, 3LL), Formula::indep(V(ut), A),
                      mc("smi", Term::join({A, V(ut)}), B)});
                 return Formula::exists({ut}, body, Hint{"divmass_witness", {A, L, U, B}, {}});
             },
         .doc = "divmass3(A,L,U,B): B is a divided mass of the value A=|U|"});

    // reduced form for call sites that already assert label3(A,L); identical
    // otherwise, and the composed formulae stay logically equivalent
    add({.name = "divmass3r",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .witness_hints = {"divmass_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term A = T(a[0]), L = T(a[1]), U = T(a[2]), B = T(a[3]);
                 std::string ut = fresh(cc);
                 auto body = Formula::land(
                     {mc("smi", L, B), mc("ueq", U, V(ut)), mc("uge_n", U, 3LL),
                      Formula::indep(V(ut), A), mc("smi", Term::join({A, V(ut)}), B)});
                 return Formula::exists({ut}, body, Hint{"divmass_witness", {A, L, U, B}, {}});
             },
         .doc = "divmass3r(A,L,U,B): divmass3 with label3(A,L) asserted by the caller"});

    // pmf_def's psi has holes _W (the value, as a uniform variable), _X, _Y
    // (the fraction |X|/(|X|+|Y|)).
    add({.name = "pmf_def",
         .params = {ParamKind::RV, ParamKind::Form},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term A = T(a[0]);
                 FormulaPtr psi = F(a[1]);
                 std::string l = fresh(cc), b = fresh(cc), u = fresh(cc), x = fresh(cc),
                             y = fresh(cc), c = fresh(cc);
                 auto psi_inst = rename_free(psi, {{"_W", u}, {"_X", x}, {"_Y", y}});
                 auto inner = Formula::forall(
                     {x, y, c},
                     Formula::implies(
                         Formula::land({mc("ult", V(x), V(y)), mc("qeq", V(x), V(y), V(c))}),
                         Formula::iff(mc("ble", V(c), V(b)), psi_inst)));
                 auto masses = Formula::forall(
                     {b, u}, Formula::implies(mc("divmass3", A, V(l), V(u), V(b)), inner));
                 return Formula::exists({l}, Formula::land({mc("label3", A, V(l)), masses}));
             },
         .doc = "pmf_def(A,psi): A follows the pmf whose cumulative test is psi(_W,_X,_Y)"});

    add({.name = "rdist_eq",
         .params = {ParamKind::RV, ParamKind::RV},
         .witness_hints = {"rdist_labels"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term A1 = T(a[0]), A2 = T(a[1]);
                 std::string l1 = fresh(cc), l2 = fresh(cc), b = fresh(cc), u = fresh(cc);
                 auto side = [&](const Term& A, const std::string& l, long long& cx) {
                     std::string bb = fresh(cx), uu = fresh(cx);
                     return Formula::exists(
                         {bb, uu},
                         Formula::land({mc("beq", V(b), V(bb)), mc("ueq", V(u), V(uu)),
                                        mc("divmass3r", A, V(l), V(uu), V(bb))}),
                         Hint{"divmass_copy", {A, V(l), V(u), V(b)}, {}});
                 };
                 auto match = Formula::forall(
                     {b, u}, Formula::iff(side(A1, l1, cc), side(A2, l2, cc)));
                 return Formula::exists(
                     {l1, l2},
                     Formula::land({mc("label3", A1, V(l1)), mc("label3", A2, V(l2)), match}),
                     Hint{"rdist_labels", {A1, A2}, {}});
             },
         .doc = "rdist_eq(A1,A2): same distribution up to relabelling"});

    add({.name = "cardleu2",
         .params = {ParamKind::RV, ParamKind::RV},
         .witness_hints = {"label_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term A = T(a[0]), Vv = T(a[1]);
                 std::string l = fresh(cc), b = fresh(cc), u = fresh(cc);
                 auto all = Formula::forall(
                     {b, u}, Formula::implies(mc("divmass3r", A, V(l), V(u), V(b)),
                                              mc("ule", V(u), Vv)));
                 return Formula::exists({l},
                                        Formula::land({mc("label3", A, V(l)), all}),
                                        Hint{"label_witness", {A}, {}});
             },
         .doc = "cardleu2(A,V): V uniform with |A|+2 <= |V|"});

    add({.name = "card_cmp_le",
         .params = {ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 std::string v = fresh(cc);
                 return Formula::forall(
                     {v}, Formula::implies(mc("cardleu2", T(a[1]), V(v)),
                                           mc("cardleu2", T(a[0]), V(v))));
             },
         .doc = "card_cmp_le(A1,A2): |A1| <= |A2| for arbitrary A1,A2"});

    add({.name = "card_cmp_eq",
         .params = {ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 std::string v = fresh(cc);
                 return Formula::forall(
                     {v}, Formula::iff(mc("cardleu2", T(a[0]), V(v)),
                                       mc("cardleu2", T(a[1]), V(v))));
             },
         .doc = "card_cmp_eq(A1,A2): |A1| = |A2| for arbitrary A1,A2"});

    add({.name = "atomless",
         .params = {ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 std::string u = fresh(cc);
                 return Formula::lnot(Formula::exists({u}, mc("smi", T(a[0]), V(u))));
             },
         .doc = "atomless(X): the distribution of X has no atom"});

    add({.name = "discrete",
         .params = {ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term x = T(a[0]);
                 std::string v = fresh(cc), w = fresh(cc), u = fresh(cc);
                 Term vw = Term::join({V(v), V(w)});
                 auto atom_in = Formula::exists(
                     {u}, Formula::land({mc("smi", x, V(u)),
                                         mc("smi", Term::join({V(v), V(w), V(u)}), V(v)),
                                         mc("smi", Term::join({V(v), V(w), V(u)}), V(w))}));
                 auto body = Formula::land(
                     {mc("lei", vw, x), mc("card_eq", V(v), 2LL), mc("card_eq", V(w), 2LL),
                      mc("card_eq", vw, 3LL), Formula::lnot(atom_in)});
                 return Formula::lnot(Formula::exists({v, w}, body));
             },
         .doc = "discrete(X): the distribution of X has no atomless component"});
}

}  // namespace fotpi
