// Event representation: an event E with P(E) < 1 is represented by a variable
// D that is Unif[k] conditional on E (k large enough) and constant off E.
// These macros recover indicators, boolean algebra, probability comparison
// and the labelled-value events used by the distribution-equality tests.

#include "fotpi/macro.hpp"
#include "fotpi/macro_detail.hpp"

namespace fotpi {

using namespace macro_detail;

void MacroRegistry::register_events() {
    // |D| = |U|+1 for uniform U and arbitrary D, through the labelled
    // cardinality comparison: every uniform V has |V| >= |D|+2 exactly when
    // |V| >= |U|+3.
    add({.name = "cardsucc",
         .params = {ParamKind::RV, ParamKind::RV},
         .witness_hints = {"succ3_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term D = T(a[0]), U = T(a[1]);
                 // |D| <= |U|+1: some uniform V with |V| = |U|+3 has |D|+2 <= |V|;
                 // |D| >= |U|+1: no uniform V with |V| = |U|+2 has |D|+2 <= |V|
                 std::string v1 = fresh(cc), t1 = fresh(cc), t2 = fresh(cc);
                 auto le_side = Formula::exists(
                     {t1, t2, v1},
                     Formula::land({mc("usucc", U, V(t1)), mc("usucc", V(t1), V(t2)),
                                    mc("usucc", V(t2), V(v1)), mc("cardleu2", D, V(v1))}),
                     Hint{"succ3_witness", {U}, {}});
                 std::string v2 = fresh(cc), t3 = fresh(cc);
                 auto lt_side = Formula::exists(
                     {t3, v2},
                     Formula::land({mc("usucc", U, V(t3)), mc("usucc", V(t3), V(v2)),
                                    mc("cardleu2", D, V(v2))}),
                     Hint{"succ3_witness", {U}, {}});
                 return Formula::land({le_side, Formula::lnot(lt_side)});
             },
         .doc = "cardsucc(D,U): |D| = |U|+1 with U uniform"});

    add({.name = "ind",
         .params = {ParamKind::RV, ParamKind::RV},
         .witness_hints = {"ind_uv"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term D = T(a[0]), C = T(a[1]);
                 std::string u = fresh(cc), v = fresh(cc), g = fresh(cc), h = fresh(cc);
                 Term DV = Term::join({D, V(v)});
                 Term CV = Term::join({C, V(v)});
                 auto masscmp = Formula::forall(
                     {g, h},
                     Formula::implies(
                         Formula::land({mc("smi", DV, V(g)),
                                        Formula::lnot(mc("smi", CV, V(g))),
                                        mc("smi", DV, V(h)), mc("smi", CV, V(h))}),
                         mc("blt", V(g), V(h))));
                 auto exuv = Formula::exists(
                     {u, v},
                     Formula::land({mc("uge_n", V(u), 2LL), mc("ueq_n", V(v), 2LL),
                                    mcv("mutual_indep", {V(u), V(v), C}),
                                    mc("lei", D, Term::join({C, V(u)})),
                                    mc("cardsucc", D, V(u)), masscmp}),
                     Hint{"ind_uv", {D, C}, {}});
                 auto nondeg =
                     Formula::land({mc("card_eq", C, 2LL), mc("smi", D, C), exuv});
                 return Formula::lor(
                     {Formula::land({mc("unif", D), mc("iconst", C)}), nondeg});
             },
         .doc = "ind(D,C): C is the indicator of the event represented by D"});

    add({.name = "isev",
         .params = {ParamKind::RV},
         .witness_hints = {"ind_indicator"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 std::string c = fresh(cc);
                 return Formula::exists({c}, mc("ind", T(a[0]), V(c)),
                                        Hint{"ind_indicator", {T(a[0])}, {}});
             },
         .doc = "isev(D): D represents some event"});

    add({.name = "compl",
         .params = {ParamKind::RV, ParamKind::RV},
         .witness_hints = {"ind_indicator"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term D1 = T(a[0]), D2 = T(a[1]);
                 std::string c = fresh(cc);
                 auto shared = Formula::exists(
                     {c},
                     Formula::land({mc("ind", D1, V(c)), mc("ind", D2, V(c)),
                                    Formula::lnot(mc("smi", Term::join({D1, D2}), V(c)))}),
                     Hint{"ind_indicator", {D1}, {}});
                 return Formula::land(
                     {shared,
                      Formula::implies(mc("uge_n", D2, 2LL), mc("iconst", D1)),
                      Formula::implies(mc("uge_n", D1, 2LL), mc("iconst", D2))});
             },
         .doc = "compl(D1,D2): the represented events are complements mod 0"});

    add({.name = "eveq",
         .params = {ParamKind::RV, ParamKind::RV},
         .witness_hints = {"ind_indicator"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term D1 = T(a[0]), D2 = T(a[1]);
                 std::string c = fresh(cc);
                 auto shared = Formula::exists(
                     {c}, Formula::land({mc("ind", D1, V(c)), mc("ind", D2, V(c))}),
                     Hint{"ind_indicator", {D1}, {}});
                 return Formula::land({shared, Formula::lnot(mc("compl", D1, D2))});
             },
         .doc = "eveq(D1,D2): the represented events agree mod 0"});

    add({.name = "subset",
         .params = {ParamKind::RV, ParamKind::RV},
         .witness_hints = {"ind_indicator"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term D1 = T(a[0]), D2 = T(a[1]);
                 std::string c2 = fresh(cc), dt = fresh(cc);
                 auto inner = Formula::forall(
                     {dt}, Formula::implies(mc("eveq", D1, V(dt)),
                                            mc("smi", Term::join({D2, V(dt)}), V(c2))));
                 auto strict = Formula::land(
                     {Formula::lnot(mc("unif", D1)), Formula::lnot(mc("unif", D2)),
                      Formula::exists({c2},
                                      Formula::land({mc("ind", D2, V(c2)), inner}),
                                      Hint{"ind_indicator", {D2}, {}})});
                 return Formula::land(
                     {mc("isev", D1), mc("isev", D2),
                      Formula::lor({mc("iconst", D1), mc("uge_n", D2, 2LL), strict})});
             },
         .doc = "subset(D1,D2): represented event of D1 is contained in that of D2 mod 0"});

    // The P parameter has one hole _E ranging over candidate representations.
    add({.name = "union_p",
         .params = {ParamKind::RV, ParamKind::Form},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term D = T(a[0]);
                 FormulaPtr P = F(a[1]);
                 std::string d2 = fresh(cc), dt = fresh(cc), d3 = fresh(cc);
                 auto sat = [&](const std::string& v) {
                     return Formula::land(
                         {rename_free(P, {{"_E", v}}), mc("isev", V(v))});
                 };
                 auto upper = Formula::forall(
                     {d2}, Formula::implies(sat(d2), mc("subset", V(d2), D)));
                 auto least = Formula::forall(
                     {dt},
                     Formula::implies(
                         Formula::land({mc("isev", V(dt)),
                                        Formula::forall({d3},
                                                        Formula::implies(sat(d3),
                                                                         mc("subset", V(d3),
                                                                            V(dt))))}),
                         mc("subset", D, V(dt))));
                 return Formula::land({upper, least});
             },
         .doc = "union_p(D,P): D represents the essential union of events satisfying P(_E)"});

    add({.name = "inter_p",
         .params = {ParamKind::RV, ParamKind::Form},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term D = T(a[0]);
                 FormulaPtr P = F(a[1]);
                 std::string d2 = fresh(cc), dt = fresh(cc), d3 = fresh(cc);
                 auto sat = [&](const std::string& v) {
                     return Formula::land(
                         {rename_free(P, {{"_E", v}}), mc("isev", V(v))});
                 };
                 auto lower = Formula::forall(
                     {d2}, Formula::implies(sat(d2), mc("subset", D, V(d2))));
                 auto greatest = Formula::forall(
                     {dt},
                     Formula::implies(
                         Formula::land({mc("isev", V(dt)),
                                        Formula::forall({d3},
                                                        Formula::implies(sat(d3),
                                                                         mc("subset", V(dt),
                                                                            V(d3))))}),
                         mc("subset", V(dt), D)));
                 return Formula::land({lower, greatest});
             },
         .doc = "inter_p(D,P): D represents the essential intersection of events satisfying P"});

    auto finite_family = [](const std::vector<MacroArg>& a, long long& cc,
                            const char* pname) {
        // union(D1,...,Dn,Dt) / inter(D1,...,Dn,Dt): last argument is the target
        Term target = T(a.back());
        std::vector<FormulaPtr> cases;
        for (size_t i = 0; i + 1 < a.size(); ++i)
            cases.push_back(mc("eveq", V("_E"), T(a[i])));
        (void)cc;
        return mc(pname, target, Formula::lor(std::move(cases)));
    };

    add({.name = "union",
         .params = {ParamKind::RV, ParamKind::RV},
         .variadic = true,
         .min_arity = 2,
         .expand1 =
             [finite_family](const std::vector<MacroArg>& a, long long& cc) {
                 return finite_family(a, cc, "union_p");
             },
         .doc = "union(D1,...,Dn,D): D represents the union of the events of D1..Dn"});

    add({.name = "inter",
         .params = {ParamKind::RV, ParamKind::RV},
         .variadic = true,
         .min_arity = 2,
         .expand1 =
             [finite_family](const std::vector<MacroArg>& a, long long& cc) {
                 return finite_family(a, cc, "inter_p");
             },
         .doc = "inter(D1,...,Dn,D): D represents the intersection of the events of D1..Dn"});

    add({.name = "disjoint",
         .params = {ParamKind::RV, ParamKind::RV},
         .witness_hints = {"compl_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 std::string dt = fresh(cc);
                 auto body = Formula::land(
                     {mc("compl", T(a[0]), V(dt)), mc("subset", T(a[1]), V(dt))});
                 return Formula::exists({dt}, body, Hint{"compl_witness", {T(a[0])}, {}});
             },
         .doc = "disjoint(D1,D2): the represented events are disjoint mod 0"});

    add({.name = "indep_ev",
         .params = {ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 std::string d1 = fresh(cc), d2 = fresh(cc);
                 auto body = Formula::land(
                     {mc("eveq", T(a[0]), V(d1)), mc("eveq", T(a[1]), V(d2)),
                      Formula::indep(V(d1), V(d2))});
                 return Formula::exists({d1, d2}, body);
             },
         .doc = "indep_ev(D1,D2): the represented events are independent"});

    add({.name = "prle",
         .params = {ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 std::string dt = fresh(cc);
                 auto body = Formula::land(
                     {mc("rdist_eq", T(a[0]), V(dt)), mc("subset", V(dt), T(a[1]))});
                 return Formula::exists({dt}, body);
             },
         .doc = "prle(D1,D2): P(event of D1) <= P(event of D2)"});

    add({.name = "preq",
         .params = {ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 std::string dt = fresh(cc);
                 auto body = Formula::land(
                     {mc("rdist_eq", T(a[0]), V(dt)), mc("eveq", V(dt), T(a[1]))});
                 return Formula::exists({dt}, body);
             },
         .doc = "preq(D1,D2): P(event of D1) = P(event of D2)"});

    add({.name = "prod2_eq",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 // P(E1)P(E2) = P(E3)P(E4) through independent copies and
                 // intersection masses
                 std::string p = fresh(cc), q = fresh(cc), r = fresh(cc), s = fresh(cc),
                             i1 = fresh(cc), i2 = fresh(cc);
                 auto body = Formula::land(
                     {mc("preq", T(a[0]), V(p)), mc("preq", T(a[1]), V(q)),
                      mc("indep_ev", V(p), V(q)), mc("preq", T(a[2]), V(r)),
                      mc("preq", T(a[3]), V(s)), mc("indep_ev", V(r), V(s)),
                      mc("inter", V(p), V(q), V(i1)), mc("inter", V(r), V(s), V(i2)),
                      mc("preq", V(i1), V(i2))});
                 return Formula::exists({p, q, r, s, i1, i2}, body);
             },
         .doc = "prod2_eq(E1,E2,E3,E4): P(E1)P(E2) = P(E3)P(E4)"});

    add({.name = "prob_sumprod",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 // P(E1) = P(E2)P(E3) + P(E4)
                 std::string d1 = fresh(cc), d2 = fresh(cc), d3 = fresh(cc), d4 = fresh(cc),
                             d23 = fresh(cc);
                 auto body = Formula::land(
                     {mc("preq", T(a[0]), V(d1)), mc("preq", T(a[1]), V(d2)),
                      mc("preq", T(a[2]), V(d3)), mc("preq", T(a[3]), V(d4)),
                      mc("indep_ev", V(d2), V(d3)), mc("inter", V(d2), V(d3), V(d23)),
                      mc("disjoint", V(d23), V(d4)), mc("union", V(d23), V(d4), V(d1))});
                 return Formula::exists({d1, d2, d3, d4, d23}, body);
             },
         .doc = "prob_sumprod(D1,D2,D3,D4): P(E1) = P(E2)P(E3) + P(E4)"});

    add({.name = "labelevne3",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .witness_hints = {"labelev_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term A = T(a[0]), L = T(a[1]), U = T(a[2]), D = T(a[3]);
                 std::string c = fresh(cc), ut = fresh(cc), b = fresh(cc), dt = fresh(cc);
                 auto per_mass = Formula::forall(
                     {b},
                     Formula::implies(
                         mcv("divmass3r", {A, L, U, V(b)}),
                         Formula::land(
                             {mc("smi", Term::join({A, V(ut)}), V(b)),
                              mc("smi", Term::join({V(c), V(ut)}), V(b)),
                              Formula::exists(
                                  {dt}, Formula::land({mc("eveq", D, V(dt)),
                                                       mc("lei", V(b), V(dt))}))})));
                 auto body = Formula::land(
                     {mc("ind", D, V(c)), mc("label3", A, L), mc("smi", A, V(c)),
                      mc("ueq", U, V(ut)), mc("uge_n", U, 3LL), Formula::indep(V(ut), A),
                      per_mass});
                 return Formula::exists({c, ut}, body,
                                        Hint{"labelev_witness", {A, L, U, D}, {}});
             },
         .doc = "labelevne3(A,L,U,D): P(A=|U|)>0 and D represents the event A=|U|"});

    add({.name = "labelev3",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term A = T(a[0]), L = T(a[1]), U = T(a[2]), D = T(a[3]);
                 std::string d2 = fresh(cc);
                 auto empty = Formula::land(
                     {mc("iconst", D),
                      Formula::lnot(Formula::exists(
                          {d2}, mc("labelevne3", A, L, U, V(d2)),
                          Hint{"labelev_witness", {A, L, U, V(d2)}, {}}))});
                 return Formula::lor({mc("labelevne3", A, L, U, D), empty});
             },
         .doc = "labelev3(A,L,U,D): D represents the event A=|U| (possibly empty)"});

    add({.name = "labelevne3r",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .witness_hints = {"labelev_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term A = T(a[0]), L = T(a[1]), U = T(a[2]), D = T(a[3]);
                 std::string c = fresh(cc), ut = fresh(cc), b = fresh(cc), dt = fresh(cc);
                 auto per_mass = Formula::forall(
                     {b},
                     Formula::implies(
                         mcv("divmass3r", {A, L, U, V(b)}),
                         Formula::land(
                             {mc("smi", Term::join({A, V(ut)}), V(b)),
                              mc("smi", Term::join({V(c), V(ut)}), V(b)),
                              Formula::exists(
                                  {dt}, Formula::land({mc("eveq", D, V(dt)),
                                                       mc("lei", V(b), V(dt))}))})));
                 auto body = Formula::land(
                     {mc("ind", D, V(c)), mc("smi", A, V(c)),
                      mc("ueq", U, V(ut)), mc("uge_n", U, 3LL), Formula::indep(V(ut), A),
                      per_mass});
                 return Formula::exists({c, ut}, body,
                                        Hint{"labelev_witness", {A, L, U, D}, {}});
             },
         .doc = "labelevne3r: labelevne3 with label3(A,L) asserted by the caller"});

    add({.name = "labelev3r",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term A = T(a[0]), L = T(a[1]), U = T(a[2]), D = T(a[3]);
                 std::string d2 = fresh(cc);
                 auto empty = Formula::land(
                     {mc("iconst", D),
                      Formula::lnot(Formula::exists(
                          {d2}, mcv("labelevne3r", {A, L, U, V(d2)}),
                          Hint{"labelev_witness", {A, L, U, V(d2)}, {}}))});
                 return Formula::lor({mcv("labelevne3r", {A, L, U, D}), empty});
             },
         .doc = "labelev3r: labelev3 with label3(A,L) asserted by the caller"});

    add({.name = "deq",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term X = T(a[0]), LX = T(a[1]), Z = T(a[2]), LZ = T(a[3]);
                 std::string u = fresh(cc), dx = fresh(cc), dz = fresh(cc);
                 auto match = Formula::forall(
                     {u, dx, dz},
                     Formula::implies(
                         Formula::land({mcv("labelev3r", {X, LX, V(u), V(dx)}),
                                        mcv("labelev3r", {Z, LZ, V(u), V(dz)})}),
                         mc("preq", V(dx), V(dz))));
                 return Formula::land(
                     {mc("label3", X, LX), mc("label3", Z, LZ), match});
             },
         .doc = "deq(X,LX,Z,LZ): the labelled variables have the same distribution"});

    add({.name = "cdeq",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV,
                    ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 Term X = T(a[0]), LX = T(a[1]), Y = T(a[2]), LY = T(a[3]), Z = T(a[4]),
                      LZ = T(a[5]), W = T(a[6]), LW = T(a[7]);
                 std::string u = fresh(cc), v = fresh(cc), dx = fresh(cc), dy = fresh(cc),
                             dz = fresh(cc), dw = fresh(cc), izw = fresh(cc), ixy = fresh(cc);
                 auto consequent = Formula::land(
                     {Formula::lnot(mc("iconst", V(dz))),
                      Formula::exists(
                          {izw, ixy},
                          Formula::land(
                              {mc("inter", V(dz), V(dw), V(izw)),
                               mc("inter", V(dx), V(dy), V(ixy)),
                               mc("prod2_eq", V(dx), V(izw), V(dz), V(ixy))}))});
                 auto match = Formula::forall(
                     {u, v, dx, dy, dz, dw},
                     Formula::implies(
                         Formula::land({Formula::lnot(mc("iconst", V(dx))),
                                        mcv("labelev3r", {X, LX, V(u), V(dx)}),
                                        mcv("labelev3r", {Z, LZ, V(u), V(dz)}),
                                        mcv("labelev3r", {Y, LY, V(v), V(dy)}),
                                        mcv("labelev3r", {W, LW, V(v), V(dw)})}),
                         consequent));
                 return Formula::land({mc("label3", X, LX), mc("label3", Y, LY),
                                       mc("label3", Z, LZ), mc("label3", W, LW), match});
             },
         .doc = "cdeq(X,LX,Y,LY,Z,LZ,W,LW): Y|X follows the conditional law of W|Z, labelled"});

    add({.name = "cdeqr",
         .params = {ParamKind::RV, ParamKind::RV, ParamKind::RV, ParamKind::RV},
         .h_atomic = true,
         .witness_hints = {"label_witness"},
         .expand1 =
             [](const std::vector<MacroArg>& a, long long& cc) {
                 std::string lx = fresh(cc), ly = fresh(cc), lz = fresh(cc), lw = fresh(cc);
                 auto body = mcv("cdeq", {T(a[0]), V(lx), T(a[1]), V(ly), T(a[2]), V(lz),
                                          T(a[3]), V(lw)});
                 return Formula::exists({lx, ly, lz, lw}, body,
                                        Hint{"label_witness", {T(a[0])}, {}});
             },
         .doc = "cdeqr(X,Y,Z,W): Y|X follows the conditional law of W|Z up to relabelling"});
}

}  // namespace fotpi
