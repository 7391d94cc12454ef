#include <random>

#include "doctest.h"
#include "fotpi/macro.hpp"
#include "fotpi/normalize.hpp"
#include "fotpi/parse.hpp"

using namespace fotpi;

static FormulaPtr P(const std::string& s) {
    return parse_formula(s, &MacroRegistry::instance());
}

TEST_CASE("parsing basics") {
    auto f = P("forall U. (indep(U,Y) -> indep(U,X))");
    CHECK(f->kind == Kind::Forall);
    CHECK(f->kids[0]->kind == Kind::Implies);

    auto g = P("indep(X,X)");
    CHECK(g->kind == Kind::Indep);
    CHECK(g->t1 == Term::var("X"));

    CHECK_THROWS_AS(P("indep(X,"), ParseError);
    CHECK_THROWS_AS(P("nosuchmacro(X)"), ParseError);
    CHECK_THROWS_AS(P("lei(X)"), ParseError);        // arity
    CHECK_THROWS_AS(P("card_le(X, Y)"), ParseError);  // kind mismatch

    auto h = P("2*H(X,Y) - H(X) - H(Y) >= 0");
    CHECK(h->kind == Kind::EntropyLinear);
    CHECK(h->ent.coeffs.size() == 3);

    auto c = P("cdrel(Y | X ; W | Z)");
    CHECK(c->kind == Kind::CondDistRelAtom);
    auto c2 = P("cdrel(Y | _ ; W | _)");
    CHECK(c2->cdr.lhs_cond.empty());
}

TEST_CASE("indep atom canonicalization") {
    CHECK(eq(P("indep(Y,X)"), P("indep(X,Y)")));
    CHECK(eq(P("indep(join(Z,X),Y)"), P("indep(Y,join(X,Z))")));
}

TEST_CASE("print-parse round trip on handwritten formulae") {
    for (const char* s : {
             "forall U. (indep(U,Y) -> indep(U,X))",
             "(indep(X,Y) and not indep(X,Z) and (exists U. indep(U,X)))",
             "(lei(X,Y) or (unif(X) <-> card_le(X, 2)))",
             "exists U,V. (indep(U,V) -> (forall W. indep(W,join(U,V))))",
             "H(X,Y) - 1/2*H(X) > 0",
             "cdrel(Y | X,Z ; W | A,B)",
         }) {
        auto f = P(s);
        auto g = P(print_formula(f));
        CAPTURE(s);
        CHECK(eq(f, g));
    }
}

namespace {

// random formula generator for the round-trip property
FormulaPtr random_formula(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
    std::uniform_int_distribution<int> vpick(0, 3);
    const char* vars[] = {"X", "Y", "Z", "W"};
    switch (pick(rng)) {
        case 0:
            return Formula::indep(Term::var(vars[vpick(rng)]), Term::var(vars[vpick(rng)]));
        case 1: {
            LinearEntropyExpr e;
            e.add({vars[vpick(rng)]}, Rat(1 + vpick(rng), 2));
            e.cmp = Cmp::Ge;
            return Formula::entropy(std::move(e));
        }
        case 2:
            return Formula::lnot(random_formula(rng, depth - 1));
        case 3:
            return Formula::land({random_formula(rng, depth - 1),
                                  random_formula(rng, depth - 1)});
        case 4:
            return Formula::lor({random_formula(rng, depth - 1),
                                 random_formula(rng, depth - 1)});
        case 5:
            return Formula::implies(random_formula(rng, depth - 1),
                                    random_formula(rng, depth - 1));
        case 6:
            return Formula::exists({std::string("U") + std::to_string(vpick(rng))},
                                   random_formula(rng, depth - 1));
        default:
            return Formula::forall({std::string("V") + std::to_string(vpick(rng))},
                                   random_formula(rng, depth - 1));
    }
}

}  // namespace

TEST_CASE("print-parse round trip property") {
    std::mt19937 rng(20240811);
    for (int i = 0; i < 500; ++i) {
        auto f = random_formula(rng, 6);
        auto printed = print_formula(f);
        CAPTURE(printed);
        auto g = parse_formula(printed);
        CHECK(eq(f, g));
    }
}

TEST_CASE("nnf") {
    auto f = to_nnf(P("not (exists U. indep(U,X))"));
    CHECK(f->kind == Kind::Forall);
    CHECK(f->kids[0]->kind == Kind::Not);

    auto g = to_nnf(P("not (indep(A,B) and indep(C,D))"));
    CHECK(g->kind == Kind::Or);

    auto h = to_nnf(P("not not indep(A,B)"));
    CHECK(h->kind == Kind::Indep);

    auto i = to_nnf(P("indep(A,B) <-> indep(C,D)"));
    CHECK(i->kind == Kind::And);
}

TEST_CASE("prenex") {
    auto f = to_prenex(to_nnf(P("(exists U. indep(U,A)) and (exists V. indep(V,B))")));
    CHECK(f->kind == Kind::Exists);
    CHECK(f->binders.size() == 2);
    CHECK(!f->kids[0]->is_quantifier());

    auto g = to_prenex(P("forall U. (indep(U,A) -> (exists V. indep(V,U)))"));
    CHECK(g->kind == Kind::Forall);
    CHECK(g->kids[0]->kind == Kind::Exists);
    CHECK(g->kids[0]->kids[0]->kind == Kind::Implies);

    // either order is legal for independent blocks; we pull exists first
    auto h = to_prenex(to_nnf(P("(forall U. indep(U,A)) and (exists V. indep(V,B))")));
    CHECK(h->kind == Kind::Exists);
    CHECK(h->kids[0]->kind == Kind::Forall);
}

TEST_CASE("join elimination") {
    auto f = P("indep(U,join(X,Z))");
    auto g = eliminate_joins(f, JoinMode::Strict);
    CHECK(g->kind == Kind::Exists);
    CHECK(!contains_macro(g));
    // sugared mode leaves the formula alone
    CHECK(eq(eliminate_joins(f, JoinMode::Sugared), f));
    // no joins: unchanged
    auto h = P("indep(U,X)");
    CHECK(eq(eliminate_joins(h, JoinMode::Strict), h));
}

TEST_CASE("classification anchors from the hierarchy propositions") {
    auto lei = Formula::call("lei", {Term::var("X"), Term::var("Y")});
    CHECK(classify(lei, Hierarchy::Pi, JoinMode::Strict) == HierarchyLevel{2, 1});  // Pi_1

    auto joint = Formula::call("joint", {Term::var("Z"), Term::var("X"), Term::var("Y")});
    CHECK(classify(joint, Hierarchy::Pi, JoinMode::Strict) == HierarchyLevel{3, 2});  // Pi_2

    auto ci = Formula::call("ci", {Term::var("X"), Term::var("Y"), Term::var("Z")});
    CHECK(classify(ci, Hierarchy::Pi, JoinMode::Strict) == HierarchyLevel{3, 4});  // Sigma_3

    auto card2 = Formula::call("card_eq", {Term::var("X"), 2LL});
    CHECK(classify(card2, Hierarchy::Pi, JoinMode::Strict) == HierarchyLevel{3, 2});  // Pi_2

    // H-hierarchy: card_eq(X,2) is Pi_1^H
    CHECK(classify(card2, Hierarchy::H, JoinMode::Sugared) == HierarchyLevel{2, 1});

    // quantifier-free atom
    CHECK(classify(P("indep(X,Y)"), Hierarchy::Pi, JoinMode::Strict) == HierarchyLevel{0, 0});
}

TEST_CASE("classify is monotone in the expected ways") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        auto f = random_formula(rng, 4);
        if (contains_macro(f)) continue;
        auto base = classify_core(f, Hierarchy::H);
        auto ex = classify_core(Formula::exists({"X"}, f), Hierarchy::H);
        auto ng = classify_core(Formula::lnot(f), Hierarchy::H);
        if (free_vars(f).count("X")) CHECK(ex.sigma >= 1);
        CHECK(ng.sigma == base.pi);
        CHECK(ng.pi == base.sigma);
        CHECK(std::abs(base.sigma - base.pi) <= 1);
    }
}

TEST_CASE("vacuous binders are dropped") {
    auto f = P("exists U. indep(X,Y)");
    CHECK(classify_core(f, Hierarchy::Pi) == HierarchyLevel{0, 0});
}

TEST_CASE("macro expansion basics") {
    const auto& reg = MacroRegistry::instance();
    auto lei = reg.expand("lei", {Term::var("X"), Term::var("Y")});
    CHECK(lei->kind == Kind::Forall);
    CHECK(!contains_macro(lei));

    // card_le(X,1) is the degenerate-variable test indep(X,X)
    auto c1 = reg.expand("card_le", {Term::var("X"), 1LL});
    CHECK(c1->kind == Kind::Indep);
    CHECK(c1->t1 == Term::var("X"));

    auto pr = reg.expand("uprime", {Term::var("X")});
    CHECK(pr->kind == Kind::Not);
    CHECK(!contains_macro(pr));

    CHECK_THROWS(reg.expand("card_le", {Term::var("X"), 0LL}));
    CHECK_THROWS(reg.expand("nope", {}));
}
