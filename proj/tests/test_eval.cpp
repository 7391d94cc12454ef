#include "doctest.h"
#include "corpus.hpp"
#include "fotpi/eval.hpp"
#include "fotpi/macro.hpp"
#include "fotpi/parse.hpp"

using namespace fotpi;
using namespace fotpi::testing;

static const MacroRegistry& REG = MacroRegistry::instance();

static FormulaPtr expand(const std::string& s) {
    return REG.expand_full(parse_formula(s, &REG));
}

// one expansion step: surfaces the macro's own quantifier and hint while the
// subformulas still evaluate through their oracles
static FormulaPtr step(const std::string& s) {
    auto f = parse_formula(s, &REG);
    long long c = 500000000;
    return REG.expand_once(*f, c);
}

static Budget light() {
    Budget b;
    b.max_refine = 1;
    b.max_support = 4;
    b.max_denominator = 4;
    return b;
}

TEST_CASE("atoms evaluate exactly") {
    auto m = xor_triple();
    Budget b;
    CHECK(eval(parse_formula("indep(X,Y)"), m, EvalMode::Sound, b).verdict == Verdict::True_);
    CHECK(eval(parse_formula("indep(X,join(Y,Z))"), m, EvalMode::Sound, b).verdict ==
          Verdict::False_);
    CHECK(eval(parse_formula("H(X,Y) - H(X) - H(Y) = 0"), m, EvalMode::Sound, b).verdict ==
          Verdict::True_);
    auto contradiction = parse_formula("(indep(X,Y) and not indep(X,Y))");
    CHECK(eval(contradiction, m, EvalMode::Sound, b).verdict == Verdict::False_);
    CHECK(eval(contradiction, m, EvalMode::Bounded, b).verdict == Verdict::False_);
    CHECK_THROWS(eval(parse_formula("indep(Q,Y)"), m, EvalMode::Sound, b));
}

TEST_CASE("lei evaluation against the functional-dependence oracle") {
    // X = a bit of Y: lei holds; bounded True, sound Unknown
    FiniteModel m(equiprobable(4), {{"Y", {0, 1, 2, 3}}, {"X", {0, 1, 0, 1}}});
    auto lei = expand("lei(X,Y)");
    CHECK(eval(lei, m, EvalMode::Bounded, light()).verdict == Verdict::True_);
    CHECK(eval(lei, m, EvalMode::Sound, light()).verdict == Verdict::Unknown);

    // independent bits: refuted in both modes, counterexample found
    FiniteModel ind(equiprobable(4), {{"X", {0, 0, 1, 1}}, {"Y", {0, 1, 0, 1}}});
    auto rs = eval(lei, ind, EvalMode::Sound, light());
    CHECK(rs.verdict == Verdict::False_);
    REQUIRE(rs.evidence.has_value());
    auto rb = eval(lei, ind, EvalMode::Bounded, light());
    CHECK(rb.verdict == Verdict::False_);
}

TEST_CASE("lei agrees with is_function_of across the corpus") {
    auto lei = expand("lei(A,B)");
    for (const auto& m : small_corpus(4, {"A", "B"}, 2)) {
        bool oracle = is_function_of(m, Term::var("A"), Term::var("B"));
        auto v = eval(lei, m, EvalMode::Bounded, light()).verdict;
        CAPTURE(m.str());
        CHECK(v == (oracle ? Verdict::True_ : Verdict::False_));
    }
}

TEST_CASE("unif through the triple witness") {
    for (size_t n : {2u, 3u, 4u}) {
        auto m = unif_model("X", n);
        auto r = eval(step("unif(X)"), m, EvalMode::Bounded, Budget{});
        CAPTURE(n);
        CHECK(r.verdict == Verdict::True_);
        REQUIRE(r.evidence.has_value());
        CHECK(r.evidence->source == "hint:triple_witness");
    }
    // Bern(1/3) is not uniform: bounded evaluation refutes at the default budget
    auto b13 = bern("X", Rat(1, 3));
    auto r = eval(step("unif(X)"), b13, EvalMode::Bounded, Budget{});
    CHECK(r.verdict == Verdict::False_);
    // constants are uniform on a one-point support
    auto c = unif_model("X", 1);
    CHECK(eval(step("unif(X)"), c, EvalMode::Bounded, Budget{}).verdict == Verdict::True_);
}

TEST_CASE("macro calls evaluate through their semantic oracles") {
    auto m = xor_triple();
    Budget b;
    CHECK(eval(parse_formula("lei(X, join(Y,Z))", &REG), m, EvalMode::Sound, b).verdict ==
          Verdict::True_);
    CHECK(eval(parse_formula("ci(X, Y, Z)", &REG), m, EvalMode::Sound, b).verdict ==
          Verdict::False_);
    CHECK(eval(parse_formula("unif(X)", &REG), m, EvalMode::Sound, b).verdict ==
          Verdict::True_);
    CHECK(eval(parse_formula("card_eq(join(X,Y), 4)", &REG), m, EvalMode::Sound, b).verdict ==
          Verdict::True_);
}

TEST_CASE("card_le bounded evaluation equals support counting") {
    auto corpus = small_corpus(4, {"A"}, 3);
    for (long long n = 1; n <= 3; ++n) {
        auto f = expand("card_le(A, " + std::to_string(n) + ")");
        for (const auto& m : corpus) {
            bool oracle = m.support_size(Term::var("A")) <= static_cast<size_t>(n);
            auto v = eval(f, m, EvalMode::Bounded, light()).verdict;
            CAPTURE(m.str());
            CAPTURE(n);
            CHECK(v == (oracle ? Verdict::True_ : Verdict::False_));
        }
    }
}

TEST_CASE("ueq via witnesses") {
    // equal uniform supports
    FiniteModel m(equiprobable(4), {{"X", {0, 0, 1, 1}}, {"Y", {0, 1, 0, 1}}});
    auto r = eval(step("ueq(X,Y)"), m, EvalMode::Bounded, light());
    CHECK(r.verdict == Verdict::True_);
    REQUIRE(r.evidence.has_value());
    CHECK(r.evidence->source == "hint:ueq_witness");
    // different supports: 2 vs 4, requires the exhaustive scan
    FiniteModel d(equiprobable(4), {{"X", {0, 0, 1, 1}}, {"Y", {0, 1, 2, 3}}});
    CHECK(eval(step("ueq(X,Y)"), d, EvalMode::Bounded, light()).verdict == Verdict::False_);
}

TEST_CASE("is0 recognizes the zero representation") {
    CHECK(eval(step("is0(X)"), bern("X", Rat(1, 3)), EvalMode::Bounded, light()).verdict ==
          Verdict::True_);
    CHECK(eval(step("is0(X)"), bern("X", Rat(1, 2)), EvalMode::Bounded, light()).verdict ==
          Verdict::False_);
    CHECK(eval(step("is0(X)"), unif_model("X", 3), EvalMode::Bounded, light()).verdict ==
          Verdict::False_);
}

TEST_CASE("normalization preserves bounded verdicts") {
    Budget tiny;
    tiny.max_refine = 1;
    tiny.max_support = 2;
    tiny.max_denominator = 2;
    std::vector<std::string> formulas = {
        "exists U. (indep(U,A) and indep(U,B))",
        "forall U. (indep(U,A) -> indep(U,B))",
        "not (exists U. (indep(U,A) and not indep(U,B)))",
        "(exists U. indep(U,A)) and (forall V. (indep(V,B) or indep(V,A)))",
    };
    for (const auto& s : formulas) {
        auto f = parse_formula(s);
        auto n = to_nnf(f);
        auto p = to_prenex(n);
        for (const auto& m : small_corpus(3, {"A", "B"}, 1)) {
            auto v0 = eval(f, m, EvalMode::Bounded, tiny).verdict;
            auto v1 = eval(n, m, EvalMode::Bounded, tiny).verdict;
            auto v2 = eval(p, m, EvalMode::Bounded, tiny).verdict;
            CAPTURE(s);
            CAPTURE(m.str());
            CHECK(v0 == v1);
            CHECK(v0 == v2);
        }
    }
}

TEST_CASE("determinism of evaluation") {
    FiniteModel ind(equiprobable(4), {{"X", {0, 0, 1, 1}}, {"Y", {0, 1, 0, 1}}});
    auto f = expand("lei(X,Y)");
    auto a = eval(f, ind, EvalMode::Bounded, light());
    auto b = eval(f, ind, EvalMode::Bounded, light());
    REQUIRE(a.evidence.has_value());
    REQUIRE(b.evidence.has_value());
    CHECK(a.verdict == b.verdict);
    CHECK(a.evidence->model.str() == b.evidence->model.str());
}

TEST_CASE("budget exhaustion reporting") {
    Budget b = light();
    b.max_candidates = 3;
    FiniteModel ind(equiprobable(4), {{"X", {0, 0, 1, 1}}, {"Y", {0, 1, 2, 3}}});
    auto f = step("ueq(X,Y)");  // false, needs a full scan
    auto s = eval(f, ind, EvalMode::Sound, b);
    CHECK(s.verdict == Verdict::Unknown);
    CHECK(s.budget_exhausted);
    CHECK_THROWS(eval(f, ind, EvalMode::Bounded, b));
}

TEST_CASE("counterexample search") {
    SearchParams sp;
    sp.max_atoms = 4;
    sp.denominator = 2;
    sp.max_values = 2;
    Budget b = light();

    // {X indep Y} does not imply X indep YZ: counterexample with Z = X
    auto ante = parse_formula("indep(X,Y)");
    auto cons = parse_formula("indep(X,join(Y,Z))");
    auto cx = find_counterexample({ante}, cons, sp, b);
    REQUIRE(cx.has_value());
    CHECK(check_indep(*cx, Term::var("X"), Term::var("Y")));
    CHECK(!check_indep(*cx, Term::var("X"), Term::join({Term::var("Y"), Term::var("Z")})));

    // X indep X fails on nondegenerate X
    auto cx2 = find_counterexample({}, parse_formula("indep(X,X)"), sp, b);
    REQUIRE(cx2.has_value());

    // the mixing axiom has no counterexample
    auto a1 = parse_formula("indep(X,Y)");
    auto a2 = parse_formula("indep(join(X,Y),Z)");
    auto c3 = parse_formula("indep(X,join(Y,Z))");
    CHECK(!find_counterexample({a1, a2}, c3, sp, b).has_value());

    // deterministic vs seeded order both find some counterexample
    SearchParams seeded = sp;
    seeded.seed = 42;
    CHECK(find_counterexample({ante}, cons, seeded, b).has_value());
    SearchParams par = sp;
    par.jobs = 4;
    auto cxp = find_counterexample({ante}, cons, par, b);
    REQUIRE(cxp.has_value());
    CHECK(cxp->str() == cx->str());
}
