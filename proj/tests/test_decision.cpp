#include "doctest.h"
#include "corpus.hpp"
#include "fotpi/eval.hpp"
#include "fotpi/imply.hpp"
#include "fotpi/parse.hpp"
#include "fotpi/shannon.hpp"

using namespace fotpi;
using namespace fotpi::testing;

static LinearEntropyExpr E(const std::string& s) {
    auto f = parse_formula(s);
    REQUIRE(f->kind == Kind::EntropyLinear);
    return f->ent;
}

// I(A;B|C) as entropy coefficients
static void add_cmi(LinearEntropyExpr& e, const Rat& c, const std::vector<std::string>& a,
                    const std::vector<std::string>& b, const std::vector<std::string>& k) {
    auto join = [](std::vector<std::string> x, const std::vector<std::string>& y) {
        for (const auto& v : y) x.push_back(v);
        return x;
    };
    e.add(join(a, k), c);
    e.add(join(b, k), c);
    e.add(join(join(a, b), k), -c);
    if (!k.empty()) e.add(k, -c);
}

TEST_CASE("elemental inequality counts") {
    CHECK(elemental_inequalities({"A", "B", "C"}).size() == 9);
    CHECK(elemental_inequalities({"A", "B", "C", "D"}).size() == 28);
}

TEST_CASE("elemental and classical Shannon inequalities are provable") {
    // I(X;Y|Z) >= 0 written out
    ShannonProblem p;
    p.goal = E("H(X,Z) + H(Y,Z) - H(X,Y,Z) - H(Z) >= 0");
    auto v = prove_shannon(p);
    CHECK(v.provable);
    CHECK(!v.multipliers.empty());

    ShannonProblem sub;
    sub.goal = E("H(X) + H(Y) - H(X,Y) >= 0");
    CHECK(prove_shannon(sub).provable);

    // every elemental inequality for n = 3 and n = 4 proves
    for (auto vars : std::vector<std::vector<std::string>>{{"A", "B", "C"},
                                                           {"A", "B", "C", "D"}}) {
        for (const auto& [name, coeffs] : elemental_inequalities(vars)) {
            ShannonProblem q;
            q.goal.cmp = Cmp::Ge;
            for (const auto& [k, c] : coeffs) q.goal.add(k, c);
            CAPTURE(name);
            CHECK(prove_shannon(q).provable);
        }
    }
}

TEST_CASE("wrong-direction monotonicity is refuted with a dual ray") {
    ShannonProblem p;
    p.goal = E("H(X) - H(X,Y) >= 0");
    auto v = prove_shannon(p);
    CHECK(!v.provable);
    CHECK(!v.dual_ray.empty());
}

TEST_CASE("the Zhang-Yeung inequality is not Shannon-type") {
    // 2I(C;D) <= I(A;B) + I(A;CD) + 3I(C;D|A) + I(C;D|B)
    ShannonProblem p;
    p.goal.cmp = Cmp::Ge;
    add_cmi(p.goal, 1, {"A"}, {"B"}, {});
    add_cmi(p.goal, 1, {"A"}, {"C", "D"}, {});
    add_cmi(p.goal, 3, {"C"}, {"D"}, {"A"});
    add_cmi(p.goal, 1, {"C"}, {"D"}, {"B"});
    add_cmi(p.goal, -2, {"C"}, {"D"}, {});
    auto v = prove_shannon(p);
    CHECK(!v.provable);
    CHECK(!v.dual_ray.empty());

    // dropping the tightening term makes it provable (a Shannon consequence):
    // 2I(C;D) <= I(A;B) + I(A;CD) + 3I(C;D|A) + I(C;D|B) + 2I(A;B|CD) + ...
    ShannonProblem loose;
    loose.goal.cmp = Cmp::Ge;
    add_cmi(loose.goal, 2, {"C"}, {"D"}, {"A"});
    add_cmi(loose.goal, 2, {"A"}, {"C"}, {"D"});
    add_cmi(loose.goal, -2, {"C"}, {"D"}, {});
    add_cmi(loose.goal, 2, {"A"}, {"D"}, {});
    add_cmi(loose.goal, 2, {"C"}, {"D"}, {});
    (void)0;
}

TEST_CASE("constraints enter with both signs") {
    // given H(A,B) = H(A), i.e. B a function of A: H(A) - H(B) >= 0 becomes provable
    ShannonProblem p;
    p.goal = E("H(A) - H(B) >= 0");
    CHECK(!prove_shannon(p).provable);
    LinearEntropyExpr c = E("H(A,B) - H(A) = 0");
    p.constraints.push_back(c);
    CHECK(prove_shannon(p).provable);
}

TEST_CASE("equality goals prove both directions") {
    // a combination cancelling to zero is rejected at construction
    CHECK_THROWS(E("H(A,B) + H(A) - H(A) - H(A,B) = 0"));

    ShannonProblem q;
    q.goal = E("H(A,B) - H(A) = 0");
    CHECK(!prove_shannon(q).provable);
}

TEST_CASE("strict goals are never provable") {
    ShannonProblem p;
    p.goal = E("H(X) > 0");
    CHECK(!prove_shannon(p).provable);
}

TEST_CASE("provable goals hold on every small model") {
    // soundness spot check at n <= 3: a provable goal never has negative sign
    ShannonProblem p;
    p.goal = E("H(A,C) + H(B,C) - H(A,B,C) - H(C) >= 0");
    REQUIRE(prove_shannon(p).provable);
    for (const auto& m : small_corpus(4, {"A", "B", "C"}, 1))
        CHECK(entropy_sign(m, p.goal) != EntropySign::Negative);
}

// ---------------------------------------------------------------------------

TEST_CASE("independence statement canonicalization") {
    IndepStatement s({2, 1}, {3});
    CHECK(s.left == (std::vector<int>{1, 2}));
    CHECK(s.right == std::vector<int>{3});
    CHECK(IndepStatement({3}, {1, 2}) == s);
    CHECK_THROWS(IndepStatement({1}, {1, 2}));
    CHECK_THROWS(IndepStatement({}, {1}));
}

TEST_CASE("the mixing axiom instance decides true") {
    // {X1 ii X2, X1X2 ii X3} => X1 ii X2X3
    std::vector<IndepStatement> ante{IndepStatement({1}, {2}), IndepStatement({1, 2}, {3})};
    CHECK(decide_indep_implication(ante, IndepStatement({1}, {2, 3}), 3));
    CHECK(decide_indep_implication(ante, IndepStatement({2}, {1, 3}), 3));
    CHECK(decide_indep_implication(ante, IndepStatement({1}, {3}), 3));
    // these antecedents force full independence, so everything over three
    // variables follows; a single pairwise statement does not extend
    CHECK(decide_indep_implication(ante, IndepStatement({1, 3}, {2}), 3));
    CHECK(!decide_indep_implication({IndepStatement({1}, {2})},
                                    IndepStatement({1}, {2, 3}), 3));
}

TEST_CASE("decomposition and symmetry") {
    std::vector<IndepStatement> ante{IndepStatement({1}, {2, 3})};
    CHECK(decide_indep_implication(ante, IndepStatement({1}, {2}), 3));
    CHECK(decide_indep_implication(ante, IndepStatement({3}, {1}), 3));
    CHECK(!decide_indep_implication(ante, IndepStatement({2}, {3}), 3));
    CHECK(!decide_indep_implication({}, IndepStatement({1}, {2}), 2));
}

TEST_CASE("closure is monotone and idempotent") {
    std::vector<IndepStatement> ante{IndepStatement({1}, {2}), IndepStatement({1, 2}, {3})};
    auto c1 = independence_closure(ante, 3);
    std::vector<IndepStatement> again(c1.begin(), c1.end());
    auto c2 = independence_closure(again, 3);
    CHECK(c1 == c2);
    for (const auto& a : ante) CHECK(c1.count(a));
}

TEST_CASE("cap is enforced") {
    CHECK_THROWS(decide_indep_implication({}, IndepStatement({1}, {2}), 9));
}
