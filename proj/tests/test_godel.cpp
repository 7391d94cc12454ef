#include "doctest.h"
#include "corpus.hpp"
#include "fotpi/arith.hpp"
#include "fotpi/eval.hpp"
#include "fotpi/godel.hpp"
#include "fotpi/macro.hpp"

using namespace fotpi;
using namespace fotpi::testing;

TEST_CASE("beta and pairing basics") {
    CHECK(cantor_pair(0, 0) == 0);
    CHECK(cantor_pair(1, 2) == 8);  // (1+2)(1+2+1)/2 + 2
    CHECK(godel_beta(5, 1, 0) == 1);
    CHECK(godel_beta(5, 1, 1) == 2);
    for (Int r = 0; r < 200; ++r) {
        auto [b, c] = cantor_unpair(r);
        CHECK(cantor_pair(b, c) == r);
    }
}

TEST_CASE("encode respects the beta constraints and minimality") {
    std::vector<Int> seq{2, 0, 3};
    Int r = godel_encode(seq);
    auto [b, c] = cantor_unpair(r);
    CHECK(godel_beta(b, c, 0) == 3);
    CHECK(godel_beta(b, c, 1) == 2);
    CHECK(godel_beta(b, c, 2) == 0);
    CHECK(godel_beta(b, c, 3) == 3);
    CHECK(godel_decode(r) == seq);
    CHECK_THROWS(godel_encode({}));
}

TEST_CASE("dec agrees with the executable oracle on all short sequences") {
    // all sequences of length <= 4 with values <= 5
    std::vector<std::vector<Int>> seqs;
    std::function<void(std::vector<Int>&)> go = [&](std::vector<Int>& cur) {
        if (!cur.empty()) seqs.push_back(cur);
        if (cur.size() == 4) return;
        for (Int v = 0; v <= 5; ++v) {
            cur.push_back(v);
            go(cur);
            cur.pop_back();
        }
    };
    std::vector<Int> cur;
    go(cur);
    CHECK(seqs.size() == 6 + 36 + 216 + 1296);
    for (const auto& s : seqs) {
        Int r = godel_encode(s);
        Int n = static_cast<Int>(s.size());
        for (Int i = 0; i <= n + 1; ++i)
            for (Int a = 0; a <= 6; ++a) {
                bool expect = i >= 1 && i <= n && s[static_cast<size_t>(i) - 1] == a;
                CAPTURE(r);
                CAPTURE(i);
                CAPTURE(a);
                CHECK(dec_holds(r, i, a) == expect);
                if (expect) CHECK(decn_holds(r, i, a));
            }
    }
}

TEST_CASE("bounded arithmetic evaluation matches the predicates") {
    auto a = ATerm::mkvar("a");
    auto b = ATerm::mkvar("b");
    auto p = APred::land({APred::lt(a, b), APred::lt(b, a)});
    for (Int x = 0; x <= 4; ++x)
        for (Int y = 0; y <= 4; ++y)
            CHECK(!eval_arith(p, {{"a", x}, {"b", y}}, 6));

    auto decn = pred_decn("r", "i", "x");
    Int r = godel_encode({1, 2});
    // bound must cover the witnesses b,c of the code
    auto [bb, cc] = cantor_unpair(r);
    Int bound = std::max(bb, cc) + 1;
    CHECK(eval_arith(decn, {{"r", r}, {"i", 1}, {"x", 1}}, bound));
    CHECK(eval_arith(decn, {{"r", r}, {"i", 2}, {"x", 2}}, bound));
    CHECK(!eval_arith(decn, {{"r", r}, {"i", 3}, {"x", 1}}, bound));

    auto pw = pred_pow("x", "y", "z");
    CHECK(eval_arith(pw, {{"x", 2}, {"y", 0}, {"z", 1}}, 8));
    CHECK(eval_arith(pw, {{"x", 0}, {"y", 3}, {"z", 0}}, 8));
    CHECK(!eval_arith(pw, {{"x", 2}, {"y", 2}, {"z", 5}}, 30));
    // positive chains need the code of the power sequence in range; the
    // sequence [2] is coded by pair(5,1) = 22
    CHECK(eval_arith(pw, {{"x", 2}, {"y", 1}, {"z", 2}}, 24));
}

static Budget light() {
    Budget b;
    b.max_refine = 1;
    return b;
}

// a model carrying independent integer representations
static FiniteModel witness_model(const std::vector<std::pair<std::string, long long>>& reps) {
    FiniteSpace sp;
    sp.atoms = {Rat(1)};
    FiniteModel m(sp, {});
    for (const auto& [name, value] : reps) {
        if (value == 0)
            m = adjoin_independent(m, name, {Rat(2, 3), Rat(1, 3)});
        else
            m = adjoin_independent(
                m, name, std::vector<Rat>(static_cast<size_t>(value), Rat(1, value)));
    }
    return m;
}

TEST_CASE("compile_arith pipeline on representation witnesses") {
    auto a = ATerm::mkvar("a");
    auto b = ATerm::mkvar("b");

    // a = b over all representation pairs up to 4
    auto feq = compile_arith(APred::eq(a, b), {{"a", "A"}, {"b", "B"}});
    for (long long x = 0; x <= 4; ++x)
        for (long long y = 0; y <= 4; ++y) {
            auto m = witness_model({{"A", x}, {"B", y}});
            auto v = eval(feq, m, EvalMode::Bounded, light()).verdict;
            CAPTURE(x);
            CAPTURE(y);
            CHECK(v == ((x == y) ? Verdict::True_ : Verdict::False_));
        }

    // a < b and b < a is unsatisfiable on all representations
    auto fboth = compile_arith(APred::land({APred::lt(a, b), APred::lt(b, a)}),
                               {{"a", "A"}, {"b", "B"}});
    for (long long x = 0; x <= 4; ++x)
        for (long long y = 0; y <= 4; ++y) {
            auto m = witness_model({{"A", x}, {"B", y}});
            CHECK(eval(fboth, m, EvalMode::Bounded, light()).verdict == Verdict::False_);
        }

    // 0 = 0 holds on the one-point model through Bern(1/3) candidates
    auto f00 = compile_arith(APred::eq(ATerm::mkconst(0), ATerm::mkconst(0)), {});
    auto m0 = witness_model({});
    CHECK(eval(f00, m0, EvalMode::Bounded, light()).verdict == Verdict::True_);

    // a + b = c checked through the macro layer on witnesses
    auto fsum = compile_arith(APred::eq(ATerm::add(a, b), ATerm::mkvar("c")),
                              {{"a", "A"}, {"b", "B"}, {"c", "C"}});
    for (long long x = 0; x <= 3; ++x)
        for (long long y = 0; y <= 3; ++y)
            for (long long z = 0; z <= 4; ++z) {
                auto m = witness_model({{"A", x}, {"B", y}, {"C", z}});
                auto v = eval(fsum, m, EvalMode::Bounded, light()).verdict;
                CAPTURE(x);
                CAPTURE(y);
                CAPTURE(z);
                CHECK(v == ((x + y == z) ? Verdict::True_ : Verdict::False_));
            }
}

TEST_CASE("dec macro level matches the formula layer") {
    // the dec macro expands through compile_arith without errors and the
    // expansion is macro-free
    const auto& reg = MacroRegistry::instance();
    auto f = Formula::call("dec", {Term::var("R"), Term::var("I"), Term::var("A")});
    long long c = 0;
    auto once = reg.expand_once(*f, c);
    CHECK(free_vars(once) == std::set<std::string>{"R", "I", "A"});
}
