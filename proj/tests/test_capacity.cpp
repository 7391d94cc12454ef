#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fotpi/capacity.hpp"
#include "fotpi/macro.hpp"
#include "fotpi/parse.hpp"

using namespace fotpi;

static std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

static NetworkSpec broadcast() {
    return network_from_json(slurp(std::string(FOTPI_DATA_DIR) + "/broadcast_k3.json"));
}

TEST_CASE("network validation") {
    auto spec = broadcast();
    CHECK(spec.k == 3);
    // break the channel: non-stochastic row
    auto bad = spec;
    bad.channel.begin()->second.begin()->second = Rat(1, 2);
    CHECK_THROWS(bad.validate());
    auto bad2 = spec;
    bad2.source_pmf.begin()->second = Rat(1, 3);
    CHECK_THROWS(bad2.validate());
    auto bad3 = spec;
    bad3.input_alphabets.pop_back();
    CHECK_THROWS(bad3.validate());
}

TEST_CASE("broadcast compilation lands within the seventeenth universal level") {
    auto c = compile_qk(broadcast());
    CHECK(c.level.pi <= 17);
    // the computed level is part of the regression record
    CHECK(c.level == HierarchyLevel{18, 17});
    CHECK(!c.closure_note.empty());
    std::vector<std::string> expect{"W1", "W2", "W3", "X1", "X2", "X3", "Y1", "Y2",
                                    "Y3", "Z1", "Z2", "Z3", "S", "L_S", "S_next",
                                    "L_S_next"};
    CHECK(c.free_variables == expect);
    auto fv = free_vars(c.formula);
    CHECK(fv == std::set<std::string>(expect.begin(), expect.end()));
}

TEST_CASE("point-to-point compiles and the level depends only on k") {
    auto p2p = network_from_json(slurp(std::string(FOTPI_DATA_DIR) + "/point_to_point.json"));
    auto c1 = compile_qk(p2p);
    CHECK(c1.level.pi <= 17);

    // change alphabets and distributions, keep k: identical formula
    auto other = p2p;
    other.source_pmf.clear();
    other.source_pmf[{0}] = Rat(1, 3);
    other.source_pmf[{1}] = Rat(2, 3);
    auto c2 = compile_qk(other);
    CHECK(print_formula(c1.formula) == print_formula(c2.formula));
    CHECK(level_report(c1) == level_report(c2));
}

TEST_CASE("compilation is deterministic byte for byte") {
    auto a = compile_qk(broadcast());
    auto b = compile_qk(broadcast());
    CHECK(print_formula(a.formula) == print_formula(b.formula));
}

TEST_CASE("the point-to-point reference formula sits in the first existential level") {
    auto f = point_to_point_reference();
    auto lvl = classify(f, Hierarchy::H, JoinMode::Sugared);
    CHECK(lvl == HierarchyLevel{1, 2});  // Sigma_1
}

TEST_CASE("ci keeps its strict pi level through the shared pipeline") {
    auto ci = Formula::call("ci", {Term::var("X"), Term::var("Y"), Term::var("Z")});
    CHECK(classify(ci, Hierarchy::Pi, JoinMode::Strict) == HierarchyLevel{3, 4});
    // and is an atom of the entropy hierarchy
    CHECK(classify(ci, Hierarchy::H, JoinMode::Sugared) == HierarchyLevel{0, 0});
}
