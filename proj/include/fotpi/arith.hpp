#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fotpi/formula.hpp"

namespace fotpi {

/// First-order arithmetic over nonnegative integers, with terms built from
/// variables, constants, +, *, mod, and predicates <, <=, =, divides closed
/// under the connectives and quantifiers. Compiles into the random-variable
/// representation (uniform variables for positives, Bern(1/3) for zero).
struct ATerm;
using ATermPtr = std::shared_ptr<const ATerm>;

struct ATerm {
    enum class K { Var, Const, Add, Mul, Mod };
    K k;
    std::string var;
    long long value = 0;
    ATermPtr a, b;

    static ATermPtr mkvar(std::string name);
    static ATermPtr mkconst(long long v);
    static ATermPtr add(ATermPtr x, ATermPtr y);
    static ATermPtr mul(ATermPtr x, ATermPtr y);
    static ATermPtr mod(ATermPtr x, ATermPtr y);
};

struct APred;
using APredPtr = std::shared_ptr<const APred>;

struct APred {
    enum class K { Eq, Lt, Le, Divides, And, Or, Not, Iff, Exists, Forall };
    K k;
    ATermPtr t1, t2;
    std::vector<APredPtr> kids;
    std::string var;

    static APredPtr eq(ATermPtr a, ATermPtr b);
    static APredPtr lt(ATermPtr a, ATermPtr b);
    static APredPtr le(ATermPtr a, ATermPtr b);
    static APredPtr divides(ATermPtr a, ATermPtr b);
    static APredPtr land(std::vector<APredPtr> ps);
    static APredPtr lor(std::vector<APredPtr> ps);
    static APredPtr lnot(APredPtr p);
    static APredPtr iff(APredPtr a, APredPtr b);
    static APredPtr exists(std::string v, APredPtr p);
    static APredPtr forall(std::string v, APredPtr p);

    std::string str() const;
};

std::vector<std::string> apred_free_vars(const APredPtr& p);

/// Compiles into a FOTPI formula over the variables named by \p var_map.
/// Every free arithmetic variable must be mapped; the mapped variables are
/// expected to satisfy isnat. Throws on unmapped free variables.
FormulaPtr compile_arith(const APredPtr& p,
                         const std::map<std::string, std::string>& var_map);

/// Direct evaluation over the integers with quantifiers restricted to
/// [0, bound]; the test-side oracle for small predicates.
bool eval_arith(const APredPtr& p, std::map<std::string, Int> env, const Int& bound);

/// The decoding predicates of the Godel sequence layer, as arithmetic ASTs
/// over the given free-variable names.
APredPtr pred_decn(const std::string& r, const std::string& i, const std::string& a);
APredPtr pred_dec(const std::string& r, const std::string& i, const std::string& a);
/// x^y = z (exponentiation through beta-coded chains).
APredPtr pred_pow(const std::string& x, const std::string& y, const std::string& z);

}  // namespace fotpi
