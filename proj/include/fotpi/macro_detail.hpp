#pragma once

#include <atomic>
#include <string>
#include <variant>

#include "fotpi/formula.hpp"

namespace fotpi {
namespace macro_detail {

std::string fresh(long long& c);
std::atomic<long long>& global_counter();

inline const Term& T(const MacroArg& a) { return std::get<Term>(a); }
inline long long N(const MacroArg& a) { return std::get<long long>(a); }
inline const FormulaPtr& F(const MacroArg& a) { return std::get<FormulaPtr>(a); }

inline Term V(const std::string& name) { return Term::var(name); }

template <typename... As>
FormulaPtr mc(const std::string& name, As&&... as) {
    return Formula::call(name, std::vector<MacroArg>{MacroArg(std::forward<As>(as))...});
}

inline FormulaPtr mcv(const std::string& name, std::vector<MacroArg> args) {
    return Formula::call(name, std::move(args));
}

// Opcodes of the nat_chain witness constructor: each quantified variable in
// an arithmetic block is pinned by one operation over earlier values, so the
// constructor can build the unique representation directly.
enum NatOp : long long {
    NatConst = 0,     // aux = the constant
    NatAdd = 1,       // two operand terms
    NatMul = 2,
    NatMod = 3,
    NatSub = 4,       // none when the difference is negative
    NatPow = 5,
    NatCardOf = 6,    // support size of an arbitrary variable (one operand)
    NatDecEntry = 7,  // entry i of the sequence coded by r (two operands)
    NatFloorDiv = 8,
};

/// Builds the hint for a block of value-determined arithmetic binders.
/// nats holds (op, aux) pairs per binder; args the operand terms in order.
inline Hint nat_chain(std::vector<long long> ops_aux, std::vector<Term> operands) {
    return Hint{"nat_chain", std::move(operands), std::move(ops_aux)};
}

}  // namespace macro_detail
}  // namespace fotpi
