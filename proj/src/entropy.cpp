// Exact entropy-sign computation. The linear combination of entropies is a
// rational combination of logarithms of rational masses; its sign is the sign
// of log of a product of rational powers, which is decided by comparing two
// exact integer products.

#include <map>

#include "fotpi/model.hpp"

namespace fotpi {

namespace {

Int ipow(Int base, Int exp) {
    Int r = 1;
    while (exp > 0) {
        if (exp % 2 == 1) r *= base;
        base *= base;
        exp /= 2;
    }
    return r;
}

}  // namespace

EntropySign entropy_sign(const FiniteModel& m, const LinearEntropyExpr& e) {
    e.validate();
    // total = sum_S a_S * H(X_S) = sum over distinct masses q of coeff_q * ln q
    std::map<Rat, Rat> logcoeff;
    for (const auto& [vars, a] : e.coeffs) {
        std::vector<Term> parts;
        for (const auto& n : vars) parts.push_back(Term::var(n));
        Term t = parts.size() == 1 ? parts[0] : Term::join(parts);
        for (const auto& q : m.distribution(t)) {
            if (q == 1) continue;
            logcoeff[q] -= a * q;  // H contributes -p ln p
        }
    }
    for (auto it = logcoeff.begin(); it != logcoeff.end();)
        it = it->second == 0 ? logcoeff.erase(it) : std::next(it);
    if (logcoeff.empty()) return EntropySign::Zero;

    // clear denominators: D = lcm of coefficient denominators
    Int d = 1;
    for (const auto& [q, c] : logcoeff) {
        Int den = rat_den(c);
        d = d / boost::multiprecision::gcd(d, den) * den;
    }
    // gcd-reduce the integer exponents to keep the powers small
    Int g = 0;
    std::map<Rat, Int> expo;
    for (const auto& [q, c] : logcoeff) {
        Int n = rat_num(c) * (d / rat_den(c));
        expo[q] = n;
        g = boost::multiprecision::gcd(g, n < 0 ? Int(-n) : n);
    }
    if (g > 1)
        for (auto& [q, n] : expo) n /= g;

    // sign of sum n_q ln q = sign(prod q^{n_q} - 1): compare lhs/rhs products
    Int lhs = 1, rhs = 1;
    for (const auto& [q, n] : expo) {
        Int num = rat_num(q), den = rat_den(q);
        if (n > 0) {
            lhs *= ipow(num, n);
            rhs *= ipow(den, n);
        } else {
            lhs *= ipow(den, -n);
            rhs *= ipow(num, -n);
        }
    }
    if (lhs == rhs) return EntropySign::Zero;
    return lhs > rhs ? EntropySign::Positive : EntropySign::Negative;
}

}  // namespace fotpi
