// Marginal independence implication by fixpoint saturation over the finite
// statement lattice. The axioms: symmetry (kept by canonicalization),
// decomposition to nonempty subgroups, and the mixing rule
// X ii Y, XY ii Z  =>  X ii YZ.

#include "fotpi/imply.hpp"

#include <algorithm>
#include <map>

namespace fotpi {

namespace {

uint32_t to_mask(const std::vector<int>& xs, int n) {
    uint32_t m = 0;
    for (int x : xs) {
        if (x < 1 || x > n) throw error("variable index out of range: " + std::to_string(x));
        m |= 1u << (x - 1);
    }
    return m;
}

std::vector<int> from_mask(uint32_t m) {
    std::vector<int> out;
    for (int i = 0; m; ++i, m >>= 1)
        if (m & 1u) out.push_back(i + 1);
    return out;
}

using Stmt = std::pair<uint32_t, uint32_t>;  // canonical: first < second

Stmt canon(uint32_t a, uint32_t b) { return a < b ? Stmt{a, b} : Stmt{b, a}; }

}  // namespace

IndepStatement::IndepStatement(std::vector<int> l, std::vector<int> r)
    : left(std::move(l)), right(std::move(r)) {
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    left.erase(std::unique(left.begin(), left.end()), left.end());
    right.erase(std::unique(right.begin(), right.end()), right.end());
    if (left.empty() || right.empty())
        throw error("independence statement sides must be nonempty");
    for (int x : left)
        if (std::binary_search(right.begin(), right.end(), x))
            throw error("independence statement sides must be disjoint");
    if (right < left) std::swap(left, right);
}

std::string IndepStatement::str() const {
    auto side = [](const std::vector<int>& xs) {
        std::string s;
        for (int x : xs) s += "X" + std::to_string(x);
        return s;
    };
    return side(left) + " _||_ " + side(right);
}

std::set<IndepStatement> independence_closure(const std::vector<IndepStatement>& antecedents,
                                              int n) {
    std::set<Stmt> cur;
    for (const auto& a : antecedents) cur.insert(canon(to_mask(a.left, n), to_mask(a.right, n)));

    auto add_with_decomposition = [](std::set<Stmt>& out, uint32_t a, uint32_t b) {
        // all nonempty subgroups of both sides are independent too
        for (uint32_t sa = a; sa; sa = (sa - 1) & a)
            for (uint32_t sb = b; sb; sb = (sb - 1) & b) out.insert(canon(sa, sb));
    };

    bool changed = true;
    while (changed) {
        changed = false;
        std::set<Stmt> next = cur;
        for (const auto& s : cur) add_with_decomposition(next, s.first, s.second);
        // mixing: (A,B) and (A|B, C) give (A, B|C) in every orientation
        for (const auto& s : cur)
            for (const auto& t : cur) {
                auto mix = [&](uint32_t a, uint32_t b) {
                    uint32_t ab = a | b;
                    uint32_t c = 0;
                    if (t.first == ab) c = t.second;
                    else if (t.second == ab) c = t.first;
                    else return;
                    if (c & ab) return;  // sides must stay disjoint
                    next.insert(canon(a, b | c));
                    next.insert(canon(b, a | c));
                };
                mix(s.first, s.second);
            }
        if (next != cur) {
            cur = std::move(next);
            changed = true;
        }
    }
    std::set<IndepStatement> out;
    for (const auto& s : cur) out.insert(IndepStatement(from_mask(s.first), from_mask(s.second)));
    return out;
}

bool decide_indep_implication(const std::vector<IndepStatement>& antecedents,
                              const IndepStatement& consequent, int n, int cap) {
    if (n < 1 || n > cap)
        throw error("decide_indep_implication: variable count exceeds the cap of " +
                    std::to_string(cap));
    auto closure = independence_closure(antecedents, n);
    return closure.count(consequent) != 0;
}

}  // namespace fotpi
