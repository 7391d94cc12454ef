// Proof-guided witness constructors. Each one rebuilds the model extension
// used in the corresponding proof; the evaluator verifies every candidate
// exactly, so constructors may propose freely and return nothing when the
// required shape is absent.

#include <algorithm>
#include <mutex>
#include <set>

#include "fotpi/eval.hpp"
#include "fotpi/godel.hpp"
#include "fotpi/macro_detail.hpp"
#include "fotpi/semantics.hpp"

namespace fotpi {

namespace {

struct TermClasses {
    std::vector<uint32_t> cls;          // class id per atom
    std::map<uint32_t, Rat> mass;       // positive classes
    std::map<uint32_t, size_t> rank;    // class id -> dense rank
    size_t n = 0;
    bool uniform = false;
};

TermClasses term_classes(const FiniteModel& m, const Term& t) {
    TermClasses tc;
    tc.cls = m.resolve(t);
    for (size_t i = 0; i < tc.cls.size(); ++i) {
        if (m.space().atoms[i] == 0) continue;
        tc.mass[tc.cls[i]] += m.space().atoms[i];
    }
    for (auto it = tc.mass.begin(); it != tc.mass.end();)
        it = it->second == 0 ? tc.mass.erase(it) : std::next(it);
    tc.n = tc.mass.size();
    for (const auto& [id, p] : tc.mass) tc.rank[id] = tc.rank.size();
    tc.uniform = true;
    for (const auto& [id, p] : tc.mass)
        if (p != Rat(1, static_cast<int>(tc.n))) tc.uniform = false;
    return tc;
}

std::vector<Rat> unif_pmf(size_t n) {
    return std::vector<Rat>(n, Rat(1, static_cast<int>(n)));
}

long long& aux_counter() {
    static long long c = 0;
    return c;
}

std::string aux_name() { return "_aux" + std::to_string(++aux_counter()); }

// y = (rank(t) + shift_var) mod n as a label vector of the extended model
std::vector<uint32_t> mod_sum_labels(const FiniteModel& m, const TermClasses& tc,
                                     const std::vector<uint32_t>& other, size_t n) {
    std::vector<uint32_t> out(m.atom_count(), 0);
    for (size_t i = 0; i < m.atom_count(); ++i) {
        auto it = tc.rank.find(tc.cls[i]);
        size_t r = it == tc.rank.end() ? 0 : it->second;
        out[i] = static_cast<uint32_t>((r + other[i]) % n);
    }
    return out;
}

// --- constructors -----------------------------------------------------------

std::vector<FiniteModel> w_triple(const FiniteModel& m, const Hint& h,
                                  const std::vector<std::string>& vars) {
    if (h.args.size() != 1 || vars.size() != 2) return {};
    auto x = term_classes(m, h.args[0]);
    if (!x.uniform) return {};
    size_t n = x.n;
    auto ext = adjoin_independent(m, vars[0], unif_pmf(n));
    auto x2 = term_classes(ext, h.args[0]);
    auto z = mod_sum_labels(ext, x2, ext.labels(vars[0]), n);
    return {ext.with_var(vars[1], z)};
}

std::vector<FiniteModel> w_ueq(const FiniteModel& m, const Hint& h,
                               const std::vector<std::string>& vars) {
    if (h.args.size() != 2 || vars.size() != 3) return {};
    auto x = term_classes(m, h.args[0]);
    auto y = term_classes(m, h.args[1]);
    if (!x.uniform || !y.uniform || x.n != y.n) return {};
    size_t n = x.n;
    auto ext = adjoin_independent(m, vars[0], unif_pmf(n));
    auto x2 = term_classes(ext, h.args[0]);
    auto y2 = term_classes(ext, h.args[1]);
    auto u2 = mod_sum_labels(ext, x2, ext.labels(vars[0]), n);
    auto u3 = mod_sum_labels(ext, y2, ext.labels(vars[0]), n);
    return {ext.with_var(vars[1], u2).with_var(vars[2], u3)};
}

std::vector<FiniteModel> w_lei_refuter(const FiniteModel& m, const Hint& h,
                                       const std::vector<std::string>& vars) {
    if (h.args.size() != 2 || vars.size() != 1) return {};
    const Term& xt = h.args[0];
    const Term& yt = h.args[1];
    auto x = term_classes(m, xt);
    auto y = term_classes(m, yt);
    // find y0 whose fiber holds two or more x classes
    std::map<uint32_t, std::map<uint32_t, Rat>> fiber;  // y -> x -> mass
    for (size_t i = 0; i < m.atom_count(); ++i) {
        if (m.space().atoms[i] == 0) continue;
        fiber[y.cls[i]][x.cls[i]] += m.space().atoms[i];
    }
    for (const auto& [y0, xs] : fiber) {
        if (xs.size() < 2) continue;
        uint32_t x0 = xs.begin()->first;
        Rat p = xs.begin()->second / y.mass.at(y0);
        std::vector<std::vector<Rat>> kernel;
        for (size_t i = 0; i < m.atom_count(); ++i) {
            Rat p1;
            if (y.cls[i] == y0)
                p1 = x.cls[i] == x0 ? 1 : 0;
            else
                p1 = p;
            kernel.push_back({1 - p1, p1});
        }
        return {adjoin(m, vars[0], kernel)};
    }
    return {};
}

std::vector<FiniteModel> w_card_refuter(const FiniteModel& m, const Hint& h,
                                        const std::vector<std::string>& vars) {
    if (h.args.size() != 1 || h.nats.size() != 1 || vars.size() != 1) return {};
    auto x = term_classes(m, h.args[0]);
    if (x.n <= static_cast<size_t>(h.nats[0])) return {};
    // merge the two largest ranks
    std::vector<uint32_t> labels(m.atom_count(), 0);
    for (size_t i = 0; i < m.atom_count(); ++i) {
        auto it = x.rank.find(x.cls[i]);
        size_t r = it == x.rank.end() ? 0 : it->second;
        if (r == x.n - 1) r = x.n - 2;
        labels[i] = static_cast<uint32_t>(r);
    }
    return {m.with_var(vars[0], labels)};
}

std::vector<FiniteModel> w_is0(const FiniteModel& m, const Hint& h,
                               const std::vector<std::string>& vars) {
    if (h.args.size() != 1 || vars.size() != 1) return {};
    auto x = term_classes(m, h.args[0]);
    if (x.n != 2) return {};
    // minor mass must be exactly 1/3
    uint32_t minor = 0;
    bool found = false;
    for (const auto& [id, p] : x.mass)
        if (p == Rat(1, 3)) {
            minor = id;
            found = true;
        }
    if (!found) return {};
    std::vector<std::vector<Rat>> kernel;
    for (size_t i = 0; i < m.atom_count(); ++i) {
        if (x.cls[i] == minor)
            kernel.push_back({1, 0, 0});
        else
            kernel.push_back({0, Rat(1, 2), Rat(1, 2)});
    }
    return {adjoin(m, vars[0], kernel)};
}

std::vector<FiniteModel> w_uprod(const FiniteModel& m, const Hint& h,
                                 const std::vector<std::string>& vars) {
    if (h.args.size() != 3 || vars.size() != 2) return {};
    auto x = term_classes(m, h.args[0]);
    auto y = term_classes(m, h.args[1]);
    auto z = term_classes(m, h.args[2]);
    if (!x.uniform || !y.uniform || !z.uniform || x.n * y.n != z.n) return {};
    std::vector<uint32_t> xt(m.atom_count(), 0), yt(m.atom_count(), 0);
    for (size_t i = 0; i < m.atom_count(); ++i) {
        auto it = z.rank.find(z.cls[i]);
        size_t r = it == z.rank.end() ? 0 : it->second;
        xt[i] = static_cast<uint32_t>(r / y.n);
        yt[i] = static_cast<uint32_t>(r % y.n);
    }
    return {m.with_var(vars[0], xt).with_var(vars[1], yt)};
}

std::vector<FiniteModel> w_ule(const FiniteModel& m, const Hint& h,
                               const std::vector<std::string>& vars) {
    if (h.args.size() != 2 || vars.size() != 2) return {};
    auto x = term_classes(m, h.args[0]);
    auto y = term_classes(m, h.args[1]);
    if (!x.uniform || !y.uniform || x.n > y.n) return {};
    std::string aux = aux_name();
    auto ext = adjoin_independent(m, aux, unif_pmf(x.n));
    auto y2 = term_classes(ext, h.args[1]);
    const auto& av = ext.labels(aux);
    std::vector<uint32_t> g(ext.atom_count(), 0), yt(ext.atom_count(), 0);
    for (size_t i = 0; i < ext.atom_count(); ++i) {
        size_t ry = y2.rank.at(y2.cls[i]);
        g[i] = static_cast<uint32_t>(ry * x.n + av[i]);
        yt[i] = static_cast<uint32_t>((av[i] + ry) % y.n);
    }
    return {ext.with_var(vars[0], g).with_var(vars[1], yt)};
}

std::vector<FiniteModel> w_udiv(const FiniteModel& m, const Hint& h,
                                const std::vector<std::string>& vars) {
    if (h.args.size() != 2 || vars.size() != 1) return {};
    auto x = term_classes(m, h.args[0]);
    auto y = term_classes(m, h.args[1]);
    if (!x.uniform || !y.uniform || x.n == 0 || y.n % x.n != 0) return {};
    std::vector<uint32_t> u(m.atom_count(), 0);
    for (size_t i = 0; i < m.atom_count(); ++i) {
        auto it = y.rank.find(y.cls[i]);
        size_t r = it == y.rank.end() ? 0 : it->second;
        u[i] = static_cast<uint32_t>(r / x.n);
    }
    return {m.with_var(vars[0], u)};
}

std::vector<FiniteModel> w_uprime_factor(const FiniteModel& m, const Hint& h,
                                         const std::vector<std::string>& vars) {
    if (h.args.size() != 1 || vars.size() != 2) return {};
    auto x = term_classes(m, h.args[0]);
    if (!x.uniform || x.n < 4) return {};
    size_t a = 0;
    for (size_t d = 2; d * d <= x.n; ++d)
        if (x.n % d == 0) {
            a = d;
            break;
        }
    if (a == 0) return {};
    size_t b = x.n / a;
    std::vector<uint32_t> u(m.atom_count(), 0), v(m.atom_count(), 0);
    for (size_t i = 0; i < m.atom_count(); ++i) {
        auto it = x.rank.find(x.cls[i]);
        size_t r = it == x.rank.end() ? 0 : it->second;
        u[i] = static_cast<uint32_t>(r / b);
        v[i] = static_cast<uint32_t>(r % b);
    }
    return {m.with_var(vars[0], u).with_var(vars[1], v)};
}

std::vector<FiniteModel> w_usum(const FiniteModel& m, const Hint& h,
                                const std::vector<std::string>& vars) {
    if (h.args.size() != 3 || vars.size() != 1) return {};
    auto x = term_classes(m, h.args[0]);
    auto y = term_classes(m, h.args[1]);
    auto z = term_classes(m, h.args[2]);
    if (!x.uniform || !y.uniform || !z.uniform || x.n + y.n != z.n) return {};
    std::vector<uint32_t> u(m.atom_count(), 0);
    for (size_t i = 0; i < m.atom_count(); ++i) {
        auto it = z.rank.find(z.cls[i]);
        size_t r = it == z.rank.end() ? 0 : it->second;
        u[i] = r < x.n ? 1 : 0;
    }
    return {m.with_var(vars[0], u)};
}

std::vector<FiniteModel> w_frac(const FiniteModel& m, const Hint& h,
                                const std::vector<std::string>& vars) {
    if (h.args.size() != 4 || vars.size() != 2) return {};
    auto x = term_classes(m, h.args[0]);
    auto y = term_classes(m, h.args[1]);
    auto z = term_classes(m, h.args[2]);
    auto u = term_classes(m, h.args[3]);
    if (!x.uniform || !y.uniform || !z.uniform || x.n + y.n != z.n || u.n != 2) return {};
    if (!is_function_of(m, h.args[3], h.args[2])) return {};
    std::vector<FiniteModel> out;
    for (const auto& [u1, pu1] : u.mass) {
        // the u1 side of Z must have exactly |X| classes
        std::set<uint32_t> side;
        for (size_t i = 0; i < m.atom_count(); ++i)
            if (m.space().atoms[i] != 0 && u.cls[i] == u1) side.insert(z.cls[i]);
        if (side.size() != x.n) continue;
        std::map<uint32_t, size_t> side_rank, other_rank;
        for (auto id : side) side_rank[id] = side_rank.size();
        for (const auto& [id, p] : z.mass)
            if (!side.count(id)) other_rank[id] = other_rank.size();
        if (other_rank.size() != y.n) continue;
        std::vector<std::vector<Rat>> kx, ky;
        for (size_t i = 0; i < m.atom_count(); ++i) {
            std::vector<Rat> rowx(x.n, 0), rowy(y.n, 0);
            if (u.cls[i] == u1) {
                rowx[side_rank.count(z.cls[i]) ? side_rank[z.cls[i]] : 0] = 1;
                for (auto& q : rowy) q = Rat(1, static_cast<int>(y.n));
            } else {
                for (auto& q : rowx) q = Rat(1, static_cast<int>(x.n));
                rowy[other_rank.count(z.cls[i]) ? other_rank[z.cls[i]] : 0] = 1;
            }
            kx.push_back(std::move(rowx));
            ky.push_back(std::move(rowy));
        }
        auto e1 = adjoin(m, vars[0], kx);
        std::vector<std::vector<Rat>> ky2;
        // lift the y-kernel onto the extended space by reusing per-source-atom rows
        size_t src = 0;
        std::vector<size_t> src_of;
        for (size_t i = 0; i < m.atom_count(); ++i) {
            size_t nonzero = 0;
            for (const auto& q : kx[i])
                if (q != 0) ++nonzero;
            for (size_t j = 0; j < nonzero; ++j) src_of.push_back(i);
        }
        (void)src;
        for (size_t i = 0; i < e1.atom_count(); ++i) ky2.push_back(ky[src_of[i]]);
        out.push_back(adjoin(e1, vars[1], ky2));
    }
    return out;
}

std::vector<FiniteModel> w_qeq(const FiniteModel& m, const Hint& h,
                               const std::vector<std::string>& vars) {
    if (h.args.size() != 3 || vars.size() != 1) return {};
    auto x = term_classes(m, h.args[0]);
    auto y = term_classes(m, h.args[1]);
    auto b = term_classes(m, h.args[2]);
    if (!x.uniform || !y.uniform || b.n > 2) return {};
    size_t nz = x.n + y.n;
    Rat px(static_cast<int>(x.n), static_cast<int>(nz));
    std::vector<FiniteModel> out;
    for (const auto& [b1, pb1] : b.mass) {
        if (pb1 != px) continue;
        std::vector<std::vector<Rat>> kernel;
        for (size_t i = 0; i < m.atom_count(); ++i) {
            std::vector<Rat> row(nz, 0);
            if (b.cls[i] == b1)
                for (size_t j = 0; j < x.n; ++j) row[j] = Rat(1, static_cast<int>(x.n));
            else
                for (size_t j = x.n; j < nz; ++j) row[j] = Rat(1, static_cast<int>(y.n));
            kernel.push_back(std::move(row));
        }
        out.push_back(adjoin(m, vars[0], kernel));
    }
    return out;
}

std::vector<FiniteModel> w_ci(const FiniteModel& m, const Hint& h,
                              const std::vector<std::string>& vars) {
    if (h.args.size() != 3 || vars.size() != 1) return {};
    const Term& xt = h.args[0];
    const Term& yt = h.args[1];
    const Term& zt = h.args[2];
    if (!check_ci(m, xt, yt, zt)) return {};
    auto y = term_classes(m, yt);
    auto z = term_classes(m, zt);
    // conditional quantile construction: cuts of all conditional cdfs
    std::map<std::pair<uint32_t, uint32_t>, Rat> pyz;
    for (size_t i = 0; i < m.atom_count(); ++i) {
        if (m.space().atoms[i] == 0) continue;
        pyz[{y.cls[i], z.cls[i]}] += m.space().atoms[i];
    }
    std::set<Rat> cutset{Rat(0), Rat(1)};
    std::map<std::pair<uint32_t, uint32_t>, std::pair<Rat, Rat>> range;  // (y,z) -> [lo,hi)
    for (const auto& [zid, pz] : z.mass) {
        Rat acc = 0;
        for (const auto& [yid, py] : y.mass) {
            auto it = pyz.find({yid, zid});
            if (it == pyz.end()) continue;
            Rat q = it->second / pz;
            range[{yid, zid}] = {acc, acc + q};
            acc += q;
            cutset.insert(acc);
        }
    }
    std::vector<Rat> cuts(cutset.begin(), cutset.end());
    size_t nu = cuts.size() - 1;
    std::vector<std::vector<Rat>> kernel;
    for (size_t i = 0; i < m.atom_count(); ++i) {
        std::vector<Rat> row(nu, 0);
        auto it = range.find({y.cls[i], z.cls[i]});
        if (it == range.end()) {
            row[0] = 1;
        } else {
            auto [lo, hi] = it->second;
            for (size_t j = 0; j < nu; ++j) {
                Rat a = std::max(cuts[j], lo), b2 = std::min(cuts[j + 1], hi);
                if (b2 > a) row[j] = (b2 - a) / (hi - lo);
            }
        }
        kernel.push_back(std::move(row));
    }
    return {adjoin(m, vars[0], kernel)};
}

std::vector<FiniteModel> w_smi_refuter(const FiniteModel& m, const Hint& h,
                                       const std::vector<std::string>& vars) {
    if (h.args.size() != 2 || vars.size() != 1) return {};
    auto x = term_classes(m, h.args[0]);
    auto y = term_classes(m, h.args[1]);
    if (y.n != 2) return {};
    if (!is_function_of(m, h.args[1], h.args[0])) return {};
    // need two x classes on each side of y
    std::map<uint32_t, std::vector<uint32_t>> sides;
    for (size_t i = 0; i < m.atom_count(); ++i) {
        if (m.space().atoms[i] == 0) continue;
        auto& v = sides[y.cls[i]];
        if (std::find(v.begin(), v.end(), x.cls[i]) == v.end()) v.push_back(x.cls[i]);
    }
    for (auto& [yid, v] : sides) std::sort(v.begin(), v.end());
    if (sides.size() != 2) return {};
    auto it = sides.begin();
    const auto& s0 = it->second;
    const auto& s1 = std::next(it)->second;
    if (s0.size() < 2 || s1.size() < 2) return {};
    std::vector<uint32_t> labels(m.atom_count(), 0);
    for (size_t i = 0; i < m.atom_count(); ++i) {
        uint32_t c = x.cls[i];
        bool in0 = std::find(s0.begin(), s0.end(), c) != s0.end();
        if (in0)
            labels[i] = c == s0[0] ? 0 : 1;
        else
            labels[i] = c == s1[0] ? 2 : 3;
    }
    return {m.with_var(vars[0], labels)};
}

std::vector<FiniteModel> w_smi_vsplit(const FiniteModel& m, const Hint& h,
                                      const std::vector<std::string>& vars) {
    if (h.args.size() != 3 || vars.size() != 1) return {};
    auto y = term_classes(m, h.args[1]);
    auto u = term_classes(m, h.args[2]);
    // rank of the u class within its y class; needs at most 2 per class
    std::map<uint32_t, std::vector<uint32_t>> per;
    for (size_t i = 0; i < m.atom_count(); ++i) {
        if (m.space().atoms[i] == 0) continue;
        auto& v = per[y.cls[i]];
        if (std::find(v.begin(), v.end(), u.cls[i]) == v.end()) v.push_back(u.cls[i]);
    }
    for (auto& [yid, v] : per) {
        if (v.size() > 2) return {};
        std::sort(v.begin(), v.end());
    }
    std::vector<uint32_t> labels(m.atom_count(), 0);
    for (size_t i = 0; i < m.atom_count(); ++i) {
        auto& v = per[y.cls[i]];
        labels[i] = static_cast<uint32_t>(
            std::find(v.begin(), v.end(), u.cls[i]) - v.begin());
    }
    return {m.with_var(vars[0], labels)};
}

std::vector<FiniteModel> w_smis_usplit(const FiniteModel& m, const Hint& h,
                                       const std::vector<std::string>& vars) {
    if (h.args.size() != 3 || vars.size() != 1) return {};
    auto b = term_classes(m, h.args[1]);
    auto c = term_classes(m, h.args[2]);
    if (b.n > 2 || c.n > 2) return {};
    std::vector<FiniteModel> out;
    for (const auto& [b1, pb] : b.mass)
        for (const auto& [c1, pc] : c.mass) {
            std::vector<uint32_t> labels(m.atom_count(), 0);
            for (size_t i = 0; i < m.atom_count(); ++i)
                labels[i] = (b.cls[i] == b1 || c.cls[i] == c1) ? 1 : 0;
            out.push_back(m.with_var(vars[0], labels));
        }
    return out;
}

std::vector<FiniteModel> w_ueq_n(const FiniteModel& m, const Hint& h,
                                 const std::vector<std::string>& vars) {
    if (h.nats.size() != 1 || vars.size() != 1) return {};
    size_t n = static_cast<size_t>(h.nats[0]);
    if (n < 1) return {};
    return {adjoin_independent(m, vars[0], unif_pmf(n))};
}

std::vector<FiniteModel> w_succ3(const FiniteModel& m, const Hint& h,
                                 const std::vector<std::string>& vars) {
    if (h.args.size() != 1 || vars.size() != 3) return {};
    auto u = term_classes(m, h.args[0]);
    if (!u.uniform) return {};
    auto e1 = adjoin_independent(m, vars[0], unif_pmf(u.n + 1));
    auto e2 = adjoin_independent(e1, vars[1], unif_pmf(u.n + 2));
    auto e3 = adjoin_independent(e2, vars[2], unif_pmf(u.n + 3));
    return {e3};
}

// label construction: classes ordered by (mass, id) get sizes 3,4,5,...
std::optional<FiniteModel> build_label(const FiniteModel& m, const Term& a,
                                       const std::string& lvar) {
    auto ac = term_classes(m, a);
    if (ac.n == 0) return std::nullopt;
    std::vector<std::pair<Rat, uint32_t>> order;
    for (const auto& [id, p] : ac.mass) order.push_back({p, id});
    std::sort(order.begin(), order.end());
    std::map<uint32_t, std::pair<size_t, size_t>> span;  // class -> (offset, size)
    size_t off = 0, size = 3;
    for (const auto& [p, id] : order) {
        span[id] = {off, size};
        off += size;
        ++size;
    }
    std::vector<std::vector<Rat>> kernel;
    for (size_t i = 0; i < m.atom_count(); ++i) {
        std::vector<Rat> row(off, 0);
        auto it = span.find(ac.cls[i]);
        if (it == span.end()) {
            row[0] = 1;
        } else {
            auto [o, s] = it->second;
            for (size_t j = 0; j < s; ++j) row[o + j] = Rat(1, static_cast<int>(s));
        }
        kernel.push_back(std::move(row));
    }
    return adjoin(m, lvar, kernel);
}

std::vector<FiniteModel> w_labels(const FiniteModel& m, const Hint& h,
                                  const std::vector<std::string>& vars) {
    if (h.args.size() != vars.size()) return {};
    FiniteModel cur = m;
    for (size_t i = 0; i < vars.size(); ++i) {
        auto next = build_label(cur, h.args[i], vars[i]);
        if (!next) return {};
        cur = *next;
    }
    return {cur};
}

std::vector<FiniteModel> w_label3_u(const FiniteModel& m, const Hint& h,
                                    const std::vector<std::string>& vars) {
    if (h.args.size() != 3 || vars.size() != 1) return {};
    auto a = term_classes(m, h.args[0]);
    auto l = term_classes(m, h.args[1]);
    auto b = term_classes(m, h.args[2]);
    if (b.n > 2) return {};
    // the single L class pinned by b
    for (const auto& [b1, pb] : b.mass) {
        std::set<uint32_t> lcls;
        for (size_t i = 0; i < m.atom_count(); ++i)
            if (m.space().atoms[i] != 0 && b.cls[i] == b1) lcls.insert(l.cls[i]);
        if (lcls.size() != 1) continue;
        uint32_t l0 = *lcls.begin();
        // count L classes within the A class of l0
        uint32_t a0 = 0;
        for (size_t i = 0; i < m.atom_count(); ++i)
            if (m.space().atoms[i] != 0 && l.cls[i] == l0) a0 = a.cls[i];
        std::set<uint32_t> within;
        for (size_t i = 0; i < m.atom_count(); ++i)
            if (m.space().atoms[i] != 0 && a.cls[i] == a0) within.insert(l.cls[i]);
        if (within.empty()) continue;
        return {adjoin_independent(m, vars[0], unif_pmf(within.size()))};
    }
    return {};
}

std::vector<FiniteModel> w_divmass(const FiniteModel& m, const Hint& h,
                                   const std::vector<std::string>& vars) {
    if (h.args.size() != 4 || vars.size() != 1) return {};
    auto a = term_classes(m, h.args[0]);
    auto l = term_classes(m, h.args[1]);
    auto u = term_classes(m, h.args[2]);
    if (!u.uniform || u.n == 0) return {};
    size_t k = u.n;
    // within each A class, rank L classes; classes with exactly k L values use
    // the rank, others a fresh uniform draw, keeping the result independent of A
    std::map<uint32_t, std::vector<uint32_t>> per;
    for (size_t i = 0; i < m.atom_count(); ++i) {
        if (m.space().atoms[i] == 0) continue;
        auto& v = per[a.cls[i]];
        if (std::find(v.begin(), v.end(), l.cls[i]) == v.end()) v.push_back(l.cls[i]);
    }
    for (auto& [aid, v] : per) std::sort(v.begin(), v.end());
    std::vector<std::vector<Rat>> kernel;
    for (size_t i = 0; i < m.atom_count(); ++i) {
        std::vector<Rat> row(k, 0);
        auto it = per.find(a.cls[i]);
        if (it != per.end() && it->second.size() == k) {
            size_t r = static_cast<size_t>(
                std::find(it->second.begin(), it->second.end(), l.cls[i]) -
                it->second.begin());
            row[r] = 1;
        } else {
            for (auto& q : row) q = Rat(1, static_cast<int>(k));
        }
        kernel.push_back(std::move(row));
    }
    return {adjoin(m, vars[0], kernel)};
}

std::vector<FiniteModel> w_ind_indicator(const FiniteModel& m, const Hint& h,
                                         const std::vector<std::string>& vars) {
    if (h.args.size() != 1 || vars.size() != 1) return {};
    auto d = term_classes(m, h.args[0]);
    std::vector<FiniteModel> out;
    // constant indicator (events of probability 0 or 1)
    out.push_back(m.with_var(vars[0], std::vector<uint32_t>(m.atom_count(), 0)));
    // indicator of "not the largest mass class", per tied maximum
    Rat best = 0;
    for (const auto& [id, p] : d.mass) best = std::max(best, p);
    for (const auto& [id, p] : d.mass) {
        if (p != best) continue;
        std::vector<uint32_t> labels(m.atom_count(), 0);
        for (size_t i = 0; i < m.atom_count(); ++i)
            labels[i] = d.cls[i] == id ? 0 : 1;
        out.push_back(m.with_var(vars[0], labels));
    }
    return out;
}

std::vector<FiniteModel> w_compl(const FiniteModel& m, const Hint& h,
                                 const std::vector<std::string>& vars) {
    if (h.args.size() != 1 || vars.size() != 1) return {};
    auto d = term_classes(m, h.args[0]);
    std::vector<FiniteModel> out;
    Rat best = 0;
    for (const auto& [id, p] : d.mass) best = std::max(best, p);
    for (const auto& [id, p] : d.mass) {
        if (p != best) continue;
        // complement event F = {D = id}, mass p; representation: Unif[k] on F
        Rat pF = p;
        if (pF == 1) {
            out.push_back(adjoin_independent(m, vars[0], unif_pmf(2)));
            continue;
        }
        size_t k = 2;
        while (pF / static_cast<int>(k) >= 1 - pF && k < 64) ++k;
        std::vector<std::vector<Rat>> kernel;
        for (size_t i = 0; i < m.atom_count(); ++i) {
            std::vector<Rat> row(k + 1, 0);
            if (d.cls[i] == id)
                for (size_t j = 1; j <= k; ++j) row[j] = Rat(1, static_cast<int>(k));
            else
                row[0] = 1;
            kernel.push_back(std::move(row));
        }
        out.push_back(adjoin(m, vars[0], kernel));
    }
    return out;
}

std::vector<FiniteModel> w_ind_uv(const FiniteModel& m, const Hint& h,
                                  const std::vector<std::string>& vars) {
    if (h.args.size() != 2 || vars.size() != 2) return {};
    auto d = term_classes(m, h.args[0]);
    auto c = term_classes(m, h.args[1]);
    if (c.n != 2 || d.n < 2) return {};
    size_t k = d.n - 1;
    // which c side covers k classes of d
    for (const auto& [c1, pc] : c.mass) {
        std::set<uint32_t> side;
        for (size_t i = 0; i < m.atom_count(); ++i) {
            if (m.space().atoms[i] == 0) continue;
            if (c.cls[i] == c1) side.insert(d.cls[i]);
        }
        if (side.size() != k) continue;
        std::map<uint32_t, size_t> rank;
        for (auto id : side) rank[id] = rank.size();
        std::vector<std::vector<Rat>> kernel;
        for (size_t i = 0; i < m.atom_count(); ++i) {
            std::vector<Rat> row(k, 0);
            if (c.cls[i] == c1 && rank.count(d.cls[i]))
                row[rank[d.cls[i]]] = 1;
            else
                for (auto& q : row) q = Rat(1, static_cast<int>(k));
            kernel.push_back(std::move(row));
        }
        auto e1 = adjoin(m, vars[0], kernel);
        auto e2 = adjoin_independent(e1, vars[1], unif_pmf(2));
        return {e2};
    }
    return {};
}

std::vector<FiniteModel> w_qlt(const FiniteModel& m, const Hint& h,
                               const std::vector<std::string>& vars) {
    if (h.args.size() != 3 || vars.size() != 2) return {};
    auto x = term_classes(m, h.args[0]);
    auto y = term_classes(m, h.args[1]);
    auto b = term_classes(m, h.args[2]);
    if (!x.uniform || !y.uniform || b.n != 2) return {};
    Rat p(static_cast<int>(x.n), static_cast<int>(x.n + y.n));
    std::vector<FiniteModel> out;
    for (const auto& [b1, theta] : b.mass) {
        if (theta < p || theta > Rat(1, 2)) continue;
        // joint rows of the mixture: C given B, then D given (B, C)
        std::vector<std::vector<Rat>> kc;
        for (size_t i = 0; i < m.atom_count(); ++i) {
            Rat p1 = b.cls[i] == b1 ? p / theta : Rat(0);
            kc.push_back({1 - p1, p1});
        }
        auto e1 = adjoin(m, vars[0], kc);
        auto b2 = term_classes(e1, h.args[2]);
        const auto& cv = e1.labels(vars[0]);
        std::vector<std::vector<Rat>> kd;
        for (size_t i = 0; i < e1.atom_count(); ++i) {
            Rat p1 = 0;
            if (b2.cls[i] != b1 && cv[i] == 0) p1 = Rat(1, 2) / (1 - theta);
            kd.push_back({1 - p1, p1});
        }
        out.push_back(adjoin(e1, vars[1], kd));
    }
    return out;
}

std::vector<FiniteModel> w_labelev(const FiniteModel& m, const Hint& h,
                                   const std::vector<std::string>& vars) {
    if (h.args.size() != 4 || vars.size() != 2) return {};
    auto a = term_classes(m, h.args[0]);
    auto u = term_classes(m, h.args[2]);
    if (!u.uniform || u.n == 0) return {};
    // c = indicator of the A class with exactly |U| label values
    auto l = term_classes(m, h.args[1]);
    std::map<uint32_t, std::set<uint32_t>> per;
    for (size_t i = 0; i < m.atom_count(); ++i)
        if (m.space().atoms[i] != 0) per[a.cls[i]].insert(l.cls[i]);
    std::vector<FiniteModel> out;
    for (const auto& [aid, lset] : per) {
        if (lset.size() != u.n) continue;
        std::vector<uint32_t> labels(m.atom_count(), 0);
        for (size_t i = 0; i < m.atom_count(); ++i)
            labels[i] = a.cls[i] == aid ? 1 : 0;
        auto e1 = m.with_var(vars[0], labels);
        Hint h2{"divmass_witness", h.args, {}};
        auto exts = w_divmass(e1, h2, {vars[1]});
        for (auto& e : exts) out.push_back(e);
    }
    return out;
}

// Builds the unique integer representation for a block of value-determined
// arithmetic binders. Each (op, aux) pair in the hint consumes operands from
// the argument list; operands may reference earlier binders of the block.
std::vector<FiniteModel> w_nat_chain(const FiniteModel& m, const Hint& h,
                                     const std::vector<std::string>& vars) {
    if (h.nats.size() != 2 * vars.size()) return {};
    FiniteModel cur = m;
    size_t argc = 0;
    auto value = [&](const Term& t) { return nat_rep_value(cur, t); };
    for (size_t i = 0; i < vars.size(); ++i) {
        long long op = h.nats[2 * i], aux = h.nats[2 * i + 1];
        long long v = 0;
        auto take = [&]() -> std::optional<long long> {
            if (argc >= h.args.size()) return std::nullopt;
            return value(h.args[argc++]);
        };
        switch (op) {
            case macro_detail::NatConst:
                v = aux;
                break;
            case macro_detail::NatAdd:
            case macro_detail::NatMul:
            case macro_detail::NatMod:
            case macro_detail::NatSub:
            case macro_detail::NatPow:
            case macro_detail::NatFloorDiv: {
                auto a = take(), b = take();
                if (!a || !b) return {};
                switch (op) {
                    case macro_detail::NatAdd: v = *a + *b; break;
                    case macro_detail::NatMul: v = *a * *b; break;
                    case macro_detail::NatMod:
                        if (*b == 0) return {};
                        v = *a % *b;
                        break;
                    case macro_detail::NatSub:
                        if (*a < *b) return {};
                        v = *a - *b;
                        break;
                    case macro_detail::NatPow: {
                        Int p = 1;
                        for (long long j = 0; j < *b; ++j) {
                            p *= *a;
                            if (p > 1000000) return {};  // beyond any usable support
                        }
                        v = p.convert_to<long long>();
                        break;
                    }
                    case macro_detail::NatFloorDiv:
                        if (*b == 0) return {};
                        v = *a / *b;
                        break;
                }
                break;
            }
            case macro_detail::NatCardOf: {
                if (argc >= h.args.size()) return {};
                v = static_cast<long long>(cur.support_size(h.args[argc++]));
                break;
            }
            case macro_detail::NatDecEntry: {
                auto r = take(), idx = take();
                if (!r || !idx) return {};
                auto seq = godel_decode(Int(*r));
                if (*idx < 1 || static_cast<size_t>(*idx) > seq.size()) return {};
                v = seq[static_cast<size_t>(*idx) - 1].convert_to<long long>();
                break;
            }
            default:
                return {};
        }
        if (v < 0) return {};
        if (v == 0)
            cur = adjoin_independent(cur, vars[i], {Rat(2, 3), Rat(1, 3)});
        else
            cur = adjoin_independent(cur, vars[i],
                                     std::vector<Rat>(static_cast<size_t>(v),
                                                      Rat(1, static_cast<int>(v))));
    }
    return {cur};
}

}  // namespace

void register_builtin_witnesses() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        register_witness_constructor("triple_witness", w_triple);
        register_witness_constructor("ueq_witness", w_ueq);
        register_witness_constructor("lei_refuter", w_lei_refuter);
        register_witness_constructor("card_refuter", w_card_refuter);
        register_witness_constructor("is0_witness", w_is0);
        register_witness_constructor("uprod_witness", w_uprod);
        register_witness_constructor("ule_witness", w_ule);
        register_witness_constructor("udiv_witness", w_udiv);
        register_witness_constructor("uprime_factor", w_uprime_factor);
        register_witness_constructor("usum_witness", w_usum);
        register_witness_constructor("frac_witness", w_frac);
        register_witness_constructor("qeq_witness", w_qeq);
        register_witness_constructor("ci_witness", w_ci);
        register_witness_constructor("smi_refuter", w_smi_refuter);
        register_witness_constructor("smi_vsplit", w_smi_vsplit);
        register_witness_constructor("smis_usplit", w_smis_usplit);
        register_witness_constructor("ueq_n_witness", w_ueq_n);
        register_witness_constructor("succ3_witness", w_succ3);
        register_witness_constructor("label_witness", w_labels);
        register_witness_constructor("rdist_labels", w_labels);
        register_witness_constructor("label3_u", w_label3_u);
        register_witness_constructor("divmass_witness", w_divmass);
        register_witness_constructor("divmass_copy", w_divmass);
        register_witness_constructor("ind_indicator", w_ind_indicator);
        register_witness_constructor("compl_witness", w_compl);
        register_witness_constructor("ind_uv", w_ind_uv);
        register_witness_constructor("qlt_witness", w_qlt);
        register_witness_constructor("labelev_witness", w_labelev);
        register_witness_constructor("nat_chain", w_nat_chain);
    });
}

}  // namespace fotpi
