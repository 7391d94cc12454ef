// Shannon-type inequality proving: phase-one exact simplex over the elemental
// inequalities. A zero optimum yields the multiplier certificate; a positive
// optimum yields the Farkas prices, which after a sign flip are a point of the
// polymatroid cone violating the goal.

#include "fotpi/shannon.hpp"

#include <algorithm>
#include <set>

namespace fotpi {

namespace {

using Vec = std::vector<Rat>;

std::string subset_name(uint32_t mask, const std::vector<std::string>& vars) {
    std::string s;
    for (size_t i = 0; i < vars.size(); ++i)
        if (mask & (1u << i)) {
            if (!s.empty()) s += ",";
            s += vars[i];
        }
    return s;
}

std::vector<std::string> subset_key(uint32_t mask, const std::vector<std::string>& vars) {
    std::vector<std::string> key;
    for (size_t i = 0; i < vars.size(); ++i)
        if (mask & (1u << i)) key.push_back(vars[i]);
    std::sort(key.begin(), key.end());
    return key;
}

struct Elemental {
    std::string name;
    Vec coeff;  // over coordinates 1..2^n-1 (index mask-1)
};

std::vector<Elemental> elementals(const std::vector<std::string>& vars) {
    size_t n = vars.size();
    uint32_t full = (1u << n) - 1;
    std::vector<Elemental> out;
    for (size_t i = 0; i < n; ++i) {
        Elemental e;
        e.name = "H(" + subset_name(full, vars) + ") - H(" +
                 subset_name(full & ~(1u << i), vars) + ")";
        if (n == 1) e.name = "H(" + vars[0] + ")";
        e.coeff.assign(full, 0);
        e.coeff[full - 1] += 1;
        uint32_t rest = full & ~(1u << i);
        if (rest) e.coeff[rest - 1] -= 1;
        out.push_back(std::move(e));
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            uint32_t ij = (1u << i) | (1u << j);
            uint32_t others = full & ~ij;
            // iterate subsets K of the remaining variables
            uint32_t k = 0;
            while (true) {
                Elemental e;
                e.coeff.assign(full, 0);
                e.coeff[((1u << i) | k) - 1] += 1;
                e.coeff[((1u << j) | k) - 1] += 1;
                e.coeff[(ij | k) - 1] -= 1;
                if (k) e.coeff[k - 1] -= 1;
                e.name = "I(" + vars[i] + ";" + vars[j] +
                         (k ? "|" + subset_name(k, vars) : "") + ")";
                out.push_back(std::move(e));
                if (k == others) break;
                k = (k - others) & others;  // next subset of others
            }
        }
    return out;
}

Vec to_coords(const LinearEntropyExpr& e, const std::vector<std::string>& vars) {
    std::map<std::string, size_t> idx;
    for (size_t i = 0; i < vars.size(); ++i) idx[vars[i]] = i;
    Vec out((1u << vars.size()) - 1, 0);
    for (const auto& [names, c] : e.coeffs) {
        uint32_t mask = 0;
        for (const auto& nm : names) mask |= 1u << idx.at(nm);
        out[mask - 1] += c;
    }
    return out;
}

// Phase-one simplex: minimize the artificial sum for A x = b, x >= 0.
// Returns (optimum, x, prices pi). Deterministic via Bland's rule.
struct SimplexResult {
    Rat opt;
    Vec x;
    Vec pi;
};

SimplexResult phase_one(std::vector<Vec> cols, Vec b) {
    size_t rows = b.size(), ncols = cols.size();
    for (size_t r = 0; r < rows; ++r)
        if (b[r] < 0) {
            b[r] = -b[r];
            for (auto& col : cols) col[r] = -col[r];
        }
    // tableau: columns = structural cols + artificials; artificial j basic in row j
    size_t total = ncols + rows;
    std::vector<size_t> basis(rows);
    std::vector<Vec> tab(rows, Vec(total, 0));
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < ncols; ++c) tab[r][c] = cols[c][r];
        tab[r][ncols + r] = 1;
        basis[r] = ncols + r;
    }
    auto cost_of = [&](size_t c) { return c >= ncols ? Rat(1) : Rat(0); };
    while (true) {
        // prices: pi_r = sum over basic rows of c_B * (B^-1 row) — with the
        // artificial columns holding B^-1 explicitly
        Vec pi(rows, 0);
        for (size_t j = 0; j < rows; ++j) {
            Rat acc = 0;
            for (size_t r = 0; r < rows; ++r) acc += cost_of(basis[r]) * tab[r][ncols + j];
            pi[j] = acc;
        }
        // entering: lowest index with negative reduced cost
        size_t enter = total;
        for (size_t c = 0; c < total; ++c) {
            bool basic = false;
            for (size_t r = 0; r < rows; ++r)
                if (basis[r] == c) basic = true;
            if (basic) continue;
            Rat rc = cost_of(c);
            for (size_t r = 0; r < rows; ++r) rc -= pi[r] * (c >= ncols ? Rat(r == c - ncols) : cols[c][r]);
            if (rc < 0) {
                enter = c;
                break;
            }
        }
        if (enter == total) {
            Rat opt = 0;
            Vec x(ncols, 0);
            for (size_t r = 0; r < rows; ++r) {
                if (basis[r] < ncols) x[basis[r]] = b[r];
                else opt += b[r];
            }
            return {opt, x, pi};
        }
        // leaving: Bland tie-break by lowest basis variable index
        size_t leave = rows;
        for (size_t r = 0; r < rows; ++r) {
            if (tab[r][enter] <= 0) continue;
            if (leave == rows) {
                leave = r;
                continue;
            }
            Rat cur = b[r] / tab[r][enter];
            Rat best = b[leave] / tab[leave][enter];
            if (cur < best || (cur == best && basis[r] < basis[leave])) leave = r;
        }
        if (leave == rows) throw error("phase-one simplex unbounded");  // cannot happen
        // pivot
        Rat piv = tab[leave][enter];
        for (auto& v : tab[leave]) v /= piv;
        b[leave] /= piv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == leave || tab[r][enter] == 0) continue;
            Rat f = tab[r][enter];
            for (size_t c = 0; c < total; ++c) tab[r][c] -= f * tab[leave][c];
            b[r] -= f * b[leave];
        }
        basis[leave] = enter;
    }
}

struct Engine {
    std::vector<std::string> vars;
    std::vector<Elemental> elems;
    std::vector<Vec> constraint_vecs;

    // decide a >= 0 over the cone
    std::pair<bool, SimplexResult> decide(const Vec& a, std::vector<Vec>& cols_out,
                                          Vec& flips) const {
        std::vector<Vec> cols;
        for (const auto& e : elems) cols.push_back(e.coeff);
        for (const auto& c : constraint_vecs) {
            cols.push_back(c);
            Vec neg = c;
            for (auto& v : neg) v = -v;
            cols.push_back(std::move(neg));
        }
        // record the sign flips phase_one will apply, for price unflipping
        flips.assign(a.size(), 1);
        for (size_t r = 0; r < a.size(); ++r)
            if (a[r] < 0) flips[r] = -1;
        auto res = phase_one(cols, a);
        cols_out = std::move(cols);
        return {res.opt == 0, res};
    }
};

}  // namespace

std::vector<std::pair<std::string, std::map<std::vector<std::string>, Rat>>>
elemental_inequalities(const std::vector<std::string>& vars) {
    std::vector<std::pair<std::string, std::map<std::vector<std::string>, Rat>>> out;
    for (const auto& e : elementals(vars)) {
        std::map<std::vector<std::string>, Rat> coeffs;
        for (uint32_t mask = 1; mask <= e.coeff.size(); ++mask)
            if (e.coeff[mask - 1] != 0) coeffs[subset_key(mask, vars)] = e.coeff[mask - 1];
        out.push_back({e.name, std::move(coeffs)});
    }
    return out;
}

ShannonVerdict prove_shannon(const ShannonProblem& p) {
    p.goal.validate();
    std::set<std::string> varset;
    for (const auto& [names, c] : p.goal.coeffs)
        for (const auto& nm : names) varset.insert(nm);
    for (const auto& con : p.constraints) {
        con.validate();
        for (const auto& [names, c] : con.coeffs)
            for (const auto& nm : names) varset.insert(nm);
    }
    std::vector<std::string> vars(varset.begin(), varset.end());
    if (vars.empty()) throw error("prove_shannon: no variables in the problem");
    if (vars.size() > p.max_vars)
        throw error("prove_shannon: " + std::to_string(vars.size()) +
                    " variables exceed the cap of " + std::to_string(p.max_vars));

    Engine eng;
    eng.vars = vars;
    eng.elems = elementals(vars);
    for (const auto& con : p.constraints) eng.constraint_vecs.push_back(to_coords(con, vars));

    Vec goal = to_coords(p.goal, vars);

    // a strict goal can never be valid: the all-zero vector is in the cone
    if (p.goal.cmp == Cmp::Gt) {
        ShannonVerdict v;
        v.provable = false;
        // the zero ray satisfies all elementals and fails a > 0
        return v;
    }

    std::vector<Vec> goals{goal};
    if (p.goal.cmp == Cmp::Eq) {
        Vec neg = goal;
        for (auto& q : neg) q = -q;
        goals.push_back(std::move(neg));
    }

    ShannonVerdict verdict;
    verdict.provable = true;
    for (const auto& g : goals) {
        std::vector<Vec> cols;
        Vec flips;
        auto [ok, res] = eng.decide(g, cols, flips);
        if (ok) {
            // collect and verify the certificate: sum x_c * col_c == g
            Vec recomb(g.size(), 0);
            for (size_t c = 0; c < cols.size(); ++c)
                for (size_t r = 0; r < g.size(); ++r) recomb[r] += res.x[c] * cols[c][r];
            if (recomb != g) throw error("prove_shannon: certificate failed recombination");
            for (size_t c = 0; c < eng.elems.size(); ++c)
                if (res.x[c] != 0)
                    verdict.multipliers.push_back({eng.elems[c].name, res.x[c]});
            for (size_t k = 0; k < eng.constraint_vecs.size(); ++k) {
                Rat net = res.x[eng.elems.size() + 2 * k] - res.x[eng.elems.size() + 2 * k + 1];
                if (net != 0)
                    verdict.multipliers.push_back({"constraint " + std::to_string(k + 1), net});
            }
        } else {
            // Farkas prices: y = flips .* pi ; ray = -y
            Vec ray(g.size(), 0);
            for (size_t r = 0; r < g.size(); ++r) ray[r] = -(flips[r] * res.pi[r]);
            // verify: elementals nonnegative, constraints zero, goal negative
            for (const auto& e : eng.elems) {
                Rat dot = 0;
                for (size_t r = 0; r < g.size(); ++r) dot += e.coeff[r] * ray[r];
                if (dot < 0) throw error("prove_shannon: dual ray violates an elemental");
            }
            for (const auto& cvec : eng.constraint_vecs) {
                Rat dot = 0;
                for (size_t r = 0; r < g.size(); ++r) dot += cvec[r] * ray[r];
                if (dot != 0) throw error("prove_shannon: dual ray violates a constraint");
            }
            Rat dot = 0;
            for (size_t r = 0; r < g.size(); ++r) dot += g[r] * ray[r];
            if (dot >= 0) throw error("prove_shannon: dual ray does not violate the goal");
            verdict.provable = false;
            verdict.multipliers.clear();
            for (uint32_t mask = 1; mask <= ray.size(); ++mask)
                if (ray[mask - 1] != 0)
                    verdict.dual_ray[subset_key(mask, vars)] = ray[mask - 1];
            return verdict;
        }
    }
    return verdict;
}

}  // namespace fotpi
