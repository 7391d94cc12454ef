// Direct semantic oracles for the derived predicates whose meaning has an
// exact finite-model decision procedure. The evaluator uses these for macro
// calls it has not been asked to expand; the test suites compare them against
// bounded evaluation of the expansions.

#include <algorithm>
#include <map>
#include <set>

#include "fotpi/eval.hpp"
#include "fotpi/macro_detail.hpp"
#include "fotpi/semantics.hpp"

namespace fotpi {

namespace {

using macro_detail::T;
using macro_detail::N;

struct Dist {
    std::vector<uint32_t> cls;
    std::map<uint32_t, Rat> mass;
    size_t n = 0;
    bool uniform = false;
};

Dist dist_of(const FiniteModel& m, const Term& t) {
    Dist d;
    d.cls = m.resolve(t);
    for (size_t i = 0; i < d.cls.size(); ++i)
        if (m.space().atoms[i] != 0) d.mass[d.cls[i]] += m.space().atoms[i];
    for (auto it = d.mass.begin(); it != d.mass.end();)
        it = it->second == 0 ? d.mass.erase(it) : std::next(it);
    d.n = d.mass.size();
    d.uniform = true;
    for (const auto& [id, p] : d.mass)
        if (p != Rat(1, static_cast<int>(d.n))) d.uniform = false;
    return d;
}

bool is_const(const FiniteModel& m, const Term& t) { return m.support_size(t) == 1; }

bool sem_unif(const FiniteModel& m, const Term& t) { return dist_of(m, t).uniform; }

// |X| for uniform X; 0 marks "not a uniform representation"
size_t ucard(const FiniteModel& m, const Term& t) {
    auto d = dist_of(m, t);
    return d.uniform ? d.n : 0;
}

bool sem_is0(const FiniteModel& m, const Term& t) {
    auto d = dist_of(m, t);
    if (d.n != 2) return false;
    std::vector<Rat> ms;
    for (const auto& [id, p] : d.mass) ms.push_back(p);
    std::sort(ms.begin(), ms.end());
    return ms[0] == Rat(1, 3) && ms[1] == Rat(2, 3);
}

bool sem_isnat(const FiniteModel& m, const Term& t) {
    return sem_is0(m, t) || sem_unif(m, t);
}

// integer carried by a representation, if any (0 for Bern(1/3), n for Unif[n])
std::optional<long long> nat_value(const FiniteModel& m, const Term& t) {
    if (sem_is0(m, t)) return 0;
    auto d = dist_of(m, t);
    if (d.uniform) return static_cast<long long>(d.n);
    return std::nullopt;
}

bool sem_smi(const FiniteModel& m, const Term& x, const Term& y) {
    if (is_const(m, x) && is_const(m, y)) return true;
    if (!is_function_of(m, y, x)) return false;
    auto dy = dist_of(m, y);
    if (dy.n != 2) return false;
    // one y side must cover exactly one x class
    auto dx = dist_of(m, x);
    std::map<uint32_t, std::set<uint32_t>> per;
    for (size_t i = 0; i < m.atom_count(); ++i)
        if (m.space().atoms[i] != 0) per[dy.cls[i]].insert(dx.cls[i]);
    for (const auto& [yid, xs] : per)
        if (xs.size() == 1) return true;
    return false;
}

// Valid event representations: a constant (the empty event), a uniform
// variable on >= 2 values (the full event), or one heavy class plus k >= 2
// equal light classes with light < heavy. Returns the event's atom set.
std::optional<std::vector<bool>> event_atoms(const FiniteModel& m, const Term& d) {
    auto dd = dist_of(m, d);
    std::vector<bool> ev(m.atom_count(), false);
    if (dd.n == 1) return ev;  // empty event
    if (dd.uniform) {
        for (size_t i = 0; i < m.atom_count(); ++i) ev[i] = m.space().atoms[i] != 0;
        return ev;  // sure event
    }
    // group masses
    std::map<Rat, std::set<uint32_t>> by_mass;
    for (const auto& [id, p] : dd.mass) by_mass[p].insert(id);
    // light classes share one mass p (k >= 2 of them), heavy is a single class
    if (by_mass.size() != 2) return std::nullopt;
    auto light = by_mass.begin();
    auto heavy = std::prev(by_mass.end());
    if (heavy->second.size() != 1 || light->second.size() < 2) return std::nullopt;
    if (light->first >= heavy->first) return std::nullopt;
    uint32_t d0 = *heavy->second.begin();
    for (size_t i = 0; i < m.atom_count(); ++i)
        ev[i] = m.space().atoms[i] != 0 && dd.cls[i] != d0;
    return ev;
}

Rat event_prob(const FiniteModel& m, const std::vector<bool>& ev) {
    Rat p = 0;
    for (size_t i = 0; i < m.atom_count(); ++i)
        if (ev[i]) p += m.space().atoms[i];
    return p;
}

bool sem_ind(const FiniteModel& m, const Term& d, const Term& c) {
    auto ev = event_atoms(m, d);
    if (!ev) return false;
    auto dd = dist_of(m, d);
    if (dd.uniform) return is_const(m, c);  // covers empty and sure events
    // c must be informationally the indicator of the event
    auto cc = dist_of(m, c);
    if (cc.n != 2) return false;
    auto cls = m.resolve(c);
    std::optional<uint32_t> in_class, out_class;
    for (size_t i = 0; i < m.atom_count(); ++i) {
        if (m.space().atoms[i] == 0) continue;
        if ((*ev)[i]) {
            if (out_class && *out_class == cls[i]) return false;
            if (in_class && *in_class != cls[i]) return false;
            in_class = cls[i];
        } else {
            if (in_class && *in_class == cls[i]) return false;
            if (out_class && *out_class != cls[i]) return false;
            out_class = cls[i];
        }
    }
    return true;
}

using Args = std::vector<MacroArg>;

bool sem_ule_uu(const FiniteModel& m, const Term& x, const Term& y) {
    size_t nx = ucard(m, x), ny = ucard(m, y);
    return nx > 0 && ny > 0 && nx <= ny;
}

std::map<std::string, SemanticFn> build_table() {
    std::map<std::string, SemanticFn> t;
    t["lei"] = [](const FiniteModel& m, const Args& a) {
        return is_function_of(m, T(a[0]), T(a[1]));
    };
    t["ieq"] = [](const FiniteModel& m, const Args& a) {
        return relabel_equal(m, T(a[0]), T(a[1]));
    };
    t["ine"] = [](const FiniteModel& m, const Args& a) {
        return !relabel_equal(m, T(a[0]), T(a[1]));
    };
    t["ilt"] = [](const FiniteModel& m, const Args& a) {
        return is_function_of(m, T(a[0]), T(a[1])) && !is_function_of(m, T(a[1]), T(a[0]));
    };
    t["iconst"] = [](const FiniteModel& m, const Args& a) { return is_const(m, T(a[0])); };
    t["joint"] = [](const FiniteModel& m, const Args& a) {
        std::vector<Term> parts;
        for (size_t i = 1; i < a.size(); ++i) parts.push_back(T(a[i]));
        return relabel_equal(m, T(a[0]), Term::join(parts));
    };
    t["mutual_indep"] = [](const FiniteModel& m, const Args& a) {
        std::vector<Term> prefix{T(a[0])};
        for (size_t i = 1; i < a.size(); ++i) {
            if (!check_indep(m, T(a[i]), Term::join(prefix))) return false;
            prefix.push_back(T(a[i]));
        }
        return true;
    };
    t["ci"] = [](const FiniteModel& m, const Args& a) {
        return check_ci(m, T(a[0]), T(a[1]), T(a[2]));
    };
    t["unif"] = [](const FiniteModel& m, const Args& a) { return sem_unif(m, T(a[0])); };
    t["triple"] = [](const FiniteModel& m, const Args& a) {
        const Term &x = T(a[0]), &y = T(a[1]), &z = T(a[2]);
        return check_indep(m, x, y) && check_indep(m, x, z) && check_indep(m, y, z) &&
               is_function_of(m, x, Term::join({y, z})) &&
               is_function_of(m, y, Term::join({x, z})) &&
               is_function_of(m, z, Term::join({x, y}));
    };
    t["card_le"] = [](const FiniteModel& m, const Args& a) {
        return m.support_size(T(a[0])) <= static_cast<size_t>(N(a[1]));
    };
    t["card_eq"] = [](const FiniteModel& m, const Args& a) {
        return m.support_size(T(a[0])) == static_cast<size_t>(N(a[1]));
    };
    t["card_ge"] = [](const FiniteModel& m, const Args& a) {
        return m.support_size(T(a[0])) >= static_cast<size_t>(N(a[1]));
    };
    t["ueq"] = [](const FiniteModel& m, const Args& a) {
        size_t nx = ucard(m, T(a[0])), ny = ucard(m, T(a[1]));
        return nx > 0 && nx == ny;
    };
    t["ueq_n"] = [](const FiniteModel& m, const Args& a) {
        return ucard(m, T(a[0])) == static_cast<size_t>(N(a[1]));
    };
    t["uprod"] = [](const FiniteModel& m, const Args& a) {
        size_t nx = ucard(m, T(a[0])), ny = ucard(m, T(a[1])), nz = ucard(m, T(a[2]));
        return nx > 0 && ny > 0 && nz > 0 && nx * ny == nz;
    };
    t["ule"] = [](const FiniteModel& m, const Args& a) {
        return sem_ule_uu(m, T(a[0]), T(a[1]));
    };
    t["ult"] = [](const FiniteModel& m, const Args& a) {
        return !sem_ule_uu(m, T(a[1]), T(a[0]));
    };
    t["uge"] = [](const FiniteModel& m, const Args& a) {
        return sem_ule_uu(m, T(a[1]), T(a[0]));
    };
    t["ugt"] = [](const FiniteModel& m, const Args& a) {
        return !sem_ule_uu(m, T(a[0]), T(a[1]));
    };
    t["ule_n"] = [](const FiniteModel& m, const Args& a) {
        size_t nx = ucard(m, T(a[0]));
        return nx > 0 && nx <= static_cast<size_t>(N(a[1]));
    };
    t["ult_n"] = [](const FiniteModel& m, const Args& a) {
        size_t nx = ucard(m, T(a[0]));
        return nx > 0 && nx < static_cast<size_t>(N(a[1]));
    };
    t["uge_n"] = [](const FiniteModel& m, const Args& a) {
        size_t nx = ucard(m, T(a[0]));
        return nx >= static_cast<size_t>(N(a[1]));
    };
    t["ugt_n"] = [](const FiniteModel& m, const Args& a) {
        size_t nx = ucard(m, T(a[0]));
        return nx > static_cast<size_t>(N(a[1]));
    };
    t["udiv"] = [](const FiniteModel& m, const Args& a) {
        size_t nx = ucard(m, T(a[0])), ny = ucard(m, T(a[1]));
        return nx > 0 && ny > 0 && ny % nx == 0;
    };
    t["uprime"] = [](const FiniteModel& m, const Args& a) {
        size_t n = ucard(m, T(a[0]));
        if (n < 2) return n == 0 ? false : false;  // 1 is not prime; non-uniform: false
        for (size_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    t["usucc"] = [](const FiniteModel& m, const Args& a) {
        size_t nx = ucard(m, T(a[0])), ny = ucard(m, T(a[1]));
        return nx > 0 && ny == nx + 1;
    };
    t["usum"] = [](const FiniteModel& m, const Args& a) {
        size_t nx = ucard(m, T(a[0])), ny = ucard(m, T(a[1])), nz = ucard(m, T(a[2]));
        return nx > 0 && ny > 0 && nz > 0 && nx + ny == nz;
    };
    t["smi"] = [](const FiniteModel& m, const Args& a) {
        return sem_smi(m, T(a[0]), T(a[1]));
    };
    t["is0"] = [](const FiniteModel& m, const Args& a) { return sem_is0(m, T(a[0])); };
    t["isnat"] = [](const FiniteModel& m, const Args& a) { return sem_isnat(m, T(a[0])); };
    t["natc"] = [](const FiniteModel& m, const Args& a) {
        auto v = nat_value(m, T(a[0]));
        return v && *v == N(a[1]);
    };
    t["nat_eq"] = [](const FiniteModel& m, const Args& a) {
        auto x = nat_value(m, T(a[0])), y = nat_value(m, T(a[1]));
        return x && y && *x == *y;
    };
    t["nat_lt"] = [](const FiniteModel& m, const Args& a) {
        auto x = nat_value(m, T(a[0])), y = nat_value(m, T(a[1]));
        return x && y && *x < *y;
    };
    t["nat_le"] = [](const FiniteModel& m, const Args& a) {
        auto x = nat_value(m, T(a[0])), y = nat_value(m, T(a[1]));
        return x && y && *x <= *y;
    };
    t["nat_add"] = [](const FiniteModel& m, const Args& a) {
        auto x = nat_value(m, T(a[0])), y = nat_value(m, T(a[1])), z = nat_value(m, T(a[2]));
        return x && y && z && *x + *y == *z;
    };
    t["nat_mul"] = [](const FiniteModel& m, const Args& a) {
        auto x = nat_value(m, T(a[0])), y = nat_value(m, T(a[1])), z = nat_value(m, T(a[2]));
        return x && y && z && *x * *y == *z;
    };
    t["nat_pow"] = [](const FiniteModel& m, const Args& a) {
        auto x = nat_value(m, T(a[0])), y = nat_value(m, T(a[1])), z = nat_value(m, T(a[2]));
        if (!x || !y || !z) return false;
        Int p = 1;
        for (long long i = 0; i < *y; ++i) {
            p *= *x;
            if (p > 1000000000) break;
        }
        return *y >= 0 && p == *z;
    };
    t["nat_divides"] = [](const FiniteModel& m, const Args& a) {
        auto x = nat_value(m, T(a[0])), y = nat_value(m, T(a[1]));
        if (!x || !y) return false;
        if (*x == 0) return *y == 0;
        return *y % *x == 0;
    };
    t["nat_mod"] = [](const FiniteModel& m, const Args& a) {
        auto x = nat_value(m, T(a[0])), q = nat_value(m, T(a[1])), r = nat_value(m, T(a[2]));
        return x && q && r && *q >= 1 && *x % *q == *r;
    };
    t["nat_range1"] = [](const FiniteModel& m, const Args& a) {
        auto i = nat_value(m, T(a[0])), n = nat_value(m, T(a[1]));
        return i && n && 1 <= *i && *i <= *n;
    };
    t["rdist_eq"] = [](const FiniteModel& m, const Args& a) {
        return same_dist_relabel(m, T(a[0]), T(a[1]));
    };
    t["cdeqr"] = [](const FiniteModel& m, const Args& a) {
        return cond_dist_relabel(m, {T(a[0])}, T(a[1]), {T(a[2])}, T(a[3]));
    };
    t["isev"] = [](const FiniteModel& m, const Args& a) {
        return event_atoms(m, T(a[0])).has_value();
    };
    t["ind"] = [](const FiniteModel& m, const Args& a) {
        return sem_ind(m, T(a[0]), T(a[1]));
    };
    t["eveq"] = [](const FiniteModel& m, const Args& a) {
        auto e1 = event_atoms(m, T(a[0])), e2 = event_atoms(m, T(a[1]));
        return e1 && e2 && *e1 == *e2;
    };
    t["compl"] = [](const FiniteModel& m, const Args& a) {
        auto e1 = event_atoms(m, T(a[0])), e2 = event_atoms(m, T(a[1]));
        if (!e1 || !e2) return false;
        for (size_t i = 0; i < e1->size(); ++i)
            if (m.space().atoms[i] != 0 && (*e1)[i] == (*e2)[i]) return false;
        return true;
    };
    t["subset"] = [](const FiniteModel& m, const Args& a) {
        auto e1 = event_atoms(m, T(a[0])), e2 = event_atoms(m, T(a[1]));
        if (!e1 || !e2) return false;
        for (size_t i = 0; i < e1->size(); ++i)
            if ((*e1)[i] && !(*e2)[i]) return false;
        return true;
    };
    t["disjoint"] = [](const FiniteModel& m, const Args& a) {
        auto e1 = event_atoms(m, T(a[0])), e2 = event_atoms(m, T(a[1]));
        if (!e1 || !e2) return false;
        for (size_t i = 0; i < e1->size(); ++i)
            if ((*e1)[i] && (*e2)[i]) return false;
        return true;
    };
    t["indep_ev"] = [](const FiniteModel& m, const Args& a) {
        auto e1 = event_atoms(m, T(a[0])), e2 = event_atoms(m, T(a[1]));
        if (!e1 || !e2) return false;
        std::vector<bool> both(e1->size());
        for (size_t i = 0; i < e1->size(); ++i) both[i] = (*e1)[i] && (*e2)[i];
        return event_prob(m, both) == event_prob(m, *e1) * event_prob(m, *e2);
    };
    t["prle"] = [](const FiniteModel& m, const Args& a) {
        auto e1 = event_atoms(m, T(a[0])), e2 = event_atoms(m, T(a[1]));
        return e1 && e2 && event_prob(m, *e1) <= event_prob(m, *e2);
    };
    t["preq"] = [](const FiniteModel& m, const Args& a) {
        auto e1 = event_atoms(m, T(a[0])), e2 = event_atoms(m, T(a[1]));
        return e1 && e2 && event_prob(m, *e1) == event_prob(m, *e2);
    };
    return t;
}

}  // namespace

std::optional<long long> nat_rep_value(const FiniteModel& m, const Term& t) {
    return nat_value(m, t);
}

std::optional<SemanticFn> semantic_oracle(const std::string& macro) {
    static const std::map<std::string, SemanticFn> table = build_table();
    auto it = table.find(macro);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> semantic_oracle_names() {
    static const std::map<std::string, SemanticFn> table = build_table();
    std::vector<std::string> out;
    for (const auto& [k, v] : table) out.push_back(k);
    return out;
}

}  // namespace fotpi
