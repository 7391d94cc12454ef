#include "fotpi/model.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace fotpi {

void FiniteSpace::validate() const {
    Rat total = 0;
    for (const auto& p : atoms) {
        if (p < 0) throw error("atom mass is negative");
        total += p;
    }
    if (total != 1) throw error("atom masses sum to " + rat_str(total) + ", not 1");
}

FiniteModel::FiniteModel(FiniteSpace space, std::map<std::string, std::vector<uint32_t>> vars)
    : space_(std::move(space)), vars_(std::move(vars)) {
    space_.validate();
    for (const auto& [name, labels] : vars_)
        if (labels.size() != space_.size())
            throw error("variable " + name + " does not label every atom");
}

const std::vector<uint32_t>& FiniteModel::labels(const std::string& name) const {
    auto it = vars_.find(name);
    if (it == vars_.end()) throw error("unknown variable: " + name);
    return it->second;
}

std::vector<uint32_t> FiniteModel::resolve(const Term& t) const {
    if (t.is_var()) return labels(t.name());
    // canonical class ids of the label tuple, in first-occurrence order
    std::vector<const std::vector<uint32_t>*> parts;
    for (const auto& n : t.names()) parts.push_back(&labels(n));
    std::map<std::vector<uint32_t>, uint32_t> ids;
    std::vector<uint32_t> out(space_.size());
    std::vector<uint32_t> key(parts.size());
    for (size_t i = 0; i < space_.size(); ++i) {
        for (size_t j = 0; j < parts.size(); ++j) key[j] = (*parts[j])[i];
        auto [it, fresh] = ids.try_emplace(key, static_cast<uint32_t>(ids.size()));
        out[i] = it->second;
    }
    return out;
}

static std::map<uint32_t, Rat> masses_of(const FiniteModel& m, const std::vector<uint32_t>& cls) {
    std::map<uint32_t, Rat> out;
    for (size_t i = 0; i < cls.size(); ++i) {
        if (m.space().atoms[i] == 0) continue;
        out[cls[i]] += m.space().atoms[i];
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

size_t FiniteModel::support_size(const Term& t) const {
    return masses_of(*this, resolve(t)).size();
}

std::vector<Rat> FiniteModel::distribution(const Term& t) const {
    std::vector<Rat> out;
    for (const auto& [v, p] : masses_of(*this, resolve(t))) out.push_back(p);
    return out;
}

FiniteModel FiniteModel::with_var(const std::string& name, std::vector<uint32_t> labels) const {
    if (labels.size() != space_.size()) throw error("label vector has wrong length");
    auto vars = vars_;
    vars[name] = std::move(labels);
    return FiniteModel(space_, std::move(vars));
}

FiniteModel FiniteModel::without_var(const std::string& name) const {
    auto vars = vars_;
    vars.erase(name);
    return FiniteModel(space_, std::move(vars));
}

std::string FiniteModel::str() const {
    std::ostringstream os;
    os << "space[";
    for (size_t i = 0; i < space_.size(); ++i) os << (i ? " " : "") << rat_str(space_.atoms[i]);
    os << "]";
    for (const auto& [name, labels] : vars_) {
        os << " " << name << "=[";
        for (size_t i = 0; i < labels.size(); ++i) os << (i ? " " : "") << labels[i];
        os << "]";
    }
    return os.str();
}

// ---------------------------------------------------------------------------

bool check_indep(const FiniteModel& m, const Term& s, const Term& t) {
    auto cs = m.resolve(s), ct = m.resolve(t);
    std::map<uint32_t, Rat> ps = masses_of(m, cs), pt = masses_of(m, ct);
    std::map<std::pair<uint32_t, uint32_t>, Rat> joint;
    for (size_t i = 0; i < m.atom_count(); ++i) {
        if (m.space().atoms[i] == 0) continue;
        joint[{cs[i], ct[i]}] += m.space().atoms[i];
    }
    for (const auto& [a, pa] : ps)
        for (const auto& [b, pb] : pt) {
            auto it = joint.find({a, b});
            Rat pj = it == joint.end() ? Rat(0) : it->second;
            if (pj != pa * pb) return false;
        }
    return true;
}

bool check_ci(const FiniteModel& m, const Term& s, const Term& t, const Term& u) {
    auto cs = m.resolve(s), ct = m.resolve(t), cu = m.resolve(u);
    std::map<uint32_t, Rat> pu = masses_of(m, cu);
    std::map<std::pair<uint32_t, uint32_t>, Rat> psu, ptu;
    std::map<std::tuple<uint32_t, uint32_t, uint32_t>, Rat> pstu;
    for (size_t i = 0; i < m.atom_count(); ++i) {
        const Rat& p = m.space().atoms[i];
        if (p == 0) continue;
        psu[{cs[i], cu[i]}] += p;
        ptu[{ct[i], cu[i]}] += p;
        pstu[{cs[i], ct[i], cu[i]}] += p;
    }
    // P(s,t|u) = P(s|u) P(t|u) for every positive-mass u, i.e.
    // P(s,t,u) * P(u) = P(s,u) * P(t,u)
    for (const auto& [su, p_su] : psu)
        for (const auto& [tu, p_tu] : ptu) {
            if (su.second != tu.second) continue;
            auto it = pstu.find({su.first, tu.first, su.second});
            Rat p3 = it == pstu.end() ? Rat(0) : it->second;
            if (p3 * pu.at(su.second) != p_su * p_tu) return false;
        }
    return true;
}

bool is_function_of(const FiniteModel& m, const Term& s, const Term& t) {
    auto cs = m.resolve(s), ct = m.resolve(t);
    std::map<uint32_t, uint32_t> image;
    for (size_t i = 0; i < m.atom_count(); ++i) {
        if (m.space().atoms[i] == 0) continue;
        auto [it, fresh] = image.try_emplace(ct[i], cs[i]);
        if (!fresh && it->second != cs[i]) return false;
    }
    return true;
}

bool relabel_equal(const FiniteModel& m, const Term& s, const Term& t) {
    return is_function_of(m, s, t) && is_function_of(m, t, s);
}

bool same_dist_relabel(const FiniteModel& m, const Term& s, const Term& t) {
    auto a = m.distribution(s), b = m.distribution(t);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

// ---------------------------------------------------------------------------
// Conditional-kernel alignment up to relabelling

namespace {

struct Kernel {
    // rows: conditioning class -> (mass of class, value -> conditional mass)
    std::vector<Rat> row_mass;
    std::vector<std::map<uint32_t, Rat>> rows;
    size_t value_count = 0;
};

Kernel kernel_of(const FiniteModel& m, const std::vector<Term>& cond, const Term& target) {
    std::vector<Term> parts = cond;
    std::vector<uint32_t> cc;
    if (parts.empty()) {
        cc.assign(m.atom_count(), 0);
    } else {
        Term joined = parts.size() == 1 ? parts[0] : Term::join(parts);
        cc = m.resolve(joined);
    }
    auto tv = m.resolve(target);
    std::map<uint32_t, uint32_t> cond_ids;
    std::map<uint32_t, uint32_t> val_ids;
    Kernel k;
    for (size_t i = 0; i < m.atom_count(); ++i) {
        const Rat& p = m.space().atoms[i];
        if (p == 0) continue;
        auto [cit, cfresh] = cond_ids.try_emplace(cc[i], static_cast<uint32_t>(cond_ids.size()));
        if (cfresh) {
            k.row_mass.push_back(0);
            k.rows.emplace_back();
        }
        auto [vit, vfresh] = val_ids.try_emplace(tv[i], static_cast<uint32_t>(val_ids.size()));
        k.row_mass[cit->second] += p;
        k.rows[cit->second][vit->second] += p;
    }
    for (size_t r = 0; r < k.rows.size(); ++r)
        for (auto& [v, p] : k.rows[r]) p /= k.row_mass[r];
    k.value_count = val_ids.size();
    return k;
}

// DFS over injective value maps consistent with matching row pairs.
bool align_values(const std::vector<std::pair<size_t, size_t>>& row_pairs, const Kernel& a,
                  const Kernel& b, std::map<uint32_t, uint32_t>& vmap,
                  std::vector<bool>& used, size_t pair_idx) {
    if (pair_idx == row_pairs.size()) return true;
    auto [ra, rb] = row_pairs[pair_idx];
    const auto& rowa = a.rows[ra];
    const auto& rowb = b.rows[rb];
    if (rowa.size() != rowb.size()) return false;
    // assign images for this row's values consistent with vmap
    std::vector<std::pair<uint32_t, Rat>> todo;
    std::map<uint32_t, Rat> remaining(rowb.begin(), rowb.end());
    for (const auto& [v, p] : rowa) {
        auto it = vmap.find(v);
        if (it != vmap.end()) {
            auto jt = remaining.find(it->second);
            if (jt == remaining.end() || jt->second != p) return false;
            remaining.erase(jt);
        } else {
            todo.push_back({v, p});
        }
    }
    // match unassigned values by backtracking
    std::function<bool(size_t)> go = [&](size_t idx) -> bool {
        if (idx == todo.size()) return align_values(row_pairs, a, b, vmap, used, pair_idx + 1);
        auto [v, p] = todo[idx];
        std::vector<uint32_t> cands;
        for (const auto& [w, q] : remaining)
            if (q == p && !used[w]) cands.push_back(w);
        for (uint32_t w : cands) {
            vmap[v] = w;
            used[w] = true;
            remaining.erase(w);
            if (go(idx + 1)) return true;
            remaining[w] = p;
            used[w] = false;
            vmap.erase(v);
        }
        return false;
    };
    return go(0);
}

bool align_rows(const Kernel& a, const Kernel& b, std::vector<size_t>& assign,
                std::vector<bool>& taken, size_t ra) {
    if (ra == a.rows.size()) {
        std::vector<std::pair<size_t, size_t>> pairs;
        for (size_t i = 0; i < assign.size(); ++i) pairs.push_back({i, assign[i]});
        std::map<uint32_t, uint32_t> vmap;
        std::vector<bool> used(b.value_count, false);
        return align_values(pairs, a, b, vmap, used, 0);
    }
    for (size_t rb = 0; rb < b.rows.size(); ++rb) {
        if (taken[rb]) continue;
        if (a.rows[ra].size() != b.rows[rb].size()) continue;
        // conditional mass multisets must match
        std::vector<Rat> ma, mb;
        for (const auto& [v, p] : a.rows[ra]) ma.push_back(p);
        for (const auto& [v, p] : b.rows[rb]) mb.push_back(p);
        std::sort(ma.begin(), ma.end());
        std::sort(mb.begin(), mb.end());
        if (ma != mb) continue;
        taken[rb] = true;
        assign[ra] = rb;
        if (align_rows(a, b, assign, taken, ra + 1)) return true;
        taken[rb] = false;
    }
    return false;
}

}  // namespace

bool cond_dist_relabel(const FiniteModel& m, const std::vector<Term>& lhs_cond,
                       const Term& lhs_target, const std::vector<Term>& rhs_cond,
                       const Term& rhs_target, size_t support_cap) {
    Kernel a = kernel_of(m, lhs_cond, lhs_target);
    Kernel b = kernel_of(m, rhs_cond, rhs_target);
    if (a.rows.size() > support_cap || b.rows.size() > support_cap ||
        a.value_count > support_cap || b.value_count > support_cap)
        throw error("cond_dist_relabel: support exceeds the bijection-search cap of " +
                    std::to_string(support_cap));
    if (a.rows.size() > b.rows.size()) return false;
    std::vector<size_t> assign(a.rows.size());
    std::vector<bool> taken(b.rows.size(), false);
    return align_rows(a, b, assign, taken, 0);
}

// ---------------------------------------------------------------------------

FiniteModel refine(const FiniteModel& m, size_t k) {
    if (k < 1) throw error("refine: factor must be >= 1");
    if (k == 1) return m;
    FiniteSpace sp;
    for (const auto& p : m.space().atoms)
        for (size_t j = 0; j < k; ++j) sp.atoms.push_back(p / static_cast<int>(k));
    std::map<std::string, std::vector<uint32_t>> vars;
    for (const auto& [name, labels] : m.vars()) {
        std::vector<uint32_t> nl;
        nl.reserve(labels.size() * k);
        for (auto v : labels)
            for (size_t j = 0; j < k; ++j) nl.push_back(v);
        vars[name] = std::move(nl);
    }
    return FiniteModel(std::move(sp), std::move(vars));
}

FiniteModel adjoin(const FiniteModel& m, const std::string& name,
                   const std::vector<std::vector<Rat>>& kernel) {
    if (m.has_var(name)) throw error("adjoin: variable already present: " + name);
    if (kernel.size() != m.atom_count()) throw error("adjoin: kernel must have one row per atom");
    for (const auto& row : kernel) {
        Rat s = 0;
        for (const auto& p : row) {
            if (p < 0) throw error("adjoin: negative kernel entry");
            s += p;
        }
        if (s != 1) throw error("adjoin: kernel row sums to " + rat_str(s) + ", not 1");
    }
    FiniteSpace sp;
    std::map<std::string, std::vector<uint32_t>> vars;
    for (const auto& [vn, labels] : m.vars()) vars[vn] = {};
    std::vector<uint32_t> newlab;
    for (size_t i = 0; i < m.atom_count(); ++i) {
        for (size_t v = 0; v < kernel[i].size(); ++v) {
            Rat p = m.space().atoms[i] * kernel[i][v];
            if (p == 0) continue;
            sp.atoms.push_back(p);
            for (auto& [vn, labels] : vars) labels.push_back(m.labels(vn)[i]);
            newlab.push_back(static_cast<uint32_t>(v));
        }
    }
    vars[name] = std::move(newlab);
    return FiniteModel(std::move(sp), std::move(vars));
}

FiniteModel adjoin_independent(const FiniteModel& m, const std::string& name,
                               const std::vector<Rat>& pmf) {
    std::vector<std::vector<Rat>> kernel(m.atom_count(), pmf);
    return adjoin(m, name, kernel);
}

// ---------------------------------------------------------------------------

FiniteModel model_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw error(std::string("model JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("space") || !j.contains("vars"))
        throw error("model JSON: expected an object with 'space' and 'vars'");
    FiniteSpace sp;
    for (const auto& p : j.at("space")) {
        if (p.is_string()) sp.atoms.push_back(rat_parse(p.get<std::string>()));
        else if (p.is_number_integer()) sp.atoms.push_back(Rat(p.get<long long>()));
        else throw error("model JSON: masses must be rational strings");
    }
    std::map<std::string, std::vector<uint32_t>> vars;
    for (const auto& [name, arr] : j.at("vars").items()) {
        std::vector<uint32_t> labels;
        for (const auto& v : arr) {
            if (!v.is_number_unsigned() && !v.is_number_integer())
                throw error("model JSON: labels must be nonnegative integers");
            long long x = v.get<long long>();
            if (x < 0) throw error("model JSON: labels must be nonnegative");
            labels.push_back(static_cast<uint32_t>(x));
        }
        vars[name] = std::move(labels);
    }
    return FiniteModel(std::move(sp), std::move(vars));
}

std::string model_to_json(const FiniteModel& m) {
    nlohmann::json j;
    j["space"] = nlohmann::json::array();
    for (const auto& p : m.space().atoms) j["space"].push_back(rat_str(p));
    j["vars"] = nlohmann::json::object();
    for (const auto& [name, labels] : m.vars()) j["vars"][name] = labels;
    return j.dump();
}

}  // namespace fotpi
