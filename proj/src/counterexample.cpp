// Small-model search: enumerate spaces with masses on a rational grid and
// variables as canonical partitions, then test the implication by exact or
// bounded evaluation. Deterministic order, with an optional seeded shuffle
// and chunked parallel scanning that keeps the lowest-index hit.

#include <algorithm>
#include <atomic>
#include <functional>
#include <random>
#include <set>
#include <thread>

#include "fotpi/eval.hpp"

namespace fotpi {

namespace {

// mass multisets (nonincreasing) from the 1/q grid, q <= denominator
std::vector<std::vector<Rat>> grid_spaces(unsigned denominator, size_t max_atoms) {
    std::set<Rat> gridset;
    for (unsigned q = 1; q <= denominator; ++q)
        for (unsigned p = 1; p <= q; ++p) gridset.insert(Rat(p, q));
    std::vector<Rat> grid(gridset.rbegin(), gridset.rend());  // descending
    std::vector<std::vector<Rat>> out;
    std::vector<Rat> cur;
    std::function<void(size_t, Rat)> go = [&](size_t start, Rat remaining) {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        if (cur.size() >= max_atoms) return;
        for (size_t i = start; i < grid.size(); ++i) {
            if (grid[i] > remaining) continue;
            cur.push_back(grid[i]);
            go(i, remaining - grid[i]);
            cur.pop_back();
        }
    };
    go(0, Rat(1));
    return out;
}

// canonical partitions (restricted growth strings) of the atoms, <= maxv parts
std::vector<std::vector<uint32_t>> partitions(size_t atoms, uint32_t maxv) {
    std::vector<std::vector<uint32_t>> out;
    std::vector<uint32_t> cur(atoms, 0);
    while (true) {
        out.push_back(cur);
        size_t i = atoms;
        bool advanced = false;
        while (i-- > 1) {
            uint32_t prefix_max = 0;
            for (size_t j = 0; j < i; ++j) prefix_max = std::max(prefix_max, cur[j]);
            if (cur[i] < std::min(prefix_max + 1, maxv - 1)) {
                ++cur[i];
                for (size_t j = i + 1; j < atoms; ++j) cur[j] = 0;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

}  // namespace

std::optional<FiniteModel> find_counterexample(const std::vector<FormulaPtr>& antecedents,
                                               const FormulaPtr& consequent,
                                               const SearchParams& params,
                                               const Budget& budget) {
    std::set<std::string> varset;
    for (const auto& f : antecedents)
        for (const auto& v : free_vars(f)) varset.insert(v);
    for (const auto& v : free_vars(consequent)) varset.insert(v);
    std::vector<std::string> vars(varset.begin(), varset.end());

    // independence statements only see variables through their partitions, so
    // per-variable canonical labelings cover all models up to relabelling
    std::vector<FiniteModel> models;
    for (const auto& masses : grid_spaces(params.denominator, params.max_atoms)) {
        FiniteSpace sp;
        sp.atoms = masses;
        auto parts = partitions(masses.size(), params.max_values);
        std::vector<size_t> idx(vars.size(), 0);
        while (true) {
            std::map<std::string, std::vector<uint32_t>> vm;
            for (size_t i = 0; i < vars.size(); ++i) vm[vars[i]] = parts[idx[i]];
            models.push_back(FiniteModel(sp, std::move(vm)));
            if (models.size() > params.max_models)
                throw error("find_counterexample: model enumeration exceeds max_models");
            size_t i = 0;
            while (i < idx.size() && idx[i] + 1 == parts.size()) idx[i++] = 0;
            if (i == idx.size()) break;
            ++idx[i];
        }
    }
    if (params.seed != 0) {
        std::mt19937 rng(params.seed);
        std::shuffle(models.begin(), models.end(), rng);
    }

    auto is_hit = [&](const FiniteModel& m) {
        for (const auto& a : antecedents)
            if (eval(a, m, EvalMode::Bounded, budget).verdict != Verdict::True_) return false;
        return eval(consequent, m, EvalMode::Bounded, budget).verdict == Verdict::False_;
    };

    unsigned jobs = std::max(1u, params.jobs);
    if (jobs == 1) {
        for (const auto& m : models)
            if (is_hit(m)) return m;
        return std::nullopt;
    }

    std::atomic<size_t> best{models.size()};
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) {
        threads.emplace_back([&, t] {
            for (size_t i = t; i < models.size(); i += jobs) {
                if (i >= best.load()) break;
                if (is_hit(models[i])) {
                    size_t cur = best.load();
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {
                    }
                    break;
                }
            }
        });
    }
    for (auto& th : threads) th.join();
    if (best.load() < models.size()) return models[best.load()];
    return std::nullopt;
}

}  // namespace fotpi
