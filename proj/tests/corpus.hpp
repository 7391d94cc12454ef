#pragma once

// Shared test corpus: small finite models over equiprobable spaces.

#include <string>
#include <vector>

#include "fotpi/model.hpp"

namespace fotpi::testing {

inline FiniteSpace equiprobable(size_t m) {
    FiniteSpace sp;
    for (size_t i = 0; i < m; ++i) sp.atoms.push_back(Rat(1, static_cast<int>(m)));
    return sp;
}

inline FiniteModel bern(const std::string& name, const Rat& p1) {
    FiniteSpace sp;
    sp.atoms = {1 - p1, p1};
    return FiniteModel(sp, {{name, {0, 1}}});
}

inline FiniteModel unif_model(const std::string& name, size_t n) {
    FiniteSpace sp = equiprobable(n);
    std::vector<uint32_t> labels;
    for (size_t i = 0; i < n; ++i) labels.push_back(static_cast<uint32_t>(i));
    return FiniteModel(sp, {{name, labels}});
}

/// X, Y independent fair bits and Z = X xor Y on four equiprobable atoms.
inline FiniteModel xor_triple() {
    return FiniteModel(equiprobable(4), {{"X", {0, 0, 1, 1}},
                                         {"Y", {0, 1, 0, 1}},
                                         {"Z", {0, 1, 1, 0}}});
}

/// Enumerates label vectors atoms -> {0..maxval} in lexicographic order.
inline std::vector<std::vector<uint32_t>> all_labelings(size_t atoms, uint32_t maxval) {
    std::vector<std::vector<uint32_t>> out;
    std::vector<uint32_t> cur(atoms, 0);
    while (true) {
        out.push_back(cur);
        size_t i = 0;
        while (i < atoms && cur[i] == maxval) cur[i++] = 0;
        if (i == atoms) break;
        ++cur[i];
    }
    return out;
}

/// All models on <= max_atoms equiprobable atoms with the given variable
/// names, each taking values <= maxval.
inline std::vector<FiniteModel> small_corpus(size_t max_atoms,
                                             const std::vector<std::string>& names,
                                             uint32_t maxval) {
    std::vector<FiniteModel> out;
    for (size_t m = 1; m <= max_atoms; ++m) {
        auto labelings = all_labelings(m, maxval);
        std::vector<size_t> idx(names.size(), 0);
        while (true) {
            std::map<std::string, std::vector<uint32_t>> vars;
            for (size_t i = 0; i < names.size(); ++i) vars[names[i]] = labelings[idx[i]];
            out.push_back(FiniteModel(equiprobable(m), std::move(vars)));
            size_t i = 0;
            while (i < idx.size() && idx[i] + 1 == labelings.size()) idx[i++] = 0;
            if (i == idx.size()) break;
            ++idx[i];
        }
    }
    return out;
}

}  // namespace fotpi::testing
