#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include "errors.hpp"

// Collective basis states of N identical atoms under perfect Rydberg
// blockade (at most one atom in the Rydberg level).

namespace adpass {

enum class LevelScheme { two_level, three_level };   // {g,r} or {g,e,r}
enum class Representation { full, symmetric };

// permutation-symmetric states are labelled by occupation numbers
struct SymOccupation {
    int n_e = 0;
    int n_r = 0;  // 0 or 1
};

struct BlockadedBasis {
    int n_atoms = 1;
    LevelScheme scheme = LevelScheme::three_level;
    Representation rep = Representation::full;
    // full representation: one string per state, characters over {g,e,r}
    std::vector<std::string> labels;
    // symmetric representation: occupations, parallel to labels
    std::vector<SymOccupation> occupations;

    int dim() const { return static_cast<int>(labels.size()); }
    int index_of(const std::string& label) const {
        auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end()) throw ConfigError("unknown basis label: " + label);
        return static_cast<int>(it - labels.begin());
    }
};

namespace detail {
// lexicographic rank with g < e < r
inline int level_rank(char c) {
    switch (c) {
        case 'g': return 0;
        case 'e': return 1;
        case 'r': return 2;
    }
    throw ConfigError(std::string("unknown level label: ") + c);
}
inline bool label_less(const std::string& a, const std::string& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return level_rank(a[i]) < level_rank(b[i]);
    return false;
}
}  // namespace detail

inline BlockadedBasis build_basis(int n_atoms, LevelScheme scheme, Representation rep) {
    BlockadedBasis basis{n_atoms, scheme, rep, {}, {}};
    if (rep == Representation::full) {
        if (n_atoms < 1 || n_atoms > 12)
            throw CapacityError("full representation supports 1..12 atoms");
        std::string levels = scheme == LevelScheme::three_level ? "ger" : "gr";
        std::vector<std::string> states{""};
        for (int a = 0; a < n_atoms; ++a) {
            std::vector<std::string> next;
            for (const auto& s : states)
                for (char l : levels) {
                    if (l == 'r' && s.find('r') != std::string::npos) continue;
                    next.push_back(s + l);
                }
            states = std::move(next);
        }
        std::sort(states.begin(), states.end(), detail::label_less);
        basis.labels = std::move(states);
    } else {
        if (n_atoms < 1 || n_atoms > 100)
            throw CapacityError("symmetric representation supports 1..100 atoms");
        if (scheme == LevelScheme::three_level) {
            for (int ne = 0; ne <= n_atoms; ++ne)
                basis.occupations.push_back({ne, 0});
            for (int ne = 0; ne < n_atoms; ++ne)
                basis.occupations.push_back({ne, 1});
        } else {
            basis.occupations.push_back({0, 0});
            basis.occupations.push_back({0, 1});
        }
        for (const auto& occ : basis.occupations)
            basis.labels.push_back("e" + std::to_string(occ.n_e) + "r" +
                                   std::to_string(occ.n_r));
    }
    return basis;
}

struct CollectiveState {
    Eigen::VectorXcd amplitudes;
    double norm_tolerance = 1e-8;

    bool normalized() const {
        return std::abs(amplitudes.norm() - 1.0) <= norm_tolerance;
    }
};

inline CollectiveState ground_state(const BlockadedBasis& basis) {
    CollectiveState s;
    s.amplitudes = Eigen::VectorXcd::Zero(basis.dim());
    s.amplitudes(0) = 1.0;  // all-g state sorts first in both representations
    return s;
}

// equal-amplitude normalized superposition of all permutations with the given
// occupation, expressed on the *full* basis
inline CollectiveState symmetric_state(const BlockadedBasis& full_basis, int n_g, int n_e,
                                       int n_r) {
    if (full_basis.rep != Representation::full)
        throw ConfigError("symmetric_state expects a full-representation basis");
    if (n_g + n_e + n_r != full_basis.n_atoms)
        throw ConfigError("occupation numbers must sum to the atom count");
    if (n_r > 1) throw ConfigError("blockade forbids more than one Rydberg excitation");
    CollectiveState s;
    s.amplitudes = Eigen::VectorXcd::Zero(full_basis.dim());
    int hits = 0;
    for (int i = 0; i < full_basis.dim(); ++i) {
        const auto& label = full_basis.labels[i];
        int g = static_cast<int>(std::count(label.begin(), label.end(), 'g'));
        int e = static_cast<int>(std::count(label.begin(), label.end(), 'e'));
        int r = static_cast<int>(std::count(label.begin(), label.end(), 'r'));
        if (g == n_g && e == n_e && r == n_r) {
            s.amplitudes(i) = 1.0;
            ++hits;
        }
    }
    if (hits == 0) throw ConfigError("no basis states with requested occupation");
    s.amplitudes /= std::sqrt(static_cast<double>(hits));
    return s;
}

// project a full-space state onto the symmetric subspace; returns the
// symmetric amplitudes and the squared norm lost outside the subspace
inline std::pair<CollectiveState, double> project_to_symmetric(
    const CollectiveState& state, const BlockadedBasis& full_basis,
    const BlockadedBasis& sym_basis) {
    if (full_basis.rep != Representation::full || sym_basis.rep != Representation::symmetric)
        throw ConfigError("project_to_symmetric expects (full, symmetric) bases");
    if (full_basis.n_atoms != sym_basis.n_atoms || full_basis.scheme != sym_basis.scheme)
        throw DimensionError("bases must share atom count and level scheme");
    if (state.amplitudes.size() != full_basis.dim())
        throw DimensionError("state dimension does not match basis");

    CollectiveState sym;
    sym.amplitudes = Eigen::VectorXcd::Zero(sym_basis.dim());
    for (int k = 0; k < sym_basis.dim(); ++k) {
        const auto& occ = sym_basis.occupations[k];
        int n_g = full_basis.n_atoms - occ.n_e - occ.n_r;
        CollectiveState basis_vec = symmetric_state(full_basis, n_g, occ.n_e, occ.n_r);
        sym.amplitudes(k) = basis_vec.amplitudes.dot(state.amplitudes);
    }
    double leakage = state.amplitudes.squaredNorm() - sym.amplitudes.squaredNorm();
    return {sym, leakage};
}

// indices of basis states carrying a Rydberg excitation (used for P1 readout)
inline std::vector<int> rydberg_indices(const BlockadedBasis& basis) {
    std::vector<int> idx;
    for (int i = 0; i < basis.dim(); ++i) {
        bool ryd = basis.rep == Representation::full
                       ? basis.labels[i].find('r') != std::string::npos
                       : basis.occupations[i].n_r == 1;
        if (ryd) idx.push_back(i);
    }
    return idx;
}

}  // namespace adpass
