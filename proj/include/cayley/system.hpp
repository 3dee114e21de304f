#pragma once

// Weakly periodic equation systems. A field h is K-weakly periodic when h_x
// depends only on (class of x, class of x_↓). Compatibility then reduces to
// one equation per reachable state (i, j):
//
//     h_(i,j) = sum over successor states (i', i) of  count * f(h_(i',i))
//
// where count is the number of successors of any x in that state which land
// in class i'. The counts are well defined only when the invariance property
// holds, so derivation re-counts over several representatives per state.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cayley/errors.hpp"
#include "cayley/subgroup.hpp"
#include "cayley/word.hpp"

namespace cayley {

struct StatePair {
    int cls = 0;     // class of x
    int parent = 0;  // class of x_↓

    friend auto operator<=>(const StatePair&, const StatePair&) = default;
};

inline std::string to_string(const StatePair& p) {
    return std::to_string(p.cls) + "," + std::to_string(p.parent);
}

struct SystemCertificate {
    int radius = 0;                     // deepest level explored
    std::size_t min_representatives = 0;
    std::size_t total_representatives = 0;
};

struct WeaklyPeriodicSystem {
    SubgroupSpec spec;
    int k = 0;
    std::vector<StatePair> states;            // sorted
    std::vector<std::vector<int>> counts;     // counts[row][col] over states
    SystemCertificate certificate;

    std::size_t size() const noexcept { return states.size(); }

    std::size_t index_of(StatePair p) const {
        auto it = std::lower_bound(states.begin(), states.end(), p);
        if (it == states.end() || *it != p) {
            throw InvalidArgument("state (" + to_string(p) + ") is not part of the system");
        }
        return static_cast<std::size_t>(it - states.begin());
    }

    int count(StatePair from, StatePair to) const { return counts[index_of(from)][index_of(to)]; }
};

struct DeriveOptions {
    int radius = -1;                 // -1: 4s + 4
    std::size_t per_state_per_level = 32;
    std::size_t min_representatives = 3;
};

/// Breadth-first derivation of the weakly periodic system of a singleton spec.
/// Throws ComputationError when a state's counts depend on the representative.
inline WeaklyPeriodicSystem derive_system(const SubgroupSpec& spec, DeriveOptions opt = {}) {
    if (!spec.singleton()) {
        throw InvalidArgument("system derivation requires |A1| = |A2| = 1; the invariance property fails otherwise");
    }
    if (spec.k < 2) throw InvalidArgument("system derivation requires k >= 2");
    const int radius = opt.radius < 0 ? 4 * spec.s + 4 : opt.radius;

    struct Node {
        Word word;
        int cls;
    };
    std::map<StatePair, std::map<StatePair, int>> rows;
    std::map<StatePair, std::size_t> reps;

    auto row_of = [&](const Node& x) {
        std::map<StatePair, int> row;
        for (int i = 1; i <= spec.k + 1; ++i) {
            if (!x.word.is_identity() && x.word.last() == i) continue;
            ++row[{label_residue(x.word.times(static_cast<Letter>(i)), spec), x.cls}];
        }
        return row;
    };

    std::vector<Node> frontier{{Word{}, 0}};
    int depth = 0;
    for (; depth < radius && !frontier.empty(); ++depth) {
        std::vector<Node> next;
        std::map<StatePair, std::size_t> kept;
        for (const Node& x : frontier) {
            for (int i = 1; i <= spec.k + 1; ++i) {
                if (!x.word.is_identity() && x.word.last() == i) continue;
                Node y{x.word.times(static_cast<Letter>(i)), 0};
                y.cls = label_residue(y.word, spec);
                StatePair st{y.cls, x.cls};
                if (kept[st]++ >= opt.per_state_per_level) continue;

                auto row = row_of(y);
                auto [it, inserted] = rows.try_emplace(st, row);
                if (!inserted && it->second != row) {
                    throw ComputationError("successor counts of state (" + to_string(st) +
                                           ") depend on the representative (" + to_string(y.word) +
                                           "); the system is not well defined");
                }
                ++reps[st];
                next.push_back(std::move(y));
            }
        }
        frontier = std::move(next);
    }

    WeaklyPeriodicSystem sys;
    sys.spec = spec;
    sys.k = spec.k;
    for (const auto& [st, row] : rows) {
        sys.states.push_back(st);
        for (const auto& [to, n] : row) {
            if (!rows.contains(to)) {
                throw ComputationError("successor state (" + to_string(to) + ") was never reached as a state");
            }
        }
    }
    sys.counts.assign(sys.states.size(), std::vector<int>(sys.states.size(), 0));
    for (std::size_t r = 0; r < sys.states.size(); ++r) {
        for (const auto& [to, n] : rows.at(sys.states[r])) sys.counts[r][sys.index_of(to)] = n;
    }

    sys.certificate.radius = depth;
    sys.certificate.min_representatives = SIZE_MAX;
    for (const auto& [st, n] : reps) {
        sys.certificate.min_representatives = std::min(sys.certificate.min_representatives, n);
        sys.certificate.total_representatives += n;
    }
    if (sys.certificate.min_representatives < opt.min_representatives) {
        throw ComputationError("fewer than " + std::to_string(opt.min_representatives) +
                               " representatives found for some state; raise the radius");
    }
    return sys;
}

/// Coefficient table of the nine-state Ising system for A1={1}, A2={2}, s=1,
/// states ordered (0,0),(0,1),(0,2),(1,0),...,(2,2) = h_1..h_9.
inline std::vector<std::vector<int>> reference_table(int k) {
    const int a = k - 2, b = k - 1;
    // columns:       h1 h2 h3 h4 h5 h6 h7 h8 h9
    return {
        {a, 0, 0, 1, 0, 0, 1, 0, 0},  // h1 = (k-2)f(h1) + f(h4) + f(h7)
        {b, 0, 0, 0, 0, 0, 1, 0, 0},  // h2 = (k-1)f(h1) + f(h7)
        {b, 0, 0, 1, 0, 0, 0, 0, 0},  // h3 = (k-1)f(h1) + f(h4)
        {0, 0, 0, 0, b, 0, 0, 1, 0},  // h4 = (k-1)f(h5) + f(h8)
        {0, 1, 0, 0, a, 0, 0, 1, 0},  // h5 = (k-2)f(h5) + f(h2) + f(h8)
        {0, 1, 0, 0, b, 0, 0, 0, 0},  // h6 = (k-1)f(h5) + f(h2)
        {0, 0, 0, 0, 0, 1, 0, 0, b},  // h7 = (k-1)f(h9) + f(h6)
        {0, 0, 1, 0, 0, 0, 0, 0, b},  // h8 = (k-1)f(h9) + f(h3)
        {0, 0, 1, 0, 0, 1, 0, 0, a},  // h9 = (k-2)f(h9) + f(h6) + f(h3)
    };
}

inline bool is_reference_spec(const SubgroupSpec& spec) {
    return spec.s == 1 && spec.A1 == std::vector<int>{1} && spec.A2 == std::vector<int>{2};
}

/// Exact comparison of a derived system with the nine-equation reference table.
inline bool compare_with_reference(const WeaklyPeriodicSystem& sys) {
    if (!is_reference_spec(sys.spec)) {
        throw InvalidArgument("no reference table for this spec (need s=1, A1={1}, A2={2})");
    }
    if (sys.states.size() != 9) return false;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (sys.states[static_cast<std::size_t>(3 * i + j)] != StatePair{i, j}) return false;
        }
    }
    return sys.counts == reference_table(sys.k);
}

} // namespace cayley
