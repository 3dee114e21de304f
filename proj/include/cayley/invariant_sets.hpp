#pragma once

// Coordinate-equality subspaces of R^9 preserved by the nine-state operator.
// Coordinates follow h_1..h_9 = states (0,0),(0,1),...,(2,2).

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cayley/errors.hpp"
#include "cayley/ising.hpp"

namespace cayley {

enum class InvariantSetId { I0, I1, I2, I3, I4, I5 };

inline constexpr std::array<InvariantSetId, 6> kAllInvariantSets{
    InvariantSetId::I0, InvariantSetId::I1, InvariantSetId::I2,
    InvariantSetId::I3, InvariantSetId::I4, InvariantSetId::I5};

inline std::string_view name(InvariantSetId id) {
    static constexpr std::array<std::string_view, 6> names{"I0", "I1", "I2", "I3", "I4", "I5"};
    return names[static_cast<std::size_t>(id)];
}

inline InvariantSetId parse_invariant_set(std::string_view s) {
    for (InvariantSetId id : kAllInvariantSets) {
        if (name(id) == s) return id;
    }
    throw InvalidArgument("unknown invariant set '" + std::string(s) + "'");
}

/// I3..I5 are invariant only for k = 2.
inline bool valid_for(InvariantSetId id, int k) {
    if (k < 2) return false;
    return static_cast<int>(id) <= 2 || k == 2;
}

/// Equality blocks of the pattern as 0-based coordinates; every coordinate
/// appears in exactly one block. Singletons are free coordinates.
inline std::vector<std::vector<int>> blocks(InvariantSetId id) {
    switch (id) {
        case InvariantSetId::I0: return {{0, 1, 2, 3, 4, 5, 6, 7, 8}};
        // h1=h2=h4=h5, h3=h6, h7=h8
        case InvariantSetId::I1: return {{0, 1, 3, 4}, {2, 5}, {6, 7}, {8}};
        // h2=h3, h4=h7, h5=h6=h8=h9
        case InvariantSetId::I2: return {{0}, {1, 2}, {3, 6}, {4, 5, 7, 8}};
        // h1=h6=h8, h2=h3=h4=h5=h7=h9
        case InvariantSetId::I3: return {{0, 5, 7}, {1, 2, 3, 4, 6, 8}};
        // h1=h2=h4=h6=h8=h9, h3=h5=h7
        case InvariantSetId::I4: return {{0, 1, 3, 5, 7, 8}, {2, 4, 6}};
        // h1=h3=h5=h6=h7=h8, h2=h4=h9
        case InvariantSetId::I5: return {{0, 2, 4, 5, 6, 7}, {1, 3, 8}};
    }
    throw InvalidArgument("unknown invariant set");
}

/// Whether h satisfies every equality of the pattern within eps.
inline bool contains(InvariantSetId id, const FieldVector& h, double eps) {
    if (h.size() != 9) return false;
    for (const auto& b : blocks(id)) {
        for (int c : b) {
            if (std::abs(h[static_cast<std::size_t>(c)] - h[static_cast<std::size_t>(b.front())]) > eps) return false;
        }
    }
    return true;
}

/// h = C f(h) restricted to one coordinate per block.
struct ReducedSystem {
    InvariantSetId id;
    std::vector<std::vector<int>> blocks;
    CountMatrix coefficients;  // block x block

    std::size_t size() const noexcept { return blocks.size(); }

    FieldVector lift(const FieldVector& reduced) const {
        if (reduced.size() != blocks.size()) throw InvalidArgument("reduced field has the wrong dimension");
        FieldVector full{std::vector<double>(9, 0.0)};
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            for (int c : blocks[b]) full[static_cast<std::size_t>(c)] = reduced[b];
        }
        return full;
    }
};

/// Restricts a nine-state count matrix to an invariant set. The pattern is
/// certified exactly: every coordinate of a block must receive the same
/// integer coefficients over the blocks, otherwise ComputationError.
inline ReducedSystem restrict_pattern(const CountMatrix& counts, InvariantSetId id) {
    if (counts.size() != 9) throw InvalidArgument("invariant sets are defined for the nine-state system");
    ReducedSystem red{id, blocks(id), {}};
    const std::size_t nb = red.blocks.size();

    auto block_row = [&](int coord) {
        std::vector<int> row(nb, 0);
        for (std::size_t b = 0; b < nb; ++b) {
            for (int c : red.blocks[b]) row[b] += counts[static_cast<std::size_t>(coord)][static_cast<std::size_t>(c)];
        }
        return row;
    };

    for (const auto& b : red.blocks) {
        std::vector<int> row = block_row(b.front());
        for (int c : b) {
            if (block_row(c) != row) {
                throw ComputationError(std::string(name(id)) + " is not invariant: coordinate h" +
                                       std::to_string(c + 1) + " and h" + std::to_string(b.front() + 1) +
                                       " receive different reduced equations");
            }
        }
        red.coefficients.push_back(std::move(row));
    }
    return red;
}

inline ReducedSystem restrict_to_invariant_set(const CountMatrix& counts, int k, InvariantSetId id) {
    if (!valid_for(id, k)) {
        throw InvalidArgument(std::string(name(id)) + " is not an invariant set for k = " + std::to_string(k));
    }
    return restrict_pattern(counts, id);
}

} // namespace cayley
