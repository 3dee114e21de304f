#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "cayley/errors.hpp"
#include "cayley/word.hpp"

namespace cayley {

inline constexpr std::size_t kDefaultVertexCap = 10'000'000;

/// Vertex cap for ball enumeration; CAYLEY_MAX_VERTICES overrides the default.
inline std::size_t vertex_cap() {
    if (const char* env = std::getenv("CAYLEY_MAX_VERTICES")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultVertexCap;
}

/// |V_n| = 1 + sum_{m=1..n} (k+1) k^{m-1}, saturating at SIZE_MAX.
inline std::size_t ball_size(int k, int radius) {
    long double total = 1, sphere = k + 1;
    for (int m = 1; m <= radius; ++m) {
        total += sphere;
        sphere *= k;
        if (total > 1e18L) return SIZE_MAX;
    }
    return static_cast<std::size_t>(total);
}

/// V_n split into spheres W_0..W_n. Each sphere is in lexicographic order.
struct Ball {
    int k = 1;
    int radius = 0;
    std::vector<std::vector<Word>> spheres;

    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& s : spheres) n += s.size();
        return n;
    }

    /// All vertices in shortlex order.
    std::vector<Word> vertices() const {
        std::vector<Word> out;
        out.reserve(size());
        for (const auto& s : spheres) out.insert(out.end(), s.begin(), s.end());
        return out;
    }
};

inline Ball enumerate_ball(int k, int radius, std::size_t cap = vertex_cap()) {
    check_order(k);
    if (radius < 0) throw InvalidArgument("radius must be non-negative");
    if (std::size_t need = ball_size(k, radius); need > cap) {
        throw ResourceLimit("ball of radius " + std::to_string(radius) + " for k=" +
                            std::to_string(k) + " exceeds the vertex cap of " +
                            std::to_string(cap));
    }
    Ball ball{k, radius, {}};
    ball.spheres.reserve(static_cast<std::size_t>(radius) + 1);
    ball.spheres.push_back({Word{}});
    for (int m = 1; m <= radius; ++m) {
        std::vector<Word> next;
        next.reserve(ball.spheres.back().size() * static_cast<std::size_t>(m == 1 ? k + 1 : k));
        for (const Word& x : ball.spheres.back()) {
            for (Word& y : successors(x, k)) next.push_back(std::move(y));
        }
        ball.spheres.push_back(std::move(next));
    }
    return ball;
}

} // namespace cayley
