#pragma once

// Finite-volume Ising distributions on V_n and the compatibility check
//     sum over omega in {-1,1}^{W_n} of mu_n(sigma_{n-1} v omega) = mu_{n-1}(sigma_{n-1}).
//
// Configurations are bitmasks over the vertices of V_n in shortlex order;
// bit i set means spin +1 at vertex i. V_{n-1} occupies the low bits.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cayley/ball.hpp"
#include "cayley/errors.hpp"
#include "cayley/ising.hpp"
#include "cayley/subgroup.hpp"
#include "cayley/system.hpp"

namespace cayley {

inline constexpr std::size_t kMaxMeasureVertices = 22;

class FiniteVolumeIsing {
public:
    /// `boundary` holds h_x for x in W_n, in shortlex order.
    FiniteVolumeIsing(int k, int n, const ThetaParam& t, std::vector<double> boundary)
        : k_(k), n_(n), beta_(t.beta()), boundary_(std::move(boundary)) {
        if (n < 0) throw InvalidArgument("volume radius must be non-negative");
        if (ball_size(k, n) > kMaxMeasureVertices) {
            throw ResourceLimit("V_" + std::to_string(n) + " for k=" + std::to_string(k) + " has more than " +
                                std::to_string(kMaxMeasureVertices) + " vertices");
        }
        Ball ball = enumerate_ball(k, n);
        vertices_ = ball.vertices();
        first_boundary_ = vertices_.size() - ball.spheres.back().size();
        if (boundary_.size() != ball.spheres.back().size()) {
            throw InvalidArgument("boundary field needs " + std::to_string(ball.spheres.back().size()) +
                                  " values, got " + std::to_string(boundary_.size()));
        }
        parent_.assign(vertices_.size(), 0);
        for (std::size_t i = 1; i < vertices_.size(); ++i) {
            const Word p = parent(vertices_[i]);
            parent_[i] = static_cast<std::size_t>(std::lower_bound(vertices_.begin(), vertices_.end(), p) -
                                                  vertices_.begin());
        }

        // log Z via a max-shifted sum
        const std::uint64_t total = config_count();
        double max_e = -INFINITY;
        for (std::uint64_t c = 0; c < total; ++c) max_e = std::max(max_e, exponent(c));
        long double sum = 0.0L;
        for (std::uint64_t c = 0; c < total; ++c) sum += std::exp(exponent(c) - max_e);
        log_z_ = max_e + static_cast<double>(std::log(sum));
    }

    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    const std::vector<Word>& vertices() const noexcept { return vertices_; }
    std::uint64_t config_count() const noexcept { return std::uint64_t{1} << vertices_.size(); }

    /// -beta H_n(sigma) + sum_{x in W_n} h_x sigma(x), with J = 1.
    double exponent(std::uint64_t config) const noexcept {
        auto spin = [config](std::size_t i) { return ((config >> i) & 1u) ? 1.0 : -1.0; };
        double e = 0.0;
        for (std::size_t i = 1; i < vertices_.size(); ++i) e += beta_ * spin(i) * spin(parent_[i]);
        for (std::size_t i = first_boundary_; i < vertices_.size(); ++i) e += boundary_[i - first_boundary_] * spin(i);
        return e;
    }

    double probability(std::uint64_t config) const { return std::exp(exponent(config) - log_z_); }

    /// mu_n(sigma) for sigma given as +-1 spins in shortlex vertex order.
    double probability(std::span<const int> spins) const {
        if (spins.size() != vertices_.size()) throw InvalidArgument("configuration has the wrong number of spins");
        std::uint64_t c = 0;
        for (std::size_t i = 0; i < spins.size(); ++i) {
            if (spins[i] != 1 && spins[i] != -1) throw InvalidArgument("spins must be +1 or -1");
            if (spins[i] == 1) c |= std::uint64_t{1} << i;
        }
        return probability(c);
    }

    std::vector<double> distribution() const {
        std::vector<double> p(config_count());
        for (std::uint64_t c = 0; c < p.size(); ++c) p[c] = probability(c);
        return p;
    }

private:
    int k_, n_;
    double beta_;
    std::vector<double> boundary_;
    std::vector<Word> vertices_;
    std::vector<std::size_t> parent_;
    std::size_t first_boundary_ = 0;
    double log_z_ = 0.0;
};

/// h_x for every x in W_m, read off the weakly periodic assignment
/// h_x = h_(class of x, class of x_↓).
inline std::vector<double> sphere_field(const WeaklyPeriodicSystem& sys, const FieldVector& h, int m) {
    if (h.size() != sys.size()) throw InvalidArgument("field dimension does not match the system");
    if (m < 1) throw InvalidArgument("the root carries no boundary field");
    Ball ball = enumerate_ball(sys.k, m);
    std::vector<double> out;
    out.reserve(ball.spheres.back().size());
    for (const Word& x : ball.spheres.back()) {
        StatePair st{label_residue(x, sys.spec), label_residue(parent(x), sys.spec)};
        out.push_back(h[sys.index_of(st)]);
    }
    return out;
}

struct CompatibilityReport {
    bool passed = false;
    double max_deviation = 0.0;
    std::size_t configurations = 0;  // |{-1,1}^{V_n}|
    double field_residual = 0.0;     // max |h - W h| of the supplied field
};

/// Brute-force marginalization of mu_n over W_n against mu_{n-1}.
inline CompatibilityReport verify_compatibility(const FieldVector& h, const WeaklyPeriodicSystem& sys,
                                                const ThetaParam& t, int n, double tol = 1e-10) {
    if (n < 2) throw InvalidArgument("compatibility needs n >= 2");
    FiniteVolumeIsing outer(sys.k, n, t, sphere_field(sys, h, n));
    FiniteVolumeIsing inner(sys.k, n - 1, t, sphere_field(sys, h, n - 1));

    std::vector<long double> marginal(inner.config_count(), 0.0L);
    const std::uint64_t mask = inner.config_count() - 1;
    for (std::uint64_t c = 0; c < outer.config_count(); ++c) marginal[c & mask] += outer.probability(c);

    CompatibilityReport rep;
    rep.configurations = outer.config_count();
    rep.field_residual = residual(sys.counts, h, t);
    for (std::uint64_t c = 0; c < marginal.size(); ++c) {
        rep.max_deviation = std::max(rep.max_deviation, std::abs(static_cast<double>(marginal[c]) - inner.probability(c)));
    }
    rep.passed = rep.max_deviation <= tol;
    return rep;
}

} // namespace cayley
