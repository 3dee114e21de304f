#pragma once

// Multistart damped Newton for h = C f(h, theta).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cayley/errors.hpp"
#include "cayley/invariant_sets.hpp"
#include "cayley/ising.hpp"
#include "cayley/system.hpp"

namespace cayley {

struct SolverConfig {
    double tol = 1e-12;
    int newton_max_iter = 200;
    int starts = 200;
    double start_box = 5.0;           // starts drawn from [-start_box, start_box]^n
    double dedupe_eps = 1e-8;
    std::uint64_t rng_seed = 20240601;
    int subspace_starts = 40;         // extra starts inside each invariant subspace
    double fd_step = 1e-6;            // central-difference Jacobian step

    void validate() const {
        if (!(tol > 0)) throw InvalidArgument("tol must be positive");
        if (!(dedupe_eps > tol)) throw InvalidArgument("dedupe_eps must exceed tol");
        if (starts < 0 || subspace_starts < 0 || newton_max_iter < 1) {
            throw InvalidArgument("start counts must be non-negative and newton_max_iter positive");
        }
    }
};

struct Solution {
    FieldVector h;
    double residual = 0.0;
    bool translation_invariant = false;
    std::vector<InvariantSetId> invariant_sets;  // only for nine-state systems

    bool in_set(InvariantSetId id) const {
        return std::find(invariant_sets.begin(), invariant_sets.end(), id) != invariant_sets.end();
    }
};

struct SolutionSet {
    std::vector<Solution> solutions;

    std::size_t count_ti() const {
        return static_cast<std::size_t>(std::count_if(solutions.begin(), solutions.end(),
                                                       [](const Solution& s) { return s.translation_invariant; }));
    }
    std::size_t count_non_ti() const { return solutions.size() - count_ti(); }
    std::size_t count_non_ti_in(InvariantSetId id) const {
        return static_cast<std::size_t>(std::count_if(solutions.begin(), solutions.end(), [id](const Solution& s) {
            return !s.translation_invariant && s.in_set(id);
        }));
    }
    /// Solution within eps (max norm) of h, if any.
    const Solution* find(const FieldVector& h, double eps) const {
        for (const Solution& s : solutions) {
            if (s.h.size() != h.size()) continue;
            double d = 0;
            for (std::size_t i = 0; i < h.size(); ++i) d = std::max(d, std::abs(s.h[i] - h[i]));
            if (d <= eps) return &s;
        }
        return nullptr;
    }
};

namespace detail {

inline double max_abs(const FieldVector& v) {
    double m = 0;
    for (double x : v.values) m = std::max(m, std::abs(x));
    return m;
}

inline FieldVector fixed_point_map(const CountMatrix& C, const FieldVector& h, const ThetaParam& t) {
    FieldVector w = apply_W(C, h, t);
    for (std::size_t i = 0; i < h.size(); ++i) w[i] = h[i] - w[i];
    return w;
}

} // namespace detail

/// Damped Newton on F(h) = h - W(h) with a central-difference Jacobian.
/// Iterates past tol while the residual keeps dropping, so slowly converging
/// (degenerate) roots are driven to machine precision. Returns nullopt when
/// the final residual exceeds tol.
inline std::optional<FieldVector> newton_solve(const CountMatrix& C, FieldVector h, const ThetaParam& t,
                                               const SolverConfig& cfg) {
    const Eigen::Index n = static_cast<Eigen::Index>(h.size());
    FieldVector F = detail::fixed_point_map(C, h, t);
    double r = detail::max_abs(F);
    for (int it = 0; it < cfg.newton_max_iter; ++it) {
        if (r == 0.0) break;
        Eigen::MatrixXd J(n, n);
        for (Eigen::Index c = 0; c < n; ++c) {
            FieldVector hp = h, hm = h;
            hp[static_cast<std::size_t>(c)] += cfg.fd_step;
            hm[static_cast<std::size_t>(c)] -= cfg.fd_step;
            FieldVector Fp = detail::fixed_point_map(C, hp, t);
            FieldVector Fm = detail::fixed_point_map(C, hm, t);
            for (Eigen::Index rr = 0; rr < n; ++rr) {
                J(rr, c) = (Fp[static_cast<std::size_t>(rr)] - Fm[static_cast<std::size_t>(rr)]) / (2 * cfg.fd_step);
            }
        }
        Eigen::VectorXd rhs(n);
        for (Eigen::Index i = 0; i < n; ++i) rhs(i) = -F[static_cast<std::size_t>(i)];
        Eigen::VectorXd step = J.partialPivLu().solve(rhs);
        if (!step.allFinite()) break;

        double lambda = 1.0;
        bool accepted = false;
        FieldVector trial;
        FieldVector Ftrial;
        double rtrial = 0;
        for (int ls = 0; ls < 40; ++ls, lambda *= 0.5) {
            trial = h;
            for (Eigen::Index i = 0; i < n; ++i) trial[static_cast<std::size_t>(i)] += lambda * step(i);
            Ftrial = detail::fixed_point_map(C, trial, t);
            rtrial = detail::max_abs(Ftrial);
            if (std::isfinite(rtrial) && rtrial < r) {
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        double moved = lambda * step.cwiseAbs().maxCoeff();
        h = std::move(trial);
        F = std::move(Ftrial);
        r = rtrial;
        if (moved < 1e-15) break;
    }
    if (!(r <= cfg.tol)) return std::nullopt;
    return h;
}

namespace detail {

/// Near-coincident points joined by a segment on which the residual never
/// exceeds tol belong to one (degenerate) root.
inline bool same_root(const CountMatrix& C, const FieldVector& a, const FieldVector& b, const ThetaParam& t,
                      const SolverConfig& cfg) {
    constexpr double kMergeRadius = 1e-4;
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    if (d > kMergeRadius) return false;
    FieldVector p = a;
    for (int j = 1; j < 16; ++j) {
        const double s = j / 16.0;
        for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i] + s * (b[i] - a[i]);
        if (!(residual(C, p, t) <= cfg.tol)) return false;
    }
    return true;
}

} // namespace detail

/// Multistart solve of h = C f(h). `subspaces` lists equality patterns whose
/// interiors receive extra seeded starts; `classify` tags membership in the
/// nine-state invariant sets when the matrix has nine states.
inline SolutionSet solve_fixed_points(const CountMatrix& C, const ThetaParam& t, const SolverConfig& cfg,
                                      const std::vector<std::vector<std::vector<int>>>& subspaces = {},
                                      int k_for_sets = 0) {
    cfg.validate();
    const std::size_t n = C.size();
    std::mt19937_64 rng(cfg.rng_seed);
    std::uniform_real_distribution<double> box(-cfg.start_box, cfg.start_box);

    std::vector<FieldVector> starts;
    starts.push_back(FieldVector{std::vector<double>(n, 0.0)});
    for (int i = 0; i < cfg.starts; ++i) {
        FieldVector s{std::vector<double>(n)};
        for (double& v : s.values) v = box(rng);
        starts.push_back(std::move(s));
    }
    for (const auto& pattern : subspaces) {
        for (int i = 0; i < cfg.subspace_starts; ++i) {
            FieldVector s{std::vector<double>(n)};
            for (const auto& b : pattern) {
                double v = box(rng);
                for (int c : b) s[static_cast<std::size_t>(c)] = v;
            }
            starts.push_back(std::move(s));
        }
    }

    SolutionSet out;
    for (const FieldVector& s : starts) {
        auto h = newton_solve(C, s, t, cfg);
        if (!h) continue;
        if (out.find(*h, cfg.dedupe_eps)) continue;
        bool merged = false;
        for (Solution& prev : out.solutions) {
            if (!detail::same_root(C, prev.h, *h, t, cfg)) continue;
            if (residual(C, *h, t) < prev.residual) {
                prev.h = *h;
                prev.residual = residual(C, *h, t);
            }
            merged = true;
            break;
        }
        if (merged) continue;
        Solution sol;
        sol.residual = residual(C, *h, t);
        sol.translation_invariant = h->spread() < cfg.dedupe_eps;
        if (n == 9 && k_for_sets >= 2) {
            for (InvariantSetId id : kAllInvariantSets) {
                if (valid_for(id, k_for_sets) && contains(id, *h, cfg.dedupe_eps)) sol.invariant_sets.push_back(id);
            }
        }
        sol.h = std::move(*h);
        out.solutions.push_back(std::move(sol));
    }
    std::sort(out.solutions.begin(), out.solutions.end(),
              [](const Solution& a, const Solution& b) { return a.h.values < b.h.values; });
    return out;
}

/// Solve of a derived weakly periodic system. Nine-state systems also get
/// seeded starts inside every invariant set valid for k.
inline SolutionSet solve_fixed_points(const WeaklyPeriodicSystem& sys, const ThetaParam& t,
                                      const SolverConfig& cfg = {}) {
    std::vector<std::vector<std::vector<int>>> subspaces;
    if (sys.size() == 9) {
        for (InvariantSetId id : kAllInvariantSets) {
            if (valid_for(id, sys.k)) subspaces.push_back(blocks(id));
        }
    }
    return solve_fixed_points(sys.counts, t, cfg, subspaces, sys.k);
}

/// Fixed points of a restricted system, lifted back to nine coordinates.
inline SolutionSet solve_on_invariant_set(const ReducedSystem& red, int k, const ThetaParam& t,
                                          const SolverConfig& cfg = {}) {
    SolutionSet reduced = solve_fixed_points(red.coefficients, t, cfg);
    SolutionSet out;
    for (Solution& s : reduced.solutions) {
        Solution lifted;
        lifted.h = red.lift(s.h);
        lifted.residual = s.residual;
        lifted.translation_invariant = lifted.h.spread() < cfg.dedupe_eps;
        for (InvariantSetId id : kAllInvariantSets) {
            if (valid_for(id, k) && contains(id, lifted.h, cfg.dedupe_eps)) lifted.invariant_sets.push_back(id);
        }
        out.solutions.push_back(std::move(lifted));
    }
    return out;
}

} // namespace cayley
