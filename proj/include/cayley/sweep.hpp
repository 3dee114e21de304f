#pragma once

#include <cstddef>
#include <vector>

#include "cayley/invariant_sets.hpp"
#include "cayley/ising.hpp"
#include "cayley/polynomial.hpp"
#include "cayley/solver.hpp"
#include "cayley/subgroup.hpp"
#include "cayley/system.hpp"

namespace cayley {

struct SweepRow {
    double theta = 0;
    std::size_t n_ti = 0;          // translation-invariant fixed points
    std::size_t n_wp_I1 = 0;       // non-TI fixed points lying in I1
    std::size_t n_wp_I2 = 0;       // non-TI fixed points lying in I2
    std::size_t n_wp_total = 0;    // all non-TI fixed points found
    std::size_t n_poly_non_ti = 0; // non-TI fields from the closed-form I1 path
    bool agreement = false;        // closed-form I1 path matches multistart Newton
    double max_residual = 0;
};

/// Agreement within eps: each closed-form field appears in the Newton set and
/// both routes report the same number of non-TI fields on I1.
inline bool agrees(const SolutionSet& newton, const I1PolynomialResult& poly, double eps) {
    for (const Solution& s : poly.solutions.solutions) {
        if (!newton.find(s.h, eps)) return false;
    }
    return newton.count_non_ti_in(InvariantSetId::I1) == poly.solutions.count_non_ti();
}

/// Per-theta classification of the nine-state system for k = 2.
inline std::vector<SweepRow> classify_theta_sweep(const std::vector<double>& thetas, const SolverConfig& cfg = {}) {
    const WeaklyPeriodicSystem sys = derive_system(standard_spec(2));
    std::vector<SweepRow> rows;
    rows.reserve(thetas.size());
    for (double th : thetas) {
        ThetaParam t(th);
        SolutionSet newton = solve_fixed_points(sys, t, cfg);
        I1PolynomialResult poly = solve_I1_polynomial(t, cfg.dedupe_eps);
        SweepRow row;
        row.theta = th;
        row.n_ti = newton.count_ti();
        row.n_wp_I1 = newton.count_non_ti_in(InvariantSetId::I1);
        row.n_wp_I2 = newton.count_non_ti_in(InvariantSetId::I2);
        row.n_wp_total = newton.count_non_ti();
        row.n_poly_non_ti = poly.solutions.count_non_ti();
        row.agreement = agrees(newton, poly, 1e-8);
        for (const Solution& s : newton.solutions) row.max_residual = std::max(row.max_residual, s.residual);
        rows.push_back(row);
    }
    return rows;
}

} // namespace cayley
