#pragma once

// Closed-form analysis of the nine-state system on I_1 for k = 2.
//
// With z = e^{2h}, a = (1 - theta)/(1 + theta) and g(z) = (z + a)/(a z + 1),
// the restricted equations become z1 = g(z1)g(z7), z3 = g(z1)^2,
// z7 = g(z9)g(z3), z9 = g(z3)^2. Eliminating down to x = sqrt(z3) leaves
//     (x - 1)(x + 1)(a x^2 + (a - 1)x + a) Q(x) = 0
// where the quartic Q has no positive root.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cayley/errors.hpp"
#include "cayley/invariant_sets.hpp"
#include "cayley/ising.hpp"
#include "cayley/solver.hpp"
#include "cayley/system.hpp"

namespace cayley {

/// Real polynomial, coefficients in ascending degree.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

    int degree() const noexcept { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coefficients() const noexcept { return c_; }
    double leading() const noexcept { return c_.empty() ? 0.0 : c_.back(); }

    double operator()(double x) const noexcept {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial{};
        std::vector<double> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
        return Polynomial(std::move(d));
    }

    /// Upper bound of |p'(x)| on [0, x].
    double derivative_bound(double x) const noexcept {
        double acc = 0.0, pw = 1.0;
        for (std::size_t i = 1; i < c_.size(); ++i) {
            acc += static_cast<double>(i) * std::abs(c_[i]) * pw;
            pw *= x;
        }
        return acc;
    }

    /// Remainder of polynomial division this / d.
    Polynomial remainder(const Polynomial& d) const {
        if (d.degree() < 0) throw InvalidArgument("division by the zero polynomial");
        std::vector<double> r = c_;
        const int dd = d.degree();
        for (int i = degree(); i >= dd; --i) {
            const double q = r[static_cast<std::size_t>(i)] / d.leading();
            for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(i - dd + j)] -= q * d.c_[static_cast<std::size_t>(j)];
            r[static_cast<std::size_t>(i)] = 0.0;
        }
        r.resize(static_cast<std::size_t>(std::max(dd, 0)));
        return Polynomial(std::move(r));
    }

    Polynomial operator-() const {
        std::vector<double> n = c_;
        for (double& v : n) v = -v;
        return Polynomial(std::move(n));
    }

private:
    void trim() {
        double scale = 0.0;
        for (double v : c_) scale = std::max(scale, std::abs(v));
        while (!c_.empty() && std::abs(c_.back()) <= 1e-14 * scale) c_.pop_back();
    }

    std::vector<double> c_;
};

/// Sturm chain p, p', -rem(p, p'), ...
inline std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
    std::vector<Polynomial> seq{p, p.derivative()};
    while (seq.back().degree() > 0) {
        Polynomial r = -seq[seq.size() - 2].remainder(seq.back());
        if (r.degree() < 0) break;
        seq.push_back(std::move(r));
    }
    return seq;
}

inline int sign_changes(const std::vector<Polynomial>& seq, double x) {
    int changes = 0;
    double prev = 0.0;
    for (const Polynomial& p : seq) {
        double v = std::isinf(x) ? (p.degree() % 2 == 0 || x > 0 ? p.leading() : -p.leading()) : p(x);
        if (v == 0.0) continue;
        if (prev != 0.0 && (v > 0) != (prev > 0)) ++changes;
        prev = v;
    }
    return changes;
}

/// Number of distinct real roots in (lo, hi]; hi may be +infinity.
inline int count_real_roots(const Polynomial& p, double lo, double hi) {
    auto seq = sturm_sequence(p);
    return sign_changes(seq, lo) - sign_changes(seq, hi);
}

/// The quartic factor
/// Q(x) = (a^3+a^2-a+1)x^4 + (a-a^3)x^3 + (3a^3-a^2+a+1)x^2 + (a-a^3)x + a^3+a^2-a+1.
inline Polynomial quartic_Q(double a) {
    const double a2 = a * a, a3 = a2 * a;
    const double outer = a3 + a2 - a + 1;
    const double odd = a - a3;
    return Polynomial({outer, odd, 3 * a3 - a2 + a + 1, odd, outer});
}

struct QuarticCheckRow {
    double a = 0;
    double min_value = 0;
    double argmin = 0;
    bool mesh_positive = false;  // Q > 0 at every mesh point
    bool certified = false;      // mesh values plus derivative bound exclude zeros
    int sturm_positive_roots = 0;  // distinct roots in (0, x_max]
};

/// Positivity of Q on (0, x_max] for each a, on a mesh of the given step.
/// A cell [x0, x1] is certified when (Q(x0) + Q(x1) - M (x1 - x0)) / 2 > 0
/// with M a bound of |Q'| on [0, x1].
inline std::vector<QuarticCheckRow> quartic_positivity_check(const std::vector<double>& a_grid, double x_max,
                                                             double step = 1e-3) {
    if (!(x_max > 0) || !(step > 0)) throw InvalidArgument("x_max and step must be positive");
    std::vector<QuarticCheckRow> rows;
    const auto cells = static_cast<std::size_t>(std::ceil(x_max / step));
    for (double a : a_grid) {
        if (!(a > 0 && a < 1)) throw InvalidArgument("a must lie in (0, 1)");
        Polynomial Q = quartic_Q(a);
        QuarticCheckRow row{a, std::numeric_limits<double>::infinity(), 0, true, true, 0};
        double prev_x = 0.0, prev_v = Q(0.0);
        for (std::size_t i = 1; i <= cells; ++i) {
            const double x = std::min(x_max, static_cast<double>(i) * step);
            const double v = Q(x);
            if (v < row.min_value) {
                row.min_value = v;
                row.argmin = x;
            }
            if (!(v > 0)) row.mesh_positive = false;
            const double bound = Q.derivative_bound(x) * (x - prev_x);
            if (!((prev_v + v - bound) / 2 > 0)) row.certified = false;
            prev_x = x;
            prev_v = v;
        }
        row.sturm_positive_roots = count_real_roots(Q, 0.0, x_max);
        rows.push_back(row);
    }
    return rows;
}

/// g(z) = (z + a)/(a z + 1)
inline double mobius_g(double z, double a) { return (z + a) / (a * z + 1); }

/// g^{-1}(w) = (w - a)/(1 - a w); ComputationError at the pole.
inline double mobius_g_inverse(double w, double a) {
    const double den = 1 - a * w;
    if (std::abs(den) < 1e-300) throw ComputationError("g-inverse pole at w = 1/a");
    return (w - a) / den;
}

struct I1PolynomialResult {
    double a = 0;
    double discriminant = 0;          // 1 - 3a^2 - 2a
    std::vector<double> quadratic_roots;  // positive roots of a x^2 + (a-1)x + a, descending
    bool boundary_degenerate = false;  // double root at x = 1
    SolutionSet solutions;              // x = 1 branch first, then quadratic branches
};

/// Rebuilds the full nine-coordinate field from a positive root x = sqrt(z3).
/// Returns nullopt when an intermediate z is not positive (non-physical).
inline std::optional<FieldVector> field_from_root(double x, double a) {
    const double z3 = x * x;
    const double z1 = mobius_g_inverse(x, a);  // z3 = g(z1)^2, g(z1) = x
    const double z9 = std::pow(mobius_g(z3, a), 2);
    const double z7 = mobius_g_inverse(z1 / x, a);  // z1 = g(z1) g(z7)
    if (!(z1 > 0 && z3 > 0 && z7 > 0 && z9 > 0)) return std::nullopt;
    const double h1 = 0.5 * std::log(z1), h3 = std::log(x), h7 = 0.5 * std::log(z7), h9 = 0.5 * std::log(z9);
    return FieldVector{{h1, h1, h3, h1, h1, h3, h7, h7, h9}};
}

/// The exact I_1 path for k = 2. Every reconstructed field must solve the
/// full nine-equation system to within residual_tol.
inline I1PolynomialResult solve_I1_polynomial(const ThetaParam& t, double dedupe_eps = 1e-8,
                                              double residual_tol = 1e-10) {
    I1PolynomialResult res;
    const double a = t.a();
    res.a = a;
    res.discriminant = 1 - 3 * a * a - 2 * a;
    const CountMatrix table = reference_table(2);

    auto push = [&](double x) {
        auto h = field_from_root(x, a);
        if (!h) return;
        const double r = residual(table, *h, t);
        if (r > residual_tol) {
            throw ComputationError("reconstructed I1 field at x = " + std::to_string(x) + " has residual " +
                                   std::to_string(r));
        }
        if (res.solutions.find(*h, dedupe_eps)) return;
        Solution s;
        s.residual = r;
        s.translation_invariant = h->spread() < dedupe_eps;
        for (InvariantSetId id : kAllInvariantSets) {
            if (contains(id, *h, dedupe_eps)) s.invariant_sets.push_back(id);
        }
        s.h = std::move(*h);
        res.solutions.solutions.push_back(std::move(s));
    };

    push(1.0);
    constexpr double kDegenerate = 1e-12;
    if (std::abs(res.discriminant) <= kDegenerate) {
        res.boundary_degenerate = true;
        res.quadratic_roots = {(1 - a) / (2 * a)};
        return res;
    }
    if (res.discriminant < 0) return res;
    const double sq = std::sqrt(res.discriminant);
    for (double x : {(1 - a + sq) / (2 * a), (1 - a - sq) / (2 * a)}) {
        if (x > 0) {
            res.quadratic_roots.push_back(x);
            push(x);
        }
    }
    return res;
}

} // namespace cayley
