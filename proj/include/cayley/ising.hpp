#pragma once

// Ferromagnetic Ising recursion on the Cayley tree with J = 1:
//   theta = tanh(beta),  f(h, theta) = artanh(theta * tanh(h)).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "cayley/errors.hpp"

namespace cayley {

class ThetaParam {
public:
    explicit ThetaParam(double theta) : theta_(theta) {
        if (!(theta > 0.0 && theta < 1.0)) {
            throw InvalidArgument("theta must lie in the open interval (0, 1), got " + std::to_string(theta));
        }
    }

    double theta() const noexcept { return theta_; }
    /// a = (1 - theta) / (1 + theta), in (0, 1).
    double a() const noexcept { return (1.0 - theta_) / (1.0 + theta_); }
    /// Inverse temperature with J = 1.
    double beta() const noexcept { return std::atanh(theta_); }

private:
    double theta_;
};

inline double f_theta(double h, const ThetaParam& t) { return std::atanh(t.theta() * std::tanh(h)); }

/// d/dh f(h, theta).
inline double f_theta_prime(double h, const ThetaParam& t) {
    const double th = std::tanh(h);
    const double q = t.theta() * th;
    return t.theta() * (1.0 - th * th) / (1.0 - q * q);
}

/// Field values h_(i,j), one per state of a system, in the system's order.
struct FieldVector {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    double spread() const {
        if (values.empty()) return 0.0;
        double lo = values.front(), hi = values.front();
        for (double v : values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        return hi - lo;
    }

    friend bool operator==(const FieldVector&, const FieldVector&) = default;
};

/// Integer coefficient matrix of a system h = C f(h); rows and columns index states.
using CountMatrix = std::vector<std::vector<int>>;

/// (W h)_r = sum_c C[r][c] f(h_c, theta).
inline FieldVector apply_W(const CountMatrix& counts, const FieldVector& h, const ThetaParam& t) {
    if (counts.size() != h.size()) {
        throw InvalidArgument("field has dimension " + std::to_string(h.size()) + ", system has " +
                              std::to_string(counts.size()) + " states");
    }
    std::vector<double> fh(h.size());
    for (std::size_t c = 0; c < h.size(); ++c) fh[c] = f_theta(h[c], t);
    FieldVector out{std::vector<double>(h.size(), 0.0)};
    for (std::size_t r = 0; r < counts.size(); ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < fh.size(); ++c) {
            if (counts[r][c] != 0) acc += counts[r][c] * fh[c];
        }
        out[r] = acc;
    }
    return out;
}

/// max_r |h_r - (W h)_r|
inline double residual(const CountMatrix& counts, const FieldVector& h, const ThetaParam& t) {
    FieldVector w = apply_W(counts, h, t);
    double r = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) r = std::max(r, std::abs(h[i] - w[i]));
    return r;
}

/// All real roots of h = k f(h, theta), ascending. {0} when k theta <= 1,
/// otherwise {-h*, 0, h*}.
inline std::vector<double> solve_translation_invariant(int k, const ThetaParam& t, double tol = 1e-12) {
    if (k < 1) throw InvalidArgument("k must be >= 1");
    if (k * t.theta() <= 1.0) return {0.0};

    // g(h) = k f(h) - h is positive just right of 0 and negative at k artanh(theta).
    auto g = [&](double h) { return k * f_theta(h, t) - h; };
    double lo = 0.0, hi = k * std::atanh(t.theta());
    // Step lo off the origin so that g(lo) > 0.
    double probe = hi / 2;
    while (g(probe) <= 0.0) probe /= 2;
    lo = probe;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    double h = 0.5 * (lo + hi);
    for (int it = 0; it < 5; ++it) {
        double d = k * f_theta_prime(h, t) - 1.0;
        if (d == 0.0) break;
        double next = h - g(h) / d;
        if (!(next > 0.0) || std::abs(g(next)) > std::abs(g(h))) break;
        h = next;
        if (std::abs(g(h)) <= tol * 1e-3) break;
    }
    return {-h, 0.0, h};
}

} // namespace cayley
