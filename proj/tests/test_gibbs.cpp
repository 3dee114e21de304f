#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "cayley/invariant_sets.hpp"
#include "cayley/ising.hpp"
#include "cayley/polynomial.hpp"
#include "cayley/solver.hpp"
#include "cayley/sweep.hpp"
#include "cayley/system.hpp"

using namespace cayley;

namespace {

const WeaklyPeriodicSystem& sys2() {
    static const WeaklyPeriodicSystem s = derive_system(standard_spec(2));
    return s;
}

// Root of h = k atanh(theta tanh h) on (0, inf) by plain bisection in long double.
long double oracle_ti_root(int k, long double theta) {
    auto g = [&](long double h) { return k * std::atanh(theta * std::tanh(h)) - h; };
    long double lo = 1e-6L, hi = 1.0L;
    while (g(hi) > 0) hi *= 2;
    for (int i = 0; i < 400; ++i) {
        long double mid = (lo + hi) / 2;
        (g(mid) > 0 ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

// The nine equations written out by hand, f applied coordinatewise.
std::vector<double> hand_written_W(int k, const std::vector<double>& h, const ThetaParam& t) {
    auto f = [&](int i) { return f_theta(h[static_cast<std::size_t>(i - 1)], t); };
    return {
        (k - 2) * f(1) + f(4) + f(7), (k - 1) * f(1) + f(7),         (k - 1) * f(1) + f(4),
        (k - 1) * f(5) + f(8),        (k - 2) * f(5) + f(2) + f(8), (k - 1) * f(5) + f(2),
        (k - 1) * f(9) + f(6),        (k - 1) * f(9) + f(3),         (k - 2) * f(9) + f(6) + f(3),
    };
}

FieldVector random_in_set(InvariantSetId id, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-3, 3);
    FieldVector h{std::vector<double>(9)};
    for (const auto& b : blocks(id)) {
        double v = u(rng);
        for (int c : b) h[static_cast<std::size_t>(c)] = v;
    }
    return h;
}

double max_dist(const FieldVector& a, const FieldVector& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST(ThetaParam, Domain) {
    EXPECT_THROW(ThetaParam(0.0), InvalidArgument);
    EXPECT_THROW(ThetaParam(1.0), InvalidArgument);
    EXPECT_THROW(ThetaParam(-0.2), InvalidArgument);
    EXPECT_THROW(ThetaParam(std::nan("")), InvalidArgument);
    ThetaParam t(0.8);
    EXPECT_DOUBLE_EQ(t.a(), 1.0 / 9.0);
    EXPECT_NEAR(std::tanh(t.beta()), 0.8, 1e-15);
}

TEST(FTheta, Examples) {
    for (double th : {0.1, 0.5, 0.9}) EXPECT_EQ(f_theta(0.0, ThetaParam(th)), 0.0);
    const long double ref = std::atanh(0.8L * std::tanh(1.0L));
    EXPECT_NEAR(f_theta(1.0, ThetaParam(0.8)), static_cast<double>(ref), 1e-15);
}

TEST(FTheta, OddMonotoneBounded) {
    for (double th : {0.05, 0.3, 0.5, 0.8, 0.95}) {
        ThetaParam t(th);
        const double bound = std::atanh(th);
        double prev = -INFINITY;
        for (int i = 0; i < 1000; ++i) {
            const double h = -10.0 + 20.0 * i / 999.0;
            const double v = f_theta(h, t);
            EXPECT_EQ(f_theta(-h, t), -v);
            EXPECT_GT(v, prev);
            EXPECT_LE(std::abs(v), bound);
            prev = v;
        }
    }
}

TEST(FTheta, DerivativeMatchesFiniteDifference) {
    ThetaParam t(0.7);
    for (double h : {-2.0, -0.3, 0.0, 0.4, 1.7}) {
        const double fd = (f_theta(h + 1e-6, t) - f_theta(h - 1e-6, t)) / 2e-6;
        EXPECT_NEAR(f_theta_prime(h, t), fd, 1e-8);
    }
}

TEST(ApplyW, Examples) {
    ThetaParam t(0.8);
    const auto& C = sys2().counts;
    FieldVector zero{std::vector<double>(9, 0.0)};
    for (double v : apply_W(C, zero, t).values) EXPECT_EQ(v, 0.0);

    FieldVector h{std::vector<double>(9, 0.0)};
    h[3] = h[6] = 1.0;
    EXPECT_NEAR(apply_W(C, h, t)[0], 2 * f_theta(1.0, t), 1e-15);

    EXPECT_THROW(apply_W(C, FieldVector{std::vector<double>(4, 0.0)}, t), InvalidArgument);
}

TEST(ApplyW, LineByLineAgainstHandWrittenSystem) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-4, 4);
    for (int k = 2; k <= 5; ++k) {
        const auto sys = derive_system(standard_spec(k));
        for (double th : {0.2, 0.6, 0.9}) {
            ThetaParam t(th);
            for (int rep = 0; rep < 20; ++rep) {
                std::vector<double> h(9);
                for (double& x : h) x = u(rng);
                const auto got = apply_W(sys.counts, FieldVector{h}, t);
                const auto want = hand_written_W(k, h, t);
                for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(got[i], want[i], 1e-13);
            }
        }
    }
}

TEST(ApplyW, ContractsWhenKThetaBelowOne) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int k = 2; k <= 4; ++k) {
        const auto sys = derive_system(standard_spec(k));
        ThetaParam t(0.9 / k);
        for (int rep = 0; rep < 200; ++rep) {
            FieldVector h{std::vector<double>(9)};
            for (double& x : h.values) x = u(rng);
            const FieldVector w = apply_W(sys.counts, h, t);
            double nh = 0, nw = 0;
            for (std::size_t i = 0; i < 9; ++i) {
                nh = std::max(nh, std::abs(h[i]));
                nw = std::max(nw, std::abs(w[i]));
            }
            EXPECT_LT(nw, nh);
        }
    }
}

TEST(TranslationInvariant, OnlyZeroBelowThreshold) {
    for (int k = 1; k <= 4; ++k) {
        for (double th : {0.05, 0.2, 1.0 / (k + 0.5)}) {
            if (k * th > 1) continue;
            EXPECT_EQ(solve_translation_invariant(k, ThetaParam(th)), std::vector<double>{0.0});
        }
    }
    EXPECT_EQ(solve_translation_invariant(2, ThetaParam(1e-9)), std::vector<double>{0.0});
    EXPECT_THROW(solve_translation_invariant(0, ThetaParam(0.5)), InvalidArgument);
}

TEST(TranslationInvariant, ThreeRootsAgainstBisectionOracle) {
    for (int k = 2; k <= 5; ++k) {
        for (double th : {0.55, 0.8, 0.95}) {
            if (k * th <= 1) continue;
            ThetaParam t(th);
            auto roots = solve_translation_invariant(k, t);
            ASSERT_EQ(roots.size(), 3u);
            EXPECT_EQ(roots[1], 0.0);
            EXPECT_EQ(roots[0], -roots[2]);
            EXPECT_NEAR(roots[2], static_cast<double>(oracle_ti_root(k, th)), 1e-12);
            for (double h : roots) EXPECT_LE(std::abs(h - k * f_theta(h, t)), 1e-12);
        }
    }
}

TEST(InvariantSets, PatternsAndValidity) {
    EXPECT_EQ(blocks(InvariantSetId::I1), (std::vector<std::vector<int>>{{0, 1, 3, 4}, {2, 5}, {6, 7}, {8}}));
    EXPECT_EQ(blocks(InvariantSetId::I2), (std::vector<std::vector<int>>{{0}, {1, 2}, {3, 6}, {4, 5, 7, 8}}));
    EXPECT_EQ(blocks(InvariantSetId::I3), (std::vector<std::vector<int>>{{0, 5, 7}, {1, 2, 3, 4, 6, 8}}));
    EXPECT_EQ(blocks(InvariantSetId::I4), (std::vector<std::vector<int>>{{0, 1, 3, 5, 7, 8}, {2, 4, 6}}));
    EXPECT_EQ(blocks(InvariantSetId::I5), (std::vector<std::vector<int>>{{0, 2, 4, 5, 6, 7}, {1, 3, 8}}));
    EXPECT_TRUE(valid_for(InvariantSetId::I3, 2));
    EXPECT_FALSE(valid_for(InvariantSetId::I3, 3));
    EXPECT_TRUE(valid_for(InvariantSetId::I1, 5));
    EXPECT_EQ(parse_invariant_set("I4"), InvariantSetId::I4);
    EXPECT_THROW(parse_invariant_set("I9"), InvalidArgument);
}

TEST(InvariantSets, I1ReducesToFourEquations) {
    ReducedSystem red = restrict_to_invariant_set(sys2().counts, 2, InvariantSetId::I1);
    // unknowns h1, h3, h7, h9
    EXPECT_EQ(red.coefficients, (CountMatrix{{1, 0, 1, 0}, {2, 0, 0, 0}, {0, 1, 0, 1}, {0, 2, 0, 0}}));
}

TEST(InvariantSets, I0ReducesToScalarEquation) {
    for (int k = 2; k <= 5; ++k) {
        ReducedSystem red = restrict_to_invariant_set(derive_system(standard_spec(k)).counts, k, InvariantSetId::I0);
        EXPECT_EQ(red.coefficients, (CountMatrix{{k}}));
    }
}

TEST(InvariantSets, I3ReducesToTwoEquations) {
    ReducedSystem red = restrict_to_invariant_set(sys2().counts, 2, InvariantSetId::I3);
    // u = 2 f(v), v = f(u) + f(v)
    EXPECT_EQ(red.coefficients, (CountMatrix{{0, 2}, {1, 1}}));
}

TEST(InvariantSets, CertificatesAndNumericClosure) {
    std::mt19937_64 rng(3);
    for (int k = 2; k <= 5; ++k) {
        const auto sys = derive_system(standard_spec(k));
        for (InvariantSetId id : kAllInvariantSets) {
            if (!valid_for(id, k)) {
                EXPECT_THROW(restrict_to_invariant_set(sys.counts, k, id), InvalidArgument);
                EXPECT_THROW(restrict_pattern(sys.counts, id), ComputationError);
                continue;
            }
            EXPECT_NO_THROW(restrict_to_invariant_set(sys.counts, k, id));
            for (int rep = 0; rep < 10; ++rep) {
                FieldVector h = random_in_set(id, rng);
                EXPECT_TRUE(contains(id, apply_W(sys.counts, h, ThetaParam(0.7)), 1e-12));
            }
        }
    }
}

TEST(InvariantSets, ReducedSolutionsLiftToFullSolutions) {
    ThetaParam t(0.8);
    ReducedSystem red = restrict_to_invariant_set(sys2().counts, 2, InvariantSetId::I1);
    SolutionSet lifted = solve_on_invariant_set(red, 2, t, SolverConfig{});
    EXPECT_GE(lifted.solutions.size(), 3u);
    for (const Solution& s : lifted.solutions) {
        EXPECT_LE(residual(sys2().counts, s.h, t), 1e-12);
        EXPECT_TRUE(contains(InvariantSetId::I1, s.h, 0));
    }
}

TEST(InvariantSets, I3FixedPointsAreTranslationInvariant) {
    ReducedSystem red = restrict_to_invariant_set(sys2().counts, 2, InvariantSetId::I3);
    for (int i = 2; i <= 19; ++i) {
        ThetaParam t(0.05 * i);
        SolutionSet set = solve_on_invariant_set(red, 2, t, SolverConfig{});
        EXPECT_FALSE(set.solutions.empty());
        for (const Solution& s : set.solutions) EXPECT_TRUE(s.translation_invariant) << "theta=" << t.theta();
    }
}

TEST(SolverConfig, Validation) {
    SolverConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.tol = 0;
    EXPECT_THROW(cfg.validate(), InvalidArgument);
    cfg = SolverConfig{};
    cfg.dedupe_eps = 1e-13;
    EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(Solver, BelowThresholdOnlyZero) {
    ThetaParam t(0.3);
    SolutionSet set = solve_fixed_points(sys2(), t, SolverConfig{});
    ASSERT_EQ(set.solutions.size(), 1u);
    EXPECT_TRUE(set.solutions[0].translation_invariant);
    EXPECT_EQ(set.count_non_ti(), 0u);
    EXPECT_LE(set.solutions[0].h.spread(), 0.0);
    EXPECT_LE(max_dist(set.solutions[0].h, FieldVector{std::vector<double>(9, 0.0)}), 1e-12);
}

TEST(Solver, AboveThresholdMatchesTranslationInvariantRoots) {
    ThetaParam t(0.8);
    SolutionSet set = solve_fixed_points(sys2(), t, SolverConfig{});
    const auto roots = solve_translation_invariant(2, t);
    EXPECT_EQ(set.count_ti(), roots.size());
    for (double r : roots) {
        EXPECT_NE(set.find(FieldVector{std::vector<double>(9, r)}, 1e-8), nullptr) << r;
    }
    for (const Solution& s : set.solutions) {
        EXPECT_TRUE(s.in_set(InvariantSetId::I0) == s.translation_invariant);
    }
}

TEST(Solver, DegenerateRootAtCriticalThetaIsSingle) {
    for (int k = 2; k <= 4; ++k) {
        const auto sys = derive_system(standard_spec(k));
        SolutionSet set = solve_fixed_points(sys, ThetaParam(1.0 / k), SolverConfig{});
        ASSERT_EQ(set.solutions.size(), 1u) << "k=" << k;
        EXPECT_TRUE(set.solutions[0].translation_invariant);
        EXPECT_LE(max_dist(set.solutions[0].h, FieldVector{std::vector<double>(9, 0.0)}), 1e-4);
    }
}

TEST(Solver, NearbyDistinctRootsStaySeparate) {
    // just above the threshold the nonzero roots are close to 0 but distinct
    ThetaParam t(0.505);
    SolutionSet set = solve_fixed_points(sys2(), t, SolverConfig{});
    EXPECT_EQ(set.count_ti(), 3u);
}

TEST(Solver, SoundnessAndNegationSymmetry) {
    SolverConfig cfg;
    for (int k = 2; k <= 3; ++k) {
        const auto sys = derive_system(standard_spec(k));
        for (double th : {0.3, 0.55, 0.8, 0.95}) {
            ThetaParam t(th);
            SolutionSet set = solve_fixed_points(sys, t, cfg);
            for (std::size_t i = 0; i < set.solutions.size(); ++i) {
                const Solution& s = set.solutions[i];
                EXPECT_LE(s.residual, cfg.tol);
                EXPECT_LE(residual(sys.counts, s.h, t), cfg.tol);
                FieldVector neg = s.h;
                for (double& v : neg.values) v = -v;
                EXPECT_NE(set.find(neg, cfg.dedupe_eps), nullptr);
                auto re = newton_solve(sys.counts, neg, t, cfg);
                ASSERT_TRUE(re.has_value());
                EXPECT_LE(max_dist(*re, neg), cfg.dedupe_eps);
                for (std::size_t j = 0; j < i; ++j) EXPECT_GT(max_dist(s.h, set.solutions[j].h), cfg.dedupe_eps);
            }
        }
    }
}

TEST(Solver, Deterministic) {
    ThetaParam t(0.7);
    SolutionSet a = solve_fixed_points(sys2(), t, SolverConfig{});
    SolutionSet b = solve_fixed_points(sys2(), t, SolverConfig{});
    ASSERT_EQ(a.solutions.size(), b.solutions.size());
    for (std::size_t i = 0; i < a.solutions.size(); ++i) EXPECT_EQ(a.solutions[i].h.values, b.solutions[i].h.values);
}

TEST(Mobius, InverseRoundTrip) {
    for (double a : {0.1, 0.4, 0.9}) {
        for (double z : {0.01, 0.5, 1.0, 3.0, 40.0}) EXPECT_NEAR(mobius_g_inverse(mobius_g(z, a), a), z, 1e-12 * z);
        EXPECT_THROW(mobius_g_inverse(1.0 / a, a), ComputationError);
    }
}

TEST(I1Polynomial, RootsAtPointEight) {
    ThetaParam t(0.8);
    I1PolynomialResult r = solve_I1_polynomial(t);
    EXPECT_DOUBLE_EQ(r.a, 1.0 / 9.0);
    ASSERT_EQ(r.quadratic_roots.size(), 2u);
    const double a = r.a;
    const double disc = 1 - 3 * a * a - 2 * a;
    EXPECT_NEAR(r.discriminant, disc, 1e-15);
    EXPECT_NEAR(r.quadratic_roots[0], (1 - a + std::sqrt(disc)) / (2 * a), 1e-12);
    EXPECT_NEAR(r.quadratic_roots[1], (1 - a - std::sqrt(disc)) / (2 * a), 1e-12);
    EXPECT_NEAR(r.quadratic_roots[0], 7.8730, 5e-5);
    EXPECT_NEAR(r.quadratic_roots[1], 0.1270, 5e-5);
    EXPECT_NEAR(r.quadratic_roots[0] * r.quadratic_roots[1], 1.0, 1e-12);
    for (const Solution& s : r.solutions.solutions) EXPECT_LE(residual(sys2().counts, s.h, t), 1e-10);
}

TEST(I1Polynomial, QuadraticBranchesAreTheConstantFields) {
    // ln x equals the nonzero translation-invariant root
    for (double th : {0.55, 0.7, 0.8, 0.95}) {
        ThetaParam t(th);
        I1PolynomialResult r = solve_I1_polynomial(t);
        const double hstar = static_cast<double>(oracle_ti_root(2, th));
        ASSERT_EQ(r.quadratic_roots.size(), 2u);
        EXPECT_NEAR(std::log(r.quadratic_roots[0]), hstar, 1e-9);
        EXPECT_NEAR(std::log(r.quadratic_roots[1]), -hstar, 1e-9);
        for (const Solution& s : r.solutions.solutions) EXPECT_LE(s.h.spread(), 1e-9);
    }
}

TEST(I1Polynomial, BoundaryAndBelowThreshold) {
    I1PolynomialResult half = solve_I1_polynomial(ThetaParam(0.5));
    EXPECT_NEAR(half.a, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(half.discriminant, 0.0, 1e-12);
    EXPECT_TRUE(half.boundary_degenerate);
    EXPECT_EQ(half.solutions.count_non_ti(), 0u);

    I1PolynomialResult low = solve_I1_polynomial(ThetaParam(0.3));
    EXPECT_NEAR(low.a, 0.7 / 1.3, 1e-15);
    EXPECT_LT(low.discriminant, 0);
    EXPECT_TRUE(low.quadratic_roots.empty());
    EXPECT_EQ(low.solutions.count_non_ti(), 0u);
    ASSERT_EQ(low.solutions.solutions.size(), 1u);
    EXPECT_TRUE(low.solutions.solutions[0].translation_invariant);
}

TEST(I1Polynomial, AgreesWithNewtonOnTheGrid) {
    for (int i = 11; i <= 19; ++i) {
        ThetaParam t(0.05 * i);
        SolutionSet newton = solve_fixed_points(sys2(), t, SolverConfig{});
        I1PolynomialResult poly = solve_I1_polynomial(t);
        EXPECT_TRUE(agrees(newton, poly, 1e-8)) << "theta=" << t.theta();
    }
}

TEST(Quartic, Coefficients) {
    const Polynomial q0 = quartic_Q(1e-12);
    EXPECT_NEAR(q0(2.0), 16 + 4 + 1, 1e-9);
    const double a = 1.0 / 3.0;
    const double q1 = 2 * (a * a * a + a * a - a + 1) + 2 * (a - a * a * a) + 3 * a * a * a - a * a + a + 1;
    EXPECT_NEAR(quartic_Q(a)(1.0), q1, 1e-14);
    EXPECT_GT(q1, 0);
}

TEST(Quartic, PositiveOnMesh) {
    auto rows = quartic_positivity_check({0.5}, 50.0);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_TRUE(rows[0].mesh_positive);
    EXPECT_TRUE(rows[0].certified);
    EXPECT_GT(rows[0].min_value, 0);
    EXPECT_EQ(rows[0].sturm_positive_roots, 0);
}

TEST(Sturm, CountsKnownRoots) {
    // (x-1)(x-2)(x+3) = x^3 - 7x + 6
    Polynomial p({6, -7, 0, 1});
    EXPECT_EQ(count_real_roots(p, 0, 10), 2);
    EXPECT_EQ(count_real_roots(p, -10, 10), 3);
    EXPECT_EQ(count_real_roots(Polynomial({1, 0, 1}), -10, 10), 0);
}

TEST(Sweep, RowsBelowAndAboveThreshold) {
    auto rows = classify_theta_sweep({0.45, 0.5, 0.55});
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].n_ti, 1u);
    EXPECT_EQ(rows[0].n_wp_total, 0u);
    EXPECT_EQ(rows[1].n_ti, 1u);
    EXPECT_EQ(rows[1].n_wp_total, 0u);
    EXPECT_EQ(rows[2].n_ti, 3u);
    for (const auto& r : rows) {
        EXPECT_TRUE(r.agreement);
        EXPECT_LE(r.max_residual, 1e-12);
    }
}
