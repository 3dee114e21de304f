#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "cayley/measure.hpp"
#include "cayley/polynomial.hpp"
#include "cayley/solver.hpp"

using namespace cayley;

namespace {

const WeaklyPeriodicSystem& sys2() {
    static const WeaklyPeriodicSystem s = derive_system(standard_spec(2));
    return s;
}

FieldVector constant(double v) { return FieldVector{std::vector<double>(9, v)}; }

}  // namespace

TEST(FiniteVolume, NormalizedAndSpinFlipSymmetric) {
    for (int n = 0; n <= 3; ++n) {
        const std::size_t boundary = enumerate_ball(2, n).spheres.back().size();
        FiniteVolumeIsing mu(2, n, ThetaParam(0.6), std::vector<double>(boundary, 0.0));
        const auto p = mu.distribution();
        EXPECT_NEAR(static_cast<double>(std::accumulate(p.begin(), p.end(), 0.0L)), 1.0, 1e-14);
        const std::uint64_t all = mu.config_count() - 1;
        for (std::uint64_t c = 0; c < p.size(); ++c) EXPECT_NEAR(p[c], p[all ^ c], 1e-15);
    }
}

TEST(FiniteVolume, SixteenTermTableAtRadiusOne) {
    ThetaParam t(0.8);
    const double h = solve_translation_invariant(2, t).back();
    FiniteVolumeIsing mu(2, 1, t, {h, h, h});
    ASSERT_EQ(mu.config_count(), 16u);

    // sigma = (s_e, s_a1, s_a2, s_a3)
    const double beta = std::atanh(0.8);
    std::vector<double> weight;
    std::vector<std::vector<int>> configs;
    for (int se : {-1, 1}) {
        for (int s1 : {-1, 1}) {
            for (int s2 : {-1, 1}) {
                for (int s3 : {-1, 1}) {
                    configs.push_back({se, s1, s2, s3});
                    weight.push_back(std::exp(beta * se * (s1 + s2 + s3) + h * (s1 + s2 + s3)));
                }
            }
        }
    }
    const double Z = std::accumulate(weight.begin(), weight.end(), 0.0);
    for (std::size_t i = 0; i < configs.size(); ++i) {
        EXPECT_NEAR(mu.probability(std::span<const int>(configs[i])), weight[i] / Z, 1e-15);
    }
    EXPECT_THROW(mu.probability(std::vector<int>{1, 1, 1}), InvalidArgument);
    EXPECT_THROW(mu.probability(std::vector<int>{1, 0, 1, 1}), InvalidArgument);
}

TEST(FiniteVolume, Guards) {
    EXPECT_THROW(FiniteVolumeIsing(2, 4, ThetaParam(0.5), std::vector<double>(24, 0.0)), ResourceLimit);
    EXPECT_THROW(FiniteVolumeIsing(2, 2, ThetaParam(0.5), std::vector<double>(5, 0.0)), InvalidArgument);
    EXPECT_THROW(verify_compatibility(constant(0), sys2(), ThetaParam(0.5), 1), InvalidArgument);
}

TEST(SphereField, FollowsStateTable) {
    FieldVector h{{1, 2, 3, 4, 5, 6, 7, 8, 9}};
    const SubgroupSpec& sp = sys2().spec;
    for (int m = 1; m <= 3; ++m) {
        const auto field = sphere_field(sys2(), h, m);
        const auto sphere = enumerate_ball(2, m).spheres.back();
        ASSERT_EQ(field.size(), sphere.size());
        for (std::size_t i = 0; i < sphere.size(); ++i) {
            const int cls = label(sphere[i], sp).residue;
            const int par = label(parent(sphere[i]), sp).residue;
            EXPECT_EQ(field[i], 1 + 3 * cls + par);
        }
    }
}

TEST(Compatibility, TranslationInvariantSolutionsPass) {
    for (double th : {0.3, 0.8}) {
        ThetaParam t(th);
        for (double h : solve_translation_invariant(2, t)) {
            CompatibilityReport rep = verify_compatibility(constant(h), sys2(), t, 2);
            EXPECT_TRUE(rep.passed) << "h=" << h << " dev=" << rep.max_deviation;
            EXPECT_EQ(rep.configurations, 1024u);
            EXPECT_LE(rep.max_deviation, 1e-10);
        }
    }
}

TEST(Compatibility, EverySolverSolutionPassesAtRadiusTwoAndThree) {
    ThetaParam t(0.8);
    SolutionSet set = solve_fixed_points(sys2(), t, SolverConfig{});
    for (const Solution& s : set.solutions) {
        EXPECT_TRUE(verify_compatibility(s.h, sys2(), t, 2).passed);
        EXPECT_TRUE(verify_compatibility(s.h, sys2(), t, 3).passed);
    }
    const auto sys3 = derive_system(standard_spec(3));
    for (const Solution& s : solve_fixed_points(sys3, ThetaParam(0.6), SolverConfig{}).solutions) {
        EXPECT_TRUE(verify_compatibility(s.h, sys3, ThetaParam(0.6), 2).passed);
    }
}

TEST(Compatibility, PolynomialBranchFieldsPass) {
    ThetaParam t(0.8);
    for (const Solution& s : solve_I1_polynomial(t).solutions.solutions) {
        EXPECT_TRUE(verify_compatibility(s.h, sys2(), t, 2).passed);
    }
}

TEST(Compatibility, PerturbedFieldFails) {
    ThetaParam t(0.8);
    const double hstar = solve_translation_invariant(2, t).back();
    FieldVector h = constant(hstar);
    h[0] += 0.1;
    CompatibilityReport rep = verify_compatibility(h, sys2(), t, 2);
    EXPECT_FALSE(rep.passed);
    EXPECT_GT(rep.max_deviation, 1e-6);
    EXPECT_GT(rep.field_residual, 0.05);

    // every state occurs on W_1, W_2 or W_3
    for (int coord = 0; coord < 9; ++coord) {
        FieldVector g = constant(hstar);
        g[static_cast<std::size_t>(coord)] += 0.1;
        const bool ok2 = verify_compatibility(g, sys2(), t, 2).passed;
        const bool ok3 = verify_compatibility(g, sys2(), t, 3).passed;
        EXPECT_FALSE(ok2 && ok3) << coord;
    }
}
