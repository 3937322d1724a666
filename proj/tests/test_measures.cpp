#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "equipart/errors.hpp"
#include "equipart/measures.hpp"
#include "equipart/obstruction.hpp"

using namespace equipart;

namespace {

OrientedHyperplane through(std::vector<double> roots, int orientation = 1) {
    const int d = static_cast<int>(roots.size());
    return hyperplane_from_roots(std::span<const double>(roots), orientation, d);
}

Configuration random_config(std::mt19937_64& rng, int d, int k) {
    std::normal_distribution<double> g;
    std::vector<OrientedHyperplane> planes;
    for (int i = 0; i < k; ++i) {
        std::vector<double> c(static_cast<std::size_t>(d) + 1);
        for (auto& x : c) x = g(rng);
        planes.emplace_back(c);
    }
    return Configuration(d, planes);
}

}  // namespace

TEST(IntervalMeasure, Validation) {
    EXPECT_THROW(IntervalMeasure(3, 1.0, 1.0), Error);
    EXPECT_THROW(IntervalMeasure(0, 0.0, 1.0), Error);
    EXPECT_DOUBLE_EQ(IntervalMeasure(3, -1.0, 2.5).total_mass(), 3.5);
}

TEST(DiscreteMeasure, Validation) {
    EXPECT_THROW(DiscreteMeasure({{{1.0}, -1.0}}), Error);
    EXPECT_THROW(DiscreteMeasure({{{1.0}, 1.0}, {{1.0, 2.0}, 1.0}}), Error);
    EXPECT_DOUBLE_EQ(DiscreteMeasure({{{1.0}, 1.5}, {{2.0}, 2.0}}).total_mass(), 3.5);
}

TEST(OrthantMass, MidpointBisection) {
    const Configuration c(1, {through({0.5})});
    const Measure mu = IntervalMeasure(1, 0.0, 1.0);
    EXPECT_NEAR(orthant_mass(mu, c, 0), 0.5, 1e-15);
    EXPECT_NEAR(orthant_mass(mu, c, 1), 0.5, 1e-15);
}

TEST(OrthantMass, CoincidentPlanesEmptyMixedOrthants) {
    std::mt19937_64 rng(11);
    auto c = random_config(rng, 5, 3);
    c.planes[1] = c.planes[0];
    const Measure mu = IntervalMeasure(5, -1.0, 1.3);
    const auto masses = orthant_masses(mu, c);
    for (Label j = 0; j < 8; ++j) {
        if (((j >> 0) & 1U) != ((j >> 1) & 1U)) EXPECT_EQ(masses[j], 0.0) << j;
    }
}

TEST(OrthantMass, RealizedOrbitIsEquipartition) {
    const ProblemSpec spec{5, 3, {ConstraintKind::Full, ConstraintKind::Full, ConstraintKind::Bisector}};
    const auto report = enumerate_orbits(spec);
    const auto z = realize(spec, report.orbits[4].canonical, default_intervals(spec));
    for (double m : orthant_masses(Measure(IntervalMeasure(5, 0.0, 8.0)), z.config)) EXPECT_NEAR(m, 1.0, 1e-10);
    for (double m : orthant_masses(Measure(IntervalMeasure(5, 9.0, 17.0)), z.config)) EXPECT_NEAR(m, 1.0, 1e-10);
    EXPECT_NEAR(bisector_defect(Measure(IntervalMeasure(5, 18.0, 20.0)), z.config.planes[2]) *
                    bisector_defect(Measure(IntervalMeasure(5, 18.0, 20.0)), z.config.planes[0]) *
                    bisector_defect(Measure(IntervalMeasure(5, 18.0, 20.0)), z.config.planes[1]),
                0.0, 1e-10);
}

TEST(OrthantMass, AdditivityRandom) {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 1 + trial % 6;
        const int k = 1 + trial % 4;
        const auto c = random_config(rng, d, k);
        const Measure iv = IntervalMeasure(d, -2.0 + 0.01 * trial, 1.0 + 0.02 * trial);
        auto masses = orthant_masses(iv, c);
        EXPECT_NEAR(std::accumulate(masses.begin(), masses.end(), 0.0), total_mass(iv), 1e-9 * total_mass(iv));
        std::vector<WeightedPoint> pts;
        for (int i = 0; i < 30; ++i) {
            std::vector<double> x(static_cast<std::size_t>(d));
            for (auto& v : x) v = g(rng);
            pts.push_back({x, 0.5 + i});
        }
        const Measure dm = DiscreteMeasure(pts);
        masses = orthant_masses(dm, c);
        EXPECT_NEAR(std::accumulate(masses.begin(), masses.end(), 0.0), total_mass(dm), 1e-9 * total_mass(dm));
    }
}

// Monte-Carlo oracle: sample the parameter uniformly, classify each curve
// point by direct evaluation of the affine forms, compare within 3 standard errors.
TEST(OrthantMass, MonteCarloAgreement) {
    std::mt19937_64 rng(13);
    const int d = 4;
    const int k = 3;
    const auto c = random_config(rng, d, k);
    const double lo = -1.2;
    const double hi = 1.4;
    const auto exact = orthant_masses(Measure(IntervalMeasure(d, lo, hi)), c);
    const int samples = 1000000;
    std::vector<int> hits(8, 0);
    std::uniform_real_distribution<double> u(lo, hi);
    for (int s = 0; s < samples; ++s) {
        const double t = u(rng);
        Label label = 0;
        for (int j = 0; j < k; ++j) {
            const auto& h = c.planes[static_cast<std::size_t>(j)];
            double v = h.a0();
            double p = 1.0;
            for (int i = 0; i < d; ++i) {
                p *= t;
                v += h.a(i) * p;
            }
            if (v < 0) label |= 1U << j;
        }
        ++hits[label];
    }
    for (Label j = 0; j < 8; ++j) {
        const double p = exact[j] / (hi - lo);
        const double est = static_cast<double>(hits[j]) / samples;
        const double se = std::sqrt(std::max(p * (1 - p), 1e-12) / samples);
        EXPECT_LE(std::abs(est - p), 3 * se + 1e-12) << "label " << j;
    }
}

TEST(OrthantMass, DiscreteTieGoesToPositiveSide) {
    const std::vector<double> normal{1.0};
    const auto h = OrientedHyperplane::from_affine(-1.0, normal);  // x = 1
    const Measure mu = DiscreteMeasure({{{1.0}, 2.0}, {{0.0}, 1.0}});
    const Configuration c(1, {h});
    EXPECT_DOUBLE_EQ(orthant_mass(mu, c, 0), 2.0);
    EXPECT_DOUBLE_EQ(orthant_mass(mu, c, 1), 1.0);
}

TEST(OrthantMass, Errors) {
    const Configuration c(2, {through({0.0, 1.0})});
    EXPECT_THROW(orthant_masses(Measure(IntervalMeasure(3, 0.0, 1.0)), c), Error);
    EXPECT_THROW(orthant_mass(Measure(IntervalMeasure(2, 0.0, 1.0)), c, 2), Error);
}

TEST(CurveCrossings, RoundTrip) {
    const auto h = through({1, 2, 3, 4, 5});
    const auto roots = curve_crossings(h, 0.0, 6.0);
    ASSERT_EQ(roots.size(), 5U);
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(roots[static_cast<std::size_t>(i)], i + 1.0, 1e-9);
    EXPECT_TRUE(curve_crossings(h, 5.5, 9.0).empty());
}

TEST(CurveCrossings, RandomRationalRoots) {
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<int> num(-40, 40);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 1 + trial % 7;
        std::vector<double> roots;
        while (static_cast<int>(roots.size()) < d) {
            const double r = num(rng) / 8.0;
            if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
        }
        std::sort(roots.begin(), roots.end());
        const auto got = curve_crossings(through(roots, trial % 2 ? 1 : -1), -6.0, 6.0);
        ASSERT_EQ(got.size(), roots.size()) << trial;
        for (std::size_t i = 0; i < roots.size(); ++i) EXPECT_NEAR(got[i], roots[i], 1e-9);
    }
}

TEST(CurveCrossings, TangencyRefused) {
    // t^2 - 2t + 1 touches zero at t = 1 without crossing.
    const OrientedHyperplane h({1.0, -2.0, 1.0});
    try {
        curve_crossings(h, 0.0, 2.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateTangency);
    }
}

TEST(BisectorDefect, Examples) {
    EXPECT_NEAR(bisector_defect(Measure(IntervalMeasure(1, 0.0, 1.0)), through({0.5})), 0.0, 1e-15);
    const OrientedHyperplane inf({1.0, 0.0});
    EXPECT_DOUBLE_EQ(bisector_defect(Measure(IntervalMeasure(1, 0.0, 3.0)), inf), 3.0);
    const auto h = through({1.0});
    const double v = bisector_defect(Measure(IntervalMeasure(1, 0.0, 3.0)), h);
    EXPECT_NEAR(std::abs(v), 1.0, 1e-15);
    EXPECT_NEAR(bisector_defect(Measure(IntervalMeasure(1, 0.0, 3.0)), h.antipode()), -v, 1e-15);
}
