#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "equipart/errors.hpp"
#include "equipart/parity_pl.hpp"

using namespace equipart;

namespace {

// Barycentric coordinates of 0 in the simplex spanned by the images, by
// plain Gaussian elimination. Generic inputs only.
bool origin_inside(const std::vector<std::vector<double>>& w) {
    const std::size_t n = w.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t r = 0; r + 1 < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) a[r][c] = w[c][r];
    }
    for (std::size_t c = 0; c < n; ++c) a[n - 1][c] = 1.0;
    a[n - 1][n] = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        }
        std::swap(a[c], a[p]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
        if (a[c][n] / a[c][c] <= 0.0) return false;
    }
    return true;
}

int oracle_zero_parity(const PLManifoldMap& m) {
    int count = 0;
    for (const auto& s : m.simplices) {
        std::vector<std::vector<double>> w;
        for (int v : s) w.push_back(m.values[static_cast<std::size_t>(v)]);
        count += origin_inside(w);
    }
    return count % 2;
}

PLManifoldMap shifted_identity(int n, int refine, std::vector<double> offset) {
    auto m = cross_polytope_ball(n, refine);
    for (std::size_t v = 0; v < m.values.size(); ++v) {
        for (int i = 0; i < n; ++i) m.values[v][static_cast<std::size_t>(i)] = m.coords[v][static_cast<std::size_t>(i)] + offset[static_cast<std::size_t>(i)];
    }
    m.validate();
    return m;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(ZeroParity, Segment) {
    PLManifoldMap m{1, {{0, 1}}, {}, {{-1.0}, {2.0}}, {}};
    m.validate();
    EXPECT_EQ(m.boundary.size(), 2U);
    EXPECT_EQ(zero_parity(m), 1);
    EXPECT_EQ(ray_parity(m, RaySpec{{1.0}}).parity, 1);
    EXPECT_EQ(ray_parity(m, RaySpec{{-1.0}}).parity, 1);
    PLManifoldMap same_sign{1, {{0, 1}, {1, 2}}, {}, {{1.0}, {-2.0}, {3.0}}, {}};
    same_sign.validate();
    EXPECT_EQ(zero_parity(same_sign), 0);
    EXPECT_TRUE(boundary_identity(same_sign).equal);
}

TEST(ZeroParity, ConstantMapHasNoZeros) {
    auto m = cross_polytope_ball(2, 1);
    for (auto& v : m.values) v = {0.3, -0.4};
    m.validate();
    EXPECT_EQ(zero_parity(m), 0);
    EXPECT_EQ(ray_parity(m, RaySpec{{0.0, 1.0}}).parity, 0);
}

TEST(ZeroParity, WindingLoop) {
    const auto m = shifted_identity(2, 1, {0.11, 0.07});
    EXPECT_EQ(zero_parity(m), 1);
    EXPECT_EQ(oracle_zero_parity(m), 1);
    const auto bi = boundary_identity(m);
    EXPECT_TRUE(bi.equal);
    EXPECT_EQ(bi.rhs, 1);
}

TEST(ZeroParity, LoopNotEnclosingOrigin) {
    const auto m = shifted_identity(2, 1, {3.0, 2.5});
    EXPECT_EQ(zero_parity(m), 0);
    EXPECT_EQ(boundary_identity(m).rhs, 0);
    const auto ball = shifted_identity(3, 1, {0.11, 0.07, 0.05});
    EXPECT_EQ(zero_parity(ball), 1);
}

TEST(ZeroParity, MatchesFloatingOracleOnRandomMaps) {
    for (std::uint64_t s = 0; s < 150; ++s) {
        const int n = 1 + static_cast<int>(s % 3);
        const auto m = random_generic_map(n, s);
        EXPECT_EQ(zero_parity(m), oracle_zero_parity(m)) << "seed " << s;
    }
}

TEST(RayParity, IndependentOfDirection) {
    std::mt19937_64 rng(51);
    std::normal_distribution<double> g;
    for (int n = 1; n <= 3; ++n) {
        const auto m = random_generic_map(n, 100 + static_cast<std::uint64_t>(n));
        const int base = zero_parity(m);
        for (int t = 0; t < 100; ++t) {
            std::vector<double> v(static_cast<std::size_t>(n));
            for (auto& x : v) x = g(rng);
            EXPECT_EQ(ray_parity(m, RaySpec{v}, kDefaultRayRetries).parity, base);
        }
    }
}

TEST(BoundaryIdentity, RandomMaps) {
    int failures = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto bi = boundary_identity(random_generic_map(1 + static_cast<int>(s % 3), 1000 + s));
        failures += !bi.equal;
    }
    EXPECT_EQ(failures, 0);
}

// Moving every value by less than the distance from 0 to the boundary image
// is a homotopy without boundary zeros, so the parity cannot change.
TEST(BoundaryIdentity, SmallPerturbationKeepsParity) {
    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::uint64_t s = 0; s < 60; ++s) {
        const int n = 1 + static_cast<int>(s % 3);
        auto m = random_generic_map(n, 2000 + s);
        const int before = zero_parity(m);
        const double delta = 0.25 * min_face_distance(m) / std::sqrt(static_cast<double>(n));
        for (auto& val : m.values) {
            for (auto& x : val) x += delta * u(rng);
        }
        EXPECT_EQ(ray_parity(m, RaySpec{std::vector<double>(static_cast<std::size_t>(n), 1.0)}, kDefaultRayRetries).parity, before);
    }
}

TEST(BorsukUlam, OddOnBoundaryMeansOddParity) {
    for (int n = 1; n <= 3; ++n) {
        const auto r = bu_check(n, 7, 25);
        EXPECT_TRUE(r.all_odd) << n;
        EXPECT_EQ(r.parities.size(), 25U);
    }
    const auto m = random_boundary_odd_ball(2, 3);
    const auto anti = antipode_map(m);
    for (const auto& f : m.boundary) {
        for (int v : f) {
            const int w = anti[static_cast<std::size_t>(v)];
            ASSERT_GE(w, 0);
            EXPECT_EQ(m.values[static_cast<std::size_t>(w)][0], -m.values[static_cast<std::size_t>(v)][0]);
        }
    }
}

TEST(Decompose, Hemispheres) {
    for (int n = 2; n <= 3; ++n) {
        const auto m = random_boundary_odd_ball(n, 11);
        const std::vector<DecompositionPiece> pieces{{upper_hemisphere(m), std::nullopt}, {lower_hemisphere(m), std::nullopt}};
        const auto r = decompose_parity(m, pieces);
        EXPECT_TRUE(r.consistent);
        EXPECT_EQ(r.total, 1);
        EXPECT_EQ(r.direct, 1);
        EXPECT_EQ((r.piece_parities[0] + r.piece_parities[1]) % 2, 1);
    }
}

TEST(Decompose, SinglePieceAndOtherRay) {
    const auto m = random_generic_map(3, 12);
    const auto r = decompose_parity(m, {{m.boundary, std::nullopt}});
    EXPECT_TRUE(r.consistent);
    const auto other = decompose_parity(m, {{m.boundary, std::nullopt}}, RaySpec{{0.3, -0.8, 0.5}});
    EXPECT_EQ(other.total, r.direct);
}

TEST(Decompose, DeclaredShields) {
    const auto m = shifted_identity(3, 0, {0.11, 0.07, 0.05});
    const std::vector<DecompositionPiece> bare{{upper_hemisphere(m), std::nullopt}, {lower_hemisphere(m), std::nullopt}};
    EXPECT_EQ(decompose_parity(m, bare).total, 1);
    // x + 0.11 changes sign along the equator edge from (0,1,0) to (-1,0,0).
    const std::vector<DecompositionPiece> bad{{upper_hemisphere(m), 0}, {lower_hemisphere(m), std::nullopt}};
    EXPECT_EQ(kind_of([&] { decompose_parity(m, bad); }), ErrorKind::ShieldViolation);
    const auto far = shifted_identity(3, 0, {2.0, 0.07, 0.05});
    const std::vector<DecompositionPiece> good{{upper_hemisphere(far), 0}, {lower_hemisphere(far), 0}};
    const auto r = decompose_parity(far, good);
    EXPECT_TRUE(r.consistent);
    EXPECT_EQ(r.total, 0);
}

TEST(Decompose, AdversarialRefused) {
    const auto inst = adversarial_unshielded();
    EXPECT_EQ(kind_of([&] { decompose_parity(inst.map, inst.pieces); }), ErrorKind::ShieldViolation);
}

TEST(Decompose, PiecesMustPartition) {
    const auto m = random_boundary_odd_ball(2, 13);
    EXPECT_THROW(decompose_parity(m, {{upper_hemisphere(m), std::nullopt}}), Error);
}

TEST(SymmetricCancel, OddMapAntipodalHalves) {
    for (int n = 2; n <= 3; ++n) {
        for (std::uint64_t s = 0; s < 10; ++s) {
            const auto m = random_boundary_odd_ball(n, 300 + s);
            const auto r = symmetric_cancel(m, upper_hemisphere(m), lower_hemisphere(m), antipode_map(m), 1);
            EXPECT_EQ(r.zeros_y1, r.zeros_y2);
            EXPECT_EQ(r.value, r.zeros_y1 % 2);
            EXPECT_EQ(r.value, r.direct);
        }
    }
}

TEST(SymmetricCancel, EvenLastComponentCancels) {
    auto m = random_boundary_odd_ball(2, 21);
    const auto anti = antipode_map(m);
    for (const auto& f : upper_hemisphere(m)) {
        for (int v : f) {
            const auto w = static_cast<std::size_t>(anti[static_cast<std::size_t>(v)]);
            m.values[w][1] = m.values[static_cast<std::size_t>(v)][1];
        }
    }
    const auto r = symmetric_cancel(m, upper_hemisphere(m), lower_hemisphere(m), anti, 0);
    EXPECT_EQ(r.value, 0);
    EXPECT_EQ(r.direct, 0);
    if (r.zeros_y1 > 0) {
        EXPECT_EQ(kind_of([&] { symmetric_cancel(m, upper_hemisphere(m), lower_hemisphere(m), anti, 1); }),
                  ErrorKind::InvalidSymmetry);
    }
    EXPECT_THROW(symmetric_cancel(m, upper_hemisphere(m), lower_hemisphere(m), anti, 2), Error);
}

TEST(SymmetricCancel, IdentityPairing) {
    const auto m = random_boundary_odd_ball(3, 22);
    std::vector<int> id(static_cast<std::size_t>(m.vertex_count()));
    std::iota(id.begin(), id.end(), 0);
    const auto up = upper_hemisphere(m);
    const auto r = symmetric_cancel(m, up, up, id, 0);
    EXPECT_EQ(r.value, 0);
    EXPECT_EQ(r.direct, 0);
    EXPECT_EQ(r.zeros_y1, r.zeros_y2);
}

TEST(Errors, GenericityViolation) {
    auto m = shifted_identity(2, 0, {0.11, 0.07});
    m.values[1] = {0.0, 0.0};
    EXPECT_EQ(kind_of([&] { check_genericity(m); }), ErrorKind::GenericityViolation);
    EXPECT_EQ(kind_of([&] { zero_parity(m); }), ErrorKind::GenericityViolation);
}

TEST(Errors, NonTransverseRay) {
    const auto m = shifted_identity(2, 0, {0.11, 0.07});
    const auto through_vertex = m.values[1];
    EXPECT_EQ(kind_of([&] { ray_parity(m, RaySpec{through_vertex}, 0); }), ErrorKind::NonTransverseRay);
    const auto jittered = ray_parity(m, RaySpec{through_vertex}, kDefaultRayRetries);
    EXPECT_GE(jittered.retries, 1);
    EXPECT_EQ(jittered.parity, zero_parity(m));
    EXPECT_THROW(ray_parity(m, RaySpec{{0.0, 0.0}}), Error);
}

TEST(Errors, InvalidMesh) {
    PLManifoldMap fan{2, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}}, {}, std::vector<std::vector<double>>(5, {1.0, 1.0}), {}};
    EXPECT_EQ(kind_of([&] { fan.validate(); }), ErrorKind::InvalidMesh);
    PLManifoldMap short_simplex{2, {{0, 1}}, {}, std::vector<std::vector<double>>(2, {1.0, 1.0}), {}};
    EXPECT_THROW(short_simplex.validate(), Error);
    PLManifoldMap bad_vertex{1, {{0, 5}}, {}, std::vector<std::vector<double>>(2, {1.0}), {}};
    EXPECT_THROW(bad_vertex.validate(), Error);
}

TEST(Meshes, GeneratorsAreValid) {
    for (int n = 1; n <= 3; ++n) {
        for (int refine = 0; refine <= 1; ++refine) {
            auto m = cross_polytope_ball(n, refine);
            EXPECT_NO_THROW(m.validate());
            for (int v : antipode_map(m)) EXPECT_NE(v, -2);
            EXPECT_EQ(upper_hemisphere(m).size() + lower_hemisphere(m).size(), m.boundary.size());
        }
        auto cube = kuhn_cube(n, 2);
        cube.validate();
        std::size_t expected = 1;
        for (int i = 1; i <= n; ++i) expected *= static_cast<std::size_t>(2 * i);
        EXPECT_EQ(cube.simplices.size(), expected);
        const auto before = cube.simplices.size();
        stellar_subdivide(cube, 0);
        cube.validate();
        EXPECT_EQ(cube.simplices.size(), before + static_cast<std::size_t>(n));
    }
}
