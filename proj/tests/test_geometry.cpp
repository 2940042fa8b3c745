#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "distrecon/geometry.hpp"
#include "test_support.hpp"

#include <random>

using namespace distrecon;
using namespace distrecon::testing;

TEST_CASE("squared distance matrix of the unit square") {
    const auto d = squared_distance_matrix(unit_square());
    CHECK(d(0, 0) == 0);
    CHECK(d(0, 1) == 1);
    CHECK(d(1, 0) == 1);
    CHECK(d(0, 2) == 2);
    CHECK(d(1, 3) == 2);
    CHECK(d(2, 3) == 1);
}

TEST_CASE("degenerate and axis-aligned distances") {
    auto p = PointConfig<Rat>::from_rows(2, {{3, 4}, {3, 4}});
    CHECK(squared_distance_matrix(p)(0, 1) == 0);
    auto q = PointConfig<Rat>::from_rows(2, {{0, 0}, {7, 0}});
    CHECK(squared_distance_matrix(q)(0, 1) == 49);
}

TEST_CASE("distance distribution of the unit square") {
    const auto ms = distance_distribution(unit_square());
    REQUIRE(ms.entries.size() == 2);
    CHECK(ms.total == 6);
    CHECK(ms.entries[0].first == 1);
    CHECK(ms.entries[0].second == 4);
    CHECK(ms.entries[1].first == 2);
    CHECK(ms.entries[1].second == 2);
}

TEST_CASE("float merge tolerance collapses near-equal values") {
    auto tri = PointConfig<double>::from_rows(
        2, {{0.0, 0.0}, {1.0, 0.0}, {0.5, 0.8660254037844386}});
    const auto ms = distance_distribution(tri);
    REQUIRE(ms.entries.size() == 1);
    CHECK(ms.entries[0].second == 3);
}

TEST_CASE("distribution requires two points") {
    auto p = PointConfig<Rat>::from_rows(2, {{1, 1}});
    CHECK_THROWS_AS(distance_distribution(p), invalid_input);
}

TEST_CASE("five-point example has all distances distinct") {
    const auto ms = distance_distribution(five_point_example());
    CHECK(ms.total == 10);
    CHECK(ms.entries.size() == 10);
    CHECK_FALSE(has_repeated_distances(five_point_example()));
}

TEST_CASE("rescaled distribution of the unit square") {
    const auto ms = rescaled_distribution(unit_square());
    REQUIRE(ms.entries.size() == 2);
    CHECK(ms.entries[0].first == Rat(1, 2));
    CHECK(ms.entries[0].second == 4);
    CHECK(ms.entries[1].first == 1);
    CHECK(ms.entries[1].second == 2);
}

TEST_CASE("rescaling is scale invariant") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto p = random_int_config(rng, 5, 2, 30);
        auto scaled = scale_config(p, Rat(3));
        CHECK(same_distribution(rescaled_distribution(p), rescaled_distribution(scaled)));
        auto shrunk = scale_config(p, Rat(-2, 7));
        CHECK(same_distribution(rescaled_distribution(p), rescaled_distribution(shrunk)));
    }
}

TEST_CASE("rescaling a totally coincident configuration fails") {
    auto p = PointConfig<Rat>::from_rows(2, {{2, 2}, {2, 2}, {2, 2}});
    CHECK_THROWS_AS(rescaled_distribution(p), degenerate_scale);
}

TEST_CASE("same_distribution basics") {
    const auto square = distance_distribution(unit_square());
    CHECK(same_distribution(square, square));

    // Rotated square through a rational rotation.
    auto rotated = apply_rigid_motion(unit_square(), rational_rotation(Rat(1, 2), false, Rat(3), Rat(-1)));
    CHECK(same_distribution(square, distance_distribution(rotated)));

    // Equilateral-ish triangle plus center has a different multiset.
    auto other = PointConfig<Rat>::from_rows(2, {{0, 0}, {4, 0}, {2, 3}, {2, 1}});
    CHECK_FALSE(same_distribution(square, distance_distribution(other)));
}

TEST_CASE("repeated distance detection") {
    CHECK(has_repeated_distances(unit_square()));
    auto p = PointConfig<Rat>::from_rows(2, {{0, 0}, {0, 0}, {1, 0}});
    CHECK(has_repeated_distances(p));  // 0 once, 1 twice
}

TEST_CASE("rigid motions preserve the distribution exactly") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        auto p = random_int_config(rng, 5, 2, 40);
        auto g = random_rational_motion(rng);
        auto q = apply_rigid_motion(p, g);
        CHECK(same_distribution(distance_distribution(p), distance_distribution(q)));
        auto relabeled = permute_points(q, random_relabeling(rng, 5));
        CHECK(same_distribution(distance_distribution(p), distance_distribution(relabeled)));
    }
}

TEST_CASE("identity motion fixes the configuration") {
    auto p = five_point_example();
    auto q = apply_rigid_motion(p, RigidMotion<Rat>::identity(2));
    CHECK(p.coords == q.coords);
}

TEST_CASE("motion dimension mismatch throws") {
    auto p = PointConfig<Rat>::from_rows(3, {{0, 0, 0}, {1, 0, 0}});
    CHECK_THROWS_AS(apply_rigid_motion(p, RigidMotion<Rat>::identity(2)), invalid_input);
}

TEST_CASE("orientation sign of motions") {
    CHECK(rational_rotation(Rat(2, 5), false, Rat(0), Rat(0)).orientation() == 1);
    CHECK(rational_rotation(Rat(2, 5), true, Rat(0), Rat(0)).orientation() == -1);
}

TEST_CASE("zero distance iff coincident points") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        auto p = random_int_config(rng, 4, 2, 15);
        p.coords.push_back(p.at(2, 0));
        p.coords.push_back(p.at(2, 1));  // duplicate point 2 as point 4
        const auto d = squared_distance_matrix(p);
        for (int i = 0; i < 5; ++i) {
            for (int j = i + 1; j < 5; ++j) {
                const bool coincide =
                    p.at(i, 0) == p.at(j, 0) && p.at(i, 1) == p.at(j, 1);
                CHECK((d(i, j) == 0) == coincide);
            }
        }
    }
}

TEST_CASE("congruence oracle finds rigid correspondences") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 4);  // 3..6
        auto p = random_int_config(rng, n, 2, 20);
        auto q = permute_points(apply_rigid_motion(p, random_rational_motion(rng)),
                                random_relabeling(rng, n));
        auto match = congruent(p, q, 1e-6);
        REQUIRE(match.has_value());
        // The returned motion maps p_i onto q_{pi(i)}.
        CHECK(match->max_residual <= 1e-6);
    }
}

TEST_CASE("congruence oracle rejects perturbed copies") {
    auto p = to_float_config(five_point_example());
    auto q = p;
    q.at(2, 0) += 0.1;
    CHECK_FALSE(congruent(p, q, 1e-9).has_value());
}

TEST_CASE("reflected square is congruent under the full Euclidean group") {
    auto p = unit_square();
    auto q = reflect_config(p);
    auto match = congruent(p, q, 1e-9);
    REQUIRE(match.has_value());
    CHECK(match->motion.orientation() == -1);
}

TEST_CASE("float rigid motions keep the distribution within 1e-12 of d_max") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    for (int trial = 0; trial < 30; ++trial) {
        PointConfig<double> p;
        p.dim = 2;
        for (int i = 0; i < 12; ++i) p.coords.push_back(unit(rng));
        const double a = angle(rng), c = std::cos(a), s = std::sin(a);
        RigidMotion<double> g;
        g.dim = 2;
        g.matrix = {c, -s, s, c};
        g.translation = {unit(rng), unit(rng)};
        const auto q = apply_rigid_motion(p, g);
        const auto dp = sorted_squared_distances(p);
        const auto dq = sorted_squared_distances(q);
        const double tol = 1e-12 * dp.back();
        for (size_t k = 0; k < dp.size(); ++k) CHECK(std::fabs(dp[k] - dq[k]) <= tol);
    }
}

TEST_CASE("explicit merge tolerance controls the binning") {
    auto p = PointConfig<double>::from_rows(2, {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.4}});
    const auto fine = distance_distribution(p, 1e-9);
    CHECK(fine.entries.size() == 3);
    const auto coarse = distance_distribution(p, 10.0);
    CHECK(coarse.entries.size() == 1);
    CHECK(coarse.entries[0].second == 3);
}

TEST_CASE("congruence search is guarded against factorial blow-up") {
    PointConfig<double> p;
    p.dim = 2;
    for (int i = 0; i < 2 * 11; ++i) p.coords.push_back(static_cast<double>(i));
    CHECK_THROWS_AS(congruent(p, p, 1e-9), invalid_input);
}

TEST_CASE("congruence oracle returns the lexicographically smallest relabeling") {
    // The unit square has several self-congruences; identity is lex-first.
    auto p = unit_square();
    auto match = congruent(p, p, 1e-9);
    REQUIRE(match.has_value());
    CHECK(match->relabeling == std::vector<int>{0, 1, 2, 3});
}
