#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "distrecon/invariants.hpp"
#include "test_support.hpp"

#include <random>

using namespace distrecon;
using namespace distrecon::testing;

namespace {

GArguments<Rat> four_point_args(const PointConfig<Rat>& p, int i, int j, int k, int l) {
    const auto d = squared_distance_matrix(p);
    return {d(i, j), d(i, k), d(i, l), d(j, k), d(j, l), d(k, l)};
}

}  // namespace

TEST_CASE("pinned evaluations") {
    CHECK(eval_g<Rat>({1, 2, 1, 1, 2, 1}) == 0);   // unit square
    CHECK(eval_g<Rat>({1, 1, 1, 1, 1, 1}) == -4);  // regular tetrahedron
    CHECK(eval_g<Rat>({0, 0, 0, 0, 0, 0}) == 0);
    CHECK(eval_g_det<Rat>({1, 1, 1, 1, 1, 1}) == -4);
    CHECK(eval_g_det<Rat>({0, 0, 0, 0, 0, 0}) == 0);
}

TEST_CASE("polynomial vanishes on planar 4-point squared distances") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 500; ++trial) {
        auto p = random_int_config(rng, 4, 2, 100);
        CHECK(eval_g(four_point_args(p, 0, 1, 2, 3)) == 0);
        CHECK(eval_g_det(four_point_args(p, 0, 1, 2, 3)) == 0);
    }
}

TEST_CASE("determinant form equals the polynomial on arbitrary arguments") {
    std::mt19937_64 rng(103);
    std::uniform_int_distribution<int> v(-60, 60);
    for (int trial = 0; trial < 1000; ++trial) {
        GArguments<Rat> a{Rat(v(rng)), Rat(v(rng)), Rat(v(rng)),
                          Rat(v(rng)), Rat(v(rng)), Rat(v(rng))};
        CHECK(eval_g_det(a) == eval_g(a));
    }
}

TEST_CASE("degree-3 homogeneity") {
    std::mt19937_64 rng(107);
    std::uniform_int_distribution<int> v(-40, 40);
    for (int trial = 0; trial < 100; ++trial) {
        GArguments<Rat> a{Rat(v(rng)), Rat(v(rng)), Rat(v(rng)),
                          Rat(v(rng)), Rat(v(rng)), Rat(v(rng))};
        const Rat lambda = random_small_rational(rng);
        GArguments<Rat> scaled = a;
        for (Rat& x : scaled) x *= lambda;
        CHECK(eval_g(scaled) == lambda * lambda * lambda * eval_g(a));
    }
}

TEST_CASE("general-m form specializes to the planar polynomial") {
    std::mt19937_64 rng(109);
    std::uniform_int_distribution<int> v(-30, 30);
    for (int trial = 0; trial < 200; ++trial) {
        // Lexicographic layout over {0..3}: e01,e02,e03,e12,e13,e23.
        std::vector<Rat> e(6);
        for (Rat& x : e) x = Rat(v(rng));
        const Rat lhs = eval_gm(2, e);
        const Rat rhs = eval_g<Rat>({e[3], e[4], e[0], e[5], e[1], e[2]});
        CHECK(lhs == rhs);
    }
}

TEST_CASE("general-m argument count is enforced") {
    std::vector<Rat> wrong(5, Rat(1));
    CHECK_THROWS_AS(eval_gm(2, wrong), invalid_input);
    CHECK(gm_argument_count(3) == 10);
}

TEST_CASE("all-ones in three dimensions is nonzero") {
    std::vector<Rat> ones(10, Rat(1));
    CHECK(eval_gm(3, ones) == 5);
}

TEST_CASE("general-m form vanishes on genuine R^3 distances") {
    std::mt19937_64 rng(113);
    const PairTable slots(5);
    for (int trial = 0; trial < 200; ++trial) {
        auto p = random_int_config(rng, 5, 3, 9);
        const auto d = squared_distance_matrix(p);
        std::vector<Rat> args(10);
        for (int id = 0; id < slots.count(); ++id) {
            const PairKey k = slots.key(id);
            args[id] = d(k.i, k.j);
        }
        CHECK(eval_gm(3, args) == 0);
    }
}

TEST_CASE("signed areas") {
    using P = Point2<Rat>;
    CHECK(signed_area(P{1, 0}, P{0, 1}, P{0, 0}) == 1);
    CHECK(signed_area(P{0, 1}, P{1, 0}, P{0, 0}) == -1);
    CHECK(signed_area(P{0, 0}, P{1, 1}, P{2, 2}) == 0);
}

TEST_CASE("planar accessor rejects other dimensions") {
    auto p = PointConfig<Rat>::from_rows(3, {{0, 0, 0}, {1, 0, 0}});
    CHECK_THROWS_AS(point2(p, 0), invalid_input);
}

TEST_CASE("orientation invariant vanishes when two arguments coincide") {
    using P = Point2<Rat>;
    CHECK(eval_I(P{0, 0}, P{3, 1}, P{2, 5}, P{2, 5}) == 0);
}

TEST_CASE("orientation invariant under relabelings, negation under reflection") {
    std::mt19937_64 rng(127);
    for (int trial = 0; trial < 25; ++trial) {
        std::array<Point2<Rat>, 4> q;
        for (auto& pt : q) pt = {random_small_rational(rng, 20, 5), random_small_rational(rng, 20, 5)};
        const Rat base = eval_I(q[0], q[1], q[2], q[3]);

        std::array<int, 4> idx{0, 1, 2, 3};
        do {
            CHECK(eval_I(q[idx[0]], q[idx[1]], q[idx[2]], q[idx[3]]) == base);
        } while (std::next_permutation(idx.begin(), idx.end()));

        std::array<Point2<Rat>, 4> refl = q;
        for (auto& pt : refl) pt[0] = -pt[0];
        CHECK(eval_I(refl[0], refl[1], refl[2], refl[3]) == -base);

        std::array<Point2<Rat>, 4> shifted = q;
        for (auto& pt : shifted) {
            pt[0] += Rat(13, 3);
            pt[1] -= Rat(8, 5);
        }
        CHECK(eval_I(shifted[0], shifted[1], shifted[2], shifted[3]) == base);
    }
}

TEST_CASE("orientation invariant under float rotations at relative 1e-9") {
    std::mt19937_64 rng(131);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    for (int trial = 0; trial < 100; ++trial) {
        std::array<Point2<double>, 4> q;
        for (auto& pt : q) pt = {unit(rng), unit(rng)};
        const double base = eval_I(q[0], q[1], q[2], q[3]);
        const double a = angle(rng), c = std::cos(a), s = std::sin(a);
        const double tx = unit(rng) * 10 - 5, ty = unit(rng) * 10 - 5;
        std::array<Point2<double>, 4> moved;
        for (int i = 0; i < 4; ++i) {
            moved[i] = {c * q[i][0] - s * q[i][1] + tx, s * q[i][0] + c * q[i][1] + ty};
        }
        const double rotated = eval_I(moved[0], moved[1], moved[2], moved[3]);
        CHECK(std::fabs(rotated - base) <= 1e-9 * std::max(1.0, std::fabs(base)));
    }
}

TEST_CASE("orientation distribution basics") {
    auto p = passing_asymmetric_five();
    const auto od = orientation_distribution(p);
    CHECK(od.total == 5);  // C(5,4)

    std::mt19937_64 rng(137);
    auto p4 = random_int_config(rng, 4, 2, 10);
    const auto od4 = orientation_distribution(p4);
    CHECK(od4.total == 1);

    auto rotated = apply_rigid_motion(p, rational_rotation(Rat(1, 3), false, Rat(2), Rat(5)));
    CHECK(same_orientation_distribution(od, orientation_distribution(rotated)));

    auto reflected = reflect_config(p);
    CHECK(mirrored_orientation_distribution(od, orientation_distribution(reflected)));
}

TEST_CASE("orientation distribution preconditions") {
    auto p3 = PointConfig<Rat>::from_rows(2, {{0, 0}, {1, 0}, {0, 1}});
    CHECK_THROWS_AS(orientation_distribution(p3), invalid_input);
    auto p3d = PointConfig<Rat>::from_rows(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK_THROWS_AS(orientation_distribution(p3d), invalid_input);
}

TEST_CASE("symmetric distribution detection") {
    OrientationDistribution<Rat> zero;
    zero.entries = {{Rat(0), 3}};
    zero.total = 3;
    CHECK(is_symmetric_distribution(zero));

    OrientationDistribution<Rat> pair;
    pair.entries = {{Rat(-5), 1}, {Rat(5), 1}};
    pair.total = 2;
    CHECK(is_symmetric_distribution(pair));

    CHECK_FALSE(is_symmetric_distribution(orientation_distribution(passing_asymmetric_five())));
}
