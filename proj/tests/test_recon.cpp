#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "distrecon/recon.hpp"
#include "test_support.hpp"

#include <random>

using namespace distrecon;
using namespace distrecon::testing;

TEST_CASE("combination counts match the closed form") {
    CHECK(count_combinations(4) == 576);
    CHECK(count_combinations(5) == 100800);
    CHECK(count_combinations(6) == 2059200);
    CHECK(count_combinations(7) == 19535040);
    CHECK(count_combinations(8) == 120556800);
    CHECK_THROWS_AS(count_combinations(3), invalid_input);
}

TEST_CASE("product form equals the expanded degree-11 polynomial over 16") {
    for (int n = 4; n <= 40; ++n) {
        const Rat nn(n);
        Rat poly = nn;  // horner over the printed coefficients
        const long coef[] = {1, -7, -8, 138, -83, -983, 1074, 2996, -3672, -3296, 3840};
        Rat acc(coef[0]);
        for (int idx = 1; idx < 11; ++idx) acc = acc * nn + Rat(coef[idx]);
        poly = acc * nn;  // the polynomial has no constant term
        CHECK(Rat(16) * Rat(static_cast<unsigned long>(count_combinations(n))) == poly);
    }
}

TEST_CASE("enumeration agrees with the count") {
    CHECK(enumerate_combinations_count(4) == 576);
    CHECK(enumerate_combinations_count(5) == 100800);
    CHECK(enumerate_combinations_md_count(4, 2) == 576);
    CHECK(count_combinations_md(4, 2) == 576);
    CHECK(count_combinations_md(5, 3) == 2419200);
    CHECK(enumerate_combinations_md_count(5, 3) == 2419200);
}

TEST_CASE("canonical enumeration order, first tuple of n=4") {
    bool first = true;
    ComboTuple2D head;
    for_each_combination_2d(4, [&](const ComboTuple2D& t) {
        if (first) {
            head = t;
            first = false;
            return false;
        }
        return true;
    });
    CHECK(head.i0 == 0);
    CHECK(head.i1 == 1);
    CHECK(head.i2 == 2);
    CHECK(head.middles[0] == make_pair_key(0, 3));
    CHECK(head.middles[1] == make_pair_key(1, 2));
    CHECK(head.middles[2] == make_pair_key(1, 3));
    CHECK(head.middles[3] == make_pair_key(2, 3));
}

TEST_CASE("five-point example fails with an exact zero witness") {
    const auto rep = test_reconstructible_2d(five_point_example());
    CHECK(rep.verdict == Verdict::FailsTest);
    CHECK(rep.exact);
    REQUIRE(rep.witness.has_value());
    REQUIRE(rep.witness_g.has_value());
    CHECK(*rep.witness_g == 0);
    const WitnessTuple& w = *rep.witness;
    CHECK(w.i0 == 0);
    CHECK(w.i1 == 1);
    CHECK(w.i2 == 3);
    REQUIRE(w.slots.size() == 6);
    CHECK(w.slots[0] == make_pair_key(0, 1));
    CHECK(w.slots[1] == make_pair_key(0, 2));
    CHECK(w.slots[2] == make_pair_key(1, 4));
    CHECK(w.slots[3] == make_pair_key(3, 4));
    CHECK(w.slots[4] == make_pair_key(0, 4));
    CHECK(w.slots[5] == make_pair_key(0, 3));
    CHECK(rep.combos_checked == 1796);  // canonical ordinal of that witness
    CHECK(rep.combos_total == 100800);
    CHECK_FALSE(rep.repeated_distances);
}

TEST_CASE("the unit square fails through an admissible vanishing tuple") {
    const auto rep = test_reconstructible_2d(unit_square());
    CHECK(rep.verdict == Verdict::FailsTest);
    CHECK(rep.repeated_distances);
    REQUIRE(rep.witness_g.has_value());
    CHECK(*rep.witness_g == 0);
}

TEST_CASE("early exit on repeated distances skips the enumeration") {
    TestOptions opt;
    opt.early_exit_repeated = true;
    const auto rep = test_reconstructible_2d(unit_square(), opt);
    CHECK(rep.verdict == Verdict::FailsTest);
    CHECK(rep.repeated_distances);
    CHECK_FALSE(rep.witness.has_value());
    CHECK(rep.combos_checked == 0);
}

TEST_CASE("frozen passing configuration") {
    const auto rep = test_reconstructible_2d(passing_asymmetric_five());
    CHECK(rep.verdict == Verdict::PassesTest);
    CHECK(rep.certified);
    CHECK(rep.combos_checked == 100800);
    REQUIRE(rep.min_abs_g.has_value());
    CHECK(*rep.min_abs_g > 0);
}

TEST_CASE("small configurations are not applicable") {
    auto tri = PointConfig<Rat>::from_rows(2, {{0, 0}, {1, 0}, {0, 1}});
    CHECK(test_reconstructible_2d(tri).verdict == Verdict::NotApplicable);
    auto line3d = PointConfig<Rat>::from_rows(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(test_reconstructible_md(line3d).verdict == Verdict::NotApplicable);
    CHECK_THROWS_AS(test_reconstructible_2d(line3d), invalid_input);
}

TEST_CASE("an n=4 pass carries no certificate") {
    auto p = PointConfig<Rat>::from_rows(2, {{0, 0}, {1, 0}, {2, 2}, {3, 5}});
    REQUIRE_FALSE(has_repeated_distances(p));
    const auto rep = test_reconstructible_2d(p);
    CHECK(rep.verdict == Verdict::PassesTest);
    CHECK_FALSE(rep.certified);
    CHECK(rep.combos_checked == 576);
}

TEST_CASE("float mode passes a generic configuration") {
    std::mt19937_64 rng(314159);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    PointConfig<double> p;
    p.dim = 2;
    for (int i = 0; i < 10; ++i) p.coords.push_back(unit(rng));
    const auto rep = test_reconstructible_2d(p);
    CHECK_FALSE(rep.exact);
    CHECK(rep.verdict == Verdict::PassesTest);
    CHECK(rep.threshold > 0);
}

TEST_CASE("general-m test specializes to the planar test") {
    const auto p = five_point_example();
    const auto rep2d = test_reconstructible_2d(p);
    const auto repmd = test_reconstructible_md(p);
    CHECK(repmd.verdict == rep2d.verdict);
    CHECK(repmd.combos_total == rep2d.combos_total);

    // The two enumerations see the same multiset of evaluations.
    const auto g2 = all_g_values_2d(p);
    const auto gm = all_gm_values(p);
    const auto zeros_2d = std::count(g2.begin(), g2.end(), Rat(0));
    const auto zeros_md = std::count(gm.begin(), gm.end(), Rat(0));
    CHECK(zeros_2d == 56);
    CHECK(zeros_md == zeros_2d);

    const auto q = passing_asymmetric_five();
    CHECK(test_reconstructible_md(q).verdict == test_reconstructible_2d(q).verdict);
}

TEST_CASE("consistency of 2d and general-m verdicts on random configurations") {
    std::mt19937_64 rng(271828);
    for (int trial = 0; trial < 50; ++trial) {
        auto p = random_int_config(rng, 4 + static_cast<int>(rng() % 2), 2, 6);
        CHECK(test_reconstructible_md(p).verdict == test_reconstructible_2d(p).verdict);
    }
}

TEST_CASE("three dimensions: repeats fail, generic integer configurations pass") {
    auto repeated = PointConfig<Rat>::from_rows(
        3, {{0, 0, 0}, {3, 0, 0}, {0, 4, 0}, {0, 0, 5}, {7, 1, 2}});
    {
        const auto d = squared_distance_matrix(repeated);
        REQUIRE(d(0, 3) == d(1, 2));  // the planted equal pair
    }
    CHECK(test_reconstructible_md(repeated).verdict == Verdict::FailsTest);

    auto generic = PointConfig<Rat>::from_rows(
        3, {{0, 0, 0}, {9, 1, 0}, {2, 8, 1}, {4, 3, 7}, {8, 6, 5}});
    const auto rep = test_reconstructible_md(generic);
    CHECK(rep.verdict == Verdict::PassesTest);
    CHECK(rep.certified);
}

TEST_CASE("per-tuple values scale by lambda^6 under coordinate scaling") {
    std::mt19937_64 rng(577);
    auto p = random_int_config(rng, 4, 2, 12);
    const Rat lambda(3, 2);
    auto scaled = scale_config(p, lambda);
    const auto base = all_g_values_2d(p);
    const auto after = all_g_values_2d(scaled);
    REQUIRE(base.size() == after.size());
    Rat factor = lambda;
    for (int k = 1; k < 6; ++k) factor *= lambda;
    for (size_t idx = 0; idx < base.size(); ++idx) {
        CHECK(after[idx] == factor * base[idx]);
    }
}

TEST_CASE("verdict is invariant under rigid motion plus relabeling") {
    std::mt19937_64 rng(613);
    for (int trial = 0; trial < 10; ++trial) {
        auto p = random_int_config(rng, 4, 2, 8);
        const auto base = test_reconstructible_2d(p);
        auto q = permute_points(apply_rigid_motion(p, random_rational_motion(rng)),
                                random_relabeling(rng, 4));
        const auto moved = test_reconstructible_2d(q);
        CHECK(moved.verdict == base.verdict);
        if (base.verdict == Verdict::PassesTest) {
            CHECK(*moved.min_abs_g == *base.min_abs_g);
        }
        // The full evaluation multisets agree.
        auto vb = all_g_values_2d(p);
        auto vm = all_g_values_2d(q);
        std::sort(vb.begin(), vb.end());
        std::sort(vm.begin(), vm.end());
        CHECK(vb == vm);
    }
}

TEST_CASE("reports are identical for any thread count") {
    for (const auto* config : {"pass", "fail"}) {
        const auto p = std::string(config) == "pass" ? passing_asymmetric_five() : five_point_example();
        TestOptions one;
        one.threads = 1;
        TestOptions four;
        four.threads = 4;
        const auto a = test_reconstructible_2d(p, one);
        const auto b = test_reconstructible_2d(p, four);
        CHECK(a.verdict == b.verdict);
        CHECK(a.combos_checked == b.combos_checked);
        CHECK(a.witness.has_value() == b.witness.has_value());
        if (a.witness && b.witness) {
            CHECK(a.witness->i0 == b.witness->i0);
            CHECK(a.witness->slots == b.witness->slots);
        }
        if (a.min_abs_g && b.min_abs_g) CHECK(*a.min_abs_g == *b.min_abs_g);
    }
}

TEST_CASE("soundness spot-check: a certified pass admits only congruent twins") {
    std::mt19937_64 rng(757);
    const auto p = passing_asymmetric_five();
    REQUIRE(test_reconstructible_2d(p).certified);
    for (int trial = 0; trial < 10; ++trial) {
        auto q = permute_points(apply_rigid_motion(p, random_rational_motion(rng)),
                                random_relabeling(rng, 5));
        CHECK(congruent(p, q, 1e-6).has_value());
    }
}

TEST_CASE("compare: rigid copies match, orientation resolves the mirror") {
    std::mt19937_64 rng(919);
    const auto p = passing_asymmetric_five();

    auto rotated = permute_points(apply_rigid_motion(p, rational_rotation(Rat(2, 3), false, Rat(5), Rat(-2))),
                                  random_relabeling(rng, 5));
    auto v = compare_configs(p, rotated, CompareMode::Rigid);
    CHECK(v.distribution_match);
    CHECK(v.orientation == OrientationVerdict::NotRequested);
    CHECK_FALSE(v.similarity_match.has_value());

    v = compare_configs(p, rotated, CompareMode::Orientation);
    CHECK(v.distribution_match);
    CHECK(v.orientation == OrientationVerdict::SameSE2);

    auto mirrored = permute_points(reflect_config(p), random_relabeling(rng, 5));
    v = compare_configs(p, mirrored, CompareMode::Orientation);
    CHECK(v.distribution_match);
    CHECK(v.orientation == OrientationVerdict::MirrorPair);

    auto scaled = scale_config(p, Rat(5, 2));
    v = compare_configs(p, scaled, CompareMode::Similarity);
    REQUIRE(v.similarity_match.has_value());
    CHECK(*v.similarity_match);
    CHECK_FALSE(v.distribution_match);  // plain distances differ under scaling

    CHECK_THROWS_AS(compare_configs(p, PointConfig<Rat>::from_rows(2, {{0, 0}, {1, 0}}),
                                    CompareMode::Rigid),
                    invalid_input);
}

TEST_CASE("compare: unrelated configurations do not match") {
    const auto p = passing_asymmetric_five();
    auto q = p;
    q.at(0, 0) += 1;
    const auto v = compare_configs(p, q, CompareMode::Orientation);
    CHECK_FALSE(v.distribution_match);
    CHECK(v.orientation == OrientationVerdict::Inconclusive);
}

TEST_CASE("compare: square orientation is inconclusive (not certified)") {
    const auto sq = unit_square();
    const auto v = compare_configs(sq, sq, CompareMode::Orientation);
    CHECK(v.distribution_match);
    CHECK(v.orientation == OrientationVerdict::Inconclusive);
}
