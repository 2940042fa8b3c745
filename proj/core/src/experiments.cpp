#include "distrecon/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

namespace distrecon {

namespace {

/// The 576 admissible n=4 tuples as pair-id six-tuples in slot order,
/// canonical enumeration order.
std::vector<std::array<int, 6>> admissible_tuples_n4() {
    const PairTable table(4);
    std::vector<std::array<int, 6>> out;
    out.reserve(576);
    for_each_combination_2d(4, [&](const ComboTuple2D& t) {
        out.push_back({table.id(t.i0, t.i1), table.id(t.middles[0]), table.id(t.middles[1]),
                       table.id(t.middles[2]), table.id(t.middles[3]), table.id(t.i0, t.i2)});
    });
    return out;
}

int effective_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

template <class T>
bool some_tuple_vanishes(const std::array<T, 6>& d, const std::vector<std::array<int, 6>>& tuples) {
    for (const auto& idx : tuples) {
        if (eval_g(d[idx[0]], d[idx[1]], d[idx[2]], d[idx[3]], d[idx[4]], d[idx[5]]) == T(0)) {
            return true;
        }
    }
    return false;
}

}  // namespace

LatticeReport lattice_experiment(int box, int threads) {
    if (box < 1) throw invalid_input("lattice box size must be >= 1");
    if (box > 500) throw invalid_input("lattice box too large for 64-bit exact evaluation");
    const int side = box + 1;
    const int npoints = side * side;
    if (npoints < 4) throw invalid_input("lattice too small for 4-point configurations");

    const auto tuples = admissible_tuples_n4();
    // Lattice points in row-major order; 4-subsets a<b<c<d enumerate the
    // canonically ordered configurations.
    std::vector<std::pair<int, int>> pts;
    pts.reserve(npoints);
    for (int x = 0; x <= box; ++x)
        for (int y = 0; y <= box; ++y) pts.emplace_back(x, y);

    auto sq = [](int v) { return static_cast<std::int64_t>(v) * v; };
    auto dist2 = [&](int a, int b) {
        return sq(pts[a].first - pts[b].first) + sq(pts[a].second - pts[b].second);
    };

    const int nt = std::max(1, std::min(effective_threads(threads), npoints - 3));
    std::vector<std::uint64_t> totals(nt, 0), reps(nt, 0), fails(nt, 0);
    std::atomic<int> next_a{0};

    auto work = [&](int w) {
        for (;;) {
            const int a = next_a.fetch_add(1, std::memory_order_relaxed);
            if (a > npoints - 4) break;
            for (int b = a + 1; b < npoints; ++b) {
                const std::int64_t dab = dist2(a, b);
                for (int c = b + 1; c < npoints; ++c) {
                    const std::int64_t dac = dist2(a, c);
                    const std::int64_t dbc = dist2(b, c);
                    for (int e = c + 1; e < npoints; ++e) {
                        // pair-id order for n=4: (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
                        const std::array<std::int64_t, 6> d = {dab,         dac,
                                                               dist2(a, e), dbc,
                                                               dist2(b, e), dist2(c, e)};
                        ++totals[w];
                        std::array<std::int64_t, 6> sorted = d;
                        std::sort(sorted.begin(), sorted.end());
                        bool rep = false;
                        for (int i = 1; i < 6 && !rep; ++i) rep = sorted[i] == sorted[i - 1];
                        if (rep) ++reps[w];
                        if (rep || some_tuple_vanishes(d, tuples)) ++fails[w];
                    }
                }
            }
        }
    };

    if (nt == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < nt; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    LatticeReport report;
    report.box = box;
    for (int w = 0; w < nt; ++w) {
        report.total += totals[w];
        report.repeated += reps[w];
        report.failed += fails[w];
    }
    report.nonrepeated_failed = report.failed - report.repeated;
    if (report.total > report.repeated) {
        report.nonrepeated_fail_pct =
            Rat(Int(report.nonrepeated_failed), Int(report.total - report.repeated));
        report.nonrepeated_fail_pct.canonicalize();
    } else {
        report.nonrepeated_fail_pct = 0;
    }
    return report;
}

RandomGReport random_g_statistics(std::uint64_t trials, double threshold, std::uint64_t seed,
                                  int threads) {
    const auto tuples = admissible_tuples_n4();

    // All coordinates come from one sequential stream so the result is a
    // pure function of (trials, seed), independent of the thread count.
    std::mt19937_64 rng(seed);
    std::vector<double> coords(trials * 8);
    for (double& c : coords) c = static_cast<double>(rng() >> 11) * 0x1.0p-53;

    const std::uint64_t want = std::min<std::uint64_t>(
        static_cast<std::uint64_t>(effective_threads(threads)), trials ? trials : 1);
    const int nt = static_cast<int>(std::max<std::uint64_t>(1, want));
    std::vector<std::uint64_t> counts(nt, 0);
    std::atomic<std::uint64_t> next{0};
    constexpr std::uint64_t kChunk = 256;

    auto work = [&](int w) {
        for (;;) {
            const std::uint64_t begin = next.fetch_add(kChunk, std::memory_order_relaxed);
            if (begin >= trials) break;
            const std::uint64_t end = std::min(trials, begin + kChunk);
            for (std::uint64_t trial = begin; trial < end; ++trial) {
                const double* q = coords.data() + trial * 8;
                auto dist2 = [&](int a, int b) {
                    const double dx = q[2 * a] - q[2 * b];
                    const double dy = q[2 * a + 1] - q[2 * b + 1];
                    return dx * dx + dy * dy;
                };
                const std::array<double, 6> d = {dist2(0, 1), dist2(0, 2), dist2(0, 3),
                                                 dist2(1, 2), dist2(1, 3), dist2(2, 3)};
                for (const auto& idx : tuples) {
                    const double g =
                        eval_g(d[idx[0]], d[idx[1]], d[idx[2]], d[idx[3]], d[idx[4]], d[idx[5]]);
                    if (std::fabs(g) < threshold) {
                        ++counts[w];
                        break;
                    }
                }
            }
        }
    };

    if (nt == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < nt; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    RandomGReport report;
    report.trials = trials;
    report.threshold = threshold;
    report.seed = seed;
    for (int w = 0; w < nt; ++w) report.below_threshold += counts[w];
    return report;
}

std::vector<CountRow> count_table(const std::vector<int>& ns, bool measure, int threads) {
    std::vector<CountRow> rows;
    rows.reserve(ns.size());
    for (int n : ns) {
        CountRow row;
        row.n = n;
        row.combinations = count_combinations(n);
        if (measure) {
            // Deterministic generic integer configuration; a large box keeps
            // accidental vanishing tuples (and thus early exits) unlikely
            // while staying well inside the 128-bit evaluation range.
            std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(n));
            PointConfig<Rat> p;
            p.dim = 2;
            p.coords.reserve(2 * n);
            for (int i = 0; i < 2 * n; ++i) {
                p.coords.emplace_back(static_cast<long>(rng() % 100000));
            }
            TestOptions opt;
            opt.threads = threads;
            const auto t0 = std::chrono::steady_clock::now();
            (void)test_reconstructible_2d(p, opt);
            row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace distrecon
