#pragma once

#include "distrecon/geometry.hpp"
#include "distrecon/invariants.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace distrecon {

enum class Verdict { PassesTest, FailsTest, NotApplicable };

const char* verdict_name(Verdict v);

/// The index tuple at which the test failed: slot pairs in evaluation
/// order, slots.front() = {i0,i1} and slots.back() = {i0,i2}.
struct WitnessTuple {
    int i0 = 0, i1 = 0, i2 = 0;
    std::vector<PairKey> slots;
};

struct ReconReport {
    Verdict verdict = Verdict::NotApplicable;
    int n = 0;
    int dim = 0;
    bool exact = true;
    double epsilon = 0.0;    // requested epsilon (float mode)
    double threshold = 0.0;  // effective scale-aware cutoff actually used
    /// PassesTest certifies reconstructibility only for n >= dim+2 with
    /// n != 4; an n = 4 pass carries no certificate.
    bool certified = false;
    bool repeated_distances = false;
    std::optional<WitnessTuple> witness;
    std::optional<Rat> witness_g;  // exact mode only
    std::optional<Rat> min_abs_g;  // exact mode only
    double witness_g_approx = 0.0;
    double min_abs_g_approx = 0.0;
    /// Canonical ordinal of the witness on FailsTest; the full combination
    /// count on PassesTest. Identical for every thread count.
    std::uint64_t combos_checked = 0;
    std::uint64_t combos_total = 0;
    double elapsed_seconds = 0.0;
    std::string note;
};

struct TestOptions {
    double epsilon = 1e-9;          // float mode; ignored in exact mode
    int threads = 0;                // 0 = all hardware threads
    bool early_exit_repeated = false;
};

/// n (n-1) (n-2) (C-2)(C-3)(C-4)(C-5) with C = C(n,2): the number of
/// admissible index tuples of the planar test. Throws for n < 4 and on
/// uint64 overflow (n > 70).
std::uint64_t count_combinations(int n);

/// General-m tuple count: n (n-1) (n-2) * prod_{j=2}^{k-1} (C-j) with
/// k = C(m+2,2). Requires n >= m+2.
std::uint64_t count_combinations_md(int n, int m);

struct ComboTuple2D {
    int i0 = 0, i1 = 0, i2 = 0;
    std::array<PairKey, 4> middles;
};

struct ComboTupleMD {
    int i0 = 0, i1 = 0, i2 = 0;
    std::vector<PairKey> middles;  // k - 2 pairs
};

/// Streams every admissible tuple exactly once in canonical order:
/// ordered (i0, i1, i2), then each middle pair ascending in pair-
/// lexicographic order, skipping previously used pairs. The callback
/// receives a reused tuple; returning false stops the stream.
template <class F>
void for_each_combination_2d(int n, F&& fn) {
    if (n < 4) throw invalid_input("combination enumeration requires n >= 4");
    const PairTable table(n);
    const int c = table.count();
    ComboTuple2D t;
    for (int i0 = 0; i0 < n; ++i0) {
        for (int i1 = 0; i1 < n; ++i1) {
            if (i1 == i0) continue;
            for (int i2 = 0; i2 < n; ++i2) {
                if (i2 == i0 || i2 == i1) continue;
                const int aid = table.id(i0, i1);
                const int fid = table.id(i0, i2);
                t.i0 = i0;
                t.i1 = i1;
                t.i2 = i2;
                for (int b = 0; b < c; ++b) {
                    if (b == aid || b == fid) continue;
                    for (int d = 0; d < c; ++d) {
                        if (d == aid || d == fid || d == b) continue;
                        for (int e = 0; e < c; ++e) {
                            if (e == aid || e == fid || e == b || e == d) continue;
                            for (int h = 0; h < c; ++h) {
                                if (h == aid || h == fid || h == b || h == d || h == e) continue;
                                t.middles = {table.key(b), table.key(d), table.key(e), table.key(h)};
                                if constexpr (std::is_void_v<decltype(fn(
                                                  static_cast<const ComboTuple2D&>(t)))>) {
                                    fn(static_cast<const ComboTuple2D&>(t));
                                } else {
                                    if (!fn(static_cast<const ComboTuple2D&>(t))) return;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// General-m analogue: slots (S_1, ..., S_k) with S_1 = {i0,i1},
/// S_k = {i0,i2} and k-2 middle pairs, canonical order as in 2D.
template <class F>
void for_each_combination_md(int n, int m, F&& fn) {
    if (m < 1) throw invalid_input("dimension must be at least 1");
    if (n < m + 2) throw invalid_input("general enumeration requires n >= m+2");
    const int k = gm_argument_count(m);
    const PairTable table(n);
    const int c = table.count();
    if (c > 64) throw invalid_input("general enumeration supports at most C(n,2) <= 64 pairs");
    const int nmid = k - 2;
    ComboTupleMD t;
    t.middles.resize(nmid);
    std::vector<int> mid_ids(nmid);
    bool stop = false;

    auto emit = [&](int i0, int i1, int i2) {
        t.i0 = i0;
        t.i1 = i1;
        t.i2 = i2;
        for (int s = 0; s < nmid; ++s) t.middles[s] = table.key(mid_ids[s]);
        if constexpr (std::is_void_v<decltype(fn(static_cast<const ComboTupleMD&>(t)))>) {
            fn(static_cast<const ComboTupleMD&>(t));
        } else {
            if (!fn(static_cast<const ComboTupleMD&>(t))) stop = true;
        }
    };

    for (int i0 = 0; i0 < n && !stop; ++i0) {
        for (int i1 = 0; i1 < n && !stop; ++i1) {
            if (i1 == i0) continue;
            for (int i2 = 0; i2 < n && !stop; ++i2) {
                if (i2 == i0 || i2 == i1) continue;
                const int aid = table.id(i0, i1);
                const int fid = table.id(i0, i2);
                std::uint64_t used = (std::uint64_t(1) << aid) | (std::uint64_t(1) << fid);
                // Depth-first odometer over the middle slots.
                int depth = 0;
                std::vector<int> cursor(nmid, -1);
                while (depth >= 0 && !stop) {
                    int next = cursor[depth] + 1;
                    while (next < c && (used & (std::uint64_t(1) << next))) ++next;
                    if (next >= c) {
                        cursor[depth] = -1;
                        --depth;
                        if (depth >= 0) used &= ~(std::uint64_t(1) << mid_ids[depth]);
                        continue;
                    }
                    cursor[depth] = next;
                    mid_ids[depth] = next;
                    if (depth == nmid - 1) {
                        emit(i0, i1, i2);
                        // stay at this depth, try the next candidate
                    } else {
                        used |= (std::uint64_t(1) << next);
                        ++depth;
                    }
                }
            }
        }
    }
}

/// Counts by actually iterating the 2D stream.
std::uint64_t enumerate_combinations_count(int n);
std::uint64_t enumerate_combinations_md_count(int n, int m);

/// The planar reconstructibility test: evaluates the planarity polynomial
/// on every admissible tuple; FailsTest on the first (canonical order)
/// vanishing tuple, PassesTest with the minimum |g| otherwise. Exact
/// overload tests g == 0 exactly; float overload tests
/// |g| <= epsilon * d_max^3 (scale-equivariant: g is degree 3 in the
/// squared distances). n <= 3 yields NotApplicable (such configurations
/// are always reconstructible); non-planar input throws.
ReconReport test_reconstructible_2d(const PointConfig<Rat>& p, const TestOptions& opt = {});
ReconReport test_reconstructible_2d(const PointConfig<double>& p, const TestOptions& opt = {});

/// Dimension-m generalization via the determinant relation; for m = 2 the
/// verdict coincides with test_reconstructible_2d. n < m+2 yields
/// NotApplicable. Float cutoff: epsilon * d_max^(m+1).
ReconReport test_reconstructible_md(const PointConfig<Rat>& p, const TestOptions& opt = {});
ReconReport test_reconstructible_md(const PointConfig<double>& p, const TestOptions& opt = {});

/// Every evaluated g value in canonical tuple order (test support; sized
/// count_combinations(n), so keep n small).
std::vector<Rat> all_g_values_2d(const PointConfig<Rat>& p);
std::vector<Rat> all_gm_values(const PointConfig<Rat>& p);

// ---------------------------------------------------------------------------
// Configuration comparison
// ---------------------------------------------------------------------------

enum class CompareMode { Rigid, Orientation, Similarity };
enum class OrientationVerdict { SameSE2, MirrorPair, Inconclusive, NotRequested };

const char* orientation_name(OrientationVerdict v);

struct CompareVerdict {
    bool distribution_match = false;
    OrientationVerdict orientation = OrientationVerdict::NotRequested;
    std::optional<bool> similarity_match;  // set in similarity mode only
};

struct CompareOptions {
    double epsilon = 1e-9;  // float-mode tolerance scale; ignored in exact mode
    TestOptions test;       // options for the embedded reconstructibility test
};

template <class S>
CompareVerdict compare_configs(const PointConfig<S>& p, const PointConfig<S>& q, CompareMode mode,
                               const CompareOptions& opt = {}) {
    if (p.dim != q.dim) throw invalid_input("compare: dimension mismatch");
    if (p.count() != q.count()) throw invalid_input("compare: point count mismatch");

    S dist_tol(0);
    if constexpr (!scalar_traits<S>::is_exact) {
        auto vp = sorted_squared_distances(p);
        dist_tol = S(opt.epsilon) * std::max(vp.back(), S(1));
    }

    CompareVerdict verdict;
    verdict.distribution_match =
        same_distribution(distance_distribution(p), distance_distribution(q), dist_tol);

    if (mode == CompareMode::Similarity) {
        // Rescaled values live in (0, 1]; epsilon applies directly.
        S rtol(0);
        if constexpr (!scalar_traits<S>::is_exact) rtol = S(opt.epsilon);
        verdict.similarity_match =
            same_distribution(rescaled_distribution(p), rescaled_distribution(q), rtol);
        return verdict;
    }
    if (mode != CompareMode::Orientation) return verdict;

    if (p.dim != 2 || p.count() < 4) {
        throw invalid_input("orientation comparison requires planar configurations with n >= 4");
    }
    verdict.orientation = OrientationVerdict::Inconclusive;
    TestOptions topt = opt.test;
    topt.epsilon = opt.epsilon;
    const ReconReport rep = test_reconstructible_2d(p, topt);
    if (!rep.certified || !verdict.distribution_match) return verdict;

    auto od_p = orientation_distribution(p);
    auto od_q = orientation_distribution(q);
    S itol(0);
    if constexpr (!scalar_traits<S>::is_exact) {
        S scale(1);
        for (const auto& [v, mult] : od_p.entries) scale = std::max(scale, std::abs(v));
        itol = S(opt.epsilon) * scale;
    }
    if (is_symmetric_distribution(od_p, itol)) return verdict;

    if (same_orientation_distribution(od_p, od_q, itol)) {
        verdict.orientation = OrientationVerdict::SameSE2;
    } else if (mirrored_orientation_distribution(od_p, od_q, itol)) {
        verdict.orientation = OrientationVerdict::MirrorPair;
    }
    return verdict;
}

}  // namespace distrecon
