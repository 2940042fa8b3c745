#include "distrecon/recon.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

namespace distrecon {

namespace {

using i128 = __int128;

const char* kNotApplicableNote = "n <= 3 configurations are always reconstructible; test not applicable";

struct Triple {
    int i0, i1, i2, aid, fid;
};

std::vector<Triple> make_triples(const PairTable& table) {
    const int n = table.points();
    std::vector<Triple> out;
    out.reserve(static_cast<size_t>(n) * (n - 1) * (n - 2));
    for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1) {
            if (i1 == i0) continue;
            for (int i2 = 0; i2 < n; ++i2) {
                if (i2 == i0 || i2 == i1) continue;
                out.push_back(Triple{i0, i1, i2, table.id(i0, i1), table.id(i0, i2)});
            }
        }
    return out;
}

template <class VT>
VT vt_abs(const VT& v) {
    if constexpr (std::is_same_v<VT, i128>) {
        return v < 0 ? -v : v;
    } else if constexpr (std::is_same_v<VT, double>) {
        return std::fabs(v);
    } else {
        return abs(v);
    }
}

// ---------------------------------------------------------------- exact prep

struct ExactValues {
    bool big = false;            // true: use vz (arbitrary precision)
    std::vector<i128> vi;
    std::vector<Int> vz;
    Int scale = 1;               // common denominator cleared out of the inputs
};

/// Clears denominators (the relation is homogeneous, so scaling by L just
/// scales every value by L^degree) and picks int128 when the worst-case
/// magnitude bound fits with margin.
ExactValues prepare_exact(const std::vector<Rat>& dv, double bound_coefficient, int degree) {
    ExactValues out;
    Int lcm(1);
    for (const Rat& v : dv) {
        Int den = v.get_den();
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    out.scale = lcm;
    out.vz.reserve(dv.size());
    Int maxabs(0);
    for (const Rat& v : dv) {
        Int scaled = v.get_num() * (lcm / v.get_den());
        if (cmp(abs(scaled), maxabs) > 0) maxabs = abs(scaled);
        out.vz.push_back(std::move(scaled));
    }
    // Magnitude guard: values are bounded by coefficient * d_max^degree, and
    // every partial sum obeys the same bound, so staying below 2^126 leaves
    // a 2x margin inside signed 128-bit range.
    const double dmax = maxabs.get_d();
    const double bound = bound_coefficient * std::pow(dmax, degree);
    if (bound < 8.0e37 && maxabs.fits_slong_p()) {
        out.big = false;
        out.vi.reserve(out.vz.size());
        for (const Int& z : out.vz) out.vi.push_back(static_cast<i128>(z.get_si()));
    } else {
        out.big = true;
    }
    return out;
}

Rat unscale(const Int& value, const Int& scale, int degree) {
    Int denom(1);
    mpz_pow_ui(denom.get_mpz_t(), scale.get_mpz_t(), static_cast<unsigned long>(degree));
    Rat q(value, denom);
    q.canonicalize();
    return q;
}

Int int_from_i128(i128 v) {
    const bool neg = v < 0;
    unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    const std::uint64_t hi = static_cast<std::uint64_t>(mag >> 64);
    const std::uint64_t lo = static_cast<std::uint64_t>(mag);
    Int out(hi);
    out <<= 64;
    out += Int(lo);
    return neg ? Int(-out) : out;
}

// ------------------------------------------------------------- 2D unit scan

template <class VT>
struct UnitOutcome {
    bool found = false;
    std::uint64_t t = 0;              // in-unit ordinal of the witness
    std::array<int, 4> mid_ids{};
    VT g{};
    VT min_abs{};
    bool min_set = false;
};

/// Scans one (i0,i1,i2) unit in canonical middle-pair order; stops at the
/// first vanishing tuple.
template <class VT>
UnitOutcome<VT> scan_unit_2d(const VT* dv, int c, int aid, int fid, const VT& tau,
                             bool exact_zero) {
    UnitOutcome<VT> out;
    const VT a = dv[aid];
    const VT f = dv[fid];
    std::uint64_t t = 0;
    for (int b = 0; b < c; ++b) {
        if (b == aid || b == fid) continue;
        const VT vb = dv[b];
        for (int d = 0; d < c; ++d) {
            if (d == aid || d == fid || d == b) continue;
            const VT vd = dv[d];
            for (int e = 0; e < c; ++e) {
                if (e == aid || e == fid || e == b || e == d) continue;
                const VT ve = dv[e];
                for (int h = 0; h < c; ++h) {
                    if (h == aid || h == fid || h == b || h == d || h == e) continue;
                    VT g = eval_g(a, vb, vd, ve, dv[h], f);
                    VT ag = vt_abs(g);
                    if (!out.min_set || ag < out.min_abs) {
                        out.min_abs = ag;
                        out.min_set = true;
                    }
                    const bool fail = exact_zero ? (g == VT(0)) : (ag <= tau);
                    if (fail) {
                        out.found = true;
                        out.t = t;
                        out.mid_ids = {b, d, e, h};
                        out.g = g;
                        return out;
                    }
                    ++t;
                }
            }
        }
    }
    return out;
}

// ------------------------------------------------------------- md unit scan

struct MdLayout {
    int m = 0;
    int k = 0;       // slot count
    int rows = 0;    // m + 1
    // For each matrix cell: indices into the slot array.
    // diag r: -2 * slot_diag[r]; off (r,c): slot_off[r][c] - slot_diag[r] - slot_diag[c]
    std::vector<int> slot_diag;           // rows entries: slot of (0, r+1)
    std::vector<int> slot_off;            // rows*rows, slot of (r+1, c+1), diag unused
};

MdLayout make_md_layout(int m) {
    MdLayout lay;
    lay.m = m;
    lay.k = gm_argument_count(m);
    lay.rows = m + 1;
    const PairTable slots(m + 2);
    lay.slot_diag.resize(lay.rows);
    lay.slot_off.assign(static_cast<size_t>(lay.rows) * lay.rows, -1);
    for (int r = 0; r < lay.rows; ++r) {
        lay.slot_diag[r] = slots.id(0, r + 1);
        for (int c = 0; c < lay.rows; ++c) {
            if (c != r) lay.slot_off[static_cast<size_t>(r) * lay.rows + c] = slots.id(r + 1, c + 1);
        }
    }
    return lay;
}

/// Fraction-free determinant; divisions are exact over integers. For
/// doubles, partial-pivot elimination is used instead.
template <class VT>
VT det_in_place(std::vector<VT>& a, int n) {
    if constexpr (std::is_same_v<VT, double>) {
        double det = 1.0;
        for (int col = 0; col < n; ++col) {
            int piv = col;
            for (int r = col + 1; r < n; ++r)
                if (std::fabs(a[r * n + col]) > std::fabs(a[piv * n + col])) piv = r;
            if (a[piv * n + col] == 0.0) return 0.0;
            if (piv != col) {
                for (int c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
                det = -det;
            }
            det *= a[col * n + col];
            for (int r = col + 1; r < n; ++r) {
                const double f = a[r * n + col] / a[col * n + col];
                for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            }
        }
        return det;
    } else {
        VT sign(1), prev(1);
        for (int col = 0; col < n - 1; ++col) {
            if (a[col * n + col] == VT(0)) {
                int piv = -1;
                for (int r = col + 1; r < n; ++r)
                    if (a[r * n + col] != VT(0)) {
                        piv = r;
                        break;
                    }
                if (piv < 0) return VT(0);
                for (int c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
                sign = -sign;
            }
            for (int r = col + 1; r < n; ++r) {
                for (int c = col + 1; c < n; ++c) {
                    VT num = a[r * n + c] * a[col * n + col] - a[r * n + col] * a[col * n + c];
                    a[r * n + c] = num / prev;
                }
                a[r * n + col] = VT(0);
            }
            prev = a[col * n + col];
        }
        return sign * a[(n - 1) * n + (n - 1)];
    }
}

template <class VT>
struct MdUnitOutcome {
    bool found = false;
    std::uint64_t t = 0;
    std::vector<int> mid_ids;
    VT g{};
    VT min_abs{};
    bool min_set = false;
};

template <class VT>
MdUnitOutcome<VT> scan_unit_md(const VT* dv, int c, const MdLayout& lay, int aid, int fid,
                               const VT& tau, bool exact_zero) {
    MdUnitOutcome<VT> out;
    const int nmid = lay.k - 2;
    std::vector<int> mids(nmid, -1);
    std::vector<VT> slot_values(lay.k);
    slot_values[0] = dv[aid];
    slot_values[lay.k - 1] = dv[fid];
    std::vector<VT> mat(static_cast<size_t>(lay.rows) * lay.rows);
    std::uint64_t t = 0;

    auto evaluate = [&]() -> bool {
        for (int r = 0; r < lay.rows; ++r) {
            const VT& dr = slot_values[lay.slot_diag[r]];
            for (int cc = 0; cc < lay.rows; ++cc) {
                if (cc == r) {
                    mat[static_cast<size_t>(r) * lay.rows + cc] = VT(-2) * dr;
                } else {
                    mat[static_cast<size_t>(r) * lay.rows + cc] =
                        slot_values[lay.slot_off[static_cast<size_t>(r) * lay.rows + cc]] - dr -
                        slot_values[lay.slot_diag[cc]];
                }
            }
        }
        std::vector<VT> work = mat;
        VT g = det_in_place(work, lay.rows);
        VT ag = vt_abs(g);
        if (!out.min_set || ag < out.min_abs) {
            out.min_abs = ag;
            out.min_set = true;
        }
        const bool fail = exact_zero ? (g == VT(0)) : (ag <= tau);
        if (fail) {
            out.found = true;
            out.t = t;
            out.mid_ids = mids;
            out.g = g;
            return false;
        }
        ++t;
        return true;
    };

    std::uint64_t used = (std::uint64_t(1) << aid) | (std::uint64_t(1) << fid);
    std::vector<int> cursor(nmid, -1);
    int depth = 0;
    while (depth >= 0) {
        int next = cursor[depth] + 1;
        while (next < c && (used & (std::uint64_t(1) << next))) ++next;
        if (next >= c) {
            cursor[depth] = -1;
            --depth;
            if (depth >= 0) used &= ~(std::uint64_t(1) << mids[depth]);
            continue;
        }
        cursor[depth] = next;
        mids[depth] = next;
        slot_values[depth + 1] = dv[next];
        if (depth == nmid - 1) {
            if (!evaluate()) return out;
        } else {
            used |= (std::uint64_t(1) << next);
            ++depth;
        }
    }
    return out;
}

// --------------------------------------------------------- parallel driver

template <class VT>
struct RunResult {
    bool failed = false;
    std::uint64_t witness_unit = UINT64_MAX;
    std::uint64_t witness_t = 0;
    std::vector<int> witness_mids;
    VT witness_g{};
    VT min_abs{};
    bool min_set = false;
};

int effective_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs scan_unit over every (i0,i1,i2) unit. Units whose ordinal exceeds
/// an already-found witness unit are skipped; the merged result is
/// identical for every thread count (canonical first witness, global
/// minimum otherwise).
template <class VT, class ScanFn>
RunResult<VT> run_units(std::size_t unit_count, int threads, ScanFn&& scan) {
    RunResult<VT> merged;
    const int nt = std::max(1, std::min<int>(effective_threads(threads),
                                             static_cast<int>(unit_count)));
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> best_unit{UINT64_MAX};

    std::vector<RunResult<VT>> locals(nt);
    auto work = [&](int w) {
        RunResult<VT>& loc = locals[w];
        for (;;) {
            const std::uint64_t u = next.fetch_add(1, std::memory_order_relaxed);
            if (u >= unit_count) break;
            if (u > best_unit.load(std::memory_order_relaxed)) continue;
            auto outcome = scan(u);
            if (outcome.min_set && (!loc.min_set || outcome.min_abs < loc.min_abs)) {
                loc.min_abs = outcome.min_abs;
                loc.min_set = true;
            }
            if (outcome.found) {
                if (!loc.failed || u < loc.witness_unit) {
                    loc.failed = true;
                    loc.witness_unit = u;
                    loc.witness_t = outcome.t;
                    loc.witness_mids.assign(outcome.mid_ids.begin(), outcome.mid_ids.end());
                    loc.witness_g = outcome.g;
                }
                std::uint64_t cur = best_unit.load(std::memory_order_relaxed);
                while (u < cur &&
                       !best_unit.compare_exchange_weak(cur, u, std::memory_order_relaxed)) {
                }
            }
        }
    };

    if (nt == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nt);
        for (int w = 0; w < nt; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    for (const auto& loc : locals) {
        if (loc.min_set && (!merged.min_set || loc.min_abs < merged.min_abs)) {
            merged.min_abs = loc.min_abs;
            merged.min_set = true;
        }
        if (loc.failed && loc.witness_unit < merged.witness_unit) {
            merged.failed = true;
            merged.witness_unit = loc.witness_unit;
            merged.witness_t = loc.witness_t;
            merged.witness_mids = loc.witness_mids;
            merged.witness_g = loc.witness_g;
        }
    }
    return merged;
}

template <class S>
std::vector<S> distances_by_pair_id(const PointConfig<S>& p, const PairTable& table) {
    const auto dm = squared_distance_matrix(p);
    std::vector<S> dv(table.count());
    for (int id = 0; id < table.count(); ++id) {
        const PairKey k = table.key(id);
        dv[id] = dm(k.i, k.j);
    }
    return dv;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

WitnessTuple make_witness_2d(const PairTable& table, const Triple& tr,
                             const std::vector<int>& mids) {
    WitnessTuple w;
    w.i0 = tr.i0;
    w.i1 = tr.i1;
    w.i2 = tr.i2;
    w.slots.reserve(6);
    w.slots.push_back(table.key(tr.aid));
    for (int id : mids) w.slots.push_back(table.key(id));
    w.slots.push_back(table.key(tr.fid));
    return w;
}

}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::PassesTest: return "PassesTest";
        case Verdict::FailsTest: return "FailsTest";
        default: return "NotApplicable";
    }
}

const char* orientation_name(OrientationVerdict v) {
    switch (v) {
        case OrientationVerdict::SameSE2: return "SameSE2";
        case OrientationVerdict::MirrorPair: return "MirrorPair";
        case OrientationVerdict::Inconclusive: return "Inconclusive";
        default: return "NotRequested";
    }
}

std::uint64_t count_combinations(int n) {
    if (n < 4) throw invalid_input("combination count requires n >= 4");
    if (n > 70) throw invalid_input("combination count overflows 64 bits for n > 70");
    const std::uint64_t c = static_cast<std::uint64_t>(pair_count(n));
    return std::uint64_t(n) * (n - 1) * (n - 2) * (c - 2) * (c - 3) * (c - 4) * (c - 5);
}

std::uint64_t count_combinations_md(int n, int m) {
    if (m < 1) throw invalid_input("dimension must be at least 1");
    if (n < m + 2) throw invalid_input("general combination count requires n >= m+2");
    const int k = gm_argument_count(m);
    const unsigned __int128 cap = ~static_cast<unsigned __int128>(0) >> 64;  // 2^64 - 1
    unsigned __int128 total = static_cast<unsigned __int128>(n) * (n - 1) * (n - 2);
    const std::uint64_t c = static_cast<std::uint64_t>(pair_count(n));
    for (int j = 2; j <= k - 1; ++j) {
        total *= (c - static_cast<std::uint64_t>(j));
        if (total > cap) throw invalid_input("general combination count overflows 64 bits");
    }
    return static_cast<std::uint64_t>(total);
}

std::uint64_t enumerate_combinations_count(int n) {
    std::uint64_t count = 0;
    for_each_combination_2d(n, [&](const ComboTuple2D&) { ++count; });
    return count;
}

std::uint64_t enumerate_combinations_md_count(int n, int m) {
    std::uint64_t count = 0;
    for_each_combination_md(n, m, [&](const ComboTupleMD&) { ++count; });
    return count;
}

namespace {

std::uint64_t per_unit_2d(int n) {
    const std::uint64_t c = static_cast<std::uint64_t>(pair_count(n));
    return (c - 2) * (c - 3) * (c - 4) * (c - 5);
}

std::uint64_t per_unit_md(int n, int m) {
    const std::uint64_t c = static_cast<std::uint64_t>(pair_count(n));
    std::uint64_t out = 1;
    for (int j = 2; j <= gm_argument_count(m) - 1; ++j) out *= (c - static_cast<std::uint64_t>(j));
    return out;
}

template <class S>
ReconReport init_report(const PointConfig<S>& p, const TestOptions& opt) {
    ReconReport rep;
    rep.n = p.count();
    rep.dim = p.dim;
    rep.exact = scalar_traits<S>::is_exact;
    rep.epsilon = opt.epsilon;
    return rep;
}

ReconReport finish_exact_2d(const PointConfig<Rat>& p, const TestOptions& opt) {
    Timer timer;
    if (p.dim != 2) throw invalid_input("planar test requires 2-dimensional input");
    ReconReport rep = init_report(p, opt);
    const int n = rep.n;
    if (n < 4) {
        rep.verdict = Verdict::NotApplicable;
        rep.note = kNotApplicableNote;
        rep.elapsed_seconds = timer.seconds();
        return rep;
    }
    rep.combos_total = count_combinations(n);
    rep.repeated_distances = has_repeated_distances(p);
    if (opt.early_exit_repeated && rep.repeated_distances) {
        rep.verdict = Verdict::FailsTest;
        rep.note = "repeated distances; test fails without enumeration";
        rep.elapsed_seconds = timer.seconds();
        return rep;
    }

    const PairTable table(n);
    const auto triples = make_triples(table);
    const auto dv = distances_by_pair_id(p, table);
    const auto prepared = prepare_exact(dv, 44.0, 3);
    const std::uint64_t unit = per_unit_2d(n);

    RunResult<Int> result;
    if (!prepared.big) {
        auto rr = run_units<i128>(triples.size(), opt.threads, [&](std::uint64_t u) {
            const Triple& tr = triples[u];
            return scan_unit_2d<i128>(prepared.vi.data(), table.count(), tr.aid, tr.fid, i128(0),
                                      true);
        });
        result.failed = rr.failed;
        result.witness_unit = rr.witness_unit;
        result.witness_t = rr.witness_t;
        result.witness_mids = rr.witness_mids;
        result.witness_g = int_from_i128(rr.witness_g);
        result.min_set = rr.min_set;
        if (rr.min_set) result.min_abs = int_from_i128(rr.min_abs);
    } else {
        result = run_units<Int>(triples.size(), opt.threads, [&](std::uint64_t u) {
            const Triple& tr = triples[u];
            return scan_unit_2d<Int>(prepared.vz.data(), table.count(), tr.aid, tr.fid, Int(0),
                                     true);
        });
    }

    if (result.failed) {
        rep.verdict = Verdict::FailsTest;
        rep.witness = make_witness_2d(table, triples[result.witness_unit], result.witness_mids);
        rep.witness_g = unscale(result.witness_g, prepared.scale, 3);
        rep.witness_g_approx = to_double(*rep.witness_g);
        rep.min_abs_g = rat_abs(*rep.witness_g);
        rep.min_abs_g_approx = std::fabs(rep.witness_g_approx);
        rep.combos_checked = result.witness_unit * unit + result.witness_t + 1;
    } else {
        rep.verdict = Verdict::PassesTest;
        rep.min_abs_g = unscale(result.min_abs, prepared.scale, 3);
        rep.min_abs_g_approx = to_double(*rep.min_abs_g);
        rep.combos_checked = rep.combos_total;
        rep.certified = n >= 5;
        if (!rep.certified) rep.note = "n = 4 pass carries no reconstructibility certificate";
    }
    rep.elapsed_seconds = timer.seconds();
    return rep;
}

ReconReport finish_float_2d(const PointConfig<double>& p, const TestOptions& opt) {
    Timer timer;
    if (p.dim != 2) throw invalid_input("planar test requires 2-dimensional input");
    ReconReport rep = init_report(p, opt);
    const int n = rep.n;
    if (n < 4) {
        rep.verdict = Verdict::NotApplicable;
        rep.note = kNotApplicableNote;
        rep.elapsed_seconds = timer.seconds();
        return rep;
    }
    rep.combos_total = count_combinations(n);
    rep.repeated_distances = has_repeated_distances(p);
    if (opt.early_exit_repeated && rep.repeated_distances) {
        rep.verdict = Verdict::FailsTest;
        rep.note = "repeated distances; test fails without enumeration";
        rep.elapsed_seconds = timer.seconds();
        return rep;
    }

    const PairTable table(n);
    const auto triples = make_triples(table);
    const auto dv = distances_by_pair_id(p, table);
    double dmax = 0;
    for (double v : dv) dmax = std::max(dmax, v);
    const double tau = opt.epsilon * dmax * dmax * dmax;
    rep.threshold = tau;
    const std::uint64_t unit = per_unit_2d(n);

    auto rr = run_units<double>(triples.size(), opt.threads, [&](std::uint64_t u) {
        const Triple& tr = triples[u];
        return scan_unit_2d<double>(dv.data(), table.count(), tr.aid, tr.fid, tau, false);
    });

    if (rr.failed) {
        rep.verdict = Verdict::FailsTest;
        rep.witness = make_witness_2d(table, triples[rr.witness_unit], rr.witness_mids);
        rep.witness_g_approx = rr.witness_g;
        rep.min_abs_g_approx = std::fabs(rr.witness_g);
        rep.combos_checked = rr.witness_unit * unit + rr.witness_t + 1;
    } else {
        rep.verdict = Verdict::PassesTest;
        rep.min_abs_g_approx = rr.min_abs;
        rep.combos_checked = rep.combos_total;
        rep.certified = n >= 5;
        if (!rep.certified) rep.note = "n = 4 pass carries no reconstructibility certificate";
    }
    rep.elapsed_seconds = timer.seconds();
    return rep;
}

WitnessTuple make_witness_md(const PairTable& table, const Triple& tr,
                             const std::vector<int>& mids) {
    WitnessTuple w;
    w.i0 = tr.i0;
    w.i1 = tr.i1;
    w.i2 = tr.i2;
    w.slots.reserve(mids.size() + 2);
    w.slots.push_back(table.key(tr.aid));
    for (int id : mids) w.slots.push_back(table.key(id));
    w.slots.push_back(table.key(tr.fid));
    return w;
}

double md_magnitude_coefficient(int m) {
    // Hadamard-style bound: |det| <= (m+1)! * (4 d_max)^(m+1); intermediate
    // fraction-free entries are minors, so the same bound covers them.
    double fact = 1;
    for (int r = 2; r <= m + 1; ++r) fact *= r;
    return fact * std::pow(4.0, m + 1);
}

ReconReport finish_exact_md(const PointConfig<Rat>& p, const TestOptions& opt) {
    Timer timer;
    const int m = p.dim;
    ReconReport rep = init_report(p, opt);
    const int n = rep.n;
    if (n < m + 2) {
        rep.verdict = Verdict::NotApplicable;
        rep.note = "test requires n >= m + 2";
        rep.elapsed_seconds = timer.seconds();
        return rep;
    }
    if (pair_count(n) > 64) throw invalid_input("general test supports at most C(n,2) <= 64 pairs");
    rep.combos_total = count_combinations_md(n, m);
    rep.repeated_distances = has_repeated_distances(p);
    if (opt.early_exit_repeated && rep.repeated_distances) {
        rep.verdict = Verdict::FailsTest;
        rep.note = "repeated distances; test fails without enumeration";
        rep.elapsed_seconds = timer.seconds();
        return rep;
    }

    const PairTable table(n);
    const auto triples = make_triples(table);
    const auto dv = distances_by_pair_id(p, table);
    const MdLayout lay = make_md_layout(m);
    const auto prepared = prepare_exact(dv, md_magnitude_coefficient(m), m + 1);
    const std::uint64_t unit = per_unit_md(n, m);

    RunResult<Int> result;
    if (!prepared.big) {
        auto rr = run_units<i128>(triples.size(), opt.threads, [&](std::uint64_t u) {
            const Triple& tr = triples[u];
            return scan_unit_md<i128>(prepared.vi.data(), table.count(), lay, tr.aid, tr.fid,
                                      i128(0), true);
        });
        result.failed = rr.failed;
        result.witness_unit = rr.witness_unit;
        result.witness_t = rr.witness_t;
        result.witness_mids = rr.witness_mids;
        result.witness_g = int_from_i128(rr.witness_g);
        result.min_set = rr.min_set;
        if (rr.min_set) result.min_abs = int_from_i128(rr.min_abs);
    } else {
        result = run_units<Int>(triples.size(), opt.threads, [&](std::uint64_t u) {
            const Triple& tr = triples[u];
            return scan_unit_md<Int>(prepared.vz.data(), table.count(), lay, tr.aid, tr.fid,
                                     Int(0), true);
        });
    }

    if (result.failed) {
        rep.verdict = Verdict::FailsTest;
        rep.witness = make_witness_md(table, triples[result.witness_unit], result.witness_mids);
        rep.witness_g = unscale(result.witness_g, prepared.scale, m + 1);
        rep.witness_g_approx = to_double(*rep.witness_g);
        rep.min_abs_g = rat_abs(*rep.witness_g);
        rep.min_abs_g_approx = std::fabs(rep.witness_g_approx);
        rep.combos_checked = result.witness_unit * unit + result.witness_t + 1;
    } else {
        rep.verdict = Verdict::PassesTest;
        rep.min_abs_g = unscale(result.min_abs, prepared.scale, m + 1);
        rep.min_abs_g_approx = to_double(*rep.min_abs_g);
        rep.combos_checked = rep.combos_total;
        rep.certified = n != 4;
        if (!rep.certified) rep.note = "n = 4 pass carries no reconstructibility certificate";
    }
    rep.elapsed_seconds = timer.seconds();
    return rep;
}

ReconReport finish_float_md(const PointConfig<double>& p, const TestOptions& opt) {
    Timer timer;
    const int m = p.dim;
    ReconReport rep = init_report(p, opt);
    const int n = rep.n;
    if (n < m + 2) {
        rep.verdict = Verdict::NotApplicable;
        rep.note = "test requires n >= m + 2";
        rep.elapsed_seconds = timer.seconds();
        return rep;
    }
    if (pair_count(n) > 64) throw invalid_input("general test supports at most C(n,2) <= 64 pairs");
    rep.combos_total = count_combinations_md(n, m);
    rep.repeated_distances = has_repeated_distances(p);
    if (opt.early_exit_repeated && rep.repeated_distances) {
        rep.verdict = Verdict::FailsTest;
        rep.note = "repeated distances; test fails without enumeration";
        rep.elapsed_seconds = timer.seconds();
        return rep;
    }

    const PairTable table(n);
    const auto triples = make_triples(table);
    const auto dv = distances_by_pair_id(p, table);
    const MdLayout lay = make_md_layout(m);
    double dmax = 0;
    for (double v : dv) dmax = std::max(dmax, v);
    const double tau = opt.epsilon * std::pow(dmax, m + 1);
    rep.threshold = tau;
    const std::uint64_t unit = per_unit_md(n, m);

    auto rr = run_units<double>(triples.size(), opt.threads, [&](std::uint64_t u) {
        const Triple& tr = triples[u];
        return scan_unit_md<double>(dv.data(), table.count(), lay, tr.aid, tr.fid, tau, false);
    });

    if (rr.failed) {
        rep.verdict = Verdict::FailsTest;
        rep.witness = make_witness_md(table, triples[rr.witness_unit], rr.witness_mids);
        rep.witness_g_approx = rr.witness_g;
        rep.min_abs_g_approx = std::fabs(rr.witness_g);
        rep.combos_checked = rr.witness_unit * unit + rr.witness_t + 1;
    } else {
        rep.verdict = Verdict::PassesTest;
        rep.min_abs_g_approx = rr.min_abs;
        rep.combos_checked = rep.combos_total;
        rep.certified = n != 4;
        if (!rep.certified) rep.note = "n = 4 pass carries no reconstructibility certificate";
    }
    rep.elapsed_seconds = timer.seconds();
    return rep;
}

}  // namespace

ReconReport test_reconstructible_2d(const PointConfig<Rat>& p, const TestOptions& opt) {
    return finish_exact_2d(p, opt);
}

ReconReport test_reconstructible_2d(const PointConfig<double>& p, const TestOptions& opt) {
    return finish_float_2d(p, opt);
}

ReconReport test_reconstructible_md(const PointConfig<Rat>& p, const TestOptions& opt) {
    return finish_exact_md(p, opt);
}

ReconReport test_reconstructible_md(const PointConfig<double>& p, const TestOptions& opt) {
    return finish_float_md(p, opt);
}

std::vector<Rat> all_g_values_2d(const PointConfig<Rat>& p) {
    if (p.dim != 2) throw invalid_input("planar evaluation requires 2-dimensional input");
    const int n = p.count();
    if (n < 4) throw invalid_input("needs n >= 4");
    const auto dm = squared_distance_matrix(p);
    std::vector<Rat> out;
    out.reserve(count_combinations(n));
    for_each_combination_2d(n, [&](const ComboTuple2D& t) {
        out.push_back(eval_g(dm(t.i0, t.i1), dm(t.middles[0].i, t.middles[0].j),
                             dm(t.middles[1].i, t.middles[1].j), dm(t.middles[2].i, t.middles[2].j),
                             dm(t.middles[3].i, t.middles[3].j), dm(t.i0, t.i2)));
    });
    return out;
}

std::vector<Rat> all_gm_values(const PointConfig<Rat>& p) {
    const int m = p.dim;
    const int n = p.count();
    if (n < m + 2) throw invalid_input("needs n >= m + 2");
    const auto dm = squared_distance_matrix(p);
    const int k = gm_argument_count(m);
    std::vector<Rat> args(k);
    std::vector<Rat> out;
    out.reserve(count_combinations_md(n, m));
    for_each_combination_md(n, m, [&](const ComboTupleMD& t) {
        args[0] = dm(t.i0, t.i1);
        for (size_t s = 0; s < t.middles.size(); ++s)
            args[s + 1] = dm(t.middles[s].i, t.middles[s].j);
        args[k - 1] = dm(t.i0, t.i2);
        out.push_back(eval_gm(m, args));
    });
    return out;
}

}  // namespace distrecon
