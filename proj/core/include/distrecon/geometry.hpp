#pragma once

#include "distrecon/scalar.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

namespace distrecon {

/// Unordered index pair stored canonically with i < j. Indices are 0-based
/// throughout the library; serialization shifts to 1-based.
struct PairKey {
    int i = 0;
    int j = 0;
    auto operator<=>(const PairKey&) const = default;
};

inline PairKey make_pair_key(int a, int b) {
    if (a == b) throw invalid_input("pair requires two distinct indices");
    return a < b ? PairKey{a, b} : PairKey{b, a};
}

inline int pair_count(int n) { return n * (n - 1) / 2; }

/// Lexicographic table of all pairs over {0..n-1}: id <-> PairKey.
class PairTable {
public:
    explicit PairTable(int n) : n_(n) {
        if (n < 2) throw invalid_input("pair table needs at least 2 points");
        pairs_.reserve(pair_count(n));
        index_.assign(static_cast<size_t>(n) * n, -1);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                index_[static_cast<size_t>(i) * n + j] = static_cast<int>(pairs_.size());
                index_[static_cast<size_t>(j) * n + i] = static_cast<int>(pairs_.size());
                pairs_.push_back(PairKey{i, j});
            }
        }
    }

    int points() const { return n_; }
    int count() const { return static_cast<int>(pairs_.size()); }
    int id(int a, int b) const { return index_[static_cast<size_t>(a) * n_ + b]; }
    int id(PairKey k) const { return id(k.i, k.j); }
    const PairKey& key(int id) const { return pairs_[static_cast<size_t>(id)]; }
    const std::vector<PairKey>& keys() const { return pairs_; }

private:
    int n_;
    std::vector<PairKey> pairs_;
    std::vector<int> index_;
};

/// n labeled points in R^m, row-major coordinate storage.
template <class S>
struct PointConfig {
    int dim = 0;
    std::vector<S> coords;

    PointConfig() = default;
    PointConfig(int m, std::vector<S> c) : dim(m), coords(std::move(c)) {
        if (dim <= 0) throw invalid_input("ambient dimension must be positive");
        if (coords.empty() || coords.size() % static_cast<size_t>(dim) != 0) {
            throw invalid_input("coordinate count is not a multiple of the dimension");
        }
    }

    static PointConfig from_rows(int m, std::initializer_list<std::initializer_list<S>> rows) {
        std::vector<S> flat;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != m) {
                throw invalid_input("point with wrong number of coordinates");
            }
            flat.insert(flat.end(), row.begin(), row.end());
        }
        return PointConfig(m, std::move(flat));
    }

    int count() const { return dim == 0 ? 0 : static_cast<int>(coords.size()) / dim; }
    S& at(int point, int axis) { return coords[static_cast<size_t>(point) * dim + axis]; }
    const S& at(int point, int axis) const { return coords[static_cast<size_t>(point) * dim + axis]; }
};

/// Full symmetric n x n matrix of squared distances.
template <class S>
struct DistanceMatrix {
    int n = 0;
    std::vector<S> values;  // n*n

    const S& operator()(int i, int j) const { return values[static_cast<size_t>(i) * n + j]; }
    S& operator()(int i, int j) { return values[static_cast<size_t>(i) * n + j]; }
};

/// Sorted multiset of squared pairwise distances: (value, multiplicity)
/// with strictly increasing values summing to C(n,2).
template <class S>
struct DistanceMultiset {
    std::vector<std::pair<S, int>> entries;
    int total = 0;

    std::vector<S> expanded() const {
        std::vector<S> out;
        out.reserve(total);
        for (const auto& [v, mult] : entries) {
            for (int k = 0; k < mult; ++k) out.push_back(v);
        }
        return out;
    }
};

/// Rigid motion p -> M p + T with M orthogonal (reflections allowed).
template <class S>
struct RigidMotion {
    int dim = 0;
    std::vector<S> matrix;       // dim x dim, row-major
    std::vector<S> translation;  // dim

    static RigidMotion identity(int m) {
        RigidMotion g;
        g.dim = m;
        g.matrix.assign(static_cast<size_t>(m) * m, S(0));
        g.translation.assign(m, S(0));
        for (int k = 0; k < m; ++k) g.matrix[static_cast<size_t>(k) * m + k] = S(1);
        return g;
    }

    const S& m_at(int r, int c) const { return matrix[static_cast<size_t>(r) * dim + c]; }
    S& m_at(int r, int c) { return matrix[static_cast<size_t>(r) * dim + c]; }

    /// +1 for rotations, -1 for orientation-reversing motions.
    int orientation() const;
};

namespace detail {

template <class S>
S determinant_exact(std::vector<S> a, int n);  // fraction-free, defined below

/// Groups a sorted value list into (value, multiplicity) entries. In float
/// mode, adjacent values closer than merge_tol join the open group; the
/// group's first (smallest) value represents it.
template <class S>
std::vector<std::pair<S, int>> group_sorted(const std::vector<S>& sorted, const S& merge_tol) {
    std::vector<std::pair<S, int>> entries;
    const S* prev = nullptr;
    for (const S& v : sorted) {
        bool merge = false;
        if (prev != nullptr) {
            if constexpr (scalar_traits<S>::is_exact) {
                merge = (v == *prev);
            } else {
                merge = (v - *prev) <= merge_tol;
            }
        }
        if (merge) {
            entries.back().second += 1;
        } else {
            entries.emplace_back(v, 1);
        }
        prev = &v;
    }
    return entries;
}

}  // namespace detail

template <class S>
int RigidMotion<S>::orientation() const {
    std::vector<S> a = matrix;
    S det;
    if constexpr (scalar_traits<S>::is_exact) {
        det = detail::determinant_exact(std::move(a), dim);
    } else {
        // Small dims only; plain elimination is fine here.
        int n = dim;
        det = S(1);
        for (int col = 0; col < n; ++col) {
            int piv = col;
            for (int r = col + 1; r < n; ++r) {
                if (std::abs(a[static_cast<size_t>(r) * n + col]) >
                    std::abs(a[static_cast<size_t>(piv) * n + col]))
                    piv = r;
            }
            if (a[static_cast<size_t>(piv) * n + col] == S(0)) return 0;
            if (piv != col) {
                for (int c = 0; c < n; ++c)
                    std::swap(a[static_cast<size_t>(piv) * n + c], a[static_cast<size_t>(col) * n + c]);
                det = -det;
            }
            det *= a[static_cast<size_t>(col) * n + col];
            for (int r = col + 1; r < n; ++r) {
                S f = a[static_cast<size_t>(r) * n + col] / a[static_cast<size_t>(col) * n + col];
                for (int c = col; c < n; ++c)
                    a[static_cast<size_t>(r) * n + c] -= f * a[static_cast<size_t>(col) * n + c];
            }
        }
    }
    return det > S(0) ? 1 : (det < S(0) ? -1 : 0);
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

template <class S>
DistanceMatrix<S> squared_distance_matrix(const PointConfig<S>& p) {
    const int n = p.count();
    DistanceMatrix<S> d;
    d.n = n;
    d.values.assign(static_cast<size_t>(n) * n, S(0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            S acc(0);
            for (int k = 0; k < p.dim; ++k) {
                S diff = p.at(i, k) - p.at(j, k);
                acc += diff * diff;
            }
            d(i, j) = acc;
            d(j, i) = acc;
        }
    }
    return d;
}

template <class S>
std::vector<S> sorted_squared_distances(const PointConfig<S>& p) {
    const int n = p.count();
    if (n < 2) throw invalid_input("distance distribution needs at least 2 points");
    std::vector<S> values;
    values.reserve(pair_count(n));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            S acc(0);
            for (int k = 0; k < p.dim; ++k) {
                S diff = p.at(i, k) - p.at(j, k);
                acc += diff * diff;
            }
            values.push_back(acc);
        }
    }
    std::sort(values.begin(), values.end());
    return values;
}

/// Default float merge tolerance: 1e-9 * d_max. Exact mode merges on equality.
template <class S>
S default_merge_tolerance(const std::vector<S>& sorted_values) {
    if constexpr (scalar_traits<S>::is_exact) {
        return S(0);
    } else {
        return sorted_values.empty() ? S(0) : S(1e-9) * sorted_values.back();
    }
}

template <class S>
DistanceMultiset<S> distance_distribution(const PointConfig<S>& p, const S& merge_tol) {
    auto values = sorted_squared_distances(p);
    DistanceMultiset<S> out;
    out.total = static_cast<int>(values.size());
    out.entries = detail::group_sorted(values, merge_tol);
    return out;
}

template <class S>
DistanceMultiset<S> distance_distribution(const PointConfig<S>& p) {
    auto values = sorted_squared_distances(p);
    DistanceMultiset<S> out;
    out.total = static_cast<int>(values.size());
    out.entries = detail::group_sorted(values, default_merge_tolerance(values));
    return out;
}

/// Distribution of d / d_max: every squared distance divided by the largest,
/// making the result invariant under similarity transformations.
template <class S>
DistanceMultiset<S> rescaled_distribution(const PointConfig<S>& p) {
    auto values = sorted_squared_distances(p);
    const S& dmax = values.back();
    if (dmax == S(0)) throw degenerate_scale("all points coincide; no scale to divide by");
    for (S& v : values) v /= dmax;
    DistanceMultiset<S> out;
    out.total = static_cast<int>(values.size());
    out.entries = detail::group_sorted(values, default_merge_tolerance(values));
    return out;
}

/// True iff the expanded sorted value sequences agree pairwise within tol
/// (tol ignored in exact mode). Distinct totals never match.
template <class S>
bool same_distribution(const DistanceMultiset<S>& a, const DistanceMultiset<S>& b, const S& tol = S(0)) {
    if (a.total != b.total) return false;
    auto av = a.expanded();
    auto bv = b.expanded();
    for (size_t k = 0; k < av.size(); ++k) {
        if constexpr (scalar_traits<S>::is_exact) {
            if (av[k] != bv[k]) return false;
        } else {
            if (std::abs(av[k] - bv[k]) > tol) return false;
        }
    }
    return true;
}

template <class S>
bool has_repeated_distances(const PointConfig<S>& p, const S& tol) {
    auto values = sorted_squared_distances(p);
    for (size_t k = 1; k < values.size(); ++k) {
        if constexpr (scalar_traits<S>::is_exact) {
            if (values[k] == values[k - 1]) return true;
        } else {
            if (values[k] - values[k - 1] <= tol) return true;
        }
    }
    return false;
}

template <class S>
bool has_repeated_distances(const PointConfig<S>& p) {
    auto values = sorted_squared_distances(p);
    const S tol = default_merge_tolerance(values);
    for (size_t k = 1; k < values.size(); ++k) {
        if constexpr (scalar_traits<S>::is_exact) {
            if (values[k] == values[k - 1]) return true;
        } else {
            if (values[k] - values[k - 1] <= tol) return true;
        }
    }
    return false;
}

template <class S>
PointConfig<S> apply_rigid_motion(const PointConfig<S>& p, const RigidMotion<S>& g) {
    if (g.dim != p.dim) throw invalid_input("rigid motion dimension mismatch");
    PointConfig<S> q = p;
    const int n = p.count();
    for (int i = 0; i < n; ++i) {
        for (int r = 0; r < p.dim; ++r) {
            S acc = g.translation[r];
            for (int c = 0; c < p.dim; ++c) acc += g.m_at(r, c) * p.at(i, c);
            q.at(i, r) = acc;
        }
    }
    return q;
}

/// Applies a relabeling pi: old point i becomes point pi[i] of the result.
template <class S>
PointConfig<S> permute_points(const PointConfig<S>& p, const std::vector<int>& pi) {
    const int n = p.count();
    if (static_cast<int>(pi.size()) != n) throw invalid_input("relabeling size mismatch");
    PointConfig<S> q = p;
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < p.dim; ++k) q.at(pi[i], k) = p.at(i, k);
    }
    return q;
}

inline DistanceMatrix<double> to_float_distance(const DistanceMatrix<Rat>& d) {
    DistanceMatrix<double> out;
    out.n = d.n;
    out.values.reserve(d.values.size());
    for (const Rat& v : d.values) out.values.push_back(to_double(v));
    return out;
}

template <class S>
PointConfig<double> to_float_config(const PointConfig<S>& p) {
    if constexpr (scalar_traits<S>::is_exact) {
        PointConfig<double> q;
        q.dim = p.dim;
        q.coords.reserve(p.coords.size());
        for (const S& c : p.coords) q.coords.push_back(to_double(c));
        return q;
    } else {
        return p;
    }
}

/// Result of the small-n congruence oracle: a relabeling pi and a motion
/// with M p_i + T = q_{pi(i)} within tol for every i.
struct Congruence {
    std::vector<int> relabeling;
    RigidMotion<double> motion;
    double max_residual = 0.0;
};

/// Exhaustive oracle over all n! relabelings (lexicographically smallest
/// valid relabeling wins); each candidate is aligned by centroid plus a
/// least-squares orthogonal fit. Intended for n <= 8; throws for n > 10.
std::optional<Congruence> congruent(const PointConfig<double>& p, const PointConfig<double>& q,
                                    double tol);

inline std::optional<Congruence> congruent(const PointConfig<Rat>& p, const PointConfig<Rat>& q,
                                           double tol) {
    return congruent(to_float_config(p), to_float_config(q), tol);
}

// --- exact determinant (fraction-free), shared by orientation() and the
//     exact realizability check ------------------------------------------

namespace detail {

template <class S>
S determinant_exact(std::vector<S> a, int n) {
    // Bareiss elimination; divisions are exact over integers and harmless
    // over rationals.
    if (n == 0) return S(1);
    S sign(1), prev(1);
    for (int col = 0; col < n - 1; ++col) {
        if (a[static_cast<size_t>(col) * n + col] == S(0)) {
            int piv = -1;
            for (int r = col + 1; r < n; ++r) {
                if (a[static_cast<size_t>(r) * n + col] != S(0)) {
                    piv = r;
                    break;
                }
            }
            if (piv < 0) return S(0);
            for (int c = 0; c < n; ++c)
                std::swap(a[static_cast<size_t>(piv) * n + c], a[static_cast<size_t>(col) * n + c]);
            sign = -sign;
        }
        for (int r = col + 1; r < n; ++r) {
            for (int c = col + 1; c < n; ++c) {
                S num = a[static_cast<size_t>(r) * n + c] * a[static_cast<size_t>(col) * n + col] -
                        a[static_cast<size_t>(r) * n + col] * a[static_cast<size_t>(col) * n + c];
                a[static_cast<size_t>(r) * n + c] = num / prev;
            }
            a[static_cast<size_t>(r) * n + col] = S(0);
        }
        prev = a[static_cast<size_t>(col) * n + col];
    }
    return sign * a[static_cast<size_t>(n - 1) * n + (n - 1)];
}

}  // namespace detail

}  // namespace distrecon
