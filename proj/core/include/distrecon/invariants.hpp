#pragma once

#include "distrecon/geometry.hpp"

#include <array>
#include <span>

namespace distrecon {

/// Six squared distances (d_ij, d_ik, d_il, d_jk, d_jl, d_kl) of four
/// points, in the argument order the planarity polynomial expects.
template <class S>
using GArguments = std::array<S, 6>;

/// The degree-3 planarity polynomial in six squared distances: it vanishes
/// exactly when the six arguments are the pairwise squared distances of
/// four coplanar points. Homogeneous of degree 3.
template <class S>
S eval_g(const S& u, const S& v, const S& w, const S& x, const S& y, const S& z) {
    return S(2) * u * u * z + S(2) * u * v * x - S(2) * u * v * y - S(2) * u * v * z
         - S(2) * u * x * w - S(2) * u * x * z + S(2) * u * y * w - S(2) * u * y * z
         - S(2) * u * w * z + S(2) * u * z * z + S(2) * v * v * y - S(2) * v * x * y
         - S(2) * v * x * w + S(2) * v * y * y - S(2) * v * y * w - S(2) * v * y * z
         + S(2) * v * w * z + S(2) * x * x * w - S(2) * x * y * w + S(2) * x * y * z
         + S(2) * x * w * w - S(2) * x * w * z;
}

template <class S>
S eval_g(const GArguments<S>& a) {
    return eval_g(a[0], a[1], a[2], a[3], a[4], a[5]);
}

/// Same relation as a symmetric 3x3 determinant with diagonal
/// (-2 d_il, -2 d_jl, -2 d_kl). Identical to eval_g (the calibration
/// constant between the two forms is 1).
template <class S>
S eval_g_det(const GArguments<S>& a) {
    const S& u = a[0];
    const S& v = a[1];
    const S& w = a[2];
    const S& x = a[3];
    const S& y = a[4];
    const S& z = a[5];
    const S m11 = S(-2) * w, m22 = S(-2) * y, m33 = S(-2) * z;
    const S m12 = u - w - y;
    const S m13 = v - w - z;
    const S m23 = x - y - z;
    return m11 * m22 * m33 - m11 * m23 * m23 - m12 * m12 * m33
         + S(2) * m12 * m13 * m23 - m22 * m13 * m13;
}

/// Number of arguments of the dimension-m relation: C(m+2, 2).
inline int gm_argument_count(int m) {
    if (m < 1) throw invalid_input("ambient dimension must be at least 1");
    return (m + 2) * (m + 1) / 2;
}

/// Generalization to R^m: the (m+1)x(m+1) determinant with entry (nu,mu) =
/// d_{nu,mu} - d_{0,nu} - d_{0,mu} off the diagonal and -2 d_{0,nu} on it,
/// over m+2 point slots {0..m+1}. Vanishes on squared distances of m+2
/// points in R^m. Arguments are laid out lexicographically by pair (a,b),
/// 0 <= a < b <= m+1: d_{0,1}, d_{0,2}, ..., d_{m,m+1}.
template <class S>
S eval_gm(int m, std::span<const S> d) {
    const int k = gm_argument_count(m);
    if (static_cast<int>(d.size()) != k) {
        throw invalid_input("eval_gm: expected " + std::to_string(k) + " arguments");
    }
    const PairTable table(m + 2);
    const int rows = m + 1;
    std::vector<S> mat(static_cast<size_t>(rows) * rows);
    for (int nu = 1; nu <= rows; ++nu) {
        for (int mu = 1; mu <= rows; ++mu) {
            S& e = mat[static_cast<size_t>(nu - 1) * rows + (mu - 1)];
            if (nu == mu) {
                e = S(-2) * d[table.id(0, nu)];
            } else {
                e = d[table.id(nu, mu)] - d[table.id(0, nu)] - d[table.id(0, mu)];
            }
        }
    }
    if constexpr (scalar_traits<S>::is_exact) {
        return detail::determinant_exact(std::move(mat), rows);
    } else {
        // Partial-pivot elimination.
        S det(1);
        int n = rows;
        auto& a = mat;
        for (int col = 0; col < n; ++col) {
            int piv = col;
            for (int r = col + 1; r < n; ++r) {
                if (std::abs(a[static_cast<size_t>(r) * n + col]) >
                    std::abs(a[static_cast<size_t>(piv) * n + col]))
                    piv = r;
            }
            if (a[static_cast<size_t>(piv) * n + col] == S(0)) return S(0);
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
        return det;
    }
}

template <class S>
S eval_gm(int m, const std::vector<S>& d) {
    return eval_gm<S>(m, std::span<const S>(d.data(), d.size()));
}

// ---------------------------------------------------------------------------
// Planar orientation invariant
// ---------------------------------------------------------------------------

template <class S>
using Point2 = std::array<S, 2>;

template <class S>
Point2<S> point2(const PointConfig<S>& p, int i) {
    if (p.dim != 2) throw invalid_input("planar operation on a non-planar configuration");
    return {p.at(i, 0), p.at(i, 1)};
}

/// Signed parallelogram area det(a - c, b - c). Antisymmetric in (a, b),
/// zero iff the three points are collinear.
template <class S>
S signed_area(const Point2<S>& a, const Point2<S>& b, const Point2<S>& c) {
    return (a[0] - c[0]) * (b[1] - c[1]) - (b[0] - c[0]) * (a[1] - c[1]);
}

/// Degree-18 polynomial in four planar points, invariant under rotations,
/// translations and every relabeling of the four arguments; reflections
/// negate it. Product of six factors in the three signed areas
/// a123, a124, a134.
template <class S>
S eval_I(const Point2<S>& q1, const Point2<S>& q2, const Point2<S>& q3, const Point2<S>& q4) {
    const S a123 = signed_area(q1, q2, q3);
    const S a124 = signed_area(q1, q2, q4);
    const S a134 = signed_area(q1, q3, q4);
    return (a124 * a124 - a134 * a134) * (a123 * a123 - a134 * a134)
         * (a123 * a123 - a124 * a124) * (a123 - a124 + S(2) * a134)
         * (a123 - S(2) * a124 + a134) * (S(2) * a123 - a124 + a134);
}

/// Sorted multiset of the invariant over all C(n,4) point 4-subsets.
template <class S>
struct OrientationDistribution {
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

template <class S>
OrientationDistribution<S> orientation_distribution(const PointConfig<S>& p, const S& merge_tol) {
    const int n = p.count();
    if (p.dim != 2) throw invalid_input("orientation distribution requires planar points");
    if (n < 4) throw invalid_input("orientation distribution requires at least 4 points");
    std::vector<S> values;
    values.reserve(static_cast<size_t>(n) * (n - 1) * (n - 2) * (n - 3) / 24);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int e = c + 1; e < n; ++e)
                    values.push_back(eval_I(point2(p, a), point2(p, b), point2(p, c), point2(p, e)));
    std::sort(values.begin(), values.end());
    OrientationDistribution<S> out;
    out.total = static_cast<int>(values.size());
    out.entries = detail::group_sorted(values, merge_tol);
    return out;
}

template <class S>
OrientationDistribution<S> orientation_distribution(const PointConfig<S>& p) {
    return orientation_distribution(p, S(0));
}

/// True iff the multiset equals its entrywise negation (within tol in
/// float mode): reflected configurations are indistinguishable exactly
/// when this holds.
template <class S>
bool is_symmetric_distribution(const OrientationDistribution<S>& d, const S& tol = S(0)) {
    auto v = d.expanded();
    const size_t k = v.size();
    for (size_t a = 0; a < k; ++a) {
        const S neg = -v[k - 1 - a];
        if constexpr (scalar_traits<S>::is_exact) {
            if (v[a] != neg) return false;
        } else {
            if (std::abs(v[a] - neg) > tol) return false;
        }
    }
    return true;
}

template <class S>
bool same_orientation_distribution(const OrientationDistribution<S>& a,
                                   const OrientationDistribution<S>& b, const S& tol = S(0)) {
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

/// True iff a equals the entrywise negation of b (mirror relation).
template <class S>
bool mirrored_orientation_distribution(const OrientationDistribution<S>& a,
                                       const OrientationDistribution<S>& b, const S& tol = S(0)) {
    if (a.total != b.total) return false;
    auto av = a.expanded();
    auto bv = b.expanded();
    const size_t k = av.size();
    for (size_t idx = 0; idx < k; ++idx) {
        const S neg = -bv[k - 1 - idx];
        if constexpr (scalar_traits<S>::is_exact) {
            if (av[idx] != neg) return false;
        } else {
            if (std::abs(av[idx] - neg) > tol) return false;
        }
    }
    return true;
}

}  // namespace distrecon
