#pragma once

// Shared fixtures and generators for the test suites.

#include "distrecon/geometry.hpp"
#include "distrecon/invariants.hpp"

#include <random>
#include <set>

namespace distrecon::testing {

inline PointConfig<Rat> unit_square() {
    return PointConfig<Rat>::from_rows(2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline PointConfig<Rat> five_point_example() {
    return PointConfig<Rat>::from_rows(2, {{0, 0}, {7, 0}, {5, -1}, {3, -3}, {11, 2}});
}

/// Integer 5-point configuration that passes the planar test and has an
/// asymmetric orientation distribution.
inline PointConfig<Rat> passing_asymmetric_five() {
    return PointConfig<Rat>::from_rows(2, {{6, 3}, {10, 1}, {11, 1}, {0, 6}, {8, 4}});
}

/// Exactly orthogonal rational rotation from the parametrization
/// cos = (1-t^2)/(1+t^2), sin = 2t/(1+t^2); optional reflection.
inline RigidMotion<Rat> rational_rotation(const Rat& t, bool reflect, const Rat& tx,
                                          const Rat& ty) {
    const Rat denom = Rat(1) + t * t;
    const Rat c = (Rat(1) - t * t) / denom;
    const Rat s = Rat(2) * t / denom;
    RigidMotion<Rat> g;
    g.dim = 2;
    g.matrix = {c, -s, s, c};
    if (reflect) {
        // Pre-compose with diag(1, -1).
        g.matrix = {c, s, s, -c};
    }
    g.translation = {tx, ty};
    return g;
}

inline Rat random_small_rational(std::mt19937_64& rng, int num_range = 9, int den_range = 7) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_range);
    Rat q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline RigidMotion<Rat> random_rational_motion(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coin(0, 1);
    return rational_rotation(random_small_rational(rng), coin(rng) == 1,
                             random_small_rational(rng), random_small_rational(rng));
}

inline std::vector<int> random_relabeling(std::mt19937_64& rng, int n) {
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    std::shuffle(pi.begin(), pi.end(), rng);
    return pi;
}

/// Random integer configuration with pairwise distinct points.
inline PointConfig<Rat> random_int_config(std::mt19937_64& rng, int n, int dim, int box) {
    std::uniform_int_distribution<int> coord(-box, box);
    std::set<std::vector<int>> seen;
    PointConfig<Rat> p;
    p.dim = dim;
    while (static_cast<int>(seen.size()) < n) {
        std::vector<int> pt(dim);
        for (int& c : pt) c = coord(rng);
        if (!seen.insert(pt).second) continue;
        for (int c : pt) p.coords.emplace_back(c);
    }
    return p;
}

inline PointConfig<Rat> scale_config(const PointConfig<Rat>& p, const Rat& lambda) {
    PointConfig<Rat> q = p;
    for (Rat& c : q.coords) c *= lambda;
    return q;
}

inline PointConfig<Rat> reflect_config(const PointConfig<Rat>& p) {
    RigidMotion<Rat> g = RigidMotion<Rat>::identity(p.dim);
    g.matrix[0] = -1;
    return apply_rigid_motion(p, g);
}

}  // namespace distrecon::testing
