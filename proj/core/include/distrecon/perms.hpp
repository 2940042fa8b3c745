#pragma once

#include "distrecon/geometry.hpp"

#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace distrecon {

/// Bijection on the set of unordered index pairs, stored as image[pair_id]
/// over the lexicographic pair table for n points.
struct PairPermutation {
    int n = 0;
    std::vector<int> image;

    bool operator==(const PairPermutation&) const = default;

    static PairPermutation identity(int n) {
        PairPermutation phi;
        phi.n = n;
        phi.image.resize(pair_count(n));
        std::iota(phi.image.begin(), phi.image.end(), 0);
        return phi;
    }
};

/// phi(psi(.)): apply psi first, then phi.
PairPermutation compose(const PairPermutation& phi, const PairPermutation& psi);

/// The pair permutation {i,j} -> {pi(i), pi(j)} induced by a point
/// relabeling. Injective as a map from relabelings for n >= 3.
PairPermutation induced_pair_permutation(const std::vector<int>& pi);

/// Checks relabeling-style conditions on pair permutations. Caches the
/// pair table and index masks; reuse one instance in enumeration loops.
class AdjacencyOracle {
public:
    explicit AdjacencyOracle(int n);

    /// Images of any two pairs sharing an index must share an index
    /// themselves (for every base index and every two partners).
    bool adjacency(const std::vector<int>& image) const;

    /// n = 4 only: for every base index i, the images of the three pairs
    /// through i must have a common element.
    bool n4_extra(const std::vector<int>& image) const;

    /// Reconstructs the point relabeling realizing the pair permutation,
    /// if one exists: sigma(i) = the unique common element of the images
    /// of all pairs through i.
    std::optional<std::vector<int>> as_relabeling(const std::vector<int>& image) const;

    const PairTable& table() const { return table_; }

private:
    PairTable table_;
    std::vector<std::uint32_t> masks_;                 // pair id -> 2-bit index mask
    std::vector<std::pair<int, int>> adjacent_ids_;    // all id pairs sharing an index
};

bool satisfies_adjacency(const PairPermutation& phi);
bool satisfies_n4_extra(const PairPermutation& phi);
std::optional<std::vector<int>> as_relabeling(const PairPermutation& phi);

/// The explicit n = 4 pair permutation that satisfies the adjacency
/// condition without being a relabeling: fixes {1,2},{1,3},{2,4},{3,4}
/// and swaps {1,4} <-> {2,3} (0-based here).
PairPermutation counterexample_n4();

/// Streams all C(n,2)! pair permutations in lexicographic order of the
/// image sequence. Guarded to n <= 5 (10! = 3,628,800 already; beyond
/// that the factorial growth is hopeless). The callback receives a reused
/// PairPermutation; return false to stop.
template <class F>
void for_each_pair_permutation(int n, F&& fn) {
    if (n < 2) throw invalid_input("pair permutations need n >= 2");
    if (n > 5) {
        throw invalid_input("full pair-permutation enumeration is limited to n <= 5: "
                            "C(n,2)! grows factorially (C(6,2)! ~ 1.3e12)");
    }
    PairPermutation phi = PairPermutation::identity(n);
    do {
        if constexpr (std::is_void_v<decltype(fn(static_cast<const PairPermutation&>(phi)))>) {
            fn(static_cast<const PairPermutation&>(phi));
        } else {
            if (!fn(static_cast<const PairPermutation&>(phi))) return;
        }
    } while (std::next_permutation(phi.image.begin(), phi.image.end()));
}

/// Streams every pair permutation phi with d_Q({i,j}) = d_P(phi.{i,j})
/// for all pairs, built by matching equal-value groups (product of the
/// multiplicities' factorials, never a blind C(n,2)! filter). Exact
/// arithmetic only. Empty stream when the distributions differ.
/// The callback receives a reused PairPermutation; return false to stop.
void distribution_preserving_permutations(const PointConfig<Rat>& p, const PointConfig<Rat>& q,
                                          const std::function<bool(const PairPermutation&)>& fn);

/// Convenience collector for the stream above.
std::vector<PairPermutation> collect_distribution_preserving(const PointConfig<Rat>& p,
                                                             const PointConfig<Rat>& q,
                                                             std::size_t limit = SIZE_MAX);

/// Whether a symmetric, zero-diagonal, non-negative matrix of squared
/// distances is realizable by n points in R^m: the Gram-style matrix
/// G(a,b) = (d(0,a) + d(0,b) - d(a,b)) / 2 (base point 0) must be
/// positive semidefinite with rank <= m. Exact version uses fraction-free
/// pivoted elimination; float version uses an eigenvalue cutoff at tol.
bool realizable_in_dim(const DistanceMatrix<Rat>& d, int m);
bool realizable_in_dim(const DistanceMatrix<double>& d, int m, double tol);

}  // namespace distrecon
