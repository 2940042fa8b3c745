#include "distrecon/perms.hpp"

#include <Eigen/Eigenvalues>

#include <map>

namespace distrecon {

PairPermutation compose(const PairPermutation& phi, const PairPermutation& psi) {
    if (phi.n != psi.n) throw invalid_input("composing pair permutations of different n");
    PairPermutation out;
    out.n = phi.n;
    out.image.resize(psi.image.size());
    for (size_t id = 0; id < psi.image.size(); ++id) out.image[id] = phi.image[psi.image[id]];
    return out;
}

PairPermutation induced_pair_permutation(const std::vector<int>& pi) {
    const int n = static_cast<int>(pi.size());
    if (n < 2) throw invalid_input("relabeling needs n >= 2");
    const PairTable table(n);
    PairPermutation phi;
    phi.n = n;
    phi.image.resize(table.count());
    for (int id = 0; id < table.count(); ++id) {
        const PairKey k = table.key(id);
        phi.image[id] = table.id(pi[k.i], pi[k.j]);
    }
    return phi;
}

AdjacencyOracle::AdjacencyOracle(int n) : table_(n) {
    if (n > 31) throw invalid_input("index bitmasks support n <= 31");
    masks_.resize(table_.count());
    for (int id = 0; id < table_.count(); ++id) {
        const PairKey k = table_.key(id);
        masks_[id] = (1u << k.i) | (1u << k.j);
    }
    for (int a = 0; a < table_.count(); ++a) {
        for (int b = a + 1; b < table_.count(); ++b) {
            if (masks_[a] & masks_[b]) adjacent_ids_.emplace_back(a, b);
        }
    }
}

bool AdjacencyOracle::adjacency(const std::vector<int>& image) const {
    for (const auto& [a, b] : adjacent_ids_) {
        if ((masks_[image[a]] & masks_[image[b]]) == 0) return false;
    }
    return true;
}

bool AdjacencyOracle::n4_extra(const std::vector<int>& image) const {
    if (table_.points() != 4) throw invalid_input("the extra triple condition is for n = 4 only");
    for (int i = 0; i < 4; ++i) {
        std::uint32_t common = 0xFu;
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            common &= masks_[image[table_.id(i, j)]];
        }
        if (common == 0) return false;
    }
    return true;
}

std::optional<std::vector<int>> AdjacencyOracle::as_relabeling(const std::vector<int>& image) const {
    const int n = table_.points();
    std::vector<int> sigma(n, -1);
    std::uint32_t seen = 0;
    for (int i = 0; i < n; ++i) {
        std::uint32_t common = ~0u;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            common &= masks_[image[table_.id(i, j)]];
        }
        // The common element must be unique and unused so far.
        if (common == 0 || (common & (common - 1)) != 0) return std::nullopt;
        if (common & seen) return std::nullopt;
        seen |= common;
        int s = 0;
        while (!(common & (1u << s))) ++s;
        sigma[i] = s;
    }
    // Verify the candidate actually induces the permutation.
    for (int id = 0; id < table_.count(); ++id) {
        const PairKey k = table_.key(id);
        if (image[id] != table_.id(sigma[k.i], sigma[k.j])) return std::nullopt;
    }
    return sigma;
}

bool satisfies_adjacency(const PairPermutation& phi) {
    return AdjacencyOracle(phi.n).adjacency(phi.image);
}

bool satisfies_n4_extra(const PairPermutation& phi) {
    if (phi.n != 4) throw invalid_input("the extra triple condition is for n = 4 only");
    return AdjacencyOracle(4).n4_extra(phi.image);
}

std::optional<std::vector<int>> as_relabeling(const PairPermutation& phi) {
    return AdjacencyOracle(phi.n).as_relabeling(phi.image);
}

PairPermutation counterexample_n4() {
    const PairTable table(4);
    PairPermutation phi = PairPermutation::identity(4);
    // 0-based rendering of: {1,4} -> {2,3} and {2,3} -> {1,4}, rest fixed.
    phi.image[table.id(0, 3)] = table.id(1, 2);
    phi.image[table.id(1, 2)] = table.id(0, 3);
    return phi;
}

void distribution_preserving_permutations(const PointConfig<Rat>& p, const PointConfig<Rat>& q,
                                          const std::function<bool(const PairPermutation&)>& fn) {
    const int n = p.count();
    if (q.count() != n) return;
    if (n < 2) throw invalid_input("need n >= 2");
    const PairTable table(n);
    const auto dp = squared_distance_matrix(p);
    const auto dq = squared_distance_matrix(q);

    // Group pair ids by exact distance value on each side.
    std::map<Rat, std::vector<int>> groups_p, groups_q;
    for (int id = 0; id < table.count(); ++id) {
        const PairKey k = table.key(id);
        groups_p[dp(k.i, k.j)].push_back(id);
        groups_q[dq(k.i, k.j)].push_back(id);
    }
    if (groups_p.size() != groups_q.size()) return;
    std::vector<std::vector<int>> qids, pids;
    {
        auto itp = groups_p.begin();
        auto itq = groups_q.begin();
        for (; itp != groups_p.end(); ++itp, ++itq) {
            if (itp->first != itq->first || itp->second.size() != itq->second.size()) return;
            qids.push_back(itq->second);
            pids.push_back(itp->second);
        }
    }

    // Odometer over per-group bijections: each group's P-side id list runs
    // through its permutations in lexicographic order.
    const size_t ngroups = pids.size();
    std::vector<std::vector<int>> perm = pids;
    PairPermutation phi;
    phi.n = n;
    phi.image.assign(table.count(), -1);
    while (true) {
        for (size_t g = 0; g < ngroups; ++g) {
            for (size_t k = 0; k < qids[g].size(); ++k) phi.image[qids[g][k]] = perm[g][k];
        }
        if (!fn(static_cast<const PairPermutation&>(phi))) return;
        // Advance the odometer.
        size_t g = 0;
        for (; g < ngroups; ++g) {
            if (std::next_permutation(perm[g].begin(), perm[g].end())) break;
            // wrapped: perm[g] is back to sorted order, carry to next group
        }
        if (g == ngroups) return;
    }
}

std::vector<PairPermutation> collect_distribution_preserving(const PointConfig<Rat>& p,
                                                             const PointConfig<Rat>& q,
                                                             std::size_t limit) {
    std::vector<PairPermutation> out;
    distribution_preserving_permutations(p, q, [&](const PairPermutation& phi) {
        out.push_back(phi);
        return out.size() < limit;
    });
    return out;
}

namespace {

template <class S>
void validate_distance_matrix(const DistanceMatrix<S>& d) {
    const int n = d.n;
    if (n < 1 || static_cast<int>(d.values.size()) != n * n) {
        throw invalid_input("malformed distance matrix");
    }
    for (int i = 0; i < n; ++i) {
        if (d(i, i) != S(0)) throw invalid_input("distance matrix must have zero diagonal");
        for (int j = 0; j < n; ++j) {
            if (d(i, j) != d(j, i)) throw invalid_input("distance matrix must be symmetric");
            if (d(i, j) < S(0)) throw invalid_input("distance matrix must be non-negative");
        }
    }
}

}  // namespace

bool realizable_in_dim(const DistanceMatrix<Rat>& d, int m) {
    validate_distance_matrix(d);
    if (m < 0) throw invalid_input("dimension must be non-negative");
    const int n = d.n;
    if (n == 1) return true;
    const int k = n - 1;
    std::vector<Rat> g(static_cast<size_t>(k) * k);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            g[static_cast<size_t>(a) * k + b] = (d(0, a + 1) + d(0, b + 1) - d(a + 1, b + 1)) / 2;
        }
    }

    // Pivoted Schur-complement elimination: PSD iff every step finds a
    // positive diagonal pivot or the remaining block is identically zero.
    std::vector<int> active(k);
    std::iota(active.begin(), active.end(), 0);
    int rank = 0;
    auto at = [&](int a, int b) -> Rat& { return g[static_cast<size_t>(a) * k + b]; };
    while (!active.empty()) {
        int pivot = -1;
        for (int idx : active) {
            if (at(idx, idx) > 0) {
                pivot = idx;
                break;
            }
            if (at(idx, idx) < 0) return false;
        }
        if (pivot < 0) {
            // All remaining diagonals are zero; PSD forces the block to vanish.
            for (int a : active)
                for (int b : active)
                    if (at(a, b) != 0) return false;
            break;
        }
        ++rank;
        if (rank > m) return false;
        const Rat piv = at(pivot, pivot);
        std::vector<int> rest;
        rest.reserve(active.size() - 1);
        for (int idx : active)
            if (idx != pivot) rest.push_back(idx);
        for (int a : rest)
            for (int b : rest) at(a, b) -= at(a, pivot) * at(pivot, b) / piv;
        active = std::move(rest);
    }
    return rank <= m;
}

bool realizable_in_dim(const DistanceMatrix<double>& d, int m, double tol) {
    validate_distance_matrix(d);
    if (m < 0) throw invalid_input("dimension must be non-negative");
    const int n = d.n;
    if (n == 1) return true;
    const int k = n - 1;
    Eigen::MatrixXd g(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) g(a, b) = (d(0, a + 1) + d(0, b + 1) - d(a + 1, b + 1)) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    const double scale = std::max(1.0, std::max(std::abs(ev(0)), std::abs(ev(k - 1))));
    const double cut = tol * scale;
    if (ev(0) < -cut) return false;
    int rank = 0;
    for (int idx = 0; idx < k; ++idx)
        if (ev(idx) > cut) ++rank;
    return rank <= m;
}

}  // namespace distrecon
