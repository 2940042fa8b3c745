#include "distrecon/geometry.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numeric>

namespace distrecon {

namespace {

/// Best orthogonal M (reflections allowed) and translation T with
/// M p_i + T ~ q_{pi(i)}, by centroid alignment and an SVD fit.
RigidMotion<double> fit_motion(const Eigen::MatrixXd& p, const Eigen::MatrixXd& q_permuted) {
    const int m = static_cast<int>(p.rows());
    const Eigen::VectorXd pc = p.rowwise().mean();
    const Eigen::VectorXd qc = q_permuted.rowwise().mean();
    const Eigen::MatrixXd pcen = p.colwise() - pc;
    const Eigen::MatrixXd qcen = q_permuted.colwise() - qc;

    const Eigen::MatrixXd h = qcen * pcen.transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXd rot = svd.matrixU() * svd.matrixV().transpose();

    RigidMotion<double> g;
    g.dim = m;
    g.matrix.resize(static_cast<size_t>(m) * m);
    g.translation.resize(m);
    Eigen::VectorXd t = qc - rot * pc;
    for (int r = 0; r < m; ++r) {
        g.translation[r] = t(r);
        for (int c = 0; c < m; ++c) g.matrix[static_cast<size_t>(r) * m + c] = rot(r, c);
    }
    return g;
}

}  // namespace

std::optional<Congruence> congruent(const PointConfig<double>& p, const PointConfig<double>& q,
                                    double tol) {
    if (p.dim != q.dim) throw invalid_input("congruent: dimension mismatch");
    const int n = p.count();
    if (q.count() != n) throw invalid_input("congruent: point count mismatch");
    if (n > 10) throw invalid_input("congruent: factorial search is limited to n <= 10");
    const int m = p.dim;

    Eigen::MatrixXd pm(m, n), qm(m, n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < m; ++k) {
            pm(k, i) = p.at(i, k);
            qm(k, i) = q.at(i, k);
        }
    }

    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    Eigen::MatrixXd qperm(m, n);
    do {
        for (int i = 0; i < n; ++i) qperm.col(i) = qm.col(pi[i]);
        RigidMotion<double> g = fit_motion(pm, qperm);
        double worst = 0.0;
        for (int i = 0; i < n && worst <= tol; ++i) {
            double dist2 = 0.0;
            for (int r = 0; r < m; ++r) {
                double acc = g.translation[r];
                for (int c = 0; c < m; ++c) acc += g.m_at(r, c) * pm(c, i);
                const double diff = acc - qperm(r, i);
                dist2 += diff * diff;
            }
            worst = std::max(worst, std::sqrt(dist2));
        }
        if (worst <= tol) {
            return Congruence{pi, std::move(g), worst};
        }
    } while (std::next_permutation(pi.begin(), pi.end()));
    return std::nullopt;
}

}  // namespace distrecon
