// entanglement.hpp — steady-state covariance matrix from the Lyapunov
// equation M V + V M^T = -D, and the Gaussian entanglement measures built on
// it (smaller symplectic eigenvalue of the partial transpose, logarithmic
// negativity, PPT verdict).

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "ioncav/error.hpp"
#include "ioncav/langevin.hpp"
#include "ioncav/numerics.hpp"
#include "ioncav/params.hpp"
#include "ioncav/steady_state.hpp"
#include "ioncav/tolerances.hpp"

namespace ioncav {

// Symmetric 4x4 correlation matrix of (X_b, P_b, X_a, P_a) with block form
// [[X, Z], [Z^T, Y]]: X mechanical, Y optical, Z cross.
struct CovarianceMatrix {
    Eigen::Matrix4d V = Eigen::Matrix4d::Zero();

    Eigen::Matrix2d mechanical() const { return V.topLeftCorner<2, 2>(); }
    Eigen::Matrix2d optical() const { return V.bottomRightCorner<2, 2>(); }
    Eigen::Matrix2d cross() const { return V.topRightCorner<2, 2>(); }
};

inline Eigen::Matrix4d symplectic_form() {
    Eigen::Matrix4d Om = Eigen::Matrix4d::Zero();
    Om(0, 1) = 1.0; Om(1, 0) = -1.0;
    Om(2, 3) = 1.0; Om(3, 2) = -1.0;
    return Om;
}

/// Solves M V + V M^T = -D by vectorizing to a 16-unknown linear system.
/// M must be strictly Hurwitz; the result is symmetrized and satisfies
/// ||M V + V M^T + D||_F <= lyapunov_residual_rel (||M||_F ||V||_F + ||D||_F).
inline CovarianceMatrix solve_lyapunov(const DriftMatrix& M, const DiffusionMatrix& D) {
    if (!eigen_stable(M))
        throw Error(errc::no_steady_state, "drift matrix is not Hurwitz");
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(16, 16);
    const Eigen::Matrix4d I = Eigen::Matrix4d::Identity();
    // A = I (x) M + M (x) I acting on column-stacked V
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            A.block<4, 4>(4 * i, 4 * j) += I(i, j) * M;
            A.block<4, 4>(4 * i, 4 * j) += M(i, j) * I;
        }
    Eigen::VectorXd rhs(16);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) rhs(4 * j + i) = -D(i, j);
    const Eigen::VectorXd v = num::solve_linear(A, rhs);
    Eigen::Matrix4d V;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) V(i, j) = v(4 * j + i);
    V = 0.5 * (V + V.transpose()).eval();
    const double residual = (M * V + V * M.transpose() + D).norm();
    if (residual > tol::lyapunov_residual_rel * (M.norm() * V.norm() + D.norm()))
        throw Error(errc::numerical, "Lyapunov residual above bound");
    return {V};
}

inline double sigma_sum(const CovarianceMatrix& cm) {
    return cm.mechanical().determinant() + cm.optical().determinant() -
           2.0 * cm.cross().determinant();
}

/// Smaller symplectic eigenvalue of the partially transposed state:
/// mu- = sqrt( (A - sqrt(A^2 - 4 det V)) / 2 ),  A = det X + det Y - 2 det Z.
inline double symplectic_min(const CovarianceMatrix& cm) {
    const double A = sigma_sum(cm);
    const double detV = cm.V.determinant();
    double disc = A * A - 4.0 * detV;
    const double scale = std::max({std::abs(A * A), std::abs(4.0 * detV), 1e-300});
    if (disc < -1e-12 * scale)
        throw Error(errc::unphysical_covariance, "A^2 < 4 det V");
    disc = std::max(disc, 0.0);
    const double inner = 0.5 * (A - std::sqrt(disc));
    if (!(inner > 0.0))
        throw Error(errc::unphysical_covariance, "partial transpose has no real symplectic spectrum");
    return std::sqrt(inner);
}

/// E_N = max(0, -ln 2 mu-); positive exactly when mu- < 1/2.
inline double log_negativity(const CovarianceMatrix& cm) {
    return std::max(0.0, -std::log(2.0 * symplectic_min(cm)));
}

/// Simon criterion: entangled iff 4 det V < Sigma(V) - 1/4, strict.
inline bool ppt_entangled(const CovarianceMatrix& cm) {
    return 4.0 * cm.V.determinant() < sigma_sum(cm) - 0.25;
}

/// min eigenvalue of V + i Omega/2 (Hermitian); >= physicality_eig for a
/// physical state.
inline double physicality_margin(const CovarianceMatrix& cm) {
    Eigen::Matrix4cd H = cm.V.cast<std::complex<double>>() +
                         std::complex<double>(0.0, 0.5) *
                             symplectic_form().cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(H);
    if (es.info() != Eigen::Success)
        throw Error(errc::numerical, "physicality eigensolver failed");
    return es.eigenvalues().minCoeff();
}

struct EntanglementRecord {
    double Delta = 0.0;
    double Delta_tilde = std::numeric_limits<double>::quiet_NaN();
    double g_2 = std::numeric_limits<double>::quiet_NaN();
    bool stable = false;
    std::optional<double> E_N;  // absent when no stable branch exists
};

/// E_N along a detuning grid; points without a stable branch are flagged and
/// report the smallest branch's coordinates with E_N absent.
inline std::vector<EntanglementRecord> entanglement_sweep(
    const EffectiveParams& eff, std::span<const double> delta_grid,
    BranchPolicy policy = BranchPolicy::smallest_stable) {
    std::vector<EntanglementRecord> records;
    records.reserve(delta_grid.size());
    for (double d : delta_grid) {
        const EffectiveParams at = with_delta(eff, d);
        const auto branches = solve_branches(at);
        EntanglementRecord rec;
        rec.Delta = d;
        if (const auto chosen = select_branch(branches, policy)) {
            rec.Delta_tilde = chosen->Delta_tilde;
            rec.g_2 = chosen->g_2;
            rec.stable = true;
            const DriftMatrix M =
                drift_matrix(chosen->Delta_tilde, at.omega_m, at.gamma, at.Gamma, chosen->g_2);
            const DiffusionMatrix D = diffusion_matrix(at.gamma, at.Gamma, at.n_a, at.n_b);
            rec.E_N = log_negativity(solve_lyapunov(M, D));
        } else if (!branches.empty()) {
            rec.Delta_tilde = branches.front().Delta_tilde;
            rec.g_2 = branches.front().g_2;
        }
        records.push_back(rec);
    }
    return records;
}

}  // namespace ioncav
