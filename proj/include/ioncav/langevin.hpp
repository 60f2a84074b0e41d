// langevin.hpp — linearized fluctuation dynamics around a steady branch:
// drift matrix M and diffusion matrix D over the quadrature state
// (X_b, P_b, X_a, P_a), plus the two stability tests.

#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "ioncav/error.hpp"
#include "ioncav/numerics.hpp"

namespace ioncav {

using DriftMatrix = Eigen::Matrix4d;
using DiffusionMatrix = Eigen::Matrix4d;

// d/dt (X_b,P_b,X_a,P_a) = M (X_b,P_b,X_a,P_a) + noise.  The coupling -2 g2
// enters both momentum rows, which is the quadrature form of the linearized
// Langevin equations.  trace(M) = -2 (gamma + Gamma) always.
inline DriftMatrix drift_matrix(double Delta_tilde, double omega_m, double gamma,
                                double Gamma, double g2) {
    DriftMatrix M;
    M << -Gamma,    omega_m,  0.0,          0.0,
         -omega_m, -Gamma,   -2.0 * g2,     0.0,
          0.0,      0.0,     -gamma,        Delta_tilde,
         -2.0 * g2, 0.0,     -Delta_tilde, -gamma;
    return M;
}

// D = Diag[Gamma(2 n_b + 1), Gamma(2 n_b + 1), gamma(2 n_a + 1), gamma(2 n_a + 1)]
inline DiffusionMatrix diffusion_matrix(double gamma, double Gamma, double n_a, double n_b) {
    DiffusionMatrix D = DiffusionMatrix::Zero();
    D(0, 0) = D(1, 1) = Gamma * (2.0 * n_b + 1.0);
    D(2, 2) = D(3, 3) = gamma * (2.0 * n_a + 1.0);
    return D;
}

/// 2 |g2| < sqrt((Delta_tilde^2 + gamma^2) omega_m / |Delta_tilde|), strict.
inline bool routh_hurwitz_stable(double Delta_tilde, double omega_m, double gamma, double g2) {
    if (Delta_tilde == 0.0)
        throw Error(errc::criterion_undefined,
                    "Routh-Hurwitz bound undefined at Delta_tilde = 0");
    const double bound =
        std::sqrt((Delta_tilde * Delta_tilde + gamma * gamma) * omega_m / std::abs(Delta_tilde));
    return 2.0 * std::abs(g2) < bound;
}

/// True iff max Re lambda(M) < 0 strictly; a marginal spectrum is unstable.
inline bool eigen_stable(const DriftMatrix& M) {
    const auto ev = num::eig4(M);
    double max_re = ev[0].real();
    for (const auto& l : ev) max_re = std::max(max_re, l.real());
    return max_re < 0.0;
}

}  // namespace ioncav
