// numerics.hpp — small dense kernels shared by the pipeline: cubic real
// roots, 4x4 eigenvalues, linear solves, the moment-ODE integrator and peak
// detection.  Everything is deterministic: identical inputs give identical
// outputs within one build.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "ioncav/error.hpp"
#include "ioncav/tolerances.hpp"

namespace ioncav::num {

struct Polynomial3 {
    // c3 x^3 + c2 x^2 + c1 x + c0; c3 may be zero (degrades to lower degree)
    double c3 = 0.0, c2 = 0.0, c1 = 0.0, c0 = 0.0;

    double eval(double x) const { return ((c3 * x + c2) * x + c1) * x + c0; }
    double deriv(double x) const { return (3.0 * c3 * x + 2.0 * c2) * x + c1; }

    // largest term magnitude at x, the natural scale for residual tests
    double max_term(double x) const {
        return std::max({std::abs(c3 * x * x * x), std::abs(c2 * x * x),
                         std::abs(c1 * x), std::abs(c0)});
    }
};

namespace detail {

inline double newton_polish(const Polynomial3& p, double x) {
    // iterated: multiple roots converge only linearly, and they must land
    // inside the merge radius
    for (int it = 0; it < 60; ++it) {
        const double f = p.eval(x);
        const double d = p.deriv(x);
        if (d == 0.0) break;
        const double step = f / d;
        x -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

inline void push_if_root(const Polynomial3& p, double x, std::vector<double>& out) {
    x = newton_polish(p, x);
    const double scale = std::max(p.max_term(x), 1e-300);
    if (std::abs(p.eval(x)) <= tol::poly_residual_rel * scale) out.push_back(x);
}

}  // namespace detail

/// All real roots, ascending, deduplicated at root_merge_rel relative spacing.
inline std::vector<double> real_roots_cubic(const Polynomial3& p) {
    if (p.c3 == 0.0 && p.c2 == 0.0 && p.c1 == 0.0 && p.c0 == 0.0)
        throw Error(errc::degenerate_input, "all-zero polynomial");

    std::vector<double> roots;
    if (p.c3 == 0.0) {
        if (p.c2 == 0.0) {
            if (p.c1 != 0.0) roots.push_back(-p.c0 / p.c1);
            // c1 == 0, c0 != 0: constant, no roots
        } else {
            const double disc = p.c1 * p.c1 - 4.0 * p.c2 * p.c0;
            if (disc >= 0.0) {
                // stable quadratic formula
                const double q = -0.5 * (p.c1 + std::copysign(std::sqrt(disc), p.c1));
                detail::push_if_root(p, q / p.c2, roots);
                if (q != 0.0) detail::push_if_root(p, p.c0 / q, roots);
                else detail::push_if_root(p, 0.0, roots);
            }
        }
    } else {
        // companion matrix of the monic cubic; QR iteration is robust near
        // fold points where the closed form cancels
        const double a2 = p.c2 / p.c3, a1 = p.c1 / p.c3, a0 = p.c0 / p.c3;
        Eigen::Matrix3d C;
        C << 0.0, 0.0, -a0,
             1.0, 0.0, -a1,
             0.0, 1.0, -a2;
        Eigen::EigenSolver<Eigen::Matrix3d> es(C);
        if (es.info() != Eigen::Success)
            throw Error(errc::numerical, "companion-matrix eigensolver failed");
        for (int i = 0; i < 3; ++i)
            detail::push_if_root(p, es.eigenvalues()[i].real(), roots);

        // multiple roots are also critical points; Newton scatters inside the
        // noise floor there, so snap nearby iterates onto p' roots
        const double disc = p.c2 * p.c2 - 3.0 * p.c3 * p.c1;
        if (disc >= 0.0) {
            const double q =
                -(p.c2 + std::copysign(std::sqrt(disc), p.c2));  // from p' = 3 c3 x^2 + 2 c2 x + c1
            for (double s : {q / (3.0 * p.c3), q == 0.0 ? -p.c2 / (3.0 * p.c3) : p.c1 / q}) {
                const double scale = std::max(p.max_term(s), 1e-300);
                if (std::abs(p.eval(s)) > tol::poly_residual_rel * scale) continue;
                for (double& r : roots)
                    if (std::abs(r - s) <= 1e-4 * std::max(1.0, std::abs(s))) r = s;
            }
        }
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> merged;
    for (double r : roots) {
        if (!merged.empty() &&
            std::abs(r - merged.back()) <= tol::root_merge_rel * std::max(1.0, std::abs(r)))
            continue;
        merged.push_back(r);
    }
    return merged;
}

/// Eigenvalues of a real 4x4, sorted by (Re, Im) for reproducibility.
inline std::array<std::complex<double>, 4> eig4(const Eigen::Matrix4d& M) {
    if (!M.allFinite())
        throw Error(errc::invalid_argument, "eig4: non-finite entries");
    Eigen::EigenSolver<Eigen::Matrix4d> es(M);
    if (es.info() != Eigen::Success)
        throw Error(errc::numerical, "eig4: iteration did not converge");
    std::array<std::complex<double>, 4> ev;
    for (int i = 0; i < 4; ++i) ev[i] = es.eigenvalues()[i];
    std::sort(ev.begin(), ev.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return ev;
}

/// LU solve with one refinement step and a residual guarantee.
inline Eigen::VectorXd solve_linear(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    if (A.rows() != A.cols() || A.rows() != b.size())
        throw Error(errc::invalid_argument, "solve_linear: shape mismatch");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible())
        throw Error(errc::singular_system, "solve_linear: rank-deficient matrix");
    Eigen::VectorXd x = lu.solve(b);
    x += lu.solve(b - A * x);
    const double bound = tol::linear_residual_rel * (A.norm() * x.norm() + b.norm());
    if ((A * x - b).norm() > bound)
        throw Error(errc::numerical, "solve_linear: residual above bound");
    return x;
}

/// Fixed-step RK4 for dV/dt = M V + V M^T + D from V(0) = 0.
inline Eigen::Matrix4d integrate_covariance_ode(const Eigen::Matrix4d& M,
                                                const Eigen::Matrix4d& D,
                                                double t_end, double dt) {
    if (!(dt > 0.0) || !(t_end >= 0.0))
        throw Error(errc::invalid_argument, "integrate_covariance_ode: bad time step");
    if (dt > 0.1 / M.norm())
        throw Error(errc::step_size, "integrate_covariance_ode: dt > 0.1/||M||");
    const auto rhs = [&](const Eigen::Matrix4d& V) -> Eigen::Matrix4d {
        return M * V + V * M.transpose() + D;
    };
    const long n = std::max<long>(1, static_cast<long>(std::ceil(t_end / dt)));
    const double h = t_end / static_cast<double>(n);
    Eigen::Matrix4d V = Eigen::Matrix4d::Zero();
    for (long i = 0; i < n; ++i) {
        const Eigen::Matrix4d k1 = rhs(V);
        const Eigen::Matrix4d k2 = rhs(V + 0.5 * h * k1);
        const Eigen::Matrix4d k3 = rhs(V + 0.5 * h * k2);
        const Eigen::Matrix4d k4 = rhs(V + h * k3);
        V += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return V;
}

/// Strict interior local maxima; a flat plateau above its neighbours is
/// reported once, at its midpoint.
inline std::vector<std::pair<double, double>> find_local_maxima(std::span<const double> xs,
                                                                std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw Error(errc::invalid_argument, "find_local_maxima: length mismatch");
    if (xs.size() < 3)
        throw Error(errc::degenerate_input, "find_local_maxima: need at least 3 samples");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1]))
            throw Error(errc::invalid_argument, "find_local_maxima: xs must ascend");

    std::vector<std::pair<double, double>> maxima;
    const std::size_t n = xs.size();
    std::size_t i = 1;
    while (i + 1 < n) {
        if (ys[i] > ys[i - 1]) {
            std::size_t j = i;
            while (j + 1 < n && ys[j + 1] == ys[i]) ++j;  // plateau extent
            if (j + 1 < n && ys[j + 1] < ys[i]) {
                const std::size_t mid = (i + j) / 2;
                maxima.emplace_back(xs[mid], ys[mid]);
            }
            i = j + 1;
        } else {
            ++i;
        }
    }
    return maxima;
}

}  // namespace ioncav::num
