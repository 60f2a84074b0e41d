// spectrum.hpp — ion displacement fluctuation spectrum S_b(omega), the
// optically induced spring shift and damping, and normal-mode-splitting
// detection.  The spectrum is reported in units of x_o^2/gamma with x_o = 1.

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "ioncav/error.hpp"
#include "ioncav/numerics.hpp"
#include "ioncav/params.hpp"
#include "ioncav/steady_state.hpp"
#include "ioncav/tolerances.hpp"

namespace ioncav {

inline constexpr double pi = 3.14159265358979323846;

// Omega_b(w) = g2^2 [ (w-Dt)/((w-Dt)^2+gamma^2) - (w+Dt)/((w+Dt)^2+gamma^2) ]
inline double optical_spring(double omega, double g2, double Delta_tilde, double gamma) {
    const double m = omega - Delta_tilde, p = omega + Delta_tilde;
    return g2 * g2 * (m / (m * m + gamma * gamma) - p / (p * p + gamma * gamma));
}

// Gamma_b(w) = (g2^2/w) [ 2 w_m gamma/((w-Dt)^2+gamma^2) - 2 w_m gamma/((w+Dt)^2+gamma^2) ];
// the w = 0 singularity is removable, with limit 8 g2^2 w_m gamma Dt/(Dt^2+gamma^2)^2.
inline double optomech_damping(double omega, double g2, double Delta_tilde, double gamma,
                               double omega_m) {
    if (omega == 0.0) {
        const double d2 = Delta_tilde * Delta_tilde + gamma * gamma;
        return 8.0 * g2 * g2 * omega_m * gamma * Delta_tilde / (d2 * d2);
    }
    const double m = omega - Delta_tilde, p = omega + Delta_tilde;
    return (g2 * g2 / omega) * (2.0 * omega_m * gamma / (m * m + gamma * gamma) -
                                2.0 * omega_m * gamma / (p * p + gamma * gamma));
}

// chi^-1 = w_m^2 + 2 w_m Omega_b - w^2 - i w (2 Gamma + Gamma_b)
inline std::complex<double> susceptibility(double omega, double omega_m, double Gamma,
                                           double Omega_b, double Gamma_b) {
    const std::complex<double> chi_inv(
        omega_m * omega_m + 2.0 * omega_m * Omega_b - omega * omega,
        -omega * (2.0 * Gamma + Gamma_b));
    if (std::abs(chi_inv) == 0.0)
        throw Error(errc::divergent_susceptibility, "chi^-1 = 0: instability boundary");
    return 1.0 / chi_inv;
}

// S_b(w) = (w_m^2 / 2 pi) |chi|^2 ( 2 Gamma n_b
//          + (Dt^2 + w^2 + gamma^2)/(2 Dt w_m) * Gamma_b(w) ),  x_o = 1
inline double displacement_spectrum(double omega, const EffectiveParams& eff,
                                    const SteadyStateBranch& branch) {
    const double Dt = branch.Delta_tilde;
    if (Dt == 0.0)
        throw Error(errc::undefined_prefactor,
                    "displacement spectrum undefined at Delta_tilde = 0");
    const double Ob = optical_spring(omega, branch.g_2, Dt, eff.gamma);
    const double Gb = optomech_damping(omega, branch.g_2, Dt, eff.gamma, eff.omega_m);
    const std::complex<double> chi = susceptibility(omega, eff.omega_m, eff.Gamma, Ob, Gb);
    const double noise = 2.0 * eff.Gamma * eff.n_b +
                         (Dt * Dt + omega * omega + eff.gamma * eff.gamma) /
                             (2.0 * Dt * eff.omega_m) * Gb;
    return eff.omega_m * eff.omega_m / (2.0 * pi) * std::norm(chi) * noise;
}

struct Peak {
    double omega = 0.0;
    double height = 0.0;
};

struct SpectrumCurve {
    std::vector<double> omega;   // ascending
    std::vector<double> values;  // S_b samples
    std::vector<Peak> peaks;
    bool nms = false;
};

struct PeakAnalysis {
    std::vector<Peak> peaks;
    bool nms = false;
};

/// Strict local maxima plus the split-mode verdict: nms is set when two
/// adjacent peaks are separated by a valley at least peak_valley_depth below
/// the smaller of the two.
inline PeakAnalysis find_peaks(const SpectrumCurve& curve) {
    PeakAnalysis out;
    for (auto [w, h] : num::find_local_maxima(curve.omega, curve.values))
        out.peaks.push_back({w, h});
    for (std::size_t k = 0; k + 1 < out.peaks.size(); ++k) {
        const auto lo = std::lower_bound(curve.omega.begin(), curve.omega.end(),
                                         out.peaks[k].omega) - curve.omega.begin();
        const auto hi = std::lower_bound(curve.omega.begin(), curve.omega.end(),
                                         out.peaks[k + 1].omega) - curve.omega.begin();
        double valley = curve.values[lo];
        for (auto i = lo; i <= hi; ++i) valley = std::min(valley, curve.values[i]);
        const double smaller = std::min(out.peaks[k].height, out.peaks[k + 1].height);
        if (smaller - valley >= tol::peak_valley_depth * smaller) out.nms = true;
    }
    return out;
}

inline SpectrumCurve compute_spectrum(const EffectiveParams& eff, const SteadyStateBranch& branch,
                                      std::span<const double> omega_grid) {
    SpectrumCurve curve;
    curve.omega.assign(omega_grid.begin(), omega_grid.end());
    curve.values.reserve(curve.omega.size());
    for (double w : curve.omega) curve.values.push_back(displacement_spectrum(w, eff, branch));
    const PeakAnalysis pa = find_peaks(curve);
    curve.peaks = pa.peaks;
    curve.nms = pa.nms;
    return curve;
}

struct NmsMap {
    std::vector<double> delta;                  // row coordinates
    std::vector<double> omega;                  // column coordinates
    std::vector<std::vector<double>> values;    // rows of S_b; NaN where no stable branch
    std::vector<bool> row_stable;
    std::vector<bool> row_nms;
    std::vector<double> row_delta_tilde;        // NaN where no stable branch
};

/// One spectrum row per detuning; rows without a stable branch (or where the
/// spectrum is undefined) are NaN.
inline NmsMap nms_map(const EffectiveParams& eff, std::span<const double> delta_grid,
                      std::span<const double> omega_grid,
                      BranchPolicy policy = BranchPolicy::smallest_stable) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    NmsMap map;
    map.delta.assign(delta_grid.begin(), delta_grid.end());
    map.omega.assign(omega_grid.begin(), omega_grid.end());
    for (double d : map.delta) {
        const EffectiveParams at = with_delta(eff, d);
        const auto mark_unavailable = [&] {
            map.values.emplace_back(map.omega.size(), nan);
            map.row_stable.push_back(false);
            map.row_nms.push_back(false);
            map.row_delta_tilde.push_back(nan);
        };
        try {
            const auto chosen = select_branch(solve_branches(at), policy);
            if (!chosen) {
                mark_unavailable();
                continue;
            }
            SpectrumCurve curve = compute_spectrum(at, *chosen, omega_grid);
            map.values.push_back(std::move(curve.values));
            map.row_stable.push_back(true);
            map.row_nms.push_back(curve.nms);
            map.row_delta_tilde.push_back(chosen->Delta_tilde);
        } catch (const Error&) {
            mark_unavailable();
        }
    }
    return map;
}

}  // namespace ioncav
