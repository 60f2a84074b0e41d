// steady_state.hpp — steady-state photon-number cubic, steady amplitudes,
// branch stability classification and bistability-region mapping.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "ioncav/error.hpp"
#include "ioncav/langevin.hpp"
#include "ioncav/numerics.hpp"
#include "ioncav/params.hpp"
#include "ioncav/tolerances.hpp"

namespace ioncav {

// Which steady value of the mechanical mode backs the amplitudes.
//   drive      — keeps the constant radiation-pressure drive: b_s follows
//                (x+1) and the amplitudes reproduce the photon-number cubic
//                exactly (the default; the whole pipeline relies on it).
//   drive_free — drops the constant drive term: b_s follows x alone.  Roots
//                of the cubic then fail the |a_s|^2 = x check, and
//                steady_amplitudes reports inconsistent_root.  Kept to make
//                the mismatch between the two conventions observable.
enum class BsVariant { drive, drive_free };

enum class BranchPolicy { smallest_stable, largest_stable };

struct SteadyStateBranch {
    double x = 0.0;                       // intracavity photon number |a_s|^2
    std::complex<double> a_s{0.0, 0.0};   // cavity amplitude
    std::complex<double> b_s{0.0, 0.0};   // mechanical amplitude
    double g_1 = 0.0;                     // static shift g_o (b_s + b_s*)
    double g_2 = 0.0;                     // fluctuation coupling g_o |a_s| (signed)
    double Delta_tilde = 0.0;             // effective detuning Delta + g_1
    bool stable = false;
    int branch_index = 0;                 // 0/1/2 by ascending x
};

inline double radiation_pressure_G(const EffectiveParams& eff) {
    return 2.0 * eff.g_o * eff.g_o * eff.omega_m /
           (eff.Gamma * eff.Gamma + eff.omega_m * eff.omega_m);
}

// G^2 x^3 + 2G(Delta+G) x^2 + (gamma^2 + (Delta+G)^2) x - |eta|^2 = 0
inline num::Polynomial3 cubic_coefficients(const EffectiveParams& eff) {
    const double G = radiation_pressure_G(eff);
    const double dG = eff.Delta + G;
    return {G * G, 2.0 * G * dG, eff.gamma * eff.gamma + dG * dG, -std::norm(eff.eta)};
}

/// Positive photon-number roots, ascending, multiplicity-collapsed.  An
/// undriven cavity has the single steady state x = 0.
inline std::vector<double> solve_photon_number(const EffectiveParams& eff) {
    if (std::norm(eff.eta) == 0.0) return {0.0};
    const num::Polynomial3 p = cubic_coefficients(eff);
    std::vector<double> xs;
    for (double r : num::real_roots_cubic(p)) {
        if (r <= 0.0) continue;
        if (std::abs(p.eval(r)) <= tol::cubic_residual_rel * p.max_term(r)) xs.push_back(r);
    }
    return xs;
}

/// Steady amplitudes (a_s, b_s) for a photon-number root x.  Checks that the
/// amplitudes reproduce x to amplitude_rel.
inline std::pair<std::complex<double>, std::complex<double>> steady_amplitudes(
    const EffectiveParams& eff, double x, BsVariant variant = BsVariant::drive) {
    const std::complex<double> i_unit{0.0, 1.0};
    const double occupancy = variant == BsVariant::drive ? x + 1.0 : x;
    const std::complex<double> b_s =
        i_unit * eff.g_o * occupancy / std::complex<double>(eff.Gamma, eff.omega_m);
    const double g_1 = eff.g_o * 2.0 * b_s.real();
    const std::complex<double> a_s =
        -eff.eta / std::complex<double>(eff.gamma, eff.Delta + g_1);
    if (std::abs(std::norm(a_s) - x) > tol::amplitude_rel * std::max(x, 1e-300))
        throw Error(errc::inconsistent_root,
                    "steady amplitudes do not reproduce the photon number");
    return {a_s, b_s};
}

/// Roots -> amplitudes -> branches, stability still unset.
inline std::vector<SteadyStateBranch> make_branches(const EffectiveParams& eff,
                                                    BsVariant variant = BsVariant::drive) {
    std::vector<SteadyStateBranch> branches;
    int idx = 0;
    for (double x : solve_photon_number(eff)) {
        const auto [a_s, b_s] = steady_amplitudes(eff, x, variant);
        SteadyStateBranch br;
        br.x = x;
        br.a_s = a_s;
        br.b_s = b_s;
        br.g_1 = eff.g_o * 2.0 * b_s.real();
        br.g_2 = eff.g_o * std::abs(a_s);
        br.Delta_tilde = eff.Delta + br.g_1;
        br.branch_index = idx++;
        branches.push_back(br);
    }
    return branches;
}

/// stable <=> every eigenvalue of M(Delta_tilde, g_2) has negative real part.
inline std::vector<SteadyStateBranch> classify_branches(const EffectiveParams& eff,
                                                        std::vector<SteadyStateBranch> branches) {
    for (auto& br : branches) {
        const DriftMatrix M =
            drift_matrix(br.Delta_tilde, eff.omega_m, eff.gamma, eff.Gamma, br.g_2);
        br.stable = eigen_stable(M);
    }
    return branches;
}

inline std::vector<SteadyStateBranch> solve_branches(const EffectiveParams& eff,
                                                     BsVariant variant = BsVariant::drive) {
    return classify_branches(eff, make_branches(eff, variant));
}

inline std::optional<SteadyStateBranch> select_branch(
    const std::vector<SteadyStateBranch>& branches, BranchPolicy policy) {
    if (policy == BranchPolicy::smallest_stable) {
        for (const auto& br : branches)
            if (br.stable) return br;
    } else {
        for (auto it = branches.rbegin(); it != branches.rend(); ++it)
            if (it->stable) return *it;
    }
    return std::nullopt;
}

struct DeltaInterval {
    double lo = 0.0, hi = 0.0;
};

/// Maximal contiguous grid intervals where the cubic has exactly 3 positive roots.
inline std::vector<DeltaInterval> bistability_region(const EffectiveParams& eff,
                                                     std::span<const double> delta_grid) {
    std::vector<DeltaInterval> intervals;
    bool in_run = false;
    double lo = 0.0, hi = 0.0;
    for (double d : delta_grid) {
        const bool three = solve_photon_number(with_delta(eff, d)).size() == 3;
        if (three) {
            if (!in_run) lo = d;
            hi = d;
            in_run = true;
        } else if (in_run) {
            intervals.push_back({lo, hi});
            in_run = false;
        }
    }
    if (in_run) intervals.push_back({lo, hi});
    return intervals;
}

}  // namespace ioncav
