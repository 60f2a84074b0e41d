#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "ioncav/spectrum.hpp"
#include "oracles.hpp"

using namespace ioncav;
using Catch::Approx;

namespace {

// an operating point picked directly in (Delta_tilde, g_2)
SteadyStateBranch operating_point(double Delta_tilde, double g2) {
    SteadyStateBranch br;
    br.Delta_tilde = Delta_tilde;
    br.g_2 = g2;
    br.stable = true;
    return br;
}

EffectiveParams spectrum_params(double n_b) {
    EffectiveParams eff;
    eff.g_o = -3.0;
    eff.eta = {6.7, 0.0};
    eff.omega_m = 10.0;
    eff.gamma = 1.0;
    eff.Gamma = 0.01;
    eff.n_b = n_b;
    return eff;
}

}  // namespace

TEST_CASE("optical_spring") {
    REQUIRE(optical_spring(3.0, 0.0, 10.0, 1.0) == 0.0);

    SECTION("static value") {
        const double Dt = 7.0, g2 = 2.0, gamma = 1.0;
        REQUIRE(optical_spring(0.0, g2, Dt, gamma) ==
                Approx(-2.0 * g2 * g2 * Dt / (Dt * Dt + gamma * gamma)).epsilon(1e-14));
    }

    SECTION("even in omega, odd in the detuning") {
        std::mt19937 rng(31);
        std::uniform_real_distribution<double> d(0.1, 20.0);
        for (int i = 0; i < 50; ++i) {
            const double w = d(rng), g2 = d(rng) / 4.0, Dt = d(rng);
            REQUIRE(optical_spring(-w, g2, Dt, 1.0) ==
                    Approx(optical_spring(w, g2, Dt, 1.0)).epsilon(1e-12));
            REQUIRE(optical_spring(w, g2, -Dt, 1.0) ==
                    Approx(-optical_spring(w, g2, Dt, 1.0)).epsilon(1e-12));
        }
    }
}

TEST_CASE("optomech_damping") {
    REQUIRE(optomech_damping(3.0, 0.0, 10.0, 1.0, 10.0) == 0.0);

    SECTION("even in omega, odd in the detuning") {
        std::mt19937 rng(37);
        std::uniform_real_distribution<double> d(0.1, 20.0);
        for (int i = 0; i < 50; ++i) {
            const double w = d(rng), g2 = d(rng) / 4.0, Dt = d(rng);
            REQUIRE(optomech_damping(-w, g2, Dt, 1.0, 10.0) ==
                    Approx(optomech_damping(w, g2, Dt, 1.0, 10.0)).epsilon(1e-12));
            REQUIRE(optomech_damping(w, g2, -Dt, 1.0, 10.0) ==
                    Approx(-optomech_damping(w, g2, Dt, 1.0, 10.0)).epsilon(1e-12));
        }
    }

    SECTION("the omega = 0 singularity is removable") {
        const double g2 = 1.5, Dt = 4.0, gamma = 1.0, om = 10.0;
        const double d2 = Dt * Dt + gamma * gamma;
        const double limit = 8.0 * g2 * g2 * om * gamma * Dt / (d2 * d2);
        REQUIRE(optomech_damping(0.0, g2, Dt, gamma, om) == Approx(limit).epsilon(1e-14));
        REQUIRE(optomech_damping(1e-7, g2, Dt, gamma, om) == Approx(limit).epsilon(1e-5));
    }

    SECTION("independent evaluation of the closed form") {
        // written out from scratch: (g2^2/w) * (2 w_m gamma / ((w-Dt)^2+gamma^2)
        //                                      - 2 w_m gamma / ((w+Dt)^2+gamma^2))
        const double w = 10.0, Dt = 10.0, om = 10.0, g2 = 2.0, gamma = 1.0;
        const double ref =
            (g2 * g2 / w) * (2.0 * om * gamma / ((w - Dt) * (w - Dt) + gamma * gamma) -
                             2.0 * om * gamma / ((w + Dt) * (w + Dt) + gamma * gamma));
        REQUIRE(optomech_damping(w, g2, Dt, gamma, om) == Approx(ref).epsilon(1e-15));
        REQUIRE(ref == Approx(0.4 * (20.0 - 20.0 / 401.0)).epsilon(1e-15));
    }
}

TEST_CASE("susceptibility") {
    const double om = 10.0, Gamma = 0.01;

    SECTION("static limit of the bare oscillator") {
        const std::complex<double> chi = susceptibility(0.0, om, Gamma, 0.0, 0.0);
        REQUIRE(chi.real() == Approx(1.0 / (om * om)).epsilon(1e-14));
        REQUIRE(chi.imag() == 0.0);
    }

    SECTION("bare response peaks at the mechanical resonance") {
        double best_w = 0.0, best = 0.0;
        for (double w = 8.0; w <= 12.0; w += 0.001) {
            const double mag = std::norm(susceptibility(w, om, Gamma, 0.0, 0.0));
            if (mag > best) { best = mag; best_w = w; }
        }
        REQUIRE(best_w == Approx(om).margin(0.01));
    }

    SECTION("imaginary part of chi^-1 is -omega (2 Gamma + Gamma_b)") {
        const double w = 7.3, Ob = 0.4, Gb = 0.2;
        const std::complex<double> chi = susceptibility(w, om, Gamma, Ob, Gb);
        const std::complex<double> chi_inv = 1.0 / chi;
        REQUIRE(chi_inv.imag() == Approx(-w * (2.0 * Gamma + Gb)).epsilon(1e-12));
    }

    SECTION("vanishing chi^-1 is an error") {
        // omega = omega_m, no damping at all
        REQUIRE_THROWS_MATCHES(susceptibility(om, om, 0.0, 0.0, 0.0), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code() == errc::divergent_susceptibility;
                               }));
    }
}

TEST_CASE("displacement_spectrum") {
    const EffectiveParams eff = spectrum_params(100.0);

    SECTION("no coupling: thermal Lorentzian with one peak near omega_m") {
        const SteadyStateBranch br = operating_point(10.0, 0.0);
        // independent evaluation through the bare susceptibility
        const double w = 9.7;
        const std::complex<double> chi0 =
            1.0 / std::complex<double>(eff.omega_m * eff.omega_m - w * w,
                                       -w * 2.0 * eff.Gamma);
        const double expected = eff.omega_m * eff.omega_m / (2.0 * pi) * std::norm(chi0) *
                                2.0 * eff.Gamma * eff.n_b;
        REQUIRE(displacement_spectrum(w, eff, br) == Approx(expected).epsilon(1e-13));

        const auto grid = oracles::linspace(5.0, 15.0, 2001);
        const SpectrumCurve curve = compute_spectrum(eff, br, grid);
        REQUIRE(curve.peaks.size() == 1);
        REQUIRE(curve.peaks[0].omega == Approx(10.0).margin(0.02));
        REQUIRE_FALSE(curve.nms);
    }

    SECTION("strong coupling splits the mode at omega_m +- g2") {
        const SteadyStateBranch br = operating_point(10.0, 2.0);
        const auto grid = oracles::linspace(5.0, 15.0, 2001);
        const SpectrumCurve curve = compute_spectrum(eff, br, grid);
        REQUIRE(curve.peaks.size() == 2);
        REQUIRE(curve.nms);
        const double sep = curve.peaks[1].omega - curve.peaks[0].omega;
        REQUIRE(sep == Approx(2.0 * br.g_2).epsilon(0.2));
    }

    SECTION("undefined at zero effective detuning") {
        REQUIRE_THROWS_MATCHES(displacement_spectrum(9.0, eff, operating_point(0.0, 1.0)), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code() == errc::undefined_prefactor;
                               }));
    }

    SECTION("nonnegative and even in g2 on random stable points") {
        std::mt19937 rng(41);
        std::uniform_real_distribution<double> dt(1.0, 40.0);
        std::uniform_real_distribution<double> g2d(0.0, 3.0);
        std::uniform_real_distribution<double> wd(0.1, 25.0);
        for (int i = 0; i < 200; ++i) {
            const double Dt = dt(rng) * (i % 2 ? 1.0 : -1.0), g2 = g2d(rng);
            if (!eigen_stable(drift_matrix(Dt, eff.omega_m, eff.gamma, eff.Gamma, g2))) continue;
            const double w = wd(rng);
            const double s = displacement_spectrum(w, eff, operating_point(Dt, g2));
            REQUIRE(s >= 0.0);
            REQUIRE(displacement_spectrum(w, eff, operating_point(Dt, -g2)) == s);
        }
    }
}

TEST_CASE("find_peaks classification") {
    const EffectiveParams eff = spectrum_params(100.0);

    SECTION("weak coupling stays a single mode") {
        const auto grid = oracles::linspace(5.0, 15.0, 2001);
        const SpectrumCurve curve = compute_spectrum(eff, operating_point(10.0, 0.1), grid);
        REQUIRE(curve.peaks.size() == 1);
        REQUIRE_FALSE(curve.nms);
    }

    SECTION("peak count is stable under 2x grid refinement") {
        for (double g2 : {0.1, 1.0, 2.0, 3.0}) {
            const auto coarse = oracles::linspace(5.0, 15.0, 2001);
            const auto fine = oracles::linspace(5.0, 15.0, 4001);
            const auto c1 = compute_spectrum(eff, operating_point(10.0, g2), coarse);
            const auto c2 = compute_spectrum(eff, operating_point(10.0, g2), fine);
            REQUIRE(c1.peaks.size() == c2.peaks.size());
            REQUIRE(c1.nms == c2.nms);
        }
    }
}

TEST_CASE("nms_map") {
    SECTION("no coupling gives detuning-independent rows") {
        EffectiveParams eff = spectrum_params(50.0);
        eff.g_o = 0.0;
        const auto deltas = oracles::linspace(-5.0, 7.0, 5);  // avoids Delta_tilde = 0
        const auto omegas = oracles::linspace(5.0, 15.0, 501);
        const NmsMap map = nms_map(eff, deltas, omegas);
        for (std::size_t r = 1; r < map.values.size(); ++r)
            for (std::size_t c = 0; c < map.omega.size(); ++c)
                REQUIRE(map.values[r][c] == map.values[0][c]);
        REQUIRE(std::count(map.row_nms.begin(), map.row_nms.end(), true) == 0);
    }

    SECTION("map values match pointwise spectrum calls") {
        const EffectiveParams eff = spectrum_params(100.0);
        const auto deltas = oracles::linspace(4.0, 10.0, 4);
        const auto omegas = oracles::linspace(5.0, 15.0, 101);
        const NmsMap map = nms_map(eff, deltas, omegas);
        for (std::size_t r = 0; r < deltas.size(); ++r) {
            const EffectiveParams at = with_delta(eff, deltas[r]);
            const auto chosen =
                select_branch(solve_branches(at), BranchPolicy::smallest_stable);
            REQUIRE(map.row_stable[r] == chosen.has_value());
            if (!chosen) continue;
            for (std::size_t c = 0; c < omegas.size(); ++c)
                REQUIRE(map.values[r][c] == displacement_spectrum(omegas[c], at, *chosen));
        }
    }

    SECTION("splitting appears on the positive-detuning side only") {
        const EffectiveParams eff = spectrum_params(100.0);
        const auto deltas = oracles::linspace(-30.0, 30.0, 61);
        const auto omegas = oracles::linspace(5.0, 15.0, 1001);
        const NmsMap map = nms_map(eff, deltas, omegas);
        int n_nms = 0, n_unstable = 0;
        for (std::size_t r = 0; r < deltas.size(); ++r) {
            if (!map.row_stable[r]) { ++n_unstable; continue; }
            if (map.row_nms[r]) {
                ++n_nms;
                REQUIRE(map.row_delta_tilde[r] > 0.0);
            }
        }
        REQUIRE(n_nms > 0);
        REQUIRE(n_unstable > 0);  // the parametric-instability gap
        for (std::size_t r = 0; r < deltas.size(); ++r)
            if (map.row_stable[r] && map.row_delta_tilde[r] < 0.0)
                REQUIRE_FALSE(map.row_nms[r]);
    }
}

TEST_CASE("spectrum scaling under a change of units") {
    const EffectiveParams eff = spectrum_params(100.0);
    const EffectiveParams at = with_delta(eff, 7.35);
    const auto chosen = select_branch(solve_branches(at), BranchPolicy::smallest_stable);
    REQUIRE(chosen.has_value());

    for (double s : {0.5, 3.0}) {
        const EffectiveParams scaled = rescale(at, s);
        const auto chosen_s = select_branch(solve_branches(scaled), BranchPolicy::smallest_stable);
        REQUIRE(chosen_s.has_value());
        // s * S_b(s omega) is unit-invariant; peak positions scale with s
        for (double w : {6.0, 8.5, 10.0, 11.5, 14.0}) {
            const double base = displacement_spectrum(w, at, *chosen);
            const double moved = s * displacement_spectrum(s * w, scaled, *chosen_s);
            REQUIRE(moved == Approx(base).epsilon(1e-9));
        }
        const auto grid = oracles::linspace(5.0, 15.0, 2001);
        std::vector<double> grid_s;
        for (double w : grid) grid_s.push_back(s * w);
        const auto c0 = compute_spectrum(at, *chosen, grid);
        const auto cs = compute_spectrum(scaled, *chosen_s, grid_s);
        REQUIRE(c0.peaks.size() == cs.peaks.size());
        for (std::size_t i = 0; i < c0.peaks.size(); ++i)
            REQUIRE(cs.peaks[i].omega == Approx(s * c0.peaks[i].omega).epsilon(1e-9));
    }
}
