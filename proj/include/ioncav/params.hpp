// params.hpp — physical inputs of the ion-cavity model and the derived
// effective optomechanical quantities.
//
// Two entry points: RawParams carries the microscopic ion/cavity numbers
// (coupling Omega, detunings, Lamb-Dicke parameter, ion position phase) and
// maps onto EffectiveParams via derive_effective(); EffectiveParams can also
// be populated directly when only the effective detuning and single-photon
// coupling are known.  All rates share one unit (rad/s, or gamma-normalized);
// occupations are dimensionless.

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ioncav/error.hpp"

namespace ioncav {

inline constexpr double hbar = 1.054571817e-34;  // J s

struct RawParams {
    double Omega = 0.0;      // ion-cavity coupling strength
    double Delta_a = 0.0;    // pump-atom detuning  omega_p - omega_a
    double Delta_c = 0.0;    // pump-cavity detuning omega_p - omega_c
    double eta_LD = 0.0;     // Lamb-Dicke parameter
    double phi = 0.0;        // ion position phase relative to the standing wave
    std::complex<double> eta{0.0, 0.0};  // pump amplitude
    double omega_m = 0.0;    // CM vibration frequency
    double gamma = 0.0;      // cavity damping
    double Gamma = 0.0;      // mechanical damping
    double n_a = 0.0;        // optical bath occupation
    double n_b = 0.0;        // mechanical bath occupation

    // optional metadata; only used to fill eta_LD when it is not given
    std::optional<double> mass;        // ion mass [kg]
    std::optional<double> wavenumber;  // optical wavenumber [1/m]
};

struct EffectiveParams {
    double Delta = 0.0;      // effective cavity detuning
    double g_o = 0.0;        // single-photon optomechanical coupling (signed)
    std::complex<double> eta{0.0, 0.0};  // pump amplitude
    double omega_m = 0.0;
    double gamma = 0.0;      // cavity damping
    double Gamma = 0.0;      // mechanical damping
    double n_a = 0.0;
    double n_b = 0.0;

    friend bool operator==(const EffectiveParams&, const EffectiveParams&) = default;
};

// eta_LD = k sqrt(hbar / (2 m omega_m))
inline double lamb_dicke(double wavenumber, double mass, double omega_m) {
    if (mass <= 0.0 || omega_m <= 0.0)
        throw Error(errc::invalid_argument, "lamb_dicke needs mass > 0 and omega_m > 0");
    return wavenumber * std::sqrt(hbar / (2.0 * mass * omega_m));
}

// Delta = Omega^2/(4 Delta_a) - Delta_c,  g_o = Omega^2 eta_LD sin(2 phi)/(4 Delta_a)
inline EffectiveParams derive_effective(const RawParams& raw) {
    if (raw.Delta_a == 0.0)
        throw Error(errc::singular_detuning,
                    "Delta_a = 0: adiabatic elimination of the internal state is invalid");
    double eta_LD = raw.eta_LD;
    if (eta_LD == 0.0 && raw.mass && raw.wavenumber)
        eta_LD = lamb_dicke(*raw.wavenumber, *raw.mass, raw.omega_m);
    const double shift = raw.Omega * raw.Omega / (4.0 * raw.Delta_a);
    EffectiveParams eff;
    eff.Delta = shift - raw.Delta_c;
    eff.g_o = shift * eta_LD * std::sin(2.0 * raw.phi);
    eff.eta = raw.eta;
    eff.omega_m = raw.omega_m;
    eff.gamma = raw.gamma;
    eff.Gamma = raw.Gamma;
    eff.n_a = raw.n_a;
    eff.n_b = raw.n_b;
    return eff;
}

struct Violation {
    std::string field;
    std::string constraint;
};

/// Reports every violated invariant; empty means the set is usable.
inline std::vector<Violation> validate(const EffectiveParams& eff) {
    std::vector<Violation> v;
    if (!(eff.omega_m > 0.0)) v.push_back({"omega_m", "omega_m > 0"});
    if (!(eff.gamma > 0.0)) v.push_back({"gamma", "gamma > 0"});
    if (!(eff.Gamma > 0.0)) v.push_back({"Gamma", "Gamma > 0"});
    if (!(eff.Gamma < eff.gamma)) v.push_back({"Gamma", "Gamma < gamma"});
    if (!(eff.n_a >= 0.0)) v.push_back({"n_a", "n_a >= 0"});
    if (!(eff.n_b >= 0.0)) v.push_back({"n_b", "n_b >= 0"});
    return v;
}

inline std::vector<Violation> validate(const RawParams& raw) {
    std::vector<Violation> v;
    if (!(raw.Delta_a != 0.0)) v.push_back({"Delta_a", "Delta_a != 0"});
    if (!(raw.omega_m > 0.0)) v.push_back({"omega_m", "omega_m > 0"});
    if (!(raw.gamma > 0.0)) v.push_back({"gamma", "gamma > 0"});
    if (!(raw.Gamma > 0.0)) v.push_back({"Gamma", "Gamma > 0"});
    if (!(raw.Gamma < raw.gamma)) v.push_back({"Gamma", "Gamma < gamma"});
    if (!(raw.n_a >= 0.0)) v.push_back({"n_a", "n_a >= 0"});
    if (!(raw.n_b >= 0.0)) v.push_back({"n_b", "n_b >= 0"});
    return v;
}

/// Multiplies every frequency-dimensioned field by s; occupations are unchanged.
inline EffectiveParams rescale(const EffectiveParams& eff, double s) {
    if (!(s > 0.0))
        throw Error(errc::invalid_argument, "rescale factor must be positive");
    EffectiveParams out = eff;
    out.Delta *= s;
    out.g_o *= s;
    out.eta *= s;
    out.omega_m *= s;
    out.gamma *= s;
    out.Gamma *= s;
    return out;
}

inline EffectiveParams with_delta(EffectiveParams eff, double Delta) {
    eff.Delta = Delta;
    return eff;
}

}  // namespace ioncav
