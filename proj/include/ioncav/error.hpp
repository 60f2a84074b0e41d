// error.hpp — typed runtime errors shared by all ioncav modules

#pragma once

#include <stdexcept>
#include <string>

namespace ioncav {

enum class errc {
    singular_detuning,        // atom-pump detuning is zero, effective parameters undefined
    invalid_argument,         // precondition violation (bad scale factor, bad grid, ...)
    degenerate_input,         // all-zero polynomial, too-short data, ...
    inconsistent_root,        // photon number does not reproduce itself through the amplitudes
    criterion_undefined,      // Routh-Hurwitz bound at zero effective detuning
    divergent_susceptibility, // |chi^-1| = 0
    undefined_prefactor,      // displacement spectrum at zero effective detuning
    no_steady_state,          // Lyapunov solve requested for a non-Hurwitz drift matrix
    unphysical_covariance,    // symplectic spectrum of the partial transpose is not real
    singular_system,          // rank-deficient linear system
    step_size,                // ODE step too large for the requested drift matrix
    numerical,                // solver failure (non-convergence, residual blow-up)
    io,                       // file/format problems
};

inline const char* to_string(errc c) {
    switch (c) {
        case errc::singular_detuning: return "singular_detuning";
        case errc::invalid_argument: return "invalid_argument";
        case errc::degenerate_input: return "degenerate_input";
        case errc::inconsistent_root: return "inconsistent_root";
        case errc::criterion_undefined: return "criterion_undefined";
        case errc::divergent_susceptibility: return "divergent_susceptibility";
        case errc::undefined_prefactor: return "undefined_prefactor";
        case errc::no_steady_state: return "no_steady_state";
        case errc::unphysical_covariance: return "unphysical_covariance";
        case errc::singular_system: return "singular_system";
        case errc::step_size: return "step_size";
        case errc::numerical: return "numerical";
        case errc::io: return "io";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

}  // namespace ioncav
