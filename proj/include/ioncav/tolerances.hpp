// tolerances.hpp — every numerical threshold used by the library, in one table.

#pragma once

namespace ioncav::tol {

// polynomial root acceptance: |p(r)| <= poly_residual_rel * max_i |c_i r^i|
inline constexpr double poly_residual_rel = 1e-10;

// steady-state photon-number roots: same test, looser bound
inline constexpr double cubic_residual_rel = 1e-8;

// roots closer than root_merge_rel * max(1, x) are one root
inline constexpr double root_merge_rel = 1e-6;

// | |a_s|^2 - x | <= amplitude_rel * x for a consistent steady state
inline constexpr double amplitude_rel = 1e-8;

// linear solve: ||Ax-b|| <= linear_residual_rel * (||A|| ||x|| + ||b||)
inline constexpr double linear_residual_rel = 1e-12;

// Lyapunov: ||MV+VM^T+D||_F <= lyapunov_residual_rel * (||M||_F ||V||_F + ||D||_F)
inline constexpr double lyapunov_residual_rel = 1e-10;

// V + i Omega/2 may dip this far below PSD before it counts as unphysical
inline constexpr double physicality_eig = -1e-10;

// closed-form symplectic eigenvalue vs i*Omega*Vtilde spectrum
inline constexpr double symplectic_match_rel = 1e-10;

// RK4 moment-ODE steady state vs direct Lyapunov solve (elementwise)
inline constexpr double ode_agreement_abs = 1e-6;

// dimensionless observables under unit rescaling
inline constexpr double rescale_invariance_rel = 1e-9;

// two maxima count as split modes when the valley is at least this far
// below the smaller peak, relative to that peak
inline constexpr double peak_valley_depth = 0.05;

}  // namespace ioncav::tol
