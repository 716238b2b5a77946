#pragma once

#include "cryomux/quadrature.hpp"

namespace cryomux {

/// Flux-noise PSD amplitudes in physical units:
///   S_Phi(f) = a_flux / f + b_flux,   f in Hz,
/// a_flux in Phi0^2 (value at 1 Hz), b_flux in Phi0^2/Hz.
struct NoiseParams {
    double a_flux = 0.0;
    double b_flux = 0.0;
};

/// The same spectrum in the phase/angular convention used by the decay
/// integrals, S_phi(omega) = a / |omega| + b with omega in rad/s and the phase
/// variable phi = pi * Phi_e / Phi0:
///   a = pi^2 * a_flux,   b = (pi/2) * b_flux.
struct PhaseNoiseParams {
    double a = 0.0;
    double b = 0.0;
};

PhaseNoiseParams to_angular(const NoiseParams& p);
NoiseParams to_physical(const PhaseNoiseParams& p);

/// Flux-to-phase transfer and evolution time for a dephasing evaluation.
/// dispersion_d = |d omega_q / d phi| with phi = pi Phi_e / Phi0, which equals
/// twice the cyclic dispersion d f_q / d Phi_e in Hz per Phi0.
struct DephasingContext {
    double dispersion_d = 0.0;  // [1/s per rad of phi]
    double tau = 0.0;           // [s], must be > 0
};

/// Phase PSD at angular frequency omega in the angular convention, converted
/// from the physical parameters internally. Even in omega.
/// Throws std::domain_error at omega = 0 (1/f divergence).
double psd_flux(const NoiseParams& p, double omega);

/// Squared echo filter function tau^2 sin^2(omega tau/4) sinc^2(omega tau/4),
/// evaluated in the equivalent form 16 sin^4(omega tau/4) / omega^2 to avoid
/// 0/0 at omega = 0 (limit value 0). Even and nonnegative.
double echo_filter_sq(double omega, double tau);

/// Closed-form echo decay exponent for the 1/f + white spectrum:
///   chi(tau) = a D^2 ln(2) tau^2 + b D^2 pi tau
/// with (a, b) the angular-convention amplitudes.
double chi_closed(const NoiseParams& p, const DephasingContext& ctx);

struct ChiQuadConfig {
    double theta_max = 1e6;     // truncation of theta = omega tau
    double rel_tol = 1e-5;
    int max_intervals = 20000;
    double osc_cutoff = 600.0;  // hand off to the averaged tail above x = theta/4
};

/// Brute-force evaluation of the same exponent,
///   chi(tau) = D^2 Int_0^inf S_phi(omega) |F(omega, tau)|^2 d omega
/// (the integrand is even, so this equals half the full-line integral).
/// Substituting x = omega tau / 4 gives integrands sin^4(x)/x^3 and
/// sin^4(x)/x^2; the finite part up to osc_cutoff is integrated adaptively
/// with period-scale panels and the remainder up to theta_max/4 uses the
/// analytic average of sin^4 plus oscillatory corrections with bounded
/// remainders. Throws QuadratureError when the requested tolerance is not
/// met.
double chi_numeric(const NoiseParams& p, const DephasingContext& ctx,
                   const ChiQuadConfig& cfg = {});

/// Effective single-exponential echo dephasing rate, approximating the
/// Gaussian 1/f part by exp(-a tau^2) ~ exp(-sqrt(a) tau):
///   Gamma_phi_e = sqrt(a ln 2) D + b pi D^2   [1/s].
double dephasing_rate_echo(const NoiseParams& p, double dispersion_d);

/// Photon shot-noise dephasing rate from mean resonator occupation n_bar:
///   Gamma_phi = (4 chi^2 kappa / (kappa^2 + 4 chi^2)) n_bar,
/// kappa, chi_disp in rad/s. Linear in n_bar, even in chi_disp.
double photon_shot_dephasing(double n_bar, double kappa, double chi_disp);

/// Exact inversion: occupation explaining a given dephasing rate,
///   n_bar = gamma (kappa^2 + 4 chi^2) / (4 chi^2 kappa).
/// Throws std::domain_error when chi_disp = 0 (flux of information vanishes).
double added_photons(double gamma_phi_add, double kappa, double chi_disp);

/// 1/T2e = 1/Tphi + 1/(2 T1). tphi may be +infinity (pure-relaxation limit).
double t2e_from_components(double t1, double tphi);

/// Inverse relation: 1/Tphi = 1/T2e - 1/(2 T1). Returns +infinity at
/// t2e = 2 t1 and throws std::domain_error beyond it (negative rate).
double tphi_from(double t1, double t2e);

}  // namespace cryomux
