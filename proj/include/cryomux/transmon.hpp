#pragma once

#include <optional>
#include <string>

#include "cryomux/constants.hpp"

namespace cryomux {

/// One qubit-resonator pair. Frequencies cyclic [Hz]; kappa and chi stored as
/// the /2pi values they are quoted as; times in seconds.
struct TransmonParams {
    std::string name;
    double f_q = 0.0;
    double f_r = 0.0;
    double kappa_over_2pi = 0.0;
    double chi_over_2pi = 0.0;  // signed, typically negative
    double t1 = 0.0;
    double t2e = 0.0;
    std::optional<double> f_max;       // sweet-spot frequency, tunable devices
    std::optional<double> g_over_2pi;  // qubit-resonator coupling

    double kappa_rad() const { return angular_from_cycles(kappa_over_2pi); }
    double chi_rad() const { return angular_from_cycles(chi_over_2pi); }
};

/// Drive-line coupling geometry.
struct CouplingGeometry {
    double c_d = 0.0;      // drive coupling capacitance [F]
    double c_sigma = 0.0;  // total transmon capacitance [F]
    double z_d = 0.0;      // line impedance [ohm]
};

/// Flux-line calibration: mutual inductance between bias line and SQUID.
struct FluxLineCal {
    double mutual_m = 0.0;  // [H]
};

/// Square-root-cosine tuning curve of a split transmon at reduced flux
/// phi_e = Phi_e/Phi0:  f_q = f_max sqrt(|cos(pi phi_e)|). Even and periodic
/// with period 1. Junction asymmetry d lifts the zeros:
/// f_q = f_max (cos^2 + d^2 sin^2)^(1/4). Throws std::domain_error where the
/// symmetric frequency vanishes (phi_e = 1/2 mod 1).
double qubit_freq_at_flux(double f_max, double phi_e, double asymmetry = 0.0);

/// Analytic flux dispersion d f_q / d Phi_e [Hz/Phi0] of the symmetric curve:
///   -(pi/2) f_max sign(cos) sin(pi phi_e) / sqrt(|cos(pi phi_e)|).
/// Odd in phi_e, zero at the sweet spot, singular at phi_e = 1/2 mod 1
/// (std::domain_error).
double dispersion(double f_max, double phi_e);

/// Transfer in the phase convention used by the dephasing integrals,
/// D = |d omega_q / d phi| with phi = pi Phi_e/Phi0, i.e. twice the cyclic
/// dispersion magnitude.
double dispersion_d_phase(double f_max, double phi_e);

/// Capacitive drive-line decay rate kappa_d = (c_d^2 / c_sigma) z_d omega_q^2
/// [rad/s], omega_q angular.
double drive_coupling(const CouplingGeometry& geom, double omega_q);

/// Purcell decay through the readout resonator, gamma_P = g^2 kappa / delta^2.
/// Convention-free as long as g, kappa, delta share one (all cyclic or all
/// angular); result carries kappa's units. Throws std::domain_error at
/// delta = 0.
double purcell_rate(double g, double kappa, double delta);

/// Coupling that reproduces a target Purcell rate: g = |delta| sqrt(gamma_p / kappa).
double g_for_purcell(double gamma_p, double kappa, double delta);

/// Mutual inductance from one bias calibration point: current i_bias places
/// the qubit at reduced flux phi_e, so M = phi_e Phi0 / i_bias. Throws
/// std::domain_error at i_bias = 0.
FluxLineCal mutual_from_bias(double i_bias, double phi_e);

double flux_for_current(const FluxLineCal& cal, double current_a);
double current_for_flux(const FluxLineCal& cal, double phi_e);

/// White flux-noise floor [Phi0^2/Hz] seen through a bias line of mutual M as
/// current noise: S_I = b_flux Phi0^2 / M^2 [A^2/Hz].
double flux_to_current_noise(double b_flux, const FluxLineCal& cal);

}  // namespace cryomux
