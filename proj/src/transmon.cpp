#include "cryomux/transmon.hpp"

#include <cmath>
#include <stdexcept>

namespace cryomux {

namespace {

double cos_pi_phi(double phi_e) {
    // cos(pi x) evaluated without large-argument phase loss. Half-integer
    // arguments fold to an exact zero so the singularity guards fire; plain
    // cos(pi/2) only reaches ~6e-17.
    const double r = std::remainder(phi_e, 2.0);
    if (r == 0.5 || r == -0.5) return 0.0;
    return std::cos(pi * r);
}

}  // namespace

double qubit_freq_at_flux(double f_max, double phi_e, double asymmetry) {
    if (!(f_max > 0.0)) throw std::invalid_argument("f_max must be positive");
    const double c = cos_pi_phi(phi_e);
    if (asymmetry == 0.0) {
        if (c == 0.0) {
            throw std::domain_error("qubit frequency vanishes at half-integer flux");
        }
        return f_max * std::sqrt(std::abs(c));
    }
    const double s = std::sin(pi * std::remainder(phi_e, 2.0));
    return f_max * std::pow(c * c + asymmetry * asymmetry * s * s, 0.25);
}

double dispersion(double f_max, double phi_e) {
    if (!(f_max > 0.0)) throw std::invalid_argument("f_max must be positive");
    const double r = std::remainder(phi_e, 2.0);
    const double c = cos_pi_phi(phi_e);
    if (c == 0.0) throw std::domain_error("dispersion is singular at half-integer flux");
    const double sign = c > 0.0 ? 1.0 : -1.0;
    return -0.5 * pi * f_max * sign * std::sin(pi * r) / std::sqrt(std::abs(c));
}

double dispersion_d_phase(double f_max, double phi_e) {
    return 2.0 * std::abs(dispersion(f_max, phi_e));
}

double drive_coupling(const CouplingGeometry& geom, double omega_q) {
    if (!(geom.c_sigma > 0.0) || !(geom.z_d > 0.0) || geom.c_d < 0.0) {
        throw std::invalid_argument("invalid coupling geometry");
    }
    if (geom.c_d >= geom.c_sigma) {
        throw std::invalid_argument("coupling capacitance must be below the total capacitance");
    }
    return geom.c_d * geom.c_d / geom.c_sigma * geom.z_d * omega_q * omega_q;
}

double purcell_rate(double g, double kappa, double delta) {
    if (delta == 0.0) throw std::domain_error("Purcell rate diverges at zero detuning");
    return g * g * kappa / (delta * delta);
}

double g_for_purcell(double gamma_p, double kappa, double delta) {
    if (!(kappa > 0.0)) throw std::domain_error("kappa must be positive");
    if (gamma_p < 0.0) throw std::domain_error("rate must be nonnegative");
    return std::abs(delta) * std::sqrt(gamma_p / kappa);
}

FluxLineCal mutual_from_bias(double i_bias, double phi_e) {
    if (i_bias == 0.0) throw std::domain_error("calibration requires a nonzero bias current");
    return {phi_e * flux_quantum_wb / i_bias};
}

double flux_for_current(const FluxLineCal& cal, double current_a) {
    return cal.mutual_m * current_a / flux_quantum_wb;
}

double current_for_flux(const FluxLineCal& cal, double phi_e) {
    if (cal.mutual_m == 0.0) throw std::domain_error("mutual inductance must be nonzero");
    return phi_e * flux_quantum_wb / cal.mutual_m;
}

double flux_to_current_noise(double b_flux, const FluxLineCal& cal) {
    if (!(cal.mutual_m > 0.0)) throw std::invalid_argument("mutual inductance must be positive");
    if (b_flux < 0.0) throw std::invalid_argument("noise level must be nonnegative");
    const double ratio = flux_quantum_wb / cal.mutual_m;
    return b_flux * ratio * ratio;
}

}  // namespace cryomux
