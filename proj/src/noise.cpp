#include "cryomux/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "cryomux/constants.hpp"
#include "cryomux/errors.hpp"

namespace cryomux {

namespace {

void check_params(const NoiseParams& p) {
    if (p.a_flux < 0.0 || p.b_flux < 0.0) {
        throw std::invalid_argument("noise amplitudes must be nonnegative");
    }
}

void check_context(const DephasingContext& ctx) {
    if (!(ctx.tau > 0.0)) throw std::invalid_argument("tau must be positive");
    if (ctx.dispersion_d < 0.0) throw std::invalid_argument("dispersion_d must be nonnegative");
}

}  // namespace

PhaseNoiseParams to_angular(const NoiseParams& p) {
    check_params(p);
    return {pi * pi * p.a_flux, 0.5 * pi * p.b_flux};
}

NoiseParams to_physical(const PhaseNoiseParams& p) {
    if (p.a < 0.0 || p.b < 0.0) {
        throw std::invalid_argument("noise amplitudes must be nonnegative");
    }
    return {p.a / (pi * pi), 2.0 * p.b / pi};
}

double psd_flux(const NoiseParams& p, double omega) {
    if (omega == 0.0) throw std::domain_error("flux PSD diverges at omega = 0");
    const PhaseNoiseParams ang = to_angular(p);
    return ang.a / std::abs(omega) + ang.b;
}

double echo_filter_sq(double omega, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
    if (omega == 0.0) return 0.0;
    const double s = std::sin(0.25 * omega * tau);
    const double s2 = s * s;
    return 16.0 * s2 * s2 / (omega * omega);
}

double chi_closed(const NoiseParams& p, const DephasingContext& ctx) {
    check_context(ctx);
    const PhaseNoiseParams ang = to_angular(p);
    const double d2 = ctx.dispersion_d * ctx.dispersion_d;
    const double ln2 = std::log(2.0);
    return ang.a * d2 * ln2 * ctx.tau * ctx.tau + ang.b * d2 * pi * ctx.tau;
}

namespace {

// Tail pieces for Int_c^X sin^4(x)/x^p dx via sin^4 x = 3/8 - cos(2x)/2 + cos(4x)/8.
// The cosine terms are integrated by parts twice; the dropped third-order
// integral is bounded by p / (k^2 c^(p+1)) and reported so the caller can add
// it to the error budget.
struct TailPart {
    double value = 0.0;
    double bound = 0.0;
};

TailPart cos_over_power(double k, int p, double c, double x_hi) {
    auto boundary = [&](double x) {
        const double xp = std::pow(x, p);
        return std::sin(k * x) / (k * xp) + p * (-std::cos(k * x)) / (k * k * xp * x);
    };
    TailPart t;
    t.value = boundary(x_hi) - boundary(c);
    t.bound = p / (k * k * std::pow(c, p + 1));
    return t;
}

TailPart sin4_tail(int p, double c, double x_hi) {
    double mean;
    if (p == 2) {
        mean = (3.0 / 8.0) * (1.0 / c - 1.0 / x_hi);
    } else {
        mean = (3.0 / 16.0) * (1.0 / (c * c) - 1.0 / (x_hi * x_hi));
    }
    const TailPart c2 = cos_over_power(2.0, p, c, x_hi);
    const TailPart c4 = cos_over_power(4.0, p, c, x_hi);
    TailPart t;
    t.value = mean - 0.5 * c2.value + 0.125 * c4.value;
    t.bound = 0.5 * c2.bound + 0.125 * c4.bound;
    return t;
}

}  // namespace

double chi_numeric(const NoiseParams& p, const DephasingContext& ctx, const ChiQuadConfig& cfg) {
    check_context(ctx);
    const PhaseNoiseParams ang = to_angular(p);
    const double d2 = ctx.dispersion_d * ctx.dispersion_d;
    if (d2 == 0.0 || (ang.a == 0.0 && ang.b == 0.0)) return 0.0;

    // chi = D^2 Int_0^inf S(omega) |F|^2 domega; substituting x = omega tau/4
    // turns it into a tau^2 * sin^4(x)/x^3 + 4 b tau * sin^4(x)/x^2 on x >= 0.
    const double c1 = ang.a * ctx.tau * ctx.tau;  // weight of sin^4/x^3
    const double c2 = 4.0 * ang.b * ctx.tau;      // weight of sin^4/x^2
    const double x_max = 0.25 * cfg.theta_max;
    const double cutoff = std::min(x_max, cfg.osc_cutoff);

    auto integrand = [&](double x) {
        if (x <= 0.0) return 0.0;
        const double s = std::sin(x);
        const double s4 = s * s * s * s;
        return s4 * (c1 / (x * x * x) + c2 / (x * x));
    };

    const int panels = std::max(8, static_cast<int>(std::ceil(cutoff / pi)));
    const QuadResult finite = integrate_adaptive(integrand, 0.0, cutoff, 0.25 * cfg.rel_tol, 0.0,
                                                 cfg.max_intervals, panels);

    double value = finite.value;
    double err = finite.error;
    if (x_max > cutoff) {
        const TailPart t3 = sin4_tail(3, cutoff, x_max);
        const TailPart t2 = sin4_tail(2, cutoff, x_max);
        value += c1 * t3.value + c2 * t2.value;
        err += c1 * t3.bound + c2 * t2.bound;
    }

    const double tol = cfg.rel_tol * std::abs(value);
    if (err > tol) {
        throw QuadratureError("decay-exponent quadrature did not converge",
                              value != 0.0 ? err / std::abs(value) : err);
    }
    return d2 * value;
}

double dephasing_rate_echo(const NoiseParams& p, double dispersion_d) {
    if (dispersion_d < 0.0) throw std::invalid_argument("dispersion_d must be nonnegative");
    const PhaseNoiseParams ang = to_angular(p);
    const double ln2 = std::log(2.0);
    return std::sqrt(ang.a * ln2) * dispersion_d + ang.b * pi * dispersion_d * dispersion_d;
}

double photon_shot_dephasing(double n_bar, double kappa, double chi_disp) {
    if (!(kappa > 0.0)) throw std::domain_error("kappa must be positive");
    const double chi2 = chi_disp * chi_disp;
    return 4.0 * chi2 * kappa / (kappa * kappa + 4.0 * chi2) * n_bar;
}

double added_photons(double gamma_phi_add, double kappa, double chi_disp) {
    if (!(kappa > 0.0)) throw std::domain_error("kappa must be positive");
    if (chi_disp == 0.0) {
        throw std::domain_error("added photon number is undefined at zero dispersive shift");
    }
    const double chi2 = chi_disp * chi_disp;
    return gamma_phi_add * (kappa * kappa + 4.0 * chi2) / (4.0 * chi2 * kappa);
}

double t2e_from_components(double t1, double tphi) {
    if (!(t1 > 0.0) || !(tphi > 0.0)) throw std::domain_error("times must be positive");
    return 1.0 / (1.0 / tphi + 0.5 / t1);
}

double tphi_from(double t1, double t2e) {
    if (!(t1 > 0.0) || !(t2e > 0.0)) throw std::domain_error("times must be positive");
    const double rate = 1.0 / t2e - 0.5 / t1;
    if (rate < 0.0) throw std::domain_error("t2e exceeds the 2 T1 limit");
    return 1.0 / rate;
}

}  // namespace cryomux
