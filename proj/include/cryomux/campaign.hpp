#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cryomux/fitting.hpp"
#include "cryomux/mux.hpp"
#include "cryomux/noise.hpp"
#include "cryomux/stats.hpp"
#include "cryomux/transmon.hpp"

namespace cryomux {

enum class TraceKind { Relaxation, HahnEcho };

struct CoherenceTrace {
    TraceKind kind = TraceKind::Relaxation;
    std::vector<double> times;   // strictly increasing delays [s]
    std::vector<double> signal;  // normalized population / echo amplitude
    std::uint64_t seed = 0;
};

/// Acquisition grid used by the synthetic experiments: an anchor at zero plus
/// `n` log-spaced delays from t_max/100 to t_max (n+1 points total).
std::vector<double> default_delay_grid(double t_max, int n = 50);

/// Relaxation trace exp(-t/t1) with additive Gaussian readout noise.
CoherenceTrace synth_t1_trace(double t1_true, const std::vector<double>& grid,
                              double noise_sigma, std::uint64_t seed);

/// Echo trace with the full envelope exp(-t/(2 t1) - extra_rate t - chi(t)),
/// chi carrying the Gaussian (1/f, t^2) and exponential (white, t) flux
/// contributions at transfer dispersion_d. extra_rate adds any
/// dispersion-independent dephasing (photon shot noise, intrinsic).
CoherenceTrace synth_echo_trace(double t1_true, const NoiseParams& noise, double dispersion_d,
                                const std::vector<double>& grid, double noise_sigma,
                                std::uint64_t seed, double extra_rate = 0.0);

/// Single-exponential trace exp(-rate t) + noise; the effective-rate
/// counterpart of synth_echo_trace used by the campaign pipeline.
CoherenceTrace synth_decay_trace(TraceKind kind, double rate, const std::vector<double>& grid,
                                 double noise_sigma, std::uint64_t seed);

ExpFitResult fit_exponential(const CoherenceTrace& trace);

/// Slow drift of the true qubit lifetime between repetitions, an
/// Ornstein-Uhlenbeck process on log T1 sampled at the repetition cadence.
struct DriftConfig {
    bool enabled = false;
    double tau_s = 3600.0;   // correlation time
    double sigma_log = 0.1;  // stationary std of log T1
};

struct CampaignConfig {
    TransmonParams qubit;
    double duration_s = 1200.0;
    double period_s = 60.0;  // one T1 + one echo repetition per period
    double noise_sigma = 0.02;
    int grid_points = 50;
    DriftConfig drift;
    std::uint64_t seed = 1;

    // Multiplexed-path impairments.
    double n_add = 0.0;        // added readout photons while routed through the switch
    double mux_power_w = 0.0;  // dissipation attributed to this channel [W]
};

struct RepRecord {
    double timestamp_s = 0.0;
    double t1_fit = 0.0;
    double t1_sigma = 0.0;
    double t2e_fit = 0.0;
    double t2e_sigma = 0.0;
    double gamma_phi = 0.0;  // 1/t2e_fit - 1/(2 t1_fit); may dip negative under noise
    double tphi = 0.0;       // 1/gamma_phi, +inf when gamma_phi <= 0
};

struct CampaignResult {
    std::string label;  // "reference" | "mux"
    std::vector<RepRecord> reps;

    std::vector<double> t1_values() const;
    std::vector<double> t2e_values() const;
    std::vector<double> gamma_phi_values() const;
};

struct CampaignPair {
    CampaignResult reference;
    CampaignResult mux;
};

/// Paired synthetic campaign: each repetition draws a drifted T1, synthesizes
/// and fits one relaxation and one echo trace for the reference path, then for
/// the multiplexed path with photon shot dephasing from n_add and the thermal
/// T1 penalty of mux_power_w applied. Both paths share the drift trajectory so
/// their difference isolates the multiplexer. Deterministic per (config, seed).
CampaignPair run_coherence_campaign(const CampaignConfig& cfg, const MuxModel& mux);

struct SweepConfig {
    double f_max = 4.4e9;          // sweet-spot frequency [Hz]
    std::vector<double> phi_grid;  // reduced flux points, inside (-0.5, 0.5)
    NoiseParams flux_noise;        // truth spectrum
    double t1 = 100e-6;
    double gamma_phi_extra = 0.0;  // dispersion-independent dephasing [1/s]
    double noise_sigma = 0.0;
    int grid_points = 50;
    std::uint64_t seed = 1;

    // Self-heating from the DC flux bias routed through the switch.
    bool joule_heating = true;
    double vdd = 0.55;
    double mutual_h = 0.0;  // flux-line mutual [H]; 0 disables the bias-current model
};

/// Evenly spaced reduced-flux grid over [lo, hi].
std::vector<double> flux_grid(double lo, double hi, int n);

struct SweepRow {
    double phi_e = 0.0;
    double f_q = 0.0;
    double dispersion_hz_per_phi0 = 0.0;
    double t1_fit = 0.0;
    double t2e_fit = 0.0;
    double gamma_phi_e_hz = 0.0;     // fitted echo dephasing rate [1/s]
    double gamma_phi_true_hz = 0.0;  // generating rate before fit noise
};

struct FluxSweepResult {
    std::vector<SweepRow> rows;
    double gamma_phi_ss = 0.0;  // fitted dephasing at the minimum-|D| point [1/s]
};

/// Flux-noise spectroscopy: at each flux point the echo decays at the
/// effective rate 1/(2 T1) + gamma_extra + sqrt(a ln2) D + b pi D^2; the point
/// gets a synthesized relaxation and echo trace, exponential fits, and a
/// dephasing rate 1/T2e - 1/(2 T1). With joule_heating on, the flux bias
/// current through the switch heats the plate and scales the true T1 by
/// t1_factor. Grid points touching +-0.5 Phi0 throw std::domain_error.
FluxSweepResult run_flux_sweep(const SweepConfig& cfg, const MuxModel& mux);

struct NoiseFitResult {
    NoiseParams flux;  // recovered physical spectrum
    double a_flux_sigma = 0.0;
    double b_flux_sigma = 0.0;
    double linear_coeff = 0.0;     // p1 in gamma = p1 D + p2 D^2, phase units
    double quadratic_coeff = 0.0;  // p2
    double gamma_ss = 0.0;         // rate subtracted before fitting [1/s]
    double rss = 0.0;
    int n_points = 0;
};

/// Recovers the flux-noise spectrum from (dispersion, rate) pairs by a
/// nonnegative fit of gamma - gamma_ss = p1 D + p2 D^2 with D the phase-units
/// transfer (twice the cyclic dispersion magnitude); then a = p1^2/ln2,
/// b = p2/pi, rescaled to physical units. gamma_ss is the flux-insensitive
/// rate measured at the sweet spot; subtracting it makes the result invariant
/// under any constant offset. Uncertainties come from the unconstrained
/// two-column least squares at the same point. Throws FitError when every
/// dispersion is (numerically) zero.
NoiseFitResult extract_noise_params(const std::vector<double>& dispersion_hz_per_phi0,
                                    const std::vector<double>& gamma_phi_hz, double gamma_ss);

/// Convenience overload: pulls (D, gamma) rows and the sweet-spot rate from a
/// completed sweep.
NoiseFitResult extract_noise_params(const FluxSweepResult& sweep);

/// Added dephasing implied by echo times measured with and without the
/// multiplexer in line: 1/t2e_mux - 1/t2e_ref.
double added_rate_from_t2e(double t2e_ref, double t2e_mux);

struct AddedDephasingReport {
    double gamma_ref_mean = 0.0;
    double gamma_mux_mean = 0.0;
    double gamma_added = 0.0;     // difference of means [1/s]
    double gamma_added_se = 0.0;  // sqrt(s_ref^2/N_ref + s_mux^2/N_mux)
    double n_added = 0.0;         // photon occupation explaining gamma_added
    double n_added_se = 0.0;      // linear propagation of gamma_added_se
    WelchResult welch;            // test on the per-repetition rates
};

/// Attributes the dephasing difference between the two paths to readout
/// photon shot noise using the qubit's linewidth and dispersive shift.
/// Throws std::invalid_argument when either campaign has fewer than 2 reps.
AddedDephasingReport added_dephasing_report(const CampaignResult& ref, const CampaignResult& mux,
                                            const TransmonParams& qubit, double alpha = 0.05);

}  // namespace cryomux
