#include "cryomux/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cryomux/errors.hpp"
#include "cryomux/rng.hpp"

namespace cryomux {

namespace {

constexpr std::uint64_t stream_drift = 1;
constexpr std::uint64_t stream_ref_t1 = 10;
constexpr std::uint64_t stream_ref_echo = 11;
constexpr std::uint64_t stream_mux_t1 = 12;
constexpr std::uint64_t stream_mux_echo = 13;
constexpr std::uint64_t stream_sweep_t1 = 20;
constexpr std::uint64_t stream_sweep_echo = 21;

double fitted_gamma_phi(double t1_fit, double t2e_fit) {
    return 1.0 / t2e_fit - 0.5 / t1_fit;
}

RepRecord fit_repetition(const CoherenceTrace& t1_trace, const CoherenceTrace& echo_trace,
                         double timestamp_s) {
    const ExpFitResult t1_fit = fit_exponential(t1_trace);
    const ExpFitResult t2e_fit = fit_exponential(echo_trace);
    RepRecord rec;
    rec.timestamp_s = timestamp_s;
    rec.t1_fit = 1.0 / t1_fit.rate;
    rec.t1_sigma = t1_fit.rate_sigma / (t1_fit.rate * t1_fit.rate);
    rec.t2e_fit = 1.0 / t2e_fit.rate;
    rec.t2e_sigma = t2e_fit.rate_sigma / (t2e_fit.rate * t2e_fit.rate);
    rec.gamma_phi = fitted_gamma_phi(rec.t1_fit, rec.t2e_fit);
    rec.tphi = rec.gamma_phi > 0.0 ? 1.0 / rec.gamma_phi
                                   : std::numeric_limits<double>::infinity();
    return rec;
}

}  // namespace

std::vector<double> default_delay_grid(double t_max, int n) {
    if (!(t_max > 0.0)) throw std::invalid_argument("grid span must be positive");
    if (n < 4) throw std::invalid_argument("grid needs at least 4 points");
    std::vector<double> grid;
    grid.reserve(n + 1);
    grid.push_back(0.0);
    const double t_lo = t_max / 100.0;
    const double ratio = std::log(t_max / t_lo);
    for (int i = 0; i < n; ++i) {
        grid.push_back(t_lo * std::exp(ratio * static_cast<double>(i) /
                                       static_cast<double>(n - 1)));
    }
    return grid;
}

CoherenceTrace synth_decay_trace(TraceKind kind, double rate, const std::vector<double>& grid,
                                 double noise_sigma, std::uint64_t seed) {
    if (rate < 0.0) throw std::invalid_argument("decay rate must be nonnegative");
    if (noise_sigma < 0.0) throw std::invalid_argument("noise level must be nonnegative");
    CoherenceTrace trace;
    trace.kind = kind;
    trace.times = grid;
    trace.seed = seed;
    trace.signal.reserve(grid.size());
    Rng rng(seed);
    for (const double t : grid) {
        double v = std::exp(-rate * t);
        if (noise_sigma > 0.0) v += rng.gaussian(0.0, noise_sigma);
        trace.signal.push_back(v);
    }
    return trace;
}

CoherenceTrace synth_t1_trace(double t1_true, const std::vector<double>& grid,
                              double noise_sigma, std::uint64_t seed) {
    if (!(t1_true > 0.0)) throw std::invalid_argument("t1 must be positive");
    return synth_decay_trace(TraceKind::Relaxation, 1.0 / t1_true, grid, noise_sigma, seed);
}

CoherenceTrace synth_echo_trace(double t1_true, const NoiseParams& noise, double dispersion_d,
                                const std::vector<double>& grid, double noise_sigma,
                                std::uint64_t seed, double extra_rate) {
    if (!(t1_true > 0.0)) throw std::invalid_argument("t1 must be positive");
    if (noise_sigma < 0.0) throw std::invalid_argument("noise level must be nonnegative");
    CoherenceTrace trace;
    trace.kind = TraceKind::HahnEcho;
    trace.times = grid;
    trace.seed = seed;
    trace.signal.reserve(grid.size());
    Rng rng(seed);
    for (const double t : grid) {
        double v = 1.0;
        if (t > 0.0) {
            const double chi = chi_closed(noise, {dispersion_d, t});
            v = std::exp(-t * (0.5 / t1_true + extra_rate) - chi);
        }
        if (noise_sigma > 0.0) v += rng.gaussian(0.0, noise_sigma);
        trace.signal.push_back(v);
    }
    return trace;
}

ExpFitResult fit_exponential(const CoherenceTrace& trace) {
    return fit_exponential(trace.times, trace.signal);
}

std::vector<double> CampaignResult::t1_values() const {
    std::vector<double> v;
    v.reserve(reps.size());
    for (const auto& r : reps) v.push_back(r.t1_fit);
    return v;
}

std::vector<double> CampaignResult::t2e_values() const {
    std::vector<double> v;
    v.reserve(reps.size());
    for (const auto& r : reps) v.push_back(r.t2e_fit);
    return v;
}

std::vector<double> CampaignResult::gamma_phi_values() const {
    std::vector<double> v;
    v.reserve(reps.size());
    for (const auto& r : reps) v.push_back(r.gamma_phi);
    return v;
}

CampaignPair run_coherence_campaign(const CampaignConfig& cfg, const MuxModel& mux) {
    const TransmonParams& q = cfg.qubit;
    if (!(q.t1 > 0.0) || !(q.t2e > 0.0)) {
        throw std::invalid_argument("campaign qubit needs positive t1 and t2e");
    }
    if (!(cfg.period_s > 0.0) || !(cfg.duration_s >= cfg.period_s)) {
        throw std::invalid_argument("campaign needs duration of at least one period");
    }
    if (cfg.n_add < 0.0) throw std::invalid_argument("added photon number must be nonnegative");
    if (cfg.n_add > 0.0 && (q.kappa_over_2pi <= 0.0 || q.chi_over_2pi == 0.0)) {
        throw std::invalid_argument("photon injection needs the qubit's kappa and chi");
    }

    const int n_reps = static_cast<int>(cfg.duration_s / cfg.period_s);
    const double gamma_int = std::max(0.0, 1.0 / q.t2e - 0.5 / q.t1);
    const double gamma_shot =
        cfg.n_add > 0.0 ? photon_shot_dephasing(cfg.n_add, q.kappa_rad(), q.chi_rad()) : 0.0;
    const double heat_factor = t1_factor(mux, mxc_heating(mux, cfg.mux_power_w));

    // Shared slow drift of the true lifetime, sampled once per repetition.
    std::vector<double> log_drift(n_reps, 0.0);
    if (cfg.drift.enabled) {
        Rng drift_rng(Rng::derive(cfg.seed, stream_drift));
        const double alpha = std::exp(-cfg.period_s / cfg.drift.tau_s);
        double x = cfg.drift.sigma_log * drift_rng.gaussian();
        log_drift[0] = x;
        for (int k = 1; k < n_reps; ++k) {
            x = alpha * x + cfg.drift.sigma_log * std::sqrt(1.0 - alpha * alpha) *
                                drift_rng.gaussian();
            log_drift[k] = x;
        }
    }

    const std::vector<double> t1_grid = default_delay_grid(3.0 * q.t1, cfg.grid_points);
    const std::vector<double> echo_grid = default_delay_grid(3.0 * q.t2e, cfg.grid_points);

    CampaignPair out;
    out.reference.label = "reference";
    out.mux.label = "mux";
    out.reference.reps.reserve(n_reps);
    out.mux.reps.reserve(n_reps);

    for (int k = 0; k < n_reps; ++k) {
        const double stamp = static_cast<double>(k) * cfg.period_s;
        const double t1_true = q.t1 * std::exp(log_drift[k]);

        const double ref_rate = 0.5 / t1_true + gamma_int;
        const CoherenceTrace ref_t1 =
            synth_t1_trace(t1_true, t1_grid, cfg.noise_sigma, Rng::derive(cfg.seed, stream_ref_t1, k));
        const CoherenceTrace ref_echo =
            synth_decay_trace(TraceKind::HahnEcho, ref_rate, echo_grid, cfg.noise_sigma,
                              Rng::derive(cfg.seed, stream_ref_echo, k));
        out.reference.reps.push_back(fit_repetition(ref_t1, ref_echo, stamp));

        const double t1_mux = t1_true * heat_factor;
        const double mux_rate = 0.5 / t1_mux + gamma_int + gamma_shot;
        const CoherenceTrace mux_t1 =
            synth_t1_trace(t1_mux, t1_grid, cfg.noise_sigma, Rng::derive(cfg.seed, stream_mux_t1, k));
        const CoherenceTrace mux_echo =
            synth_decay_trace(TraceKind::HahnEcho, mux_rate, echo_grid, cfg.noise_sigma,
                              Rng::derive(cfg.seed, stream_mux_echo, k));
        out.mux.reps.push_back(fit_repetition(mux_t1, mux_echo, stamp));
    }
    return out;
}

std::vector<double> flux_grid(double lo, double hi, int n) {
    if (n < 2 || !(hi > lo)) throw std::invalid_argument("flux grid needs n >= 2 and hi > lo");
    std::vector<double> grid;
    grid.reserve(n);
    for (int i = 0; i < n; ++i) {
        grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return grid;
}

FluxSweepResult run_flux_sweep(const SweepConfig& cfg, const MuxModel& mux) {
    if (cfg.phi_grid.empty()) throw std::invalid_argument("flux grid is empty");
    if (!(cfg.t1 > 0.0)) throw std::invalid_argument("sweep t1 must be positive");
    for (const double phi : cfg.phi_grid) {
        if (std::abs(phi) >= 0.5) {
            throw std::domain_error("flux grid must stay inside (-0.5, 0.5) flux quanta");
        }
    }

    FluxSweepResult out;
    out.rows.reserve(cfg.phi_grid.size());
    double min_abs_d = std::numeric_limits<double>::infinity();

    for (std::size_t i = 0; i < cfg.phi_grid.size(); ++i) {
        const double phi = cfg.phi_grid[i];
        SweepRow row;
        row.phi_e = phi;
        row.f_q = qubit_freq_at_flux(cfg.f_max, phi);
        row.dispersion_hz_per_phi0 = dispersion(cfg.f_max, phi);
        const double d_phase = 2.0 * std::abs(row.dispersion_hz_per_phi0);
        row.gamma_phi_true_hz = dephasing_rate_echo(cfg.flux_noise, d_phase) + cfg.gamma_phi_extra;

        double t1_true = cfg.t1;
        if (cfg.joule_heating && cfg.mutual_h > 0.0) {
            const double i_bias = current_for_flux({cfg.mutual_h}, phi);
            const double p = joule_power(mux, i_bias, cfg.vdd);
            t1_true *= t1_factor(mux, mxc_heating(mux, p));
        }

        // The echo decays at the effective single-exponential rate; the fit
        // pipeline then mirrors the measurement chain.
        const double echo_rate = 0.5 / t1_true + row.gamma_phi_true_hz;
        const CoherenceTrace t1_trace =
            synth_t1_trace(t1_true, default_delay_grid(3.0 * t1_true, cfg.grid_points),
                           cfg.noise_sigma, Rng::derive(cfg.seed, stream_sweep_t1, i));
        const CoherenceTrace echo_trace = synth_decay_trace(
            TraceKind::HahnEcho, echo_rate, default_delay_grid(3.0 / echo_rate, cfg.grid_points),
            cfg.noise_sigma, Rng::derive(cfg.seed, stream_sweep_echo, i));

        const ExpFitResult t1_fit = fit_exponential(t1_trace);
        const ExpFitResult echo_fit = fit_exponential(echo_trace);
        row.t1_fit = 1.0 / t1_fit.rate;
        row.t2e_fit = 1.0 / echo_fit.rate;
        row.gamma_phi_e_hz = fitted_gamma_phi(row.t1_fit, row.t2e_fit);
        out.rows.push_back(row);

        if (std::abs(row.dispersion_hz_per_phi0) < min_abs_d) {
            min_abs_d = std::abs(row.dispersion_hz_per_phi0);
            out.gamma_phi_ss = row.gamma_phi_e_hz;
        }
    }
    return out;
}

NoiseFitResult extract_noise_params(const std::vector<double>& dispersion_hz_per_phi0,
                                    const std::vector<double>& gamma_phi_hz, double gamma_ss) {
    const std::size_t n = dispersion_hz_per_phi0.size();
    if (n != gamma_phi_hz.size()) throw std::invalid_argument("column lengths differ");

    std::vector<double> d_abs;
    d_abs.reserve(n);
    double d_max = 0.0;
    for (const double d : dispersion_hz_per_phi0) {
        d_abs.push_back(2.0 * std::abs(d));
        d_max = std::max(d_max, d_abs.back());
    }
    if (d_max <= 0.0) {
        throw FitError("noise parameters are unidentifiable: all dispersions are zero");
    }
    std::vector<double> distinct = d_abs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 4) {
        throw FitError("noise extraction needs at least 4 distinct dispersion values");
    }

    // Columns scaled to O(1) to keep the normal equations well conditioned.
    const double s1 = d_max;
    const double s2 = d_max * d_max;
    const int rows = static_cast<int>(n);
    std::vector<double> a(2 * n, 0.0), b(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        a[2 * i] = d_abs[i] / s1;
        a[2 * i + 1] = d_abs[i] * d_abs[i] / s2;
        b[i] = gamma_phi_hz[i] - gamma_ss;
    }

    const std::vector<double> x = nnls(a, rows, 2, b);
    const double p1 = x[0] / s1;
    const double p2 = x[1] / s2;

    NoiseFitResult result;
    result.linear_coeff = p1;
    result.quadratic_coeff = p2;
    result.gamma_ss = gamma_ss;
    result.n_points = rows;

    const double ln2 = std::log(2.0);
    result.flux = to_physical({p1 * p1 / ln2, p2 / pi});

    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = b[i] - (p1 * d_abs[i] + p2 * d_abs[i] * d_abs[i]);
        rss += r * r;
    }
    result.rss = rss;

    // Uncertainties from the unconstrained least squares at the same point,
    // pushed through a = p1^2/(ln2 pi^2) and b = 2 p2 / pi^2.
    try {
        const LsqResult lsq = least_squares(a, rows, 2, b);
        const double sigma_p1 = lsq.sigma[0] / s1;
        const double sigma_p2 = lsq.sigma[1] / s2;
        result.a_flux_sigma = 2.0 * std::abs(p1) * sigma_p1 / (ln2 * pi * pi);
        result.b_flux_sigma = 2.0 * sigma_p2 / (pi * pi);
    } catch (const FitError&) {
        // Leave sigmas at zero when the unconstrained system is singular.
    }
    return result;
}

NoiseFitResult extract_noise_params(const FluxSweepResult& sweep) {
    std::vector<double> d, g;
    d.reserve(sweep.rows.size());
    g.reserve(sweep.rows.size());
    for (const auto& row : sweep.rows) {
        d.push_back(row.dispersion_hz_per_phi0);
        g.push_back(row.gamma_phi_e_hz);
    }
    return extract_noise_params(d, g, sweep.gamma_phi_ss);
}

double added_rate_from_t2e(double t2e_ref, double t2e_mux) {
    if (!(t2e_ref > 0.0) || !(t2e_mux > 0.0)) {
        throw std::invalid_argument("echo times must be positive");
    }
    return 1.0 / t2e_mux - 1.0 / t2e_ref;
}

AddedDephasingReport added_dephasing_report(const CampaignResult& ref, const CampaignResult& mux,
                                            const TransmonParams& qubit, double alpha) {
    if (ref.reps.size() < 2 || mux.reps.size() < 2) {
        throw std::invalid_argument("added-dephasing report needs at least 2 repetitions per path");
    }
    const std::vector<double> g_ref = ref.gamma_phi_values();
    const std::vector<double> g_mux = mux.gamma_phi_values();

    AddedDephasingReport report;
    report.gamma_ref_mean = mean(g_ref);
    report.gamma_mux_mean = mean(g_mux);
    report.gamma_added = report.gamma_mux_mean - report.gamma_ref_mean;
    report.gamma_added_se = combined_se(g_ref, g_mux);
    report.welch = welch_t_test(g_mux, g_ref, alpha);
    report.n_added = added_photons(report.gamma_added, qubit.kappa_rad(), qubit.chi_rad());
    report.n_added_se = added_photons(report.gamma_added_se, qubit.kappa_rad(), qubit.chi_rad());
    return report;
}

}  // namespace cryomux
