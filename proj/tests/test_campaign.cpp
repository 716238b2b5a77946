#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cryomux/campaign.hpp"
#include "cryomux/errors.hpp"
#include "cryomux/stats.hpp"

using namespace cryomux;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

TransmonParams qubit2() {
  TransmonParams q;
  q.name = "Qubit 2";
  q.f_q = 3.292e9;
  q.f_r = 6.615e9;
  q.kappa_over_2pi = 1.064e6;
  q.chi_over_2pi = -0.106e6;
  q.t1 = 152e-6;
  q.t2e = 93e-6;
  return q;
}

NoiseParams reference_noise() {
  return {2.8e-6 * 2.8e-6, 15e-9 * 15e-9};
}

SweepConfig noiseless_sweep() {
  SweepConfig cfg;
  cfg.f_max = 4.4e9;
  cfg.phi_grid = flux_grid(-0.2, 0.2, 41);
  cfg.flux_noise = reference_noise();
  cfg.t1 = 100e-6;
  cfg.noise_sigma = 0.0;
  cfg.mutual_h = 0.0;
  return cfg;
}

}  // namespace

TEST_CASE("default delay grid shape") {
  const auto g = default_delay_grid(300e-6, 50);
  REQUIRE(g.size() == 51);
  CHECK(g.front() == 0.0);
  CHECK(g[1] == doctest::Approx(3e-6).epsilon(1e-12));
  CHECK(g.back() == doctest::Approx(300e-6).epsilon(1e-12));
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  CHECK_THROWS_AS(default_delay_grid(-1.0, 50), std::invalid_argument);
  CHECK_THROWS_AS(default_delay_grid(1.0, 2), std::invalid_argument);
}

TEST_CASE("relaxation trace synthesis and round trip") {
  const auto grid = default_delay_grid(300e-6, 50);
  const auto trace = synth_t1_trace(100e-6, grid, 0.0, 5);
  CHECK(trace.signal.front() == 1.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(trace.signal[i] == doctest::Approx(std::exp(-grid[i] / 100e-6)).epsilon(1e-14));
  }
  const auto fit = fit_exponential(trace);
  CHECK(1.0 / fit.rate == doctest::Approx(100e-6).epsilon(1e-9));

  const auto again = synth_t1_trace(100e-6, grid, 0.02, 5);
  const auto other = synth_t1_trace(100e-6, grid, 0.02, 6);
  CHECK(again.signal == synth_t1_trace(100e-6, grid, 0.02, 5).signal);
  CHECK(again.signal != other.signal);
}

TEST_CASE("echo trace envelope splits into its advertised parts") {
  const auto grid = default_delay_grid(200e-6, 40);
  const double huge_t1 = 1e6;

  const auto flat = synth_echo_trace(huge_t1, {0.0, 0.0}, 2e9, grid, 0.0, 1);
  for (const double v : flat.signal) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));

  // White-only: single exponential at 1/(2 T1) + b_ang pi D^2.
  const NoiseParams white{0.0, 15e-9 * 15e-9};
  const double d = 2e9;
  const double white_rate = 0.5 / 100e-6 + to_angular(white).b * std::numbers::pi * d * d;
  const auto wtrace = synth_echo_trace(100e-6, white, d, grid, 0.0, 1);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(-std::log(wtrace.signal[i]) / grid[i] == doctest::Approx(white_rate).epsilon(1e-12));
  }

  // 1/f-only with negligible relaxation: -ln(signal) quadratic in t.
  const NoiseParams pink{2.8e-6 * 2.8e-6, 0.0};
  const double quad_coeff = to_angular(pink).a * d * d * std::log(2.0);
  const auto ptrace = synth_echo_trace(huge_t1, pink, d, grid, 0.0, 1);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double lhs = -std::log(ptrace.signal[i]) / (grid[i] * grid[i]);
    CHECK(lhs == doctest::Approx(quad_coeff + 0.5 / huge_t1 / grid[i]).epsilon(1e-9));
  }

  // extra_rate adds a pure exponential on top.
  const auto base = synth_echo_trace(100e-6, white, d, grid, 0.0, 1);
  const auto extra = synth_echo_trace(100e-6, white, d, grid, 0.0, 1, 750.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(extra.signal[i] ==
          doctest::Approx(base.signal[i] * std::exp(-750.0 * grid[i])).epsilon(1e-12));
  }
}

TEST_CASE("campaign determinism and static truth recovery") {
  CampaignConfig cfg;
  cfg.qubit = qubit2();
  cfg.duration_s = 300.0;
  cfg.period_s = 60.0;
  cfg.noise_sigma = 0.0;
  cfg.drift.enabled = false;
  cfg.seed = 9;

  const MuxModel mux = default_mux_model();
  const auto pair = run_coherence_campaign(cfg, mux);
  CHECK(pair.reference.label == "reference");
  CHECK(pair.mux.label == "mux");
  REQUIRE(pair.reference.reps.size() == 5);
  REQUIRE(pair.mux.reps.size() == 5);

  for (const auto& rep : pair.reference.reps) {
    CHECK(rep.t1_fit == doctest::Approx(cfg.qubit.t1).epsilon(1e-6));
    CHECK(rep.t2e_fit == doctest::Approx(cfg.qubit.t2e).epsilon(1e-6));
  }
  // Noiseless, drift-free repetitions are identical.
  for (std::size_t k = 1; k < pair.reference.reps.size(); ++k) {
    CHECK(pair.reference.reps[k].t1_fit == pair.reference.reps[0].t1_fit);
    CHECK(pair.reference.reps[k].t2e_fit == pair.reference.reps[0].t2e_fit);
  }

  const auto rerun = run_coherence_campaign(cfg, mux);
  for (std::size_t k = 0; k < pair.reference.reps.size(); ++k) {
    CHECK(rerun.reference.reps[k].t1_fit == pair.reference.reps[k].t1_fit);
    CHECK(rerun.mux.reps[k].t2e_fit == pair.mux.reps[k].t2e_fit);
  }

  cfg.noise_sigma = 0.02;
  cfg.drift.enabled = true;
  const auto noisy_a = run_coherence_campaign(cfg, mux);
  const auto noisy_b = run_coherence_campaign(cfg, mux);
  for (std::size_t k = 0; k < noisy_a.mux.reps.size(); ++k) {
    CHECK(noisy_a.mux.reps[k].gamma_phi == noisy_b.mux.reps[k].gamma_phi);
  }
}

TEST_CASE("per-repetition tphi satisfies the component relation") {
  CampaignConfig cfg;
  cfg.qubit = qubit2();
  cfg.noise_sigma = 0.02;
  cfg.drift.enabled = true;
  cfg.seed = 4;
  const auto pair = run_coherence_campaign(cfg, default_mux_model());
  for (const auto& arm : {pair.reference, pair.mux}) {
    for (const auto& rep : arm.reps) {
      const double gamma = 1.0 / rep.t2e_fit - 0.5 / rep.t1_fit;
      CHECK(rep.gamma_phi == doctest::Approx(gamma).epsilon(1e-12));
      if (gamma > 0.0) {
        CHECK(1.0 / rep.tphi == doctest::Approx(gamma).epsilon(1e-9));
      } else {
        CHECK(std::isinf(rep.tphi));
      }
    }
  }
}

TEST_CASE("median dephasing difference tracks the injected photon number") {
  CampaignConfig cfg;
  cfg.qubit = qubit2();
  cfg.duration_s = 1200.0;
  cfg.period_s = 60.0;
  cfg.noise_sigma = 0.02;
  cfg.drift.enabled = true;
  cfg.seed = 1;
  cfg.n_add = 0.022;
  const MuxModel mux = default_mux_model();

  const auto pair = run_coherence_campaign(cfg, mux);
  const double diff = quantile(pair.mux.gamma_phi_values(), 0.5) -
                      quantile(pair.reference.gamma_phi_values(), 0.5);
  const double expected =
      photon_shot_dephasing(0.022, cfg.qubit.kappa_rad(), cfg.qubit.chi_rad());
  CHECK(expected == doctest::Approx(5.6e3).epsilon(0.01));
  CHECK(diff == doctest::Approx(5.6e3).epsilon(0.15));

  // Median mux dephasing rises strictly with the injected photon number.
  double prev = -1e9;
  for (const double n : {0.0, 0.01, 0.022, 0.05}) {
    cfg.n_add = n;
    cfg.seed = 7;
    const auto p = run_coherence_campaign(cfg, mux);
    const double med = quantile(p.mux.gamma_phi_values(), 0.5);
    CHECK(med > prev);
    prev = med;
  }
}

TEST_CASE("null campaigns rarely reject the no-difference hypothesis") {
  CampaignConfig cfg;
  cfg.qubit = qubit2();
  cfg.duration_s = 1200.0;
  cfg.period_s = 60.0;
  cfg.noise_sigma = 0.02;
  cfg.drift.enabled = true;
  cfg.n_add = 0.0;
  cfg.mux_power_w = 0.0;
  const MuxModel mux = default_mux_model();

  int calm = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    cfg.seed = seed;
    const auto pair = run_coherence_campaign(cfg, mux);
    const auto w = welch_t_test(pair.reference.gamma_phi_values(), pair.mux.gamma_phi_values());
    if (w.p_two_sided > 0.05) ++calm;
  }
  CHECK(calm >= 45);
}

TEST_CASE("campaign heating penalty shortens the mux-path T1") {
  CampaignConfig cfg;
  cfg.qubit = qubit2();
  cfg.duration_s = 120.0;
  cfg.noise_sigma = 0.0;
  cfg.drift.enabled = false;
  cfg.mux_power_w = 0.28e-6;
  const auto pair = run_coherence_campaign(cfg, default_mux_model());
  CHECK(pair.mux.reps[0].t1_fit ==
        doctest::Approx(0.7 * pair.reference.reps[0].t1_fit).epsilon(1e-3));
}

TEST_CASE("campaign input validation") {
  CampaignConfig cfg;
  cfg.qubit = qubit2();
  cfg.duration_s = 30.0;
  cfg.period_s = 60.0;
  CHECK_THROWS_AS(run_coherence_campaign(cfg, default_mux_model()), std::invalid_argument);
  cfg.duration_s = 600.0;
  cfg.n_add = -0.01;
  CHECK_THROWS_AS(run_coherence_campaign(cfg, default_mux_model()), std::invalid_argument);
  cfg.n_add = 0.01;
  cfg.qubit.kappa_over_2pi = 0.0;
  CHECK_THROWS_AS(run_coherence_campaign(cfg, default_mux_model()), std::invalid_argument);
}

TEST_CASE("flux sweep sweet spot and domain checks") {
  SweepConfig cfg = noiseless_sweep();
  const auto sweep = run_flux_sweep(cfg, default_mux_model());
  REQUIRE(sweep.rows.size() == 41);

  const auto& mid = sweep.rows[20];
  CHECK(std::abs(mid.phi_e) < 1e-15);
  CHECK(std::abs(mid.dispersion_hz_per_phi0) < 1e-3);
  CHECK(std::abs(mid.gamma_phi_e_hz) < 1.0);
  CHECK(std::abs(mid.gamma_phi_true_hz) < 1e-6);
  CHECK(std::abs(sweep.gamma_phi_ss) < 1.0);

  const auto& edge = sweep.rows.back();
  CHECK(edge.phi_e == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(edge.gamma_phi_true_hz == doctest::Approx(156757.0).epsilon(1e-3));
  CHECK(edge.gamma_phi_e_hz == doctest::Approx(edge.gamma_phi_true_hz).epsilon(1e-3));
  CHECK(edge.f_q == doctest::Approx(qubit_freq_at_flux(cfg.f_max, 0.2)).epsilon(1e-12));

  SweepConfig bad = cfg;
  bad.phi_grid = flux_grid(0.0, 0.5, 3);
  CHECK_THROWS_AS(run_flux_sweep(bad, default_mux_model()), std::domain_error);
}

TEST_CASE("flux sweep reproduces the 30% heating penalty at 0.2 flux quanta") {
  SweepConfig cfg = noiseless_sweep();
  cfg.mutual_h = mutual_from_bias(0.23e-3, 0.2).mutual_m;
  cfg.joule_heating = true;
  cfg.vdd = 0.55;
  const auto sweep = run_flux_sweep(cfg, default_mux_model());

  CHECK(sweep.rows[20].t1_fit == doctest::Approx(100e-6).epsilon(1e-6));
  CHECK(sweep.rows.back().t1_fit == doctest::Approx(0.7 * 100e-6).epsilon(0.02));

  cfg.joule_heating = false;
  const auto flat = run_flux_sweep(cfg, default_mux_model());
  for (const auto& row : flat.rows) {
    CHECK(row.t1_fit == doctest::Approx(100e-6).epsilon(1e-6));
  }
}

TEST_CASE("noiseless sweep round-trips the generating flux noise") {
  const auto sweep = run_flux_sweep(noiseless_sweep(), default_mux_model());
  const auto fit = extract_noise_params(sweep);
  CHECK(std::sqrt(fit.flux.a_flux) == doctest::Approx(2.8e-6).epsilon(0.10));
  CHECK(std::sqrt(fit.flux.b_flux) == doctest::Approx(15e-9).epsilon(0.10));
}

TEST_CASE("extraction is invariant under a constant rate offset") {
  SweepConfig cfg = noiseless_sweep();
  const auto base = extract_noise_params(run_flux_sweep(cfg, default_mux_model()));
  cfg.gamma_phi_extra = 500.0;
  const auto sweep = run_flux_sweep(cfg, default_mux_model());
  CHECK(sweep.gamma_phi_ss == doctest::Approx(500.0).epsilon(1e-3));
  const auto offset = extract_noise_params(sweep);
  CHECK(offset.flux.a_flux == doctest::Approx(base.flux.a_flux).epsilon(1e-3));
  CHECK(offset.flux.b_flux == doctest::Approx(base.flux.b_flux).epsilon(1e-3));
}

TEST_CASE("noisy sweeps stay within a quarter of the truth (smoke)") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SweepConfig cfg = noiseless_sweep();
    cfg.noise_sigma = 0.02;
    cfg.seed = seed;
    const auto fit = extract_noise_params(run_flux_sweep(cfg, default_mux_model()));
    CHECK(std::sqrt(fit.flux.a_flux) == doctest::Approx(2.8e-6).epsilon(0.25));
    CHECK(std::sqrt(fit.flux.b_flux) == doctest::Approx(15e-9).epsilon(0.25));
  }
}

TEST_CASE("direct noise extraction handles synthetic and degenerate tables") {
  // gamma = ss + p1 |D_phase| + p2 D_phase^2 on a made-up dispersion ladder.
  const double p1 = 7.3e-6, p2 = 1.1e-15, ss = 321.0;
  std::vector<double> d, g;
  for (int i = 0; i <= 12; ++i) {
    const double disp = -3e9 + 0.5e9 * i;  // cyclic Hz/Phi0, sign ignored by the fit
    const double dp = 2.0 * std::abs(disp);
    d.push_back(disp);
    g.push_back(ss + p1 * dp + p2 * dp * dp);
  }
  const auto fit = extract_noise_params(d, g, ss);
  CHECK(fit.linear_coeff == doctest::Approx(p1).epsilon(1e-6));
  CHECK(fit.quadratic_coeff == doctest::Approx(p2).epsilon(1e-6));
  CHECK(fit.gamma_ss == ss);
  CHECK(fit.n_points == 13);
  const double ln2 = std::log(2.0);
  CHECK(fit.flux.a_flux ==
        doctest::Approx(p1 * p1 / ln2 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-9));

  // Pure-white data: the 1/f amplitude stays pinned at zero.
  std::vector<double> gw;
  for (const double disp : d) {
    const double dp = 2.0 * std::abs(disp);
    gw.push_back(ss + p2 * dp * dp);
  }
  const auto white = extract_noise_params(d, gw, ss);
  CHECK(white.flux.a_flux <= white.a_flux_sigma + 1e-18);
  CHECK(white.flux.b_flux ==
        doctest::Approx(2.0 * p2 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-6));

  CHECK_THROWS_AS(extract_noise_params({0.0, 0.0, 0.0, 0.0}, {1.0, 1.0, 1.0, 1.0}, 0.0), FitError);
  CHECK_THROWS_AS(extract_noise_params({1e9, -1e9, 2e9}, {1.0, 1.0, 2.0}, 0.0), FitError);
}

TEST_CASE("added dephasing bookkeeping") {
  CHECK(added_rate_from_t2e(100e-6, 80e-6) == doctest::Approx(2500.0).epsilon(1e-12));
  CHECK(added_rate_from_t2e(80e-6, 80e-6) == 0.0);

  CampaignResult ref, mux;
  ref.label = "reference";
  mux.label = "mux";
  for (int i = 0; i < 10; ++i) {
    RepRecord r;
    r.gamma_phi = 5000.0 + 10.0 * i;
    ref.reps.push_back(r);
    r.gamma_phi = 5000.0 + 10.0 * i;
    mux.reps.push_back(r);
  }
  const auto same = added_dephasing_report(ref, mux, qubit2());
  CHECK(same.gamma_added == 0.0);
  CHECK(same.n_added == 0.0);
  CHECK(same.gamma_added_se > 0.0);
  CHECK(same.welch.p_two_sided == doctest::Approx(1.0).epsilon(1e-12));

  for (auto& r : mux.reps) r.gamma_phi += 5.6e3;
  const auto shifted = added_dephasing_report(ref, mux, qubit2());
  CHECK(shifted.gamma_added == doctest::Approx(5.6e3).epsilon(1e-12));
  CHECK(shifted.n_added == doctest::Approx(0.0219).epsilon(0.01));
  // SE propagates linearly through the photon inversion.
  CHECK(shifted.n_added_se / shifted.gamma_added_se ==
        doctest::Approx(shifted.n_added / shifted.gamma_added).epsilon(1e-9));
  CHECK(shifted.welch.significant);

  CampaignResult tiny;
  tiny.reps.push_back(RepRecord{});
  CHECK_THROWS_AS(added_dephasing_report(tiny, mux, qubit2()), std::invalid_argument);
}
