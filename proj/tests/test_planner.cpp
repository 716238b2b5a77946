#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cryomux/mux.hpp"
#include "cryomux/planner.hpp"
#include "cryomux/rng.hpp"

using namespace cryomux;

TEST_CASE("static-mode fleet size") {
  const MuxModel m = default_mux_model();
  BudgetConfig cfg;
  CHECK(max_multiplexers(cfg, m) == 100000);

  cfg.margin = 0.5;
  CHECK(max_multiplexers(cfg, m) == 50000);

  cfg.margin = 0.0;
  cfg.flux_bias_current_a = 0.23e-3;
  CHECK(max_multiplexers(cfg, m) == 71);
}

TEST_CASE("fleet size input validation and monotonicity") {
  const MuxModel m = default_mux_model();
  BudgetConfig zero;
  zero.per_mux_static_w = 0.0;
  CHECK_THROWS_AS(max_multiplexers(zero, m), std::domain_error);

  BudgetConfig bad;
  bad.margin = 1.0;
  CHECK_THROWS_AS(max_multiplexers(bad, m), std::invalid_argument);

  Rng rng(97);
  for (int i = 0; i < 100; ++i) {
    BudgetConfig a;
    a.per_mux_static_w = (rng.uniform() + 0.05) * 1e-9;
    a.margin = rng.uniform() * 0.8;
    BudgetConfig b = a;
    b.per_mux_static_w *= 1.0 + rng.uniform();
    CHECK(max_multiplexers(b, m) <= max_multiplexers(a, m));
    b = a;
    b.margin = a.margin + (1.0 - a.margin) * 0.5 * rng.uniform();
    CHECK(max_multiplexers(b, m) <= max_multiplexers(a, m));
  }
}

TEST_CASE("port scaling of the static draw") {
  CHECK(port_scaling_power(200e-12, 4) == doctest::Approx(200e-12).epsilon(1e-12));
  CHECK(port_scaling_power(200e-12, 8) == doctest::Approx(314.2857e-12).epsilon(1e-5));
  CHECK(port_scaling_power(200e-12, 1) == doctest::Approx(114.2857e-12).epsilon(1e-5));
  CHECK_THROWS_AS(port_scaling_power(200e-12, 0), std::invalid_argument);

  // Affine in the port count.
  for (int n = 1; n <= 14; ++n) {
    const double d1 = port_scaling_power(200e-12, n + 1) - port_scaling_power(200e-12, n);
    const double d2 = port_scaling_power(200e-12, n + 2) - port_scaling_power(200e-12, n + 1);
    CHECK(d1 == doctest::Approx(d2).epsilon(1e-9));
    CHECK(d1 > 0.0);
  }

  // A constant non-RF remainder shifts the decomposition, not the anchor.
  CHECK(port_scaling_power(200e-12, 4, 50e-12) == doctest::Approx(200e-12).epsilon(1e-12));
  CHECK(port_scaling_power(200e-12, 8, 50e-12) ==
        doctest::Approx((150e-12 / 1.75) * 2.75 + 50e-12).epsilon(1e-9));
}

TEST_CASE("budget report composes the power terms") {
  const MuxModel m = default_mux_model();

  BudgetConfig cfg;
  const BudgetReport r = budget_report(cfg, m);
  CHECK(r.mux_count == 100000);
  CHECK(r.device_count == 400000);
  CHECK(r.feasible);
  CHECK(r.per_mux.static_w == doctest::Approx(200e-12).epsilon(1e-12));
  CHECK(r.per_mux.dynamic_w == 0.0);
  CHECK(r.per_mux.joule_w == 0.0);
  CHECK(r.total.total() ==
        doctest::Approx(r.mux_count * r.per_mux.total()).epsilon(1e-12));
  CHECK(r.budget_w == doctest::Approx(20e-6).epsilon(1e-12));
  CHECK(r.headroom_w == doctest::Approx(r.budget_w - r.total.total()).epsilon(1e-9));

  // 1 MHz square-wave control adds 2e6 events/s at 108 fJ each.
  BudgetConfig sw = cfg;
  sw.switching_rate_hz = 1e6;
  const BudgetReport rs = budget_report(sw, m);
  CHECK(rs.per_mux.dynamic_w == doctest::Approx(216.2875e-9).epsilon(1e-6));
  CHECK(rs.per_mux.dynamic_w == doctest::Approx(216e-9).epsilon(0.01));
  CHECK(rs.mux_count == static_cast<int>(20e-6 / rs.per_mux.total()));

  BudgetConfig fb = cfg;
  fb.flux_bias_current_a = 0.23e-3;
  const BudgetReport rf = budget_report(fb, m);
  CHECK(rf.mux_count == 71);
  CHECK(rf.per_mux.joule_w == doctest::Approx(0.28037e-6).epsilon(1e-4));
}

TEST_CASE("budget report with pinned counts") {
  const MuxModel m = default_mux_model();

  BudgetConfig none;
  none.mux_count = 0;
  const BudgetReport r0 = budget_report(none, m);
  CHECK(r0.mux_count == 0);
  CHECK(r0.device_count == 0);
  CHECK(r0.total.total() == 0.0);
  CHECK(r0.headroom_w == doctest::Approx(20e-6).epsilon(1e-12));
  CHECK(r0.feasible);

  BudgetConfig over;
  over.mux_count = 200000;
  const BudgetReport ro = budget_report(over, m);
  CHECK_FALSE(ro.feasible);
  CHECK(ro.headroom_w == 0.0);
  CHECK(ro.mux_count == 200000);
  CHECK(ro.total.total() > ro.budget_w);

  BudgetConfig fits;
  fits.mux_count = 1234;
  const BudgetReport rfit = budget_report(fits, m);
  CHECK(rfit.feasible);
  CHECK(rfit.device_count == 4936);
  CHECK(rfit.headroom_w ==
        doctest::Approx(rfit.budget_w - rfit.total.total()).epsilon(1e-9));
}
