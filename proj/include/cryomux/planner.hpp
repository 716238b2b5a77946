#pragma once

#include <optional>

#include "cryomux/mux.hpp"

namespace cryomux {

struct BudgetConfig {
    double cooling_power_w = 20e-6;     // usable mixing-chamber budget
    double per_mux_static_w = 200e-12;  // leakage per multiplexer at vdd
    int ports_per_mux = 4;
    double switching_rate_hz = 0.0;     // control square-wave frequency per mux
    double flux_bias_current_a = 0.0;   // DC current routed through each switch
    double vdd = 0.55;
    double margin = 0.0;                // fraction of the budget held in reserve
    std::optional<int> mux_count;       // fixed count; empty = maximize
};

struct PowerBreakdown {
    double static_w = 0.0;
    double dynamic_w = 0.0;
    double joule_w = 0.0;
    double total() const { return static_w + dynamic_w + joule_w; }
};

struct BudgetReport {
    int mux_count = 0;
    int device_count = 0;  // mux_count * ports_per_mux
    PowerBreakdown per_mux;
    PowerBreakdown total;
    double budget_w = 0.0;    // cooling_power * (1 - margin)
    double headroom_w = 0.0;  // budget - total, floored at 0
    bool feasible = true;
};

/// Number of multiplexers the cooling budget supports at the configured duty:
/// floor(cooling_power (1 - margin) / per-mux power), where per-mux power sums
/// static leakage, square-wave switching dissipation, and the opt-in flux-bias
/// Joule term. Throws std::domain_error when the per-mux power is zero.
int max_multiplexers(const BudgetConfig& cfg, const MuxModel& model);

/// Static power of an n-port variant of the switch. The 4-port draw
/// decomposes into one series and three shunt transistors with shunt leakage
/// 0.25x the series device (gate-area ratio), so the series share is
/// (base - overhead)/1.75 and P(n) = series (1 + 0.25 (n - 1)) + overhead.
/// Affine in n and equal to base at n = 4.
double port_scaling_power(double base_static_w, int n_ports, double overhead_w = 0.0);

/// Full budget accounting. With cfg.mux_count empty the count is maximized
/// under the budget; an explicit count whose total overshoots is reported
/// infeasible with zero headroom.
BudgetReport budget_report(const BudgetConfig& cfg, const MuxModel& model);

}  // namespace cryomux
