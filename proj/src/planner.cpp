#include "cryomux/planner.hpp"

#include <cmath>
#include <stdexcept>

namespace cryomux {

namespace {

PowerBreakdown per_mux_power(const BudgetConfig& cfg, const MuxModel& model) {
    if (cfg.per_mux_static_w < 0.0 || cfg.switching_rate_hz < 0.0) {
        throw std::invalid_argument("budget power terms must be nonnegative");
    }
    PowerBreakdown p;
    p.static_w = cfg.per_mux_static_w;
    p.dynamic_w = cfg.switching_rate_hz > 0.0
                      ? dynamic_power(model, cfg.vdd, cfg.switching_rate_hz)
                      : 0.0;
    p.joule_w = cfg.flux_bias_current_a != 0.0
                    ? joule_power(model, cfg.flux_bias_current_a, cfg.vdd)
                    : 0.0;
    return p;
}

double usable_budget(const BudgetConfig& cfg) {
    if (cfg.margin < 0.0 || cfg.margin >= 1.0) {
        throw std::invalid_argument("margin must lie in [0, 1)");
    }
    if (cfg.cooling_power_w < 0.0) {
        throw std::invalid_argument("cooling power must be nonnegative");
    }
    return cfg.cooling_power_w * (1.0 - cfg.margin);
}

}  // namespace

int max_multiplexers(const BudgetConfig& cfg, const MuxModel& model) {
    const double per_mux = per_mux_power(cfg, model).total();
    if (per_mux <= 0.0) {
        throw std::domain_error("per-multiplexer power is zero: count is unbounded");
    }
    return static_cast<int>(usable_budget(cfg) / per_mux);
}

double port_scaling_power(double base_static_w, int n_ports, double overhead_w) {
    if (n_ports < 1) throw std::invalid_argument("port count must be at least 1");
    if (base_static_w < 0.0 || overhead_w < 0.0 || overhead_w > base_static_w) {
        throw std::invalid_argument("overhead must lie within the base power");
    }
    // One series + three shunt transistors at the 4-port anchor, shunt leakage
    // 0.25x the series device: base - overhead = series * 1.75.
    const double series = (base_static_w - overhead_w) / 1.75;
    return series * (1.0 + 0.25 * static_cast<double>(n_ports - 1)) + overhead_w;
}

BudgetReport budget_report(const BudgetConfig& cfg, const MuxModel& model) {
    BudgetReport report;
    report.per_mux = per_mux_power(cfg, model);
    report.budget_w = usable_budget(cfg);

    if (cfg.mux_count.has_value()) {
        if (*cfg.mux_count < 0) throw std::invalid_argument("mux count must be nonnegative");
        report.mux_count = *cfg.mux_count;
    } else {
        report.mux_count = max_multiplexers(cfg, model);
    }
    report.device_count = report.mux_count * cfg.ports_per_mux;

    const double n = static_cast<double>(report.mux_count);
    report.total.static_w = n * report.per_mux.static_w;
    report.total.dynamic_w = n * report.per_mux.dynamic_w;
    report.total.joule_w = n * report.per_mux.joule_w;

    const double total = report.total.total();
    report.feasible = total <= report.budget_w;
    report.headroom_w = report.feasible ? report.budget_w - total : 0.0;
    return report;
}

}  // namespace cryomux
