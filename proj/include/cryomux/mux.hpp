#pragma once

#include <utility>
#include <vector>

namespace cryomux {

/// Piecewise-linear magnitude-vs-frequency table (Hz, dB). Queries outside the
/// tabulated span throw std::out_of_range; extrapolation is deliberately not
/// offered.
class SpectrumTable {
public:
    SpectrumTable() = default;
    SpectrumTable(std::vector<double> freq_hz, std::vector<double> value_db);

    double at(double f_hz) const;
    bool empty() const { return freq_.empty(); }
    double f_min() const;
    double f_max() const;
    const std::vector<double>& frequencies() const { return freq_; }
    const std::vector<double>& values() const { return value_; }

private:
    std::vector<double> freq_;
    std::vector<double> value_;
};

/// Electrical and thermal model of the cryogenic SP4T RF switch.
struct MuxModel {
    int n_ports = 4;

    // Static leakage: p_floor below v_on, exponential in supply at/above:
    //   P = p_ref exp((vdd - v_ref) / v_slope).
    double v_on = 0.48;      // [V]
    double p_ref = 200e-12;  // [W], anchor at v_ref
    double v_ref = 0.55;     // [V]
    double v_slope = 0.04;   // [V per e-fold]
    double p_floor = 1e-13;  // [W], below the measurement noise floor

    // Dynamic dissipation coefficient [W/(Hz V^2)]: average power when the
    // control lines toggle as a square wave of frequency f is coeff * f * vdd^2.
    double c_eff_coeff = 0.715e-12;

    // On-resistance overdrive model R_on(V) = r_on_ref (v_ref - v_t_rf)/(V - v_t_rf).
    double r_on_ref = 5.3;  // [ohm] at v_ref
    double v_t_rf = 0.30;   // [V]

    // Mixing-chamber thermal transfer and the empirical T1 penalty map.
    double dt_dp = 5e-3 / 0.28e-6;  // [K/W]
    double t1_slope_per_k = 60.0;   // fractional T1 loss per kelvin of plate rise
    double t1_factor_floor = 0.1;

    SpectrumTable il_table;   // through-path insertion loss [dB], positive
    SpectrumTable iso_table;  // off-path isolation [dB], positive
};

/// Model preloaded with the characterized chip's anchors and bundled spectra.
MuxModel default_mux_model();

/// Decodes the digital select lines: port = 2 d1 + d0 + 1 (1-based).
int select_port(int d1, int d0);

/// Static power draw at supply vdd [W].
double static_power(const MuxModel& m, double vdd);

/// Energy dissipated per control toggle, E = c_eff_coeff vdd^2 / 2 (a square
/// wave of frequency f produces 2f events per second). Throws
/// std::domain_error below v_on (switch not operational).
double dynamic_energy_per_event(const MuxModel& m, double vdd);

/// Average dynamic power for square-wave toggling at rate_hz [W].
double dynamic_power(const MuxModel& m, double vdd, double rate_hz);

/// Series on-resistance at gate drive vdd [ohm]. Throws std::domain_error at
/// or below the RF threshold (channel not conducting).
double r_on(const MuxModel& m, double vdd);

/// Joule dissipation of a DC bias current through the switch [W].
double joule_power(const MuxModel& m, double i_dc, double vdd);

double insertion_loss(const MuxModel& m, double f_hz);
double isolation(const MuxModel& m, double f_hz);

/// Mixing-chamber temperature rise at dissipated power p [K].
double mxc_heating(const MuxModel& m, double p_dissipated);

/// Multiplicative T1 penalty for a plate rise delta_t [K]: linear in delta_t,
/// clamped to [t1_factor_floor, 1].
double t1_factor(const MuxModel& m, double delta_t);

/// First-order synthetic spectra for a series switch in a z0 environment:
/// insertion loss of the on-state resistance and isolation of the off-state
/// capacitance, tabulated on the given frequencies. Useful for generating
/// what-if tables; the bundled measured-shape tables remain the default.
std::pair<SpectrumTable, SpectrumTable> synthetic_switch_tables(
    double r_on_ohm, double c_off_f, double z0_ohm, const std::vector<double>& freq_hz);

}  // namespace cryomux
