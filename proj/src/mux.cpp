#include "cryomux/mux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cryomux/constants.hpp"

namespace cryomux {

SpectrumTable::SpectrumTable(std::vector<double> freq_hz, std::vector<double> value_db)
    : freq_(std::move(freq_hz)), value_(std::move(value_db)) {
    if (freq_.size() != value_.size() || freq_.size() < 2) {
        throw std::invalid_argument("spectrum table needs matching columns with >= 2 points");
    }
    if (!std::is_sorted(freq_.begin(), freq_.end()) ||
        std::adjacent_find(freq_.begin(), freq_.end()) != freq_.end()) {
        throw std::invalid_argument("spectrum table frequencies must be strictly increasing");
    }
}

double SpectrumTable::f_min() const { return freq_.front(); }
double SpectrumTable::f_max() const { return freq_.back(); }

double SpectrumTable::at(double f_hz) const {
    if (empty()) throw std::out_of_range("spectrum table is empty");
    if (f_hz < freq_.front() || f_hz > freq_.back()) {
        throw std::out_of_range("frequency outside the tabulated span");
    }
    const auto it = std::upper_bound(freq_.begin(), freq_.end(), f_hz);
    if (it == freq_.end()) return value_.back();
    const std::size_t hi = static_cast<std::size_t>(it - freq_.begin());
    if (hi == 0) return value_.front();
    const std::size_t lo = hi - 1;
    const double w = (f_hz - freq_[lo]) / (freq_[hi] - freq_[lo]);
    return value_[lo] + w * (value_[hi] - value_[lo]);
}

MuxModel default_mux_model() {
    MuxModel m;
    m.il_table = SpectrumTable({0.0, 1e9, 4e9, 6e9, 8e9, 9.2e9, 10e9},
                               {1.3, 1.4, 1.5, 1.5, 1.6, 3.0, 4.2});
    m.iso_table = SpectrumTable({0.0, 1e9, 4e9, 6e9, 8e9, 9.2e9, 10e9},
                                {55.0, 48.0, 38.0, 33.0, 30.0, 28.0, 26.5});
    return m;
}

int select_port(int d1, int d0) {
    if ((d1 != 0 && d1 != 1) || (d0 != 0 && d0 != 1)) {
        throw std::invalid_argument("select bits must be 0 or 1");
    }
    return 2 * d1 + d0 + 1;
}

double static_power(const MuxModel& m, double vdd) {
    if (vdd < 0.0) throw std::invalid_argument("supply must be nonnegative");
    if (vdd < m.v_on) return m.p_floor;
    return m.p_ref * std::exp((vdd - m.v_ref) / m.v_slope);
}

double dynamic_energy_per_event(const MuxModel& m, double vdd) {
    if (vdd < m.v_on) throw std::domain_error("switch not operational below the turn-on supply");
    return 0.5 * m.c_eff_coeff * vdd * vdd;
}

double dynamic_power(const MuxModel& m, double vdd, double rate_hz) {
    if (rate_hz < 0.0) throw std::invalid_argument("rate must be nonnegative");
    if (rate_hz == 0.0) return 0.0;
    return 2.0 * rate_hz * dynamic_energy_per_event(m, vdd);
}

double r_on(const MuxModel& m, double vdd) {
    if (vdd <= m.v_t_rf) throw std::domain_error("channel not conducting at this gate drive");
    return m.r_on_ref * (m.v_ref - m.v_t_rf) / (vdd - m.v_t_rf);
}

double joule_power(const MuxModel& m, double i_dc, double vdd) {
    return i_dc * i_dc * r_on(m, vdd);
}

double insertion_loss(const MuxModel& m, double f_hz) { return m.il_table.at(f_hz); }

double isolation(const MuxModel& m, double f_hz) { return m.iso_table.at(f_hz); }

double mxc_heating(const MuxModel& m, double p_dissipated) {
    if (p_dissipated < 0.0) throw std::invalid_argument("power must be nonnegative");
    return m.dt_dp * p_dissipated;
}

double t1_factor(const MuxModel& m, double delta_t) {
    if (delta_t < 0.0) throw std::invalid_argument("temperature rise must be nonnegative");
    return std::clamp(1.0 - m.t1_slope_per_k * delta_t, m.t1_factor_floor, 1.0);
}

std::pair<SpectrumTable, SpectrumTable> synthetic_switch_tables(
    double r_on_ohm, double c_off_f, double z0_ohm, const std::vector<double>& freq_hz) {
    if (!(r_on_ohm > 0.0) || !(c_off_f > 0.0) || !(z0_ohm > 0.0)) {
        throw std::invalid_argument("switch parameters must be positive");
    }
    std::vector<double> il, iso;
    il.reserve(freq_hz.size());
    iso.reserve(freq_hz.size());
    for (const double f : freq_hz) {
        // Series element in a matched z0 line: |S21| = 2 z0 / |2 z0 + Z|.
        il.push_back(20.0 * std::log10((2.0 * z0_ohm + r_on_ohm) / (2.0 * z0_ohm)));
        const double xc = f > 0.0 ? 1.0 / (two_pi * f * c_off_f) : 0.0;
        if (f <= 0.0) {
            iso.push_back(300.0);  // DC open circuit, capped for table sanity
        } else {
            iso.push_back(10.0 * std::log10(1.0 + xc * xc / (4.0 * z0_ohm * z0_ohm)));
        }
    }
    return {SpectrumTable(freq_hz, il), SpectrumTable(freq_hz, iso)};
}

}  // namespace cryomux
