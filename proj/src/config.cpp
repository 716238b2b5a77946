#include "cryomux/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cryomux/csv.hpp"
#include "cryomux/errors.hpp"

namespace cryomux {

using nlohmann::json;

const std::vector<TransmonParams>& builtin_qubits() {
    auto make = [](std::string name, double f_q_ghz, double f_r_ghz, double kappa_mhz,
                   double chi_mhz, double t1_us, double t2e_us) {
        TransmonParams q;
        q.name = std::move(name);
        q.f_q = f_q_ghz * 1e9;
        q.f_r = f_r_ghz * 1e9;
        q.kappa_over_2pi = kappa_mhz * 1e6;
        q.chi_over_2pi = chi_mhz * 1e6;
        q.t1 = t1_us * 1e-6;
        q.t2e = t2e_us * 1e-6;
        return q;
    };
    static const std::vector<TransmonParams> table = {
        make("Qubit 1", 3.514, 7.831, 0.709, -0.117, 126, 105),
        make("Qubit 2", 3.292, 6.615, 1.064, -0.106, 152, 93),
        make("Qubit 3", 3.554, 7.018, 0.988, -0.100, 106, 55),
        make("Qubit 4", 2.987, 6.595, 0, 0, 158, 77),
        make("Qubit 5", 3.039, 6.797, 0, 0, 147, 84),
        make("Qubit 6", 3.157, 6.998, 0, 0, 136, 55),
        make("Qubit 7", 3.489, 7.377, 0, 0, 82, 66),
        make("Qubit 8", 3.552, 7.824, 0, 0, 95, 84),
        make("Qubit 9", 3.607, 6.501, 0, 0, 94, 74),
        make("Qubit 10", 3.666, 6.705, 0, 0, 165, 75),
        make("Qubit 11", 3.596, 7.115, 0, 0, 174, 111),
        make("Qubit 12", 4.001, 6.503, 0, 0, 123, 80),
        make("Qubit 13", 3.793, 6.707, 0, 0, 143, 61),
        make("Qubit 14", 3.893, 7.373, 0, 0, 58, 44),
        make("Qubit 15", 3.861, 7.821, 0, 0, 107, 84),
        make("Qubit 16", 3.989, 6.499, 0, 0, 161, 57),
        make("Qubit 17", 3.881, 6.703, 0, 0, 148, 52),
        make("Qubit 18", 4.020, 6.908, 0, 0, 155, 47),
        make("Qubit 19", 3.984, 7.112, 0, 0, 119, 59),
        make("Qubit 20", 4.137, 6.055, 0.423, -0.253, 57, 35),
    };
    return table;
}

const TransmonParams* find_qubit(const std::vector<TransmonParams>& qubits,
                                 const std::string& name) {
    for (const auto& q : qubits) {
        if (q.name == name) return &q;
    }
    return nullptr;
}

RunConfig default_run_config() {
    RunConfig cfg;
    cfg.qubits = builtin_qubits();
    cfg.mux = default_mux_model();
    cfg.noise = {2.8e-6 * 2.8e-6, 15e-9 * 15e-9};

    cfg.campaign.qubit = *find_qubit(cfg.qubits, "Qubit 2");
    cfg.campaign.duration_s = 1200.0;
    cfg.campaign.period_s = 60.0;
    cfg.campaign.noise_sigma = 0.02;
    cfg.campaign.grid_points = 50;
    cfg.campaign.drift.enabled = true;
    cfg.campaign.seed = 1;
    cfg.campaign.n_add = 0.022;
    cfg.campaign.mux_power_w = 0.0;

    cfg.sweep.f_max = 4.4e9;
    cfg.sweep.phi_grid = flux_grid(-0.2, 0.2, 41);
    cfg.sweep.flux_noise = cfg.noise;
    cfg.sweep.t1 = 100e-6;
    cfg.sweep.gamma_phi_extra = 0.0;
    cfg.sweep.noise_sigma = 0.0;
    cfg.sweep.grid_points = 50;
    cfg.sweep.seed = 1;
    cfg.sweep.joule_heating = true;
    cfg.sweep.vdd = 0.55;
    cfg.sweep.mutual_h = mutual_from_bias(0.23e-3, 0.2).mutual_m;

    return cfg;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where, what);
}

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) fail(where + "." + key, "unknown key");
    }
}

double get_num(const json& obj, const std::string& where, const std::string& key,
               double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) fail(where + "." + key, "expected a number");
    return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& where, const std::string& key, int fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer()) fail(where + "." + key, "expected an integer");
    return obj[key].get<int>();
}

bool get_bool(const json& obj, const std::string& where, const std::string& key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_boolean()) fail(where + "." + key, "expected a boolean");
    return obj[key].get<bool>();
}

std::string get_str(const json& obj, const std::string& where, const std::string& key,
                    const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_string()) fail(where + "." + key, "expected a string");
    return obj[key].get<std::string>();
}

std::uint64_t get_seed(const json& obj, const std::string& where, const std::string& key,
                       std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_unsigned() && !obj[key].is_number_integer()) {
        fail(where + "." + key, "expected a nonnegative integer");
    }
    if (obj[key].is_number_integer() && obj[key].get<long long>() < 0) {
        fail(where + "." + key, "expected a nonnegative integer");
    }
    return obj[key].get<std::uint64_t>();
}

SpectrumTable load_spectrum(const std::string& path, const std::string& where) {
    CsvTable csv;
    try {
        csv = read_csv(path);
    } catch (const std::exception& e) {
        fail(where, e.what());
    }
    const int fc = csv.column("freq_hz");
    const int vc = csv.column("value_db");
    if (fc < 0 || vc < 0) fail(where, "CSV needs columns freq_hz and value_db");
    std::vector<double> f, v;
    for (const auto& row : csv.rows) {
        try {
            f.push_back(std::stod(row[fc]));
            v.push_back(std::stod(row[vc]));
        } catch (const std::exception&) {
            fail(where, "non-numeric value in spectrum table");
        }
    }
    try {
        return SpectrumTable(std::move(f), std::move(v));
    } catch (const std::exception& e) {
        fail(where, e.what());
    }
}

std::string resolve(const std::string& base_dir, const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_absolute() || base_dir.empty()) return path;
    return (std::filesystem::path(base_dir) / p).string();
}

TransmonParams parse_qubit(const json& obj, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    reject_unknown(obj, where,
                   {"name", "f_q_hz", "f_r_hz", "kappa_over_2pi_hz", "chi_over_2pi_hz", "t1_s",
                    "t2e_s", "f_max_hz", "g_over_2pi_hz"});
    TransmonParams q;
    q.name = get_str(obj, where, "name", "");
    if (q.name.empty()) fail(where + ".name", "qubit needs a name");
    q.f_q = get_num(obj, where, "f_q_hz", 0.0);
    q.f_r = get_num(obj, where, "f_r_hz", 0.0);
    q.kappa_over_2pi = get_num(obj, where, "kappa_over_2pi_hz", 0.0);
    q.chi_over_2pi = get_num(obj, where, "chi_over_2pi_hz", 0.0);
    q.t1 = get_num(obj, where, "t1_s", 0.0);
    q.t2e = get_num(obj, where, "t2e_s", 0.0);
    if (obj.contains("f_max_hz")) q.f_max = get_num(obj, where, "f_max_hz", 0.0);
    if (obj.contains("g_over_2pi_hz")) q.g_over_2pi = get_num(obj, where, "g_over_2pi_hz", 0.0);
    if (!(q.t1 > 0.0) || !(q.t2e > 0.0)) fail(where, "qubit times must be positive");
    if (!(q.f_q > 0.0) || !(q.f_r > 0.0)) fail(where, "qubit frequencies must be positive");
    if (q.kappa_over_2pi < 0.0) fail(where + ".kappa_over_2pi_hz", "must be nonnegative");
    if (q.kappa_over_2pi > 0.0 && std::abs(q.chi_over_2pi) >= 100.0 * q.kappa_over_2pi) {
        fail(where + ".chi_over_2pi_hz", "implausibly large dispersive shift");
    }
    return q;
}

void apply_mux(const json& obj, const std::string& where, const std::string& base_dir,
               MuxModel& m) {
    reject_unknown(obj, where,
                   {"n_ports", "v_on", "p_ref", "v_ref", "v_slope", "p_floor", "c_eff_coeff",
                    "r_on_ref", "v_t_rf", "dt_dp", "t1_slope_per_k", "t1_factor_floor",
                    "il_table_csv", "iso_table_csv"});
    m.n_ports = get_int(obj, where, "n_ports", m.n_ports);
    m.v_on = get_num(obj, where, "v_on", m.v_on);
    m.p_ref = get_num(obj, where, "p_ref", m.p_ref);
    m.v_ref = get_num(obj, where, "v_ref", m.v_ref);
    m.v_slope = get_num(obj, where, "v_slope", m.v_slope);
    m.p_floor = get_num(obj, where, "p_floor", m.p_floor);
    m.c_eff_coeff = get_num(obj, where, "c_eff_coeff", m.c_eff_coeff);
    m.r_on_ref = get_num(obj, where, "r_on_ref", m.r_on_ref);
    m.v_t_rf = get_num(obj, where, "v_t_rf", m.v_t_rf);
    m.dt_dp = get_num(obj, where, "dt_dp", m.dt_dp);
    m.t1_slope_per_k = get_num(obj, where, "t1_slope_per_k", m.t1_slope_per_k);
    m.t1_factor_floor = get_num(obj, where, "t1_factor_floor", m.t1_factor_floor);
    if (obj.contains("il_table_csv")) {
        m.il_table = load_spectrum(resolve(base_dir, get_str(obj, where, "il_table_csv", "")),
                                   where + ".il_table_csv");
    }
    if (obj.contains("iso_table_csv")) {
        m.iso_table = load_spectrum(resolve(base_dir, get_str(obj, where, "iso_table_csv", "")),
                                    where + ".iso_table_csv");
    }
    if (!(m.v_on < m.v_ref)) fail(where, "v_on must lie below v_ref");
    if (!(m.v_slope > 0.0) || !(m.p_ref > 0.0) || !(m.r_on_ref > 0.0)) {
        fail(where, "physical parameters must be positive");
    }
    if (m.n_ports < 1) fail(where + ".n_ports", "must be at least 1");
}

NoiseParams parse_noise(const json& obj, const std::string& where, const NoiseParams& fallback) {
    reject_unknown(obj, where, {"a_flux", "b_flux", "sqrt_a_flux", "sqrt_b_flux"});
    const bool raw = obj.contains("a_flux") || obj.contains("b_flux");
    const bool roots = obj.contains("sqrt_a_flux") || obj.contains("sqrt_b_flux");
    if (raw && roots) fail(where, "give either raw amplitudes or their square roots, not both");
    NoiseParams p = fallback;
    if (roots) {
        const double sa = get_num(obj, where, "sqrt_a_flux", std::sqrt(fallback.a_flux));
        const double sb = get_num(obj, where, "sqrt_b_flux", std::sqrt(fallback.b_flux));
        if (sa < 0.0 || sb < 0.0) fail(where, "square-root amplitudes must be nonnegative");
        p = {sa * sa, sb * sb};
    } else if (raw) {
        p.a_flux = get_num(obj, where, "a_flux", fallback.a_flux);
        p.b_flux = get_num(obj, where, "b_flux", fallback.b_flux);
    }
    if (p.a_flux < 0.0 || p.b_flux < 0.0) fail(where, "noise amplitudes must be nonnegative");
    return p;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text, const std::string& origin) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < json_text.size(); ++i) {
            if (json_text[i] == '\n') ++line;
        }
        fail(origin + ":" + std::to_string(line), e.what());
    }
    if (!root.is_object()) fail(origin, "top-level config must be a JSON object");

    const std::string base_dir = std::filesystem::path(origin).parent_path().string();
    RunConfig cfg = default_run_config();

    reject_unknown(root, "config",
                   {"qubits", "mux", "noise", "campaign", "sweep", "budget", "outputs"});

    if (root.contains("qubits")) {
        if (!root["qubits"].is_array() || root["qubits"].empty()) {
            fail("config.qubits", "expected a non-empty array");
        }
        cfg.qubits.clear();
        int i = 0;
        for (const auto& item : root["qubits"]) {
            cfg.qubits.push_back(parse_qubit(item, "config.qubits[" + std::to_string(i) + "]"));
            ++i;
        }
    }

    if (root.contains("mux")) {
        if (!root["mux"].is_object()) fail("config.mux", "expected an object");
        apply_mux(root["mux"], "config.mux", base_dir, cfg.mux);
    }

    if (root.contains("noise")) {
        if (!root["noise"].is_object()) fail("config.noise", "expected an object");
        cfg.noise = parse_noise(root["noise"], "config.noise", cfg.noise);
        cfg.sweep.flux_noise = cfg.noise;
    }

    if (root.contains("campaign")) {
        const json& c = root["campaign"];
        if (!c.is_object()) fail("config.campaign", "expected an object");
        reject_unknown(c, "config.campaign",
                       {"qubit", "duration_s", "period_s", "noise_sigma", "grid_points", "n_add",
                        "mux_power_w", "seed", "drift"});
        const std::string qname = get_str(c, "config.campaign", "qubit", "Qubit 2");
        const TransmonParams* q = find_qubit(cfg.qubits, qname);
        if (!q) fail("config.campaign.qubit", "unknown qubit '" + qname + "'");
        cfg.campaign.qubit = *q;
        cfg.campaign.duration_s = get_num(c, "config.campaign", "duration_s",
                                          cfg.campaign.duration_s);
        cfg.campaign.period_s = get_num(c, "config.campaign", "period_s", cfg.campaign.period_s);
        cfg.campaign.noise_sigma = get_num(c, "config.campaign", "noise_sigma",
                                           cfg.campaign.noise_sigma);
        cfg.campaign.grid_points = get_int(c, "config.campaign", "grid_points",
                                           cfg.campaign.grid_points);
        cfg.campaign.n_add = get_num(c, "config.campaign", "n_add", cfg.campaign.n_add);
        cfg.campaign.mux_power_w = get_num(c, "config.campaign", "mux_power_w",
                                           cfg.campaign.mux_power_w);
        cfg.campaign.seed = get_seed(c, "config.campaign", "seed", cfg.campaign.seed);
        if (c.contains("drift")) {
            const json& d = c["drift"];
            if (!d.is_object()) fail("config.campaign.drift", "expected an object");
            reject_unknown(d, "config.campaign.drift", {"enabled", "tau_s", "sigma_log"});
            cfg.campaign.drift.enabled = get_bool(d, "config.campaign.drift", "enabled",
                                                  cfg.campaign.drift.enabled);
            cfg.campaign.drift.tau_s = get_num(d, "config.campaign.drift", "tau_s",
                                               cfg.campaign.drift.tau_s);
            cfg.campaign.drift.sigma_log = get_num(d, "config.campaign.drift", "sigma_log",
                                                   cfg.campaign.drift.sigma_log);
        }
    } else {
        // Re-resolve the default campaign qubit against a possibly overridden list.
        const TransmonParams* q = find_qubit(cfg.qubits, cfg.campaign.qubit.name);
        if (!q) fail("config.campaign.qubit",
                     "unknown qubit '" + cfg.campaign.qubit.name + "'");
        cfg.campaign.qubit = *q;
    }

    if (root.contains("sweep")) {
        const json& s = root["sweep"];
        if (!s.is_object()) fail("config.sweep", "expected an object");
        reject_unknown(s, "config.sweep",
                       {"f_max_hz", "phi_min", "phi_max", "n_phi", "t1_s", "gamma_phi_extra_hz",
                        "noise_sigma", "grid_points", "seed", "joule_heating", "vdd",
                        "bias_current_a", "bias_phi_e"});
        cfg.sweep.f_max = get_num(s, "config.sweep", "f_max_hz", cfg.sweep.f_max);
        const double phi_min = get_num(s, "config.sweep", "phi_min", -0.2);
        const double phi_max = get_num(s, "config.sweep", "phi_max", 0.2);
        const int n_phi = get_int(s, "config.sweep", "n_phi", 41);
        if (n_phi < 2 || !(phi_max > phi_min)) {
            fail("config.sweep", "flux grid needs n_phi >= 2 and phi_max > phi_min");
        }
        cfg.sweep.phi_grid = flux_grid(phi_min, phi_max, n_phi);
        cfg.sweep.t1 = get_num(s, "config.sweep", "t1_s", cfg.sweep.t1);
        cfg.sweep.gamma_phi_extra = get_num(s, "config.sweep", "gamma_phi_extra_hz",
                                            cfg.sweep.gamma_phi_extra);
        cfg.sweep.noise_sigma = get_num(s, "config.sweep", "noise_sigma", cfg.sweep.noise_sigma);
        cfg.sweep.grid_points = get_int(s, "config.sweep", "grid_points", cfg.sweep.grid_points);
        cfg.sweep.seed = get_seed(s, "config.sweep", "seed", cfg.sweep.seed);
        cfg.sweep.joule_heating = get_bool(s, "config.sweep", "joule_heating",
                                           cfg.sweep.joule_heating);
        cfg.sweep.vdd = get_num(s, "config.sweep", "vdd", cfg.sweep.vdd);
        if (s.contains("bias_current_a") || s.contains("bias_phi_e")) {
            const double i_bias = get_num(s, "config.sweep", "bias_current_a", 0.23e-3);
            const double phi = get_num(s, "config.sweep", "bias_phi_e", 0.2);
            if (i_bias == 0.0) {
                cfg.sweep.mutual_h = 0.0;
            } else {
                cfg.sweep.mutual_h = mutual_from_bias(i_bias, phi).mutual_m;
            }
        }
    }

    if (root.contains("budget")) {
        const json& b = root["budget"];
        if (!b.is_object()) fail("config.budget", "expected an object");
        reject_unknown(b, "config.budget",
                       {"cooling_power_w", "per_mux_static_w", "ports_per_mux",
                        "switching_rate_hz", "flux_bias_current_a", "vdd", "margin", "mux_count"});
        cfg.budget.cooling_power_w = get_num(b, "config.budget", "cooling_power_w",
                                             cfg.budget.cooling_power_w);
        cfg.budget.per_mux_static_w = get_num(b, "config.budget", "per_mux_static_w",
                                              cfg.budget.per_mux_static_w);
        cfg.budget.ports_per_mux = get_int(b, "config.budget", "ports_per_mux",
                                           cfg.budget.ports_per_mux);
        cfg.budget.switching_rate_hz = get_num(b, "config.budget", "switching_rate_hz",
                                               cfg.budget.switching_rate_hz);
        cfg.budget.flux_bias_current_a = get_num(b, "config.budget", "flux_bias_current_a",
                                                 cfg.budget.flux_bias_current_a);
        cfg.budget.vdd = get_num(b, "config.budget", "vdd", cfg.budget.vdd);
        cfg.budget.margin = get_num(b, "config.budget", "margin", cfg.budget.margin);
        if (b.contains("mux_count")) {
            cfg.budget.mux_count = get_int(b, "config.budget", "mux_count", 0);
        }
    }

    if (root.contains("outputs")) {
        const json& o = root["outputs"];
        if (!o.is_object()) fail("config.outputs", "expected an object");
        reject_unknown(o, "config.outputs", {"directory", "formats"});
        cfg.outputs.directory = get_str(o, "config.outputs", "directory",
                                        cfg.outputs.directory);
        if (o.contains("formats")) {
            if (!o["formats"].is_array()) fail("config.outputs.formats", "expected an array");
            cfg.outputs.write_csv = false;
            cfg.outputs.write_json = false;
            for (const auto& f : o["formats"]) {
                if (!f.is_string()) fail("config.outputs.formats", "expected strings");
                const std::string s = f.get<std::string>();
                if (s == "csv") {
                    cfg.outputs.write_csv = true;
                } else if (s == "json") {
                    cfg.outputs.write_json = true;
                } else {
                    fail("config.outputs.formats", "unknown format '" + s + "'");
                }
            }
        }
    }

    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str(), path);
}

std::string dump_config(const RunConfig& cfg) {
    json root;

    json qubits = json::array();
    for (const auto& q : cfg.qubits) {
        json j{{"name", q.name},          {"f_q_hz", q.f_q},
               {"f_r_hz", q.f_r},         {"kappa_over_2pi_hz", q.kappa_over_2pi},
               {"chi_over_2pi_hz", q.chi_over_2pi}, {"t1_s", q.t1},
               {"t2e_s", q.t2e}};
        if (q.f_max) j["f_max_hz"] = *q.f_max;
        if (q.g_over_2pi) j["g_over_2pi_hz"] = *q.g_over_2pi;
        qubits.push_back(j);
    }
    root["qubits"] = qubits;

    root["mux"] = {{"n_ports", cfg.mux.n_ports},
                   {"v_on", cfg.mux.v_on},
                   {"p_ref", cfg.mux.p_ref},
                   {"v_ref", cfg.mux.v_ref},
                   {"v_slope", cfg.mux.v_slope},
                   {"p_floor", cfg.mux.p_floor},
                   {"c_eff_coeff", cfg.mux.c_eff_coeff},
                   {"r_on_ref", cfg.mux.r_on_ref},
                   {"v_t_rf", cfg.mux.v_t_rf},
                   {"dt_dp", cfg.mux.dt_dp},
                   {"t1_slope_per_k", cfg.mux.t1_slope_per_k},
                   {"t1_factor_floor", cfg.mux.t1_factor_floor},
                   {"il_freq_hz", cfg.mux.il_table.frequencies()},
                   {"il_db", cfg.mux.il_table.values()},
                   {"iso_freq_hz", cfg.mux.iso_table.frequencies()},
                   {"iso_db", cfg.mux.iso_table.values()}};

    root["noise"] = {{"a_flux", cfg.noise.a_flux}, {"b_flux", cfg.noise.b_flux}};

    root["campaign"] = {{"qubit", cfg.campaign.qubit.name},
                        {"duration_s", cfg.campaign.duration_s},
                        {"period_s", cfg.campaign.period_s},
                        {"noise_sigma", cfg.campaign.noise_sigma},
                        {"grid_points", cfg.campaign.grid_points},
                        {"n_add", cfg.campaign.n_add},
                        {"mux_power_w", cfg.campaign.mux_power_w},
                        {"seed", cfg.campaign.seed},
                        {"drift",
                         {{"enabled", cfg.campaign.drift.enabled},
                          {"tau_s", cfg.campaign.drift.tau_s},
                          {"sigma_log", cfg.campaign.drift.sigma_log}}}};

    root["sweep"] = {{"f_max_hz", cfg.sweep.f_max},
                     {"phi_grid", cfg.sweep.phi_grid},
                     {"t1_s", cfg.sweep.t1},
                     {"gamma_phi_extra_hz", cfg.sweep.gamma_phi_extra},
                     {"noise_sigma", cfg.sweep.noise_sigma},
                     {"grid_points", cfg.sweep.grid_points},
                     {"seed", cfg.sweep.seed},
                     {"joule_heating", cfg.sweep.joule_heating},
                     {"vdd", cfg.sweep.vdd},
                     {"mutual_h", cfg.sweep.mutual_h},
                     {"flux_noise_a", cfg.sweep.flux_noise.a_flux},
                     {"flux_noise_b", cfg.sweep.flux_noise.b_flux}};

    json budget = {{"cooling_power_w", cfg.budget.cooling_power_w},
                   {"per_mux_static_w", cfg.budget.per_mux_static_w},
                   {"ports_per_mux", cfg.budget.ports_per_mux},
                   {"switching_rate_hz", cfg.budget.switching_rate_hz},
                   {"flux_bias_current_a", cfg.budget.flux_bias_current_a},
                   {"vdd", cfg.budget.vdd},
                   {"margin", cfg.budget.margin}};
    if (cfg.budget.mux_count) budget["mux_count"] = *cfg.budget.mux_count;
    root["budget"] = budget;

    root["outputs"] = {{"directory", cfg.outputs.directory},
                       {"write_csv", cfg.outputs.write_csv},
                       {"write_json", cfg.outputs.write_json}};

    return root.dump(2);
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (const unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::uint64_t config_fingerprint(const RunConfig& cfg) { return fnv1a64(dump_config(cfg)); }

}  // namespace cryomux
