#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cryomux/campaign.hpp"
#include "cryomux/config.hpp"
#include "cryomux/csv.hpp"
#include "cryomux/errors.hpp"
#include "cryomux/mux.hpp"
#include "cryomux/planner.hpp"
#include "cryomux/stats.hpp"

namespace {

using cryomux::BoxSummary;
using cryomux::CampaignResult;
using cryomux::CsvTable;
using cryomux::RunConfig;
using cryomux::WelchResult;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_runtime = 1;
constexpr int exit_usage = 2;

int log_level() {
    const char* env = std::getenv("CRYOMUX_LOG");
    if (!env) return 0;
    const std::string v(env);
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[cryomux] " << msg << "\n";
}

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json to_json(const BoxSummary& b) {
    return {{"median", b.median},     {"q1", b.q1},
            {"q3", b.q3},             {"whisker_lo", b.whisker_lo},
            {"whisker_hi", b.whisker_hi}, {"outliers", b.outliers}};
}

json to_json(const WelchResult& w) {
    return {{"mean_a", w.mean_a},   {"mean_b", w.mean_b},
            {"t_stat", w.t_stat},   {"dof", w.dof},
            {"p_two_sided", w.p_two_sided}, {"significant", w.significant},
            {"sign_of_difference", w.mean_a > w.mean_b ? 1 : (w.mean_a < w.mean_b ? -1 : 0)}};
}

json quantity_summary(const std::vector<double>& values) {
    return to_json(cryomux::box_summary(values));
}

CsvTable campaign_to_csv(const CampaignResult& arm) {
    CsvTable t;
    t.header = {"timestamp_s", "t1_s",         "t1_sigma_s", "t2e_s",
                "t2e_sigma_s", "gamma_phi_hz", "tphi_s"};
    for (const auto& r : arm.reps) {
        t.rows.push_back({cryomux::format_double(r.timestamp_s),
                          cryomux::format_double(r.t1_fit),
                          cryomux::format_double(r.t1_sigma),
                          cryomux::format_double(r.t2e_fit),
                          cryomux::format_double(r.t2e_sigma),
                          cryomux::format_double(r.gamma_phi),
                          cryomux::format_double(r.tphi)});
    }
    return t;
}

CsvTable sweep_to_csv(const cryomux::FluxSweepResult& sweep) {
    CsvTable t;
    t.header = {"phi_e",  "f_q_hz", "dispersion_hz_per_phi0",
                "t1_s",   "t2e_s",  "gamma_phi_e_hz",
                "gamma_phi_true_hz"};
    for (const auto& r : sweep.rows) {
        t.rows.push_back({cryomux::format_double(r.phi_e),
                          cryomux::format_double(r.f_q),
                          cryomux::format_double(r.dispersion_hz_per_phi0),
                          cryomux::format_double(r.t1_fit),
                          cryomux::format_double(r.t2e_fit),
                          cryomux::format_double(r.gamma_phi_e_hz),
                          cryomux::format_double(r.gamma_phi_true_hz)});
    }
    return t;
}

json table_to_json(const CsvTable& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json obj;
        for (std::size_t i = 0; i < t.header.size(); ++i) {
            const double v = std::strtod(row[i].c_str(), nullptr);
            if (std::isfinite(v)) {
                obj[t.header[i]] = v;
            } else {
                obj[t.header[i]] = row[i];
            }
        }
        rows.push_back(obj);
    }
    return rows;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

json noise_fit_to_json(const cryomux::NoiseFitResult& fit) {
    const double sqrt_a = std::sqrt(fit.flux.a_flux);
    const double sqrt_b = std::sqrt(fit.flux.b_flux);
    const double sqrt_a_sigma = sqrt_a > 0.0 ? 0.5 * fit.a_flux_sigma / sqrt_a : 0.0;
    const double sqrt_b_sigma = sqrt_b > 0.0 ? 0.5 * fit.b_flux_sigma / sqrt_b : 0.0;
    return {{"a_flux_phi0sq", fit.flux.a_flux},
            {"b_flux_phi0sq_per_hz", fit.flux.b_flux},
            {"a_flux_sigma", fit.a_flux_sigma},
            {"b_flux_sigma", fit.b_flux_sigma},
            {"sqrt_a_uphi0", sqrt_a * 1e6},
            {"sqrt_a_uphi0_sigma", sqrt_a_sigma * 1e6},
            {"sqrt_b_nphi0_per_sqrt_hz", sqrt_b * 1e9},
            {"sqrt_b_nphi0_sigma", sqrt_b_sigma * 1e9},
            {"gamma_ss_hz", fit.gamma_ss},
            {"rss", fit.rss},
            {"n_points", fit.n_points}};
}

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::string format;
};

RunConfig resolve_config(const CommonFlags& flags) {
    RunConfig cfg = flags.config_path.empty() ? cryomux::default_run_config()
                                              : cryomux::load_run_config(flags.config_path);
    if (flags.seed) {
        cfg.campaign.seed = *flags.seed;
        cfg.sweep.seed = *flags.seed;
    }
    if (!flags.out_dir.empty()) cfg.outputs.directory = flags.out_dir;
    if (flags.format == "csv") {
        cfg.outputs.write_csv = true;
        cfg.outputs.write_json = false;
    } else if (flags.format == "json") {
        cfg.outputs.write_csv = false;
        cfg.outputs.write_json = true;
    }
    return cfg;
}

int cmd_simulate(const CommonFlags& flags) {
    const RunConfig cfg = resolve_config(flags);
    const std::filesystem::path dir(cfg.outputs.directory);
    std::filesystem::create_directories(dir);

    log_info("running campaign for " + cfg.campaign.qubit.name);
    const cryomux::CampaignPair pair = cryomux::run_coherence_campaign(cfg.campaign, cfg.mux);
    log_info("running flux sweep over " + std::to_string(cfg.sweep.phi_grid.size()) + " points");
    const cryomux::FluxSweepResult sweep = cryomux::run_flux_sweep(cfg.sweep, cfg.mux);

    std::vector<std::string> artifacts;
    const CsvTable ref_csv = campaign_to_csv(pair.reference);
    const CsvTable mux_csv = campaign_to_csv(pair.mux);
    const CsvTable sweep_csv = sweep_to_csv(sweep);

    if (cfg.outputs.write_csv) {
        cryomux::write_csv((dir / "campaign_reference.csv").string(), ref_csv);
        cryomux::write_csv((dir / "campaign_mux.csv").string(), mux_csv);
        cryomux::write_csv((dir / "sweep.csv").string(), sweep_csv);
        artifacts.insert(artifacts.end(),
                         {"campaign_reference.csv", "campaign_mux.csv", "sweep.csv"});
    }
    if (cfg.outputs.write_json) {
        json tables = {{"campaign_reference", table_to_json(ref_csv)},
                       {"campaign_mux", table_to_json(mux_csv)},
                       {"sweep", table_to_json(sweep_csv)}};
        write_text(dir / "tables.json", tables.dump(2) + "\n");
        artifacts.push_back("tables.json");
    }

    const cryomux::AddedDephasingReport added = cryomux::added_dephasing_report(
        pair.reference, pair.mux, cfg.campaign.qubit);
    const cryomux::NoiseFitResult noise_fit = cryomux::extract_noise_params(sweep);

    json summary;
    summary["reference"] = {{"t1", quantity_summary(pair.reference.t1_values())},
                            {"t2e", quantity_summary(pair.reference.t2e_values())},
                            {"gamma_phi", quantity_summary(pair.reference.gamma_phi_values())}};
    summary["mux"] = {{"t1", quantity_summary(pair.mux.t1_values())},
                      {"t2e", quantity_summary(pair.mux.t2e_values())},
                      {"gamma_phi", quantity_summary(pair.mux.gamma_phi_values())}};
    summary["added_dephasing"] = {{"gamma_added_hz", added.gamma_added},
                                  {"gamma_added_se_hz", added.gamma_added_se},
                                  {"n_added", added.n_added},
                                  {"n_added_se", added.n_added_se},
                                  {"welch_gamma_phi", to_json(added.welch)}};
    summary["noise_fit"] = noise_fit_to_json(noise_fit);
    summary["sweep_gamma_phi_ss_hz"] = sweep.gamma_phi_ss;
    write_text(dir / "summary.json", summary.dump(2) + "\n");
    artifacts.push_back("summary.json");

    json manifest = {{"command", "simulate"},
                     {"config_fingerprint", hex64(cryomux::config_fingerprint(cfg))},
                     {"campaign_seed", cfg.campaign.seed},
                     {"sweep_seed", cfg.sweep.seed},
                     {"artifacts", artifacts}};
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");

    std::cout << "wrote " << artifacts.size() + 1 << " artifacts to " << dir.string() << "\n";
    return exit_ok;
}

int cmd_fit_noise(const std::string& csv_path, std::optional<double> sweet_spot_rate) {
    const CsvTable table = cryomux::read_csv(csv_path);
    const int dc = table.column("dispersion_hz_per_phi0");
    const int gc = table.column("gamma_phi_e_hz");
    if (dc < 0 || gc < 0) {
        throw cryomux::ConfigError(csv_path,
                                   "CSV needs columns dispersion_hz_per_phi0 and gamma_phi_e_hz");
    }
    std::vector<double> d, g;
    for (const auto& row : table.rows) {
        d.push_back(std::stod(row[dc]));
        g.push_back(std::stod(row[gc]));
    }
    double gamma_ss = 0.0;
    if (sweet_spot_rate) {
        gamma_ss = *sweet_spot_rate;
    } else if (!d.empty()) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < d.size(); ++i) {
            if (std::abs(d[i]) < std::abs(d[best])) best = i;
        }
        gamma_ss = g[best];
    }
    const cryomux::NoiseFitResult fit = cryomux::extract_noise_params(d, g, gamma_ss);
    std::cout << noise_fit_to_json(fit).dump(2) << "\n";
    return exit_ok;
}

std::vector<double> column_values(const CsvTable& t, int col) {
    std::vector<double> v;
    v.reserve(t.rows.size());
    for (const auto& row : t.rows) v.push_back(std::stod(row[col]));
    return v;
}

int cmd_compare(const std::string& ref_path, const std::string& mux_path,
                const CommonFlags& flags, double alpha) {
    const CsvTable ref = cryomux::read_csv(ref_path);
    const CsvTable mux = cryomux::read_csv(mux_path);
    if (ref.header != mux.header) {
        throw cryomux::ConfigError(mux_path, "schema differs from " + ref_path);
    }
    const std::vector<std::string> quantities = {"t1_s", "t2e_s", "gamma_phi_hz"};
    for (const auto& q : quantities) {
        if (ref.column(q) < 0) {
            throw cryomux::ConfigError(ref_path, "missing required column " + q);
        }
    }
    if (ref.rows.size() < 2 || mux.rows.size() < 2) {
        throw std::runtime_error("insufficient data: need at least 2 rows per file");
    }

    const RunConfig cfg = resolve_config(flags);
    const cryomux::TransmonParams& qubit = cfg.campaign.qubit;

    json out;
    for (const auto& q : quantities) {
        const std::vector<double> a = column_values(mux, mux.column(q));
        const std::vector<double> b = column_values(ref, ref.column(q));
        json entry = {{"welch_mux_vs_ref", to_json(cryomux::welch_t_test(a, b, alpha))},
                      {"box_ref", quantity_summary(b)},
                      {"box_mux", quantity_summary(a)}};
        out[q] = entry;
    }

    const std::vector<double> g_ref = column_values(ref, ref.column("gamma_phi_hz"));
    const std::vector<double> g_mux = column_values(mux, mux.column("gamma_phi_hz"));
    const double gamma_added = cryomux::mean(g_mux) - cryomux::mean(g_ref);
    const double se = cryomux::combined_se(g_ref, g_mux);
    out["added_dephasing"] = {
        {"gamma_added_hz", gamma_added},
        {"gamma_added_se_hz", se},
        {"n_added", cryomux::added_photons(gamma_added, qubit.kappa_rad(), qubit.chi_rad())},
        {"n_added_se", cryomux::added_photons(se, qubit.kappa_rad(), qubit.chi_rad())},
        {"qubit", qubit.name}};

    std::cout << out.dump(2) << "\n";
    return exit_ok;
}

int cmd_budget(const CommonFlags& flags) {
    const RunConfig cfg = resolve_config(flags);
    const cryomux::BudgetReport report = cryomux::budget_report(cfg.budget, cfg.mux);
    auto breakdown = [](const cryomux::PowerBreakdown& p) {
        return json{{"static_w", p.static_w},
                    {"dynamic_w", p.dynamic_w},
                    {"joule_w", p.joule_w},
                    {"total_w", p.total()}};
    };
    const json out = {{"mux_count", report.mux_count},
                      {"device_count", report.device_count},
                      {"per_mux", breakdown(report.per_mux)},
                      {"total", breakdown(report.total)},
                      {"budget_w", report.budget_w},
                      {"headroom_w", report.headroom_w},
                      {"feasible", report.feasible}};
    std::cout << out.dump(2) << "\n";
    return exit_ok;
}

int cmd_rf_report(const CommonFlags& flags, double fmin, double fmax, int points) {
    if (!(fmax > fmin) || points < 2) {
        throw cryomux::ConfigError("rf-report", "need fmax > fmin and at least 2 points");
    }
    const RunConfig cfg = resolve_config(flags);
    CsvTable t;
    t.header = {"freq_hz", "insertion_loss_db", "isolation_db"};
    for (int i = 0; i < points; ++i) {
        const double f = fmin + (fmax - fmin) * static_cast<double>(i) /
                                    static_cast<double>(points - 1);
        t.rows.push_back({cryomux::format_double(f),
                          cryomux::format_double(cryomux::insertion_loss(cfg.mux, f)),
                          cryomux::format_double(cryomux::isolation(cfg.mux, f))});
    }
    if (flags.format == "json") {
        std::cout << table_to_json(t).dump(2) << "\n";
    } else {
        std::cout << cryomux::to_csv(t);
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cryogenic multiplexed-readout simulator and analysis toolkit"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::optional<double> sweet_spot_rate;
    std::string csv_path, ref_path, mux_path;
    double alpha = 0.05;
    double fmin = 1e9, fmax = 8e9;
    int points = 15;

    auto add_common = [&flags](CLI::App* cmd) {
        cmd->add_option("--config", flags.config_path, "JSON configuration file");
        cmd->add_option("--seed", flags.seed, "override campaign and sweep seeds");
        cmd->add_option("--out-dir", flags.out_dir, "output directory override");
        cmd->add_option("--format", flags.format, "artifact format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* simulate = app.add_subcommand(
        "simulate", "run the paired coherence campaign and flux sweep, write artifacts");
    add_common(simulate);

    CLI::App* fit_noise = app.add_subcommand(
        "fit-noise", "extract flux-noise amplitudes from a (dispersion, rate) table");
    fit_noise->add_option("csv", csv_path, "CSV with dispersion_hz_per_phi0, gamma_phi_e_hz")
        ->required();
    fit_noise->add_option("--sweet-spot-rate", sweet_spot_rate,
                          "flux-insensitive rate to subtract [1/s]; default: rate at the "
                          "smallest |dispersion| row");

    CLI::App* compare = app.add_subcommand(
        "compare", "statistical comparison of reference and multiplexed campaign tables");
    compare->add_option("ref_csv", ref_path, "reference campaign CSV")->required();
    compare->add_option("mux_csv", mux_path, "multiplexed campaign CSV")->required();
    compare->add_option("--alpha", alpha, "significance threshold");
    add_common(compare);

    CLI::App* budget = app.add_subcommand("budget", "cooling-power scaling report");
    add_common(budget);

    CLI::App* rf = app.add_subcommand("rf-report", "tabulate insertion loss and isolation");
    rf->add_option("--fmin", fmin, "grid start [Hz]");
    rf->add_option("--fmax", fmax, "grid end [Hz]");
    rf->add_option("--points", points, "grid size");
    add_common(rf);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(flags);
        if (fit_noise->parsed()) return cmd_fit_noise(csv_path, sweet_spot_rate);
        if (compare->parsed()) return cmd_compare(ref_path, mux_path, flags, alpha);
        if (budget->parsed()) return cmd_budget(flags);
        if (rf->parsed()) return cmd_rf_report(flags, fmin, fmax, points);
    } catch (const cryomux::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::out_of_range& e) {
        std::cerr << "range error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
    return exit_usage;
}
