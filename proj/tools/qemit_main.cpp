// qemit: collective photon emission and two-qubit entanglement in phonon
// environments. Subcommands: spectrum, g1, modes, concurrence, compare,
// sweep, intensity. Deterministic CSV artifacts with JSON sidecars.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qemit/config.hpp"
#include "qemit/entanglement.hpp"
#include "qemit/exp_fit.hpp"
#include "qemit/io.hpp"
#include "qemit/spectra.hpp"
#include "qemit/sweep.hpp"
#include "qemit/units.hpp"

using namespace qemit;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string temperatures;
    std::string spacing;
    std::string methods;
    std::string initial_state;
    std::string out_dir;
    int n_emitters = 0;
    int workers = -1;
};

void add_common(CLI::App* cmd, CommonOpts& opt) {
    cmd->add_option("--config", opt.config_path, "configuration file (key = value sections)");
    cmd->add_option("--N", opt.n_emitters, "number of emitters");
    cmd->add_option("--T", opt.temperatures, "temperatures in K: list and a..b[:step] ranges");
    cmd->add_option("--spacing", opt.spacing, "emitter spacing: nm or lambda/<x>");
    cmd->add_option("--methods", opt.methods,
                    "comma list of concatenation,polaron,markovian,initial-slip");
    cmd->add_option("--initial-state", opt.initial_state, "e1, plus, minus or vec:a1,a2,...");
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_option("--workers", opt.workers, "worker pool size (0 = cores, SIM_WORKERS env)");
}

SimulationConfig load_config(const CommonOpts& opt) {
    SimulationConfig cfg;
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) throw ConfigError("cannot read config file: " + opt.config_path);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        cfg = parse_config(text, /*use_defaults=*/true);
    }
    if (opt.n_emitters > 0) cfg.n_emitters = opt.n_emitters;
    if (!opt.temperatures.empty()) cfg.temperatures = parse_temperature_list(opt.temperatures);
    if (!opt.spacing.empty()) {
        const std::string text = "[chain]\nspacing = " + opt.spacing + "\n";
        cfg.spacing = parse_config(text).spacing;
    }
    if (!opt.methods.empty()) {
        const std::string text = "[run]\nmethods = " + opt.methods + "\n";
        cfg.methods = parse_config(text).methods;
    }
    if (!opt.initial_state.empty()) {
        const std::string text = "[run]\ninitial_state = " + opt.initial_state + "\n";
        cfg.initial_state = parse_config(text).initial_state;
    }
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
    if (opt.workers >= 0) cfg.workers = opt.workers;
    cfg.validate();
    return cfg;
}

json config_json(const SimulationConfig& cfg) {
    json j;
    j["material"] = {{"alpha", cfg.alpha},
                     {"omega_c", cfg.resolved_omega_c()},
                     {"sound_speed", cfg.sound_speed},
                     {"mu", cfg.mu},
                     {"refractive_index", cfg.refractive_index},
                     {"wavelength_nm", cfg.wavelength},
                     {"gamma_ghz", cfg.gamma_ghz}};
    if (cfg.dot_size) j["material"]["dot_size_nm"] = *cfg.dot_size;
    j["chain"] = {{"n_emitters", cfg.n_emitters},
                  {"spacing_nm", cfg.dicke_limit ? 0.0 : cfg.spacing.resolve(cfg.wavelength)},
                  {"dicke_limit", cfg.dicke_limit}};
    j["run"] = {{"temperatures", cfg.temperatures},
                {"initial_state", cfg.initial_state.name},
                {"tau_p_epsilon", cfg.tau_p_epsilon}};
    std::vector<std::string> names;
    for (auto m : cfg.methods) names.push_back(method_name(m));
    j["run"]["methods"] = names;
    j["grids"] = {{"fine_dt_ps", cfg.fine_dt},
                  {"sideband_span_uev", cfg.sideband_span_uev},
                  {"zpl_step_uev", cfg.zpl_step_uev},
                  {"sideband_step_uev", cfg.sideband_step_uev}};
    return j;
}

void write_artifact(const std::string& dir, const std::string& name, const std::string& csv,
                    const SimulationConfig& cfg, json extra) {
    const auto base = std::filesystem::path(dir) / name;
    write_text_file(base.string() + ".csv", csv);
    json meta;
    meta["parameters"] = config_json(cfg);
    meta["job"] = std::move(extra);
    write_text_file(base.string() + ".meta.json", meta.dump(2) + "\n");
}

struct JobContext {
    std::shared_ptr<const PhononContext> phonon;
    EmitterChain chain;
    CouplingMatrices matrices;
    ModeSet modes;
};

JobContext make_job(const SimulationConfig& cfg, double temperature) {
    JobContext jc;
    PhononBathParams bath = cfg.bath(temperature);
    jc.phonon = std::make_shared<PhononContext>(bath, DephasingParams{cfg.mu}, QuadratureSpec{},
                                                cfg.tau_p_epsilon);
    jc.chain = cfg.chain();
    const double corr_length = cfg.sound_speed * jc.phonon->tau_p();
    jc.matrices = build_matrices(jc.chain, jc.phonon->c_inf(), jc.phonon->shift(), corr_length);
    for (const auto& w : jc.matrices.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    jc.modes = mode_spectrum(jc.chain, jc.matrices, jc.phonon->gamma_pd(), cfg.rho_sem());
    return jc;
}

std::string tag(double temperature) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", temperature);
    return buf;
}

json mode_summary(const JobContext& jc, Method method) {
    json peaks = json::array();
    for (std::size_t l = 0; l < jc.modes.modes.size(); ++l) {
        const auto& m = jc.modes.modes[l];
        const double center = method == Method::Polaron
                                  ? jc.modes.omega_l_polaron(static_cast<int>(l))
                                  : m.omega_l;
        const double width = method == Method::Polaron ? m.digamma_l : m.big_gamma_l;
        peaks.push_back({{"l", m.index},
                         {"center_uev", units::angular_to_uev(center)},
                         {"fwhm_uev", units::angular_to_uev(2.0 * width)},
                         {"weight", m.gamma_l * m.rho_ll}});
    }
    json j;
    j["peaks"] = peaks;
    if (jc.modes.modes.size() >= 2) j["enhancement_ratio"] = enhancement_ratio(jc.modes, method);
    return j;
}

int cmd_spectrum(const SimulationConfig& cfg, bool zpl_only) {
    struct Result {
        std::string name, csv;
        json extra;
        std::string line;
    };
    std::vector<std::pair<double, Method>> jobs;
    for (double T : cfg.temperatures)
        for (Method m : cfg.methods) jobs.emplace_back(T, m);
    std::vector<Result> results(jobs.size());

    auto outcomes = run_indexed(
        jobs.size(),
        [&](std::size_t i) {
            const auto [T, method] = jobs[i];
            const auto jc = make_job(cfg, T);
            FrequencyGrid::Options gopt;
            gopt.sideband_span_uev = cfg.sideband_span_uev;
            gopt.zpl_step_uev = cfg.zpl_step_uev;
            gopt.sideband_step_uev = cfg.sideband_step_uev;
            const auto grid = FrequencyGrid::for_modes(jc.modes, method, gopt);

            Spectrum s;
            json extra = mode_summary(jc, method);
            if (zpl_only) {
                s = zpl_spectrum(jc.modes, method, grid);
            } else {
                const auto tgrid = TimeGrid::for_trace(*jc.phonon, jc.modes, cfg.fine_dt);
                const auto trace = g1_collective(tgrid, method, jc.modes, jc.phonon,
                                                 /*restore_sidebands=*/method == Method::Polaron);
                s = full_spectrum(trace, grid);
                extra["zpl_fraction"] = zpl_fraction(s, jc.modes, method);
                const auto split = sideband_split(s);
                extra["sideband_blue_red_ratio"] = split.red != 0.0 ? split.blue / split.red : 0.0;
            }
            if (cfg.n_emitters == 2)
                extra["delta_percent"] = delta_metric(jc.chain, *jc.phonon).delta_percent;
            extra["temperature_K"] = T;
            extra["method"] = method_name(method);
            extra["tau_p_ps"] = jc.phonon->tau_p();
            extra["c_inf"] = jc.phonon->c_inf();
            extra["gamma_pd_per_ps"] = jc.phonon->gamma_pd();

            Result r;
            r.name = std::string(zpl_only ? "zpl_" : "full_") + method_name(method) + "_T" + tag(T);
            r.csv = s.to_csv();
            r.extra = std::move(extra);
            r.line = "spectrum method=" + std::string(method_name(method)) + " T=" + tag(T);
            results[i] = std::move(r);
        },
        cfg.workers);

    int rc = 0;
    for (const auto& o : outcomes) {
        if (!o.ok) {
            std::fprintf(stderr, "%s\n",
                         json({{"error", o.error}, {"job_index", o.index}}).dump().c_str());
            rc = 1;
            continue;
        }
        auto& r = results[o.index];
        write_artifact(cfg.out_dir + "/spectrum", r.name, r.csv, cfg, r.extra);
        std::printf("%s -> %s/spectrum/%s.csv\n", r.line.c_str(), cfg.out_dir.c_str(),
                    r.name.c_str());
    }
    return rc;
}

int cmd_g1(const SimulationConfig& cfg) {
    for (double T : cfg.temperatures) {
        const auto jc = make_job(cfg, T);
        for (Method method : cfg.methods) {
            const auto tgrid = TimeGrid::for_trace(*jc.phonon, jc.modes, cfg.fine_dt);
            const auto trace = g1_collective(tgrid, method, jc.modes, jc.phonon,
                                             method == Method::Polaron);
            json extra = {{"temperature_K", T},
                          {"method", method_name(method)},
                          {"tau_p_ps", jc.phonon->tau_p()},
                          {"g1_at_zero", trace.values[0].real()}};
            const std::string name = std::string("g1_") + method_name(method) + "_T" + tag(T);
            write_artifact(cfg.out_dir + "/g1", name, trace.to_csv(), cfg, extra);
            std::printf("g1 method=%s T=%s -> %s/g1/%s.csv\n", method_name(method).c_str(),
                        tag(T).c_str(), cfg.out_dir.c_str(), name.c_str());
        }
    }
    return 0;
}

int cmd_modes(const SimulationConfig& cfg) {
    for (double T : cfg.temperatures) {
        const auto jc = make_job(cfg, T);
        json extra = {{"temperature_K", T},
                      {"omega_col_uev", units::angular_to_uev(jc.matrices.omega_col)},
                      {"omega_col_polaron_uev",
                       units::angular_to_uev(jc.matrices.omega_col_polaron)},
                      {"c_inf", jc.phonon->c_inf()},
                      {"gamma_pd_per_ps", jc.phonon->gamma_pd()}};
        double ratio_cs = 0.0, ratio_pm = 0.0;
        if (cfg.n_emitters >= 2) {
            ratio_cs = enhancement_ratio(jc.modes, Method::Concatenation);
            ratio_pm = enhancement_ratio(jc.modes, Method::Polaron);
            extra["enhancement_ratio"] = ratio_cs;
            extra["enhancement_ratio_polaron"] = ratio_pm;
        }
        const std::string name = "modes_T" + tag(T);
        write_artifact(cfg.out_dir + "/modes", name, modes_to_csv(jc.modes), cfg, extra);
        if (cfg.n_emitters >= 2)
            std::printf("modes T=%s Gamma_max/Gamma_min=%.6g (polaron %.6g) -> %s/modes/%s.csv\n",
                        tag(T).c_str(), ratio_cs, ratio_pm, cfg.out_dir.c_str(), name.c_str());
        else
            std::printf("modes T=%s -> %s/modes/%s.csv\n", tag(T).c_str(), cfg.out_dir.c_str(),
                        name.c_str());
    }
    return 0;
}

int cmd_concurrence(const SimulationConfig& cfg, const std::string& dot_sizes_arg) {
    if (!dot_sizes_arg.empty()) {
        // Concurrence-at-tau_P table over (T, dot size).
        const std::vector<double> sizes = parse_temperature_list(dot_sizes_arg);
        const auto table = concurrence_at_tau_p(cfg.temperatures, sizes, cfg.alpha,
                                                cfg.sound_speed);
        json extra = {{"dot_sizes_nm", sizes}, {"quantity", "concurrence_at_tau_p"}};
        write_artifact(cfg.out_dir + "/concurrence", "at_tau_p", table.to_csv(), cfg, extra);
        std::printf("concurrence at tau_P table -> %s/concurrence/at_tau_p.csv\n",
                    cfg.out_dir.c_str());
        return 0;
    }

    if (cfg.n_emitters != 2)
        throw ConfigError("concurrence trajectories require n_emitters = 2");
    const auto rho0 = DensityMatrix::pure(cfg.two_qubit_vector());
    for (double T : cfg.temperatures) {
        const auto jc = make_job(cfg, T);
        const auto grid = TimeGrid::two_scale(0.05, std::max(5.0 * jc.phonon->tau_p(), 15.0),
                                              20000.0, 400);
        for (Method method : cfg.methods) {
            if (method == Method::InitialSlip) continue;
            const auto tr = concurrence_trajectory(rho0, method, *jc.phonon, jc.chain, grid);
            json extra = {{"temperature_K", T},
                          {"method", method_name(method)},
                          {"tau_p_ps", tr.tau_p},
                          {"initial_state", cfg.initial_state.name}};
            const std::string name =
                std::string("trajectory_") + method_name(method) + "_T" + tag(T);
            write_artifact(cfg.out_dir + "/concurrence", name, tr.to_csv(), cfg, extra);
            std::printf("concurrence method=%s T=%s -> %s/concurrence/%s.csv\n",
                        method_name(method).c_str(), tag(T).c_str(), cfg.out_dir.c_str(),
                        name.c_str());
        }
    }
    return 0;
}

int cmd_compare(const SimulationConfig& cfg, const std::string& spacings_arg) {
    std::vector<SpacingSpec> spacings;
    if (spacings_arg.empty()) {
        spacings.push_back(cfg.spacing);
    } else {
        std::string cur;
        std::istringstream in(spacings_arg);
        while (std::getline(in, cur, ',')) {
            const std::string text = "[chain]\nspacing = " + cur + "\n";
            spacings.push_back(parse_config(text).spacing);
        }
    }

    std::vector<std::string> cols{"T_K"};
    for (const auto& s : spacings)
        cols.push_back("delta_percent_" + (s.is_fraction
                                               ? "lambda_over_" + float17(s.value)
                                               : float17(s.value) + "_nm"));
    CsvWriter csv(cols);

    std::vector<std::vector<double>> rows(cfg.temperatures.size());
    auto outcomes = run_indexed(
        cfg.temperatures.size(),
        [&](std::size_t i) {
            const double T = cfg.temperatures[i];
            SimulationConfig local = cfg;
            local.n_emitters = 2;
            std::vector<double> row{T};
            for (const auto& s : spacings) {
                local.spacing = s;
                const auto jc = make_job(local, T);
                row.push_back(delta_metric(jc.chain, *jc.phonon).delta_percent);
            }
            rows[i] = std::move(row);
        },
        cfg.workers);

    int rc = 0;
    for (const auto& o : outcomes) {
        if (!o.ok) {
            std::fprintf(stderr, "%s\n",
                         json({{"error", o.error}, {"T", cfg.temperatures[o.index]}}).dump().c_str());
            rc = 1;
        } else {
            csv.add_row(rows[o.index]);
        }
    }
    json extra = {{"quantity", "delta_percent"}, {"n_spacings", spacings.size()}};
    write_artifact(cfg.out_dir + "/compare", "delta_vs_T", csv.text(), cfg, extra);
    std::printf("compare Delta(T) over %zu spacing(s) -> %s/compare/delta_vs_T.csv\n",
                spacings.size(), cfg.out_dir.c_str());
    return rc;
}

int cmd_intensity(const SimulationConfig& cfg) {
    if (cfg.n_emitters < 2) throw ConfigError("intensity requires n_emitters >= 2");
    for (double T : cfg.temperatures) {
        const auto jc = make_job(cfg, T);
        TimeGrid grid;
        for (double t = 0.0; t <= 4000.0; t += 10.0) grid.times.push_back(t);
        for (Method method : cfg.methods) {
            if (method != Method::Concatenation && method != Method::Polaron) continue;
            const auto intensity = integrated_intensity(grid, jc.modes, method);
            CsvWriter csv({"t_ps", "intensity"});
            for (std::size_t i = 0; i < grid.times.size(); ++i)
                csv.add_row({grid.times[i], intensity[i]});
            const auto fit = fit_biexponential(grid.times, intensity);
            json extra = {{"temperature_K", T},
                          {"method", method_name(method)},
                          {"rate_fast_ghz", units::rate_to_ghz(fit.rate_fast)},
                          {"rate_slow_ghz", units::rate_to_ghz(fit.rate_slow)},
                          {"amp_fast", fit.amp_fast},
                          {"amp_slow", fit.amp_slow},
                          {"fit_max_residual", fit.max_residual}};
            const std::string name =
                std::string("intensity_") + method_name(method) + "_T" + tag(T);
            write_artifact(cfg.out_dir + "/intensity", name, csv.text(), cfg, extra);
            std::printf(
                "intensity method=%s T=%s rates=(%.4g, %.4g) GHz -> %s/intensity/%s.csv\n",
                method_name(method).c_str(), tag(T).c_str(), units::rate_to_ghz(fit.rate_fast),
                units::rate_to_ghz(fit.rate_slow), cfg.out_dir.c_str(), name.c_str());
        }
    }
    return 0;
}

int cmd_sweep(const SimulationConfig& cfg, const std::string& axis, const std::string& values_arg,
              const std::string& quantity) {
    const std::vector<double> values = parse_temperature_list(values_arg);
    if (values.empty()) throw ConfigError("sweep: --values is required");

    auto evaluate = [&](double v) -> double {
        SimulationConfig local = cfg;
        double T = local.temperatures.front();
        if (axis == "T") T = v;
        else if (axis == "spacing") local.spacing = SpacingSpec{false, v};
        else if (axis == "N") local.n_emitters = static_cast<int>(v);
        else if (axis == "dot_size") local.dot_size = v;
        else throw ConfigError("sweep: unknown axis '" + axis + "'");

        if (quantity == "zpl_fraction") {
            const auto jc = make_job(local, T);
            const auto tgrid = TimeGrid::for_trace(*jc.phonon, jc.modes, local.fine_dt);
            const auto trace = g1_collective(tgrid, Method::Concatenation, jc.modes, jc.phonon);
            const auto grid = FrequencyGrid::for_modes(jc.modes, Method::Concatenation);
            return zpl_fraction(full_spectrum(trace, grid), jc.modes, Method::Concatenation);
        }
        if (quantity == "enhancement") {
            const auto jc = make_job(local, T);
            return enhancement_ratio(jc.modes, Method::Concatenation);
        }
        if (quantity == "delta") {
            local.n_emitters = 2;
            const auto jc = make_job(local, T);
            return delta_metric(jc.chain, *jc.phonon).delta_percent;
        }
        if (quantity == "concurrence_tau_p") {
            PhononBathParams bath = local.bath(T);
            const double ci = franck_condon(bath);
            return ci * ci;
        }
        throw ConfigError("sweep: unknown quantity '" + quantity + "'");
    };

    std::vector<double> results(values.size());
    const auto outcomes = run_indexed(
        values.size(), [&](std::size_t i) { results[i] = evaluate(values[i]); }, cfg.workers);

    CsvWriter csv({axis == "T" ? "T_K" : axis, quantity});
    json failures = json::array();
    for (const auto& o : outcomes) {
        if (o.ok) csv.add_row({values[o.index], results[o.index]});
        else failures.push_back({{"value", values[o.index]}, {"error", o.error}});
    }
    json extra = {{"axis", axis}, {"quantity", quantity}, {"n_points", values.size()}};
    if (!failures.empty()) extra["failed_points"] = failures;
    const std::string name = "sweep_" + axis + "_" + quantity;
    write_artifact(cfg.out_dir + "/sweep", name, csv.text(), cfg, extra);
    std::printf("sweep %s over %zu point(s) -> %s/sweep/%s.csv%s\n", quantity.c_str(),
                values.size(), cfg.out_dir.c_str(), name.c_str(),
                failures.empty() ? "" : " (with failures, see sidecar)");
    return failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"collective photon emission with phonon environments"};
    app.require_subcommand(1);

    CommonOpts opt;
    bool zpl_only = false;
    std::string dot_sizes, spacings, axis, values, quantity = "zpl_fraction";

    auto* spectrum = app.add_subcommand("spectrum", "emission spectra (ZPL + sidebands)");
    add_common(spectrum, opt);
    spectrum->add_flag("--zpl-only", zpl_only, "analytic ZPL Lorentzians only");

    auto* g1 = app.add_subcommand("g1", "first-order correlation traces");
    add_common(g1, opt);

    auto* modes = app.add_subcommand("modes", "collective mode tables");
    add_common(modes, opt);

    auto* concurrence = app.add_subcommand("concurrence", "two-qubit concurrence dynamics");
    add_common(concurrence, opt);
    concurrence->add_option("--dot-sizes", dot_sizes,
                            "emit the concurrence-at-tau_P table for these dot sizes (nm)");

    auto* compare = app.add_subcommand("compare", "concatenation vs polaron Delta(T)");
    add_common(compare, opt);
    compare->add_option("--spacings", spacings, "comma list of spacings (nm or lambda/<x>)");

    auto* intensity = app.add_subcommand("intensity", "integrated intensity + biexponential fit");
    add_common(intensity, opt);

    auto* sweep = app.add_subcommand("sweep", "parameter sweep of a scalar quantity");
    add_common(sweep, opt);
    sweep->add_option("--axis", axis, "T, spacing, N or dot_size")->required();
    sweep->add_option("--values", values, "axis values: list and a..b[:step] ranges")->required();
    sweep->add_option("--quantity", quantity,
                      "zpl_fraction, enhancement, delta or concurrence_tau_p");

    CLI11_PARSE(app, argc, argv);

    try {
        const auto cfg = load_config(opt);
        if (spectrum->parsed()) return cmd_spectrum(cfg, zpl_only);
        if (g1->parsed()) return cmd_g1(cfg);
        if (modes->parsed()) return cmd_modes(cfg);
        if (concurrence->parsed()) return cmd_concurrence(cfg, dot_sizes);
        if (compare->parsed()) return cmd_compare(cfg, spacings);
        if (intensity->parsed()) return cmd_intensity(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg, axis, values, quantity);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", json({{"error", e.what()}}).dump().c_str());
        return 1;
    }
    return 0;
}
