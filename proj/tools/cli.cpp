#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "djcm/entanglement.hpp"
#include "djcm/scenario.hpp"

namespace djcm::cli {

namespace {

// Flags shared by `evolve` and `validate`; each one overrides the base
// scenario only when given.
struct ScenarioFlags {
    std::string config_path;
    double omega = 0.0, lambda = 0.0, r = 0.0, t_max = 0.0, omega0 = 0.0;
    double omega_b = 0.0, lambda_b = 0.0;
    int samples = 0;
    std::vector<std::string> targets;
    std::string format;

    CLI::Option* o_omega = nullptr;
    CLI::Option* o_lambda = nullptr;
    CLI::Option* o_r = nullptr;
    CLI::Option* o_tmax = nullptr;
    CLI::Option* o_omega0 = nullptr;
    CLI::Option* o_omega_b = nullptr;
    CLI::Option* o_lambda_b = nullptr;
    CLI::Option* o_samples = nullptr;
    CLI::Option* o_targets = nullptr;
    CLI::Option* o_format = nullptr;

    void attach(CLI::App& app) {
        app.add_option("--config", config_path, "JSON scenario file; flags override its values");
        o_omega = app.add_option("--omega", omega, "atom-cavity coupling Omega / gamma0");
        o_lambda = app.add_option("--lambda", lambda, "reservoir width lambda / gamma0");
        o_r = app.add_option("--r", r, "initial purity r in [0, 1]");
        o_tmax = app.add_option("--tmax", t_max, "end of the grid in gamma0 t");
        o_samples = app.add_option("--samples", samples, "number of grid points (>= 2)");
        o_omega0 = app.add_option("--omega0", omega0, "atomic frequency omega0 / gamma0");
        o_omega_b = app.add_option("--omega-b", omega_b, "Omega / gamma0 of partition B (default: same as A)");
        o_lambda_b = app.add_option("--lambda-b", lambda_b, "lambda / gamma0 of partition B (default: same as A)");
        o_targets = app.add_option("--targets", targets, "subset of AB,ab,Aa,Bb,Ab,aB")->delimiter(',');
        o_format = app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    }

    ScenarioConfig apply(ScenarioConfig cfg) const {
        if (!config_path.empty()) cfg = load_scenario(config_path, cfg).normalized();
        if (o_omega->count()) cfg.params_a.Omega = cfg.params_b.Omega = omega;
        if (o_lambda->count()) cfg.params_a.lambda = cfg.params_b.lambda = lambda;
        if (o_omega0->count()) cfg.params_a.omega0 = cfg.params_b.omega0 = omega0;
        if (o_omega_b->count()) cfg.params_b.Omega = omega_b;
        if (o_lambda_b->count()) cfg.params_b.lambda = lambda_b;
        if (o_r->count()) cfg.r = r;
        if (o_tmax->count()) cfg.t_max = t_max;
        if (o_samples->count()) cfg.samples = samples;
        if (o_targets->count()) {
            cfg.targets.clear();
            for (const auto& name : targets) cfg.targets.push_back(parse_target(name));
        }
        if (o_format->count()) cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
        cfg.validate();
        return cfg;
    }
};

void emit(const ScenarioConfig& cfg, std::ostream& out) {
    const auto traj = evolve(cfg);
    if (cfg.format == OutputFormat::json) write_json(out, cfg, traj);
    else write_csv(out, traj);
}

void write_file(const std::filesystem::path& path, const ScenarioConfig& cfg) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw PreconditionError("cannot write '" + path.string() + "'");
    emit(cfg, file);
}

std::string r_label(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", r);
    return buf;
}

nlohmann::json matrix_json(const ComplexMatrix& m) {
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j).real());
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Double Jaynes-Cummings model in non-Markovian reservoirs", "djcm"};
    app.require_subcommand(1);

    // evolve
    auto* evolve_cmd = app.add_subcommand("evolve", "concurrence trajectories from the closed-form propagator");
    ScenarioFlags evolve_flags;
    evolve_flags.attach(*evolve_cmd);
    std::string evolve_out;
    bool evolve_gnuplot = false;
    evolve_cmd->add_option("--out", evolve_out, "output file (default: stdout)");
    evolve_cmd->add_flag("--gnuplot-snippet", evolve_gnuplot, "print a gnuplot script for the output instead");

    // figure
    auto* figure_cmd = app.add_subcommand("figure", "run a named figure preset");
    std::string figure_name, figure_outdir;
    int figure_samples = 0;
    bool figure_gnuplot = false;
    figure_cmd->add_option("name", figure_name, "preset name")->required();
    figure_cmd->add_option("--outdir", figure_outdir, "directory for CSV files (r sweeps default to .)");
    auto* o_fig_samples = figure_cmd->add_option("--samples", figure_samples, "override the grid size");
    figure_cmd->add_flag("--gnuplot-snippet", figure_gnuplot, "print a gnuplot script for the output instead");

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "compare the closed forms against the RK4 and quadrature oracles");
    ScenarioFlags validate_flags;
    validate_flags.attach(*validate_cmd);
    std::string validate_preset = "fig2a";
    ValidationThresholds thresholds;
    validate_cmd->add_option("--preset", validate_preset, "base preset (default fig2a)");
    validate_cmd->add_option("--tolerance", thresholds.propagator, "propagator deviation threshold");
    validate_cmd->add_option("--refine", thresholds.refine, "RK4 steps per resolution bound")
        ->check(CLI::PositiveNumber);

    // steady
    auto* steady_cmd = app.add_subcommand("steady", "quasi-steady pair states and their concurrence");
    double steady_r = 1.0;
    std::string steady_which = "nonlocal";
    steady_cmd->add_option("--r", steady_r, "initial purity r in [0, 1]");
    steady_cmd->add_option("--which", steady_which, "local (Aa, Bb) or nonlocal (AB, ab, Ab, aB)")
        ->check(CLI::IsMember({"local", "nonlocal"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitBadInput;
    }

    try {
        if (evolve_cmd->parsed()) {
            const auto cfg = evolve_flags.apply(make_scenario(1.0, 5.0, 1.0, 15.0));
            if (evolve_gnuplot) {
                out << gnuplot_snippet(evolve_out.empty() ? "djcm.csv" : evolve_out, cfg.targets);
            } else if (evolve_out.empty()) {
                emit(cfg, out);
            } else {
                write_file(evolve_out, cfg);
            }
            return kExitOk;
        }

        if (figure_cmd->parsed()) {
            const auto& preset = find_preset(figure_name);
            auto cfg = preset.config;
            if (o_fig_samples->count()) cfg.samples = figure_samples;
            cfg.validate();
            if (preset.r_sweep.empty()) {
                const auto path = figure_outdir.empty()
                                      ? std::filesystem::path{}
                                      : std::filesystem::path(figure_outdir) / (preset.name + ".csv");
                if (figure_gnuplot) {
                    out << gnuplot_snippet(path.empty() ? preset.name + ".csv" : path.string(), cfg.targets);
                } else if (path.empty()) {
                    emit(cfg, out);
                } else {
                    std::filesystem::create_directories(figure_outdir);
                    write_file(path, cfg);
                }
                return kExitOk;
            }
            const std::filesystem::path dir = figure_outdir.empty() ? "." : figure_outdir;
            if (!figure_gnuplot) std::filesystem::create_directories(dir);
            for (double r : preset.r_sweep) {
                auto point = cfg;
                point.r = r;
                const auto path = dir / (preset.name + "_r" + r_label(r) + ".csv");
                if (figure_gnuplot) {
                    out << "# r = " << r_label(r) << '\n' << gnuplot_snippet(path.string(), point.targets);
                } else {
                    write_file(path, point);
                    out << path.string() << '\n';
                }
            }
            return kExitOk;
        }

        if (validate_cmd->parsed()) {
            const auto cfg = validate_flags.apply(find_preset(validate_preset).config);
            const auto report = validate_scenario(cfg, thresholds);
            write_validation_json(out, cfg, thresholds, report);
            return report.pass() ? kExitOk : kExitValidationFailed;
        }

        if (steady_cmd->parsed()) {
            nlohmann::json doc;
            doc["which"] = steady_which;
            if (steady_which == "local") {
                const auto state = steady_pair_local();
                doc["pairs"] = {"Aa", "Bb"};
                doc["matrix"] = matrix_json(state.matrix());
                doc["concurrence"] = concurrence(state);
            } else {
                const auto state = steady_pair_nonlocal(steady_r);
                doc["r"] = steady_r;
                doc["pairs"] = {"AB", "ab", "Ab", "aB"};
                doc["matrix"] = matrix_json(state.matrix());
                doc["concurrence"] = concurrence(state);
                doc["threshold_r"] = kSteadyThreshold;
            }
            doc["basis"] = {"11", "10", "01", "00"};
            out << doc.dump(2) << '\n';
            return kExitOk;
        }
    } catch (const PreconditionError& e) {
        err << "djcm: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        err << "djcm: " << e.what() << '\n';
        return kExitValidationFailed;
    }
    return kExitBadInput;
}

}  // namespace djcm::cli
