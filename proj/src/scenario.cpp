#include "djcm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "djcm/djcm_evolution.hpp"
#include "djcm/oracle.hpp"

namespace djcm {

using nlohmann::json;

void ScenarioConfig::validate() const {
    params_a.validate();
    params_b.validate();
    if (!(r >= 0.0 && r <= 1.0)) {
        throw PreconditionError("scenario: r must lie in [0, 1], got " + std::to_string(r));
    }
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw PreconditionError("scenario: t_max must be > 0, got " + std::to_string(t_max));
    }
    if (samples < 2) throw PreconditionError("scenario: samples must be >= 2");
    if (targets.empty()) throw PreconditionError("scenario: at least one target is required");
}

ScenarioConfig ScenarioConfig::normalized() const {
    ScenarioConfig out = *this;
    const double unit = params_a.gamma0;
    if (!(unit > 0.0)) return out;  // validate() reports it
    for (auto* p : {&out.params_a, &out.params_b}) {
        p->omega0 /= unit;
        p->Omega /= unit;
        p->gamma0 /= unit;
        p->lambda /= unit;
    }
    return out;
}

std::vector<double> ScenarioConfig::time_grid() const {
    std::vector<double> grid(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) grid[static_cast<std::size_t>(k)] = t_max * k / (samples - 1);
    return grid;
}

ScenarioConfig make_scenario(double Omega, double lambda, double r, double t_max, int samples) {
    ScenarioConfig cfg;
    cfg.params_a = JcmParams{0.0, Omega, 1.0, lambda};
    cfg.params_b = cfg.params_a;
    cfg.r = r;
    cfg.t_max = t_max;
    cfg.samples = samples;
    return cfg;
}

const std::vector<FigurePreset>& figure_presets() {
    static const std::vector<double> sweep = {0.0, 0.2, 0.38, 0.5703, 0.8, 1.0};
    static const std::vector<FigurePreset> presets = {
        {"fig2a", make_scenario(1.0, 5.0, 1.0, 15.0), {}},
        {"fig2b", make_scenario(3.0, 5.0, 1.0, 15.0), {}},
        {"fig2c", make_scenario(50.0, 5.0, 1.0, 30.0), {}},
        {"fig3a", make_scenario(1.0, 1.0, 1.0, 40.0), {}},
        {"fig3b", make_scenario(1.0, 0.5, 1.0, 15.0), {}},
        {"fig3c", make_scenario(1.0, 0.05, 1.0, 400.0), {}},
        {"fig4", make_scenario(50.0, 5.0, 1.0, 30.0), sweep},
        {"fig5", make_scenario(1.0, 0.05, 1.0, 400.0), sweep},
    };
    return presets;
}

std::string preset_names() {
    std::string names;
    for (const auto& p : figure_presets()) {
        if (!names.empty()) names += ", ";
        names += p.name;
    }
    return names;
}

const FigurePreset& find_preset(std::string_view name) {
    for (const auto& p : figure_presets())
        if (p.name == name) return p;
    throw PreconditionError("unknown preset '" + std::string(name) + "'; valid names: " + preset_names());
}

std::vector<double> ConcurrenceTrajectory::series(ReductionTarget target) const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& rec : records) out.push_back(rec.values.at(target));
    return out;
}

DjcmState evolve_state(const ScenarioConfig& cfg, double t) {
    return propagate_pair(initial_state(cfg.r), cfg.params_a, cfg.params_b, t);
}

ConcurrenceTrajectory evolve(const ScenarioConfig& cfg) {
    cfg.validate();
    const auto r0 = initial_state(cfg.r);
    ConcurrenceTrajectory traj;
    traj.targets = cfg.targets;
    for (double t : cfg.time_grid()) {
        const auto state = propagate_pair(r0, cfg.params_a, cfg.params_b, t);
        ConcurrenceRecord rec;
        rec.t = t;
        for (auto target : cfg.targets) rec.values[target] = concurrence(reduce(state, target));
        traj.records.push_back(std::move(rec));
    }
    return traj;
}

namespace {

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// Canonical column order, independent of the order targets were requested in.
std::vector<ReductionTarget> ordered(const std::vector<ReductionTarget>& targets) {
    std::vector<ReductionTarget> out;
    for (auto t : kAllTargets)
        if (std::find(targets.begin(), targets.end(), t) != targets.end()) out.push_back(t);
    return out;
}

json params_json(const JcmParams& p) {
    return {{"omega0", p.omega0}, {"Omega", p.Omega}, {"gamma0", p.gamma0}, {"lambda", p.lambda}};
}

JcmParams params_from_json(const json& j, JcmParams base) {
    if (!j.is_object()) throw PreconditionError("scenario file: params must be an object");
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number()) throw PreconditionError("scenario file: params." + key + " must be a number");
        if (key == "omega0") base.omega0 = value.get<double>();
        else if (key == "Omega") base.Omega = value.get<double>();
        else if (key == "gamma0") base.gamma0 = value.get<double>();
        else if (key == "lambda") base.lambda = value.get<double>();
        else throw PreconditionError("scenario file: unknown params key '" + key + "'");
    }
    return base;
}

}  // namespace

std::string csv_header(const std::vector<ReductionTarget>& targets) {
    std::string header = "gamma0_t";
    for (auto t : ordered(targets)) header += ",C_" + std::string(target_name(t));
    return header;
}

void write_csv(std::ostream& out, const ConcurrenceTrajectory& traj) {
    const auto columns = ordered(traj.targets);
    out << csv_header(columns) << '\n';
    for (const auto& rec : traj.records) {
        out << format_number(rec.t);
        for (auto t : columns) out << ',' << format_number(rec.values.at(t));
        out << '\n';
    }
}

void write_json(std::ostream& out, const ScenarioConfig& cfg, const ConcurrenceTrajectory& traj) {
    const auto columns = ordered(traj.targets);
    json rows = json::array();
    for (const auto& rec : traj.records) {
        json row = {{"gamma0_t", rec.t}};
        for (auto t : columns) row["C_" + std::string(target_name(t))] = rec.values.at(t);
        rows.push_back(std::move(row));
    }
    json doc = {{"params_a", params_json(cfg.params_a)},
                {"params_b", params_json(cfg.params_b)},
                {"r", cfg.r},
                {"t_max", cfg.t_max},
                {"samples", cfg.samples},
                {"rows", std::move(rows)}};
    out << doc.dump(2) << '\n';
}

ScenarioConfig scenario_from_json_text(const std::string& text, ScenarioConfig base) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw PreconditionError(std::string("scenario file: ") + e.what());
    }
    if (!doc.is_object()) throw PreconditionError("scenario file: top level must be an object");
    bool b_given = false;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "params_a") {
                base.params_a = params_from_json(value, base.params_a);
            } else if (key == "params_b") {
                base.params_b = params_from_json(value, base.params_b);
                b_given = true;
            } else if (key == "r") {
                base.r = value.get<double>();
            } else if (key == "t_max") {
                base.t_max = value.get<double>();
            } else if (key == "samples") {
                base.samples = value.get<int>();
            } else if (key == "targets") {
                base.targets.clear();
                for (const auto& name : value) base.targets.push_back(parse_target(name.get<std::string>()));
            } else if (key == "format") {
                const auto f = value.get<std::string>();
                if (f == "csv") base.format = OutputFormat::csv;
                else if (f == "json") base.format = OutputFormat::json;
                else throw PreconditionError("scenario file: format must be csv or json");
            } else {
                throw PreconditionError("scenario file: unknown key '" + key + "'");
            }
        }
    } catch (const json::type_error& e) {
        throw PreconditionError(std::string("scenario file: ") + e.what());
    }
    if (!b_given && doc.contains("params_a")) base.params_b = base.params_a;
    return base;
}

ScenarioConfig load_scenario(const std::string& path, ScenarioConfig base) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open scenario file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return scenario_from_json_text(text.str(), std::move(base));
}

std::string gnuplot_snippet(const std::string& csv_path, const std::vector<ReductionTarget>& targets) {
    const auto columns = ordered(targets);
    std::ostringstream s;
    s << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set xlabel 'gamma0 t'\n"
      << "set ylabel 'concurrence'\n"
      << "set yrange [0:1.05]\n"
      << "plot ";
    for (std::size_t k = 0; k < columns.size(); ++k) {
        if (k) s << ", \\\n     ";
        s << "'" << csv_path << "' using 1:" << k + 2 << " with lines";
    }
    s << '\n';
    return s.str();
}

namespace {

DressedState3 validation_single_state() {
    // Pure state with every coherence populated.
    const std::array<Complex, 3> psi = {Complex(0.6, 0.0), Complex(0.0, 0.48), Complex(0.64, 0.0)};
    return DressedState3(ComplexMatrix::outer(psi));
}

}  // namespace

ValidationReport validate_scenario(const ScenarioConfig& cfg, const ValidationThresholds& thresholds) {
    cfg.validate();
    if (thresholds.refine < 1) throw PreconditionError("validation: refine must be >= 1");
    ValidationReport report;

    const double spacing = cfg.t_max / (cfg.samples - 1);
    const double bound = std::min(oracle::max_step(cfg.params_a), oracle::max_step(cfg.params_b));
    const int substeps = thresholds.refine * static_cast<int>(std::ceil(spacing / bound * (1.0 - 1e-12)));
    oracle::IntegratorConfig icfg{spacing / substeps, cfg.t_max, substeps};

    const auto single0 = validation_single_state();
    for (const auto* p : {&cfg.params_a, &cfg.params_b}) {
        const auto traj = oracle::integrate_single(single0, *p, icfg);
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            const auto exact = propagate_single(single0, *p, traj.times[k]);
            report.max_dev_single = std::max(report.max_dev_single, max_abs_diff(traj.states[k], exact.matrix()));
        }
    }

    const auto r0 = initial_state(cfg.r);
    const auto traj = oracle::integrate_pair(r0, cfg.params_a, cfg.params_b, icfg);
    report.min_eigenvalue = 1.0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const auto exact = propagate_pair(r0, cfg.params_a, cfg.params_b, traj.times[k]);
        report.max_dev_pair = std::max(report.max_dev_pair, max_abs_diff(traj.states[k], exact.matrix()));
        report.min_eigenvalue = std::min(report.min_eigenvalue, positivity(exact.matrix()).min_eigenvalue);
    }

    const double rate_horizon = std::min(cfg.t_max, 10.0);
    constexpr int kRateSamples = 201;
    for (const auto* p : {&cfg.params_a, &cfg.params_b}) {
        for (int k = 0; k < kRateSamples; ++k) {
            const double t = rate_horizon * k / (kRateSamples - 1);
            const double minus = oracle::rate_from_spectral_density(*p, p->omega0 - p->Omega, t);
            const double plus = oracle::rate_from_spectral_density(*p, p->omega0 + p->Omega, t);
            report.max_dev_rate_minus = std::max(report.max_dev_rate_minus, std::abs(minus - decay_rate_minus(*p, t)));
            report.max_dev_rate_plus = std::max(report.max_dev_rate_plus, std::abs(plus - decay_rate_plus(*p, t)));
        }
        report.min_I_plus = std::min(report.min_I_plus, min_I_plus(*p, cfg.t_max, cfg.samples));
    }

    report.propagator_pass = report.max_dev_single < thresholds.propagator &&
                             report.max_dev_pair < thresholds.propagator;
    report.rates_pass = report.max_dev_rate_minus < thresholds.rates &&
                        report.max_dev_rate_plus < thresholds.rates;
    report.positivity_pass = report.min_eigenvalue >= thresholds.min_eigenvalue;
    return report;
}

void write_validation_json(std::ostream& out, const ScenarioConfig& cfg,
                           const ValidationThresholds& thresholds, const ValidationReport& report) {
    json doc = {
        {"params_a", params_json(cfg.params_a)},
        {"params_b", params_json(cfg.params_b)},
        {"r", cfg.r},
        {"t_max", cfg.t_max},
        {"samples", cfg.samples},
        {"max_deviation_single", report.max_dev_single},
        {"max_deviation_pair", report.max_dev_pair},
        {"max_deviation_rate_minus", report.max_dev_rate_minus},
        {"max_deviation_rate_plus", report.max_dev_rate_plus},
        {"min_eigenvalue", report.min_eigenvalue},
        {"min_I_plus", report.min_I_plus},
        {"thresholds",
         {{"propagator", thresholds.propagator},
          {"rates", thresholds.rates},
          {"min_eigenvalue", thresholds.min_eigenvalue}}},
        {"propagator_pass", report.propagator_pass},
        {"rates_pass", report.rates_pass},
        {"positivity_pass", report.positivity_pass},
        {"pass", report.pass()},
    };
    out << doc.dump(2) << '\n';
}

}  // namespace djcm
