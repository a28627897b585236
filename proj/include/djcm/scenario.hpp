#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "djcm/entanglement.hpp"
#include "djcm/jcm_propagator.hpp"
#include "djcm/states.hpp"

namespace djcm {

enum class OutputFormat { csv, json };

/// A single run: two partitions, an initial purity, and a uniform grid in
/// gamma0 * t. Parameters are in units of gamma0 after normalized().
struct ScenarioConfig {
    JcmParams params_a;
    JcmParams params_b;
    double r = 1.0;
    double t_max = 15.0;
    int samples = 1501;
    std::vector<ReductionTarget> targets{kAllTargets.begin(), kAllTargets.end()};
    OutputFormat format = OutputFormat::csv;

    void validate() const;
    /// Rescales both partitions so that partition A has gamma0 = 1.
    ScenarioConfig normalized() const;
    std::vector<double> time_grid() const;
};

/// Identical partitions with the given coupling and width, gamma0 = 1.
ScenarioConfig make_scenario(double Omega, double lambda, double r, double t_max, int samples = 1501);

struct FigurePreset {
    std::string name;
    ScenarioConfig config;
    /// Purity values for the r-sweep figures; empty for single runs.
    std::vector<double> r_sweep;
};

const std::vector<FigurePreset>& figure_presets();
/// Throws PreconditionError listing the valid names.
const FigurePreset& find_preset(std::string_view name);
std::string preset_names();

/// Concurrence of every requested pair along the time grid.
struct ConcurrenceTrajectory {
    std::vector<ReductionTarget> targets;
    std::vector<ConcurrenceRecord> records;

    /// Column of one target over the grid.
    std::vector<double> series(ReductionTarget target) const;
};

ConcurrenceTrajectory evolve(const ScenarioConfig& cfg);

/// State at time t from the closed-form propagator.
DjcmState evolve_state(const ScenarioConfig& cfg, double t);

std::string csv_header(const std::vector<ReductionTarget>& targets);
void write_csv(std::ostream& out, const ConcurrenceTrajectory& traj);
void write_json(std::ostream& out, const ScenarioConfig& cfg, const ConcurrenceTrajectory& traj);

/// Reads a JSON scenario file; keys mirror ScenarioConfig field names.
ScenarioConfig load_scenario(const std::string& path, ScenarioConfig base = {});
ScenarioConfig scenario_from_json_text(const std::string& text, ScenarioConfig base = {});

std::string gnuplot_snippet(const std::string& csv_path, const std::vector<ReductionTarget>& targets);

struct ValidationThresholds {
    double propagator = 1e-6;
    double rates = 1e-8;
    double min_eigenvalue = -1e-8;
    /// RK4 steps per resolution bound; 1 uses the coarsest allowed step.
    int refine = 2;
};

struct ValidationReport {
    double max_dev_single = 0.0;
    double max_dev_pair = 0.0;
    double max_dev_rate_minus = 0.0;
    double max_dev_rate_plus = 0.0;
    double min_eigenvalue = 0.0;
    double min_I_plus = 0.0;
    bool propagator_pass = false;
    bool rates_pass = false;
    bool positivity_pass = false;

    bool pass() const { return propagator_pass && rates_pass && positivity_pass; }
};

/// Runs the RK4 and quadrature oracles against the closed forms on the
/// scenario's grid.
ValidationReport validate_scenario(const ScenarioConfig& cfg, const ValidationThresholds& thresholds = {});

void write_validation_json(std::ostream& out, const ScenarioConfig& cfg,
                           const ValidationThresholds& thresholds, const ValidationReport& report);

}  // namespace djcm
