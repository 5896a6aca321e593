// scenario.hpp — declarative scenario runner: sectioned key-value configs,
// figure presets, solver dispatch (closed-form / numeric / both), CSV time
// series and JSON run records.

#pragma once

#include "trispin/integrator.hpp"
#include "trispin/model.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace trispin {

enum class SolverChoice { analytic, numeric, both };

struct Scenario {
    std::string name = "scenario";
    NoiseModel noise;
    CoherentModel coherent;
    std::string init = "duu";  // product string, W0/Wp/Wm, V0/Vp/Vm, up3/down3
    SolverChoice solver = SolverChoice::numeric;
    double alpha = 0.0;
    double t_max = 20.0;
    double dt = 0.0;  // 0 -> resolution-bound default
    int sample_count = 400;

    struct Sweep {
        std::string param;
        std::vector<double> values;
    };
    std::optional<Sweep> sweep;
};

struct RunRecord {
    std::string scenario_name;
    std::string solver;
    std::string started;
    std::string finished;
    bool trace_gate = true;
    bool positivity_gate = true;
    std::optional<double> oracle_dev;  // solver = both only
    std::vector<std::string> outputs;

    bool passed() const { return trace_gate && positivity_gate; }
};

// Numeric literals in configs and sweep values: plain floats, "inf", and
// pi expressions ("pi", "-pi/3", "2pi/3", "0.5pi").
double parse_value(const std::string& text);

// Parses and validates a sectioned key-value config. Unknown sections/keys,
// malformed values, or an invalid init throw std::invalid_argument; a
// CP-violating noise model throws std::domain_error.
Scenario parse_scenario(const std::string& path);
Scenario parse_scenario_stream(std::istream& in, const std::string& name);

// 8-dim Pauli-basis state vector for an init token.
Vector parse_init(const std::string& token);

// Applies a named sweep parameter; throws std::invalid_argument on unknown names.
void set_parameter(Scenario& s, const std::string& param, double value);

// Expands the embedded sweep (if any) into per-value children.
std::vector<Scenario> expand_sweep(const Scenario& s);

// Parameter sets of the reference plots: fig2a fig2b fig2c fig2d fig3b fig3d
// s1a s1b s2 s3. Unknown names throw std::invalid_argument.
std::vector<Scenario> figure_preset(const std::string& name);

// Runs one scenario, writing <name>.csv (+ <name>.json sidecar) under out_dir.
RunRecord run_scenario(const Scenario& s, const std::string& out_dir);

// Runs a batch concurrently (each worker owns its scenario); records are
// returned in input order regardless of completion order.
std::vector<RunRecord> run_scenarios(const std::vector<Scenario>& batch,
                                     const std::string& out_dir, int workers);

// Evaluates the scenario's trajectory without touching the filesystem.
TimeSeries solve_numeric(const Scenario& s);
TimeSeries solve_analytic(const Scenario& s);

std::string timeseries_csv(const TimeSeries& series);

}  // namespace trispin
