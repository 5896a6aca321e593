#include "trispin/scenario.hpp"

#include "trispin/analytic_solver.hpp"
#include "trispin/chiral_basis.hpp"
#include "trispin/entanglement.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace trispin {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string iso_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string format_g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

const char* solver_name(SolverChoice s) {
    switch (s) {
        case SolverChoice::analytic: return "analytic";
        case SolverChoice::numeric: return "numeric";
        default: return "both";
    }
}

// Identifies which closed-form class an init state belongs to by its support
// in the eigenbasis; throws when the state straddles S^z sectors.
enum class InitClass { top, half, minus_half, lowest };

InitClass classify_init(const Matrix& rho_eigen) {
    Matrix cross = rho_eigen;  // anything outside the sector block-diagonal
    cross(0, 0) = 0.0;
    cross(7, 7) = 0.0;
    cross.block(1, 1, 3, 3).setZero();
    cross.block(4, 4, 3, 3).setZero();
    const double tol = 1e-12;
    if (max_abs(cross) > tol)
        throw std::invalid_argument(
            "analytic solver requires a sector-block-diagonal initialization; "
            "use solver=numeric");
    const double w_top = rho_eigen(0, 0).real();
    const double w_half = rho_eigen.block(1, 1, 3, 3).trace().real();
    const double w_minus = rho_eigen.block(4, 4, 3, 3).trace().real();
    const double w_bottom = rho_eigen(7, 7).real();
    if (w_half > tol && w_minus < tol && w_bottom < tol) return InitClass::half;
    if (w_minus > tol && w_half < tol && w_bottom < tol) return InitClass::minus_half;
    if (w_bottom > tol && w_half < tol && w_minus < tol) return InitClass::lowest;
    if (w_top > 1.0 - tol) return InitClass::top;
    throw std::invalid_argument(
        "analytic solver covers single-sector initializations only; use solver=numeric");
}

}  // namespace

double parse_value(const std::string& text) {
    const std::string s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty numeric value");
    if (s == "inf" || s == "+inf" || s == "infinity")
        return std::numeric_limits<double>::infinity();

    const auto pi_pos = s.find("pi");
    if (pi_pos == std::string::npos) {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("malformed number: " + s);
        return v;
    }
    // [coeff] pi [/ divisor]
    double coeff = 1.0;
    std::string head = trim(s.substr(0, pi_pos));
    if (head == "-") coeff = -1.0;
    else if (head == "+" || head.empty()) coeff = 1.0;
    else {
        std::size_t used = 0;
        coeff = std::stod(head, &used);
        if (used != head.size()) throw std::invalid_argument("malformed number: " + s);
    }
    double divisor = 1.0;
    std::string tail = trim(s.substr(pi_pos + 2));
    if (!tail.empty()) {
        if (tail[0] != '/') throw std::invalid_argument("malformed number: " + s);
        tail = trim(tail.substr(1));
        std::size_t used = 0;
        divisor = std::stod(tail, &used);
        if (used != tail.size() || divisor == 0.0)
            throw std::invalid_argument("malformed number: " + s);
    }
    return coeff * M_PI / divisor;
}

Vector parse_init(const std::string& token) {
    if (token == "up3") return product_ket("uuu");
    if (token == "down3") return product_ket("ddd");
    static const std::array<std::pair<const char*, SectorLabel>, 6> eigen_tokens = {{
        {"W0", {1, 0}},
        {"Wp", {1, 1}},
        {"Wm", {1, -1}},
        {"V0", {-1, 0}},
        {"Vp", {-1, 1}},
        {"Vm", {-1, -1}},
    }};
    for (const auto& [name, label] : eigen_tokens)
        if (token == name) return eigenstate(label);
    if (token.size() == 3 && token.find_first_not_of("ud") == std::string::npos)
        return product_ket(token);
    throw std::invalid_argument("invalid init state: " + token);
}

void set_parameter(Scenario& s, const std::string& param, double value) {
    if (param == "a") s.noise.a = value;
    else if (param == "A") s.noise.a_corr = value;
    else if (param == "phi") s.noise.phi = value;
    else if (param == "dA12") s.noise.delta_a12 = std::polar(value, std::arg(s.noise.delta_a12));
    else if (param == "dA12_phase")
        s.noise.delta_a12 = std::polar(std::abs(s.noise.delta_a12), value);
    else if (param == "beta_delta") s.noise.beta_delta = value;
    else if (param == "Delta") s.coherent.delta = value;
    else if (param == "J") s.coherent.j = value;
    else if (param == "psi") s.coherent.psi = value;
    else if (param == "dJ12") s.coherent.delta_j12 = value;
    else if (param == "alpha") s.alpha = value;
    else if (param == "t_max") s.t_max = value;
    else if (param == "dt") s.dt = value;
    else if (param == "C") {
        if (!s.coherent.drive) s.coherent.drive.emplace();
        s.coherent.drive->amplitude = value;
    } else if (param == "omega") {
        if (!s.coherent.drive) s.coherent.drive.emplace();
        s.coherent.drive->omega = value;
    } else if (param == "tau") {
        if (!s.coherent.drive) s.coherent.drive.emplace();
        s.coherent.drive->duration = value;
    } else {
        throw std::invalid_argument("unknown sweep parameter: " + param);
    }
}

namespace {

void validate_scenario(const Scenario& s) {
    parse_init(s.init);
    if (s.alpha < 0.0 || s.alpha > 1.0)
        throw std::invalid_argument("alpha must lie in [0, 1]");
    if (s.coherent.delta <= 0.0) throw std::invalid_argument("Delta must be positive");
    if (s.noise.a < 0.0 || s.noise.a_corr < 0.0)
        throw std::invalid_argument("rates must be non-negative");
    if (s.coherent.j < 0.0) throw std::invalid_argument("J must be non-negative");
    if (s.t_max <= 0.0) throw std::invalid_argument("t_max must be positive");
    if (s.sample_count < 2) throw std::invalid_argument("samples must be at least 2");
    if (s.solver != SolverChoice::numeric) {
        if (!std::isinf(s.noise.beta_delta) || s.alpha != 0.0 || !s.noise.homogeneous() ||
            s.coherent.delta_j12 != 0.0 || s.coherent.drive)
            throw std::invalid_argument(
                "solver=analytic requires zero temperature, alpha=0, homogeneous noise, "
                "no coupling asymmetry and no drive");
    }
    const CpReport cp = validate_cp(s.noise);
    if (!cp.ok)
        throw std::domain_error("complete positivity violated: " + cp.message +
                                " (min eigenvalue " + format_g12(cp.min_eigenvalue) + ")");
}

}  // namespace

Scenario parse_scenario_stream(std::istream& in, const std::string& name) {
    Scenario s;
    s.name = name;
    std::string line, section;
    int lineno = 0;
    double da12_abs = 0.0, da12_phase = 0.0;
    bool has_da12 = false;
    std::vector<std::string> sweep_tokens;

    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument(name + ":" + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail("malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "noise" && section != "coherent" && section != "drive" &&
                section != "run" && section != "sweep")
                fail("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) fail("key outside any section");

        try {
            if (section == "noise") {
                if (key == "a") s.noise.a = parse_value(value);
                else if (key == "A") s.noise.a_corr = parse_value(value);
                else if (key == "phi") s.noise.phi = parse_value(value);
                else if (key == "dA12") { da12_abs = parse_value(value); has_da12 = true; }
                else if (key == "dA12_phase") { da12_phase = parse_value(value); has_da12 = true; }
                else if (key == "beta_delta") s.noise.beta_delta = parse_value(value);
                else fail("unknown key '" + key + "' in [noise]");
            } else if (section == "coherent") {
                if (key == "Delta") s.coherent.delta = parse_value(value);
                else if (key == "J") s.coherent.j = parse_value(value);
                else if (key == "psi") s.coherent.psi = parse_value(value);
                else if (key == "dJ12") s.coherent.delta_j12 = parse_value(value);
                else fail("unknown key '" + key + "' in [coherent]");
            } else if (section == "drive") {
                if (!s.coherent.drive) s.coherent.drive.emplace();
                if (key == "C") s.coherent.drive->amplitude = parse_value(value);
                else if (key == "omega") s.coherent.drive->omega = parse_value(value);
                else if (key == "tau") s.coherent.drive->duration = parse_value(value);
                else fail("unknown key '" + key + "' in [drive]");
            } else if (section == "run") {
                if (key == "init") s.init = value;
                else if (key == "solver") {
                    if (value == "analytic") s.solver = SolverChoice::analytic;
                    else if (value == "numeric") s.solver = SolverChoice::numeric;
                    else if (value == "both") s.solver = SolverChoice::both;
                    else fail("solver must be analytic, numeric or both");
                } else if (key == "alpha") s.alpha = parse_value(value);
                else if (key == "t_max") s.t_max = parse_value(value);
                else if (key == "dt") s.dt = parse_value(value);
                else if (key == "samples") s.sample_count = static_cast<int>(parse_value(value));
                else fail("unknown key '" + key + "' in [run]");
            } else {  // sweep
                if (key == "param") {
                    if (!s.sweep) s.sweep.emplace();
                    s.sweep->param = value;
                } else if (key == "values") {
                    if (!s.sweep) s.sweep.emplace();
                    std::stringstream ss(value);
                    std::string tok;
                    while (std::getline(ss, tok, ',')) sweep_tokens.push_back(trim(tok));
                } else fail("unknown key '" + key + "' in [sweep]");
            }
        } catch (const std::invalid_argument& e) {
            const std::string what = e.what();
            if (what.rfind(name + ":", 0) == 0) throw;  // already located
            fail(what);
        }
    }

    if (has_da12) s.noise.delta_a12 = std::polar(da12_abs, da12_phase);
    if (s.sweep) {
        if (s.sweep->param.empty()) throw std::invalid_argument(name + ": sweep without param");
        for (const auto& tok : sweep_tokens) s.sweep->values.push_back(parse_value(tok));
        if (s.sweep->values.empty())
            throw std::invalid_argument(name + ": sweep without values");
        Scenario probe = s;  // reject unknown parameter names without mutating
        set_parameter(probe, s.sweep->param, s.sweep->values.front());
    }
    if (s.coherent.drive && s.coherent.drive->omega <= 0.0)
        s.coherent.drive->omega = s.coherent.delta + 2.0 * s.coherent.j;

    validate_scenario(s);
    return s;
}

Scenario parse_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    return parse_scenario_stream(in, std::filesystem::path(path).stem().string());
}

std::vector<Scenario> expand_sweep(const Scenario& s) {
    if (!s.sweep) return {s};
    std::vector<Scenario> out;
    for (double v : s.sweep->values) {
        Scenario child = s;
        child.sweep.reset();
        set_parameter(child, s.sweep->param, v);
        child.name = s.name + "_" + s.sweep->param + "_" + format_g12(v);
        validate_scenario(child);
        out.push_back(std::move(child));
    }
    return out;
}

std::vector<Scenario> figure_preset(const std::string& name) {
    Scenario base;  // working point: a=1, |A|=0.5, phi=pi, J=0, Delta=100
    base.name = name;
    base.init = "duu";
    base.solver = SolverChoice::numeric;

    auto linspace = [](double lo, double hi, int n) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
        return v;
    };

    if (name == "fig2a") {
        base.sweep = Scenario::Sweep{"phi", {M_PI, 2.0, M_PI / 3.0}};
        return expand_sweep(base);
    }
    if (name == "fig2b") {
        base.sweep = Scenario::Sweep{"A", linspace(0.0, 0.5, 50)};
        return expand_sweep(base);
    }
    if (name == "fig2c") {
        base.sweep = Scenario::Sweep{"J", linspace(0.0, 10.0, 50)};
        return expand_sweep(base);
    }
    if (name == "fig2d") {
        Scenario lower = base, lowest = base;
        lower.init = "udd";
        lower.name = name + "_udd";
        lowest.init = "ddd";
        lowest.name = name + "_ddd";
        return {lower, lowest};
    }
    if (name == "fig3b") {
        base.sweep = Scenario::Sweep{"alpha", {0.0, 0.25, 0.5, 0.75, 1.0}};
        return expand_sweep(base);
    }
    if (name == "fig3d") {
        base.coherent.j = 10.0;
        base.coherent.drive = DriveSpec{1.0, 120.0, 1.8};  // tau from calibrate_pulse
        base.init = "uuu";
        base.t_max = 10.0;
        base.sweep = Scenario::Sweep{"A", {0.1, 0.25, 0.5}};
        return expand_sweep(base);
    }
    if (name == "s1a") {
        // the working point is on the CP boundary; only perturbations that
        // shrink the (1,2) link keep the rate matrix PSD
        base.noise.delta_a12 = std::polar(0.05, M_PI);
        base.sweep = Scenario::Sweep{"dA12", {0.0, 0.05, 0.1}};  // |dA12|/|A| in {0, .1, .2}
        return expand_sweep(base);
    }
    if (name == "s1b") {
        base.noise.delta_a12 = std::polar(0.05, M_PI);
        base.sweep = Scenario::Sweep{"dA12_phase", {M_PI, 5.0 * M_PI / 6.0, 2.0 * M_PI / 3.0}};
        return expand_sweep(base);
    }
    if (name == "s2") {
        base.coherent.j = 1.0;
        base.coherent.delta_j12 = 0.2;
        base.sweep = Scenario::Sweep{"psi", linspace(0.0, M_PI / 2.0, 7)};
        return expand_sweep(base);
    }
    if (name == "s3") {
        base.init = "W0";
        base.t_max = 10.0;
        base.sweep = Scenario::Sweep{
            "beta_delta", {std::numeric_limits<double>::infinity(), 10.0, 3.0, 1.0}};
        return expand_sweep(base);
    }
    throw std::invalid_argument("unknown figure preset: " + name);
}

TimeSeries solve_numeric(const Scenario& s) {
    const EvolutionSpec spec =
        make_evolution_spec(s.noise, s.coherent, s.alpha, s.t_max, s.dt, s.sample_count);
    const Vector psi = parse_init(s.init);
    return propagate(DensityMatrix(projector(psi), Basis::pauli), spec);
}

TimeSeries solve_analytic(const Scenario& s) {
    const SectorRates rates = make_sector_rates(s.noise, s.coherent);
    const Vector psi = parse_init(s.init);
    const DensityMatrix rho0 =
        pauli_to_eigen(DensityMatrix(projector(psi), Basis::pauli));
    const InitClass cls = classify_init(rho0.m);

    TimeSeries series;
    const int n = std::max(2, s.sample_count);
    for (int i = 0; i < n; ++i) {
        const double t = s.t_max * i / (n - 1);
        DensityMatrix rho_eigen;
        switch (cls) {
            case InitClass::half:
                rho_eigen = evolve_from_half(rho0.m.block(1, 1, 3, 3), rates, t);
                break;
            case InitClass::minus_half:
                rho_eigen = evolve_from_minus_half(rho0.m.block(4, 4, 3, 3), rates, t);
                break;
            case InitClass::lowest:
                rho_eigen = evolve_from_lowest(rho0.m(7, 7).real(), rates, t);
                break;
            case InitClass::top:
                rho_eigen = DensityMatrix(rho0.m, Basis::eigen);  // stationary
                break;
        }
        series.samples.push_back(compute_sample(t, eigen_to_pauli(rho_eigen).m));
    }
    return series;
}

std::string timeseries_csv(const TimeSeries& series) {
    std::string out = "t,trace,N123,N1,N2,N3,F_W0,p_uuu,p_W0,p_Wp,p_Wm,p_V0,p_Vp,p_Vm,p_ddd\n";
    for (const TimeSample& s : series.samples) {
        out += format_g12(s.t);
        for (double v : {s.trace, s.n123, s.n1, s.n2, s.n3, s.w_fidelity})
            out += "," + format_g12(v);
        for (double p : s.populations) out += "," + format_g12(p);
        out += "\n";
    }
    return out;
}

RunRecord run_scenario(const Scenario& s, const std::string& out_dir) {
    validate_scenario(s);
    RunRecord record;
    record.scenario_name = s.name;
    record.solver = solver_name(s.solver);
    record.started = iso_now();

    TimeSeries numeric, analytic;
    const bool want_numeric = s.solver != SolverChoice::analytic;
    const bool want_analytic = s.solver != SolverChoice::numeric;
    if (want_numeric) numeric = solve_numeric(s);
    if (want_analytic) analytic = solve_analytic(s);
    const TimeSeries& primary = want_numeric ? numeric : analytic;

    if (s.solver == SolverChoice::both) {
        // compare on the numeric sample grid (analytic forms are global in t)
        const SectorRates rates = make_sector_rates(s.noise, s.coherent);
        const DensityMatrix rho0 =
            pauli_to_eigen(DensityMatrix(projector(parse_init(s.init)), Basis::pauli));
        const InitClass cls = classify_init(rho0.m);
        double dev = 0.0;
        for (const TimeSample& sample : numeric.samples) {
            DensityMatrix ref;
            switch (cls) {
                case InitClass::half:
                    ref = evolve_from_half(rho0.m.block(1, 1, 3, 3), rates, sample.t);
                    break;
                case InitClass::minus_half:
                    ref = evolve_from_minus_half(rho0.m.block(4, 4, 3, 3), rates, sample.t);
                    break;
                case InitClass::lowest:
                    ref = evolve_from_lowest(rho0.m(7, 7).real(), rates, sample.t);
                    break;
                case InitClass::top:
                    ref = DensityMatrix(rho0.m, Basis::eigen);
                    break;
            }
            dev = std::max(dev, max_abs(eigen_to_pauli(ref).m - sample.rho.m));
        }
        record.oracle_dev = dev;
    }

    for (const TimeSample& sample : primary.samples) {
        if (s.alpha == 0.0 && std::abs(sample.trace - 1.0) > 1e-8) record.trace_gate = false;
        if (sample.min_eig < -1e-7) record.positivity_gate = false;
    }

    std::filesystem::create_directories(out_dir);
    const std::string csv_path = out_dir + "/" + s.name + ".csv";
    std::ofstream csv(csv_path, std::ios::binary);
    csv << timeseries_csv(primary);
    csv.close();
    record.outputs.push_back(csv_path);

    record.finished = iso_now();

    nlohmann::json j;
    j["scenario"] = {
        {"name", s.name},
        {"noise",
         {{"a", s.noise.a},
          {"A", s.noise.a_corr},
          {"phi", s.noise.phi},
          {"dA12_abs", std::abs(s.noise.delta_a12)},
          {"dA12_phase", std::arg(s.noise.delta_a12)},
          {"beta_delta", std::isinf(s.noise.beta_delta)
                             ? nlohmann::json("inf")
                             : nlohmann::json(s.noise.beta_delta)}}},
        {"coherent",
         {{"Delta", s.coherent.delta},
          {"J", s.coherent.j},
          {"psi", s.coherent.psi},
          {"dJ12", s.coherent.delta_j12}}},
        {"init", s.init},
        {"alpha", s.alpha},
        {"t_max", s.t_max},
        {"samples", s.sample_count},
    };
    if (s.coherent.drive)
        j["scenario"]["drive"] = {{"C", s.coherent.drive->amplitude},
                                  {"omega", s.coherent.drive->omega},
                                  {"tau", s.coherent.drive->duration}};
    j["solver"] = record.solver;
    j["started"] = record.started;
    j["finished"] = record.finished;
    j["gates"] = {{"trace", record.trace_gate}, {"positivity", record.positivity_gate}};
    if (record.oracle_dev) j["gates"]["oracle_dev"] = *record.oracle_dev;
    else j["gates"]["oracle_dev"] = nullptr;
    j["outputs"] = record.outputs;

    const std::string json_path = out_dir + "/" + s.name + ".json";
    std::ofstream sidecar(json_path, std::ios::binary);
    sidecar << j.dump(2) << "\n";
    record.outputs.push_back(json_path);
    return record;
}

std::vector<RunRecord> run_scenarios(const std::vector<Scenario>& batch,
                                     const std::string& out_dir, int workers) {
    std::vector<RunRecord> records(batch.size());
    std::vector<std::exception_ptr> errors(batch.size());
    std::atomic<std::size_t> next{0};
    const int n_workers =
        std::max(1, std::min<int>(workers, static_cast<int>(batch.size())));

    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= batch.size()) return;
            try {
                records[i] = run_scenario(batch[i], out_dir);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    return records;
}

}  // namespace trispin
