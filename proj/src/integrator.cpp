#include "trispin/integrator.hpp"

#include "trispin/chiral_basis.hpp"
#include "trispin/entanglement.hpp"

#include <cmath>

namespace trispin {

namespace {

struct Rhs {
    Matrix static_k;   // H_static - (i/2) sum J^dag J, all jumps
    Matrix drive_env;  // empty when no drive
    double omega = 0.0;
    double duration = 0.0;
    bool has_drive = false;
    std::vector<Matrix> sandwich;  // jump ops with recycling weights folded in

    explicit Rhs(const EvolutionSpec& spec) {
        Matrix damping = Matrix::Zero(kDim, kDim);
        for (const Matrix& j : spec.jumps.decay_ops) damping += j.adjoint() * j;
        for (const Matrix& j : spec.jumps.excite_ops) damping += j.adjoint() * j;
        static_k = spec.hamiltonian - Complex(0, 0.5) * damping;
        has_drive = spec.has_drive;
        if (has_drive) {
            drive_env = spec.drive_envelope;
            omega = spec.drive_omega;
            duration = spec.drive_duration;
        }
        const double recycle = 1.0 - spec.alpha;
        for (int i = 0; i < 3; ++i) {
            if (recycle > 0.0 && spec.jumps.rates[i] > 0.0)
                sandwich.push_back(std::sqrt(recycle) * spec.jumps.decay_ops[i]);
            if (spec.jumps.tilde_rates[i] > 0.0)
                sandwich.push_back(spec.jumps.excite_ops[i]);
        }
    }

    void operator()(const Matrix& rho, double t, Matrix& out) const {
        Matrix k = static_k;
        if (has_drive && t <= duration) k += std::cos(omega * t) * drive_env;
        out.noalias() = Complex(0, -1) * (k * rho);
        out.noalias() += Complex(0, 1) * (rho * k.adjoint());
        for (const Matrix& j : sandwich) {
            tmp_.noalias() = j * rho;
            out.noalias() += tmp_ * j.adjoint();
        }
    }

private:
    mutable Matrix tmp_ = Matrix(kDim, kDim);
};

double fastest_scale(const EvolutionSpec& spec) {
    double scale = 0.0;
    for (double r : spec.jumps.rates) scale = std::max(scale, r);
    for (double r : spec.jumps.tilde_rates) scale = std::max(scale, r);
    // coherent scale: Delta + 2J when known, else the H entry bound
    const double coherent = spec.spectral_scale > 0.0
                                ? spec.spectral_scale
                                : spec.hamiltonian.cwiseAbs().maxCoeff();
    scale = std::max(scale, coherent);
    if (spec.has_drive) scale = std::max(scale, spec.drive_omega);
    return std::max(scale, 1e-12);
}

}  // namespace

EvolutionSpec make_evolution_spec(const NoiseModel& noise, const CoherentModel& coherent,
                                  double alpha, double t_max, double dt, int sample_count) {
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("make_evolution_spec: alpha must be in [0, 1]");
    if (alpha > 0.0 && !std::isinf(noise.beta_delta))
        throw std::invalid_argument(
            "make_evolution_spec: post-selection (alpha > 0) requires zero temperature");
    EvolutionSpec spec;
    spec.hamiltonian = hamiltonian_system(coherent) + hamiltonian_effective(coherent) +
                       hamiltonian_asymmetry(coherent);
    if (coherent.drive) {
        const Matrix j_drive = on_qubit(1, sigma_plus()) + on_qubit(2, sigma_plus()) +
                               on_qubit(3, sigma_plus());
        spec.drive_envelope = coherent.drive->amplitude * (j_drive + j_drive.adjoint());
        spec.drive_omega = coherent.drive->omega;
        spec.drive_duration = coherent.drive->duration;
        spec.has_drive = true;
    }
    spec.jumps = jump_operators(noise);
    spec.alpha = alpha;
    spec.t_max = t_max;
    spec.dt = dt;
    spec.sample_count = sample_count;
    spec.spectral_scale = coherent.delta + 2.0 * coherent.j + std::abs(coherent.delta_j12);
    return spec;
}

double default_time_step(const EvolutionSpec& spec) {
    return 0.05 / fastest_scale(spec);
}

Matrix liouvillian_apply(const DensityMatrix& rho, const EvolutionSpec& spec, double t) {
    if (rho.basis != Basis::pauli)
        throw std::invalid_argument("liouvillian_apply: state must be in the Pauli basis");
    Rhs rhs(spec);
    Matrix out(kDim, kDim);
    rhs(rho.m, t, out);
    return out;
}

TimeSample compute_sample(double t, const Matrix& rho_pauli_raw) {
    TimeSample s;
    s.t = t;
    s.rho = DensityMatrix(rho_pauli_raw, Basis::pauli);
    s.trace = rho_pauli_raw.trace().real();
    s.min_eig = min_eigenvalue(rho_pauli_raw);

    DensityMatrix normalized(rho_pauli_raw / s.trace, Basis::pauli);
    s.n1 = bipartite_negativity(normalized, 1);
    s.n2 = bipartite_negativity(normalized, 2);
    s.n3 = bipartite_negativity(normalized, 3);
    s.n123 = std::cbrt(s.n1 * s.n2 * s.n3);

    const DensityMatrix eigen = pauli_to_eigen(normalized);
    for (int i = 0; i < kDim; ++i) s.populations[i] = eigen.m(i, i).real();
    s.w_fidelity = s.populations[1];  // |1/2, 0> sits at index 1
    return s;
}

TimeSeries propagate(const DensityMatrix& rho0, const EvolutionSpec& spec) {
    if (rho0.basis != Basis::pauli)
        throw std::invalid_argument("propagate: initial state must be in the Pauli basis");
    if (spec.t_max <= 0.0) throw std::invalid_argument("propagate: t_max must be positive");

    const double dt_bound = default_time_step(spec) * (1.0 + 1e-9);
    double dt = spec.dt > 0.0 ? spec.dt : default_time_step(spec);
    if (dt > dt_bound)
        throw std::invalid_argument(
            "propagate: step size too large for the fastest configured scale (drive/splitting)");

    long n_steps = static_cast<long>(std::ceil(spec.t_max / dt - 1e-12));
    n_steps = std::max(n_steps, 1L);
    dt = spec.t_max / static_cast<double>(n_steps);
    const long stride =
        std::max(1L, n_steps / std::max(1, spec.sample_count - 1));

    Rhs rhs(spec);
    TimeSeries series;
    series.samples.reserve(static_cast<std::size_t>(n_steps / stride + 2));

    Matrix rho = rho0.m;
    Matrix k1(kDim, kDim), k2(kDim, kDim), k3(kDim, kDim), k4(kDim, kDim), work(kDim, kDim);
    series.samples.push_back(compute_sample(0.0, rho));

    for (long step = 0; step < n_steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        rhs(rho, t, k1);
        work = rho + 0.5 * dt * k1;
        rhs(work, t + 0.5 * dt, k2);
        work = rho + 0.5 * dt * k2;
        rhs(work, t + 0.5 * dt, k3);
        work = rho + dt * k3;
        rhs(work, t + dt, k4);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double drift = max_abs(rho - rho.adjoint());
        series.max_herm_drift = std::max(series.max_herm_drift, drift);
        rho = hermitize(rho);

        if (!rho.allFinite())
            throw std::runtime_error("propagate: non-finite state at t = " +
                                     std::to_string(t + dt));

        if ((step + 1) % stride == 0 || step + 1 == n_steps)
            series.samples.push_back(compute_sample(static_cast<double>(step + 1) * dt, rho));
    }
    return series;
}

PulseCalibration calibrate_pulse(const NoiseModel& noise, CoherentModel coherent) {
    PulseCalibration cal;
    if (!coherent.drive || coherent.drive->amplitude <= 0.0) {
        cal.message = "calibration failed: no drive amplitude configured";
        return cal;
    }
    const double amp = coherent.drive->amplitude;
    cal.tau_rwa = M_PI / (std::sqrt(3.0) * amp);
    const double window = 4.0 * M_PI / (std::sqrt(3.0) * amp);
    if (!std::isfinite(window)) {
        cal.message = "calibration failed: scan window diverges";
        return cal;
    }
    if (coherent.drive->omega <= 0.0)
        coherent.drive->omega = coherent.delta + 2.0 * coherent.j;
    coherent.drive->duration = window;  // fidelity at t equals fidelity at pulse end tau = t

    EvolutionSpec spec = make_evolution_spec(noise, coherent, 0.0, window, 0.0, 512);
    const DensityMatrix rho0(projector(product_ket("uuu")), Basis::pauli);
    const TimeSeries series = propagate(rho0, spec);

    const double f0 = series.samples.front().w_fidelity;
    std::size_t best = 0;
    for (std::size_t i = 1; i < series.samples.size(); ++i)
        if (series.samples[i].w_fidelity > series.samples[best].w_fidelity) best = i;

    if (series.samples[best].w_fidelity <= f0 + 1e-12) {
        cal.message = "calibration failed: fidelity never exceeds the initial value";
        return cal;
    }
    cal.ok = true;
    cal.tau_star = series.samples[best].t;
    cal.fidelity = series.samples[best].w_fidelity;
    cal.tau_over_rwa = cal.tau_star / cal.tau_rwa;
    return cal;
}

}  // namespace trispin
