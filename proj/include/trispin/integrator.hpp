// integrator.hpp — numerical propagation of the master equation: full Lindblad
// dynamics (finite temperature included), optional time-dependent drive, and
// the post-selection hybrid generator
//
//   d rho/dt = -i (K rho - rho K^dag) + (1-alpha) sum_k J_k rho J_k^dag
//                                     +           sum_k Jt_k rho Jt_k^dag,
//   K = H(t) - (i/2) sum_k (J_k^dag J_k + Jt_k^dag Jt_k),
//
// which reduces to the trace-preserving Lindblad equation at alpha = 0 and to
// pure non-Hermitian conditional evolution at alpha = 1. Classical fixed-step
// RK4 with Hermitian symmetrization after each step.

#pragma once

#include "trispin/model.hpp"
#include "trispin/qubit_algebra.hpp"

#include <vector>

namespace trispin {

struct EvolutionSpec {
    Matrix hamiltonian;      // static Hermitian part (H_S + H_eff + H')
    Matrix drive_envelope;   // |C| (J_drive + J_drive^dag); empty if no drive
    double drive_omega = 0.0;
    double drive_duration = 0.0;
    bool has_drive = false;
    JumpSet jumps;
    double alpha = 0.0;      // post-selection level in [0, 1]
    double t_max = 20.0;
    double dt = 0.0;         // 0 selects the fastest-scale default
    int sample_count = 400;
    double spectral_scale = 0.0;  // Delta + 2J; inferred from H when left at 0
};

// Assembles the spec from the physical model. Throws std::invalid_argument for
// alpha outside [0,1] or alpha > 0 at finite temperature (post-selection is a
// zero-temperature protocol).
EvolutionSpec make_evolution_spec(const NoiseModel& noise, const CoherentModel& coherent,
                                  double alpha, double t_max, double dt = 0.0,
                                  int sample_count = 400);

// Fixed-step resolution bound: dt * max(Delta + 2J, rates) <= 0.05.
double default_time_step(const EvolutionSpec& spec);

// Right-hand side of the evolution equation at time t. Output is Hermitian to
// roundoff; traceless when alpha = 0.
Matrix liouvillian_apply(const DensityMatrix& rho, const EvolutionSpec& spec, double t);

struct TimeSample {
    double t = 0.0;
    DensityMatrix rho;        // Pauli basis, raw (not normalized)
    double trace = 0.0;       // raw trace
    double min_eig = 0.0;     // of the raw state
    double n123 = 0.0, n1 = 0.0, n2 = 0.0, n3 = 0.0;  // of rho / tr rho
    double w_fidelity = 0.0;  // <W_0| rho |W_0> / tr rho
    std::array<double, 8> populations{};  // normalized, eigenbasis order
};

struct TimeSeries {
    std::vector<TimeSample> samples;
    double max_herm_drift = 0.0;  // worst pre-symmetrization drift per step

    const TimeSample& back() const { return samples.back(); }
};

// Entanglement/fidelity/population observables for a raw Pauli-basis state.
TimeSample compute_sample(double t, const Matrix& rho_pauli_raw);

// Deterministic RK4 trajectory from a Pauli-basis initial state. Throws on
// non-finite values and on an explicit dt that under-resolves the fastest
// scale of the configured model.
TimeSeries propagate(const DensityMatrix& rho0, const EvolutionSpec& spec);

// ------------------------------ drive calibration ----------------------------

struct PulseCalibration {
    bool ok = false;
    double tau_star = 0.0;   // optimal pulse duration
    double fidelity = 0.0;   // achieved W_0 fidelity at pulse end
    double tau_rwa = 0.0;    // rotating-wave full-transfer estimate pi/(sqrt3 |C|)
    double tau_over_rwa = 0.0;
    std::string message;
};

// Scans the pulse duration over [0, 4 pi / (sqrt3 |C|)] (>= 200 samples) for
// the drive at omega = Delta + 2J starting from |uuu>, and returns the
// duration maximizing the achiral W fidelity at pulse end.
PulseCalibration calibrate_pulse(const NoiseModel& noise, CoherentModel coherent);

}  // namespace trispin
