// model.hpp — physical model construction: noise rate matrices, decay and
// excitation jump operators, and all Hamiltonian pieces (system, induced
// coherent coupling, asymmetric perturbation, drive).
//
// Units: hbar = 1, time in 1/a; all rates and energies are expressed in units
// of the local decay rate a.

#pragma once

#include "trispin/qubit_algebra.hpp"

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace trispin {

// Dissipative part of the environment.
//   a         local decay rate, >= 0
//   A         correlated amplitude |A| e^{i phi} shared by all three links
//   delta_a12 perturbation of the (1,2) link: gamma_12 = A - delta_a12
//   beta_delta  dimensionless beta*hbar*Delta; +infinity means zero temperature
struct NoiseModel {
    double a = 1.0;
    double a_corr = 0.5;  // |A|
    double phi = M_PI;
    Complex delta_a12 = 0.0;
    double beta_delta = std::numeric_limits<double>::infinity();

    Complex corr() const { return std::polar(a_corr, phi); }
    bool homogeneous() const { return delta_a12 == Complex(0.0, 0.0); }
    double boltzmann() const {
        return std::isinf(beta_delta) ? 0.0 : std::exp(-beta_delta);
    }
};

struct DriveSpec {
    double amplitude = 0.0;  // |C|
    double omega = 0.0;      // angular frequency
    double duration = 0.0;   // pulse length tau; zero field for t > tau
};

// Coherent part: qubit splitting, induced exchange (amplitude J, phase psi),
// optional (1,2)-link asymmetry, optional drive.
struct CoherentModel {
    double delta = 100.0;  // qubit splitting, > 0
    double j = 0.0;        // coupling amplitude, >= 0
    double psi = 0.0;
    double delta_j12 = 0.0;
    std::optional<DriveSpec> drive;
};

// Diagonalized dissipator. Jump k raises S^z by one and shifts the chirality
// by +k; rates[i] is the gamma-matrix eigenvalue carried by jump i. Label
// order is (k = 0, +1, -1) in the homogeneous case. Excitation operators are
// the adjoint forms scaled by the detailed-balance factor.
struct JumpSet {
    std::vector<Matrix> decay_ops;   // sqrt(rate) folded into the amplitude
    std::vector<Matrix> excite_ops;  // zero matrices at zero temperature
    std::array<double, 3> rates{};
    std::array<double, 3> tilde_rates{};
};

// ------------------------------ rate matrices --------------------------------

// 3x3 Hermitian rate matrix: diagonal a, links A with the (1,2) entry
// perturbed by -delta_a12.
Matrix gamma_matrix(const NoiseModel& noise);

// Eigenvalues of the homogeneous gamma matrix, gamma_k = a + 2|A|cos(phi + 2 pi k/3),
// returned as (gamma_0, gamma_+1, gamma_-1).
std::array<double, 3> gamma_rates(double a, Complex corr);

// Jump operators diagonalizing the dissipator; throws std::domain_error when
// the rate matrix has a negative eigenvalue (invalid model).
JumpSet jump_operators(const NoiseModel& noise);

// ------------------------------ Hamiltonians ---------------------------------

Matrix hamiltonian_system(const CoherentModel& c);     // -(Delta/2) sum sigma_z
Matrix hamiltonian_effective(const CoherentModel& c);  // J sum (e^{i psi} s_i^+ s_{i+1}^- + h.c.)
Matrix hamiltonian_asymmetry(const CoherentModel& c);  // delta_j12 (e^{i psi} s_1^+ s_2^- + h.c.)

// Drive |C| (J_drive + J_drive^dag) cos(omega t) with J_drive = sum_i sigma_i^+;
// zero operator for t > duration. Throws if no drive is configured.
Matrix hamiltonian_drive(const CoherentModel& c, double t);

// --------------------------- complete positivity -----------------------------

struct CpReport {
    bool ok = true;
    double min_eigenvalue = 0.0;
    std::string message;
};

// Homogeneous case requires a >= 2|A|; the general case is checked through
// the spectrum of the full gamma matrix (min eigenvalue >= -1e-12).
CpReport validate_cp(const NoiseModel& noise);

}  // namespace trispin
