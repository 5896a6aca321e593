// qubit_algebra.hpp — dense complex matrix algebra for the 2^3 spin Hilbert space:
// Pauli/ladder operators, tensor products, partial transposes, Hermitian spectra.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace trispin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kDim = 8;  // three qubits

// Which representation an 8x8 density matrix lives in.
// pauli: plain binary product basis, qubit 1 slowest bit, {up=0, down=1}.
// eigen: joint (S^z, chi) eigenbasis of H_S + H_eff (see chiral_basis.hpp).
enum class Basis { pauli, eigen };

struct DensityMatrix {
    Matrix m;
    Basis basis = Basis::pauli;

    DensityMatrix() : m(Matrix::Zero(kDim, kDim)) {}
    DensityMatrix(Matrix mat, Basis b) : m(std::move(mat)), basis(b) {}

    double trace_real() const { return m.trace().real(); }
};

// --------------------------- elementary operators ---------------------------

Matrix identity2();
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();
Matrix sigma_plus();   // |up><down|, raises S^z
Matrix sigma_minus();

// Single-qubit operator embedded on qubit q (1..3) of the 3-qubit space.
Matrix on_qubit(int q, const Matrix& op2);

// Basis ket from a spin string over {u,d}, e.g. "duu"; qubit 1 is the first char.
Vector product_ket(const std::string& spins);

// ------------------------------- operations ---------------------------------

// Kronecker product m1 (x) m2 (x) m3; all inputs must be 2x2, qubit 1 slowest.
Matrix tensor3(const Matrix& m1, const Matrix& m2, const Matrix& m3);

// Partial transpose of an 8x8 matrix with respect to qubit j (1..3), in the
// product basis. Preserves trace and Hermiticity.
Matrix partial_transpose(const Matrix& rho, int qubit);

// DensityMatrix overload: rejects eigenbasis input (the transpose is only
// meaningful qubit-locally).
Matrix partial_transpose(const DensityMatrix& rho, int qubit);

// Real eigenvalues of a Hermitian matrix, ascending. Throws if the input
// deviates from Hermiticity by more than `tol` (max entrywise).
std::vector<double> hermitian_eigenvalues(const Matrix& m, double tol = 1e-10);

// ------------------------------- small helpers ------------------------------

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
inline Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }
inline Matrix hermitize(const Matrix& a) { return 0.5 * (a + a.adjoint()); }
inline Matrix projector(const Vector& psi) { return psi * psi.adjoint(); }

inline double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }
inline bool is_hermitian(const Matrix& a, double tol = 1e-12) {
    return max_abs(a - a.adjoint()) <= tol;
}

// min eigenvalue of the Hermitian part; rho must be within tol of Hermitian
double min_eigenvalue(const Matrix& rho);

// Validation used by the propagation and scenario gates.
struct StateCheck {
    bool hermitian = false;
    bool positive = false;
    double trace = 0.0;
    double min_eig = 0.0;
    double herm_dev = 0.0;
};
StateCheck check_density_matrix(const Matrix& rho,
                                double herm_tol = 1e-12,
                                double eig_tol = 1e-10);

}  // namespace trispin
