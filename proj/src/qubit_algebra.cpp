#include "trispin/qubit_algebra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <string>

namespace trispin {

Matrix identity2() { return Matrix::Identity(2, 2); }

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix sigma_plus() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1;
    return m;
}

Matrix sigma_minus() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1;
    return m;
}

Matrix on_qubit(int q, const Matrix& op2) {
    if (q < 1 || q > 3) throw std::out_of_range("on_qubit: qubit index must be 1..3");
    const Matrix id = identity2();
    return tensor3(q == 1 ? op2 : id, q == 2 ? op2 : id, q == 3 ? op2 : id);
}

Vector product_ket(const std::string& spins) {
    if (spins.size() != 3) throw std::invalid_argument("product_ket: need 3 spins over {u,d}");
    int idx = 0;
    for (char c : spins) {
        if (c != 'u' && c != 'd') throw std::invalid_argument("product_ket: invalid spin char");
        idx = 2 * idx + (c == 'd' ? 1 : 0);
    }
    Vector v = Vector::Zero(kDim);
    v(idx) = 1.0;
    return v;
}

Matrix tensor3(const Matrix& m1, const Matrix& m2, const Matrix& m3) {
    for (const Matrix* m : {&m1, &m2, &m3}) {
        if (m->rows() != 2 || m->cols() != 2)
            throw std::invalid_argument("tensor3: all factors must be 2x2");
    }
    Matrix out(kDim, kDim);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    for (int e = 0; e < 2; ++e)
                        for (int f = 0; f < 2; ++f)
                            out(4 * a + 2 * c + e, 4 * b + 2 * d + f) =
                                m1(a, b) * m2(c, d) * m3(e, f);
    return out;
}

Matrix partial_transpose(const Matrix& rho, int qubit) {
    if (rho.rows() != kDim || rho.cols() != kDim)
        throw std::invalid_argument("partial_transpose: expected 8x8 matrix");
    if (qubit < 1 || qubit > 3)
        throw std::out_of_range("partial_transpose: qubit index must be 1..3");
    const int bit = 1 << (3 - qubit);  // qubit 1 is the slowest bit
    Matrix out(kDim, kDim);
    for (int r = 0; r < kDim; ++r) {
        for (int c = 0; c < kDim; ++c) {
            // swap the transposed qubit's bit between row and column
            const int r2 = (r & ~bit) | (c & bit);
            const int c2 = (c & ~bit) | (r & bit);
            out(r, c) = rho(r2, c2);
        }
    }
    return out;
}

Matrix partial_transpose(const DensityMatrix& rho, int qubit) {
    if (rho.basis != Basis::pauli)
        throw std::invalid_argument(
            "partial_transpose: density matrix must be in the Pauli product basis");
    return partial_transpose(rho.m, qubit);
}

std::vector<double> hermitian_eigenvalues(const Matrix& m, double tol) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
    if (max_abs(m - m.adjoint()) > tol)
        throw std::invalid_argument("hermitian_eigenvalues: input not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(m), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double min_eigenvalue(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(rho), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("min_eigenvalue: eigensolver failed");
    return solver.eigenvalues().minCoeff();
}

StateCheck check_density_matrix(const Matrix& rho, double herm_tol, double eig_tol) {
    StateCheck out;
    out.herm_dev = max_abs(rho - rho.adjoint());
    out.hermitian = out.herm_dev <= herm_tol;
    out.trace = rho.trace().real();
    out.min_eig = min_eigenvalue(rho);
    out.positive = out.min_eig >= -eig_tol;
    return out;
}

}  // namespace trispin
