#include "trispin/model.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace trispin {

namespace {

const Complex kEta = std::polar(1.0, 2.0 * M_PI / 3.0);

Complex eta_pow(int p) {
    switch (((p % 3) + 3) % 3) {
        case 0: return Complex(1.0, 0.0);
        case 1: return kEta;
        default: return std::conj(kEta);
    }
}

std::array<Matrix, 3> raising_ops() {
    return {on_qubit(1, sigma_plus()), on_qubit(2, sigma_plus()), on_qubit(3, sigma_plus())};
}

// Fix the eigenvector gauge: largest-magnitude component made real positive.
void fix_phase(Eigen::VectorXcd& v) {
    int imax = 0;
    double best = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > best) {
            best = std::abs(v(i));
            imax = i;
        }
    }
    if (best > 0.0) v *= std::conj(v(imax)) / std::abs(v(imax));
}

}  // namespace

Matrix gamma_matrix(const NoiseModel& noise) {
    const Complex a_corr = noise.corr();
    Matrix g(3, 3);
    g << noise.a, a_corr - noise.delta_a12, std::conj(a_corr),
         std::conj(a_corr) - std::conj(noise.delta_a12), noise.a, a_corr,
         a_corr, std::conj(a_corr), noise.a;
    return g;
}

std::array<double, 3> gamma_rates(double a, Complex corr) {
    const double mag = std::abs(corr);
    const double phi = std::arg(corr);
    auto rate = [&](int k) { return a + 2.0 * mag * std::cos(phi + 2.0 * M_PI * k / 3.0); };
    return {rate(0), rate(1), rate(-1)};
}

JumpSet jump_operators(const NoiseModel& noise) {
    JumpSet set;
    const double boltz = noise.boltzmann();
    const auto sp = raising_ops();

    if (noise.homogeneous()) {
        // Closed form. The gamma-matrix eigenvector for eigenvalue
        // gamma(-k) = a + 2|A|cos(phi - 2 pi k/3) is (eta^-k, eta^k, 1)/sqrt3,
        // so the jump carrying phases (eta^k, eta^-k, 1) shifts chirality by +k.
        const auto g = gamma_rates(noise.a, noise.corr());
        const std::array<int, 3> ks = {0, 1, -1};
        for (int i = 0; i < 3; ++i) {
            const int k = ks[i];
            const double rate = i == 0 ? g[0] : (k == 1 ? g[2] : g[1]);  // gamma(-k)
            if (rate < -1e-12)
                throw std::domain_error("jump_operators: negative rate, model violates CP");
            set.rates[i] = rate;
            const Matrix structure =
                (eta_pow(k) * sp[0] + eta_pow(-k) * sp[1] + sp[2]) / std::sqrt(3.0);
            set.decay_ops.push_back(std::sqrt(std::max(rate, 0.0)) * structure);
        }
    } else {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(gamma_matrix(noise));
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("jump_operators: gamma diagonalization failed");
        for (int i = 0; i < 3; ++i) {
            const double rate = solver.eigenvalues()(i);
            if (rate < -1e-12)
                throw std::domain_error("jump_operators: gamma not PSD, model violates CP");
            set.rates[i] = rate;
            Eigen::VectorXcd v = solver.eigenvectors().col(i);
            fix_phase(v);
            Matrix op = Matrix::Zero(kDim, kDim);
            for (int q = 0; q < 3; ++q) op += std::conj(v(q)) * sp[q];
            set.decay_ops.push_back(std::sqrt(std::max(rate, 0.0)) * op);
        }
    }

    // Detailed balance: excitation jumps are the adjoints scaled by e^{-beta hbar Delta}.
    for (int i = 0; i < 3; ++i) {
        set.tilde_rates[i] = boltz * set.rates[i];
        set.excite_ops.push_back(std::sqrt(boltz) * set.decay_ops[i].adjoint());
    }
    return set;
}

Matrix hamiltonian_system(const CoherentModel& c) {
    const Matrix sz = sigma_z();
    return -0.5 * c.delta * (on_qubit(1, sz) + on_qubit(2, sz) + on_qubit(3, sz));
}

Matrix hamiltonian_effective(const CoherentModel& c) {
    Matrix h = Matrix::Zero(kDim, kDim);
    if (c.j == 0.0) return h;
    const Complex phase = std::polar(1.0, c.psi);
    for (int i = 1; i <= 3; ++i) {
        const int next = i % 3 + 1;
        const Matrix hop = on_qubit(i, sigma_plus()) * on_qubit(next, sigma_minus());
        h += c.j * (phase * hop + std::conj(phase) * hop.adjoint());
    }
    return h;
}

Matrix hamiltonian_asymmetry(const CoherentModel& c) {
    if (c.delta_j12 == 0.0) return Matrix::Zero(kDim, kDim);
    const Complex phase = std::polar(1.0, c.psi);
    const Matrix hop = on_qubit(1, sigma_plus()) * on_qubit(2, sigma_minus());
    return c.delta_j12 * (phase * hop + std::conj(phase) * hop.adjoint());
}

Matrix hamiltonian_drive(const CoherentModel& c, double t) {
    if (!c.drive) throw std::logic_error("hamiltonian_drive: no drive configured");
    if (t > c.drive->duration) return Matrix::Zero(kDim, kDim);
    const Matrix j_drive =
        on_qubit(1, sigma_plus()) + on_qubit(2, sigma_plus()) + on_qubit(3, sigma_plus());
    return c.drive->amplitude * std::cos(c.drive->omega * t) * (j_drive + j_drive.adjoint());
}

CpReport validate_cp(const NoiseModel& noise) {
    CpReport report;
    if (noise.homogeneous()) {
        report.min_eigenvalue = noise.a - 2.0 * noise.a_corr;  // gamma at cos = -1
        if (noise.a < 2.0 * noise.a_corr) {
            report.ok = false;
            report.message = "complete positivity requires a >= 2|A|";
        }
        return report;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gamma_matrix(noise), Eigen::EigenvaluesOnly);
    report.min_eigenvalue = solver.eigenvalues().minCoeff();
    if (report.min_eigenvalue < -1e-12) {
        report.ok = false;
        report.message = "rate matrix has a negative eigenvalue";
    }
    return report;
}

}  // namespace trispin
