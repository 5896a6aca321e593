#include "trispin/entanglement.hpp"

#include "trispin/chiral_basis.hpp"

#include <cmath>

namespace trispin {

double w_state_negativity() { return 2.0 * std::sqrt(2.0) / 3.0; }

double bipartite_negativity(const DensityMatrix& rho, int qubit) {
    const double trace = rho.m.trace().real();
    if (std::abs(trace - 1.0) > 1e-6)
        throw std::invalid_argument(
            "bipartite_negativity: state must have unit trace (normalize first)");
    const Matrix pt = partial_transpose(rho, qubit);
    double neg = 0.0;
    for (double lambda : hermitian_eigenvalues(pt)) {
        if (lambda < -1e-12) neg += -lambda;  // noise floor on the spectrum
    }
    return 2.0 * neg;
}

double tripartite_negativity(const DensityMatrix& rho) {
    return std::cbrt(bipartite_negativity(rho, 1) * bipartite_negativity(rho, 2) *
                     bipartite_negativity(rho, 3));
}

double negativity_from_fidelity(double f) {
    if (f < 0.0 || f > 1.0)
        throw std::invalid_argument("negativity_from_fidelity: fidelity must be in [0, 1]");
    const double nw = w_state_negativity();
    return std::sqrt(nw * f * nw * f + (1.0 - f) * (1.0 - f)) - (1.0 - f);
}

double w_fidelity(const DensityMatrix& rho, int chi_target) {
    const double trace = rho.m.trace().real();
    if (trace <= 0.0) throw std::invalid_argument("w_fidelity: non-positive trace");
    const SectorLabel label{1, chi_target};
    if (rho.basis == Basis::eigen) {
        const int idx = eigenbasis_index(label);
        return rho.m(idx, idx).real() / trace;
    }
    const Vector w = eigenstate(label);
    return (w.adjoint() * rho.m * w)(0, 0).real() / trace;
}

NegativityReport analytic_negativity_product_init(double t, const SectorRates& rates) {
    // sector trace and uuu weight
    double sector = 0.0;
    for (int chi : {0, 1, -1}) sector += std::exp(-rates.gamma_at(chi) * t);
    sector /= 3.0;
    const double w = 1.0 - sector;

    const double s0 = std::norm(s_amplitude(0, t, rates));
    const double s1 = std::norm(s_amplitude(1, t, rates));
    const double s2 = std::norm(s_amplitude(2, t, rates));

    // Qubit j's cut sees the two coherences of the basis state with qubit j
    // flipped: duu <-> S_0, udu <-> S_2, uud <-> S_1.
    auto cut = [&](double self, double other_a, double other_b) {
        return std::sqrt(w * w + 4.0 * self * (other_a + other_b) / 81.0) - w;
    };
    NegativityReport report;
    report.n1 = cut(s0, s1, s2);
    report.n2 = cut(s2, s0, s1);
    report.n3 = cut(s1, s0, s2);
    report.n123 = std::cbrt(report.n1 * report.n2 * report.n3);
    report.w_fidelity = std::exp(-rates.gamma_at(0) * t) / 3.0;
    return report;
}

}  // namespace trispin
