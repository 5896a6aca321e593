#include "trispin/analytic_solver.hpp"

#include "trispin/chiral_basis.hpp"

#include <cmath>

namespace trispin {

namespace {

constexpr std::array<int, 3> kChiOrder = {0, 1, -1};

int pos_of_chi(int chi) { return chi == 0 ? 0 : (chi == 1 ? 1 : 2); }

const Complex kEta = std::polar(1.0, 2.0 * M_PI / 3.0);

Complex eta_pow(int p) {
    switch (((p % 3) + 3) % 3) {
        case 0: return Complex(1.0, 0.0);
        case 1: return kEta;
        default: return std::conj(kEta);
    }
}

Complex sinch(Complex y) {
    if (std::abs(y) < 1e-4) return 1.0 + y * y / 6.0;
    return std::sinh(y) / y;
}

// (e^{-z t} - e^{-w t}) / (w - z), the convolution kernel of two exponential
// decays; entire in (w - z), so no branch is needed:
//   cdexp(w, z, t) = t e^{-(w+z)t/2} sinch((w - z) t / 2).
Complex cdexp(Complex w, Complex z, double t) {
    return t * std::exp(-0.5 * (w + z) * t) * sinch(0.5 * (w - z) * t);
}

double cdexp_real(double w, double z, double t) { return cdexp(w, z, t).real(); }

// Second divided difference of e^{-x t} over nodes (x0, x1, x2); the nearly
// coincident node pair is replaced by the derivative limit (threshold 1e-9
// on the node spacing, matching the removable-singularity convention).
double ddexp2(double x0, double x1, double x2, double t, double scale) {
    const double eps = 1e-9 * std::max(scale, 1.0);
    if (std::abs(x1 - x2) > eps)
        return (cdexp_real(x0, x2, t) - cdexp_real(x0, x1, t)) / (x1 - x2);
    const double x = 0.5 * (x1 + x2);
    if (std::abs(x0 - x) > eps) {
        // d/dx of (e^{-x0 t} - e^{-x t}) / (x - x0), evaluated stably
        const double y = 0.5 * (x0 - x) * t;
        const double s = sinch(Complex(y, 0)).real();
        const double sp = std::abs(y) < 1e-4 ? y / 3.0
                                             : (y * std::cosh(y) - std::sinh(y)) / (y * y);
        return 0.5 * t * t * std::exp(-0.5 * (x0 + x) * t) * (s + sp);
    }
    const double xm = (x0 + x1 + x2) / 3.0;
    return 0.5 * t * t * std::exp(-xm * t);
}

// Feed amplitude <1/2, chi + k| J_k |-1/2, chi>; its squared magnitude is the
// corresponding upsilon21 entry.
Complex feed_amplitude(const SectorRates& r, int k, int chi_dest) {
    const int chi_src = wrap_chi(chi_dest - k);
    const double rate = r.gamma_at(wrap_chi(-k));
    return std::sqrt(rate / 3.0) * (eta_pow(-chi_dest) + eta_pow(chi_src));
}

void require_half_block(const Matrix& block) {
    if (block.rows() != 3 || block.cols() != 3)
        throw std::invalid_argument("analytic solver: sector block must be 3x3");
    if (max_abs(block - block.adjoint()) > 1e-10)
        throw std::invalid_argument("analytic solver: sector block must be Hermitian");
    if (block.trace().real() > 1.0 + 1e-10)
        throw std::invalid_argument("analytic solver: sector block trace exceeds 1");
}

}  // namespace

std::array<double, 3> f_rates(double j, double psi) {
    auto f = [&](int k) { return 2.0 * j * std::cos(psi + 2.0 * M_PI * k / 3.0); };
    return {f(0), f(1), f(-1)};
}

SectorRates make_sector_rates(const NoiseModel& noise, const CoherentModel& coherent) {
    if (!noise.homogeneous())
        throw std::invalid_argument("make_sector_rates: requires a homogeneous noise model");
    if (!std::isinf(noise.beta_delta))
        throw std::invalid_argument("make_sector_rates: closed forms hold at zero temperature");
    SectorRates r;
    r.a = noise.a;
    r.gamma = gamma_rates(noise.a, noise.corr());
    r.f = f_rates(coherent.j, coherent.psi);
    for (int p = 0; p < 3; ++p) {
        const int chi = kChiOrder[p];
        r.upsilon32[p] = r.gamma_at(wrap_chi(-chi));
        r.gamma32[p] = r.upsilon32[p] - 2.0 * noise.a;
        for (int q = 0; q < 3; ++q) {
            const int chi_src = kChiOrder[q];
            const double boost = chi == wrap_chi(-chi_src) ? 4.0 : 1.0;
            r.upsilon21[p][q] = boost * r.gamma_at(wrap_chi(chi_src - chi)) / 3.0;
            r.gamma21[p][q] = r.gamma_at(chi) - r.gamma_at(wrap_chi(-chi_src)) - noise.a;
        }
    }
    return r;
}

DensityMatrix evolve_from_half(const Matrix& rho0_block, const SectorRates& rates, double t) {
    require_half_block(rho0_block);
    Matrix out = Matrix::Zero(kDim, kDim);
    for (int p = 0; p < 3; ++p) {
        const int cp = kChiOrder[p];
        for (int q = 0; q < 3; ++q) {
            const int cq = kChiOrder[q];
            const double decay = 0.5 * (rates.gamma_at(cp) + rates.gamma_at(cq));
            const double phase = rates.f_at(wrap_chi(-cp)) - rates.f_at(wrap_chi(-cq));
            out(1 + p, 1 + q) =
                rho0_block(p, q) * std::exp(-decay * t) * std::polar(1.0, -phase * t);
        }
    }
    out(0, 0) = 1.0 - out.block(1, 1, 3, 3).trace();
    return DensityMatrix(out, Basis::eigen);
}

DensityMatrix evolve_from_minus_half(const Matrix& rho0_block, const SectorRates& rates,
                                     double t) {
    require_half_block(rho0_block);
    const double a = rates.a;
    Matrix out = Matrix::Zero(kDim, kDim);

    // sector -1/2: bare decay with rates a + gamma(-chi) and phases f(+chi)
    for (int p = 0; p < 3; ++p) {
        const int cp = kChiOrder[p];
        for (int q = 0; q < 3; ++q) {
            const int cq = kChiOrder[q];
            const double decay =
                a + 0.5 * (rates.gamma_at(wrap_chi(-cp)) + rates.gamma_at(wrap_chi(-cq)));
            const double phase = rates.f_at(cp) - rates.f_at(cq);
            out(4 + p, 4 + q) =
                rho0_block(p, q) * std::exp(-decay * t) * std::polar(1.0, -phase * t);
        }
    }

    // sector 1/2 occupations fed through the jump cascade
    for (int p = 0; p < 3; ++p) {
        Complex acc = 0.0;
        for (int q = 0; q < 3; ++q) {
            const double ratio = cdexp_real(rates.gamma21[p][q], 0.0, t);  // (1-e^{-G t})/G
            acc += rates.upsilon21[p][q] * ratio * out(4 + q, 4 + q);
        }
        out(1 + p, 1 + p) = acc;
    }

    // sector 1/2 coherences: integrate the feed term against the sector
    // kernel, one closed-form convolution per jump channel
    for (int p = 0; p < 3; ++p) {
        const int cp = kChiOrder[p];
        for (int q = 0; q < 3; ++q) {
            if (p == q) continue;
            const int cq = kChiOrder[q];
            const Complex w(0.5 * (rates.gamma_at(cp) + rates.gamma_at(cq)),
                            rates.f_at(wrap_chi(-cp)) - rates.f_at(wrap_chi(-cq)));
            Complex acc = 0.0;
            for (int k : kChiOrder) {
                const int su = wrap_chi(cp - k);
                const int sv = wrap_chi(cq - k);
                const Complex z(
                    a + 0.5 * (rates.gamma_at(wrap_chi(-su)) + rates.gamma_at(wrap_chi(-sv))),
                    rates.f_at(su) - rates.f_at(sv));
                const Complex weight =
                    feed_amplitude(rates, k, cp) * std::conj(feed_amplitude(rates, k, cq));
                acc += weight * rho0_block(pos_of_chi(su), pos_of_chi(sv)) * cdexp(w, z, t);
            }
            out(1 + p, 1 + q) = acc;
        }
    }

    out(0, 0) = 1.0 - out.block(1, 1, 3, 3).trace() - out.block(4, 4, 3, 3).trace();
    return DensityMatrix(out, Basis::eigen);
}

DensityMatrix evolve_from_lowest(double rho0_weight, const SectorRates& rates, double t) {
    if (rho0_weight < 0.0 || rho0_weight > 1.0 + 1e-12)
        throw std::invalid_argument("evolve_from_lowest: weight must lie in [0, 1]");
    const double a = rates.a;
    Matrix out = Matrix::Zero(kDim, kDim);
    out(7, 7) = rho0_weight * std::exp(-3.0 * a * t);

    // populations only: jumps cannot create coherences from a diagonal state
    for (int q = 0; q < 3; ++q) {
        const double d = a + rates.upsilon32[q];  // total out-rate of (-1/2, chi_q)
        out(4 + q, 4 + q) = rho0_weight * rates.upsilon32[q] * cdexp_real(d, 3.0 * a, t);
        for (int p = 0; p < 3; ++p) {
            const double c = rates.gamma_at(kChiOrder[p]);
            out(1 + p, 1 + p) += rho0_weight * rates.upsilon21[p][q] * rates.upsilon32[q] *
                                 ddexp2(c, d, 3.0 * a, t, a);
        }
    }

    out(0, 0) = 1.0 - out.block(1, 1, 3, 3).trace() - out.block(4, 4, 3, 3).trace() - out(7, 7);
    return DensityMatrix(out, Basis::eigen);
}

Complex s_amplitude(int k, double t, const SectorRates& rates) {
    if (k < 0 || k > 2) throw std::out_of_range("s_amplitude: k must be in {0, 1, 2}");
    Complex s = 0.0;
    for (int chi : kChiOrder) {
        s += eta_pow(-k * chi) * std::exp(-0.5 * rates.gamma_at(chi) * t) *
             std::polar(1.0, -rates.f_at(wrap_chi(-chi)) * t);
    }
    return s;
}

}  // namespace trispin
