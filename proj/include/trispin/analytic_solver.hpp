// analytic_solver.hpp — closed-form zero-temperature evolution of the 8x8
// density matrix in the (S^z, chi) eigenbasis for the three initialization
// classes: support in the sector S^z = 1/2, in S^z = -1/2, or in |ddd>.
//
// Sector blocks are 3x3 with positions (0, 1, 2) <-> chi (0, +1, -1). The
// state |1/2, chi> decays at gamma(chi) and carries energy f(-chi); the state
// |-1/2, chi> decays at a + gamma(-chi) and carries energy f(+chi); jumps feed
// (-1/2, chi) -> (1/2, chi') at rate gamma(chi - chi')/3, quadrupled when
// chi' = -chi, and |ddd> -> (-1/2, chi) at rate gamma(-chi).

#pragma once

#include "trispin/model.hpp"
#include "trispin/qubit_algebra.hpp"

#include <array>

namespace trispin {

// Rates and feed/decay tables entering the sector cascade, all in the
// position order chi = (0, +1, -1).
struct SectorRates {
    double a = 1.0;
    std::array<double, 3> gamma{};  // gamma(0), gamma(+1), gamma(-1)
    std::array<double, 3> f{};      // f(0), f(+1), f(-1)

    std::array<double, 3> upsilon32{};  // |ddd> -> (-1/2, chi_i)
    std::array<double, 3> gamma32{};    // upsilon32[i] - 2a
    std::array<std::array<double, 3>, 3> upsilon21{};  // [dest][src]
    std::array<std::array<double, 3>, 3> gamma21{};

    double gamma_at(int chi) const { return gamma[chi == 0 ? 0 : (chi == 1 ? 1 : 2)]; }
    double f_at(int chi) const { return f[chi == 0 ? 0 : (chi == 1 ? 1 : 2)]; }
};

// f_j = 2 J cos(psi + 2 pi j / 3), returned as (f_0, f_+1, f_-1).
std::array<double, 3> f_rates(double j, double psi);

// Requires a homogeneous noise model (delta_a12 = 0) at zero temperature.
SectorRates make_sector_rates(const NoiseModel& noise, const CoherentModel& coherent);

// Initial 3x3 block in the S^z = 1/2 sector (Hermitian, trace <= 1); any
// missing weight sits in the stationary |uuu> population from t = 0.
DensityMatrix evolve_from_half(const Matrix& rho0_block, const SectorRates& rates, double t);

// Initial 3x3 block in the S^z = -1/2 sector.
DensityMatrix evolve_from_minus_half(const Matrix& rho0_block, const SectorRates& rates, double t);

// Initial weight on |ddd| (diagonal-only evolution across all sectors).
DensityMatrix evolve_from_lowest(double rho0_weight, const SectorRates& rates, double t);

// Discrete-Fourier amplitude of the sector-1/2 coherences for the product
// initialization, k in {0, 1, 2}:
//   S_k(t) = sum_chi eta^{-k chi} exp(-gamma(chi) t / 2) exp(-i f(-chi) t).
Complex s_amplitude(int k, double t, const SectorRates& rates);

}  // namespace trispin
