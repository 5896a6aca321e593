// entanglement.hpp — negativity-based entanglement measures and W-state
// fidelities, plus the closed-form negativities for the product-state
// initialization in the S^z = 1/2 sector.

#pragma once

#include "trispin/analytic_solver.hpp"
#include "trispin/qubit_algebra.hpp"

namespace trispin {

// Tripartite negativity of the ideal W state, 2 sqrt(2) / 3.
double w_state_negativity();

struct NegativityReport {
    double n1 = 0.0, n2 = 0.0, n3 = 0.0;  // bipartite cuts j | kl
    double n123 = 0.0;                    // geometric mean
    double w_fidelity = 0.0;
};

// 2 sum_i |min(0, lambda_i)| over the spectrum of rho^{T_j}. The state must be
// within 1e-6 of unit trace (normalize hybrid-Liouvillian states first);
// eigenvalues below 1e-12 in magnitude count as zero.
double bipartite_negativity(const DensityMatrix& rho, int qubit);

// Geometric mean of the three bipartite negativities.
double tripartite_negativity(const DensityMatrix& rho);

// Closed form for rho = F |W><W| + (1-F) |uuu><uuu|:
//   N123(F) = sqrt((N_W F)^2 + (1-F)^2) - (1-F).
double negativity_from_fidelity(double f);

// <W_chi| rho |W_chi> on the trace-normalized state; accepts either basis.
double w_fidelity(const DensityMatrix& rho, int chi_target = 0);

// Closed-form negativities for the |duu> initialization (all sector-1/2
// eigenbasis matrix elements equal 1/3 at t = 0), zero temperature. Matches
// the generic evolve -> rotate -> partial-transpose pipeline.
NegativityReport analytic_negativity_product_init(double t, const SectorRates& rates);

}  // namespace trispin
