// chiral_basis.hpp — the (S^z, chi) eigenbasis of the coherent dynamics, the
// symmetry operators, and the transformation to/from the Pauli product basis.
//
// Eigenbasis order: {uuu, |1/2,0>, |1/2,+1>, |1/2,-1>, |-1/2,0>, |-1/2,+1>,
// |-1/2,-1>, ddd}. Within a sector the chirality order is (0, +1, -1).

#pragma once

#include "trispin/qubit_algebra.hpp"

#include <array>

namespace trispin {

// Joint eigenvalue label: S^z in {+-3/2, +-1/2} (stored doubled to stay
// integral) and chi in {-1, 0, +1} with |chi| <= 3/2 - |S^z|.
struct SectorLabel {
    int twice_sz;  // +3, +1, -1, -3
    int chi;       // -1, 0, +1; must be 0 when |twice_sz| == 3

    bool valid() const {
        if (twice_sz == 3 || twice_sz == -3) return chi == 0;
        if (twice_sz == 1 || twice_sz == -1) return chi >= -1 && chi <= 1;
        return false;
    }
    friend bool operator==(const SectorLabel& a, const SectorLabel& b) {
        return a.twice_sz == b.twice_sz && a.chi == b.chi;
    }
};

// chi + k wrapped back into {-1, 0, +1} (mod-3 arithmetic centered at zero).
int wrap_chi(int chi);

// All 8 labels in eigenbasis order, and the order <-> label maps.
const std::array<SectorLabel, 8>& eigenbasis_labels();
int eigenbasis_index(const SectorLabel& label);

// Records the eigenbasis ordering and the unitary U mapping eigenbasis
// coordinates to Pauli coordinates: rho_pauli = U rho_eigen U^dag.
// U mixes only within each S^z sector.
struct BasisMap {
    std::array<SectorLabel, 8> order;
    Matrix to_pauli;  // 8x8 unitary, columns are the eigenstates
};

const BasisMap& basis_map();

// The 8 normalized eigenstates as Pauli-basis vectors, in eigenbasis order.
std::array<Vector, 8> eigenbasis_states();
Vector eigenstate(const SectorLabel& label);

// Symmetry operators in the Pauli basis.
Matrix total_sz_operator();   // (1/2) sum_i sigma_i^z
Matrix chirality_operator();  // (1/2 sqrt 3) sigma_1 . (sigma_2 x sigma_3)

// Basis rotations for density matrices; the source tag must match.
DensityMatrix eigen_to_pauli(const DensityMatrix& rho);
DensityMatrix pauli_to_eigen(const DensityMatrix& rho);

// Index permutation realizing the conventional listing
// {uuu, duu, udu, uud, udd, dud, ddu, ddd} on top of the plain binary order:
// pauli_listing_permutation()[i] is the binary index of the i-th listed state.
// In this listing the S^z sectors are contiguous blocks {1}, {3}, {3}, {1}.
const std::array<int, 8>& pauli_listing_permutation();

}  // namespace trispin
