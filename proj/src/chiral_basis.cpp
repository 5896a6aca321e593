#include "trispin/chiral_basis.hpp"

#include <cmath>

namespace trispin {

namespace {

const Complex kEta = std::polar(1.0, 2.0 * M_PI / 3.0);  // exp(2 pi i / 3)

Complex eta_pow(int p) {
    // exact cube root of unity powers; avoids phase drift from repeated polar()
    switch (((p % 3) + 3) % 3) {
        case 0: return Complex(1.0, 0.0);
        case 1: return kEta;
        default: return std::conj(kEta);
    }
}

}  // namespace

int wrap_chi(int chi) { return ((chi + 1) % 3 + 3) % 3 - 1; }

const std::array<SectorLabel, 8>& eigenbasis_labels() {
    static const std::array<SectorLabel, 8> labels = {{
        {3, 0},
        {1, 0},
        {1, 1},
        {1, -1},
        {-1, 0},
        {-1, 1},
        {-1, -1},
        {-3, 0},
    }};
    return labels;
}

int eigenbasis_index(const SectorLabel& label) {
    if (!label.valid()) throw std::invalid_argument("eigenbasis_index: invalid sector label");
    const auto& labels = eigenbasis_labels();
    for (int i = 0; i < 8; ++i)
        if (labels[i] == label) return i;
    throw std::logic_error("eigenbasis_index: label not found");
}

Vector eigenstate(const SectorLabel& label) {
    if (!label.valid()) throw std::invalid_argument("eigenstate: invalid sector label");
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    switch (label.twice_sz) {
        case 3:
            return product_ket("uuu");
        case -3:
            return product_ket("ddd");
        case 1:
            // (eta^-chi |uud> + eta^chi |udu> + |duu>) / sqrt3
            return inv_sqrt3 * (eta_pow(-label.chi) * product_ket("uud") +
                                eta_pow(label.chi) * product_ket("udu") + product_ket("duu"));
        default:
            // global spin flip of the pattern above
            return inv_sqrt3 * (eta_pow(-label.chi) * product_ket("ddu") +
                                eta_pow(label.chi) * product_ket("dud") + product_ket("udd"));
    }
}

std::array<Vector, 8> eigenbasis_states() {
    std::array<Vector, 8> states;
    for (int i = 0; i < 8; ++i) states[i] = eigenstate(eigenbasis_labels()[i]);
    return states;
}

const BasisMap& basis_map() {
    static const BasisMap map = [] {
        BasisMap bm;
        bm.order = eigenbasis_labels();
        bm.to_pauli = Matrix(kDim, kDim);
        const auto states = eigenbasis_states();
        for (int i = 0; i < kDim; ++i) bm.to_pauli.col(i) = states[i];
        return bm;
    }();
    return map;
}

Matrix total_sz_operator() {
    const Matrix sz = sigma_z();
    return 0.5 * (on_qubit(1, sz) + on_qubit(2, sz) + on_qubit(3, sz));
}

Matrix chirality_operator() {
    const std::array<Matrix, 3> s = {sigma_x(), sigma_y(), sigma_z()};
    Matrix chi = Matrix::Zero(kDim, kDim);
    // sigma_1 . (sigma_2 x sigma_3) = sum_{abc} eps_abc s1^a s2^b s3^c
    for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3;
        const int c = (a + 2) % 3;
        chi += on_qubit(1, s[a]) * (on_qubit(2, s[b]) * on_qubit(3, s[c]) -
                                    on_qubit(2, s[c]) * on_qubit(3, s[b]));
    }
    return chi / (2.0 * std::sqrt(3.0));
}

DensityMatrix eigen_to_pauli(const DensityMatrix& rho) {
    if (rho.basis != Basis::eigen)
        throw std::invalid_argument("eigen_to_pauli: density matrix not tagged as eigenbasis");
    const Matrix& u = basis_map().to_pauli;
    return DensityMatrix(u * rho.m * u.adjoint(), Basis::pauli);
}

DensityMatrix pauli_to_eigen(const DensityMatrix& rho) {
    if (rho.basis != Basis::pauli)
        throw std::invalid_argument("pauli_to_eigen: density matrix not tagged as Pauli basis");
    const Matrix& u = basis_map().to_pauli;
    return DensityMatrix(u.adjoint() * rho.m * u, Basis::eigen);
}

const std::array<int, 8>& pauli_listing_permutation() {
    // {uuu, duu, udu, uud, udd, dud, ddu, ddd} -> binary indices
    static const std::array<int, 8> perm = {0, 4, 2, 1, 3, 5, 6, 7};
    return perm;
}

}  // namespace trispin
