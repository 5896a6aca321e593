#include "trispin/chiral_basis.hpp"

#include "trispin/model.hpp"

#include <doctest.h>

#include <random>

using namespace trispin;

TEST_CASE("exactly eight valid sector labels") {
    int count = 0;
    for (int tsz : {3, 1, -1, -3})
        for (int chi : {-1, 0, 1})
            if (SectorLabel{tsz, chi}.valid()) ++count;
    CHECK(count == 8);
    for (int i = 0; i < 8; ++i) CHECK(eigenbasis_index(eigenbasis_labels()[i]) == i);
    CHECK_THROWS_AS(eigenbasis_index(SectorLabel{3, 1}), std::invalid_argument);
}

TEST_CASE("eigenstates are normalized joint eigenvectors of Sz and chi") {
    const Matrix sz = total_sz_operator();
    const Matrix chi_op = chirality_operator();
    for (const SectorLabel& label : eigenbasis_labels()) {
        const Vector v = eigenstate(label);
        CHECK(std::abs(v.norm() - 1.0) <= 1e-15);
        CHECK((sz * v - 0.5 * label.twice_sz * v).norm() <= 1e-12);
        CHECK((chi_op * v - static_cast<double>(label.chi) * v).norm() <= 1e-12);
    }
}

TEST_CASE("achiral W state has equal real amplitudes") {
    const Vector w = eigenstate({1, 0});
    const double amp = 1.0 / std::sqrt(3.0);
    for (const char* ket : {"uud", "udu", "duu"}) {
        const Complex c = product_ket(ket).adjoint() * w;
        CHECK(std::abs(c - amp) <= 1e-15);
    }
}

TEST_CASE("symmetry operator spectra") {
    const auto sz_eigs = hermitian_eigenvalues(total_sz_operator());
    const std::vector<double> sz_expected = {-1.5, -0.5, -0.5, -0.5, 0.5, 0.5, 0.5, 1.5};
    for (int i = 0; i < kDim; ++i) CHECK(sz_eigs[i] == doctest::Approx(sz_expected[i]));

    CHECK(max_abs(commutator(total_sz_operator(), chirality_operator())) <= 1e-14);

    // chirality spectrum restricted to the S^z = +-1/2 sectors is {0, +-1}
    const Matrix chi_op = chirality_operator();
    for (int tsz : {1, -1}) {
        for (int chi : {-1, 0, 1}) {
            const Vector v = eigenstate({tsz, chi});
            const Complex ev = v.adjoint() * chi_op * v;
            CHECK(ev.real() == doctest::Approx(chi).epsilon(1e-12));
        }
    }
}

TEST_CASE("basis map is exactly unitary and sector-block structured") {
    const Matrix& u = basis_map().to_pauli;
    CHECK(max_abs(u.adjoint() * u - Matrix::Identity(kDim, kDim)) <= 1e-14);

    // in the conventional listing the sectors are contiguous; each eigenstate
    // must be supported on its own sector's rows
    const auto& perm = pauli_listing_permutation();
    const std::array<std::pair<int, int>, 8> sector_rows = {{
        {0, 1}, {1, 4}, {1, 4}, {1, 4}, {4, 7}, {4, 7}, {4, 7}, {7, 8},
    }};
    for (int col = 0; col < kDim; ++col) {
        for (int listed = 0; listed < kDim; ++listed) {
            const bool inside =
                listed >= sector_rows[col].first && listed < sector_rows[col].second;
            if (!inside) CHECK(std::abs(u(perm[listed], col)) <= 1e-15);
        }
    }
}

TEST_CASE("basis rotation preserves trace and spectrum, round-trips exactly") {
    std::mt19937 rng(17);
    std::normal_distribution<double> g;
    Matrix raw(kDim, kDim);
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) raw(i, j) = Complex(g(rng), g(rng));
    Matrix rho = raw * raw.adjoint();
    rho /= rho.trace();

    const DensityMatrix in_eigen(rho, Basis::eigen);
    const DensityMatrix in_pauli = eigen_to_pauli(in_eigen);
    CHECK(in_pauli.basis == Basis::pauli);
    CHECK(in_pauli.m.trace().real() == doctest::Approx(1.0).epsilon(1e-13));
    const auto before = hermitian_eigenvalues(rho);
    const auto after = hermitian_eigenvalues(in_pauli.m);
    for (int i = 0; i < kDim; ++i)
        CHECK(before[i] == doctest::Approx(after[i]).epsilon(1e-12));

    const DensityMatrix back = pauli_to_eigen(in_pauli);
    CHECK(max_abs(back.m - rho) <= 1e-14);

    CHECK_THROWS_AS(eigen_to_pauli(in_pauli), std::invalid_argument);
    CHECK_THROWS_AS(pauli_to_eigen(in_eigen), std::invalid_argument);
}

TEST_CASE("achiral W projector rotates to the all-1/3 block") {
    Matrix rho_eigen = Matrix::Zero(kDim, kDim);
    rho_eigen(1, 1) = 1.0;  // |1/2, 0>
    const Matrix rho = eigen_to_pauli(DensityMatrix(rho_eigen, Basis::eigen)).m;
    const int uud = 1, udu = 2, duu = 4;
    for (int r : {uud, udu, duu})
        for (int c : {uud, udu, duu})
            CHECK(std::abs(rho(r, c) - Complex(1.0 / 3.0)) <= 1e-15);
    CHECK(rho.trace().real() == doctest::Approx(1.0));
}

TEST_CASE("scalar state is basis invariant") {
    const Matrix scalar = Matrix::Identity(kDim, kDim) / 8.0;
    CHECK(max_abs(eigen_to_pauli(DensityMatrix(scalar, Basis::eigen)).m - scalar) <= 1e-15);
}

TEST_CASE("coherent Hamiltonian is diagonal in the eigenbasis") {
    const Matrix& u = basis_map().to_pauli;
    for (double j : {0.0, 0.7, 3.0}) {
        for (double psi : {0.0, 0.4, M_PI / 3.0, 2.0}) {
            CoherentModel c;
            c.delta = 1.3;
            c.j = j;
            c.psi = psi;
            const Matrix h = hamiltonian_system(c) + hamiltonian_effective(c);
            const Matrix rotated = u.adjoint() * h * u;
            Matrix off = rotated;
            off.diagonal().setZero();
            CHECK(max_abs(off) <= 1e-12);
        }
    }
}

TEST_CASE("jump operators obey the chirality selection rule") {
    NoiseModel noise;
    noise.a = 1.0;
    noise.a_corr = 0.4;
    noise.phi = 1.1;  // generic phase, all rates distinct
    const JumpSet jumps = jump_operators(noise);
    const std::array<int, 3> ks = {0, 1, -1};

    for (int i = 0; i < 3; ++i) {
        const int k = ks[i];
        for (const SectorLabel& label : eigenbasis_labels()) {
            const Vector image = jumps.decay_ops[i] * eigenstate(label);
            const SectorLabel target{label.twice_sz + 2, wrap_chi(label.chi + k)};
            for (const SectorLabel& probe : eigenbasis_labels()) {
                const double overlap = std::abs(Complex(eigenstate(probe).adjoint() * image));
                if (target.valid() && probe == target) continue;
                CHECK(overlap <= 1e-12);
            }
        }
    }
}

TEST_CASE("negativity must be evaluated in the Pauli basis") {
    // treating the eigenbasis matrix of |1/2,0> as if it were Pauli data gives
    // a different (wrong) answer than the sanctioned rotate-then-transpose path
    Matrix rho_eigen = Matrix::Zero(kDim, kDim);
    rho_eigen(1, 1) = 1.0;

    auto negativity_of = [](const Matrix& m) {
        double neg = 0.0;
        for (double ev : hermitian_eigenvalues(partial_transpose(m, 1)))
            if (ev < 0.0) neg -= ev;
        return 2.0 * neg;
    };
    const double wrong = negativity_of(rho_eigen);
    const double right = negativity_of(eigen_to_pauli(DensityMatrix(rho_eigen, Basis::eigen)).m);
    CHECK(right == doctest::Approx(2.0 * std::sqrt(2.0) / 3.0).epsilon(1e-12));
    CHECK(std::abs(right - wrong) > 0.9);  // diagonal matrix has no negativity
}
