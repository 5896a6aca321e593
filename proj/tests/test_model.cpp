#include "trispin/model.hpp"

#include "trispin/chiral_basis.hpp"

#include <doctest.h>

#include <random>

using namespace trispin;

namespace {

// Independent oracle: the dissipator assembled directly from the rate
// matrices and bare ladder operators, without any diagonalization.
Matrix dissipator_double_sum(const NoiseModel& noise, const Matrix& rho) {
    const Matrix g = gamma_matrix(noise);
    const Matrix gt = noise.boltzmann() * g.transpose();
    std::array<Matrix, 3> up = {on_qubit(1, sigma_plus()), on_qubit(2, sigma_plus()),
                                on_qubit(3, sigma_plus())};
    std::array<Matrix, 3> down = {on_qubit(1, sigma_minus()), on_qubit(2, sigma_minus()),
                                  on_qubit(3, sigma_minus())};
    Matrix out = Matrix::Zero(kDim, kDim);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            out += g(i, j) * (up[j] * rho * down[i] -
                              0.5 * anticommutator(down[i] * up[j], rho));
            out += gt(i, j) * (down[j] * rho * up[i] -
                               0.5 * anticommutator(up[i] * down[j], rho));
        }
    }
    return out;
}

Matrix dissipator_from_jumps(const JumpSet& jumps, const Matrix& rho) {
    Matrix out = Matrix::Zero(kDim, kDim);
    for (const auto& ops : {jumps.decay_ops, jumps.excite_ops}) {
        for (const Matrix& j : ops)
            out += j * rho * j.adjoint() - 0.5 * anticommutator(j.adjoint() * j, rho);
    }
    return out;
}

Matrix random_density(std::mt19937& rng) {
    std::normal_distribution<double> g;
    Matrix raw(kDim, kDim);
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) raw(i, j) = Complex(g(rng), g(rng));
    Matrix rho = raw * raw.adjoint();
    rho /= rho.trace();
    return rho;
}

}  // namespace

TEST_CASE("gamma matrix layouts") {
    NoiseModel uncorrelated;
    uncorrelated.a = 1.0;
    uncorrelated.a_corr = 0.0;
    CHECK(max_abs(gamma_matrix(uncorrelated) - Matrix::Identity(3, 3)) <= 1e-15);

    NoiseModel dark;  // a=1, |A|=0.5, phi=pi
    const Matrix g = gamma_matrix(dark);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(g(i, j) - Complex(i == j ? 1.0 : -0.5)) <= 1e-12);

    NoiseModel bumped = dark;
    bumped.delta_a12 = 0.1;
    const Matrix diff = gamma_matrix(bumped) - g;
    CHECK(std::abs(diff(0, 1) + 0.1) <= 1e-15);
    CHECK(std::abs(diff(1, 0) + 0.1) <= 1e-15);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!((i == 0 && j == 1) || (i == 1 && j == 0)))
                CHECK(std::abs(diff(i, j)) == 0.0);
}

TEST_CASE("gamma rates at the dark point and the uncorrelated limit") {
    const auto dark = gamma_rates(1.0, std::polar(0.5, M_PI));
    CHECK(dark[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(dark[1] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(dark[2] == doctest::Approx(1.5).epsilon(1e-12));

    const auto flat = gamma_rates(0.7, 0.0);
    for (double r : flat) CHECK(r == doctest::Approx(0.7));
}

TEST_CASE("gamma matrix eigenvalues equal gamma_rates as a multiset") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        NoiseModel noise;
        noise.a = 0.5 + u(rng);
        noise.a_corr = 0.5 * noise.a * u(rng);
        noise.phi = 2.0 * M_PI * u(rng);
        auto rates = gamma_rates(noise.a, noise.corr());
        std::sort(rates.begin(), rates.end());
        const auto eigs = hermitian_eigenvalues(gamma_matrix(noise));
        for (int i = 0; i < 3; ++i)
            CHECK(eigs[i] == doctest::Approx(rates[i]).epsilon(1e-12));
    }
}

TEST_CASE("rate sum and detailed balance") {
    std::mt19937 rng(32);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double beta : {1.0, 5.0, 10.0}) {
        NoiseModel noise;
        noise.a = 1.0 + u(rng);
        noise.a_corr = 0.4 * noise.a;
        noise.phi = 2.0 * M_PI * u(rng);
        noise.beta_delta = beta;
        const JumpSet jumps = jump_operators(noise);
        CHECK(jumps.rates[0] + jumps.rates[1] + jumps.rates[2] ==
              doctest::Approx(3.0 * noise.a).epsilon(1e-12));
        for (int i = 0; i < 3; ++i)
            CHECK(jumps.tilde_rates[i] ==
                  doctest::Approx(std::exp(-beta) * jumps.rates[i]).epsilon(1e-12));
    }
}

TEST_CASE("dark jump vanishes and J_1 feeds the chi=1 state from ddd") {
    NoiseModel dark;  // defaults: a=1, |A|=0.5, phi=pi -> gamma_0 = 0
    const JumpSet jumps = jump_operators(dark);
    CHECK(max_abs(jumps.decay_ops[0]) <= 1e-9);
    CHECK(jumps.rates[0] == doctest::Approx(0.0).epsilon(1e-12));

    const Vector image = jumps.decay_ops[1] * product_ket("ddd");  // label k=+1
    const Vector target = eigenstate({-1, 1});
    const double overlap = std::abs(Complex(target.adjoint() * image));
    CHECK(overlap == doctest::Approx(image.norm()).epsilon(1e-12));
    CHECK(image.norm() > 0.5);
}

TEST_CASE("zero temperature disables all excitation operators") {
    NoiseModel noise;  // beta_delta defaults to infinity
    const JumpSet jumps = jump_operators(noise);
    for (const Matrix& op : jumps.excite_ops) CHECK(max_abs(op) == 0.0);
    for (double r : jumps.tilde_rates) CHECK(r == 0.0);
}

TEST_CASE("diagonalized dissipator equals the double-sum form") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 12; ++trial) {
        NoiseModel noise;
        noise.a = 0.5 + u(rng);
        noise.a_corr = 0.45 * noise.a * u(rng);
        noise.phi = 2.0 * M_PI * u(rng);
        if (trial % 2 == 1) noise.delta_a12 = std::polar(0.05 * noise.a, 2.0 * M_PI * u(rng));
        if (trial % 3 == 0) noise.beta_delta = 1.0 + 5.0 * u(rng);
        if (!validate_cp(noise).ok) continue;
        const JumpSet jumps = jump_operators(noise);
        const Matrix rho = random_density(rng);
        CHECK(max_abs(dissipator_from_jumps(jumps, rho) -
                      dissipator_double_sum(noise, rho)) <= 1e-12);
    }
}

TEST_CASE("invalid rate matrix is rejected") {
    NoiseModel bad;
    bad.a_corr = 0.6;  // a < 2|A|
    CHECK_THROWS_AS(jump_operators(bad), std::domain_error);
}

TEST_CASE("system Hamiltonian diagonal values") {
    CoherentModel c;
    c.delta = 2.5;
    const Matrix h = hamiltonian_system(c);
    auto expect = [&](const char* ket, double value) {
        const Vector v = product_ket(ket);
        CHECK(Complex(v.adjoint() * h * v).real() == doctest::Approx(value).epsilon(1e-14));
    };
    expect("uuu", -1.5 * c.delta);
    expect("ddd", 1.5 * c.delta);
    expect("duu", -0.5 * c.delta);  // S^z = 1/2 sector
}

TEST_CASE("coherent coupling eigenvalues on the W states") {
    CoherentModel c;
    c.j = 0.8;
    c.psi = 0.9;
    const Matrix h = hamiltonian_effective(c);
    auto f = [&](int j) { return 2.0 * c.j * std::cos(c.psi + 2.0 * M_PI * j / 3.0); };
    // the state of chirality chi carries f(-chi) in the upper sector and
    // f(+chi) in the lower one
    for (int chi : {-1, 0, 1}) {
        const Vector upper = eigenstate({1, chi});
        const Vector lower = eigenstate({-1, chi});
        CHECK(Complex(upper.adjoint() * h * upper).real() ==
              doctest::Approx(f(-chi)).epsilon(1e-12));
        CHECK(Complex(lower.adjoint() * h * lower).real() ==
              doctest::Approx(f(chi)).epsilon(1e-12));
    }

    // achiral-chiral splitting at psi = 0 is 3J
    CoherentModel straight;
    straight.j = 0.8;
    straight.psi = 0.0;
    const Matrix h0 = hamiltonian_effective(straight);
    const Vector w0 = eigenstate({1, 0});
    const Vector wp = eigenstate({1, 1});
    const double split =
        (Complex(w0.adjoint() * h0 * w0) - Complex(wp.adjoint() * h0 * wp)).real();
    CHECK(split == doctest::Approx(3.0 * straight.j).epsilon(1e-12));

    CoherentModel off;
    off.j = 0.0;
    CHECK(max_abs(hamiltonian_effective(off)) == 0.0);
}

TEST_CASE("Hamiltonian commutation relations") {
    CoherentModel c;
    c.delta = 3.0;
    c.j = 1.1;
    c.psi = 0.7;
    const Matrix hs = hamiltonian_system(c);
    const Matrix he = hamiltonian_effective(c);
    CHECK(max_abs(commutator(hs, he)) <= 1e-12);
    CHECK(max_abs(commutator(he, total_sz_operator())) <= 1e-12);
    CHECK(max_abs(commutator(he, chirality_operator())) <= 1e-12);

    CoherentModel asym = c;
    asym.delta_j12 = 0.3;
    const Matrix hp = hamiltonian_asymmetry(asym);
    CHECK(is_hermitian(hp, 1e-14));
    CHECK(max_abs(commutator(hp, chirality_operator())) > 1e-3);  // breaks chirality
}

TEST_CASE("asymmetry overlaps with the W states") {
    CoherentModel c;
    c.delta_j12 = 0.45;
    for (double psi : {0.0, 0.3, 1.2}) {
        c.psi = psi;
        const Matrix hp = hamiltonian_asymmetry(c);
        const Vector xi = hp * eigenstate({1, 0});
        const Complex w_overlap = eigenstate({1, 0}).adjoint() * xi;
        CHECK(w_overlap.real() ==
              doctest::Approx(2.0 * c.delta_j12 / 3.0 * std::cos(psi)).epsilon(1e-12));
        CHECK(std::abs(w_overlap.imag()) <= 1e-14);
        // chiral overlaps: magnitudes match cos(psi +- 2pi/3) up to the state
        // phase convention
        for (int chi : {1, -1}) {
            const double mag = std::abs(Complex(eigenstate({1, chi}).adjoint() * xi));
            const double expected =
                std::abs(2.0 * c.delta_j12 / 3.0 * std::cos(psi + chi * 2.0 * M_PI / 3.0));
            CHECK(mag == doctest::Approx(expected).epsilon(1e-12));
        }
    }
    c.delta_j12 = 0.0;
    CHECK(max_abs(hamiltonian_asymmetry(c)) == 0.0);
}

TEST_CASE("drive Hamiltonian") {
    CoherentModel c;
    c.drive = DriveSpec{0.9, 4.0, 2.0};
    const double t_node = M_PI / (2.0 * c.drive->omega);
    CHECK(max_abs(hamiltonian_drive(c, t_node)) <= 1e-14);
    CHECK(max_abs(hamiltonian_drive(c, c.drive->duration + 0.1)) == 0.0);
    CHECK(is_hermitian(hamiltonian_drive(c, 0.3), 1e-14));

    const Matrix j_drive = on_qubit(1, sigma_plus()) + on_qubit(2, sigma_plus()) +
                           on_qubit(3, sigma_plus());
    const Complex elem = product_ket("uuu").adjoint() * j_drive * eigenstate({1, 0});
    CHECK(elem.real() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));

    CoherentModel plain;
    CHECK_THROWS_AS(hamiltonian_drive(plain, 0.0), std::logic_error);
}

TEST_CASE("complete positivity validation") {
    NoiseModel boundary;  // a=1, |A|=0.5
    CHECK(validate_cp(boundary).ok);

    NoiseModel broken;
    broken.a_corr = 0.6;
    const CpReport report = validate_cp(broken);
    CHECK_FALSE(report.ok);
    CHECK(report.min_eigenvalue < 0.0);

    NoiseModel perturbed;  // boundary point plus a small link perturbation
    perturbed.delta_a12 = 0.05;
    const CpReport numeric = validate_cp(perturbed);
    const auto eigs = hermitian_eigenvalues(gamma_matrix(perturbed));
    CHECK(numeric.min_eigenvalue == doctest::Approx(eigs.front()).epsilon(1e-12));
}
