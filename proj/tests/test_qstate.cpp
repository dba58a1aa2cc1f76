#include "doctest.h"
#include "test_helpers.hpp"

using namespace releq;
using test_util::basis_ket;
using test_util::random_bipartite_ket;

TEST_SUITE("qstate") {

TEST_CASE("schmidt of a product state has one coefficient") {
    cxvec amps = tensor(basis_ket(2, 0), basis_ket(2, 1));
    schmidt_decomposition sd = schmidt(ket::make(amps, {2, 2}));
    CHECK(sd.coeffs[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sd.coeffs[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("schmidt of the EPR pair is balanced") {
    cxvec amps(4);
    amps << 0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0;
    schmidt_decomposition sd = schmidt(ket::make(amps, {2, 2}));
    CHECK(sd.coeffs[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(sd.coeffs[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("schmidt of random 3x4 states reassembles and matches spectra") {
    rng gen(301);
    for (int trial = 0; trial < 30; ++trial) {
        ket psi = random_bipartite_ket(3, 4, gen);
        schmidt_decomposition sd = schmidt(psi);
        CHECK(sd.coeffs.size() == 3);
        // Descending, nonnegative, normalized.
        double sumsq = 0.0;
        for (std::size_t i = 0; i < sd.coeffs.size(); ++i) {
            CHECK(sd.coeffs[i] >= -1e-15);
            if (i > 0) CHECK(sd.coeffs[i] <= sd.coeffs[i - 1] + 1e-12);
            sumsq += sd.coeffs[i] * sd.coeffs[i];
        }
        CHECK(sumsq == doctest::Approx(1.0).epsilon(1e-10));
        ket back = schmidt_reassemble(sd, 3, 4);
        CHECK(equal_up_to_phase(back.amps, psi.amps, 1e-9));
        // Both reduced states carry the squared coefficients as spectrum.
        hermitian_eig_result ea = hermitian_eig(reduced_state(psi, 0).mat);
        hermitian_eig_result eb = hermitian_eig(reduced_state(psi, 1).mat);
        for (int i = 0; i < 3; ++i) {
            double g2 = sd.coeffs[static_cast<std::size_t>(i)] *
                        sd.coeffs[static_cast<std::size_t>(i)];
            CHECK(ea.eigenvalues[2 - i] == doctest::Approx(g2).epsilon(1e-9));
            CHECK(eb.eigenvalues[3 - i] == doctest::Approx(g2).epsilon(1e-9));
        }
    }
}

TEST_CASE("schmidt orthonormality of both bases") {
    rng gen(302);
    ket psi = random_bipartite_ket(4, 2, gen);  // larger side first
    schmidt_decomposition sd = schmidt(psi);
    for (std::size_t i = 0; i < sd.coeffs.size(); ++i) {
        for (std::size_t j = 0; j < sd.coeffs.size(); ++j) {
            double expect = i == j ? 1.0 : 0.0;
            CHECK(std::abs(sd.basis_a[i].dot(sd.basis_a[j])) ==
                  doctest::Approx(expect).epsilon(1e-9));
            CHECK(std::abs(sd.basis_b[i].dot(sd.basis_b[j])) ==
                  doctest::Approx(expect).epsilon(1e-9));
        }
    }
}

TEST_CASE("schmidt rejects non-bipartite input") {
    rng gen(303);
    ket psi = random_state(4, gen);
    CHECK_THROWS_AS(schmidt(psi), not_bipartite_error);
}

TEST_CASE("purify pure and mixed states") {
    density_matrix pure = density_matrix::make(projector(basis_ket(2, 0)), {2});
    ket pur = purify(pure);
    CHECK(equal_up_to_phase(pur.amps, tensor(basis_ket(2, 0), basis_ket(2, 0)), 1e-9));

    density_matrix mixed = density_matrix::make(0.5 * identity(2), {2});
    ket bell_like = purify(mixed);
    bell_like.dims = {2, 2};
    schmidt_decomposition sd = schmidt(bell_like);
    CHECK(sd.coeffs[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
    CHECK(sd.coeffs[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));

    rng gen(304);
    for (int trial = 0; trial < 20; ++trial) {
        density_matrix rho = random_density(4, 3, gen);
        ket psi = purify(rho);
        CHECK(max_abs_diff(partial_trace(projector(psi.amps), 4, 4, 0), rho.mat) < 1e-9);
    }
}

TEST_CASE("fidelity basics and the commuting formula") {
    rng gen(305);
    density_matrix rho = random_density(3, 2, gen);
    CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-9));
    density_matrix e0 = density_matrix::make(projector(basis_ket(2, 0)), {2});
    density_matrix e1 = density_matrix::make(projector(basis_ket(2, 1)), {2});
    CHECK(fidelity(e0, e1) == doctest::Approx(0.0).epsilon(1e-9));
    cxmat da(2, 2), db(2, 2);
    da << 0.5, 0, 0, 0.5;
    db << 0.25, 0, 0, 0.75;
    double expect = std::sqrt(0.125) + std::sqrt(0.375);
    CHECK(fidelity(density_matrix::make(da, {2}), density_matrix::make(db, {2})) ==
          doctest::Approx(expect).epsilon(1e-12));
    CHECK_THROWS_AS(fidelity(e0, rho), dim_mismatch_error);
}

TEST_CASE("fidelity is symmetric") {
    rng gen(306);
    for (int trial = 0; trial < 30; ++trial) {
        density_matrix a = random_density(3, 3, gen), b = random_density(3, 2, gen);
        CHECK(std::abs(fidelity(a, b) - fidelity(b, a)) < 1e-9);
    }
}

TEST_CASE("bures distance endpoints and fidelity relation") {
    density_matrix e0 = density_matrix::make(projector(basis_ket(2, 0)), {2});
    density_matrix e1 = density_matrix::make(projector(basis_ket(2, 1)), {2});
    CHECK(bures_distance(e0, e0) == doctest::Approx(0.0));
    CHECK(bures_distance(e0, e1) == doctest::Approx(1.0));
    rng gen(307);
    for (int trial = 0; trial < 100; ++trial) {
        density_matrix a = random_density(3, 2, gen), b = random_density(3, 3, gen);
        double f = fidelity(a, b), d = bures_distance(a, b);
        CHECK(d * d + f * f == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("bures distance contracts under random channels") {
    rng gen(308);
    for (int trial = 0; trial < 500; ++trial) {
        density_matrix a = random_density(2, 2, gen), b = random_density(2, 1, gen);
        kraus_channel ch = random_channel(2, 2, gen);
        CHECK(bures_distance(apply(ch, a), apply(ch, b)) <= bures_distance(a, b) + 1e-9);
    }
}

TEST_CASE("random_state determinism and purity") {
    rng g1(777), g2(777);
    ket a = random_state(5, g1), b = random_state(5, g2);
    CHECK(max_abs_diff(a.amps, b.amps) == 0.0);
    rng g3(778);
    density_matrix rho = random_density(4, 1, g3);
    CHECK((rho.mat * rho.mat).trace().real() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(random_density(3, 4, g3), bad_rank_error);
}

TEST_CASE("random_state Bloch isotropy") {
    rng gen(309);
    double x = 0, y = 0, z = 0;
    const int samples = 10000;
    for (int s = 0; s < samples; ++s) {
        ket psi = random_state(2, gen);
        std::complex<double> a = psi.amps[0], b = psi.amps[1];
        x += 2.0 * (std::conj(a) * b).real();
        y += 2.0 * (std::conj(a) * b).imag();
        z += std::norm(a) - std::norm(b);
    }
    double norm = std::sqrt(x * x + y * y + z * z) / samples;
    CHECK(norm < 0.05);
}

TEST_CASE("pure bipartite states have equal reduced entropies") {
    rng gen(310);
    for (int trial = 0; trial < 100; ++trial) {
        ket psi = random_bipartite_ket(2, 4, gen);
        double sa = von_neumann(reduced_state(psi, 0), units::nats);
        double sb = von_neumann(reduced_state(psi, 1), units::nats);
        CHECK(std::abs(sa - sb) < 1e-9);
    }
}

TEST_CASE("ket and density validation") {
    cxvec unnormalized(2);
    unnormalized << 1.0, 1.0;
    CHECK_THROWS_AS(ket::make(unnormalized, {2}), validation_error);
    CHECK_THROWS_AS(density_matrix::make(identity(2), {2}), validation_error);  // trace 2
    cxmat neg(2, 2);
    neg << 1.5, 0, 0, -0.5;
    CHECK_THROWS_AS(density_matrix::make(neg, {2}), validation_error);
}

}  // TEST_SUITE
