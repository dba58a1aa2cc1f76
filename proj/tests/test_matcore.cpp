#include "doctest.h"
#include "test_helpers.hpp"

using namespace releq;
using test_util::basis_ket;
using test_util::random_hermitian;

TEST_SUITE("matcore") {

TEST_CASE("hermitian_eig of the identity") {
    hermitian_eig_result e = hermitian_eig(identity(2));
    CHECK(e.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eig of Pauli-Z is ascending") {
    cxmat z(2, 2);
    z << 1, 0, 0, -1;
    hermitian_eig_result e = hermitian_eig(z);
    CHECK(e.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig reconstructs a random 8x8 within 1e-10") {
    rng gen(101);
    cxmat m = random_hermitian(8, gen);
    hermitian_eig_result e = hermitian_eig(m);
    cxmat back = e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors.adjoint();
    CHECK(max_abs_diff(back, m) < 1e-10);
    // Columns pairwise orthonormal.
    CHECK(max_abs_diff(e.eigenvectors.adjoint() * e.eigenvectors, identity(8)) < 1e-10);
}

TEST_CASE("hermitian_eig rejects bad input") {
    CHECK_THROWS_AS(hermitian_eig(cxmat::Zero(2, 3)), non_square_error);
    cxmat skew(2, 2);
    skew << 0, 1, 2, 0;
    CHECK_THROWS_AS(hermitian_eig(skew), not_hermitian_error);
}

TEST_CASE("mat_func identity map returns the input") {
    rng gen(102);
    cxmat m = random_hermitian(4, gen);
    CHECK(max_abs_diff(mat_func(m, [](double x) { return x; }), m) < 1e-10);
}

TEST_CASE("mat_func log2 on a uniform qubit") {
    cxmat m = 0.5 * identity(2);
    cxmat l = mat_func(m, [](double x) { return std::log2(x); });
    CHECK(max_abs_diff(l, -identity(2)) < 1e-12);
}

TEST_CASE("mat_sqrt squares back to a random PSD matrix") {
    rng gen(103);
    cxmat g(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index j = 0; j < 4; ++j)
            g(i, j) = std::complex<double>(gen.gaussian(), gen.gaussian());
    cxmat psd = g * g.adjoint();
    cxmat root = mat_sqrt(psd);
    CHECK(max_abs_diff(root * root, psd) < 1e-9);
}

TEST_CASE("mat_func rejects log of a genuinely negative eigenvalue") {
    cxmat z(2, 2);
    z << 1, 0, 0, -1;
    CHECK_THROWS_AS(mat_func(z, [](double x) { return std::log(clip_eigenvalue(x)); }),
                    domain_error);
}

TEST_CASE("tensor of identities and diagonal bookkeeping") {
    CHECK(max_abs_diff(tensor(identity(2), identity(2)), identity(4)) < 1e-15);
    cxmat a(2, 2), b(2, 2);
    a << 1, 0, 0, 0;
    b << 0, 0, 0, 1;
    cxmat t = tensor(a, b);
    cxmat expect = cxmat::Zero(4, 4);
    expect(1, 1) = 1.0;  // |0>_A |1>_B at flat index 0*2+1
    CHECK(max_abs_diff(t, expect) < 1e-15);
}

TEST_CASE("tensor is trace multiplicative") {
    rng gen(104);
    for (int trial = 0; trial < 20; ++trial) {
        cxmat a = random_hermitian(3, gen), b = random_hermitian(3, gen);
        std::complex<double> lhs = tensor(a, b).trace();
        std::complex<double> rhs = a.trace() * b.trace();
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("tensor associativity on random triples") {
    rng gen(105);
    for (int trial = 0; trial < 30; ++trial) {
        cxmat a = random_hermitian(2, gen), b = random_hermitian(3, gen),
              c = random_hermitian(2, gen);
        CHECK(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) < 1e-12);
    }
}

TEST_CASE("partial_trace of a product state returns the factors") {
    rng gen(106);
    for (int trial = 0; trial < 20; ++trial) {
        density_matrix a = random_density(3, 2, gen), b = random_density(4, 3, gen);
        cxmat joint = tensor(a.mat, b.mat);
        CHECK(max_abs_diff(partial_trace(joint, 3, 4, 0), a.mat) < 1e-12);
        CHECK(max_abs_diff(partial_trace(joint, 3, 4, 1), b.mat) < 1e-12);
    }
}

TEST_CASE("partial_trace of the Bell projector is maximally mixed") {
    // Direct 4x4 arithmetic oracle: rho = |Phi+><Phi+| has entries 1/2 at
    // the four corners; tracing B sums entries (0,0)+(1,1) and (2,2)+(3,3).
    cxvec bell(4);
    bell << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
    cxmat rho = projector(bell);
    cxmat expected = cxmat::Zero(2, 2);
    expected(0, 0) = rho(0, 0) + rho(1, 1);
    expected(0, 1) = rho(0, 2) + rho(1, 3);
    expected(1, 0) = rho(2, 0) + rho(3, 1);
    expected(1, 1) = rho(2, 2) + rho(3, 3);
    CHECK(max_abs_diff(partial_trace(rho, 2, 2, 0), expected) < 1e-14);
    CHECK(max_abs_diff(expected, 0.5 * identity(2)) < 1e-14);
}

TEST_CASE("partial_trace of I4/4 keeps I2/2 and the trace") {
    cxmat m = identity(4) / 4.0;
    CHECK(max_abs_diff(partial_trace(m, 2, 2, 0), 0.5 * identity(2)) < 1e-15);
    rng gen(107);
    for (int trial = 0; trial < 50; ++trial) {
        cxmat h = random_hermitian(6, gen);
        CHECK(std::abs(partial_trace(h, 2, 3, 0).trace() - h.trace()) < 1e-12);
    }
}

TEST_CASE("partial_trace is invariant under unitaries on the traced factor") {
    rng gen(108);
    for (int trial = 0; trial < 20; ++trial) {
        cxmat h = random_hermitian(6, gen);
        cxmat u = random_unitary(3, gen);
        cxmat rotated = tensor(identity(2), u) * h * tensor(identity(2), u).adjoint();
        CHECK(max_abs_diff(partial_trace(rotated, 2, 3, 0), partial_trace(h, 2, 3, 0)) < 1e-12);
    }
}

TEST_CASE("partial_trace rejects bad dimensions") {
    CHECK_THROWS_AS(partial_trace(identity(5), 2, 3, 0), dim_mismatch_error);
}

TEST_CASE("partial_transpose keeps a product state positive") {
    rng gen(109);
    density_matrix a = random_density(2, 2, gen), b = random_density(2, 2, gen);
    cxmat joint = tensor(a.mat, b.mat);
    cxmat pt = partial_transpose(joint, 2, 2, 0);
    CHECK(max_abs_diff(pt, tensor(a.mat.transpose(), b.mat)) < 1e-14);
    hermitian_eig_result e = hermitian_eig(pt);
    CHECK(e.eigenvalues.minCoeff() > -1e-12);
}

TEST_CASE("partial_transpose of the singlet exposes -1/2") {
    cxvec singlet(4);
    singlet << 0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0;
    cxmat pt = partial_transpose(projector(singlet), 2, 2, 1);
    hermitian_eig_result e = hermitian_eig(pt);
    CHECK(e.eigenvalues[0] == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("partial_transpose is an involution") {
    rng gen(110);
    for (int trial = 0; trial < 20; ++trial) {
        cxmat h = random_hermitian(6, gen);
        CHECK(max_abs_diff(partial_transpose(partial_transpose(h, 2, 3, 1), 2, 3, 1), h) <
              1e-12);
        CHECK(max_abs_diff(partial_transpose(partial_transpose(h, 2, 3, 0), 2, 3, 0), h) <
              1e-12);
    }
}

TEST_CASE("complete_to_unitary extends an isometry") {
    rng gen(111);
    cxmat u = random_unitary(5, gen);
    cxmat completed = complete_to_unitary(u.leftCols(2));
    CHECK(max_abs_diff(completed * completed.adjoint(), identity(5)) < 1e-10);
    CHECK(max_abs_diff(completed.leftCols(2), u.leftCols(2)) < 1e-15);
}

}  // TEST_SUITE
