// Dense complex linear algebra kernel: Hermitian eigendecomposition, matrix
// functions, tensor products, partial trace and partial transpose.
//
// Index convention, fixed once for the whole library: the composite basis
// |i>_A |j>_B maps to flat index i * d_B + j (first factor is the slow index).
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "releq/common.hpp"

namespace releq {

using cxmat = Eigen::MatrixXcd;
using cxvec = Eigen::VectorXcd;
using realvec = Eigen::VectorXd;

// Eigenvalues below -eig_clip_tol on a nominally PSD matrix are an error;
// values in [-eig_clip_tol, 0) are treated as roundoff and clipped to zero.
inline constexpr double eig_clip_tol = 1e-10;
inline constexpr double hermiticity_tol = 1e-9;

struct hermitian_eig_result {
    realvec eigenvalues;   // ascending
    cxmat eigenvectors;    // orthonormal columns, same order
};

// Largest absolute entry of m - m^dagger; zero for exactly Hermitian input.
double hermiticity_defect(const cxmat& m);

// Spectral decomposition of a Hermitian matrix.  Throws non_square_error /
// not_hermitian_error when the input is outside tolerance.
hermitian_eig_result hermitian_eig(const cxmat& m);

// V diag(f(lambda)) V^dagger.  Eigenvalues in [-eig_clip_tol, 0) are clipped
// to zero before f is applied; f must be finite on the (clipped) spectrum.
cxmat mat_func(const cxmat& m, const std::function<double(double)>& f);

// Clip tiny negative eigenvalues, error on genuinely negative ones.
double clip_eigenvalue(double lambda);

cxmat mat_sqrt(const cxmat& psd);

// Kronecker product with the first factor as the slow index.
cxmat tensor(const cxmat& a, const cxmat& b);
cxvec tensor(const cxvec& a, const cxvec& b);

// Partial trace of a (d_a * d_b) square matrix; keep = 0 keeps the A factor,
// keep = 1 keeps the B factor.
cxmat partial_trace(const cxmat& m, Eigen::Index d_a, Eigen::Index d_b, int keep);

// Transpose of one factor of a (d_a * d_b) square matrix; which = 0
// transposes A, which = 1 transposes B.
cxmat partial_transpose(const cxmat& m, Eigen::Index d_a, Eigen::Index d_b, int which);

cxmat identity(Eigen::Index d);

// Projector |v><v|.
cxmat projector(const cxvec& v);

// Stable orthonormal completion: extends k orthonormal columns of a d x k
// matrix to a full d x d unitary.
cxmat complete_to_unitary(const cxmat& isometry);

// max |a_ij - b_ij|
double max_abs_diff(const cxmat& a, const cxmat& b);

}  // namespace releq
