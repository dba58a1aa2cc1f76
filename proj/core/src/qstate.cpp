#include "releq/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace releq {

namespace {
constexpr double norm_tol = 1e-10;
constexpr double trace_tol = 1e-10;
constexpr double schmidt_zero = 1e-12;

Eigen::Index dims_product(const std::vector<Eigen::Index>& dims) {
    Eigen::Index prod = 1;
    for (Eigen::Index d : dims) {
        if (d < 1) throw validation_error("subsystem dimension must be positive");
        prod *= d;
    }
    return prod;
}

void require_bipartite(const std::vector<Eigen::Index>& dims) {
    if (dims.size() != 2) throw not_bipartite_error("expected exactly two subsystems");
}
}  // namespace

ket ket::make(cxvec amps, std::vector<Eigen::Index> dims) {
    if (dims.empty()) dims = {amps.size()};
    if (dims_product(dims) != amps.size()) {
        throw dim_mismatch_error("ket: dims do not multiply to the vector length");
    }
    if (!amps.allFinite()) throw validation_error("ket: non-finite amplitude");
    if (std::abs(amps.norm() - 1.0) > norm_tol) {
        throw validation_error("ket: norm " + std::to_string(amps.norm()) + " is not 1");
    }
    return ket{std::move(amps), std::move(dims)};
}

density_matrix density_matrix::make(cxmat mat, std::vector<Eigen::Index> dims) {
    if (dims.empty()) dims = {mat.rows()};
    if (mat.rows() != mat.cols()) throw non_square_error("density_matrix: not square");
    if (dims_product(dims) != mat.rows()) {
        throw dim_mismatch_error("density_matrix: dims do not multiply to the size");
    }
    if (!mat.allFinite()) throw validation_error("density_matrix: non-finite entry");
    if (hermiticity_defect(mat) > hermiticity_tol) {
        throw not_hermitian_error("density_matrix: not Hermitian within tolerance");
    }
    double tr = mat.trace().real();
    if (std::abs(tr - 1.0) > trace_tol) {
        throw validation_error("density_matrix: trace " + std::to_string(tr) + " is not 1");
    }
    Eigen::SelfAdjointEigenSolver<cxmat> solver(0.5 * (mat + mat.adjoint()),
                                                Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -eig_clip_tol) {
        throw validation_error("density_matrix: eigenvalue " +
                               std::to_string(solver.eigenvalues().minCoeff()) +
                               " below -1e-10");
    }
    return density_matrix{std::move(mat), std::move(dims)};
}

density_matrix density_matrix::from_ket(const ket& psi) {
    return density_matrix{projector(psi.amps), psi.dims};
}

density_matrix reduced_state(const density_matrix& rho, int keep) {
    require_bipartite(rho.dims);
    cxmat red = partial_trace(rho.mat, rho.dims[0], rho.dims[1], keep);
    return density_matrix{red, {rho.dims[keep]}};
}

density_matrix reduced_state(const ket& psi, int keep) {
    return reduced_state(density_matrix::from_ket(psi), keep);
}

schmidt_decomposition schmidt(const ket& psi) {
    require_bipartite(psi.dims);
    const Eigen::Index d_a = psi.dims[0];
    const Eigen::Index d_b = psi.dims[1];
    // Coefficient matrix c(n, m) of |psi> = sum c_nm |n>_A |m>_B.
    Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        c(psi.amps.data(), d_a, d_b);

    const bool a_smaller = d_a <= d_b;
    const Eigen::Index d_small = a_smaller ? d_a : d_b;
    // Reduced state of the smaller factor.
    cxmat reduced = a_smaller ? cxmat(c * c.adjoint()) : cxmat(c.transpose() * c.conjugate());
    hermitian_eig_result eig = hermitian_eig(reduced);

    schmidt_decomposition out;
    out.coeffs.resize(d_small);
    out.basis_a.resize(d_small);
    out.basis_b.resize(d_small);

    // Descending order; eigenvalues arrive ascending.
    cxmat partner_raw(a_smaller ? d_b : d_a, d_small);
    for (Eigen::Index r = 0; r < d_small; ++r) {
        const Eigen::Index src = d_small - 1 - r;
        const double g = std::sqrt(clip_eigenvalue(eig.eigenvalues[src]));
        out.coeffs[r] = g;
        cxvec small_vec = eig.eigenvectors.col(src);
        // Partner vector c' / g on the larger side, left unnormalized for now.
        cxvec partner = a_smaller ? cxvec(c.transpose() * small_vec.conjugate())
                                  : cxvec(c * small_vec.conjugate());
        partner_raw.col(r) = partner;
        if (a_smaller) {
            out.basis_a[r] = small_vec;
        } else {
            out.basis_b[r] = small_vec;
        }
    }
    // Divide by g where well defined, complete orthonormally where g ~ 0.
    cxmat completed(partner_raw.rows(), d_small);
    Eigen::Index defined = 0;
    for (Eigen::Index r = 0; r < d_small; ++r) {
        if (out.coeffs[r] > schmidt_zero) {
            completed.col(defined++) = partner_raw.col(r) / out.coeffs[r];
        }
    }
    cxmat full = complete_to_unitary(completed.leftCols(defined));
    Eigen::Index next_free = defined;
    Eigen::Index used = 0;
    for (Eigen::Index r = 0; r < d_small; ++r) {
        cxvec v = out.coeffs[r] > schmidt_zero ? cxvec(full.col(used++))
                                               : cxvec(full.col(next_free++));
        if (a_smaller) {
            out.basis_b[r] = v;
        } else {
            out.basis_a[r] = v;
        }
    }
    return out;
}

ket schmidt_reassemble(const schmidt_decomposition& sd, Eigen::Index d_a, Eigen::Index d_b) {
    cxvec amps = cxvec::Zero(d_a * d_b);
    for (std::size_t r = 0; r < sd.coeffs.size(); ++r) {
        amps += sd.coeffs[r] * tensor(sd.basis_a[r], sd.basis_b[r]);
    }
    amps.normalize();
    return ket{amps, {d_a, d_b}};
}

ket purify(const density_matrix& rho) {
    hermitian_eig_result eig = hermitian_eig(rho.mat);
    const Eigen::Index d = rho.dim();
    cxvec amps = cxvec::Zero(d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        double lambda = clip_eigenvalue(eig.eigenvalues[i]);
        if (lambda <= 0.0) continue;
        cxvec e = eig.eigenvectors.col(i);
        amps += std::sqrt(lambda) * tensor(e, e);
    }
    amps.normalize();
    return ket{amps, {d, d}};
}

double fidelity(const density_matrix& rho, const density_matrix& sigma) {
    if (rho.dim() != sigma.dim()) throw dim_mismatch_error("fidelity: dimension mismatch");
    // Tr sqrt(sqrt(rho) sigma sqrt(rho)) equals the trace norm of
    // sqrt(rho) sqrt(sigma); the singular-value route is symmetric in the
    // arguments and accurate for rank-deficient inputs.
    cxmat product = mat_sqrt(rho.mat) * mat_sqrt(sigma.mat);
    Eigen::JacobiSVD<cxmat> svd(product);
    double f = svd.singularValues().sum();
    return std::clamp(f, 0.0, 1.0);
}

double bures_distance(const density_matrix& rho, const density_matrix& sigma) {
    double f = fidelity(rho, sigma);
    return std::sqrt(std::max(0.0, 1.0 - f * f));
}

double trace_distance(const density_matrix& rho, const density_matrix& sigma) {
    if (rho.dim() != sigma.dim()) throw dim_mismatch_error("trace_distance: dimension mismatch");
    hermitian_eig_result eig = hermitian_eig(rho.mat - sigma.mat);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) sum += std::abs(eig.eigenvalues[i]);
    return 0.5 * sum;
}

ket random_state(Eigen::Index dim, rng& gen) {
    cxvec amps(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        amps[i] = std::complex<double>(gen.gaussian(), gen.gaussian());
    }
    amps.normalize();
    return ket{amps, {dim}};
}

density_matrix random_density(Eigen::Index dim, Eigen::Index rank, rng& gen) {
    if (rank < 1 || rank > dim) throw bad_rank_error("random_density: rank outside [1, dim]");
    ket purification = random_state(dim * rank, gen);
    cxmat rho = partial_trace(projector(purification.amps), dim, rank, 0);
    // Renormalize away roundoff in the trace before validation.
    rho /= rho.trace().real();
    return density_matrix::make(rho, {dim});
}

bool equal_up_to_phase(const cxvec& a, const cxvec& b, double tol) {
    if (a.size() != b.size()) return false;
    std::complex<double> overlap = a.dot(b);
    double mag = std::abs(overlap);
    if (mag < 1e-14) return (a.norm() < tol && b.norm() < tol);
    std::complex<double> phase = overlap / mag;
    return (a * phase - b).cwiseAbs().maxCoeff() < tol;
}

}  // namespace releq
