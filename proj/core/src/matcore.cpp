#include "releq/matcore.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace releq {

double hermiticity_defect(const cxmat& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

hermitian_eig_result hermitian_eig(const cxmat& m) {
    if (m.rows() != m.cols()) {
        throw non_square_error("hermitian_eig: matrix is " + std::to_string(m.rows()) +
                               "x" + std::to_string(m.cols()));
    }
    if (hermiticity_defect(m) > hermiticity_tol) {
        throw not_hermitian_error("hermitian_eig: asymmetry beyond tolerance");
    }
    // Symmetrize so roundoff-level asymmetry cannot leak into the solver.
    cxmat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<cxmat> solver(h);
    if (solver.info() != Eigen::Success) {
        throw error("hermitian_eig: solver failed to converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double clip_eigenvalue(double lambda) {
    if (lambda >= 0.0) return lambda;
    if (lambda >= -eig_clip_tol) return 0.0;
    throw domain_error("eigenvalue " + std::to_string(lambda) +
                       " below the PSD clipping window");
}

cxmat mat_func(const cxmat& m, const std::function<double(double)>& f) {
    hermitian_eig_result eig = hermitian_eig(m);
    realvec mapped(eig.eigenvalues.size());
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        double lambda = eig.eigenvalues[i];
        if (lambda < 0.0 && lambda >= -eig_clip_tol) lambda = 0.0;
        double y = f(lambda);
        if (!std::isfinite(y)) {
            throw domain_error("mat_func: f undefined at eigenvalue " + std::to_string(lambda));
        }
        mapped[i] = y;
    }
    return eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
}

cxmat mat_sqrt(const cxmat& psd) {
    return mat_func(psd, [](double x) { return std::sqrt(clip_eigenvalue(x)); });
}

cxmat tensor(const cxmat& a, const cxmat& b) {
    cxmat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

cxvec tensor(const cxvec& a, const cxvec& b) {
    cxvec out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a[i] * b;
    return out;
}

static void check_bipartite_square(const cxmat& m, Eigen::Index d_a, Eigen::Index d_b) {
    if (m.rows() != m.cols() || m.rows() != d_a * d_b) {
        throw dim_mismatch_error("matrix size " + std::to_string(m.rows()) + "x" +
                                 std::to_string(m.cols()) + " does not factor as " +
                                 std::to_string(d_a) + "*" + std::to_string(d_b));
    }
}

cxmat partial_trace(const cxmat& m, Eigen::Index d_a, Eigen::Index d_b, int keep) {
    check_bipartite_square(m, d_a, d_b);
    if (keep == 0) {
        cxmat out = cxmat::Zero(d_a, d_a);
        for (Eigen::Index i = 0; i < d_a; ++i)
            for (Eigen::Index j = 0; j < d_a; ++j)
                for (Eigen::Index k = 0; k < d_b; ++k)
                    out(i, j) += m(i * d_b + k, j * d_b + k);
        return out;
    }
    if (keep == 1) {
        cxmat out = cxmat::Zero(d_b, d_b);
        for (Eigen::Index i = 0; i < d_b; ++i)
            for (Eigen::Index j = 0; j < d_b; ++j)
                for (Eigen::Index k = 0; k < d_a; ++k)
                    out(i, j) += m(k * d_b + i, k * d_b + j);
        return out;
    }
    throw dim_mismatch_error("partial_trace: keep must be 0 or 1");
}

cxmat partial_transpose(const cxmat& m, Eigen::Index d_a, Eigen::Index d_b, int which) {
    check_bipartite_square(m, d_a, d_b);
    if (which != 0 && which != 1) {
        throw dim_mismatch_error("partial_transpose: which must be 0 or 1");
    }
    cxmat out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < d_a; ++i)
        for (Eigen::Index j = 0; j < d_b; ++j)
            for (Eigen::Index k = 0; k < d_a; ++k)
                for (Eigen::Index l = 0; l < d_b; ++l) {
                    if (which == 0) {
                        out(i * d_b + j, k * d_b + l) = m(k * d_b + j, i * d_b + l);
                    } else {
                        out(i * d_b + j, k * d_b + l) = m(i * d_b + l, k * d_b + j);
                    }
                }
    return out;
}

cxmat identity(Eigen::Index d) { return cxmat::Identity(d, d); }

cxmat projector(const cxvec& v) { return v * v.adjoint(); }

cxmat complete_to_unitary(const cxmat& isometry) {
    const Eigen::Index d = isometry.rows();
    const Eigen::Index k = isometry.cols();
    if (k > d) throw dim_mismatch_error("complete_to_unitary: more columns than rows");
    cxmat u(d, d);
    u.leftCols(k) = isometry;
    Eigen::Index filled = k;
    for (Eigen::Index cand = 0; cand < d && filled < d; ++cand) {
        cxvec v = cxvec::Zero(d);
        v[cand] = 1.0;
        // Two rounds of Gram-Schmidt for numerical stability.
        for (int round = 0; round < 2; ++round)
            for (Eigen::Index c = 0; c < filled; ++c)
                v -= u.col(c).dot(v) * u.col(c);
        double norm = v.norm();
        if (norm > 1e-8) {
            u.col(filled++) = v / norm;
        }
    }
    if (filled != d) throw error("complete_to_unitary: failed to complete basis");
    return u;
}

double max_abs_diff(const cxmat& a, const cxmat& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace releq
