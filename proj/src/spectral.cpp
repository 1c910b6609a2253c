#include "nhsvd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <lapacke.h>

namespace nhsvd {

namespace {

using Complex = std::complex<double>;

lapack_complex_double* lapack_cast(Complex* p) {
    return reinterpret_cast<lapack_complex_double*>(p);
}

void require_finite(const ComplexMatrix& m, const char* op) {
    if (!m.allFinite()) {
        throw std::invalid_argument(std::string(op) + ": matrix has non-finite entries");
    }
}

void require_square(const ComplexMatrix& m, const char* op) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(op) + ": matrix must be square");
    }
    if (m.rows() == 0) {
        throw std::invalid_argument(std::string(op) + ": matrix is empty");
    }
}

// FNV-1a over the raw matrix bytes; identifies the offending realization in
// convergence-failure reports.
std::uint64_t byte_hash(const ComplexMatrix& m) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(m.data());
    const std::size_t count = static_cast<std::size_t>(m.size()) * sizeof(Complex);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < count; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

[[noreturn]] void throw_convergence(const char* routine, const ComplexMatrix& m, int info) {
    throw DecompositionError(std::string(routine) + " failed to converge (info=" +
                             std::to_string(info) + "); matrix fingerprint: dim=" +
                             std::to_string(m.rows()) + " maxabs=" +
                             std::to_string(m.cwiseAbs().maxCoeff()) + " hash=" +
                             std::to_string(byte_hash(m)));
}

// Rotate the (u_n, v_n) pair so the first nonzero component of v_n is real
// positive; u_n v_n^dagger is unchanged.
void fix_pair_phase(Eigen::Ref<Eigen::VectorXcd> v, Eigen::Ref<Eigen::VectorXcd> u) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        if (mag > 0.0) {
            const Complex rot = std::conj(v(i)) / mag;
            v *= rot;
            u *= rot;
            return;
        }
    }
}

}  // namespace

Eigen::VectorXd rectangular_singular_values(const ComplexMatrix& matrix) {
    require_finite(matrix, "singular_values");
    ComplexMatrix work = matrix;  // zgesdd destroys its input
    const lapack_int m = static_cast<lapack_int>(matrix.rows());
    const lapack_int n = static_cast<lapack_int>(matrix.cols());
    Eigen::VectorXd sigma(std::min(m, n));
    const int info =
        LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, lapack_cast(work.data()), m, sigma.data(),
                       nullptr, 1, nullptr, 1);
    if (info != 0) throw_convergence("zgesdd", matrix, info);
    return sigma;  // descending per LAPACK contract
}

Eigen::VectorXd singular_values(const ComplexMatrix& matrix) {
    require_square(matrix, "singular_values");
    return rectangular_singular_values(matrix);
}

SvdResult svd(const ComplexMatrix& matrix) {
    require_square(matrix, "svd");
    require_finite(matrix, "svd");
    const lapack_int n = static_cast<lapack_int>(matrix.rows());
    ComplexMatrix work = matrix;
    SvdResult result;
    result.sigma.resize(n);
    result.left.resize(n, n);
    ComplexMatrix vt(n, n);
    const int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'A', n, n, lapack_cast(work.data()), n,
                                    result.sigma.data(), lapack_cast(result.left.data()), n,
                                    lapack_cast(vt.data()), n);
    if (info != 0) throw_convergence("zgesdd", matrix, info);
    result.right = vt.adjoint();
    for (Eigen::Index k = 0; k < n; ++k) {
        fix_pair_phase(result.right.col(k), result.left.col(k));
    }
    return result;
}

namespace {

// Column permutation sorting complex eigenvalues by (Re, Im).
std::vector<Eigen::Index> eigen_order(const Eigen::VectorXcd& values) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (values(a).real() != values(b).real()) return values(a).real() < values(b).real();
        return values(a).imag() < values(b).imag();
    });
    return order;
}

}  // namespace

Eigen::VectorXcd eigenvalues(const ComplexMatrix& matrix) {
    require_square(matrix, "eigenvalues");
    require_finite(matrix, "eigenvalues");
    const lapack_int n = static_cast<lapack_int>(matrix.rows());
    ComplexMatrix work = matrix;
    Eigen::VectorXcd values(n);
    const int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, lapack_cast(work.data()), n,
                                   lapack_cast(values.data()), nullptr, 1, nullptr, 1);
    if (info != 0) throw_convergence("zgeev", matrix, info);
    const auto order = eigen_order(values);
    Eigen::VectorXcd sorted(n);
    for (Eigen::Index k = 0; k < n; ++k) sorted(k) = values(order[static_cast<std::size_t>(k)]);
    return sorted;
}

EigResult eig_biorthogonal(const ComplexMatrix& matrix) {
    require_square(matrix, "eig_biorthogonal");
    require_finite(matrix, "eig_biorthogonal");
    const lapack_int n = static_cast<lapack_int>(matrix.rows());
    ComplexMatrix work = matrix;
    Eigen::VectorXcd values(n);
    ComplexMatrix vl(n, n), vr(n, n);
    const int info =
        LAPACKE_zgeev(LAPACK_COL_MAJOR, 'V', 'V', n, lapack_cast(work.data()), n,
                      lapack_cast(values.data()), lapack_cast(vl.data()), n,
                      lapack_cast(vr.data()), n);
    if (info != 0) throw_convergence("zgeev", matrix, info);

    const auto order = eigen_order(values);
    EigResult result;
    result.eigenvalues.resize(n);
    result.right.resize(n, n);
    result.left.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        result.eigenvalues(k) = values(src);
        result.right.col(k) = vr.col(src);
        result.left.col(k) = vl.col(src);
    }

    for (Eigen::Index k = 0; k < n; ++k) result.right.col(k).normalize();

    // zgeev returns unit-norm columns on both sides; the raw overlap
    // |<L_n|R_n>| is then the reciprocal eigenvector condition number and
    // vanishes at an exceptional point. Numerically coincident eigenvalues
    // are paired block-wise: within a block the left columns need not line
    // up with the right ones individually, so L is recombined through the
    // inverse block overlap instead of a scalar rescale.
    const double cluster_tol =
        1e-12 * std::max(1.0, result.eigenvalues.cwiseAbs().maxCoeff());
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n &&
               std::abs(result.eigenvalues(end) - result.eigenvalues(end - 1)) <= cluster_tol) {
            ++end;
        }
        const Eigen::Index block = end - start;
        if (block == 1) {
            const Complex overlap = result.left.col(start).dot(result.right.col(start));
            const double mag = std::abs(overlap);
            result.min_overlap = std::min(result.min_overlap, mag);
            if (mag < kExceptionalOverlapThreshold) {
                result.defective.push_back(start);
            } else {
                result.left.col(start) /= std::conj(overlap);
                fix_pair_phase(result.right.col(start), result.left.col(start));
            }
        } else {
            // Degenerate cluster. zgeev may hand back (nearly) repeated
            // eigenvector columns, losing directions of the eigenspace, so
            // both eigenspaces are rebuilt from the null space of
            // H - center*I. A cluster whose geometric multiplicity falls
            // short of its size is genuinely defective and gets flagged.
            const Complex center =
                result.eigenvalues.segment(start, block).mean();
            ComplexMatrix shifted = matrix;
            shifted.diagonal().array() -= center;
            const SvdResult null_svd = svd(shifted);
            const double null_tol =
                std::max(1e-10 * std::max(null_svd.sigma(0), 1.0), 10.0 * cluster_tol);
            Eigen::Index null_dim = 0;
            while (null_dim < n && null_svd.sigma(n - 1 - null_dim) <= null_tol) ++null_dim;
            if (null_dim < block) {
                for (Eigen::Index k = start; k < end; ++k) result.defective.push_back(k);
                result.min_overlap = 0.0;
            } else {
                const ComplexMatrix right_null = null_svd.right.rightCols(block);
                const ComplexMatrix left_null = null_svd.left.rightCols(block);
                const ComplexMatrix overlap = left_null.adjoint() * right_null;
                const Eigen::JacobiSVD<ComplexMatrix> overlap_svd(
                    overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
                const double smallest = overlap_svd.singularValues()(block - 1);
                result.min_overlap = std::min(result.min_overlap, smallest);
                if (smallest < kExceptionalOverlapThreshold) {
                    for (Eigen::Index k = start; k < end; ++k) result.defective.push_back(k);
                } else {
                    result.right.middleCols(start, block) = right_null;
                    result.left.middleCols(start, block) =
                        left_null * overlap.adjoint().inverse();
                    for (Eigen::Index k = start; k < end; ++k) {
                        fix_pair_phase(result.right.col(k), result.left.col(k));
                    }
                }
            }
        }
        start = end;
    }
    return result;
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& matrix) {
    require_square(matrix, "hermitian_eigenvalues");
    require_finite(matrix, "hermitian_eigenvalues");
    const lapack_int n = static_cast<lapack_int>(matrix.rows());
    ComplexMatrix work = matrix;
    Eigen::VectorXd values(n);
    const int info =
        LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, lapack_cast(work.data()), n, values.data());
    if (info != 0) throw_convergence("zheevd", matrix, info);
    return values;  // ascending
}

Eigen::VectorXd cyclic_svd_oracle(const ComplexMatrix& matrix, std::size_t dimension_cap) {
    require_square(matrix, "cyclic_svd_oracle");
    require_finite(matrix, "cyclic_svd_oracle");
    const Eigen::Index d = matrix.rows();
    if (static_cast<std::size_t>(d) > dimension_cap) {
        throw std::invalid_argument("cyclic_svd_oracle: dimension " + std::to_string(d) +
                                    " exceeds cap " + std::to_string(dimension_cap));
    }
    ComplexMatrix cyclic = ComplexMatrix::Zero(2 * d, 2 * d);
    cyclic.topRightCorner(d, d) = matrix;
    cyclic.bottomLeftCorner(d, d) = matrix.adjoint();
    const Eigen::VectorXd spectrum = hermitian_eigenvalues(cyclic);  // {-sigma, +sigma} ascending
    return spectrum.tail(d).reverse();
}

}  // namespace nhsvd
