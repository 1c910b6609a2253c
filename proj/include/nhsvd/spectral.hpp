#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nhsvd/models.hpp"

namespace nhsvd {

// Thrown when a dense decomposition fails to converge. The message carries a
// fingerprint (dimension, max modulus, byte hash) of the offending matrix.
class DecompositionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// H = U diag(sigma) V^dagger with unitary U, V and sigma sorted descending.
// Phase gauge: the first nonzero component of each right singular vector is
// real positive (the paired left vector is rotated along), so repeated runs
// on identical input are bit-reproducible.
struct SvdResult {
    Eigen::VectorXd sigma;
    ComplexMatrix left;   // columns u_n
    ComplexMatrix right;  // columns v_n
};

// H = R diag(E) L^dagger with biorthonormal pairing L^dagger R = I.
// Right vectors have unit Euclidean norm; the left ones carry the reciprocal
// scaling. Eigenvalues sorted by (Re, Im). Indices whose raw left/right
// overlap fell below the exceptional-point threshold are listed in
// `defective`; such realizations should be excluded from ensemble averages.
struct EigResult {
    Eigen::VectorXcd eigenvalues;
    ComplexMatrix right;
    ComplexMatrix left;
    std::vector<Eigen::Index> defective;
    // Smallest |<L_n|R_n>| before rescaling (for degenerate clusters, the
    // smallest singular value of the block overlap).
    double min_overlap = 1.0;

    bool flagged() const noexcept { return !defective.empty(); }
};

inline constexpr double kExceptionalOverlapThreshold = 1e-12;

// Singular values only (descending); the fast path for value statistics.
Eigen::VectorXd singular_values(const ComplexMatrix& matrix);

// Full SVD. Throws std::invalid_argument on non-finite entries and
// DecompositionError on convergence failure.
SvdResult svd(const ComplexMatrix& matrix);

// Eigenvalues only, sorted by (Re, Im).
Eigen::VectorXcd eigenvalues(const ComplexMatrix& matrix);

// Right and left eigenvectors from one Schur pass, paired and rescaled so
// that L^dagger R = I. Near-defective pairs are flagged, not regularized.
EigResult eig_biorthogonal(const ComplexMatrix& matrix);

// Independent route to the singular values: eigenvalues of the Hermitian
// cyclic matrix [[0, H], [H^dagger, 0]], whose spectrum is {+-sigma_n}.
// Returns the nonnegative half, descending. The 2D x 2D problem doubles the
// cost, hence the cap.
Eigen::VectorXd cyclic_svd_oracle(const ComplexMatrix& matrix, std::size_t dimension_cap = 1000);

// Eigenvalues of a Hermitian matrix, ascending (divide-and-conquer).
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& matrix);

// Singular values of a general rectangular complex matrix, descending.
Eigen::VectorXd rectangular_singular_values(const ComplexMatrix& matrix);

}  // namespace nhsvd
