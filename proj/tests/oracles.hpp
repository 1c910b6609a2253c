// Test-only oracles: brute-force full-space operator construction, an
// independent partial-trace entropy route, and random-matrix samplers.
// Everything here stays off the implementation paths it is used to check.
#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "nhsvd/models.hpp"
#include "nhsvd/sector_basis.hpp"

namespace oracles {

using nhsvd::ComplexMatrix;

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Spin-1/2 operators in the (down, up) single-site basis.
ComplexMatrix spin_x();
ComplexMatrix spin_y();
ComplexMatrix spin_z();
ComplexMatrix spin_plus();
ComplexMatrix spin_minus();

// op acting on site i (1-based) of an n-site chain, identity elsewhere.
// Site 1 is the least significant bit of the full-space index.
ComplexMatrix site_operator(int n_sites, int site, const ComplexMatrix& op);

// Full 2^N-space builders assembled from explicit tensor products.
ComplexMatrix full_xxz(const nhsvd::XxzLossSpec& spec);
ComplexMatrix full_loss(const std::vector<double>& gamma, int n_sites);
ComplexMatrix full_nh_xxz(const nhsvd::XxzLossSpec& spec, const std::vector<double>& gamma);
ComplexMatrix full_hatano_nelson(const nhsvd::HatanoNelsonSpec& spec,
                                 const std::vector<double>& fields);

// Rows/columns of the full-space operator at the sector configurations.
ComplexMatrix project_to_sector(const ComplexMatrix& full, const nhsvd::SectorBasis& basis);

// Half-chain entropy by explicit reduced-density-matrix diagonalization of
// the embedded full-space state (independent of the reshaping + SVD route).
double partial_trace_entropy(const Eigen::VectorXcd& sector_vector,
                             const nhsvd::SectorBasis& basis);

// ---------------------------------------------------------------------------
// Random-matrix and synthetic-spectrum samplers
// ---------------------------------------------------------------------------

Eigen::MatrixXd sample_goe_matrix(int dim, std::mt19937_64& rng);
Eigen::VectorXd goe_eigenvalues(int dim, std::mt19937_64& rng);

// Eigenvalues of an i.i.d. complex Gaussian (Ginibre) matrix.
Eigen::VectorXcd ginue_eigenvalues(int dim, std::mt19937_64& rng);

// i.i.d. uniform levels on [0, dim] (unit mean density, uncorrelated).
Eigen::VectorXd poisson_levels(int dim, std::mt19937_64& rng);

// i.i.d. uniform points in the unit square, as complex numbers.
std::vector<std::complex<double>> poisson_cloud_2d(int count, std::mt19937_64& rng);

ComplexMatrix random_complex_matrix(int dim, std::mt19937_64& rng);
Eigen::VectorXcd random_unit_vector(int dim, std::mt19937_64& rng);

// Composite Simpson quadrature on [a, b] with n subintervals (n even).
double simpson(double (*f)(double), double a, double b, int n);

}  // namespace oracles
