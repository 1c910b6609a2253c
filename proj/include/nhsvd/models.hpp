#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "nhsvd/sector_basis.hpp"

namespace nhsvd {

using ComplexMatrix = Eigen::MatrixXcd;

// XXZ chain with random local losses, H = H_XXZ - i*Gamma/2.
// Couplings in units of J; chain is periodic (site N+1 = site 1).
struct XxzLossSpec {
    int n_sites = 12;
    double coupling = 1.0;    // J, sets the energy scale
    double anisotropy = 1.0;  // Delta
    double gamma_max = 0.0;   // loss rates drawn uniformly from [0, gamma_max)
};

// Interacting Hatano-Nelson chain: asymmetric hoppings e^{+g}, e^{-g} plus a
// random longitudinal field. Periodic boundary.
struct HatanoNelsonSpec {
    int n_sites = 12;
    double coupling = 1.0;
    double anisotropy = 1.0;
    double asymmetry = 0.1;  // g
    double h_max = 0.0;      // fields drawn uniformly from [-h_max, h_max)
};

// One sampled disorder vector together with the stream seed it came from.
struct DisorderRealization {
    std::uint64_t stream_seed = 0;
    std::vector<double> values;  // one entry per site, site 1 first
};

// Deterministic per-realization seed derivation: (master_seed, index) fully
// determine the stream, independent of threading or call order.
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t realization_index);

// i.i.d. uniform draws on the half-open interval [lo, hi).
DisorderRealization sample_uniform(int n_sites, double lo, double hi,
                                   std::uint64_t master_seed, std::uint64_t realization_index);

DisorderRealization sample_disorder(const XxzLossSpec& spec, std::uint64_t master_seed,
                                    std::uint64_t realization_index);
DisorderRealization sample_disorder(const HatanoNelsonSpec& spec, std::uint64_t master_seed,
                                    std::uint64_t realization_index);

// Hermitian XXZ part, Eq. (2a) shape: J/2 exchange hoppings on adjacent
// anti-aligned pairs, J*Delta*sum_i s_i s_{i+1} on the diagonal. Real
// symmetric by construction.
Eigen::MatrixXd build_xxz(const XxzLossSpec& spec, const SectorBasis& basis);

// Diagonal of the loss operator Gamma: entry sum of gamma_i over up spins.
// Throws std::invalid_argument on negative rates.
Eigen::VectorXd build_loss_diagonal(const DisorderRealization& realization,
                                    const SectorBasis& basis);

// Full non-Hermitian model, build_xxz - (i/2) * diag(loss).
ComplexMatrix build_nh_xxz(const XxzLossSpec& spec, const DisorderRealization& realization,
                           const SectorBasis& basis);

// Interacting Hatano-Nelson matrix; real but asymmetric for g != 0.
ComplexMatrix build_hatano_nelson(const HatanoNelsonSpec& spec,
                                  const DisorderRealization& realization,
                                  const SectorBasis& basis);

}  // namespace nhsvd
