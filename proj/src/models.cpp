#include "nhsvd/models.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace nhsvd {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// 53-bit mantissa draw in [0, 1); avoids the implementation-defined
// behavior of std::uniform_real_distribution.
double unit_double(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

void check_common(int n_sites, double coupling, double bound, const char* bound_name) {
    if (n_sites < 2 || n_sites % 2 != 0) {
        throw std::invalid_argument("model spec: n_sites must be even and >= 2");
    }
    if (!(coupling > 0.0)) {
        throw std::invalid_argument("model spec: coupling J must be positive");
    }
    if (!(bound >= 0.0)) {
        throw std::invalid_argument(std::string("model spec: ") + bound_name +
                                    " must be nonnegative");
    }
}

void check_basis(int n_sites, const SectorBasis& basis) {
    if (basis.n_sites() != n_sites) {
        throw std::invalid_argument("basis was built for n_sites = " +
                                    std::to_string(basis.n_sites()) + ", spec has " +
                                    std::to_string(n_sites));
    }
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t realization_index) {
    std::uint64_t state = master_seed;
    const std::uint64_t a = splitmix64(state);
    state ^= realization_index + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2);
    return splitmix64(state);
}

DisorderRealization sample_uniform(int n_sites, double lo, double hi,
                                   std::uint64_t master_seed, std::uint64_t realization_index) {
    DisorderRealization r;
    r.stream_seed = derive_stream_seed(master_seed, realization_index);
    r.values.resize(static_cast<std::size_t>(n_sites));
    std::mt19937_64 eng(r.stream_seed);
    for (auto& v : r.values) v = lo + (hi - lo) * unit_double(eng);
    return r;
}

DisorderRealization sample_disorder(const XxzLossSpec& spec, std::uint64_t master_seed,
                                    std::uint64_t realization_index) {
    check_common(spec.n_sites, spec.coupling, spec.gamma_max, "gamma_max");
    return sample_uniform(spec.n_sites, 0.0, spec.gamma_max, master_seed, realization_index);
}

DisorderRealization sample_disorder(const HatanoNelsonSpec& spec, std::uint64_t master_seed,
                                    std::uint64_t realization_index) {
    check_common(spec.n_sites, spec.coupling, spec.h_max, "h_max");
    return sample_uniform(spec.n_sites, -spec.h_max, spec.h_max, master_seed, realization_index);
}

Eigen::MatrixXd build_xxz(const XxzLossSpec& spec, const SectorBasis& basis) {
    check_common(spec.n_sites, spec.coupling, spec.gamma_max, "gamma_max");
    check_basis(spec.n_sites, basis);

    const int n = spec.n_sites;
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

    for (Eigen::Index k = 0; k < dim; ++k) {
        const SpinConfiguration c = basis.state(static_cast<std::size_t>(k));
        double zz = 0.0;
        for (int i = 0; i < n; ++i) {
            const int j = (i + 1) % n;  // kept as the literal periodic sum, also at N = 2
            const bool up_i = (c >> i) & 1u;
            const bool up_j = (c >> j) & 1u;
            zz += (up_i == up_j) ? 0.25 : -0.25;
            if (up_i != up_j) {
                const SpinConfiguration flipped =
                    c ^ ((SpinConfiguration{1} << i) | (SpinConfiguration{1} << j));
                const auto k2 = static_cast<Eigen::Index>(basis.index_of(flipped));
                h(k2, k) += 0.5 * spec.coupling;
            }
        }
        h(k, k) += spec.coupling * spec.anisotropy * zz;
    }
    return h;
}

Eigen::VectorXd build_loss_diagonal(const DisorderRealization& realization,
                                    const SectorBasis& basis) {
    const int n = basis.n_sites();
    if (realization.values.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("loss realization has " +
                                    std::to_string(realization.values.size()) +
                                    " rates, basis needs " + std::to_string(n));
    }
    for (double g : realization.values) {
        if (!(g >= 0.0)) {
            throw std::invalid_argument("loss rates must be nonnegative");
        }
    }
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    Eigen::VectorXd diag(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const SpinConfiguration c = basis.state(static_cast<std::size_t>(k));
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            if ((c >> i) & 1u) sum += realization.values[static_cast<std::size_t>(i)];
        }
        diag(k) = sum;
    }
    return diag;
}

ComplexMatrix build_nh_xxz(const XxzLossSpec& spec, const DisorderRealization& realization,
                           const SectorBasis& basis) {
    const Eigen::MatrixXd hermitian = build_xxz(spec, basis);
    const Eigen::VectorXd loss = build_loss_diagonal(realization, basis);
    ComplexMatrix h = hermitian.cast<std::complex<double>>();
    h.diagonal() -= std::complex<double>(0.0, 0.5) * loss.cast<std::complex<double>>();
    return h;
}

ComplexMatrix build_hatano_nelson(const HatanoNelsonSpec& spec,
                                  const DisorderRealization& realization,
                                  const SectorBasis& basis) {
    check_common(spec.n_sites, spec.coupling, spec.h_max, "h_max");
    check_basis(spec.n_sites, basis);
    const int n = spec.n_sites;
    if (realization.values.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("field realization has " +
                                    std::to_string(realization.values.size()) +
                                    " entries, basis needs " + std::to_string(n));
    }

    const double hop_fwd = 0.5 * spec.coupling * std::exp(spec.asymmetry);
    const double hop_bwd = 0.5 * spec.coupling * std::exp(-spec.asymmetry);
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

    for (Eigen::Index k = 0; k < dim; ++k) {
        const SpinConfiguration c = basis.state(static_cast<std::size_t>(k));
        double diag = 0.0;
        for (int i = 0; i < n; ++i) {
            const int j = (i + 1) % n;
            const bool up_i = (c >> i) & 1u;
            const bool up_j = (c >> j) & 1u;
            diag += spec.coupling * spec.anisotropy * ((up_i == up_j) ? 0.25 : -0.25);
            // S+_i S-_{i+1} moves an up spin from i+1 to i; weight e^{+g}.
            if (!up_i && up_j) {
                const SpinConfiguration target =
                    c ^ ((SpinConfiguration{1} << i) | (SpinConfiguration{1} << j));
                h(static_cast<Eigen::Index>(basis.index_of(target)), k) += hop_fwd;
            }
            if (up_i && !up_j) {
                const SpinConfiguration target =
                    c ^ ((SpinConfiguration{1} << i) | (SpinConfiguration{1} << j));
                h(static_cast<Eigen::Index>(basis.index_of(target)), k) += hop_bwd;
            }
        }
        for (int i = 0; i < n; ++i) {
            const double s = ((c >> i) & 1u) ? 0.5 : -0.5;
            diag += realization.values[static_cast<std::size_t>(i)] * s;
        }
        h(k, k) += diag;
    }
    return h.cast<std::complex<double>>();
}

}  // namespace nhsvd
