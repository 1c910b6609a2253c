#include "nhsvd/sector_basis.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace nhsvd {

int popcount_bits(SpinConfiguration c) noexcept {
    return std::popcount(c);
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return result;
}

SectorBasis::SectorBasis(int n_sites) : n_sites_(n_sites) {
    if (n_sites < 2 || n_sites % 2 != 0) {
        throw std::invalid_argument("SectorBasis: n_sites must be even and >= 2, got " +
                                    std::to_string(n_sites));
    }
    if (n_sites > kMaxSites) {
        throw std::invalid_argument("SectorBasis: n_sites = " + std::to_string(n_sites) +
                                    " exceeds the dense-storage cap of " +
                                    std::to_string(kMaxSites));
    }
    const int half = n_sites / 2;
    states_.reserve(binomial(n_sites, half));
    const SpinConfiguration last = SpinConfiguration{1} << n_sites;
    for (SpinConfiguration c = 0; c < last; ++c) {
        if (std::popcount(c) == half) states_.push_back(c);
    }
}

std::size_t SectorBasis::index_of(SpinConfiguration config) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), config);
    if (it == states_.end() || *it != config) {
        throw std::invalid_argument("SectorBasis: configuration " + std::to_string(config) +
                                    " is not in the zero-magnetization sector");
    }
    return static_cast<std::size_t>(it - states_.begin());
}

bool SectorBasis::contains(SpinConfiguration config) const noexcept {
    return std::binary_search(states_.begin(), states_.end(), config);
}

BipartitionMap bipartition_shape(const SectorBasis& basis) {
    BipartitionMap map;
    map.n_sites = basis.n_sites();
    map.cut = basis.n_sites() / 2;
    map.rows = std::size_t{1} << map.cut;
    map.cols = std::size_t{1} << (basis.n_sites() - map.cut);
    const std::uint32_t mask = (std::uint32_t{1} << map.cut) - 1;
    map.row_of.reserve(basis.dimension());
    map.col_of.reserve(basis.dimension());
    for (SpinConfiguration c : basis.states()) {
        map.row_of.push_back(c & mask);
        map.col_of.push_back(c >> map.cut);
    }
    return map;
}

}  // namespace nhsvd
