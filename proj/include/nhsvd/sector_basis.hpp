#pragma once

#include <cstdint>
#include <vector>

namespace nhsvd {

// One computational-basis state of an N-site spin-1/2 chain, packed into an
// integer. Bit convention used throughout the project: bit (i-1) is site i,
// i.e. site 1 is the least significant bit; a set bit is an up spin.
using SpinConfiguration = std::uint32_t;

// Dense D x D storage caps out around here on a desk machine
// (C(20,10) = 184756). Enforced, not silent.
inline constexpr int kMaxSites = 20;

int popcount_bits(SpinConfiguration c) noexcept;

/// Zero-magnetization sector of an N-site chain: all C(N, N/2) half-filled
/// configurations in ascending integer order, with the inverse index map.
/// Immutable after construction; safe to share across threads.
class SectorBasis {
public:
    // Throws std::invalid_argument for odd, nonpositive or oversized N.
    explicit SectorBasis(int n_sites);

    int n_sites() const noexcept { return n_sites_; }
    std::size_t dimension() const noexcept { return states_.size(); }
    const std::vector<SpinConfiguration>& states() const noexcept { return states_; }
    SpinConfiguration state(std::size_t index) const { return states_[index]; }

    // Position of a configuration in the canonical order. Throws
    // std::invalid_argument if the configuration is not in the sector.
    std::size_t index_of(SpinConfiguration config) const;

    bool contains(SpinConfiguration config) const noexcept;

private:
    int n_sites_;
    std::vector<SpinConfiguration> states_;  // strictly ascending
};

/// Half-chain split used for entanglement entropies. Sites 1..N/2 form
/// subsystem A (the low bits), sites N/2+1..N form B. For each basis state
/// the (A-pattern, B-pattern) pair is precomputed.
struct BipartitionMap {
    int n_sites = 0;
    int cut = 0;                   // number of sites in A (= N/2)
    std::size_t rows = 0;          // 2^cut
    std::size_t cols = 0;          // 2^(N-cut)
    std::vector<std::uint32_t> row_of;  // indexed by basis position
    std::vector<std::uint32_t> col_of;

    // Reassemble the full configuration from an (A, B) pair.
    SpinConfiguration join(std::uint32_t row, std::uint32_t col) const noexcept {
        return row | (col << cut);
    }
};

BipartitionMap bipartition_shape(const SectorBasis& basis);

// Exact C(n, k) in 64-bit integer arithmetic (n small enough here).
std::uint64_t binomial(int n, int k);

}  // namespace nhsvd
