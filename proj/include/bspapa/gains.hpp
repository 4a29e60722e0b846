#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bspapa {

/// Split of an L-tap filter into N contiguous groups of P taps each.
/// Construction fails unless P divides L.
class BlockPartition {
public:
    BlockPartition(std::size_t filter_length, std::size_t group_size);

    std::size_t filter_length() const noexcept { return length_; }
    std::size_t group_size() const noexcept { return group_; }
    std::size_t block_count() const noexcept { return length_ / group_; }
    std::size_t block_of(std::size_t tap) const noexcept { return tap / group_; }

    friend bool operator==(const BlockPartition&, const BlockPartition&) = default;

private:
    std::size_t length_;
    std::size_t group_;
};

/// Floors that keep proportionate gains away from zero: `q` acts while the
/// whole filter is near zero, `rho` bounds small taps relative to the largest.
struct StallGuards {
    double rho = 0.01;
    double q = 0.01;

    void validate() const;
};

/// Per-block gains g_1..g_N. Expands to the L-tap diagonal by repeating
/// each block gain P times.
class GainVector {
public:
    GainVector(BlockPartition partition, std::vector<double> block_gains);

    static GainVector uniform(BlockPartition partition);

    const BlockPartition& partition() const noexcept { return partition_; }
    std::span<const double> block_gains() const noexcept { return gains_; }
    double block_gain(std::size_t block) const noexcept { return gains_[block]; }
    double tap_gain(std::size_t tap) const noexcept { return gains_[partition_.block_of(tap)]; }

    std::vector<double> expand() const;

private:
    BlockPartition partition_;
    std::vector<double> gains_;
};

/// Euclidean norm of each block of `weights`.
std::vector<double> block_l2_norms(std::span<const double> weights, const BlockPartition& partition);

/// Stall-protected gains from block norms:
///   gamma_i = max(rho * max(q, norm_1, ..., norm_N), norm_i)
///   g_i     = gamma_i / mean(gamma)
std::vector<double> proportionate_gains(std::span<const double> block_norms, const StallGuards& guards);

/// Block norms followed by proportionate_gains, packaged with the partition.
GainVector compute_block_gains(std::span<const double> weights, const BlockPartition& partition,
                               const StallGuards& guards);

/// Classic per-tap PNLMS/PAPA gains computed straight from |h_l|. Used by the
/// non-block variants; matches compute_block_gains with P = 1.
std::vector<double> tap_proportionate_gains(std::span<const double> weights, const StallGuards& guards);

}  // namespace bspapa
