#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bspapa/gains.hpp"
#include "bspapa/matrix.hpp"

namespace bspapa {

/// Sliding window over the last L + M - 1 input samples, newest first.
/// Samples before the start of the stream read as zero.
///
/// Storage is mirrored (each sample written twice, `capacity` apart) so the
/// whole window is always one contiguous span and X(n) columns are plain
/// subspans of it.
class RegressorHistory {
public:
    RegressorHistory(std::size_t filter_length, std::size_t projection_order);

    void push(double sample) noexcept;
    void reset() noexcept;

    std::size_t filter_length() const noexcept { return length_; }
    std::size_t projection_order() const noexcept { return order_; }
    std::size_t capacity() const noexcept { return capacity_; }
    std::uint64_t samples_seen() const noexcept { return seen_; }

    /// x(n - k); k must be below capacity().
    double lag(std::size_t k) const noexcept { return buffer_[head_ + k]; }

    /// [x(n), x(n-1), ..., x(n-L-M+2)].
    std::span<const double> window() const noexcept { return {buffer_.data() + head_, capacity_}; }

    /// x(n - j) as an L-vector, i.e. column j of X(n).
    std::span<const double> input_vector(std::size_t j = 0) const noexcept {
        return {buffer_.data() + head_ + j, length_};
    }

    /// X(n) as an L x M matrix.
    Matrix materialize() const;

private:
    std::size_t length_;
    std::size_t order_;
    std::size_t capacity_;
    std::size_t head_ = 0;
    std::uint64_t seen_ = 0;
    std::vector<double> buffer_;
};

/// P(n) = G(n-1) X(n) together with the number of scalar multiplications
/// spent building it.
struct WeightedRegressor {
    Matrix matrix;
    std::size_t multiplication_count = 0;
};

/// e(n) = d(n) - X^T(n) h(n-1). `desired` is newest first.
std::vector<double> error_vector(const RegressorHistory& history, std::span<const double> desired,
                                 std::span<const double> weights);

/// One multiplication per element: M * L in total.
WeightedRegressor build_weighted_regressor_direct(const GainVector& gains, const RegressorHistory& history);

/// Exploits the shift structure inside each block: the P + M - 1 products
/// g_i x(n - (i-1)P - k) are formed once and every column of the block is a
/// window onto that vector, for (P + M - 1) N multiplications. Bit-identical
/// to the direct builder.
WeightedRegressor build_weighted_regressor_efficient(const GainVector& gains,
                                                     const RegressorHistory& history);

/// Per-tap variant of the direct builder (classic PAPA gains).
WeightedRegressor build_weighted_regressor_taps(std::span<const double> tap_gains,
                                                const RegressorHistory& history);

/// A = X^T(n) P where P is any L x M weighted regressor.
Matrix projection_matrix(const RegressorHistory& history, const Matrix& weighted);

}  // namespace bspapa
