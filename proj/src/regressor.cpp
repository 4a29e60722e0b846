#include "bspapa/regressor.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bspapa {

RegressorHistory::RegressorHistory(std::size_t filter_length, std::size_t projection_order)
    : length_(filter_length), order_(projection_order), capacity_(filter_length + projection_order - 1) {
    if (filter_length == 0) throw std::invalid_argument("RegressorHistory: filter length must be positive");
    if (projection_order == 0) throw std::invalid_argument("RegressorHistory: projection order must be positive");
    buffer_.assign(2 * capacity_, 0.0);
}

void RegressorHistory::push(double sample) noexcept {
    head_ = head_ == 0 ? capacity_ - 1 : head_ - 1;
    buffer_[head_] = sample;
    buffer_[head_ + capacity_] = sample;
    ++seen_;
}

void RegressorHistory::reset() noexcept {
    std::fill(buffer_.begin(), buffer_.end(), 0.0);
    head_ = 0;
    seen_ = 0;
}

Matrix RegressorHistory::materialize() const {
    Matrix x(length_, order_);
    for (std::size_t j = 0; j < order_; ++j) {
        auto column = input_vector(j);
        std::copy(column.begin(), column.end(), x.column(j).begin());
    }
    return x;
}

std::vector<double> error_vector(const RegressorHistory& history, std::span<const double> desired,
                                 std::span<const double> weights) {
    if (weights.size() != history.filter_length())
        throw std::invalid_argument("error_vector: weights have length " + std::to_string(weights.size()) +
                                    ", expected " + std::to_string(history.filter_length()));
    if (desired.size() != history.projection_order())
        throw std::invalid_argument("error_vector: desired has length " + std::to_string(desired.size()) +
                                    ", expected " + std::to_string(history.projection_order()));

    std::vector<double> e(desired.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
        auto x = history.input_vector(k);
        double y = 0.0;
        for (std::size_t l = 0; l < weights.size(); ++l) y += x[l] * weights[l];
        e[k] = desired[k] - y;
    }
    return e;
}

namespace {

void check_dims(const BlockPartition& partition, const RegressorHistory& history, const char* who) {
    if (partition.filter_length() != history.filter_length())
        throw std::invalid_argument(std::string(who) + ": gains cover " +
                                    std::to_string(partition.filter_length()) + " taps, history has " +
                                    std::to_string(history.filter_length()));
}

}  // namespace

WeightedRegressor build_weighted_regressor_direct(const GainVector& gains, const RegressorHistory& history) {
    check_dims(gains.partition(), history, "build_weighted_regressor_direct");
    const std::size_t taps = history.filter_length();
    const std::size_t order = history.projection_order();
    auto window = history.window();

    WeightedRegressor out{Matrix(taps, order), taps * order};
    for (std::size_t j = 0; j < order; ++j) {
        auto col = out.matrix.column(j);
        for (std::size_t l = 0; l < taps; ++l) col[l] = gains.tap_gain(l) * window[l + j];
    }
    return out;
}

WeightedRegressor build_weighted_regressor_efficient(const GainVector& gains,
                                                     const RegressorHistory& history) {
    check_dims(gains.partition(), history, "build_weighted_regressor_efficient");
    const std::size_t taps = history.filter_length();
    const std::size_t order = history.projection_order();
    const std::size_t group = gains.partition().group_size();
    const std::size_t blocks = gains.partition().block_count();
    const std::size_t span_len = group + order - 1;
    auto window = history.window();

    WeightedRegressor out{Matrix(taps, order), 0};
    std::vector<double> products(span_len);
    for (std::size_t i = 0; i < blocks; ++i) {
        const double g = gains.block_gain(i);
        const std::size_t row0 = i * group;
        for (std::size_t k = 0; k < span_len; ++k) products[k] = g * window[row0 + k];
        out.multiplication_count += span_len;

        for (std::size_t j = 0; j < order; ++j) {
            auto col = out.matrix.column(j);
            std::copy_n(products.begin() + static_cast<std::ptrdiff_t>(j), group,
                        col.begin() + static_cast<std::ptrdiff_t>(row0));
        }
    }
    return out;
}

WeightedRegressor build_weighted_regressor_taps(std::span<const double> tap_gains,
                                                const RegressorHistory& history) {
    if (tap_gains.size() != history.filter_length())
        throw std::invalid_argument("build_weighted_regressor_taps: gain length mismatch");
    const std::size_t taps = history.filter_length();
    const std::size_t order = history.projection_order();

    WeightedRegressor out{Matrix(taps, order), taps * order};
    for (std::size_t j = 0; j < order; ++j) {
        auto x = history.input_vector(j);
        auto col = out.matrix.column(j);
        for (std::size_t l = 0; l < taps; ++l) col[l] = tap_gains[l] * x[l];
    }
    return out;
}

Matrix projection_matrix(const RegressorHistory& history, const Matrix& weighted) {
    const std::size_t taps = history.filter_length();
    const std::size_t order = history.projection_order();
    if (weighted.rows() != taps || weighted.cols() != order)
        throw std::invalid_argument("projection_matrix: weighted regressor must be L x M");

    Matrix a(order, order);
    for (std::size_t j = 0; j < order; ++j) {
        auto p = weighted.column(j);
        for (std::size_t i = 0; i < order; ++i) {
            auto x = history.input_vector(i);
            double acc = 0.0;
            for (std::size_t l = 0; l < taps; ++l) acc += x[l] * p[l];
            a(i, j) = acc;
        }
    }
    return a;
}

}  // namespace bspapa
