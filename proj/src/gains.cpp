#include "bspapa/gains.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bspapa {

BlockPartition::BlockPartition(std::size_t filter_length, std::size_t group_size)
    : length_(filter_length), group_(group_size) {
    if (filter_length == 0) throw std::invalid_argument("BlockPartition: filter length must be positive");
    if (group_size == 0 || group_size > filter_length)
        throw std::invalid_argument("BlockPartition: group size must lie in [1, L], got " +
                                    std::to_string(group_size));
    if (filter_length % group_size != 0)
        throw std::invalid_argument("BlockPartition: group size " + std::to_string(group_size) +
                                    " does not divide filter length " + std::to_string(filter_length));
}

void StallGuards::validate() const {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("StallGuards: rho must be positive");
    if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("StallGuards: q must be positive");
}

GainVector::GainVector(BlockPartition partition, std::vector<double> block_gains)
    : partition_(partition), gains_(std::move(block_gains)) {
    if (gains_.size() != partition_.block_count())
        throw std::invalid_argument("GainVector: expected " + std::to_string(partition_.block_count()) +
                                    " block gains, got " + std::to_string(gains_.size()));
}

GainVector GainVector::uniform(BlockPartition partition) {
    return GainVector(partition, std::vector<double>(partition.block_count(), 1.0));
}

std::vector<double> GainVector::expand() const {
    std::vector<double> taps;
    taps.reserve(partition_.filter_length());
    for (double g : gains_) taps.insert(taps.end(), partition_.group_size(), g);
    return taps;
}

std::vector<double> block_l2_norms(std::span<const double> weights, const BlockPartition& partition) {
    if (weights.size() != partition.filter_length())
        throw std::invalid_argument("block_l2_norms: weights have length " + std::to_string(weights.size()) +
                                    ", partition expects " + std::to_string(partition.filter_length()));
    const std::size_t p = partition.group_size();
    std::vector<double> norms(partition.block_count());
    for (std::size_t i = 0; i < norms.size(); ++i) {
        double acc = 0.0;
        for (double w : weights.subspan(i * p, p)) acc += w * w;
        norms[i] = std::sqrt(acc);
    }
    return norms;
}

std::vector<double> proportionate_gains(std::span<const double> block_norms, const StallGuards& guards) {
    if (block_norms.empty()) throw std::invalid_argument("proportionate_gains: no block norms");
    guards.validate();

    const double largest = std::max(guards.q, *std::max_element(block_norms.begin(), block_norms.end()));
    const double floor = guards.rho * largest;

    std::vector<double> gains(block_norms.size());
    double total = 0.0;
    for (std::size_t i = 0; i < gains.size(); ++i) {
        gains[i] = std::max(floor, block_norms[i]);
        total += gains[i];
    }
    const double mean = total / static_cast<double>(gains.size());
    for (double& g : gains) g /= mean;
    return gains;
}

GainVector compute_block_gains(std::span<const double> weights, const BlockPartition& partition,
                               const StallGuards& guards) {
    return GainVector(partition, proportionate_gains(block_l2_norms(weights, partition), guards));
}

std::vector<double> tap_proportionate_gains(std::span<const double> weights, const StallGuards& guards) {
    if (weights.empty()) throw std::invalid_argument("tap_proportionate_gains: empty weight vector");
    guards.validate();

    double largest = guards.q;
    for (double w : weights) largest = std::max(largest, std::abs(w));

    std::vector<double> gamma(weights.size());
    double total = 0.0;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        gamma[l] = std::max(guards.rho * largest, std::abs(weights[l]));
        total += gamma[l];
    }
    const double mean = total / static_cast<double>(weights.size());
    for (double& g : gamma) g /= mean;
    return gamma;
}

}  // namespace bspapa
