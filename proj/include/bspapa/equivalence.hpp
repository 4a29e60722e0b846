#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bspapa {

struct EquivalenceResult {
    std::string name;
    double max_abs_deviation;
};

/// Runs each special-case pair (BS-PAPA P=1 / PAPA, BS-PAPA P=L / APA,
/// BS-PAPA M=1 / BS-PNLMS, BS-MPAPA P=1 / MPAPA) for `steps` samples of
/// seeded white input against a sparse target (L=64, M=4) and reports the
/// largest final-weight difference of each pair.
std::vector<EquivalenceResult> run_equivalence_suite(std::uint64_t seed = 2024, std::size_t steps = 1000);

}  // namespace bspapa
