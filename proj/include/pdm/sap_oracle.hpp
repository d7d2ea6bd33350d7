#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pdm/paradigm.hpp"

namespace pdm {

struct SapSolution {
    Paradigm paradigm;
    double size;
};

/// Globally optimal null-insertion alignment of all strings at once.
///
/// Dynamic programming over the lattice of per-string prefix positions:
/// every column advances a nonempty subset of the strings and pads the rest
/// with null. That covers every gap placement at every target length
/// between the longest string and the total length (all-null columns cost
/// nothing and are never needed). Exponential in the string count, so it
/// refuses inputs whose total length exceeds `max_total_length`.
SapSolution exact_sap_oracle(const std::vector<std::string>& strings, const DistanceTable& d,
                             std::size_t max_total_length = 24);

}  // namespace pdm
