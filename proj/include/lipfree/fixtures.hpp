#pragma once

#include "lipfree/core.hpp"

namespace lipfree::fixtures {

/// {0, h, 1} on the line: d(0,h) = d(h,1) = 1/2, d(0,1) = 1. Base "0".
FiniteMetricSpace line3();

/// {0, a, b, c}: d(a,b) = 1/2, every other distinct pair at distance 1. Base "0".
FiniteMetricSpace wedge4();

/// {0, 1, 2, 3} with the discrete metric. Base "0".
FiniteMetricSpace discrete4();

/// Pair by point ids; throws std::invalid_argument on unknown ids.
PairId pair(const FiniteMetricSpace& space, const std::string& from, const std::string& to);

} // namespace lipfree::fixtures
