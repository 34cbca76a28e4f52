#pragma once

#include "ravopt/common.hpp"

#include <cstdint>

namespace ravopt::problems {

// base + radius * (uniform random unit direction).
Vector sample_init(const Vector& base, double radius, std::uint64_t seed);

}  // namespace ravopt::problems
