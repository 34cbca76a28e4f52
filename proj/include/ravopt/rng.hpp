#pragma once

#include "ravopt/common.hpp"

#include <cstdint>
#include <random>

namespace ravopt {

using Rng = std::mt19937_64;

// Mixes (seed, stream) into an independent generator state, so that each
// sample of a cloud can own its generator.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

Vector standard_normal(Rng& rng, Eigen::Index n);
Matrix standard_normal(Rng& rng, Eigen::Index rows, Eigen::Index cols);

// Uniformly distributed direction on the unit sphere in R^n.
Vector random_direction(Rng& rng, Eigen::Index n);

// Matrix with orthonormal rows (rows <= cols), Haar-distributed.
Matrix random_orthonormal_rows(Rng& rng, Eigen::Index rows, Eigen::Index cols);

}  // namespace ravopt
