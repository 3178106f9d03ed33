#pragma once

#include "anyonqi/state_algebra.hpp"

#include <cstdint>
#include <random>

namespace anyonqi {

using Rng = std::mt19937_64;

// Generator for task `index` of a sweep seeded with `master`; independent of
// which thread runs the task.
Rng task_rng(std::uint64_t master, std::uint64_t index);

// Standard complex Gaussian entries, normalized.
Vector random_unit_vector(Rng& rng, std::size_t n);
// Haar-distributed n x n unitary.
Matrix haar_unitary(Rng& rng, std::size_t n);

AnyonState random_state(BasisPtr basis, Charge sector, Rng& rng);
// Sector drawn uniformly among the non-empty ones.
AnyonState random_state(BasisPtr basis, Rng& rng);

// Full-rank random density operator (normalized Wishart per sector).
BlockOperator random_density(BasisPtr basis, Rng& rng);
BlockOperator random_hermitian(BasisPtr basis, Rng& rng);
// Haar unitary in every sector block.
BlockOperator random_block_unitary(BasisPtr basis, Rng& rng);

}  // namespace anyonqi
