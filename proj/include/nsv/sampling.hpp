#pragma once

#include "nsv/instruments.hpp"
#include "nsv/partitions.hpp"
#include "nsv/rng.hpp"

namespace nsv {

// Seeded generators behind the randomized property sweeps. Spread across
// three instrument families: projective in a rotated basis, unitary
// followed by projective, and POVM-style Kraus families.
LocalInstrument random_instrument(Eigen::Index dim, Sector sector, Prng& rng);

// Rank-1 projective instrument with `outcomes` = dim outcomes.
LocalInstrument random_rank1_projective(Eigen::Index dim, Sector sector, Prng& rng);

// Random orthogonal split, axis-aligned half the time, rotated otherwise.
SumPartition random_sum_partition(Eigen::Index dim, Prng& rng);

// Random trace-preserving channel with `kraus_count` elements.
Channel random_channel(Eigen::Index dim, std::size_t kraus_count, Prng& rng);

// k orthonormal columns of a Haar unitary.
Matrix random_subspace(Eigen::Index dim, Eigen::Index k, Prng& rng);

}  // namespace nsv
