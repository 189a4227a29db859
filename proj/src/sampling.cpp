#include "nsv/sampling.hpp"

#include <numeric>

#include "nsv/hilbert.hpp"

namespace nsv {

namespace {

// Random composition of n into ordered positive parts.
std::vector<Eigen::Index> random_composition(Eigen::Index n, Prng& rng) {
    std::vector<Eigen::Index> parts;
    Eigen::Index remaining = n;
    while (remaining > 0) {
        const Eigen::Index size =
            1 + static_cast<Eigen::Index>(rng.integer(static_cast<std::uint64_t>(remaining)));
        parts.push_back(size);
        remaining -= size;
    }
    return parts;
}

std::vector<Matrix> grouped_projectors(const Matrix& u, const std::vector<Eigen::Index>& sizes) {
    std::vector<Matrix> projectors;
    Eigen::Index col = 0;
    for (const Eigen::Index size : sizes) {
        const Matrix block = u.middleCols(col, size);
        projectors.push_back(block * block.adjoint());
        col += size;
    }
    return projectors;
}

}  // namespace

LocalInstrument random_instrument(Eigen::Index dim, Sector sector, Prng& rng) {
    const std::uint64_t family = rng.integer(3);
    if (family == 0) {
        // Projective measurement in a Haar-rotated basis.
        const Matrix u = haar_unitary(dim, rng);
        return LocalInstrument::projective(sector,
                                           grouped_projectors(u, random_composition(dim, rng)));
    }
    if (family == 1) {
        // Unitary followed by a projective measurement: elements P_a U.
        const Matrix u = haar_unitary(dim, rng);
        const Matrix v = haar_unitary(dim, rng);
        std::vector<Matrix> elements =
            grouped_projectors(u, random_composition(dim, rng));
        for (Matrix& m : elements) {
            m = m * v;
        }
        return LocalInstrument::kraus(sector, std::move(elements));
    }
    // POVM-style Kraus family M_i = G_i (Σ G†G)^(-1/2).
    const std::size_t count = 2 + static_cast<std::size_t>(rng.integer(
                                      static_cast<std::uint64_t>(dim)));
    std::vector<Matrix> gs;
    Matrix total = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < count; ++i) {
        gs.push_back(rng.ginibre(dim, dim));
        total += gs.back().adjoint() * gs.back();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(total);
    const Matrix correction = es.operatorInverseSqrt();
    for (Matrix& g : gs) {
        g = g * correction;
    }
    return LocalInstrument::kraus(sector, std::move(gs));
}

LocalInstrument random_rank1_projective(Eigen::Index dim, Sector sector, Prng& rng) {
    const Matrix u = haar_unitary(dim, rng);
    std::vector<Matrix> projectors;
    projectors.reserve(static_cast<std::size_t>(dim));
    for (Eigen::Index c = 0; c < dim; ++c) {
        projectors.push_back(u.col(c) * u.col(c).adjoint());
    }
    return LocalInstrument::projective(sector, std::move(projectors));
}

SumPartition random_sum_partition(Eigen::Index dim, Prng& rng) {
    const std::vector<Eigen::Index> sizes = random_composition(dim, rng);
    if (rng.integer(2) == 0) {
        // Axis-aligned: a shuffled assignment of basis indices to blocks.
        std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
        std::iota(order.begin(), order.end(), 0);
        for (std::size_t i = order.size(); i > 1; --i) {
            std::swap(order[i - 1], order[rng.integer(i)]);
        }
        std::vector<std::vector<Eigen::Index>> blocks;
        std::size_t next = 0;
        for (const Eigen::Index size : sizes) {
            std::vector<Eigen::Index> block;
            for (Eigen::Index c = 0; c < size; ++c) {
                block.push_back(order[next++]);
            }
            blocks.push_back(std::move(block));
        }
        return SumPartition::from_indices(dim, blocks);
    }
    const Matrix u = haar_unitary(dim, rng);
    std::vector<Matrix> bases;
    Eigen::Index col = 0;
    for (const Eigen::Index size : sizes) {
        bases.push_back(u.middleCols(col, size));
        col += size;
    }
    return SumPartition::make(std::move(bases));
}

Channel random_channel(Eigen::Index dim, std::size_t kraus_count, Prng& rng) {
    std::vector<Matrix> gs;
    Matrix total = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < kraus_count; ++i) {
        gs.push_back(rng.ginibre(dim, dim));
        total += gs.back().adjoint() * gs.back();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(total);
    const Matrix correction = es.operatorInverseSqrt();
    for (Matrix& g : gs) {
        g = g * correction;
    }
    return Channel::make(std::move(gs));
}

Matrix random_subspace(Eigen::Index dim, Eigen::Index k, Prng& rng) {
    return haar_unitary(dim, rng).leftCols(k);
}

}  // namespace nsv
