#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsv/hilbert.hpp"

namespace nsv {

// Tensor-product split of the total space into ordered sectors. The global
// basis is row-major with the first sector slowest-varying: for a bipartite
// split, global = a * dim_B + b.
class ProductPartition {
  public:
    static ProductPartition make(std::vector<Eigen::Index> sector_dims);

    Eigen::Index total_dim() const noexcept { return total_; }
    const std::vector<Eigen::Index>& sector_dims() const noexcept { return dims_; }
    std::size_t sector_count() const noexcept { return dims_.size(); }

    // A partition with a single sector, or any dimension-1 sector, carries
    // no nontrivial tensor structure.
    bool trivial() const noexcept;

    Eigen::Index global_index(const std::vector<Eigen::Index>& tuple) const;
    std::vector<Eigen::Index> tuple_of(Eigen::Index global) const;

    // Stride of one sector in the global index.
    Eigen::Index stride(std::size_t sector) const;

  private:
    ProductPartition(std::vector<Eigen::Index> dims, Eigen::Index total)
        : dims_(std::move(dims)), total_(total) {}
    std::vector<Eigen::Index> dims_;
    Eigen::Index total_;
};

// One orthogonal block of a tensor-sum split: an orthonormal basis-column
// matrix, plus the global basis indices it spans when axis-aligned.
struct SumBlock {
    std::string label;
    Matrix basis;  // total_dim x block_dim, orthonormal columns
    std::optional<std::vector<Eigen::Index>> axis_indices;
};

// Orthogonal decomposition of the whole space into blocks.
class SumPartition {
  public:
    static SumPartition make(std::vector<Matrix> block_bases, double tol_res = tol::res);
    static SumPartition from_indices(Eigen::Index total_dim,
                                     const std::vector<std::vector<Eigen::Index>>& blocks);

    Eigen::Index total_dim() const noexcept { return total_; }
    const std::vector<SumBlock>& blocks() const noexcept { return blocks_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }

    Projector block_projector(std::size_t j) const;

  private:
    SumPartition(std::vector<SumBlock> blocks, Eigen::Index total)
        : blocks_(std::move(blocks)), total_(total) {}
    std::vector<SumBlock> blocks_;
    Eigen::Index total_;
};

// Lifts a split of the B sector to the composite space: block j is spanned
// by {|a⟩⊗|v⟩}. Axis index sets carry over whenever the B blocks are
// axis-aligned.
SumPartition induced_sum_partition(const ProductPartition& pp, const SumPartition& b_split);

// All (dA, dB) with dA*dB = dim and 2 <= dA <= dB; empty exactly for primes.
std::vector<std::pair<Eigen::Index, Eigen::Index>> factorizations(Eigen::Index dim);

// Kronecker embedding of an operator acting on one sector, identity
// elsewhere. Sector 0 is the A side of a bipartite split.
Matrix embed_local(const Matrix& op, const ProductPartition& pp, std::size_t sector = 0);

Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace nsv
