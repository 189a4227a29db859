#include "nsv/partitions.hpp"

#include <algorithm>
#include <sstream>

namespace nsv {

ProductPartition ProductPartition::make(std::vector<Eigen::Index> sector_dims) {
    if (sector_dims.empty()) {
        throw Error(Errc::EmptyPartition, "a product partition needs at least one sector");
    }
    Eigen::Index total = 1;
    for (const Eigen::Index d : sector_dims) {
        if (d < 1) {
            throw Error(Errc::EmptyPartition, "sector dimensions must be at least 1");
        }
        total *= d;
    }
    return ProductPartition(std::move(sector_dims), total);
}

bool ProductPartition::trivial() const noexcept {
    if (dims_.size() < 2) {
        return true;
    }
    return std::any_of(dims_.begin(), dims_.end(),
                       [](Eigen::Index d) { return d == 1; });
}

Eigen::Index ProductPartition::stride(std::size_t sector) const {
    Eigen::Index s = 1;
    for (std::size_t i = sector + 1; i < dims_.size(); ++i) {
        s *= dims_[i];
    }
    return s;
}

Eigen::Index ProductPartition::global_index(const std::vector<Eigen::Index>& tuple) const {
    if (tuple.size() != dims_.size()) {
        throw Error(Errc::DimensionMismatch, "index tuple arity does not match sector count");
    }
    Eigen::Index g = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (tuple[i] < 0 || tuple[i] >= dims_[i]) {
            throw Error(Errc::DimensionMismatch, "sector index out of range");
        }
        g = g * dims_[i] + tuple[i];
    }
    return g;
}

std::vector<Eigen::Index> ProductPartition::tuple_of(Eigen::Index global) const {
    if (global < 0 || global >= total_) {
        throw Error(Errc::DimensionMismatch, "global index out of range");
    }
    std::vector<Eigen::Index> tuple(dims_.size());
    for (std::size_t i = dims_.size(); i-- > 0;) {
        tuple[i] = global % dims_[i];
        global /= dims_[i];
    }
    return tuple;
}

SumPartition SumPartition::make(std::vector<Matrix> block_bases, double tol_res) {
    if (block_bases.empty()) {
        throw Error(Errc::EmptyPartition, "a sum partition needs at least one block");
    }
    const Eigen::Index total = block_bases.front().rows();
    Eigen::Index dim_sum = 0;
    for (std::size_t j = 0; j < block_bases.size(); ++j) {
        const Matrix& basis = block_bases[j];
        require_finite(basis);
        if (basis.rows() != total) {
            throw Error(Errc::DimensionSumMismatch, "blocks live in different total spaces");
        }
        const Matrix gram = basis.adjoint() * basis;
        const double dev = (gram - Matrix::Identity(basis.cols(), basis.cols())).norm();
        if (dev > tol_res) {
            std::ostringstream os;
            os << "block " << j << " columns are not orthonormal, deviation " << dev;
            throw Error(Errc::NotOrthogonal, os.str(), dev);
        }
        dim_sum += basis.cols();
    }
    for (std::size_t j = 0; j < block_bases.size(); ++j) {
        for (std::size_t l = j + 1; l < block_bases.size(); ++l) {
            const double overlap = (block_bases[j].adjoint() * block_bases[l]).norm();
            if (overlap > tol_res) {
                std::ostringstream os;
                os << "blocks " << j << " and " << l << " overlap, deviation " << overlap;
                throw Error(Errc::NotOrthogonal, os.str(), overlap);
            }
        }
    }
    if (dim_sum != total) {
        std::ostringstream os;
        os << "block dimensions sum to " << dim_sum << ", total space is " << total;
        throw Error(Errc::DimensionSumMismatch, os.str());
    }

    std::vector<SumBlock> blocks;
    blocks.reserve(block_bases.size());
    for (std::size_t j = 0; j < block_bases.size(); ++j) {
        SumBlock block;
        block.label = "K" + std::to_string(j);
        block.basis = std::move(block_bases[j]);
        // Record axis indices when every column is (up to phase) a
        // standard basis vector.
        std::vector<Eigen::Index> indices;
        bool axis_aligned = true;
        for (Eigen::Index c = 0; c < block.basis.cols() && axis_aligned; ++c) {
            Eigen::Index hit = -1;
            for (Eigen::Index r = 0; r < block.basis.rows(); ++r) {
                const double mag = std::abs(block.basis(r, c));
                if (mag > 1e-12) {
                    if (hit >= 0 || std::abs(mag - 1.0) > 1e-12) {
                        axis_aligned = false;
                        break;
                    }
                    hit = r;
                }
            }
            if (hit < 0) {
                axis_aligned = false;
            } else {
                indices.push_back(hit);
            }
        }
        if (axis_aligned) {
            block.axis_indices = std::move(indices);
        }
        blocks.push_back(std::move(block));
    }
    return SumPartition(std::move(blocks), total);
}

SumPartition SumPartition::from_indices(Eigen::Index total_dim,
                                        const std::vector<std::vector<Eigen::Index>>& blocks) {
    std::vector<Matrix> bases;
    bases.reserve(blocks.size());
    for (const auto& idx : blocks) {
        Matrix basis = Matrix::Zero(total_dim, static_cast<Eigen::Index>(idx.size()));
        for (std::size_t c = 0; c < idx.size(); ++c) {
            if (idx[c] < 0 || idx[c] >= total_dim) {
                throw Error(Errc::DimensionSumMismatch, "basis index out of range");
            }
            basis(idx[c], static_cast<Eigen::Index>(c)) = Cplx(1.0, 0.0);
        }
        bases.push_back(std::move(basis));
    }
    return make(std::move(bases));
}

Projector SumPartition::block_projector(std::size_t j) const {
    return Projector::onto(blocks_.at(j).basis);
}

SumPartition induced_sum_partition(const ProductPartition& pp, const SumPartition& b_split) {
    if (pp.sector_count() != 2) {
        throw Error(Errc::DimensionMismatch,
                    "induced partition expects a bipartite product partition");
    }
    const Eigen::Index dim_a = pp.sector_dims()[0];
    const Eigen::Index dim_b = pp.sector_dims()[1];
    if (b_split.total_dim() != dim_b) {
        throw Error(Errc::DimensionMismatch, "B split does not match the B sector dimension");
    }

    std::vector<Matrix> bases;
    bases.reserve(b_split.block_count());
    const Matrix id_a = Matrix::Identity(dim_a, dim_a);
    for (const SumBlock& block : b_split.blocks()) {
        bases.push_back(kron(id_a, block.basis));
    }
    SumPartition induced = SumPartition::make(std::move(bases));

    // kron already yields axis-aligned columns whenever the B block is
    // axis-aligned, so the recorded δ_j sets come out of make() directly;
    // nothing further to do here.
    return induced;
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> factorizations(Eigen::Index dim) {
    if (dim < 2) {
        throw Error(Errc::DimensionMismatch, "factorizations need dim >= 2");
    }
    std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
    for (Eigen::Index d = 2; d * d <= dim; ++d) {
        if (dim % d == 0) {
            out.emplace_back(d, dim / d);
        }
    }
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix embed_local(const Matrix& op, const ProductPartition& pp, std::size_t sector) {
    if (sector >= pp.sector_count()) {
        throw Error(Errc::DimensionMismatch, "sector index out of range");
    }
    if (op.rows() != op.cols() || op.rows() != pp.sector_dims()[sector]) {
        throw Error(Errc::DimensionMismatch,
                    "operator dimension does not match its sector");
    }
    Matrix result = Matrix::Identity(1, 1);
    for (std::size_t i = 0; i < pp.sector_count(); ++i) {
        const Eigen::Index d = pp.sector_dims()[i];
        result = (i == sector) ? kron(result, op) : kron(result, Matrix::Identity(d, d));
    }
    return result;
}

}  // namespace nsv
