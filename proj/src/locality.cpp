#include "nsv/locality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nsv {

DensityMatrix apply_channel(const DensityMatrix& rho, const Channel& ch) {
    if (rho.dim() != ch.dim()) {
        throw Error(Errc::DimensionMismatch, "state and channel dimensions differ");
    }
    Matrix out = Matrix::Zero(rho.dim(), rho.dim());
    for (const Matrix& k : ch.kraus()) {
        out += k * rho.matrix() * k.adjoint();
    }
    return DensityMatrix::make(out);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const ProductPartition& pp,
                            std::size_t keep) {
    if (rho.dim() != pp.total_dim()) {
        throw Error(Errc::DimensionMismatch, "state does not match the partition");
    }
    if (keep >= pp.sector_count()) {
        throw Error(Errc::DimensionMismatch, "kept sector index out of range");
    }
    const Eigen::Index d_keep = pp.sector_dims()[keep];
    const Eigen::Index stride = pp.stride(keep);
    const Eigen::Index rest = pp.total_dim() / d_keep;

    // Global offsets of every joint index of the traced-out sectors,
    // i.e. all globals whose kept-sector coordinate is zero.
    std::vector<Eigen::Index> offsets;
    offsets.reserve(rest);
    for (Eigen::Index g = 0; g < pp.total_dim(); ++g) {
        if ((g / stride) % d_keep == 0) {
            offsets.push_back(g);
        }
    }

    Matrix reduced = Matrix::Zero(d_keep, d_keep);
    for (Eigen::Index p = 0; p < d_keep; ++p) {
        for (Eigen::Index q = 0; q < d_keep; ++q) {
            Cplx sum(0.0, 0.0);
            for (const Eigen::Index off : offsets) {
                sum += rho.matrix()(p * stride + off, q * stride + off);
            }
            reduced(p, q) = sum;
        }
    }
    return DensityMatrix::make(reduced);
}

std::vector<double> JointTable::row_marginal() const {
    std::vector<double> out(probabilities.rows());
    for (Eigen::Index i = 0; i < probabilities.rows(); ++i) {
        out[i] = probabilities.row(i).sum();
    }
    return out;
}

std::vector<double> JointTable::col_marginal() const {
    std::vector<double> out(probabilities.cols());
    for (Eigen::Index j = 0; j < probabilities.cols(); ++j) {
        out[j] = probabilities.col(j).sum();
    }
    return out;
}

JointTable joint_distribution(const DensityMatrix& rho, const LocalInstrument& instr_a,
                              const LocalInstrument& instr_b, const ProductPartition& pp) {
    if (instr_a.sector() == instr_b.sector()) {
        throw Error(Errc::SameSector, "both instruments act on the same sector");
    }
    if (pp.sector_count() != 2) {
        throw Error(Errc::DimensionMismatch, "joint distribution needs a bipartite partition");
    }
    const std::size_t sec_a = instr_a.sector() == Sector::A ? 0 : 1;
    const std::size_t sec_b = 1 - sec_a;
    if (instr_a.dim() != pp.sector_dims()[sec_a] || instr_b.dim() != pp.sector_dims()[sec_b]) {
        throw Error(Errc::DimensionMismatch, "instrument dimension does not match its sector");
    }

    std::vector<Matrix> lift_a, lift_b;
    lift_a.reserve(instr_a.outcome_count());
    lift_b.reserve(instr_b.outcome_count());
    for (const Matrix& m : instr_a.elements()) {
        lift_a.push_back(embed_local(m, pp, sec_a));
    }
    for (const Matrix& m : instr_b.elements()) {
        lift_b.push_back(embed_local(m, pp, sec_b));
    }

    Eigen::MatrixXd table(instr_a.outcome_count(), instr_b.outcome_count());
    for (std::size_t a = 0; a < lift_a.size(); ++a) {
        for (std::size_t k = 0; k < lift_b.size(); ++k) {
            const Matrix op = lift_a[a] * lift_b[k];
            const double p = (op * rho.matrix() * op.adjoint()).trace().real();
            if (p < -tol::p) {
                throw Error(Errc::InvalidDistribution,
                            "negative joint probability " + std::to_string(p));
            }
            table(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k)) =
                std::max(p, 0.0);
        }
    }
    return JointTable{instr_a.outcome_labels(), instr_b.outcome_labels(), std::move(table)};
}

namespace {

// The finest projective instrument compatible with a B split: one rank-1
// projector per block basis column. Returns the instrument plus, for each
// block, the fine-outcome index set δ_j.
std::pair<LocalInstrument, std::vector<std::vector<std::size_t>>> finest_refinement(
    const SumPartition& sp_b) {
    std::vector<Matrix> projectors;
    std::vector<std::vector<std::size_t>> groups(sp_b.block_count());
    std::size_t next = 0;
    for (std::size_t j = 0; j < sp_b.block_count(); ++j) {
        const Matrix& basis = sp_b.blocks()[j].basis;
        for (Eigen::Index c = 0; c < basis.cols(); ++c) {
            projectors.push_back(basis.col(c) * basis.col(c).adjoint());
            groups[j].push_back(next++);
        }
    }
    return {LocalInstrument::projective(Sector::B, std::move(projectors)), std::move(groups)};
}

}  // namespace

Distribution bob_marginal(const DensityMatrix& rho, const LocalInstrument& instr_a,
                          const SumPartition& sp_b, const ProductPartition& pp) {
    if (instr_a.sector() != Sector::A) {
        throw Error(Errc::SameSector, "the acting instrument must live on sector A");
    }
    auto [fine_b, groups] = finest_refinement(sp_b);
    const JointTable joint = joint_distribution(rho, instr_a, fine_b, pp);
    const std::vector<double> fine = joint.col_marginal();

    std::vector<std::string> labels;
    std::vector<double> probs;
    labels.reserve(sp_b.block_count());
    probs.reserve(sp_b.block_count());
    for (std::size_t j = 0; j < sp_b.block_count(); ++j) {
        double q = 0.0;
        for (const std::size_t k : groups[j]) {
            q += fine[k];
        }
        labels.push_back(sp_b.blocks()[j].label);
        probs.push_back(std::clamp(q, 0.0, 1.0));
    }
    return make_distribution(std::move(labels), std::move(probs), true);
}

SignalReport check_nosignaling(const DensityMatrix& rho, const LocalInstrument& instr_a,
                               const LocalInstrument& instr_a_prime, const SumPartition& sp_b,
                               const ProductPartition& pp, double tolerance) {
    const Distribution lhs = bob_marginal(rho, instr_a, sp_b, pp);
    const Distribution rhs = bob_marginal(rho, instr_a_prime, sp_b, pp);

    SignalReport report;
    report.tolerance = tolerance;
    report.contexts = {"E", "E'"};
    for (std::size_t j = 0; j < lhs.probabilities.size(); ++j) {
        report.block_labels.push_back(lhs.labels[j]);
        report.measures.emplace_back(lhs.probabilities[j], rhs.probabilities[j]);
        report.deviations.push_back(std::abs(lhs.probabilities[j] - rhs.probabilities[j]));
    }
    report.max_deviation =
        report.deviations.empty()
            ? 0.0
            : *std::max_element(report.deviations.begin(), report.deviations.end());
    report.pass = report.max_deviation <= tolerance;
    return report;
}

}  // namespace nsv
