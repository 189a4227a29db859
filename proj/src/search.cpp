#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "nsv/locality.hpp"
#include "nsv/rng.hpp"

namespace nsv {

namespace {

Matrix phase_fixed_q(const Matrix& g) {
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
        const Cplx d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= (mag == 0.0) ? Cplx(1.0, 0.0) : d / mag;
    }
    return q;
}

Matrix inverse_sqrt(const Matrix& positive) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(positive);
    return es.operatorInverseSqrt();
}

enum class Family { UnitaryProjective, Povm };

// Search-space point: raw Gaussian parameter matrices plus the structure
// chosen at restart time. Rebuilding from the parameters is what makes
// coordinate perturbation well defined.
struct InstrumentParams {
    Family family;
    std::vector<Matrix> gaussians;            // 1 matrix for UP, k for POVM
    std::vector<Eigen::Index> group_sizes;    // UP outcome grouping
    std::vector<double> scales;               // nonphysical hook, 1.0 otherwise

    std::vector<Matrix> build(Eigen::Index dim) const {
        std::vector<Matrix> elements;
        if (family == Family::UnitaryProjective) {
            const Matrix u = phase_fixed_q(gaussians.front());
            Eigen::Index col = 0;
            for (const Eigen::Index size : group_sizes) {
                const Matrix block = u.middleCols(col, size);
                elements.push_back(block * block.adjoint() * u);
                col += size;
            }
        } else {
            Matrix total = Matrix::Zero(dim, dim);
            for (const Matrix& g : gaussians) {
                total += g.adjoint() * g;
            }
            const Matrix correction = inverse_sqrt(total);
            for (const Matrix& g : gaussians) {
                elements.push_back(g * correction);
            }
        }
        for (std::size_t i = 0; i < elements.size(); ++i) {
            elements[i] *= scales[i];
        }
        return elements;
    }
};

InstrumentParams sample_params(Eigen::Index dim, Prng& rng, bool nonphysical) {
    InstrumentParams params;
    params.family = rng.integer(2) == 0 ? Family::UnitaryProjective : Family::Povm;
    if (params.family == Family::UnitaryProjective) {
        params.gaussians.push_back(rng.ginibre(dim, dim));
        // Random composition of dim into outcome groups.
        Eigen::Index remaining = dim;
        while (remaining > 0) {
            const Eigen::Index size =
                1 + static_cast<Eigen::Index>(rng.integer(static_cast<std::uint64_t>(remaining)));
            params.group_sizes.push_back(size);
            remaining -= size;
        }
    } else {
        const std::size_t count = 2 + static_cast<std::size_t>(rng.integer(
                                          static_cast<std::uint64_t>(dim)));
        for (std::size_t i = 0; i < count; ++i) {
            params.gaussians.push_back(rng.ginibre(dim, dim));
        }
    }
    const std::size_t outcomes = params.family == Family::UnitaryProjective
                                     ? params.group_sizes.size()
                                     : params.gaussians.size();
    for (std::size_t i = 0; i < outcomes; ++i) {
        params.scales.push_back(nonphysical ? 0.6 + 0.8 * rng.uniform() : 1.0);
    }
    return params;
}

// All real coordinates of the parameter matrices, flattened for cyclic
// perturbation.
std::size_t coordinate_count(const InstrumentParams& p) {
    std::size_t n = 0;
    for (const Matrix& g : p.gaussians) {
        n += 2 * static_cast<std::size_t>(g.size());
    }
    return n;
}

void nudge(InstrumentParams& p, std::size_t coordinate, double step) {
    for (Matrix& g : p.gaussians) {
        const std::size_t here = 2 * static_cast<std::size_t>(g.size());
        if (coordinate < here) {
            const auto flat = static_cast<Eigen::Index>(coordinate / 2);
            Cplx& entry = g.data()[flat];
            entry += (coordinate % 2 == 0) ? Cplx(step, 0.0) : Cplx(0.0, step);
            return;
        }
        coordinate -= here;
    }
}

class DeviationObjective {
  public:
    DeviationObjective(const DensityMatrix& rho, const ProductPartition& pp,
                       const SumPartition& sp_b)
        : rho_(rho), pp_(pp) {
        const SumPartition induced = induced_sum_partition(pp, sp_b);
        for (std::size_t j = 0; j < induced.block_count(); ++j) {
            block_projectors_.push_back(induced.block_projector(j).matrix());
        }
    }

    std::vector<double> marginal(const std::vector<Matrix>& elements) const {
        const Eigen::Index n = pp_.total_dim();
        Matrix post = Matrix::Zero(n, n);
        for (const Matrix& m : elements) {
            const Matrix lifted = embed_local(m, pp_, 0);
            post += lifted * rho_.matrix() * lifted.adjoint();
        }
        std::vector<double> q;
        q.reserve(block_projectors_.size());
        for (const Matrix& pj : block_projectors_) {
            q.push_back((pj * post).trace().real());
        }
        return q;
    }

    double operator()(const InstrumentParams& a, const InstrumentParams& b) const {
        const Eigen::Index dim_a = pp_.sector_dims()[0];
        const std::vector<double> qa = marginal(a.build(dim_a));
        const std::vector<double> qb = marginal(b.build(dim_a));
        double dev = 0.0;
        for (std::size_t j = 0; j < qa.size(); ++j) {
            dev = std::max(dev, std::abs(qa[j] - qb[j]));
        }
        return dev;
    }

  private:
    const DensityMatrix& rho_;
    const ProductPartition& pp_;
    std::vector<Matrix> block_projectors_;
};

}  // namespace

SearchResult adversarial_signal_search(const DensityMatrix& rho, const ProductPartition& pp,
                                       const SumPartition& sp_b, std::uint64_t budget,
                                       std::uint64_t seed, const SearchOptions& options) {
    if (budget < 1) {
        throw Error(Errc::RankOutOfRange, "search budget must be at least 1");
    }
    if (pp.sector_count() != 2) {
        throw Error(Errc::DimensionMismatch, "search expects a bipartite partition");
    }
    const Eigen::Index dim_a = pp.sector_dims()[0];
    const DeviationObjective objective(rho, pp, sp_b);
    Prng rng(seed);

    double best = -1.0;
    std::optional<std::pair<InstrumentParams, InstrumentParams>> best_params;
    std::uint64_t used = 0;

    constexpr double kInitialStep = 0.3;
    constexpr int kHalvings = 4;

    while (used < budget) {
        InstrumentParams a = sample_params(dim_a, rng, options.allow_nonphysical);
        InstrumentParams b = sample_params(dim_a, rng, options.allow_nonphysical);
        double current = objective(a, b);
        ++used;
        if (current > best) {
            best = current;
            best_params = {a, b};
        }

        // Coordinate descent on the pair, alternating sides, with the step
        // halved after each full pass.
        double step = kInitialStep;
        for (int round = 0; round < kHalvings && used < budget; ++round) {
            const std::size_t coords_a = coordinate_count(a);
            const std::size_t coords_b = coordinate_count(b);
            for (std::size_t c = 0; c < coords_a + coords_b && used < budget; ++c) {
                InstrumentParams trial_a = a;
                InstrumentParams trial_b = b;
                if (c < coords_a) {
                    nudge(trial_a, c, step);
                } else {
                    nudge(trial_b, c - coords_a, step);
                }
                const double value = objective(trial_a, trial_b);
                ++used;
                if (value > current) {
                    current = value;
                    a = std::move(trial_a);
                    b = std::move(trial_b);
                    if (current > best) {
                        best = current;
                        best_params = {a, b};
                    }
                }
            }
            step /= 2.0;
        }
    }

    const auto& [pa, pb] = *best_params;
    SearchResult result{
        best,
        LocalInstrument::unchecked(Sector::A, pa.build(dim_a)),
        LocalInstrument::unchecked(Sector::A, pb.build(dim_a)),
        used,
    };
    return result;
}

}  // namespace nsv
