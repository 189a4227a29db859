#include "nsv/qutrit.hpp"

#include <algorithm>
#include <cmath>

#include "nsv/rng.hpp"

namespace nsv {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Matrix basis_projector(int index) {
    Matrix p = Matrix::Zero(3, 3);
    p(index, index) = Cplx(1.0, 0.0);
    return p;
}

// The two completed contexts Y_j⁺ = {|0⟩} ∪ Y_j as projector families.
std::vector<Matrix> completed_context(ContextChoice ctx) {
    std::vector<Matrix> family;
    family.push_back(basis_projector(0));
    const Matrix basis = context_basis(ctx);
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        family.push_back(basis.col(c) * basis.col(c).adjoint());
    }
    return family;
}

}  // namespace

QutritScenario QutritScenario::make(const Vector& beta, double a, double b,
                                    double tol_norm) {
    if (beta.size() != 3) {
        throw Error(Errc::DimensionMismatch, "the scenario state has three amplitudes");
    }
    const double nrm = beta.norm();
    if (std::abs(nrm - 1.0) > tol_norm) {
        throw Error(Errc::NotNormalized, "amplitudes have norm " + std::to_string(nrm),
                    std::abs(nrm - 1.0));
    }
    if (a == b) {
        throw Error(Errc::DegenerateSplit, "the coarse test needs distinct outcomes a != b");
    }
    return QutritScenario{beta, a, b};
}

Matrix context_basis(ContextChoice ctx) {
    Matrix basis = Matrix::Zero(3, 2);
    if (ctx == ContextChoice::Y1) {
        basis(1, 0) = Cplx(1.0, 0.0);
        basis(2, 1) = Cplx(1.0, 0.0);
    } else {
        basis(1, 0) = Cplx(kInvSqrt2, 0.0);
        basis(2, 0) = Cplx(kInvSqrt2, 0.0);
        basis(1, 1) = Cplx(kInvSqrt2, 0.0);
        basis(2, 1) = Cplx(-kInvSqrt2, 0.0);
    }
    return basis;
}

Observable build_x(double a, double b) {
    if (std::abs(a - b) < tol::cluster) {
        throw Error(Errc::DegenerateSplit,
                    "a and b must be separated by at least the clustering tolerance");
    }
    Matrix x = Matrix::Zero(3, 3);
    x(0, 0) = Cplx(a, 0.0);
    x(1, 1) = Cplx(b, 0.0);
    x(2, 2) = Cplx(b, 0.0);
    return Observable::decompose(x);
}

RoutingResult run_routing(const QutritScenario& sc, ContextChoice ctx, double tol_p) {
    const DensityMatrix rho = pure_state(sc.beta);
    const double alice = std::norm(sc.beta(0));
    if (alice >= 1.0 - tol_p) {
        throw Error(Errc::BobUnreachable,
                    "the particle reaches station A with probability 1");
    }

    // Projective update onto the b-eigenspace, then Born weights in ctx.
    const Matrix basis = context_basis(ctx);
    const Matrix p_b = basis_projector(1) + basis_projector(2);
    const Matrix conditioned = p_b * rho.matrix() * p_b / (1.0 - alice);

    std::vector<std::string> labels =
        ctx == ContextChoice::Y1 ? std::vector<std::string>{"1", "2"}
                                 : std::vector<std::string>{"+", "-"};
    std::vector<double> probs(2);
    for (Eigen::Index c = 0; c < 2; ++c) {
        const Cplx w = basis.col(c).adjoint() * conditioned * basis.col(c);
        probs[static_cast<std::size_t>(c)] = std::clamp(w.real(), 0.0, 1.0);
    }
    return RoutingResult{alice, make_distribution(std::move(labels), std::move(probs), true)};
}

SignalReport check_signal_free(const QutritScenario& sc, double tolerance) {
    const SubspaceMeasureFn born = [](const DensityMatrix& rho, const Matrix& context) {
        return frame_distribution(rho, context).total();
    };
    return check_signal_free(sc, tolerance, born);
}

SignalReport check_signal_free(const QutritScenario& sc, double tolerance,
                               const SubspaceMeasureFn& measure) {
    const DensityMatrix rho = pure_state(sc.beta);

    // Alice's probability through each context is one minus the measure of
    // span{|1⟩,|2⟩} resolved in that context; any context dependence of the
    // subspace measure shows up directly here.
    const double mu_y1 = measure(rho, context_basis(ContextChoice::Y1));
    const double mu_y2 = measure(rho, context_basis(ContextChoice::Y2));
    const double p0_y1 = 1.0 - mu_y1;
    const double p0_y2 = 1.0 - mu_y2;

    SignalReport report;
    report.tolerance = tolerance;
    report.contexts = {"Y1", "Y2"};
    report.block_labels = {"station A", "span{|1>,|2>}"};
    report.measures = {{p0_y1, p0_y2}, {mu_y1, mu_y2}};
    report.deviations = {std::abs(p0_y1 - p0_y2), std::abs(mu_y1 - mu_y2)};
    report.max_deviation = std::max(report.deviations[0], report.deviations[1]);
    report.pass = report.max_deviation <= tolerance;
    return report;
}

NoDisturbanceReport check_nodisturbance(double a, double b, double tolerance, int trials,
                                        std::uint64_t seed) {
    return nodisturbance_report(build_x(a, b).matrix(), tolerance, trials, seed);
}

NoDisturbanceReport nodisturbance_report(const Matrix& x, double tolerance, int trials,
                                         std::uint64_t seed) {
    if (x.rows() != 3 || x.cols() != 3) {
        throw Error(Errc::DimensionMismatch, "the routing scenario lives on a qutrit");
    }
    const std::vector<Matrix> y1 = completed_context(ContextChoice::Y1);
    const std::vector<Matrix> y2 = completed_context(ContextChoice::Y2);

    NoDisturbanceReport report;
    report.tolerance = tolerance;

    for (const auto& family : {y1, y2}) {
        for (const Matrix& proj : family) {
            report.max_x_commutator = std::max(report.max_x_commutator,
                                               commutator_norm(x, proj));
        }
    }
    report.commuting_pass = report.max_x_commutator <= tolerance;

    for (const Matrix& p1 : y1) {
        for (const Matrix& p2 : y2) {
            report.max_cross_commutator = std::max(report.max_cross_commutator,
                                                   commutator_norm(p1, p2));
        }
    }
    report.noncommuting_contexts = report.max_cross_commutator > 0.1;

    // X marginals through either completed context, over random states.
    // The joint is sequential: project onto the context outcome, then read
    // off the X eigenspace weight.
    const Observable obs = Observable::decompose(x);
    Prng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index rank = 1 + static_cast<Eigen::Index>(rng.integer(3));
        const DensityMatrix rho = random_density(3, rank, rng);
        for (const EigenSpace& level : obs.spectrum()) {
            double via_y1 = 0.0;
            double via_y2 = 0.0;
            for (const Matrix& proj : y1) {
                via_y1 += (level.projector.matrix() * proj * rho.matrix() * proj)
                              .trace()
                              .real();
            }
            for (const Matrix& proj : y2) {
                via_y2 += (level.projector.matrix() * proj * rho.matrix() * proj)
                              .trace()
                              .real();
            }
            report.max_marginal_deviation =
                std::max(report.max_marginal_deviation, std::abs(via_y1 - via_y2));
        }
    }
    report.marginals_pass = report.max_marginal_deviation <= tolerance;

    report.pass = report.commuting_pass && report.noncommuting_contexts &&
                  report.marginals_pass;
    return report;
}

SumPartition qutrit_sum_partition() {
    return SumPartition::from_indices(3, {{0}, {1, 2}});
}

}  // namespace nsv
