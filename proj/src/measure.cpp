#include "nsv/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace nsv {

double Distribution::total() const {
    return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

Distribution make_distribution(std::vector<std::string> labels,
                               std::vector<double> probabilities, bool complete,
                               double tol_p) {
    if (labels.size() != probabilities.size()) {
        throw Error(Errc::DimensionMismatch, "one label per probability required");
    }
    for (double& p : probabilities) {
        if (!std::isfinite(p) || p < -tol_p || p > 1.0 + tol_p) {
            throw Error(Errc::InvalidDistribution,
                        "probability " + std::to_string(p) + " outside [0, 1]");
        }
        p = std::clamp(p, 0.0, 1.0);
    }
    Distribution dist{std::move(labels), std::move(probabilities), complete};
    if (complete) {
        const double sum = dist.total();
        if (std::abs(sum - 1.0) > tol_p) {
            throw Error(Errc::InvalidDistribution,
                        "complete table sums to " + std::to_string(sum),
                        std::abs(sum - 1.0));
        }
    }
    return dist;
}

double born_measure(const DensityMatrix& rho, const Projector& p, double tol_p) {
    if (rho.dim() != p.dim()) {
        throw Error(Errc::DimensionMismatch, "state and projector dimensions differ");
    }
    const Cplx trace = (p.matrix() * rho.matrix()).trace();
    if (std::abs(trace.imag()) > tol::herm) {
        throw Error(Errc::NonRealTrace,
                    "Tr(Pρ) has imaginary part " + std::to_string(trace.imag()),
                    std::abs(trace.imag()));
    }
    const double value = trace.real();
    if (value < -tol_p || value > 1.0 + tol_p) {
        throw Error(Errc::InvalidDistribution,
                    "Born weight " + std::to_string(value) + " outside [0, 1]");
    }
    return std::clamp(value, 0.0, 1.0);
}

Distribution frame_distribution(const DensityMatrix& rho, const Matrix& basis_columns,
                                double tol_res) {
    if (basis_columns.rows() != rho.dim()) {
        throw Error(Errc::DimensionMismatch, "basis vectors live in a different space");
    }
    const Eigen::Index k = basis_columns.cols();
    const Matrix gram = basis_columns.adjoint() * basis_columns;
    const double dev = (gram - Matrix::Identity(k, k)).norm();
    if (dev > tol_res) {
        throw Error(Errc::NotOrthonormal, "frame deviation " + std::to_string(dev), dev);
    }

    std::vector<std::string> labels(k);
    std::vector<double> probs(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        labels[j] = std::to_string(j);
        const Cplx w = basis_columns.col(j).adjoint() * rho.matrix() * basis_columns.col(j);
        probs[j] = std::clamp(w.real(), 0.0, 1.0);
    }
    const bool complete = (k == rho.dim());
    return make_distribution(std::move(labels), std::move(probs), complete);
}

namespace {

// Orthonormality of the columns plus span agreement with the reference
// subspace, via the singular values of the cross Gram matrix (cosines of
// the principal angles).
void require_same_span(const Matrix& subspace, const Matrix& context, double tol_span,
                       std::size_t context_index) {
    if (context.rows() != subspace.rows() || context.cols() != subspace.cols()) {
        std::ostringstream os;
        os << "context " << context_index << " has shape " << context.rows() << "x"
           << context.cols() << ", subspace is " << subspace.rows() << "x"
           << subspace.cols();
        throw Error(Errc::ContextSpanMismatch, os.str());
    }
    const Matrix cross = subspace.adjoint() * context;
    Eigen::JacobiSVD<Matrix> svd(cross);
    const double min_cos = svd.singularValues().minCoeff();
    if (std::abs(min_cos - 1.0) > tol_span) {
        std::ostringstream os;
        os << "context " << context_index << " spans a different subspace, principal-angle"
           << " cosine " << min_cos;
        throw Error(Errc::ContextSpanMismatch, os.str(), std::abs(min_cos - 1.0));
    }
}

}  // namespace

MeasureReport check_noncontextuality(const DensityMatrix& rho, const Matrix& subspace_columns,
                                     const std::vector<Matrix>& contexts, double tolerance,
                                     double tol_span) {
    if (subspace_columns.rows() != rho.dim()) {
        throw Error(Errc::DimensionMismatch, "subspace lives in a different space");
    }
    const Eigen::Index k = subspace_columns.cols();
    const Matrix gram = subspace_columns.adjoint() * subspace_columns;
    const double gram_dev = (gram - Matrix::Identity(k, k)).norm();
    if (gram_dev > tol::res) {
        throw Error(Errc::NotOrthonormal,
                    "subspace basis deviation " + std::to_string(gram_dev), gram_dev);
    }

    MeasureReport report;
    report.subspace_label = "span(" + std::to_string(k) + "-dim)";
    report.tolerance = tolerance;
    for (std::size_t c = 0; c < contexts.size(); ++c) {
        require_same_span(subspace_columns, contexts[c], tol_span, c);
        const Distribution frame = frame_distribution(rho, contexts[c]);
        report.value_per_context.emplace_back("context" + std::to_string(c), frame.total());
    }
    double max_dev = 0.0;
    for (std::size_t i = 0; i < report.value_per_context.size(); ++i) {
        for (std::size_t j = i + 1; j < report.value_per_context.size(); ++j) {
            max_dev = std::max(max_dev, std::abs(report.value_per_context[i].second -
                                                 report.value_per_context[j].second));
        }
    }
    report.max_pairwise_deviation = max_dev;
    report.pass = max_dev <= tolerance;
    return report;
}

Distribution measure_under_context(const DensityMatrix& rho, const SumPartition& sp,
                                   const Channel& instrument, double tol_res) {
    if (instrument.dim() != sp.total_dim() || rho.dim() != sp.total_dim()) {
        throw Error(Errc::DimensionMismatch,
                    "state, partition and instrument dimensions disagree");
    }

    // Precondition: every block is an invariant subspace of the operation.
    const Eigen::Index n = sp.total_dim();
    for (std::size_t j = 0; j < sp.block_count(); ++j) {
        const Matrix pj = sp.block_projector(j).matrix();
        const Matrix complement = Matrix::Identity(n, n) - pj;
        for (const Matrix& k : instrument.kraus()) {
            const double leakage = (complement * k * pj).norm();
            if (leakage > tol_res) {
                std::ostringstream os;
                os << "instrument leaks out of block " << sp.blocks()[j].label
                   << ", leakage norm " << leakage;
                throw Error(Errc::NotBlockInvariant, os.str(), leakage);
            }
        }
    }

    // Non-selective post-instrument state.
    Matrix post = Matrix::Zero(n, n);
    for (const Matrix& k : instrument.kraus()) {
        post += k * rho.matrix() * k.adjoint();
    }

    std::vector<std::string> labels;
    std::vector<double> probs;
    labels.reserve(sp.block_count());
    probs.reserve(sp.block_count());
    for (std::size_t j = 0; j < sp.block_count(); ++j) {
        labels.push_back(sp.blocks()[j].label);
        const Cplx q = (sp.block_projector(j).matrix() * post).trace();
        probs.push_back(std::clamp(q.real(), 0.0, 1.0));
    }
    return make_distribution(std::move(labels), std::move(probs), true);
}

}  // namespace nsv
