#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nsv/hilbert.hpp"
#include "nsv/instruments.hpp"
#include "nsv/partitions.hpp"

namespace nsv {

// Normalized outcome table. Sub-normalized conditional tables are allowed
// and flagged via complete=false.
struct Distribution {
    std::vector<std::string> labels;
    std::vector<double> probabilities;
    bool complete = true;

    double total() const;
};

// Validates ranges, clamps float noise in [-tol_p, 0) to 0, and checks the
// sum when the table claims to be complete.
Distribution make_distribution(std::vector<std::string> labels, std::vector<double> probabilities,
                               bool complete = true, double tol_p = tol::p);

// Born weight Tr(Pρ) of a subspace projector.
double born_measure(const DensityMatrix& rho, const Projector& p, double tol_p = tol::p);

// Per-vector weights ⟨e_j|ρ|e_j⟩ over an orthonormal family; complete iff
// the family spans the whole space.
Distribution frame_distribution(const DensityMatrix& rho, const Matrix& basis_columns,
                                double tol_res = tol::res);

// Outcome of resolving one subspace in several bases and comparing the
// summed weights.
struct MeasureReport {
    std::string subspace_label;
    std::vector<std::pair<std::string, double>> value_per_context;
    double max_pairwise_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Basis-independence of the subspace measure: every context must be an
// orthonormal basis of the same subspace (checked by principal angles).
MeasureReport check_noncontextuality(const DensityMatrix& rho, const Matrix& subspace_columns,
                                     const std::vector<Matrix>& contexts, double tolerance,
                                     double tol_span = tol::span);

// Block measures q_j = Tr(P_j ρ′) after a block-preserving operation; the
// invariance of every block under the channel is a checked precondition.
Distribution measure_under_context(const DensityMatrix& rho, const SumPartition& sp,
                                   const Channel& instrument, double tol_res = tol::res);

}  // namespace nsv
