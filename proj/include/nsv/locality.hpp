#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nsv/instruments.hpp"
#include "nsv/measure.hpp"
#include "nsv/partitions.hpp"

namespace nsv {

DensityMatrix apply_channel(const DensityMatrix& rho, const Channel& ch);

// Reduced state on one sector; trace is preserved.
DensityMatrix partial_trace(const DensityMatrix& rho, const ProductPartition& pp,
                            std::size_t keep);

// P(a, k) = Tr[(M_a ⊗ N_k) ρ (M_a ⊗ N_k)†] over all outcome pairs.
struct JointTable {
    std::vector<std::string> row_labels;  // first instrument's outcomes
    std::vector<std::string> col_labels;  // second instrument's outcomes
    Eigen::MatrixXd probabilities;

    std::vector<double> row_marginal() const;  // sums over columns
    std::vector<double> col_marginal() const;
};

JointTable joint_distribution(const DensityMatrix& rho, const LocalInstrument& instr_a,
                              const LocalInstrument& instr_b, const ProductPartition& pp);

// Bob's block distribution after Alice's instrument: Prob_B(j|ℰ) summed
// over Alice's outcomes and the fine B outcomes belonging to block j.
Distribution bob_marginal(const DensityMatrix& rho, const LocalInstrument& instr_a,
                          const SumPartition& sp_b, const ProductPartition& pp);

// Per-block comparison of Bob's marginals under two choices of Alice's
// instrument. measures[j] holds the (μ(K_j|ℰ), μ(K_j|ℰ′)) pair the
// deviation is computed from.
struct SignalReport {
    std::vector<std::string> block_labels;
    std::vector<std::pair<double, double>> measures;
    std::vector<double> deviations;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::pair<std::string, std::string> contexts;
};

SignalReport check_nosignaling(const DensityMatrix& rho, const LocalInstrument& instr_a,
                               const LocalInstrument& instr_a_prime, const SumPartition& sp_b,
                               const ProductPartition& pp, double tolerance);

struct SearchOptions {
    // Test hook: admit non-trace-preserving instrument pairs, which breaks
    // the physics and lets the search demonstrate it can find violations.
    bool allow_nonphysical = false;
};

struct SearchResult {
    double best_deviation = 0.0;
    LocalInstrument best_instrument;
    LocalInstrument best_instrument_prime;
    std::uint64_t evaluations = 0;
};

// Randomized falsification attempt: random restarts over unitary-then-
// projective instruments and random POVMs, each refined by coordinate
// perturbation with step halving. The candidate stream depends only on the
// seed, so a larger budget extends (never reshuffles) a smaller one.
SearchResult adversarial_signal_search(const DensityMatrix& rho, const ProductPartition& pp,
                                       const SumPartition& sp_b, std::uint64_t budget,
                                       std::uint64_t seed, const SearchOptions& options = {});

}  // namespace nsv
