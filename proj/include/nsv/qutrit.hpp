#pragma once

#include <cstdint>
#include <functional>

#include "nsv/locality.hpp"
#include "nsv/measure.hpp"

namespace nsv {

// Routing experiment on a three-level system: a degenerate coarse test
// sends the particle to station A on the first outcome, to station B
// otherwise, where it is measured in one of two bases of the same
// two-dimensional subspace.
struct QutritScenario {
    Vector beta;  // 3 amplitudes, unit norm
    double a;
    double b;

    static QutritScenario make(const Vector& beta, double a, double b,
                               double tol_norm = tol::norm);
};

// Y1 = {|1⟩, |2⟩}; Y2 = {|+⟩, |−⟩} with |±⟩ = (|1⟩ ± |2⟩)/√2.
enum class ContextChoice { Y1, Y2 };

Matrix context_basis(ContextChoice ctx);  // 3x2 basis columns

// a|0⟩⟨0| + b(|1⟩⟨1| + |2⟩⟨2|); the coarse test must be degenerate (a ≠ b).
Observable build_x(double a, double b);

struct RoutingResult {
    double alice_prob;             // Prob(first outcome) = |β₀|²
    Distribution bob_conditional;  // renormalized over the context outcomes
};

// Projective update onto the b-eigenspace, then Born weights in the chosen
// context. Errors with BobUnreachable when the particle never leaves A.
RoutingResult run_routing(const QutritScenario& sc, ContextChoice ctx, double tol_p = tol::p);

// Measure assigned to the span{|1⟩,|2⟩} subspace when resolved in a given
// orthonormal basis of it. The default is the Born form; tests may inject
// context-dependent doubles to show the check catches them.
using SubspaceMeasureFn = std::function<double(const DensityMatrix& rho, const Matrix& context)>;

// Compares Alice's detection probability computed through both contexts,
// each as 1 − (subspace measure resolved in that context).
SignalReport check_signal_free(const QutritScenario& sc, double tolerance);
SignalReport check_signal_free(const QutritScenario& sc, double tolerance,
                               const SubspaceMeasureFn& measure);

struct NoDisturbanceReport {
    double max_x_commutator = 0.0;      // (i) max ‖[X, Π]‖ over both completions
    double max_cross_commutator = 0.0;  // (ii) max ‖[Π₁, Π₂]‖ across completions
    double max_marginal_deviation = 0.0;  // (iii) X-marginal spread over random states
    double tolerance = 0.0;
    bool commuting_pass = false;       // (i) within tolerance
    bool noncommuting_contexts = false;  // (ii) > 0.1
    bool marginals_pass = false;       // (iii) within tolerance
    bool pass = false;
};

// The completed contexts are Y_j⁺ = {|0⟩} ∪ Y_j. Part (iii) draws `trials`
// random states from `seed`.
NoDisturbanceReport check_nodisturbance(double a, double b, double tolerance,
                                        int trials = 100, std::uint64_t seed = 1);

// Same report for an arbitrary observable in place of the degenerate X;
// lets tests plant a non-degenerate one and watch part (i) fail.
NoDisturbanceReport nodisturbance_report(const Matrix& x, double tolerance, int trials,
                                         std::uint64_t seed);

// The scenario's natural sum split {|0⟩} ⊕ span{|1⟩,|2⟩}, for running the
// same physics through the generic block-measure path.
SumPartition qutrit_sum_partition();

}  // namespace nsv
