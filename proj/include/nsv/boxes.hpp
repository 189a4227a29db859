#pragma once

#include <vector>

#include "nsv/locality.hpp"

namespace nsv {

// Conditional outcome table p(a,b|x,y) for a two-party device with finite
// input and output alphabets.
class Box {
  public:
    static Box make(int x_count, int y_count, int a_count, int b_count,
                    std::vector<double> table, double tol_p = tol::p);

    int x_count() const noexcept { return nx_; }
    int y_count() const noexcept { return ny_; }
    int a_count() const noexcept { return na_; }
    int b_count() const noexcept { return nb_; }

    double at(int x, int y, int a, int b) const;
    const std::vector<double>& table() const noexcept { return table_; }

  private:
    Box(int nx, int ny, int na, int nb, std::vector<double> table);
    int nx_, ny_, na_, nb_;
    std::vector<double> table_;  // indexed [x][y][a][b], b fastest
};

struct BoxReport {
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Marginal independence: Σ_b p(a,b|x,y) must not depend on y, and
// Σ_a p(a,b|x,y) must not depend on x.
BoxReport check_box_nosignaling(const Box& box, double tolerance);

// S = E00 + E01 + E10 − E11 with E_xy = Σ (−1)^(a⊕b) p(a,b|x,y).
// Requires binary inputs and outputs.
double chsh_value(const Box& box);

// The extremal non-signaling table: p = 1/2 when a⊕b = x·y, else 0.
Box pr_box();

// Quantum realization: one projective binary instrument per input on each
// side, tabulated through the joint distribution.
Box box_from_quantum(const DensityMatrix& rho, const std::vector<LocalInstrument>& a_per_x,
                     const std::vector<LocalInstrument>& b_per_y, const ProductPartition& pp);

}  // namespace nsv
