#include "nsv/boxes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nsv {

Box::Box(int nx, int ny, int na, int nb, std::vector<double> table)
    : nx_(nx), ny_(ny), na_(na), nb_(nb), table_(std::move(table)) {}

Box Box::make(int x_count, int y_count, int a_count, int b_count, std::vector<double> table,
              double tol_p) {
    if (x_count < 1 || y_count < 1 || a_count < 1 || b_count < 1) {
        throw Error(Errc::InvalidBox, "alphabet sizes must be positive");
    }
    const auto expected = static_cast<std::size_t>(x_count) * y_count * a_count * b_count;
    if (table.size() != expected) {
        std::ostringstream os;
        os << "table has " << table.size() << " entries, expected " << expected;
        throw Error(Errc::InvalidBox, os.str());
    }
    for (double& p : table) {
        if (!std::isfinite(p) || p < -tol_p) {
            throw Error(Errc::InvalidBox, "negative entry " + std::to_string(p));
        }
        p = std::max(p, 0.0);
    }
    Box box(x_count, y_count, a_count, b_count, std::move(table));
    for (int x = 0; x < x_count; ++x) {
        for (int y = 0; y < y_count; ++y) {
            double sum = 0.0;
            for (int a = 0; a < a_count; ++a) {
                for (int b = 0; b < b_count; ++b) {
                    sum += box.at(x, y, a, b);
                }
            }
            if (std::abs(sum - 1.0) > tol_p) {
                std::ostringstream os;
                os << "p(.,.|" << x << "," << y << ") sums to " << sum;
                throw Error(Errc::InvalidBox, os.str(), std::abs(sum - 1.0));
            }
        }
    }
    return box;
}

double Box::at(int x, int y, int a, int b) const {
    const auto idx = ((static_cast<std::size_t>(x) * ny_ + y) * na_ + a) * nb_ + b;
    return table_[idx];
}

BoxReport check_box_nosignaling(const Box& box, double tolerance) {
    double max_dev = 0.0;

    // Alice's marginal must not depend on y.
    for (int x = 0; x < box.x_count(); ++x) {
        for (int a = 0; a < box.a_count(); ++a) {
            double reference = 0.0;
            for (int y = 0; y < box.y_count(); ++y) {
                double marginal = 0.0;
                for (int b = 0; b < box.b_count(); ++b) {
                    marginal += box.at(x, y, a, b);
                }
                if (y == 0) {
                    reference = marginal;
                } else {
                    max_dev = std::max(max_dev, std::abs(marginal - reference));
                }
            }
        }
    }
    // Bob's marginal must not depend on x.
    for (int y = 0; y < box.y_count(); ++y) {
        for (int b = 0; b < box.b_count(); ++b) {
            double reference = 0.0;
            for (int x = 0; x < box.x_count(); ++x) {
                double marginal = 0.0;
                for (int a = 0; a < box.a_count(); ++a) {
                    marginal += box.at(x, y, a, b);
                }
                if (x == 0) {
                    reference = marginal;
                } else {
                    max_dev = std::max(max_dev, std::abs(marginal - reference));
                }
            }
        }
    }
    return BoxReport{max_dev, tolerance, max_dev <= tolerance};
}

double chsh_value(const Box& box) {
    if (box.x_count() != 2 || box.y_count() != 2 || box.a_count() != 2 || box.b_count() != 2) {
        throw Error(Errc::WrongArity, "CHSH needs binary inputs and outputs");
    }
    double correlators[2][2];
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            double e = 0.0;
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    e += ((a ^ b) ? -1.0 : 1.0) * box.at(x, y, a, b);
                }
            }
            correlators[x][y] = e;
        }
    }
    return correlators[0][0] + correlators[0][1] + correlators[1][0] - correlators[1][1];
}

Box pr_box() {
    std::vector<double> filled(16, 0.0);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    if ((a ^ b) == (x & y)) {
                        const auto idx =
                            ((static_cast<std::size_t>(x) * 2 + y) * 2 + a) * 2 + b;
                        filled[idx] = 0.5;
                    }
                }
            }
        }
    }
    return Box::make(2, 2, 2, 2, std::move(filled), 0.0);
}

Box box_from_quantum(const DensityMatrix& rho, const std::vector<LocalInstrument>& a_per_x,
                     const std::vector<LocalInstrument>& b_per_y,
                     const ProductPartition& pp) {
    if (a_per_x.empty() || b_per_y.empty()) {
        throw Error(Errc::InvalidBox, "at least one instrument per side required");
    }
    const auto na = a_per_x.front().outcome_count();
    const auto nb = b_per_y.front().outcome_count();
    for (const LocalInstrument& instr : a_per_x) {
        if (!instr.projective_mode() || instr.outcome_count() != na) {
            throw Error(Errc::WrongArity,
                        "projective instruments with a fixed outcome count required");
        }
    }
    for (const LocalInstrument& instr : b_per_y) {
        if (!instr.projective_mode() || instr.outcome_count() != nb) {
            throw Error(Errc::WrongArity,
                        "projective instruments with a fixed outcome count required");
        }
    }

    std::vector<double> table;
    table.reserve(a_per_x.size() * b_per_y.size() * na * nb);
    for (const LocalInstrument& instr_a : a_per_x) {
        for (const LocalInstrument& instr_b : b_per_y) {
            const JointTable joint = joint_distribution(rho, instr_a, instr_b, pp);
            for (std::size_t a = 0; a < na; ++a) {
                for (std::size_t b = 0; b < nb; ++b) {
                    table.push_back(joint.probabilities(static_cast<Eigen::Index>(a),
                                                        static_cast<Eigen::Index>(b)));
                }
            }
        }
    }
    return Box::make(static_cast<int>(a_per_x.size()), static_cast<int>(b_per_y.size()),
                     static_cast<int>(na), static_cast<int>(nb), std::move(table));
}

}  // namespace nsv
