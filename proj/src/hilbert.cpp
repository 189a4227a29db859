#include "nsv/hilbert.hpp"

#include <cmath>
#include <sstream>

#include "nsv/rng.hpp"

namespace nsv {

namespace {

void require_square(const Matrix& m) {
    if (m.rows() != m.cols()) {
        std::ostringstream os;
        os << "expected a square matrix, got " << m.rows() << "x" << m.cols();
        throw Error(Errc::DimensionMismatch, os.str());
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

double hermiticity_deviation(const Matrix& m) {
    return (m - m.adjoint()).norm();
}

double commutator_norm(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(Errc::DimensionMismatch, "commutator of differently sized matrices");
    }
    return (a * b - b * a).norm();
}

void require_finite(const Matrix& m) {
    if (!m.allFinite()) {
        throw Error(Errc::NotFinite, "matrix has NaN or Inf entries");
    }
}

DensityMatrix DensityMatrix::make(const Matrix& m, double tol_herm, double tol_tr,
                                  double tol_psd) {
    require_finite(m);
    require_square(m);

    // Collect every violated invariant so a doubly-bad input names both.
    std::vector<std::pair<Errc, std::string>> violations;

    const double herm_dev = hermiticity_deviation(m);
    if (herm_dev > tol_herm) {
        violations.emplace_back(Errc::NotHermitian,
                                "Hermiticity deviation " + fmt(herm_dev));
    }
    const double tr_dev = std::abs(m.trace() - Cplx(1.0, 0.0));
    if (tr_dev > tol_tr) {
        violations.emplace_back(Errc::NotUnitTrace, "trace deviation " + fmt(tr_dev));
    }
    if (herm_dev <= tol_herm) {
        Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
        const double min_eig = es.eigenvalues().minCoeff();
        if (min_eig < -tol_psd) {
            violations.emplace_back(Errc::NotPositive,
                                    "minimum eigenvalue " + fmt(min_eig));
        }
    }

    if (!violations.empty()) {
        std::string msg;
        for (std::size_t i = 1; i < violations.size(); ++i) {
            msg += std::string("; also ") + errc_name(violations[i].first) + ": " +
                   violations[i].second;
        }
        throw Error(violations.front().first, violations.front().second + msg);
    }
    return DensityMatrix(m);
}

DensityMatrix pure_state(const Vector& amplitudes, bool normalize, double tol_norm) {
    if (!amplitudes.allFinite()) {
        throw Error(Errc::NotFinite, "amplitude vector has NaN or Inf entries");
    }
    const double nrm = amplitudes.norm();
    Vector psi = amplitudes;
    if (normalize) {
        if (nrm == 0.0) {
            throw Error(Errc::NotNormalized, "cannot normalize the zero vector");
        }
        psi /= nrm;
    } else if (std::abs(nrm - 1.0) > tol_norm) {
        throw Error(Errc::NotNormalized, "vector norm is " + fmt(nrm), std::abs(nrm - 1.0));
    }
    return DensityMatrix::make(psi * psi.adjoint());
}

Projector Projector::make(const Matrix& m, double tol_idem, double tol_herm, double tol_tr) {
    require_finite(m);
    require_square(m);
    const double herm_dev = hermiticity_deviation(m);
    if (herm_dev > tol_herm) {
        throw Error(Errc::NotHermitian, "projector Hermiticity deviation " + fmt(herm_dev),
                    herm_dev);
    }
    const double idem_dev = (m * m - m).norm();
    if (idem_dev > tol_idem) {
        throw Error(Errc::NotIdempotent, "idempotency deviation " + fmt(idem_dev), idem_dev);
    }
    const double trace = m.trace().real();
    const auto rank = static_cast<Eigen::Index>(std::llround(trace));
    if (std::abs(trace - static_cast<double>(rank)) > tol_tr) {
        throw Error(Errc::NotIdempotent,
                    "projector trace " + fmt(trace) + " is not an integer rank");
    }
    return Projector(m, rank);
}

Projector Projector::onto(const Matrix& orthonormal_columns) {
    const Matrix p = orthonormal_columns * orthonormal_columns.adjoint();
    return Projector::make(p);
}

Observable Observable::decompose(const Matrix& hermitian, double cluster_tol,
                                 double tol_herm) {
    require_finite(hermitian);
    require_square(hermitian);
    const double herm_dev = hermiticity_deviation(hermitian);
    if (herm_dev > tol_herm) {
        throw Error(Errc::NotHermitian, "Hermiticity deviation " + fmt(herm_dev), herm_dev);
    }

    Eigen::SelfAdjointEigenSolver<Matrix> es((hermitian + hermitian.adjoint()) / 2.0);
    const auto& values = es.eigenvalues();   // ascending
    const auto& vectors = es.eigenvectors();

    // Merge eigenvalues separated by less than cluster_tol; each cluster
    // becomes one eigenspace whose rank is the multiplicity.
    std::vector<EigenSpace> spectrum;
    Eigen::Index begin = 0;
    for (Eigen::Index i = 1; i <= values.size(); ++i) {
        if (i == values.size() || values(i) - values(i - 1) >= cluster_tol) {
            const Eigen::Index count = i - begin;
            const Matrix basis = vectors.middleCols(begin, count);
            const double value = values.segment(begin, count).mean();
            spectrum.push_back({value, Projector::onto(basis)});
            begin = i;
        }
    }
    return Observable(hermitian, std::move(spectrum));
}

Unitary Unitary::make(const Matrix& m, double tol_uni) {
    require_finite(m);
    require_square(m);
    const Matrix gram = m.adjoint() * m;
    const double dev = (gram - Matrix::Identity(m.rows(), m.cols())).norm();
    if (dev > tol_uni) {
        throw Error(Errc::NotUnitary, "unitarity deviation " + fmt(dev), dev);
    }
    return Unitary(m);
}

Matrix haar_unitary(Eigen::Index dim, Prng& rng) {
    if (dim < 1) {
        throw Error(Errc::DimensionMismatch, "unitary dimension must be at least 1");
    }
    const Matrix g = rng.ginibre(dim, dim);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Multiplying each column by the phase of the matching R diagonal
    // makes QR unique and the result Haar-distributed.
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Cplx d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= (mag == 0.0) ? Cplx(1.0, 0.0) : d / mag;
    }
    return q;
}

Unitary haar_random_unitary(Eigen::Index dim, std::uint64_t seed) {
    Prng rng(seed);
    return Unitary::make(haar_unitary(dim, rng));
}

DensityMatrix random_density(Eigen::Index dim, Eigen::Index rank, Prng& rng) {
    if (rank < 1 || rank > dim) {
        std::ostringstream os;
        os << "rank " << rank << " outside [1, " << dim << "]";
        throw Error(Errc::RankOutOfRange, os.str());
    }
    // Haar-random pure state on a dim x rank composite, environment traced
    // out: with |ψ⟩ reshaped to M, the reduced state is M M†.
    Matrix m = rng.ginibre(dim, rank);
    m /= m.norm();
    return DensityMatrix::make(m * m.adjoint());
}

DensityMatrix random_density(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed) {
    Prng rng(seed);
    return random_density(dim, rank, rng);
}

}  // namespace nsv
