#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "nsv/error.hpp"

namespace nsv {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Default tolerances for all invariant checks. Frobenius norm throughout.
namespace tol {
inline constexpr double herm = 1e-10;
inline constexpr double tr = 1e-10;
inline constexpr double idem = 1e-10;
inline constexpr double res = 1e-10;
inline constexpr double uni = 1e-10;
inline constexpr double psd = 1e-9;
inline constexpr double norm = 1e-10;
inline constexpr double p = 1e-10;
inline constexpr double cluster = 1e-8;  // eigenvalue degeneracy clustering
inline constexpr double span = 1e-8;     // principal-angle span equality
}  // namespace tol

// ‖M − M†‖_F
double hermiticity_deviation(const Matrix& m);

// ‖AB − BA‖_F; symmetric in its arguments.
double commutator_norm(const Matrix& a, const Matrix& b);

void require_finite(const Matrix& m);

// Validated quantum state: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
  public:
    static DensityMatrix make(const Matrix& m, double tol_herm = tol::herm,
                              double tol_tr = tol::tr, double tol_psd = tol::psd);

    const Matrix& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }

  private:
    explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

// |ψ⟩⟨ψ| from an amplitude vector. With normalize=false the vector must
// already have unit 2-norm.
DensityMatrix pure_state(const Vector& amplitudes, bool normalize = false,
                         double tol_norm = tol::norm);

// Validated orthogonal projector; rank is recovered from the trace.
class Projector {
  public:
    static Projector make(const Matrix& m, double tol_idem = tol::idem,
                          double tol_herm = tol::herm, double tol_tr = tol::tr);

    // Σ v v† over orthonormal columns; cheapest way to build one correctly.
    static Projector onto(const Matrix& orthonormal_columns);

    const Matrix& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }
    Eigen::Index rank() const noexcept { return rank_; }

  private:
    Projector(Matrix m, Eigen::Index rank) : m_(std::move(m)), rank_(rank) {}
    Matrix m_;
    Eigen::Index rank_;
};

struct EigenSpace {
    double value;
    Projector projector;
};

// Hermitian operator with its spectral decomposition. Eigenvalues closer
// than cluster_tol are merged into one degenerate eigenspace.
class Observable {
  public:
    static Observable decompose(const Matrix& hermitian,
                                double cluster_tol = tol::cluster,
                                double tol_herm = tol::herm);

    const Matrix& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }
    const std::vector<EigenSpace>& spectrum() const noexcept { return spectrum_; }

  private:
    Observable(Matrix m, std::vector<EigenSpace> spectrum)
        : m_(std::move(m)), spectrum_(std::move(spectrum)) {}
    Matrix m_;
    std::vector<EigenSpace> spectrum_;
};

class Unitary {
  public:
    static Unitary make(const Matrix& m, double tol_uni = tol::uni);

    const Matrix& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }

  private:
    explicit Unitary(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

class Prng;

// Haar-distributed unitary: QR of a complex Ginibre matrix with the phase
// of R's diagonal absorbed into Q, which makes the factorization unique.
Unitary haar_random_unitary(Eigen::Index dim, std::uint64_t seed);
Matrix haar_unitary(Eigen::Index dim, Prng& rng);

// Induced-measure random state: partial trace of a Haar-random pure state
// on a dim x rank composite.
DensityMatrix random_density(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed);
DensityMatrix random_density(Eigen::Index dim, Eigen::Index rank, Prng& rng);

}  // namespace nsv
