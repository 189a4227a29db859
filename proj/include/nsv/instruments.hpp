#pragma once

#include <string>
#include <vector>

#include "nsv/hilbert.hpp"
#include "nsv/partitions.hpp"

namespace nsv {

// Trace-preserving operation in Kraus form: Σ_k K†K = I.
class Channel {
  public:
    static Channel make(std::vector<Matrix> kraus_ops, double tol_res = tol::res);
    static Channel identity(Eigen::Index dim);
    static Channel unitary(const Matrix& u, double tol_uni = tol::uni);

    // Test hook: accepts an arbitrary Kraus family without the
    // trace-preservation check. Used to plant physics violations.
    static Channel unchecked(std::vector<Matrix> kraus_ops);

    Eigen::Index dim() const noexcept { return dim_; }
    const std::vector<Matrix>& kraus() const noexcept { return kraus_; }

  private:
    Channel(std::vector<Matrix> kraus, Eigen::Index dim)
        : kraus_(std::move(kraus)), dim_(dim) {}
    std::vector<Matrix> kraus_;
    Eigen::Index dim_;
};

enum class Sector { A, B };

// Outcome-labeled measurement on one product sector. One Kraus element per
// outcome; Σ_a M†M = I. Projective mode additionally requires the elements
// to be mutually orthogonal projectors.
class LocalInstrument {
  public:
    static LocalInstrument projective(Sector sector, std::vector<Matrix> projectors,
                                      std::vector<std::string> labels = {},
                                      double tol_res = tol::res);
    static LocalInstrument kraus(Sector sector, std::vector<Matrix> elements,
                                 std::vector<std::string> labels = {},
                                 double tol_res = tol::res);

    // Trivial instrument: single identity outcome (no operation).
    static LocalInstrument trivial(Sector sector, Eigen::Index dim);

    // Test hook, bypasses the trace-preservation check.
    static LocalInstrument unchecked(Sector sector, std::vector<Matrix> elements,
                                     std::vector<std::string> labels = {});

    Sector sector() const noexcept { return sector_; }
    Eigen::Index dim() const noexcept { return dim_; }
    bool projective_mode() const noexcept { return projective_; }
    const std::vector<Matrix>& elements() const noexcept { return elements_; }
    const std::vector<std::string>& outcome_labels() const noexcept { return labels_; }
    std::size_t outcome_count() const noexcept { return elements_.size(); }

    // Forgets outcomes: the non-selective channel Σ_a M ρ M†.
    Channel as_channel() const;

  private:
    LocalInstrument(Sector sector, std::vector<Matrix> elements,
                    std::vector<std::string> labels, bool projective);
    Sector sector_;
    std::vector<Matrix> elements_;
    std::vector<std::string> labels_;
    bool projective_;
    Eigen::Index dim_;
};

// ℰ_A ⊗ I_B (or I_A ⊗ ℰ_B): every Kraus element embedded on its sector.
Channel embed_instrument(const LocalInstrument& instr, const ProductPartition& pp);
Channel embed_channel(const Channel& ch, const ProductPartition& pp, std::size_t sector);

}  // namespace nsv
