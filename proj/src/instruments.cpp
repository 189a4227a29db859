#include "nsv/instruments.hpp"

#include <sstream>

namespace nsv {

namespace {

double completeness_deviation(const std::vector<Matrix>& elements, Eigen::Index dim) {
    Matrix sum = Matrix::Zero(dim, dim);
    for (const Matrix& m : elements) {
        sum += m.adjoint() * m;
    }
    return (sum - Matrix::Identity(dim, dim)).norm();
}

std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = std::to_string(i);
    }
    return labels;
}

void check_element_shapes(const std::vector<Matrix>& elements) {
    if (elements.empty()) {
        throw Error(Errc::EmptyPartition, "an instrument needs at least one element");
    }
    const Eigen::Index dim = elements.front().rows();
    for (const Matrix& m : elements) {
        require_finite(m);
        if (m.rows() != dim || m.cols() != dim) {
            throw Error(Errc::DimensionMismatch, "instrument elements differ in dimension");
        }
    }
}

}  // namespace

Channel Channel::make(std::vector<Matrix> kraus_ops, double tol_res) {
    check_element_shapes(kraus_ops);
    const Eigen::Index dim = kraus_ops.front().rows();
    const double dev = completeness_deviation(kraus_ops, dim);
    if (dev > tol_res) {
        throw Error(Errc::NotTracePreserving,
                    "Kraus completeness deviation " + std::to_string(dev), dev);
    }
    return Channel(std::move(kraus_ops), dim);
}

Channel Channel::identity(Eigen::Index dim) {
    return Channel({Matrix::Identity(dim, dim)}, dim);
}

Channel Channel::unitary(const Matrix& u, double tol_uni) {
    Unitary checked = Unitary::make(u, tol_uni);
    const Eigen::Index dim = checked.dim();
    return Channel({checked.matrix()}, dim);
}

Channel Channel::unchecked(std::vector<Matrix> kraus_ops) {
    check_element_shapes(kraus_ops);
    const Eigen::Index dim = kraus_ops.front().rows();
    return Channel(std::move(kraus_ops), dim);
}

LocalInstrument::LocalInstrument(Sector sector, std::vector<Matrix> elements,
                                 std::vector<std::string> labels, bool projective)
    : sector_(sector),
      elements_(std::move(elements)),
      labels_(std::move(labels)),
      projective_(projective),
      dim_(elements_.front().rows()) {
    if (labels_.empty()) {
        labels_ = default_labels(elements_.size());
    }
    if (labels_.size() != elements_.size()) {
        throw Error(Errc::DimensionMismatch, "one label per instrument element required");
    }
}

LocalInstrument LocalInstrument::projective(Sector sector, std::vector<Matrix> projectors,
                                            std::vector<std::string> labels, double tol_res) {
    check_element_shapes(projectors);
    const Eigen::Index dim = projectors.front().rows();
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        Projector::make(projectors[i]);  // Hermitian + idempotent
        for (std::size_t j = i + 1; j < projectors.size(); ++j) {
            const double cross = (projectors[i] * projectors[j]).norm();
            if (cross > tol_res) {
                std::ostringstream os;
                os << "projectors " << i << " and " << j << " are not orthogonal, overlap "
                   << cross;
                throw Error(Errc::NotOrthogonal, os.str(), cross);
            }
        }
    }
    const double dev = completeness_deviation(projectors, dim);
    if (dev > tol_res) {
        throw Error(Errc::NotTracePreserving,
                    "projective family does not resolve the identity, deviation " +
                        std::to_string(dev),
                    dev);
    }
    return LocalInstrument(sector, std::move(projectors), std::move(labels), true);
}

LocalInstrument LocalInstrument::kraus(Sector sector, std::vector<Matrix> elements,
                                       std::vector<std::string> labels, double tol_res) {
    check_element_shapes(elements);
    const Eigen::Index dim = elements.front().rows();
    const double dev = completeness_deviation(elements, dim);
    if (dev > tol_res) {
        throw Error(Errc::NotTracePreserving,
                    "instrument completeness deviation " + std::to_string(dev), dev);
    }
    return LocalInstrument(sector, std::move(elements), std::move(labels), false);
}

LocalInstrument LocalInstrument::trivial(Sector sector, Eigen::Index dim) {
    return LocalInstrument(sector, {Matrix::Identity(dim, dim)}, {"0"}, false);
}

LocalInstrument LocalInstrument::unchecked(Sector sector, std::vector<Matrix> elements,
                                           std::vector<std::string> labels) {
    check_element_shapes(elements);
    return LocalInstrument(sector, std::move(elements), std::move(labels), false);
}

Channel LocalInstrument::as_channel() const {
    return Channel::unchecked(elements_);
}

Channel embed_instrument(const LocalInstrument& instr, const ProductPartition& pp) {
    const std::size_t sector = instr.sector() == Sector::A ? 0 : 1;
    return embed_channel(instr.as_channel(), pp, sector);
}

Channel embed_channel(const Channel& ch, const ProductPartition& pp, std::size_t sector) {
    std::vector<Matrix> embedded;
    embedded.reserve(ch.kraus().size());
    for (const Matrix& k : ch.kraus()) {
        embedded.push_back(embed_local(k, pp, sector));
    }
    return Channel::unchecked(std::move(embedded));
}

}  // namespace nsv
