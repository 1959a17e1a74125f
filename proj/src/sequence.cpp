#include "smf/sequence.hpp"

#include <cmath>

namespace smf {

double ComponentKind::distance(const Eigen::Ref<const Eigen::VectorXd>& a,
                               const Eigen::Ref<const Eigen::VectorXd>& b) const {
    if (a.size() != dim_ || b.size() != dim_)
        throw PreconditionError("component arity mismatch");
    if (dim_ == 1) return std::abs(a[0] - b[0]);
    if (p_ == 2.0) return (a - b).norm();
    if (p_ == 1.0) return (a - b).cwiseAbs().sum();
    return std::pow((a - b).cwiseAbs().array().pow(p_).sum(), 1.0 / p_);
}

SequenceSlice subsequence(const SequenceSlice& s, Index i, Index j) {
    if (i < 0 || i > j || j >= s.len())
        throw PreconditionError("subsequence indices out of bounds: [" + std::to_string(i) +
                                ":" + std::to_string(j) + "] of len " + std::to_string(s.len()));
    const Index root_offset = s.offset() + i;
    const Index len = j - i + 1;
    std::string id = s.root_id() + "[" + std::to_string(root_offset) + ":" +
                     std::to_string(root_offset + len - 1) + "]";
    return SequenceSlice(std::move(id), s.root_id(), root_offset, s.values().middleCols(i, len),
                         s.kind());
}

double component_distance(const ComponentKind& kind,
                          const Eigen::Ref<const Eigen::VectorXd>& a,
                          const Eigen::Ref<const Eigen::VectorXd>& b) {
    return kind.distance(a, b);
}

} // namespace smf
