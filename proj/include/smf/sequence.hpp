#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smf/error.hpp"

namespace smf {

using Index = Eigen::Index;

/// Describes the component type of a sequence: scalars or fixed-dimension
/// vectors, together with the component distance d(a, b). Sequence distances
/// are written against this abstraction only, so they stay independent of the
/// concrete component type.
class ComponentKind {
public:
    static ComponentKind scalar() { return ComponentKind(1, 2.0); }

    static ComponentKind vector(Index dim, double p = 2.0) {
        if (dim < 1) throw PreconditionError("component dimension must be >= 1");
        if (p < 1.0) throw PreconditionError("component Lp order must be >= 1");
        return ComponentKind(dim, p);
    }

    Index dim() const { return dim_; }
    double p() const { return p_; }
    bool is_scalar() const { return dim_ == 1; }

    /// d(a, b): |a - b| for scalars, the Lp norm of a - b for vector kinds.
    double distance(const Eigen::Ref<const Eigen::VectorXd>& a,
                    const Eigen::Ref<const Eigen::VectorXd>& b) const;

    friend bool operator==(const ComponentKind& a, const ComponentKind& b) {
        return a.dim_ == b.dim_ && (a.dim_ == 1 || a.p_ == b.p_);
    }
    friend bool operator!=(const ComponentKind& a, const ComponentKind& b) { return !(a == b); }

private:
    ComponentKind(Index dim, double p) : dim_(dim), p_(p) {}
    Index dim_;
    double p_;
};

/// A sequence or a slice of one. Components are the columns of `values`
/// (a dim x len matrix, 1 x len for scalar sequences). A slice remembers the
/// id of its root sequence (`pid`) and its offset within that root; offsets
/// of nested slices compose additively, so `pid` always names the root.
/// Instances are immutable after construction and safe to share across
/// threads.
class SequenceSlice {
public:
    /// Root sequence (no parent).
    SequenceSlice(std::string id, Eigen::MatrixXd values,
                  ComponentKind kind = ComponentKind::scalar())
        : SequenceSlice(std::move(id), std::nullopt, 0, std::move(values), kind) {}

    SequenceSlice(std::string id, std::optional<std::string> pid, Index offset,
                  Eigen::MatrixXd values, ComponentKind kind = ComponentKind::scalar())
        : id_(std::move(id)),
          pid_(std::move(pid)),
          offset_(offset),
          values_(std::move(values)),
          kind_(kind) {
        if (offset_ < 0) throw PreconditionError("slice offset must be >= 0");
        if (values_.rows() != kind_.dim())
            throw PreconditionError("component arity does not match values rows");
    }

    /// Convenience for scalar sequences.
    static SequenceSlice scalars(std::string id, const std::vector<double>& v) {
        Eigen::MatrixXd m(1, static_cast<Index>(v.size()));
        for (Index i = 0; i < m.cols(); ++i) m(0, i) = v[static_cast<std::size_t>(i)];
        return SequenceSlice(std::move(id), std::move(m));
    }

    const std::string& id() const { return id_; }
    const std::optional<std::string>& pid() const { return pid_; }
    Index offset() const { return offset_; }
    Index len() const { return values_.cols(); }
    const Eigen::MatrixXd& values() const { return values_; }
    const ComponentKind& kind() const { return kind_; }

    /// The id of the root sequence this slice belongs to (itself when root).
    const std::string& root_id() const { return pid_ ? *pid_ : id_; }

    /// i-th component as a column view.
    Eigen::MatrixXd::ConstColXpr component(Index i) const { return values_.col(i); }

    /// Scalar view of the values; only meaningful for scalar kinds.
    Eigen::MatrixXd::ConstRowXpr row() const { return values_.row(0); }

private:
    std::string id_;
    std::optional<std::string> pid_;
    Index offset_;
    Eigen::MatrixXd values_;
    ComponentKind kind_;
};

/// S[i:j], indices inclusive. The result is rooted at S's root sequence:
/// its pid names the root and its offset is root-relative.
SequenceSlice subsequence(const SequenceSlice& s, Index i, Index j);

/// d(a, b) under `kind`, checking component arity.
double component_distance(const ComponentKind& kind,
                          const Eigen::Ref<const Eigen::VectorXd>& a,
                          const Eigen::Ref<const Eigen::VectorXd>& b);

} // namespace smf
