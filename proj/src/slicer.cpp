#include "smf/slicer.hpp"

namespace smf {

std::string to_string(SlicerKind kind) {
    return kind == SlicerKind::Sliding ? "sliding" : "disjoint";
}

WindowView::WindowView(const SequenceSlice& parent, WindowConfig config)
    : parent_(&parent), config_(config) {
    if (parent.len() < config_.w)
        throw PreconditionError("sequence too short: len " + std::to_string(parent.len()) +
                                " < window width " + std::to_string(config_.w));
    count_ = config_.kind == SlicerKind::Sliding ? parent.len() - config_.w + 1
                                                 : parent.len() / config_.w;
}

SequenceSlice WindowView::operator[](Index k) const {
    if (k < 0 || k >= count_) throw PreconditionError("window index out of range");
    const Index i = k * stride();
    return subsequence(*parent_, i, i + config_.w - 1);
}

Index WindowView::dropped_tail() const {
    return config_.kind == SlicerKind::Sliding ? 0 : parent_->len() % config_.w;
}

std::vector<SequenceSlice> sliding_slice(const SequenceSlice& s, Index w) {
    WindowView view(s, WindowConfig(w, SlicerKind::Sliding));
    return std::vector<SequenceSlice>(view.begin(), view.end());
}

std::vector<SequenceSlice> disjoint_slice(const SequenceSlice& s, Index w) {
    WindowView view(s, WindowConfig(w, SlicerKind::Disjoint));
    return std::vector<SequenceSlice>(view.begin(), view.end());
}

} // namespace smf
