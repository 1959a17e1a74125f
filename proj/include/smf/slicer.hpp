#pragma once

#include <cstddef>
#include <iterator>
#include <string>
#include <vector>

#include "smf/sequence.hpp"

namespace smf {

enum class SlicerKind { Sliding, Disjoint };

std::string to_string(SlicerKind kind);

/// Fixed-width windowing of a sequence.
struct WindowConfig {
    Index w = 1;
    SlicerKind kind = SlicerKind::Sliding;

    WindowConfig() = default;
    WindowConfig(Index width, SlicerKind k) : w(width), kind(k) {
        if (w < 1) throw PreconditionError("window width must be >= 1");
    }
};

/// Lazy view over the windows of a sequence. Windows are materialized one at
/// a time on iterator dereference; the view borrows the parent slice, which
/// must outlive it.
class WindowView {
public:
    WindowView(const SequenceSlice& parent, WindowConfig config);

    Index size() const { return count_; }
    Index stride() const { return config_.kind == SlicerKind::Sliding ? 1 : config_.w; }

    /// k-th window; offset k*stride within the parent, width w.
    SequenceSlice operator[](Index k) const;

    /// Length of the input left uncovered by a disjoint slicing (0 for sliding).
    Index dropped_tail() const;

    class iterator {
    public:
        using value_type = SequenceSlice;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::input_iterator_tag;

        iterator(const WindowView* view, Index k) : view_(view), k_(k) {}
        SequenceSlice operator*() const { return (*view_)[k_]; }
        iterator& operator++() { ++k_; return *this; }
        iterator operator++(int) { iterator t = *this; ++k_; return t; }
        friend bool operator==(const iterator& a, const iterator& b) { return a.k_ == b.k_; }
        friend bool operator!=(const iterator& a, const iterator& b) { return a.k_ != b.k_; }

    private:
        const WindowView* view_;
        Index k_;
    };

    iterator begin() const { return iterator(this, 0); }
    iterator end() const { return iterator(this, count_); }

private:
    const SequenceSlice* parent_;
    WindowConfig config_;
    Index count_;
};

/// Windows at every offset 0, 1, ..., len-w; exactly len-w+1 of them.
std::vector<SequenceSlice> sliding_slice(const SequenceSlice& s, Index w);

/// Non-overlapping windows at offsets 0, w, 2w, ...; floor(len/w) of them,
/// incomplete tail dropped.
std::vector<SequenceSlice> disjoint_slice(const SequenceSlice& s, Index w);

} // namespace smf
