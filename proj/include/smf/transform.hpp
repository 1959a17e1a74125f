#pragma once

#include <string>

#include "smf/sequence.hpp"

namespace smf {

enum class TransformKind { Identity, Dft, Paa };

std::string to_string(TransformKind kind);

/// Window transform reducing dimensionality while keeping L2 on the outputs
/// a lower bound of L2 on the inputs.
struct TransformSpec {
    TransformKind kind = TransformKind::Identity;
    Index out_size = 1; // retained DFT coefficients, or PAA segment count

    static TransformSpec identity() { return {TransformKind::Identity, 1}; }
    static TransformSpec dft(Index k) { return {TransformKind::Dft, k}; }
    static TransformSpec paa(Index m) { return {TransformKind::Paa, m}; }

    /// Number of values emitted for a window of width w
    /// (2k for DFT, m for PAA, w for identity).
    Index output_len(Index w) const;

    /// Apply to a scalar window; provenance (pid, offset) is preserved.
    SequenceSlice apply(const SequenceSlice& s) const;
};

/// Orthonormal DFT, X[f] = (1/sqrt(n)) * sum_t S[t] e^(-2*pi*i*f*t/n), truncated
/// to the first k coefficients and emitted as [Re X[0], Im X[0], ..., Im X[k-1]].
/// With this normalization L2 on the 2n-value full output equals L2 on the
/// raw window, so truncation can only shrink distances.
SequenceSlice dft_transform(const SequenceSlice& s, Index k);

/// Segment means: output[j] = mean of segment j of length n/m. Requires m | n.
SequenceSlice paa_transform(const SequenceSlice& s, Index m);

} // namespace smf
