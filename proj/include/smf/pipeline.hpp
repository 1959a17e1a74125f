#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "smf/distance.hpp"
#include "smf/index.hpp"
#include "smf/sequence.hpp"
#include "smf/slicer.hpp"
#include "smf/storage.hpp"
#include "smf/transform.hpp"

namespace smf {

/// Wiring of one subsequence-matching algorithm instance: slicer assignments
/// (sliding data / disjoint query = FRM, swapped = DualMatch), the window
/// transform, the window index, whole-sequence storage, and the refinement
/// distance.
struct PipelineSkeleton {
    WindowConfig data_slicer;
    WindowConfig query_slicer;
    TransformSpec transformer = TransformSpec::identity();
    DistanceSpec window_distance = DistanceSpec::l2(); // distance of the window index
    DistanceSpec refine_distance = DistanceSpec::l2();
    ComponentKind kind = ComponentKind::scalar();
    Index w = 0;
    std::shared_ptr<DistanceIndex> window_index;
    std::shared_ptr<SequenceStorage> storage;
};

/// One refined answer: the alignment stored[pid][start : start+len(Q)-1] and
/// its refined distance to the query.
struct MatchResult {
    std::string pid;
    Index start = 0;
    double distance = 0.0;
};

struct SearchStats {
    Index query_windows = 0;      // probe windows sliced from the query
    Index dropped_query_tail = 0; // query components not covered by any probe
    std::size_t index_hits = 0;   // window hits over all probes
    std::size_t candidates = 0;   // alignments after dedup and bounds filtering
    std::size_t refine_calls = 0;
    std::uint64_t index_distance_evals = 0;
};

struct SearchAnswer {
    std::vector<MatchResult> matches; // ascending distance, ties by (pid, start)
    /// True when the candidate-generation stage provably loses no answer
    /// (L2 refinement, L2 window index, contractive transform).
    bool exact = false;
    SearchStats stats;
};

/// A validated, runnable pipeline. index_sequence() requires exclusive
/// access; searches are const and may run concurrently after ingestion.
class Pipeline {
public:
    /// Validates the skeleton wiring; throws ConfigError naming the offending
    /// slot on missing modules, width disagreement, or an invalid slicer
    /// combination.
    explicit Pipeline(PipelineSkeleton skeleton);

    const PipelineSkeleton& skeleton() const { return skeleton_; }
    /// Data slicer sliding and query slicer disjoint?
    bool is_frm() const { return skeleton_.data_slicer.kind == SlicerKind::Sliding; }
    /// w for FRM, 2w-1 for DualMatch.
    Index min_query_len() const;
    /// Whether range_search answers carry the no-false-dismissal guarantee.
    bool exact_range_guarantee() const { return exact_guarantee_; }

    /// Store S and index its transformed data windows; returns the window
    /// count. Sequences shorter than w are rejected.
    Index index_sequence(const SequenceSlice& s);

    /// All alignments within eps of Q under the refinement distance. Exact
    /// (no false dismissals, no false positives) whenever
    /// exact_range_guarantee() holds; otherwise a documented heuristic, with
    /// `exact` reported on the answer.
    SearchAnswer range_search(const SequenceSlice& q, double eps) const;

    /// Heuristic kNN: probes the window index with k * multiplier per query
    /// window, refines the union of candidates, returns the best k.
    SearchAnswer knn_search(const SequenceSlice& q, Index k, Index multiplier = 4) const;

private:
    struct AlignedCandidates {
        std::vector<AlignmentRequest> requests;
        SearchStats stats;
    };

    Eigen::VectorXd probe_vector(const SequenceSlice& window) const;
    void align_hits(const std::vector<IndexHit>& hits, Index query_window_offset, Index q_len,
                    AlignedCandidates& acc) const;
    std::vector<MatchResult> refine(const SequenceSlice& q, AlignedCandidates& acc) const;

    PipelineSkeleton skeleton_;
    bool exact_guarantee_ = false;
};

/// Alias for the checked construction above.
Pipeline assemble(PipelineSkeleton skeleton);

/// Reference scan answering a range query by refining every alignment of
/// every stored sequence; no index, no transform, no windows.
std::vector<MatchResult> brute_force_range(const SequenceStorage& storage,
                                           const DistanceSpec& refine, const SequenceSlice& q,
                                           double eps);

/// Reference scan for kNN over all alignments, same ordering contract.
std::vector<MatchResult> brute_force_knn(const SequenceStorage& storage,
                                         const DistanceSpec& refine, const SequenceSlice& q,
                                         Index k);

} // namespace smf
