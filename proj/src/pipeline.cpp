#include "smf/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace smf {
namespace {

bool match_less(const MatchResult& a, const MatchResult& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.pid != b.pid) return a.pid < b.pid;
    return a.start < b.start;
}

bool is_l2(const DistanceSpec& spec) { return spec.kind == DistanceKind::Lp && spec.p == 2.0; }

} // namespace

Pipeline::Pipeline(PipelineSkeleton skeleton) : skeleton_(std::move(skeleton)) {
    if (!skeleton_.storage) throw ConfigError("missing slot 'seqStorage': no sequence storage");
    if (!skeleton_.window_index) throw ConfigError("missing slot 'index': no distance index");
    if (skeleton_.w < 1) throw ConfigError("slot 'w': window width must be >= 1");
    if (skeleton_.data_slicer.w != skeleton_.w || skeleton_.query_slicer.w != skeleton_.w)
        throw ConfigError("width mismatch: dataSlicer w=" + std::to_string(skeleton_.data_slicer.w) +
                          ", querySlicer w=" + std::to_string(skeleton_.query_slicer.w) +
                          ", algorithm w=" + std::to_string(skeleton_.w));
    if (skeleton_.data_slicer.kind == skeleton_.query_slicer.kind)
        throw ConfigError("slicer combination: exactly one of dataSlicer/querySlicer must be "
                          "sliding and the other disjoint (both are " +
                          to_string(skeleton_.data_slicer.kind) + ")");

    // Transform parameters must be valid for windows of width w.
    const TransformSpec& t = skeleton_.transformer;
    if (t.kind == TransformKind::Dft && (t.out_size < 1 || t.out_size > skeleton_.w))
        throw ConfigError("transformer: dft coefficient count " + std::to_string(t.out_size) +
                          " out of range for window width " + std::to_string(skeleton_.w));
    if (t.kind == TransformKind::Paa && (t.out_size < 1 || skeleton_.w % t.out_size != 0))
        throw ConfigError("transformer: paa segment count " + std::to_string(t.out_size) +
                          " must divide window width " + std::to_string(skeleton_.w));
    if (t.kind != TransformKind::Identity && !skeleton_.kind.is_scalar())
        throw ConfigError("transformer: " + to_string(t.kind) + " requires scalar sequences");

    const Index expect_dim = t.output_len(skeleton_.w) * (t.kind == TransformKind::Identity
                                                              ? skeleton_.kind.dim()
                                                              : 1);
    if (!skeleton_.window_index->empty() && skeleton_.window_index->dim() != expect_dim)
        throw ConfigError("index dimensionality " + std::to_string(skeleton_.window_index->dim()) +
                          " does not match transformer output " + std::to_string(expect_dim));

    skeleton_.window_distance = skeleton_.window_index->distance().spec;

    // The window-probing radius guarantee is proven for L2 refinement over an
    // L2 window index with a contractive transform. Identity on vector
    // components still contracts when the component order is <= 2.
    const bool component_ok =
        skeleton_.kind.is_scalar() ||
        (skeleton_.transformer.kind == TransformKind::Identity && skeleton_.kind.p() <= 2.0);
    exact_guarantee_ =
        is_l2(skeleton_.refine_distance) && is_l2(skeleton_.window_distance) && component_ok;
}

Pipeline assemble(PipelineSkeleton skeleton) { return Pipeline(std::move(skeleton)); }

Index Pipeline::min_query_len() const {
    return is_frm() ? skeleton_.w : 2 * skeleton_.w - 1;
}

Eigen::VectorXd Pipeline::probe_vector(const SequenceSlice& window) const {
    const SequenceSlice transformed = skeleton_.transformer.apply(window);
    const Eigen::MatrixXd& v = transformed.values();
    return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
}

Index Pipeline::index_sequence(const SequenceSlice& s) {
    if (s.kind() != skeleton_.kind)
        throw PreconditionError("sequence '" + s.id() + "' component kind does not match pipeline");
    if (s.len() < skeleton_.w)
        throw PreconditionError("sequence too short: '" + s.id() + "' has len " +
                                std::to_string(s.len()) + " < w " + std::to_string(skeleton_.w));
    skeleton_.storage->store(s);
    WindowView windows(s, skeleton_.data_slicer);
    Index count = 0;
    for (const SequenceSlice& win : windows) {
        skeleton_.window_index->insert({probe_vector(win), s.id(), win.offset()});
        ++count;
    }
    return count;
}

void Pipeline::align_hits(const std::vector<IndexHit>& hits, Index query_window_offset,
                          Index q_len, AlignedCandidates& acc) const {
    acc.stats.index_hits += hits.size();
    for (const IndexHit& hit : hits) {
        // start of the query-length alignment implied by this window pair
        const Index start = hit.item.offset - query_window_offset;
        if (start < 0) continue;
        const auto stored_len = skeleton_.storage->length(hit.item.pid);
        if (!stored_len || start + q_len > *stored_len) continue;
        acc.requests.push_back({hit.item.pid, start, q_len});
    }
}

std::vector<MatchResult> Pipeline::refine(const SequenceSlice& q, AlignedCandidates& acc) const {
    // Multiple query windows frequently vote for the same alignment; refine
    // each (pid, start) once.
    std::sort(acc.requests.begin(), acc.requests.end(),
              [](const AlignmentRequest& a, const AlignmentRequest& b) {
                  return a.pid != b.pid ? a.pid < b.pid : a.start < b.start;
              });
    acc.requests.erase(std::unique(acc.requests.begin(), acc.requests.end(),
                                   [](const AlignmentRequest& a, const AlignmentRequest& b) {
                                       return a.pid == b.pid && a.start == b.start;
                                   }),
                       acc.requests.end());
    acc.stats.candidates = acc.requests.size();

    const GroupedFetch fetched = skeleton_.storage->grouped_fetch(acc.requests);
    std::vector<MatchResult> results;
    results.reserve(acc.requests.size());
    for (std::size_t i = 0; i < acc.requests.size(); ++i) {
        if (!fetched.outcomes[i].ok()) continue; // bounds-checked above; raced stores excluded
        const double d = evaluate(skeleton_.refine_distance, q, *fetched.outcomes[i].slice);
        ++acc.stats.refine_calls;
        results.push_back({acc.requests[i].pid, acc.requests[i].start, d});
    }
    return results;
}

SearchAnswer Pipeline::range_search(const SequenceSlice& q, double eps) const {
    if (q.kind() != skeleton_.kind)
        throw PreconditionError("query component kind does not match pipeline");
    if (eps < 0.0) throw PreconditionError("range radius must be >= 0");
    if (q.len() < min_query_len())
        throw PreconditionError("query too short: len " + std::to_string(q.len()) + " < " +
                                std::to_string(min_query_len()) + " (" +
                                (is_frm() ? "w for FRM" : "2w-1 for DualMatch") + ")");

    // Windows carrying the no-false-dismissal guarantee: the disjoint query
    // windows for FRM, or the disjoint data windows that are guaranteed to
    // lie fully inside any alignment for DualMatch. If the true distance is
    // within eps, some guaranteed window pair is within eps/sqrt(p).
    const Index w = skeleton_.w;
    const Index p = is_frm() ? q.len() / w : (q.len() - w + 1) / w;
    const double window_radius = eps / std::sqrt(static_cast<double>(p));

    AlignedCandidates acc;
    const std::uint64_t evals_before = skeleton_.window_index->distance_evaluations();
    WindowView probes(q, skeleton_.query_slicer);
    acc.stats.query_windows = probes.size();
    acc.stats.dropped_query_tail = probes.dropped_tail();
    for (Index i = 0; i < probes.size(); ++i) {
        const SequenceSlice win = probes[i];
        const Index offset_in_query = win.offset() - q.offset();
        align_hits(skeleton_.window_index->range_query(probe_vector(win), window_radius),
                   offset_in_query, q.len(), acc);
    }

    SearchAnswer answer;
    answer.exact = exact_guarantee_;
    std::vector<MatchResult> refined = refine(q, acc);
    for (MatchResult& m : refined)
        if (m.distance <= eps) answer.matches.push_back(std::move(m));
    std::sort(answer.matches.begin(), answer.matches.end(), match_less);
    acc.stats.index_distance_evals =
        skeleton_.window_index->distance_evaluations() - evals_before;
    answer.stats = acc.stats;
    return answer;
}

SearchAnswer Pipeline::knn_search(const SequenceSlice& q, Index k, Index multiplier) const {
    if (q.kind() != skeleton_.kind)
        throw PreconditionError("query component kind does not match pipeline");
    if (k < 1) throw PreconditionError("knn k must be >= 1");
    if (multiplier < 1) throw PreconditionError("candidate multiplier must be >= 1");
    if (q.len() < min_query_len())
        throw PreconditionError("query too short: len " + std::to_string(q.len()) + " < " +
                                std::to_string(min_query_len()) + " (" +
                                (is_frm() ? "w for FRM" : "2w-1 for DualMatch") + ")");

    AlignedCandidates acc;
    const std::uint64_t evals_before = skeleton_.window_index->distance_evaluations();
    WindowView probes(q, skeleton_.query_slicer);
    acc.stats.query_windows = probes.size();
    acc.stats.dropped_query_tail = probes.dropped_tail();
    for (Index i = 0; i < probes.size(); ++i) {
        const SequenceSlice win = probes[i];
        const Index offset_in_query = win.offset() - q.offset();
        align_hits(skeleton_.window_index->knn_query(probe_vector(win), k * multiplier),
                   offset_in_query, q.len(), acc);
    }

    SearchAnswer answer;
    answer.exact = false; // candidate pull is bounded; documented heuristic
    answer.matches = refine(q, acc);
    std::sort(answer.matches.begin(), answer.matches.end(), match_less);
    if (answer.matches.size() > static_cast<std::size_t>(k))
        answer.matches.resize(static_cast<std::size_t>(k));
    acc.stats.index_distance_evals =
        skeleton_.window_index->distance_evaluations() - evals_before;
    answer.stats = acc.stats;
    return answer;
}

std::vector<MatchResult> brute_force_range(const SequenceStorage& storage,
                                           const DistanceSpec& refine, const SequenceSlice& q,
                                           double eps) {
    std::vector<MatchResult> results;
    for (const std::string& id : storage.ids()) {
        const Index len = *storage.length(id);
        if (len < q.len()) continue;
        const SequenceSlice whole = storage.fetch_slice(id, 0, len - 1);
        for (Index start = 0; start + q.len() <= len; ++start) {
            SequenceSlice aligned("", id, start, whole.values().middleCols(start, q.len()),
                                  whole.kind());
            const double d = evaluate(refine, q, aligned);
            if (d <= eps) results.push_back({id, start, d});
        }
    }
    std::sort(results.begin(), results.end(), match_less);
    return results;
}

std::vector<MatchResult> brute_force_knn(const SequenceStorage& storage,
                                         const DistanceSpec& refine, const SequenceSlice& q,
                                         Index k) {
    std::vector<MatchResult> all;
    for (const std::string& id : storage.ids()) {
        const Index len = *storage.length(id);
        if (len < q.len()) continue;
        const SequenceSlice whole = storage.fetch_slice(id, 0, len - 1);
        for (Index start = 0; start + q.len() <= len; ++start) {
            SequenceSlice aligned("", id, start, whole.values().middleCols(start, q.len()),
                                  whole.kind());
            all.push_back({id, start, evaluate(refine, q, aligned)});
        }
    }
    std::sort(all.begin(), all.end(), match_less);
    if (all.size() > static_cast<std::size_t>(k)) all.resize(static_cast<std::size_t>(k));
    return all;
}

} // namespace smf
