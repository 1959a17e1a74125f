#pragma once

#include <optional>
#include <string>

#include "smf/sequence.hpp"

namespace smf {

enum class DistanceKind { Lp, Dtw, LbKeogh, LbPaa, Erp, Edr, Lcss };

std::string to_string(DistanceKind kind);

/// Which dissimilarity to evaluate and its parameters. All measures follow
/// the same contract: smaller means more similar.
struct DistanceSpec {
    DistanceKind kind = DistanceKind::Lp;
    double p = 2.0;              // Lp order
    std::optional<Index> band;   // Sakoe-Chiba half-width; nullopt = unbounded
    double gap = 0.0;            // ERP reference component (broadcast over dims)
    double eps = 0.0;            // EDR / LCSS match threshold
    std::optional<Index> delta;  // LCSS warp window; nullopt = unbounded
    Index segments = 1;          // LB_PAA segment count

    static DistanceSpec lp(double order) {
        DistanceSpec s;
        s.kind = DistanceKind::Lp;
        s.p = order;
        return s;
    }
    static DistanceSpec l2() { return lp(2.0); }
    static DistanceSpec dtw(std::optional<Index> band = std::nullopt) {
        DistanceSpec s;
        s.kind = DistanceKind::Dtw;
        s.band = band;
        return s;
    }
    static DistanceSpec lb_keogh(Index band) {
        DistanceSpec s;
        s.kind = DistanceKind::LbKeogh;
        s.band = band;
        return s;
    }
    static DistanceSpec lb_paa(Index band, Index segments) {
        DistanceSpec s;
        s.kind = DistanceKind::LbPaa;
        s.band = band;
        s.segments = segments;
        return s;
    }
    static DistanceSpec erp(double gap) {
        DistanceSpec s;
        s.kind = DistanceKind::Erp;
        s.gap = gap;
        return s;
    }
    static DistanceSpec edr(double eps) {
        DistanceSpec s;
        s.kind = DistanceKind::Edr;
        s.eps = eps;
        return s;
    }
    static DistanceSpec lcss(double eps, std::optional<Index> delta = std::nullopt) {
        DistanceSpec s;
        s.kind = DistanceKind::Lcss;
        s.eps = eps;
        s.delta = delta;
        return s;
    }
};

/// (sum_i d(S[i], T[i])^p)^(1/p) over equally long sequences.
double lp_distance(const SequenceSlice& s, const SequenceSlice& t, double p);

/// Minimum over monotone warping paths of the sum of SQUARED component
/// distances along the path, cells restricted to |i - j| <= band. Returns the
/// raw accumulation, no square root.
double dtw(const SequenceSlice& s, const SequenceSlice& t,
           std::optional<Index> band = std::nullopt);

/// Envelope lower bound of dtw(q, s, band) for equal-length scalar sequences;
/// accumulates squared violations of S against the band envelope of Q.
double lb_keogh(const SequenceSlice& q, const SequenceSlice& s, Index band);

/// PAA-compressed variant of lb_keogh; m segments must divide the length.
/// lb_paa <= lb_keogh <= dtw.
double lb_paa(const SequenceSlice& q, const SequenceSlice& s, Index band, Index m);

/// Edit distance with real penalty: gap component g, plain (unsquared)
/// component-distance sums. A metric when d is.
double erp(const SequenceSlice& s, const SequenceSlice& t,
           const Eigen::Ref<const Eigen::VectorXd>& g);

/// Edit distance on real sequences: match is free when d(s, t) <= eps,
/// every other operation costs 1. Integer-valued.
double edr(const SequenceSlice& s, const SequenceSlice& t, double eps);

/// 1 - LCSS(s, t) / min(len); components match when d <= eps and |i-j| <= delta.
double lcss(const SequenceSlice& s, const SequenceSlice& t, double eps,
            std::optional<Index> delta = std::nullopt);

/// Evaluate the measure selected by `spec` on a pair of sequences.
double evaluate(const DistanceSpec& spec, const SequenceSlice& s, const SequenceSlice& t);

/// Whether the selected measure is a metric (enables triangle-inequality
/// pruning in indexes).
bool is_metric(const DistanceSpec& spec);

} // namespace smf
