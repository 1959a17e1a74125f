#include "smf/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace smf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_kind(const SequenceSlice& s, const SequenceSlice& t) {
    if (s.kind() != t.kind()) throw PreconditionError("component kind mismatch");
}

// Dispatches once on component arity so DP loops run an inlined d(i, j).
template <class Fn>
double with_component_distance(const SequenceSlice& s, const SequenceSlice& t, Fn&& fn) {
    require_same_kind(s, t);
    const Eigen::MatrixXd& a = s.values();
    const Eigen::MatrixXd& b = t.values();
    if (s.kind().is_scalar())
        return fn([&a, &b](Index i, Index j) { return std::abs(a(0, i) - b(0, j)); });
    const double p = s.kind().p();
    if (p == 2.0) return fn([&a, &b](Index i, Index j) { return (a.col(i) - b.col(j)).norm(); });
    if (p == 1.0)
        return fn([&a, &b](Index i, Index j) { return (a.col(i) - b.col(j)).cwiseAbs().sum(); });
    return fn([&a, &b, p](Index i, Index j) {
        return std::pow((a.col(i) - b.col(j)).cwiseAbs().array().pow(p).sum(), 1.0 / p);
    });
}

// Band envelope of a scalar sequence: U[i] = max, L[i] = min of q over
// indices within `band` of i. Direct per-position scan; windows are short.
void build_envelope(const SequenceSlice& q, Index band, Eigen::VectorXd& upper,
                    Eigen::VectorXd& lower) {
    const Index n = q.len();
    upper.resize(n);
    lower.resize(n);
    for (Index i = 0; i < n; ++i) {
        const Index lo = std::max<Index>(0, i - band);
        const Index hi = std::min<Index>(n - 1, i + band);
        upper[i] = q.values().row(0).segment(lo, hi - lo + 1).maxCoeff();
        lower[i] = q.values().row(0).segment(lo, hi - lo + 1).minCoeff();
    }
}

double envelope_penalty(double value, double upper, double lower) {
    if (value > upper) {
        const double d = value - upper;
        return d * d;
    }
    if (value < lower) {
        const double d = lower - value;
        return d * d;
    }
    return 0.0;
}

} // namespace

std::string to_string(DistanceKind kind) {
    switch (kind) {
        case DistanceKind::Lp: return "lp";
        case DistanceKind::Dtw: return "dtw";
        case DistanceKind::LbKeogh: return "lb_keogh";
        case DistanceKind::LbPaa: return "lb_paa";
        case DistanceKind::Erp: return "erp";
        case DistanceKind::Edr: return "edr";
        case DistanceKind::Lcss: return "lcss";
    }
    return "?";
}

double lp_distance(const SequenceSlice& s, const SequenceSlice& t, double p) {
    if (p < 1.0) throw PreconditionError("Lp order must be >= 1");
    if (s.len() != t.len())
        throw PreconditionError("lp_distance requires equal lengths: " + std::to_string(s.len()) +
                                " vs " + std::to_string(t.len()));
    return with_component_distance(s, t, [&](auto d) {
        const Index n = s.len();
        if (p == 2.0 && s.kind().is_scalar())
            return (s.values().row(0) - t.values().row(0)).norm();
        double acc = 0.0;
        for (Index i = 0; i < n; ++i) acc += std::pow(d(i, i), p);
        return std::pow(acc, 1.0 / p);
    });
}

double dtw(const SequenceSlice& s, const SequenceSlice& t, std::optional<Index> band) {
    const Index m = s.len();
    const Index n = t.len();
    if (m == 0 || n == 0) throw PreconditionError("dtw requires non-empty sequences");
    if (band) {
        if (*band < 0) throw PreconditionError("dtw band must be >= 0");
        if (std::abs(m - n) > *band)
            throw PreconditionError("dtw band infeasible: |" + std::to_string(m) + " - " +
                                    std::to_string(n) + "| > " + std::to_string(*band));
    }
    return with_component_distance(s, t, [&](auto d) {
        // Two rolling rows; cells outside the band stay at infinity.
        std::vector<double> prev(static_cast<std::size_t>(n), kInf);
        std::vector<double> cur(static_cast<std::size_t>(n), kInf);
        for (Index i = 0; i < m; ++i) {
            const Index jlo = band ? std::max<Index>(0, i - *band) : 0;
            const Index jhi = band ? std::min<Index>(n - 1, i + *band) : n - 1;
            std::fill(cur.begin(), cur.end(), kInf);
            for (Index j = jlo; j <= jhi; ++j) {
                const double c = d(i, j);
                double best;
                if (i == 0 && j == 0) {
                    best = 0.0;
                } else {
                    best = kInf;
                    if (i > 0) best = std::min(best, prev[static_cast<std::size_t>(j)]);
                    if (j > 0) best = std::min(best, cur[static_cast<std::size_t>(j - 1)]);
                    if (i > 0 && j > 0) best = std::min(best, prev[static_cast<std::size_t>(j - 1)]);
                }
                cur[static_cast<std::size_t>(j)] = c * c + best;
            }
            std::swap(prev, cur);
        }
        return prev[static_cast<std::size_t>(n - 1)];
    });
}

double lb_keogh(const SequenceSlice& q, const SequenceSlice& s, Index band) {
    require_same_kind(q, s);
    if (!q.kind().is_scalar()) throw PreconditionError("lb_keogh requires scalar components");
    if (q.len() != s.len())
        throw PreconditionError("lb_keogh requires equal lengths: " + std::to_string(q.len()) +
                                " vs " + std::to_string(s.len()));
    if (band < 0) throw PreconditionError("lb_keogh band must be >= 0");
    Eigen::VectorXd upper, lower;
    build_envelope(q, band, upper, lower);
    double acc = 0.0;
    for (Index i = 0; i < s.len(); ++i)
        acc += envelope_penalty(s.values()(0, i), upper[i], lower[i]);
    return acc;
}

double lb_paa(const SequenceSlice& q, const SequenceSlice& s, Index band, Index m) {
    require_same_kind(q, s);
    if (!q.kind().is_scalar()) throw PreconditionError("lb_paa requires scalar components");
    const Index n = q.len();
    if (n != s.len())
        throw PreconditionError("lb_paa requires equal lengths: " + std::to_string(n) + " vs " +
                                std::to_string(s.len()));
    if (band < 0) throw PreconditionError("lb_paa band must be >= 0");
    if (m < 1 || n % m != 0)
        throw PreconditionError("lb_paa segment count must divide the length: n=" +
                                std::to_string(n) + ", m=" + std::to_string(m));
    Eigen::VectorXd upper, lower;
    build_envelope(q, band, upper, lower);
    const Index seg = n / m;
    const double weight = static_cast<double>(seg);
    double acc = 0.0;
    for (Index j = 0; j < m; ++j) {
        const double u_hat = upper.segment(j * seg, seg).mean();
        const double l_hat = lower.segment(j * seg, seg).mean();
        const double s_hat = s.values().row(0).segment(j * seg, seg).mean();
        acc += weight * envelope_penalty(s_hat, u_hat, l_hat);
    }
    return acc;
}

double erp(const SequenceSlice& s, const SequenceSlice& t,
           const Eigen::Ref<const Eigen::VectorXd>& g) {
    require_same_kind(s, t);
    if (g.size() != s.kind().dim()) throw PreconditionError("erp gap component arity mismatch");
    const Index m = s.len();
    const Index n = t.len();
    const ComponentKind& kind = s.kind();
    auto gap_to = [&](const SequenceSlice& seq, Index i) {
        return kind.distance(seq.values().col(i), g);
    };
    return with_component_distance(s, t, [&](auto d) {
        // (m+1) x (n+1) table, rolling rows; row/column 0 are gap prefix sums.
        std::vector<double> prev(static_cast<std::size_t>(n + 1), 0.0);
        std::vector<double> cur(static_cast<std::size_t>(n + 1), 0.0);
        for (Index j = 1; j <= n; ++j)
            prev[static_cast<std::size_t>(j)] =
                prev[static_cast<std::size_t>(j - 1)] + gap_to(t, j - 1);
        for (Index i = 1; i <= m; ++i) {
            cur[0] = prev[0] + gap_to(s, i - 1);
            for (Index j = 1; j <= n; ++j) {
                const double match = prev[static_cast<std::size_t>(j - 1)] + d(i - 1, j - 1);
                const double drop_s = prev[static_cast<std::size_t>(j)] + gap_to(s, i - 1);
                const double drop_t = cur[static_cast<std::size_t>(j - 1)] + gap_to(t, j - 1);
                cur[static_cast<std::size_t>(j)] = std::min({match, drop_s, drop_t});
            }
            std::swap(prev, cur);
        }
        return prev[static_cast<std::size_t>(n)];
    });
}

double edr(const SequenceSlice& s, const SequenceSlice& t, double eps) {
    if (eps < 0.0) throw PreconditionError("edr threshold must be >= 0");
    require_same_kind(s, t);
    const Index m = s.len();
    const Index n = t.len();
    if (m == 0 || n == 0) return static_cast<double>(m + n);
    return with_component_distance(s, t, [&](auto d) {
        std::vector<double> prev(static_cast<std::size_t>(n + 1), 0.0);
        std::vector<double> cur(static_cast<std::size_t>(n + 1), 0.0);
        for (Index j = 0; j <= n; ++j) prev[static_cast<std::size_t>(j)] = static_cast<double>(j);
        for (Index i = 1; i <= m; ++i) {
            cur[0] = static_cast<double>(i);
            for (Index j = 1; j <= n; ++j) {
                const double sub = d(i - 1, j - 1) <= eps ? 0.0 : 1.0;
                cur[static_cast<std::size_t>(j)] =
                    std::min({prev[static_cast<std::size_t>(j - 1)] + sub,
                              prev[static_cast<std::size_t>(j)] + 1.0,
                              cur[static_cast<std::size_t>(j - 1)] + 1.0});
            }
            std::swap(prev, cur);
        }
        return prev[static_cast<std::size_t>(n)];
    });
}

double lcss(const SequenceSlice& s, const SequenceSlice& t, double eps,
            std::optional<Index> delta) {
    if (eps < 0.0) throw PreconditionError("lcss threshold must be >= 0");
    if (delta && *delta < 0) throw PreconditionError("lcss warp window must be >= 0");
    const Index m = s.len();
    const Index n = t.len();
    if (m == 0 || n == 0) throw PreconditionError("lcss requires non-empty sequences");
    return with_component_distance(s, t, [&](auto d) {
        std::vector<double> prev(static_cast<std::size_t>(n + 1), 0.0);
        std::vector<double> cur(static_cast<std::size_t>(n + 1), 0.0);
        for (Index i = 1; i <= m; ++i) {
            cur[0] = 0.0;
            for (Index j = 1; j <= n; ++j) {
                const bool in_window = !delta || std::abs(i - j) <= *delta;
                if (in_window && d(i - 1, j - 1) <= eps)
                    cur[static_cast<std::size_t>(j)] =
                        prev[static_cast<std::size_t>(j - 1)] + 1.0;
                else
                    cur[static_cast<std::size_t>(j)] =
                        std::max(prev[static_cast<std::size_t>(j)],
                                 cur[static_cast<std::size_t>(j - 1)]);
            }
            std::swap(prev, cur);
        }
        const double matched = prev[static_cast<std::size_t>(n)];
        return 1.0 - matched / static_cast<double>(std::min(m, n));
    });
}

double evaluate(const DistanceSpec& spec, const SequenceSlice& s, const SequenceSlice& t) {
    switch (spec.kind) {
        case DistanceKind::Lp: return lp_distance(s, t, spec.p);
        case DistanceKind::Dtw: return dtw(s, t, spec.band);
        case DistanceKind::LbKeogh:
            if (!spec.band) throw PreconditionError("lb_keogh requires a finite band");
            return lb_keogh(s, t, *spec.band);
        case DistanceKind::LbPaa:
            if (!spec.band) throw PreconditionError("lb_paa requires a finite band");
            return lb_paa(s, t, *spec.band, spec.segments);
        case DistanceKind::Erp:
            return erp(s, t, Eigen::VectorXd::Constant(s.kind().dim(), spec.gap));
        case DistanceKind::Edr: return edr(s, t, spec.eps);
        case DistanceKind::Lcss: return lcss(s, t, spec.eps, spec.delta);
    }
    throw PreconditionError("unknown distance kind");
}

bool is_metric(const DistanceSpec& spec) {
    switch (spec.kind) {
        case DistanceKind::Lp: return spec.p >= 1.0;
        case DistanceKind::Erp: return true;
        default: return false;
    }
}

} // namespace smf
