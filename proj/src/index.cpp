#include "smf/index.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>

namespace smf {
namespace {

constexpr std::uint32_t kSnapshotVersion = 1;
constexpr char kMagic[4] = {'S', 'M', 'F', 'X'};

void write_u32(std::ostream& out, std::uint32_t v) {
    const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                       static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

std::uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw DataError("snapshot truncated");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_f64(std::ostream& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    out.write(b, 8);
}

double read_f64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw DataError("snapshot truncated");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return std::bit_cast<double>(bits);
}

std::string position_key(const std::string& pid, Index offset) {
    return pid + '\n' + std::to_string(offset);
}

bool hit_less(const IndexHit& a, const IndexHit& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.item.pid != b.item.pid) return a.item.pid < b.item.pid;
    return a.item.offset < b.item.offset;
}

} // namespace

IndexDistance IndexDistance::lp(double p) {
    if (p < 1.0) throw PreconditionError("index Lp order must be >= 1");
    IndexDistance d;
    d.spec = DistanceSpec::lp(p);
    d.metric = true;
    if (p == 2.0) {
        d.fn = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return (a - b).norm(); };
    } else if (p == 1.0) {
        d.fn = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
            return (a - b).cwiseAbs().sum();
        };
    } else {
        d.fn = [p](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
            return std::pow((a - b).cwiseAbs().array().pow(p).sum(), 1.0 / p);
        };
    }
    return d;
}

IndexDistance IndexDistance::from_spec(const DistanceSpec& spec) {
    if (spec.kind == DistanceKind::Lp) return lp(spec.p);
    IndexDistance d;
    d.spec = spec;
    d.metric = is_metric(spec);
    d.fn = [spec](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
        SequenceSlice sa("", a.transpose());
        SequenceSlice sb("", b.transpose());
        return evaluate(spec, sa, sb);
    };
    return d;
}

void DistanceIndex::insert(IndexedWindow item) {
    if (items_.empty()) {
        dim_ = item.vector.size();
        if (dim_ < 1) throw PreconditionError("indexed vectors must be non-empty");
    } else if (item.vector.size() != dim_) {
        throw PreconditionError("index dimensionality mismatch: expected " + std::to_string(dim_) +
                                ", got " + std::to_string(item.vector.size()));
    }
    const std::string key = position_key(item.pid, item.offset);
    auto it = positions_.find(key);
    if (it != positions_.end()) {
        items_[it->second] = std::move(item);
        on_insert(it->second, true);
    } else {
        items_.push_back(std::move(item));
        positions_.emplace(key, items_.size() - 1);
        on_insert(items_.size() - 1, false);
    }
}

std::vector<IndexHit> DistanceIndex::range_query(const Eigen::VectorXd& q, double r) const {
    if (r < 0.0) throw PreconditionError("range radius must be >= 0");
    if (!items_.empty() && q.size() != dim_)
        throw PreconditionError("query dimensionality mismatch: expected " + std::to_string(dim_) +
                                ", got " + std::to_string(q.size()));
    std::vector<Candidate> found;
    collect_range(q, r, found);
    std::vector<IndexHit> hits;
    hits.reserve(found.size());
    for (const auto& c : found) hits.push_back({items_[c.pos], c.distance});
    std::sort(hits.begin(), hits.end(), hit_less);
    return hits;
}

std::vector<IndexHit> DistanceIndex::knn_query(const Eigen::VectorXd& q, Index k) const {
    if (k < 1) throw PreconditionError("knn k must be >= 1");
    if (!items_.empty() && q.size() != dim_)
        throw PreconditionError("query dimensionality mismatch: expected " + std::to_string(dim_) +
                                ", got " + std::to_string(q.size()));
    std::vector<Candidate> found;
    collect_knn(q, k, found);
    std::vector<IndexHit> hits;
    hits.reserve(found.size());
    for (const auto& c : found) hits.push_back({items_[c.pos], c.distance});
    std::sort(hits.begin(), hits.end(), hit_less);
    if (hits.size() > static_cast<std::size_t>(k)) hits.resize(static_cast<std::size_t>(k));
    return hits;
}

void DistanceIndex::save_snapshot(std::ostream& out) const {
    out.write(kMagic, 4);
    write_u32(out, kSnapshotVersion);
    write_u32(out, static_cast<std::uint32_t>(dim_));
    write_u32(out, static_cast<std::uint32_t>(items_.size()));
    for (const auto& item : items_) {
        write_u32(out, static_cast<std::uint32_t>(item.pid.size()));
        out.write(item.pid.data(), static_cast<std::streamsize>(item.pid.size()));
        write_u32(out, static_cast<std::uint32_t>(item.offset));
        for (Index i = 0; i < item.vector.size(); ++i) write_f64(out, item.vector[i]);
    }
    if (!out) throw DataError("failed to write index snapshot");
}

std::vector<IndexedWindow> DistanceIndex::load_snapshot(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw DataError("not an index snapshot (bad magic)");
    const std::uint32_t version = read_u32(in);
    if (version != kSnapshotVersion)
        throw DataError("unsupported snapshot version " + std::to_string(version));
    const auto dim = static_cast<Index>(read_u32(in));
    const std::uint32_t count = read_u32(in);
    std::vector<IndexedWindow> items;
    items.reserve(count);
    for (std::uint32_t n = 0; n < count; ++n) {
        IndexedWindow item;
        const std::uint32_t pid_len = read_u32(in);
        item.pid.resize(pid_len);
        in.read(item.pid.data(), pid_len);
        if (!in) throw DataError("snapshot truncated");
        item.offset = static_cast<Index>(read_u32(in));
        item.vector.resize(dim);
        for (Index i = 0; i < dim; ++i) item.vector[i] = read_f64(in);
        items.push_back(std::move(item));
    }
    return items;
}

void LinearScanIndex::collect_range(const Eigen::VectorXd& q, double r,
                                    std::vector<Candidate>& out) const {
    for (std::size_t pos = 0; pos < items().size(); ++pos) {
        const double d = eval(q, items()[pos].vector);
        if (d <= r) out.push_back({pos, d});
    }
}

void LinearScanIndex::collect_knn(const Eigen::VectorXd& q, Index k,
                                  std::vector<Candidate>& out) const {
    for (std::size_t pos = 0; pos < items().size(); ++pos)
        out.push_back({pos, eval(q, items()[pos].vector)});
    (void)k;
}

void PivotTableIndex::build() {
    const std::size_t n = items().size();
    pivots_.clear();
    built_ = n;
    row_stale_.assign(n, 0);
    if (n == 0) {
        table_.resize(0, 0);
        return;
    }
    const std::size_t want =
        std::max<std::size_t>(1, static_cast<std::size_t>(
                                     std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(n, 2))))));
    const std::size_t pivot_count = std::min(want, n);

    // Farthest-first: seed with the first inserted item, then repeatedly take
    // the item with the largest min-distance to the chosen pivots (ties by
    // insertion order).
    std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
    pivots_.push_back(0);
    while (pivots_.size() < pivot_count) {
        const std::size_t last = pivots_.back();
        std::size_t best = n;
        double best_dist = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            min_dist[i] = std::min(min_dist[i], eval(items()[last].vector, items()[i].vector));
            if (std::find(pivots_.begin(), pivots_.end(), i) != pivots_.end()) continue;
            if (min_dist[i] > best_dist) {
                best_dist = min_dist[i];
                best = i;
            }
        }
        if (best == n) break;
        pivots_.push_back(best);
    }

    table_.resize(static_cast<Index>(n), static_cast<Index>(pivots_.size()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t p = 0; p < pivots_.size(); ++p)
            table_(static_cast<Index>(i), static_cast<Index>(p)) =
                eval(items()[i].vector, items()[pivots_[p]].vector);
}

void PivotTableIndex::on_insert(std::size_t pos, bool replaced) {
    if (replaced && pos < built_) row_stale_[pos] = 1; // falls back to direct evaluation
}

void PivotTableIndex::collect_range(const Eigen::VectorXd& q, double r,
                                    std::vector<Candidate>& out) const {
    const bool prune = distance().metric && !pivots_.empty();
    Eigen::VectorXd q_to_pivot;
    if (prune) {
        q_to_pivot.resize(static_cast<Index>(pivots_.size()));
        for (std::size_t p = 0; p < pivots_.size(); ++p)
            q_to_pivot[static_cast<Index>(p)] = eval(q, items()[pivots_[p]].vector);
    }
    for (std::size_t pos = 0; pos < items().size(); ++pos) {
        if (prune && pos < built_ && !row_stale_[pos]) {
            const double lb =
                (table_.row(static_cast<Index>(pos)).transpose() - q_to_pivot).cwiseAbs().maxCoeff();
            if (lb > r) continue;
        }
        const double d = eval(q, items()[pos].vector);
        if (d <= r) out.push_back({pos, d});
    }
}

void PivotTableIndex::collect_knn(const Eigen::VectorXd& q, Index k,
                                  std::vector<Candidate>& out) const {
    const bool prune = distance().metric && !pivots_.empty();
    Eigen::VectorXd q_to_pivot;
    if (prune) {
        q_to_pivot.resize(static_cast<Index>(pivots_.size()));
        for (std::size_t p = 0; p < pivots_.size(); ++p)
            q_to_pivot[static_cast<Index>(p)] = eval(q, items()[pivots_[p]].vector);
    }
    // Current k best, worst first. An item may be skipped only when its
    // triangle lower bound is strictly worse than the current k-th distance,
    // so ties are never lost and results match a linear scan exactly.
    auto worse = [this](const Candidate& a, const Candidate& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        const auto& ia = items()[a.pos];
        const auto& ib = items()[b.pos];
        if (ia.pid != ib.pid) return ia.pid < ib.pid;
        return ia.offset < ib.offset;
    };
    std::vector<Candidate> heap; // max-heap under `worse`
    const auto want = static_cast<std::size_t>(k);
    for (std::size_t pos = 0; pos < items().size(); ++pos) {
        if (prune && pos < built_ && !row_stale_[pos] && heap.size() == want) {
            const double lb =
                (table_.row(static_cast<Index>(pos)).transpose() - q_to_pivot).cwiseAbs().maxCoeff();
            if (lb > heap.front().distance) continue;
        }
        const Candidate c{pos, eval(q, items()[pos].vector)};
        if (heap.size() < want) {
            heap.push_back(c);
            std::push_heap(heap.begin(), heap.end(), worse);
        } else if (worse(c, heap.front())) {
            std::pop_heap(heap.begin(), heap.end(), worse);
            heap.back() = c;
            std::push_heap(heap.begin(), heap.end(), worse);
        }
    }
    out = std::move(heap);
}

} // namespace smf
