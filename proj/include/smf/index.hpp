#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "smf/distance.hpp"
#include "smf/sequence.hpp"

namespace smf {

/// A transformed window vector with its provenance: the root sequence it came
/// from and the window offset within it. (pid, offset) is unique per index.
struct IndexedWindow {
    Eigen::VectorXd vector;
    std::string pid;
    Index offset = 0;
};

struct IndexHit {
    IndexedWindow item;
    double distance = 0.0;
};

/// Distance evaluated between stored vectors. Pruning structures are only
/// allowed to rely on the triangle inequality when `metric` is set.
struct IndexDistance {
    DistanceSpec spec = DistanceSpec::l2();
    bool metric = true;
    std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)> fn;

    static IndexDistance l2() { return lp(2.0); }
    static IndexDistance lp(double p);
    /// Evaluate an arbitrary sequence distance on vectors viewed as scalar
    /// sequences.
    static IndexDistance from_spec(const DistanceSpec& spec);

    double operator()(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const { return fn(a, b); }
};

/// Distance-based index over IndexedWindow points answering range and kNN
/// queries. Single-writer / multi-reader: queries are const and may run
/// concurrently, inserts and builds need exclusive access.
class DistanceIndex {
public:
    explicit DistanceIndex(IndexDistance distance = IndexDistance::l2())
        : distance_(std::move(distance)) {}
    virtual ~DistanceIndex() = default;

    /// Insert or replace (replace when (pid, offset) is already present).
    /// The first insert fixes the index dimensionality.
    void insert(IndexedWindow item);

    /// Rebuild internal search structures over everything inserted so far.
    virtual void build() {}

    /// All items within distance r of q, sorted by (distance, pid, offset).
    std::vector<IndexHit> range_query(const Eigen::VectorXd& q, double r) const;

    /// The k closest items (fewer if the index is smaller), ascending
    /// distance, ties broken by (pid, offset).
    std::vector<IndexHit> knn_query(const Eigen::VectorXd& q, Index k) const;

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    /// Vector length of stored items; 0 until the first insert.
    Index dim() const { return dim_; }
    const IndexDistance& distance() const { return distance_; }

    /// Cumulative count of vector-distance evaluations (query-side).
    std::uint64_t distance_evaluations() const { return evals_.load(); }
    void reset_distance_evaluations() { evals_.store(0); }

    /// Binary snapshot of the index contents (not of the search structures):
    /// little-endian, header "SMFX" + u32 version + u32 dim + u32 count, then
    /// per item u32 pid length, pid bytes, u32 offset, dim f64 values.
    void save_snapshot(std::ostream& out) const;
    static std::vector<IndexedWindow> load_snapshot(std::istream& in);

protected:
    struct Candidate {
        std::size_t pos;
        double distance;
    };

    double eval(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
        evals_.fetch_add(1, std::memory_order_relaxed);
        return distance_(a, b);
    }
    const std::vector<IndexedWindow>& items() const { return items_; }

    /// Called after an item is inserted at `pos` (new or replaced).
    virtual void on_insert(std::size_t pos, bool replaced) { (void)pos; (void)replaced; }

    /// Collect matches with distance <= r into `out`.
    virtual void collect_range(const Eigen::VectorXd& q, double r,
                               std::vector<Candidate>& out) const = 0;
    /// Collect the k best candidates into `out` (ascending order not required).
    virtual void collect_knn(const Eigen::VectorXd& q, Index k,
                             std::vector<Candidate>& out) const = 0;

private:
    IndexDistance distance_;
    std::vector<IndexedWindow> items_;
    std::unordered_map<std::string, std::size_t> positions_; // key: pid '\n' offset
    Index dim_ = 0;
    mutable std::atomic<std::uint64_t> evals_{0};
};

/// Baseline index: every query scans all items.
class LinearScanIndex : public DistanceIndex {
public:
    using DistanceIndex::DistanceIndex;

protected:
    void collect_range(const Eigen::VectorXd& q, double r,
                       std::vector<Candidate>& out) const override;
    void collect_knn(const Eigen::VectorXd& q, Index k,
                     std::vector<Candidate>& out) const override;
};

/// Metric index: precomputes distances from every item to a small pivot set,
/// then prunes with the triangle lower bound max_p |D(q,p) - D(x,p)|. Results
/// are always identical to a linear scan when the distance is a metric;
/// pruning is disabled otherwise. Items inserted after build() sit in an
/// unpruned overflow region scanned linearly until the next build().
class PivotTableIndex : public DistanceIndex {
public:
    using DistanceIndex::DistanceIndex;

    /// Greedy max-min pivot selection over the inserted items,
    /// max(1, ceil(log2(size))) pivots; recomputes the whole table.
    void build() override;

    std::size_t pivot_count() const { return pivots_.size(); }
    std::size_t built_count() const { return built_; }

protected:
    void on_insert(std::size_t pos, bool replaced) override;
    void collect_range(const Eigen::VectorXd& q, double r,
                       std::vector<Candidate>& out) const override;
    void collect_knn(const Eigen::VectorXd& q, Index k,
                     std::vector<Candidate>& out) const override;

private:
    std::vector<std::size_t> pivots_;
    Eigen::MatrixXd table_;        // built_ rows x pivot_count() cols
    std::vector<char> row_stale_;  // built rows invalidated by replacement
    std::size_t built_ = 0;
};

} // namespace smf
