#pragma once

#include <cstdio>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "smf/sequence.hpp"

namespace smf {

/// One alignment to retrieve: `len` components of sequence `pid` starting at
/// `start`.
struct AlignmentRequest {
    std::string pid;
    Index start = 0;
    Index len = 1;
};

/// Positional result of a grouped fetch; `error` is empty on success.
struct FetchOutcome {
    std::optional<SequenceSlice> slice;
    std::string error;
    bool ok() const { return slice.has_value(); }
};

struct GroupedFetch {
    std::vector<FetchOutcome> outcomes;
    /// Distinct sequences visited while serving the batch.
    std::size_t sequences_visited = 0;
};

/// Whole-sequence storage returning arbitrary slices by id.
/// Single-writer / multi-reader: fetches may run concurrently with each
/// other but not with store().
class SequenceStorage {
public:
    virtual ~SequenceStorage() = default;

    /// Store S under S.id, replacing any previous sequence with that id.
    virtual void store(const SequenceSlice& s) = 0;

    /// S[i:j] of the stored sequence, with pid = id and offset = i.
    virtual SequenceSlice fetch_slice(const std::string& id, Index i, Index j) const;

    /// Length of the stored sequence, nullopt when unknown.
    virtual std::optional<Index> length(const std::string& id) const = 0;

    virtual std::size_t size() const = 0;
    /// Stored ids in insertion order (first store of each id).
    virtual std::vector<std::string> ids() const = 0;

    /// Serve a batch of alignment requests, results in request order. Each
    /// distinct pid in the batch is visited exactly once; per-request errors
    /// are reported positionally without aborting the rest.
    GroupedFetch grouped_fetch(const std::vector<AlignmentRequest>& requests) const;

protected:
    /// Read one whole stored sequence; nullopt for unknown ids.
    virtual std::optional<SequenceSlice> load_whole(const std::string& id) const = 0;
};

/// Hash-map backed storage.
class MemorySequenceStorage : public SequenceStorage {
public:
    void store(const SequenceSlice& s) override;
    SequenceSlice fetch_slice(const std::string& id, Index i, Index j) const override;
    std::optional<Index> length(const std::string& id) const override;
    std::size_t size() const override { return sequences_.size(); }
    std::vector<std::string> ids() const override { return order_; }

protected:
    std::optional<SequenceSlice> load_whole(const std::string& id) const override;

private:
    std::unordered_map<std::string, SequenceSlice> sequences_;
    std::vector<std::string> order_;
};

/// Append-only file storage with an in-memory id -> (byte offset, length)
/// directory. Layout: header "SMFS" + u32 version + u32 component dimension,
/// then per record u32 id length, id bytes, u32 component count, and
/// count x dim little-endian f64 components. A re-stored id appends a new
/// record and the directory keeps the newest. fetch_slice reads only the
/// requested component range.
class FileSequenceStorage : public SequenceStorage {
public:
    explicit FileSequenceStorage(std::string path,
                                 ComponentKind kind = ComponentKind::scalar());
    ~FileSequenceStorage() override;

    FileSequenceStorage(const FileSequenceStorage&) = delete;
    FileSequenceStorage& operator=(const FileSequenceStorage&) = delete;

    void store(const SequenceSlice& s) override;
    SequenceSlice fetch_slice(const std::string& id, Index i, Index j) const override;
    std::optional<Index> length(const std::string& id) const override;
    std::size_t size() const override { return directory_.size(); }
    std::vector<std::string> ids() const override { return order_; }

    const std::string& path() const { return path_; }
    const ComponentKind& kind() const { return kind_; }

protected:
    std::optional<SequenceSlice> load_whole(const std::string& id) const override;

private:
    struct Record {
        long payload = 0; // byte offset of the first component
        Index len = 0;    // component count
    };

    SequenceSlice read_range(const std::string& id, const Record& rec, Index i, Index len) const;
    void scan_existing();

    std::string path_;
    ComponentKind kind_;
    std::FILE* file_ = nullptr;
    std::unordered_map<std::string, Record> directory_;
    std::vector<std::string> order_;
    mutable std::mutex io_mutex_;

    friend class SequenceStorage;
};

} // namespace smf
