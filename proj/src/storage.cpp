#include "smf/storage.hpp"

#include <bit>
#include <cstring>

namespace smf {
namespace {

static_assert(std::endian::native == std::endian::little,
              "storage file format is little-endian");

constexpr std::uint32_t kStorageVersion = 1;
constexpr char kMagic[4] = {'S', 'M', 'F', 'S'};

SequenceSlice stored_slice(const std::string& id, Eigen::MatrixXd values, Index i,
                           const ComponentKind& kind) {
    const Index len = values.cols();
    std::string slice_id =
        id + "[" + std::to_string(i) + ":" + std::to_string(i + len - 1) + "]";
    return SequenceSlice(std::move(slice_id), id, i, std::move(values), kind);
}

void check_range(const std::string& id, Index i, Index j, Index len) {
    if (i < 0 || i > j || j >= len)
        throw PreconditionError("slice range [" + std::to_string(i) + ":" + std::to_string(j) +
                                "] out of bounds for sequence '" + id + "' of length " +
                                std::to_string(len));
}

void require_id(const SequenceSlice& s) {
    if (s.id().empty()) throw PreconditionError("cannot store a sequence with an empty id");
}

} // namespace

SequenceSlice SequenceStorage::fetch_slice(const std::string& id, Index i, Index j) const {
    auto whole = load_whole(id);
    if (!whole) throw DataError("unknown sequence id '" + id + "'");
    check_range(id, i, j, whole->len());
    return stored_slice(id, whole->values().middleCols(i, j - i + 1), i, whole->kind());
}

GroupedFetch SequenceStorage::grouped_fetch(const std::vector<AlignmentRequest>& requests) const {
    GroupedFetch out;
    out.outcomes.resize(requests.size());

    std::unordered_map<std::string, std::vector<std::size_t>> groups;
    std::vector<const std::string*> visit_order;
    for (std::size_t idx = 0; idx < requests.size(); ++idx) {
        auto [it, inserted] = groups.try_emplace(requests[idx].pid);
        if (inserted) visit_order.push_back(&it->first);
        it->second.push_back(idx);
    }

    for (const std::string* pid : visit_order) {
        ++out.sequences_visited;
        const auto whole = load_whole(*pid);
        for (std::size_t idx : groups[*pid]) {
            const AlignmentRequest& req = requests[idx];
            FetchOutcome& res = out.outcomes[idx];
            if (!whole) {
                res.error = "unknown sequence id '" + *pid + "'";
            } else if (req.len < 1 || req.start < 0 || req.start + req.len > whole->len()) {
                res.error = "alignment [" + std::to_string(req.start) + ", +" +
                            std::to_string(req.len) + ") out of bounds for sequence '" + *pid +
                            "' of length " + std::to_string(whole->len());
            } else {
                res.slice = stored_slice(*pid, whole->values().middleCols(req.start, req.len),
                                         req.start, whole->kind());
            }
        }
    }
    return out;
}

void MemorySequenceStorage::store(const SequenceSlice& s) {
    require_id(s);
    auto [it, inserted] = sequences_.insert_or_assign(s.id(), s);
    if (inserted) order_.push_back(s.id());
}

SequenceSlice MemorySequenceStorage::fetch_slice(const std::string& id, Index i, Index j) const {
    auto it = sequences_.find(id);
    if (it == sequences_.end()) throw DataError("unknown sequence id '" + id + "'");
    check_range(id, i, j, it->second.len());
    return stored_slice(id, it->second.values().middleCols(i, j - i + 1), i, it->second.kind());
}

std::optional<Index> MemorySequenceStorage::length(const std::string& id) const {
    auto it = sequences_.find(id);
    if (it == sequences_.end()) return std::nullopt;
    return it->second.len();
}

std::optional<SequenceSlice> MemorySequenceStorage::load_whole(const std::string& id) const {
    auto it = sequences_.find(id);
    if (it == sequences_.end()) return std::nullopt;
    return it->second;
}

FileSequenceStorage::FileSequenceStorage(std::string path, ComponentKind kind)
    : path_(std::move(path)), kind_(kind) {
    file_ = std::fopen(path_.c_str(), "rb+");
    if (!file_) file_ = std::fopen(path_.c_str(), "wb+");
    if (!file_) throw DataError("cannot open storage file '" + path_ + "'");
    scan_existing();
}

FileSequenceStorage::~FileSequenceStorage() {
    if (file_) std::fclose(file_);
}

void FileSequenceStorage::scan_existing() {
    std::fseek(file_, 0, SEEK_END);
    const long end = std::ftell(file_);
    if (end == 0) {
        std::fwrite(kMagic, 1, 4, file_);
        const std::uint32_t header[2] = {kStorageVersion,
                                         static_cast<std::uint32_t>(kind_.dim())};
        std::fwrite(header, sizeof(std::uint32_t), 2, file_);
        std::fflush(file_);
        return;
    }
    std::fseek(file_, 0, SEEK_SET);
    char magic[4];
    std::uint32_t header[2];
    if (std::fread(magic, 1, 4, file_) != 4 || std::memcmp(magic, kMagic, 4) != 0)
        throw DataError("'" + path_ + "' is not a sequence storage file (bad magic)");
    if (std::fread(header, sizeof(std::uint32_t), 2, file_) != 2)
        throw DataError("storage file '" + path_ + "' truncated header");
    if (header[0] != kStorageVersion)
        throw DataError("unsupported storage version " + std::to_string(header[0]));
    if (static_cast<Index>(header[1]) != kind_.dim())
        throw DataError("storage file dimension " + std::to_string(header[1]) +
                        " does not match component kind dimension " +
                        std::to_string(kind_.dim()));
    while (true) {
        std::uint32_t id_len;
        if (std::fread(&id_len, sizeof(id_len), 1, file_) != 1) break; // EOF
        std::string id(id_len, '\0');
        std::uint32_t count;
        if (std::fread(id.data(), 1, id_len, file_) != id_len ||
            std::fread(&count, sizeof(count), 1, file_) != 1)
            throw DataError("storage file '" + path_ + "' truncated record");
        const long payload = std::ftell(file_);
        Record rec{payload, static_cast<Index>(count)};
        if (std::fseek(file_, static_cast<long>(sizeof(double)) * rec.len * kind_.dim(),
                       SEEK_CUR) != 0)
            throw DataError("storage file '" + path_ + "' truncated record");
        auto [it, inserted] = directory_.insert_or_assign(id, rec);
        (void)it;
        if (inserted) order_.push_back(id);
    }
}

void FileSequenceStorage::store(const SequenceSlice& s) {
    require_id(s);
    if (s.kind() != kind_)
        throw PreconditionError("component kind does not match storage file '" + path_ + "'");
    std::lock_guard<std::mutex> lock(io_mutex_);
    std::fseek(file_, 0, SEEK_END);
    const auto id_len = static_cast<std::uint32_t>(s.id().size());
    const auto count = static_cast<std::uint32_t>(s.len());
    std::fwrite(&id_len, sizeof(id_len), 1, file_);
    std::fwrite(s.id().data(), 1, id_len, file_);
    std::fwrite(&count, sizeof(count), 1, file_);
    const long payload = std::ftell(file_);
    if (s.len() > 0)
        std::fwrite(s.values().data(), sizeof(double),
                    static_cast<std::size_t>(s.len() * kind_.dim()), file_);
    if (std::fflush(file_) != 0) throw DataError("failed to append to '" + path_ + "'");
    auto [it, inserted] = directory_.insert_or_assign(s.id(), Record{payload, s.len()});
    (void)it;
    if (inserted) order_.push_back(s.id());
}

SequenceSlice FileSequenceStorage::read_range(const std::string& id, const Record& rec, Index i,
                                              Index len) const {
    Eigen::MatrixXd values(kind_.dim(), len);
    std::lock_guard<std::mutex> lock(io_mutex_);
    std::fseek(file_, rec.payload + static_cast<long>(sizeof(double)) * i * kind_.dim(),
               SEEK_SET);
    if (std::fread(values.data(), sizeof(double), static_cast<std::size_t>(len * kind_.dim()),
                   file_) != static_cast<std::size_t>(len * kind_.dim()))
        throw DataError("storage file '" + path_ + "' truncated while reading '" + id + "'");
    return stored_slice(id, std::move(values), i, kind_);
}

SequenceSlice FileSequenceStorage::fetch_slice(const std::string& id, Index i, Index j) const {
    auto it = directory_.find(id);
    if (it == directory_.end()) throw DataError("unknown sequence id '" + id + "'");
    check_range(id, i, j, it->second.len);
    return read_range(id, it->second, i, j - i + 1);
}

std::optional<Index> FileSequenceStorage::length(const std::string& id) const {
    auto it = directory_.find(id);
    if (it == directory_.end()) return std::nullopt;
    return it->second.len;
}

std::optional<SequenceSlice> FileSequenceStorage::load_whole(const std::string& id) const {
    auto it = directory_.find(id);
    if (it == directory_.end()) return std::nullopt;
    if (it->second.len == 0) return SequenceSlice(id, Eigen::MatrixXd(kind_.dim(), 0), kind_);
    return read_range(id, it->second, 0, it->second.len);
}

} // namespace smf
