#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "smf/config.hpp"
#include "smf/dataset.hpp"
#include "smf/log.hpp"
#include "smf/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDataConfig = 3;
constexpr int kExitRuntime = 4;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw smf::DataError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw smf::DataError("cannot write '" + path + "'");
    out << content;
}

smf::BindingMap parse_binds(const std::vector<std::string>& binds) {
    smf::BindingMap map;
    for (const std::string& b : binds) {
        const std::size_t eq = b.find('=');
        if (eq == std::string::npos || eq == 0)
            throw smf::ConfigError("--bind expects name=value, got '" + b + "'");
        map[b.substr(0, eq)] = b.substr(eq + 1);
    }
    return map;
}

smf::DatasetFormat parse_format(const std::string& fmt) {
    if (fmt == "id") return smf::DatasetFormat::Id;
    if (fmt == "ucr") return smf::DatasetFormat::Ucr;
    throw smf::DataError("unknown dataset format '" + fmt + "' (expected id or ucr)");
}

// ---------------------------------------------------------------------------
// snapshot (de)serialization

json distance_to_json(const smf::DistanceSpec& spec) {
    json j;
    j["kind"] = smf::to_string(spec.kind);
    j["p"] = spec.p;
    j["band"] = spec.band ? json(*spec.band) : json(nullptr);
    j["gap"] = spec.gap;
    j["eps"] = spec.eps;
    j["delta"] = spec.delta ? json(*spec.delta) : json(nullptr);
    j["segments"] = spec.segments;
    return j;
}

smf::DistanceSpec distance_from_json(const json& j) {
    smf::DistanceSpec spec;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "lp") spec.kind = smf::DistanceKind::Lp;
    else if (kind == "dtw") spec.kind = smf::DistanceKind::Dtw;
    else if (kind == "lb_keogh") spec.kind = smf::DistanceKind::LbKeogh;
    else if (kind == "lb_paa") spec.kind = smf::DistanceKind::LbPaa;
    else if (kind == "erp") spec.kind = smf::DistanceKind::Erp;
    else if (kind == "edr") spec.kind = smf::DistanceKind::Edr;
    else if (kind == "lcss") spec.kind = smf::DistanceKind::Lcss;
    else throw smf::DataError("snapshot: unknown distance kind '" + kind + "'");
    spec.p = j.at("p").get<double>();
    if (!j.at("band").is_null()) spec.band = j.at("band").get<smf::Index>();
    spec.gap = j.at("gap").get<double>();
    spec.eps = j.at("eps").get<double>();
    if (!j.at("delta").is_null()) spec.delta = j.at("delta").get<smf::Index>();
    spec.segments = j.at("segments").get<smf::Index>();
    return spec;
}

void save_snapshot(const smf::Pipeline& pipeline, const std::string& dir) {
    const smf::PipelineSkeleton& sk = pipeline.skeleton();
    fs::create_directories(dir);

    json meta;
    meta["version"] = 1;
    meta["w"] = sk.w;
    meta["data_slicer"] = smf::to_string(sk.data_slicer.kind);
    meta["query_slicer"] = smf::to_string(sk.query_slicer.kind);
    meta["transform"] = {{"kind", smf::to_string(sk.transformer.kind)},
                         {"out_size", sk.transformer.out_size}};
    meta["refine"] = distance_to_json(sk.refine_distance);
    meta["window_distance"] = distance_to_json(sk.window_distance);
    meta["component"] = {{"dim", sk.kind.dim()}, {"p", sk.kind.p()}};
    meta["index"] = dynamic_cast<const smf::PivotTableIndex*>(sk.window_index.get()) != nullptr
                        ? "pivot"
                        : "linear";
    {
        std::ofstream out(fs::path(dir) / "meta.json");
        out << meta.dump(2) << "\n";
        if (!out) throw smf::DataError("cannot write snapshot meta to '" + dir + "'");
    }
    {
        std::ofstream out(fs::path(dir) / "index.bin", std::ios::binary);
        sk.window_index->save_snapshot(out);
    }
    {
        const fs::path storage_path = fs::path(dir) / "storage.bin";
        fs::remove(storage_path);
        smf::FileSequenceStorage file_storage(storage_path.string(), sk.kind);
        for (const std::string& id : sk.storage->ids()) {
            const auto len = sk.storage->length(id);
            file_storage.store(sk.storage->fetch_slice(id, 0, *len - 1));
        }
    }
}

std::shared_ptr<smf::Pipeline> load_snapshot(const std::string& dir) {
    const json meta = json::parse(read_file((fs::path(dir) / "meta.json").string()));

    smf::PipelineSkeleton sk;
    sk.w = meta.at("w").get<smf::Index>();
    auto slicer_of = [&](const std::string& key) {
        const std::string kind = meta.at(key).get<std::string>();
        return smf::WindowConfig(sk.w, kind == "sliding" ? smf::SlicerKind::Sliding
                                                         : smf::SlicerKind::Disjoint);
    };
    sk.data_slicer = slicer_of("data_slicer");
    sk.query_slicer = slicer_of("query_slicer");

    const std::string tkind = meta.at("transform").at("kind").get<std::string>();
    const auto out_size = meta.at("transform").at("out_size").get<smf::Index>();
    if (tkind == "identity") sk.transformer = smf::TransformSpec::identity();
    else if (tkind == "dft") sk.transformer = smf::TransformSpec::dft(out_size);
    else if (tkind == "paa") sk.transformer = smf::TransformSpec::paa(out_size);
    else throw smf::DataError("snapshot: unknown transform kind '" + tkind + "'");

    sk.refine_distance = distance_from_json(meta.at("refine"));
    const smf::DistanceSpec window_distance = distance_from_json(meta.at("window_distance"));
    const auto dim = meta.at("component").at("dim").get<smf::Index>();
    sk.kind = dim == 1 ? smf::ComponentKind::scalar()
                       : smf::ComponentKind::vector(dim, meta.at("component").at("p").get<double>());

    const smf::IndexDistance index_distance = smf::IndexDistance::from_spec(window_distance);
    std::shared_ptr<smf::DistanceIndex> index;
    if (meta.at("index").get<std::string>() == "pivot")
        index = std::make_shared<smf::PivotTableIndex>(index_distance);
    else
        index = std::make_shared<smf::LinearScanIndex>(index_distance);
    {
        std::ifstream in(fs::path(dir) / "index.bin", std::ios::binary);
        if (!in) throw smf::DataError("cannot open index snapshot in '" + dir + "'");
        for (auto& item : smf::DistanceIndex::load_snapshot(in)) index->insert(std::move(item));
    }
    index->build();
    sk.window_index = index;
    sk.storage = std::make_shared<smf::FileSequenceStorage>(
        (fs::path(dir) / "storage.bin").string(), sk.kind);

    return std::make_shared<smf::Pipeline>(std::move(sk));
}

// ---------------------------------------------------------------------------
// shared command state

struct PipelineOptions {
    std::string config_path;
    std::string snapshot_dir;
    std::string data_path;
    std::string format = "id";
    std::vector<std::string> binds;
};

struct IngestReport {
    std::size_t sequences = 0;
    std::size_t skipped = 0;
    smf::Index windows = 0;
};

IngestReport ingest_dataset(smf::Pipeline& pipeline, const std::string& data_path,
                            smf::DatasetFormat format) {
    const smf::Dataset dataset = smf::load_dataset(data_path, format);
    IngestReport report;
    for (const smf::SequenceSlice& s : dataset.sequences) {
        try {
            report.windows += pipeline.index_sequence(s);
            ++report.sequences;
        } catch (const smf::Error& e) {
            smf::log::warn(std::string("skipping '") + s.id() + "': " + e.what());
            ++report.skipped;
        }
    }
    pipeline.skeleton().window_index->build();
    return report;
}

std::shared_ptr<smf::Pipeline> open_pipeline(const PipelineOptions& opts,
                                             IngestReport* report = nullptr) {
    if (!opts.snapshot_dir.empty()) return load_snapshot(opts.snapshot_dir);
    if (opts.config_path.empty())
        throw smf::ConfigError("either --config with --data or --snapshot is required");
    auto pipeline = smf::instantiate(smf::parse_config(read_file(opts.config_path)),
                                     smf::ModuleRegistry::builtin(), parse_binds(opts.binds));
    if (opts.data_path.empty())
        throw smf::ConfigError("--config queries need --data to ingest first");
    IngestReport r = ingest_dataset(*pipeline, opts.data_path, parse_format(opts.format));
    if (report) *report = r;
    return pipeline;
}

struct QuerySpec {
    std::string query;      // id:offset:len into ingested data
    std::string query_file; // dataset file holding exactly one sequence
};

smf::SequenceSlice resolve_query(const smf::Pipeline& pipeline, const QuerySpec& spec,
                                 smf::DatasetFormat format) {
    if (!spec.query_file.empty()) {
        const smf::Dataset ds = smf::load_dataset(spec.query_file, format);
        if (ds.sequences.size() != 1)
            throw smf::DataError("query file must contain exactly one sequence (got " +
                                 std::to_string(ds.sequences.size()) + "); use bench for batches");
        return ds.sequences[0];
    }
    // id:offset:len, split from the right so ids may contain ':'
    const std::size_t c2 = spec.query.rfind(':');
    const std::size_t c1 = c2 == std::string::npos ? std::string::npos
                                                   : spec.query.rfind(':', c2 - 1);
    if (c1 == std::string::npos || c1 == 0)
        throw smf::DataError("--query expects id:offset:len, got '" + spec.query + "'");
    const std::string id = spec.query.substr(0, c1);
    smf::Index offset = 0;
    smf::Index len = 0;
    try {
        offset = std::stoll(spec.query.substr(c1 + 1, c2 - c1 - 1));
        len = std::stoll(spec.query.substr(c2 + 1));
    } catch (const std::exception&) {
        throw smf::DataError("--query expects numeric offset and len in '" + spec.query + "'");
    }
    if (len < 1) throw smf::DataError("--query len must be >= 1");
    return pipeline.skeleton().storage->fetch_slice(id, offset, offset + len - 1);
}

json query_descriptor(const QuerySpec& spec, const smf::SequenceSlice& q) {
    json j;
    j["id"] = spec.query_file.empty() ? q.root_id() : q.id();
    j["offset"] = q.offset();
    j["len"] = q.len();
    return j;
}

std::string matches_json(const std::vector<smf::MatchResult>& matches) {
    std::string out = "[";
    for (std::size_t i = 0; i < matches.size(); ++i) {
        if (i > 0) out += ", ";
        out += "{\"distance\": " + fmt_double(matches[i].distance) + ", \"pid\": \"" +
               json_escape(matches[i].pid) + "\", \"start\": " +
               std::to_string(matches[i].start) + "}";
    }
    return out + "]";
}

// Deterministic serialization: keys sorted, doubles at 17 significant digits.
std::string range_answer_json(const json& query, double eps, const smf::SearchAnswer& answer) {
    std::string out = "{\"eps\": " + fmt_double(eps);
    out += ", \"exact\": " + std::string(answer.exact ? "true" : "false");
    out += ", \"matches\": " + matches_json(answer.matches);
    out += ", \"query\": {\"id\": \"" + json_escape(query.at("id").get<std::string>()) +
           "\", \"len\": " + std::to_string(query.at("len").get<smf::Index>()) +
           ", \"offset\": " + std::to_string(query.at("offset").get<smf::Index>()) + "}}\n";
    return out;
}

std::string knn_answer_json(const json& query, smf::Index k, smf::Index multiplier,
                            const smf::SearchAnswer& answer) {
    std::string out = "{\"exact\": " + std::string(answer.exact ? "true" : "false");
    out += ", \"k\": " + std::to_string(k);
    out += ", \"matches\": " + matches_json(answer.matches);
    out += ", \"multiplier\": " + std::to_string(multiplier);
    out += ", \"query\": {\"id\": \"" + json_escape(query.at("id").get<std::string>()) +
           "\", \"len\": " + std::to_string(query.at("len").get<smf::Index>()) +
           ", \"offset\": " + std::to_string(query.at("offset").get<smf::Index>()) + "}}\n";
    return out;
}

// ---------------------------------------------------------------------------
// bench

struct BenchRow {
    std::string config;
    double ingest_ms = 0.0;
    double query_ms = 0.0;
    std::size_t queries = 0;
    std::size_t refine_calls = 0;
    std::uint64_t index_evals = 0;
    double avg_candidates = 0.0;
    double avg_matches = 0.0;
    bool exact_vs_brute = true;
    double recall = 1.0;
    bool reported_exact = true;
};

bool same_matches(const std::vector<smf::MatchResult>& a,
                  const std::vector<smf::MatchResult>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].pid != b[i].pid || a[i].start != b[i].start) return false;
        if (std::abs(a[i].distance - b[i].distance) > 1e-9) return false;
    }
    return true;
}

void run_bench(const std::vector<std::string>& config_paths, const std::string& data_path,
               const std::string& queries_path, const std::string& format,
               const std::vector<std::string>& binds, double eps, smf::Index k,
               smf::Index multiplier, bool knn_mode) {
    using clock = std::chrono::steady_clock;
    const smf::DatasetFormat fmt = parse_format(format);
    const smf::Dataset queries = smf::load_dataset(queries_path, fmt);
    std::vector<BenchRow> rows;

    for (const std::string& config_path : config_paths) {
        BenchRow row;
        row.config = fs::path(config_path).filename().string();

        auto t0 = clock::now();
        auto pipeline = smf::instantiate(smf::parse_config(read_file(config_path)),
                                         smf::ModuleRegistry::builtin(), parse_binds(binds));
        IngestReport report = ingest_dataset(*pipeline, data_path, fmt);
        row.ingest_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
        smf::log::info(row.config + ": ingested " + std::to_string(report.sequences) +
                       " sequences, " + std::to_string(report.windows) + " windows");

        const smf::PipelineSkeleton& sk = pipeline->skeleton();
        double recall_sum = 0.0;
        std::size_t recall_n = 0;
        t0 = clock::now();
        for (const smf::SequenceSlice& q : queries.sequences) {
            if (q.len() < pipeline->min_query_len()) {
                smf::log::warn(row.config + ": query '" + q.id() + "' shorter than " +
                               std::to_string(pipeline->min_query_len()) + ", skipped");
                continue;
            }
            const smf::SearchAnswer answer = knn_mode ? pipeline->knn_search(q, k, multiplier)
                                                      : pipeline->range_search(q, eps);
            ++row.queries;
            row.refine_calls += answer.stats.refine_calls;
            row.index_evals += answer.stats.index_distance_evals;
            row.avg_candidates += static_cast<double>(answer.stats.candidates);
            row.avg_matches += static_cast<double>(answer.matches.size());
            row.reported_exact = row.reported_exact && answer.exact;

            if (knn_mode) {
                const auto truth = smf::brute_force_knn(*sk.storage, sk.refine_distance, q, k);
                std::set<std::pair<std::string, smf::Index>> truth_keys;
                for (const auto& m : truth) truth_keys.insert({m.pid, m.start});
                std::size_t found = 0;
                for (const auto& m : answer.matches)
                    if (truth_keys.count({m.pid, m.start})) ++found;
                if (!truth.empty()) {
                    recall_sum += static_cast<double>(found) / static_cast<double>(truth.size());
                    ++recall_n;
                }
                row.exact_vs_brute = row.exact_vs_brute && same_matches(answer.matches, truth);
            } else {
                const auto truth = smf::brute_force_range(*sk.storage, sk.refine_distance, q, eps);
                row.exact_vs_brute = row.exact_vs_brute && same_matches(answer.matches, truth);
            }
        }
        row.query_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
        if (row.queries > 0) {
            row.avg_candidates /= static_cast<double>(row.queries);
            row.avg_matches /= static_cast<double>(row.queries);
        }
        row.recall = recall_n > 0 ? recall_sum / static_cast<double>(recall_n) : 1.0;
        rows.push_back(row);
    }

    std::printf("%-24s %10s %10s %8s %12s %12s %12s %10s %8s %8s\n", "config", "ingest_ms",
                "query_ms", "queries", "refine_calls", "index_evals", "candidates", "matches",
                knn_mode ? "recall" : "exact", "claims");
    for (const BenchRow& row : rows) {
        std::printf("%-24s %10.1f %10.1f %8zu %12zu %12llu %12.1f %10.1f %8s %8s\n",
                    row.config.c_str(), row.ingest_ms, row.query_ms, row.queries,
                    row.refine_calls, static_cast<unsigned long long>(row.index_evals),
                    row.avg_candidates, row.avg_matches,
                    knn_mode ? fmt_double(row.recall).substr(0, 6).c_str()
                             : (row.exact_vs_brute ? "true" : "false"),
                    row.reported_exact ? "exact" : "approx");
    }
}

// ---------------------------------------------------------------------------
// export

std::string export_csv(const smf::Pipeline& pipeline, const smf::SequenceSlice& q,
                       const std::vector<smf::MatchResult>& matches) {
    std::vector<smf::AlignmentRequest> requests;
    requests.reserve(matches.size());
    for (const auto& m : matches) requests.push_back({m.pid, m.start, q.len()});
    const smf::GroupedFetch fetched = pipeline.skeleton().storage->grouped_fetch(requests);

    std::string out = "t,query";
    for (std::size_t i = 0; i < matches.size(); ++i) {
        char head[128];
        std::snprintf(head, sizeof(head), "%s@%lld(d=%.6g)", matches[i].pid.c_str(),
                      static_cast<long long>(matches[i].start), matches[i].distance);
        out += ",";
        out += head;
    }
    out += "\n";
    for (smf::Index t = 0; t < q.len(); ++t) {
        out += std::to_string(t) + "," + fmt_double(q.values()(0, t));
        for (const auto& outcome : fetched.outcomes)
            out += "," + (outcome.ok() ? fmt_double(outcome.slice->values()(0, t)) : "");
        out += "\n";
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"subsequence matching framework"};
    app.require_subcommand(1);

    PipelineOptions opts;
    QuerySpec query_spec;
    std::string out_path = "-";
    std::string snapshot_out;
    double eps = 0.0;
    smf::Index k = 1;
    smf::Index multiplier = 4;

    auto add_pipeline_flags = [&](CLI::App* cmd, bool allow_snapshot) {
        cmd->add_option("--config", opts.config_path, "pipeline configuration file");
        cmd->add_option("--bind", opts.binds, "placeholder binding name=value (repeatable)");
        cmd->add_option("--data", opts.data_path, "dataset file to ingest");
        cmd->add_option("--format", opts.format, "dataset format: id or ucr")
            ->check(CLI::IsMember({"id", "ucr"}));
        if (allow_snapshot)
            cmd->add_option("--snapshot", opts.snapshot_dir, "snapshot directory to load");
    };
    auto add_query_flags = [&](CLI::App* cmd) {
        cmd->add_option("--query", query_spec.query, "query subsequence as id:offset:len");
        cmd->add_option("--query-file", query_spec.query_file,
                        "dataset file holding exactly one query sequence");
        cmd->add_option("--out", out_path, "output file ('-' = stdout)");
    };

    CLI::App* ingest = app.add_subcommand("ingest", "ingest a dataset through a configuration");
    add_pipeline_flags(ingest, false);
    ingest->add_option("--snapshot", snapshot_out, "directory to write the snapshot into");

    CLI::App* query_range = app.add_subcommand("query-range", "exact range search");
    add_pipeline_flags(query_range, true);
    add_query_flags(query_range);
    query_range->add_option("--eps", eps, "range radius")->required();

    CLI::App* query_knn = app.add_subcommand("query-knn", "approximate k nearest alignments");
    add_pipeline_flags(query_knn, true);
    add_query_flags(query_knn);
    query_knn->add_option("--k", k, "result count")->required();
    query_knn->add_option("--mult", multiplier, "candidate multiplier");

    std::vector<std::string> bench_configs;
    std::string queries_path;
    bool bench_knn = false;
    CLI::App* bench = app.add_subcommand("bench", "compare configurations on one workload");
    bench->add_option("--config", bench_configs, "configuration file (repeatable)")->required();
    bench->add_option("--data", opts.data_path, "dataset file")->required();
    bench->add_option("--queries", queries_path, "query dataset file")->required();
    bench->add_option("--bind", opts.binds, "placeholder binding name=value");
    bench->add_option("--format", opts.format, "dataset format: id or ucr")
        ->check(CLI::IsMember({"id", "ucr"}));
    bench->add_option("--eps", eps, "range radius (range mode)");
    bench->add_option("--k", k, "result count (knn mode)");
    bench->add_option("--mult", multiplier, "candidate multiplier (knn mode)");
    bench->add_flag("--knn", bench_knn, "benchmark knn_search instead of range_search");

    CLI::App* export_cmd =
        app.add_subcommand("export", "write query and matched subsequences as CSV columns");
    add_pipeline_flags(export_cmd, true);
    add_query_flags(export_cmd);
    export_cmd->add_option("--eps", eps, "range radius (range mode)");
    export_cmd->add_option("--k", k, "result count (knn mode)");
    export_cmd->add_flag("--knn", bench_knn, "export knn results instead of a range search");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (ingest->parsed()) {
            IngestReport report;
            auto pipeline = open_pipeline(opts, &report);
            const smf::PipelineSkeleton& sk = pipeline->skeleton();
            std::printf("sequences indexed: %zu (skipped: %zu)\n", report.sequences,
                        report.skipped);
            std::printf("windows indexed:   %lld (w=%lld, %s data slicer, %s transform)\n",
                        static_cast<long long>(report.windows), static_cast<long long>(sk.w),
                        smf::to_string(sk.data_slicer.kind).c_str(),
                        smf::to_string(sk.transformer.kind).c_str());
            std::printf("skeleton:          %s, refine %s, %s\n",
                        pipeline->is_frm() ? "FRM" : "DualMatch",
                        smf::to_string(sk.refine_distance.kind).c_str(),
                        pipeline->exact_range_guarantee() ? "exact range guarantee"
                                                          : "heuristic range mode");
            if (!snapshot_out.empty()) {
                save_snapshot(*pipeline, snapshot_out);
                std::printf("snapshot written:  %s\n", snapshot_out.c_str());
            }
        } else if (query_range->parsed()) {
            auto pipeline = open_pipeline(opts);
            const smf::SequenceSlice q =
                resolve_query(*pipeline, query_spec, parse_format(opts.format));
            const smf::SearchAnswer answer = pipeline->range_search(q, eps);
            write_output(out_path,
                         range_answer_json(query_descriptor(query_spec, q), eps, answer));
        } else if (query_knn->parsed()) {
            auto pipeline = open_pipeline(opts);
            const smf::SequenceSlice q =
                resolve_query(*pipeline, query_spec, parse_format(opts.format));
            const smf::SearchAnswer answer = pipeline->knn_search(q, k, multiplier);
            write_output(out_path,
                         knn_answer_json(query_descriptor(query_spec, q), k, multiplier, answer));
        } else if (bench->parsed()) {
            if (bench_knn && bench->count("--eps"))
                throw smf::ConfigError("bench: use either --eps or --knn with --k");
            run_bench(bench_configs, opts.data_path, queries_path, opts.format, opts.binds, eps,
                      k, multiplier, bench_knn);
        } else if (export_cmd->parsed()) {
            auto pipeline = open_pipeline(opts);
            const smf::SequenceSlice q =
                resolve_query(*pipeline, query_spec, parse_format(opts.format));
            const smf::SearchAnswer answer =
                bench_knn ? pipeline->knn_search(q, k, multiplier) : pipeline->range_search(q, eps);
            write_output(out_path, export_csv(*pipeline, q, answer.matches));
        }
    } catch (const smf::ConfigError& e) {
        std::fprintf(stderr, "smf: %s\n", e.what());
        return kExitDataConfig;
    } catch (const smf::DataError& e) {
        std::fprintf(stderr, "smf: %s\n", e.what());
        return kExitDataConfig;
    } catch (const smf::Error& e) {
        std::fprintf(stderr, "smf: %s\n", e.what());
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "smf: %s\n", e.what());
        return kExitRuntime;
    }
    return 0;
}
