#include "bbqaoa/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "bbqaoa/errors.hpp"
#include "bbqaoa/sat_instance.hpp"
#include "bbqaoa/text.hpp"

#ifndef BBQAOA_VERSION
#define BBQAOA_VERSION "unknown"
#endif

namespace bbqaoa {

namespace {

constexpr std::string_view kRecordsHeader = "T,sample,seed,initial_obj,final_obj,accepted_updates,evaluations,protocol";
constexpr std::string_view kAggregateHeader = "T,p5,p25,p50,p75,p95,base_p50,correlator,mean_iterations";
constexpr std::size_t kMedian = 2;  // index of 50 in kPercentiles

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        fields.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return fields;
        }
        start = pos + 1;
    }
}

std::uint64_t parse_unsigned(std::string_view text)
{
    std::uint64_t value = 0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size() || text.empty()) {
        throw ArgumentError("not an unsigned integer: \"" + std::string(text) + "\"");
    }
    return value;
}

std::array<double, 5> percentiles_of(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    std::array<double, 5> out{};
    for (std::size_t i = 0; i < kPercentiles.size(); ++i) {
        out[i] = percentile(values, kPercentiles[i]);
    }
    return out;
}

}  // namespace

std::vector<double> default_time_grid()
{
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) {
        grid.push_back(0.25 * i);
    }
    return grid;
}

void validate(const SweepConfig& config)
{
    if (config.time_grid.empty()) {
        throw ArgumentError("sweep: time grid is empty");
    }
    for (std::size_t i = 0; i < config.time_grid.size(); ++i) {
        const double t = config.time_grid[i];
        if (!std::isfinite(t) || t < 0.0) {
            throw ArgumentError("sweep: time grid entries must be finite and nonnegative");
        }
        if (i > 0 && !(t > config.time_grid[i - 1])) {
            throw ArgumentError("sweep: time grid must be strictly increasing");
        }
    }
    if (config.samples_per_time < 1) {
        throw ArgumentError("sweep: samples_per_time must be at least 1");
    }
    if (config.n_blocks < 1) {
        throw ArgumentError("sweep: n_blocks must be at least 1");
    }
    if (config.k < 1 || config.k > config.n_blocks) {
        throw ArgumentError("sweep: k must lie in [1, n_blocks]");
    }
    if (config.parallelism < 1) {
        throw ArgumentError("sweep: parallelism must be at least 1");
    }
}

std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t time_index, std::size_t sample)
{
    return derive_seed(master_seed, time_index, sample);
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config)
{
    validate(config);
    const auto instance = load_instance(config.instance_path);
    const auto diag = build_diagonal(instance);
    const int c_max = brute_force_cmax(instance);
    if (c_max == 0) {
        throw ArgumentError("sweep: instance has no clauses");
    }
    const InitDistribution dist{config.init};

    const std::size_t total = config.time_grid.size() * config.samples_per_time;
    std::vector<SweepRecord> records(total);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        while (true) {
            const std::size_t cell = next.fetch_add(1);
            if (cell >= total) {
                return;
            }
            try {
                const std::size_t t_index = cell / config.samples_per_time;
                const std::size_t sample = cell % config.samples_per_time;
                const double t = config.time_grid[t_index];
                const auto seed = cell_seed(config.master_seed, t_index, sample);

                Rng rng(seed);
                const auto initial = sample_initial(dist, config.n_blocks, t, rng);
                const auto sd = stochastic_descent(initial, config.k, diag, c_max, rng);

                auto& rec = records[cell];
                rec.total_time = t;
                rec.sample = sample;
                rec.seed = seed;
                rec.initial_objective = sd.objective_trajectory.front();
                rec.final_objective = sd.final_objective;
                rec.accepted_updates = sd.accepted_updates;
                rec.evaluations = sd.evaluations;
                rec.protocol = sd.final_protocol.to_string();
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(total);
                return;
            }
        }
    };

    const unsigned n_workers = std::min<std::size_t>(config.parallelism, total);
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (unsigned i = 0; i < n_workers; ++i) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return records;
}

double percentile(std::span<const double> sorted_values, double q)
{
    if (sorted_values.empty()) {
        throw ArgumentError("percentile: no values");
    }
    if (!(q >= 0.0 && q <= 100.0)) {
        throw ArgumentError("percentile: q must lie in [0, 100]");
    }
    const double h = static_cast<double>(sorted_values.size() - 1) * q / 100.0;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted_values.size()) {
        return sorted_values.back();
    }
    const double frac = h - static_cast<double>(lo);
    return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo]);
}

std::vector<AggregateRow> aggregate(std::span<const SweepRecord> records)
{
    if (records.empty()) {
        throw ArgumentError("aggregate: no records");
    }
    std::map<double, std::vector<const SweepRecord*>> groups;
    for (const auto& r : records) {
        groups[r.total_time].push_back(&r);
    }

    std::vector<AggregateRow> rows;
    rows.reserve(groups.size());
    for (auto& [t, group] : groups) {
        std::sort(group.begin(), group.end(),
                  [](const SweepRecord* a, const SweepRecord* b) { return a->sample < b->sample; });
        std::vector<double> finals;
        std::vector<double> initials;
        std::vector<Protocol> protocols;
        double iterations = 0.0;
        for (const auto* r : group) {
            finals.push_back(r->final_objective);
            initials.push_back(r->initial_objective);
            protocols.push_back(Protocol::from_string(r->protocol, t));
            iterations += static_cast<double>(r->accepted_updates);
        }
        AggregateRow row;
        row.total_time = t;
        row.samples = group.size();
        row.final_percentiles = percentiles_of(std::move(finals));
        row.initial_percentiles = percentiles_of(std::move(initials));
        row.correlator = correlator(protocols);
        row.mean_iterations = iterations / static_cast<double>(group.size());
        rows.push_back(row);
    }
    return rows;
}

std::string records_to_csv(std::span<const SweepRecord> records)
{
    std::ostringstream out;
    out << kRecordsHeader << '\n';
    for (const auto& r : records) {
        out << format_double(r.total_time) << ',' << r.sample << ',' << r.seed << ','
            << format_double(r.initial_objective) << ',' << format_double(r.final_objective) << ','
            << r.accepted_updates << ',' << r.evaluations << ',' << r.protocol << '\n';
    }
    return out.str();
}

std::vector<SweepRecord> records_from_csv(std::string_view text)
{
    std::vector<SweepRecord> records;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        auto line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line_no == 1) {
            if (line != kRecordsHeader) {
                throw ParseError("records file: unexpected header \"" + std::string(line) + "\"", 1, 1);
            }
            continue;
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 8) {
            throw ParseError("records file: expected 8 fields, got " + std::to_string(fields.size()), line_no, 1);
        }
        try {
            SweepRecord r;
            r.total_time = parse_double(fields[0]);
            r.sample = parse_unsigned(fields[1]);
            r.seed = parse_unsigned(fields[2]);
            r.initial_objective = parse_double(fields[3]);
            r.final_objective = parse_double(fields[4]);
            r.accepted_updates = parse_unsigned(fields[5]);
            r.evaluations = parse_unsigned(fields[6]);
            r.protocol = std::string(fields[7]);
            Protocol::from_string(r.protocol, r.total_time);
            records.push_back(std::move(r));
        } catch (const ArgumentError& e) {
            throw ParseError(std::string("records file: ") + e.what(), line_no, 1);
        }
    }
    if (line_no == 0) {
        throw ParseError("records file: empty", 1, 1);
    }
    return records;
}

std::string aggregate_to_csv(std::span<const AggregateRow> rows)
{
    std::ostringstream out;
    out << kAggregateHeader << '\n';
    for (const auto& row : rows) {
        out << format_double(row.total_time);
        for (const double p : row.final_percentiles) {
            out << ',' << format_double(p);
        }
        out << ',' << format_double(row.initial_percentiles[kMedian]) << ',' << format_double(row.correlator) << ','
            << format_double(row.mean_iterations) << '\n';
    }
    return out.str();
}

std::string manifest_json(const SweepConfig& config, std::string_view instance_checksum)
{
    nlohmann::ordered_json doc;
    doc["tool"] = "bbqaoa";
    doc["version"] = BBQAOA_VERSION;
    doc["instance_path"] = config.instance_path;
    doc["instance_checksum"] = std::string(instance_checksum);
    doc["checksum_algorithm"] = "fnv1a-64";
    doc["n_blocks"] = config.n_blocks;
    doc["time_grid"] = config.time_grid;
    doc["samples_per_time"] = config.samples_per_time;
    doc["init"] = to_string(config.init);
    doc["k"] = config.k;
    doc["master_seed"] = config.master_seed;
    doc["seed_scheme"] = "cell seed = mix64(mix64(mix64(master_seed) ^ time_index) ^ sample), mix64 = splitmix64; "
                         "engine mt19937_64";
    doc["parallelism"] = config.parallelism;
    doc["output_path"] = config.output_path;
    doc["percentiles"] = kPercentiles;
    doc["percentile_method"] = "linear interpolation between closest ranks, h = (n - 1) q / 100";
    doc["aggregate_columns"] = kAggregateHeader;
    return doc.dump(2) + "\n";
}

SweepConfig config_from_manifest(const std::string& manifest_path)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(manifest_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(manifest_path + ": malformed manifest: " + e.what(), 1, e.byte);
    }
    SweepConfig config;
    try {
        config.instance_path = doc.at("instance_path").get<std::string>();
        config.n_blocks = doc.at("n_blocks").get<std::size_t>();
        config.time_grid = doc.at("time_grid").get<std::vector<double>>();
        config.samples_per_time = doc.at("samples_per_time").get<std::size_t>();
        config.init = parse_init_kind(doc.at("init").get<std::string>());
        config.k = doc.at("k").get<std::size_t>();
        config.master_seed = doc.at("master_seed").get<std::uint64_t>();
        config.parallelism = doc.at("parallelism").get<unsigned>();
        config.output_path = doc.at("output_path").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(manifest_path + ": incomplete manifest: " + e.what(), 1, 1);
    }
    const auto expected = doc.at("instance_checksum").get<std::string>();
    const auto actual = checksum_hex(read_file(config.instance_path));
    if (expected != actual) {
        throw ChecksumError("instance checksum mismatch for " + config.instance_path + ": manifest has " + expected
                            + ", file has " + actual);
    }
    validate(config);
    return config;
}

PersistedPaths persist(std::span<const AggregateRow> rows, std::span<const SweepRecord> records,
                       const SweepConfig& config)
{
    const std::filesystem::path dir(config.output_path);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    PersistedPaths paths{dir / "records.csv", dir / "aggregate.csv", dir / "manifest.json"};
    write_file(paths.records, records_to_csv(records));
    write_file(paths.aggregate, aggregate_to_csv(rows));
    write_file(paths.manifest, manifest_json(config, checksum_hex(read_file(config.instance_path))));
    return paths;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << contents;
    if (!out.flush()) {
        throw IoError("write failed: " + path.string());
    }
}

}  // namespace bbqaoa
