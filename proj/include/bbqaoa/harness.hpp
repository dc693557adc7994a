#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bbqaoa/optimizer.hpp"

namespace bbqaoa {

// Replay found an instance file whose contents differ from the manifest.
class ChecksumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::array<double, 5> kPercentiles = {5.0, 25.0, 50.0, 75.0, 95.0};

// 0.0, 0.25, ..., 10.0
std::vector<double> default_time_grid();

struct SweepConfig {
    std::string instance_path;
    std::size_t n_blocks = 200;
    std::vector<double> time_grid = default_time_grid();
    std::size_t samples_per_time = 10000;
    InitKind init = InitKind::uniform;
    std::size_t k = 1;
    std::uint64_t master_seed = 0;
    std::string output_path;  // directory receiving records.csv, aggregate.csv, manifest.json
    unsigned parallelism = 1;
};

// Throws ArgumentError on an empty, negative or non-increasing time grid,
// zero samples, zero blocks, k outside [1, n_blocks] or zero parallelism.
void validate(const SweepConfig& config);

struct SweepRecord {
    double total_time = 0.0;
    std::size_t sample = 0;
    std::uint64_t seed = 0;
    double initial_objective = 0.0;
    double final_objective = 0.0;
    std::size_t accepted_updates = 0;
    std::size_t evaluations = 0;
    std::string protocol;  // final protocol, E/X form

    friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

struct AggregateRow {
    double total_time = 0.0;
    std::size_t samples = 0;
    std::array<double, 5> final_percentiles{};    // at kPercentiles
    std::array<double, 5> initial_percentiles{};  // same, before descent
    double correlator = 0.0;                      // over final protocols
    double mean_iterations = 0.0;                 // mean accepted updates
};

// Seed of cell (time index, sample index).
std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t time_index, std::size_t sample);

// One SD_k run per (T, sample) cell, distributed over config.parallelism
// worker threads. Records come back ordered by (time index, sample) and do
// not depend on the worker count.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

// Linear interpolation between closest ranks: h = (n - 1) q / 100.
double percentile(std::span<const double> sorted_values, double q);

// Groups by T (ascending). Throws ArgumentError on empty input.
std::vector<AggregateRow> aggregate(std::span<const SweepRecord> records);

std::string records_to_csv(std::span<const SweepRecord> records);
std::vector<SweepRecord> records_from_csv(std::string_view text);

// Columns: T,p5,p25,p50,p75,p95,base_p50,correlator,mean_iterations
std::string aggregate_to_csv(std::span<const AggregateRow> rows);

std::string manifest_json(const SweepConfig& config, std::string_view instance_checksum);

// Reads a manifest and re-checks the instance checksum; ChecksumError on mismatch.
SweepConfig config_from_manifest(const std::string& manifest_path);

struct PersistedPaths {
    std::filesystem::path records;
    std::filesystem::path aggregate;
    std::filesystem::path manifest;
};

// Writes records.csv, aggregate.csv and manifest.json into config.output_path.
PersistedPaths persist(std::span<const AggregateRow> rows, std::span<const SweepRecord> records,
                       const SweepConfig& config);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace bbqaoa
