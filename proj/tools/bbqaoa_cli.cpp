// bbqaoa: command-line front end for bang-bang QAOA on MAX-2-SAT.
//
// Exit codes: 0 success, 2 invalid flags or arguments, 1 runtime failure
// (I/O, malformed input files, checksum mismatch). Data goes to stdout,
// diagnostics to stderr.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bbqaoa/errors.hpp"
#include "bbqaoa/harness.hpp"
#include "bbqaoa/optimizer.hpp"
#include "bbqaoa/protocol.hpp"
#include "bbqaoa/sat_instance.hpp"
#include "bbqaoa/text.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

std::string describe_angles(const bbqaoa::QaoaAngles& angles)
{
    std::ostringstream out;
    out << "p=" << angles.p();
    for (const auto& layer : angles.layers) {
        out << " (" << bbqaoa::format_double(layer.gamma) << ", " << bbqaoa::format_double(layer.beta) << ")";
    }
    return out.str();
}

std::string join_values(const std::vector<double>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += bbqaoa::format_double(values[i]);
    }
    return out;
}

struct GenerateArgs {
    int n_vars = 0;
    int n_clauses = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int run_generate(const GenerateArgs& args)
{
    bbqaoa::Rng rng(args.seed);
    const auto instance = bbqaoa::random_instance(args.n_vars, args.n_clauses, rng);
    bbqaoa::save_instance(instance, args.out);
    std::cout << "c_max=" << bbqaoa::brute_force_cmax(instance) << "\n";
    return 0;
}

struct OptimizeArgs {
    std::string instance;
    std::optional<std::size_t> blocks;
    double time = 0.0;
    std::string init = "uniform";
    std::size_t k = 1;
    std::uint64_t seed = 0;
    std::optional<std::string> protocol;
};

int run_optimize(const OptimizeArgs& args)
{
    const auto instance = bbqaoa::load_instance(args.instance);
    const auto diag = bbqaoa::build_diagonal(instance);
    const int c_max = bbqaoa::brute_force_cmax(instance);
    if (c_max == 0) {
        throw bbqaoa::ArgumentError("instance has no clauses");
    }
    const auto init = bbqaoa::parse_init_kind(args.init);

    bbqaoa::Rng rng(args.seed);
    std::optional<bbqaoa::Protocol> initial;
    if (args.protocol) {
        initial = bbqaoa::Protocol::from_string(*args.protocol, args.time);
        if (args.blocks && *args.blocks != initial->n_blocks()) {
            throw bbqaoa::ArgumentError("--blocks " + std::to_string(*args.blocks) + " does not match --protocol length "
                                        + std::to_string(initial->n_blocks()));
        }
    } else {
        initial = bbqaoa::sample_initial(bbqaoa::InitDistribution{init}, args.blocks.value_or(200), args.time, rng);
    }
    const auto result = bbqaoa::stochastic_descent(*initial, args.k, diag, c_max, rng);

    std::cout << "instance=" << args.instance << "\n"
              << "n_vars=" << instance.n_vars() << "\n"
              << "n_clauses=" << instance.size() << "\n"
              << "c_max=" << c_max << "\n"
              << "blocks=" << initial->n_blocks() << "\n"
              << "time=" << bbqaoa::format_double(args.time) << "\n"
              << "init=" << (args.protocol ? "explicit" : bbqaoa::to_string(init)) << "\n"
              << "k=" << args.k << "\n"
              << "seed=" << args.seed << "\n"
              << "initial_protocol=" << initial->to_string() << "\n"
              << "initial_objective=" << bbqaoa::format_double(result.objective_trajectory.front()) << "\n"
              << "initial_translation=" << describe_angles(bbqaoa::to_standard_qaoa(*initial)) << "\n"
              << "final_objective=" << bbqaoa::format_double(result.final_objective) << "\n"
              << "accepted_updates=" << result.accepted_updates << "\n"
              << "evaluations=" << result.evaluations << "\n"
              << "final_protocol=" << result.final_protocol.to_string() << "\n"
              << "final_translation=" << describe_angles(bbqaoa::to_standard_qaoa(result.final_protocol)) << "\n";
    return 0;
}

struct SweepArgs {
    std::string instance;
    std::size_t blocks = 200;
    std::vector<double> times;
    std::size_t samples = 10000;
    std::string init = "uniform";
    std::size_t k = 1;
    std::uint64_t seed = 0;
    std::string out;
    unsigned jobs = 0;
    std::string manifest;
};

int run_sweep_command(const SweepArgs& args, bool jobs_given, bool out_given)
{
    bbqaoa::SweepConfig config;
    if (!args.manifest.empty()) {
        config = bbqaoa::config_from_manifest(args.manifest);
        if (out_given) {
            config.output_path = args.out;
        }
        if (jobs_given) {
            config.parallelism = args.jobs;
        }
    } else {
        if (args.instance.empty() || args.out.empty()) {
            throw bbqaoa::ArgumentError("sweep requires --instance and --out (or --manifest)");
        }
        config.instance_path = std::filesystem::absolute(args.instance).string();
        config.n_blocks = args.blocks;
        if (!args.times.empty()) {
            config.time_grid = args.times;
        }
        config.samples_per_time = args.samples;
        config.init = bbqaoa::parse_init_kind(args.init);
        config.k = args.k;
        config.master_seed = args.seed;
        config.output_path = args.out;
        config.parallelism = jobs_given ? args.jobs : std::max(1U, std::thread::hardware_concurrency());
    }
    bbqaoa::validate(config);

    const auto records = bbqaoa::run_sweep(config);
    const auto rows = bbqaoa::aggregate(records);
    const auto paths = bbqaoa::persist(rows, records, config);
    std::cerr << "wrote " << paths.records.string() << ", " << paths.aggregate.string() << ", "
              << paths.manifest.string() << "\n";
    std::cout << bbqaoa::aggregate_to_csv(rows);
    return 0;
}

int run_aggregate(const std::string& records_path, const std::string& out)
{
    const auto records = bbqaoa::records_from_csv(bbqaoa::read_file(records_path));
    const auto csv = bbqaoa::aggregate_to_csv(bbqaoa::aggregate(records));
    if (!out.empty()) {
        bbqaoa::write_file(out, csv);
    }
    std::cout << csv;
    return 0;
}

int run_smooth(const std::string& protocol_text, int window, const std::string& out)
{
    const auto protocol = bbqaoa::Protocol::from_string(protocol_text, 0.0);
    const auto smoothed = bbqaoa::smooth(protocol, window);
    if (!out.empty()) {
        bbqaoa::write_file(out, bbqaoa::smoothed_to_csv(smoothed));
    }
    std::cout << join_values(smoothed.values) << "\n";
    return 0;
}

int run_translate(const std::string& protocol_text, double time)
{
    const auto protocol = bbqaoa::Protocol::from_string(protocol_text, time);
    std::cout << describe_angles(bbqaoa::to_standard_qaoa(protocol)) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bang-bang QAOA on MAX-2-SAT: simulation, Stochastic Descent and time sweeps"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write a random MAX-2-SAT instance and print its C_max");
    generate->add_option("--n-vars", gen.n_vars, "Number of variables")->required()->check(CLI::Range(2, 24));
    generate->add_option("--n-clauses", gen.n_clauses, "Number of distinct clauses")->required()->check(CLI::PositiveNumber);
    generate->add_option("--seed", gen.seed, "RNG seed")->required();
    generate->add_option("--out", gen.out, "Output instance file")->required();

    OptimizeArgs opt;
    auto* optimize = app.add_subcommand("optimize", "Run Stochastic Descent on one protocol");
    optimize->add_option("--instance", opt.instance, "Instance file")->required();
    optimize->add_option("--blocks", opt.blocks, "Number of blocks N_b (default 200)")->check(CLI::PositiveNumber);
    optimize->add_option("--time", opt.time, "Total time T")->required()->check(CLI::NonNegativeNumber);
    optimize->add_option("--init", opt.init, "adiabatic | uniform | anti-adiabatic")
        ->check(CLI::IsMember({"adiabatic", "uniform", "anti-adiabatic"}));
    optimize->add_option("--k", opt.k, "Maximum flips per update")->check(CLI::PositiveNumber);
    optimize->add_option("--seed", opt.seed, "RNG seed");
    optimize->add_option("--protocol", opt.protocol, "Explicit starting protocol over {E,X}");

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "Seeded time sweep of SD_k runs");
    auto* sw_instance = sweep->add_option("--instance", sw.instance, "Instance file");
    auto* sw_blocks = sweep->add_option("--blocks", sw.blocks, "Number of blocks N_b")->check(CLI::PositiveNumber);
    auto* sw_times = sweep->add_option("--times", sw.times, "Total times, comma separated (default 0:0.25:10)")
                         ->delimiter(',');
    auto* sw_samples = sweep->add_option("--samples", sw.samples, "Samples per time")->check(CLI::PositiveNumber);
    auto* sw_init = sweep->add_option("--init", sw.init, "adiabatic | uniform | anti-adiabatic")
                        ->check(CLI::IsMember({"adiabatic", "uniform", "anti-adiabatic"}));
    auto* sw_k = sweep->add_option("--k", sw.k, "Maximum flips per update")->check(CLI::PositiveNumber);
    auto* sw_seed = sweep->add_option("--seed", sw.seed, "Master seed");
    auto* sw_out = sweep->add_option("--out", sw.out, "Output directory");
    auto* sw_jobs = sweep->add_option("--jobs", sw.jobs, "Worker threads")->check(CLI::PositiveNumber);
    auto* sw_manifest = sweep->add_option("--manifest", sw.manifest, "Replay the sweep described by a manifest");
    for (auto* o : {sw_instance, sw_blocks, sw_times, sw_samples, sw_init, sw_k, sw_seed}) {
        sw_manifest->excludes(o);
    }

    std::string records_path;
    std::string aggregate_out;
    auto* aggregate = app.add_subcommand("aggregate", "Aggregate a records file into per-T statistics");
    aggregate->add_option("records", records_path, "Records CSV")->required();
    aggregate->add_option("--out", aggregate_out, "Also write the aggregate CSV here");

    std::string smooth_protocol;
    int smooth_window = 1;
    std::string smooth_out;
    auto* smooth = app.add_subcommand("smooth", "Rolling-mean smoothing of a protocol");
    smooth->add_option("--protocol", smooth_protocol, "Protocol over {E,X}")->required();
    smooth->add_option("--window", smooth_window, "Window size w")->required();
    smooth->add_option("--out", smooth_out, "Write index,value CSV here");

    std::string translate_protocol;
    double translate_time = 1.0;
    auto* translate = app.add_subcommand("translate", "Translate a protocol to standard QAOA angles");
    translate->add_option("--protocol", translate_protocol, "Protocol over {E,X}")->required();
    translate->add_option("--time", translate_time, "Total time T")->required()->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (generate->parsed()) {
            return run_generate(gen);
        }
        if (optimize->parsed()) {
            return run_optimize(opt);
        }
        if (sweep->parsed()) {
            return run_sweep_command(sw, sw_jobs->count() > 0, sw_out->count() > 0);
        }
        if (aggregate->parsed()) {
            return run_aggregate(records_path, aggregate_out);
        }
        if (smooth->parsed()) {
            return run_smooth(smooth_protocol, smooth_window, smooth_out);
        }
        if (translate->parsed()) {
            return run_translate(translate_protocol, translate_time);
        }
    } catch (const bbqaoa::ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const bbqaoa::InfeasibleError& e) {
        std::cerr << "error: infeasible: " << e.what() << "\n";
        return kExitValidation;
    } catch (const bbqaoa::SizeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitValidation;
}
