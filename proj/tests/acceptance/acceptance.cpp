// Acceptance suite: one line per criterion, nonzero exit if any fails.
//
//   acceptance            run everything
//   acceptance 3 10       run only the listed criteria

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../typeset_clauses.hpp"
#include "bbqaoa/harness.hpp"
#include "bbqaoa/optimizer.hpp"
#include "bbqaoa/protocol.hpp"
#include "bbqaoa/sat_instance.hpp"

using namespace bbqaoa;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    std::function<Outcome()> check;
};

std::string fixture(int n_clauses)
{
    return std::string(BBQAOA_DATA_DIR) + "/instances/max2sat_" + std::to_string(n_clauses) + ".json";
}

struct Loaded {
    ProblemInstance instance;
    DiagonalHamiltonian diag;
    int c_max;
};

Loaded load(int n_clauses)
{
    auto p = load_instance(fixture(n_clauses));
    auto d = build_diagonal(p);
    const int c = brute_force_cmax(p);
    return {std::move(p), std::move(d), c};
}

Protocol random_protocol(Rng& rng, std::size_t n_blocks, double t)
{
    std::vector<BlockValue> blocks(n_blocks);
    for (auto& b : blocks) {
        b = rng.below(2) == 0 ? kMixerBlock : kConstraintBlock;
    }
    return Protocol(std::move(blocks), t);
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double median_of(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    return percentile(values, 50.0);
}

// ---------------------------------------------------------------------------
// Dense reference evolution: explicit 2^n x 2^n matrices per block.

using Dense = std::vector<std::vector<Amplitude>>;

Dense kron(const Dense& a, const Dense& b)
{
    Dense out(a.size() * b.size(), std::vector<Amplitude>(a.size() * b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            for (std::size_t k = 0; k < b.size(); ++k) {
                for (std::size_t l = 0; l < b.size(); ++l) {
                    out[i * b.size() + k][j * b.size() + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    return out;
}

Dense kron_power(const Dense& single, int n)
{
    Dense out = {{1.0}};
    for (int q = 0; q < n; ++q) {
        out = kron(out, single);
    }
    return out;
}

std::vector<Amplitude> multiply(const Dense& m, const std::vector<Amplitude>& v)
{
    std::vector<Amplitude> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            out[i] += m[i][j] * v[j];
        }
    }
    return out;
}

std::vector<Amplitude> dense_evolve(const Protocol& p, const DiagonalHamiltonian& diag)
{
    const int n = diag.n_qubits();
    const double dt = p.block_duration();
    const double h = 1.0 / std::sqrt(2.0);
    const Dense hadamard = kron_power(Dense{{h, h}, {h, -h}}, n);
    std::vector<Amplitude> zero(diag.dimension());
    zero[0] = 1.0;
    auto state = multiply(hadamard, zero);

    const Amplitude c = std::cos(dt);
    const Amplitude is{0.0, std::sin(dt)};
    const Dense mixer = kron_power(Dense{{c, is}, {is, c}}, n);
    Dense phase(diag.dimension(), std::vector<Amplitude>(diag.dimension()));
    for (std::size_t x = 0; x < diag.dimension(); ++x) {
        phase[x][x] = std::exp(Amplitude(0.0, diag[x] * dt));
    }
    for (const auto b : p.blocks()) {
        state = multiply(b == kConstraintBlock ? phase : mixer, state);
    }
    return state;
}

// ---------------------------------------------------------------------------

Outcome oracle_equivalence()
{
    const auto start = std::chrono::steady_clock::now();
    Rng rng(101);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const auto diag = [&] {
            if (n == 1) {
                return DiagonalHamiltonian(1, {static_cast<std::int32_t>(rng.below(4)), static_cast<std::int32_t>(rng.below(4))});
            }
            const int m = 1 + static_cast<int>(rng.below(distinct_clause_count(n)));
            return build_diagonal(random_instance(n, m, rng));
        }();
        const auto p = random_protocol(rng, 1 + rng.below(16), 5.0 * rng.uniform01());
        const auto got = evolve(p, diag);
        const auto want = dense_evolve(p, diag);
        for (std::size_t x = 0; x < want.size(); ++x) {
            worst = std::max({worst, std::abs(got[x].real() - want[x].real()), std::abs(got[x].imag() - want[x].imag())});
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {worst <= 1e-12 && secs < 10.0, "max |diff| " + fmt(worst) + " (tol 1e-12), " + fmt(secs) + " s (limit 10 s)"};
}

Outcome norm_preservation()
{
    const auto f = load(10);
    Rng rng(102);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto s = evolve(random_protocol(rng, 200, 20.0 * rng.uniform01()), f.diag);
        worst = std::max(worst, std::abs(std::sqrt(s.norm_squared()) - 1.0));
    }
    return {worst <= 1e-10, "max |norm - 1| " + fmt(worst) + " (tol 1e-10)"};
}

Outcome zero_time_value()
{
    Rng rng(103);
    double worst = 0.0;
    std::ostringstream detail;
    for (const int clauses : {10, 20, 30}) {
        const auto f = load(clauses);
        const double want = 0.75 * clauses / f.c_max;
        for (int trial = 0; trial < 100; ++trial) {
            const auto p = random_protocol(rng, 1 + rng.below(200), 0.0);
            worst = std::max(worst, std::abs(objective(p, f.diag, f.c_max) - want));
        }
        detail << clauses << " clauses: C_max " << f.c_max << ", f_obj " << fmt(want) << "; ";
    }
    detail << "max |diff| " << fmt(worst) << " (tol 1e-12)";
    return {worst <= 1e-12, detail.str()};
}

Outcome eight_block_equivalence()
{
    const auto f = load(10);
    double worst = 0.0;
    bool angles_match = true;
    for (const double t : {0.8, 2.0, 4.0}) {
        const auto p = Protocol::from_string("EXXXEEXX", t);
        const QaoaAngles explicit_angles{{{t / 8, 3 * t / 8}, {2 * t / 8, 2 * t / 8}}};
        const auto translated = to_standard_qaoa(p);
        angles_match = angles_match && translated.p() == 2;
        for (std::size_t i = 0; i < translated.p() && angles_match; ++i) {
            angles_match = std::abs(translated.layers[i].gamma - explicit_angles.layers[i].gamma) <= 1e-15
                           && std::abs(translated.layers[i].beta - explicit_angles.layers[i].beta) <= 1e-15;
        }
        const auto a = evolve(p, f.diag);
        const auto b = evolve_angles(explicit_angles, f.diag);
        for (std::size_t x = 0; x < a.dimension(); ++x) {
            worst = std::max(worst, std::abs(a[x] - b[x]));
        }
    }
    return {worst <= 1e-12 && angles_match,
            std::string("translation p=2 ") + (angles_match ? "matches" : "DIFFERS") + "; max |diff| " + fmt(worst)
                + " (tol 1e-12)"};
}

Outcome sd_contract()
{
    const auto f = load(10);
    const std::size_t runs = 1000;
    std::size_t increasing = 0;
    std::size_t optimal = 0;
    std::size_t identical = 0;
    for (std::size_t i = 0; i < runs; ++i) {
        const auto seed = derive_seed(105, 0, i);
        Rng rng(seed);
        const auto start = sample_initial({InitKind::uniform}, 100, 2.2, rng);
        const auto r = stochastic_descent(start, 1, f.diag, f.c_max, rng);

        bool strict = true;
        for (std::size_t j = 1; j < r.objective_trajectory.size(); ++j) {
            strict = strict && r.objective_trajectory[j] > r.objective_trajectory[j - 1];
        }
        increasing += strict ? 1 : 0;
        optimal += is_local_optimum(r.final_protocol, 1, f.diag, f.c_max) ? 1 : 0;

        Rng again(seed);
        const auto start2 = sample_initial({InitKind::uniform}, 100, 2.2, again);
        const auto r2 = stochastic_descent(start2, 1, f.diag, f.c_max, again);
        const bool same = r2.final_protocol == r.final_protocol && r2.final_objective == r.final_objective
                          && r2.accepted_updates == r.accepted_updates && r2.evaluations == r.evaluations
                          && r2.objective_trajectory == r.objective_trajectory;
        identical += same ? 1 : 0;
    }
    return {increasing == runs && optimal == runs && identical == runs,
            "strictly increasing " + std::to_string(increasing) + "/1000, 1-local optimum " + std::to_string(optimal)
                + "/1000, bit-identical rerun " + std::to_string(identical) + "/1000"};
}

// Shared by criteria 6 and 8.
const std::vector<SweepRecord>& small_time_sweep()
{
    static const std::vector<SweepRecord> records = [] {
        SweepConfig config;
        config.instance_path = fixture(10);
        config.n_blocks = 100;
        config.time_grid = {1.0, 2.2, 3.0, 4.2};
        config.samples_per_time = 200;
        config.init = InitKind::uniform;
        config.master_seed = 106;
        return run_sweep(config);
    }();
    return records;
}

std::vector<double> finals_at(const std::vector<SweepRecord>& records, double t)
{
    std::vector<double> out;
    for (const auto& r : records) {
        if (r.total_time == t) {
            out.push_back(r.final_objective);
        }
    }
    return out;
}

Outcome phase_transitions()
{
    const auto& records = small_time_sweep();
    const double m10 = median_of(finals_at(records, 1.0));
    const double m22 = median_of(finals_at(records, 2.2));
    const double m30 = median_of(finals_at(records, 3.0));
    const double m42 = median_of(finals_at(records, 4.2));
    return {m22 > m10 && m42 > m30, "medians T=1.0 " + fmt(m10) + ", T=2.2 " + fmt(m22) + ", T=3.0 " + fmt(m30)
                                        + ", T=4.2 " + fmt(m42)};
}

Outcome correlator_behaviour()
{
    const std::size_t samples = 200;
    const std::size_t n_blocks = 200;
    SweepConfig config;
    config.instance_path = fixture(10);
    config.n_blocks = n_blocks;
    config.time_grid = {0.0};
    config.samples_per_time = samples;
    config.master_seed = 107;
    const auto rows = aggregate(run_sweep(config));

    const double expected = 1.0 - 1.0 / static_cast<double>(samples);
    // Var[mean_i^2] ~ 2/S^2 per block for fair coins; N_b independent blocks
    const double se = std::sqrt(2.0 / static_cast<double>(n_blocks)) / static_cast<double>(samples);
    const double sigma = rows.front().correlator;
    const bool near = std::abs(sigma - expected) <= 5 * se;

    Rng rng(1071);
    bool zero = true;
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = random_protocol(rng, 1 + rng.below(200), 1.0);
        const std::vector<Protocol> singleton{p};
        const std::vector<Protocol> copies(2 + rng.below(50), p);
        zero = zero && correlator(singleton) == 0.0 && correlator(copies) == 0.0;
    }
    return {near && zero, "sigma(T=0) " + fmt(sigma) + " vs " + fmt(expected) + " +- 5*" + fmt(se)
                              + "; singleton/duplicate sets " + (zero ? "exactly 0" : "NONZERO")};
}

Outcome sd_beats_baseline()
{
    const auto& records = small_time_sweep();
    std::vector<double> initial;
    std::vector<double> final;
    for (const auto& r : records) {
        if (r.total_time == 2.2) {
            initial.push_back(r.initial_objective);
            final.push_back(r.final_objective);
        }
    }
    const auto f = load(10);
    const double t0 = 0.75 * 10 / f.c_max;
    const double mi = median_of(initial);
    const double mf = median_of(final);
    return {mf > mi && mf > t0, "T=2.2 median final " + fmt(mf) + ", median initial " + fmt(mi) + ", T=0 value "
                                    + fmt(t0)};
}

Outcome initial_distributions()
{
    const std::size_t n_blocks = 200;
    const int samples = 10000;
    std::ostringstream detail;
    bool pass = true;
    std::uint64_t stream = 0;
    for (const auto kind : {InitKind::adiabatic, InitKind::uniform, InitKind::anti_adiabatic}) {
        const InitDistribution dist{kind};
        Rng rng(derive_seed(109, stream++, 0));
        std::vector<long long> sums(n_blocks, 0);
        for (int s = 0; s < samples; ++s) {
            const auto p = sample_initial(dist, n_blocks, 1.0, rng);
            for (std::size_t i = 0; i < n_blocks; ++i) {
                sums[i] += p[i];
            }
        }
        double worst_z = 0.0;
        std::size_t outside = 0;
        for (std::size_t i = 0; i < n_blocks; ++i) {
            const double q = dist.bias(i + 1, n_blocks);
            const double mean = static_cast<double>(sums[i]) / samples;
            const double se = 2.0 * std::sqrt(q * (1.0 - q) / samples);
            const double err = std::abs(mean - (2.0 * q - 1.0));
            if (err > 4 * se) {
                ++outside;
            }
            if (se > 0.0) {
                worst_z = std::max(worst_z, err / se);
            }
        }
        pass = pass && outside == 0;
        detail << to_string(kind) << ": max z " << fmt(worst_z) << ", " << outside << " blocks beyond 4 SE; ";
    }
    return {pass, detail.str()};
}

Outcome fixture_integrity()
{
    const std::pair<int, std::string_view> sources[] = {
        {10, typeset::kClauses10}, {20, typeset::kClauses20}, {30, typeset::kClauses30}};
    std::ostringstream detail;
    bool pass = true;
    for (const auto& [n, tex] : sources) {
        const auto expected = typeset::read_clauses(tex);
        const auto p = load_instance(fixture(n));
        std::size_t matched = 0;
        for (std::size_t i = 0; i < std::min(expected.size(), p.size()); ++i) {
            const Clause want(expected[i].a.var, expected[i].a.negated, expected[i].b.var, expected[i].b.negated);
            matched += p.clauses()[i] == want ? 1 : 0;
        }
        const bool ok = expected.size() == static_cast<std::size_t>(n) && p.size() == expected.size() && matched == p.size();
        pass = pass && ok;
        detail << n << " clauses: " << matched << "/" << expected.size() << " match; ";
    }
    const auto first = load_instance(fixture(10)).clauses().front();
    const bool first_ok = first == Clause(8, true, 9, false);
    detail << "first clause (NOT x8 OR x9) " << (first_ok ? "ok" : "WRONG");
    return {pass && first_ok, detail.str()};
}

Outcome iteration_counts()
{
    SweepConfig config;
    config.instance_path = fixture(10);
    config.n_blocks = 200;
    config.time_grid = {1.5, 9.5};
    config.samples_per_time = 200;
    config.init = InitKind::uniform;
    config.master_seed = 111;
    const auto rows = aggregate(run_sweep(config));
    const double early = rows[0].mean_iterations;
    const double late = rows[1].mean_iterations;
    return {early > late, "N_b=200 mean accepted updates T=1.5 " + fmt(early) + ", T=9.5 " + fmt(late)};
}

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<Criterion> criteria = {
        {1, "dense-matrix oracle equivalence (n<=3, N_b<=16, T<=5)", oracle_equivalence},
        {2, "norm preservation (n=10, N_b=200, T<=20)", norm_preservation},
        {3, "T=0 objective equals 0.75 n_clauses / C_max", zero_time_value},
        {4, "8-block protocol equals its p=2 angle form", eight_block_equivalence},
        {5, "SD_1 contract over 1000 seeded runs (N_b=100, T=2.2)", sd_contract},
        {6, "small-time transitions in the median (N_b=100, 200 samples)", phase_transitions},
        {7, "correlator at T=0 and on degenerate sets", correlator_behaviour},
        {8, "SD_1 beats the unoptimized baseline at T=2.2", sd_beats_baseline},
        {9, "initialization block means within 4 SE (N_b=200, 10000 samples)", initial_distributions},
        {10, "bundled fixtures match the published clause lists", fixture_integrity},
        {11, "mean SD_1 iterations fall from T=1.5 to T=9.5", iteration_counts},
    };

    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        selected.insert(std::stoi(argv[i]));
    }

    int failures = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && selected.count(c.id) == 0) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.check();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += outcome.pass ? 0 : 1;
        std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << "AC" << c.id << " " << c.title << " -- "
                  << outcome.detail << " [" << fmt(secs) << " s]" << std::endl;
    }
    std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
