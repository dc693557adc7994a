#include "bbqaoa/protocol.hpp"

#include <cmath>
#include <sstream>

#include "bbqaoa/errors.hpp"
#include "bbqaoa/text.hpp"

namespace bbqaoa {

Protocol::Protocol(std::vector<BlockValue> blocks, double total_time)
    : blocks_(std::move(blocks)), total_time_(total_time)
{
    if (blocks_.empty()) {
        throw ArgumentError("Protocol: at least one block is required");
    }
    for (const auto b : blocks_) {
        if (b != kConstraintBlock && b != kMixerBlock) {
            throw ArgumentError("Protocol: block values must be +1 or -1");
        }
    }
    if (!std::isfinite(total_time) || total_time < 0.0) {
        throw ArgumentError("Protocol: total time must be finite and nonnegative");
    }
}

Protocol Protocol::from_string(std::string_view text, double total_time)
{
    std::vector<BlockValue> blocks;
    blocks.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        switch (text[i]) {
        case 'E': blocks.push_back(kConstraintBlock); break;
        case 'X': blocks.push_back(kMixerBlock); break;
        default:
            throw ArgumentError("protocol string: unexpected character '" + std::string(1, text[i])
                                + "' at position " + std::to_string(i) + " (expected E or X)");
        }
    }
    return Protocol(std::move(blocks), total_time);
}

std::string Protocol::to_string() const
{
    std::string text;
    text.reserve(blocks_.size());
    for (const auto b : blocks_) {
        text.push_back(b == kConstraintBlock ? 'E' : 'X');
    }
    return text;
}

void Protocol::flip(std::span<const std::size_t> indices)
{
    for (const auto i : indices) {
        if (i >= blocks_.size()) {
            throw ArgumentError("Protocol::flip: block index " + std::to_string(i) + " out of range");
        }
        blocks_[i] = static_cast<BlockValue>(-blocks_[i]);
    }
}

Protocol Protocol::flipped(std::span<const std::size_t> indices) const
{
    Protocol copy = *this;
    copy.flip(indices);
    return copy;
}

double QaoaAngles::total_time() const noexcept
{
    double sum = 0.0;
    for (const auto& layer : layers) {
        sum += layer.gamma + layer.beta;
    }
    return sum;
}

void apply_block(StateVector& state, BlockValue block, const DiagonalHamiltonian& diag, double dt)
{
    if (block == kConstraintBlock) {
        apply_constraint_phase_inplace(state, diag, dt);
    } else {
        apply_mixer_inplace(state, dt);
    }
}

StateVector evolve(const Protocol& protocol, const DiagonalHamiltonian& diag)
{
    auto state = uniform_superposition(diag.n_qubits());
    const double dt = protocol.block_duration();
    for (const auto b : protocol.blocks()) {
        apply_block(state, b, diag, dt);
    }
    return state;
}

StateVector evolve_angles(const QaoaAngles& angles, const DiagonalHamiltonian& diag)
{
    auto state = uniform_superposition(diag.n_qubits());
    for (const auto& layer : angles.layers) {
        apply_constraint_phase_inplace(state, diag, layer.gamma);
        apply_mixer_inplace(state, layer.beta);
    }
    return state;
}

void check_cmax(const DiagonalHamiltonian& diag, int c_max)
{
    if (c_max <= 0 || c_max != diag.max_value()) {
        throw ArgumentError("objective: c_max " + std::to_string(c_max) + " does not match diagonal maximum "
                            + std::to_string(diag.max_value()));
    }
}

double objective(const Protocol& protocol, const DiagonalHamiltonian& diag, int c_max)
{
    check_cmax(diag, c_max);
    return expectation(evolve(protocol, diag), diag) / static_cast<double>(c_max);
}

QaoaAngles to_standard_qaoa(const Protocol& protocol)
{
    const double dt = protocol.block_duration();
    const auto blocks = protocol.blocks();

    QaoaAngles angles;
    std::size_t i = 0;
    while (i < blocks.size()) {
        std::size_t gamma_run = 0;
        while (i < blocks.size() && blocks[i] == kConstraintBlock) {
            ++gamma_run;
            ++i;
        }
        std::size_t beta_run = 0;
        while (i < blocks.size() && blocks[i] == kMixerBlock) {
            ++beta_run;
            ++i;
        }
        angles.layers.push_back({static_cast<double>(gamma_run) * dt, static_cast<double>(beta_run) * dt});
    }
    return angles;
}

double correlator(std::span<const Protocol> protocols)
{
    if (protocols.empty()) {
        throw ArgumentError("correlator: protocol set is empty");
    }
    const std::size_t n_blocks = protocols.front().n_blocks();
    std::vector<long long> column_sums(n_blocks, 0);
    for (const auto& p : protocols) {
        if (p.n_blocks() != n_blocks) {
            throw ArgumentError("correlator: protocols have different block counts (" + std::to_string(n_blocks)
                                + " vs " + std::to_string(p.n_blocks()) + ")");
        }
        for (std::size_t i = 0; i < n_blocks; ++i) {
            column_sums[i] += p[i];
        }
    }
    const double count = static_cast<double>(protocols.size());
    double sum_sq = 0.0;
    for (const auto s : column_sums) {
        const double mean = static_cast<double>(s) / count;
        sum_sq += mean * mean;
    }
    return 1.0 - sum_sq / static_cast<double>(n_blocks);
}

SmoothedProtocol smooth(const Protocol& protocol, int window)
{
    const auto n_blocks = protocol.n_blocks();
    if (window < 1 || static_cast<std::size_t>(window) > n_blocks) {
        throw ArgumentError("smooth: window " + std::to_string(window) + " outside [1, " + std::to_string(n_blocks)
                            + "]");
    }
    const auto w = static_cast<std::size_t>(window);
    const auto blocks = protocol.blocks();

    SmoothedProtocol out;
    out.window = window;
    out.values.reserve(n_blocks - w + 1);
    // Integer window sums keep every value exact before the single division.
    long long sum = 0;
    for (std::size_t j = 0; j < w; ++j) {
        sum += blocks[j];
    }
    out.values.push_back(static_cast<double>(sum) / static_cast<double>(w));
    for (std::size_t i = 1; i + w <= n_blocks; ++i) {
        sum += blocks[i + w - 1] - blocks[i - 1];
        out.values.push_back(static_cast<double>(sum) / static_cast<double>(w));
    }
    return out;
}

std::string smoothed_to_csv(const SmoothedProtocol& smoothed)
{
    std::ostringstream out;
    out << "index,value\n";
    for (std::size_t i = 0; i < smoothed.values.size(); ++i) {
        out << i << ',' << format_double(smoothed.values[i]) << '\n';
    }
    return out.str();
}

}  // namespace bbqaoa
