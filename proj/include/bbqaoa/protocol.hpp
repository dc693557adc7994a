#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bbqaoa/hamiltonian.hpp"
#include "bbqaoa/state_vector.hpp"

namespace bbqaoa {

// +1 applies the constraint Hamiltonian E for one block, -1 the mixer.
using BlockValue = std::int8_t;
inline constexpr BlockValue kConstraintBlock = 1;
inline constexpr BlockValue kMixerBlock = -1;

// Bang-bang protocol: N_b equal blocks of duration total_time / N_b, applied
// from index 0 upward.
class Protocol {
public:
    Protocol(std::vector<BlockValue> blocks, double total_time);

    // Text form over {E, X}; E is the constraint Hamiltonian.
    static Protocol from_string(std::string_view text, double total_time);
    std::string to_string() const;

    std::size_t n_blocks() const noexcept { return blocks_.size(); }
    double total_time() const noexcept { return total_time_; }
    double block_duration() const noexcept { return total_time_ / static_cast<double>(blocks_.size()); }

    std::span<const BlockValue> blocks() const noexcept { return blocks_; }
    BlockValue operator[](std::size_t i) const { return blocks_[i]; }

    // Toggles every listed block. Indices must be in range.
    void flip(std::span<const std::size_t> indices);
    Protocol flipped(std::span<const std::size_t> indices) const;

    friend bool operator==(const Protocol&, const Protocol&) = default;

private:
    std::vector<BlockValue> blocks_;
    double total_time_;
};

struct QaoaLayer {
    double gamma;  // constraint duration, applied first
    double beta;   // mixer duration

    friend bool operator==(const QaoaLayer&, const QaoaLayer&) = default;
};

// Standard-form schedule e^{i beta_p X} e^{i gamma_p E} ... e^{i beta_1 X} e^{i gamma_1 E}.
struct QaoaAngles {
    std::vector<QaoaLayer> layers;

    std::size_t p() const noexcept { return layers.size(); }
    double total_time() const noexcept;
};

// Applies one block of duration dt in place.
void apply_block(StateVector& state, BlockValue block, const DiagonalHamiltonian& diag, double dt);

// Final state from the uniform superposition.
StateVector evolve(const Protocol& protocol, const DiagonalHamiltonian& diag);

StateVector evolve_angles(const QaoaAngles& angles, const DiagonalHamiltonian& diag);

// Expected approximation ratio <psi|E|psi> / c_max. c_max must equal the
// diagonal's maximum.
double objective(const Protocol& protocol, const DiagonalHamiltonian& diag, int c_max);

// Throws ArgumentError unless c_max is positive and equals max(diag).
void check_cmax(const DiagonalHamiltonian& diag, int c_max);

// Run-length encoding into (gamma, beta) layers. A protocol that opens with
// the mixer gets gamma_1 = 0; one that ends on E gets beta_p = 0.
QaoaAngles to_standard_qaoa(const Protocol& protocol);

// 1 - (1/N_b) sum_i mean_i^2 over a nonempty set of equal-length protocols.
double correlator(std::span<const Protocol> protocols);

struct SmoothedProtocol {
    std::vector<double> values;  // length N_b - window + 1, each in [-1, 1]
    int window = 1;
};

// Rolling mean of block values over `window` consecutive blocks.
SmoothedProtocol smooth(const Protocol& protocol, int window);

// CSV rows "index,value" with a header line.
std::string smoothed_to_csv(const SmoothedProtocol& smoothed);

}  // namespace bbqaoa
