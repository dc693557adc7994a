#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "bbqaoa/hamiltonian.hpp"

namespace bbqaoa {

using Amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 24;

// Pure state of n qubits as 2^n amplitudes.
//
// Basis index of assignment (x_0, ..., x_{n-1}) is sum_i x_i * 2^(n-1-i):
// variable 0 is the most significant bit.
class StateVector {
public:
    StateVector(int n_qubits, std::vector<Amplitude> amplitudes);

    int n_qubits() const noexcept { return n_qubits_; }
    std::size_t dimension() const noexcept { return amplitudes_.size(); }

    std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
    std::span<Amplitude> amplitudes() noexcept { return amplitudes_; }
    const Amplitude& operator[](std::size_t index) const { return amplitudes_[index]; }

    double norm_squared() const noexcept;

    friend bool operator==(const StateVector&, const StateVector&) = default;

private:
    int n_qubits_;
    std::vector<Amplitude> amplitudes_;
};

// Throws SizeError unless 1 <= n_qubits <= kMaxQubits.
void check_qubit_count(int n_qubits);

// H^{(x)n}|0...0>: every amplitude 2^{-n/2}.
StateVector uniform_superposition(int n_qubits);

StateVector basis_state(int n_qubits, std::uint64_t index);

// Amplitude x picks up exp(+i * diag[x] * dt).
void apply_constraint_phase_inplace(StateVector& state, const DiagonalHamiltonian& diag, double dt);
StateVector apply_constraint_phase(StateVector state, const DiagonalHamiltonian& diag, double dt);

// Transverse-field mixer exp(+i * dt * sum_j X_j), applied as the rotation
// cos(dt) I + i sin(dt) X on every qubit.
void apply_mixer_inplace(StateVector& state, double dt);
StateVector apply_mixer(StateVector state, double dt);

// <psi|E|psi> = sum_x |psi_x|^2 diag[x].
double expectation(const StateVector& state, const DiagonalHamiltonian& diag);

}  // namespace bbqaoa
