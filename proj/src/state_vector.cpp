#include "bbqaoa/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bbqaoa/errors.hpp"

namespace bbqaoa {

namespace {

void check_duration(double dt, const char* where)
{
    if (!std::isfinite(dt) || dt < 0.0) {
        throw ArgumentError(std::string(where) + ": duration must be finite and nonnegative, got "
                            + std::to_string(dt));
    }
}

void check_dimensions(const StateVector& state, const DiagonalHamiltonian& diag, const char* where)
{
    if (state.dimension() != diag.dimension()) {
        throw DimensionError(std::string(where) + ": state dimension " + std::to_string(state.dimension())
                             + " does not match diagonal dimension " + std::to_string(diag.dimension()));
    }
}

}  // namespace

DiagonalHamiltonian::DiagonalHamiltonian(int n_qubits, std::vector<value_type> values)
    : n_qubits_(n_qubits), values_(std::move(values))
{
    check_qubit_count(n_qubits);
    if (values_.size() != (std::size_t{1} << n_qubits)) {
        throw DimensionError("DiagonalHamiltonian: expected " + std::to_string(std::size_t{1} << n_qubits)
                             + " entries, got " + std::to_string(values_.size()));
    }
    const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
    if (*lo < 0) {
        throw ArgumentError("DiagonalHamiltonian: entries must be nonnegative");
    }
    min_ = *lo;
    max_ = *hi;
}

void check_qubit_count(int n_qubits)
{
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw SizeError("qubit count " + std::to_string(n_qubits) + " outside [1, "
                        + std::to_string(kMaxQubits) + "]");
    }
}

StateVector::StateVector(int n_qubits, std::vector<Amplitude> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes))
{
    check_qubit_count(n_qubits);
    if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
        throw DimensionError("StateVector: expected " + std::to_string(std::size_t{1} << n_qubits)
                             + " amplitudes, got " + std::to_string(amplitudes_.size()));
    }
}

double StateVector::norm_squared() const noexcept
{
    double sum = 0.0;
    for (const auto& a : amplitudes_) {
        sum += a.real() * a.real() + a.imag() * a.imag();
    }
    return sum;
}

StateVector uniform_superposition(int n_qubits)
{
    check_qubit_count(n_qubits);
    // 2^{-n/2} exactly for even n; correctly rounded 1/sqrt(2) factor otherwise.
    const double amp = std::ldexp(1.0, -(n_qubits / 2)) * (n_qubits % 2 == 0 ? 1.0 : 1.0 / std::sqrt(2.0));
    return StateVector(n_qubits, std::vector<Amplitude>(std::size_t{1} << n_qubits, Amplitude(amp, 0.0)));
}

StateVector basis_state(int n_qubits, std::uint64_t index)
{
    check_qubit_count(n_qubits);
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (index >= dim) {
        throw DimensionError("basis_state: index " + std::to_string(index) + " out of range");
    }
    std::vector<Amplitude> amps(dim);
    amps[index] = 1.0;
    return StateVector(n_qubits, std::move(amps));
}

void apply_constraint_phase_inplace(StateVector& state, const DiagonalHamiltonian& diag, double dt)
{
    check_dimensions(state, diag, "apply_constraint_phase");
    check_duration(dt, "apply_constraint_phase");

    // Entries are small integers, so the phase for each distinct value is
    // computed once. polar(1, v * dt) is the same expression the direct
    // per-entry form would evaluate.
    std::vector<Amplitude> phase(static_cast<std::size_t>(diag.max_value()) + 1);
    for (std::size_t v = 0; v < phase.size(); ++v) {
        phase[v] = std::polar(1.0, static_cast<double>(v) * dt);
    }

    auto amps = state.amplitudes();
    const auto values = diag.values();
    for (std::size_t x = 0; x < amps.size(); ++x) {
        const Amplitude& p = phase[static_cast<std::size_t>(values[x])];
        const double re = amps[x].real();
        const double im = amps[x].imag();
        amps[x] = Amplitude(re * p.real() - im * p.imag(), re * p.imag() + im * p.real());
    }
}

StateVector apply_constraint_phase(StateVector state, const DiagonalHamiltonian& diag, double dt)
{
    apply_constraint_phase_inplace(state, diag, dt);
    return state;
}

void apply_mixer_inplace(StateVector& state, double dt)
{
    check_duration(dt, "apply_mixer");
    const double c = std::cos(dt);
    const double s = std::sin(dt);
    auto amps = state.amplitudes();
    const std::size_t dim = amps.size();

    for (std::size_t stride = 1; stride < dim; stride <<= 1) {
        for (std::size_t block = 0; block < dim; block += 2 * stride) {
            for (std::size_t x = block; x < block + stride; ++x) {
                const Amplitude a = amps[x];
                const Amplitude b = amps[x + stride];
                // [a', b'] = [c a + i s b, i s a + c b]
                amps[x] = Amplitude(c * a.real() - s * b.imag(), c * a.imag() + s * b.real());
                amps[x + stride] = Amplitude(c * b.real() - s * a.imag(), c * b.imag() + s * a.real());
            }
        }
    }
}

StateVector apply_mixer(StateVector state, double dt)
{
    apply_mixer_inplace(state, dt);
    return state;
}

double expectation(const StateVector& state, const DiagonalHamiltonian& diag)
{
    check_dimensions(state, diag, "expectation");
    const auto amps = state.amplitudes();
    const auto values = diag.values();
    double sum = 0.0;
    for (std::size_t x = 0; x < amps.size(); ++x) {
        const double p = amps[x].real() * amps[x].real() + amps[x].imag() * amps[x].imag();
        sum += p * static_cast<double>(values[x]);
    }
    return sum;
}

}  // namespace bbqaoa
