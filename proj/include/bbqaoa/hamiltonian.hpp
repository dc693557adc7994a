#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bbqaoa {

// Diagonal of a computational-basis-diagonal Hamiltonian with integer
// entries. For MAX-2-SAT the entry at basis index x is the number of clauses
// satisfied by the assignment encoded in x.
class DiagonalHamiltonian {
public:
    using value_type = std::int32_t;

    DiagonalHamiltonian() = default;
    // values.size() must be 2^n_qubits; entries must be nonnegative.
    DiagonalHamiltonian(int n_qubits, std::vector<value_type> values);

    int n_qubits() const noexcept { return n_qubits_; }
    std::size_t dimension() const noexcept { return values_.size(); }
    std::span<const value_type> values() const noexcept { return values_; }
    value_type operator[](std::size_t index) const { return values_[index]; }

    value_type min_value() const noexcept { return min_; }
    value_type max_value() const noexcept { return max_; }

    friend bool operator==(const DiagonalHamiltonian&, const DiagonalHamiltonian&) = default;

private:
    int n_qubits_ = 0;
    std::vector<value_type> values_;
    value_type min_ = 0;
    value_type max_ = 0;
};

}  // namespace bbqaoa
