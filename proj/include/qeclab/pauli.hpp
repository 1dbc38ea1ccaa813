#pragma once

#include <string>
#include <string_view>

#include "qeclab/bitvec.hpp"
#include "qeclab/statevector.hpp"

namespace qeclab {

// n-qubit Pauli operator in the canonical form i^phase * X^x * Z^z
// (X factors to the left of Z factors). Under this convention Y = i X Z,
// so the Hermitian Y has phase 1 and one Y position.
struct Pauli {
    BitVec x;
    BitVec z;
    int phase = 0; // exponent of i, mod 4

    Pauli() = default;
    explicit Pauli(std::size_t n) : x(n), z(n) {}

    static Pauli identity(std::size_t n) { return Pauli(n); }

    /// Single-qubit letter ('I', 'X', 'Y', 'Z') at position q, Hermitian sign +1.
    static Pauli single(std::size_t n, std::size_t q, char letter);

    /// Parse "[+|-|i|-i]LETTERS", e.g. "-XIZ" or "iYZ".
    static Pauli from_string(std::string_view s);

    std::size_t n() const { return x.size(); }
    bool bits_identity() const { return x.none() && z.none(); }
    std::size_t weight() const { return (x | z).popcount(); }

    char letter_at(std::size_t q) const;
    void set_letter(std::size_t q, char letter);

    /// (phase - #Y) mod 4: 0 -> +1, 1 -> +i, 2 -> -1, 3 -> -i.
    int sign_exponent() const;
    bool is_hermitian() const { return (sign_exponent() & 1) == 0; }

    std::string to_string() const;

    bool commutes_with(const Pauli& o) const {
        return !(x.dot(o.z) ^ z.dot(o.x));
    }

    bool operator==(const Pauli&) const = default;
};

/// Exact group product, including the i-power bookkeeping.
Pauli pauli_mul(const Pauli& p, const Pauli& q);

/// Dense matrix of a Pauli (for small-n oracle checks).
Gate pauli_matrix(const Pauli& p);

/// Apply a Pauli to a qubit-register state in place.
void apply_pauli(StateVector& state, const Pauli& p);

/// <psi| P |psi>.
cplx pauli_expectation(const StateVector& state, const Pauli& p);

/// Projectively measure a Hermitian Pauli. Returns 0 for the +1 outcome,
/// 1 for -1; collapses the state; optionally reports the Born probability.
int measure_pauli(StateVector& state, const Pauli& p, Rng& rng, double* probability = nullptr);

} // namespace qeclab
