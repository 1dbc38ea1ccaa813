#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qeclab/classical_code.hpp"
#include "qeclab/stabilizer_code.hpp"
#include "qeclab/tableau.hpp"

namespace qeclab {

// How a logical gate is realized bitwise on a code: the same physical op
// on every qubit of one block, or pairwise between two blocks.
struct TransversalRule {
    CliffOp physical_op;
    int blocks = 1;
};

struct Syndrome {
    BitVec bits;              // one bit per generator, 0 = +1 eigenvalue
    std::uint32_t packed = 0; // bits MSB-first
};

// A stabilizer code packaged with an encoder circuit and a syndrome
// decoder table. Encoders take the k data qubits on wires 0..k-1 and
// ancillas prepared in |0> on the rest.
struct QuantumCode {
    std::string name;
    StabilizerCode stab;
    CliffordCircuit encoder;
    std::vector<Pauli> decoder_table;   // indexed by packed syndrome
    std::vector<bool> decoder_known;    // false entries report, not guess
    std::map<std::string, TransversalRule> transversal;

    std::size_t n() const { return stab.n; }
    std::size_t k() const { return stab.k; }

    /// Run the encoder on |data> tensor |0...0>.
    StateVector encode(const StateVector& data) const;
    /// Encoded computational basis state |index>_L.
    StateVector encode_basis(std::size_t index) const;

    Syndrome syndrome_of(const Pauli& error) const;
};

QuantumCode bit_flip_code();
QuantumCode phase_flip_code();

/// Wrap a bare stabilizer code (e.g. loaded from a file) for experiments.
/// Encoding uses codespace projectors instead of a circuit, so only k = 1
/// codes are supported; the decoder table is built generically.
QuantumCode quantum_code_from_stabilizer(StabilizerCode stab, const std::string& name);

/// Conjugate every part of a code by H on each qubit.
QuantumCode hadamard_conjugate(const QuantumCode& code, const std::string& new_name);

/// Encode each qubit of `outer` with `inner`; both must have k = 1.
/// Decoding runs per-block inner corrections, then the lifted outer one.
QuantumCode concatenate(const QuantumCode& outer, const QuantumCode& inner);

/// CSS construction: X stabilizers from dual(c2), Z stabilizers from c1's
/// checks; requires dual(c2) contained in c1, else throws with a violating
/// vector named in the message.
QuantumCode css_code(const ClassicalLinearCode& c1, const ClassicalLinearCode& c2,
                     const std::string& name = "css");

/// Lift a Pauli on `outer_qubits` through per-block logical operators.
Pauli lift_through_blocks(const Pauli& outer, const std::vector<Pauli>& block_logical_x,
                          const std::vector<Pauli>& block_logical_z);

/// The same operator acting on a wider register, offset qubits in.
Pauli embed_pauli(const Pauli& p, std::size_t offset, std::size_t total);

/// Syndrome -> lowest-weight coset representative (ties broken
/// string-lexicographically), complete up to max_weight.
void build_decoder_table(QuantumCode& code, std::size_t max_weight);

/// Measure every generator projectively; deterministic on a codeword plus
/// a correctable error.
std::pair<Syndrome, StateVector> extract_syndrome(const QuantumCode& code, StateVector state,
                                                  Rng& rng);

struct CorrectionResult {
    StateVector state;
    Syndrome syndrome;
    Pauli correction;
    bool known_syndrome = true; // false: identity applied, multi-error event
};

/// extract_syndrome followed by the decoder-table correction.
CorrectionResult correct(const QuantumCode& code, StateVector state, Rng& rng);

/// Bitwise circuit implementing a logical gate ("H", "X", "Z" on one block;
/// "CNOT", "CZ" across two blocks laid out as wires [0,n) and [n,2n)).
/// Throws on an unsupported (code, gate) pair.
CliffordCircuit transversal_gate(const QuantumCode& code, const std::string& gate,
                                 int blocks = 1);

} // namespace qeclab
