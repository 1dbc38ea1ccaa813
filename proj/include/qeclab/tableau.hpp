#pragma once

#include <cstddef>
#include <vector>

#include "qeclab/pauli.hpp"
#include "qeclab/rng.hpp"
#include "qeclab/statevector.hpp"

namespace qeclab {

enum class CliffOp { H, S, Sdg, X, Y, Z, CNOT, CZ, Swap, Measure };

struct CliffInstr {
    CliffOp op;
    std::size_t a = 0;
    std::size_t b = 0; // second qubit for CNOT/CZ/Swap, unused otherwise

    static CliffInstr h(std::size_t q) { return {CliffOp::H, q, 0}; }
    static CliffInstr s(std::size_t q) { return {CliffOp::S, q, 0}; }
    static CliffInstr sdg(std::size_t q) { return {CliffOp::Sdg, q, 0}; }
    static CliffInstr x(std::size_t q) { return {CliffOp::X, q, 0}; }
    static CliffInstr y(std::size_t q) { return {CliffOp::Y, q, 0}; }
    static CliffInstr z(std::size_t q) { return {CliffOp::Z, q, 0}; }
    static CliffInstr cnot(std::size_t c, std::size_t t) { return {CliffOp::CNOT, c, t}; }
    static CliffInstr cz(std::size_t a, std::size_t b) { return {CliffOp::CZ, a, b}; }
    static CliffInstr swap(std::size_t a, std::size_t b) { return {CliffOp::Swap, a, b}; }
    static CliffInstr measure(std::size_t q) { return {CliffOp::Measure, q, 0}; }
};

using CliffordCircuit = std::vector<CliffInstr>;

/// Rewrite P -> U P U^dag for one gate, with exact phase tracking.
void conjugate_by_gate(Pauli& p, const CliffInstr& instr);

// Images of the 2n generators X_i, Z_i under a Clifford unitary.
struct CliffordTableau {
    std::size_t n = 0;
    std::vector<Pauli> image_x;
    std::vector<Pauli> image_z;

    static CliffordTableau identity(std::size_t n);
    /// Tableau of a unitary circuit (no Measure instructions).
    static CliffordTableau of_circuit(std::size_t n, const CliffordCircuit& circuit);

    /// Check that the images preserve all commutation relations.
    bool preserves_commutation() const;
};

/// U p U^dag composed from the tableau's generator images, sign tracked exactly.
Pauli conjugate(const CliffordTableau& t, const Pauli& p);

// Stabilizer-state simulator in the destabilizer/stabilizer form. Cost is
// polynomial in qubit count and circuit length.
class CliffordSimulator {
public:
    explicit CliffordSimulator(std::size_t n); // |0...0>

    std::size_t qubit_count() const { return n_; }
    void apply(const CliffInstr& instr); // unitary instructions only
    int measure_z(std::size_t q, Rng& rng);

    const std::vector<Pauli>& stabilizers() const { return stab_; }

private:
    std::size_t n_;
    std::vector<Pauli> destab_;
    std::vector<Pauli> stab_;
};

/// Run a circuit with interleaved measurements; returns the outcome list.
/// Throws on gates outside {H, S, Sdg, Paulis, CNOT, CZ, Swap}.
std::vector<int> clifford_simulate(std::size_t n, const CliffordCircuit& circuit, Rng& rng);

/// Dense-statevector execution of the same circuit type (the oracle path).
/// Measurements sample with the supplied rng; outcomes are appended.
StateVector run_circuit_on_statevector(std::size_t n, const CliffordCircuit& circuit, Rng& rng,
                                       std::vector<int>* outcomes = nullptr);

/// Exact joint distribution over the measured qubits of a circuit, computed
/// by statevector simulation. Measurements must all be terminal.
std::vector<double> measured_distribution_statevector(std::size_t n,
                                                      const CliffordCircuit& circuit);

} // namespace qeclab
