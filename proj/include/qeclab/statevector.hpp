#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qeclab/rng.hpp"

namespace qeclab {

using cplx = std::complex<double>;

/// Hard cap on the amplitude array; larger registers are refused up front.
inline constexpr std::size_t kMaxAmplitudes = std::size_t(1) << 24;

/// Tolerance for "exact" state constructions throughout the library.
inline constexpr double kStateTol = 1e-10;

// A unitary acting on one or more registers. The matrix is dense,
// row-major, with the first target register as the most significant
// digit of the row/column index.
class Gate {
public:
    Gate(std::string name, std::vector<std::size_t> target_dims, std::vector<cplx> matrix);

    const std::string& name() const { return name_; }
    std::size_t arity() const { return target_dims_.size(); }
    std::size_t dim() const { return dim_; }
    const std::vector<std::size_t>& target_dims() const { return target_dims_; }

    const cplx& at(std::size_t r, std::size_t c) const { return m_[r * dim_ + c]; }
    const std::vector<cplx>& matrix() const { return m_; }

    Gate dagger() const;
    /// Same unitary with one qubit control prepended.
    Gate controlled() const;
    /// Matrix power by repeated squaring (exponent >= 0).
    Gate power(std::uint64_t exponent) const;

private:
    std::string name_;
    std::vector<std::size_t> target_dims_;
    std::size_t dim_;
    std::vector<cplx> m_;
};

// Dense state over a list of registers. Register 0 is the leftmost ket
// symbol and the most significant digit of the basis index.
class StateVector {
public:
    /// |0...0> over the given register dimensions.
    explicit StateVector(std::vector<std::size_t> dims);

    /// Basis state with the given composite index.
    static StateVector basis(std::vector<std::size_t> dims, std::size_t index);

    /// n qubit registers in |0...0>.
    static StateVector qubits(std::size_t n);

    /// Build from explicit amplitudes; must be normalized within 1e-8.
    static StateVector from_amplitudes(std::vector<std::size_t> dims, std::vector<cplx> amps);

    std::size_t register_count() const { return dims_.size(); }
    std::size_t dim(std::size_t reg) const { return dims_[reg]; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t total_dim() const { return amps_.size(); }
    bool all_qubits() const;

    std::size_t stride(std::size_t reg) const { return strides_[reg]; }
    std::size_t digit(std::size_t index, std::size_t reg) const {
        return (index / strides_[reg]) % dims_[reg];
    }

    cplx amp(std::size_t i) const { return amps_[i]; }
    void set_amp(std::size_t i, cplx v) { amps_[i] = v; }
    std::span<const cplx> amps() const { return amps_; }
    std::span<cplx> amps_mut() { return amps_; }

    double norm_sq() const;
    void normalize();

    /// Apply a gate to the given target registers (distinct, in range,
    /// dimensions matching the gate).
    void apply(const Gate& g, std::span<const std::size_t> targets);
    void apply(const Gate& g, std::initializer_list<std::size_t> targets) {
        apply(g, std::span<const std::size_t>(targets.begin(), targets.size()));
    }

private:
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> strides_;
    std::vector<cplx> amps_;
};

cplx inner_product(const StateVector& a, const StateVector& b);

/// |<a|b>|^2; symmetric; 1 iff equal up to global phase.
double fidelity(const StateVector& a, const StateVector& b);

/// Kronecker product; output registers are a's followed by b's.
StateVector tensor(const StateVector& a, const StateVector& b);

enum class MeasureBasis { Computational, PlusMinus };

struct MeasurementRecord {
    int outcome = 0;          // basis digit, or 0 = plus / 1 = minus
    double probability = 0.0; // Born probability of the sampled outcome
    StateVector collapsed;
};

/// Born-rule probabilities of every outcome of measuring one register.
std::vector<double> outcome_probabilities(const StateVector& state, std::size_t target,
                                          MeasureBasis basis);

/// Sample one outcome, collapse, and report the pre-measurement probability.
MeasurementRecord measure(const StateVector& state, std::size_t target, MeasureBasis basis,
                          Rng& rng);

/// In-place variant for hot loops; returns the outcome.
int measure_in_place(StateVector& state, std::size_t target, MeasureBasis basis, Rng& rng,
                     double* probability = nullptr);

/// Remove one register whose marginal state is known and unentangled
/// (e.g. just measured). Throws if the remainder is not a product state.
StateVector factor_register(const StateVector& state, std::size_t reg,
                            const StateVector& known);

} // namespace qeclab
