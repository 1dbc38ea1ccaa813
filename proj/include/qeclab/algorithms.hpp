#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qeclab/bitvec.hpp"
#include "qeclab/rng.hpp"
#include "qeclab/statevector.hpp"

namespace qeclab {

/// H on every qubit: the Fourier transform over GF(2)^n.
StateVector fourier_gf2n(StateVector state);

/// Exact DFT |x> -> q^{-1/2} sum_y exp(2 pi i x y / q) |y> on a
/// single-register state. Computed with on-the-fly twiddles, so q need not
/// be small enough to materialize the matrix.
StateVector fourier_mod_q(StateVector state);

/// Internal form: DFT (or its inverse) on one register of a wider state.
void apply_dft(StateVector& state, std::size_t reg, bool inverse = false);

// Simon-promise oracle on GF(2)^n: f(a) = f(b) iff b = a ^ period.
struct SimonOracle {
    std::size_t n = 0;
    BitVec period;                    // hidden, nonzero
    std::vector<std::uint32_t> table; // f values, one per input, < 2^n

    /// f(x) = min(x, x ^ period).
    static SimonOracle canonical(const BitVec& period);
    /// Random coset values for a random nonzero period.
    static SimonOracle random_instance(std::size_t n, Rng& rng);
    /// Validates the promise against the stated period.
    static SimonOracle from_table(const BitVec& period, std::vector<std::uint32_t> table);
};

struct SimonResult {
    BitVec period;
    std::size_t queries = 0;
    std::vector<BitVec> samples; // every measured vector, each orthogonal to s
};

/// Sample orthogonal vectors via (H, query, H, measure) until they span the
/// period's orthogonal complement, then solve the GF(2) system.
SimonResult simon(const SimonOracle& oracle, Rng& rng, std::size_t max_queries = 0);

enum class FourierMode {
    ExactOrderMultiple, // modulus equal to the (known) period; exact peaks
    PowerOfTwo          // smallest power of two at or above the square bound
};

struct OrderFindResult {
    std::size_t order = 0;
    std::size_t samples_used = 0;
    std::size_t modulus = 0;
};

/// Quantum order finding for a mod N (N <= 64): uniform exponent register,
/// modular exponentiation as a permutation, DFT, then continued-fraction
/// post-processing capped at denominator N; answers are verified by
/// a^r = 1 (mod N) before they are returned.
OrderFindResult order_find(std::size_t modulus, std::size_t base, Rng& rng,
                           FourierMode mode = FourierMode::PowerOfTwo,
                           std::size_t max_samples = 256);

struct FactorResult {
    std::size_t p = 0;
    std::size_t q = 0;
    std::size_t attempts = 0;
};

/// Factor an odd composite (not a prime power) via random bases and
/// order_find; the returned pair multiplies to N.
FactorResult factor(std::size_t n, Rng& rng, std::size_t max_attempts = 64);

struct DiscreteLogInstance {
    std::size_t prime = 0;     // P
    std::size_t generator = 0; // g, must generate Z_P^*
    std::size_t target = 0;    // y
    FourierMode mode = FourierMode::ExactOrderMultiple;

    void validate() const; // throws on a non-generator or bad range
};

struct DiscreteLogResult {
    std::size_t exponent = 0; // canonical representative in [0, P-1)
    std::size_t samples_used = 0;
    std::size_t modulus = 0; // Fourier modulus actually used
};

/// Period finding on the (P-1) x (P-1) torus: two exponent registers, the
/// product g^alpha y^-beta in a work register, a DFT on both exponents, and
/// lattice-style recovery of x from the measured frequency pair. Verified
/// by g^x = y (mod P) before returning.
DiscreteLogResult discrete_log(const DiscreteLogInstance& instance, Rng& rng,
                               std::size_t max_samples = 256);

/// Textbook phase estimation with t control qubits; returns the measured
/// t-bit phase in [0, 1). The eigenstate must satisfy U|psi> = e^{2 pi i
/// phi}|psi> within 1e-10.
double phase_estimate(const Gate& unitary, const StateVector& eigenstate, std::size_t t_bits,
                      Rng& rng);

struct GroverResult {
    std::size_t measured = 0;
    double success_probability = 0.0; // |amplitude of the marked item|^2
    std::size_t iterations = 0;
};

/// Search for a single marked item among 2^n with oracle + diffusion
/// iterations (default floor(pi/4 * 2^(n/2))).
GroverResult grover(std::size_t n, std::size_t marked, Rng& rng,
                    std::optional<std::size_t> iterations = std::nullopt);

// Small modular helpers shared with the tests and the CLI.
std::size_t pow_mod(std::size_t base, std::size_t exp, std::size_t mod);
std::size_t gcd_u(std::size_t a, std::size_t b);
std::size_t mod_inverse(std::size_t a, std::size_t mod); // throws if not coprime
std::size_t multiplicative_order(std::size_t a, std::size_t mod);

/// Denominators of the continued-fraction convergents of num/den, ascending,
/// capped at max_denominator.
std::vector<std::size_t> convergent_denominators(std::size_t num, std::size_t den,
                                                 std::size_t max_denominator);

} // namespace qeclab
