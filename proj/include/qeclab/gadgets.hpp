#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qeclab/noise.hpp"
#include "qeclab/quantum_code.hpp"
#include "qeclab/statevector.hpp"

namespace qeclab {

struct GadgetResult {
    StateVector output;
    std::size_t rounds = 1;
    std::vector<std::string> flags;

    bool flagged(const std::string& f) const {
        for (const auto& s : flags)
            if (s == f) return true;
        return false;
    }
};

/// The rotation ancilla -1/2 |0> + sqrt(3)/2 |1>.
StateVector rotation_ancilla();

/// Repeat-until-success rotation by 2*pi/3 on one bare qubit. Each round
/// consumes one ancilla, applies CZ then CNOT (data -> ancilla), and
/// measures the ancilla in the +/- basis: + applies the rotation, - its
/// inverse; two like rotations compose to the opposite one, so the loop
/// stops once the net rotation is one positive turn. Flags "incomplete"
/// if max_rounds runs out first.
GadgetResult rus_rotation(const StateVector& data,
                          const std::function<StateVector()>& ancilla_supply, Rng& rng,
                          std::size_t max_rounds);

/// Same protocol run on encoded blocks through a code's transversal CZ and
/// CNOT, deciding each round by a logical-X measurement of the ancilla block.
GadgetResult rus_rotation_encoded(const QuantumCode& code, const StateVector& encoded_data,
                                  const std::function<StateVector()>& encoded_ancilla_supply,
                                  Rng& rng, std::size_t max_rounds);

/// The 3-qubit ancilla (|000> + |100> + |010> + |111>) / 2 whose third
/// qubit is the AND of the first two.
StateVector toffoli_ancilla();

/// Toffoli via the AND ancilla: three bitwise CNOTs, two computational and
/// one +/- measurement, and the measurement-dependent Clifford fix-ups
/// (CNOTs/X on the target, CZ/Z on the controls).
GadgetResult gadget_toffoli(const StateVector& data3, const StateVector& ancilla, Rng& rng);

/// Fault-injection hook for the cat-state circuit: apply the letter to one
/// qubit after the instruction at `after_instruction` has run.
struct InjectedFault {
    std::size_t after_instruction = 0;
    std::size_t qubit = 0;
    char letter = 'X';
};

/// Build the n-qubit cat state (|0...0> + |1...1>)/sqrt(2) with an H plus a
/// CNOT chain under the given noise model. With verify set, every qubit
/// pair is parity-checked on a fresh ancilla; a violated parity rejects the
/// attempt (flag "parity_reject") and retries up to max_attempts.
GadgetResult prepare_cat(std::size_t n, const NoiseModel& noise, Rng& rng, bool verify,
                         std::size_t max_attempts = 64,
                         const std::optional<InjectedFault>& inject = std::nullopt);

struct DensityCheckResult {
    std::vector<std::size_t> sequence; // indices into the gate set
    double distance = 0.0;             // operator norm up to global phase
};

/// Breadth-first search (with deduplication up to global phase) over
/// products of the gate set, reporting the closest product to the target
/// within max_depth. Distance is monotone non-increasing in depth.
DensityCheckResult density_check(const std::vector<Gate>& gateset, const Gate& target,
                                 std::size_t max_depth);

} // namespace qeclab
