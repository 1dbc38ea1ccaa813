#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qeclab/noise.hpp"
#include "qeclab/quantum_code.hpp"

namespace qeclab {

enum class LogicalBasis { Z, X }; // prepare |0>_L and read Z, or |+>_L and read X

struct MemoryExperimentResult {
    std::string code;
    double p_x = 0.0;
    double p_z = 0.0;
    double p_depol = 0.0;
    std::size_t rounds = 0;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double logical_rate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t seed = 0;
};

/// Wilson 95% interval for f failures out of t trials.
std::pair<double, double> wilson_interval(std::size_t failures, std::size_t trials);

/// Repeated noisy memory cycles: encode, then per round inject idle noise
/// on every data qubit, extract the syndrome, and correct; finally read the
/// logical operator of the prepared basis. The state after correction is an
/// exact eigenstate, so the readout is deterministic per trajectory.
/// Per-trial seeds derive from (seed, trial index); results are
/// order-independent and reproducible.
MemoryExperimentResult memory_experiment(const QuantumCode& code, const NoiseModel& noise,
                                         std::size_t rounds, std::size_t trials,
                                         std::uint64_t seed,
                                         LogicalBasis basis = LogicalBasis::Z,
                                         bool noisy_extraction = false);

/// CSV with one row per result; a leading comment line carries the tool
/// version. Byte-deterministic for fixed inputs.
void write_results_csv(std::ostream& out, std::span<const MemoryExperimentResult> results);

/// The same records as a JSON document string (pretty-printed, keyed).
std::string results_json(std::span<const MemoryExperimentResult> results);

} // namespace qeclab
