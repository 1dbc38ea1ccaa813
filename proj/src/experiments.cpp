#include "qeclab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "qeclab/version.hpp"

namespace qeclab {

std::pair<double, double> wilson_interval(std::size_t failures, std::size_t trials) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: zero trials");
    constexpr double z = 1.959963984540054; // 95%
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(failures) / n;
    const double denom = 1.0 + z * z / n;
    const double center = (p + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

void inject_idle_noise(StateVector& state, const NoiseModel& noise, Rng& rng) {
    const std::size_t n = state.register_count();
    for (std::size_t q = 0; q < n; ++q) {
        if (noise.p_depol > 0.0 && rng.bernoulli(noise.p_depol)) {
            const char letter = "XYZ"[rng.uniform_int(3)];
            apply_pauli(state, Pauli::single(n, q, letter));
        }
        if (noise.p_x > 0.0 && rng.bernoulli(noise.p_x)) {
            apply_pauli(state, Pauli::single(n, q, 'X'));
        }
        if (noise.p_z > 0.0 && rng.bernoulli(noise.p_z)) {
            apply_pauli(state, Pauli::single(n, q, 'Z'));
        }
    }
}

} // namespace

MemoryExperimentResult memory_experiment(const QuantumCode& code, const NoiseModel& noise,
                                         std::size_t rounds, std::size_t trials,
                                         std::uint64_t seed, LogicalBasis basis,
                                         bool noisy_extraction) {
    noise.validate();
    if (trials < 1) throw std::invalid_argument("memory_experiment: trials must be >= 1");
    if (code.k() < 1) throw std::invalid_argument("memory_experiment: code must encode k >= 1");

    // Prepared logical state and the operator that stabilizes it.
    StateVector initial = [&] {
        if (basis == LogicalBasis::Z) return code.encode_basis(0);
        const double s = 1.0 / std::sqrt(2.0);
        StateVector plus = StateVector::from_amplitudes({2}, {s, s});
        if (code.k() > 1) plus = tensor(plus, StateVector::qubits(code.k() - 1));
        return code.encode(plus);
    }();
    const Pauli& readout =
        basis == LogicalBasis::Z ? code.stab.logical_z[0] : code.stab.logical_x[0];
    const std::size_t r = code.stab.generators.size();

    std::size_t failures = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        StateVector state = initial;
        for (std::size_t round = 0; round < rounds; ++round) {
            inject_idle_noise(state, noise, rng);
            std::uint32_t packed = 0;
            for (std::size_t i = 0; i < r; ++i) {
                int bit = measure_pauli(state, code.stab.generators[i], rng);
                if (noisy_extraction && noise.p_meas_flip > 0.0 &&
                    rng.bernoulli(noise.p_meas_flip)) {
                    bit ^= 1;
                }
                packed = (packed << 1) | static_cast<std::uint32_t>(bit);
            }
            if (code.decoder_known[packed]) {
                apply_pauli(state, code.decoder_table[packed]);
            }
        }
        if (pauli_expectation(state, readout).real() < 0.0) ++failures;
    }

    MemoryExperimentResult result;
    result.code = code.name;
    result.p_x = noise.p_x;
    result.p_z = noise.p_z;
    result.p_depol = noise.p_depol;
    result.rounds = rounds;
    result.trials = trials;
    result.failures = failures;
    result.logical_rate = static_cast<double>(failures) / static_cast<double>(trials);
    std::tie(result.ci_low, result.ci_high) = wilson_interval(failures, trials);
    result.seed = seed;
    return result;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

} // namespace

void write_results_csv(std::ostream& out, std::span<const MemoryExperimentResult> results) {
    out << "# " << kToolName << ' ' << kToolVersion << '\n';
    out << "code,p_x,p_z,p_depol,rounds,trials,logical_rate,ci_low,ci_high,seed\n";
    for (const auto& r : results) {
        out << r.code << ',' << fmt_double(r.p_x) << ',' << fmt_double(r.p_z) << ','
            << fmt_double(r.p_depol) << ',' << r.rounds << ',' << r.trials << ','
            << fmt_double(r.logical_rate) << ',' << fmt_double(r.ci_low) << ','
            << fmt_double(r.ci_high) << ',' << r.seed << '\n';
    }
}

std::string results_json(std::span<const MemoryExperimentResult> results) {
    nlohmann::json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["results"] = nlohmann::json::array();
    for (const auto& r : results) {
        doc["results"].push_back({
            {"code", r.code},
            {"p_x", r.p_x},
            {"p_z", r.p_z},
            {"p_depol", r.p_depol},
            {"rounds", r.rounds},
            {"trials", r.trials},
            {"logical_rate", r.logical_rate},
            {"ci_low", r.ci_low},
            {"ci_high", r.ci_high},
            {"seed", r.seed},
        });
    }
    return doc.dump(2) + "\n";
}

} // namespace qeclab
