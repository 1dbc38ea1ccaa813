#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qeclab/experiments.hpp"
#include "qeclab/gadgets.hpp"
#include "qeclab/gates.hpp"

using namespace qeclab;

namespace {

StateVector random_qubit(Rng& rng) {
    const cplx a(rng.uniform() - 0.5, rng.uniform() - 0.5);
    const cplx b(rng.uniform() - 0.5, rng.uniform() - 0.5);
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    return StateVector::from_amplitudes({2}, {a / norm, b / norm});
}

StateVector random_state(std::size_t n, Rng& rng) {
    std::vector<cplx> amps(std::size_t(1) << n);
    double norm = 0.0;
    for (cplx& a : amps) {
        a = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (cplx& a : amps) a /= norm;
    return StateVector::from_amplitudes(std::vector<std::size_t>(n, 2), std::move(amps));
}

} // namespace

TEST_CASE("a successful rotation round lands exactly on the rotated state") {
    // Seed chosen so the first round comes out '+'.
    for (std::uint64_t seed = 0; seed < 32; ++seed) {
        Rng rng(seed);
        const StateVector zero = StateVector::qubits(1);
        const GadgetResult r = rus_rotation(zero, rotation_ancilla, rng, 64);
        CHECK(r.flags.empty());
        StateVector expected = zero;
        expected.apply(gate_r_2pi_3(), {0});
        CHECK(fidelity(r.output, expected) > 1.0 - 1e-10);
        if (r.rounds == 1) {
            CHECK(r.output.amp(0).real() == doctest::Approx(-0.5).epsilon(1e-10));
            CHECK(r.output.amp(1).real() ==
                  doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("the net rotation is exact for random inputs regardless of the path") {
    Rng state_rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const StateVector psi = random_qubit(state_rng);
        StateVector expected = psi;
        expected.apply(gate_r_2pi_3(), {0});
        Rng rng(derive_seed(5150, trial));
        const GadgetResult r = rus_rotation(psi, rotation_ancilla, rng, 256);
        CHECK(r.flags.empty());
        CHECK(r.rounds >= 1);
        CHECK(fidelity(r.output, expected) > 1.0 - 1e-10);
    }
}

TEST_CASE("each round's +/- outcome is an exact coin flip") {
    Rng state_rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const StateVector psi = random_qubit(state_rng);
        StateVector joint = tensor(rotation_ancilla(), psi);
        joint.apply(gate_cz(), {0, 1});
        joint.apply(gate_cnot(), {0, 1});
        const auto probs = outcome_probabilities(joint, 0, MeasureBasis::PlusMinus);
        CHECK(probs[0] == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(probs[1] == doctest::Approx(0.5).epsilon(1e-10));
    }
}

TEST_CASE("mean round count sits near two") {
    Rng rng(1234);
    const StateVector zero = StateVector::qubits(1);
    double total = 0.0;
    const int trials = 4000;
    for (int t = 0; t < trials; ++t) {
        total += double(rus_rotation(zero, rotation_ancilla, rng, 256).rounds);
    }
    const double mean = total / trials;
    CHECK(mean == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("an exhausted round budget is flagged, not silently dropped") {
    // find a seed whose first round is '-', so one round cannot finish
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        Rng probe(seed);
        const GadgetResult two = rus_rotation(StateVector::qubits(1), rotation_ancilla, probe, 64);
        if (two.rounds > 1) {
            Rng rng(seed);
            const GadgetResult r =
                rus_rotation(StateVector::qubits(1), rotation_ancilla, rng, 1);
            CHECK(r.flagged("incomplete"));
            return;
        }
    }
    FAIL("no seed with a '-' first round found");
}

TEST_CASE("the encoded gadget applies the logical rotation through a code") {
    const QuantumCode steane = css_code(hamming_7_4(), hamming_7_4(), "css-hamming");
    Rng state_rng(31);
    for (int trial = 0; trial < 3; ++trial) {
        const StateVector bare = random_qubit(state_rng);
        StateVector bare_rotated = bare;
        bare_rotated.apply(gate_r_2pi_3(), {0});
        const StateVector expected = steane.encode(bare_rotated);

        Rng rng(derive_seed(808, trial));
        const GadgetResult r = rus_rotation_encoded(
            steane, steane.encode(bare), [&] { return steane.encode(rotation_ancilla()); }, rng,
            64);
        CHECK(r.flags.empty());
        CHECK(fidelity(r.output, expected) > 1.0 - 1e-10);
    }
}

TEST_CASE("the AND ancilla has the stated amplitudes") {
    const StateVector anc = toffoli_ancilla();
    CHECK(std::abs(anc.norm_sq() - 1.0) < 1e-12);
    for (std::size_t idx = 0; idx < 8; ++idx) {
        const bool support = idx == 0b000 || idx == 0b100 || idx == 0b010 || idx == 0b111;
        CHECK(anc.amp(idx).real() == doctest::Approx(support ? 0.5 : 0.0));
        // third qubit = AND of the first two on every support string
        if (support) {
            const int a = (idx >> 2) & 1, b = (idx >> 1) & 1, c = idx & 1;
            CHECK(c == (a & b));
        }
    }
}

TEST_CASE("the gadget reproduces the Toffoli truth table") {
    for (std::size_t basis = 0; basis < 8; ++basis) {
        StateVector expected = StateVector::basis({2, 2, 2}, basis);
        expected.apply(gate_toffoli(), {0, 1, 2});
        for (std::uint64_t seed : {0ULL, 1ULL, 2ULL}) {
            Rng rng(derive_seed(seed, basis));
            const GadgetResult r =
                gadget_toffoli(StateVector::basis({2, 2, 2}, basis), toffoli_ancilla(), rng);
            CHECK(fidelity(r.output, expected) > 1.0 - 1e-10);
        }
    }
}

TEST_CASE("the gadget matches the dense Toffoli on random superpositions") {
    Rng state_rng(500);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector psi = random_state(3, state_rng);
        StateVector expected = psi;
        expected.apply(gate_toffoli(), {0, 1, 2});
        Rng rng(derive_seed(123456, trial));
        const GadgetResult r = gadget_toffoli(psi, toffoli_ancilla(), rng);
        CHECK(fidelity(r.output, expected) > 1.0 - 1e-10);
    }
}

TEST_CASE("noiseless cat preparation is exact and passes verification") {
    Rng rng(9);
    const GadgetResult r = prepare_cat(4, NoiseModel{}, rng, true);
    CHECK(r.flags.empty());
    std::vector<cplx> expect(16, 0.0);
    expect[0] = 1.0 / std::sqrt(2.0);
    expect[15] = 1.0 / std::sqrt(2.0);
    const StateVector cat = StateVector::from_amplitudes({2, 2, 2, 2}, std::move(expect));
    CHECK(fidelity(r.output, cat) > 1.0 - 1e-10);
}

TEST_CASE("verification never accepts a bit-parity violation (exhaustive X injection)") {
    const std::size_t n = 4;
    std::vector<cplx> expect(16, 0.0);
    expect[0] = 1.0 / std::sqrt(2.0);
    expect[15] = 1.0 / std::sqrt(2.0);
    const StateVector cat = StateVector::from_amplitudes({2, 2, 2, 2}, std::move(expect));

    std::size_t rejected = 0;
    const std::size_t instructions = n; // H plus the n-1 chain CNOTs
    for (std::size_t loc = 0; loc < instructions; ++loc) {
        for (std::size_t q = 0; q < n; ++q) {
            Rng rng(derive_seed(777, loc * n + q));
            const GadgetResult r = prepare_cat(n, NoiseModel{}, rng, true, 1,
                                               InjectedFault{loc, q, 'X'});
            if (r.flagged("parity_reject")) {
                ++rejected;
            } else {
                // accepted states carry no bit disagreement at all
                CHECK(fidelity(r.output, cat) > 1.0 - 1e-10);
            }
        }
    }
    CHECK(rejected >= instructions * n - 2); // only a pre-chain X on qubit 0 is harmless
}

TEST_CASE("noisy cat preparation eventually yields a verified state") {
    NoiseModel noise;
    noise.p_depol = 0.02;
    Rng rng(2718);
    const GadgetResult r = prepare_cat(5, noise, rng, true, 256);
    CHECK_FALSE(r.flagged("retry_budget_exhausted"));
    // accepted: every pairwise parity holds, i.e. support on the two all-equal strings
    for (std::size_t idx = 1; idx < 31; ++idx) {
        CHECK(std::abs(r.output.amp(idx)) < 1e-10);
    }
}

TEST_CASE("density check: a gate already in the set is found at depth one") {
    const auto r = density_check({gate_h(), gate_t()}, gate_t(), 3);
    CHECK(r.distance < 1e-9);
    CHECK(r.sequence.size() == 1);
}

TEST_CASE("density check: H,T approximations of the rotation improve with depth") {
    const auto shallow = density_check({gate_h(), gate_t()}, gate_r_2pi_3(), 6);
    const auto deep = density_check({gate_h(), gate_t()}, gate_r_2pi_3(), 12);
    CHECK(deep.distance < shallow.distance);
    CHECK(deep.distance < 0.5);
}

TEST_CASE("density check: a finite group stays bounded away from a generic target") {
    const auto r = density_check({gate_h()}, gate_t(), 12);
    CHECK(r.distance > 0.1);
}

TEST_CASE("memory experiment: no noise means no logical errors") {
    const auto result =
        memory_experiment(bit_flip_code(), NoiseModel{}, 3, 500, 42, LogicalBasis::Z);
    CHECK(result.failures == 0);
    CHECK(result.logical_rate == 0.0);
}

TEST_CASE("memory experiment matches the majority-vote failure formula") {
    // one round of X noise at rate p: failure probability 3p^2(1-p) + p^3
    const double p = 0.05;
    NoiseModel noise;
    noise.p_x = p;
    const auto result = memory_experiment(bit_flip_code(), noise, 1, 100000, 7, LogicalBasis::Z);
    const double expected = 3 * p * p * (1 - p) + p * p * p;
    CHECK(expected == doctest::Approx(0.00725));
    CHECK(std::abs(result.logical_rate - expected) < 0.002);
    CHECK(result.ci_low <= expected);
    CHECK(result.ci_high >= expected);
}

TEST_CASE("memory experiment is reproducible for a fixed seed") {
    NoiseModel noise;
    noise.p_depol = 0.01;
    const auto a = memory_experiment(bit_flip_code(), noise, 2, 2000, 99, LogicalBasis::Z);
    const auto b = memory_experiment(bit_flip_code(), noise, 2, 2000, 99, LogicalBasis::Z);
    CHECK(a.failures == b.failures);
    CHECK(a.logical_rate == b.logical_rate);
}

TEST_CASE("measurement flips corrupt the syndrome only when enabled") {
    NoiseModel noise;
    noise.p_meas_flip = 1.0; // every syndrome bit reads inverted
    // with flips on, the (1,1) syndrome triggers a spurious middle-qubit
    // correction and every trial fails the logical readout
    const auto flipped =
        memory_experiment(bit_flip_code(), noise, 1, 200, 21, LogicalBasis::Z, true);
    CHECK(flipped.logical_rate == 1.0);
    // with the flag off the same model is inert
    const auto clean =
        memory_experiment(bit_flip_code(), noise, 1, 200, 21, LogicalBasis::Z, false);
    CHECK(clean.logical_rate == 0.0);
}

TEST_CASE("encoded memory beats the bare error rate inside the correctable regime") {
    NoiseModel noise;
    noise.p_depol = 0.01;
    const QuantumCode steane = css_code(hamming_7_4(), hamming_7_4(), "css-hamming");
    const auto result = memory_experiment(steane, noise, 1, 20000, 11, LogicalBasis::Z);
    CHECK(result.logical_rate < noise.p_depol);
}

TEST_CASE("wilson intervals bracket the point estimate") {
    const auto [lo, hi] = wilson_interval(7, 1000);
    CHECK(lo > 0.0);
    CHECK(lo < 0.007);
    CHECK(hi > 0.007);
    CHECK(hi < 0.02);
    const auto [zlo, zhi] = wilson_interval(0, 1000);
    CHECK(zlo < 1e-12);
    CHECK(zhi > 0.0);
}

TEST_CASE("csv output is stable, schema-shaped, and byte-deterministic") {
    NoiseModel noise;
    noise.p_x = 0.001;
    const auto result = memory_experiment(bit_flip_code(), noise, 1, 1000, 5, LogicalBasis::Z);
    std::stringstream a, b;
    write_results_csv(a, std::vector<MemoryExperimentResult>{result});
    write_results_csv(b, std::vector<MemoryExperimentResult>{result});
    CHECK(a.str() == b.str());
    std::string line;
    std::getline(a, line);
    CHECK(line.rfind("# qeclab", 0) == 0);
    std::getline(a, line);
    CHECK(line == "code,p_x,p_z,p_depol,rounds,trials,logical_rate,ci_low,ci_high,seed");
    std::getline(a, line);
    CHECK(line.rfind("bitflip,0.001,", 0) == 0);

    const std::string json = results_json(std::vector<MemoryExperimentResult>{result});
    CHECK(json.find("\"logical_rate\"") != std::string::npos);
    CHECK(json.find("\"seed\": 5") != std::string::npos);
}
