#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "qeclab/gates.hpp"
#include "qeclab/statevector.hpp"

using namespace qeclab;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector plus_state() {
    return StateVector::from_amplitudes({2}, {kInvSqrt2, kInvSqrt2});
}

} // namespace

TEST_CASE("gate construction rejects non-unitary matrices") {
    CHECK_THROWS_AS(Gate("bad", {2}, {1, 0, 0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Gate("bad", {2}, {1, 0, 0}), std::invalid_argument);
    CHECK_NOTHROW(Gate("ok", {2}, {0, 1, 1, 0}));
}

TEST_CASE("H on |0> gives the equal superposition") {
    StateVector s = StateVector::qubits(1);
    s.apply(gate_h(), {0});
    CHECK(s.amp(0).real() == doctest::Approx(kInvSqrt2).epsilon(1e-12));
    CHECK(s.amp(1).real() == doctest::Approx(kInvSqrt2).epsilon(1e-12));
    CHECK(fidelity(s, plus_state()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("X flips a basis state") {
    StateVector s = StateVector::qubits(1);
    s.apply(gate_x(), {0});
    CHECK(std::abs(s.amp(1) - cplx(1.0)) < 1e-12);
}

TEST_CASE("the 2pi/3 rotation maps |0> to its first matrix column") {
    StateVector s = StateVector::qubits(1);
    s.apply(gate_r_2pi_3(), {0});
    CHECK(s.amp(0).real() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(s.amp(1).real() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("apply validates targets") {
    StateVector s = StateVector::qubits(2);
    CHECK_THROWS_AS(s.apply(gate_cnot(), {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(s.apply(gate_h(), {5}), std::out_of_range);
    CHECK_THROWS_AS(s.apply(gate_cnot(), {0}), std::invalid_argument);
}

TEST_CASE("gate application on non-adjacent targets uses the register order") {
    // CNOT with control register 2 and target register 0 on |001>
    StateVector s = StateVector::basis({2, 2, 2}, 0b001);
    s.apply(gate_cnot(), {2, 0});
    CHECK(std::abs(s.amp(0b101) - cplx(1.0)) < 1e-12);
}

TEST_CASE("norm is preserved by long random-ish gate sequences") {
    StateVector s = StateVector::qubits(3);
    const Gate gates[] = {gate_h(), gate_t(), gate_s(), gate_x()};
    for (int round = 0; round < 50; ++round) {
        s.apply(gates[round % 4], {static_cast<std::size_t>(round % 3)});
        s.apply(gate_cnot(), {static_cast<std::size_t>(round % 3),
                              static_cast<std::size_t>((round + 1) % 3)});
    }
    CHECK(std::abs(s.norm_sq() - 1.0) < 1e-10);
}

TEST_CASE("a unitary followed by its adjoint restores the input") {
    StateVector s = StateVector::qubits(2);
    s.apply(gate_h(), {0});
    s.apply(gate_cnot(), {0, 1});
    const StateVector before = s;
    const Gate u = gate_r_2pi_3();
    s.apply(u, {1});
    s.apply(u.dagger(), {1});
    CHECK(fidelity(s, before) > 1.0 - 1e-10);
}

TEST_CASE("measurement of eigenstates is deterministic") {
    Rng rng(7);
    const StateVector one = StateVector::basis({2}, 1);
    const auto rec = measure(one, 0, MeasureBasis::Computational, rng);
    CHECK(rec.outcome == 1);
    CHECK(rec.probability == doctest::Approx(1.0));
    CHECK(fidelity(rec.collapsed, one) == doctest::Approx(1.0));

    const auto pm = measure(plus_state(), 0, MeasureBasis::PlusMinus, rng);
    CHECK(pm.outcome == 0);
    CHECK(pm.probability == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("measurement probabilities follow the Born rule and sum to one") {
    const auto probs = outcome_probabilities(plus_state(), 0, MeasureBasis::Computational);
    CHECK(probs[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(probs[1] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(probs[0] + probs[1] == doctest::Approx(1.0).epsilon(1e-10));

    // a lopsided qutrit register
    StateVector s = StateVector::from_amplitudes({3}, {0.6, cplx(0, 0.8), 0.0});
    const auto p3 = outcome_probabilities(s, 0, MeasureBasis::Computational);
    CHECK(p3[0] == doctest::Approx(0.36).epsilon(1e-10));
    CHECK(p3[1] == doctest::Approx(0.64).epsilon(1e-10));
    CHECK(p3[0] + p3[1] + p3[2] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("identical seeds give identical outcome sequences") {
    for (int trial = 0; trial < 3; ++trial) {
        Rng a(42), b(42);
        StateVector s1 = StateVector::qubits(4);
        StateVector s2 = StateVector::qubits(4);
        for (std::size_t q = 0; q < 4; ++q) {
            s1.apply(gate_h(), {q});
            s2.apply(gate_h(), {q});
        }
        for (std::size_t q = 0; q < 4; ++q) {
            CHECK(measure_in_place(s1, q, MeasureBasis::Computational, a) ==
                  measure_in_place(s2, q, MeasureBasis::Computational, b));
        }
    }
}

TEST_CASE("fidelity identities") {
    const StateVector zero = StateVector::qubits(1);
    const StateVector one = StateVector::basis({2}, 1);
    CHECK(fidelity(zero, zero) == doctest::Approx(1.0));
    CHECK(fidelity(zero, one) == doctest::Approx(0.0));
    CHECK(fidelity(zero, plus_state()) == doctest::Approx(0.5).epsilon(1e-10));
    // symmetric, and phase-blind
    StateVector phased = StateVector::from_amplitudes({2}, {cplx(0, 1), 0});
    CHECK(fidelity(zero, phased) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fidelity(plus_state(), zero) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("tensor products concatenate registers") {
    const StateVector zero = StateVector::qubits(1);
    const StateVector one = StateVector::basis({2}, 1);
    const StateVector zo = tensor(zero, one);
    CHECK(zo.register_count() == 2);
    CHECK(std::abs(zo.amp(0b01) - cplx(1.0)) < 1e-12);

    const StateVector po = tensor(plus_state(), zero);
    CHECK(po.amp(0b00).real() == doctest::Approx(kInvSqrt2).epsilon(1e-12));
    CHECK(po.amp(0b10).real() == doctest::Approx(kInvSqrt2).epsilon(1e-12));

    // (|0>+|1>)^x3 / sqrt(8): uniform over all eight strings
    const StateVector p3 = tensor(tensor(plus_state(), plus_state()), plus_state());
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(p3.amp(i).real() == doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-12));
    }
}

TEST_CASE("the amplitude cap is enforced") {
    CHECK_THROWS_AS(StateVector::qubits(25), std::invalid_argument);
}

TEST_CASE("factor_register strips a known product factor") {
    const StateVector data = plus_state();
    StateVector joint = tensor(StateVector::basis({2}, 1), data);
    const StateVector rest = factor_register(joint, 0, StateVector::basis({2}, 1));
    CHECK(fidelity(rest, data) == doctest::Approx(1.0).epsilon(1e-10));

    // entangled pair cannot be factored
    StateVector bell = StateVector::qubits(2);
    bell.apply(gate_h(), {0});
    bell.apply(gate_cnot(), {0, 1});
    CHECK_THROWS_AS(factor_register(bell, 0, StateVector::basis({2}, 0)), std::runtime_error);
}

TEST_CASE("controlled() and power() build the expected matrices") {
    const Gate cz_built = gate_z().controlled();
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            CHECK(std::abs(cz_built.at(r, c) - gate_cz().at(r, c)) < 1e-12);
        }
    }
    const Gate s2 = gate_t().power(2); // T^2 = S
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            CHECK(std::abs(s2.at(r, c) - gate_s().at(r, c)) < 1e-12);
        }
    }
}
