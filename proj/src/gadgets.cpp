#include "qeclab/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "qeclab/gates.hpp"

namespace qeclab {

StateVector rotation_ancilla() {
    const double s = std::sqrt(3.0) / 2.0;
    return StateVector::from_amplitudes({2}, {-0.5, s});
}

namespace {

StateVector plus_minus_state(int outcome) {
    const double s = 1.0 / std::sqrt(2.0);
    return StateVector::from_amplitudes({2}, {s, outcome == 0 ? s : -s});
}

} // namespace

GadgetResult rus_rotation(const StateVector& data,
                          const std::function<StateVector()>& ancilla_supply, Rng& rng,
                          std::size_t max_rounds) {
    if (max_rounds < 1) throw std::invalid_argument("rus_rotation: max_rounds must be >= 1");
    if (data.register_count() != 1 || data.dim(0) != 2) {
        throw std::invalid_argument("rus_rotation: expected one bare qubit");
    }

    GadgetResult result{data, 0, {}};
    int net = 0; // net rotation exponent mod 3; stop at +1
    for (std::size_t round = 0; round < max_rounds; ++round) {
        // CZ entangles, the CNOT onto the data wire completes the rotation,
        // and the +/- readout of the ancilla picks the direction.
        StateVector joint = tensor(ancilla_supply(), result.output);
        joint.apply(gate_cz(), {0, 1});
        joint.apply(gate_cnot(), {0, 1});
        const int outcome = measure_in_place(joint, 0, MeasureBasis::PlusMinus, rng);
        result.output = factor_register(joint, 0, plus_minus_state(outcome));
        net = (net + (outcome == 0 ? 1 : 2)) % 3;
        result.rounds = round + 1;
        if (net == 1) return result;
    }
    result.flags.push_back("incomplete");
    return result;
}

GadgetResult rus_rotation_encoded(const QuantumCode& code, const StateVector& encoded_data,
                                  const std::function<StateVector()>& encoded_ancilla_supply,
                                  Rng& rng, std::size_t max_rounds) {
    if (max_rounds < 1) throw std::invalid_argument("rus_rotation: max_rounds must be >= 1");
    const std::size_t n = code.n();
    if (encoded_data.register_count() != n || !encoded_data.all_qubits()) {
        throw std::invalid_argument("rus_rotation_encoded: data is not one encoded block");
    }
    if (!code.transversal.count("CZ") || !code.transversal.count("CNOT")) {
        throw std::invalid_argument("rus_rotation_encoded: code lacks transversal CZ/CNOT");
    }

    GadgetResult result{encoded_data, 0, {}};
    const Pauli logical_x_anc = embed_pauli(code.stab.logical_x[0], 0, 2 * n);
    int net = 0;
    for (std::size_t round = 0; round < max_rounds; ++round) {
        // ancilla block on wires [0, n), data block on [n, 2n)
        StateVector joint = tensor(encoded_ancilla_supply(), result.output);
        for (std::size_t q = 0; q < n; ++q) joint.apply(gate_cz(), {q, n + q});
        for (std::size_t q = 0; q < n; ++q) joint.apply(gate_cnot(), {q, n + q});
        const int outcome = measure_pauli(joint, logical_x_anc, rng);

        // The ancilla block is now a fixed logical |+/-> factor, unentangled
        // from the data; measure it to a basis state and strip the wires.
        std::vector<int> bits(n);
        for (std::size_t q = 0; q < n; ++q) {
            bits[q] = measure_in_place(joint, q, MeasureBasis::Computational, rng);
        }
        StateVector reduced = std::move(joint);
        for (std::size_t q = 0; q < n; ++q) {
            reduced = factor_register(reduced, 0, StateVector::basis({2}, bits[q]));
        }
        result.output = std::move(reduced);
        net = (net + (outcome == 0 ? 1 : 2)) % 3;
        result.rounds = round + 1;
        if (net == 1) return result;
    }
    result.flags.push_back("incomplete");
    return result;
}

StateVector toffoli_ancilla() {
    std::vector<cplx> amps(8, 0.0);
    // half weight on 000, 100, 010, 111 (third qubit = AND of the first two)
    amps[0b000] = 0.5;
    amps[0b100] = 0.5;
    amps[0b010] = 0.5;
    amps[0b111] = 0.5;
    return StateVector::from_amplitudes({2, 2, 2}, std::move(amps));
}

GadgetResult gadget_toffoli(const StateVector& data3, const StateVector& ancilla, Rng& rng) {
    if (data3.register_count() != 3 || !data3.all_qubits() || ancilla.register_count() != 3 ||
        !ancilla.all_qubits()) {
        throw std::invalid_argument("gadget_toffoli: expected 3-qubit data and ancilla");
    }
    // data on registers 0..2 (controls 0,1, target 2); ancilla on 3..5
    StateVector joint = tensor(data3, ancilla);
    joint.apply(gate_cnot(), {0, 3});
    joint.apply(gate_cnot(), {1, 4});
    joint.apply(gate_cnot(), {5, 2});

    const int m1 = measure_in_place(joint, 3, MeasureBasis::Computational, rng);
    const int m2 = measure_in_place(joint, 4, MeasureBasis::Computational, rng);
    const int s = measure_in_place(joint, 5, MeasureBasis::PlusMinus, rng);

    // Clifford completion
    if (m1) joint.apply(gate_cnot(), {1, 2});
    if (m2) joint.apply(gate_cnot(), {0, 2});
    if (m1 && m2) joint.apply(gate_x(), {2});
    if (s) joint.apply(gate_cz(), {0, 1});
    if (s && m1) joint.apply(gate_z(), {1});
    if (s && m2) joint.apply(gate_z(), {0});

    StateVector out = factor_register(joint, 5, plus_minus_state(s));
    out = factor_register(out, 4, StateVector::basis({2}, m2));
    out = factor_register(out, 3, StateVector::basis({2}, m1));

    GadgetResult result{std::move(out), 1, {}};
    return result;
}

namespace {

void apply_letter(StateVector& state, std::size_t q, char letter) {
    apply_pauli(state, Pauli::single(state.register_count(), q, letter));
}

void gate_location_noise(StateVector& state, std::span<const std::size_t> touched,
                         const NoiseModel& noise, Rng& rng) {
    for (std::size_t q : touched) {
        if (noise.p_depol > 0.0 && rng.bernoulli(noise.p_depol)) {
            apply_letter(state, q, "XYZ"[rng.uniform_int(3)]);
        }
        if (noise.p_x > 0.0 && rng.bernoulli(noise.p_x)) apply_letter(state, q, 'X');
        if (noise.p_z > 0.0 && rng.bernoulli(noise.p_z)) apply_letter(state, q, 'Z');
    }
}

} // namespace

GadgetResult prepare_cat(std::size_t n, const NoiseModel& noise, Rng& rng, bool verify,
                         std::size_t max_attempts,
                         const std::optional<InjectedFault>& inject) {
    if (n < 2) throw std::invalid_argument("prepare_cat: need n >= 2");
    noise.validate();

    // H then a CNOT chain.
    CliffordCircuit circuit;
    circuit.push_back(CliffInstr::h(0));
    for (std::size_t q = 0; q + 1 < n; ++q) circuit.push_back(CliffInstr::cnot(q, q + 1));

    GadgetResult result{StateVector::qubits(n), 0, {}};
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        result.rounds = attempt + 1;
        StateVector state = StateVector::qubits(n);
        for (std::size_t i = 0; i < circuit.size(); ++i) {
            const CliffInstr& instr = circuit[i];
            if (instr.op == CliffOp::H) {
                state.apply(gate_h(), {instr.a});
                gate_location_noise(state, std::vector<std::size_t>{instr.a}, noise, rng);
            } else {
                state.apply(gate_cnot(), {instr.a, instr.b});
                gate_location_noise(state, std::vector<std::size_t>{instr.a, instr.b}, noise,
                                    rng);
            }
            if (inject && inject->after_instruction == i) {
                apply_letter(state, inject->qubit, inject->letter);
            }
        }

        if (!verify) {
            result.output = std::move(state);
            return result;
        }

        // Pairwise parity checks on fresh ancillas.
        bool rejected = false;
        for (std::size_t i = 0; i < n && !rejected; ++i) {
            for (std::size_t j = i + 1; j < n && !rejected; ++j) {
                StateVector work = tensor(state, StateVector::qubits(1));
                work.apply(gate_cnot(), {i, n});
                work.apply(gate_cnot(), {j, n});
                int bit = measure_in_place(work, n, MeasureBasis::Computational, rng);
                if (noise.p_meas_flip > 0.0 && rng.bernoulli(noise.p_meas_flip)) bit ^= 1;
                state = factor_register(work, n, StateVector::basis({2}, bit));
                if (bit != 0) rejected = true;
            }
        }
        if (rejected) {
            result.flags.push_back("parity_reject");
            continue;
        }
        result.output = std::move(state);
        return result;
    }
    result.flags.push_back("retry_budget_exhausted");
    return result;
}

namespace {

// Canonical key of a 2x2 unitary up to global phase, for deduplication.
std::string phase_canonical_key(const std::array<cplx, 4>& m) {
    // rotate by the phase of the largest entry
    std::size_t big = 0;
    for (std::size_t i = 1; i < 4; ++i) {
        if (std::abs(m[i]) > std::abs(m[big])) big = i;
    }
    const cplx rot = std::conj(m[big]) / std::abs(m[big]);
    char buf[128];
    std::string key;
    for (std::size_t i = 0; i < 4; ++i) {
        const cplx v = m[i] * rot;
        std::snprintf(buf, sizeof(buf), "%.7f,%.7f;", v.real() + 0.0, v.imag() + 0.0);
        key += buf;
    }
    return key;
}

std::array<cplx, 4> mat_mul(const std::array<cplx, 4>& a, const std::array<cplx, 4>& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

// Operator-norm distance up to global phase between 2x2 unitaries:
// 2 |sin(delta / 4)| where delta is the eigenphase spread of U^dag V.
double phase_free_distance(const std::array<cplx, 4>& u, const std::array<cplx, 4>& v) {
    const std::array<cplx, 4> udag = {std::conj(u[0]), std::conj(u[2]), std::conj(u[1]),
                                      std::conj(u[3])};
    const std::array<cplx, 4> m = mat_mul(udag, v);
    const cplx tr = m[0] + m[3];
    const cplx det = m[0] * m[3] - m[1] * m[2];
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    const cplx l1 = 0.5 * (tr + disc);
    const cplx l2 = 0.5 * (tr - disc);
    const double delta = std::arg(l1 * std::conj(l2));
    return 2.0 * std::abs(std::sin(delta / 4.0));
}

} // namespace

DensityCheckResult density_check(const std::vector<Gate>& gateset, const Gate& target,
                                 std::size_t max_depth) {
    if (gateset.empty()) throw std::invalid_argument("density_check: empty gate set");
    if (max_depth > 20) throw std::invalid_argument("density_check: max_depth > 20");
    for (const Gate& g : gateset) {
        if (g.dim() != 2) throw std::invalid_argument("density_check: gates must be 2x2");
    }
    if (target.dim() != 2) throw std::invalid_argument("density_check: target must be 2x2");

    auto to_arr = [](const Gate& g) {
        return std::array<cplx, 4>{g.at(0, 0), g.at(0, 1), g.at(1, 0), g.at(1, 1)};
    };
    const std::array<cplx, 4> target_m = to_arr(target);

    struct Node {
        std::array<cplx, 4> m;
        std::vector<std::size_t> seq;
    };

    constexpr std::size_t kBeamCap = 1 << 18;

    DensityCheckResult best;
    best.distance = 2.0; // larger than any achievable distance

    std::vector<Node> frontier{{{cplx(1), cplx(0), cplx(0), cplx(1)}, {}}};
    std::unordered_map<std::string, bool> seen;
    seen.emplace(phase_canonical_key(frontier[0].m), true);

    for (std::size_t depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
        std::vector<Node> next;
        for (const Node& node : frontier) {
            for (std::size_t gi = 0; gi < gateset.size(); ++gi) {
                Node child;
                child.m = mat_mul(to_arr(gateset[gi]), node.m);
                const std::string key = phase_canonical_key(child.m);
                if (!seen.emplace(key, true).second) continue;
                child.seq = node.seq;
                child.seq.push_back(gi);
                const double d = phase_free_distance(target_m, child.m);
                if (d < best.distance) {
                    best.distance = d;
                    best.sequence = child.seq;
                }
                if (next.size() < kBeamCap) next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
    return best;
}

} // namespace qeclab
