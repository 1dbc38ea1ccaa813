#include "qeclab/tableau.hpp"

#include <stdexcept>

#include "qeclab/gates.hpp"

namespace qeclab {

void conjugate_by_gate(Pauli& p, const CliffInstr& instr) {
    const std::size_t a = instr.a;
    const std::size_t b = instr.b;
    const bool xa = p.x.get(a), za = p.z.get(a);
    switch (instr.op) {
        case CliffOp::H:
            // X <-> Z, Y -> -Y
            p.x.set(a, za);
            p.z.set(a, xa);
            if (xa && za) p.phase = (p.phase + 2) & 3;
            break;
        case CliffOp::S:
            // X -> Y; the canonical X^x Z^z factor picks up one power of i
            if (xa) {
                p.z.flip(a);
                p.phase = (p.phase + 1) & 3;
            }
            break;
        case CliffOp::Sdg:
            if (xa) {
                p.z.flip(a);
                p.phase = (p.phase + 3) & 3;
            }
            break;
        case CliffOp::X:
            if (za) p.phase = (p.phase + 2) & 3;
            break;
        case CliffOp::Z:
            if (xa) p.phase = (p.phase + 2) & 3;
            break;
        case CliffOp::Y:
            if (xa != za) p.phase = (p.phase + 2) & 3;
            break;
        case CliffOp::CNOT: {
            // X_c -> X_c X_t, Z_t -> Z_c Z_t; no phase in the X-then-Z form
            p.x.set(b, p.x.get(b) ^ xa);
            p.z.set(a, za ^ p.z.get(b));
            break;
        }
        case CliffOp::CZ: {
            const bool xb = p.x.get(b);
            // X_a -> X_a Z_b, X_b -> Z_a X_b; one anticommuting swap if both X set
            p.z.set(b, p.z.get(b) ^ xa);
            p.z.set(a, za ^ xb);
            if (xa && xb) p.phase = (p.phase + 2) & 3;
            break;
        }
        case CliffOp::Swap: {
            const bool xb = p.x.get(b), zb = p.z.get(b);
            p.x.set(a, xb);
            p.x.set(b, xa);
            p.z.set(a, zb);
            p.z.set(b, za);
            break;
        }
        case CliffOp::Measure:
            throw std::invalid_argument("conjugate_by_gate: Measure is not a unitary");
    }
}

CliffordTableau CliffordTableau::identity(std::size_t n) {
    CliffordTableau t;
    t.n = n;
    t.image_x.reserve(n);
    t.image_z.reserve(n);
    for (std::size_t q = 0; q < n; ++q) {
        t.image_x.push_back(Pauli::single(n, q, 'X'));
        t.image_z.push_back(Pauli::single(n, q, 'Z'));
    }
    return t;
}

CliffordTableau CliffordTableau::of_circuit(std::size_t n, const CliffordCircuit& circuit) {
    CliffordTableau t = identity(n);
    for (const CliffInstr& instr : circuit) {
        for (Pauli& p : t.image_x) conjugate_by_gate(p, instr);
        for (Pauli& p : t.image_z) conjugate_by_gate(p, instr);
    }
    return t;
}

bool CliffordTableau::preserves_commutation() const {
    auto gen = [&](std::size_t i) -> const Pauli& {
        return i < n ? image_x[i] : image_z[i - n];
    };
    auto orig = [&](std::size_t i) {
        return i < n ? Pauli::single(n, i, 'X') : Pauli::single(n, i - n, 'Z');
    };
    for (std::size_t i = 0; i < 2 * n; ++i) {
        for (std::size_t j = i + 1; j < 2 * n; ++j) {
            if (gen(i).commutes_with(gen(j)) != orig(i).commutes_with(orig(j))) return false;
        }
    }
    return true;
}

Pauli conjugate(const CliffordTableau& t, const Pauli& p) {
    if (p.n() != t.n) throw std::invalid_argument("conjugate: dimension mismatch");
    Pauli out = Pauli::identity(t.n);
    out.phase = p.phase;
    for (std::size_t q = 0; q < t.n; ++q) {
        if (p.x.get(q)) out = pauli_mul(out, t.image_x[q]);
    }
    for (std::size_t q = 0; q < t.n; ++q) {
        if (p.z.get(q)) out = pauli_mul(out, t.image_z[q]);
    }
    return out;
}

CliffordSimulator::CliffordSimulator(std::size_t n) : n_(n) {
    destab_.reserve(n);
    stab_.reserve(n);
    for (std::size_t q = 0; q < n; ++q) {
        destab_.push_back(Pauli::single(n, q, 'X'));
        stab_.push_back(Pauli::single(n, q, 'Z'));
    }
}

void CliffordSimulator::apply(const CliffInstr& instr) {
    for (Pauli& p : destab_) conjugate_by_gate(p, instr);
    for (Pauli& p : stab_) conjugate_by_gate(p, instr);
}

int CliffordSimulator::measure_z(std::size_t q, Rng& rng) {
    if (q >= n_) throw std::out_of_range("measure_z: qubit out of range");

    std::size_t pivot = n_;
    for (std::size_t i = 0; i < n_; ++i) {
        if (stab_[i].x.get(q)) {
            pivot = i;
            break;
        }
    }

    if (pivot < n_) {
        // Random outcome: Z_q anticommutes with a stabilizer.
        for (std::size_t i = 0; i < n_; ++i) {
            if (i != pivot && stab_[i].x.get(q)) stab_[i] = pauli_mul(stab_[i], stab_[pivot]);
            if (destab_[i].x.get(q)) destab_[i] = pauli_mul(destab_[i], stab_[pivot]);
        }
        destab_[pivot] = stab_[pivot];
        const int outcome = rng.uniform() < 0.5 ? 0 : 1;
        Pauli zq = Pauli::single(n_, q, 'Z');
        zq.phase = outcome ? 2 : 0;
        stab_[pivot] = zq;
        return outcome;
    }

    // Deterministic outcome: accumulate the stabilizer product that equals +/- Z_q.
    Pauli acc = Pauli::identity(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (destab_[i].x.get(q)) acc = pauli_mul(acc, stab_[i]);
    }
    return acc.phase == 2 ? 1 : 0;
}

std::vector<int> clifford_simulate(std::size_t n, const CliffordCircuit& circuit, Rng& rng) {
    CliffordSimulator sim(n);
    std::vector<int> outcomes;
    for (const CliffInstr& instr : circuit) {
        if (instr.op == CliffOp::Measure) {
            outcomes.push_back(sim.measure_z(instr.a, rng));
        } else {
            sim.apply(instr);
        }
    }
    return outcomes;
}

namespace {

void apply_unitary_instr(StateVector& state, const CliffInstr& instr) {
    switch (instr.op) {
        case CliffOp::H: state.apply(gate_h(), {instr.a}); break;
        case CliffOp::S: state.apply(gate_s(), {instr.a}); break;
        case CliffOp::Sdg: state.apply(gate_sdg(), {instr.a}); break;
        case CliffOp::X: state.apply(gate_x(), {instr.a}); break;
        case CliffOp::Y: state.apply(gate_y(), {instr.a}); break;
        case CliffOp::Z: state.apply(gate_z(), {instr.a}); break;
        case CliffOp::CNOT: state.apply(gate_cnot(), {instr.a, instr.b}); break;
        case CliffOp::CZ: state.apply(gate_cz(), {instr.a, instr.b}); break;
        case CliffOp::Swap: state.apply(gate_swap(), {instr.a, instr.b}); break;
        case CliffOp::Measure:
            throw std::invalid_argument("apply_unitary_instr: Measure is not a unitary");
    }
}

} // namespace

StateVector run_circuit_on_statevector(std::size_t n, const CliffordCircuit& circuit, Rng& rng,
                                       std::vector<int>* outcomes) {
    StateVector state = StateVector::qubits(n);
    for (const CliffInstr& instr : circuit) {
        if (instr.op == CliffOp::Measure) {
            const int r = measure_in_place(state, instr.a, MeasureBasis::Computational, rng);
            if (outcomes) outcomes->push_back(r);
        } else {
            apply_unitary_instr(state, instr);
        }
    }
    return state;
}

std::vector<double> measured_distribution_statevector(std::size_t n,
                                                      const CliffordCircuit& circuit) {
    StateVector state = StateVector::qubits(n);
    std::vector<std::size_t> measured;
    for (const CliffInstr& instr : circuit) {
        if (instr.op == CliffOp::Measure) {
            measured.push_back(instr.a);
        } else {
            if (!measured.empty()) {
                throw std::invalid_argument(
                    "measured_distribution_statevector: measurements must be terminal");
            }
            apply_unitary_instr(state, instr);
        }
    }
    std::vector<double> probs(std::size_t(1) << measured.size(), 0.0);
    const std::size_t total = state.total_dim();
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t key = 0;
        for (std::size_t m = 0; m < measured.size(); ++m) {
            key = (key << 1) | state.digit(i, measured[m]);
        }
        probs[key] += std::norm(state.amp(i));
    }
    return probs;
}

} // namespace qeclab
