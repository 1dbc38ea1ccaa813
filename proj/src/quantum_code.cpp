#include "qeclab/quantum_code.hpp"

#include <algorithm>
#include <stdexcept>

#include "qeclab/gates.hpp"

namespace qeclab {

namespace {

std::uint32_t pack_syndrome(const BitVec& bits) {
    std::uint32_t key = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        key = (key << 1) | (bits.get(i) ? 1u : 0u);
    }
    return key;
}

} // namespace

Pauli embed_pauli(const Pauli& p, std::size_t offset, std::size_t total) {
    Pauli out(total);
    for (std::size_t q = 0; q < p.n(); ++q) {
        const char letter = p.letter_at(q);
        if (letter != 'I') out.set_letter(offset + q, letter);
    }
    out.phase = (out.phase + p.sign_exponent()) & 3;
    return out;
}

namespace {

// Rank-one projector construction of the encoded |0>_L: project a fiducial
// basis state onto the joint +1 eigenspace of the generators and logical Z.
StateVector projector_logical_zero(const StabilizerCode& stab) {
    std::vector<Pauli> fixers = stab.generators;
    fixers.push_back(stab.logical_z[0]);
    for (std::size_t fiducial = 0; fiducial < (std::size_t(1) << stab.n); ++fiducial) {
        StateVector state = StateVector::basis(std::vector<std::size_t>(stab.n, 2), fiducial);
        for (const Pauli& g : fixers) {
            StateVector mirrored = state;
            apply_pauli(mirrored, g);
            for (std::size_t i = 0; i < state.total_dim(); ++i) {
                state.set_amp(i, 0.5 * (state.amp(i) + mirrored.amp(i)));
            }
        }
        if (state.norm_sq() > 1e-9) {
            state.normalize();
            return state;
        }
    }
    throw std::logic_error("projector_logical_zero: empty codespace");
}

} // namespace

StateVector QuantumCode::encode(const StateVector& data) const {
    if (!data.all_qubits() || data.register_count() != k()) {
        throw std::invalid_argument("encode: expected a k-qubit data state");
    }
    if (encoder.empty() && n() > k()) {
        // circuit-free path for wrapped stabilizer codes (k = 1)
        if (k() != 1) throw std::logic_error("encode: projector path needs k = 1");
        StateVector zero_l = projector_logical_zero(stab);
        StateVector one_l = zero_l;
        apply_pauli(one_l, stab.logical_x[0]);
        std::vector<cplx> amps(zero_l.total_dim());
        for (std::size_t i = 0; i < amps.size(); ++i) {
            amps[i] = data.amp(0) * zero_l.amp(i) + data.amp(1) * one_l.amp(i);
        }
        return StateVector::from_amplitudes(zero_l.dims(), std::move(amps));
    }
    StateVector state = k() == n() ? data : tensor(data, StateVector::qubits(n() - k()));
    for (const CliffInstr& instr : encoder) {
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
                throw std::logic_error("encode: encoder circuits must be unitary");
        }
    }
    return state;
}

StateVector QuantumCode::encode_basis(std::size_t index) const {
    return encode(StateVector::basis(std::vector<std::size_t>(k(), 2), index));
}

Syndrome QuantumCode::syndrome_of(const Pauli& error) const {
    Syndrome s;
    s.bits = BitVec(stab.generators.size());
    for (std::size_t i = 0; i < stab.generators.size(); ++i) {
        s.bits.set(i, !error.commutes_with(stab.generators[i]));
    }
    s.packed = pack_syndrome(s.bits);
    return s;
}

void build_decoder_table(QuantumCode& code, std::size_t max_weight) {
    const std::size_t r = code.stab.generators.size();
    if (r > 16) throw std::invalid_argument("build_decoder_table: too many generators");
    const std::size_t entries = std::size_t(1) << r;
    code.decoder_table.assign(entries, Pauli::identity(code.n()));
    code.decoder_known.assign(entries, false);
    code.decoder_known[0] = true; // identity correction for the clean syndrome
    std::size_t filled = 1;

    for (std::size_t w = 1; w <= max_weight && filled < entries; ++w) {
        for_each_pauli_of_weight(code.n(), w, ErrorSupport::All, [&](const Pauli& e) {
            const std::uint32_t key = code.syndrome_of(e).packed;
            if (!code.decoder_known[key]) {
                code.decoder_table[key] = e;
                code.decoder_known[key] = true;
                ++filled;
            }
            return filled < entries;
        });
    }
}

QuantumCode bit_flip_code() {
    QuantumCode code;
    code.name = "bitflip";
    code.stab.n = 3;
    code.stab.k = 1;
    code.stab.generators = {Pauli::from_string("ZZI"), Pauli::from_string("IZZ")};
    code.stab.logical_x = {Pauli::from_string("XXX")};
    code.stab.logical_z = {Pauli::from_string("ZZZ")};
    code.encoder = {CliffInstr::cnot(0, 1), CliffInstr::cnot(0, 2)};
    build_decoder_table(code, 3);
    code.transversal["X"] = {CliffOp::X, 1};
    code.transversal["Z"] = {CliffOp::Z, 1};
    code.transversal["CNOT"] = {CliffOp::CNOT, 2};
    code.stab.distance = min_distance(code.stab);
    code.stab.validate();
    return code;
}

QuantumCode quantum_code_from_stabilizer(StabilizerCode stab, const std::string& name) {
    if (stab.k != 1) {
        throw std::invalid_argument(
            "quantum_code_from_stabilizer: only k = 1 codes can be wrapped");
    }
    stab.validate();
    QuantumCode code;
    code.name = name;
    code.stab = std::move(stab);
    build_decoder_table(code, code.n());
    return code;
}

QuantumCode hadamard_conjugate(const QuantumCode& code, const std::string& new_name) {
    const std::size_t n = code.n();
    CliffordCircuit h_layer;
    for (std::size_t q = 0; q < n; ++q) h_layer.push_back(CliffInstr::h(q));
    const CliffordTableau h_tab = CliffordTableau::of_circuit(n, h_layer);

    QuantumCode out;
    out.name = new_name;
    out.stab.n = n;
    out.stab.k = code.k();
    for (const Pauli& g : code.stab.generators) out.stab.generators.push_back(conjugate(h_tab, g));
    for (const Pauli& l : code.stab.logical_x) out.stab.logical_x.push_back(conjugate(h_tab, l));
    for (const Pauli& l : code.stab.logical_z) out.stab.logical_z.push_back(conjugate(h_tab, l));
    out.stab.distance = code.stab.distance;

    out.encoder = code.encoder;
    for (std::size_t q = 0; q < n; ++q) out.encoder.push_back(CliffInstr::h(q));

    out.decoder_table.reserve(code.decoder_table.size());
    for (const Pauli& c : code.decoder_table) out.decoder_table.push_back(conjugate(h_tab, c));
    out.decoder_known = code.decoder_known;

    for (const auto& [gate, rule] : code.transversal) {
        if (rule.blocks != 1) continue; // two-block rules do not survive the frame change
        if (rule.physical_op == CliffOp::X) {
            out.transversal[gate] = {CliffOp::Z, 1};
        } else if (rule.physical_op == CliffOp::Z) {
            out.transversal[gate] = {CliffOp::X, 1};
        } else if (rule.physical_op == CliffOp::H) {
            out.transversal[gate] = rule;
        }
    }
    out.stab.validate();
    return out;
}

QuantumCode phase_flip_code() {
    return hadamard_conjugate(bit_flip_code(), "phaseflip");
}

Pauli lift_through_blocks(const Pauli& outer, const std::vector<Pauli>& block_logical_x,
                          const std::vector<Pauli>& block_logical_z) {
    const std::size_t total = block_logical_x.empty() ? 0 : block_logical_x[0].n();
    Pauli acc = Pauli::identity(total);
    acc.phase = outer.phase;
    for (std::size_t j = 0; j < outer.n(); ++j) {
        if (outer.x.get(j)) acc = pauli_mul(acc, block_logical_x[j]);
    }
    for (std::size_t j = 0; j < outer.n(); ++j) {
        if (outer.z.get(j)) acc = pauli_mul(acc, block_logical_z[j]);
    }
    return acc;
}

QuantumCode concatenate(const QuantumCode& outer, const QuantumCode& inner) {
    if (outer.k() != 1 || inner.k() != 1) {
        throw std::invalid_argument("concatenate: both codes must encode k = 1");
    }
    const std::size_t n1 = outer.n();
    const std::size_t n2 = inner.n();
    const std::size_t n = n1 * n2;

    QuantumCode code;
    code.name = outer.name + "*" + inner.name;
    code.stab.n = n;
    code.stab.k = 1;

    // Per-block logical operators of the inner code.
    std::vector<Pauli> lx(n1), lz(n1);
    for (std::size_t b = 0; b < n1; ++b) {
        lx[b] = embed_pauli(inner.stab.logical_x[0], b * n2, n);
        lz[b] = embed_pauli(inner.stab.logical_z[0], b * n2, n);
    }

    for (std::size_t b = 0; b < n1; ++b) {
        for (const Pauli& g : inner.stab.generators) {
            code.stab.generators.push_back(embed_pauli(g, b * n2, n));
        }
    }
    for (const Pauli& g : outer.stab.generators) {
        code.stab.generators.push_back(lift_through_blocks(g, lx, lz));
    }
    code.stab.logical_x = {lift_through_blocks(outer.stab.logical_x[0], lx, lz)};
    code.stab.logical_z = {lift_through_blocks(outer.stab.logical_z[0], lx, lz)};

    // Outer encoder on block-leading wires, then each block's inner encoder.
    for (const CliffInstr& instr : outer.encoder) {
        CliffInstr mapped = instr;
        mapped.a = instr.a * n2;
        mapped.b = instr.b * n2;
        code.encoder.push_back(mapped);
    }
    for (std::size_t b = 0; b < n1; ++b) {
        for (const CliffInstr& instr : inner.encoder) {
            CliffInstr mapped = instr;
            mapped.a = b * n2 + instr.a;
            mapped.b = b * n2 + instr.b;
            code.encoder.push_back(mapped);
        }
    }

    // Hierarchical decoding: inner tables per block, then the outer table
    // applied through the block logicals.
    const std::size_t r_in = inner.stab.generators.size();
    const std::size_t r_out = outer.stab.generators.size();
    const std::size_t r = n1 * r_in + r_out;
    if (r > 16) throw std::invalid_argument("concatenate: syndrome space too large");
    code.decoder_table.assign(std::size_t(1) << r, Pauli::identity(n));
    code.decoder_known.assign(std::size_t(1) << r, true);
    for (std::uint32_t key = 0; key < (std::uint32_t(1) << r); ++key) {
        Pauli correction = Pauli::identity(n);
        bool known = true;
        for (std::size_t b = 0; b < n1; ++b) {
            const std::uint32_t sub =
                (key >> (r - (b + 1) * r_in)) & ((std::uint32_t(1) << r_in) - 1);
            if (!inner.decoder_known[sub]) known = false;
            correction =
                pauli_mul(correction, embed_pauli(inner.decoder_table[sub], b * n2, n));
        }
        const std::uint32_t outer_key = key & ((std::uint32_t(1) << r_out) - 1);
        if (!outer.decoder_known[outer_key]) known = false;
        correction =
            pauli_mul(correction, lift_through_blocks(outer.decoder_table[outer_key], lx, lz));
        code.decoder_table[key] = correction;
        code.decoder_known[key] = known;
    }

    // Lift single-qubit transversal rules: outer X/Z realized by the inner
    // code's own bitwise rules.
    for (const char* gate : {"X", "Z"}) {
        const auto outer_it = outer.transversal.find(gate);
        if (outer_it == outer.transversal.end() || outer_it->second.blocks != 1) continue;
        const char* inner_gate = outer_it->second.physical_op == CliffOp::X ? "X"
                                 : outer_it->second.physical_op == CliffOp::Z ? "Z"
                                                                              : nullptr;
        if (!inner_gate) continue;
        const auto inner_it = inner.transversal.find(inner_gate);
        if (inner_it == inner.transversal.end() || inner_it->second.blocks != 1) continue;
        code.transversal[gate] = inner_it->second;
    }

    if (n <= 12) code.stab.distance = min_distance(code.stab);
    code.stab.validate();
    return code;
}

namespace {

// Logical coset of a normalizer element for k = 1 codes: 'I', 'X', 'Z', 'Y',
// or 0 when it is not in the normalizer at all.
char logical_coset(const QuantumCode& code, const Pauli& candidate) {
    for (const Pauli& g : code.stab.generators) {
        if (!candidate.commutes_with(g)) return 0;
    }
    const bool flips_z = !candidate.commutes_with(code.stab.logical_z[0]);
    const bool flips_x = !candidate.commutes_with(code.stab.logical_x[0]);
    if (flips_z && flips_x) return 'Y';
    if (flips_z) return 'X';
    if (flips_x) return 'Z';
    return 'I';
}

} // namespace

QuantumCode css_code(const ClassicalLinearCode& c1, const ClassicalLinearCode& c2,
                     const std::string& name) {
    if (c1.n != c2.n) throw std::invalid_argument("css_code: block length mismatch");
    const std::size_t n = c1.n;
    const ClassicalLinearCode d2 = dual_code(c2);

    // Weak duality: every dual(c2) word must sit inside c1.
    {
        std::vector<BitVec> rows;
        for (std::size_t i = 0; i < c1.gen.row_count(); ++i) rows.push_back(c1.gen.row(i));
        const Gf2Span span(rows);
        for (std::size_t i = 0; i < d2.gen.row_count(); ++i) {
            if (!span.contains(d2.gen.row(i))) {
                throw std::invalid_argument("css_code: weak duality fails, dual(c2) word " +
                                            d2.gen.row(i).to_string() + " is not in c1");
            }
        }
    }

    const std::size_t k = c1.k + c2.k - n;
    if (k == 0) throw std::invalid_argument("css_code: construction yields k = 0");

    // X stabilizers from dual(c2), in reduced echelon form for the encoder.
    BitMatrix gx(0, n);
    for (std::size_t i = 0; i < d2.gen.row_count(); ++i) gx.append_row(d2.gen.row(i));
    const std::vector<std::size_t> x_pivots = gx.rref();

    // Logical X representatives: a basis of c1 modulo dual(c2), reduced so
    // their pivots avoid the X-stabilizer pivots.
    BitMatrix lmat(0, n);
    {
        std::vector<BitVec> accum;
        for (std::size_t i = 0; i < gx.row_count(); ++i) accum.push_back(gx.row(i));
        Gf2Span span(accum);
        for (std::size_t i = 0; i < c1.gen.row_count() && lmat.row_count() < k; ++i) {
            BitVec candidate = c1.gen.row(i);
            if (span.contains(candidate)) continue;
            lmat.append_row(candidate);
            accum.push_back(candidate);
            span = Gf2Span(accum);
        }
    }
    if (lmat.row_count() != k) throw std::logic_error("css_code: logical basis extraction failed");
    for (std::size_t i = 0; i < lmat.row_count(); ++i) {
        for (std::size_t j = 0; j < gx.row_count(); ++j) {
            if (lmat.row(i).get(x_pivots[j])) lmat.row(i) ^= gx.row(j);
        }
    }
    const std::vector<std::size_t> l_pivots = lmat.rref();
    if (l_pivots.size() != k) throw std::logic_error("css_code: logical rows lost rank");

    QuantumCode code;
    code.name = name;
    code.stab.n = n;
    code.stab.k = k;
    for (std::size_t i = 0; i < gx.row_count(); ++i) {
        code.stab.generators.push_back(pauli_from_bits(gx.row(i), BitVec(n)));
    }
    for (std::size_t i = 0; i < c1.check.row_count(); ++i) {
        code.stab.generators.push_back(pauli_from_bits(BitVec(n), c1.check.row(i)));
    }

    // Logical Z partners inside c2 with dot(M_j, L_i) = delta_ij.
    const bool self_dual_pair = [&] {
        BitMatrix a(0, n), b(0, n);
        for (std::size_t i = 0; i < gx.row_count(); ++i) a.append_row(gx.row(i));
        for (std::size_t i = 0; i < c1.check.row_count(); ++i) b.append_row(c1.check.row(i));
        if (a.row_count() != b.row_count()) return false;
        std::vector<BitVec> rows;
        for (std::size_t i = 0; i < a.row_count(); ++i) rows.push_back(a.row(i));
        const Gf2Span span(rows);
        for (std::size_t i = 0; i < b.row_count(); ++i) {
            if (!span.contains(b.row(i))) return false;
        }
        return true;
    }();

    for (std::size_t j = 0; j < k; ++j) {
        code.stab.logical_x.push_back(pauli_from_bits(lmat.row(j), BitVec(n)));
        BitVec m;
        if (self_dual_pair && k == 1 && lmat.row(j).dot(lmat.row(j))) {
            m = lmat.row(j); // shared support makes bitwise H exact
        } else {
            // solve over the c2 generator basis
            BitMatrix system(k, c2.gen.row_count());
            for (std::size_t r = 0; r < c2.gen.row_count(); ++r) {
                for (std::size_t i = 0; i < k; ++i) {
                    system.set(i, r, c2.gen.row(r).dot(lmat.row(i)));
                }
            }
            BitVec rhs(k);
            rhs.set(j, true);
            const auto coeff = solve_linear(system, rhs);
            if (!coeff) throw std::logic_error("css_code: no logical Z partner found");
            m = BitVec(n);
            for (std::size_t r = 0; r < c2.gen.row_count(); ++r) {
                if (coeff->get(r)) m ^= c2.gen.row(r);
            }
        }
        code.stab.logical_z.push_back(pauli_from_bits(BitVec(n), m));
    }

    // Encoder: route data to the logical pivots, fan out the logical rows,
    // then put the X-stabilizer pivots in superposition and fan those out.
    {
        std::vector<std::size_t> pos(k);
        for (std::size_t j = 0; j < k; ++j) pos[j] = j;
        for (std::size_t j = 0; j < k; ++j) {
            if (pos[j] == l_pivots[j]) continue;
            code.encoder.push_back(CliffInstr::swap(pos[j], l_pivots[j]));
            for (std::size_t l = j + 1; l < k; ++l) {
                if (pos[l] == l_pivots[j]) pos[l] = pos[j];
            }
            pos[j] = l_pivots[j];
        }
    }
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t t = 0; t < n; ++t) {
            if (t != l_pivots[j] && lmat.row(j).get(t)) {
                code.encoder.push_back(CliffInstr::cnot(l_pivots[j], t));
            }
        }
    }
    for (std::size_t i = 0; i < gx.row_count(); ++i) {
        code.encoder.push_back(CliffInstr::h(x_pivots[i]));
        for (std::size_t t = 0; t < n; ++t) {
            if (t != x_pivots[i] && gx.row(i).get(t)) {
                code.encoder.push_back(CliffInstr::cnot(x_pivots[i], t));
            }
        }
    }

    build_decoder_table(code, n);

    // Bitwise logical gates, added only when their algebra checks out.
    if (k == 1) {
        Pauli all_x(n), all_z(n);
        for (std::size_t q = 0; q < n; ++q) {
            all_x.set_letter(q, 'X');
            all_z.set_letter(q, 'Z');
        }
        if (logical_coset(code, all_x) == 'X') code.transversal["X"] = {CliffOp::X, 1};
        if (logical_coset(code, all_z) == 'Z') code.transversal["Z"] = {CliffOp::Z, 1};
        if (self_dual_pair && code.stab.logical_x[0].x == code.stab.logical_z[0].z) {
            code.transversal["H"] = {CliffOp::H, 1};
            // transversal CZ needs pairwise-even overlaps and aligned logicals
            bool cz_ok = true;
            for (std::size_t i = 0; i < gx.row_count() && cz_ok; ++i) {
                if (gx.row(i).dot(gx.row(i))) cz_ok = false;
                for (std::size_t j2 = 0; j2 < gx.row_count() && cz_ok; ++j2) {
                    if (i != j2 && gx.row(i).dot(gx.row(j2))) cz_ok = false;
                }
                if (cz_ok && gx.row(i).dot(lmat.row(0))) cz_ok = false;
            }
            if (cz_ok && lmat.row(0).dot(lmat.row(0))) code.transversal["CZ"] = {CliffOp::CZ, 2};
        }
    }
    code.transversal["CNOT"] = {CliffOp::CNOT, 2};

    if (n <= 12) code.stab.distance = min_distance(code.stab);
    code.stab.validate();
    return code;
}

std::pair<Syndrome, StateVector> extract_syndrome(const QuantumCode& code, StateVector state,
                                                  Rng& rng) {
    if (!state.all_qubits() || state.register_count() != code.n()) {
        throw std::invalid_argument("extract_syndrome: state size mismatch");
    }
    Syndrome s;
    s.bits = BitVec(code.stab.generators.size());
    for (std::size_t i = 0; i < code.stab.generators.size(); ++i) {
        const int outcome = measure_pauli(state, code.stab.generators[i], rng);
        s.bits.set(i, outcome == 1);
    }
    s.packed = pack_syndrome(s.bits);
    return {std::move(s), std::move(state)};
}

CorrectionResult correct(const QuantumCode& code, StateVector state, Rng& rng) {
    auto [syn, collapsed] = extract_syndrome(code, std::move(state), rng);
    CorrectionResult result{std::move(collapsed), std::move(syn), Pauli::identity(code.n()),
                            true};
    if (result.syndrome.packed < code.decoder_known.size() &&
        code.decoder_known[result.syndrome.packed]) {
        result.correction = code.decoder_table[result.syndrome.packed];
        apply_pauli(result.state, result.correction);
    } else {
        result.known_syndrome = false;
    }
    return result;
}

CliffordCircuit transversal_gate(const QuantumCode& code, const std::string& gate, int blocks) {
    const auto it = code.transversal.find(gate);
    if (it == code.transversal.end() || it->second.blocks != blocks) {
        throw std::invalid_argument("transversal_gate: gate '" + gate + "' is not available on " +
                                    code.name);
    }
    CliffordCircuit circuit;
    const std::size_t n = code.n();
    for (std::size_t q = 0; q < n; ++q) {
        if (it->second.blocks == 1) {
            circuit.push_back({it->second.physical_op, q, 0});
        } else {
            circuit.push_back({it->second.physical_op, q, n + q});
        }
    }
    return circuit;
}

} // namespace qeclab
