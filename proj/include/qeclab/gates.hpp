#pragma once

#include "qeclab/statevector.hpp"

namespace qeclab {

// The fixed single- and two-qubit gates used throughout. References return
// lazily built singletons; qubit order in two-qubit matrices is
// (first target = most significant digit).

const Gate& gate_i();
const Gate& gate_x();
const Gate& gate_y();
const Gate& gate_z();
const Gate& gate_h();
const Gate& gate_s();
const Gate& gate_sdg();
const Gate& gate_t();

/// Real rotation by 2*pi/3: [[-1/2, -sqrt(3)/2], [sqrt(3)/2, -1/2]].
const Gate& gate_r_2pi_3();

const Gate& gate_cnot(); // control first, target second
const Gate& gate_cz();
const Gate& gate_swap();
const Gate& gate_toffoli(); // controls first two, target third

/// diag(1, e^{i theta}).
Gate phase_gate(double theta);

/// Dense discrete Fourier transform on one dimension-q register:
/// |x> -> q^{-1/2} sum_y exp(2 pi i x y / q) |y>.
/// Materializes the q x q matrix; meant for small q (oracle tests and
/// qubit-register QFTs). States use apply_dft for large q.
Gate dft_gate(std::size_t q);

} // namespace qeclab
