#include "qeclab/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qeclab {

Pauli Pauli::single(std::size_t n, std::size_t q, char letter) {
    Pauli p(n);
    p.set_letter(q, letter);
    return p;
}

Pauli Pauli::from_string(std::string_view s) {
    int phase = 0;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        phase = (s[0] == '-') ? 2 : 0;
        s.remove_prefix(1);
    }
    if (!s.empty() && s[0] == 'i') {
        phase += 1;
        s.remove_prefix(1);
    }
    Pauli p(s.size());
    p.phase = phase & 3;
    for (std::size_t q = 0; q < s.size(); ++q) p.set_letter(q, s[q]);
    return p;
}

char Pauli::letter_at(std::size_t q) const {
    const int code = (x.get(q) ? 1 : 0) | (z.get(q) ? 2 : 0);
    return "IXZY"[code];
}

void Pauli::set_letter(std::size_t q, char letter) {
    const bool had_y = x.get(q) && z.get(q);
    switch (letter) {
        case 'I': x.set(q, false); z.set(q, false); break;
        case 'X': x.set(q, true); z.set(q, false); break;
        case 'Z': x.set(q, false); z.set(q, true); break;
        case 'Y': x.set(q, true); z.set(q, true); break;
        default: throw std::invalid_argument("Pauli: unknown letter");
    }
    const bool has_y = x.get(q) && z.get(q);
    // keep the stated sign convention: a Y letter carries a factor of i
    if (has_y && !had_y) phase = (phase + 1) & 3;
    if (had_y && !has_y) phase = (phase + 3) & 3;
}

int Pauli::sign_exponent() const {
    const std::size_t y_count = (x & z).popcount();
    return static_cast<int>((phase - y_count) & 3);
}

std::string Pauli::to_string() const {
    static const char* kSign[4] = {"", "i", "-", "-i"};
    std::string s = kSign[sign_exponent()];
    for (std::size_t q = 0; q < n(); ++q) s += letter_at(q);
    return s;
}

Pauli pauli_mul(const Pauli& p, const Pauli& q) {
    if (p.n() != q.n()) throw std::invalid_argument("pauli_mul: length mismatch");
    Pauli r(p.n());
    // (i^a X^x1 Z^z1)(i^b X^x2 Z^z2) = i^(a+b) (-1)^(z1.x2) X^(x1^x2) Z^(z1^z2)
    r.x = p.x ^ q.x;
    r.z = p.z ^ q.z;
    const int swaps = p.z.dot(q.x) ? 1 : 0;
    r.phase = (p.phase + q.phase + 2 * swaps) & 3;
    return r;
}

Gate pauli_matrix(const Pauli& p) {
    const std::size_t n = p.n();
    if (n > 12) throw std::invalid_argument("pauli_matrix: too many qubits");
    const std::size_t dim = std::size_t(1) << n;
    static const cplx kI[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};

    // index bit of qubit j is (n-1-j)
    std::uint64_t xmask = 0, zmask = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (p.x.get(j)) xmask |= std::uint64_t(1) << (n - 1 - j);
        if (p.z.get(j)) zmask |= std::uint64_t(1) << (n - 1 - j);
    }
    std::vector<cplx> m(dim * dim, 0.0);
    for (std::size_t b = 0; b < dim; ++b) {
        const int zpar = std::popcount(b & zmask) & 1;
        m[(b ^ xmask) * dim + b] = kI[(p.phase + 2 * zpar) & 3];
    }
    return Gate(p.to_string(), std::vector<std::size_t>(n, 2), std::move(m));
}

namespace {

struct PauliMasks {
    std::uint64_t x = 0, z = 0;
    cplx phase_factor; // i^phase
};

PauliMasks masks_for(const StateVector& state, const Pauli& p) {
    if (!state.all_qubits() || state.register_count() != p.n()) {
        throw std::invalid_argument("pauli action: state is not an n-qubit register match");
    }
    static const cplx kI[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
    const std::size_t n = p.n();
    PauliMasks m;
    for (std::size_t j = 0; j < n; ++j) {
        if (p.x.get(j)) m.x |= std::uint64_t(1) << (n - 1 - j);
        if (p.z.get(j)) m.z |= std::uint64_t(1) << (n - 1 - j);
    }
    m.phase_factor = kI[p.phase & 3];
    return m;
}

inline int parity(std::uint64_t v) { return std::popcount(v) & 1; }

} // namespace

void apply_pauli(StateVector& state, const Pauli& p) {
    const PauliMasks m = masks_for(state, p);
    const std::size_t dim = state.total_dim();
    auto amps = state.amps_mut();
    if (m.x == 0) {
        for (std::size_t b = 0; b < dim; ++b) {
            amps[b] *= parity(b & m.z) ? -m.phase_factor : m.phase_factor;
        }
        return;
    }
    for (std::size_t b = 0; b < dim; ++b) {
        const std::size_t partner = b ^ m.x;
        if (b > partner) continue;
        // P|b> = i^ph (-1)^(z.b) |b^x>
        const cplx fb = parity(b & m.z) ? -m.phase_factor : m.phase_factor;
        const cplx fp = parity(partner & m.z) ? -m.phase_factor : m.phase_factor;
        const cplx a = amps[b];
        amps[b] = fp * amps[partner];
        amps[partner] = fb * a;
    }
}

cplx pauli_expectation(const StateVector& state, const Pauli& p) {
    const PauliMasks m = masks_for(state, p);
    const std::size_t dim = state.total_dim();
    const auto amps = state.amps();
    cplx acc = 0.0;
    for (std::size_t b = 0; b < dim; ++b) {
        // (P psi)[c] with c = b ^ x picks up the phase of the source index b
        const cplx f = parity(b & m.z) ? -m.phase_factor : m.phase_factor;
        acc += std::conj(amps[b ^ m.x]) * f * amps[b];
    }
    return acc;
}

int measure_pauli(StateVector& state, const Pauli& p, Rng& rng, double* probability) {
    if (!p.is_hermitian()) throw std::invalid_argument("measure_pauli: operator is not Hermitian");
    const PauliMasks m = masks_for(state, p);
    const std::size_t dim = state.total_dim();
    auto amps = state.amps_mut();

    const double expect = pauli_expectation(state, p).real();
    double p_plus = 0.5 * (1.0 + expect);
    p_plus = std::min(1.0, std::max(0.0, p_plus));
    const int outcome = rng.uniform() < p_plus ? 0 : 1;
    const double prob = outcome == 0 ? p_plus : 1.0 - p_plus;
    const double sigma = outcome == 0 ? 1.0 : -1.0;
    const double inv = 1.0 / (2.0 * std::sqrt(prob));

    if (m.x == 0) {
        for (std::size_t b = 0; b < dim; ++b) {
            const cplx f = parity(b & m.z) ? -m.phase_factor : m.phase_factor;
            amps[b] = (amps[b] + sigma * f * amps[b]) * inv;
        }
    } else {
        for (std::size_t b = 0; b < dim; ++b) {
            const std::size_t partner = b ^ m.x;
            if (b > partner) continue;
            const cplx fb = parity(b & m.z) ? -m.phase_factor : m.phase_factor;
            const cplx fp = parity(partner & m.z) ? -m.phase_factor : m.phase_factor;
            const cplx a = amps[b];
            const cplx c = amps[partner];
            amps[b] = (a + sigma * fp * c) * inv;
            amps[partner] = (c + sigma * fb * a) * inv;
        }
    }
    if (probability) *probability = prob;
    return outcome;
}

} // namespace qeclab
