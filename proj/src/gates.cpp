#include "qeclab/gates.hpp"

#include <cmath>

namespace qeclab {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

const Gate& gate_i() {
    static const Gate g("I", {2}, {1, 0, 0, 1});
    return g;
}

const Gate& gate_x() {
    static const Gate g("X", {2}, {0, 1, 1, 0});
    return g;
}

const Gate& gate_y() {
    static const Gate g("Y", {2}, {0, cplx(0, -1), cplx(0, 1), 0});
    return g;
}

const Gate& gate_z() {
    static const Gate g("Z", {2}, {1, 0, 0, -1});
    return g;
}

const Gate& gate_h() {
    static const Gate g("H", {2}, {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2});
    return g;
}

const Gate& gate_s() {
    static const Gate g("S", {2}, {1, 0, 0, cplx(0, 1)});
    return g;
}

const Gate& gate_sdg() {
    static const Gate g("Sdg", {2}, {1, 0, 0, cplx(0, -1)});
    return g;
}

const Gate& gate_t() {
    static const Gate g("T", {2}, {1, 0, 0, std::polar(1.0, M_PI / 4)});
    return g;
}

const Gate& gate_r_2pi_3() {
    static const double s = std::sqrt(3.0) / 2.0;
    static const Gate g("R_2pi/3", {2}, {-0.5, -s, s, -0.5});
    return g;
}

const Gate& gate_cnot() {
    static const Gate g("CNOT", {2, 2},
                        {1, 0, 0, 0,
                         0, 1, 0, 0,
                         0, 0, 0, 1,
                         0, 0, 1, 0});
    return g;
}

const Gate& gate_cz() {
    static const Gate g("CZ", {2, 2},
                        {1, 0, 0, 0,
                         0, 1, 0, 0,
                         0, 0, 1, 0,
                         0, 0, 0, -1});
    return g;
}

const Gate& gate_swap() {
    static const Gate g("SWAP", {2, 2},
                        {1, 0, 0, 0,
                         0, 0, 1, 0,
                         0, 1, 0, 0,
                         0, 0, 0, 1});
    return g;
}

const Gate& gate_toffoli() {
    static const Gate g = [] {
        std::vector<cplx> m(64, 0.0);
        for (std::size_t i = 0; i < 8; ++i) {
            const std::size_t j = (i == 6) ? 7 : (i == 7) ? 6 : i;
            m[j * 8 + i] = 1.0;
        }
        return Gate("CCX", {2, 2, 2}, std::move(m));
    }();
    return g;
}

Gate phase_gate(double theta) {
    return Gate("phase", {2}, {1, 0, 0, std::polar(1.0, theta)});
}

Gate dft_gate(std::size_t q) {
    const double s = 1.0 / std::sqrt(static_cast<double>(q));
    std::vector<cplx> m(q * q);
    for (std::size_t r = 0; r < q; ++r) {
        for (std::size_t c = 0; c < q; ++c) {
            // exponent reduced mod q before the trig call to keep it exact-ish
            const std::size_t e = (r * c) % q;
            m[r * q + c] = s * std::polar(1.0, 2.0 * M_PI * static_cast<double>(e) /
                                                   static_cast<double>(q));
        }
    }
    return Gate("DFT" + std::to_string(q), {q}, std::move(m));
}

} // namespace qeclab
