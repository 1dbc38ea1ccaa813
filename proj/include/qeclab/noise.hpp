#pragma once

#include <stdexcept>

namespace qeclab {

// Per-location stochastic Pauli noise. A "location" is a qubit touched by
// a gate (after_gate), a data qubit sitting through a cycle (idle), or a
// classical measurement record (measurement_flip).
struct NoiseModel {
    double p_x = 0.0;     // independent X insertion
    double p_z = 0.0;     // independent Z insertion
    double p_depol = 0.0; // uniform X/Y/Z insertion
    double p_meas_flip = 0.0;

    void validate() const {
        for (double p : {p_x, p_z, p_depol, p_meas_flip}) {
            if (p < 0.0 || p > 1.0) {
                throw std::invalid_argument("NoiseModel: probability out of [0,1]");
            }
        }
        if (p_x + p_z > 1.0) {
            throw std::invalid_argument("NoiseModel: p_x + p_z exceeds 1");
        }
    }

    bool silent() const { return p_x == 0.0 && p_z == 0.0 && p_depol == 0.0; }
};

} // namespace qeclab
