#include "qeclab/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qeclab {

namespace {

constexpr double kUnitaryTol = 1e-12;

void check_unitary(const std::vector<cplx>& m, std::size_t d, const std::string& name) {
    // max |(U^dag U - I)_{rc}|
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                acc += std::conj(m[k * d + r]) * m[k * d + c];
            }
            if (r == c) acc -= 1.0;
            if (std::abs(acc) >= kUnitaryTol) {
                throw std::invalid_argument("Gate '" + name + "' is not unitary");
            }
        }
    }
}

} // namespace

Gate::Gate(std::string name, std::vector<std::size_t> target_dims, std::vector<cplx> matrix)
    : name_(std::move(name)), target_dims_(std::move(target_dims)), m_(std::move(matrix)) {
    if (target_dims_.empty()) throw std::invalid_argument("Gate: no target registers");
    dim_ = 1;
    for (std::size_t d : target_dims_) {
        if (d < 2) throw std::invalid_argument("Gate: register dimension must be >= 2");
        dim_ *= d;
    }
    if (m_.size() != dim_ * dim_) throw std::invalid_argument("Gate: matrix size mismatch");
    check_unitary(m_, dim_, name_);
}

Gate Gate::dagger() const {
    std::vector<cplx> m(dim_ * dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) m[r * dim_ + c] = std::conj(at(c, r));
    return Gate(name_ + "_dag", target_dims_, std::move(m));
}

Gate Gate::controlled() const {
    const std::size_t d = 2 * dim_;
    std::vector<cplx> m(d * d, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) m[i * d + i] = 1.0;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) m[(dim_ + r) * d + (dim_ + c)] = at(r, c);
    std::vector<std::size_t> dims;
    dims.push_back(2);
    dims.insert(dims.end(), target_dims_.begin(), target_dims_.end());
    return Gate("c-" + name_, std::move(dims), std::move(m));
}

Gate Gate::power(std::uint64_t exponent) const {
    std::vector<cplx> acc(dim_ * dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) acc[i * dim_ + i] = 1.0;
    std::vector<cplx> base = m_;
    auto mul = [this](const std::vector<cplx>& a, const std::vector<cplx>& b) {
        std::vector<cplx> out(dim_ * dim_, 0.0);
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t k = 0; k < dim_; ++k) {
                const cplx v = a[r * dim_ + k];
                if (v == cplx(0.0)) continue;
                for (std::size_t c = 0; c < dim_; ++c) out[r * dim_ + c] += v * b[k * dim_ + c];
            }
        return out;
    };
    std::uint64_t e = exponent;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return Gate(name_ + "^" + std::to_string(exponent), target_dims_, std::move(acc));
}

StateVector::StateVector(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw std::invalid_argument("StateVector: no registers");
    std::size_t total = 1;
    for (std::size_t d : dims_) {
        if (d < 2) throw std::invalid_argument("StateVector: register dimension must be >= 2");
        if (total > kMaxAmplitudes / d) {
            throw std::invalid_argument("StateVector: register exceeds the 2^24 amplitude cap");
        }
        total *= d;
    }
    strides_.resize(dims_.size());
    std::size_t s = 1;
    for (std::size_t r = dims_.size(); r-- > 0;) {
        strides_[r] = s;
        s *= dims_[r];
    }
    amps_.assign(total, cplx(0.0));
    amps_[0] = 1.0;
}

StateVector StateVector::basis(std::vector<std::size_t> dims, std::size_t index) {
    StateVector v(std::move(dims));
    if (index >= v.total_dim()) throw std::out_of_range("StateVector::basis: index out of range");
    v.amps_[0] = 0.0;
    v.amps_[index] = 1.0;
    return v;
}

StateVector StateVector::qubits(std::size_t n) {
    return StateVector(std::vector<std::size_t>(n, 2));
}

StateVector StateVector::from_amplitudes(std::vector<std::size_t> dims, std::vector<cplx> amps) {
    StateVector v(std::move(dims));
    if (amps.size() != v.total_dim()) {
        throw std::invalid_argument("StateVector: amplitude count does not match dimensions");
    }
    v.amps_ = std::move(amps);
    const double n = v.norm_sq();
    if (std::abs(n - 1.0) > 1e-8) {
        throw std::invalid_argument("StateVector: amplitudes are not normalized");
    }
    return v;
}

bool StateVector::all_qubits() const {
    return std::all_of(dims_.begin(), dims_.end(), [](std::size_t d) { return d == 2; });
}

double StateVector::norm_sq() const {
    double acc = 0.0;
    for (const cplx& a : amps_) acc += std::norm(a);
    return acc;
}

void StateVector::normalize() {
    const double n = std::sqrt(norm_sq());
    if (n <= 0.0) throw std::runtime_error("StateVector: cannot normalize the zero vector");
    for (cplx& a : amps_) a /= n;
}

void StateVector::apply(const Gate& g, std::span<const std::size_t> targets) {
    if (targets.size() != g.arity()) {
        throw std::invalid_argument("apply: gate arity does not match target count");
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] >= dims_.size()) throw std::out_of_range("apply: target out of range");
        if (dims_[targets[i]] != g.target_dims()[i]) {
            throw std::invalid_argument("apply: register dimension does not match gate");
        }
        for (std::size_t j = i + 1; j < targets.size(); ++j) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument("apply: repeated target register");
            }
        }
    }

    const std::size_t d = g.dim();
    // Composite offset of each gate digit combination (targets[0] most significant).
    std::vector<std::size_t> offsets(d, 0);
    for (std::size_t gi = 0; gi < d; ++gi) {
        std::size_t rem = gi;
        for (std::size_t t = targets.size(); t-- > 0;) {
            const std::size_t dt = g.target_dims()[t];
            offsets[gi] += (rem % dt) * strides_[targets[t]];
            rem /= dt;
        }
    }

    // Odometer over the non-target registers.
    std::vector<std::size_t> comp_dims, comp_strides;
    for (std::size_t r = 0; r < dims_.size(); ++r) {
        if (std::find(targets.begin(), targets.end(), r) == targets.end()) {
            comp_dims.push_back(dims_[r]);
            comp_strides.push_back(strides_[r]);
        }
    }

    std::vector<cplx> in(d), out(d);
    std::vector<std::size_t> counter(comp_dims.size(), 0);
    const std::size_t groups = amps_.size() / d;
    std::size_t base = 0;
    for (std::size_t grp = 0; grp < groups; ++grp) {
        for (std::size_t gi = 0; gi < d; ++gi) in[gi] = amps_[base + offsets[gi]];
        for (std::size_t r = 0; r < d; ++r) {
            cplx acc = 0.0;
            const cplx* row = g.matrix().data() + r * d;
            for (std::size_t c = 0; c < d; ++c) acc += row[c] * in[c];
            out[r] = acc;
        }
        for (std::size_t gi = 0; gi < d; ++gi) amps_[base + offsets[gi]] = out[gi];

        for (std::size_t i = comp_dims.size(); i-- > 0;) {
            base += comp_strides[i];
            if (++counter[i] < comp_dims[i]) break;
            base -= comp_strides[i] * comp_dims[i];
            counter[i] = 0;
        }
    }
}

cplx inner_product(const StateVector& a, const StateVector& b) {
    if (a.dims() != b.dims()) throw std::invalid_argument("inner_product: dimension mismatch");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < a.total_dim(); ++i) acc += std::conj(a.amp(i)) * b.amp(i);
    return acc;
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<std::size_t> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    const std::size_t nb = b.total_dim();
    std::vector<cplx> amps(a.total_dim() * nb);
    for (std::size_t i = 0; i < a.total_dim(); ++i) {
        const cplx ai = a.amp(i);
        for (std::size_t j = 0; j < nb; ++j) amps[i * nb + j] = ai * b.amp(j);
    }
    return StateVector::from_amplitudes(std::move(dims), std::move(amps));
}

namespace {

// Plus/minus is only meaningful for dimension-2 registers; rotate the
// target with H, measure computationally, and report in the +/- labels.
const Gate& hadamard_for_measure() {
    static const double s = 1.0 / std::sqrt(2.0);
    static const Gate h("H", {2}, {s, s, s, -s});
    return h;
}

} // namespace

std::vector<double> outcome_probabilities(const StateVector& state, std::size_t target,
                                          MeasureBasis basis) {
    if (target >= state.register_count()) {
        throw std::out_of_range("measure: target register out of range");
    }
    StateVector work = state;
    if (basis == MeasureBasis::PlusMinus) {
        if (state.dim(target) != 2) {
            throw std::invalid_argument("measure: plus/minus basis needs a dimension-2 register");
        }
        work.apply(hadamard_for_measure(), {target});
    }
    std::vector<double> probs(state.dim(target), 0.0);
    for (std::size_t i = 0; i < work.total_dim(); ++i) {
        probs[work.digit(i, target)] += std::norm(work.amp(i));
    }
    return probs;
}

int measure_in_place(StateVector& state, std::size_t target, MeasureBasis basis, Rng& rng,
                     double* probability) {
    if (target >= state.register_count()) {
        throw std::out_of_range("measure: target register out of range");
    }
    if (basis == MeasureBasis::PlusMinus) {
        if (state.dim(target) != 2) {
            throw std::invalid_argument("measure: plus/minus basis needs a dimension-2 register");
        }
        state.apply(hadamard_for_measure(), {target});
    }

    std::vector<double> probs(state.dim(target), 0.0);
    for (std::size_t i = 0; i < state.total_dim(); ++i) {
        probs[state.digit(i, target)] += std::norm(state.amp(i));
    }
    const double u = rng.uniform();
    double acc = 0.0;
    int outcome = -1;
    for (std::size_t d = 0; d < probs.size(); ++d) {
        acc += probs[d];
        if (u < acc) {
            outcome = static_cast<int>(d);
            break;
        }
    }
    if (outcome < 0) { // u landed in rounding slack; take the likeliest outcome
        outcome = static_cast<int>(
            std::max_element(probs.begin(), probs.end()) - probs.begin());
    }

    const double p = probs[outcome];
    const double scale = 1.0 / std::sqrt(p);
    for (std::size_t i = 0; i < state.total_dim(); ++i) {
        if (state.digit(i, target) == static_cast<std::size_t>(outcome)) {
            state.set_amp(i, state.amp(i) * scale);
        } else {
            state.set_amp(i, 0.0);
        }
    }
    if (basis == MeasureBasis::PlusMinus) {
        state.apply(hadamard_for_measure(), {target});
    }
    if (probability) *probability = p;
    return outcome;
}

MeasurementRecord measure(const StateVector& state, std::size_t target, MeasureBasis basis,
                          Rng& rng) {
    StateVector collapsed = state;
    double p = 0.0;
    const int outcome = measure_in_place(collapsed, target, basis, rng, &p);
    return MeasurementRecord{outcome, p, std::move(collapsed)};
}

StateVector factor_register(const StateVector& state, std::size_t reg,
                            const StateVector& known) {
    if (reg >= state.register_count()) {
        throw std::out_of_range("factor_register: register out of range");
    }
    if (known.register_count() != 1 || known.dim(0) != state.dim(reg)) {
        throw std::invalid_argument("factor_register: known state dimension mismatch");
    }
    std::vector<std::size_t> rest_dims;
    for (std::size_t r = 0; r < state.register_count(); ++r) {
        if (r != reg) rest_dims.push_back(state.dim(r));
    }
    if (rest_dims.empty()) {
        throw std::invalid_argument("factor_register: cannot remove the only register");
    }

    const std::size_t d = state.dim(reg);
    const std::size_t stride = state.stride(reg);
    const std::size_t rest_total = state.total_dim() / d;
    std::vector<cplx> rest(rest_total, 0.0);

    // amps[rest_index interleaved with reg digit]; contract against known*.
    std::size_t out = 0;
    for (std::size_t i = 0; i < state.total_dim(); ++i) {
        if (state.digit(i, reg) != 0) continue;
        cplx acc = 0.0;
        for (std::size_t b = 0; b < d; ++b) acc += std::conj(known.amp(b)) * state.amp(i + b * stride);
        rest[out++] = acc;
    }

    double n = 0.0;
    for (const cplx& a : rest) n += std::norm(a);
    if (std::abs(n - 1.0) > 1e-8) {
        throw std::runtime_error("factor_register: register is entangled or mismatched");
    }
    for (cplx& a : rest) a /= std::sqrt(n);
    return StateVector::from_amplitudes(std::move(rest_dims), std::move(rest));
}

} // namespace qeclab
