#include "qeclab/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qeclab/gates.hpp"
#include "qeclab/gf2.hpp"

namespace qeclab {

std::size_t pow_mod(std::size_t base, std::size_t exp, std::size_t mod) {
    std::uint64_t acc = 1 % mod;
    std::uint64_t b = base % mod;
    while (exp) {
        if (exp & 1) acc = acc * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<std::size_t>(acc);
}

std::size_t gcd_u(std::size_t a, std::size_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

std::size_t mod_inverse(std::size_t a, std::size_t mod) {
    long long t = 0, new_t = 1;
    long long r = static_cast<long long>(mod), new_r = static_cast<long long>(a % mod);
    while (new_r != 0) {
        const long long q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw std::invalid_argument("mod_inverse: not coprime");
    t %= static_cast<long long>(mod);
    if (t < 0) t += static_cast<long long>(mod);
    return static_cast<std::size_t>(t);
}

std::size_t multiplicative_order(std::size_t a, std::size_t mod) {
    if (gcd_u(a, mod) != 1) throw std::invalid_argument("multiplicative_order: not coprime");
    std::size_t value = a % mod;
    std::size_t order = 1;
    while (value != 1) {
        value = value * a % mod;
        ++order;
        if (order > mod) throw std::logic_error("multiplicative_order: runaway loop");
    }
    return order;
}

std::vector<std::size_t> convergent_denominators(std::size_t num, std::size_t den,
                                                 std::size_t max_denominator) {
    std::vector<std::size_t> out;
    // q_{-2} = 1, q_{-1} = 0, q_n = a_n q_{n-1} + q_{n-2}
    std::size_t k_prev = 1, k_curr = 0;
    std::size_t a = num, b = den;
    while (b != 0) {
        const std::size_t quotient = a / b;
        const std::size_t k_next = quotient * k_curr + k_prev;
        if (k_next > max_denominator) break;
        if (k_next >= 1) out.push_back(k_next);
        k_prev = k_curr;
        k_curr = k_next;
        const std::size_t r = a % b;
        a = b;
        b = r;
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

StateVector fourier_gf2n(StateVector state) {
    if (!state.all_qubits()) {
        throw std::invalid_argument("fourier_gf2n: state has a non-qubit register");
    }
    for (std::size_t q = 0; q < state.register_count(); ++q) state.apply(gate_h(), {q});
    return state;
}

void apply_dft(StateVector& state, std::size_t reg, bool inverse) {
    if (reg >= state.register_count()) throw std::out_of_range("apply_dft: register out of range");
    const std::size_t q = state.dim(reg);
    const std::size_t stride = state.stride(reg);
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));

    std::vector<cplx> twiddle(q);
    const double sign = inverse ? -1.0 : 1.0;
    for (std::size_t k = 0; k < q; ++k) {
        twiddle[k] = std::polar(1.0, sign * 2.0 * M_PI * static_cast<double>(k) /
                                         static_cast<double>(q));
    }

    std::vector<cplx> in(q), out(q);
    const std::size_t total = state.total_dim();
    for (std::size_t base = 0; base < total; ++base) {
        if (state.digit(base, reg) != 0) continue;
        for (std::size_t x = 0; x < q; ++x) in[x] = state.amp(base + x * stride);
        for (std::size_t y = 0; y < q; ++y) {
            cplx acc = 0.0;
            std::size_t idx = 0;
            for (std::size_t x = 0; x < q; ++x) {
                acc += twiddle[idx] * in[x];
                idx += y;
                if (idx >= q) idx -= q;
            }
            out[y] = acc * scale;
        }
        for (std::size_t y = 0; y < q; ++y) state.set_amp(base + y * stride, out[y]);
    }
}

StateVector fourier_mod_q(StateVector state) {
    if (state.register_count() != 1) {
        throw std::invalid_argument("fourier_mod_q: expected a single register");
    }
    apply_dft(state, 0, false);
    return state;
}

SimonOracle SimonOracle::canonical(const BitVec& period) {
    if (period.none()) throw std::invalid_argument("SimonOracle: period must be nonzero");
    const std::size_t n = period.size();
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (period.get(i)) s |= 1u << (n - 1 - i);
    }
    std::vector<std::uint32_t> table(std::size_t(1) << n);
    for (std::uint32_t x = 0; x < table.size(); ++x) table[x] = std::min(x, x ^ s);
    return from_table(period, std::move(table));
}

SimonOracle SimonOracle::random_instance(std::size_t n, Rng& rng) {
    if (n < 2 || n > 10) throw std::invalid_argument("SimonOracle: n out of range");
    BitVec period(n);
    while (period.none()) {
        for (std::size_t i = 0; i < n; ++i) period.set(i, rng.next_u64() & 1);
    }
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (period.get(i)) s |= 1u << (n - 1 - i);
    }

    // distinct random labels per coset
    std::vector<std::uint32_t> labels(std::size_t(1) << n);
    for (std::uint32_t i = 0; i < labels.size(); ++i) labels[i] = i;
    for (std::size_t i = labels.size(); i > 1; --i) {
        std::swap(labels[i - 1], labels[rng.uniform_int(i)]);
    }
    std::vector<std::uint32_t> table(std::size_t(1) << n);
    std::size_t next_label = 0;
    for (std::uint32_t x = 0; x < table.size(); ++x) {
        if (x <= (x ^ s)) table[x] = labels[next_label++];
        else table[x] = table[x ^ s];
    }
    return from_table(period, std::move(table));
}

SimonOracle SimonOracle::from_table(const BitVec& period, std::vector<std::uint32_t> table) {
    const std::size_t n = period.size();
    if (table.size() != (std::size_t(1) << n)) {
        throw std::invalid_argument("SimonOracle: table size must be 2^n");
    }
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (period.get(i)) s |= 1u << (n - 1 - i);
    }
    if (s == 0) throw std::invalid_argument("SimonOracle: period must be nonzero");
    for (std::uint32_t x = 0; x < table.size(); ++x) {
        if (table[x] >= table.size()) {
            throw std::invalid_argument("SimonOracle: table value out of range");
        }
        if (table[x] != table[x ^ s]) {
            throw std::invalid_argument("SimonOracle: table violates the period promise");
        }
        for (std::uint32_t y = x + 1; y < table.size(); ++y) {
            if (y != (x ^ s) && table[y] == table[x]) {
                throw std::invalid_argument("SimonOracle: colliding values across cosets");
            }
        }
    }
    SimonOracle oracle;
    oracle.n = n;
    oracle.period = period;
    oracle.table = std::move(table);
    return oracle;
}

SimonResult simon(const SimonOracle& oracle, Rng& rng, std::size_t max_queries) {
    const std::size_t n = oracle.n;
    if (max_queries == 0) max_queries = 64 * n;
    const std::size_t half = std::size_t(1) << n;

    SimonResult result;
    std::vector<BitVec> basis; // independent samples collected so far
    Gf2Span span(basis);

    for (std::size_t query = 0; query < max_queries; ++query) {
        // |x>|0>, Hadamards, oracle, Hadamards, measure the input register.
        StateVector state = StateVector::qubits(2 * n);
        for (std::size_t q = 0; q < n; ++q) state.apply(gate_h(), {q});
        std::vector<cplx> permuted(state.total_dim(), 0.0);
        for (std::size_t x = 0; x < half; ++x) {
            for (std::size_t w = 0; w < half; ++w) {
                const cplx a = state.amp(x * half + w);
                if (a != cplx(0.0)) permuted[x * half + (w ^ oracle.table[x])] = a;
            }
        }
        state = StateVector::from_amplitudes(state.dims(), std::move(permuted));
        for (std::size_t q = 0; q < n; ++q) state.apply(gate_h(), {q});

        BitVec y(n);
        for (std::size_t q = 0; q < n; ++q) {
            y.set(q, measure_in_place(state, q, MeasureBasis::Computational, rng) == 1);
        }
        ++result.queries;
        if (y.dot(oracle.period)) {
            throw std::logic_error("simon: sampled a vector not orthogonal to the period");
        }
        result.samples.push_back(y);

        if (!span.contains(y)) {
            basis.push_back(y);
            span = Gf2Span(basis);
        }
        if (basis.size() == n - 1) {
            const BitMatrix nullsp = BitMatrix::from_rows(basis).nullspace();
            if (nullsp.row_count() != 1) {
                throw std::logic_error("simon: expected a one-dimensional nullspace");
            }
            result.period = nullsp.row(0);
            if (result.period.none()) {
                throw std::logic_error("simon: recovered the zero vector");
            }
            return result;
        }
    }
    throw std::runtime_error("simon: query budget exhausted before the system closed");
}

namespace {

StateVector order_find_subroutine(std::size_t modulus, std::size_t base, std::size_t q_dim) {
    // |x>|1> uniform over x, then w -> w * a^x, then DFT on the exponent.
    StateVector state(std::vector<std::size_t>{q_dim, modulus});
    {
        const double amp = 1.0 / std::sqrt(static_cast<double>(q_dim));
        std::vector<cplx> amps(state.total_dim(), 0.0);
        std::size_t apow = 1 % modulus;
        for (std::size_t x = 0; x < q_dim; ++x) {
            amps[x * modulus + apow] = amp;
            apow = apow * base % modulus;
        }
        state = StateVector::from_amplitudes(state.dims(), std::move(amps));
    }
    apply_dft(state, 0, false);
    return state;
}

std::size_t draw_from(const std::vector<double>& probs, Rng& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return i;
    }
    return probs.size() - 1;
}

} // namespace

OrderFindResult order_find(std::size_t modulus, std::size_t base, Rng& rng, FourierMode mode,
                           std::size_t max_samples) {
    if (modulus < 3 || modulus > 64) {
        throw std::invalid_argument("order_find: modulus out of range (3..64)");
    }
    if (base <= 1 || base >= modulus) throw std::invalid_argument("order_find: base out of range");
    if (gcd_u(base, modulus) != 1) {
        throw std::invalid_argument("order_find: base shares a factor with the modulus");
    }

    std::size_t q_dim;
    if (mode == FourierMode::PowerOfTwo) {
        q_dim = 1;
        while (q_dim < modulus * modulus) q_dim <<= 1;
    } else {
        q_dim = multiplicative_order(base, modulus);
    }

    OrderFindResult result;
    result.modulus = q_dim;
    // The pre-measurement state is the same every round; sample repeatedly
    // from its exact exponent-register distribution.
    const StateVector state = order_find_subroutine(modulus, base, q_dim);
    const std::vector<double> probs =
        outcome_probabilities(state, 0, MeasureBasis::Computational);
    for (std::size_t sample = 0; sample < max_samples; ++sample) {
        const std::size_t c = draw_from(probs, rng);
        ++result.samples_used;
        if (c == 0) continue;
        for (std::size_t r : convergent_denominators(c, q_dim, modulus)) {
            if (r >= 1 && pow_mod(base, r, modulus) == 1) {
                result.order = r;
                return result;
            }
        }
    }
    throw std::runtime_error("order_find: sample budget exhausted");
}

namespace {

bool is_prime(std::size_t n) {
    if (n < 2) return false;
    for (std::size_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

bool is_prime_power(std::size_t n) {
    for (std::size_t b = 2; b * b <= n; ++b) {
        if (n % b != 0) continue;
        std::size_t m = n;
        while (m % b == 0) m /= b;
        return m == 1;
    }
    return false;
}

} // namespace

FactorResult factor(std::size_t n, Rng& rng, std::size_t max_attempts) {
    if (n < 9 || n > 64) throw std::invalid_argument("factor: modulus out of range (9..64)");
    if (n % 2 == 0) throw std::invalid_argument("factor: modulus must be odd");
    if (is_prime(n)) throw std::invalid_argument("factor: modulus is prime");
    if (is_prime_power(n)) {
        throw std::invalid_argument("factor: prime powers are handled classically");
    }

    FactorResult result;
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        result.attempts = attempt + 1;
        const std::size_t a = 2 + rng.uniform_int(n - 3);
        const std::size_t g = gcd_u(a, n);
        if (g > 1) {
            result.p = std::min(g, n / g);
            result.q = std::max(g, n / g);
            return result;
        }
        const std::size_t r = order_find(n, a, rng).order;
        if (r % 2 != 0) continue;
        const std::size_t h = pow_mod(a, r / 2, n);
        if (h == n - 1) continue;
        const std::size_t f = gcd_u(h >= 1 ? h - 1 : 0, n);
        if (f == 1 || f == n) continue;
        result.p = std::min(f, n / f);
        result.q = std::max(f, n / f);
        return result;
    }
    throw std::runtime_error("factor: attempt budget exhausted");
}

void DiscreteLogInstance::validate() const {
    if (prime < 3 || prime > 32 || !is_prime(prime)) {
        throw std::invalid_argument("discrete_log: P must be a prime in 3..32");
    }
    if (generator < 2 || generator >= prime) {
        throw std::invalid_argument("discrete_log: generator out of range");
    }
    if (multiplicative_order(generator, prime) != prime - 1) {
        throw std::invalid_argument("discrete_log: g does not generate the group");
    }
    if (target < 1 || target >= prime) {
        throw std::invalid_argument("discrete_log: target out of range");
    }
}

namespace {

// Solve a * x = b (mod r); returns all candidates when gcd(a, r) divides b.
std::vector<std::size_t> solve_congruence(std::size_t a, std::size_t b, std::size_t r,
                                          std::size_t max_candidates) {
    std::vector<std::size_t> out;
    a %= r;
    b %= r;
    const std::size_t d = gcd_u(a == 0 ? r : a, r);
    if (b % d != 0) return out;
    if (d > max_candidates) return out;
    const std::size_t r2 = r / d;
    if (r2 == 1) {
        for (std::size_t j = 0; j < d; ++j) out.push_back(j % r);
        return out;
    }
    const std::size_t x0 = (b / d) % r2 * mod_inverse((a / d) % r2, r2) % r2;
    for (std::size_t j = 0; j < d; ++j) out.push_back((x0 + j * r2) % r);
    return out;
}

} // namespace

DiscreteLogResult discrete_log(const DiscreteLogInstance& instance, Rng& rng,
                               std::size_t max_samples) {
    instance.validate();
    const std::size_t p = instance.prime;
    const std::size_t r = p - 1; // order of the generator
    std::size_t q_dim;
    if (instance.mode == FourierMode::PowerOfTwo) {
        q_dim = 1;
        while (q_dim < r * r) q_dim <<= 1;
    } else {
        q_dim = r;
    }

    const std::size_t y_inv = mod_inverse(instance.target, p);

    DiscreteLogResult result;
    result.modulus = q_dim;

    // |alpha>|beta>|g^alpha y^-beta>, DFT both exponent registers; the joint
    // exponent-pair distribution is fixed, so build it once and sample.
    StateVector state(std::vector<std::size_t>{q_dim, q_dim, p});
    {
        const double amp = 1.0 / static_cast<double>(q_dim);
        std::vector<cplx> amps(state.total_dim(), 0.0);
        std::size_t gpow = 1;
        for (std::size_t alpha = 0; alpha < q_dim; ++alpha) {
            std::size_t w = gpow;
            for (std::size_t beta = 0; beta < q_dim; ++beta) {
                amps[(alpha * q_dim + beta) * p + w] = amp;
                w = w * y_inv % p;
            }
            gpow = gpow * instance.generator % p;
        }
        state = StateVector::from_amplitudes(state.dims(), std::move(amps));
    }
    apply_dft(state, 0, false);
    apply_dft(state, 1, false);
    std::vector<double> pair_probs(q_dim * q_dim, 0.0);
    for (std::size_t i = 0; i < state.total_dim(); ++i) {
        pair_probs[i / p] += std::norm(state.amp(i));
    }

    for (std::size_t sample = 0; sample < max_samples; ++sample) {
        const std::size_t pair = draw_from(pair_probs, rng);
        const std::size_t a = pair / q_dim;
        const std::size_t b = pair % q_dim;
        ++result.samples_used;

        std::size_t k, m;
        if (q_dim == r) {
            k = a % r;
            m = b % r;
        } else {
            const double scale = static_cast<double>(r) / static_cast<double>(q_dim);
            k = static_cast<std::size_t>(std::llround(a * scale)) % r;
            m = static_cast<std::size_t>(std::llround(b * scale)) % r;
        }
        // peaks satisfy k * x = -m (mod r)
        for (std::size_t x : solve_congruence(k, (r - m % r) % r, r, 64)) {
            if (pow_mod(instance.generator, x, p) == instance.target) {
                result.exponent = x % r;
                return result;
            }
        }
    }
    throw std::runtime_error("discrete_log: sample budget exhausted");
}

double phase_estimate(const Gate& unitary, const StateVector& eigenstate, std::size_t t_bits,
                      Rng& rng) {
    if (t_bits < 1 || t_bits > 10) throw std::invalid_argument("phase_estimate: t out of range");
    if (unitary.dim() != 2 || eigenstate.register_count() != 1 || eigenstate.dim(0) != 2) {
        throw std::invalid_argument("phase_estimate: expected a single-qubit unitary/state");
    }
    // eigenvector check
    {
        StateVector v = eigenstate;
        v.apply(unitary, {0});
        const cplx lambda = inner_product(eigenstate, v);
        double residual = 0.0;
        for (std::size_t i = 0; i < 2; ++i) {
            residual += std::norm(v.amp(i) - lambda * eigenstate.amp(i));
        }
        if (std::sqrt(residual) > 1e-10) {
            throw std::invalid_argument("phase_estimate: state is not an eigenvector");
        }
    }

    StateVector state = tensor(StateVector::qubits(t_bits), eigenstate);
    for (std::size_t j = 0; j < t_bits; ++j) state.apply(gate_h(), {j});
    for (std::size_t j = 0; j < t_bits; ++j) {
        const Gate cu = unitary.power(std::uint64_t(1) << (t_bits - 1 - j)).controlled();
        state.apply(cu, {j, t_bits});
    }

    // inverse Fourier transform over the control qubits as one composite index
    const Gate iqft = [&] {
        const Gate f = dft_gate(std::size_t(1) << t_bits).dagger();
        return Gate("iqft", std::vector<std::size_t>(t_bits, 2), f.matrix());
    }();
    std::vector<std::size_t> controls(t_bits);
    for (std::size_t j = 0; j < t_bits; ++j) controls[j] = j;
    state.apply(iqft, controls);

    std::size_t y = 0;
    for (std::size_t j = 0; j < t_bits; ++j) {
        y = (y << 1) |
            static_cast<std::size_t>(measure_in_place(state, j, MeasureBasis::Computational, rng));
    }
    return static_cast<double>(y) / static_cast<double>(std::size_t(1) << t_bits);
}

GroverResult grover(std::size_t n, std::size_t marked, Rng& rng,
                    std::optional<std::size_t> iterations) {
    if (n < 1 || n > 10) throw std::invalid_argument("grover: n out of range (1..10)");
    const std::size_t dim = std::size_t(1) << n;
    if (marked >= dim) throw std::invalid_argument("grover: marked index out of range");

    GroverResult result;
    result.iterations = iterations.value_or(static_cast<std::size_t>(
        std::floor(M_PI / 4.0 * std::pow(2.0, static_cast<double>(n) / 2.0))));

    std::vector<cplx> amps(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    for (std::size_t it = 0; it < result.iterations; ++it) {
        amps[marked] = -amps[marked]; // oracle
        cplx mean = 0.0;
        for (const cplx& a : amps) mean += a;
        mean /= static_cast<double>(dim);
        for (cplx& a : amps) a = 2.0 * mean - a; // inversion about the mean
    }
    result.success_probability = std::norm(amps[marked]);

    const double u = rng.uniform();
    double acc = 0.0;
    result.measured = dim - 1;
    for (std::size_t i = 0; i < dim; ++i) {
        acc += std::norm(amps[i]);
        if (u < acc) {
            result.measured = i;
            break;
        }
    }
    return result;
}

} // namespace qeclab
