#include "qeclab/stabilizer_code.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qeclab {

void StabilizerCode::validate() const {
    if (k > n) throw std::invalid_argument("StabilizerCode: k > n");
    if (generators.size() != n - k) {
        throw std::invalid_argument("StabilizerCode: expected n-k generators");
    }
    for (const Pauli& g : generators) {
        if (g.n() != n) throw std::invalid_argument("StabilizerCode: generator length mismatch");
        if (g.sign_exponent() % 2 != 0) {
            throw std::invalid_argument("StabilizerCode: generator is not Hermitian");
        }
        if (g.bits_identity()) {
            throw std::invalid_argument("StabilizerCode: identity (or -I) generator");
        }
    }
    for (std::size_t i = 0; i < generators.size(); ++i) {
        for (std::size_t j = i + 1; j < generators.size(); ++j) {
            if (!generators[i].commutes_with(generators[j])) {
                throw std::invalid_argument("StabilizerCode: generators do not commute");
            }
        }
    }
    std::vector<BitVec> sym;
    for (const Pauli& g : generators) sym.push_back(symplectic_vector(g));
    if (Gf2Span(sym).rank() != n - k) {
        throw std::invalid_argument("StabilizerCode: generators are dependent");
    }

    if (logical_x.size() != k || logical_z.size() != k) {
        throw std::invalid_argument("StabilizerCode: expected k logical X and Z operators");
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (const Pauli& g : generators) {
            if (!logical_x[i].commutes_with(g) || !logical_z[i].commutes_with(g)) {
                throw std::invalid_argument(
                    "StabilizerCode: logical operator does not commute with a generator");
            }
        }
        for (std::size_t j = 0; j < k; ++j) {
            const bool want_anticommute = (i == j);
            if (logical_x[i].commutes_with(logical_z[j]) == want_anticommute) {
                throw std::invalid_argument(
                    "StabilizerCode: logical X/Z pairing is not symplectic");
            }
            if (i < j && (!logical_x[i].commutes_with(logical_x[j]) ||
                          !logical_z[i].commutes_with(logical_z[j]))) {
                throw std::invalid_argument("StabilizerCode: logical operators of like type clash");
            }
        }
    }
}

BitVec symplectic_vector(const Pauli& p) {
    BitVec v(2 * p.n());
    for (std::size_t q = 0; q < p.n(); ++q) {
        if (p.x.get(q)) v.set(q, true);
        if (p.z.get(q)) v.set(p.n() + q, true);
    }
    return v;
}

Pauli pauli_from_bits(const BitVec& x, const BitVec& z) {
    Pauli p(x.size());
    p.x = x;
    p.z = z;
    p.phase = static_cast<int>((x & z).popcount() & 3);
    return p;
}

namespace {

Pauli pauli_from_symplectic(const BitVec& v) {
    const std::size_t n = v.size() / 2;
    BitVec x(n), z(n);
    for (std::size_t q = 0; q < n; ++q) {
        if (v.get(q)) x.set(q, true);
        if (v.get(n + q)) z.set(q, true);
    }
    return pauli_from_bits(x, z);
}

/// Swapped-halves vector so that commute(p, q) == !dot(sym(p), swapped(q)).
BitVec symplectic_dual(const Pauli& p) {
    BitVec v(2 * p.n());
    for (std::size_t q = 0; q < p.n(); ++q) {
        if (p.z.get(q)) v.set(q, true);
        if (p.x.get(q)) v.set(p.n() + q, true);
    }
    return v;
}

bool symplectic_product(const BitVec& a, const BitVec& b) {
    const std::size_t n = a.size() / 2;
    bool acc = false;
    for (std::size_t q = 0; q < n; ++q) {
        acc ^= (a.get(q) && b.get(n + q)) ^ (a.get(n + q) && b.get(q));
    }
    return acc;
}

} // namespace

StabilizerGroup::StabilizerGroup(const std::vector<Pauli>& generators)
    : gens_(generators), span_([&] {
          std::vector<BitVec> rows;
          rows.reserve(generators.size());
          for (const Pauli& g : generators) rows.push_back(symplectic_vector(g));
          return rows;
      }()) {}

bool StabilizerGroup::contains_up_to_sign(const Pauli& p) const {
    return span_.contains(symplectic_vector(p));
}

bool StabilizerGroup::contains(const Pauli& p) const {
    const auto combo = span_.decompose(symplectic_vector(p));
    if (!combo) return false;
    Pauli prod = Pauli::identity(p.n());
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (combo->get(i)) prod = pauli_mul(prod, gens_[i]);
    }
    return prod.phase == p.phase;
}

bool codespace_projector_check(const StabilizerCode& code, const StateVector& state, double tol) {
    if (!state.all_qubits() || state.register_count() != code.n) {
        throw std::invalid_argument("codespace_projector_check: state size mismatch");
    }
    for (const Pauli& g : code.generators) {
        if (std::abs(pauli_expectation(state, g) - cplx(1.0)) > tol) return false;
    }
    return true;
}

void for_each_pauli_of_weight(std::size_t n, std::size_t weight, ErrorSupport support,
                              const std::function<bool(const Pauli&)>& fn) {
    if (weight == 0) {
        fn(Pauli::identity(n));
        return;
    }
    const char* letters = support == ErrorSupport::All ? "XYZ"
                          : support == ErrorSupport::XOnly ? "X"
                                                           : "Z";
    const std::size_t letter_count = support == ErrorSupport::All ? 3 : 1;

    // Support masks ascend numerically with qubit 0 as the top bit, which is
    // exactly ascending string order; within a mask, letter tuples count up
    // with the leftmost position most significant.
    const std::size_t top = std::size_t(1) << n;
    for (std::size_t mask = 1; mask < top; ++mask) {
        if (std::popcount(mask) != static_cast<int>(weight)) continue;
        std::vector<std::size_t> pos;
        pos.reserve(weight);
        for (std::size_t q = 0; q < n; ++q) {
            if ((mask >> (n - 1 - q)) & 1) pos.push_back(q);
        }
        std::vector<std::size_t> letter_idx(weight, 0);
        while (true) {
            Pauli p(n);
            for (std::size_t i = 0; i < weight; ++i) p.set_letter(pos[i], letters[letter_idx[i]]);
            if (!fn(p)) return;
            std::size_t i = weight;
            while (i-- > 0) {
                if (++letter_idx[i] < letter_count) break;
                letter_idx[i] = 0;
                if (i == 0) goto next_mask;
            }
            if (letter_count == 1) break;
        }
    next_mask:;
    }
}

std::size_t min_distance(const StabilizerCode& code, ErrorSupport support) {
    if (code.n > 12) {
        throw std::invalid_argument("min_distance: n too large for exhaustive search");
    }
    const StabilizerGroup group(code.generators);
    for (std::size_t w = 1; w <= code.n; ++w) {
        std::size_t found = 0;
        for_each_pauli_of_weight(code.n, w, support, [&](const Pauli& p) {
            for (const Pauli& g : code.generators) {
                if (!p.commutes_with(g)) return true;
            }
            if (group.contains_up_to_sign(p)) return true;
            found = w;
            return false;
        });
        if (found) return found;
    }
    throw std::runtime_error("min_distance: no logical operator found (is k = 0?)");
}

void complete_logical_operators(StabilizerCode& code) {
    const std::size_t n = code.n;
    // Normalizer = nullspace of the swapped generator matrix.
    BitMatrix constraints(0, 2 * n);
    for (const Pauli& g : code.generators) constraints.append_row(symplectic_dual(g));
    const BitMatrix normalizer = constraints.nullspace();

    // Coset representatives of N(S)/S.
    std::vector<BitVec> gen_sym;
    for (const Pauli& g : code.generators) gen_sym.push_back(symplectic_vector(g));
    std::vector<BitVec> reps;
    {
        std::vector<BitVec> accum = gen_sym;
        Gf2Span span(accum);
        for (std::size_t i = 0; i < normalizer.row_count(); ++i) {
            if (!span.contains(normalizer.row(i))) {
                reps.push_back(normalizer.row(i));
                accum.push_back(normalizer.row(i));
                span = Gf2Span(accum);
            }
        }
    }
    if (reps.size() != 2 * code.k) {
        throw std::runtime_error("complete_logical_operators: unexpected quotient dimension");
    }

    code.logical_x.clear();
    code.logical_z.clear();
    std::vector<BitVec> pool = reps;
    while (!pool.empty()) {
        const BitVec a = pool.front();
        pool.erase(pool.begin());
        std::size_t partner = pool.size();
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (symplectic_product(a, pool[i])) {
                partner = i;
                break;
            }
        }
        if (partner == pool.size()) {
            throw std::runtime_error("complete_logical_operators: degenerate symplectic form");
        }
        const BitVec b = pool[partner];
        pool.erase(pool.begin() + partner);
        for (BitVec& u : pool) {
            if (symplectic_product(u, b)) u ^= a;
            if (symplectic_product(u, a)) u ^= b;
        }
        code.logical_x.push_back(pauli_from_symplectic(a));
        code.logical_z.push_back(pauli_from_symplectic(b));
    }
}

namespace {

// One random commuting, independent generator set; nullopt if the sampler
// stalls (retried by the caller).
std::optional<std::vector<Pauli>> sample_generator_set(std::size_t n, std::size_t count,
                                                       Rng& rng) {
    std::vector<Pauli> gens;
    std::vector<BitVec> sym;
    for (std::size_t g = 0; g < count; ++g) {
        BitMatrix constraints(0, 2 * n);
        for (const Pauli& prev : gens) constraints.append_row(symplectic_dual(prev));
        const BitMatrix basis =
            gens.empty() ? BitMatrix::identity(2 * n) : constraints.nullspace();

        bool placed = false;
        for (std::size_t attempt = 0; attempt < 64 && !placed; ++attempt) {
            BitVec v(2 * n);
            for (std::size_t i = 0; i < basis.row_count(); ++i) {
                if (rng.next_u64() & 1) v ^= basis.row(i);
            }
            if (v.none()) continue;
            std::vector<BitVec> trial = sym;
            trial.push_back(v);
            if (Gf2Span(trial).rank() != trial.size()) continue;
            sym.push_back(v);
            gens.push_back(pauli_from_symplectic(v));
            placed = true;
        }
        if (!placed) return std::nullopt;
    }
    return gens;
}

std::optional<StabilizerCode> search_batch(std::size_t n, std::size_t k, std::size_t target_d,
                                           std::uint64_t batch_seed, std::size_t trials) {
    Rng rng(batch_seed);
    for (std::size_t t = 0; t < trials; ++t) {
        auto gens = sample_generator_set(n, n - k, rng);
        if (!gens) continue;
        StabilizerCode code;
        code.n = n;
        code.k = k;
        code.generators = std::move(*gens);
        try {
            complete_logical_operators(code);
        } catch (const std::runtime_error&) {
            continue;
        }
        const std::size_t d = min_distance(code);
        if (d >= target_d) {
            code.distance = d;
            code.validate();
            return code;
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<StabilizerCode> search_code(std::size_t n, std::size_t k, std::size_t target_d,
                                          std::uint64_t master_seed, std::size_t budget) {
    if (n > 8) throw std::invalid_argument("search_code: n > 8");
    if (target_d < 1) throw std::invalid_argument("search_code: target distance must be >= 1");
    if (k >= n) throw std::invalid_argument("search_code: need k < n");

    constexpr std::size_t kBatchTrials = 256;
    const std::size_t batches = (budget + kBatchTrials - 1) / kBatchTrials;
    const std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());

    for (std::size_t wave = 0; wave < batches; wave += workers) {
        const std::size_t wave_end = std::min(batches, wave + workers);
        std::vector<std::future<std::optional<StabilizerCode>>> futures;
        for (std::size_t b = wave; b < wave_end; ++b) {
            const std::size_t trials = std::min(kBatchTrials, budget - b * kBatchTrials);
            futures.push_back(std::async(std::launch::async, search_batch, n, k, target_d,
                                         derive_seed(master_seed, b), trials));
        }
        // lowest batch index wins, independent of completion order
        for (auto& f : futures) {
            auto result = f.get();
            if (result) return result;
        }
    }
    return std::nullopt;
}

namespace {

std::vector<std::size_t> group_weight_profile(const StabilizerCode& code) {
    // weight multiset over the whole group; cheap invariant for n <= 6
    const std::size_t m = code.generators.size();
    std::vector<std::size_t> weights;
    weights.reserve(std::size_t(1) << m);
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
        Pauli p = Pauli::identity(code.n);
        for (std::size_t i = 0; i < m; ++i) {
            if ((mask >> i) & 1) p = pauli_mul(p, code.generators[i]);
        }
        weights.push_back(p.weight());
    }
    std::sort(weights.begin(), weights.end());
    return weights;
}

// The six relabelings of {X, Y, Z}, each realizable by a single-qubit Clifford.
constexpr char kLetterPerms[6][3] = {
    {'X', 'Y', 'Z'}, {'X', 'Z', 'Y'}, {'Y', 'X', 'Z'},
    {'Y', 'Z', 'X'}, {'Z', 'X', 'Y'}, {'Z', 'Y', 'X'},
};

char apply_letter_perm(char letter, std::size_t perm) {
    switch (letter) {
        case 'X': return kLetterPerms[perm][0];
        case 'Y': return kLetterPerms[perm][1];
        case 'Z': return kLetterPerms[perm][2];
        default: return 'I';
    }
}

} // namespace

bool equivalent_codes(const StabilizerCode& a, const StabilizerCode& b) {
    if (a.n != b.n || a.k != b.k) return false;
    if (a.n > 6) throw std::invalid_argument("equivalent_codes: n > 6");
    if (group_weight_profile(a) != group_weight_profile(b)) return false;

    const std::size_t n = a.n;
    const StabilizerGroup target(b.generators);

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    std::vector<std::size_t> letter_perm(n, 0);
    do {
        std::fill(letter_perm.begin(), letter_perm.end(), 0);
        while (true) {
            bool all_in = true;
            for (const Pauli& g : a.generators) {
                Pauli mapped(n);
                for (std::size_t q = 0; q < n; ++q) {
                    const char letter = g.letter_at(q);
                    if (letter != 'I') {
                        mapped.set_letter(perm[q], apply_letter_perm(letter, letter_perm[q]));
                    }
                }
                if (!target.contains_up_to_sign(mapped)) {
                    all_in = false;
                    break;
                }
            }
            if (all_in) return true;

            std::size_t i = n;
            bool carried_out = true;
            while (i-- > 0) {
                if (++letter_perm[i] < 6) {
                    carried_out = false;
                    break;
                }
                letter_perm[i] = 0;
                if (i == 0) break;
            }
            if (carried_out) break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

void save_stabilizer_code(std::ostream& out, const StabilizerCode& code) {
    out << code.n << ' ' << code.k << '\n';
    for (const Pauli& g : code.generators) {
        if (g.sign_exponent() == 2) out << '-';
        for (std::size_t q = 0; q < code.n; ++q) out << g.letter_at(q);
        out << '\n';
    }
}

StabilizerCode load_stabilizer_code(std::istream& in) {
    std::size_t n = 0, k = 0;
    if (!(in >> n >> k)) throw std::invalid_argument("stabilizer file: missing 'n k' header");
    std::string line;
    std::getline(in, line);
    StabilizerCode code;
    code.n = n;
    code.k = k;
    for (std::size_t i = 0; i < n - k; ++i) {
        if (!std::getline(in, line)) {
            throw std::invalid_argument("stabilizer file: missing generator line");
        }
        const Pauli g = Pauli::from_string(line);
        if (g.n() != n) throw std::invalid_argument("stabilizer file: generator length != n");
        code.generators.push_back(g);
    }
    complete_logical_operators(code);
    code.validate();
    return code;
}

} // namespace qeclab
