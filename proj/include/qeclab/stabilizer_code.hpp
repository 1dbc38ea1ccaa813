#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qeclab/gf2.hpp"
#include "qeclab/pauli.hpp"
#include "qeclab/rng.hpp"

namespace qeclab {

/// Reported order of the five-qubit code's symmetry group. Recorded as
/// context for the search experiments; nothing here computes it.
inline constexpr std::uint64_t kFiveQubitCodeSymmetryGroupOrder = 5160960;

// [[n, k]] stabilizer code: n-k independent commuting Hermitian generators
// (never -I), plus a chosen logical basis. Immutable in practice.
struct StabilizerCode {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<Pauli> generators;
    std::vector<Pauli> logical_x;
    std::vector<Pauli> logical_z;
    std::optional<std::size_t> distance; // certificate, when verified

    /// Throws std::invalid_argument if any structural invariant fails.
    void validate() const;
};

/// 2n-bit symplectic vector (x half then z half).
BitVec symplectic_vector(const Pauli& p);

/// Hermitian Pauli (+1 sign) with the given bit parts.
Pauli pauli_from_bits(const BitVec& x, const BitVec& z);

// Sign-aware membership in the group generated by a fixed list of
// Hermitian Paulis.
class StabilizerGroup {
public:
    explicit StabilizerGroup(const std::vector<Pauli>& generators);

    std::size_t rank() const { return span_.rank(); }
    /// Bit-part membership (ignores signs).
    bool contains_up_to_sign(const Pauli& p) const;
    /// Exact membership: bit parts in the span and the sign reproduced.
    bool contains(const Pauli& p) const;

private:
    std::vector<Pauli> gens_;
    Gf2Span span_;
};

/// True iff every generator fixes the state within the tolerance.
bool codespace_projector_check(const StabilizerCode& code, const StateVector& state,
                               double tol = 1e-10);

enum class ErrorSupport { All, XOnly, ZOnly };

/// Minimum weight of a Pauli that commutes with every generator but is not
/// in the stabilizer group, by weight-ordered exhaustion (n <= 12).
std::size_t min_distance(const StabilizerCode& code, ErrorSupport support = ErrorSupport::All);

/// Fill in logical_x / logical_z by symplectic completion of the
/// normalizer modulo the stabilizer.
void complete_logical_operators(StabilizerCode& code);

/// Randomized search for an [[n, k]] code of distance >= target_d: sample
/// random commuting generator completions, certify with min_distance.
/// Trials run in deterministic batches derived from the master seed; the
/// lowest succeeding batch wins. Returns nothing if the budget runs out.
std::optional<StabilizerCode> search_code(std::size_t n, std::size_t k, std::size_t target_d,
                                          std::uint64_t master_seed, std::size_t budget);

/// Equivalence under qubit permutation composed with single-qubit Clifford
/// relabelings of the letters (n <= 6, exhaustive).
bool equivalent_codes(const StabilizerCode& a, const StabilizerCode& b);

// File format: first line "n k", then one generator per line
// (I/X/Y/Z letters, optional leading '-'). Round-trips byte-exactly.
void save_stabilizer_code(std::ostream& out, const StabilizerCode& code);
StabilizerCode load_stabilizer_code(std::istream& in);

/// Weight-ordered Pauli enumeration in string-lexicographic order
/// (I < X < Y < Z, leftmost position first). Stops when fn returns false.
void for_each_pauli_of_weight(std::size_t n, std::size_t weight, ErrorSupport support,
                              const std::function<bool(const Pauli&)>& fn);

} // namespace qeclab
