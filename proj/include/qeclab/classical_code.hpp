#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qeclab/gf2.hpp"

namespace qeclab {

// [n, k] binary linear code given by generator and parity-check matrices
// with G . H^T = 0. Immutable after construction.
struct ClassicalLinearCode {
    std::size_t n = 0;
    std::size_t k = 0;
    BitMatrix gen;   // k x n
    BitMatrix check; // (n-k) x n

    /// Builds the code from a generator matrix; the parity check is the
    /// nullspace. Throws if G does not have full row rank.
    static ClassicalLinearCode from_generator(BitMatrix g);

    BitVec encode(const BitVec& message) const;
    BitVec syndrome(const BitVec& word) const;
    bool is_codeword(const BitVec& word) const { return syndrome(word).none(); }

    /// All 2^k codewords (guarded to k <= 20).
    std::vector<BitVec> codewords() const;

    /// Minimum nonzero codeword weight by enumeration.
    std::size_t min_distance() const;
};

/// [n, 1] repetition code; n odd and >= 3.
ClassicalLinearCode repetition_code(std::size_t n);

/// The [7,4,3] Hamming code with the generator fixed so the even-weight
/// subcode is spanned by {1111000, 1100110, 1010101}.
ClassicalLinearCode hamming_7_4();

/// [n, n] full space (trivial check).
ClassicalLinearCode full_code(std::size_t n);

/// The [n, n-k] dual; the dual's generator is the input's parity check.
ClassicalLinearCode dual_code(const ClassicalLinearCode& code);

/// True iff dual(c2) is a subcode of c1 (the CSS admissibility condition),
/// decided by rank arithmetic.
bool contains_dual(const ClassicalLinearCode& c1, const ClassicalLinearCode& c2);

// Syndrome-table decoder covering every error of weight <= (d-1)/2.
// Syndromes outside the table are reported, not guessed.
class SyndromeDecoder {
public:
    explicit SyndromeDecoder(const ClassicalLinearCode& code);

    struct Result {
        BitVec codeword;
        BitVec error;
    };

    std::optional<Result> decode(const BitVec& word) const;
    std::size_t table_size() const { return table_.size(); }

private:
    const ClassicalLinearCode& code_;
    std::unordered_map<std::uint64_t, BitVec> table_;
};

/// One-shot convenience wrapper around SyndromeDecoder.
std::optional<SyndromeDecoder::Result> syndrome_decode(const ClassicalLinearCode& code,
                                                       const BitVec& word);

// Plain-text format: first line "n k", then k generator rows of 0/1.
void save_classical_code(std::ostream& out, const ClassicalLinearCode& code);
ClassicalLinearCode load_classical_code(std::istream& in);

} // namespace qeclab
