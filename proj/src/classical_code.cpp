#include "qeclab/classical_code.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qeclab {

namespace {

// Yields every length-n bit pattern of the given weight, in ascending
// string-lexicographic order, until the callback returns false.
template <typename F>
void for_each_pattern_of_weight(std::size_t n, std::size_t weight, F&& fn) {
    std::vector<std::size_t> pos(weight);
    for (std::size_t i = 0; i < weight; ++i) pos[i] = i;
    // Positions enumerate in colex-descending order of the complement...
    // simpler: walk all masks in lexicographic string order via the
    // standard combination successor on positions.
    while (true) {
        BitVec v(n);
        for (std::size_t p : pos) v.set(p, true);
        if (!fn(v)) return;
        // next combination (positions ascending, lexicographic)
        std::size_t i = weight;
        while (i-- > 0) {
            if (pos[i] + (weight - i) < n) {
                ++pos[i];
                for (std::size_t j = i + 1; j < weight; ++j) pos[j] = pos[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
        if (weight == 0) return;
    }
}

std::uint64_t pack_bits(const BitVec& v) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < v.size(); ++i) key = (key << 1) | (v.get(i) ? 1u : 0u);
    return key;
}

} // namespace

ClassicalLinearCode ClassicalLinearCode::from_generator(BitMatrix g) {
    ClassicalLinearCode code;
    code.n = g.col_count();
    code.k = g.row_count();
    if (g.rank() != code.k) {
        throw std::invalid_argument("ClassicalLinearCode: generator rows are dependent");
    }
    code.check = g.nullspace();
    code.gen = std::move(g);
    return code;
}

BitVec ClassicalLinearCode::encode(const BitVec& message) const {
    if (message.size() != k) throw std::invalid_argument("encode: message length != k");
    BitVec word(n);
    for (std::size_t i = 0; i < k; ++i) {
        if (message.get(i)) word ^= gen.row(i);
    }
    return word;
}

BitVec ClassicalLinearCode::syndrome(const BitVec& word) const {
    if (word.size() != n) throw std::invalid_argument("syndrome: word length != n");
    BitVec s(check.row_count());
    for (std::size_t i = 0; i < check.row_count(); ++i) s.set(i, check.row(i).dot(word));
    return s;
}

std::vector<BitVec> ClassicalLinearCode::codewords() const {
    if (k > 20) throw std::invalid_argument("codewords: k too large to enumerate");
    std::vector<BitVec> words;
    words.reserve(std::size_t(1) << k);
    for (std::size_t m = 0; m < (std::size_t(1) << k); ++m) {
        BitVec msg(k);
        for (std::size_t i = 0; i < k; ++i) msg.set(i, (m >> (k - 1 - i)) & 1);
        words.push_back(encode(msg));
    }
    return words;
}

std::size_t ClassicalLinearCode::min_distance() const {
    std::size_t best = n + 1;
    for (const BitVec& w : codewords()) {
        const std::size_t wt = w.popcount();
        if (wt > 0 && wt < best) best = wt;
    }
    return best;
}

ClassicalLinearCode repetition_code(std::size_t n) {
    if (n < 3 || n % 2 == 0) {
        throw std::invalid_argument("repetition_code: length must be odd and >= 3");
    }
    BitMatrix g(1, n);
    for (std::size_t i = 0; i < n; ++i) g.set(0, i, true);
    ClassicalLinearCode code = ClassicalLinearCode::from_generator(std::move(g));
    // Adjacent-equality checks make the syndrome read as a difference chain.
    BitMatrix h(n - 1, n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h.set(i, i, true);
        h.set(i, i + 1, true);
    }
    code.check = std::move(h);
    return code;
}

ClassicalLinearCode hamming_7_4() {
    BitMatrix g = BitMatrix::from_rows({
        BitVec::from_string("1111000"),
        BitVec::from_string("1100110"),
        BitVec::from_string("1010101"),
        BitVec::from_string("1111111"),
    });
    ClassicalLinearCode code = ClassicalLinearCode::from_generator(std::move(g));
    // The dual (even-weight subcode) doubles as the parity check.
    code.check = BitMatrix::from_rows({
        BitVec::from_string("1111000"),
        BitVec::from_string("1100110"),
        BitVec::from_string("1010101"),
    });
    return code;
}

ClassicalLinearCode full_code(std::size_t n) {
    ClassicalLinearCode code;
    code.n = n;
    code.k = n;
    code.gen = BitMatrix::identity(n);
    code.check = BitMatrix(0, n);
    return code;
}

ClassicalLinearCode dual_code(const ClassicalLinearCode& code) {
    ClassicalLinearCode dual;
    dual.n = code.n;
    dual.k = code.n - code.k;
    dual.gen = code.check;
    dual.check = code.gen;
    if (dual.gen.row_count() != dual.k || dual.gen.rank() != dual.k) {
        // e.g. a check matrix stored with redundant rows
        dual.gen = code.gen.nullspace();
    }
    return dual;
}

bool contains_dual(const ClassicalLinearCode& c1, const ClassicalLinearCode& c2) {
    if (c1.n != c2.n) throw std::invalid_argument("contains_dual: length mismatch");
    const ClassicalLinearCode d2 = dual_code(c2);
    std::vector<BitVec> gen_rows;
    for (std::size_t i = 0; i < c1.gen.row_count(); ++i) gen_rows.push_back(c1.gen.row(i));
    const Gf2Span span(gen_rows);
    for (std::size_t i = 0; i < d2.gen.row_count(); ++i) {
        if (!span.contains(d2.gen.row(i))) return false;
    }
    return true;
}

SyndromeDecoder::SyndromeDecoder(const ClassicalLinearCode& code) : code_(code) {
    const std::size_t d = code.min_distance();
    const std::size_t t = (d - 1) / 2;
    // Lowest weight first; within a weight, string-lexicographic order.
    // First fill wins, so ties resolve to the lexicographically smallest
    // error pattern.
    for (std::size_t w = 0; w <= t; ++w) {
        for_each_pattern_of_weight(code.n, w, [&](const BitVec& err) {
            const std::uint64_t key = pack_bits(code_.syndrome(err));
            table_.emplace(key, err);
            return true;
        });
    }
}

std::optional<SyndromeDecoder::Result> SyndromeDecoder::decode(const BitVec& word) const {
    const auto it = table_.find(pack_bits(code_.syndrome(word)));
    if (it == table_.end()) return std::nullopt;
    return Result{word ^ it->second, it->second};
}

std::optional<SyndromeDecoder::Result> syndrome_decode(const ClassicalLinearCode& code,
                                                       const BitVec& word) {
    return SyndromeDecoder(code).decode(word);
}

void save_classical_code(std::ostream& out, const ClassicalLinearCode& code) {
    out << code.n << ' ' << code.k << '\n';
    for (std::size_t i = 0; i < code.k; ++i) out << code.gen.row(i).to_string() << '\n';
}

ClassicalLinearCode load_classical_code(std::istream& in) {
    std::size_t n = 0, k = 0;
    if (!(in >> n >> k)) throw std::invalid_argument("classical code file: missing 'n k' header");
    if (n == 0 || k > n) throw std::invalid_argument("classical code file: bad dimensions");
    std::string line;
    std::getline(in, line);
    BitMatrix g(0, n);
    for (std::size_t i = 0; i < k; ++i) {
        if (!std::getline(in, line)) {
            throw std::invalid_argument("classical code file: missing generator row");
        }
        if (line.size() != n) {
            throw std::invalid_argument("classical code file: row length != n");
        }
        g.append_row(BitVec::from_string(line));
    }
    return ClassicalLinearCode::from_generator(std::move(g));
}

} // namespace qeclab
