#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "qeclab/classical_code.hpp"

using namespace qeclab;

namespace {

std::set<std::string> codeword_strings(const ClassicalLinearCode& code) {
    std::set<std::string> out;
    for (const BitVec& w : code.codewords()) out.insert(w.to_string());
    return out;
}

bool check_orthogonality(const ClassicalLinearCode& code) {
    for (std::size_t i = 0; i < code.gen.row_count(); ++i) {
        for (std::size_t j = 0; j < code.check.row_count(); ++j) {
            if (code.gen.row(i).dot(code.check.row(j))) return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("repetition code basics") {
    const auto rep3 = repetition_code(3);
    CHECK(rep3.n == 3);
    CHECK(rep3.k == 1);
    CHECK(codeword_strings(rep3) == std::set<std::string>{"000", "111"});
    CHECK(check_orthogonality(rep3));
    CHECK(rep3.min_distance() == 3);

    CHECK_THROWS_AS(repetition_code(4), std::invalid_argument);
    CHECK_THROWS_AS(repetition_code(1), std::invalid_argument);
}

TEST_CASE("repetition decoding is majority vote") {
    const auto rep3 = repetition_code(3);
    const auto r = syndrome_decode(rep3, BitVec::from_string("101"));
    REQUIRE(r.has_value());
    CHECK(r->codeword.to_string() == "111");

    const auto r2 = syndrome_decode(rep3, BitVec::from_string("110"));
    REQUIRE(r2.has_value());
    CHECK(r2->codeword.to_string() == "111");
    CHECK(r2->error.to_string() == "001");

    const auto rep5 = repetition_code(5);
    const auto r5 = syndrome_decode(rep5, BitVec::from_string("00100"));
    REQUIRE(r5.has_value());
    CHECK(r5->codeword.to_string() == "00000");
}

TEST_CASE("the [7,4] Hamming code reproduces the fixed codeword set") {
    const auto ham = hamming_7_4();
    CHECK(ham.n == 7);
    CHECK(ham.k == 4);
    CHECK(check_orthogonality(ham));

    const auto words = codeword_strings(ham);
    CHECK(words.size() == 16);
    const std::set<std::string> even = {"0000000", "1111000", "1100110", "0011110",
                                        "1010101", "0101101", "0110011", "1001011"};
    for (const auto& w : even) CHECK(words.count(w) == 1);
    // complements of the even-subcode words
    CHECK(words.count("1111111") == 1);
    CHECK(words.count("0000111") == 1);
    for (const auto& w : even) {
        std::string comp = w;
        for (char& c : comp) c = (c == '0') ? '1' : '0';
        CHECK(words.count(comp) == 1);
    }

    CHECK(ham.min_distance() == 3);
}

TEST_CASE("Hamming decoding fixes every single-bit flip") {
    const auto ham = hamming_7_4();
    const SyndromeDecoder decoder(ham);
    for (const BitVec& codeword : ham.codewords()) {
        for (std::size_t bit = 0; bit < 7; ++bit) {
            BitVec corrupted = codeword;
            corrupted.flip(bit);
            const auto r = decoder.decode(corrupted);
            REQUIRE(r.has_value());
            CHECK(r->codeword == codeword);
            CHECK(r->error.popcount() == 1);
            CHECK(r->error.get(bit));
        }
    }
    // a clean codeword decodes to the zero error
    const auto r = decoder.decode(BitVec::from_string("0000000"));
    REQUIRE(r.has_value());
    CHECK(r->error.none());
}

TEST_CASE("syndromes outside the table are reported, not guessed") {
    // [4,1] distance-2 toy code: no correctable single errors
    BitMatrix g(1, 4);
    for (std::size_t i = 0; i < 2; ++i) g.set(0, i, true);
    const auto code = ClassicalLinearCode::from_generator(std::move(g));
    const SyndromeDecoder decoder(code);
    CHECK_FALSE(decoder.decode(BitVec::from_string("1000")).has_value());
}

TEST_CASE("dual code constructions") {
    const auto rep3 = repetition_code(3);
    const auto dual = dual_code(rep3);
    CHECK(dual.n == 3);
    CHECK(dual.k == 2);
    // even-weight code
    CHECK(codeword_strings(dual) == std::set<std::string>{"000", "011", "101", "110"});

    const auto ham = hamming_7_4();
    const auto dd = dual_code(dual_code(ham));
    CHECK(codeword_strings(dd) == codeword_strings(ham));

    // dual of Hamming sits inside Hamming
    const auto ham_dual = dual_code(ham);
    const auto ham_words = codeword_strings(ham);
    for (const auto& w : codeword_strings(ham_dual)) CHECK(ham_words.count(w) == 1);
}

TEST_CASE("contains_dual matches enumeration") {
    const auto ham = hamming_7_4();
    const auto rep3 = repetition_code(3);
    CHECK(contains_dual(ham, ham));
    CHECK_FALSE(contains_dual(rep3, rep3));
    CHECK(contains_dual(full_code(3), full_code(3)));
    CHECK(contains_dual(rep3, full_code(3))); // dual of the full space is {000}
    CHECK_THROWS_AS(contains_dual(ham, rep3), std::invalid_argument);

    // brute-force cross-check on the Hamming pair
    const auto dual = dual_code(ham);
    const auto ham_words = codeword_strings(ham);
    bool all_in = true;
    for (const auto& w : codeword_strings(dual)) all_in = all_in && ham_words.count(w) == 1;
    CHECK(all_in == contains_dual(ham, ham));
}

TEST_CASE("every generated code satisfies G H^T = 0 and the codeword count") {
    for (const auto& code : {repetition_code(3), repetition_code(7), hamming_7_4(),
                             dual_code(hamming_7_4()), full_code(4)}) {
        CHECK(check_orthogonality(code));
        CHECK(code.codewords().size() == std::size_t(1) << code.k);
        CHECK(code.gen.rank() == code.k);
        CHECK(code.check.rank() == code.n - code.k);
    }
}

TEST_CASE("exhaustive decoding up to half distance for small codes") {
    for (const auto& code : {repetition_code(5), hamming_7_4()}) {
        const SyndromeDecoder decoder(code);
        const std::size_t t = (code.min_distance() - 1) / 2;
        for (const BitVec& codeword : code.codewords()) {
            for (std::size_t e = 0; e < (std::size_t(1) << code.n); ++e) {
                BitVec err(code.n);
                for (std::size_t b = 0; b < code.n; ++b) err.set(b, (e >> b) & 1);
                if (err.popcount() > t) continue;
                const auto r = decoder.decode(codeword ^ err);
                REQUIRE(r.has_value());
                CHECK(r->codeword == codeword);
            }
        }
    }
}

TEST_CASE("plain-text code files round-trip") {
    const auto ham = hamming_7_4();
    std::stringstream buffer;
    save_classical_code(buffer, ham);
    const std::string first = buffer.str();
    const auto loaded = load_classical_code(buffer);
    CHECK(loaded.n == 7);
    CHECK(loaded.k == 4);
    CHECK(codeword_strings(loaded) == codeword_strings(ham));

    std::stringstream again;
    save_classical_code(again, loaded);
    CHECK(again.str() == first);

    std::stringstream bad("3 2\n101\n");
    CHECK_THROWS_AS(load_classical_code(bad), std::invalid_argument);
}
