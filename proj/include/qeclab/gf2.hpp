#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qeclab/bitvec.hpp"

namespace qeclab {

// Row-major matrix over GF(2). Rows are BitVecs, so elimination is
// word-level XOR.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : cols_(cols), rows_(rows, BitVec(cols)) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.rows_[i].set(i, true);
        return m;
    }

    static BitMatrix from_rows(std::vector<BitVec> rows) {
        BitMatrix m;
        m.rows_ = std::move(rows);
        m.cols_ = m.rows_.empty() ? 0 : m.rows_[0].size();
        return m;
    }

    std::size_t row_count() const { return rows_.size(); }
    std::size_t col_count() const { return cols_; }

    BitVec& row(std::size_t i) { return rows_[i]; }
    const BitVec& row(std::size_t i) const { return rows_[i]; }

    bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v) { rows_[r].set(c, v); }

    void append_row(BitVec v) {
        if (rows_.empty() && cols_ == 0) cols_ = v.size();
        rows_.push_back(std::move(v));
    }

    /// In-place reduced row echelon form. Returns the pivot columns in order.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_.size(); ++c) {
            std::size_t pivot = rows_.size();
            for (std::size_t i = r; i < rows_.size(); ++i) {
                if (rows_[i].get(c)) {
                    pivot = i;
                    break;
                }
            }
            if (pivot == rows_.size()) continue;
            std::swap(rows_[r], rows_[pivot]);
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (i != r && rows_[i].get(c)) rows_[i] ^= rows_[r];
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        BitMatrix copy = *this;
        return copy.rref().size();
    }

    /// Basis of { v : every row r satisfies r . v = 0 }.
    BitMatrix nullspace() const {
        BitMatrix work = *this;
        const std::vector<std::size_t> pivots = work.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (std::size_t c : pivots) is_pivot[c] = true;

        BitMatrix basis(0, cols_);
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            BitVec v(cols_);
            v.set(free, true);
            for (std::size_t i = 0; i < pivots.size(); ++i) {
                if (work.rows_[i].get(free)) v.set(pivots[i], true);
            }
            basis.append_row(std::move(v));
        }
        return basis;
    }

    BitMatrix transposed() const {
        BitMatrix t(cols_, rows_.size());
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (rows_[r].get(c)) t.set(c, r, true);
        return t;
    }

private:
    std::size_t cols_ = 0;
    std::vector<BitVec> rows_;
};

/// One solution x of A x = rhs over GF(2), if any.
inline std::optional<BitVec> solve_linear(const BitMatrix& a, const BitVec& rhs) {
    const std::size_t m = a.row_count();
    const std::size_t n = a.col_count();
    // augmented elimination
    BitMatrix work(m, n + 1);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) work.set(r, c, a.get(r, c));
        work.set(r, n, rhs.get(r));
    }
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < m; ++c) {
        std::size_t p = m;
        for (std::size_t i = row; i < m; ++i) {
            if (work.get(i, c)) {
                p = i;
                break;
            }
        }
        if (p == m) continue;
        std::swap(work.row(row), work.row(p));
        for (std::size_t i = 0; i < m; ++i) {
            if (i != row && work.get(i, c)) work.row(i) ^= work.row(row);
        }
        pivots.push_back(c);
        ++row;
    }
    for (std::size_t r = row; r < m; ++r) {
        if (work.get(r, n)) return std::nullopt; // inconsistent
    }
    BitVec x(n);
    for (std::size_t i = 0; i < pivots.size(); ++i) x.set(pivots[i], work.get(i, n));
    return x;
}

// Row-space membership and decomposition against a fixed list of spanning
// vectors. Construction runs one elimination; queries are cheap.
class Gf2Span {
public:
    explicit Gf2Span(const std::vector<BitVec>& vectors) {
        if (!vectors.empty()) cols_ = vectors[0].size();
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            BitVec combo(vectors.size());
            combo.set(i, true);
            insert(vectors[i], combo);
        }
        source_count_ = vectors.size();
    }

    std::size_t rank() const { return rows_.size(); }

    bool contains(const BitVec& v) const {
        BitVec r = v;
        reduce_only(r);
        return r.none();
    }

    /// If v is in the span, returns the coefficient vector over the original
    /// input list (one bit per input vector).
    std::optional<BitVec> decompose(const BitVec& v) const {
        BitVec r = v;
        BitVec combo(source_count_);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (r.get(pivot_[i])) {
                r ^= rows_[i];
                combo ^= combos_[i];
            }
        }
        if (!r.none()) return std::nullopt;
        return combo;
    }

private:
    void insert(BitVec v, BitVec combo) {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (v.get(pivot_[i])) {
                v ^= rows_[i];
                combo ^= combos_[i];
            }
        }
        const std::size_t p = v.first_set();
        if (p == v.size()) return; // dependent
        rows_.push_back(std::move(v));
        combos_.push_back(std::move(combo));
        pivot_.push_back(p);
    }

    void reduce_only(BitVec& v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (v.get(pivot_[i])) v ^= rows_[i];
        }
    }

    std::size_t cols_ = 0;
    std::size_t source_count_ = 0;
    std::vector<BitVec> rows_;
    std::vector<BitVec> combos_;
    std::vector<std::size_t> pivot_;
};

} // namespace qeclab
