#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "jetinv/rational.hpp"

namespace jetinv {

// Dense row-major matrix of exact rationals.
class ExactMatrix {
public:
    ExactMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, Rational(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t r, std::size_t c) { return e_.at(r * cols_ + c); }
    const Rational& at(std::size_t r, std::size_t c) const { return e_.at(r * cols_ + c); }

    std::vector<Rational> mul_vec(const std::vector<Rational>& v) const {
        require(v.size() == cols_, "bad-shape", "matrix-vector size mismatch");
        std::vector<Rational> out(rows_, Rational(0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (!at(r, c).is_zero() && !v[c].is_zero()) out[r] += at(r, c) * v[c];
        return out;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> e_;
};

// Reduced-echelon nullspace basis. Pivot columns ascend left to right; within
// a column the pivot row is the candidate of smallest bit-size (ties: lowest
// row). Basis vectors are integer, content-free, first nonzero entry positive,
// ordered by ascending free column.
inline std::vector<std::vector<Rational>> nullspace(ExactMatrix m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < C && row < R; ++col) {
        // smallest-bit-size pivot in this column at or below `row`
        std::size_t best = R;
        std::size_t best_bits = 0;
        for (std::size_t r = row; r < R; ++r) {
            if (m.at(r, col).is_zero()) continue;
            std::size_t bits = m.at(r, col).bit_size();
            if (best == R || bits < best_bits) { best = r; best_bits = bits; }
        }
        if (best == R) continue;
        if (best != row)
            for (std::size_t c = col; c < C; ++c) std::swap(m.at(row, c), m.at(best, c));
        Rational inv = Rational(1) / m.at(row, col);
        for (std::size_t c = col; c < C; ++c) m.at(row, c) *= inv;
        for (std::size_t r = 0; r < R; ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            Rational f = m.at(r, col);
            for (std::size_t c = col; c < C; ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivot_col.push_back(col);
        ++row;
    }

    std::vector<bool> is_pivot(C, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < C; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(C, Rational(0));
        v[free] = Rational(1);
        for (std::size_t p = 0; p < pivot_col.size(); ++p)
            v[pivot_col[p]] = -m.at(p, free);
        // integer, coprime, first nonzero positive
        Rational g(0);
        for (const auto& x : v) g = rational_gcd(g, x);
        int lead = 0;
        for (const auto& x : v)
            if (!x.is_zero()) { lead = x.sign(); break; }
        if (lead < 0) g = -g;
        if (!g.is_zero() && !g.is_one()) {
            Rational inv = Rational(1) / g;
            for (auto& x : v) x *= inv;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// Rank by plain elimination with first-nonzero pivoting; used as an
// independent cross-check against the nullspace routine.
inline std::size_t rank_first_pivot(ExactMatrix m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < C && rank < R; ++col) {
        std::size_t p = R;
        for (std::size_t r = rank; r < R; ++r)
            if (!m.at(r, col).is_zero()) { p = r; break; }
        if (p == R) continue;
        if (p != rank)
            for (std::size_t c = col; c < C; ++c) std::swap(m.at(rank, c), m.at(p, c));
        for (std::size_t r = rank + 1; r < R; ++r) {
            if (m.at(r, col).is_zero()) continue;
            Rational f = m.at(r, col) / m.at(rank, col);
            for (std::size_t c = col; c < C; ++c) m.at(r, c) -= f * m.at(rank, c);
        }
        ++rank;
    }
    return rank;
}

} // namespace jetinv
