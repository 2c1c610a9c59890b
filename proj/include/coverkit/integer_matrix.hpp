#pragma once

#include "coverkit/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

namespace coverkit {

/// Dense row-major integer matrix; just enough linear algebra for lattices of small rank.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> values)
        : rows_(rows), cols_(cols), data_(std::move(values))
    {
        if (data_.size() != rows * cols) throw std::invalid_argument("IntMatrix: value count does not match shape");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const IntMatrix&) const = default;

    bool is_symmetric() const
    {
        if (rows_ != cols_) return false;
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < r; ++c)
                if ((*this)(r, c) != (*this)(c, r)) return false;
        return true;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> data_;
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer overflow in Smith normal form");
    return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
    std::int64_t out;
    if (__builtin_sub_overflow(a, b, &out)) throw std::overflow_error("integer overflow in Smith normal form");
    return out;
}

inline void row_axpy(IntMatrix& m, std::size_t target, std::size_t source, std::int64_t factor)
{
    for (std::size_t c = 0; c < m.cols(); ++c)
        m(target, c) = checked_sub(m(target, c), checked_mul(factor, m(source, c)));
}

inline void col_axpy(IntMatrix& m, std::size_t target, std::size_t source, std::int64_t factor)
{
    for (std::size_t r = 0; r < m.rows(); ++r)
        m(r, target) = checked_sub(m(r, target), checked_mul(factor, m(r, source)));
}

}  // namespace detail

/// Nonzero diagonal entries d_1 | d_2 | ... of the Smith normal form (positive).
inline std::vector<std::int64_t> smith_diagonal(IntMatrix m)
{
    std::vector<std::int64_t> diag;
    const std::size_t limit = std::min(m.rows(), m.cols());
    for (std::size_t t = 0; t < limit; ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pr = t, pc = t;
            std::int64_t best = 0;
            for (std::size_t r = t; r < m.rows(); ++r)
                for (std::size_t c = t; c < m.cols(); ++c)
                    if (m(r, c) != 0 && (best == 0 || std::llabs(m(r, c)) < best)) {
                        best = std::llabs(m(r, c));
                        pr = r;
                        pc = c;
                    }
            if (best == 0) return diag;
            if (pr != t)
                for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pr, c), m(t, c));
            if (pc != t)
                for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, pc), m(r, t));

            bool clean = true;
            for (std::size_t r = t + 1; r < m.rows(); ++r) {
                detail::row_axpy(m, r, t, m(r, t) / m(t, t));
                if (m(r, t) != 0) clean = false;
            }
            for (std::size_t c = t + 1; c < m.cols(); ++c) {
                detail::col_axpy(m, c, t, m(t, c) / m(t, t));
                if (m(t, c) != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility: fold an offending row into the pivot row and retry.
            bool divides = true;
            for (std::size_t r = t + 1; r < m.rows() && divides; ++r)
                for (std::size_t c = t + 1; c < m.cols(); ++c)
                    if (m(r, c) % m(t, t) != 0) {
                        for (std::size_t cc = 0; cc < m.cols(); ++cc) m(t, cc) += m(r, cc);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        diag.push_back(std::llabs(m(t, t)));
    }
    return diag;
}

/// Rank over Q by fraction-free (Bareiss) elimination.
inline std::size_t rational_rank(const IntMatrix& input)
{
    std::vector<std::vector<BigInt>> a(input.rows(), std::vector<BigInt>(input.cols()));
    for (std::size_t r = 0; r < input.rows(); ++r)
        for (std::size_t c = 0; c < input.cols(); ++c) a[r][c] = input(r, c);

    std::size_t rank = 0;
    BigInt prev = 1;
    for (std::size_t c = 0; c < input.cols() && rank < input.rows(); ++c) {
        std::size_t pivot = rank;
        while (pivot < input.rows() && a[pivot][c] == 0) ++pivot;
        if (pivot == input.rows()) continue;
        std::swap(a[pivot], a[rank]);
        for (std::size_t r = rank + 1; r < input.rows(); ++r) {
            for (std::size_t cc = c + 1; cc < input.cols(); ++cc)
                a[r][cc] = (a[rank][c] * a[r][cc] - a[r][c] * a[rank][cc]) / prev;
            a[r][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

}  // namespace coverkit
