#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "tpc/error.hpp"

namespace tpc {

// Dense integer matrix with arbitrary-precision entries.
struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<mpz_class> data; // row-major

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    mpz_class& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const mpz_class& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows_in) {
        IntMatrix m(rows_in.size(), rows_in.empty() ? 0 : rows_in.front().size());
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (rows_in[r].size() != m.cols)
                fail(errc::dimension_mismatch, "ragged rows in integer matrix");
            for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) = rows_in[r][c];
        }
        return m;
    }
};

struct ExactElimination {
    std::size_t rank = 0;
    std::size_t nullity = 0;            // cols - rank
    std::optional<mpz_class> det;       // present iff the input was square
};

// Fraction-free (Bareiss) elimination over the integers: every division is
// exact, so rank and determinant are decided without floating point and
// without rational arithmetic blowup. Columns without a pivot are skipped;
// for square input the determinant is the sign-adjusted final pivot, or 0
// when the rank is deficient.
inline ExactElimination exact_eliminate(IntMatrix a) {
    ExactElimination out;
    std::size_t r = 0;
    int sign = 1;
    mpz_class prev = 1;
    mpz_class last_pivot = 1;
    for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
        std::size_t p = r;
        while (p < a.rows && a.at(p, c) == 0) ++p;
        if (p == a.rows) continue;
        if (p != r) {
            for (std::size_t j = 0; j < a.cols; ++j) std::swap(a.at(r, j), a.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < a.rows; ++i) {
            for (std::size_t j = c + 1; j < a.cols; ++j) {
                mpz_class num = a.at(r, c) * a.at(i, j) - a.at(i, c) * a.at(r, j);
                mpz_class q, rem;
                mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                if (rem != 0)
                    fail(errc::internal_invariant_violated, "fraction-free division inexact");
                a.at(i, j) = std::move(q);
            }
            a.at(i, c) = 0;
        }
        prev = a.at(r, c);
        last_pivot = prev;
        ++r;
    }
    out.rank = r;
    out.nullity = a.cols - r;
    if (a.rows == a.cols)
        out.det = (r == a.rows) ? mpz_class(sign * last_pivot) : mpz_class(0);
    return out;
}

} // namespace tpc
