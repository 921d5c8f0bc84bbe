#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tpc/error.hpp"
#include "tpc/vertex_set.hpp"

namespace tpc {

// Dense bit matrix over GF(2); row r is stored in words_per_row() words,
// column c at bit c%64 of word c/64.
struct GF2Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint64_t> data;

    GF2Matrix() = default;
    GF2Matrix(std::size_t r, std::size_t c)
        : rows(r), cols(c), data(r * ((c + 63) / 64), 0) {}

    std::size_t words_per_row() const { return (cols + 63) / 64; }

    bool get(std::size_t r, std::size_t c) const {
        return (data[r * words_per_row() + (c >> 6)] >> (c & 63)) & 1u;
    }

    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t& w = data[r * words_per_row() + (c >> 6)];
        std::uint64_t m = 1ull << (c & 63);
        w = v ? (w | m) : (w & ~m);
    }

    void xor_row(std::size_t dst, std::size_t src) {
        std::size_t wpr = words_per_row();
        for (std::size_t k = 0; k < wpr; ++k) data[dst * wpr + k] ^= data[src * wpr + k];
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::size_t wpr = words_per_row();
        for (std::size_t k = 0; k < wpr; ++k)
            std::swap(data[a * wpr + k], data[b * wpr + k]);
    }

    static GF2Matrix from_strings(const std::vector<std::string>& rows_in) {
        GF2Matrix m(rows_in.size(), rows_in.empty() ? 0 : rows_in.front().size());
        for (std::size_t r = 0; r < rows_in.size(); ++r) {
            if (rows_in[r].size() != m.cols)
                fail(errc::dimension_mismatch, "ragged rows in bit-matrix input");
            for (std::size_t c = 0; c < m.cols; ++c) {
                char ch = rows_in[r][c];
                if (ch != '0' && ch != '1') fail(errc::invalid_spec, "bit rows must be 0/1");
                m.set(r, c, ch == '1');
            }
        }
        return m;
    }

    std::vector<std::string> to_strings() const {
        std::vector<std::string> out(rows, std::string(cols, '0'));
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (get(r, c)) out[r][c] = '1';
        return out;
    }
};

namespace detail {

// Reduced row echelon form with lowest-index pivots; reduction may be
// restricted to the first pivot_cols columns (trailing columns ride along).
inline std::size_t gf2_rref(GF2Matrix& m, std::size_t pivot_cols) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && !m.get(p, c)) ++p;
        if (p == m.rows) continue;
        m.swap_rows(r, p);
        for (std::size_t i = 0; i < m.rows; ++i)
            if (i != r && m.get(i, c)) m.xor_row(i, r);
        ++r;
    }
    return r;
}

} // namespace detail

struct GF2Elimination {
    std::size_t rank = 0;
    std::size_t left_nullity = 0; // rows - rank
    GF2Matrix left_kernel;        // basis of {x : xM = 0}, RREF rows of width M.rows
};

// Rank and left kernel of M by row reduction on [M | I]. The kernel basis is
// itself reduced to RREF, so it is canonical for the kernel subspace.
inline GF2Elimination gf2_eliminate(const GF2Matrix& m) {
    GF2Matrix aug(m.rows, m.cols + m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) aug.set(r, c, m.get(r, c));
        aug.set(r, m.cols + r, true);
    }
    GF2Elimination out;
    out.rank = detail::gf2_rref(aug, m.cols);
    out.left_nullity = m.rows - out.rank;
    out.left_kernel = GF2Matrix(out.left_nullity, m.rows);
    for (std::size_t r = out.rank; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.rows; ++c)
            out.left_kernel.set(r - out.rank, c, aug.get(r, m.cols + c));
    detail::gf2_rref(out.left_kernel, out.left_kernel.cols);
    return out;
}

inline std::size_t gf2_rank(const GF2Matrix& m) {
    GF2Matrix copy = m;
    return detail::gf2_rref(copy, copy.cols);
}

// Linear code in V(n,2), cut out as the left kernel {x : xM = 0} of the
// n x t check matrix. Codewords are materialized as a set of elem2 element
// indices (vector bits little-endian) only when n <= 20.
struct LinearCode {
    std::size_t dimension = 0; // ambient n
    GF2Matrix check_matrix;    // n x t
    std::size_t codeword_count_log2 = 0;
    std::optional<VertexSet> codewords;
};

inline constexpr std::size_t max_cubelike_dimension = 64;
inline constexpr std::size_t max_materialized_dimension = 20;

namespace detail {

inline void check_cubelike_vectors(std::size_t n, const std::vector<std::uint64_t>& s) {
    if (n < 1 || n > max_cubelike_dimension)
        fail(errc::size_guard_exceeded, "cubelike dimension must be 1..64");
    std::uint64_t mask = n == 64 ? ~0ull : (1ull << n) - 1;
    std::vector<std::uint64_t> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] == 0) fail(errc::invalid_spec, "connection vectors must be nonzero");
        if ((sorted[i] & ~mask) != 0)
            fail(errc::invalid_spec, "connection vector outside V(n,2)");
        if (i && sorted[i] == sorted[i - 1])
            fail(errc::invalid_spec, "connection vectors must be distinct");
    }
}

inline GF2Matrix vectors_as_matrix(std::size_t n, const std::vector<std::uint64_t>& s) {
    GF2Matrix m(s.size(), n);
    for (std::size_t r = 0; r < s.size(); ++r)
        for (std::size_t c = 0; c < n; ++c)
            m.set(r, c, (s[r] >> c) & 1);
    return m;
}

// x * M for a width-n row vector x, with M given by its t column vectors.
inline std::uint64_t gf2_image(std::uint64_t x, const std::vector<std::uint64_t>& columns) {
    std::uint64_t img = 0;
    for (std::size_t j = 0; j < columns.size(); ++j)
        img |= static_cast<std::uint64_t>(std::popcount(x & columns[j]) & 1) << j;
    return img;
}

inline bool images_distinct(const std::vector<std::uint64_t>& s,
                            const std::vector<std::uint64_t>& columns,
                            std::vector<char>& scratch) {
    std::fill(scratch.begin(), scratch.end(), 0);
    for (std::uint64_t u : s) {
        std::uint64_t img = gf2_image(u, columns);
        if (scratch[img]) return false;
        scratch[img] = 1;
    }
    return true;
}

// Complete search for a k-dimensional subspace of V(n,2) that avoids the
// forbidden set of nonzero vectors. Basis vectors are chosen in strictly
// increasing order and each must be the minimum of its new coset, so every
// subspace is reachable through its greedy basis and the first solution is
// deterministic. `candidates` holds, in ascending order, exactly the
// vectors > basis.back() compatible with the current span; children filter
// it against the new coset only. Every future pivot must survive the
// current filter, so pruning when the candidates span fewer than the
// missing k - |basis| dimensions beyond the span is safe.
inline bool kernel_dfs(const VertexSet& forbidden, std::size_t k,
                       std::vector<std::uint64_t>& basis, std::vector<std::uint64_t>& span,
                       const std::vector<std::uint32_t>& candidates) {
    if (basis.size() == k) return true;
    std::size_t needed = k - basis.size();
    if (candidates.size() < needed) return false;

    std::uint64_t echelon[64] = {};
    auto insert_echelon = [&](std::uint64_t v) {
        while (v) {
            std::uint64_t* slot = &echelon[63 - std::countl_zero(v)];
            if (!*slot) {
                *slot = v;
                return true;
            }
            v ^= *slot;
        }
        return false;
    };
    for (std::uint64_t b : basis) insert_echelon(b);
    std::size_t fresh = 0;
    for (std::uint32_t u : candidates)
        if (insert_echelon(u) && ++fresh >= needed) break;
    if (fresh < needed) return false;

    std::vector<std::uint32_t> child;
    child.reserve(candidates.size());
    for (std::size_t idx = 0; idx + needed <= candidates.size(); ++idx) {
        std::uint64_t v = candidates[idx];
        std::size_t old = span.size();
        for (std::size_t i = 0; i < old; ++i) span.push_back(span[i] ^ v);
        basis.push_back(v);
        child.clear();
        for (std::size_t j = idx + 1; j < candidates.size(); ++j) {
            std::uint64_t u = candidates[j];
            bool ok = true;
            for (std::size_t i = old; i < span.size(); ++i) {
                std::uint64_t y = span[i] ^ u;
                if (y < u || forbidden.test(y)) { // y < u: u not its coset minimum
                    ok = false;
                    break;
                }
            }
            if (ok) child.push_back(candidates[j]);
        }
        if (kernel_dfs(forbidden, k, basis, span, child)) return true;
        basis.pop_back();
        span.resize(old);
    }
    return false;
}

// Ascending root candidate list: every nonzero vector outside the forbidden set.
inline std::vector<std::uint32_t> kernel_dfs_roots(std::size_t n, const VertexSet& forbidden) {
    std::vector<std::uint32_t> roots;
    for (std::uint64_t v = 1; v < (1ull << n); ++v)
        if (!forbidden.test(v)) roots.push_back(static_cast<std::uint32_t>(v));
    return roots;
}

// Nonzero pairwise sums u_i + u_j (i != j) as a bitset over V(n,2).
inline VertexSet pairwise_sums(std::size_t n, const std::vector<std::uint64_t>& s) {
    VertexSet d(std::size_t{1} << n);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) d.add(s[i] ^ s[j]);
    return d;
}

// Columns of an n x t matrix whose left kernel is exactly the span of the
// given k = n - t basis vectors: a basis of the annihilator space.
inline std::vector<std::uint64_t> annihilator_columns(std::size_t n,
                                                      const std::vector<std::uint64_t>& basis) {
    GF2Matrix bt(n, basis.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            bt.set(i, j, (basis[j] >> i) & 1);
    GF2Elimination elim = gf2_eliminate(bt);
    if (elim.rank != basis.size())
        fail(errc::internal_invariant_violated, "kernel basis lost rank");
    std::vector<std::uint64_t> columns(elim.left_nullity);
    for (std::size_t r = 0; r < columns.size(); ++r)
        columns[r] = elim.left_kernel.data[r * elim.left_kernel.words_per_row()];
    return columns;
}

inline VertexSet span_as_vertex_set(std::size_t n, const GF2Matrix& basis) {
    VertexSet out(std::size_t{1} << n);
    std::size_t k = basis.rows;
    std::vector<std::uint64_t> vecs(k);
    for (std::size_t i = 0; i < k; ++i)
        vecs[i] = basis.data[i * basis.words_per_row()]; // n <= 20 fits one word
    std::uint64_t cur = 0;
    out.add(0);
    for (std::uint64_t g = 1; g < (1ull << k); ++g) {
        // Gray code: flip the basis vector at the lowest changing bit
        cur ^= vecs[static_cast<std::size_t>(std::countr_zero(g))];
        out.add(cur);
    }
    return out;
}

inline LinearCode finish_code(std::size_t n, const std::vector<std::uint64_t>& columns) {
    std::size_t t = columns.size();
    LinearCode code;
    code.dimension = n;
    code.check_matrix = GF2Matrix(n, t);
    for (std::size_t j = 0; j < t; ++j)
        for (std::size_t k = 0; k < n; ++k)
            code.check_matrix.set(k, j, (columns[j] >> k) & 1);
    GF2Elimination elim = gf2_eliminate(code.check_matrix);
    if (elim.rank != t)
        fail(errc::internal_invariant_violated, "check matrix lost rank");
    code.codeword_count_log2 = n - t;
    if (n <= max_materialized_dimension)
        code.codewords = span_as_vertex_set(n, elim.left_kernel);
    return code;
}

} // namespace detail

// Direct neighborhood check of a cubelike code without a group table:
// every vertex of the graph on V(n,2) must have exactly one neighbor in C.
inline bool verify_cubelike_tpc(std::size_t n, const std::vector<std::uint64_t>& s,
                                const VertexSet& c, std::string* witness = nullptr) {
    detail::check_cubelike_vectors(n, s);
    if (c.universe() != (std::size_t{1} << n))
        fail(errc::dimension_mismatch, "code universe != 2^n");
    for (std::uint64_t v = 0; v < (1ull << n); ++v) {
        std::size_t k = 0;
        for (std::uint64_t u : s) k += c.test(v ^ u);
        if (k != 1) {
            if (witness)
                *witness = "vertex " + std::to_string(v) + " has " + std::to_string(k) +
                           " neighbors in the code";
            return false;
        }
    }
    return true;
}

// Algebraic form of the characterization for conjugation-closed codes in
// Z_2^n: |C||S| = 2^n and C avoids w + C for every nonzero pairwise sum w.
inline bool cubelike_code_condition(std::size_t n, const std::vector<std::uint64_t>& s,
                                    const VertexSet& c) {
    detail::check_cubelike_vectors(n, s);
    if (c.universe() != (std::size_t{1} << n))
        fail(errc::dimension_mismatch, "code universe != 2^n");
    if (c.size() * s.size() != (std::size_t{1} << n)) return false;
    std::vector<std::uint64_t> sums;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) sums.push_back(s[i] ^ s[j]);
    std::sort(sums.begin(), sums.end());
    sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
    for (std::uint64_t w : sums) {
        bool hit = false;
        c.for_each([&](std::size_t x) {
            if (c.test(x ^ w)) hit = true;
        });
        if (hit) return false;
    }
    return true;
}

// Linear total perfect code for the cubelike graph Cay(Z_2^n, S) with
// |S| = 2^t: searches for an n x t matrix M of rank t whose images u*M over
// u in S are pairwise distinct, then returns the left kernel of M. Seeded
// random candidates first, then a complete kernel-subspace search for
// n <= 20, so at that scale the exhausted error is a proof of nonexistence.
//
// Such an M does NOT always exist: C = ker M works iff C avoids every
// nonzero pairwise sum of S, and for some spanning S (already at n = 4,
// |S| = 8, e.g. S = {1,2,3,4,5,8,10,12}) the pairwise sums cover all of
// V(n,2) \ {0}, so no linear code — indeed no code at all in that example,
// since a two-element code {a, a+s} needs some s in S outside S+S.
inline LinearCode construct_cubelike_tpc(std::size_t n, const std::vector<std::uint64_t>& s,
                                         std::uint64_t seed = 0) {
    detail::check_cubelike_vectors(n, s);
    std::size_t d = s.size();
    if (d < 2 || (d & (d - 1)) != 0)
        fail(errc::degree_not_power_of_two,
             "degree " + std::to_string(d) + " is not a power of two (>= 2)");
    std::size_t t = static_cast<std::size_t>(std::countr_zero(d));
    if (gf2_rank(detail::vectors_as_matrix(n, s)) != n)
        fail(errc::not_spanning, "connection set does not span V(n,2)");
    // t < n <= 2^t now holds: d distinct nonzero vectors force d <= 2^n - 1,
    // and spanning forces n <= d.
    if (!(t < n && n <= d))
        fail(errc::internal_invariant_violated, "parameter bounds violated");

    std::uint64_t col_mask = n == 64 ? ~0ull : (1ull << n) - 1;
    std::vector<char> scratch(d);
    std::mt19937_64 rng(seed);
    // Quick-win phase only: for t >= 5 a random matrix essentially never has
    // all-distinct images, and the fallback below is complete anyway.
    constexpr int random_attempts = 1000;
    for (int attempt = 0; attempt < random_attempts; ++attempt) {
        std::vector<std::uint64_t> columns(t);
        for (auto& col : columns) col = rng() & col_mask;
        if (detail::images_distinct(s, columns, scratch))
            return detail::finish_code(n, columns);
    }
    if (n <= max_materialized_dimension) {
        VertexSet forbidden = detail::pairwise_sums(n, s);
        std::vector<std::uint64_t> basis;
        std::vector<std::uint64_t> span{0};
        if (detail::kernel_dfs(forbidden, n - t, basis, span,
                               detail::kernel_dfs_roots(n, forbidden))) {
            std::vector<std::uint64_t> columns = detail::annihilator_columns(n, basis);
            if (!detail::images_distinct(s, columns, scratch))
                fail(errc::internal_invariant_violated, "kernel search returned a bad subspace");
            return detail::finish_code(n, columns);
        }
        fail(errc::construction_exhausted,
             "no linear total perfect code exists for this connection set "
             "(every candidate kernel meets the pairwise sums of S)");
    }
    fail(errc::construction_exhausted,
         "random matrix search exhausted; existence undecided at this dimension");
}

// Code for the hypercube Q_d, d = 2^t: the rows of the d x t check matrix
// are 1, 2, ..., 2^t - 1, 0 in binary counting order (zero row last).
inline LinearCode hamming_style_code(std::size_t t) {
    if (t < 1 || t > 16) fail(errc::size_guard_exceeded, "hamming_style_code needs 1 <= t <= 16");
    std::size_t d = std::size_t{1} << t;
    std::vector<std::uint64_t> columns(t, 0);
    for (std::size_t r = 0; r < d; ++r) {
        std::uint64_t value = (r + 1) % d;
        for (std::size_t j = 0; j < t; ++j)
            columns[j] |= ((value >> j) & 1) << r;
    }
    return detail::finish_code(d, columns);
}

// The d cosets C + u_i in the order of S; always pairwise disjoint and a
// cover of V(n,2) because distinct u_i have distinct images under M.
inline std::vector<VertexSet> coset_family(const LinearCode& code,
                                           const std::vector<std::uint64_t>& s) {
    std::size_t n = code.dimension;
    detail::check_cubelike_vectors(n, s);
    if (s.size() != (std::size_t{1} << code.check_matrix.cols))
        fail(errc::invalid_spec, "connection set size does not match the code's 2^t");
    if (!code.codewords)
        fail(errc::size_guard_exceeded, "coset family needs materialized codewords (n <= 20)");

    std::vector<VertexSet> family;
    VertexSet seen(std::size_t{1} << n);
    std::size_t total = 0;
    for (std::uint64_t u : s) {
        VertexSet coset(std::size_t{1} << n);
        code.codewords->for_each([&](std::size_t x) { coset.add(x ^ u); });
        total += coset.size();
        seen |= coset;
        family.push_back(std::move(coset));
    }
    if (total != seen.size() || seen.size() != (std::size_t{1} << n))
        fail(errc::internal_invariant_violated, "cosets do not partition V(n,2)");
    return family;
}

// Deterministic random spanning connection set of size 2^t in V(n,2).
inline std::vector<std::uint64_t> random_spanning_set(std::size_t n, std::size_t t,
                                                      std::uint64_t seed = 0) {
    if (n < 1 || n > max_cubelike_dimension)
        fail(errc::size_guard_exceeded, "cubelike dimension must be 1..64");
    std::size_t d = std::size_t{1} << t;
    if (d > (std::size_t{1} << n) - 1 || d < n)
        fail(errc::invalid_spec, "no spanning set of size 2^t exists for these parameters");
    std::uint64_t mask = n == 64 ? ~0ull : (1ull << n) - 1;
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<std::uint64_t> s;
        std::set<std::uint64_t> used;
        while (s.size() < d) {
            std::uint64_t v = rng() & mask;
            if (v != 0 && used.insert(v).second) s.push_back(v);
        }
        if (gf2_rank(detail::vectors_as_matrix(n, s)) == n) return s;
    }
    fail(errc::construction_exhausted, "could not sample a spanning set");
}

} // namespace tpc
