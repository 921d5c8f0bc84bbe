#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tpc/cayley.hpp"
#include "tpc/codes.hpp"
#include "tpc/error.hpp"
#include "tpc/exact_matrix.hpp"
#include "tpc/group.hpp"

namespace tpc {

inline IntMatrix adjacency_matrix(const CayleyGraph& gr) {
    IntMatrix a(gr.order(), gr.order());
    for (std::size_t v = 0; v < gr.order(); ++v)
        gr.adj[v].for_each([&](std::size_t u) { a.at(u, v) = 1; });
    return a;
}

// Integer quotient matrix of an equitable partition: entry (i,j) is the
// common number of neighbors in part j over all vertices of part i.
struct QuotientMatrix {
    IntMatrix b;
    GroupPartition partition;
    std::vector<std::size_t> part_sizes;
};

inline QuotientMatrix quotient_matrix(const CayleyGraph& gr, const GroupPartition& pi) {
    if (pi.universe() != gr.order())
        fail(errc::dimension_mismatch, "partition universe != graph order");
    pi.check_partition();
    std::size_t m = pi.parts.size();
    QuotientMatrix q;
    q.b = IntMatrix(m, m);
    q.partition = pi;
    q.part_sizes.resize(m);
    for (std::size_t i = 0; i < m; ++i) q.part_sizes[i] = pi.parts[i].size();

    for (std::size_t i = 0; i < m; ++i) {
        bool first = true;
        std::size_t ref_vertex = 0;
        std::vector<std::size_t> ref(m);
        pi.parts[i].for_each([&](std::size_t u) {
            std::vector<std::size_t> counts(m);
            gr.adj[u].for_each([&](std::size_t w) { ++counts[pi.part_of[w]]; });
            if (first) {
                ref = counts;
                ref_vertex = u;
                first = false;
            } else if (counts != ref) {
                std::size_t j = 0;
                while (counts[j] == ref[j]) ++j;
                fail(errc::not_equitable,
                     "vertices " + std::to_string(ref_vertex) + " and " + std::to_string(u) +
                         " of part " + std::to_string(i) + " have " + std::to_string(ref[j]) +
                         " and " + std::to_string(counts[j]) + " neighbors in part " +
                         std::to_string(j));
            }
        });
        for (std::size_t j = 0; j < m; ++j) q.b.at(i, j) = static_cast<long>(ref[j]);
    }

    // Regularity consequences: every row sums to the degree, and counting
    // edges between two parts from either side agrees.
    for (std::size_t i = 0; i < m; ++i) {
        mpz_class sum = 0;
        for (std::size_t j = 0; j < m; ++j) sum += q.b.at(i, j);
        if (sum != static_cast<long>(gr.degree()))
            fail(errc::internal_invariant_violated, "quotient row sum differs from degree");
        for (std::size_t j = 0; j < m; ++j)
            if (mpz_class(static_cast<long>(q.part_sizes[i])) * q.b.at(i, j) !=
                mpz_class(static_cast<long>(q.part_sizes[j])) * q.b.at(j, i))
                fail(errc::internal_invariant_violated, "quotient edge-count symmetry broken");
    }
    return q;
}

// For a code C and equitable partition pi: the exact rational vector with
// k_i = |V_i âˆ© C|/|V_i| - 1/d, which the quotient matrix must annihilate.
struct CodePartitionBalance {
    Verdict verdict;
    std::vector<mpq_class> k;
};

inline CodePartitionBalance check_quotient_balance(const CayleyGraph& gr,
                                                   const GroupPartition& pi, const VertexSet& c) {
    Verdict code_check = verify_tpc(gr, c);
    if (!code_check.ok) fail(errc::not_a_code, code_check.witness);
    QuotientMatrix q = quotient_matrix(gr, pi);

    CodePartitionBalance out;
    std::size_t m = q.part_sizes.size();
    out.k.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        mpq_class share(static_cast<long>(pi.parts[i].intersection_size(c)),
                        static_cast<long>(q.part_sizes[i]));
        share.canonicalize();
        mpq_class inv_d(1, static_cast<long>(gr.degree()));
        inv_d.canonicalize();
        out.k[i] = share - inv_d;
    }
    out.verdict = Verdict::pass();
    for (std::size_t i = 0; i < m; ++i) {
        mpq_class acc = 0;
        for (std::size_t j = 0; j < m; ++j) acc += mpq_class(q.b.at(i, j)) * out.k[j];
        if (acc != 0) {
            out.verdict = Verdict::failure("quotient row " + std::to_string(i) +
                                           " does not annihilate the balance vector");
            break;
        }
    }
    return out;
}

// Aggregated outcome of one necessary-condition test, CLI-serializable.
struct NecessityReport {
    std::string condition;
    bool holds = true;
    std::string conclusion; // no-obstruction | tpc-impossible | structural-constraint
    std::map<std::string, std::string> quantities;
};

// Degree must divide the order with an even quotient; otherwise no code.
inline NecessityReport divisibility_report(const CayleyGraph& gr) {
    NecessityReport rep;
    rep.condition = "divisibility";
    std::size_t n = gr.order(), d = gr.degree();
    rep.quantities["order"] = std::to_string(n);
    rep.quantities["degree"] = std::to_string(d);
    rep.holds = d > 0 && n % d == 0 && (n / d) % 2 == 0;
    if (rep.holds) rep.quantities["code_size"] = std::to_string(n / d);
    rep.conclusion = rep.holds ? "no-obstruction" : "tpc-impossible";
    return rep;
}

// A regular graph of degree >= 2 with a total perfect code has eigenvalue 0
// (balance vector of the all-singletons partition). For degree 1 the
// statement gives no information. The partition-size alternative (degree
// divides every part size) is reported informationally for the trivial
// partition, where it can hold only at degree 1.
inline NecessityReport zero_eigenvalue_report(const CayleyGraph& gr) {
    NecessityReport rep;
    rep.condition = "zero-eigenvalue";
    std::size_t nullity = exact_eliminate(adjacency_matrix(gr)).nullity;
    rep.quantities["zero_multiplicity"] = std::to_string(nullity);
    rep.quantities["degree"] = std::to_string(gr.degree());
    if (gr.degree() < 2) {
        rep.holds = true;
        rep.conclusion = "no-obstruction";
        rep.quantities["note"] = "degree 1: condition not applicable";
        return rep;
    }
    rep.holds = nullity >= 1;
    rep.conclusion = rep.holds ? "no-obstruction" : "tpc-impossible";
    return rep;
}

namespace detail {

inline ConnectionSet analyzed_conjugation_closed(const GroupTable& g, const VertexSet& s) {
    ConnectionSet conn = analyze_connection_set(g, s);
    if (!conn.conjugation_closed)
        fail(errc::connection_set_not_conjugation_closed,
             "the condition requires S to be a union of conjugacy classes");
    return conn;
}

inline bool central_involution_in(const GroupTable& g, const VertexSet& s) {
    bool found = false;
    s.for_each([&](std::size_t x) {
        if (found) return;
        std::uint32_t z = static_cast<std::uint32_t>(x);
        if (g.op(z, z) != 0) return;
        for (std::uint32_t a = 0; a < g.order; ++a)
            if (g.conjugate(a, z) != z) return;
        found = true;
    });
    return found;
}

} // namespace detail

// Kernel-dimension bounds for conjugation-closed S: the |S| translates of a
// code partition the group and their indicator vectors all solve A f = 1, so
// their pairwise differences force nullity(A) >= |S| - 1. The conjugacy
// quotient must have nullity at least the number s of classes in S -- but
// only when S contains no central involution. If it does, the bound drops
// to s - 1: a code may pair the identity with a central involution z whose
// class is the singleton {z}, and then only s of the s+1 translate columns
// used to force the count are independent. The full bound is genuinely
// false there: Cay(Z_6, {2,3,4}) has the total perfect code {0,3} yet its
// spectrum {3,-2,0,1,0,-2} carries 0 only twice, not |S| = 3 times.
inline NecessityReport nec_a_report(const GroupTable& g, const VertexSet& s) {
    ConnectionSet conn = detail::analyzed_conjugation_closed(g, s);
    NecessityReport rep;
    rep.condition = "kernel-bounds";
    CayleyGraph gr = build_cayley(g, s);
    std::size_t nullity_a = exact_eliminate(adjacency_matrix(gr)).nullity;
    GroupPartition classes = conjugacy_classes(g);
    std::size_t nullity_pi = exact_eliminate(quotient_matrix(gr, classes).b).nullity;
    std::size_t class_bound = conn.classes.size();
    if (detail::central_involution_in(g, s)) {
        --class_bound;
        rep.quantities["note"] = "class-count bound weakened: S contains a central involution";
    }

    rep.quantities["nullity_adjacency"] = std::to_string(nullity_a);
    rep.quantities["bound_adjacency"] = std::to_string(s.size() ? s.size() - 1 : 0);
    rep.quantities["nullity_class_quotient"] = std::to_string(nullity_pi);
    rep.quantities["bound_class_quotient"] = std::to_string(class_bound);
    rep.holds = nullity_a + 1 >= s.size() && nullity_pi >= class_bound;
    rep.conclusion = rep.holds ? "no-obstruction" : "tpc-impossible";
    return rep;
}

// Left-coset quotient test: when det(A_pi(H)) != 0, every code meets every
// left coset of H in exactly |H|/|S| elements; if additionally |S| does not
// divide |H| there is no code at all. det = 0 gives no information.
inline NecessityReport nec_b_report(const GroupTable& g, const VertexSet& s, const VertexSet& h) {
    detail::analyzed_conjugation_closed(g, s);
    if (!is_subgroup(g, h)) fail(errc::not_a_subgroup, "H must be a subgroup");
    CayleyGraph gr = build_cayley(g, s);
    GroupPartition cosets = left_cosets(g, h);
    QuotientMatrix q = quotient_matrix(gr, cosets);
    ExactElimination elim = exact_eliminate(q.b);

    NecessityReport rep;
    rep.condition = "coset-quotient";
    rep.quantities["subgroup_order"] = std::to_string(h.size());
    rep.quantities["index"] = std::to_string(cosets.parts.size());
    rep.quantities["determinant"] = elim.det->get_str();
    if (*elim.det == 0) {
        rep.holds = true;
        rep.conclusion = "no-obstruction";
        return rep;
    }
    if (h.size() % s.size() != 0) {
        rep.holds = false;
        rep.conclusion = "tpc-impossible";
        return rep;
    }
    rep.holds = true;
    rep.conclusion = "structural-constraint";
    rep.quantities["coset_intersection"] = std::to_string(h.size() / s.size());
    return rep;
}

// Abelian zero-multiplicity bound: at least |S| characters must vanish on S,
// weakened to |S| - 1 when S contains an involution (in an abelian group
// every involution is central, so the same translate-column collapse as in
// nec_a_report applies; Cay(Z_6, {2,3,4}) realizes the weakened bound with a
// code present). For cyclic groups the vanishing character indices are also
// listed numerically (report flavor only; the count is asserted against the
// exact nullity).
inline NecessityReport abelian_spectrum_report(const GroupTable& g, const VertexSet& s) {
    if (!g.is_abelian()) fail(errc::not_abelian, "spectrum bound requires an abelian group");
    detail::validate_connection_set(g, s);

    NecessityReport rep;
    rep.condition = "abelian-spectrum";
    CayleyGraph gr = build_cayley(g, s);
    std::size_t nullity = exact_eliminate(adjacency_matrix(gr)).nullity;
    std::size_t bound = s.size();
    if (detail::central_involution_in(g, s)) {
        --bound;
        rep.quantities["note"] = "multiplicity bound weakened: S contains an involution";
    }
    rep.quantities["zero_multiplicity"] = std::to_string(nullity);
    rep.quantities["degree"] = std::to_string(s.size());
    rep.quantities["bound"] = std::to_string(bound);
    rep.holds = nullity >= bound;
    rep.conclusion = rep.holds ? "no-obstruction" : "tpc-impossible";

    constexpr std::size_t max_numeric_order = 10000;
    std::optional<std::uint32_t> generator = find_generator(g);
    if (generator && g.order <= max_numeric_order) {
        // exponents j with gen^j in S, then indices k with sum_j w^(kj) ~ 0
        std::vector<std::size_t> exponents;
        std::uint32_t power = 0; // identity
        for (std::size_t j = 0; j < g.order; ++j) {
            if (s.test(power)) exponents.push_back(j);
            power = g.op(*generator, power);
        }
        std::string indices;
        std::size_t vanishing = 0;
        for (std::size_t k = 0; k < g.order; ++k) {
            std::complex<double> sum = 0;
            for (std::size_t j : exponents) {
                double angle = 2.0 * 3.14159265358979323846 *
                               static_cast<double>(k * j % g.order) / static_cast<double>(g.order);
                sum += std::complex<double>(std::cos(angle), std::sin(angle));
            }
            if (std::abs(sum) < 1e-9) {
                if (vanishing) indices += ",";
                indices += std::to_string(k);
                ++vanishing;
            }
        }
        if (vanishing != nullity)
            fail(errc::internal_invariant_violated,
                 "numeric vanishing-sum count disagrees with exact nullity");
        rep.quantities["vanishing_character_indices"] = indices;
    }
    return rep;
}

// Subgroups offered for coset-quotient reports: all normal subgroups plus
// all cyclic subgroups, deduplicated, sorted by (order, elements).
inline std::vector<VertexSet> enumerate_report_subgroups(const GroupTable& g) {
    if (g.order > 512)
        fail(errc::size_guard_exceeded, "subgroup enumeration capped at order 512");
    std::vector<VertexSet> out = enumerate_normal_subgroups(g);
    std::set<std::vector<std::uint64_t>> seen;
    for (const auto& h : out) seen.insert(h.words());
    for (std::size_t x = 0; x < g.order; ++x) {
        VertexSet h = closure(g, VertexSet::of(g.order, {x}));
        if (seen.insert(h.words()).second) out.push_back(std::move(h));
    }
    std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return VertexSet::value_less(a, b);
    });
    return out;
}

} // namespace tpc
