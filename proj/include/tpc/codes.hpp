#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tpc/cayley.hpp"
#include "tpc/error.hpp"
#include "tpc/group.hpp"
#include "tpc/vertex_set.hpp"

namespace tpc {

struct Verdict {
    bool ok = true;
    std::string witness; // empty when ok

    static Verdict pass() { return {}; }
    static Verdict failure(std::string w) { return {false, std::move(w)}; }
};

// Every vertex must have exactly one neighbor in C. On success the
// cardinality consequence |C| = |V|/d and the evenness of |C| are asserted.
inline Verdict verify_tpc(const CayleyGraph& gr, const VertexSet& c) {
    if (c.universe() != gr.order())
        fail(errc::dimension_mismatch, "code universe != graph order");
    for (std::size_t v = 0; v < gr.order(); ++v) {
        std::size_t k = gr.neighbors(v).intersection_size(c);
        if (k != 1)
            return Verdict::failure("vertex " + std::to_string(v) + " has " + std::to_string(k) +
                                    " neighbors in the code");
    }
    if (c.size() * gr.degree() != gr.order() || c.size() % 2 != 0)
        fail(errc::internal_invariant_violated, "verified code violates |C| = |V|/d with |C| even");
    return Verdict::pass();
}

// Matching characterization: (a) the induced subgraph on C is a perfect
// matching; (b) the sets neighbors(v)\C over v in C tile V\C exactly.
// Equivalent to verify_tpc on every input.
inline Verdict check_matching_structure(const CayleyGraph& gr, const VertexSet& c) {
    if (c.universe() != gr.order())
        fail(errc::dimension_mismatch, "code universe != graph order");
    for (std::size_t v = c.first(); v != VertexSet::npos; v = c.next(v)) {
        std::size_t k = gr.neighbors(v).intersection_size(c);
        if (k != 1)
            return Verdict::failure("clause (a): code vertex " + std::to_string(v) + " has " +
                                    std::to_string(k) + " code neighbors, not a perfect matching");
    }
    if (c.size() % 2 != 0)
        return Verdict::failure("code has odd size " + std::to_string(c.size()));
    VertexSet cover(gr.order());
    std::size_t total = 0;
    for (std::size_t v = c.first(); v != VertexSet::npos; v = c.next(v)) {
        VertexSet outside = gr.neighbors(v);
        outside.subtract(c);
        total += outside.size();
        cover |= outside;
    }
    VertexSet rest = VertexSet::full(gr.order());
    rest.subtract(c);
    if (!(cover == rest))
        return Verdict::failure("clause (b): neighbor sets of code vertices do not cover V \\ C");
    if (total != rest.size())
        return Verdict::failure("clause (b): neighbor sets of code vertices overlap outside C");
    return Verdict::pass();
}

struct TranslateReport {
    Verdict right_translates_are_codes; // every Cg, g in S, is again a code
    Verdict left_translates_partition;  // {gC : g in S} partitions G
    bool conjugation_applicable = false;
    Verdict right_translates_partition; // {Cg : g in S}, when S conjugation-closed
};

namespace detail {

inline VertexSet right_translate(const GroupTable& g, const VertexSet& c, std::uint32_t t) {
    VertexSet out(g.order);
    c.for_each([&](std::size_t x) { out.add(g.op(static_cast<std::uint32_t>(x), t)); });
    return out;
}

inline VertexSet left_translate(const GroupTable& g, std::uint32_t t, const VertexSet& c) {
    VertexSet out(g.order);
    c.for_each([&](std::size_t x) { out.add(g.op(t, static_cast<std::uint32_t>(x))); });
    return out;
}

inline Verdict check_translate_partition(const GroupTable& g, const VertexSet& c,
                                         const VertexSet& s, bool left) {
    VertexSet seen(g.order);
    std::size_t total = 0;
    for (std::size_t t = s.first(); t != VertexSet::npos; t = s.next(t)) {
        VertexSet tr = left ? left_translate(g, static_cast<std::uint32_t>(t), c)
                            : right_translate(g, c, static_cast<std::uint32_t>(t));
        total += tr.size();
        seen |= tr;
    }
    if (seen.size() != g.order)
        return Verdict::failure("translates miss element " +
                                std::to_string([&] {
                                    VertexSet gap = VertexSet::full(g.order);
                                    gap.subtract(seen);
                                    return gap.first();
                                }()));
    if (total != g.order) return Verdict::failure("translates overlap");
    return Verdict::pass();
}

} // namespace detail

// Translate behavior of a verified code: right translates remain codes,
// left translates by S partition G, and right translates partition G when
// S is conjugation-closed.
inline TranslateReport check_translates(const CayleyGraph& gr, const VertexSet& c) {
    if (!verify_tpc(gr, c).ok) fail(errc::not_a_code, "check_translates needs a verified code");
    const GroupTable& g = gr.group();
    TranslateReport rep;

    rep.right_translates_are_codes = Verdict::pass();
    for (std::size_t t = gr.conn.set.first(); t != VertexSet::npos; t = gr.conn.set.next(t)) {
        Verdict v = verify_tpc(gr, detail::right_translate(g, c, static_cast<std::uint32_t>(t)));
        if (!v.ok) {
            rep.right_translates_are_codes =
                Verdict::failure("translate by " + std::to_string(t) + ": " + v.witness);
            break;
        }
    }
    rep.left_translates_partition = detail::check_translate_partition(g, c, gr.conn.set, true);
    rep.conjugation_applicable = gr.conn.conjugation_closed;
    rep.right_translates_partition =
        rep.conjugation_applicable
            ? detail::check_translate_partition(g, c, gr.conn.set, false)
            : Verdict::pass();
    return rep;
}

// Algebraic characterization for conjugation-closed candidates:
// |C||S| = |G| and C disjoint from (S^2 \ {1})C.
inline Verdict check_algebraic_condition(const GroupTable& g, const VertexSet& s, const VertexSet& c) {
    detail::validate_connection_set(g, s);
    if (c.universe() != g.order)
        fail(errc::dimension_mismatch, "code universe != group order");
    for (std::size_t x = c.first(); x != VertexSet::npos; x = c.next(x))
        for (std::uint32_t a = 0; a < g.order; ++a)
            if (!c.test(g.conjugate(a, static_cast<std::uint32_t>(x))))
                fail(errc::code_not_conjugation_closed,
                     "candidate not closed under conjugation at element " + std::to_string(x));

    if (c.size() * s.size() != g.order)
        return Verdict::failure("|C||S| = " + std::to_string(c.size() * s.size()) +
                                " != |G| = " + std::to_string(g.order));
    VertexSet s2 = product_set(g, s, s);
    s2.remove(0);
    VertexSet shifted = product_set(g, s2, c);
    VertexSet bad = c & shifted;
    if (!bad.empty())
        return Verdict::failure("element " + std::to_string(bad.first()) +
                                " lies in C and in (S^2 \\ {1})C");
    return Verdict::pass();
}

struct NormalCodeVerdict {
    Verdict verdict;
    // the unique element of N ∩ S when the verdict holds; always an involution
    std::optional<std::uint32_t> involution;
};

// Normal-subgroup criterion: |G:N| = |S| and N ∩ S^2 = {1}. On success the
// forced structure |N ∩ S| = 1 with an involution is asserted and reported.
inline NormalCodeVerdict check_normal_subgroup_code(const GroupTable& g, const VertexSet& s,
                                                    const VertexSet& n) {
    detail::validate_connection_set(g, s);
    if (!is_subgroup(g, n)) fail(errc::not_a_subgroup, "N is not a subgroup");
    if (!is_normal(g, n)) fail(errc::not_normal, "N is not normal");

    NormalCodeVerdict out;
    if (n.size() * s.size() != g.order) {
        out.verdict = Verdict::failure("index |G:N| = " + std::to_string(g.order / n.size()) +
                                       " != |S| = " + std::to_string(s.size()));
        return out;
    }
    VertexSet s2 = product_set(g, s, s);
    VertexSet meet = n & s2;
    if (!(meet == VertexSet::of(g.order, {0}))) {
        s2.remove(0);
        VertexSet bad = n & s2;
        out.verdict = Verdict::failure("N meets S^2 \\ {1} at element " +
                                       std::to_string(bad.first()));
        return out;
    }
    VertexSet ns = n & s;
    if (ns.size() != 1) fail(errc::internal_invariant_violated, "|N ∩ S| != 1 on a passing pair");
    std::uint32_t t = static_cast<std::uint32_t>(ns.first());
    if (g.op(t, t) != 0)
        fail(errc::internal_invariant_violated, "unique N ∩ S element is not an involution");
    out.verdict = Verdict::pass();
    out.involution = t;
    return out;
}

// N ∪ gN criterion: |G:N| = 2|S|, N ∩ S^2 = {1}, and
// N ∩ S = gN ∩ S^2 = g^-1 N ∩ S^2 = ∅.
inline Verdict check_union_coset_code(const GroupTable& g, const VertexSet& s, const VertexSet& n,
                                      std::uint32_t t) {
    detail::validate_connection_set(g, s);
    if (!is_subgroup(g, n)) fail(errc::not_a_subgroup, "N is not a subgroup");
    if (!is_normal(g, n)) fail(errc::not_normal, "N is not normal");
    if (!s.test(t)) fail(errc::element_not_in_connection_set, "g must lie in S");
    if (n.test(t)) fail(errc::element_in_subgroup, "g must lie outside N");

    if (n.size() * s.size() * 2 != g.order)
        return Verdict::failure("index |G:N| = " + std::to_string(g.order / n.size()) +
                                " != 2|S| = " + std::to_string(2 * s.size()));
    VertexSet s2 = product_set(g, s, s);
    VertexSet meet = n & s2;
    if (!(meet == VertexSet::of(g.order, {0})))
        return Verdict::failure("N ∩ S^2 != {1}");
    if (n.intersects(s)) return Verdict::failure("N meets S");
    VertexSet gn = detail::left_translate(g, t, n);
    if (gn.intersects(s2)) return Verdict::failure("gN meets S^2");
    VertexSet gin = detail::left_translate(g, g.inverse(t), n);
    if (gin.intersects(s2)) return Verdict::failure("g^-1 N meets S^2");
    return Verdict::pass();
}

// Abelian characterization: |C||S| = |G| and (C - C) ∩ (S + S) = {0}.
// When C is a subgroup, C - C = C gives the fast path C ∩ (S+S) = {0}.
inline Verdict check_abelian_condition(const GroupTable& g, const VertexSet& s,
                                       const VertexSet& c) {
    if (!g.is_abelian()) fail(errc::not_abelian, "check_abelian_condition needs an abelian group");
    detail::validate_connection_set(g, s);
    if (c.universe() != g.order)
        fail(errc::dimension_mismatch, "code universe != group order");

    if (c.size() * s.size() != g.order)
        return Verdict::failure("|C||S| = " + std::to_string(c.size() * s.size()) +
                                " != |G| = " + std::to_string(g.order));
    VertexSet s2 = product_set(g, s, s);
    VertexSet diff;
    if (is_subgroup(g, c)) {
        diff = c;
    } else {
        VertexSet cinv(g.order);
        c.for_each([&](std::size_t x) { cinv.add(g.inverse(static_cast<std::uint32_t>(x))); });
        diff = product_set(g, c, cinv);
    }
    VertexSet meet = diff & s2;
    if (!(meet == VertexSet::of(g.order, {0}))) {
        meet.remove(0);
        return Verdict::failure("difference " + std::to_string(meet.first()) +
                                " lies in (C - C) ∩ (S + S)");
    }
    return Verdict::pass();
}

// Pseudocover criterion: all parts are codes; on success the fibre matchings
// and the one-neighbor-per-other-part covering structure are re-validated.
inline Verdict verify_pseudocover_partition(const CayleyGraph& gr,
                                            const std::vector<VertexSet>& parts) {
    std::size_t n = gr.order();
    VertexSet seen(n);
    std::size_t total = 0;
    for (const VertexSet& p : parts) {
        if (p.universe() != n) fail(errc::dimension_mismatch, "part universe != graph order");
        total += p.size();
        seen |= p;
    }
    if (seen.size() != n || total != n)
        fail(errc::not_a_partition, "parts do not partition the vertex set");
    if (gr.degree() == 0) fail(errc::empty_edge_set, "graph has no edges");

    for (std::size_t i = 0; i < parts.size(); ++i) {
        Verdict v = verify_tpc(gr, parts[i]);
        if (!v.ok) return Verdict::failure("part " + std::to_string(i) + ": " + v.witness);
    }
    // Direct pseudocover validation; cannot fail once every part verified.
    for (std::size_t v = 0; v < n; ++v)
        for (const VertexSet& p : parts)
            if (gr.neighbors(v).intersection_size(p) != 1)
                fail(errc::internal_invariant_violated, "cover structure broken at a vertex");
    return Verdict::pass();
}

} // namespace tpc
