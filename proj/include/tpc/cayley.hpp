#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "tpc/error.hpp"
#include "tpc/group.hpp"
#include "tpc/vertex_set.hpp"

namespace tpc {

// Identity-free, inverse-closed subset S of a group, together with its
// conjugacy-class decomposition when S is a union of classes.
struct ConnectionSet {
    VertexSet set;
    bool conjugation_closed = false;
    std::vector<VertexSet> classes; // empty unless conjugation_closed

    std::size_t degree() const { return set.size(); }
};

namespace detail {

inline void validate_connection_set(const GroupTable& g, const VertexSet& s) {
    if (s.universe() != g.order)
        fail(errc::dimension_mismatch, "connection set universe != group order");
    if (s.test(0)) fail(errc::identity_in_connection_set, "identity element in connection set");
    bool closed = true;
    s.for_each([&](std::size_t x) {
        if (!s.test(g.inverse(static_cast<std::uint32_t>(x)))) closed = false;
    });
    if (!closed) fail(errc::not_inverse_closed, "connection set not inverse-closed");
}

} // namespace detail

// Validates S and computes its conjugation-closure status. The classes list
// is the partition of S into full conjugacy classes, ordered by minimum
// element; it stays empty when S is not a class union.
inline ConnectionSet analyze_connection_set(const GroupTable& g, const VertexSet& s) {
    detail::validate_connection_set(g, s);
    ConnectionSet conn;
    conn.set = s;
    conn.conjugation_closed = true;
    VertexSet done(g.order);
    for (std::size_t x = s.first(); x != VertexSet::npos; x = s.next(x)) {
        if (done.test(x)) continue;
        VertexSet orbit(g.order);
        for (std::uint32_t a = 0; a < g.order; ++a)
            orbit.add(g.conjugate(a, static_cast<std::uint32_t>(x)));
        if (!s.contains_all(orbit)) {
            conn.conjugation_closed = false;
            conn.classes.clear();
            return conn;
        }
        done |= orbit;
        conn.classes.push_back(std::move(orbit));
    }
    return conn;
}

// Smallest superset of seed that is inverse-closed and, if requested,
// conjugation-closed.
inline ConnectionSet close_connection_set(const GroupTable& g, const VertexSet& seed,
                                          bool under_conjugation) {
    if (seed.universe() != g.order)
        fail(errc::dimension_mismatch, "seed universe != group order");
    if (seed.test(0)) fail(errc::identity_in_connection_set, "identity element in seed");
    VertexSet s(g.order);
    std::vector<std::uint32_t> work;
    seed.for_each([&](std::size_t x) {
        s.add(x);
        work.push_back(static_cast<std::uint32_t>(x));
    });
    auto push = [&](std::uint32_t y) {
        if (!s.test(y)) {
            s.add(y);
            work.push_back(y);
        }
    };
    while (!work.empty()) {
        std::uint32_t x = work.back();
        work.pop_back();
        push(g.inverse(x));
        if (under_conjugation)
            for (std::uint32_t a = 0; a < g.order; ++a) push(g.conjugate(a, x));
    }
    return analyze_connection_set(g, s);
}

// Cayley graph Cay(G,S): x ~ y iff x*y^-1 in S, so the neighborhood of v is
// the row set S*v. Bit-packed adjacency rows; degree |S|; no loops.
struct CayleyGraph {
    std::shared_ptr<const GroupTable> group_ptr;
    ConnectionSet conn;
    std::vector<VertexSet> adj;

    const GroupTable& group() const { return *group_ptr; }
    std::size_t order() const { return adj.size(); }
    std::size_t degree() const { return conn.set.size(); }
    const VertexSet& neighbors(std::size_t v) const { return adj[v]; }
};

inline CayleyGraph build_cayley(std::shared_ptr<const GroupTable> g, const VertexSet& s) {
    CayleyGraph gr;
    gr.conn = analyze_connection_set(*g, s);
    std::size_t n = g->order;
    gr.adj.assign(n, VertexSet(n));
    std::vector<std::uint32_t> gens;
    s.for_each([&](std::size_t x) { gens.push_back(static_cast<std::uint32_t>(x)); });
    for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t sg : gens) gr.adj[v].add(g->op(sg, v));
    gr.group_ptr = std::move(g);
    return gr;
}

inline CayleyGraph build_cayley(const GroupTable& g, const VertexSet& s) {
    return build_cayley(std::make_shared<GroupTable>(g), s);
}

// Breadth-first reachability from the identity; for Cayley graphs this
// agrees with closure(S) = G.
inline bool is_connected(const CayleyGraph& gr) {
    std::size_t n = gr.order();
    if (n == 0) return true;
    VertexSet seen(n);
    seen.add(0);
    std::vector<std::uint32_t> work{0};
    std::size_t count = 1;
    while (!work.empty()) {
        std::uint32_t v = work.back();
        work.pop_back();
        gr.adj[v].for_each([&](std::size_t u) {
            if (!seen.test(u)) {
                seen.add(u);
                ++count;
                work.push_back(static_cast<std::uint32_t>(u));
            }
        });
    }
    return count == n;
}

} // namespace tpc
