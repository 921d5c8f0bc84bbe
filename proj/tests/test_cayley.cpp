#include "catch2/catch_amalgamated.hpp"

#include <bit>
#include <utility>
#include <vector>

#include "tpc/cayley.hpp"
#include "tpc/group.hpp"

using namespace tpc;

namespace {

// (group spec, connection set) pairs reused by the sweep tests
const std::vector<std::pair<std::string, std::vector<std::size_t>>> graph_corpus = {
    {"cyclic:4", {1, 3}},
    {"cyclic:18", {1, 9, 17}},
    {"cyclic:18", {9}},
    {"cyclic:20", {1, 2, 10, 18, 19}},
    {"elem2:3", {1, 2, 4}},
    {"elem2:4", {1, 2, 4, 8}},
    {"sym:3", {1, 2, 5}},
    {"sym:3", {3, 4}},
    {"dihedral:4", {4, 5, 6, 7}},
    {"product:(cyclic:2),(cyclic:3)", {3, 1, 2}},
};

CayleyGraph make_graph(const std::string& spec, const std::vector<std::size_t>& s) {
    GroupTable g = make_group(spec);
    return build_cayley(g, VertexSet::from_range(g.order, s));
}

} // namespace

TEST_CASE("4-cycle") {
    CayleyGraph gr = make_graph("cyclic:4", {1, 3});
    CHECK(gr.order() == 4);
    CHECK(gr.degree() == 2);
    for (std::size_t v = 0; v < 4; ++v) {
        CHECK(gr.neighbors(v).test((v + 1) % 4));
        CHECK(gr.neighbors(v).test((v + 3) % 4));
        CHECK(gr.neighbors(v).size() == 2);
    }
}

TEST_CASE("hypercube Q4 adjacency") {
    CayleyGraph q4 = make_graph("elem2:4", {1, 2, 4, 8});
    CHECK(q4.order() == 16);
    CHECK(q4.degree() == 4);
    // oracle: hypercube vertices are adjacent iff they differ in one bit
    for (std::size_t u = 0; u < 16; ++u)
        for (std::size_t v = 0; v < 16; ++v)
            CHECK(q4.neighbors(u).test(v) == (std::popcount(u ^ v) == 1));
    CHECK(is_connected(q4));
}

TEST_CASE("Cay(S3, transpositions) is K33") {
    CayleyGraph gr = make_graph("sym:3", {1, 2, 5});
    CHECK(gr.order() == 6);
    CHECK(gr.degree() == 3);
    // even permutations have lex ranks {0,3,4}; odd ranks {1,2,5}
    VertexSet even = VertexSet::of(6, {0, 3, 4});
    for (std::size_t u = 0; u < 6; ++u)
        for (std::size_t v = 0; v < 6; ++v) {
            bool expect = u != v && even.test(u) != even.test(v);
            CHECK(gr.neighbors(u).test(v) == expect);
        }
}

TEST_CASE("connection set validation") {
    GroupTable z18 = make_group("cyclic:18");
    CHECK_THROWS_AS(build_cayley(z18, VertexSet::of(18, {0, 1, 17})), error);
    CHECK_THROWS_AS(build_cayley(z18, VertexSet::of(18, {1})), error);

    auto kind = [&](const VertexSet& s) {
        try {
            build_cayley(z18, s);
        } catch (const error& e) {
            return e.kind();
        }
        return errc::internal_invariant_violated;
    };
    CHECK(kind(VertexSet::of(18, {0, 1, 17})) == errc::identity_in_connection_set);
    CHECK(kind(VertexSet::of(18, {1})) == errc::not_inverse_closed);

    GroupTable s3 = make_group("sym:3");
    CHECK_THROWS_AS(build_cayley(s3, VertexSet::of(6, {1, 3})), error);
}

TEST_CASE("conjugation closure detection") {
    GroupTable s3 = make_group("sym:3");
    CayleyGraph k33 = build_cayley(s3, VertexSet::of(6, {1, 2, 5}));
    CHECK(k33.conn.conjugation_closed);
    REQUIRE(k33.conn.classes.size() == 1);
    CHECK(k33.conn.classes[0] == VertexSet::of(6, {1, 2, 5}));

    // a single transposition is inverse-closed but not a class union
    CayleyGraph one = build_cayley(s3, VertexSet::of(6, {1}));
    CHECK_FALSE(one.conn.conjugation_closed);
    CHECK(one.conn.classes.empty());

    // abelian groups: every set is a union of singleton classes
    GroupTable z18 = make_group("cyclic:18");
    CayleyGraph gr = build_cayley(z18, VertexSet::of(18, {1, 9, 17}));
    CHECK(gr.conn.conjugation_closed);
    CHECK(gr.conn.classes.size() == 3);
}

TEST_CASE("close_connection_set") {
    GroupTable z18 = make_group("cyclic:18");
    ConnectionSet a = close_connection_set(z18, VertexSet::of(18, {1}), false);
    CHECK(a.set == VertexSet::of(18, {1, 17}));

    GroupTable s3 = make_group("sym:3");
    ConnectionSet b = close_connection_set(s3, VertexSet::of(6, {2}), true);
    CHECK(b.set == VertexSet::of(6, {1, 2, 5}));
    CHECK(b.conjugation_closed);

    ConnectionSet c = close_connection_set(z18, VertexSet::of(18, {1, 17}), true);
    CHECK(c.set == VertexSet::of(18, {1, 17}));

    CHECK_THROWS_AS(close_connection_set(z18, VertexSet::of(18, {0, 1}), false), error);
}

TEST_CASE("connectivity") {
    CHECK(is_connected(make_graph("cyclic:18", {1, 17})));
    CHECK_FALSE(is_connected(make_graph("cyclic:18", {9})));
    CHECK(is_connected(make_graph("elem2:4", {1, 2, 4, 8})));
}

TEST_CASE("adjacency invariants over corpus") {
    for (const auto& [spec, s] : graph_corpus) {
        INFO(spec);
        GroupTable g = make_group(spec);
        VertexSet conn = VertexSet::from_range(g.order, s);
        CayleyGraph gr = build_cayley(g, conn);
        for (std::size_t v = 0; v < gr.order(); ++v) {
            CHECK(gr.neighbors(v).size() == gr.degree());
            CHECK_FALSE(gr.neighbors(v).test(v));
            gr.neighbors(v).for_each([&](std::size_t u) { CHECK(gr.neighbors(u).test(v)); });
        }
        // BFS connectivity agrees with closure(S) = G
        CHECK(is_connected(gr) == (closure(g, conn).size() == g.order));
    }
}

TEST_CASE("right translation is an automorphism") {
    for (const auto& [spec, s] : graph_corpus) {
        INFO(spec);
        GroupTable g = make_group(spec);
        CayleyGraph gr = build_cayley(g, VertexSet::from_range(g.order, s));
        for (std::uint32_t t = 0; t < g.order; ++t)
            for (std::uint32_t u = 0; u < g.order; ++u)
                for (std::uint32_t v = 0; v < g.order; ++v)
                    CHECK(gr.neighbors(u).test(v) == gr.neighbors(g.op(u, t)).test(g.op(v, t)));
    }
}
