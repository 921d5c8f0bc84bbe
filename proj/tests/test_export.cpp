#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tpc/export.hpp"

using namespace tpc;
using nlohmann::json;

namespace {

errc kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const error& e) {
        return e.kind();
    }
    FAIL("expected a tpc::error");
    return errc::internal_invariant_violated;
}

// Edge list straight from the group operation: {v, sv} for every s in S,
// normalized to u < v, sorted, deduplicated.
std::vector<std::pair<std::size_t, std::size_t>> edges_by_hand(const GroupTable& g,
                                                               const VertexSet& s) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::uint32_t v = 0; v < g.order; ++v)
        for (std::size_t x = s.first(); x != VertexSet::npos; x = s.next(x)) {
            std::uint32_t u = g.op(static_cast<std::uint32_t>(x), v);
            edges.emplace_back(std::min<std::size_t>(u, v), std::max<std::size_t>(u, v));
        }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

} // namespace

TEST_CASE("element labels round-trip through parsing") {
    for (const char* spec :
         {"cyclic:7", "elem2:4", "dihedral:5", "sym:3", "product:(cyclic:3),(elem2:2)"}) {
        GroupTable g = make_group(spec);
        for (std::uint32_t v = 0; v < g.order; ++v)
            CHECK(parse_element(g, element_label(g, v)) == v);
    }
}

TEST_CASE("elem2 tokens of full width read as little-endian bit-strings") {
    GroupTable q4 = make_group("elem2:4");
    CHECK(parse_element(q4, "1110") == 7);
    CHECK(parse_element(q4, "0001") == 8);
    CHECK(parse_element(q4, "0000") == 0);
    CHECK(parse_element(q4, "1111") == 15);
    CHECK(element_label(q4, 7) == "1110");
    CHECK(element_label(q4, 8) == "0001");
    // shorter tokens fall back to decimal indices
    CHECK(parse_element(q4, "7") == 7);
    CHECK(parse_element(q4, "10") == 10);

    GroupTable z16 = make_group("cyclic:16");
    CHECK(element_label(z16, 7) == "7");
    // no bit-string rule outside elem2: this is decimal one hundred ten
    CHECK(kind_of([&] { parse_element(z16, "0110"); }) == errc::invalid_spec);

    CHECK(kind_of([&] { parse_element(q4, "16"); }) == errc::invalid_spec);
    CHECK(kind_of([&] { parse_element(q4, "x"); }) == errc::invalid_spec);
}

TEST_CASE("element set parsing") {
    GroupTable g = make_group("cyclic:18");
    CHECK(parse_element_set(g, "0,3,6,9,12,15") == VertexSet::of(18, {0, 3, 6, 9, 12, 15}));
    CHECK(parse_element_set(g, "3,3,3") == VertexSet::of(18, {3}));
    CHECK(parse_element_set(g, "").empty());
    CHECK(kind_of([&] { parse_element_set(g, "1,,2"); }) == errc::invalid_spec);
}

TEST_CASE("DOT output is frozen on a worked example") {
    CayleyGraph gr = build_cayley(make_group("elem2:2"), VertexSet::of(4, {1, 2}));
    CHECK(to_dot(gr) ==
          "graph \"Cay(elem2:2, {10,01})\" {\n"
          "  0 [label=\"00\"];\n"
          "  1 [label=\"10\"];\n"
          "  2 [label=\"01\"];\n"
          "  3 [label=\"11\"];\n"
          "  0 -- 1;\n"
          "  0 -- 2;\n"
          "  1 -- 3;\n"
          "  2 -- 3;\n"
          "}\n");
}

TEST_CASE("DOT output lists every vertex and each edge once") {
    GroupTable g = make_group("sym:3");
    VertexSet s = VertexSet::of(6, {1, 2, 5});
    CayleyGraph gr = build_cayley(g, s);
    std::string dot = to_dot(gr);
    for (std::uint32_t v = 0; v < g.order; ++v)
        CHECK(dot.find("  " + std::to_string(v) + " [label=\"" + std::to_string(v) + "\"];\n") !=
              std::string::npos);
    std::size_t edge_lines = 0;
    for (std::size_t pos = dot.find(" -- "); pos != std::string::npos;
         pos = dot.find(" -- ", pos + 1))
        ++edge_lines;
    CHECK(edge_lines == edges_by_hand(g, s).size());
    CHECK(edge_lines == g.order * s.size() / 2);
}

TEST_CASE("graph JSON matches edges built by hand") {
    struct Case {
        const char* spec;
        std::vector<std::size_t> elems;
    };
    for (const Case& tc : std::vector<Case>{
             {"cyclic:6", {1, 5}}, {"elem2:3", {1, 2, 4}}, {"dihedral:4", {4, 5, 6, 7}}}) {
        const char* spec = tc.spec;
        GroupTable g = make_group(spec);
        VertexSet s = VertexSet::from_range(g.order, tc.elems);
        CayleyGraph gr = build_cayley(g, s);
        json j = graph_json(gr);
        CHECK(j["group"] == spec);
        CHECK(j["S"].get<std::vector<std::size_t>>() == s.indices());
        std::vector<std::pair<std::size_t, std::size_t>> got;
        for (const json& e : j["edges"]) got.emplace_back(e[0], e[1]);
        CHECK(got == edges_by_hand(g, s));
    }
}

TEST_CASE("group JSON round-trips") {
    for (const char* spec :
         {"cyclic:1", "cyclic:12", "elem2:3", "dihedral:6", "sym:4",
          "product:(cyclic:2),(cyclic:4)"}) {
        GroupTable g = make_group(spec);
        GroupTable back = group_from_json(group_json(g));
        CHECK(back.order == g.order);
        CHECK(back.label == g.label);
        CHECK(back.mul == g.mul);
        CHECK(back.inv == g.inv);
        back.check_table();
        back.check_associativity();
    }
}

TEST_CASE("group JSON import rejects malformed tables") {
    json good = group_json(make_group("cyclic:3"));

    json j = good;
    j.erase("order");
    CHECK(kind_of([&] { group_from_json(j); }) == errc::invalid_spec);

    j = good;
    j["mul"][1] = {1, 2}; // ragged row
    CHECK(kind_of([&] { group_from_json(j); }) == errc::dimension_mismatch);

    j = good;
    j["order"] = 4; // three rows only
    CHECK(kind_of([&] { group_from_json(j); }) == errc::dimension_mismatch);

    j = good;
    j["mul"][2][2] = 7; // entry out of range
    CHECK(kind_of([&] { group_from_json(j); }) == errc::invalid_spec);

    j = good;
    j["mul"][1] = {1, 2, 2}; // row not a permutation
    CHECK(kind_of([&] { group_from_json(j); }) == errc::invalid_spec);

    // Z_3 relabeled through the swap 0 <-> 1: a Latin square whose identity
    // sits at index 1.
    j = good;
    j["mul"] = {{2, 0, 1}, {0, 1, 2}, {1, 2, 0}};
    CHECK(kind_of([&] { group_from_json(j); }) == errc::invalid_spec);

    // A loop of order 5: Latin square with two-sided identity 0, but
    // 1*2 = 0 while 2*1 = 4, so 1 has no two-sided inverse.
    json loop;
    loop["order"] = 5;
    loop["label"] = "loop:5";
    loop["mul"] = {{0, 1, 2, 3, 4},
                   {1, 2, 0, 4, 3},
                   {2, 4, 3, 0, 1},
                   {3, 0, 4, 1, 2},
                   {4, 3, 1, 2, 0}};
    CHECK(kind_of([&] { group_from_json(loop); }) == errc::invalid_spec);
}
