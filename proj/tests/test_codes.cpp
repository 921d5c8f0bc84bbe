#include "catch2/catch_amalgamated.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include "tpc/cayley.hpp"
#include "tpc/codes.hpp"
#include "tpc/group.hpp"

using namespace tpc;

namespace {

CayleyGraph make_graph(const std::string& spec, const std::vector<std::size_t>& s) {
    GroupTable g = make_group(spec);
    return build_cayley(g, VertexSet::from_range(g.order, s));
}

VertexSet vs_from_mask(std::size_t n, std::uint64_t mask) {
    VertexSet out(n);
    for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1) out.add(i);
    return out;
}

// little-endian bit indices: e1=1, e2=2, e3=4, e4=8; C0 = {0000,1110,0001,1111}
const std::vector<std::size_t> q4_basis = {1, 2, 4, 8};
const std::vector<std::size_t> c0 = {0, 7, 8, 15};

} // namespace

TEST_CASE("verify_tpc on the worked cyclic examples") {
    CayleyGraph z18 = make_graph("cyclic:18", {1, 9, 17});
    CHECK(verify_tpc(z18, VertexSet::of(18, {0, 3, 6, 9, 12, 15})).ok);

    CayleyGraph z20 = make_graph("cyclic:20", {1, 2, 10, 18, 19});
    CHECK(verify_tpc(z20, VertexSet::of(20, {0, 5, 10, 15})).ok);

    Verdict bad = verify_tpc(z18, VertexSet::of(18, {0, 3}));
    CHECK_FALSE(bad.ok);
    // first failing vertex by index order: vertex 0 has no neighbor in {0,3}
    CHECK(bad.witness == "vertex 0 has 0 neighbors in the code");
}

TEST_CASE("verify_tpc on Q4") {
    CayleyGraph q4 = make_graph("elem2:4", q4_basis);
    CHECK(verify_tpc(q4, VertexSet::from_range(16, c0)).ok);
    CHECK_FALSE(verify_tpc(q4, VertexSet::of(16, {0, 7})).ok);
}

TEST_CASE("check_matching_structure") {
    CayleyGraph q4 = make_graph("elem2:4", q4_basis);
    CHECK(check_matching_structure(q4, VertexSet::from_range(16, c0)).ok);

    CayleyGraph z18 = make_graph("cyclic:18", {1, 9, 17});
    CHECK(check_matching_structure(z18, VertexSet::of(18, {0, 3, 6, 9, 12, 15})).ok);
    // induced matching pairs differ by 9: {0,9},{3,12},{6,15}
    for (std::size_t v : {0, 3, 6}) {
        VertexSet c = VertexSet::of(18, {0, 3, 6, 9, 12, 15});
        CHECK(z18.neighbors(v).intersection_size(c) == 1);
        CHECK(z18.neighbors(v).test(v + 9));
    }

    CHECK_FALSE(check_matching_structure(z18, VertexSet::of(18, {0, 3, 6})).ok);
}

TEST_CASE("check_matching_structure agrees with verify_tpc exhaustively") {
    const std::vector<std::pair<std::string, std::vector<std::size_t>>> corpus = {
        {"cyclic:4", {1, 3}},
        {"cyclic:6", {1, 5}},
        {"elem2:3", {1, 2, 4}},
        {"sym:3", {1, 2, 5}},
    };
    for (const auto& [spec, s] : corpus) {
        INFO(spec);
        CayleyGraph gr = make_graph(spec, s);
        std::size_t n = gr.order();
        for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
            VertexSet c = vs_from_mask(n, mask);
            CHECK(check_matching_structure(gr, c).ok == verify_tpc(gr, c).ok);
        }
    }
}

TEST_CASE("check_translates clauses") {
    CayleyGraph z18 = make_graph("cyclic:18", {1, 9, 17});
    VertexSet c18 = VertexSet::of(18, {0, 3, 6, 9, 12, 15});
    TranslateReport rep = check_translates(z18, c18);
    CHECK(rep.right_translates_are_codes.ok);
    CHECK(rep.left_translates_partition.ok);
    CHECK(rep.conjugation_applicable);
    CHECK(rep.right_translates_partition.ok);

    CayleyGraph q4 = make_graph("elem2:4", q4_basis);
    TranslateReport rq = check_translates(q4, VertexSet::from_range(16, c0));
    CHECK(rq.right_translates_are_codes.ok);
    CHECK(rq.left_translates_partition.ok);
    CHECK(rq.conjugation_applicable);

    // K33: {identity, one transposition} is a code; transpositions form a class
    CayleyGraph k33 = make_graph("sym:3", {1, 2, 5});
    VertexSet ck = VertexSet::of(6, {0, 1});
    REQUIRE(verify_tpc(k33, ck).ok);
    TranslateReport rk = check_translates(k33, ck);
    CHECK(rk.right_translates_are_codes.ok);
    CHECK(rk.left_translates_partition.ok);
    CHECK(rk.conjugation_applicable);
    CHECK(rk.right_translates_partition.ok);

    CHECK_THROWS_AS(check_translates(z18, VertexSet::of(18, {0, 3})), error);
}

TEST_CASE("right translates of a code verify") {
    CayleyGraph z18 = make_graph("cyclic:18", {1, 9, 17});
    VertexSet c = VertexSet::of(18, {0, 3, 6, 9, 12, 15});
    const GroupTable& g = z18.group();
    for (std::size_t t : {1, 9, 17})
        CHECK(verify_tpc(z18, detail::right_translate(g, c, static_cast<std::uint32_t>(t))).ok);
}

TEST_CASE("check_algebraic_condition") {
    GroupTable z18 = make_group("cyclic:18");
    VertexSet s18 = VertexSet::of(18, {1, 9, 17});
    CHECK(check_algebraic_condition(z18, s18, VertexSet::of(18, {0, 3, 6, 9, 12, 15})).ok);

    GroupTable z20 = make_group("cyclic:20");
    VertexSet s20 = VertexSet::of(20, {1, 2, 10, 18, 19});
    CHECK(check_algebraic_condition(z20, s20, VertexSet::of(20, {0, 5, 10, 15})).ok);

    Verdict whole = check_algebraic_condition(z18, s18, VertexSet::full(18));
    CHECK_FALSE(whole.ok);
    CHECK(whole.witness.find("|C||S|") != std::string::npos);

    // conjugation-closure precondition
    GroupTable s3 = make_group("sym:3");
    CHECK_THROWS_AS(check_algebraic_condition(s3, VertexSet::of(6, {1, 2, 5}), VertexSet::of(6, {0, 1})),
                    error);
}

TEST_CASE("check_algebraic_condition equals verify_tpc on conjugation-closed candidates") {
    // abelian groups: every subset is conjugation-closed, so sweep exhaustively
    for (std::size_t n : {4, 6, 8}) {
        GroupTable g = make_group("cyclic:" + std::to_string(n));
        VertexSet s = VertexSet::of(n, {1, n - 1});
        CayleyGraph gr = build_cayley(g, s);
        for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
            VertexSet c = vs_from_mask(n, mask);
            CHECK(check_algebraic_condition(g, s, c).ok == verify_tpc(gr, c).ok);
        }
    }
}

TEST_CASE("check_normal_subgroup_code") {
    GroupTable z18 = make_group("cyclic:18");
    VertexSet s18 = VertexSet::of(18, {1, 9, 17});
    VertexSet n3 = closure(z18, VertexSet::of(18, {3}));
    NormalCodeVerdict v = check_normal_subgroup_code(z18, s18, n3);
    CHECK(v.verdict.ok);
    CHECK(v.involution == 9u);

    GroupTable e4 = make_group("elem2:4");
    NormalCodeVerdict vq = check_normal_subgroup_code(e4, VertexSet::from_range(16, q4_basis),
                                                      VertexSet::from_range(16, c0));
    CHECK(vq.verdict.ok);
    CHECK(vq.involution == 8u); // e4 = 0001 is the only basis vector in C0

    GroupTable z20 = make_group("cyclic:20");
    NormalCodeVerdict vz = check_normal_subgroup_code(z20, VertexSet::of(20, {1, 2, 10, 18, 19}),
                                                      closure(z20, VertexSet::of(20, {5})));
    CHECK(vz.verdict.ok);
    CHECK(vz.involution == 10u);

    // wrong index
    VertexSet n9 = closure(z18, VertexSet::of(18, {9}));
    CHECK_FALSE(check_normal_subgroup_code(z18, s18, n9).verdict.ok);

    // precondition failures
    GroupTable s3 = make_group("sym:3");
    CHECK_THROWS_AS(check_normal_subgroup_code(s3, VertexSet::of(6, {1, 2, 5}),
                                               VertexSet::of(6, {0, 2})),
                    error); // subgroup but not normal
    CHECK_THROWS_AS(check_normal_subgroup_code(z18, s18, VertexSet::of(18, {0, 1})), error);
}

TEST_CASE("check_union_coset_code") {
    GroupTable z4 = make_group("cyclic:4");
    VertexSet s4 = VertexSet::of(4, {1, 3});
    VertexSet triv(4);
    triv.add(0);
    CHECK(check_union_coset_code(z4, s4, triv, 1).ok);
    CHECK(verify_tpc(build_cayley(z4, s4), VertexSet::of(4, {0, 1})).ok);

    GroupTable z8 = make_group("cyclic:8");
    VertexSet s8 = VertexSet::of(8, {1, 7});
    VertexSet n8 = VertexSet::of(8, {0, 4});
    CHECK(check_union_coset_code(z8, s8, n8, 1).ok);

    // S = {2,6}: S+S = {0,4} meets N
    VertexSet s26 = VertexSet::of(8, {2, 6});
    Verdict v = check_union_coset_code(z8, s26, n8, 2);
    CHECK_FALSE(v.ok);
    CHECK(v.witness.find("S^2") != std::string::npos);

    CHECK_THROWS_AS(check_union_coset_code(z4, s4, triv, 2), error);   // 2 not in S
    CHECK_THROWS_AS(check_union_coset_code(z8, s8, n8, 4), error);     // 4 in N (and not in S)
    auto kind = [&] {
        try {
            check_union_coset_code(z8, VertexSet::of(8, {4}), n8, 4);
        } catch (const error& e) {
            return e.kind();
        }
        return errc::internal_invariant_violated;
    }();
    CHECK(kind == errc::element_in_subgroup);
}

TEST_CASE("union coset criterion equals verify_tpc exhaustively") {
    // all cyclic groups n <= 12, all inverse-closed S, all subgroups N, all g in S\N
    for (std::size_t n = 2; n <= 12; ++n) {
        GroupTable g = make_group("cyclic:" + std::to_string(n));
        std::vector<std::size_t> atoms;
        for (std::size_t k = 1; k <= n / 2; ++k) atoms.push_back(k);
        for (std::uint64_t mask = 1; mask < (1ull << atoms.size()); ++mask) {
            VertexSet s(n);
            for (std::size_t i = 0; i < atoms.size(); ++i)
                if ((mask >> i) & 1) {
                    s.add(atoms[i]);
                    s.add(n - atoms[i]);
                }
            CayleyGraph gr = build_cayley(g, s);
            for (const VertexSet& sub : enumerate_normal_subgroups(g)) {
                VertexSet cand = s;
                cand.subtract(sub);
                for (std::size_t t = cand.first(); t != VertexSet::npos; t = cand.next(t)) {
                    VertexSet code = sub | detail::left_translate(g, static_cast<std::uint32_t>(t), sub);
                    bool expect = verify_tpc(gr, code).ok;
                    bool got = check_union_coset_code(g, s, sub, static_cast<std::uint32_t>(t)).ok;
                    CHECK(got == expect);
                }
            }
        }
    }
}

TEST_CASE("check_abelian_condition") {
    GroupTable z18 = make_group("cyclic:18");
    VertexSet s18 = VertexSet::of(18, {1, 9, 17});
    VertexSet c18 = VertexSet::of(18, {0, 3, 6, 9, 12, 15});
    CHECK(check_abelian_condition(z18, s18, c18).ok); // subgroup fast path

    GroupTable z20 = make_group("cyclic:20");
    CHECK(check_abelian_condition(z20, VertexSet::of(20, {1, 2, 10, 18, 19}),
                                  VertexSet::of(20, {0, 5, 10, 15}))
              .ok);

    // non-subgroup code: a translate of the Z18 code
    VertexSet c1 = detail::right_translate(z18, c18, 1);
    REQUIRE_FALSE(is_subgroup(z18, c1));
    CHECK(check_abelian_condition(z18, s18, c1).ok);

    Verdict bad = check_abelian_condition(z18, s18, VertexSet::of(18, {0, 3, 6, 9, 12, 16}));
    CHECK_FALSE(bad.ok);

    CHECK_THROWS_AS(check_abelian_condition(make_group("sym:3"), VertexSet::of(6, {1, 2, 5}),
                                            VertexSet::of(6, {0, 1})),
                    error);
}

TEST_CASE("check_abelian_condition equals verify_tpc exhaustively") {
    const std::vector<std::pair<std::string, std::vector<std::size_t>>> corpus = {
        {"cyclic:6", {1, 5}},
        {"cyclic:8", {1, 4, 7}},
        {"elem2:3", {1, 2, 4}},
        {"product:(cyclic:2),(cyclic:3)", {3, 1, 2}},
    };
    for (const auto& [spec, s] : corpus) {
        INFO(spec);
        GroupTable g = make_group(spec);
        VertexSet sv = VertexSet::from_range(g.order, s);
        CayleyGraph gr = build_cayley(g, sv);
        for (std::uint64_t mask = 0; mask < (1ull << g.order); ++mask) {
            VertexSet c = vs_from_mask(g.order, mask);
            CHECK(check_abelian_condition(g, sv, c).ok == verify_tpc(gr, c).ok);
        }
    }
}

TEST_CASE("verify_pseudocover_partition") {
    CayleyGraph q4 = make_graph("elem2:4", q4_basis);
    GroupTable e4 = make_group("elem2:4");
    VertexSet base = VertexSet::from_range(16, c0);
    std::vector<VertexSet> parts;
    for (std::size_t shift : {0, 1, 2, 4}) {
        VertexSet p(16);
        base.for_each([&](std::size_t x) { p.add(x ^ shift); });
        parts.push_back(p);
    }
    CHECK(verify_pseudocover_partition(q4, parts).ok);

    CayleyGraph z18 = make_graph("cyclic:18", {1, 9, 17});
    VertexSet c = VertexSet::of(18, {0, 3, 6, 9, 12, 15});
    std::vector<VertexSet> zparts = {c, detail::right_translate(z18.group(), c, 1),
                                     detail::right_translate(z18.group(), c, 17)};
    CHECK(verify_pseudocover_partition(z18, zparts).ok);

    // partition with a non-code part
    VertexSet evens(18), odds(18);
    for (std::size_t v = 0; v < 18; ++v) (v % 2 ? odds : evens).add(v);
    Verdict v = verify_pseudocover_partition(z18, {evens, odds});
    CHECK_FALSE(v.ok);
    CHECK(v.witness.find("part 0") != std::string::npos);

    // not a partition
    CHECK_THROWS_AS(verify_pseudocover_partition(z18, {evens, evens}), error);
    // empty edge set
    GroupTable z2 = make_group("cyclic:2");
    CayleyGraph edgeless = build_cayley(z2, VertexSet(2));
    CHECK_THROWS_AS(verify_pseudocover_partition(edgeless, {VertexSet::full(2)}), error);
}

TEST_CASE("odd-order circulants never admit a code") {
    for (std::size_t n = 3; n <= 15; n += 2) {
        GroupTable g = make_group("cyclic:" + std::to_string(n));
        std::size_t atoms = n / 2;
        for (std::uint64_t smask = 1; smask < (1ull << atoms); ++smask) {
            VertexSet s(n);
            for (std::size_t i = 0; i < atoms; ++i)
                if ((smask >> i) & 1) {
                    s.add(i + 1);
                    s.add(n - i - 1);
                }
            CayleyGraph gr = build_cayley(g, s);
            for (std::uint64_t mask = 0; mask < (1ull << n); ++mask)
                CHECK_FALSE(verify_tpc(gr, vs_from_mask(n, mask)).ok);
        }
    }
}

TEST_CASE("covering projections preserve codes") {
    // double covers realized as Cayley graphs on G x Z2:
    //   S x {1} is the bipartite double cover, S x {0} the disjoint union
    const std::vector<std::tuple<std::string, std::vector<std::size_t>, std::vector<std::size_t>>>
        corpus = {
            {"cyclic:18", {1, 9, 17}, {0, 3, 6, 9, 12, 15}},
            {"elem2:4", {1, 2, 4, 8}, c0},
        };
    for (const auto& [spec, s, c] : corpus) {
        INFO(spec);
        GroupTable g = make_group(spec);
        GroupTable cover = make_group("product:(" + spec + "),(cyclic:2)");
        for (std::size_t twist : {1, 0}) {
            VertexSet sc(cover.order);
            for (std::size_t x : s) sc.add(2 * x + twist);
            VertexSet pre(cover.order);
            for (std::size_t x : c) {
                pre.add(2 * x);
                pre.add(2 * x + 1);
            }
            CHECK(verify_tpc(build_cayley(cover, sc), pre).ok);
        }
    }
}
