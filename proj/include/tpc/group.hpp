#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tpc/error.hpp"
#include "tpc/vertex_set.hpp"

namespace tpc {

inline constexpr std::size_t max_group_order = 20000;

// Finite group as an explicit multiplication table. Elements are dense
// indices 0..order-1 with the identity pinned at index 0.
struct GroupTable {
    std::size_t order = 1;
    std::vector<std::uint32_t> mul; // row-major, mul[a*order+b] = a*b
    std::vector<std::uint32_t> inv;
    std::string label;

    std::uint32_t op(std::uint32_t a, std::uint32_t b) const {
        return mul[static_cast<std::size_t>(a) * order + b];
    }

    std::uint32_t inverse(std::uint32_t a) const { return inv[a]; }

    // g x g^-1
    std::uint32_t conjugate(std::uint32_t g, std::uint32_t x) const {
        return op(op(g, x), inv[g]);
    }

    bool is_abelian() const {
        for (std::uint32_t a = 0; a < order; ++a)
            for (std::uint32_t b = a + 1; b < order; ++b)
                if (op(a, b) != op(b, a)) return false;
        return true;
    }

    // Latin-square rows/columns, identity row/column, and inverses. O(n^2).
    void check_table() const {
        std::vector<char> seen(order);
        for (std::uint32_t a = 0; a < order; ++a) {
            std::fill(seen.begin(), seen.end(), 0);
            for (std::uint32_t b = 0; b < order; ++b) {
                std::uint32_t c = op(a, b);
                if (c >= order || seen[c])
                    fail(errc::internal_invariant_violated, "row not a permutation");
                seen[c] = 1;
            }
        }
        for (std::uint32_t b = 0; b < order; ++b) {
            std::fill(seen.begin(), seen.end(), 0);
            for (std::uint32_t a = 0; a < order; ++a) {
                std::uint32_t c = op(a, b);
                if (seen[c]) fail(errc::internal_invariant_violated, "column not a permutation");
                seen[c] = 1;
            }
        }
        for (std::uint32_t x = 0; x < order; ++x) {
            if (op(0, x) != x || op(x, 0) != x)
                fail(errc::internal_invariant_violated, "identity not at index 0");
            if (op(x, inv[x]) != 0 || op(inv[x], x) != 0)
                fail(errc::internal_invariant_violated, "inverse table wrong");
        }
    }

    // Full associativity sweep, O(n^3). Opt-in (CLI flag / tests).
    void check_associativity() const {
        for (std::uint32_t a = 0; a < order; ++a)
            for (std::uint32_t b = 0; b < order; ++b)
                for (std::uint32_t c = 0; c < order; ++c)
                    if (op(op(a, b), c) != op(a, op(b, c)))
                        fail(errc::internal_invariant_violated, "associativity fails");
    }
};

// Disjoint vertex sets covering 0..n-1, with a part index per element.
struct GroupPartition {
    std::vector<VertexSet> parts;
    std::vector<std::uint32_t> part_of;

    std::size_t universe() const { return part_of.size(); }

    void check_partition() const {
        std::size_t total = 0;
        for (std::size_t p = 0; p < parts.size(); ++p) {
            total += parts[p].size();
            parts[p].for_each([&](std::size_t v) {
                if (part_of[v] != p)
                    fail(errc::internal_invariant_violated, "part_of inconsistent");
            });
        }
        if (total != part_of.size())
            fail(errc::internal_invariant_violated, "parts do not cover all elements");
    }
};

namespace detail {

inline std::size_t parse_count(std::string_view s, const char* what) {
    std::size_t value = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || s.empty())
        fail(errc::invalid_spec, std::string("bad number in ") + what);
    return value;
}

// Splits "product:(A),(B)" into its two parenthesized sub-specs.
inline std::pair<std::string_view, std::string_view> split_product(std::string_view body) {
    if (body.empty() || body.front() != '(')
        fail(errc::invalid_spec, "product expects (spec),(spec)");
    int depth = 0;
    std::size_t i = 0;
    for (; i < body.size(); ++i) {
        if (body[i] == '(') ++depth;
        else if (body[i] == ')' && --depth == 0) break;
    }
    if (i == body.size()) fail(errc::invalid_spec, "unbalanced parentheses in product");
    std::string_view a = body.substr(1, i - 1);
    std::string_view rest = body.substr(i + 1);
    if (rest.size() < 3 || rest[0] != ',' || rest[1] != '(' || rest.back() != ')')
        fail(errc::invalid_spec, "product expects (spec),(spec)");
    std::string_view b = rest.substr(2, rest.size() - 3);
    return {a, b};
}

inline std::uint64_t spec_order(std::string_view spec) {
    if (spec.starts_with("cyclic:")) {
        std::size_t n = parse_count(spec.substr(7), "cyclic:n");
        if (n < 1) fail(errc::invalid_spec, "cyclic:n needs n >= 1");
        return n;
    }
    if (spec.starts_with("elem2:")) {
        std::size_t k = parse_count(spec.substr(6), "elem2:k");
        if (k < 1 || k > 16) fail(errc::invalid_spec, "elem2:k needs 1 <= k <= 16");
        return 1ull << k;
    }
    if (spec.starts_with("dihedral:")) {
        std::size_t n = parse_count(spec.substr(9), "dihedral:n");
        if (n < 2) fail(errc::invalid_spec, "dihedral:n needs n >= 2");
        return 2ull * n;
    }
    if (spec.starts_with("sym:")) {
        std::size_t n = parse_count(spec.substr(4), "sym:n");
        if (n < 1 || n > 6) fail(errc::invalid_spec, "sym:n needs 1 <= n <= 6");
        std::uint64_t f = 1;
        for (std::size_t i = 2; i <= n; ++i) f *= i;
        return f;
    }
    if (spec.starts_with("product:")) {
        auto [a, b] = split_product(spec.substr(8));
        std::uint64_t oa = spec_order(a);
        std::uint64_t ob = spec_order(b);
        if (oa > max_group_order || ob > max_group_order)
            fail(errc::size_guard_exceeded,
                 "group order exceeds " + std::to_string(max_group_order));
        return oa * ob;
    }
    fail(errc::invalid_spec, "unknown group spec: " + std::string(spec));
}

inline std::vector<std::uint8_t> unrank_perm(std::size_t n, std::size_t rank) {
    std::vector<std::uint8_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<std::uint8_t> p(n);
    std::uint64_t f = 1;
    for (std::size_t i = 2; i < n; ++i) f *= i; // (n-1)!
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t idx = f ? rank / f : 0;
        rank -= idx * f;
        p[i] = pool[idx];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
        if (n - i - 1 > 0) f /= (n - i - 1);
    }
    return p;
}

inline std::size_t rank_perm(const std::vector<std::uint8_t>& p) {
    std::size_t n = p.size();
    std::uint64_t f = 1;
    for (std::size_t i = 2; i < n; ++i) f *= i;
    std::size_t rank = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t smaller = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            if (p[j] < p[i]) ++smaller;
        rank += smaller * f;
        if (n - i - 1 > 1) f /= (n - i - 1);
        else f = 1;
    }
    return rank;
}

} // namespace detail

// Builds a group from a construction spec:
//   cyclic:n      Z_n, index j is a^j
//   elem2:k       Z_2^k, index = little-endian bit pattern of the vector
//   dihedral:n    order 2n; 0..n-1 rotations r^j, n..2n-1 reflections r^j s
//   sym:n         S_n, index = lexicographic rank; (p*q)(x) = p(q(x))
//   product:(A),(B)  direct product, (a,b) encoded as a*|B|+b
inline GroupTable make_group(std::string_view spec) {
    std::uint64_t order64 = detail::spec_order(spec);
    if (order64 > max_group_order)
        fail(errc::size_guard_exceeded, "group order exceeds " + std::to_string(max_group_order));
    std::size_t n = static_cast<std::size_t>(order64);

    GroupTable g;
    g.order = n;
    g.label = std::string(spec);
    g.mul.resize(n * n);
    g.inv.resize(n);

    if (spec.starts_with("cyclic:")) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                g.mul[a * n + b] = static_cast<std::uint32_t>((a + b) % n);
        for (std::size_t a = 0; a < n; ++a)
            g.inv[a] = static_cast<std::uint32_t>((n - a) % n);
    } else if (spec.starts_with("elem2:")) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                g.mul[a * n + b] = static_cast<std::uint32_t>(a ^ b);
        for (std::size_t a = 0; a < n; ++a)
            g.inv[a] = static_cast<std::uint32_t>(a);
    } else if (spec.starts_with("dihedral:")) {
        std::size_t m = n / 2;
        auto rot = [m](std::size_t a) { return a % m; };
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                std::size_t r;
                if (a < m && b < m) r = rot(a + b);
                else if (a < m) r = m + rot(a + (b - m));
                else if (b < m) r = m + rot((a - m) + m - rot(b));
                else r = rot((a - m) + m - rot(b - m));
                g.mul[a * n + b] = static_cast<std::uint32_t>(r);
            }
        }
        for (std::size_t a = 0; a < n; ++a)
            g.inv[a] = static_cast<std::uint32_t>(a < m ? rot(m - rot(a) + m) : a);
    } else if (spec.starts_with("sym:")) {
        std::size_t deg = detail::parse_count(spec.substr(4), "sym:n");
        std::vector<std::vector<std::uint8_t>> perms(n);
        for (std::size_t r = 0; r < n; ++r) perms[r] = detail::unrank_perm(deg, r);
        std::vector<std::uint8_t> comp(deg);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                for (std::size_t x = 0; x < deg; ++x) comp[x] = perms[a][perms[b][x]];
                g.mul[a * n + b] = static_cast<std::uint32_t>(detail::rank_perm(comp));
            }
        }
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<std::uint8_t> iv(deg);
            for (std::size_t x = 0; x < deg; ++x) iv[perms[a][x]] = static_cast<std::uint8_t>(x);
            g.inv[a] = static_cast<std::uint32_t>(detail::rank_perm(iv));
        }
    } else { // product
        auto [sa, sb] = detail::split_product(spec.substr(8));
        GroupTable ga = make_group(sa);
        GroupTable gb = make_group(sb);
        std::size_t ob = gb.order;
        for (std::size_t a = 0; a < n; ++a) {
            std::uint32_t a1 = static_cast<std::uint32_t>(a / ob);
            std::uint32_t a2 = static_cast<std::uint32_t>(a % ob);
            for (std::size_t b = 0; b < n; ++b) {
                std::uint32_t b1 = static_cast<std::uint32_t>(b / ob);
                std::uint32_t b2 = static_cast<std::uint32_t>(b % ob);
                g.mul[a * n + b] = ga.op(a1, b1) * static_cast<std::uint32_t>(ob) + gb.op(a2, b2);
            }
            g.inv[a] = ga.inv[a1] * static_cast<std::uint32_t>(ob) + gb.inv[a2];
        }
    }
    return g;
}

// Orbits of x -> g x g^-1; parts ordered by their minimum element, so the
// identity class {0} always comes first.
inline GroupPartition conjugacy_classes(const GroupTable& g) {
    std::size_t n = g.order;
    GroupPartition pi;
    pi.part_of.assign(n, static_cast<std::uint32_t>(-1));
    for (std::uint32_t x = 0; x < n; ++x) {
        if (pi.part_of[x] != static_cast<std::uint32_t>(-1)) continue;
        VertexSet cls(n);
        for (std::uint32_t a = 0; a < n; ++a) cls.add(g.conjugate(a, x));
        std::uint32_t idx = static_cast<std::uint32_t>(pi.parts.size());
        cls.for_each([&](std::size_t y) { pi.part_of[y] = idx; });
        pi.parts.push_back(std::move(cls));
    }
    return pi;
}

// Smallest subgroup containing seed (product saturation from the identity).
inline VertexSet closure(const GroupTable& g, const VertexSet& seed) {
    VertexSet cur(g.order);
    cur.add(0);
    std::vector<std::uint32_t> gens;
    seed.for_each([&](std::size_t s) { gens.push_back(static_cast<std::uint32_t>(s)); });
    std::vector<std::uint32_t> work{0};
    while (!work.empty()) {
        std::uint32_t x = work.back();
        work.pop_back();
        for (std::uint32_t s : gens) {
            std::uint32_t y = g.op(x, s);
            if (!cur.test(y)) {
                cur.add(y);
                work.push_back(y);
            }
        }
    }
    return cur;
}

inline bool is_subgroup(const GroupTable& g, const VertexSet& h) {
    return !h.empty() && closure(g, h) == h;
}

inline bool is_normal(const GroupTable& g, const VertexSet& h) {
    if (!is_subgroup(g, h)) fail(errc::not_a_subgroup, "is_normal needs a subgroup");
    bool ok = true;
    h.for_each([&](std::size_t x) {
        if (!ok) return;
        for (std::uint32_t a = 0; a < g.order; ++a)
            if (!h.test(g.conjugate(a, static_cast<std::uint32_t>(x)))) {
                ok = false;
                return;
            }
    });
    return ok;
}

// Partition of G into left cosets xH, ordered by minimum element; the part
// containing the identity is H itself.
inline GroupPartition left_cosets(const GroupTable& g, const VertexSet& h) {
    if (!is_subgroup(g, h)) fail(errc::not_a_subgroup, "left_cosets needs a subgroup");
    std::size_t n = g.order;
    GroupPartition pi;
    pi.part_of.assign(n, static_cast<std::uint32_t>(-1));
    for (std::uint32_t x = 0; x < n; ++x) {
        if (pi.part_of[x] != static_cast<std::uint32_t>(-1)) continue;
        VertexSet coset(n);
        h.for_each([&](std::size_t e) { coset.add(g.op(x, static_cast<std::uint32_t>(e))); });
        std::uint32_t idx = static_cast<std::uint32_t>(pi.parts.size());
        coset.for_each([&](std::size_t y) { pi.part_of[y] = idx; });
        pi.parts.push_back(std::move(coset));
    }
    return pi;
}

inline VertexSet product_set(const GroupTable& g, const VertexSet& a, const VertexSet& b) {
    VertexSet out(g.order);
    a.for_each([&](std::size_t x) {
        b.for_each([&](std::size_t y) {
            out.add(g.op(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)));
        });
    });
    return out;
}

// All normal subgroups, sorted by size (ties by set value). Walks the lattice
// upward: from each found subgroup, adjoin one conjugacy class and close.
// This reaches exactly the closures of class unions that contain the identity.
inline std::vector<VertexSet> enumerate_normal_subgroups(const GroupTable& g) {
    if (g.order > 512)
        fail(errc::size_guard_exceeded, "normal subgroup enumeration limited to order 512");
    GroupPartition classes = conjugacy_classes(g);
    VertexSet trivial(g.order);
    trivial.add(0);

    std::set<std::vector<std::uint64_t>> seen;
    std::vector<VertexSet> found;
    std::vector<VertexSet> work;
    seen.insert(trivial.words());
    found.push_back(trivial);
    work.push_back(trivial);

    while (!work.empty()) {
        VertexSet n = std::move(work.back());
        work.pop_back();
        for (const VertexSet& k : classes.parts) {
            if (n.contains_all(k)) continue;
            VertexSet cand = closure(g, n | k);
            if (seen.insert(cand.words()).second) {
                found.push_back(cand);
                work.push_back(cand);
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const VertexSet& a, const VertexSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return VertexSet::value_less(a, b);
    });
    return found;
}

// Least element generating the whole group, if the group is cyclic.
inline std::optional<std::uint32_t> find_generator(const GroupTable& g) {
    for (std::uint32_t x = 0; x < g.order; ++x) {
        VertexSet seed(g.order);
        seed.add(x);
        if (closure(g, seed).size() == g.order) return x;
    }
    return std::nullopt;
}

} // namespace tpc
