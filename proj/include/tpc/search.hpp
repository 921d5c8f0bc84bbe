#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "tpc/cayley.hpp"
#include "tpc/codes.hpp"
#include "tpc/error.hpp"
#include "tpc/group.hpp"
#include "tpc/vertex_set.hpp"

namespace tpc {

enum class SearchMode { first, all, count };

struct SearchOptions {
    SearchMode mode = SearchMode::all;
    std::optional<std::uint64_t> limit; // max stored solutions (all mode)
    bool canonical = false;             // one representative per right-translation orbit
    unsigned threads = 1;
};

struct SearchResult {
    std::vector<VertexSet> solutions; // sorted by bitset value
    std::uint64_t count = 0;          // exact total in count mode, else solutions.size()
    bool exhausted = true;            // false when a limit cut the enumeration short
};

namespace detail {

// Exact cover state: columns are vertices (each must gain exactly one code
// neighbor); row v covers the columns adj[v]. Rows conflicting with the
// covered set are pruned from avail as choices are made.
struct CoverState {
    VertexSet covered;
    VertexSet avail;
    std::vector<std::uint32_t> chosen;
};

inline void cover_apply(const std::vector<VertexSet>& adj, CoverState& st, std::uint32_t v) {
    st.covered |= adj[v];
    VertexSet conflicts(adj.size());
    adj[v].for_each([&](std::size_t w) { conflicts |= adj[w]; });
    st.avail.subtract(conflicts);
    st.chosen.push_back(v);
}

// Lowest-index uncovered column with the fewest available covering rows.
inline std::size_t pick_column(const std::vector<VertexSet>& adj, const CoverState& st,
                               std::size_t& count_out) {
    std::size_t best = VertexSet::npos, best_count = static_cast<std::size_t>(-1);
    for (std::size_t c = 0; c < adj.size(); ++c) {
        if (st.covered.test(c)) continue;
        std::size_t k = adj[c].intersection_size(st.avail);
        if (k < best_count) {
            best = c;
            best_count = k;
            if (k == 0) break;
        }
    }
    count_out = best_count;
    return best;
}

// Depth-first Algorithm-X walk. emit returns false to abort the whole
// search; the function returns false when aborted.
template <class F>
bool cover_dfs(const std::vector<VertexSet>& adj, CoverState& st, F&& emit) {
    if (st.covered.size() == adj.size()) return emit(st.chosen);
    std::size_t cand_count = 0;
    std::size_t col = pick_column(adj, st, cand_count);
    if (cand_count == 0) return true;
    VertexSet cands = adj[col] & st.avail;
    bool keep_going = true;
    cands.for_each([&](std::size_t v) {
        if (!keep_going) return;
        CoverState next = st;
        cover_apply(adj, next, static_cast<std::uint32_t>(v));
        keep_going = cover_dfs(adj, next, emit);
    });
    return keep_going;
}

inline VertexSet chosen_to_set(std::size_t n, const std::vector<std::uint32_t>& chosen) {
    VertexSet s(n);
    for (std::uint32_t v : chosen) s.add(v);
    return s;
}

// Lexicographically least right translate Cg over all g in G.
inline VertexSet canonical_translate(const GroupTable& g, const VertexSet& c) {
    VertexSet best = c;
    for (std::uint32_t t = 1; t < g.order; ++t) {
        VertexSet cand = right_translate(g, c, t);
        if (VertexSet::lex_less(cand, best)) best = cand;
    }
    return best;
}

struct BranchOutcome {
    std::vector<VertexSet> solutions; // DFS order, capped at the limit
    std::uint64_t count = 0;
};

} // namespace detail

// Exhaustive / first-solution / counting search for total perfect codes.
// Deterministic: fixed column and row orders; the returned list is sorted
// by bitset value; parallel runs merge per-branch results in branch order
// and match single-threaded output byte for byte.
inline SearchResult find_tpcs(const CayleyGraph& gr, const SearchOptions& opt = {}) {
    std::size_t n = gr.order();
    std::size_t d = gr.degree();
    SearchResult res;

    // Cardinality fast-fail: |C| = |V|/d must be an even integer.
    if (d == 0 || n % d != 0 || (n / d) % 2 != 0) return res;

    std::uint64_t limit = opt.limit.value_or(UINT64_MAX);
    if (opt.mode == SearchMode::first) limit = 1;
    bool collect = opt.mode != SearchMode::count || opt.canonical;
    if (opt.mode == SearchMode::count) limit = UINT64_MAX;

    detail::CoverState root;
    root.covered = VertexSet(n);
    root.avail = VertexSet::full(n);

    std::vector<detail::BranchOutcome> branches;
    std::size_t root_count = 0;
    std::size_t root_col = detail::pick_column(gr.adj, root, root_count);
    bool aborted = false;

    if (root_count == 0) {
        // no vertex can dominate the hardest column; nothing to search
    } else {
        VertexSet root_cands = gr.adj[root_col] & root.avail;
        std::vector<std::uint32_t> roots;
        root_cands.for_each([&](std::size_t v) { roots.push_back(static_cast<std::uint32_t>(v)); });
        branches.resize(roots.size());

        unsigned threads = std::max(1u, opt.threads);
        if (opt.mode == SearchMode::first) threads = 1;
        threads = static_cast<unsigned>(
            std::min<std::size_t>(threads, roots.size() ? roots.size() : 1));

        auto run_branch = [&](std::size_t i) {
            detail::CoverState st = root;
            detail::cover_apply(gr.adj, st, roots[i]);
            detail::BranchOutcome& out = branches[i];
            detail::cover_dfs(gr.adj, st, [&](const std::vector<std::uint32_t>& chosen) {
                ++out.count;
                if (collect) out.solutions.push_back(detail::chosen_to_set(n, chosen));
                return !(collect && out.count >= limit);
            });
        };

        if (threads <= 1 && opt.mode != SearchMode::count) {
            // sequential with a global early stop across branches
            std::uint64_t found = 0;
            for (std::size_t i = 0; i < roots.size() && !aborted; ++i) {
                detail::CoverState st = root;
                detail::cover_apply(gr.adj, st, roots[i]);
                detail::BranchOutcome& out = branches[i];
                bool finished =
                    detail::cover_dfs(gr.adj, st, [&](const std::vector<std::uint32_t>& chosen) {
                        ++out.count;
                        ++found;
                        if (collect) out.solutions.push_back(detail::chosen_to_set(n, chosen));
                        return found < limit;
                    });
                if (!finished) aborted = true;
            }
        } else if (threads <= 1) {
            for (std::size_t i = 0; i < roots.size(); ++i) run_branch(i);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back([&, t] {
                    for (std::size_t i = t; i < roots.size(); i += threads) run_branch(i);
                });
            for (auto& th : pool) th.join();
        }
    }

    std::uint64_t total = 0;
    for (const auto& b : branches) total += b.count;

    if (opt.mode == SearchMode::count && !opt.canonical) {
        res.count = total;
        res.exhausted = true;
        return res;
    }

    for (auto& b : branches)
        for (auto& s : b.solutions) {
            if (res.solutions.size() >= limit) break;
            res.solutions.push_back(std::move(s));
        }
    bool limited = res.solutions.size() >= limit;

    if (opt.canonical) {
        const GroupTable& g = gr.group();
        for (auto& s : res.solutions) s = detail::canonical_translate(g, s);
        std::sort(res.solutions.begin(), res.solutions.end(), VertexSet::lex_less);
        res.solutions.erase(std::unique(res.solutions.begin(), res.solutions.end()),
                            res.solutions.end());
    }
    std::sort(res.solutions.begin(), res.solutions.end(), VertexSet::value_less);

    if (opt.mode == SearchMode::count) {
        res.count = res.solutions.size(); // canonical class count
        res.solutions.clear();
        res.exhausted = true;
        return res;
    }
    res.count = res.solutions.size();
    res.exhausted = !limited;
    return res;
}

// Layered exact cover for a partition of V into total perfect codes: force
// the smallest uncovered-by-parts vertex into the next part, enumerate the
// codes through it inside the remaining vertices, and recurse.
inline std::optional<std::vector<VertexSet>> find_tpc_partition(const CayleyGraph& gr) {
    std::size_t n = gr.order();
    std::size_t d = gr.degree();
    if (d == 0 || n % d != 0 || (n / d) % 2 != 0) return std::nullopt;

    std::vector<VertexSet> parts;

    auto layer = [&](auto&& self, const VertexSet& remaining) -> bool {
        if (remaining.empty()) return true;
        std::uint32_t v0 = static_cast<std::uint32_t>(remaining.first());
        detail::CoverState st;
        st.covered = VertexSet(n);
        st.avail = remaining;
        detail::cover_apply(gr.adj, st, v0);
        bool found = false;
        detail::cover_dfs(gr.adj, st, [&](const std::vector<std::uint32_t>& chosen) {
            VertexSet part = detail::chosen_to_set(n, chosen);
            VertexSet rest = remaining;
            rest.subtract(part);
            parts.push_back(part);
            if (self(self, rest)) {
                found = true;
                return false; // success, unwind
            }
            parts.pop_back();
            return true;
        });
        return found;
    };

    if (!layer(layer, VertexSet::full(n))) return std::nullopt;
    return parts;
}

// All normal subgroups passing the normal-subgroup code criterion; each is
// re-verified as a code on the built graph.
inline std::vector<VertexSet> find_subgroup_tpcs(const GroupTable& g, const VertexSet& s) {
    if (g.order > 512)
        fail(errc::size_guard_exceeded, "subgroup code search limited to order 512");
    CayleyGraph gr = build_cayley(g, s);
    std::vector<VertexSet> out;
    for (const VertexSet& sub : enumerate_normal_subgroups(g)) {
        if (!check_normal_subgroup_code(g, s, sub).verdict.ok) continue;
        if (!verify_tpc(gr, sub).ok)
            fail(errc::internal_invariant_violated, "subgroup passed criterion but is not a code");
        out.push_back(sub);
    }
    return out;
}

} // namespace tpc
