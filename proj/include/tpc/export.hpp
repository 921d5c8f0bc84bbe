#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tpc/cayley.hpp"
#include "tpc/error.hpp"
#include "tpc/group.hpp"
#include "tpc/vertex_set.hpp"

namespace tpc {

// Width k for groups built as elem2:k; such groups print elements as
// little-endian bit-strings ("0001" = index 8) instead of decimal indices.
inline std::optional<std::size_t> elem2_width(const GroupTable& g) {
    std::string_view label = g.label;
    if (!label.starts_with("elem2:")) return std::nullopt;
    std::size_t k = detail::parse_count(label.substr(6), "elem2:k");
    if (k > 63 || (std::size_t{1} << k) != g.order)
        fail(errc::internal_invariant_violated, "elem2 label inconsistent with group order");
    return k;
}

inline std::string element_label(const GroupTable& g, std::uint32_t v) {
    if (auto k = elem2_width(g)) {
        std::string s(*k, '0');
        for (std::size_t j = 0; j < *k; ++j)
            if ((v >> j) & 1) s[j] = '1';
        return s;
    }
    return std::to_string(v);
}

// Inverse of element_label, extended to decimal input for every group: a
// token of exactly k '0'/'1' characters in an elem2:k group is read as a
// little-endian bit-string, anything else as a decimal element index.
inline std::uint32_t parse_element(const GroupTable& g, std::string_view token) {
    auto k = elem2_width(g);
    if (k && token.size() == *k && token.find_first_not_of("01") == std::string_view::npos) {
        std::uint32_t v = 0;
        for (std::size_t j = 0; j < *k; ++j)
            if (token[j] == '1') v |= std::uint32_t{1} << j;
        return v;
    }
    std::size_t v = detail::parse_count(token, "element index");
    if (v >= g.order)
        fail(errc::invalid_spec,
             "element index " + std::to_string(v) + " out of range for " + g.label);
    return static_cast<std::uint32_t>(v);
}

// Comma-separated element list; duplicates collapse into the set.
inline VertexSet parse_element_set(const GroupTable& g, std::string_view csv) {
    VertexSet out(g.order);
    while (!csv.empty()) {
        std::size_t comma = csv.find(',');
        std::string_view tok = csv.substr(0, comma);
        if (tok.empty()) fail(errc::invalid_spec, "empty element token");
        out.add(parse_element(g, tok));
        csv = comma == std::string_view::npos ? std::string_view{} : csv.substr(comma + 1);
    }
    return out;
}

namespace detail {

inline std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    out += '"';
    return out;
}

} // namespace detail

// DOT text for the undirected graph: one labelled node line per vertex,
// then each edge once as u -- v with u < v.
inline std::string to_dot(const CayleyGraph& gr) {
    const GroupTable& g = gr.group();
    std::string name = "Cay(" + g.label + ", {";
    for (std::size_t x = gr.conn.set.first(); x != VertexSet::npos; x = gr.conn.set.next(x)) {
        if (name.back() != '{') name += ',';
        name += element_label(g, static_cast<std::uint32_t>(x));
    }
    name += "})";

    std::string out = "graph " + detail::dot_quote(name) + " {\n";
    for (std::size_t v = 0; v < gr.order(); ++v)
        out += "  " + std::to_string(v) + " [label=" +
               detail::dot_quote(element_label(g, static_cast<std::uint32_t>(v))) + "];\n";
    for (std::size_t u = 0; u < gr.order(); ++u)
        for (std::size_t v = gr.neighbors(u).next(u); v != VertexSet::npos;
             v = gr.neighbors(u).next(v))
            out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
    out += "}\n";
    return out;
}

// {"S": [...], "edges": [[u,v],...], "group": label} with u < v and edges in
// lexicographic order; elements as indices.
inline nlohmann::json graph_json(const CayleyGraph& gr) {
    nlohmann::json j;
    j["group"] = gr.group().label;
    j["S"] = gr.conn.set.indices();
    nlohmann::json edges = nlohmann::json::array();
    for (std::size_t u = 0; u < gr.order(); ++u)
        for (std::size_t v = gr.neighbors(u).next(u); v != VertexSet::npos;
             v = gr.neighbors(u).next(v))
            edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j;
}

// {"label": ..., "mul": n x n table, "order": n}
inline nlohmann::json group_json(const GroupTable& g) {
    nlohmann::json j;
    j["order"] = g.order;
    j["label"] = g.label;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t a = 0; a < g.order; ++a) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t b = 0; b < g.order; ++b) row.push_back(g.mul[a * g.order + b]);
        rows.push_back(std::move(row));
    }
    j["mul"] = std::move(rows);
    return j;
}

// Inverse of group_json. Validates shape, identity at index 0, Latin-square
// rows and columns, and two-sided inverses; associativity stays opt-in via
// check_associativity, exactly as with make_group.
inline GroupTable group_from_json(const nlohmann::json& j) {
    auto nonneg = [](const nlohmann::json& v) {
        return v.is_number_integer() && v.get<long long>() >= 0;
    };
    if (!j.is_object() || !j.contains("order") || !j.contains("mul") || !j.contains("label"))
        fail(errc::invalid_spec, "group JSON needs order, mul, label");
    if (!nonneg(j["order"]) || !j["label"].is_string() || !j["mul"].is_array())
        fail(errc::invalid_spec, "group JSON field types: order unsigned, mul array, label string");
    std::size_t n = j["order"].get<std::size_t>();
    if (n < 1 || n > max_group_order)
        fail(errc::size_guard_exceeded, "group order must be 1.." + std::to_string(max_group_order));
    const nlohmann::json& mul = j["mul"];
    if (mul.size() != n) fail(errc::dimension_mismatch, "mul must have order rows");

    GroupTable g;
    g.order = n;
    g.label = j["label"].get<std::string>();
    g.mul.resize(n * n);
    g.inv.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        const nlohmann::json& row = mul[a];
        if (!row.is_array() || row.size() != n)
            fail(errc::dimension_mismatch, "mul must be order x order");
        for (std::size_t b = 0; b < n; ++b) {
            if (!nonneg(row[b]) || row[b].get<std::uint64_t>() >= n)
                fail(errc::invalid_spec, "mul entries must be element indices below order");
            g.mul[a * n + b] = row[b].get<std::uint32_t>();
        }
    }
    std::vector<char> seen(n);
    for (std::size_t a = 0; a < n; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t b = 0; b < n; ++b) {
            std::uint32_t c = g.mul[a * n + b];
            if (seen[c]) fail(errc::invalid_spec, "mul row " + std::to_string(a) +
                                                      " is not a permutation");
            seen[c] = 1;
        }
    }
    for (std::size_t b = 0; b < n; ++b) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t a = 0; a < n; ++a) {
            std::uint32_t c = g.mul[a * n + b];
            if (seen[c]) fail(errc::invalid_spec, "mul column " + std::to_string(b) +
                                                      " is not a permutation");
            seen[c] = 1;
        }
    }
    for (std::size_t x = 0; x < n; ++x)
        if (g.mul[x] != x || g.mul[x * n] != x)
            fail(errc::invalid_spec, "identity must sit at index 0");
    for (std::uint32_t a = 0; a < n; ++a) {
        std::uint32_t b = 0;
        while (g.mul[static_cast<std::size_t>(a) * n + b] != 0) ++b;
        if (g.mul[static_cast<std::size_t>(b) * n + a] != 0)
            fail(errc::invalid_spec,
                 "element " + std::to_string(a) + " has no two-sided inverse");
        g.inv[a] = b;
    }
    return g;
}

} // namespace tpc
