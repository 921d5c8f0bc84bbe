// tpc: total perfect codes in Cayley graphs over finite groups.
//
// Subcommands: verify, search, cubelike, report, export. Machine output is
// JSON on stdout with sorted keys and no timestamps; the one exception is
// DOT text from `export --format dot`. Exit codes: 0 success, 1 usage or
// input error, 2 mathematically negative result (failed verification,
// proved nonexistence, or a TPC-impossible report conclusion).

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tpc/cayley.hpp"
#include "tpc/codes.hpp"
#include "tpc/error.hpp"
#include "tpc/export.hpp"
#include "tpc/gf2.hpp"
#include "tpc/group.hpp"
#include "tpc/search.hpp"
#include "tpc/spectral.hpp"
#include "tpc/vertex_set.hpp"

namespace {

using nlohmann::json;

struct CommonFlags {
    std::uint64_t seed = 0;
    unsigned threads = 0; // 0 = resolve from TPC_THREADS, then all cores
    bool check_associativity = false;
    std::string output; // empty = stdout
};

void add_common(CLI::App* sub, CommonFlags& f) {
    sub->add_option("--seed", f.seed, "random seed (default 0)");
    sub->add_option("--threads", f.threads,
                    "worker threads (default: TPC_THREADS, else all cores)");
    sub->add_flag("--check-associativity", f.check_associativity,
                  "run the full O(n^3) associativity sweep on the group table");
    sub->add_option("--output", f.output, "write to a file instead of stdout");
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("TPC_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0 && v < 1024) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

std::shared_ptr<const tpc::GroupTable> load_group(const std::string& spec, bool check_assoc) {
    tpc::GroupTable g = tpc::make_group(spec);
    if (check_assoc) g.check_associativity();
    return std::make_shared<const tpc::GroupTable>(std::move(g));
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) tpc::fail(tpc::errc::invalid_spec, "cannot open output file " + path);
    out << text;
}

void emit_json(const json& j, const std::string& path) { emit(j.dump() + "\n", path); }

json set_json(const tpc::VertexSet& s) { return json(s.indices()); }

std::string join_indices(const tpc::VertexSet& s) {
    std::string out;
    for (std::size_t i : s.indices()) {
        if (!out.empty()) out += ',';
        out += std::to_string(i);
    }
    return out;
}

std::string bit_string(std::uint64_t x, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t j = 0; j < n; ++j)
        if ((x >> j) & 1) s[j] = '1';
    return s;
}

std::vector<std::string> split_commas(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(csv.substr(pos));
            break;
        }
        out.push_back(csv.substr(pos, comma - pos));
        pos = comma + 1;
    }
    if (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

// Connection vectors for V(n,2): either "random:t" (seeded spanning sample of
// size 2^t) or comma-separated little-endian bit-strings of length n.
std::vector<std::uint64_t> parse_cubelike_conn(const std::string& spec, std::size_t n,
                                               std::uint64_t seed) {
    if (spec.rfind("random:", 0) == 0) {
        std::size_t t = tpc::detail::parse_count(std::string_view(spec).substr(7), "random:t");
        return tpc::random_spanning_set(n, t, seed);
    }
    std::vector<std::uint64_t> s;
    for (const std::string& tok : split_commas(spec)) {
        if (tok.size() != n || tok.find_first_not_of("01") != std::string::npos)
            tpc::fail(tpc::errc::invalid_spec,
                      "connection vector '" + tok + "' is not a length-" + std::to_string(n) +
                          " bit-string");
        std::uint64_t v = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (tok[j] == '1') v |= std::uint64_t{1} << j;
        s.push_back(v);
    }
    return s;
}

json report_json(const tpc::NecessityReport& rep) {
    json j;
    j["condition"] = rep.condition;
    j["holds"] = rep.holds;
    j["conclusion"] = rep.conclusion;
    j["quantities"] = rep.quantities;
    return j;
}

int run_verify(const CommonFlags& common, const std::string& group_spec,
               const std::string& conn_csv, const std::string& code_csv, bool crosscheck) {
    auto g = load_group(group_spec, common.check_associativity);
    tpc::VertexSet s = tpc::parse_element_set(*g, conn_csv);
    tpc::CayleyGraph gr = tpc::build_cayley(g, s);
    tpc::VertexSet c = tpc::parse_element_set(*g, code_csv);

    tpc::Verdict v = tpc::verify_tpc(gr, c);
    json out;
    out["ok"] = v.ok;
    if (!v.ok) out["witness"] = v.witness;

    if (crosscheck) {
        // Every characterization whose preconditions the candidate meets must
        // agree with the direct neighborhood count.
        json cc;
        cc["matching"] = tpc::check_matching_structure(gr, c).ok;
        try {
            cc["algebraic"] = tpc::check_algebraic_condition(*g, s, c).ok;
        } catch (const tpc::error& e) {
            if (e.kind() != tpc::errc::code_not_conjugation_closed) throw;
        }
        if (g->is_abelian()) cc["abelian"] = tpc::check_abelian_condition(*g, s, c).ok;
        if (v.ok) {
            tpc::TranslateReport tr = tpc::check_translates(gr, c);
            cc["translates"] = tr.right_translates_are_codes.ok &&
                               tr.left_translates_partition.ok &&
                               (!tr.conjugation_applicable || tr.right_translates_partition.ok);
        }
        for (const auto& [name, value] : cc.items())
            if (value.get<bool>() != v.ok)
                tpc::fail(tpc::errc::internal_invariant_violated,
                          "crosscheck " + name + " disagrees with direct verification");
        cc["agreed"] = true;
        out["crosscheck"] = cc;
    }

    emit_json(out, common.output);
    return v.ok ? 0 : 2;
}

int run_search(const CommonFlags& common, const std::string& group_spec,
               const std::string& conn_csv, const std::string& mode, std::uint64_t limit,
               bool limit_given, bool canonical, bool partition) {
    auto g = load_group(group_spec, common.check_associativity);
    tpc::VertexSet s = tpc::parse_element_set(*g, conn_csv);
    tpc::CayleyGraph gr = tpc::build_cayley(g, s);

    json out;
    json sols = json::array();
    if (partition) {
        auto parts = tpc::find_tpc_partition(gr);
        if (parts)
            for (const tpc::VertexSet& p : *parts) sols.push_back(set_json(p));
        out["count"] = parts ? parts->size() : 0;
        out["exhausted"] = true;
    } else {
        tpc::SearchOptions opt;
        opt.mode = mode == "first"  ? tpc::SearchMode::first
                   : mode == "count" ? tpc::SearchMode::count
                                     : tpc::SearchMode::all;
        if (limit_given) opt.limit = limit;
        opt.canonical = canonical;
        opt.threads = resolve_threads(common.threads);
        tpc::SearchResult res = tpc::find_tpcs(gr, opt);
        for (const tpc::VertexSet& c : res.solutions) sols.push_back(set_json(c));
        out["count"] = res.count;
        out["exhausted"] = res.exhausted;
    }
    out["solutions"] = std::move(sols);
    emit_json(out, common.output);
    return 0;
}

int run_cubelike(const CommonFlags& common, std::size_t n, const std::string& conn_spec,
                 const std::string& matrix_csv) {
    std::vector<std::uint64_t> s = parse_cubelike_conn(conn_spec, n, common.seed);

    tpc::LinearCode code;
    if (!matrix_csv.empty()) {
        // check-matrix import: take M as given, materialize its kernel, and
        // verify against S instead of constructing.
        if (n > tpc::max_materialized_dimension)
            tpc::fail(tpc::errc::size_guard_exceeded, "--matrix import needs n <= 20");
        tpc::GF2Matrix m = tpc::GF2Matrix::from_strings(split_commas(matrix_csv));
        if (m.rows != n)
            tpc::fail(tpc::errc::dimension_mismatch, "check matrix must have n rows");
        if (tpc::gf2_rank(m) != m.cols)
            tpc::fail(tpc::errc::invalid_spec, "check matrix must have full column rank");
        code.dimension = n;
        code.check_matrix = m;
        code.codeword_count_log2 = n - m.cols;
        tpc::VertexSet kernel(std::size_t{1} << n);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            bool in_kernel = true;
            for (std::size_t j = 0; j < m.cols && in_kernel; ++j) {
                bool bit = false;
                for (std::size_t r = 0; r < n; ++r) bit ^= ((x >> r) & 1) && m.get(r, j);
                in_kernel = !bit;
            }
            if (in_kernel) kernel.add(x);
        }
        code.codewords = std::move(kernel);
        std::string witness;
        if (!tpc::verify_cubelike_tpc(n, s, *code.codewords, &witness)) {
            json err;
            err["error"] = "check matrix kernel is not a total perfect code";
            err["witness"] = witness;
            emit_json(err, common.output);
            return 2;
        }
    } else {
        code = tpc::construct_cubelike_tpc(n, s, common.seed);
    }

    json out;
    out["M"] = code.check_matrix.to_strings();
    json conn = json::array();
    for (std::uint64_t u : s) conn.push_back(bit_string(u, n));
    out["S"] = std::move(conn);
    if (code.codewords) {
        json words = json::array();
        code.codewords->for_each([&](std::size_t x) { words.push_back(bit_string(x, n)); });
        out["code"] = std::move(words);
        json cosets = json::array();
        for (const tpc::VertexSet& coset : tpc::coset_family(code, s)) {
            json cs = json::array();
            coset.for_each([&](std::size_t x) { cs.push_back(bit_string(x, n)); });
            cosets.push_back(std::move(cs));
        }
        out["cosets"] = std::move(cosets);
    } else {
        out["code"] = nullptr;
        out["cosets"] = nullptr;
    }
    emit_json(out, common.output);
    return 0;
}

int run_report(const CommonFlags& common, const std::string& group_spec,
               const std::string& conn_csv, const std::string& subgroup_csv,
               bool subgroup_given) {
    auto g = load_group(group_spec, common.check_associativity);
    tpc::VertexSet s = tpc::parse_element_set(*g, conn_csv);
    tpc::CayleyGraph gr = tpc::build_cayley(g, s);

    std::vector<tpc::NecessityReport> reps;
    reps.push_back(tpc::divisibility_report(gr));
    reps.push_back(tpc::zero_eigenvalue_report(gr));
    if (gr.conn.conjugation_closed) reps.push_back(tpc::nec_a_report(*g, s));
    if (g->is_abelian()) reps.push_back(tpc::abelian_spectrum_report(*g, s));
    if (subgroup_given) {
        tpc::VertexSet h = tpc::parse_element_set(*g, subgroup_csv);
        tpc::NecessityReport rep = tpc::nec_b_report(*g, s, h);
        rep.quantities["subgroup"] = join_indices(h);
        reps.push_back(std::move(rep));
    } else if (g->order <= 512) {
        for (const tpc::VertexSet& h : tpc::enumerate_report_subgroups(*g)) {
            tpc::NecessityReport rep = tpc::nec_b_report(*g, s, h);
            rep.quantities["subgroup"] = join_indices(h);
            reps.push_back(std::move(rep));
        }
    }

    bool impossible = false;
    json arr = json::array();
    for (const tpc::NecessityReport& rep : reps) {
        impossible = impossible || rep.conclusion == "tpc-impossible";
        arr.push_back(report_json(rep));
    }
    emit_json(arr, common.output);
    return impossible ? 2 : 0;
}

int run_export(const CommonFlags& common, const std::string& group_spec,
               const std::string& conn_csv, bool conn_given, const std::string& format) {
    auto g = load_group(group_spec, common.check_associativity);
    if (format == "group") {
        emit_json(tpc::group_json(*g), common.output);
        return 0;
    }
    if (!conn_given)
        tpc::fail(tpc::errc::invalid_spec, "export --format " + format + " needs --conn");
    tpc::CayleyGraph gr = tpc::build_cayley(g, tpc::parse_element_set(*g, conn_csv));
    if (format == "dot")
        emit(tpc::to_dot(gr), common.output);
    else
        emit_json(tpc::graph_json(gr), common.output);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"total perfect codes in Cayley graphs"};
    app.require_subcommand(1);
    CommonFlags common;

    std::string group_spec, conn_csv, code_csv, subgroup_csv, matrix_csv;
    std::string mode = "all", format = "json";
    std::uint64_t limit = 0;
    std::size_t cube_n = 0;
    bool crosscheck = false, canonical = false, partition = false;

    CLI::App* verify = app.add_subcommand("verify", "check one candidate code");
    verify->add_option("--group", group_spec, "group spec, e.g. cyclic:18")->required();
    verify->add_option("--conn", conn_csv, "connection set elements")->required();
    verify->add_option("--code", code_csv, "candidate code elements")->required();
    verify->add_flag("--crosscheck", crosscheck,
                     "also run every applicable characterization and compare");
    add_common(verify, common);

    CLI::App* search = app.add_subcommand("search", "enumerate codes by exact cover");
    search->add_option("--group", group_spec, "group spec")->required();
    search->add_option("--conn", conn_csv, "connection set elements")->required();
    search->add_option("--mode", mode, "first | all | count (default all)")
        ->check(CLI::IsMember({"first", "all", "count"}));
    CLI::Option* limit_opt = search->add_option("--limit", limit, "cap stored solutions");
    search->add_flag("--canonical", canonical, "one representative per translation class");
    search->add_flag("--partition", partition,
                     "find a partition of the vertices into codes instead");
    add_common(search, common);

    CLI::App* cubelike = app.add_subcommand("cubelike", "linear code in Cay(Z_2^n, S)");
    cubelike->add_option("--n", cube_n, "ambient dimension n")->required();
    cubelike->add_option("--conn", conn_csv, "bit-string vectors or random:t")->required();
    cubelike->add_option("--matrix", matrix_csv,
                         "import a check matrix (comma-separated bit-string rows) "
                         "instead of constructing one");
    add_common(cubelike, common);

    CLI::App* report = app.add_subcommand("report", "necessary-condition reports");
    report->add_option("--group", group_spec, "group spec")->required();
    report->add_option("--conn", conn_csv, "connection set elements")->required();
    CLI::Option* subgroup_opt =
        report->add_option("--subgroup", subgroup_csv, "coset-quotient test subgroup");
    add_common(report, common);

    CLI::App* exp = app.add_subcommand("export", "graph or group serialization");
    exp->add_option("--group", group_spec, "group spec")->required();
    CLI::Option* conn_opt = exp->add_option("--conn", conn_csv, "connection set elements");
    exp->add_option("--format", format, "dot | json | group (default json)")
        ->check(CLI::IsMember({"dot", "json", "group"}));
    add_common(exp, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (verify->parsed())
            return run_verify(common, group_spec, conn_csv, code_csv, crosscheck);
        if (search->parsed())
            return run_search(common, group_spec, conn_csv, mode, limit,
                              limit_opt->count() > 0, canonical, partition);
        if (cubelike->parsed()) return run_cubelike(common, cube_n, conn_csv, matrix_csv);
        if (report->parsed())
            return run_report(common, group_spec, conn_csv, subgroup_csv,
                              subgroup_opt->count() > 0);
        if (exp->parsed())
            return run_export(common, group_spec, conn_csv, conn_opt->count() > 0, format);
    } catch (const tpc::error& e) {
        if (e.kind() == tpc::errc::construction_exhausted) {
            json err;
            err["error"] = e.what();
            emit_json(err, common.output);
            return 2;
        }
        std::cerr << "tpc: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "tpc: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
