// apds: build, query and inspect compressed sequences, permutations,
// functions and text indexes stored in APDS containers.
//
// Exit codes: 0 ok, 1 selfcheck failure, 2 input or usage error, 3 not found.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "apds/container.hpp"
#include "apds/dsets.hpp"
#include "apds/error.hpp"
#include "apds/io.hpp"
#include "apds/selfcheck.hpp"
#include "apds/stats.hpp"

using namespace apds;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kInputError = 2, kNotFound = 3;

struct BuildArgs {
    std::string type;
    std::string input;
    std::string output;
    std::string variant = "i";
    std::string runs_kind = "interleaved-general";
    std::string mode = "direct";
    std::string format;  // empty: bytes for seq/index, ints otherwise
    double epsilon = 0.5;
    uint64_t power_step = 0;  // 0: ceil(lg n)
    bool remap = false;
    uint64_t k = 0;
    uint64_t sample_rate = 0;
};

struct QueryArgs {
    std::string structure;
    std::string op;
    std::string symbol;
    std::vector<uint64_t> pos;
    std::vector<uint64_t> rank;
    int64_t k = 0;
    std::string pattern;
    std::string range;
};

json sections_json(const std::vector<SpaceSection>& sections) {
    json a = json::array();
    for (const auto& s : sections) a.push_back({{"name", s.name}, {"bits", s.bits}});
    return a;
}

uint64_t lg_ceil(uint64_t n) { return n <= 1 ? 1 : static_cast<uint64_t>(std::ceil(std::log2(static_cast<double>(n)))); }

// byte symbols are shown as characters when printable
std::string show_symbol(uint64_t v, InputFormat format) {
    if (format == InputFormat::kInts) return std::to_string(v);
    if (v >= 0x21 && v < 0x7f && v != '\\') return std::string(1, static_cast<char>(v));
    if (v == '\\') return "\\\\";
    return "\\" + std::to_string(v);
}

Stored build_structure(const BuildArgs& a, json& summary) {
    const bool text_like = a.type == "seq" || a.type == "index";
    InputFormat format = a.format.empty() ? (text_like ? InputFormat::kBytes : InputFormat::kInts) : parse_input_format(a.format);
    if (a.type == "perm" && format != InputFormat::kInts) throw ParameterError("permutations are read as ints");
    Stored s;
    s.format = format;
    std::vector<uint64_t> v = read_symbols(a.input, format);
    summary["type"] = a.type;
    summary["format"] = input_format_name(format);
    summary["n"] = v.size();
    if (a.type == "seq") {
        if (format == InputFormat::kBytes)
            for (auto& x : v) ++x;
        if (a.variant != "i" && a.variant != "ii") throw ParameterError("variant must be i or ii");
        ApOptions o;
        o.general_alphabet = true;
        o.variant = a.variant == "i" ? Variant::kFastSelect : Variant::kFastAccess;
        ApSequence q(v, o);
        summary["sigma"] = q.alphabet_size();
        summary["variant"] = a.variant;
        summary["h0_bits"] = q.space_report().h0_bits;
        summary["size_in_bits"] = q.size_in_bits();
        s.value = std::move(q);
    } else if (a.type == "perm") {
        PermOptions o;
        o.kind = parse_run_kind(a.runs_kind);
        o.epsilon = a.epsilon;
        o.power_step = a.power_step ? a.power_step : lg_ceil(v.size());
        RunPermutation p(v, o);
        summary["runs_kind"] = run_kind_name(p.kind());
        summary["rho"] = p.rho();
        summary["h_runs"] = p.runs_entropy();
        summary["power_step"] = p.power_step();
        summary["size_in_bits"] = p.size_in_bits();
        s.value = std::move(p);
    } else if (a.type == "func") {
        FunctionOptions o;
        o.mode = parse_function_mode(a.mode);
        o.remap = a.remap;
        o.epsilon = a.epsilon;
        CompressedFunction f(v, o);
        summary["sigma"] = f.sigma();
        summary["mode"] = function_mode_name(f.mode());
        if (f.mode() != FunctionMode::kDirect) {
            summary["rho"] = f.rho();
            summary["h_runs"] = f.runs_entropy();
        }
        summary["size_in_bits"] = f.size_in_bits();
        s.value = std::move(f);
    } else if (a.type == "index") {
        FmOptions o;
        o.k_context = a.k;
        o.sample_rate = a.sample_rate;
        FmIndex x = format == InputFormat::kBytes ? FmIndex(std::string(v.begin(), v.end()), o) : FmIndex(v, o);
        summary["sigma"] = x.alphabet_size();
        summary["k_context"] = x.k_context();
        summary["partitions"] = x.partitions();
        summary["sample_rate"] = x.sample_rate();
        summary["size_in_bits"] = x.size_in_bits();
        s.value = std::move(x);
    } else {
        throw ParameterError("unknown type '" + a.type + "'");
    }
    return s;
}

int cmd_build(const BuildArgs& a) {
    json summary;
    const Stored s = build_structure(a, summary);
    const std::string bytes = to_container(s).encode();
    write_file(a.output, bytes);
    summary["serialized_bits"] = bytes.size() * 8;
    std::cout << summary.dump(2) << "\n";
    return kOk;
}

Stored load_structure(const std::string& path) { return from_container(Container::decode(read_file(path))); }

[[noreturn]] void wrong_op(const std::string& op, StructureKind kind) {
    throw ParameterError("op '" + op + "' does not apply to " + std::string(structure_kind_name(kind)) + " structures");
}

const std::vector<uint64_t>& need(const std::vector<uint64_t>& v, const char* flag) {
    if (v.empty()) throw ParameterError(std::string("missing ") + flag);
    return v;
}

const std::string& need(const std::string& v, const char* flag) {
    if (v.empty()) throw ParameterError(std::string("missing ") + flag);
    return v;
}

std::pair<uint64_t, uint64_t> parse_range(const std::string& r) {
    const auto colon = r.find(':');
    if (colon == std::string::npos) throw ParameterError("range must be L:R");
    const auto l = parse_ints(r.substr(0, colon)), h = parse_ints(r.substr(colon + 1));
    if (l.size() != 1 || h.size() != 1) throw ParameterError("range must be L:R");
    return {l[0], h[0]};
}

void query_seq(const ApSequence& q, const QueryArgs& a, InputFormat format) {
    const uint64_t shift = format == InputFormat::kBytes ? 1 : 0;
    auto symbol = [&] { return parse_symbol(need(a.symbol, "--symbol"), format) + shift; };
    if (a.op == "access") {
        for (uint64_t i : need(a.pos, "--pos")) std::cout << show_symbol(q.access(i) - shift, format) << "\n";
    } else if (a.op == "rank") {
        const uint64_t c = symbol();
        for (uint64_t i : need(a.pos, "--pos")) std::cout << q.rank(c, i) << "\n";
    } else if (a.op == "select") {
        const uint64_t c = symbol();
        for (uint64_t j : need(a.rank, "--rank")) {
            if (j < 1 || j > q.count(c))
                throw NotFound("symbol " + show_symbol(c - shift, format) + " has no occurrence " + std::to_string(j));
            std::cout << q.select(c, j) << "\n";
        }
    } else if (a.op == "count") {
        std::cout << q.count(symbol()) << "\n";
    } else {
        wrong_op(a.op, StructureKind::kSeq);
    }
}

void query_perm(const RunPermutation& p, const QueryArgs& a) {
    if (a.op == "apply") {
        for (uint64_t i : need(a.pos, "--pos")) std::cout << p.apply(i) << "\n";
    } else if (a.op == "inverse") {
        for (uint64_t i : need(a.pos, "--pos")) std::cout << p.inverse(i) << "\n";
    } else if (a.op == "power") {
        for (uint64_t i : need(a.pos, "--pos")) std::cout << p.power(i, a.k) << "\n";
    } else {
        wrong_op(a.op, StructureKind::kPerm);
    }
}

void query_func(const CompressedFunction& f, const QueryArgs& a) {
    auto value = [&] { return parse_symbol(need(a.symbol, "--symbol"), InputFormat::kInts); };
    if (a.op == "eval") {
        for (uint64_t i : need(a.pos, "--pos")) std::cout << f.eval(i) << "\n";
    } else if (a.op == "preimage") {
        const uint64_t v = value();
        if (a.rank.empty()) {
            for (uint64_t i : f.preimage(v, true)) std::cout << i << "\n";
        } else {
            for (uint64_t j : a.rank) std::cout << f.preimage_select(v, j) << "\n";
        }
    } else if (a.op == "count") {
        std::cout << f.preimage_size(value()) << "\n";
    } else {
        wrong_op(a.op, StructureKind::kFunc);
    }
}

void query_index(const FmIndex& x, const QueryArgs& a, InputFormat format) {
    if (a.op == "count") {
        std::cout << x.count(parse_pattern(need(a.pattern, "--pattern"), format)) << "\n";
    } else if (a.op == "locate") {
        for (uint64_t i : x.locate(parse_pattern(need(a.pattern, "--pattern"), format))) std::cout << i << "\n";
    } else if (a.op == "extract") {
        const auto [l, r] = parse_range(need(a.range, "--range"));
        if (format == InputFormat::kBytes) {
            std::cout << x.extract_text(l, r) << "\n";
        } else {
            const auto v = x.extract(l, r);
            for (size_t i = 0; i < v.size(); ++i) std::cout << (i ? " " : "") << v[i];
            std::cout << "\n";
        }
    } else {
        wrong_op(a.op, StructureKind::kIndex);
    }
}

int cmd_query(const QueryArgs& a) {
    const Stored s = load_structure(a.structure);
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ApSequence>) query_seq(x, a, s.format);
            if constexpr (std::is_same_v<T, RunPermutation>) query_perm(x, a);
            if constexpr (std::is_same_v<T, CompressedFunction>) query_func(x, a);
            if constexpr (std::is_same_v<T, FmIndex>) query_index(x, a, s.format);
        },
        s.value);
    return kOk;
}

int cmd_report(const std::string& path) {
    const std::string bytes = read_file(path);
    const Stored s = from_container(Container::decode(bytes));
    json j;
    j["kind"] = structure_kind_name(s.kind());
    j["format"] = input_format_name(s.format);
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            j["n"] = x.size();
            if constexpr (std::is_same_v<T, ApSequence>) {
                const SpaceReport r = x.space_report();
                j["sigma"] = r.sigma;
                j["h0_bits"] = r.h0_bits;
                j["partition_bits"] = r.partition_bits;
                j["bound_bits"] = r.bound_bits;
                j["total_bits"] = r.total_bits;
                j["sections"] = sections_json(r.sections);
            } else {
                if constexpr (std::is_same_v<T, RunPermutation>) {
                    j["runs_kind"] = run_kind_name(x.kind());
                    j["rho"] = x.rho();
                    j["h_runs"] = x.runs_entropy();
                }
                if constexpr (std::is_same_v<T, CompressedFunction>) {
                    j["sigma"] = x.sigma();
                    j["mode"] = function_mode_name(x.mode());
                }
                if constexpr (std::is_same_v<T, FmIndex>) {
                    j["sigma"] = x.alphabet_size();
                    j["k_context"] = x.k_context();
                    j["sample_rate"] = x.sample_rate();
                }
                j["total_bits"] = x.size_in_bits();
                j["sections"] = sections_json(x.sections());
            }
        },
        s.value);
    j["serialized_bits"] = bytes.size() * 8;
    std::cout << j.dump(2) << "\n";
    return kOk;
}

int cmd_stats(const std::string& input, uint64_t k, const std::string& format) {
    const auto v = read_symbols(input, parse_input_format(format));
    if (k >= v.size()) throw ParameterError("k must be smaller than n");
    std::cout << entropy_report(v, k).to_json() << "\n";
    return kOk;
}

int cmd_selfcheck(const SelfcheckOptions& o) {
    bool ok = true;
    for (const SuiteResult& r : run_selfcheck(o)) {
        std::cout << (r.ok() ? "pass " : "FAIL ") << r.name << " cases=" << r.cases << " checks=" << r.checks
                  << " failures=" << r.failures << "\n";
        if (!r.ok()) {
            std::cout << "  counterexample: " << r.counterexample << "\n";
            ok = false;
        }
    }
    return ok ? kOk : kCheckFailed;
}

int cmd_dsu(uint64_t n, double epsilon, const std::string& ops) {
    DisjointSetCollection c(n, epsilon);
    std::istringstream in(read_file(ops));
    std::string line;
    uint64_t lineno = 0;
    auto trace = [&](const RebuildEvent& e) {
        std::cout << "rebuild unions=" << e.unions << " sets=" << e.sets << " entropy=" << e.entropy
                  << " ids_bits=" << e.ids_bits_before << "->" << e.ids_bits_after << " payload_bits=" << e.payload_bits_before
                  << "->" << e.payload_bits_after << "\n";
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op) || op[0] == '#') continue;
        uint64_t i = 0, j = 0;
        const std::string where = "ops line " + std::to_string(lineno);
        if (op == "U") {
            if (!(ls >> i >> j)) throw InvalidInput(where + ": expected 'U i j'");
            const size_t before = c.trace().size();
            c.unite(i, j);
            for (size_t e = before; e < c.trace().size(); ++e) trace(c.trace()[e]);
        } else if (op == "F") {
            if (!(ls >> i)) throw InvalidInput(where + ": expected 'F i'");
            std::cout << c.find(i) << "\n";
        } else {
            throw InvalidInput(where + ": unknown op '" + op + "'");
        }
        std::string rest;
        if (ls >> rest) throw InvalidInput(where + ": trailing '" + rest + "'");
    }
    std::cout << "summary n=" << n << " sets=" << c.set_count() << " entropy=" << c.entropy()
              << " rebuilds=" << c.rebuild_count() << " ids_bits=" << c.ids_bits() << "\n";
    return kOk;
}

void add_build_options(CLI::App* cmd, BuildArgs& a, bool with_type) {
    if (with_type)
        cmd->add_option("--type", a.type, "seq|perm|func|index")->required()->check(CLI::IsMember({"seq", "perm", "func", "index"}));
    cmd->add_option("--input", a.input, "input file")->required();
    cmd->add_option("--output", a.output, "container to write")->required();
    cmd->add_option("--format", a.format, "bytes|ints");
    cmd->add_option("--k", a.k, "index: context length");
    cmd->add_option("--sample-rate", a.sample_rate, "index: sampling step (0 = default)");
    if (!with_type) return;
    cmd->add_option("--variant", a.variant, "seq: i (fast select) or ii (fast access)");
    cmd->add_option("--runs-kind", a.runs_kind, "perm: interleaved-general|interleaved-strict|contiguous-general|contiguous-strict");
    cmd->add_option("--epsilon", a.epsilon, "perm/func: predecessor branching exponent");
    cmd->add_option("--power-step", a.power_step, "perm: cycle sampling step (0 = ceil(lg n))");
    cmd->add_option("--mode", a.mode, "func: direct|runs-interleaved|runs-contiguous");
    cmd->add_flag("--remap", a.remap, "func: accept a non-surjective function");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compressed sequences, permutations, functions and text indexes"};
    app.require_subcommand(1);
    std::function<int()> action;

    BuildArgs build;
    auto* b = app.add_subcommand("build", "build a structure and write a container");
    add_build_options(b, build, true);
    b->callback([&] { action = [&] { return cmd_build(build); }; });

    QueryArgs query;
    auto* q = app.add_subcommand("query", "answer queries on a container");
    q->add_option("--structure", query.structure, "container file")->required();
    q->add_option("--op", query.op, "access|rank|select|count|apply|inverse|power|eval|preimage|locate|extract")->required();
    q->add_option("--symbol", query.symbol, "symbol or function value");
    q->add_option("--pos", query.pos, "1-based position (repeatable)");
    q->add_option("--rank", query.rank, "occurrence number for select/preimage (repeatable)");
    q->add_option("--k", query.k, "exponent for power (negative for inverse powers)");
    q->add_option("--pattern", query.pattern, "pattern: raw bytes with \\NNN escapes, or decimal symbols");
    q->add_option("--range", query.range, "L:R for extract");
    q->callback([&] { action = [&] { return cmd_query(query); }; });

    SelfcheckOptions check;
    auto* sc = app.add_subcommand("selfcheck", "run the property suites against naive oracles");
    sc->add_option("--seed", check.seed);
    sc->add_option("--iters", check.iters);
    sc->add_option("--max-n", check.max_n);
    sc->add_flag("--inject-fault", check.inject_fault, "test hook: make the sequence suite fail");
    sc->callback([&] { action = [&] { return cmd_selfcheck(check); }; });

    std::string stats_input, stats_format = "bytes";
    uint64_t stats_k = 0;
    auto* st = app.add_subcommand("stats", "entropy report of an input file");
    st->add_option("--input", stats_input)->required();
    st->add_option("--k", stats_k, "order of the empirical entropy hk");
    st->add_option("--format", stats_format, "bytes|ints");
    st->callback([&] { action = [&] { return cmd_stats(stats_input, stats_k, stats_format); }; });

    std::string report_path;
    auto* rp = app.add_subcommand("report", "space report of a container");
    rp->add_option("--structure", report_path)->required();
    rp->callback([&] { action = [&] { return cmd_report(report_path); }; });

    uint64_t dsu_n = 0;
    double dsu_eps = 0.1;
    std::string dsu_ops;
    auto* ds = app.add_subcommand("dsu", "run union/find operations from a file");
    ds->add_option("--n", dsu_n)->required();
    ds->add_option("--epsilon", dsu_eps);
    ds->add_option("--ops", dsu_ops, "lines 'U i j' or 'F i'")->required();
    ds->callback([&] { action = [&] { return cmd_dsu(dsu_n, dsu_eps, dsu_ops); }; });

    BuildArgs index_build;
    index_build.type = "index";
    QueryArgs index_query;
    auto* ix = app.add_subcommand("index", "self-index over a text");
    ix->require_subcommand(1);
    auto* ib = ix->add_subcommand("build", "build an index container");
    add_build_options(ib, index_build, false);
    ib->callback([&] { action = [&] { return cmd_build(index_build); }; });
    for (const char* op : {"count", "locate", "extract"}) {
        auto* sub = ix->add_subcommand(op);
        sub->add_option("--structure", index_query.structure)->required();
        if (std::string(op) == "extract")
            sub->add_option("--range", index_query.range, "L:R")->required();
        else
            sub->add_option("--pattern", index_query.pattern)->required();
        sub->callback([&, op] {
            index_query.op = op;
            action = [&] { return cmd_query(index_query); };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kInputError;
    }
    try {
        return action();
    } catch (const NotFound& e) {
        std::cerr << "not found: " << e.what() << "\n";
        return kNotFound;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
}
