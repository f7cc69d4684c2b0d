#include "bezred/cli.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bezred/io.hpp"

namespace bezred {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

long long limit_from_env() {
    const char* v = std::getenv("BEZRED_LIMIT");
    if (!v || !*v) return 1000;
    std::string s(v);
    size_t used = 0;
    long long x = 0;
    try {
        x = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw parse_error("BEZRED_LIMIT must be a positive integer, got \"" + s + "\"");
    }
    if (used != s.size() || x < 1)
        throw parse_error("BEZRED_LIMIT must be a positive integer, got \"" + s + "\"");
    return x;
}

StrategyKind strategy_kind_from_name(const std::string& name) {
    std::string n;
    for (char c : name)
        if (c != '-' && c != '_') n.push_back(static_cast<char>(std::tolower(
            static_cast<unsigned char>(c))));
    if (n == "finitebruteforce") return StrategyKind::finite_brute_force;
    if (n == "integeralmostsr1") return StrategyKind::integer_almost_sr1;
    if (n == "polynomialadequate") return StrategyKind::polynomial_adequate;
    if (n == "productcomponentwise") return StrategyKind::product_componentwise;
    if (n == "boundedsearch") return StrategyKind::bounded_search;
    throw parse_error("unknown strategy \"" + name +
                      "\"; expected auto, finite-brute-force, integer-almost-sr1, "
                      "polynomial-adequate, product-componentwise, or bounded-search");
}

WitnessStrategy make_strategy(const RingPtr& ring, const std::string& name,
                              long long limit) {
    if (limit < 1) throw parse_error("--limit must be >= 1");
    std::string n;
    for (char c : name) n.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (name.empty() || n == "auto") return WitnessStrategy::auto_for(ring, limit);
    WitnessStrategy s;
    s.kind = strategy_kind_from_name(name);
    s.limit = limit;
    return s;
}

std::string fmt(const Elem& e) { return e.ring()->format(e); }

struct Ctx {
    std::string ring_spec, input_path, strategy_name;
    std::string format = "json";
    long long seed = 0;
    long long limit = 1000;
    bool limit_given = false;
    bool ge_only = false;
    const std::function<std::string()>* read_stdin = nullptr;

    std::string input_text() const {
        if (!input_path.empty()) return slurp_file(input_path);
        if (read_stdin && *read_stdin) return (*read_stdin)();
        return "";
    }
};

void text_matrix(std::ostringstream& os, const Matrix& m) {
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << fmt(m.at(i, j));
        os << "\n";
    }
}

int cmd_reduce(const Ctx& ctx, std::string& out) {
    RingPtr ring = parse_ring(ctx.ring_spec);
    Matrix m = parse_matrix(ring, ctx.input_text());
    WitnessStrategy strat = make_strategy(ring, ctx.strategy_name, ctx.limit);
    Certificate cert = (ctx.ge_only && m.rows() == 2 && m.cols() == 2)
                           ? ge2_reduce(m, strat)
                           : diagonal_reduce(m, strat);
    Verdict v = verify_certificate(m, cert);
    if (!v.ok()) throw internal_error("emitted certificate failed verification");
    if (ctx.format == "json") {
        ordered_json j = certificate_to_json(cert);
        j["verified"] = true;
        out = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "ring: " << ring->spec_string() << "\n";
        os << "diag:";
        for (const Elem& d : cert.diag) os << " " << fmt(d);
        os << "\n";
        os << "left_ops: " << cert.left_ops.size() << "\n";
        os << "Q:\n";
        text_matrix(os, cert.q);
        os << "verified: true\n";
        out = os.str();
    }
    return 0;
}

int cmd_verify(const Ctx& ctx, std::string& out) {
    std::string text = ctx.input_text();
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("matrix") ||
        !j.contains("certificate"))
        throw parse_error(
            "verify expects a JSON object {\"matrix\": ..., \"certificate\": ...}");
    Certificate cert = certificate_from_json(j["certificate"]);
    if (!ctx.ring_spec.empty()) {
        RingPtr named = parse_ring(ctx.ring_spec);
        if (named->spec_string() != cert.ring->spec_string())
            throw precondition_error("--ring " + named->spec_string() +
                                     " does not match the certificate ring " +
                                     cert.ring->spec_string());
    }
    Matrix m = matrix_from_json(cert.ring, j["matrix"]);
    Verdict v = verify_certificate(m, cert);
    if (ctx.format == "json") {
        out = verdict_to_json(v).dump(2) + "\n";
    } else {
        std::ostringstream os;
        ordered_json vj = verdict_to_json(v);
        for (auto it = vj.begin(); it != vj.end(); ++it)
            os << it.key() << ": " << (it.value().get<bool>() ? "true" : "false") << "\n";
        out = os.str();
    }
    return v.ok() ? 0 : 4;
}

int cmd_probe(const Ctx& ctx, std::string& out) {
    RingPtr ring = parse_ring(ctx.ring_spec);
    long long cap = ctx.limit_given ? ctx.limit : 64;
    if (cap < 1) throw parse_error("--limit must be >= 1");
    PropertyReport r = ring_property_report(ring, cap);
    if (ctx.format == "json") {
        out = report_to_json(r).dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "ring: " << r.ring << "\n";
        auto line = [&](const char* name, bool val, const std::optional<std::string>& cx) {
            os << name << ": " << (val ? "true" : "false");
            if (cx) os << "  (counterexample: " << *cx << ")";
            os << "\n";
        };
        line("bezout", r.bezout, r.bezout_counterexample);
        line("hermite", r.hermite, r.hermite_counterexample);
        line("sr1", r.sr1, r.sr1_counterexample);
        line("all_adequate", r.all_adequate, r.all_adequate_counterexample);
        line("clean", r.clean, r.clean_counterexample);
        line("edr_2x2", r.edr_2x2, r.edr_2x2_counterexample);
        out = os.str();
    }
    return 0;
}

int cmd_witness(const std::string& kind, const std::vector<std::string>& raw,
                const Ctx& ctx, std::string& out) {
    RingPtr ring = parse_ring(ctx.ring_spec);
    WitnessStrategy strat = make_strategy(ring, ctx.strategy_name, ctx.limit);
    auto need = [&](size_t n, const char* usage) {
        if (raw.size() != n)
            throw parse_error("witness " + kind + " takes " + usage);
    };
    std::vector<Elem> e;
    e.reserve(raw.size());
    ordered_json j;
    j["kind"] = kind;
    j["ring"] = ring->spec_string();
    std::ostringstream txt;
    std::string identity;
    if (kind == "sr1") {
        need(2, "2 element arguments: a b");
        for (const auto& t : raw) e.push_back(parse_elem(ring, t));
        Elem y = sr1_witness(e[0], e[1], strat);
        Elem u = e[0] + e[1] * y;
        j["a"] = elem_to_json(e[0]);
        j["b"] = elem_to_json(e[1]);
        j["y"] = elem_to_json(y);
        identity = fmt(e[0]) + " + " + fmt(e[1]) + "*" + fmt(y) + " = " + fmt(u) +
                   ", a unit";
        txt << "y = " << fmt(y) << "\n";
    } else if (kind == "locally-stable") {
        need(2, "2 element arguments: a b");
        for (const auto& t : raw) e.push_back(parse_elem(ring, t));
        Elem t = locally_stable_witness(e[0], e[1], strat);
        Elem v = e[0] + e[1] * t;
        j["a"] = elem_to_json(e[0]);
        j["b"] = elem_to_json(e[1]);
        j["t"] = elem_to_json(t);
        identity = "R/(" + fmt(e[0]) + " + " + fmt(e[1]) + "*" + fmt(t) + ")R = R/(" +
                   fmt(v) + ")R has stable range 1";
        txt << "t = " << fmt(t) << "\n";
    } else if (kind == "sr2") {
        need(3, "3 element arguments: a b c");
        for (const auto& t : raw) e.push_back(parse_elem(ring, t));
        auto [y, z] = sr2_witness(e[0], e[1], e[2], strat);
        Elem u1 = e[0] + e[2] * y;
        Elem u2 = e[1] + e[2] * z;
        j["a"] = elem_to_json(e[0]);
        j["b"] = elem_to_json(e[1]);
        j["c"] = elem_to_json(e[2]);
        j["y"] = elem_to_json(y);
        j["z"] = elem_to_json(z);
        identity = "(" + fmt(u1) + ")R + (" + fmt(u2) + ")R = R";
        txt << "y = " << fmt(y) << "\n";
        txt << "z = " << fmt(z) << "\n";
    } else if (kind == "adequate") {
        need(2, "2 element arguments: c a");
        Elem c = parse_elem(ring, raw[0]);
        Elem a = parse_elem(ring, raw[1]);
        AdequatePair p = adequate_decompose(a, c, strat);
        j["c"] = elem_to_json(c);
        j["a"] = elem_to_json(a);
        j["r"] = elem_to_json(p.r);
        j["s"] = elem_to_json(p.s);
        identity = fmt(c) + " = (" + fmt(p.r) + ")*(" + fmt(p.s) + "), (" + fmt(p.r) +
                   ")R + (" + fmt(a) +
                   ")R = R, and no non-unit divisor of " + fmt(p.s) +
                   " is comaximal with " + fmt(a);
        txt << "r = " << fmt(p.r) << "\n";
        txt << "s = " << fmt(p.s) << "\n";
    } else if (kind == "gh") {
        need(3, "3 element arguments: a1 a2 a3");
        for (const auto& t : raw) e.push_back(parse_elem(ring, t));
        auto [p, q] = gh_witness(e[0], e[1], e[2], strat);
        Elem u1 = p * e[0] + q * e[1];
        Elem u2 = q * e[2];
        j["a1"] = elem_to_json(e[0]);
        j["a2"] = elem_to_json(e[1]);
        j["a3"] = elem_to_json(e[2]);
        j["p"] = elem_to_json(p);
        j["q"] = elem_to_json(q);
        identity = "(" + fmt(p) + "*" + fmt(e[0]) + " + " + fmt(q) + "*" + fmt(e[1]) +
                   ")R + (" + fmt(q) + "*" + fmt(e[2]) + ")R = (" + fmt(u1) + ")R + (" +
                   fmt(u2) + ")R = R";
        txt << "p = " << fmt(p) << "\n";
        txt << "q = " << fmt(q) << "\n";
    } else {
        throw parse_error("unknown witness kind \"" + kind +
                          "\"; expected sr1, sr2, locally-stable, adequate, or gh");
    }
    if (ctx.format == "json") {
        j["identity"] = identity;
        out = j.dump(2) + "\n";
    } else {
        txt << "identity: " << identity << "\n";
        out = txt.str();
    }
    return 0;
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args,
                  const std::function<std::string()>& read_stdin) {
    CliResult res;
    Ctx ctx;
    ctx.read_stdin = &read_stdin;
    try {
        ctx.limit = limit_from_env();
    } catch (const parse_error& e) {
        res.exit_code = 1;
        res.error = std::string("error: ") + e.what() + "\n";
        return res;
    }

    CLI::App app{"Diagonal reduction over commutative Bezout rings, with replayable "
                 "transvection certificates",
                 "bezred"};
    app.require_subcommand(1);

    std::string witness_kind;
    std::vector<std::string> witness_args;
    std::vector<CLI::Option*> limit_opts;

    auto add_common = [&](CLI::App* sub, bool with_input, bool ring_required) {
        auto* ring_opt = sub->add_option(
            "--ring", ctx.ring_spec,
            "ring spec: Z | Zmod(n) | GF(p)[x] | Prod(spec,spec) | Quot(spec,elem)");
        if (ring_required) ring_opt->required();
        if (with_input)
            sub->add_option("--input", ctx.input_path,
                            "input file path (reads stdin when omitted)");
        sub->add_option("--strategy", ctx.strategy_name,
                        "witness strategy: auto (default), finite-brute-force, "
                        "integer-almost-sr1, polynomial-adequate, "
                        "product-componentwise, bounded-search");
        sub->add_option("--format", ctx.format, "output format (default json)")
            ->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--seed", ctx.seed,
                        "accepted for scripting stability; every command is "
                        "deterministic");
        limit_opts.push_back(sub->add_option(
            "--limit", ctx.limit,
            "search bound (default from BEZRED_LIMIT, else 1000); for probe, the "
            "ring-size cap (default 64)"));
    };

    CLI::App* sreduce = app.add_subcommand(
        "reduce", "reduce a matrix to a certified diagonal form");
    add_common(sreduce, true, true);
    sreduce->add_flag("--ge-only", ctx.ge_only,
                      "use the 2x2 content-extraction path when the input is 2x2");

    CLI::App* sverify = app.add_subcommand(
        "verify", "check a certificate against a matrix (bundle "
                  "{\"matrix\":...,\"certificate\":...})");
    add_common(sverify, true, false);

    CLI::App* sprobe = app.add_subcommand(
        "probe", "exhaustive property report for a finite ring");
    add_common(sprobe, false, true);

    CLI::App* switness = app.add_subcommand("witness", "compute a stability witness");
    add_common(switness, false, true);
    switness->add_option("kind", witness_kind, "sr1 | sr2 | locally-stable | adequate | gh")
        ->required();
    // Three separate single-value positionals: CLI11 comma-splits bracketed
    // values handed to one vector positional, which would tear apart
    // polynomial literals like [0,1].
    std::array<std::string, 3> witness_elem_text;
    std::array<CLI::Option*, 3> witness_elem_opts{};
    witness_elem_opts[0] = switness->add_option(
        "elem1", witness_elem_text[0],
        "element literal (use -- before negative numbers)");
    witness_elem_opts[1] = switness->add_option("elem2", witness_elem_text[1],
                                                "element literal");
    witness_elem_opts[2] = switness->add_option("elem3", witness_elem_text[2],
                                                "element literal");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        int code = app.exit(e, out, err);
        res.output = out.str();
        res.error = err.str();
        res.exit_code = code == 0 ? 0 : 1;
        return res;
    }
    for (CLI::Option* o : limit_opts)
        if (o->count() > 0) ctx.limit_given = true;
    for (size_t k = 0; k < witness_elem_opts.size(); ++k)
        if (witness_elem_opts[k]->count() > 0)
            witness_args.push_back(witness_elem_text[k]);

    try {
        if (sreduce->parsed()) {
            res.exit_code = cmd_reduce(ctx, res.output);
        } else if (sverify->parsed()) {
            res.exit_code = cmd_verify(ctx, res.output);
        } else if (sprobe->parsed()) {
            res.exit_code = cmd_probe(ctx, res.output);
        } else {
            res.exit_code = cmd_witness(witness_kind, witness_args, ctx, res.output);
        }
    } catch (const parse_error& e) {
        res.exit_code = 1;
        res.error = std::string("error: ") + e.what() + "\n";
    } catch (const precondition_error& e) {
        res.exit_code = 2;
        res.error = std::string("error: ") + e.what() + "\n";
    } catch (const witness_not_found& e) {
        res.exit_code = 3;
        res.error = std::string("error: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        res.exit_code = 70;
        res.error = std::string("internal error: ") + e.what() + "\n";
    }
    return res;
}

}  // namespace bezred
