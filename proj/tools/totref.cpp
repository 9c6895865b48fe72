// totref: command-line front end.
//
// exit codes: 0 all checks pass, 1 a check failed or was inconclusive,
// 2 usage or parse error, 3 a theorem hypothesis is not met.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "totref/io.hpp"
#include "totref/main_theorem.hpp"

using namespace totref;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2, kPrecondition = 3;

struct Options {
    std::string ring, x, y, a, b, source, target, module = "G", strategy = "hom-freeness", q;
    std::string format = "text", output;
    int degree = 8, i_max = 4, length = 6, n_max = 3;
    std::size_t budget = 1u << 16;
    bool unmet = false;
};

struct Outcome {
    Json report;
    std::string verdict;
};

std::size_t oracle_budget() {
    if (const char* env = std::getenv("TOTREF_MAX_CARRIER")) {
        try {
            return static_cast<std::size_t>(std::stoull(env));
        } catch (...) {
            throw ParseError("TOTREF_MAX_CARRIER must be a number");
        }
    }
    return 1u << 22;
}

/// Depth-first search for the first failing check; returns its path and the nearest paper_ref.
Json first_failure(const Json& rep, const std::string& ref, const std::string& path) {
    std::string here = rep.contains("paper_ref") ? rep["paper_ref"].get<std::string>() : ref;
    if (rep.contains("checks")) {
        for (const auto& c : rep["checks"]) {
            if (c["pass"].get<bool>()) continue;
            std::string p = path.empty() ? c["name"].get<std::string>() : path + " / " + c["name"].get<std::string>();
            if (c.contains("detail") && c["detail"].is_object()) {
                Json deeper = first_failure(c["detail"], here, p);
                if (!deeper.is_null()) return deeper;
            }
            return Json{{"paper_ref", here}, {"check", p}};
        }
    }
    for (const char* key : {"modules", "nonisomorphism", "hom_table"}) {
        if (!rep.contains(key)) continue;
        for (const auto& e : rep[key]) {
            for (const char* sub : {"certificate", "end_ring"})
                if (e.contains(sub)) {
                    Json deeper = first_failure(e[sub], here, path);
                    if (!deeper.is_null()) return deeper;
                }
            if (e.contains("pass") && e["pass"].is_boolean() && !e["pass"].get<bool>())
                return Json{{"paper_ref", e.value("paper_ref", here)}, {"check", e["modules"].dump()}};
        }
    }
    return nullptr;
}

void render_checks(std::ostream& os, const Json& rep, int indent) {
    if (!rep.contains("checks")) return;
    for (const auto& c : rep["checks"]) {
        std::string mark = c["pass"].get<bool>() ? "pass" : (c.value("inconclusive", false) ? "inconclusive" : "FAIL");
        os << std::string(static_cast<std::size_t>(indent), ' ') << "[" << mark << "] " << c["name"].get<std::string>() << "\n";
        if (c.contains("detail") && c["detail"].is_object()) render_checks(os, c["detail"], indent + 2);
    }
}

void render_text(std::ostream& os, const std::string& command, const Outcome& o) {
    const Json& r = o.report;
    os << command << ": " << o.verdict;
    if (r.contains("paper_ref")) os << " (" << r["paper_ref"].get<std::string>() << ")";
    if (r.contains("scope")) os << ", scope " << r["scope"].get<std::string>();
    os << "\n";
    if (r.contains("modules") && r["modules"].is_array()) {
        os << "modules:\n";
        for (const auto& m : r["modules"])
            os << "  " << m["label"].get<std::string>() << "  mu=" << m["mu"] << "  Fitt_1=" << m["fitting_1"].get<std::string>()
               << "  TR=" << m["totally_reflexive"].get<std::string>() << "  indecomposable=" << m["indecomposable"].get<std::string>()
               << "\n";
        os << "non-isomorphism:\n";
        for (const auto& e : r["nonisomorphism"])
            os << "  " << e["modules"][0].get<std::string>() << " vs " << e["modules"][1].get<std::string>() << "  "
               << (e["pass"].get<bool>() ? "pass" : "FAIL") << "  fitting " << e["fitting_cross_check"].get<std::string>() << "\n";
        os << "hom table:\n";
        for (const auto& e : r["hom_table"])
            os << "  " << e["hom"].get<std::string>() << " = " << e["isomorphic_to"].get<std::string>() << "  "
               << e["verdict"].get<std::string>() << "   [" << e["companion"]["hom"].get<std::string>() << " = "
               << e["companion"]["isomorphic_to"].get<std::string>() << "]\n";
        os << "summary: " << r["summary"].dump() << "\n";
        return;
    }
    render_checks(os, r, 2);
    if (r.contains("data") && !r["data"].empty()) os << "data: " << r["data"].dump() << "\n";
}

void write(const Options& opt, const std::string& text) {
    if (opt.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.output);
    if (!out) throw ParseError("cannot write " + opt.output);
    out << text;
}

int emit(const Options& opt, const std::string& command, const Json& input, const Outcome& o) {
    if (opt.format == "json") {
        Json doc{{"schema", 1}, {"command", command}, {"input", input}, {"verdict", o.verdict}};
        if (o.verdict != "pass") {
            Json f = first_failure(o.report, "", "");
            if (!f.is_null()) doc["first_failure"] = f;
        }
        doc["report"] = o.report;
        write(opt, doc.dump(2) + "\n");
    } else {
        std::ostringstream os;
        render_text(os, command, o);
        write(opt, os.str());
    }
    return o.verdict == "pass" ? kPass : kFail;
}

int emit_error(const Options& opt, const std::string& command, const std::string& kind, const std::string& what, int code) {
    if (opt.format == "json") {
        Json doc{{"schema", 1}, {"command", command}, {"error", Json{{"kind", kind}, {"message", what}, {"exit_code", code}}}};
        try {
            write(opt, doc.dump(2) + "\n");
        } catch (...) {
            std::cout << doc.dump(2) << "\n";
        }
    } else {
        std::cerr << "error (" << kind << "): " << what << "\n";
    }
    return code;
}

Outcome from(const VerificationReport& r) { return {r.to_json(), r.verdict()}; }

struct Context {
    RingPtr ring;
    ExactZeroDivisorPair pair;
    Scope scope;
    Json input;
};

Context context(const Options& opt, bool with_pair = true) {
    if (opt.degree < 1) throw ParseError("--degree must be at least 1");
    Context c;
    c.ring = load_ring(opt.ring);
    c.scope = Scope{opt.degree};
    c.input["ring"] = c.ring->describe();
    if (with_pair) {
        if (opt.x.empty() || opt.y.empty()) throw ParseError("--x and --y are required");
        c.pair = verify_exact_pair(parse_element(c.ring, opt.x), parse_element(c.ring, opt.y), c.scope);
        if (!c.pair.verified) throw PreconditionFailed("(" + opt.x + ", " + opt.y + ") is not an exact pair of zero divisors");
        verify_regular_pair(c.pair, c.scope);
        c.input["x"] = c.pair.x.to_string();
        c.input["y"] = c.pair.y.to_string();
    }
    if (c.ring->is_graded()) c.input["degree"] = opt.degree;
    return c;
}

Element need(const Context& c, const std::string& text, const char* flag) {
    if (text.empty()) throw ParseError(std::string(flag) + " is required");
    return parse_element(c.ring, text);
}

// ---- commands ----

Outcome pair_verify(const Options& opt, Json& input) {
    auto c = context(opt, false);
    input = c.input;
    if (opt.x.empty() || opt.y.empty()) throw ParseError("--x and --y are required");
    input["x"] = opt.x;
    input["y"] = opt.y;
    auto pair = verify_exact_pair(parse_element(c.ring, opt.x), parse_element(c.ring, opt.y), c.scope);
    VerificationReport rep("Def:exact-pair", pair.report.scope);
    rep.add("exact pair", pair.report);
    if (pair.verified) {
        auto reg = verify_regular_pair(pair, c.scope);
        rep.add("regularity conditions agree", reg.report);
        rep.data["regular"] = tri_name(reg.verdict);
    }
    rep.data["pair"] = to_json(pair);
    return from(rep);
}

Outcome family_build(const Options& opt, Json& input) {
    auto c = context(opt);
    Element a = need(c, opt.a, "--a");
    input = c.input;
    input["a"] = a.to_string();
    VerificationReport rep("Def:GH", scope_string(c.pair.mode, opt.degree));
    Matrix g = gamma(c.pair, a), h = eta(c.pair, a);
    rep.add("gamma eta = 0", (g * h).is_zero());
    rep.add("eta gamma = 0", (h * g).is_zero());
    for (const auto& m : {module_G(c.pair, a), module_H(c.pair, a)}) {
        Json e{{"presentation", to_json(m.presentation())}, {"mu", minimal_generators(m)},
               {"fitting_1", ideal_string(fitting_ideal(m, 1))}};
        if (m.presentation().grading()) e["grading"] = to_json(*m.presentation().grading());
        if (c.ring->is_graded() && m.presentation().grading()) {
            Json hf = Json::array();
            for (int d = 0; d <= opt.degree; ++d) hf.push_back(hilbert_function(m, d, c.scope));
            e["hilbert"] = hf;
        }
        rep.data[m.label()] = e;
    }
    rep.data["free"] = is_unit(a);
    return from(rep);
}

Outcome family_verify_complex(const Options& opt, Json& input) {
    auto c = context(opt);
    Element a = need(c, opt.a, "--a");
    input = c.input;
    input["a"] = a.to_string();
    input["length"] = opt.length;
    return from(verify_complex(c.pair, a, opt.length, c.scope));
}

Outcome family_verify_tr(const Options& opt, Json& input) {
    auto c = context(opt);
    Element a = need(c, opt.a, "--a");
    input = c.input;
    input["a"] = a.to_string();
    input["i_max"] = opt.i_max;
    return from(verify_total_reflexivity(c.pair, a, opt.i_max, c.scope));
}

Outcome family_decompose(const Options& opt, Json& input) {
    auto c = context(opt);
    Element q = need(c, opt.q, "--q");
    input = c.input;
    input["q"] = q.to_string();
    auto rep = decompose_when_a_in_x(c.pair, q);
    auto g = module_G(c.pair, q * c.pair.x);
    auto scan = scan_idempotents(hom_presentation(g, g, c.scope), opt.budget);
    rep.add("nontrivial idempotent found", scan.idempotent.has_value(), to_json(scan));
    return from(rep);
}

Outcome family_run_main(const Options& opt, Json& input) {
    auto c = context(opt);
    if (opt.b.empty()) throw ParseError("--b is required");
    auto bs = parse_element_list(c.ring, opt.b);
    input = c.input;
    Json bj = Json::array();
    for (const auto& b : bs) bj.push_back(b.to_string());
    input["b"] = bj;
    input["n_max"] = opt.n_max;
    if (opt.n_max < 1) throw ParseError("--n-max must be at least 1");
    auto fr = run_family(c.pair, bs, opt.n_max, c.scope, opt.budget);
    return {fr.json, fr.pass ? "pass" : "fail"};
}

Outcome hom_compute(const Options& opt, Json& input) {
    auto c = context(opt);
    if (opt.source.empty() || opt.target.empty()) throw ParseError("--source and --target are required");
    auto src = parse_module_spec(c.pair, opt.source), tgt = parse_module_spec(c.pair, opt.target);
    input = c.input;
    input["source"] = src.label();
    input["target"] = tgt.label();
    auto hp = hom_presentation(src, tgt, c.scope);
    VerificationReport rep("Prop:CompHom", scope_string(hp.mode, opt.degree));
    bool lifts = true;
    Json gens = Json::array();
    for (std::size_t i = 0; i < hp.generators.size(); ++i) {
        lifts = lifts && hp.generators[i] * src.presentation() == tgt.presentation() * hp.lifts[i];
        gens.push_back(Json{{"psi", to_json(hp.generators[i])}, {"xi", to_json(hp.lifts[i])}});
    }
    rep.add("psi rho1 = rho2 xi for every generator", lifts);
    rep.data["hom"] = "Hom(" + src.label() + "," + tgt.label() + ")";
    rep.data["generators"] = gens;
    rep.data["relations"] = to_json(hp.relations);
    if (hp.relations.grading()) rep.data["generator_degrees"] = hp.relations.grading()->rows;
    auto mod = hp.module();
    rep.data["mu"] = minimal_generators(mod);
    if (hp.mode == SliceMode::Whole) {
        LinearMap rel(hp.relations, c.scope);
        int len = static_cast<int>(rel.target_layout(0).size()) * c.ring->k() - rel.image_length(0);
        rep.data["length"] = len;
        if (len < 60) rep.data["cardinality"] = static_cast<std::uint64_t>(std::pow(static_cast<double>(c.ring->p()), len) + 0.5);
    } else if (hp.mode == SliceMode::Degree) {
        Json hf = Json::object();
        auto rows = hp.relations.grading()->rows;
        int lo = *std::min_element(rows.begin(), rows.end());
        for (int d = lo; d <= lo + opt.degree; ++d) hf[std::to_string(d)] = hilbert_function(mod, d, c.scope);
        rep.data["hilbert"] = hf;
    }
    return from(rep);
}

Outcome hom_verify_hg(const Options& opt, Json& input) {
    auto c = context(opt);
    Element a = need(c, opt.a, "--a"), b = need(c, opt.b, "--b");
    input = c.input;
    input["a"] = a.to_string();
    input["b"] = b.to_string();
    return from(verify_hom_HG(c.pair, a, b, c.scope, !opt.unmet));
}

Outcome hom_verify_gaba(const Options& opt, Json& input) {
    auto c = context(opt);
    Element a = need(c, opt.a, "--a"), b = need(c, opt.b, "--b");
    input = c.input;
    input["a"] = a.to_string();
    input["b"] = b.to_string();
    return from(verify_hom_G_ab_a(c.pair, a, b, c.scope, !opt.unmet));
}

Outcome hom_verify_end(const Options& opt, Json& input) {
    auto c = context(opt);
    Element a = need(c, opt.a, "--a");
    if (opt.module != "G" && opt.module != "H") throw ParseError("--module must be G or H");
    input = c.input;
    input["a"] = a.to_string();
    input["module"] = opt.module;
    return from(verify_end_ring(c.pair, a, c.scope, opt.budget, opt.module == "H"));
}

Outcome hom_verify_end_op(const Options& opt, Json& input) {
    auto c = context(opt);
    Element a = need(c, opt.a, "--a");
    input = c.input;
    input["a"] = a.to_string();
    return from(verify_end_op_iso(c.pair, a, c.scope));
}

Outcome hom_verify_ext(const Options& opt, Json& input) {
    auto c = context(opt);
    Element a = need(c, opt.a, "--a"), b = need(c, opt.b, "--b");
    input = c.input;
    input["a"] = a.to_string();
    input["b"] = b.to_string();
    input["i_max"] = opt.i_max;
    return from(verify_ext_swap(c.pair, a, b, opt.i_max, c.scope));
}

Outcome hom_noniso(const Options& opt, Json& input) {
    auto c = context(opt);
    if (opt.source.empty() || opt.target.empty()) throw ParseError("--source and --target are required");
    auto m = parse_module_spec(c.pair, opt.source), n = parse_module_spec(c.pair, opt.target);
    auto strategy = parse_strategy(opt.strategy);
    input = c.input;
    input["modules"] = Json::array({m.label(), n.label()});
    input["strategy"] = opt.strategy;
    std::string ref = m.label()[0] == n.label()[0] ? "Thm:iso-GG" : "Thm:iso-GH";
    try {
        return from(noniso_certificate(m, n, strategy, c.scope, ref));
    } catch (const InconclusiveStrategy& e) {
        VerificationReport rep(ref);
        rep.add_inconclusive("invariant separates the modules", false, Json{{"reason", e.what()}});
        return from(rep);
    }
}

Outcome oracle_hom(const Options& opt, Json& input) {
    auto c = context(opt);
    if (!c.ring->is_finite()) throw WrongBackend("the oracle needs a finite ring");
    if (opt.source.empty() || opt.target.empty()) throw ParseError("--source and --target are required");
    auto src = parse_module_spec(c.pair, opt.source), tgt = parse_module_spec(c.pair, opt.target);
    input = c.input;
    input["source"] = src.label();
    input["target"] = tgt.label();
    std::size_t budget = oracle_budget();
    auto oracle = brute_force_hom_oracle(src, tgt, budget);
    auto hp = hom_presentation(src, tgt, c.scope);
    auto presented = enumerate_presented_homs(hp, budget);
    VerificationReport rep("Prop:CompHom");
    rep.data["oracle_cardinality"] = oracle.cardinality;
    rep.data["presentation_cardinality"] = presented.size();
    rep.add("cardinalities agree", oracle.cardinality == presented.size());
    std::size_t missing = 0;
    for (const auto& m : oracle.maps) missing += presented.count(m) == 0;
    rep.add("element-for-element agreement", missing == 0 && oracle.maps.size() == presented.size(),
            Json{{"mismatches", missing + (presented.size() > oracle.maps.size() ? presented.size() - oracle.maps.size() : 0)}});
    return from(rep);
}

void add_common(CLI::App* cmd, Options& opt, bool pair = true) {
    cmd->add_option("--ring", opt.ring, "ring descriptor: JSON file or inline, e.g. F5[x,y,z]/(x*y)")->required();
    if (pair) {
        cmd->add_option("--x", opt.x, "first zero divisor");
        cmd->add_option("--y", opt.y, "second zero divisor");
    }
    cmd->add_option("--degree", opt.degree, "degree bound D on the graded backend")->capture_default_str();
    cmd->add_option("--format", opt.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    cmd->add_option("--output", opt.output, "write the report to this file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"totref: totally reflexive modules from exact pairs of zero divisors"};
    app.require_subcommand(1);
    Options opt;
    std::string command;
    std::function<Outcome(const Options&, Json&)> handler;

    auto verb = [&](CLI::App* group, const std::string& name, const std::string& help,
                    std::function<Outcome(const Options&, Json&)> fn, bool pair = true) {
        auto* cmd = group->add_subcommand(name, help);
        add_common(cmd, opt, pair);
        cmd->callback([&, g = group->get_name(), name, fn] {
            command = g + " " + name;
            handler = fn;
        });
        return cmd;
    };

    auto* pair_cmd = app.add_subcommand("pair", "exact pairs of zero divisors")->require_subcommand(1);
    verb(pair_cmd, "verify", "check Ann(x) = (y), Ann(y) = (x) and regularity", pair_verify);

    auto* fam = app.add_subcommand("family", "the modules G_a and H_a")->require_subcommand(1);
    verb(fam, "build", "presentations and invariants of G_a and H_a", family_build)->add_option("--a", opt.a, "element a");
    auto* vc = verb(fam, "verify-complex", "exactness of the periodic complex", family_verify_complex);
    vc->add_option("--a", opt.a, "element a");
    vc->add_option("--length", opt.length, "number of differentials")->capture_default_str();
    auto* vt = verb(fam, "verify-tr", "total reflexivity of G_a and H_a", family_verify_tr);
    vt->add_option("--a", opt.a, "element a");
    vt->add_option("--i-max", opt.i_max, "largest Ext index")->capture_default_str();
    auto* dec = verb(fam, "decompose", "splitting of G_{qx}", family_decompose);
    dec->add_option("--q", opt.q, "multiplier q, a = q x");
    dec->add_option("--idempotent-budget", opt.budget, "maximum endomorphisms to examine")->capture_default_str();
    auto* rm = verb(fam, "run-main", "the full battery for a_n = b_1 ... b_n", family_run_main);
    rm->add_option("--b", opt.b, "comma separated b_1,b_2,...; the last entry repeats");
    rm->add_option("--n-max", opt.n_max, "largest n")->capture_default_str();
    rm->add_option("--idempotent-budget", opt.budget, "maximum endomorphisms to examine")->capture_default_str();

    auto* hom = app.add_subcommand("hom", "Hom modules")->require_subcommand(1);
    auto* hc = verb(hom, "compute", "presentation of Hom(M, N)", hom_compute);
    hc->add_option("--source", opt.source, "source module, G:a or H:a");
    hc->add_option("--target", opt.target, "target module, G:a or H:a");
    for (auto [name, help, fn] : {std::tuple{"verify-hg", "Hom(H_b,G_a) = G_ab and its companions", &hom_verify_hg},
                                  std::tuple{"verify-gaba", "Hom(G_ab,G_a) = H_b and its companions", &hom_verify_gaba}}) {
        auto* v = verb(hom, name, help, fn);
        v->add_option("--a", opt.a, "element a");
        v->add_option("--b", opt.b, "element b");
        v->add_flag("--allow-unmet-hypotheses", opt.unmet, "record unmet hypotheses instead of stopping");
    }
    auto* ve = verb(hom, "verify-end", "End(G_a) = A without nontrivial idempotents", hom_verify_end);
    ve->add_option("--a", opt.a, "element a");
    ve->add_option("--module", opt.module, "G or H")->capture_default_str();
    ve->add_option("--idempotent-budget", opt.budget, "maximum endomorphisms to examine")->capture_default_str();
    verb(hom, "verify-end-op", "End(G_a)^op = End(G_a^*)", hom_verify_end_op)->add_option("--a", opt.a, "element a");
    auto* vx = verb(hom, "verify-ext", "Ext swaps between G and H", hom_verify_ext);
    vx->add_option("--a", opt.a, "element a");
    vx->add_option("--b", opt.b, "element b");
    vx->add_option("--i-max", opt.i_max, "largest Ext index")->capture_default_str();
    auto* ni = verb(hom, "noniso", "certificate that two modules are not isomorphic", hom_noniso);
    ni->add_option("--source", opt.source, "first module, G:a or H:a");
    ni->add_option("--target", opt.target, "second module, G:a or H:a");
    ni->add_option("--strategy", opt.strategy, "hom-freeness, fitting or mu")->capture_default_str();

    auto* orc = app.add_subcommand("oracle", "brute force on finite rings")->require_subcommand(1);
    auto* oh = verb(orc, "hom", "all homomorphisms by enumeration, compared with the presentation", oracle_hom);
    oh->add_option("--source", opt.source, "source module, G:a or H:a");
    oh->add_option("--target", opt.target, "target module, G:a or H:a");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    Json input;
    try {
        Outcome o = handler(opt, input);
        return emit(opt, command, input, o);
    } catch (const PreconditionFailed& e) {
        return emit_error(opt, command, e.kind(), e.what(), kPrecondition);
    } catch (const UnitInput& e) {
        return emit_error(opt, command, e.kind(), e.what(), kPrecondition);
    } catch (const NotAComplex& e) {
        return emit_error(opt, command, e.kind(), e.what(), kFail);
    } catch (const EquivalenceViolation& e) {
        return emit_error(opt, command, e.kind(), e.what(), kFail);
    } catch (const InvalidResolution& e) {
        return emit_error(opt, command, e.kind(), e.what(), kFail);
    } catch (const totref::error& e) {
        return emit_error(opt, command, e.kind(), e.what(), kUsage);
    } catch (const std::exception& e) {
        return emit_error(opt, command, "InternalError", e.what(), kFail);
    }
}
