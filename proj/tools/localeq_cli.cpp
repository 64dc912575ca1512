// Command-line front end: decide equivalence, extract witnesses, apply op
// sequences, enumerate orbits, analyze solution-space structure, and generate
// random instances. Exit codes: 0 = Equivalent, 1 = NotEquivalent, 2 = error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "localeq/localeq.hpp"

namespace {

using namespace localeq;
using Clock = std::chrono::steady_clock;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json vec_to_json(const Vec& v) {
    Json arr = Json::array();
    for (const Fq& c : v) arr.push_back(label_to_json(c));
    return arr;
}

Json phi_to_json(const PhiVector& phi) {
    return Json{{"X", vec_to_json(phi.X)},
                {"Y", vec_to_json(phi.Y)},
                {"Z", vec_to_json(phi.Z)},
                {"T", vec_to_json(phi.T)}};
}

std::string render_vec(const Vec& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += label_to_json(v[i]).dump();
    }
    return out + "]";
}

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Options {
    bool json = false;
    bool deterministic = false;
    bool members = false;
    bool connected = false;
    uint64_t field_p = 3;
    int field_k = 1;
    std::vector<uint64_t> modulus;
    size_t workers = 1;
    uint64_t seed = 0;
    uint64_t limit = 1u << 20;
    size_t n = 0;
    uint64_t density = 50;
    std::string path_g, path_h, path_ops;
};

const FieldSpec* field_from_flags(const Options& opt) {
    if (opt.field_k == 1) {
        if (!opt.modulus.empty()) throw Error("prime fields take no --modulus");
        return FieldSpec::prime(opt.field_p);
    }
    if (!opt.modulus.empty())
        return FieldSpec::extension(opt.field_p, opt.field_k, opt.modulus);
    uint64_t q = 1;
    for (int i = 0; i < opt.field_k; ++i) q *= opt.field_p;
    return FieldSpec::of_order(q);
}

int run_decide(const Options& opt, bool emit_ops) {
    LabeledGraph g = parse_graph(read_input(opt.path_g));
    LabeledGraph h = parse_graph(read_input(opt.path_h));
    DecideOptions dopt;
    dopt.workers = opt.workers;
    dopt.deterministic = opt.deterministic || opt.workers <= 1;
    auto start = Clock::now();
    Decision d = decide_general(g, h, dopt);
    std::vector<LocalOp> ops;
    if (d.equivalent && emit_ops) {
        ops = extract_ops_general(g, h, *d.witness);
        if (apply_sequence(g, ops) != h)
            throw InternalInvariantViolation("op sequence does not reproduce H");
    }
    double elapsed = ms_since(start);

    if (opt.json) {
        Json out{{"verdict", d.equivalent ? "Equivalent" : "NotEquivalent"},
                 {"dim_lambda", d.stats.dim_lambda},
                 {"subsets", d.stats.subsets},
                 {"candidates", d.stats.candidates},
                 {"certificate", d.certificate},
                 {"elapsed_ms", elapsed}};
        out["witness"] = d.witness ? phi_to_json(*d.witness) : Json(nullptr);
        if (emit_ops) out["ops"] = d.equivalent ? ops_to_json(ops) : Json(nullptr);
        std::cout << out.dump() << "\n";
    } else if (emit_ops) {
        if (d.equivalent) std::cout << serialize_ops(ops) << "\n";
        else std::cerr << "NotEquivalent: " << d.certificate << "\n";
    } else {
        std::cout << "verdict: " << (d.equivalent ? "Equivalent" : "NotEquivalent")
                  << "\n";
        std::cout << "dim Lambda(G,H): " << d.stats.dim_lambda << "\n";
        std::cout << "subsets examined: " << d.stats.subsets << "\n";
        std::cout << "candidates examined: " << d.stats.candidates << "\n";
        if (d.witness) {
            std::cout << "witness X: " << render_vec(d.witness->X) << "\n";
            std::cout << "witness Y: " << render_vec(d.witness->Y) << "\n";
            std::cout << "witness Z: " << render_vec(d.witness->Z) << "\n";
            std::cout << "witness T: " << render_vec(d.witness->T) << "\n";
        }
        if (!d.certificate.empty())
            std::cout << "certificate: " << d.certificate << "\n";
        std::cout << "elapsed: " << elapsed << " ms\n";
    }
    return d.equivalent ? 0 : 1;
}

int run_apply(const Options& opt) {
    LabeledGraph g = parse_graph(read_input(opt.path_g));
    std::vector<LocalOp> ops = parse_ops(read_input(opt.path_ops), g.field(), g.size());
    std::cout << serialize_graph(apply_sequence(g, ops)) << "\n";
    return 0;
}

int run_orbit(const Options& opt) {
    LabeledGraph g = parse_graph(read_input(opt.path_g));
    Orbit orb = orbit(g, opt.limit);
    if (opt.json) {
        Json out{{"size", orb.size()}};
        if (opt.members) {
            Json members = Json::array();
            for (const std::string& enc : orb.members)
                members.push_back(graph_to_json(decode_encoding(g.field(), g.size(), enc)));
            out["members"] = std::move(members);
        }
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "orbit size: " << orb.size() << "\n";
        if (opt.members)
            for (const std::string& enc : orb.members)
                std::cout << serialize_graph(decode_encoding(g.field(), g.size(), enc))
                          << "\n";
    }
    return 0;
}

int run_analyze(const Options& opt) {
    LabeledGraph g = parse_graph(read_input(opt.path_g));
    InternalReport rep = analyze(g, opt.seed ? opt.seed : 0x5eedu);
    Json out{{"q", rep.q},
             {"n", rep.n},
             {"dim_lambda", rep.dim_lambda},
             {"dim_lambda0", rep.dim_lambda0},
             {"lambda00_linear", rep.lambda00_linear},
             {"lemma_ai_ok", rep.lemma_ai_ok},
             {"shift_structure_ok", rep.shift_structure_ok},
             {"odd_cycle", rep.odd_cycle}};
    out["dim_lambda00"] = rep.dim_lambda00 ? Json(*rep.dim_lambda00) : Json(nullptr);
    out["sigma_codim"] = rep.sigma_codim ? Json(*rep.sigma_codim) : Json(nullptr);
    out["sigma_witness"] =
        rep.sigma_witness ? phi_to_json(*rep.sigma_witness) : Json(nullptr);
    out["det_constant_ok"] =
        rep.det_constant_ok ? Json(*rep.det_constant_ok) : Json(nullptr);
    out["pen_ok"] = rep.pen_ok ? Json(*rep.pen_ok) : Json(nullptr);
    out["pen_fiber"] = rep.pen_fiber ? Json(*rep.pen_fiber) : Json(nullptr);
    out["nu_span_stable"] =
        rep.nu_span_stable ? Json(*rep.nu_span_stable) : Json(nullptr);
    out["y_plus_z_constants"] = vec_to_json(rep.y_plus_z_constants);
    if (opt.json) {
        std::cout << out.dump() << "\n";
    } else {
        for (const auto& [key, value] : out.items())
            std::cout << key << ": " << value.dump() << "\n";
    }
    return 0;
}

int run_random(const Options& opt) {
    const FieldSpec* f = field_from_flags(opt);
    Rng rng(opt.seed);
    LabeledGraph g = opt.connected
                         ? random_connected_graph(f, opt.n, rng, opt.density)
                         : random_graph(f, opt.n, rng, opt.density);
    std::cout << serialize_graph(g) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local equivalence of labeled graphs over odd-order finite fields"};
    app.require_subcommand(1);
    Options opt;

    app.add_flag("--json", opt.json, "machine-readable JSON output");
    app.add_flag("--deterministic", opt.deterministic,
                 "force sequential search order even with --workers > 1");
    app.add_option("--workers", opt.workers, "parallel search workers (default 1)");
    app.add_option("--seed", opt.seed, "RNG seed");
    app.add_option("--limit", opt.limit, "orbit node limit (default 2^20)");
    app.add_option("--field-p", opt.field_p, "field characteristic for random (default 3)");
    app.add_option("--field-k", opt.field_k, "field extension degree for random (default 1)");
    app.add_option("--modulus", opt.modulus,
                   "irreducible modulus coefficients, constant term first");

    CLI::App* decide_cmd =
        app.add_subcommand("decide", "decide whether two graphs are locally equivalent");
    decide_cmd->fallthrough();
    decide_cmd->add_option("G", opt.path_g, "graph JSON path or -")->required();
    decide_cmd->add_option("H", opt.path_h, "graph JSON path or -")->required();

    CLI::App* witness_cmd = app.add_subcommand(
        "witness", "emit a verified op sequence transforming G into H");
    witness_cmd->fallthrough();
    witness_cmd->add_option("G", opt.path_g, "graph JSON path or -")->required();
    witness_cmd->add_option("H", opt.path_h, "graph JSON path or -")->required();

    CLI::App* apply_cmd =
        app.add_subcommand("apply", "apply an op sequence to a graph");
    apply_cmd->fallthrough();
    apply_cmd->add_option("G", opt.path_g, "graph JSON path or -")->required();
    apply_cmd->add_option("OPS", opt.path_ops, "op sequence JSON path or -")->required();

    CLI::App* orbit_cmd =
        app.add_subcommand("orbit", "enumerate the local-equivalence orbit of a graph");
    orbit_cmd->fallthrough();
    orbit_cmd->add_option("G", opt.path_g, "graph JSON path or -")->required();
    orbit_cmd->add_flag("--members", opt.members, "print every orbit member");

    CLI::App* analyze_cmd = app.add_subcommand(
        "analyze", "report solution-space structure for a connected graph");
    analyze_cmd->fallthrough();
    analyze_cmd->add_option("G", opt.path_g, "graph JSON path or -")->required();

    CLI::App* random_cmd =
        app.add_subcommand("random", "generate a random labeled graph");
    random_cmd->fallthrough();
    random_cmd->add_option("--n", opt.n, "vertex count")->required();
    random_cmd->add_option("--density", opt.density, "edge density percent (default 50)");
    random_cmd->add_flag("--connected", opt.connected, "keep sampling until connected");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (decide_cmd->parsed()) return run_decide(opt, false);
        if (witness_cmd->parsed()) return run_decide(opt, true);
        if (apply_cmd->parsed()) return run_apply(opt);
        if (orbit_cmd->parsed()) return run_orbit(opt);
        if (analyze_cmd->parsed()) return run_analyze(opt);
        if (random_cmd->parsed()) {
            if (app.count("--seed") == 0)
                throw Error("random requires --seed for reproducibility");
            return run_random(opt);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
