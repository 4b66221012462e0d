// Command-line driver. Exit codes: 0 success/PASS, 1 verification failure
// (a counterexample dump is written), 2 invalid input, 3 guard exceeded.
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "tropjac/arrangement.hpp"
#include "tropjac/chip_firing.hpp"
#include "tropjac/containment.hpp"
#include "tropjac/divisor.hpp"
#include "tropjac/error.hpp"
#include "tropjac/graph.hpp"
#include "tropjac/homology.hpp"
#include "tropjac/json_io.hpp"
#include "tropjac/lefschetz.hpp"
#include "tropjac/linear_series.hpp"
#include "tropjac/suite.hpp"
#include "tropjac/symd.hpp"
#include "tropjac/torus_complex.hpp"
#include "tropjac/voronoi.hpp"

namespace {

using namespace tropjac;

constexpr const char* kDumpPath = "tropjac_counterexample.json";

struct Args {
    std::string command;
    std::string graph_path;
    std::string divisor_path;
    std::string out_path;
    std::string off_dir;
    int d = -1;
    int max_b = 0;
    std::uint64_t seed = 2026;
    bool canonical = false;
    bool inject_fault = false;
};

void emit(const Json& report, const Args& a) {
    std::string text = dump_report(report);
    std::cout << text;
    if (!a.out_path.empty()) write_file(a.out_path, text);
}

void dump_counterexample(const Json& body) {
    write_file(kDumpPath, dump_report(body));
    std::cerr << "counterexample written to " << kDumpPath << "\n";
}

void export_off(const Args& a, const std::string& name, const std::string& content) {
    if (a.off_dir.empty()) return;
    std::filesystem::create_directories(a.off_dir);
    write_file((std::filesystem::path(a.off_dir) / name).string(), content);
}

Guards effective_guards(const Args& a) {
    Guards g = Guards::from_env();
    if (a.max_b > 0) {
        g.max_b_voronoi = a.max_b;
        g.max_b_arrangement = a.max_b;
    }
    return g;
}

struct GraphInput {
    JacobianData jd;
    std::string hash;
};

GraphInput load_input(const Args& a) {
    if (a.graph_path.empty()) throw InvalidInput("--graph is required for this command");
    std::string raw = read_file(a.graph_path);
    GraphInput in;
    in.hash = fnv1a64_hex(raw);
    Json doc;
    try {
        doc = Json::parse(raw);
    } catch (const std::exception& e) {
        throw InvalidInput(std::string("graph JSON: ") + e.what());
    }
    in.jd = jacobian_data(graph_from_json(doc));
    return in;
}

Divisor resolve_divisor(const Args& a, const JacobianData& jd, std::mt19937_64& rng) {
    if (!a.divisor_path.empty()) return load_divisor(a.divisor_path, jd.graph);
    if (a.canonical) return canonical_divisor(jd.graph);
    if (a.d >= 0) return random_effective_divisor(jd.graph, a.d, rng);
    throw InvalidInput("need --divisor FILE, --canonical, or --d N (random effective divisor)");
}

int cmd_jacobian(const Args& a) {
    GraphInput in = load_input(a);
    const JacobianData& jd = in.jd;
    Json rep = report_header("jacobian", in.hash, jd, effective_guards(a), a.seed);
    rep["genus"] = jd.b;
    rep["gram"] = mat_json(jd.gram);
    Json vel = Json::array();
    for (size_t e = 0; e < jd.graph.edges.size(); ++e) {
        Json jv = Json::object();
        jv["edge"] = jd.graph.edges[e].id;
        jv["length"] = format_rat(jd.graph.edges[e].length);
        jv["velocity"] = vec_json(jd.velocity[e]);
        vel.push_back(std::move(jv));
    }
    rep["velocities"] = std::move(vel);
    Json mu = Json::array();
    for (size_t v = 0; v < jd.graph.vertices.size(); ++v) {
        Json jm = Json::object();
        jm["vertex"] = jd.graph.vertices[v];
        jm["mu"] = vec_json(jd.mu_vertex[v]);
        mu.push_back(std::move(jm));
    }
    rep["mu_vertices"] = std::move(mu);
    Json cyc = Json::array();
    for (const auto& c : jd.cycles) cyc.push_back(ivec_json(c));
    rep["cycles"] = std::move(cyc);
    emit(rep, a);
    return 0;
}

int cmd_voronoi(const Args& a) {
    GraphInput in = load_input(a);
    Guards guards = effective_guards(a);
    VoronoiCell vor = voronoi_cell(in.jd.gram, guards);
    Json rep = report_header("voronoi", in.hash, in.jd, guards, a.seed);
    Json rel = Json::array();
    for (const auto& v : vor.relevant) rel.push_back(ivec_json(v));
    rep["relevant_vectors"] = std::move(rel);
    Json fv = Json::array();
    for (const auto& faces : vor.faces) fv.push_back(faces.size());
    rep["f_vector"] = std::move(fv);
    rep["cell"] = polytope_json(vor.poly);
    if (in.jd.b <= 3) export_off(a, "voronoi.off", off_of_polytope(vor.poly));
    emit(rep, a);
    return 0;
}

int cmd_theta(const Args& a) {
    GraphInput in = load_input(a);
    Guards guards = effective_guards(a);
    int d = a.d < 0 ? 1 : a.d;
    if (d < 0 || d >= in.jd.b)
        throw InvalidInput("theta skeleton needs 0 <= d < genus, got d = " + std::to_string(d));
    VoronoiCell vor = voronoi_cell(in.jd.gram, guards);
    TorusCellComplex th = theta_skeleton(vor, d);
    Json rep = report_header("theta", in.hash, in.jd, guards, a.seed);
    rep["d"] = d;
    rep["complex"] = complex_counts_json(th);
    rep["homology"] = homology_json(homology(chain_complex(th)));
    if (in.jd.b <= 3) export_off(a, "theta.off", off_of_complex(th));
    emit(rep, a);
    return 0;
}

int cmd_wd(const Args& a) {
    GraphInput in = load_input(a);
    Guards guards = effective_guards(a);
    int d = a.d < 0 ? 1 : a.d;
    auto cells = wd_cells(in.jd, d, guards);
    Json rep = report_header("wd", in.hash, in.jd, guards, a.seed);
    rep["d"] = d;
    rep["cell_count"] = cells.size();
    Json jc = Json::array();
    for (const auto& c : cells) jc.push_back(wd_cell_json(in.jd, c));
    rep["cells"] = std::move(jc);
    if (in.jd.b <= 3) {
        std::vector<std::pair<Polytope, std::string>> gen;
        for (const auto& c : cells) gen.emplace_back(c.poly, "wd");
        export_off(a, "wd.off", off_of_complex(build_torus_complex(in.jd.b, gen)));
    }
    emit(rep, a);
    return 0;
}

int cmd_lefschetz(const Args& a) {
    GraphInput in = load_input(a);
    Guards guards = effective_guards(a);
    int d = a.d < 0 ? 1 : a.d;
    if (d < 1) throw InvalidInput("connectivity check needs d >= 1");
    TorusCellComplex complex;
    ConnectivityReport rep = lefschetz_check(in.jd, d, guards, &complex);
    Json out = report_header("lefschetz", in.hash, in.jd, guards, a.seed);
    out["report"] = to_json(rep);
    out["complex"] = complex_counts_json(complex, "wd");
    if (in.jd.b <= 3) export_off(a, "wd_refined.off", off_of_complex(complex, "wd"));
    emit(out, a);
    if (!rep.pass) {
        dump_counterexample(out);
        return 1;
    }
    return 0;
}

int cmd_rank(const Args& a) {
    GraphInput in = load_input(a);
    Guards guards = effective_guards(a);
    std::mt19937_64 rng(a.seed);
    Divisor D = resolve_divisor(a, in.jd, rng);
    int deg_int = static_cast<int>(D.degree());
    int geo = divisor_rank(in.jd, D, guards);
    int oracle = rank_oracle(in.jd.graph, D, guards);
    bool eff = deg_int >= 0 && is_effective_class(in.jd, aj_divisor(in.jd, D), deg_int, guards);
    bool agree = geo == oracle && eff == (oracle >= 0);
    Json rep = report_header("rank", in.hash, in.jd, guards, a.seed);
    rep["divisor"] = divisor_json(in.jd.graph, D);
    rep["degree"] = D.degree().str();
    rep["rank"] = geo;
    rep["rank_oracle"] = oracle;
    rep["effective_class"] = eff;
    rep["agree"] = agree;
    emit(rep, a);
    if (!agree) {
        dump_counterexample(rep);
        return 1;
    }
    return 0;
}

int cmd_series(const Args& a) {
    GraphInput in = load_input(a);
    Guards guards = effective_guards(a);
    std::mt19937_64 rng(a.seed);
    Divisor D = resolve_divisor(a, in.jd, rng);
    LinearSeries ls = linear_series(in.jd, D, guards);
    Json rep = report_header("series", in.hash, in.jd, guards, a.seed);
    rep["divisor"] = divisor_json(in.jd.graph, D);
    rep["series"] = series_json(ls);
    emit(rep, a);
    return 0;
}

std::vector<NamedGraph> parse_suite_file(const std::string& path) {
    Json doc;
    try {
        doc = Json::parse(read_file(path));
    } catch (const std::exception& e) {
        throw InvalidInput(std::string("suite JSON: ") + e.what());
    }
    if (!doc.is_array()) throw InvalidInput("suite file must be a JSON array of graphs");
    if (doc.empty()) throw InvalidInput("suite file lists no graphs");
    std::vector<NamedGraph> out;
    for (size_t i = 0; i < doc.size(); ++i) {
        NamedGraph ng;
        ng.name = doc[i].contains("name") ? doc[i]["name"].get<std::string>()
                                          : "g" + std::to_string(i);
        Json body = doc[i];
        body.erase("name");
        ng.graph = graph_from_json(body);
        out.push_back(std::move(ng));
    }
    return out;
}

int cmd_suite(const Args& a) {
    SuiteOptions opt;
    opt.seed = a.seed;
    opt.guards = effective_guards(a);
    opt.inject_sign_fault = a.inject_fault;
    opt.dump_path = kDumpPath;
    if (!a.graph_path.empty()) opt.graphs = parse_suite_file(a.graph_path);
    SuiteResult res = run_suite(opt);
    emit(res.report, a);
    for (const auto& c : res.criteria)
        std::cerr << (c.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << "\n";
    return res.worst_exit;
}

int dispatch(const Args& a) {
    if (a.command == "jacobian") return cmd_jacobian(a);
    if (a.command == "voronoi") return cmd_voronoi(a);
    if (a.command == "theta") return cmd_theta(a);
    if (a.command == "wd") return cmd_wd(a);
    if (a.command == "lefschetz") return cmd_lefschetz(a);
    if (a.command == "rank") return cmd_rank(a);
    if (a.command == "series") return cmd_series(a);
    if (a.command == "suite") return cmd_suite(a);
    throw InvalidInput("unknown command: " + a.command);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tropjac: tropical Jacobians, theta skeleta, W_d loci, divisor ranks"};
    app.require_subcommand(1);
    Args a;
    const std::pair<const char*, const char*> commands[] = {
        {"jacobian", "cycle basis, Gram matrix, edge velocities, vertex images"},
        {"voronoi", "Voronoi cell of the Gram form: relevant vectors and face counts"},
        {"theta", "theta skeleton of dimension d with its homology"},
        {"wd", "effective-locus cells W_d as torus zonotopes"},
        {"lefschetz", "relative homology check for the pair (torus, W_d)"},
        {"rank", "divisor rank, geometric and chip-firing, with agreement check"},
        {"series", "complete linear series of a divisor with its homology"},
        {"suite", "run all acceptance criteria and emit the combined report"},
    };
    for (const auto& [name, blurb] : commands) {
        CLI::App* sub = app.add_subcommand(name, blurb);
        sub->add_option("--graph", a.graph_path, "graph JSON file (suite: optional graph list)");
        sub->add_option("--d", a.d, "degree / skeleton dimension");
        sub->add_option("--out", a.out_path, "also write the JSON report here");
        sub->add_option("--export-off", a.off_dir, "export OFF models into this directory");
        sub->add_option("--max-b", a.max_b, "override the genus guards");
        sub->add_option("--seed", a.seed, "seed for randomized commands");
        sub->add_option("--divisor", a.divisor_path, "divisor JSON file (rank, series)");
        sub->add_flag("--canonical", a.canonical, "use the canonical divisor (rank, series)");
        sub->add_flag("--inject-fault", a.inject_fault,
                      "suite fixture: plant a sign bug to exercise the failure path");
        sub->callback([&a, name] { a.command = name; });
    }
    CLI11_PARSE(app, argc, argv);
    try {
        return dispatch(a);
    } catch (const tropjac::InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const tropjac::GuardExceeded& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return 3;
    } catch (const tropjac::VerificationError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        tropjac::Json dump = tropjac::Json::object();
        dump["error"] = e.what();
        dump["command"] = a.command;
        dump_counterexample(dump);
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        tropjac::Json dump = tropjac::Json::object();
        dump["error"] = e.what();
        dump["command"] = a.command;
        dump_counterexample(dump);
        return 1;
    }
}
