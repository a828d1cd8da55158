#include "kg/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "kg/ckrep.hpp"
#include "kg/simplicity.hpp"

namespace kg {

using nlohmann::json;

namespace {

json degree_json(const Degree& d) {
    json a = json::array();
    for (int v : d.coords()) a.push_back(v);
    return a;
}

json ext_degree_json(const ExtDegree& d) {
    json a = json::array();
    for (int i = 0; i < d.rank(); ++i) {
        if (d.is_infinite(i))
            a.push_back(nullptr);
        else
            a.push_back(d[i]);
    }
    return a;
}

std::vector<Path> parse_path_list(const KGraph& g, const std::string& text) {
    std::vector<Path> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(parse_path(g, tok));
    }
    return out;
}

VertexId require_vertex(const KGraph& g, const std::string& id) {
    auto v = g.find_vertex(id);
    if (!v) throw std::invalid_argument("unknown vertex '" + id + "'");
    return *v;
}

struct Options {
    std::string file;
    bool json_out = false;
    std::string vertex;
    std::string set;
    std::string mu, nu;
    std::string degree_text;
    bool le = false;
    std::string depth_text;
    std::string bound_text;
    std::string pair_bound_text, tau_bound_text;
    int cof_bound = 6;
    std::string pair_text;
    std::string cap_text;
    bool dump = false;
    std::string coeffs;
    std::string strategy = "auto";
};

int cmd_validate(const Options& o, std::ostream& out) {
    KGraph g = load_kgraph(o.file);
    if (o.json_out) {
        json j{{"graph", g.name()},
               {"rank", g.rank()},
               {"vertices", g.vertex_count()},
               {"edges", g.edge_count()},
               {"squares", static_cast<int>(g.skeleton().squares.size())},
               {"flags",
                {{"locally_convex", g.locally_convex()},
                 {"acyclic", g.acyclic()},
                 {"has_sources", g.has_sources()},
                 {"boundary_finite", g.boundary_finite()}}},
               {"max_mce_cardinality", g.max_mce_diagnostic()}};
        out << j.dump(2) << "\n";
    } else {
        out << g.name() << ": rank " << g.rank() << ", " << g.vertex_count() << " vertices, "
            << g.edge_count() << " edges, " << g.skeleton().squares.size() << " squares\n"
            << "  locally_convex=" << g.locally_convex() << " acyclic=" << g.acyclic()
            << " has_sources=" << g.has_sources() << " boundary_finite=" << g.boundary_finite()
            << "\n  max |MCE| over degree<=(1,...,1) pairs: " << g.max_mce_diagnostic() << "\n";
    }
    return 0;
}

int cmd_paths(const Options& o, std::ostream& out) {
    KGraph g = load_kgraph(o.file);
    VertexId v = require_vertex(g, o.vertex);
    Degree n = parse_degree(o.degree_text, g.rank());
    std::vector<Path> ps = o.le ? paths_le(g, v, n) : paths_of_degree(g, v, n);
    if (o.json_out) {
        json j = json::array();
        for (const Path& p : ps) j.push_back(format_path(g, p));
        out << json{{"vertex", o.vertex}, {"degree", degree_json(n)}, {"le", o.le},
                    {"paths", j}}
                   .dump(2)
            << "\n";
    } else {
        for (const Path& p : ps) out << format_path(g, p) << "\n";
    }
    return 0;
}

int cmd_mce(const Options& o, std::ostream& out) {
    KGraph g = load_kgraph(o.file);
    Path mu = parse_path(g, o.mu);
    Path nu = parse_path(g, o.nu);
    std::vector<Path> m = mce(g, mu, nu);
    auto pairs = min_extensions(g, mu, nu);
    if (o.json_out) {
        json jm = json::array(), jp = json::array();
        for (const Path& p : m) jm.push_back(format_path(g, p));
        for (const auto& [a, b] : pairs)
            jp.push_back({{"alpha", format_path(g, a)}, {"beta", format_path(g, b)}});
        out << json{{"mu", o.mu}, {"nu", o.nu}, {"mce", jm}, {"min_extensions", jp}}.dump(2)
            << "\n";
    } else {
        for (const Path& p : m) out << format_path(g, p) << "\n";
    }
    return 0;
}

int cmd_fe(const Options& o, std::ostream& out) {
    KGraph g = load_kgraph(o.file);
    VertexId v = require_vertex(g, o.vertex);
    std::vector<Path> set = parse_path_list(g, o.set);
    for (const Path& p : set)
        if (p.range != v)
            throw std::invalid_argument("set member " + format_path(g, p) +
                                        " does not have range " + o.vertex);
    FeStrategy strat = FeStrategy::automatic;
    if (o.strategy == "oracle") strat = FeStrategy::boundary_oracle;
    else if (o.strategy == "bounded") strat = FeStrategy::bounded_search;
    else if (o.strategy != "auto") throw std::invalid_argument("unknown strategy");
    Degree bound = o.bound_text.empty() ? Degree::uniform(g.rank(), 4)
                                        : parse_degree(o.bound_text, g.rank());
    ExhaustiveCheck chk = is_exhaustive(g, set, strat, bound);
    json j{{"vertex", o.vertex},
           {"verdict", to_string(chk.verdict.outcome)},
           {"certificate", chk.verdict.certificate}};
    if (chk.witness) j["witness"] = format_path(g, *chk.witness);
    if (!chk.detail.empty()) j["detail"] = chk.detail;
    out << j.dump(2) << "\n";
    return exit_code(chk.verdict.outcome);
}

int cmd_boundary(const Options& o, std::ostream& out) {
    KGraph g = load_kgraph(o.file);
    VertexId v = require_vertex(g, o.vertex);
    Degree depth = o.depth_text.empty() ? default_boundary_depth(g)
                                        : parse_degree(o.depth_text, g.rank());
    BoundarySet bs = boundary_paths(g, v, depth);
    json items = json::array();
    for (const BoundaryPath& x : bs.paths) {
        json j;
        switch (x.body) {
            case BoundaryPath::Body::finite: j["kind"] = "finite"; break;
            case BoundaryPath::Body::periodic: j["kind"] = "periodic"; break;
            default: j["kind"] = "truncated"; break;
        }
        j["prefix"] = format_path(g, x.prefix);
        if (x.cycle) j["cycle"] = format_path(g, *x.cycle);
        j["degree"] = ext_degree_json(bp_degree(g, x));
        items.push_back(j);
    }
    if (o.json_out) {
        out << json{{"vertex", o.vertex}, {"exact", bs.exact}, {"paths", items}}.dump(2)
            << "\n";
    } else {
        out << "exact: " << (bs.exact ? "yes" : "no") << "\n";
        for (const BoundaryPath& x : bs.paths) out << bp_format(g, x) << "\n";
    }
    return 0;
}

int cmd_check_aperiodicity(const Options& o, std::ostream& out) {
    KGraph g = load_kgraph(o.file);
    Degree pb = o.pair_bound_text.empty() ? default_pair_bound(g)
                                          : parse_degree(o.pair_bound_text, g.rank());
    Degree tb = o.tau_bound_text.empty() ? default_tau_bound(g)
                                         : parse_degree(o.tau_bound_text, g.rank());
    AperiodicityReport rep = check_aperiodicity(g, pb, tb);
    json j{{"verdict", to_string(rep.verdict.outcome)},
           {"certificate", rep.verdict.certificate},
           {"pairs_scanned", rep.pairs_scanned},
           {"all_pairs_separated", rep.all_pairs_separated}};
    if (rep.periodicity_witness) {
        const auto& w = *rep.periodicity_witness;
        j["periodicity_witness"] = {{"vertex", g.vertex_name(w.vertex)},
                                    {"m", degree_json(w.m)},
                                    {"n", degree_json(w.n)}};
    }
    if (o.json_out) {
        json wm = json::array();
        for (const SeparatedPair& p : rep.witness_map)
            wm.push_back({{"mu", format_path(g, p.mu)},
                          {"nu", format_path(g, p.nu)},
                          {"tau", format_path(g, p.tau)}});
        j["witnesses"] = wm;
        out << j.dump(2) << "\n";
    } else {
        out << "aperiodicity: " << to_string(rep.verdict.outcome) << " ("
            << rep.verdict.certificate << ")\n";
        if (rep.periodicity_witness)
            out << "  witness: vertex " << g.vertex_name(rep.periodicity_witness->vertex)
                << " m=" << rep.periodicity_witness->m.to_string()
                << " n=" << rep.periodicity_witness->n.to_string() << "\n";
    }
    return exit_code(rep.verdict.outcome);
}

int cmd_check_cofinality(const Options& o, std::ostream& out) {
    KGraph g = load_kgraph(o.file);
    if (!o.pair_text.empty()) {
        auto comma = o.pair_text.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("--pair expects 'v,w'");
        VertexId v = require_vertex(g, o.pair_text.substr(0, comma));
        VertexId w = require_vertex(g, o.pair_text.substr(comma + 1));
        PairResult res = g.locally_convex() ? cofinality_lc_exact(g, v, w)
                                            : check_cofinality(g, o.cof_bound)
                                                  .pairs.at(std::make_pair(v, w));
        json j{{"verdict", to_string(res.verdict.outcome)},
               {"certificate", res.verdict.certificate}};
        if (res.le_cert_n) j["le_n"] = degree_json(*res.le_cert_n);
        out << j.dump(2) << "\n";
        return exit_code(res.verdict.outcome);
    }
    CofinalityReport rep = check_cofinality(g, o.cof_bound);
    if (o.json_out) {
        json pairs = json::array();
        for (const auto& [vw, res] : rep.pairs) {
            json p{{"v", g.vertex_name(vw.first)},
                   {"w", g.vertex_name(vw.second)},
                   {"verdict", to_string(res.verdict.outcome)},
                   {"certificate", res.verdict.certificate}};
            if (res.le_cert_n) p["le_n"] = degree_json(*res.le_cert_n);
            if (res.avoiding) p["avoiding"] = bp_format(g, *res.avoiding);
            pairs.push_back(p);
        }
        out << json{{"verdict", to_string(rep.verdict.outcome)}, {"pairs", pairs}}.dump(2)
            << "\n";
    } else {
        out << "cofinality: " << to_string(rep.verdict.outcome) << "\n";
    }
    return exit_code(rep.verdict.outcome);
}

int cmd_check_simplicity(const Options& o, std::ostream& out) {
    KGraph g = load_kgraph(o.file);
    SimplicityBounds b{o.pair_bound_text.empty() ? default_pair_bound(g)
                                                 : parse_degree(o.pair_bound_text, g.rank()),
                       o.tau_bound_text.empty() ? default_tau_bound(g)
                                                : parse_degree(o.tau_bound_text, g.rank()),
                       o.cof_bound};
    SimplicityReport rep = check_simplicity(g, b);
    if (o.json_out) {
        out << report_json(g, rep) << "\n";
    } else {
        out << "simplicity: " << to_string(rep.verdict.outcome);
        if (rep.verdict.fails()) out << " (failing: " << rep.verdict.certificate << ")";
        out << "\n";
    }
    return exit_code(rep.verdict.outcome);
}

int cmd_report(const Options& o, std::ostream& out) {
    KGraph g = load_kgraph(o.file);
    SimplicityReport rep = check_simplicity(g);
    out << report_json(g, rep) << "\n";
    return exit_code(rep.verdict.outcome);
}

int cmd_ck_verify(const Options& o, std::ostream& out) {
    KGraph g = load_kgraph(o.file);
    MatrixCK rep = build_matrix_rep(g);
    Degree cap = o.cap_text.empty() ? Degree::uniform(g.rank(), 2)
                                    : parse_degree(o.cap_text, g.rank());
    CkReport ck = verify_ck_axioms(rep, cap);
    if (o.dump) {
        // Coordinate-list export: one line per nonzero entry.
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            IMat m = rep.vertex_matrix(v);
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j)
                    if (m(i, j)) out << g.vertex_name(v) << " " << i << " " << j << " "
                                     << m(i, j) << "\n";
        }
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            IMat m = rep.matrix_for(edge_path(g, e));
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j)
                    if (m(i, j)) out << g.edge(e).id << " " << i << " " << j << " " << m(i, j)
                                     << "\n";
        }
    }
    json j{{"dimension", rep.dim()},
           {"checks", ck.checks},
           {"passed", ck.passed},
           {"violations", ck.violations}};
    out << j.dump(2) << "\n";
    return ck.passed ? 0 : 1;
}

int cmd_qmap(const Options& o, std::ostream& out) {
    KGraph g = load_kgraph(o.file);
    MatrixCK rep = build_matrix_rep(g);
    std::vector<Path> H = parse_path_list(g, o.set);
    Degree N = o.cap_text.empty() ? Degree::uniform(g.rank(), 1)
                                  : parse_degree(o.cap_text, g.rank());
    FormalElement a;
    // Coefficients: "mu:nu:re:im" entries separated by commas.
    std::stringstream ss(o.coeffs);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::stringstream fs(item);
        std::string mu_s, nu_s, re_s, im_s;
        if (!std::getline(fs, mu_s, ':') || !std::getline(fs, nu_s, ':') ||
            !std::getline(fs, re_s, ':'))
            throw std::invalid_argument("--coeffs entries must be mu:nu:re[:im]");
        std::getline(fs, im_s, ':');
        a.add(g, parse_path(g, mu_s), parse_path(g, nu_s),
              {std::stod(re_s), im_s.empty() ? 0.0 : std::stod(im_s)});
    }
    QmapResult res = qmap(rep, H, N, a);
    json j{{"tau", format_path(g, res.tau)},
           {"norm_a", res.norm_a},
           {"norm_a0", res.norm_a0},
           {"norm_qa", res.norm_qa},
           {"norm_qa0", res.norm_qa0},
           {"qa_equals_qa0", res.qa_equals_qa0},
           {"norm_preserved", res.norm_preserved},
           {"norm_decreasing", res.norm_decreasing}};
    out << j.dump(2) << "\n";
    return res.qa_equals_qa0 && res.norm_preserved && res.norm_decreasing ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite higher-rank graph analysis"};
    app.require_subcommand(1);
    Options o;

    auto add_file = [&](CLI::App* cmd) {
        cmd->add_option("file", o.file, "graph presentation file")->required();
        cmd->add_flag("--json", o.json_out, "machine-readable output");
    };

    add_file(app.add_subcommand("validate", "parse and validate a presentation"));

    CLI::App* paths_cmd = app.add_subcommand("paths", "enumerate paths from a vertex");
    add_file(paths_cmd);
    paths_cmd->add_option("--vertex", o.vertex)->required();
    paths_cmd->add_option("--degree", o.degree_text)->required();
    paths_cmd->add_flag("--le", o.le, "the <=n frontier instead of exact degree");

    CLI::App* mce_cmd = app.add_subcommand("mce", "minimal common extensions of two paths");
    add_file(mce_cmd);
    mce_cmd->add_option("--mu", o.mu)->required();
    mce_cmd->add_option("--nu", o.nu)->required();

    CLI::App* fe_cmd = app.add_subcommand("fe", "test a path set for exhaustiveness");
    add_file(fe_cmd);
    fe_cmd->add_option("--vertex", o.vertex)->required();
    fe_cmd->add_option("--set", o.set)->required();
    fe_cmd->add_option("--bound", o.bound_text);
    fe_cmd->add_option("--strategy", o.strategy, "auto|oracle|bounded");

    CLI::App* bd_cmd = app.add_subcommand("boundary", "enumerate maximal trajectories");
    add_file(bd_cmd);
    bd_cmd->add_option("--vertex", o.vertex)->required();
    bd_cmd->add_option("--depth", o.depth_text);

    CLI::App* check = app.add_subcommand("check", "decision procedures");
    check->require_subcommand(1);
    CLI::App* ap_cmd = check->add_subcommand("aperiodicity");
    add_file(ap_cmd);
    ap_cmd->add_option("--pair-bound", o.pair_bound_text);
    ap_cmd->add_option("--tau-bound", o.tau_bound_text);
    CLI::App* cof_cmd = check->add_subcommand("cofinality");
    add_file(cof_cmd);
    cof_cmd->add_option("--pair", o.pair_text, "restrict to one ordered pair v,w");
    cof_cmd->add_option("--bound", o.cof_bound);
    CLI::App* simp_cmd = check->add_subcommand("simplicity");
    add_file(simp_cmd);
    simp_cmd->add_option("--pair-bound", o.pair_bound_text);
    simp_cmd->add_option("--tau-bound", o.tau_bound_text);
    simp_cmd->add_option("--bound", o.cof_bound);

    CLI::App* ck_cmd = app.add_subcommand("ck-verify", "exact relation checks on the matrix family");
    add_file(ck_cmd);
    ck_cmd->add_option("--cap", o.cap_text);
    ck_cmd->add_flag("--dump", o.dump, "print matrices as coordinate lists");

    CLI::App* qm_cmd = app.add_subcommand("qmap", "norm-preserving compression check");
    add_file(qm_cmd);
    qm_cmd->add_option("--set", o.set)->required();
    qm_cmd->add_option("--coeffs", o.coeffs)->required();
    qm_cmd->add_option("--cap", o.cap_text, "degree cap N");

    add_file(app.add_subcommand("report", "full JSON report"));

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return 3;
    }

    try {
        if (app.got_subcommand("validate")) return cmd_validate(o, out);
        if (app.got_subcommand("paths")) return cmd_paths(o, out);
        if (app.got_subcommand("mce")) return cmd_mce(o, out);
        if (app.got_subcommand("fe")) return cmd_fe(o, out);
        if (app.got_subcommand("boundary")) return cmd_boundary(o, out);
        if (app.got_subcommand("check")) {
            if (check->got_subcommand("aperiodicity")) return cmd_check_aperiodicity(o, out);
            if (check->got_subcommand("cofinality")) return cmd_check_cofinality(o, out);
            if (check->got_subcommand("simplicity")) return cmd_check_simplicity(o, out);
        }
        if (app.got_subcommand("ck-verify")) return cmd_ck_verify(o, out);
        if (app.got_subcommand("qmap")) return cmd_qmap(o, out);
        if (app.got_subcommand("report")) return cmd_report(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    err << "usage error: no subcommand\n";
    return 3;
}

}  // namespace kg
