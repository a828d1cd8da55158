#include "kg/simplicity.hpp"

#include <json.hpp>

#include "kg/ckrep.hpp"

namespace kg {

using nlohmann::json;

Verdict combine_verdicts(const Verdict& ap, const Verdict& cof) {
    if (ap.fails()) return Verdict::make_fails("aperiodicity");
    if (cof.fails()) return Verdict::make_fails("cofinality");
    if (ap.holds() && cof.holds()) return Verdict::make_holds("aperiodic-and-cofinal");
    return Verdict::make_unknown(ap.unknown() ? "aperiodicity-unknown" : "cofinality-unknown");
}

SimplicityReport check_simplicity(const KGraph& g, const SimplicityBounds& bounds) {
    SimplicityReport rep;
    rep.aperiodicity = check_aperiodicity(g, bounds.pair_bound, bounds.tau_bound);
    rep.cofinality = check_cofinality(g, bounds.cofinality_bound);
    rep.verdict = combine_verdicts(rep.aperiodicity.verdict, rep.cofinality.verdict);
    if (boundary_exact(g)) {
        MatrixCK mrep = build_matrix_rep(g);
        rep.rep = RepCheck{mrep.dim(), span_dimension(mrep, Degree::uniform(g.rank(), 2))};
    }
    return rep;
}

SimplicityReport check_simplicity(const KGraph& g) {
    SimplicityBounds b{Degree::uniform(g.rank(), 2), Degree::uniform(g.rank(), 4), 6};
    return check_simplicity(g, b);
}

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

json verdict_json(const Verdict& v) {
    return json{{"verdict", to_string(v.outcome)}, {"certificate", v.certificate}};
}

json bp_json(const KGraph& g, const BoundaryPath& x) {
    json j;
    switch (x.body) {
        case BoundaryPath::Body::finite: j["kind"] = "finite"; break;
        case BoundaryPath::Body::periodic: j["kind"] = "periodic"; break;
        default: j["kind"] = "truncated"; break;
    }
    j["prefix"] = format_path(g, x.prefix);
    if (x.cycle) j["cycle"] = format_path(g, *x.cycle);
    j["degree"] = ext_degree_json(bp_degree(g, x));
    return j;
}

}  // namespace

std::string report_json(const KGraph& g, const SimplicityReport& rep, bool pretty) {
    json j;
    j["graph"] = g.name();
    j["rank"] = g.rank();
    j["flags"] = {{"locally_convex", g.locally_convex()},
                  {"acyclic", g.acyclic()},
                  {"has_sources", g.has_sources()},
                  {"boundary_finite", g.boundary_finite()}};

    json ap = verdict_json(rep.aperiodicity.verdict);
    ap["pairs_scanned"] = rep.aperiodicity.pairs_scanned;
    ap["all_pairs_separated"] = rep.aperiodicity.all_pairs_separated;
    if (rep.aperiodicity.periodicity_witness) {
        const auto& w = *rep.aperiodicity.periodicity_witness;
        ap["periodicity_witness"] = {{"vertex", g.vertex_name(w.vertex)},
                                     {"m", degree_json(w.m)},
                                     {"n", degree_json(w.n)}};
    }
    json wm = json::array();
    for (const SeparatedPair& p : rep.aperiodicity.witness_map)
        wm.push_back({{"mu", format_path(g, p.mu)},
                      {"nu", format_path(g, p.nu)},
                      {"tau", format_path(g, p.tau)}});
    ap["witnesses"] = wm;
    j["aperiodicity"] = ap;

    json cof = verdict_json(rep.cofinality.verdict);
    json pairs = json::array();
    for (const auto& [vw, res] : rep.cofinality.pairs) {
        json p = verdict_json(res.verdict);
        p["v"] = g.vertex_name(vw.first);
        p["w"] = g.vertex_name(vw.second);
        if (res.le_cert_n) p["le_n"] = degree_json(*res.le_cert_n);
        if (res.fe_cert) {
            json e = json::array();
            for (const Path& q : res.fe_cert->paths) e.push_back(format_path(g, q));
            p["exhaustive_set"] = e;
        }
        if (res.avoiding) p["avoiding"] = bp_json(g, *res.avoiding);
        if (!res.trapped.empty()) {
            json t = json::array();
            for (VertexId u : res.trapped) t.push_back(g.vertex_name(u));
            p["trapped"] = t;
        }
        pairs.push_back(p);
    }
    cof["pairs"] = pairs;
    j["cofinality"] = cof;

    j["simplicity"] = verdict_json(rep.verdict);
    if (rep.rep)
        j["rep"] = {{"dimension", rep.rep->dimension}, {"span_dim", rep.rep->span_dim}};
    else
        j["rep"] = nullptr;
    return pretty ? j.dump(2) : j.dump();
}

}  // namespace kg
