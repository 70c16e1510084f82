#include "qaoakit/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qaoakit {

using nlohmann::json;

namespace {

Graph graph_from_json(const json& data, bool directed) {
    Graph g;
    g.directed = directed;
    g.n = data.at("n").get<int>();
    if (g.n < 1) throw std::invalid_argument("graph: n must be positive");
    for (const auto& e : data.at("edges")) {
        if (!e.is_array() || e.size() < 2 || e.size() > 3)
            throw std::invalid_argument("graph: edge entries are [u,v] or [u,v,w]");
        int u = e[0].get<int>(), v = e[1].get<int>();
        if (u < 1 || v < 1 || u > g.n || v > g.n || u == v)
            throw std::invalid_argument("graph: edge endpoint out of range");
        if (!directed && u > v) std::swap(u, v);
        g.edges.push_back({u, v});
        if (e.size() == 3) {
            g.weights.resize(g.edges.size() - 1, 1.0);
            g.weights.push_back(e[2].get<double>());
        } else if (!g.weights.empty()) {
            g.weights.push_back(1.0);
        }
    }
    if (data.contains("vertex_weights"))
        g.vertex_weights = data.at("vertex_weights").get<std::vector<double>>();
    return g;
}

Graph graph_from_dimacs(const std::string& text) {
    Graph g;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        if (tag == "p") {
            std::string kind;
            int n = 0, m = 0;
            if (!(ls >> kind >> n >> m) || kind != "edge")
                throw std::invalid_argument("dimacs line " + std::to_string(lineno) +
                                            ": expected 'p edge n m'");
            g.n = n;
            have_header = true;
        } else if (tag == "e") {
            if (!have_header)
                throw std::invalid_argument("dimacs line " + std::to_string(lineno) +
                                            ": edge before header");
            int u = 0, v = 0;
            double w = 1.0;
            if (!(ls >> u >> v))
                throw std::invalid_argument("dimacs line " + std::to_string(lineno) +
                                            ": expected 'e u v [w]'");
            const bool weighted = static_cast<bool>(ls >> w);
            if (u < 1 || v < 1 || u > g.n || v > g.n || u == v)
                throw std::invalid_argument("dimacs line " + std::to_string(lineno) +
                                            ": endpoint out of range");
            if (u > v) std::swap(u, v);
            g.edges.push_back({u, v});
            if (weighted) {
                g.weights.resize(g.edges.size() - 1, 1.0);
                g.weights.push_back(w);
            } else if (!g.weights.empty()) {
                g.weights.push_back(1.0);
            }
        } else {
            throw std::invalid_argument("dimacs line " + std::to_string(lineno) +
                                        ": unknown record '" + tag + "'");
        }
    }
    if (!have_header) throw std::invalid_argument("dimacs: missing 'p edge' header");
    return g;
}

bool graph_kind(ProblemKind k) {
    switch (k) {
        case ProblemKind::MaxCut:
        case ProblemKind::DirectedMaxCut:
        case ProblemKind::MaxIndependentSet:
        case ProblemKind::MaxClique:
        case ProblemKind::MinVertexCover:
        case ProblemKind::MaxColorableSubgraph:
        case ProblemKind::GraphPartitioning:
        case ProblemKind::MaxBisection:
        case ProblemKind::MaxVertexKCover:
        case ProblemKind::MaxColorableInducedSubgraph:
        case ProblemKind::MinGraphColoring:
        case ProblemKind::MinCliqueCover:
        case ProblemKind::MinEdgeColoring:
            return true;
        default:
            return false;
    }
}

}  // namespace

ProblemInstance parse_instance_text(const std::string& text, const std::string& kind_override) {
    // DIMACS edge lists are accepted for graph kinds; anything starting with
    // 'c' or 'p' that is not JSON goes down that path.
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw std::invalid_argument("empty instance");

    if (text[first] != '{') {
        if (kind_override.empty())
            throw std::invalid_argument("DIMACS input requires an explicit --problem kind");
        const auto kind = kind_from_name(kind_override);
        if (!kind) throw std::invalid_argument("unknown problem kind: " + kind_override);
        if (!graph_kind(*kind))
            throw std::invalid_argument("DIMACS input only describes graph problems");
        ProblemInstance inst;
        inst.kind = *kind;
        inst.sense = default_sense(*kind);
        inst.graph = graph_from_dimacs(text);
        inst.graph.directed = *kind == ProblemKind::DirectedMaxCut;
        return inst;
    }

    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("instance JSON: ") + err.what());
    }

    std::string kind_name_str = kind_override;
    if (kind_name_str.empty()) kind_name_str = root.at("problem").get<std::string>();
    const auto kind = kind_from_name(kind_name_str);
    if (!kind) throw std::invalid_argument("unknown problem kind: " + kind_name_str);

    ProblemInstance inst;
    inst.kind = *kind;
    inst.sense = default_sense(*kind);
    if (root.contains("sense")) {
        const std::string s = root.at("sense").get<std::string>();
        if (s == "maximize")
            inst.sense = Sense::Maximize;
        else if (s == "minimize")
            inst.sense = Sense::Minimize;
        else
            throw std::invalid_argument("sense must be 'maximize' or 'minimize'");
    }

    const json data = root.contains("data") ? root.at("data") : root;
    try {
        if (graph_kind(*kind)) {
            inst.graph = graph_from_json(data, *kind == ProblemKind::DirectedMaxCut);
            if (data.contains("kappa")) inst.kappa = data.at("kappa").get<int>();
            switch (*kind) {
                case ProblemKind::MaxColorableSubgraph:
                case ProblemKind::MaxColorableInducedSubgraph:
                case ProblemKind::MaxVertexKCover:
                    if (inst.kappa < 1)
                        throw std::invalid_argument("this kind requires a positive 'kappa'");
                    break;
                default:
                    break;
            }
        } else if (*kind == ProblemKind::MaxLSat || *kind == ProblemKind::MinLSat ||
                   *kind == ProblemKind::NaeLSat) {
            inst.sat.n_vars = data.at("n_vars").get<int>();
            for (const auto& c : data.at("clauses")) {
                std::vector<int> clause = c.get<std::vector<int>>();
                for (int lit : clause) {
                    if (lit == 0 || std::abs(lit) > inst.sat.n_vars)
                        throw std::invalid_argument("SAT literal out of range");
                }
                inst.sat.clauses.push_back(std::move(clause));
            }
        } else if (*kind == ProblemKind::E3Lin2) {
            inst.sat.n_vars = data.at("n_vars").get<int>();
            for (const auto& c : data.at("equations")) {
                std::vector<int> eq = c.get<std::vector<int>>();
                if (eq.size() != 4) throw std::invalid_argument("equations are [a1,a2,a3,b]");
                if (eq[0] == eq[1] || eq[0] == eq[2] || eq[1] == eq[2])
                    throw std::invalid_argument("E3Lin2 equations need distinct variables");
                for (int i = 0; i < 3; ++i) {
                    if (eq[i] < 1 || eq[i] > inst.sat.n_vars)
                        throw std::invalid_argument("E3Lin2 variable out of range");
                }
                if (eq[3] != 0 && eq[3] != 1)
                    throw std::invalid_argument("E3Lin2 right side must be 0/1");
                inst.sat.clauses.push_back(std::move(eq));
            }
        } else if (*kind == ProblemKind::SetSplitting || *kind == ProblemKind::MaxSetPacking ||
                   *kind == ProblemKind::MinSetCover) {
            inst.sets.universe = data.at("universe").get<int>();
            for (const auto& s : data.at("subsets")) {
                std::vector<int> sub = s.get<std::vector<int>>();
                for (int e : sub) {
                    if (e < 1 || e > inst.sets.universe)
                        throw std::invalid_argument("subset element out of range");
                }
                inst.sets.subsets.push_back(std::move(sub));
            }
        } else if (*kind == ProblemKind::Tsp) {
            inst.tsp.n = data.at("n").get<int>();
            inst.tsp.dist = data.at("dist").get<std::vector<std::vector<double>>>();
            if (static_cast<int>(inst.tsp.dist.size()) != inst.tsp.n)
                throw std::invalid_argument("dist must be an n x n matrix");
            for (const auto& row : inst.tsp.dist) {
                if (static_cast<int>(row.size()) != inst.tsp.n)
                    throw std::invalid_argument("dist must be an n x n matrix");
            }
            if (data.contains("fix_first_city"))
                inst.tsp.fix_first_city = data.at("fix_first_city").get<bool>();
        } else {  // SMS family
            inst.sms.p = data.at("p").get<std::vector<int>>();
            inst.sms.d = data.at("d").get<std::vector<int>>();
            inst.sms.w = data.contains("w") ? data.at("w").get<std::vector<double>>()
                                            : std::vector<double>(inst.sms.p.size(), 1.0);
            if (data.contains("r")) inst.sms.r = data.at("r").get<std::vector<int>>();
            if (data.contains("horizon")) inst.sms.horizon = data.at("horizon").get<int>();
            if (data.contains("buffer_phase"))
                inst.sms.buffer_phase = data.at("buffer_phase").get<double>();
            const std::size_t n = inst.sms.p.size();
            if (inst.sms.d.size() != n || inst.sms.w.size() != n ||
                (!inst.sms.r.empty() && inst.sms.r.size() != n))
                throw std::invalid_argument("SMS vectors must have equal length");
            for (int v : inst.sms.p)
                if (v < 1) throw std::invalid_argument("processing times must be positive");
            for (int v : inst.sms.d)
                if (v < 0) throw std::invalid_argument("deadlines must be nonnegative");
            for (int v : inst.sms.r)
                if (v < 0) throw std::invalid_argument("release dates must be nonnegative");
        }
    } catch (const json::exception& err) {
        throw std::invalid_argument(std::string("instance data: ") + err.what());
    }
    return inst;
}

ProblemInstance load_instance(const std::string& path, const std::string& kind_override) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance_text(buf.str(), kind_override);
}

std::string instance_to_json(const ProblemInstance& inst) {
    json data;
    if (inst.graph.n > 0) {
        data["n"] = inst.graph.n;
        json edges = json::array();
        for (int e = 0; e < inst.graph.m(); ++e) {
            json entry = {inst.graph.edges[e].first, inst.graph.edges[e].second};
            if (!inst.graph.weights.empty()) entry.push_back(inst.graph.weight(e));
            edges.push_back(entry);
        }
        data["edges"] = edges;
        if (inst.kappa > 0) data["kappa"] = inst.kappa;
    }
    if (inst.sat.n_vars > 0) {
        data["n_vars"] = inst.sat.n_vars;
        data[inst.kind == ProblemKind::E3Lin2 ? "equations" : "clauses"] = inst.sat.clauses;
    }
    if (inst.sets.universe > 0) {
        data["universe"] = inst.sets.universe;
        data["subsets"] = inst.sets.subsets;
    }
    if (inst.tsp.n > 0) {
        data["n"] = inst.tsp.n;
        data["dist"] = inst.tsp.dist;
    }
    if (!inst.sms.p.empty()) {
        data["p"] = inst.sms.p;
        data["d"] = inst.sms.d;
        data["w"] = inst.sms.w;
        if (!inst.sms.r.empty()) data["r"] = inst.sms.r;
        if (inst.sms.horizon >= 0) data["horizon"] = inst.sms.horizon;
        if (inst.sms.buffer_phase) data["buffer_phase"] = *inst.sms.buffer_phase;
    }
    json root;
    root["problem"] = kind_name(inst.kind);
    root["sense"] = inst.sense == Sense::Maximize ? "maximize" : "minimize";
    root["data"] = data;
    return root.dump(2);
}

}  // namespace qaoakit
