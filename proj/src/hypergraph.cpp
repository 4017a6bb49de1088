#include "latcount/hypergraph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace latcount {

namespace {

void check_bound_vector(const std::vector<std::optional<Int>>& v, std::size_t want,
                        const char* what) {
    if (!v.empty() && v.size() != want)
        throw std::invalid_argument(std::string("hypergraph: ") + what +
                                    " vector has the wrong length");
    for (const auto& b : v)
        if (b && *b < 0)
            throw std::invalid_argument(std::string("hypergraph: negative ") + what + " bound");
}

void check_instance(const HypergraphInstance& h) {
    check_bound_vector(h.edgeLo, h.edges.size(), "edge");
    check_bound_vector(h.edgeHi, h.edges.size(), "edge");
    check_bound_vector(h.vertexLo, h.vertexCount, "vertex");
    check_bound_vector(h.vertexHi, h.vertexCount, "vertex");
}

void check_var_vectors(const HypergraphInstance& h, std::size_t nvars) {
    if (!h.weights.empty() && h.weights.size() != nvars)
        throw std::invalid_argument("hypergraph: weights length does not match the variables");
    if (!h.mult.empty() && h.mult.size() != nvars)
        throw std::invalid_argument("hypergraph: mult length does not match the variables");
    for (const Int& u : h.mult)
        if (u < 0) throw std::invalid_argument("hypergraph: negative multiplicity cap");
}

std::vector<Int> default_objective(const HypergraphInstance& h, std::size_t nvars) {
    if (!h.weights.empty()) return h.weights;
    return std::vector<Int>(nvars, Int(1));
}

bool has_positive(const std::vector<std::optional<Int>>& v) {
    for (const auto& b : v)
        if (b && *b > 0) return true;
    return false;
}

struct RowSink {
    std::vector<std::vector<Int>> rows;
    std::vector<Rat> rhs;

    void add(std::vector<Int> coeffs, Rat b) {
        rows.push_back(std::move(coeffs));
        rhs.push_back(std::move(b));
    }

    CanonicalSystem take(std::size_t nvars) {
        if (rows.empty()) add(std::vector<Int>(nvars, Int(0)), Rat(0));
        Matrix a(rows.size(), nvars);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < nvars; ++j) a(i, j) = rows[i][j];
        return CanonicalSystem(std::move(a), std::move(rhs));
    }
};

}  // namespace

HypergraphInstance::HypergraphInstance(std::size_t nv, std::vector<std::vector<std::size_t>> es)
    : vertexCount(nv), edges(std::move(es)) {
    if (nv == 0) throw std::invalid_argument("hypergraph: needs at least one vertex");
    for (auto& e : edges) {
        if (e.empty()) throw std::invalid_argument("hypergraph: empty hyperedge");
        std::sort(e.begin(), e.end());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] >= nv) throw std::invalid_argument("hypergraph: vertex index out of range");
            if (i > 0 && e[i] == e[i - 1])
                throw std::invalid_argument("hypergraph: repeated vertex inside a hyperedge");
        }
        d2 = std::max(d2, e.size());
    }
    std::vector<std::vector<std::size_t>> unique = edges;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    std::vector<std::size_t> degree(nv, 0);
    for (const auto& e : unique)
        for (std::size_t v : e) ++degree[v];
    for (std::size_t v = 0; v < nv; ++v) d1 = std::max(d1, degree[v]);
}

Matrix incidence_matrix(const HypergraphInstance& h) {
    Matrix a(h.vertexCount, h.edges.size());
    for (std::size_t e = 0; e < h.edges.size(); ++e)
        for (std::size_t v : h.edges[e]) a(v, e) = 1;
    return a;
}

EncodedProblem encode_vertex_based(const HypergraphInstance& h, HyperMode mode) {
    if (mode != HyperMode::STABLE_MULTISET && mode != HyperMode::VERTEX_MULTICOVER &&
        mode != HyperMode::GENERAL)
        throw std::invalid_argument("encode_vertex_based: edge-variable mode");
    check_instance(h);
    check_var_vectors(h, h.vertexCount);
    if (mode == HyperMode::STABLE_MULTISET && has_positive(h.edgeLo))
        throw std::invalid_argument("stable multiset takes upper edge bounds only");
    if (mode == HyperMode::VERTEX_MULTICOVER && has_positive(h.edgeHi))
        throw std::invalid_argument("vertex multicover takes lower edge bounds only");

    const std::size_t nv = h.vertexCount;
    RowSink sink;
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
        if (!h.edgeHi.empty() && h.edgeHi[e]) {
            std::vector<Int> row(nv, Int(0));
            for (std::size_t v : h.edges[e]) row[v] = 1;
            sink.add(std::move(row), Rat(*h.edgeHi[e]));
        }
        if (!h.edgeLo.empty() && h.edgeLo[e]) {
            std::vector<Int> row(nv, Int(0));
            for (std::size_t v : h.edges[e]) row[v] = -1;
            sink.add(std::move(row), Rat(-*h.edgeLo[e]));
        }
    }
    for (std::size_t v = 0; v < nv; ++v) {
        std::vector<Int> neg(nv, Int(0));
        neg[v] = -1;
        sink.add(neg, Rat(0));
        if (!h.vertexHi.empty() && h.vertexHi[v]) {
            std::vector<Int> row(nv, Int(0));
            row[v] = 1;
            sink.add(std::move(row), Rat(*h.vertexHi[v]));
        }
        if (!h.vertexLo.empty() && h.vertexLo[v]) {
            std::vector<Int> row(nv, Int(0));
            row[v] = -1;
            sink.add(std::move(row), Rat(-*h.vertexLo[v]));
        }
        if (!h.mult.empty()) {
            std::vector<Int> row(nv, Int(0));
            row[v] = 1;
            sink.add(std::move(row), Rat(h.mult[v]));
        }
    }
    return EncodedProblem{sink.take(nv), default_objective(h, nv),
                          mode != HyperMode::VERTEX_MULTICOVER};
}

EncodedProblem encode_edge_based(const HypergraphInstance& h, HyperMode mode) {
    if (mode != HyperMode::MULTIMATCHING && mode != HyperMode::SET_MULTICOVER &&
        mode != HyperMode::GENERAL)
        throw std::invalid_argument("encode_edge_based: vertex-variable mode");
    check_instance(h);
    const std::size_t ne = h.edges.size();
    check_var_vectors(h, ne);
    if (mode == HyperMode::MULTIMATCHING && has_positive(h.vertexLo))
        throw std::invalid_argument("multimatching takes upper vertex bounds only");
    if (mode == HyperMode::SET_MULTICOVER && has_positive(h.vertexHi))
        throw std::invalid_argument("set multicover takes lower vertex bounds only");

    RowSink sink;
    for (std::size_t v = 0; v < h.vertexCount; ++v) {
        const bool hasHi = !h.vertexHi.empty() && h.vertexHi[v].has_value();
        const bool hasLo = !h.vertexLo.empty() && h.vertexLo[v].has_value();
        if (!hasHi && !hasLo) continue;
        std::vector<Int> row(ne, Int(0));
        for (std::size_t e = 0; e < ne; ++e)
            if (std::binary_search(h.edges[e].begin(), h.edges[e].end(), v)) row[e] = 1;
        if (hasHi) sink.add(row, Rat(*h.vertexHi[v]));
        if (hasLo) {
            for (Int& x : row) x = -x;
            sink.add(std::move(row), Rat(-*h.vertexLo[v]));
        }
    }
    for (std::size_t e = 0; e < ne; ++e) {
        std::vector<Int> neg(ne, Int(0));
        neg[e] = -1;
        sink.add(neg, Rat(0));
        if (!h.edgeHi.empty() && h.edgeHi[e]) {
            std::vector<Int> row(ne, Int(0));
            row[e] = 1;
            sink.add(std::move(row), Rat(*h.edgeHi[e]));
        }
        if (!h.edgeLo.empty() && h.edgeLo[e]) {
            std::vector<Int> row(ne, Int(0));
            row[e] = -1;
            sink.add(std::move(row), Rat(-*h.edgeLo[e]));
        }
        if (!h.mult.empty()) {
            std::vector<Int> row(ne, Int(0));
            row[e] = 1;
            sink.add(std::move(row), Rat(h.mult[e]));
        }
    }
    return EncodedProblem{sink.take(ne), default_objective(h, ne),
                          mode != HyperMode::SET_MULTICOVER};
}

EncodedStandardProblem encode_edge_based_standard(const HypergraphInstance& h, HyperMode mode) {
    if (mode != HyperMode::MULTIMATCHING && mode != HyperMode::SET_MULTICOVER &&
        mode != HyperMode::GENERAL)
        throw std::invalid_argument("encode_edge_based_standard: vertex-variable mode");
    check_instance(h);
    const std::size_t ne = h.edges.size();
    check_var_vectors(h, ne);
    if (mode == HyperMode::MULTIMATCHING && has_positive(h.vertexLo))
        throw std::invalid_argument("multimatching takes upper vertex bounds only");
    if (mode == HyperMode::SET_MULTICOVER && has_positive(h.vertexHi))
        throw std::invalid_argument("set multicover takes lower vertex bounds only");
    if (has_positive(h.edgeLo))
        throw std::invalid_argument(
            "standard encoding: edge lower bounds are not expressible, use the inequality route");

    std::vector<std::size_t> boundRows;
    for (std::size_t v = 0; v < h.vertexCount; ++v) {
        const bool hasHi = !h.vertexHi.empty() && h.vertexHi[v].has_value();
        const bool hasLo = !h.vertexLo.empty() && h.vertexLo[v].has_value();
        if (hasHi && hasLo)
            throw std::invalid_argument(
                "standard encoding: two-sided vertex bound, use the inequality route");
        if (hasHi || hasLo) boundRows.push_back(v);
    }
    const std::size_t k = boundRows.size();
    const std::size_t nvars = ne + k;
    if (nvars == 0) throw std::invalid_argument("standard encoding: nothing to encode");

    // Edge caps come from mult and edgeHi together; they must cover every
    // edge or no edge, since the equality form has no partial-cap row.
    std::vector<std::optional<Int>> cap(ne);
    std::size_t capped = 0;
    for (std::size_t e = 0; e < ne; ++e) {
        if (!h.mult.empty()) cap[e] = h.mult[e];
        if (!h.edgeHi.empty() && h.edgeHi[e])
            cap[e] = cap[e] ? std::min(*cap[e], *h.edgeHi[e]) : *h.edgeHi[e];
        if (cap[e]) ++capped;
    }
    if (capped != 0 && capped != ne)
        throw std::invalid_argument("standard encoding: caps on every edge or on none");

    Matrix a(k, nvars);
    std::vector<Rat> b(k);
    for (std::size_t r = 0; r < k; ++r) {
        const std::size_t v = boundRows[r];
        const bool hasHi = !h.vertexHi.empty() && h.vertexHi[v].has_value();
        for (std::size_t e = 0; e < ne; ++e)
            if (std::binary_search(h.edges[e].begin(), h.edges[e].end(), v))
                a(r, e) = hasHi ? 1 : -1;
        a(r, ne + r) = 1;
        b[r] = hasHi ? Rat(*h.vertexHi[v]) : Rat(-*h.vertexLo[v]);
    }

    std::optional<std::vector<Int>> u;
    if (capped == ne && ne > 0) {
        std::vector<Int> caps(nvars, Int(0));
        for (std::size_t e = 0; e < ne; ++e) caps[e] = *cap[e];
        for (std::size_t r = 0; r < k; ++r) {
            const std::size_t v = boundRows[r];
            const bool hasHi = !h.vertexHi.empty() && h.vertexHi[v].has_value();
            if (hasHi) {
                caps[ne + r] = *h.vertexHi[v];
            } else {
                Int reach(0);
                for (std::size_t e = 0; e < ne; ++e)
                    if (std::binary_search(h.edges[e].begin(), h.edges[e].end(), v))
                        reach += *cap[e];
                Int room = reach - *h.vertexLo[v];
                caps[ne + r] = room > 0 ? room : Int(0);
            }
        }
        u = std::move(caps);
    }

    std::vector<Int> obj = default_objective(h, ne);
    obj.resize(nvars, Int(0));  // slacks carry no weight
    return EncodedStandardProblem{StandardSystem(std::move(a), std::move(b), std::move(u)),
                                  std::move(obj), mode != HyperMode::SET_MULTICOVER, ne};
}

HypergraphInstance glue_duplicate_edges(const HypergraphInstance& h) {
    if (!h.weights.empty() || !h.mult.empty() || !h.edgeLo.empty() || !h.edgeHi.empty())
        throw std::invalid_argument(
            "glue_duplicate_edges expects an unweighted, uncapped instance without edge bounds");
    std::vector<std::vector<std::size_t>> unique;
    std::map<std::vector<std::size_t>, bool> seen;
    for (const auto& e : h.edges) {
        if (seen.emplace(e, true).second) unique.push_back(e);
    }
    HypergraphInstance g(h.vertexCount, std::move(unique));
    g.vertexLo = h.vertexLo;
    g.vertexHi = h.vertexHi;
    return g;
}

SolveReport solve_encoded(const EncodedProblem& ep, bool withCount) {
    const std::size_t n = ep.system.num_vars();
    if (ep.objective.size() != n)
        throw std::invalid_argument("solve_encoded: objective length mismatch");
    if (n == 0) {
        SolveReport rep;
        bool ok = true;
        for (const Rat& bi : ep.system.b())
            if (bi < 0) ok = false;
        if (ok) {
            rep.status = SolveStatus::FEASIBLE;
            rep.witness = std::vector<Int>{};
            rep.optimum = Int(0);
            if (withCount) rep.optimaCount = Int(1);
        }
        return rep;
    }
    std::vector<Int> obj = ep.objective;
    if (!ep.maximize)
        for (Int& w : obj) w = -w;
    SolveReport rep = withCount ? optimize_and_count(ep.system, obj) : optimize(ep.system, obj);
    if (!ep.maximize && rep.optimum) *rep.optimum = -*rep.optimum;
    return rep;
}

SolveReport solve_encoded_standard(const EncodedStandardProblem& ep, bool withCount) {
    if (ep.system.inconsistent()) return SolveReport{};
    EncodedProblem conv{standard_to_canonical(ep.system), ep.objective, ep.maximize};
    SolveReport rep = solve_encoded(conv, withCount);
    if (rep.witness && rep.witness->size() > ep.primaryVars)
        rep.witness->resize(ep.primaryVars);
    return rep;
}

SolveReport solve_hyper(const HypergraphInstance& h, HyperMode mode, bool withCount) {
    if (mode == HyperMode::GENERAL)
        throw std::invalid_argument("solve_hyper: GENERAL has no fixed direction, encode directly");
    const bool edgeIndexed =
        mode == HyperMode::MULTIMATCHING || mode == HyperMode::SET_MULTICOVER;
    const bool maximize =
        mode == HyperMode::STABLE_MULTISET || mode == HyperMode::MULTIMATCHING;
    check_instance(h);
    const std::size_t nvars = edgeIndexed ? h.edges.size() : h.vertexCount;
    check_var_vectors(h, nvars);

    // A maximization with no positive lower bound anywhere always contains
    // the origin, so one uncapped variable with positive weight already
    // proves the objective unbounded.
    if (maximize && !has_positive(h.edgeLo) && !has_positive(h.vertexLo)) {
        for (std::size_t i = 0; i < nvars; ++i) {
            Int w = h.weights.empty() ? Int(1) : h.weights[i];
            if (w <= 0) continue;
            bool capped = !h.mult.empty();
            if (edgeIndexed) {
                if (!h.edgeHi.empty() && h.edgeHi[i]) capped = true;
                if (!capped && !h.vertexHi.empty())
                    for (std::size_t v : h.edges[i])
                        if (h.vertexHi[v]) {
                            capped = true;
                            break;
                        }
            } else {
                if (!h.vertexHi.empty() && h.vertexHi[i]) capped = true;
                if (!capped && !h.edgeHi.empty())
                    for (std::size_t e = 0; e < h.edges.size() && !capped; ++e)
                        if (h.edgeHi[e] &&
                            std::binary_search(h.edges[e].begin(), h.edges[e].end(), i))
                            capped = true;
            }
            if (!capped) {
                SolveReport rep;
                rep.status = SolveStatus::UNBOUNDED;
                return rep;
            }
        }
    }
    EncodedProblem ep = edgeIndexed ? encode_edge_based(h, mode) : encode_vertex_based(h, mode);
    return solve_encoded(ep, withCount);
}

HypergraphInstance dominating_cover_instance(const HypergraphInstance& graph,
                                             bool openNeighborhoods) {
    check_instance(graph);
    std::map<std::vector<std::size_t>, bool> seen;
    for (const auto& e : graph.edges) {
        if (e.size() != 2) throw std::invalid_argument("dominating_multiset: needs a graph");
        if (!seen.emplace(e, true).second)
            throw std::invalid_argument("dominating_multiset: duplicate edge in a simple graph");
    }
    const std::size_t nv = graph.vertexCount;
    check_var_vectors(graph, nv);

    std::vector<std::vector<std::size_t>> nbhd(nv);
    for (const auto& e : graph.edges) {
        nbhd[e[0]].push_back(e[1]);
        nbhd[e[1]].push_back(e[0]);
    }
    std::vector<std::vector<std::size_t>> picks;
    std::vector<std::size_t> kept;
    for (std::size_t v = 0; v < nv; ++v) {
        auto set = nbhd[v];
        if (!openNeighborhoods) set.push_back(v);
        std::sort(set.begin(), set.end());
        if (set.empty()) continue;  // picking an isolated vertex covers nothing
        picks.push_back(std::move(set));
        kept.push_back(v);
    }
    HypergraphInstance cover(nv, std::move(picks));
    cover.vertexLo = graph.vertexLo.empty() ? std::vector<std::optional<Int>>(nv, Int(1))
                                            : graph.vertexLo;
    if (!graph.weights.empty())
        for (std::size_t v : kept) cover.weights.push_back(graph.weights[v]);
    if (!graph.mult.empty())
        for (std::size_t v : kept) cover.mult.push_back(graph.mult[v]);
    return cover;
}

SolveReport dominating_multiset(const HypergraphInstance& graph, bool openNeighborhoods) {
    return solve_hyper(dominating_cover_instance(graph, openNeighborhoods),
                       HyperMode::SET_MULTICOVER, true);
}

}  // namespace latcount
