#include "latcount/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "latcount/errors.hpp"

namespace latcount {

namespace {

struct Line {
    int no;
    std::vector<std::string> tok;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(std::move(t));
        if (!tok.empty()) out.push_back(Line{no, std::move(tok)});
    }
    return out;
}

bool integer_shape(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

Int parse_int_tok(const std::string& s, int line) {
    if (!integer_shape(s)) throw ParseError(line, "expected an integer, got '" + s + "'");
    return Int(s);
}

Rat parse_rat_tok(const std::string& s, int line) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int_tok(s, line));
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!integer_shape(num) || !integer_shape(den) || den[0] == '-')
        throw ParseError(line, "expected a rational, got '" + s + "'");
    Int d(den);
    if (d == 0) throw ParseError(line, "zero denominator in '" + s + "'");
    return make_rat(Int(num), d);
}

std::size_t parse_size_tok(const std::string& s, int line) {
    Int v = parse_int_tok(s, line);
    if (v < 0 || v > 1000000) throw ParseError(line, "size out of range: '" + s + "'");
    return static_cast<std::size_t>(v.get_ui());
}

// "inf" / "-inf" mean no bound on either side.
std::optional<Int> parse_bound_tok(const std::string& s, int line) {
    if (s == "inf" || s == "-inf") return std::nullopt;
    Int v = parse_int_tok(s, line);
    if (v < 0) throw ParseError(line, "finite bounds must be nonnegative");
    return v;
}

std::vector<Int> parse_int_list(const Line& l, std::size_t from) {
    std::vector<Int> out;
    for (std::size_t i = from; i < l.tok.size(); ++i) out.push_back(parse_int_tok(l.tok[i], l.no));
    return out;
}

InstanceFile parse_system(const std::vector<Line>& lines, std::size_t pos, bool standardForm) {
    const Line& head = lines[pos - 1];
    bool withMult = false;
    if (standardForm && head.tok.size() == 4) {
        if (head.tok[3] != "with-mult")
            throw ParseError(head.no, "unknown header marker '" + head.tok[3] + "'");
        withMult = true;
    } else if (head.tok.size() != 3) {
        throw ParseError(head.no, standardForm ? "header is 'standard k n [with-mult]'"
                                               : "header is 'canonical m n'");
    }
    const std::size_t m = parse_size_tok(head.tok[1], head.no);
    const std::size_t n = parse_size_tok(head.tok[2], head.no);
    if (m == 0 || n == 0) throw ParseError(head.no, "need at least one row and one variable");

    Matrix a(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        if (pos >= lines.size()) throw ParseError(head.no, "missing coefficient rows");
        const Line& l = lines[pos++];
        if (l.tok.size() != n)
            throw ParseError(l.no, "expected " + std::to_string(n) + " coefficients");
        for (std::size_t j = 0; j < n; ++j) a(i, j) = parse_int_tok(l.tok[j], l.no);
    }

    if (pos >= lines.size() || lines[pos].tok[0] != "rhs")
        throw ParseError(pos < lines.size() ? lines[pos].no : head.no, "expected the rhs line");
    const Line& rl = lines[pos++];
    if (rl.tok.size() != m + 1)
        throw ParseError(rl.no, "expected " + std::to_string(m) + " rhs values");
    std::vector<Rat> b(m);
    for (std::size_t i = 0; i < m; ++i) b[i] = parse_rat_tok(rl.tok[i + 1], rl.no);

    std::optional<std::vector<Int>> mult;
    std::optional<std::vector<Int>> objective;
    int multLine = head.no;
    while (pos < lines.size()) {
        const Line& l = lines[pos++];
        if (l.tok[0] == "mult" && !mult) {
            if (l.tok.size() != n + 1)
                throw ParseError(l.no, "expected " + std::to_string(n) + " mult values");
            mult = parse_int_list(l, 1);
            multLine = l.no;
        } else if (l.tok[0] == "objective" && !objective) {
            if (l.tok.size() != n + 1)
                throw ParseError(l.no, "expected " + std::to_string(n) + " objective values");
            objective = parse_int_list(l, 1);
        } else {
            throw ParseError(l.no, "unexpected line '" + l.tok[0] + "'");
        }
    }

    if (standardForm) {
        if (withMult != mult.has_value())
            throw ParseError(multLine, withMult ? "with-mult header but no mult line"
                                                : "mult line needs the with-mult header");
        try {
            StandardSystem s(std::move(a), std::move(b), std::move(mult));
            return InstanceFile{std::move(s), std::move(objective)};
        } catch (const std::invalid_argument& e) {
            throw ParseError(multLine, e.what());
        }
    }

    if (mult) {
        // Caps become ordinary rows of the inequality system.
        Matrix ext(m + n, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) ext(i, j) = a(i, j);
        for (std::size_t j = 0; j < n; ++j) {
            ext(m + j, j) = 1;
            b.push_back(Rat((*mult)[j]));
        }
        a = std::move(ext);
    }
    return InstanceFile{CanonicalSystem(std::move(a), std::move(b)), std::move(objective)};
}

InstanceFile parse_hypergraph(const std::vector<Line>& lines, std::size_t pos) {
    const Line& head = lines[pos - 1];
    if (head.tok.size() != 3) throw ParseError(head.no, "header is 'hypergraph nv ne'");
    const std::size_t nv = parse_size_tok(head.tok[1], head.no);
    const std::size_t ne = parse_size_tok(head.tok[2], head.no);
    if (nv == 0) throw ParseError(head.no, "need at least one vertex");

    std::vector<std::vector<std::size_t>> edges(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        if (pos >= lines.size()) throw ParseError(head.no, "missing hyperedge lines");
        const Line& l = lines[pos++];
        for (const std::string& t : l.tok) {
            Int v = parse_int_tok(t, l.no);
            if (v < 1 || v > Int(static_cast<unsigned long>(nv)))
                throw ParseError(l.no, "vertex index out of range: '" + t + "'");
            edges[e].push_back(static_cast<std::size_t>(v.get_ui()) - 1);
        }
    }

    std::vector<std::optional<Int>> elo, ehi, vlo, vhi;
    std::vector<Int> weights, mult;
    bool haveWeights = false, haveMult = false;
    int ebLine = head.no, vbLine = head.no;
    while (pos < lines.size()) {
        const Line& l = lines[pos++];
        if (l.tok[0] == "edgebounds") {
            if (l.tok.size() != 3) throw ParseError(l.no, "edgebounds takes two values");
            if (elo.empty()) ebLine = l.no;
            elo.push_back(parse_bound_tok(l.tok[1], l.no));
            ehi.push_back(parse_bound_tok(l.tok[2], l.no));
        } else if (l.tok[0] == "vertexbounds") {
            if (l.tok.size() != 3) throw ParseError(l.no, "vertexbounds takes two values");
            if (vlo.empty()) vbLine = l.no;
            vlo.push_back(parse_bound_tok(l.tok[1], l.no));
            vhi.push_back(parse_bound_tok(l.tok[2], l.no));
        } else if (l.tok[0] == "weights" && !haveWeights) {
            weights = parse_int_list(l, 1);
            haveWeights = true;
            if (weights.empty()) throw ParseError(l.no, "weights line needs values");
        } else if (l.tok[0] == "mult" && !haveMult) {
            mult = parse_int_list(l, 1);
            haveMult = true;
            if (mult.empty()) throw ParseError(l.no, "mult line needs values");
            for (const Int& u : mult)
                if (u < 0) throw ParseError(l.no, "mult values must be nonnegative");
        } else {
            throw ParseError(l.no, "unexpected line '" + l.tok[0] + "'");
        }
    }
    if (!elo.empty() && elo.size() != ne)
        throw ParseError(ebLine, "expected one edgebounds line per edge");
    if (!vlo.empty() && vlo.size() != nv)
        throw ParseError(vbLine, "expected one vertexbounds line per vertex");

    try {
        HypergraphInstance h(nv, std::move(edges));
        h.edgeLo = std::move(elo);
        h.edgeHi = std::move(ehi);
        h.vertexLo = std::move(vlo);
        h.vertexHi = std::move(vhi);
        h.weights = std::move(weights);
        h.mult = std::move(mult);
        return InstanceFile{std::move(h), std::nullopt};
    } catch (const std::invalid_argument& e) {
        throw ParseError(head.no, e.what());
    }
}

std::string bound_str(const std::optional<Int>& b, const char* absent) {
    return b ? b->get_str() : std::string(absent);
}

}  // namespace

InstanceFile parse_instance(const std::string& text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, "empty instance");
    const Line& head = lines[0];
    if (head.tok[0] == "canonical") return parse_system(lines, 1, false);
    if (head.tok[0] == "standard") return parse_system(lines, 1, true);
    if (head.tok[0] == "hypergraph") return parse_hypergraph(lines, 1);
    throw ParseError(head.no, "unknown header '" + head.tok[0] + "'");
}

InstanceFile load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string write_instance(const InstanceFile& inst) {
    std::ostringstream os;
    auto writeRows = [&](const Matrix& a, const std::vector<Rat>& b) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? " " : "") << a(i, j).get_str();
            os << "\n";
        }
        os << "rhs";
        for (const Rat& r : b) os << " " << r.get_str();
        os << "\n";
    };
    auto writeObjective = [&]() {
        if (!inst.objective) return;
        os << "objective";
        for (const Int& c : *inst.objective) os << " " << c.get_str();
        os << "\n";
    };

    if (const auto* c = std::get_if<CanonicalSystem>(&inst.payload)) {
        os << "canonical " << c->num_rows() << " " << c->num_vars() << "\n";
        writeRows(c->A(), c->b());
        writeObjective();
    } else if (const auto* s = std::get_if<StandardSystem>(&inst.payload)) {
        os << "standard " << s->num_rows() << " " << s->num_vars()
           << (s->u() ? " with-mult" : "") << "\n";
        writeRows(s->A(), s->b());
        if (s->u()) {
            os << "mult";
            for (const Int& u : *s->u()) os << " " << u.get_str();
            os << "\n";
        }
        writeObjective();
    } else if (const auto* h = std::get_if<HypergraphInstance>(&inst.payload)) {
        os << "hypergraph " << h->vertexCount << " " << h->edges.size() << "\n";
        for (const auto& e : h->edges) {
            for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << (e[i] + 1);
            os << "\n";
        }
        auto at = [](const std::vector<std::optional<Int>>& v, std::size_t i) {
            return v.empty() ? std::optional<Int>() : v[i];
        };
        if (!h->edgeLo.empty() || !h->edgeHi.empty())
            for (std::size_t e = 0; e < h->edges.size(); ++e)
                os << "edgebounds " << bound_str(at(h->edgeLo, e), "-inf") << " "
                   << bound_str(at(h->edgeHi, e), "inf") << "\n";
        if (!h->vertexLo.empty() || !h->vertexHi.empty())
            for (std::size_t v = 0; v < h->vertexCount; ++v)
                os << "vertexbounds " << bound_str(at(h->vertexLo, v), "-inf") << " "
                   << bound_str(at(h->vertexHi, v), "inf") << "\n";
        if (!h->weights.empty()) {
            os << "weights";
            for (const Int& w : h->weights) os << " " << w.get_str();
            os << "\n";
        }
        if (!h->mult.empty()) {
            os << "mult";
            for (const Int& u : h->mult) os << " " << u.get_str();
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace latcount
