#include "latcount/cli.hpp"

#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "latcount/counting.hpp"
#include "latcount/errors.hpp"
#include "latcount/hypergraph.hpp"
#include "latcount/instance_io.hpp"
#include "latcount/oracle.hpp"
#include "latcount/solver.hpp"

namespace latcount {

namespace {

struct Options {
    std::string command;
    std::string problem;
    std::string file;
    std::string objectiveCsv;
    bool crosscheck = false;
    bool serial = false;
    bool standardRoute = false;
    bool openNeighborhood = false;
};

std::vector<Int> parse_objective_csv(const std::string& csv) {
    std::vector<Int> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        std::string tok = csv.substr(start, comma == std::string::npos ? comma : comma - start);
        if (tok.empty() || tok.find_first_not_of("-0123456789") != std::string::npos ||
            (tok.size() > 1 && tok.find('-', 1) != std::string::npos) || tok == "-")
            throw ParseError(0, "bad --objective entry '" + tok + "'");
        out.emplace_back(tok);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::FEASIBLE: return "FEASIBLE";
        case SolveStatus::INFEASIBLE: return "INFEASIBLE";
        case SolveStatus::UNBOUNDED: return "UNBOUNDED";
    }
    return "?";
}

void print_report(std::ostream& out, const SolveReport& rep, bool withCount) {
    out << "status=" << status_name(rep.status) << "\n";
    if (rep.optimum) out << "optimum=" << rep.optimum->get_str() << "\n";
    if (withCount) {
        if (rep.optimaInfinite)
            out << "optimaCount=INFINITE\n";
        else if (rep.optimaCount)
            out << "optimaCount=" << rep.optimaCount->get_str() << "\n";
    }
    if (rep.witness) out << "witness=" << join_ints(*rep.witness) << "\n";
}

// The system a file provides to the polyhedral commands.
CanonicalSystem file_system(const InstanceFile& inst) {
    if (const auto* c = std::get_if<CanonicalSystem>(&inst.payload)) return *c;
    if (const auto* s = std::get_if<StandardSystem>(&inst.payload)) return standard_to_canonical(*s);
    throw ParseError(0, "hypergraph instances go through the hyper command");
}

bool witness_fits(const CanonicalSystem& sys, const std::vector<Int>& x) {
    if (x.size() != sys.num_vars()) return false;
    for (std::size_t i = 0; i < sys.num_rows(); ++i) {
        Rat lhs(0);
        for (std::size_t j = 0; j < sys.num_vars(); ++j) lhs += Rat(sys.A()(i, j)) * Rat(x[j]);
        if (lhs > sys.b()[i]) return false;
    }
    return true;
}

Int objective_value(const std::vector<Int>& obj, const std::vector<Int>& x) {
    Int v(0);
    for (std::size_t j = 0; j < x.size(); ++j) v += obj[j] * x[j];
    return v;
}

// 0 = pass/skip, 4 = mismatch.  One crosscheck= line either way.
int crosscheck_count(std::ostream& out, const CanonicalSystem& sys, const CountReport& rep,
                     bool serial) {
    if (rep.infinite || boundedness(sys) != Boundedness::BOUNDED) {
        out << "crosscheck=skipped\n";
        return 0;
    }
    auto box = oracle_box(sys);
    Int oc = box ? (serial ? oracle_count_serial(sys, *box) : oracle_count(sys, *box)) : Int(0);
    if (oc == rep.count) {
        out << "crosscheck=pass\n";
        return 0;
    }
    out << "crosscheck=fail oracle=" << oc.get_str() << "\n";
    return 4;
}

int crosscheck_feasible(std::ostream& out, const CanonicalSystem& sys, const SolveReport& rep) {
    if (rep.witness && !witness_fits(sys, *rep.witness)) {
        out << "crosscheck=fail witness\n";
        return 4;
    }
    if (boundedness(sys) != Boundedness::BOUNDED) {
        out << "crosscheck=skipped\n";
        return 0;
    }
    auto box = oracle_box(sys);
    Int oc = box ? oracle_count(sys, *box) : Int(0);
    bool oracleFeasible = oc > 0;
    if (oracleFeasible == (rep.status == SolveStatus::FEASIBLE)) {
        out << "crosscheck=pass\n";
        return 0;
    }
    out << "crosscheck=fail oracle=" << (oracleFeasible ? "FEASIBLE" : "INFEASIBLE") << "\n";
    return 4;
}

// Shared by optimize/optcount and the hyper problems.  maximize=false means
// rep.optimum is in minimization sense while the oracle maximizes obj.
int crosscheck_optimum(std::ostream& out, const CanonicalSystem& sys,
                       const std::vector<Int>& obj, const SolveReport& rep, bool withCount,
                       bool maximize) {
    if (rep.witness && !witness_fits(sys, *rep.witness)) {
        out << "crosscheck=fail witness\n";
        return 4;
    }
    if (rep.status == SolveStatus::UNBOUNDED || rep.optimaInfinite ||
        boundedness(sys) != Boundedness::BOUNDED) {
        out << "crosscheck=skipped\n";
        return 0;
    }
    auto box = oracle_box(sys);
    SolveReport orep;
    if (box) orep = withCount ? oracle_optcount(sys, *box, obj) : oracle_optimize(sys, *box, obj);
    bool ok = orep.status == rep.status;
    if (ok && rep.status == SolveStatus::FEASIBLE) {
        Int oopt = maximize ? *orep.optimum : Int(-*orep.optimum);
        ok = oopt == *rep.optimum;
        if (ok && withCount) ok = orep.optimaCount == rep.optimaCount;
    }
    if (ok) {
        out << "crosscheck=pass\n";
        return 0;
    }
    out << "crosscheck=fail oracle status=" << status_name(orep.status);
    if (orep.optimum) out << " optimum=" << orep.optimum->get_str();
    if (orep.optimaCount) out << " optimaCount=" << orep.optimaCount->get_str();
    out << "\n";
    return 4;
}

int cmd_count(const Options& opt, std::ostream& out) {
    InstanceFile inst = load_instance(opt.file);
    CanonicalSystem sys = file_system(inst);
    CountReport rep = opt.serial ? count_canonical_serial(sys) : count_canonical(sys);
    out << "count=" << (rep.infinite ? std::string("INFINITE") : rep.count.get_str()) << "\n";
    if (opt.crosscheck) return crosscheck_count(out, sys, rep, opt.serial);
    return 0;
}

int cmd_feasible(const Options& opt, std::ostream& out) {
    InstanceFile inst = load_instance(opt.file);
    CanonicalSystem sys = file_system(inst);
    SolveReport rep = feasible(sys);
    print_report(out, rep, false);
    if (opt.crosscheck) return crosscheck_feasible(out, sys, rep);
    return 0;
}

int cmd_optimize(const Options& opt, std::ostream& out, bool withCount) {
    InstanceFile inst = load_instance(opt.file);
    CanonicalSystem sys = file_system(inst);
    std::vector<Int> obj;
    if (!opt.objectiveCsv.empty())
        obj = parse_objective_csv(opt.objectiveCsv);
    else if (inst.objective)
        obj = *inst.objective;
    else
        throw ParseError(0, "no objective: give one in the file or via --objective");
    if (obj.size() != sys.num_vars())
        throw ParseError(0, "objective length does not match the variable count");
    SolveReport rep = withCount ? optimize_and_count(sys, obj) : optimize(sys, obj);
    print_report(out, rep, withCount);
    if (opt.crosscheck) return crosscheck_optimum(out, sys, obj, rep, withCount, true);
    return 0;
}

int cmd_hyper(const Options& opt, std::ostream& out) {
    InstanceFile inst = load_instance(opt.file);
    const auto* hp = std::get_if<HypergraphInstance>(&inst.payload);
    if (!hp) throw ParseError(0, "the hyper command needs a hypergraph instance");
    HypergraphInstance h = *hp;

    HyperMode mode;
    bool dominating = false;
    if (opt.problem == "stable-multiset") mode = HyperMode::STABLE_MULTISET;
    else if (opt.problem == "vertex-multicover") mode = HyperMode::VERTEX_MULTICOVER;
    else if (opt.problem == "multimatching") mode = HyperMode::MULTIMATCHING;
    else if (opt.problem == "set-multicover") mode = HyperMode::SET_MULTICOVER;
    else if (opt.problem == "dominating-multiset") {
        mode = HyperMode::SET_MULTICOVER;
        dominating = true;
    } else {
        throw ParseError(0, "unknown hyper problem '" + opt.problem + "'");
    }

    const bool edgeIndexed = mode == HyperMode::MULTIMATCHING || mode == HyperMode::SET_MULTICOVER;
    if (opt.standardRoute && (!edgeIndexed || dominating))
        throw ParseError(0, "--standard applies to multimatching and set-multicover");

    if (dominating) h = dominating_cover_instance(h, opt.openNeighborhood);
    else if (opt.openNeighborhood)
        throw ParseError(0, "--open-neighborhood applies to dominating-multiset");

    SolveReport rep;
    if (opt.standardRoute)
        rep = solve_encoded_standard(encode_edge_based_standard(h, mode), true);
    else
        rep = solve_hyper(h, mode, true);
    print_report(out, rep, true);

    if (!opt.crosscheck) return 0;
    if (rep.status == SolveStatus::UNBOUNDED) {
        out << "crosscheck=skipped\n";
        return 0;
    }
    EncodedProblem ep =
        edgeIndexed ? encode_edge_based(h, mode) : encode_vertex_based(h, mode);
    std::vector<Int> obj = ep.objective;
    if (!ep.maximize)
        for (Int& w : obj) w = -w;
    // The standard route reports edge variables only; skip the witness check
    // there (lengths differ) by handing the oracle a witness-free copy.
    SolveReport forCheck = rep;
    if (opt.standardRoute) forCheck.witness.reset();
    return crosscheck_optimum(out, ep.system, obj, forCheck, true, ep.maximize);
}

int cmd_stats(const Options& opt, std::ostream& out) {
    InstanceFile inst = load_instance(opt.file);
    const Matrix* a = nullptr;
    Matrix inc(1, 1);
    if (const auto* c = std::get_if<CanonicalSystem>(&inst.payload)) a = &c->A();
    else if (const auto* s = std::get_if<StandardSystem>(&inst.payload)) a = &s->A();
    else if (const auto* h = std::get_if<HypergraphInstance>(&inst.payload)) {
        inc = incidence_matrix(*h);
        a = &inc;
    }
    const std::size_t order = std::min(a->rows(), a->cols());
    SparsityStats st = sparsity_stats(*a, order);
    out << "rows=" << a->rows() << "\n";
    out << "cols=" << a->cols() << "\n";
    out << "rowSparse=" << st.rowSparse << "\n";
    out << "colSparse=" << st.colSparse << "\n";
    out << "weakRowSparse=" << st.weakRowSparse << "\n";
    out << "weakColSparse=" << st.weakColSparse << "\n";
    out << "norm1=" << st.norm1.get_str() << "\n";
    out << "normInf=" << st.normInf.get_str() << "\n";
    out << "maxNorm=" << st.maxNorm.get_str() << "\n";
    out << "gamma1=" << st.gamma1.get_str() << "\n";
    out << "gammaInf=" << st.gammaInf.get_str() << "\n";
    out << "totn=" << st.totn.get_str() << "\n";
    for (std::size_t k = 1; k <= st.deltaK.size(); ++k)
        out << "delta" << k << "=" << st.deltaK[k - 1].get_str() << "\n";
    out << "deltaGcd=" << st.deltaGcd.get_str() << "\n";
    out << "detlbOrder=" << st.detlbOrder << "\n";
    out << "detlbValue=" << st.detlbValue.get_str() << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"exact lattice point counting and integer optimization"};
    app.require_subcommand(1);

    auto addFile = [&](CLI::App* sub) {
        sub->add_option("file", opt.file, "instance file")->required();
    };
    CLI::App* count = app.add_subcommand("count", "count the integer points");
    addFile(count);
    count->add_flag("--crosscheck", opt.crosscheck, "verify against the exhaustion oracle");
    count->add_flag("--serial", opt.serial, "single-threaded reference path");

    CLI::App* feas = app.add_subcommand("feasible", "decide integer feasibility, with witness");
    addFile(feas);
    feas->add_flag("--crosscheck", opt.crosscheck, "verify against the exhaustion oracle");

    CLI::App* optimize = app.add_subcommand("optimize", "maximize an integer objective");
    addFile(optimize);
    optimize->add_option("--objective", opt.objectiveCsv, "comma-separated objective");
    optimize->add_flag("--crosscheck", opt.crosscheck, "verify against the exhaustion oracle");

    CLI::App* optcount = app.add_subcommand("optcount", "maximize, then count the optima");
    addFile(optcount);
    optcount->add_option("--objective", opt.objectiveCsv, "comma-separated objective");
    optcount->add_flag("--crosscheck", opt.crosscheck, "verify against the exhaustion oracle");

    CLI::App* hyper = app.add_subcommand("hyper", "solve a hypergraph multiset problem");
    hyper->add_option("problem", opt.problem, "one of stable-multiset, vertex-multicover, "
                                              "multimatching, set-multicover, dominating-multiset")
        ->required();
    addFile(hyper);
    hyper->add_flag("--crosscheck", opt.crosscheck, "verify against the exhaustion oracle");
    hyper->add_flag("--standard", opt.standardRoute, "route through the equality-form encoding");
    hyper->add_flag("--open-neighborhood", opt.openNeighborhood,
                    "dominating-multiset with open neighborhoods");

    CLI::App* stats = app.add_subcommand("stats", "matrix norm and minor statistics");
    addFile(stats);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (count->parsed()) return cmd_count(opt, out);
        if (feas->parsed()) return cmd_feasible(opt, out);
        if (optimize->parsed()) return cmd_optimize(opt, out, false);
        if (optcount->parsed()) return cmd_optimize(opt, out, true);
        if (hyper->parsed()) return cmd_hyper(opt, out);
        if (stats->parsed()) return cmd_stats(opt, out);
        err << "no command given\n";
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        err << "budget: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace latcount
