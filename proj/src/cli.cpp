#include "latgal/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "latgal/classifier.hpp"
#include "latgal/enumeration.hpp"
#include "latgal/mixed_volume.hpp"
#include "latgal/monodromy.hpp"
#include "latgal/tuple_io.hpp"

namespace latgal {

namespace {

using Json = nlohmann::ordered_json;

long long to_ll(const BigInt& v) { return v.convert_to<long long>(); }

Json tuple_json(const LatticeTuple& t) {
    Json sets = Json::array();
    for (const auto& s : t.sets) {
        Json js = Json::array();
        for (const auto& p : s.points) js.push_back(p);
        sets.push_back(js);
    }
    return Json{{"n", t.ambient_dim}, {"sets", sets}};
}

Json complex_json(const Complex& z) { return Json{z.real(), z.imag()}; }

Json witness_json(const SubsetWitness& w) {
    Json basis = Json::array();
    for (const auto& p : w.lattice_basis) basis.push_back(p);
    return Json{{"subset", w.subset},
                {"lattice_basis", basis},
                {"index", to_ll(w.index)},
                {"inner_mv", to_ll(w.inner_mv)},
                {"outer_mv", to_ll(w.outer_mv)}};
}

Json maybe_witness(const std::optional<SubsetWitness>& w) {
    return w ? witness_json(*w) : Json(nullptr);
}

const char* node_kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Shift: return "shift";
        case NodeKind::LatticeReduce: return "lattice_reduce";
        case NodeKind::Split: return "split";
        case NodeKind::Leaf: return "leaf";
    }
    return "?";
}

Json tree_json(const ReductionNode& node) {
    Json j;
    j["kind"] = node_kind_name(node.kind);
    j["mixed_volume"] = to_ll(node.mv);
    j["solvable"] = node.solvable;
    if (node.degenerate) j["degenerate"] = true;
    if (node.reduce_data) {
        j["index"] = to_ll(node.reduce_data->index);
        Json div = Json::array();
        for (const auto& d : node.reduce_data->coker_divisors) div.push_back(to_ll(d));
        j["coker_divisors"] = div;
    }
    if (node.split_data) j["subset"] = node.split_data->subset;
    if (!node.children.empty()) {
        j["children"] = Json::array();
        for (const auto& c : node.children) j["children"].push_back(tree_json(c));
    }
    return j;
}

Json prediction_json(const MonodromyPrediction& pred) {
    Json j;
    switch (pred.kind) {
        case MonodromyPrediction::Kind::Symmetric: j["kind"] = "symmetric"; break;
        case MonodromyPrediction::Kind::Imprimitive: j["kind"] = "imprimitive"; break;
        case MonodromyPrediction::Kind::PrimeCyclic: j["kind"] = "prime_cyclic"; break;
    }
    j["degree"] = to_ll(pred.degree);
    if (pred.p) j["p"] = pred.p;
    if (pred.kind == MonodromyPrediction::Kind::Imprimitive) {
        j["block_count"] = to_ll(pred.block_count);
        j["block_size"] = to_ll(pred.block_size);
        if (pred.witness) j["witness"] = witness_json(*pred.witness);
        if (pred.has_wreath_refinement) {
            Json coker = Json::array();
            for (const auto& d : pred.wreath_coker) coker.push_back(to_ll(d));
            j["wreath"] = Json{{"coker_divisors", coker}, {"inner_degree", to_ll(pred.wreath_d)}};
        }
    }
    j["conjectural"] = pred.conjectural;
    return j;
}

Json group_json(const PermutationGroup& g) {
    Json j;
    j["degree"] = g.degree;
    j["order"] = g.order;
    j["closure_capped"] = g.closure_capped;
    j["transitive"] = g.transitive;
    j["doubly_transitive"] = g.doubly_transitive;
    j["primitive"] = g.primitive;
    j["contains_transposition"] = g.contains_transposition;
    j["symmetric"] = g.is_symmetric;
    j["alternating"] = g.is_alternating;
    j["cyclic"] = g.is_cyclic;
    j["orbits"] = g.orbits;
    j["block_systems"] = g.block_systems;
    Json gens = Json::array();
    for (const auto& p : g.generators) gens.push_back(p);
    j["generators"] = gens;
    return j;
}

Json monodromy_json(const MonodromyResult& res) {
    Json j;
    j["stabilized"] = res.stabilized;
    j["loops_run"] = res.loops_run;
    j["path_failures"] = res.path_failures;
    j["group"] = group_json(res.group);
    Json trace = Json::array();
    for (const auto& rec : res.trace)
        trace.push_back(Json{{"seed", rec.seed},
                             {"failed", rec.failed},
                             {"grew_group", rec.grew_group},
                             {"order_after", rec.order_after}});
    j["trace"] = trace;
    return j;
}

std::uint64_t env_default_seed() {
    if (const char* s = std::getenv("LATGAL_SEED")) {
        try {
            return std::stoull(s);
        } catch (...) {
        }
    }
    return 2026;
}

std::string fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream o;
    o << std::hex << h;
    return o.str();
}

struct ReportSink {
    Json doc;
    std::string headline;
    bool quiet = false;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void begin(const std::string& command) {
        doc["tool"] = "latgal";
        doc["schema"] = 1;
        doc["command"] = command;
    }
    void attach_input(const std::string& path, const LoadedTuple& loaded,
                      const std::string& raw) {
        doc["input"] = path;
        doc["input_digest"] = fnv1a(raw);
        if (!loaded.name.empty()) doc["name"] = loaded.name;
        doc["warnings"] = loaded.warnings;
    }
    void finish(std::ostream& out) {
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        doc["timing_ms"] = ms;
        if (quiet)
            out << headline << "\n";
        else
            out << doc.dump(2) << "\n";
    }
};

LoadedTuple read_input(const std::string& path, std::string& raw) {
    std::ifstream in(path);
    if (!in) throw TupleParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    raw = buf.str();
    return parse_tuple_json(raw);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"lattice support toolkit: mixed volumes, solvability classification,\n"
                 "numerical root counts and monodromy groups of sparse systems"};
    app.require_subcommand(1);
    app.fallthrough();

    bool quiet = false;
    int jobs = 1;
    app.add_flag("--quiet", quiet, "print only the headline verdict");
    app.add_option("--jobs", jobs, "worker cap (computations are single-threaded)")
        ->check(CLI::PositiveNumber);

    std::string file;
    long long k_radical = 4;
    std::uint64_t seed = env_default_seed();
    int budget = 400;
    long long vmax = 1;
    long long radius = 0;
    std::vector<int> subset;

    auto* mv_cmd = app.add_subcommand("mv", "mixed volume of the tuple");
    mv_cmd->fallthrough();
    mv_cmd->add_option("file", file, "tuple file")->required();

    auto* flags_cmd = app.add_subcommand("flags", "structure predicates of the tuple");
    flags_cmd->fallthrough();
    flags_cmd->add_option("file", file)->required();

    auto* classify_cmd = app.add_subcommand("classify", "solvability by radicals");
    classify_cmd->fallthrough();
    classify_cmd->add_option("file", file)->required();
    classify_cmd->add_option("--k-radical", k_radical, "radical degree bound")->check(CLI::PositiveNumber);

    auto* solve_cmd = app.add_subcommand("solve", "all torus roots of a generic system");
    solve_cmd->fallthrough();
    solve_cmd->add_option("file", file)->required();
    solve_cmd->add_option("--seed", seed, "coefficient sampling seed");

    auto* mono_cmd = app.add_subcommand("monodromy", "sampled monodromy group");
    mono_cmd->fallthrough();
    mono_cmd->add_option("file", file)->required();
    mono_cmd->add_option("--budget", budget, "loop budget")->check(CLI::PositiveNumber);
    mono_cmd->add_option("--seed", seed, "loop sampling seed");

    auto* verify_cmd = app.add_subcommand("verify", "prediction versus sampled group");
    verify_cmd->fallthrough();
    verify_cmd->add_option("file", file)->required();
    verify_cmd->add_option("--budget", budget)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", seed);

    auto* enum_cmd = app.add_subcommand("enumerate", "irreducible plane tuples up to equivalence");
    enum_cmd->fallthrough();
    enum_cmd->add_option("--vmax", vmax, "mixed volume ceiling")->check(CLI::PositiveNumber);
    enum_cmd->add_option("--radius", radius, "coordinate box radius");

    auto* cayley_cmd = app.add_subcommand("cayley", "Cayley configuration of chosen sets");
    cayley_cmd->fallthrough();
    cayley_cmd->add_option("file", file)->required();
    cayley_cmd->add_option("--subset", subset, "0-based set indices (default: all)")
        ->delimiter(',');

    auto* cone_cmd = app.add_subcommand("cone-reduce", "reduce a generic system on a cone support");
    cone_cmd->fallthrough();
    cone_cmd->add_option("file", file)->required();
    cone_cmd->add_option("--seed", seed, "coefficient sampling seed");

    std::vector<char*> argv;
    std::vector<std::string> storage = args;
    std::string prog = "latgal";
    argv.push_back(prog.data());
    for (auto& a : storage) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    ReportSink report;
    report.quiet = quiet;
    try {
        if (mv_cmd->parsed()) {
            report.begin("mv");
            std::string raw;
            LoadedTuple in = read_input(file, raw);
            report.attach_input(file, in, raw);
            long long mv = to_ll(mixed_volume(in.tuple));
            report.doc["results"] = Json{{"mixed_volume", mv}};
            report.headline = std::to_string(mv);
        } else if (flags_cmd->parsed()) {
            report.begin("flags");
            std::string raw;
            LoadedTuple in = read_input(file, raw);
            report.attach_input(file, in, raw);
            StructureFlags f = structure_flags(in.tuple);
            Json r;
            r["reduced"] = f.reduced;
            r["irreducible"] = f.irreducible;
            r["linearly_independent"] = f.linearly_independent;
            r["numerically_reduced"] = f.numerically_reduced;
            r["numerically_irreducible"] = f.numerically_irreducible;
            r["non_reduced_witness"] = maybe_witness(f.non_reduced_witness);
            r["dependent_witness"] = maybe_witness(f.dependent_witness);
            r["reducible_witness"] = maybe_witness(f.reducible_witness);
            r["numerically_non_reduced_witness"] = maybe_witness(f.numerically_non_reduced_witness);
            r["numerically_reducible_witness"] = maybe_witness(f.numerically_reducible_witness);
            if (f.prime)
                r["prime"] = Json{{"p", f.prime->p}, {"base", tuple_json(f.prime->base)}};
            else
                r["prime"] = nullptr;
            if (f.reduced && f.irreducible) {
                DualEffectiveResult de = dual_effective(in.tuple);
                Json dj;
                dj["effective"] = de.effective;
                if (!de.effective) {
                    Json sh = Json::array();
                    for (const auto& p : de.shift_witness) sh.push_back(p);
                    dj["shift_witness"] = sh;
                }
                r["dual_effective"] = dj;
            } else {
                r["dual_effective"] = nullptr;
            }
            report.doc["results"] = r;
            std::ostringstream h;
            h << (f.reduced ? "reduced" : "non-reduced") << ", "
              << (f.irreducible ? "irreducible" : "reducible") << ", "
              << (f.linearly_independent ? "independent" : "dependent")
              << (f.prime ? ", prime" : "");
            report.headline = h.str();
        } else if (classify_cmd->parsed()) {
            report.begin("classify");
            std::string raw;
            LoadedTuple in = read_input(file, raw);
            report.attach_input(file, in, raw);
            ClassificationReport c = classify_solvability(in.tuple, k_radical);
            report.doc["results"] =
                Json{{"solvable", c.solvable},
                     {"mixed_volume", to_ll(c.mixed_volume)},
                     {"k_radical", c.k_radical},
                     {"tree", tree_json(c.root)}};
            report.headline = c.solvable
                                  ? "solvable by " + std::to_string(k_radical) + "-radicals"
                                  : "not solvable by " + std::to_string(k_radical) + "-radicals";
        } else if (solve_cmd->parsed()) {
            report.begin("solve");
            std::string raw;
            LoadedTuple in = read_input(file, raw);
            report.attach_input(file, in, raw);
            report.doc["seed"] = seed;
            PolySystem sys = sample_generic(in.tuple, seed);
            RootSet roots = solve_system(sys);
            Json jr = Json::array();
            for (const auto& root : roots.roots) {
                Json one = Json::array();
                for (const auto& z : root) one.push_back(complex_json(z));
                jr.push_back(one);
            }
            report.doc["results"] = Json{{"count", roots.roots.size()},
                                         {"roots", jr},
                                         {"residuals", roots.residuals},
                                         {"off_torus_discarded", roots.off_torus_discarded},
                                         {"retries_used", roots.retries_used}};
            report.headline = std::to_string(roots.roots.size()) + " torus roots";
        } else if (mono_cmd->parsed()) {
            report.begin("monodromy");
            std::string raw;
            LoadedTuple in = read_input(file, raw);
            report.attach_input(file, in, raw);
            report.doc["seed"] = seed;
            MonodromyOptions opts;
            opts.budget = budget;
            opts.seed = seed;
            MonodromyResult res = monodromy_group(in.tuple, opts);
            report.doc["results"] = monodromy_json(res);
            report.headline = "order " + std::to_string(res.group.order) +
                              (res.stabilized ? "" : " (inconclusive)");
            report.finish(out);
            return res.stabilized ? 0 : 2;
        } else if (verify_cmd->parsed()) {
            report.begin("verify");
            std::string raw;
            LoadedTuple in = read_input(file, raw);
            report.attach_input(file, in, raw);
            report.doc["seed"] = seed;
            MonodromyOptions opts;
            opts.budget = budget;
            opts.seed = seed;
            VerificationReport v = verify_prediction(in.tuple, opts);
            const char* verdict = v.verdict == VerifyVerdict::Match        ? "MATCH"
                                  : v.verdict == VerifyVerdict::Mismatch   ? "MISMATCH"
                                                                          : "INCONCLUSIVE";
            report.doc["results"] = Json{{"verdict", verdict},
                                         {"detail", v.detail},
                                         {"prediction", prediction_json(v.prediction)},
                                         {"sampled", monodromy_json(v.sampled)}};
            report.headline = verdict;
            report.finish(out);
            return v.verdict == VerifyVerdict::Match      ? 0
                   : v.verdict == VerifyVerdict::Mismatch ? 3
                                                          : 2;
        } else if (enum_cmd->parsed()) {
            report.begin("enumerate");
            EnumerationBounds b;
            b.v_max = vmax;
            b.box_radius = radius;
            auto list = enumerate_irreducible(b);
            Json jl = Json::array();
            int maximal = 0;
            for (const auto& e : list) {
                jl.push_back(Json{{"normal_form", e.normal_form},
                                  {"mixed_volume", to_ll(e.mv)},
                                  {"maximal", e.maximal},
                                  {"tuple", tuple_json(e.tuple)}});
                if (e.maximal) ++maximal;
            }
            report.doc["results"] =
                Json{{"v_max", vmax}, {"classes", jl}, {"maximal_count", maximal}};
            report.headline = std::to_string(list.size()) + " classes, " +
                              std::to_string(maximal) + " maximal";
        } else if (cayley_cmd->parsed()) {
            report.begin("cayley");
            std::string raw;
            LoadedTuple in = read_input(file, raw);
            report.attach_input(file, in, raw);
            std::vector<int> idx = subset;
            if (idx.empty())
                for (int i = 0; i < static_cast<int>(in.tuple.sets.size()); ++i) idx.push_back(i);
            CayleyConfig cc = cayley_config(in.tuple, idx);
            Json pts = Json::array();
            for (const auto& p : cc.points.points) pts.push_back(p);
            report.doc["results"] = Json{{"index_set", cc.index_set},
                                         {"ambient_dim", cc.points.ambient_dim},
                                         {"points", pts}};
            report.headline = std::to_string(cc.points.size()) + " points in dimension " +
                              std::to_string(cc.points.ambient_dim);
        } else if (cone_cmd->parsed()) {
            report.begin("cone-reduce");
            std::string raw;
            LoadedTuple in = read_input(file, raw);
            report.attach_input(file, in, raw);
            report.doc["seed"] = seed;
            PolySystem sys = sample_generic(in.tuple, seed);
            PolySystem g = cone_reduce(sys);
            Json coeffs = Json::array();
            for (const auto& row : g.coeffs) {
                Json jrow = Json::array();
                for (const auto& z : row) jrow.push_back(complex_json(z));
                coeffs.push_back(jrow);
            }
            report.doc["results"] = Json{{"tuple", tuple_json(g.tuple)}, {"coefficients", coeffs}};
            report.headline = "reduced to " + std::to_string(g.tuple.ambient_dim) + " variables";
        }
    } catch (const TupleParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        report.doc["error"] = e.what();
        report.headline = std::string("error: ") + e.what();
        report.finish(out);
        err << "error: " << e.what() << "\n";
        return 2;
    }
    report.finish(out);
    return 0;
}

}  // namespace latgal
