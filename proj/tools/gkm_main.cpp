#include "gkm/classes.hpp"
#include "gkm/generators.hpp"
#include "gkm/graph.hpp"
#include "gkm/models.hpp"
#include "gkm/qseries.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace gkm;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;

struct InputConfig {
    std::string cartan;
    std::string graph_file;
    std::vector<int> parabolic;
    std::optional<int> max_length;
    std::string vars;
    std::string rotate;
};

void add_input_flags(CLI::App* cmd, InputConfig& in) {
    cmd->add_option("--cartan", in.cartan, "Cartan matrix, row-major, e.g. \"2,-1;-4,2\"");
    cmd->add_option("--graph", in.graph_file, "explicit GKM graph JSON file");
    cmd->add_option("--parabolic", in.parabolic, "1-based parabolic node indices")
        ->delimiter(',');
    cmd->add_option("--max-length", in.max_length, "length-ideal truncation");
    cmd->add_option("--vars", in.vars, "comma-separated variable names");
    cmd->add_option("--rotate-basis", in.rotate,
                    "2x2 rational drawing rotation, row-major \"a,b;c,d\"");
}

GkmGraph load_graph(const InputConfig& in) {
    const bool has_cartan = !in.cartan.empty();
    const bool has_file = !in.graph_file.empty();
    if (has_cartan == has_file)
        throw CLI::ValidationError("input", "exactly one of --cartan or --graph is required");
    GkmGraph g = [&] {
        if (has_file) {
            std::ifstream f(in.graph_file);
            if (!f) throw CLI::ValidationError("input", "cannot open " + in.graph_file);
            json j;
            f >> j;
            return build_graph_explicit(j);
        }
        CartanMatrix a = CartanMatrix::parse(in.cartan);
        if (a.is_singular() && !in.max_length)
            throw CLI::ValidationError(
                "input", "affine Cartan matrix requires --max-length (truncation is meaningful)");
        return build_graph(a, in.parabolic, in.max_length);
    }();
    if (!in.vars.empty()) {
        std::vector<std::string> names;
        std::stringstream ss(in.vars);
        std::string v;
        while (std::getline(ss, v, ',')) names.push_back(v);
        g.set_vars(std::move(names));
    }
    return g;
}

std::optional<RatMat> parse_rotation(const std::string& text) {
    if (text.empty()) return std::nullopt;
    RatMat m;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        RatVec r;
        std::stringstream rs(row);
        std::string cell;
        while (std::getline(rs, cell, ',')) r.push_back(parse_rat(cell));
        m.push_back(std::move(r));
    }
    return m;
}

json validation_to_json(const GraphValidationReport& rep) {
    json j;
    j["ok"] = rep.ok;
    j["issues"] = json::array();
    for (const auto& issue : rep.issues)
        j["issues"].push_back({{"assumption", issue.assumption}, {"witness", issue.witness}});
    return j;
}

Theory parse_theory(const std::string& t) {
    if (t == "H") return Theory::H;
    if (t == "K") return Theory::K;
    throw CLI::ValidationError("--theory", "must be H or K");
}

// Generators plus the K lift when asked for.
CanonicalGenerators generators_for(const GkmGraph& g, Theory theory, int degree) {
    CanonicalGenerators gens = canonical_generators_H(g, degree);
    if (theory == Theory::K) gens.classes = lift_generators_to_K(g, gens);
    return gens;
}

void print_generators(const GkmGraph& g, const CanonicalGenerators& gens, Theory theory,
                      const std::string& emit) {
    if (emit == "json") {
        json j = json::array();
        for (size_t i = 0; i < gens.classes.size(); ++i) {
            json e;
            e["vertex"] = g.vertices()[gens.vertex[i]].id;
            e["length"] = g.vertices()[gens.vertex[i]].length;
            e["integral"] = static_cast<bool>(gens.integral[i]);
            e["class"] = class_to_json(gens.classes[i]);
            j.push_back(std::move(e));
        }
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (size_t i = 0; i < gens.classes.size(); ++i) {
        const int gv = gens.vertex[i];
        std::cout << "generator " << models::generator_name(g, gv, false) << " (vertex "
                  << g.vertices()[gv].id << ", length " << g.vertices()[gv].length << ")";
        if (theory == Theory::H && !gens.integral[i]) std::cout << "  [non-integral]";
        std::cout << "\n";
        for (size_t w = 0; w < g.vertices().size(); ++w)
            std::cout << "  " << g.vertices()[w].id << " : "
                      << gens.classes[i].values[w].str(g.vars()) << "\n";
    }
}

int run_graph(const InputConfig& in, const std::string& emit, const std::string& overlay_gen,
              const std::string& theory_s) {
    GkmGraph g = load_graph(in);
    GraphValidationReport h = validate(g, Theory::H);
    GraphValidationReport k = validate(g, Theory::K);
    auto rot = parse_rotation(in.rotate);
    std::optional<GkmClass> overlay;
    if (!overlay_gen.empty()) {
        int v = g.vertex_index(overlay_gen);
        if (v < 0) throw CLI::ValidationError("--overlay-gen", "unknown vertex");
        Theory theory = parse_theory(theory_s);
        CanonicalGenerators gens = generators_for(g, theory, g.vertices()[v].length);
        int gi = gens.find(v);
        if (gi < 0) throw CLI::ValidationError("--overlay-gen", "no generator at that vertex");
        overlay = gens.classes[gi];
    }
    std::cout << export_graph(g, parse_export_format(emit), overlay ? &*overlay : nullptr,
                              rot ? &*rot : nullptr);
    if (!h.ok || !k.ok) {
        json err;
        err["validation_H"] = validation_to_json(h);
        err["validation_K"] = validation_to_json(k);
        std::cerr << err.dump() << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

int run_gens(const InputConfig& in, const std::string& theory_s, std::optional<int> degree,
             const std::string& emit) {
    GkmGraph g = load_graph(in);
    Theory theory = parse_theory(theory_s);
    CanonicalGenerators gens = generators_for(g, theory, degree.value_or(g.max_length()));
    print_generators(g, gens, theory, emit);
    return kExitOk;
}

int run_mul(const InputConfig& in, const std::string& theory_s,
            const std::vector<std::string>& gen_ids, const std::vector<std::string>& files,
            int power, bool specialize, bool stability_recheck) {
    GkmGraph g = load_graph(in);
    Theory theory = parse_theory(theory_s);
    CanonicalGenerators gens = generators_for(g, theory, g.max_length());

    GkmClass prod = constant_class(g, theory, Rat(1));
    for (const auto& id : gen_ids) {
        int v = g.vertex_index(id);
        if (v < 0) throw CLI::ValidationError("--gen", "unknown vertex '" + id + "'");
        int gi = gens.find(v);
        if (gi < 0) throw CLI::ValidationError("--gen", "no generator at vertex '" + id + "'");
        prod = multiply(prod, gens.classes[gi]);
    }
    for (const auto& file : files) {
        std::ifstream f(file);
        if (!f) throw CLI::ValidationError("--class", "cannot open " + file);
        json j;
        f >> j;
        GkmClass c = class_from_json(g, j);
        if (c.theory != theory)
            throw CLI::ValidationError("--class", "class theory differs from --theory");
        prod = multiply(prod, c);
    }
    if (power < 1) throw CLI::ValidationError("--power", "must be >= 1");
    GkmClass acc = prod;
    for (int k = 1; k < power; ++k) acc = multiply(acc, prod);

    MembershipReport mem = is_member(g, acc);
    if (!mem.ok) {
        std::cerr << "{\"error\":\"product is not a member\"}\n";
        return kExitCheckFailed;
    }
    BasisExpansion e = expand_in_basis(g, acc, gens);

    // Stability re-run at L+2 before printing provisional K coefficients.
    bool recheck_ok = true;
    if (stability_recheck) {
        if (in.cartan.empty() || !in.max_length)
            throw CLI::ValidationError("--stability-recheck",
                                       "requires --cartan input with --max-length");
        InputConfig deeper = in;
        deeper.max_length = *in.max_length + 2;
        GkmGraph g2 = load_graph(deeper);
        CanonicalGenerators gens2 = generators_for(g2, theory, g2.max_length());
        GkmClass prod2 = constant_class(g2, theory, Rat(1));
        for (const auto& id : gen_ids) prod2 = multiply(prod2, gens2.classes[gens2.find(g2.vertex_index(id))]);
        GkmClass acc2 = prod2;
        for (int k = 1; k < power; ++k) acc2 = multiply(acc2, prod2);
        BasisExpansion e2 = expand_in_basis(g2, acc2, gens2);
        for (size_t i = 0; i < e.gen_vertex.size(); ++i) {
            const std::string& id = g.vertices()[e.gen_vertex[i]].id;
            bool found = false;
            for (size_t j = 0; j < e2.gen_vertex.size(); ++j)
                if (g2.vertices()[e2.gen_vertex[j]].id == id) {
                    found = true;
                    if (e.coefficient[i] != e2.coefficient[j]) recheck_ok = false;
                }
            if (!found) recheck_ok = false;
        }
    }

    std::cout << "expansion:\n";
    for (size_t i = 0; i < e.gen_vertex.size(); ++i) {
        if (e.coefficient[i].is_zero()) continue;
        const bool provisional = e.stability[i] == CoefficientStability::Provisional;
        if (provisional && !stability_recheck) {
            std::cout << "  " << g.vertices()[e.gen_vertex[i]].id
                      << " : [provisional; re-run with --stability-recheck]\n";
            continue;
        }
        std::cout << "  " << g.vertices()[e.gen_vertex[i]].id << " : "
                  << e.coefficient[i].str(g.vars())
                  << (provisional ? (recheck_ok ? "  [confirmed at L+2]" : "  [UNSTABLE]") : "")
                  << "\n";
    }
    if (!e.remainder_zero) std::cout << "  (nonzero remainder beyond the computed generators)\n";
    if (specialize) {
        std::cout << "specialized:\n";
        for (size_t i = 0; i < e.gen_vertex.size(); ++i) {
            Rat c = specialize_ring_elt(e.coefficient[i], theory);
            if (c != 0)
                std::cout << "  " << g.vertices()[e.gen_vertex[i]].id << " : " << rat_str(c)
                          << "\n";
        }
    }
    return recheck_ok ? kExitOk : kExitCheckFailed;
}

int run_verify(const InputConfig& in, const std::string& file) {
    GkmGraph g = load_graph(in);
    std::ifstream f(file);
    if (!f) throw CLI::ValidationError("--class", "cannot open " + file);
    json j;
    f >> j;
    GkmClass c = class_from_json(g, j);
    MembershipReport rep = is_member(g, c);
    if (rep.ok) {
        std::cout << "member\n";
        return kExitOk;
    }
    json err;
    err["error"] = "class fails the divisibility conditions";
    err["violations"] = json::array();
    for (const auto& v : rep.violations) {
        const GkmEdge& e = g.edges()[v.edge];
        err["violations"].push_back({{"source", g.vertices()[e.source].id},
                                     {"target", g.vertices()[e.target].id},
                                     {"weight", e.weight.str()},
                                     {"difference", v.difference.str(g.vars())}});
    }
    std::cerr << err.dump() << "\n";
    std::cout << "not a member\n";
    return kExitCheckFailed;
}

void print_lines(const std::vector<models::RelationLine>& lines) {
    for (const auto& l : lines)
        std::cout << "  [" << (l.ok ? "ok" : "FAIL") << "] " << l.text << "\n";
}

int run_examples(const std::string& which, const std::string& theory_s) {
    Theory theory = parse_theory(theory_s);
    if (which == "g2") {
        models::G2Report rep = models::g2_suite(theory);
        std::cout << "G2/P, theory " << theory_name(theory) << "\n";
        if (rep.basis_found)
            std::cout << "basis: a = " << rep.basis_a.str() << ", b = " << rep.basis_b.str()
                      << " (simple-root coordinates)\n";
        else
            std::cout << "basis search failed\n";
        std::cout << "equivariant relations:\n";
        print_lines(rep.equivariant);
        std::cout << "specialized relations:\n";
        print_lines(rep.specialized);
        return rep.ok() ? kExitOk : kExitCheckFailed;
    }
    if (which == "omega-su2") {
        if (theory == Theory::H) {
            models::DividedPowersReport rep = models::omega_su2_h_suite(8, 5);
            std::cout << "Omega SU(2), theory H: divided powers\n";
            print_lines(rep.relations);
            return rep.ok() ? kExitOk : kExitCheckFailed;
        }
        models::OmegaKReport rep = models::omega_su2_k_suite(6, 3);
        std::cout << "Omega SU(2), theory K\n";
        print_lines(rep.membership);
        for (const auto& u : rep.triangular_units) std::cout << "  " << u << "\n";
        std::cout << "  [" << (rep.triangularity_ok ? "ok" : "FAIL")
                  << "] triangularity of the x_i family\n";
        std::cout << "  [" << (rep.h_lift_fails ? "ok" : "FAIL")
                  << "] cohomology generators do not lift: " << rep.lift_failure << "\n";
        return rep.ok() ? kExitOk : kExitCheckFailed;
    }
    if (which == "twisted-a1") {
        models::TwistedReport rep = models::twisted_a1_suite(8, 4);
        std::cout << "Twisted A_1^(4)\n";
        for (const auto& pc : rep.choice) {
            std::cout << "parabolic {" << pc.node << "}: "
                      << (pc.valid ? (pc.matches_denominators ? "matches n! 2^(n/2) denominators"
                                                       : "does not match")
                                   : "invalid")
                      << "\n";
            for (const auto& [n, bylen] : pc.coefficients) {
                std::cout << "  g1^" << n << " ->";
                for (const auto& [len, c] : bylen)
                    std::cout << " " << rat_str(c) << "*g" << len;
                std::cout << "\n";
            }
        }
        if (rep.selected_node)
            std::cout << "selected parabolic: {" << *rep.selected_node << "}\n";
        print_lines(rep.relations);
        return rep.ok() ? kExitOk : kExitCheckFailed;
    }
    throw CLI::ValidationError("examples", "unknown suite '" + which + "'");
}

int run_qcheck(int max_mn, int max_ell, int omega_bound, int omega_ell) {
    SymmetryReport sym = check_lemma_symmetry(max_mn, max_ell);
    json j;
    j["pairs_checked"] = sym.pairs_checked;
    j["failures"] = sym.failures;
    j["max_q_degree"] = sym.max_degree.get_str();
    json omega = json::array();
    bool omega_ok = true;
    for (int ell = 0; ell <= omega_ell; ++ell) {
        OmegaClosednessReport rep = check_omega_closed(omega_bound, omega_bound, ell);
        omega.push_back({{"ell", ell},
                         {"squares_checked", rep.squares_checked},
                         {"closed", rep.closed},
                         {"boundary_identity", rep.boundary_identity}});
        omega_ok = omega_ok && rep.closed && rep.boundary_identity;
    }
    j["omega"] = std::move(omega);
    std::cout << j.dump(2) << "\n";
    return (sym.ok() && omega_ok) ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact GKM moment-graph engine for Kac-Moody flag varieties"};
    app.require_subcommand(1);

    InputConfig in;
    std::string emit = "table";
    std::string theory = "H";
    std::optional<int> degree;
    std::vector<std::string> gen_ids, class_files;
    int power = 1;
    bool specialize = false, stability_recheck = false;
    std::string suite;
    int q_m = 6, q_l = 4, omega_bound = 6, omega_ell = 3;

    CLI::App* cmd_graph = app.add_subcommand("graph", "build, validate and export a GKM graph");
    add_input_flags(cmd_graph, in);
    cmd_graph->add_option("--emit", emit, "table|json|dot|svg");
    std::string overlay_gen;
    cmd_graph->add_option("--overlay-gen", overlay_gen,
                          "overlay the canonical generator at this vertex as labels");
    cmd_graph->add_option("--theory", theory, "H|K (for --overlay-gen)");

    CLI::App* cmd_gens = app.add_subcommand("gens", "canonical module generators");
    add_input_flags(cmd_gens, in);
    cmd_gens->add_option("--theory", theory, "H|K");
    cmd_gens->add_option("--degree", degree, "compute generators up to this length");
    cmd_gens->add_option("--emit", emit, "table|json");

    CLI::App* cmd_mul = app.add_subcommand("mul", "multiply classes, expand, specialize");
    add_input_flags(cmd_mul, in);
    cmd_mul->add_option("--theory", theory, "H|K");
    cmd_mul->add_option("--gen", gen_ids, "canonical generator by vertex id (repeatable)");
    cmd_mul->add_option("--class", class_files, "class JSON file (repeatable)");
    cmd_mul->add_option("--power", power, "raise the product to this power");
    cmd_mul->add_flag("--specialize", specialize, "also print specialized coefficients");
    cmd_mul->add_flag("--stability-recheck", stability_recheck,
                      "re-run at truncation L+2 and confirm provisional coefficients");

    CLI::App* cmd_verify = app.add_subcommand("verify", "membership test for a class file");
    add_input_flags(cmd_verify, in);
    std::string verify_file;
    cmd_verify->add_option("--class", verify_file, "class JSON file")->required();

    CLI::App* cmd_examples = app.add_subcommand("examples", "run a named worked-example suite");
    cmd_examples->add_option("suite", suite, "g2|omega-su2|twisted-a1")->required();
    cmd_examples->add_option("--theory", theory, "H|K");

    CLI::App* cmd_qcheck = app.add_subcommand("qcheck", "q-combinatorics verification sweep");
    cmd_qcheck->add_option("--M", q_m, "check a_{mnl} symmetry for 1 <= m,n <= M");
    cmd_qcheck->add_option("--L", q_l, "... and 0 <= l <= L");
    cmd_qcheck->add_option("--omega-bound", omega_bound, "closedness rectangle bound");
    cmd_qcheck->add_option("--omega-ell", omega_ell, "closedness checked for l = 0..this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (cmd_graph->parsed()) return run_graph(in, emit, overlay_gen, theory);
        if (cmd_gens->parsed()) return run_gens(in, theory, degree, emit);
        if (cmd_mul->parsed())
            return run_mul(in, theory, gen_ids, class_files, power, specialize, stability_recheck);
        if (cmd_verify->parsed()) return run_verify(in, verify_file);
        if (cmd_examples->parsed()) return run_examples(suite, theory);
        if (cmd_qcheck->parsed()) return run_qcheck(q_m, q_l, omega_bound, omega_ell);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "{\"config_error\":\"" << e.what() << "\"}\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "{\"config_error\":\"" << e.what() << "\"}\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\"}\n";
        return kExitCheckFailed;
    }
    return kExitConfig;
}
