#include "gkm/graph.hpp"

#include "gkm/classes.hpp"
#include "gkm/linalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gkm {

using nlohmann::json;

GkmGraph::GkmGraph(int rank, std::vector<std::string> vars, std::optional<int> truncation,
                   std::vector<GkmVertex> vertices, std::vector<GkmEdge> edges)
    : rank_(rank),
      vars_(std::move(vars)),
      truncation_(truncation),
      vertices_(std::move(vertices)),
      edges_(std::move(edges)) {
    if (rank_ < 1) throw std::invalid_argument("graph rank must be >= 1");
    if (static_cast<int>(vars_.size()) != rank_)
        throw std::invalid_argument("variable name count != rank");
    std::set<std::string> ids;
    for (const auto& v : vertices_) {
        if (!ids.insert(v.id).second)
            throw std::invalid_argument("duplicate vertex id '" + v.id + "'");
        if (v.length < 0) throw std::invalid_argument("negative vertex length");
    }
    std::set<std::pair<int, int>> pairs;
    for (auto& e : edges_) {
        if (e.source < 0 || e.source >= static_cast<int>(vertices_.size()) || e.target < 0 ||
            e.target >= static_cast<int>(vertices_.size()))
            throw std::invalid_argument("edge endpoint out of range");
        if (e.source == e.target) throw std::invalid_argument("self-loop edge");
        if (e.weight.rank() != rank_) throw std::invalid_argument("edge weight rank mismatch");
        if (e.weight.is_zero()) throw std::invalid_argument("zero-weight edge");
        if (vertices_[e.source].length <= vertices_[e.target].length)
            throw std::invalid_argument("edge not downward: " + vertices_[e.source].id + " -> " +
                                        vertices_[e.target].id);
        auto key = std::minmax(e.source, e.target);
        if (!pairs.insert({key.first, key.second}).second)
            throw std::invalid_argument("parallel edge between " + vertices_[e.source].id +
                                        " and " + vertices_[e.target].id);
    }
    std::sort(edges_.begin(), edges_.end(), [](const GkmEdge& a, const GkmEdge& b) {
        return std::tie(a.source, a.target) < std::tie(b.source, b.target);
    });
    down_.assign(vertices_.size(), {});
    for (size_t i = 0; i < edges_.size(); ++i) down_[edges_[i].source].push_back(static_cast<int>(i));
}

int GkmGraph::vertex_index(const std::string& id) const {
    for (size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].id == id) return static_cast<int>(i);
    return -1;
}

int GkmGraph::base_vertex() const {
    int base = -1;
    for (size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].length == 0) {
            if (base >= 0) throw std::runtime_error("graph has several length-0 vertices");
            base = static_cast<int>(i);
        }
    if (base < 0) throw std::runtime_error("graph has no length-0 vertex");
    return base;
}

int GkmGraph::max_length() const {
    int m = 0;
    for (const auto& v : vertices_) m = std::max(m, v.length);
    return m;
}

void GkmGraph::set_vars(std::vector<std::string> vars) {
    if (static_cast<int>(vars.size()) != rank_)
        throw std::invalid_argument("variable name count != rank");
    vars_ = std::move(vars);
}

namespace {

std::string word_id(const std::vector<int>& word) {
    if (word.empty()) return "e";
    std::string s;
    bool wide = false;
    for (int l : word) wide = wide || l > 9;
    for (size_t i = 0; i < word.size(); ++i) {
        if (i && wide) s += ".";
        s += std::to_string(word[i]);
    }
    return s;
}

// Primitive integer generator of the kernel of a singular rank-2 Cartan
// matrix (the null-root direction).
IntVec null_root(const CartanMatrix& a) {
    RatMat m(a.rank(), RatVec(a.rank()));
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.rank(); ++j) m[i][j] = Rat(a.at(i, j));
    auto basis = rational_nullspace(std::move(m));
    if (basis.size() != 1) return {};
    Int den = 1;
    for (const auto& c : basis[0]) den = int_lcm(den, c.get_den());
    IntVec d(a.rank());
    for (int i = 0; i < a.rank(); ++i) d[i] = Rat(basis[0][i] * den).get_num();
    Weight w(d);
    if (w.is_zero()) return {};
    return primitive_part(w).first.coords();
}

}  // namespace

GkmGraph build_graph(const ParabolicQuotient& quotient) {
    const CartanMatrix& cartan = quotient.cartan();
    const int n = cartan.rank();
    const auto& cosets = quotient.cosets();

    std::vector<GkmVertex> vertices;
    vertices.reserve(cosets.size());

    // Drawing positions: finite rank-2 quotients use the basepoint orbit
    // itself (so edge weights are parallel to position differences);
    // singular types project along the null root and use length vertically.
    const bool singular = cartan.is_singular();
    IntVec delta_perp;
    if (singular && n == 2) {
        IntVec delta = null_root(cartan);
        if (!delta.empty()) delta_perp = {delta[1], -delta[0]};
    }

    for (size_t i = 0; i < cosets.size(); ++i) {
        GkmVertex v;
        v.id = word_id(cosets[i].word);
        v.length = cosets[i].length;
        if (!singular && n == 2) {
            v.position = {Rat(cosets[i].position[0]), Rat(cosets[i].position[1])};
        } else if (singular && !delta_perp.empty()) {
            Int h = 0;
            for (int j = 0; j < n; ++j) h += delta_perp[j] * cosets[i].position[j];
            v.position = {Rat(h), Rat(cosets[i].length)};
        } else {
            v.position = {Rat(static_cast<int>(i)), Rat(cosets[i].length)};
        }
        vertices.push_back(std::move(v));
    }

    std::vector<GkmEdge> edges;
    for (size_t i = 0; i < cosets.size(); ++i)
        for (const auto& inv : quotient.inversions(static_cast<int>(i)))
            edges.push_back({static_cast<int>(i), inv.target, inv.root});

    std::optional<int> truncation;
    if (!quotient.complete()) truncation = quotient.bound();
    return GkmGraph(n, default_var_names(n), truncation, std::move(vertices), std::move(edges));
}

GkmGraph build_graph(const CartanMatrix& cartan, const std::vector<int>& parabolic,
                     std::optional<int> max_length) {
    ParabolicQuotient q(cartan, parabolic, max_length);
    return build_graph(q);
}

GkmGraph build_graph_explicit(const json& description) {
    auto require = [&](bool cond, const char* what) {
        if (!cond) throw std::invalid_argument(std::string("graph JSON: ") + what);
    };
    require(description.is_object(), "object expected");
    require(description.contains("rank") && description["rank"].is_number_integer(),
            "integer 'rank' required");
    const int rank = description["rank"].get<int>();

    std::vector<std::string> vars = default_var_names(rank);
    if (description.contains("variables") && !description["variables"].is_null()) {
        require(description["variables"].is_array(), "'variables' must be an array");
        vars = description["variables"].get<std::vector<std::string>>();
    }

    std::optional<int> truncation;
    if (description.contains("truncation") && !description["truncation"].is_null())
        truncation = description["truncation"].get<int>();

    require(description.contains("vertices") && description["vertices"].is_array(),
            "'vertices' array required");
    std::vector<GkmVertex> vertices;
    for (const auto& jv : description["vertices"]) {
        GkmVertex v;
        require(jv.contains("id"), "vertex 'id' required");
        v.id = jv["id"].is_string() ? jv["id"].get<std::string>() : jv["id"].dump();
        require(jv.contains("length") && jv["length"].is_number_integer(),
                "vertex 'length' required");
        v.length = jv["length"].get<int>();
        if (jv.contains("position") && !jv["position"].is_null()) {
            for (const auto& c : jv["position"])
                v.position.push_back(c.is_string() ? parse_rat(c.get<std::string>())
                                                   : Rat(c.get<long>()));
        }
        vertices.push_back(std::move(v));
    }
    // Auto layout when positions were not given.
    std::map<int, int> per_level;
    for (auto& v : vertices)
        if (v.position.empty()) v.position = {Rat(per_level[v.length]++), Rat(v.length)};

    std::map<std::string, int> index;
    for (size_t i = 0; i < vertices.size(); ++i) index[vertices[i].id] = static_cast<int>(i);

    require(description.contains("edges") && description["edges"].is_array(),
            "'edges' array required");
    std::vector<GkmEdge> edges;
    for (const auto& je : description["edges"]) {
        GkmEdge e;
        require(je.contains("source") && je.contains("target") && je.contains("weight"),
                "edge needs source/target/weight");
        std::string s = je["source"].is_string() ? je["source"].get<std::string>() : je["source"].dump();
        std::string t = je["target"].is_string() ? je["target"].get<std::string>() : je["target"].dump();
        require(index.count(s) == 1, "unknown edge source");
        require(index.count(t) == 1, "unknown edge target");
        e.source = index[s];
        e.target = index[t];
        IntVec w;
        for (const auto& c : je["weight"])
            w.emplace_back(c.is_string() ? Int(c.get<std::string>()) : Int(c.get<long>()));
        require(static_cast<int>(w.size()) == rank, "edge weight rank mismatch");
        e.weight = Weight(std::move(w));
        edges.push_back(std::move(e));
    }

    GkmGraph g(rank, std::move(vars), truncation, std::move(vertices), std::move(edges));
    // Length/edge-count consistency is part of the schema contract.
    for (size_t v = 0; v < g.vertices().size(); ++v)
        if (static_cast<int>(g.down_edges(static_cast<int>(v)).size()) != g.vertices()[v].length)
            throw std::invalid_argument("graph JSON: downward edge count != length at vertex '" +
                                        g.vertices()[v].id + "'");
    return g;
}

GkmGraph relabel_basis(const GkmGraph& g, const IntMat& u, std::vector<std::string> new_vars) {
    Int det = mat_det(u);
    if (det != 1 && det != -1) throw std::invalid_argument("relabel_basis: matrix not unimodular");
    std::vector<GkmEdge> edges;
    for (const auto& e : g.edges())
        edges.push_back({e.source, e.target, Weight(mat_vec(u, e.weight.coords()))});
    return GkmGraph(g.rank(), std::move(new_vars), g.truncation(), g.vertices(), std::move(edges));
}

GraphValidationReport validate(const GkmGraph& g, Theory theory) {
    GraphValidationReport rep;
    auto fail = [&](const std::string& assumption, const std::string& witness) {
        rep.issues.push_back({assumption, witness});
    };

    // Assumption 1 (stratification): exactly one base vertex, every other
    // vertex has a downward path to it.
    int base = -1;
    int zero_count = 0;
    for (size_t i = 0; i < g.vertices().size(); ++i)
        if (g.vertices()[i].length == 0) {
            base = static_cast<int>(i);
            ++zero_count;
        }
    if (zero_count != 1) {
        fail("stratification", "expected exactly one length-0 vertex, found " +
                                   std::to_string(zero_count));
    } else {
        for (size_t i = 0; i < g.vertices().size(); ++i) {
            // walk down greedily; any downward step strictly decreases length
            std::set<int> seen;
            std::vector<int> stack{static_cast<int>(i)};
            bool reached = false;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                if (v == base) {
                    reached = true;
                    break;
                }
                if (!seen.insert(v).second) continue;
                for (int ei : g.down_edges(v)) stack.push_back(g.edges()[ei].target);
            }
            if (!reached)
                fail("stratification",
                     "vertex '" + g.vertices()[i].id + "' has no downward path to the base");
        }
    }

    // Assumption 2 (cell decomposition): downward edge count = length.
    for (size_t v = 0; v < g.vertices().size(); ++v)
        if (static_cast<int>(g.down_edges(static_cast<int>(v)).size()) != g.vertices()[v].length)
            fail("cell-dimension", "vertex '" + g.vertices()[v].id + "' has " +
                                       std::to_string(g.down_edges(static_cast<int>(v)).size()) +
                                       " downward edges but length " +
                                       std::to_string(g.vertices()[v].length));

    // Assumption 3 is vacuous for isolated fixed points (the attaching maps
    // to points are unique); zero weights and parallel edges are already
    // rejected at construction.

    // Assumption 4: per-vertex downward-star coprimality.
    for (size_t v = 0; v < g.vertices().size(); ++v) {
        std::vector<Weight> star;
        for (int ei : g.down_edges(static_cast<int>(v))) star.push_back(g.edges()[ei].weight);
        CoprimalityReport cr = theory == Theory::H ? check_coprime_H(star) : check_coprime_K(star);
        for (const auto& viol : cr.violations)
            fail("euler-coprimality", "vertex '" + g.vertices()[v].id + "': " + viol.str());
    }

    rep.ok = rep.issues.empty();
    return rep;
}

json graph_to_json(const GkmGraph& g) {
    json j;
    j["rank"] = g.rank();
    j["variables"] = g.vars();
    j["truncation"] = g.truncation() ? json(*g.truncation()) : json(nullptr);
    j["vertices"] = json::array();
    for (const auto& v : g.vertices()) {
        json jv;
        jv["id"] = v.id;
        jv["length"] = v.length;
        json pos = json::array();
        for (const auto& c : v.position) pos.push_back(rat_str(c));
        jv["position"] = pos;
        j["vertices"].push_back(std::move(jv));
    }
    j["edges"] = json::array();
    for (const auto& e : g.edges()) {
        json je;
        je["source"] = g.vertices()[e.source].id;
        je["target"] = g.vertices()[e.target].id;
        json w = json::array();
        for (int i = 0; i < g.rank(); ++i) {
            const Int& c = e.weight[i];
            if (c.fits_slong_p())
                w.push_back(c.get_si());
            else
                w.push_back(c.get_str());
        }
        je["weight"] = std::move(w);
        j["edges"].push_back(std::move(je));
    }
    return j;
}

namespace {

RatVec rotated(const RatVec& p, const RatMat* rotation) {
    if (!rotation) return p;
    RatVec out((*rotation).size(), Rat(0));
    for (size_t i = 0; i < rotation->size(); ++i)
        for (size_t j = 0; j < p.size() && j < (*rotation)[i].size(); ++j)
            out[i] += (*rotation)[i][j] * p[j];
    return out;
}

std::string vertex_label(const GkmGraph& g, int v, const GkmClass* overlay);

std::string export_dot(const GkmGraph& g, const GkmClass* overlay) {
    std::ostringstream os;
    os << "graph gkm {\n";
    os << "  node [shape=circle fontsize=10];\n";
    for (size_t i = 0; i < g.vertices().size(); ++i)
        os << "  \"" << g.vertices()[i].id << "\" [label=\""
           << vertex_label(g, static_cast<int>(i), overlay) << "\"];\n";
    for (const auto& e : g.edges())
        os << "  \"" << g.vertices()[e.source].id << "\" -- \"" << g.vertices()[e.target].id
           << "\" [label=\"" << RingElt::linear_from_weight(e.weight).str(g.vars()) << "\"];\n";
    os << "}\n";
    return os.str();
}

// Deterministic integer pixel coordinates from exact rational positions.
std::pair<long, long> pixel(const RatVec& p, const Rat& minx, const Rat& maxy, long scale) {
    Rat x = (p.size() > 0 ? p[0] : Rat(0)) - minx;
    Rat y = maxy - (p.size() > 1 ? p[1] : Rat(0));
    auto px = [&](const Rat& r) {
        Rat s = r * scale;
        Int q = s.get_num() / s.get_den();
        return q.get_si();
    };
    return {px(x) + 40, px(y) + 40};
}

std::string export_svg(const GkmGraph& g, const GkmClass* overlay, const RatMat* rotation) {
    Rat minx(0), maxx(0), miny(0), maxy(0);
    bool first = true;
    std::vector<RatVec> pos;
    for (const auto& v : g.vertices()) {
        RatVec p = rotated(v.position, rotation);
        p.resize(2, Rat(0));
        if (first || p[0] < minx) minx = p[0];
        if (first || p[0] > maxx) maxx = p[0];
        if (first || p[1] < miny) miny = p[1];
        if (first || p[1] > maxy) maxy = p[1];
        first = false;
        pos.push_back(std::move(p));
    }
    const long scale = 90;
    auto span = [&](const Rat& a, const Rat& b) {
        Rat s = (b - a) * scale;
        Int q = s.get_num() / s.get_den();
        return q.get_si();
    };
    long w = span(minx, maxx) + 80;
    long h = span(miny, maxy) + 80;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    for (const auto& e : g.edges()) {
        auto [x1, y1] = pixel(pos[e.source], minx, maxy, scale);
        auto [x2, y2] = pixel(pos[e.target], minx, maxy, scale);
        os << "  <line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
           << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        os << "  <text x=\"" << (x1 + x2) / 2 << "\" y=\"" << (y1 + y2) / 2 - 3
           << "\" font-size=\"9\" fill=\"steelblue\">"
           << RingElt::linear_from_weight(e.weight).str(g.vars()) << "</text>\n";
    }
    for (size_t i = 0; i < pos.size(); ++i) {
        auto [x, y] = pixel(pos[i], minx, maxy, scale);
        os << "  <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\"black\"/>\n";
        os << "  <text x=\"" << x + 6 << "\" y=\"" << y - 6 << "\" font-size=\"10\">"
           << vertex_label(g, static_cast<int>(i), overlay) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string vertex_label(const GkmGraph& g, int v, const GkmClass* overlay) {
    std::string s = g.vertices()[v].id;
    if (!overlay) return s;
    const RingElt& val = overlay->values[v];
    std::string rendered;
    // classes decorate vertices as bouquets; render factored when possible
    if (overlay->theory == Theory::H && !val.is_zero() && val.homogeneous_degree()) {
        auto fac = factor_into_linear_forms(val);
        if (fac) rendered = factored_str(*fac, g.vars());
    }
    if (rendered.empty()) rendered = val.str(g.vars());
    return s + ": " + rendered;
}

std::string export_table(const GkmGraph& g, const GkmClass* overlay) {
    std::ostringstream os;
    os << "rank " << g.rank() << ", vars";
    for (const auto& v : g.vars()) os << " " << v;
    if (g.truncation())
        os << ", truncation " << *g.truncation();
    else
        os << ", complete";
    os << "\n" << g.vertices().size() << " vertices, " << g.edges().size() << " edges\n";
    os << "vertex  length  position\n";
    for (size_t i = 0; i < g.vertices().size(); ++i) {
        const auto& v = g.vertices()[i];
        os << v.id << "  " << v.length << "  (";
        for (size_t j = 0; j < v.position.size(); ++j)
            os << (j ? "," : "") << rat_str(v.position[j]);
        os << ")";
        std::string lbl = vertex_label(g, static_cast<int>(i), overlay);
        if (overlay) os << "  " << lbl;
        os << "\n";
    }
    os << "edges (source > target, weight):\n";
    for (const auto& e : g.edges())
        os << g.vertices()[e.source].id << " -> " << g.vertices()[e.target].id << "  "
           << e.weight.str() << "  " << RingElt::linear_from_weight(e.weight).str(g.vars()) << "\n";
    return os.str();
}

}  // namespace

std::string export_graph(const GkmGraph& g, ExportFormat format, const GkmClass* overlay,
                         const RatMat* rotation) {
    switch (format) {
        case ExportFormat::Json:
            return graph_to_json(g).dump(2) + "\n";
        case ExportFormat::Dot:
            return export_dot(g, overlay);
        case ExportFormat::Svg:
            return export_svg(g, overlay, rotation);
        case ExportFormat::Table:
            return export_table(g, overlay);
    }
    throw std::invalid_argument("unknown export format");
}

ExportFormat parse_export_format(const std::string& name) {
    if (name == "json") return ExportFormat::Json;
    if (name == "dot") return ExportFormat::Dot;
    if (name == "svg") return ExportFormat::Svg;
    if (name == "table") return ExportFormat::Table;
    throw std::invalid_argument("unknown format '" + name + "'");
}

}  // namespace gkm
