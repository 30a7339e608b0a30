#include "gkm/models.hpp"

#include "gkm/qseries.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gkm::models {

CartanMatrix g2_cartan() {
    return CartanMatrix({{Int(2), Int(-1)}, {Int(-3), Int(2)}});
}

CartanMatrix affine_a1_cartan() {
    return CartanMatrix({{Int(2), Int(-2)}, {Int(-2), Int(2)}});
}

CartanMatrix twisted_a1_cartan() {
    return CartanMatrix({{Int(2), Int(-1)}, {Int(-4), Int(2)}});
}

int long_node(const CartanMatrix& cartan) {
    auto d = cartan.symmetrizer();
    if (!d) throw std::domain_error("long_node: matrix is not symmetrizable");
    int best = 0;
    for (int i = 1; i < cartan.rank(); ++i)
        if ((*d)[i] > (*d)[best]) best = i;
    return best + 1;
}

GkmGraph g2_graph() { return build_graph(g2_cartan(), {long_node(g2_cartan())}, std::nullopt); }

namespace {

int length_to_m(int length) { return length % 2 ? (length + 1) / 2 : -length / 2; }

}  // namespace

GkmGraph omega_su2_graph(int m_max) {
    if (m_max < 1) throw std::invalid_argument("omega_su2_graph: m_max >= 1 required");
    GkmGraph root = build_graph(affine_a1_cartan(), {2}, 2 * m_max);
    // a = -alpha_2, q = alpha_1 + alpha_2 (the null root): in these
    // coordinates every edge weight is +-(a + (m+n) q).
    IntMat u = {{Int(1), Int(-1)}, {Int(1), Int(0)}};
    GkmGraph g = relabel_basis(root, u, {"a", "q"});

    std::vector<GkmVertex> vertices;
    std::vector<int> m_of(g.vertices().size());
    for (size_t i = 0; i < g.vertices().size(); ++i) {
        const int len = g.vertices()[i].length;
        const int m = length_to_m(len);
        m_of[i] = m;
        GkmVertex v;
        v.id = std::to_string(m);
        v.length = len;
        v.position = {Rat(m), Rat(len)};
        vertices.push_back(std::move(v));
    }
    // One vertex per length is what makes the Z identification possible.
    {
        std::set<int> lens;
        for (const auto& v : vertices)
            if (!lens.insert(v.length).second)
                throw std::runtime_error("omega_su2_graph: quotient is not a chain");
    }
    std::vector<GkmEdge> edges;
    for (const auto& e : g.edges()) {
        const int mn = m_of[e.source] + m_of[e.target];
        Weight expect(IntVec{Int(1), Int(mn)});
        if (e.weight != expect && e.weight != -expect)
            throw std::runtime_error("omega_su2_graph: edge (" + std::to_string(m_of[e.source]) +
                                     "," + std::to_string(m_of[e.target]) +
                                     ") weight " + e.weight.str() + " != +-(a + (m+n) q)");
        // store the ladder orientation a + (m+n) q; divisibility is
        // sign-insensitive, Euler classes become 1 - a q^{m+n}
        edges.push_back({e.source, e.target, expect});
    }
    return GkmGraph(2, g.vars(), g.truncation(), std::move(vertices), std::move(edges));
}

GkmGraph twisted_a1_graph(int max_length, int parabolic_node) {
    if (parabolic_node != 1 && parabolic_node != 2)
        throw std::invalid_argument("twisted_a1_graph: parabolic node must be 1 or 2");
    GkmGraph g = build_graph(twisted_a1_cartan(), {parabolic_node}, max_length);
    std::set<int> lens;
    for (const auto& v : g.vertices())
        if (!lens.insert(v.length).second)
            throw std::runtime_error("twisted_a1_graph: quotient is not a chain");
    return g;
}

std::string generator_name(const GkmGraph& g, int vertex, bool hexagon_names) {
    const int len = g.vertices()[vertex].length;
    if (hexagon_names) {
        static const char* names[] = {"1", "x", "y", "z", "s", "t"};
        if (len <= 5) return names[len];
    }
    return "g" + std::to_string(len);
}

bool G2Report::ok() const {
    if (!basis_found) return false;
    for (const auto& r : equivariant)
        if (!r.ok) return false;
    for (const auto& r : specialized)
        if (!r.ok) return false;
    return true;
}

namespace {

// +-primitive edge directions of the graph, sorted: the candidate pool for
// the automated (a, b) basis search.
std::vector<Weight> basis_candidates(const GkmGraph& g) {
    std::set<Weight> dirs;
    for (const auto& e : g.edges()) {
        Weight p = primitive_part(e.weight).first;
        dirs.insert(p);
        dirs.insert(-p);
    }
    return {dirs.begin(), dirs.end()};
}

GkmClass sub(const GkmClass& a, const GkmClass& b) { return add(a, scale(b, RingElt::constant(
    a.theory == Theory::H ? RingKind::Poly : RingKind::Laurent, a.graph->rank(), Rat(-1)))); }

bool class_eq(const GkmClass& a, const GkmClass& b) {
    for (size_t i = 0; i < a.values.size(); ++i)
        if (a.values[i] != b.values[i]) return false;
    return true;
}

// The four displayed H_T relations of the G2 example for a candidate basis.
bool g2_h_relations(const GkmGraph& g, const std::vector<GkmClass>& byl, const Weight& A,
                    const Weight& B, std::vector<RelationLine>* lines) {
    const auto& x = byl[1];
    auto shifted = [&](const Weight& w) { return add(x, constant_class(g, Theory::H, w)); };
    GkmClass p1 = multiply(x, shifted(A));
    GkmClass p2 = multiply(p1, shifted(B));
    GkmClass p3 = multiply(p2, shifted(A * 2 + B));
    GkmClass p4 = multiply(p3, shifted(B * 2 + A));
    auto two = [&](const GkmClass& c) {
        return scale(c, RingElt::constant(RingKind::Poly, g.rank(), Rat(2)));
    };
    const bool r1 = class_eq(p1, byl[2]);
    const bool r2 = class_eq(p2, two(byl[3]));
    const bool r3 = class_eq(p3, two(byl[4]));
    const bool r4 = class_eq(p4, two(byl[5]));
    if (lines) {
        lines->push_back({"x(x+a) = y", r1});
        lines->push_back({"x(x+a)(x+b) = 2z", r2});
        lines->push_back({"x(x+a)(x+b)(x+2a+b) = 2s", r3});
        lines->push_back({"x(x+a)(x+b)(x+2a+b)(x+2b+a) = 2t", r4});
    }
    return r1 && r2 && r3 && r4;
}

// The four displayed K_T relations; a and b are the characters themselves.
bool g2_k_relations(const GkmGraph& g, const std::vector<GkmClass>& byl, const Weight& A,
                    const Weight& B, std::vector<RelationLine>* lines) {
    const auto& x = byl[1];
    auto cls = [&](const RingElt& v) {
        GkmClass c = zero_class(g, Theory::K);
        for (auto& val : c.values) val = v;
        return c;
    };
    const RingElt one = RingElt::constant(RingKind::Laurent, g.rank(), Rat(1));
    auto euler_shift = [&](const Weight& w) {
        // (e^w x + 1 - e^w) as a class
        const RingElt ch = RingElt::character(w);
        return add(multiply(cls(ch), x), cls(one - ch));
    };
    GkmClass p1 = multiply(x, euler_shift(A));
    GkmClass p2 = multiply(p1, euler_shift(B));
    GkmClass p3 = multiply(p2, euler_shift(A * 2 + B));
    GkmClass p4 = multiply(p3, euler_shift(B * 2 + A));

    const RingElt ainv = RingElt::character(-A);
    const RingElt binv = RingElt::character(-B);
    const RingElt abinv = RingElt::character(-(A + B));
    const bool r1 = class_eq(p1, byl[2]);
    const bool r2 = class_eq(p2, sub(scale(byl[3], one + ainv), scale(byl[4], ainv)));
    const bool r3 = class_eq(p3, sub(scale(byl[4], one + binv), scale(byl[5], binv)));
    const bool r4 = class_eq(p4, scale(byl[5], one + abinv));
    if (lines) {
        lines->push_back({"x(ax+1-a) = y", r1});
        lines->push_back({"x(ax+1-a)(bx+1-b) = (1+a^-1)z - a^-1 s", r2});
        lines->push_back({"x(ax+1-a)(bx+1-b)(a^2 b x+1-a^2 b) = (1+b^-1)s - b^-1 t", r3});
        lines->push_back({"x(ax+1-a)(bx+1-b)(a^2 b x+1-a^2 b)(a b^2 x+1-a b^2) = (1+a^-1 b^-1)t",
                          r4});
    }
    return r1 && r2 && r3 && r4;
}

std::string specialized_rhs(const GkmGraph& g, const std::map<int, Rat>& coeffs) {
    std::string s;
    for (const auto& [gv, c] : coeffs) {
        if (c == 0) continue;
        Rat a = c < 0 ? Rat(-c) : c;
        s += s.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        std::string name = generator_name(g, gv, true);
        if (a != 1 || name == "1") s += rat_str(a);
        if (name != "1") s += name;
    }
    return s.empty() ? "0" : s;
}

}  // namespace

G2Report g2_suite(Theory theory) {
    G2Report rep;
    rep.theory = theory;
    const GkmGraph g = g2_graph();
    CanonicalGenerators hgens = canonical_generators_H(g, g.max_length());

    CanonicalGenerators gens = hgens;  // becomes the K family after lifting
    if (theory == Theory::K) {
        std::vector<GkmClass> lifted = lift_generators_to_K(g, hgens);
        gens.classes = std::move(lifted);
    }
    std::vector<GkmClass> byl(gens.classes.size(), zero_class(g, theory));
    for (size_t i = 0; i < gens.vertex.size(); ++i)
        byl[g.vertices()[gens.vertex[i]].length] = gens.classes[i];

    // Automated basis search over +-primitive edge directions.
    const std::vector<Weight> pool = basis_candidates(g);
    for (const Weight& A : pool) {
        for (const Weight& B : pool) {
            if (A == B) continue;
            const bool okp = theory == Theory::H ? g2_h_relations(g, byl, A, B, nullptr)
                                                 : g2_k_relations(g, byl, A, B, nullptr);
            if (okp) {
                rep.basis_found = true;
                rep.basis_a = A;
                rep.basis_b = B;
                break;
            }
        }
        if (rep.basis_found) break;
    }
    if (rep.basis_found) {
        if (theory == Theory::H)
            g2_h_relations(g, byl, rep.basis_a, rep.basis_b, &rep.equivariant);
        else
            g2_k_relations(g, byl, rep.basis_a, rep.basis_b, &rep.equivariant);
    }

    // Non-equivariant relations from expansions of powers of x.
    // H: x^2=y, x^3=2z, x^4=2s, x^5=2t, x^6=0.
    // K: x^2=y, x^3=2z-s, x^4=2s-t, x^5=2t, x^6=0.
    std::vector<std::map<int, Rat>> expected(7);
    auto lenv = [&](int len) {
        for (size_t i = 0; i < gens.vertex.size(); ++i)
            if (g.vertices()[gens.vertex[i]].length == len) return gens.vertex[i];
        return -1;
    };
    expected[2] = {{lenv(2), Rat(1)}};
    expected[3] = theory == Theory::H ? std::map<int, Rat>{{lenv(3), Rat(2)}}
                                      : std::map<int, Rat>{{lenv(3), Rat(2)}, {lenv(4), Rat(-1)}};
    expected[4] = theory == Theory::H ? std::map<int, Rat>{{lenv(4), Rat(2)}}
                                      : std::map<int, Rat>{{lenv(4), Rat(2)}, {lenv(5), Rat(-1)}};
    expected[5] = {{lenv(5), Rat(2)}};
    expected[6] = {};

    GkmClass power = byl[1];
    for (int k = 2; k <= 6; ++k) {
        power = multiply(power, byl[1]);
        BasisExpansion e = expand_in_basis(g, power, gens);
        std::map<int, Rat> spec = specialize_expansion(e, theory);
        std::map<int, Rat> nonzero;
        for (const auto& [gv, c] : spec)
            if (c != 0) nonzero[gv] = c;
        const bool okk = e.remainder_zero && nonzero == expected[k];
        rep.specialized.push_back(
            {"x^" + std::to_string(k) + " = " + specialized_rhs(g, nonzero), okk});
    }
    return rep;
}

bool DividedPowersReport::ok() const {
    for (const auto& r : relations)
        if (!r.ok) return false;
    return !relations.empty();
}

DividedPowersReport omega_su2_h_suite(int max_length, int max_n) {
    DividedPowersReport rep;
    const GkmGraph g = omega_su2_graph((max_length + 1) / 2);
    CanonicalGenerators gens = canonical_generators_H(g, max_length - 2);
    auto lenv = [&](int len) {
        for (size_t i = 0; i < gens.vertex.size(); ++i)
            if (g.vertices()[gens.vertex[i]].length == len) return gens.vertex[i];
        return -1;
    };
    const GkmClass& g1 = gens.classes[gens.find(lenv(1))];

    GkmClass power = g1;
    for (int n = 2; n <= max_n; ++n) {
        power = multiply(power, g1);
        BasisExpansion e = expand_in_basis(g, power, gens);
        std::map<int, Rat> spec = specialize_expansion(e, Theory::H);
        std::map<int, Rat> bylen;
        for (const auto& [gv, c] : spec)
            if (c != 0) bylen[g.vertices()[gv].length] = c;
        rep.coefficients[n] = bylen;
        Int nf = 1;
        for (int t = 2; t <= n; ++t) nf *= t;
        const bool okn = e.remainder_zero && bylen == std::map<int, Rat>{{n, Rat(nf)}};
        rep.relations.push_back({"g1^" + std::to_string(n) + " = " + nf.get_str() + " g" +
                                     std::to_string(n) + " (specialized)",
                                 okn});
    }
    return rep;
}

bool OmegaKReport::ok() const {
    for (const auto& r : membership)
        if (!r.ok) return false;
    return triangularity_ok && h_lift_fails && !membership.empty();
}

OmegaKReport omega_su2_k_suite(int m_max, int i_max) {
    OmegaKReport rep;
    const GkmGraph g = omega_su2_graph(m_max);

    for (int i = -i_max; i <= i_max; ++i) {
        if (i == 0) continue;
        GkmClass xi = omega_su2_K_generator(i, g);
        MembershipReport m = is_member(g, xi);
        rep.membership.push_back({"x_" + std::to_string(i) + " satisfies the edge conditions",
                                  m.ok});
        // Triangularity: zero below, Euler class up to a unit monomial at i.
        const int vi = g.vertex_index(std::to_string(i));
        const int leni = g.vertices()[vi].length;
        for (size_t w = 0; w < g.vertices().size(); ++w)
            if (static_cast<int>(w) != vi && g.vertices()[w].length <= leni &&
                !xi.values[w].is_zero())
                rep.triangularity_ok = false;
        RingElt unit = xi.values[vi];
        bool div_ok = true;
        for (int ei : g.down_edges(vi)) {
            DivisionResult d = divides_euler_K(g.edges()[ei].weight, unit);
            if (!d.divides) {
                div_ok = false;
                break;
            }
            unit = d.quotient;
        }
        if (!div_ok || unit.term_count() != 1 ||
            (unit.terms().begin()->second != 1 && unit.terms().begin()->second != -1))
            rep.triangularity_ok = false;
        else
            rep.triangular_units.push_back("x_" + std::to_string(i) + "(" + std::to_string(i) +
                                           ") = " + unit.str(g.vars()) + " * euler");
    }

    // The cohomology generators interpreted in K fail the edge conditions.
    CanonicalGenerators hgens = canonical_generators_H(g, 4);
    try {
        lift_generators_to_K(g, hgens);
        rep.h_lift_fails = false;
        rep.lift_failure = "unexpectedly lifted";
    } catch (const LiftError& err) {
        rep.h_lift_fails = true;
        std::ostringstream os;
        os << err.what() << " (generator at vertex "
           << g.vertices()[err.gen_vertex].id << ")";
        if (err.witness_edge >= 0) {
            const GkmEdge& e = g.edges()[err.witness_edge];
            os << ", witness edge (" << g.vertices()[e.source].id << ","
               << g.vertices()[e.target].id << ")";
        }
        rep.lift_failure = os.str();
    }
    return rep;
}

bool TwistedReport::ok() const {
    if (!selected_node) return false;
    for (const auto& r : relations)
        if (!r.ok) return false;
    return choice[*selected_node - 1].battery_ok;
}

TwistedReport twisted_a1_suite(int max_length, int max_n) {
    TwistedReport rep;
    for (int node = 1; node <= 2; ++node) {
        auto& pc = rep.choice[node - 1];
        pc.node = node;
        GkmGraph g = twisted_a1_graph(max_length, node);
        if (!validate(g, Theory::H).ok) continue;
        CanonicalGenerators gens;
        try {
            gens = canonical_generators_H(g, max_n);
        } catch (const GeneratorError&) {
            continue;
        }
        pc.valid = true;

        auto lenv = [&](int len) {
            for (size_t i = 0; i < gens.vertex.size(); ++i)
                if (g.vertices()[gens.vertex[i]].length == len) return gens.vertex[i];
            return -1;
        };
        const GkmClass& g1 = gens.classes[gens.find(lenv(1))];
        GkmClass power = g1;
        bool matches = true;
        for (int n = 2; n <= max_n; ++n) {
            power = multiply(power, g1);
            BasisExpansion e = expand_in_basis(g, power, gens);
            std::map<int, Rat> spec = specialize_expansion(e, Theory::H);
            std::map<int, Rat> bylen;
            for (const auto& [gv, c] : spec)
                if (c != 0) bylen[g.vertices()[gv].length] = c;
            pc.coefficients[n] = bylen;
            Int expect = 1;
            for (int t = 2; t <= n; ++t) expect *= t;
            expect <<= n / 2;  // n! 2^{floor(n/2)}
            matches = matches && e.remainder_zero &&
                      bylen == std::map<int, Rat>{{n, Rat(expect)}};
        }
        pc.matches_denominators = matches;

        // Invariant battery: membership of all generators, unique lifts
        // (construction would have thrown), truncation stability at L+2.
        bool battery = true;
        for (const auto& cls : gens.classes) battery = battery && is_member(g, cls).ok;
        {
            GkmGraph g2 = twisted_a1_graph(max_length + 2, node);
            CanonicalGenerators gens2 = canonical_generators_H(g2, max_n);
            for (size_t i = 0; i < gens.vertex.size() && battery; ++i) {
                int gi2 = -1;
                for (size_t j = 0; j < gens2.vertex.size(); ++j)
                    if (g2.vertices()[gens2.vertex[j]].id == g.vertices()[gens.vertex[i]].id)
                        gi2 = static_cast<int>(j);
                if (gi2 < 0) {
                    battery = false;
                    break;
                }
                for (size_t w = 0; w < g.vertices().size(); ++w) {
                    int w2 = g2.vertex_index(g.vertices()[w].id);
                    if (w2 < 0 || gens.classes[i].values[w] != gens2.classes[gi2].values[w2]) {
                        battery = false;
                        break;
                    }
                }
            }
        }
        pc.battery_ok = battery;
    }

    for (int node = 1; node <= 2; ++node)
        if (rep.choice[node - 1].valid && rep.choice[node - 1].matches_denominators) {
            rep.selected_node = node;
            break;
        }

    const auto& pc = rep.selected_node ? rep.choice[*rep.selected_node - 1]
                                       : (rep.choice[1].valid ? rep.choice[1] : rep.choice[0]);
    for (const auto& [n, bylen] : pc.coefficients) {
        Int expect = 1;
        for (int t = 2; t <= n; ++t) expect *= t;
        expect <<= n / 2;
        std::string rhs;
        for (const auto& [len, c] : bylen) {
            if (!rhs.empty()) rhs += " + ";
            rhs += rat_str(c) + " g" + std::to_string(len);
        }
        if (rhs.empty()) rhs = "0";
        rep.relations.push_back({"g1^" + std::to_string(n) + " = " + rhs + " (expected " +
                                     expect.get_str() + " g" + std::to_string(n) + ")",
                                 bylen == std::map<int, Rat>{{n, Rat(expect)}}});
    }
    return rep;
}

}  // namespace gkm::models
