#include "gkm/generators.hpp"

#include "gkm/linalg.hpp"

#include <algorithm>
#include <set>

namespace gkm {

namespace {

// Monomial exponent vectors of total degree d in n variables, graded-lex
// ascending; the coefficient basis for the lift systems.
std::vector<Exp> degree_monomials(int n, int d) {
    std::vector<Exp> out;
    // enumerate compositions of d into n parts
    std::vector<int> c(n, 0);
    c[0] = d;
    if (n == 1) {
        Exp e{Int(d)};
        return {e};
    }
    while (true) {
        Exp e(n);
        for (int i = 0; i < n; ++i) e[i] = c[i];
        out.push_back(std::move(e));
        // next composition (colex step)
        int i = n - 2;
        while (i >= 0 && c[i] == 0) --i;
        if (i < 0) break;
        --c[i];
        int rest = 1;
        for (int j = i + 1; j < n; ++j) {
            rest += c[j];
            c[j] = 0;
        }
        c[i + 1] = rest;
    }
    std::sort(out.begin(), out.end(), GradedLexLess{});
    return out;
}

// Substitute the hyperplane {<w, x> = 0}: eliminate the lowest-index
// variable with nonzero coefficient by its rational parametrization.
RingElt restrict_to_hyperplane(const RingElt& f, const Weight& w) {
    int j = 0;
    while (w[j] == 0) ++j;
    RingElt repl(RingKind::Poly, f.rank());
    for (int i = 0; i < f.rank(); ++i) {
        if (i == j || w[i] == 0) continue;
        Exp e(f.rank(), 0);
        e[i] = 1;
        repl += RingElt::monomial(RingKind::Poly, e, make_rat(-w[i], w[j]));
    }
    return f.substitute_var(j, repl);
}

// Vertex processing order: increasing (length, index).
std::vector<int> by_length(const GkmGraph& g) {
    std::vector<int> order(g.vertices().size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return g.vertices()[a].length < g.vertices()[b].length;
    });
    return order;
}

}  // namespace

int CanonicalGenerators::find(int v) const {
    for (size_t i = 0; i < vertex.size(); ++i)
        if (vertex[i] == v) return static_cast<int>(i);
    return -1;
}

CanonicalGenerators canonical_generators_H(const GkmGraph& g, int up_to_length) {
    CanonicalGenerators out;
    out.degree_bound = up_to_length;
    const int n = g.rank();
    const std::vector<int> order = by_length(g);

    for (int v : order) {
        const int deg = g.vertices()[v].length;
        if (deg > up_to_length) continue;
        GkmClass cls = zero_class(g, Theory::H);
        cls.values[v] = euler_class(g, v, Theory::H);

        const std::vector<Exp> basis = degree_monomials(n, deg);
        for (int w : order) {
            if (g.vertices()[w].length <= deg) continue;
            // unknown homogeneous P of degree `deg` at w, constrained by
            // every downward edge of w
            RatMat sys;
            RatVec rhs;
            for (int ei : g.down_edges(w)) {
                const GkmEdge& e = g.edges()[ei];
                // restriction of each basis monomial to the edge hyperplane
                std::vector<RingElt> cols;
                cols.reserve(basis.size());
                for (const Exp& b : basis)
                    cols.push_back(restrict_to_hyperplane(
                        RingElt::monomial(RingKind::Poly, b, Rat(1)), e.weight));
                RingElt target = restrict_to_hyperplane(cls.values[e.target], e.weight);
                // collect the residual monomials appearing anywhere
                std::set<Exp, GradedLexLess> monos;
                for (const auto& col : cols)
                    for (const auto& [me, mc] : col.terms()) monos.insert(me);
                for (const auto& [me, mc] : target.terms()) monos.insert(me);
                for (const Exp& me : monos) {
                    RatVec row;
                    row.reserve(basis.size());
                    for (const auto& col : cols) row.push_back(col.coefficient(me));
                    sys.push_back(std::move(row));
                    rhs.push_back(target.coefficient(me));
                }
            }
            LinearSolution sol = solve_rational(std::move(sys), std::move(rhs));
            if (sol.kind == LinearSolution::Kind::Inconsistent)
                throw GeneratorError("no solution: the graph violates the GKM hypotheses", v, w);
            if (sol.kind == LinearSolution::Kind::Underdetermined)
                throw GeneratorError("non-unique lift: degenerate graph", v, w);
            RingElt value(RingKind::Poly, n);
            for (size_t k = 0; k < basis.size(); ++k)
                if (sol.solution[k] != 0)
                    value += RingElt::monomial(RingKind::Poly, basis[k], sol.solution[k]);
            cls.values[w] = std::move(value);
        }

        const bool integral = cls.is_integral();
        // every edge condition was enforced while lifting
        cls.membership = MembershipStatus::Passed;
        out.vertex.push_back(v);
        out.integral.push_back(integral);
        out.all_integral = out.all_integral && integral;
        out.classes.push_back(std::move(cls));
    }
    return out;
}

BasisExpansion expand_in_basis(const GkmGraph& g, const GkmClass& c,
                               const CanonicalGenerators& gens) {
    if (c.graph != &g) throw std::domain_error("expand_in_basis: class belongs to another graph");
    BasisExpansion out;
    const Theory theory = c.theory;
    const RingKind kind = theory == Theory::H ? RingKind::Poly : RingKind::Laurent;

    // Triangularity of the generator family is part of the contract.
    for (size_t gi = 0; gi < gens.vertex.size(); ++gi) {
        const int gv = gens.vertex[gi];
        for (size_t w = 0; w < g.vertices().size(); ++w)
            if (static_cast<int>(w) != gv &&
                g.vertices()[w].length <= g.vertices()[gv].length &&
                !gens.classes[gi].values[w].is_zero())
                throw std::domain_error("expand_in_basis: generators violate triangularity");
    }

    // Stability rule: H coefficients are forced finite by the grading; for
    // K on a truncated graph the tail lengths are genuinely provisional.
    Int h_degree_bound = 0;
    for (const auto& v : c.values) h_degree_bound = std::max(h_degree_bound, v.max_total_degree());

    GkmClass work = c;
    std::vector<size_t> gen_order(gens.vertex.size());
    for (size_t i = 0; i < gen_order.size(); ++i) gen_order[i] = i;
    std::stable_sort(gen_order.begin(), gen_order.end(), [&](size_t a, size_t b) {
        return g.vertices()[gens.vertex[a]].length < g.vertices()[gens.vertex[b]].length;
    });

    for (size_t gi : gen_order) {
        const int gv = gens.vertex[gi];
        // x_v(v) = unit * euler_class(v); the unit is 1 for canonical
        // generators and a signed monomial for the explicit K families.
        RingElt unit = gens.classes[gi].values[gv];
        for (int ei : g.down_edges(gv)) {
            DivisionResult d = divides_euler(g.edges()[ei].weight, unit);
            if (!d.divides)
                throw ExpansionError("generator value not divisible by its Euler class", gv);
            unit = d.quotient;
        }
        RingElt unit_inv;
        if (unit == RingElt::constant(kind, g.rank(), Rat(1))) {
            unit_inv = unit;
        } else {
            if (kind != RingKind::Laurent || unit.term_count() != 1 ||
                (unit.terms().begin()->second != 1 && unit.terms().begin()->second != -1))
                throw ExpansionError("generator normalization is not a unit multiple of the "
                                     "Euler class", gv);
            Exp e = unit.terms().begin()->first;
            for (auto& x : e) x = -x;
            unit_inv = RingElt::monomial(kind, std::move(e), unit.terms().begin()->second);
        }

        RingElt residue = work.values[gv];
        RingElt coeff;
        if (residue.is_zero()) {
            coeff = RingElt(kind, g.rank());
        } else {
            RingElt q = residue;
            for (int ei : g.down_edges(gv)) {
                const Weight& w = g.edges()[ei].weight;
                DivisionResult d = theory == Theory::H ? divides_linear(w, q)
                                                       : divides_euler_K(w, q);
                if (!d.divides)
                    throw ExpansionError("class outside generator span", gv);
                q = d.quotient;
            }
            coeff = q * unit_inv;
        }
        if (!coeff.is_zero())
            for (size_t w = 0; w < work.values.size(); ++w)
                work.values[w] -= coeff * gens.classes[gi].values[w];

        CoefficientStability st = CoefficientStability::Stable;
        if (theory == Theory::H) {
            if (Int(g.vertices()[gv].length) > h_degree_bound && !coeff.is_zero())
                st = CoefficientStability::Provisional;  // cannot happen for members
        } else if (g.truncation()) {
            if (g.vertices()[gv].length >= *g.truncation() - 1)
                st = CoefficientStability::Provisional;
        }
        out.gen_vertex.push_back(gv);
        out.coefficient.push_back(std::move(coeff));
        out.stability.push_back(st);
    }

    out.remainder_zero = true;
    for (const auto& v : work.values) out.remainder_zero = out.remainder_zero && v.is_zero();
    return out;
}

GkmClass expansion_value(const GkmGraph& g, const CanonicalGenerators& gens,
                         const BasisExpansion& e) {
    GkmClass out = zero_class(g, gens.classes.empty() ? Theory::H : gens.classes[0].theory);
    for (size_t i = 0; i < e.gen_vertex.size(); ++i) {
        int gi = gens.find(e.gen_vertex[i]);
        if (gi < 0) throw std::domain_error("expansion_value: unknown generator vertex");
        out = add(out, scale(gens.classes[gi], e.coefficient[i]));
    }
    return out;
}

std::map<int, Rat> specialize_expansion(const BasisExpansion& e, Theory theory) {
    std::map<int, Rat> out;
    for (size_t i = 0; i < e.gen_vertex.size(); ++i)
        out[e.gen_vertex[i]] = specialize_ring_elt(e.coefficient[i], theory);
    return out;
}

namespace {

// All ways to write the integer content as a product of signed scales over
// the factor slots: arrows beta_j = scale_j * factor_j, prod(scale_j) =
// content.  Returned as K-values (products of 1 - e^beta), deduplicated,
// canonically ordered (all-positive assignments first).
struct BouquetCandidates {
    std::vector<RingElt> values;
};

void distribute(const std::vector<Weight>& slots, size_t at, const Int& remaining,
                std::vector<Int>& scales, std::vector<std::vector<Int>>& out) {
    if (at + 1 == slots.size()) {
        scales[at] = remaining;
        out.push_back(scales);
        return;
    }
    for (const Int& d : divisors(remaining)) {
        if (remaining % d != 0) continue;
        scales[at] = d;
        distribute(slots, at + 1, remaining / d, scales, out);
    }
}

BouquetCandidates bouquet_candidates(const GkmGraph& g, const RingElt& value, int gen_vertex,
                                     int at_vertex) {
    const LinearFactorization fac = [&] {
        auto f = factor_into_linear_forms(value);
        if (!f)
            throw LiftError("value does not split into linear forms", gen_vertex, at_vertex, -1);
        return *f;
    }();
    if (!is_integer(fac.content))
        throw LiftError("value has non-integral content", gen_vertex, at_vertex, -1);
    const Int content = fac.content.get_num();

    BouquetCandidates out;
    if (fac.factors.empty()) {
        // pure constants only occur at the base vertex for the unit class
        out.values.push_back(RingElt::constant(RingKind::Laurent, g.rank(), fac.content));
        return out;
    }

    std::vector<std::vector<Int>> scale_lists;
    std::vector<Int> scales(fac.factors.size());
    distribute(fac.factors, 0, int_abs(content), scales, scale_lists);

    const bool negative = content < 0;
    struct Scored {
        int negatives;
        std::vector<IntVec> arrows;  // sorted arrow multiset, for dedup/order
        RingElt value;
    };
    std::vector<Scored> scored;
    for (const auto& sl : scale_lists) {
        // sign patterns with the right product sign
        const size_t k = sl.size();
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            const bool odd = __builtin_popcount(mask) % 2 != 0;
            if (odd != negative) continue;
            std::vector<IntVec> arrows;
            arrows.reserve(k);
            for (size_t j = 0; j < k; ++j) {
                Int s = (mask >> j) & 1u ? Int(-sl[j]) : sl[j];
                arrows.push_back((fac.factors[j] * s).coords());
            }
            std::sort(arrows.begin(), arrows.end());
            RingElt v = RingElt::constant(RingKind::Laurent, g.rank(), Rat(1));
            for (const auto& a : arrows) v = v * RingElt::euler_from_weight_K(Weight(a));
            scored.push_back({static_cast<int>(__builtin_popcount(mask)), std::move(arrows),
                              std::move(v)});
        }
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.negatives != b.negatives) return a.negatives < b.negatives;
        return a.arrows < b.arrows;
    });
    std::set<std::vector<IntVec>> seen;
    for (auto& s : scored)
        if (seen.insert(s.arrows).second) out.values.push_back(std::move(s.value));
    return out;
}

}  // namespace

GkmClass lift_generator_to_K(const GkmGraph& g, const GkmClass& h_gen, int gen_vertex) {
    if (h_gen.theory != Theory::H) throw std::domain_error("lift: H generator expected");
    GkmClass out = zero_class(g, Theory::K);
    const std::vector<int> order = by_length(g);

    // Vertices with nonzero value, in lift order.
    std::vector<int> active;
    std::vector<BouquetCandidates> cands;
    for (int v : order) {
        if (h_gen.values[v].is_zero()) continue;
        active.push_back(v);
        cands.push_back(bouquet_candidates(g, h_gen.values[v], gen_vertex, v));
    }

    // Deterministic backtracking over per-vertex bouquets, pruned by the
    // divisibility conditions along downward edges into decided vertices.
    std::vector<size_t> choice(active.size(), 0);
    int deepest_fail_level = -1, deepest_fail_edge = -1;
    size_t level = 0;
    while (level < active.size()) {
        bool placed = false;
        for (size_t& ci = choice[level]; ci < cands[level].values.size(); ++ci) {
            const RingElt& val = cands[level].values[ci];
            bool ok = true;
            for (int ei : g.down_edges(active[level])) {
                const GkmEdge& e = g.edges()[ei];
                RingElt diff = val - out.values[e.target];
                if (!divides_euler_K(e.weight, diff).divides) {
                    ok = false;
                    if (static_cast<int>(level) >= deepest_fail_level) {
                        deepest_fail_level = static_cast<int>(level);
                        deepest_fail_edge = ei;
                    }
                    break;
                }
            }
            if (ok) {
                out.values[active[level]] = val;
                placed = true;
                break;
            }
        }
        if (placed) {
            ++level;
            if (level < active.size()) choice[level] = 0;
            continue;
        }
        // backtrack
        if (level == 0)
            throw LiftError("lifted class fails GKM conditions",
                            gen_vertex,
                            deepest_fail_level >= 0 ? active[deepest_fail_level] : active[0],
                            deepest_fail_edge);
        out.values[active[level]] = RingElt(RingKind::Laurent, g.rank());
        --level;
        ++choice[level];
    }

    // Full membership re-check (upward edges into zero vertices included).
    MembershipReport rep = is_member(g, out);
    if (!rep.ok)
        throw LiftError("lifted class fails GKM conditions", gen_vertex,
                        g.edges()[rep.violations[0].edge].source, rep.violations[0].edge);
    return out;
}

std::vector<GkmClass> lift_generators_to_K(const GkmGraph& g, const CanonicalGenerators& gens) {
    std::vector<GkmClass> out;
    out.reserve(gens.classes.size());
    for (size_t i = 0; i < gens.classes.size(); ++i)
        out.push_back(lift_generator_to_K(g, gens.classes[i], gens.vertex[i]));

    // Triangularity of the lifted family (conditions (xij)).
    for (size_t i = 0; i < out.size(); ++i) {
        const int gv = gens.vertex[i];
        for (size_t w = 0; w < g.vertices().size(); ++w) {
            if (static_cast<int>(w) == gv) continue;
            if (g.vertices()[w].length <= g.vertices()[gv].length &&
                !out[i].values[w].is_zero())
                throw LiftError("lifted class violates triangularity", gv, static_cast<int>(w), -1);
        }
    }
    return out;
}

}  // namespace gkm
