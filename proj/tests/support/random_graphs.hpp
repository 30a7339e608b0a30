#pragma once

// Test-support machinery: a family of randomly re-coordinatized GKM graphs
// that are valid by construction, and an independent brute-force member
// space oracle (global linear algebra over the product ring, no inductive
// lifting).

#include "gkm/classes.hpp"
#include "gkm/generators.hpp"
#include "gkm/linalg.hpp"
#include "gkm/models.hpp"

#include <random>
#include <set>
#include <vector>

namespace gkm::testsupport {

inline IntMat random_unimodular(std::mt19937& rng) {
    std::uniform_int_distribution<int> shear(-2, 2);
    std::uniform_int_distribution<int> ops(1, 3);
    IntMat u = identity_matrix(2);
    const int n = ops(rng);
    for (int i = 0; i < n; ++i) {
        IntMat e = identity_matrix(2);
        switch (ops(rng)) {
            case 1:
                e[0][1] = shear(rng);
                break;
            case 2:
                e[1][0] = shear(rng);
                break;
            default:
                e = {{Int(0), Int(1)}, {Int(1), Int(0)}};
                break;
        }
        u = mat_mul(u, e);
    }
    return u;
}

inline GkmGraph transform(const GkmGraph& g, std::mt19937& rng) {
    return relabel_basis(g, random_unimodular(rng), g.vars());
}

// Small projective / toric shapes, all valid GKM graphs.
inline GkmGraph projective_line() {
    std::vector<GkmVertex> v{{"0", 0, {Rat(0), Rat(0)}}, {"1", 1, {Rat(1), Rat(0)}}};
    std::vector<GkmEdge> e{{1, 0, Weight({Int(1), Int(0)})}};
    return GkmGraph(2, {"x1", "x2"}, std::nullopt, std::move(v), std::move(e));
}

inline GkmGraph projective_plane() {
    std::vector<GkmVertex> v{{"00", 0, {Rat(0), Rat(0)}},
                             {"10", 1, {Rat(1), Rat(0)}},
                             {"01", 2, {Rat(0), Rat(1)}}};
    std::vector<GkmEdge> e{{1, 0, Weight({Int(1), Int(0)})},
                           {2, 0, Weight({Int(0), Int(1)})},
                           {2, 1, Weight({Int(1), Int(-1)})}};
    return GkmGraph(2, {"x1", "x2"}, std::nullopt, std::move(v), std::move(e));
}

inline GkmGraph p1_times_p1() {
    std::vector<GkmVertex> v{{"00", 0, {Rat(0), Rat(0)}},
                             {"10", 1, {Rat(1), Rat(0)}},
                             {"01", 1, {Rat(0), Rat(1)}},
                             {"11", 2, {Rat(1), Rat(1)}}};
    std::vector<GkmEdge> e{{1, 0, Weight({Int(1), Int(0)})},
                           {2, 0, Weight({Int(0), Int(1)})},
                           {3, 1, Weight({Int(0), Int(1)})},
                           {3, 2, Weight({Int(1), Int(0)})}};
    return GkmGraph(2, {"x1", "x2"}, std::nullopt, std::move(v), std::move(e));
}

inline GkmGraph hirzebruch(int k) {
    std::vector<GkmVertex> v{{"00", 0, {Rat(0), Rat(0)}},
                             {"10", 1, {Rat(1), Rat(0)}},
                             {"01", 1, {Rat(0), Rat(1)}},
                             {"11", 2, {Rat(1), Rat(1)}}};
    std::vector<GkmEdge> e{{1, 0, Weight({Int(1), Int(0)})},
                           {2, 0, Weight({Int(0), Int(1)})},
                           {3, 1, Weight({Int(0), Int(1)})},
                           {3, 2, Weight({Int(1), Int(k)})}};
    return GkmGraph(2, {"x1", "x2"}, std::nullopt, std::move(v), std::move(e));
}

inline GkmGraph random_gkm_graph(std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(0, 6);
    std::uniform_int_distribution<int> hk(-3, 3);
    std::uniform_int_distribution<int> mm(1, 2);
    switch (pick(rng)) {
        case 0:
            return transform(projective_line(), rng);
        case 1:
            return transform(projective_plane(), rng);
        case 2:
            return transform(p1_times_p1(), rng);
        case 3: {
            int k = hk(rng);
            return transform(hirzebruch(k), rng);
        }
        case 4:
            return transform(models::omega_su2_graph(mm(rng)), rng);
        case 5:
            return transform(build_graph(CartanMatrix::parse("2,-1;-1,2"), {}, std::nullopt),
                             rng);
        default:
            return transform(models::g2_graph(), rng);
    }
}

// ---- brute-force member space oracle ----

inline std::vector<Exp> monomials_of_degree(int rank, int d) {
    std::vector<Exp> out;
    std::vector<int> c(rank, 0);
    c[0] = d;
    if (rank == 1) return {Exp{Int(d)}};
    while (true) {
        Exp e(rank);
        for (int i = 0; i < rank; ++i) e[i] = c[i];
        out.push_back(std::move(e));
        int i = rank - 2;
        while (i >= 0 && c[i] == 0) --i;
        if (i < 0) break;
        --c[i];
        int rest = 1;
        for (int j = i + 1; j < rank; ++j) {
            rest += c[j];
            c[j] = 0;
        }
        c[i + 1] = rest;
    }
    return out;
}

// All homogeneous degree-d classes satisfying the edge divisibilities,
// computed as one global rational nullspace over the product ring.
inline std::vector<GkmClass> brute_force_member_basis(const GkmGraph& g, int d) {
    const int n = g.rank();
    const std::vector<Exp> monos = monomials_of_degree(n, d);
    const int per_vertex = static_cast<int>(monos.size());
    const int cols = per_vertex * static_cast<int>(g.vertices().size());

    RatMat sys;
    for (const auto& e : g.edges()) {
        // parametrize the hyperplane <w, x> = 0 by eliminating the pivot
        // variable, then demand every residual monomial coefficient vanish
        int j = 0;
        while (e.weight[j] == 0) ++j;
        RingElt repl(RingKind::Poly, n);
        for (int i = 0; i < n; ++i) {
            if (i == j || e.weight[i] == 0) continue;
            Exp ex(n, 0);
            ex[i] = 1;
            repl += RingElt::monomial(RingKind::Poly, ex, make_rat(-e.weight[i], e.weight[j]));
        }
        std::vector<RingElt> restricted;
        restricted.reserve(per_vertex);
        std::set<Exp, GradedLexLess> residual;
        for (const auto& m : monos) {
            RingElt r = RingElt::monomial(RingKind::Poly, m, Rat(1)).substitute_var(j, repl);
            for (const auto& [me, mc] : r.terms()) residual.insert(me);
            restricted.push_back(std::move(r));
        }
        for (const Exp& me : residual) {
            RatVec row(cols, Rat(0));
            for (int k = 0; k < per_vertex; ++k) {
                Rat c = restricted[k].coefficient(me);
                row[per_vertex * e.source + k] += c;
                row[per_vertex * e.target + k] -= c;
            }
            sys.push_back(std::move(row));
        }
    }
    if (sys.empty()) sys.push_back(RatVec(cols, Rat(0)));

    std::vector<GkmClass> basis;
    for (const auto& vec : rational_nullspace(std::move(sys))) {
        GkmClass c = zero_class(g, Theory::H);
        for (size_t v = 0; v < g.vertices().size(); ++v) {
            RingElt f(RingKind::Poly, n);
            for (int k = 0; k < per_vertex; ++k)
                if (vec[per_vertex * v + k] != 0)
                    f += RingElt::monomial(RingKind::Poly, monos[k], vec[per_vertex * v + k]);
            c.values[v] = std::move(f);
        }
        basis.push_back(std::move(c));
    }
    return basis;
}

inline int expected_member_dimension(const GkmGraph& g, int d) {
    // free module on the canonical generators: sum over vertices of the
    // homogeneous dimension in degree d - length(v)
    auto dim_deg = [&](int k) {
        if (k < 0) return 0;
        // C(k + rank - 1, rank - 1)
        long num = 1, den = 1;
        for (int i = 1; i <= g.rank() - 1; ++i) {
            num *= k + i;
            den *= i;
        }
        return static_cast<int>(num / den);
    };
    int total = 0;
    for (const auto& v : g.vertices()) total += dim_deg(d - v.length);
    return total;
}

}  // namespace gkm::testsupport
