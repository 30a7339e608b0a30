#include "gkm/qseries.hpp"

#include <algorithm>

namespace gkm {

namespace {

RingElt q_monomial(const Int& e, const Rat& c = Rat(1)) {
    return RingElt::monomial(RingKind::Poly, Exp{e}, c);
}

RingElt one_minus_q_pow(const Int& e) {
    RingElt r = RingElt::constant(RingKind::Poly, 1, Rat(1));
    r -= q_monomial(e);
    return r;
}

// Exact univariate division with remainder check.
RingElt exact_div(const RingElt& f, const RingElt& g) {
    if (g.is_zero()) throw std::domain_error("exact_div: zero divisor");
    RingElt r = f;
    RingElt q(RingKind::Poly, 1);
    const auto lead = [&](const RingElt& p) { return --p.terms().end(); };
    const Exp ge = lead(g)->first;
    const Rat gc = lead(g)->second;
    while (!r.is_zero()) {
        auto lt = lead(r);
        if (GradedLexLess{}(lt->first, ge) && lt->first != ge) break;
        Exp e{lt->first[0] - ge[0]};
        if (e[0] < 0) break;
        RingElt t = RingElt::monomial(RingKind::Poly, e, lt->second / gc);
        q += t;
        r -= t * g;
    }
    if (!r.is_zero()) throw std::domain_error("exact_div: nonzero remainder");
    return q;
}

// Multi-indices alpha with |alpha| < k over n slots.
void sum_below(int k, int n, int at, Exp& cur, Int budget_used, const std::vector<Exp>& monomials,
               int rank, RingElt& acc) {
    if (at == n) {
        Exp e(rank, 0);
        for (int j = 0; j < n; ++j)
            for (int t = 0; t < rank; ++t) e[t] += cur[j] * monomials[j][t];
        acc += RingElt::monomial(RingKind::Laurent, e, Rat(1));
        return;
    }
    for (Int a = 0; budget_used + a < k; ++a) {
        cur[at] = a;
        sum_below(k, n, at + 1, cur, budget_used + a, monomials, rank, acc);
    }
    cur[at] = 0;
}

}  // namespace

RingElt q_factorial(int a) {
    if (a < 0) throw std::domain_error("q_factorial: negative argument");
    RingElt r = RingElt::constant(RingKind::Poly, 1, Rat(1));
    for (int i = 1; i <= a; ++i) r = r * one_minus_q_pow(i);
    return r;
}

RingElt q_binomial(int a, int b) {
    if (b < 0 || a < 0 || b > a) throw std::domain_error("q_binomial: 0 <= b <= a required");
    return exact_div(q_factorial(a), q_factorial(b) * q_factorial(a - b));
}

RingElt p_k(int k, const std::vector<Exp>& monomials, int rank) {
    if (k <= 0) throw std::domain_error("p_k: k must be >= 1");
    for (const auto& m : monomials) {
        if (static_cast<int>(m.size()) != rank) throw std::domain_error("p_k: rank mismatch");
    }
    const int n = static_cast<int>(monomials.size());
    RingElt prod = RingElt::constant(RingKind::Laurent, rank, Rat(1));
    for (const auto& m : monomials) {
        RingElt f = RingElt::constant(RingKind::Laurent, rank, Rat(1));
        f -= RingElt::monomial(RingKind::Laurent, m, Rat(1));
        prod = prod * f;
    }
    RingElt acc(RingKind::Laurent, rank);
    Exp cur(n, 0);
    sum_below(k, n, 0, cur, 0, monomials, rank, acc);
    return prod * acc;
}

RingElt a_mnl_definition(int m, int n, int ell) {
    if (m < 1 || n < 1 || ell < 0) throw std::domain_error("a_mnl: m,n >= 1 and ell >= 0 required");
    std::vector<Exp> monos;
    for (int t = 0; t <= ell; ++t) monos.push_back(Exp{Int(n + t)});
    RingElt laurent = p_k(m, monos, 1);
    // arguments are honest q-powers, so the result is polynomial
    RingElt poly(RingKind::Poly, 1);
    for (const auto& [e, c] : laurent.terms()) poly.set_coefficient(e, c);
    return poly;
}

RingElt a_mnl_qbinomial(int m, int n, int ell) {
    if (m < 1 || n < 1 || ell < 0) throw std::domain_error("a_mnl: m,n >= 1 and ell >= 0 required");
    RingElt prefix = RingElt::constant(RingKind::Poly, 1, Rat(1));
    for (int t = 0; t <= ell; ++t) prefix = prefix * one_minus_q_pow(n + t);
    RingElt sum(RingKind::Poly, 1);
    for (int i = 0; i < m; ++i) sum += q_monomial(Int(i) * n) * q_binomial(ell + i, ell);
    return prefix * sum;
}

SymmetryReport check_lemma_symmetry(int max_mn, int max_ell) {
    if (max_mn < 1 || max_ell < 0) throw std::domain_error("check_lemma_symmetry: bad bounds");
    SymmetryReport rep;
    for (int ell = 0; ell <= max_ell; ++ell)
        for (int m = 1; m <= max_mn; ++m)
            for (int n = m; n <= max_mn; ++n) {
                RingElt def_mn = a_mnl_definition(m, n, ell);
                RingElt qb_mn = a_mnl_qbinomial(m, n, ell);
                RingElt def_nm = a_mnl_definition(n, m, ell);
                ++rep.pairs_checked;
                rep.max_degree = std::max(rep.max_degree, def_mn.max_total_degree());
                if (def_mn != qb_mn)
                    rep.failures.push_back("a(" + std::to_string(m) + "," + std::to_string(n) +
                                           "," + std::to_string(ell) +
                                           "): definition and q-binomial form differ");
                if (def_mn != def_nm)
                    rep.failures.push_back("a(" + std::to_string(m) + "," + std::to_string(n) +
                                           "," + std::to_string(ell) + ") != swapped");
            }
    return rep;
}

namespace {

// The polynomial prefactor q^{ij} (i+l)!_q (j+l)!_q / (i!_q j!_q l!_q)
// = q^{ij} C(i+l, l)_q * (j+l)!_q / j!_q.
RingElt omega_prefactor(int i, int j, int ell) {
    RingElt r = q_monomial(Int(i) * j) * q_binomial(i + ell, ell);
    for (int t = j + 1; t <= j + ell; ++t) r = r * one_minus_q_pow(t);
    return r;
}

RingElt omega_f(int i, int j, int ell) { return omega_prefactor(i, j, ell) * one_minus_q_pow(j); }
RingElt omega_g(int i, int j, int ell) { return omega_prefactor(i, j, ell) * one_minus_q_pow(i); }

}  // namespace

OmegaClosednessReport check_omega_closed(int bound_i, int bound_j, int ell) {
    if (bound_i < 1 || bound_j < 1 || ell < 0)
        throw std::domain_error("check_omega_closed: bad bounds");
    OmegaClosednessReport rep;
    for (int i = 0; i < bound_i; ++i)
        for (int j = 0; j < bound_j; ++j) {
            // d(omega) on the unit square at (i, j):
            // [g(i+1,j) - g(i,j)] - [f(i,j+1) - f(i,j)] = 0
            RingElt d = omega_g(i + 1, j, ell) - omega_g(i, j, ell) - omega_f(i, j + 1, ell) +
                        omega_f(i, j, ell);
            ++rep.squares_checked;
            if (!d.is_zero()) {
                rep.closed = false;
                rep.failures.push_back("square (" + std::to_string(i) + "," + std::to_string(j) +
                                       ")");
            }
        }
    // Discrete Stokes over the boundary of [0,I] x [0,J], counterclockwise:
    // bottom and left sides vanish, the other two give a_{JIl} - a_{IJl}.
    RingElt total(RingKind::Poly, 1);
    for (int i = 0; i < bound_i; ++i) total += omega_f(i, 0, ell);           // bottom
    for (int j = 0; j < bound_j; ++j) total += omega_g(bound_i, j, ell);     // right
    for (int i = 0; i < bound_i; ++i) total -= omega_f(i, bound_j, ell);     // top
    for (int j = 0; j < bound_j; ++j) total -= omega_g(0, j, ell);           // left
    RingElt expected = a_mnl_qbinomial(bound_j, bound_i, ell) - a_mnl_qbinomial(bound_i, bound_j, ell);
    rep.boundary_identity = (total == expected) && total.is_zero();
    return rep;
}

GkmClass omega_su2_K_generator(int i, const GkmGraph& g) {
    if (g.rank() != 2) throw std::domain_error("omega_su2_K_generator: rank-2 graph expected");
    GkmClass out = zero_class(g, Theory::K);
    if (i == 0) return constant_class(g, Theory::K, Rat(1));

    OmegaSU2Index idx{i};
    const int ell = idx.ell();
    const int k = idx.k();
    if (g.vertex_index(std::to_string(i)) < 0)
        throw std::domain_error("omega_su2_K_generator: vertex " + std::to_string(i) +
                                " outside the truncation");

    for (size_t v = 0; v < g.vertices().size(); ++v) {
        const int m = std::stoi(g.vertices()[v].id);
        if (m > k) {
            std::vector<Exp> monos;
            for (int t = -m - k; t <= -m + ell; ++t) monos.push_back(Exp{Int(-1), Int(t)});
            out.values[v] = p_k(m - k, monos, 2);
        } else if (m >= -ell) {
            // zero
        } else {
            std::vector<Exp> monos;
            for (int t = m - ell; t <= m + k; ++t) monos.push_back(Exp{Int(1), Int(t)});
            out.values[v] = p_k(-m - ell, monos, 2);
        }
    }
    return out;
}

}  // namespace gkm
