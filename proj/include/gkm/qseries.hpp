#pragma once

#include "gkm/classes.hpp"
#include "gkm/ring.hpp"

#include <string>
#include <vector>

namespace gkm {

// Rank-1 polynomials in q.  q-factorials use the convention
// a!_q = (1-q)(1-q^2)...(1-q^a).
RingElt q_factorial(int a);
RingElt q_binomial(int a, int b);  // exact quotient, remainder-checked

// p_k(l1,...,ln) = (1-l1)...(1-ln) * sum_{0 <= |alpha| < k} l^alpha for
// Laurent monomial arguments, given as exponent vectors of a common rank.
RingElt p_k(int k, const std::vector<Exp>& monomials, int rank);

// a_{mnl} = p_m(q^n, ..., q^{n+l}); both the definition and the truncated
// q-binomial form are implemented and must agree.
RingElt a_mnl_definition(int m, int n, int ell);
RingElt a_mnl_qbinomial(int m, int n, int ell);

struct SymmetryReport {
    int pairs_checked = 0;
    std::vector<std::string> failures;
    Int max_degree = 0;  // resource telemetry
    bool ok() const { return failures.empty(); }
};

// a_{mnl} = a_{nml} (and both computation paths agree) for
// 1 <= m,n <= max_mn, 0 <= l <= max_ell.
SymmetryReport check_lemma_symmetry(int max_mn, int max_ell);

struct OmegaClosednessReport {
    int squares_checked = 0;
    bool closed = true;
    std::vector<std::string> failures;
    bool boundary_identity = true;  // Stokes sum over the rectangle boundary
};

// Exterior difference of the difference form
//   omega = q^{ij} ((i+l)!_q (j+l)!_q / (i!_q j!_q l!_q)) [(1-q^j) di + (1-q^i) dj]
// vanishes on every unit square of [0,I]x[0,J]; the boundary sum reproduces
// a_{JIl} - a_{IJl} = 0.
OmegaClosednessReport check_omega_closed(int bound_i, int bound_j, int ell);

// Vertex index of the based-loop-space graph: i != 0, with
// ell = |i| - 1 and k = |i - 1/2| - 1/2.
struct OmegaSU2Index {
    int i;
    int ell() const { return std::abs(i) - 1; }
    int k() const { return i > 0 ? i - 1 : -i; }
    int length() const { return ell() + k() + 1; }
};

// The explicit K-theory generator family on the loops-in-SU(2) graph
// (vertices labelled by integers m, variables a, q):
//   x_i(m) = p_{m-k}(a^-1 q^{-m-k}, ..., a^-1 q^{-m+l})   for m > k
//            0                                            for -l <= m <= k
//            p_{-m-l}(a q^{m-l}, ..., a q^{m+k})          for m < -l
// x_0 = 1.  Throws when the vertex of i lies outside the truncation.
GkmClass omega_su2_K_generator(int i, const GkmGraph& g);

}  // namespace gkm
