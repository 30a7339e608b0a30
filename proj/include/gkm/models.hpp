#pragma once

#include "gkm/classes.hpp"
#include "gkm/generators.hpp"
#include "gkm/graph.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gkm::models {

CartanMatrix g2_cartan();         // [[2,-1],[-3,2]]
CartanMatrix affine_a1_cartan();  // [[2,-2],[-2,2]]
CartanMatrix twisted_a1_cartan(); // [[2,-1],[-4,2]]

// 1-based node of the long simple root (largest symmetrizer entry).
int long_node(const CartanMatrix& cartan);

// G2/P for the parabolic at the long simple root: complete graph on six
// vertices, one per length 0..5.
GkmGraph g2_graph();

// Based loops in SU(2): the affine A1 quotient re-coordinatized to the
// characters (a, q), vertices identified with m in Z (|m| <= m_max, lengths
// 0,1,...,2*m_max), edge (m,n) of weight +-(a + (m+n) q) -- verified at
// build time.  Positions: (m, length).
GkmGraph omega_su2_graph(int m_max);

// Twisted A_1^(4) chain at truncation max_length, parabolic node 1 or 2.
GkmGraph twisted_a1_graph(int max_length, int parabolic_node);

// Generator print names for chain quotients: 1, x, y, z, s, t for G2;
// g0, g1, ... otherwise.
std::string generator_name(const GkmGraph& g, int vertex, bool hexagon_names);

// ---- worked-example suites (pure compositions of library calls) ----

struct RelationLine {
    std::string text;
    bool ok = false;
};

struct G2Report {
    Theory theory = Theory::H;
    Weight basis_a, basis_b;       // found by the automated search
    bool basis_found = false;
    std::vector<RelationLine> equivariant;  // the four displayed relations
    std::vector<RelationLine> specialized;  // x^2=y ... x^6=0
    bool ok() const;
};

G2Report g2_suite(Theory theory);

struct DividedPowersReport {
    // n -> specialized coefficients keyed by generator length
    std::map<int, std::map<int, Rat>> coefficients;
    std::vector<RelationLine> relations;  // g1^n = coeff * g_n
    bool ok() const;
};

// ghat_1^n = n! ghat_n on the loop space, n = 2..max_n, at truncation L.
DividedPowersReport omega_su2_h_suite(int max_length, int max_n);

struct OmegaKReport {
    std::vector<RelationLine> membership;     // x_i member for |i| <= i_max
    std::vector<std::string> triangular_units;  // x_i(i) / euler unit factors
    bool triangularity_ok = true;
    bool h_lift_fails = false;  // the cohomology generators must NOT lift
    std::string lift_failure;   // witness message
    bool ok() const;
};

OmegaKReport omega_su2_k_suite(int m_max, int i_max);

struct TwistedReport {
    struct PerParabolic {
        int node = 0;
        bool valid = false;                   // graph validation + generators exist
        std::map<int, std::map<int, Rat>> coefficients;  // n -> (gen length -> value)
        bool matches_denominators = false;     // g1^n = n! 2^{floor(n/2)} g_n
        bool battery_ok = false;              // membership, uniqueness, stability
    };
    PerParabolic choice[2];
    std::optional<int> selected_node;
    std::vector<RelationLine> relations;  // for the selected node
    bool ok() const;
};

TwistedReport twisted_a1_suite(int max_length, int max_n);

}  // namespace gkm::models
