#pragma once

#include "gkm/classes.hpp"
#include "gkm/graph.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkm {

// The unique free-module generators x_v: homogeneous of polynomial degree
// length(v), vanishing at every other vertex of length <= length(v),
// restricting at v to the equivariant Euler class of the cell.
struct CanonicalGenerators {
    int degree_bound = 0;
    std::vector<int> vertex;        // generator vertices, (length, index) order
    std::vector<GkmClass> classes;  // aligned with vertex
    std::vector<bool> integral;     // per-generator Z-coefficient certificate
    bool all_integral = true;

    int find(int v) const;  // index into vertex/classes, -1 when absent
};

struct GeneratorError : std::runtime_error {
    GeneratorError(const std::string& what, int gen_vertex, int at_vertex)
        : std::runtime_error(what), gen_vertex(gen_vertex), at_vertex(at_vertex) {}
    int gen_vertex;
    int at_vertex;
};

// Inductive lift, increasing length, each value the unique homogeneous
// solution of the downward divisibility constraints (solved exactly over Q,
// integrality certified separately).  Throws GeneratorError on "no
// solution" or "non-unique lift".
CanonicalGenerators canonical_generators_H(const GkmGraph& g, int up_to_length);

enum class CoefficientStability { Stable, Provisional };

struct BasisExpansion {
    std::vector<int> gen_vertex;
    std::vector<RingElt> coefficient;
    std::vector<CoefficientStability> stability;
    bool remainder_zero = true;  // input minus the re-summed expansion
};

struct ExpansionError : std::runtime_error {
    ExpansionError(const std::string& what, int vertex)
        : std::runtime_error(what), vertex(vertex) {}
    int vertex;
};

// Triangular peeling by increasing length: the coefficient at v is the
// exact quotient of the residue at v by the Euler class of v.  Throws
// ExpansionError ("class outside generator span") when a division fails.
BasisExpansion expand_in_basis(const GkmGraph& g, const GkmClass& c,
                               const CanonicalGenerators& gens);

// Re-sum an expansion against its generators.
GkmClass expansion_value(const GkmGraph& g, const CanonicalGenerators& gens,
                         const BasisExpansion& e);

// Specialized coefficients (vars -> 0 resp. chars -> 1), keyed by
// generator vertex.
std::map<int, Rat> specialize_expansion(const BasisExpansion& e, Theory theory);

struct LiftError : std::runtime_error {
    LiftError(const std::string& what, int gen_vertex, int at_vertex, int witness_edge)
        : std::runtime_error(what),
          gen_vertex(gen_vertex),
          at_vertex(at_vertex),
          witness_edge(witness_edge) {}
    int gen_vertex;     // generator that failed
    int at_vertex;      // vertex whose value could not be assigned
    int witness_edge;   // edge whose divisibility failed (-1: factorization)
};

// Bouquet lift H -> K: every generator value, an integer times a product of
// linear forms, is rewritten as a product of Euler classes of integer
// characters (content and sign fold into the arrows) and mapped to the
// product of the 1 - e^beta.  The assignment is found by deterministic
// backtracking against the GKM edge conditions; exhaustion throws LiftError
// with a witness edge.  Triangularity of the result is re-checked.
GkmClass lift_generator_to_K(const GkmGraph& g, const GkmClass& h_gen, int gen_vertex);
std::vector<GkmClass> lift_generators_to_K(const GkmGraph& g, const CanonicalGenerators& gens);

}  // namespace gkm
