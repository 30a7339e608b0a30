#pragma once

#include "gkm/graph.hpp"
#include "gkm/ring.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace gkm {

enum class MembershipStatus { Unchecked, Passed, Failed };

// A candidate element of E_T^*(X): one point-ring element per vertex.
// The zero value is stored explicitly (total mapping).
struct GkmClass {
    Theory theory = Theory::H;
    const GkmGraph* graph = nullptr;
    std::vector<RingElt> values;  // indexed like graph->vertices()
    // cached result of the edge-condition check
    mutable MembershipStatus membership = MembershipStatus::Unchecked;

    const RingElt& at(int v) const { return values[v]; }
    bool is_integral() const;
};

GkmClass zero_class(const GkmGraph& g, Theory theory);
GkmClass constant_class(const GkmGraph& g, Theory theory, const Rat& c);
// The constant class with value linear_from_weight(w) (H) or e^w (K).
GkmClass constant_class(const GkmGraph& g, Theory theory, const Weight& w);

struct MembershipViolation {
    int edge = -1;  // index into graph.edges()
    RingElt difference;
};

struct MembershipReport {
    bool ok = true;
    std::vector<MembershipViolation> violations;
};

// The divisibility conditions cutting out the image of E_T^*(X) in the
// product of point rings: e(alpha) | c(v) - c(u) for every edge.
MembershipReport is_member(const GkmGraph& g, const GkmClass& c);

// Product of the downward-edge Euler classes at v; empty product = 1.
RingElt euler_class(const GkmGraph& g, int v, Theory theory);

GkmClass multiply(const GkmClass& a, const GkmClass& b);
GkmClass add(const GkmClass& a, const GkmClass& b);
GkmClass scale(const GkmClass& a, const RingElt& k);

// Non-equivariant specialization: variables -> 0 (H), characters -> 1 (K).
Rat specialize_ring_elt(const RingElt& f, Theory theory);
std::vector<Rat> specialize_class(const GkmClass& c);

struct FiltrationCheck {
    bool ok = true;
    // vertices minimal in the support that failed e(V_v) | c(v)
    std::vector<int> failures;
    std::vector<int> checked;  // the minimal support vertices
};

// Associated-graded consistency: at every support vertex with no support
// vertex below it, the Euler class divides the value.
FiltrationCheck filtration_leading_check(const GkmGraph& g, const GkmClass& c);

nlohmann::json class_to_json(const GkmClass& c);
GkmClass class_from_json(const GkmGraph& g, const nlohmann::json& j);

nlohmann::json ring_elt_to_json(const RingElt& f);
RingElt ring_elt_from_json(RingKind kind, int rank, const nlohmann::json& j);

}  // namespace gkm
