#pragma once

#include "gkm/coxeter.hpp"
#include "gkm/lattice.hpp"
#include "gkm/ring.hpp"

#include <optional>
#include <string>
#include <vector>

// vendored single-header nlohmann/json
#include <json.hpp>

namespace gkm {

enum class Theory { H, K };

inline const char* theory_name(Theory t) { return t == Theory::H ? "H" : "K"; }

struct GkmVertex {
    std::string id;
    int length = 0;
    RatVec position;  // 2-dimensional drawing position
};

// Edges are stored downward: length(source) > length(target); the weight is
// the positive real root for generated graphs, as given for explicit ones.
struct GkmEdge {
    int source = 0;
    int target = 0;
    Weight weight;
};

class GkmGraph {
public:
    GkmGraph(int rank, std::vector<std::string> vars, std::optional<int> truncation,
             std::vector<GkmVertex> vertices, std::vector<GkmEdge> edges);

    int rank() const { return rank_; }
    const std::vector<std::string>& vars() const { return vars_; }
    // nullopt = complete graph (finite quotient); L = length-ideal cut.
    std::optional<int> truncation() const { return truncation_; }
    const std::vector<GkmVertex>& vertices() const { return vertices_; }
    const std::vector<GkmEdge>& edges() const { return edges_; }
    const std::vector<int>& down_edges(int v) const { return down_[v]; }

    int vertex_index(const std::string& id) const;  // -1 when absent
    int base_vertex() const;                        // unique length-0 vertex
    int max_length() const;

    void set_vars(std::vector<std::string> vars);

private:
    int rank_;
    std::vector<std::string> vars_;
    std::optional<int> truncation_;
    std::vector<GkmVertex> vertices_;
    std::vector<GkmEdge> edges_;
    std::vector<std::vector<int>> down_;
};

// GKM graph of G/P from Coxeter data: vertices = minimal coset reps,
// downward edges = inversion data, weights = inversion roots.
GkmGraph build_graph(const CartanMatrix& cartan, const std::vector<int>& parabolic,
                     std::optional<int> max_length);

// Same, but keeps the quotient around (the builders for the worked examples
// need the positions).
GkmGraph build_graph(const ParabolicQuotient& quotient);

// Direct-input mode; throws std::invalid_argument on schema violations,
// length/edge-count mismatches, zero weights, self-loops or parallel edges.
GkmGraph build_graph_explicit(const nlohmann::json& description);

// Re-coordinatize the character lattice: weights w -> U w, variables renamed.
// U must be unimodular.
GkmGraph relabel_basis(const GkmGraph& g, const IntMat& u, std::vector<std::string> new_vars);

struct ValidationIssue {
    std::string assumption;  // which of the four assumptions failed
    std::string witness;
};

struct GraphValidationReport {
    bool ok = true;
    std::vector<ValidationIssue> issues;
};

// Machine check of the stratification assumptions specialized to isolated
// fixed points: downward-star coprimality (H or K rule), edge-count =
// length, downward connectivity to the unique base vertex.
GraphValidationReport validate(const GkmGraph& g, Theory theory);

enum class ExportFormat { Json, Dot, Svg, Table };

struct GkmClass;  // classes.hpp

// Deterministic export; dot/svg label edges with rendered weights and can
// overlay a class as per-vertex labels.  rotation (optional) is applied to
// drawing positions.
std::string export_graph(const GkmGraph& g, ExportFormat format,
                         const GkmClass* overlay = nullptr,
                         const RatMat* rotation = nullptr);

nlohmann::json graph_to_json(const GkmGraph& g);

ExportFormat parse_export_format(const std::string& name);

}  // namespace gkm
