#pragma once

#include "gkm/numeric.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace gkm {

// A character of the torus in simple-root coordinates of the lattice
// Lambda = Z^n.  Weights label moment-graph edges and index the variables
// of the point rings.
class Weight {
public:
    Weight() = default;
    explicit Weight(IntVec coords) : coords_(std::move(coords)) {}

    int rank() const { return static_cast<int>(coords_.size()); }
    bool is_zero() const;
    const Int& operator[](size_t i) const { return coords_[i]; }
    const IntVec& coords() const { return coords_; }

    Weight operator-() const;
    Weight operator+(const Weight& o) const;
    Weight operator-(const Weight& o) const;
    Weight operator*(const Int& k) const;

    bool operator==(const Weight& o) const { return coords_ == o.coords_; }
    bool operator!=(const Weight& o) const { return coords_ != o.coords_; }
    bool operator<(const Weight& o) const { return coords_ < o.coords_; }

    std::string str() const;  // "(1,-2)"

private:
    IntVec coords_;
};

// w = g*p with p primitive (coordinate gcd 1) and the first nonzero
// coordinate of p positive.  Throws on the zero weight.
std::pair<Weight, Int> primitive_part(const Weight& w);

// Equal primitive parts up to sign.  Throws if either weight is zero.
bool collinear(const Weight& a, const Weight& b);

enum class CoprimalityReason { Collinear, SharedPrime, ZeroWeight };

struct CoprimalityViolation {
    int i = -1;  // indices into the checked list; j = -1 for zero-weight entries
    int j = -1;
    CoprimalityReason reason = CoprimalityReason::Collinear;
    Int prime;  // set for SharedPrime
    std::string str() const;
};

struct CoprimalityReport {
    bool ok = true;
    std::vector<CoprimalityViolation> violations;
};

// H_T^* rule: no two collinear and no prime divides two list members
// (a prime divides a weight iff it divides its scalar content).
CoprimalityReport check_coprime_H(const std::vector<Weight>& ws);

// K_T^0 rule: non-collinearity alone; distinct directions already give
// distinct cyclotomic factors.
CoprimalityReport check_coprime_K(const std::vector<Weight>& ws);

}  // namespace gkm
