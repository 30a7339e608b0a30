#pragma once

#include "gkm/lattice.hpp"
#include "gkm/numeric.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gkm {

// Exponent vector of a monomial; entries may be negative for group-ring
// (Laurent) elements.
using Exp = IntVec;

// Graded lexicographic: total degree first, then lex.  The single canonical
// term order everywhere (storage, printing, pivoting).
struct GradedLexLess {
    bool operator()(const Exp& a, const Exp& b) const;
};

enum class RingKind { Poly, Laurent };

// Sparse exact element of Sym*(Lambda) (kind Poly, the H_T^* point ring) or
// of the group ring Z[Lambda] (kind Laurent, the K_T^0 point ring), with
// rational coefficients.  Zero coefficients are never stored.  Integrality
// is a property to be checked, never assumed.
class RingElt {
public:
    using TermMap = std::map<Exp, Rat, GradedLexLess>;

    RingElt() : kind_(RingKind::Poly), rank_(0) {}
    RingElt(RingKind kind, int rank) : kind_(kind), rank_(rank) {}

    static RingElt constant(RingKind kind, int rank, const Rat& c);
    static RingElt monomial(RingKind kind, Exp e, const Rat& c);
    // Degree-1 element sum_i w_i x_i (Euler class of w in cohomology).
    static RingElt linear_from_weight(const Weight& w);
    // 1 - e^w (Euler class of the line bundle w in K-theory).
    static RingElt euler_from_weight_K(const Weight& w);
    // The character e^w itself.
    static RingElt character(const Weight& w);

    RingKind kind() const { return kind_; }
    int rank() const { return rank_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    Rat coefficient(const Exp& e) const;
    void set_coefficient(Exp e, const Rat& c);

    RingElt operator-() const;
    RingElt operator+(const RingElt& o) const;
    RingElt operator-(const RingElt& o) const;
    RingElt operator*(const RingElt& o) const;
    RingElt operator*(const Rat& c) const;
    RingElt& operator+=(const RingElt& o);
    RingElt& operator-=(const RingElt& o);
    bool operator==(const RingElt& o) const;
    bool operator!=(const RingElt& o) const { return !(*this == o); }

    RingElt pow(unsigned n) const;

    // Total degree of a term = sum of exponents (may be negative for
    // Laurent elements).
    Int max_total_degree() const;
    // Common total degree of all terms, or nullopt when inhomogeneous.
    // The zero element reports degree 0.
    std::optional<Int> homogeneous_degree() const;

    bool is_integral() const;  // all coefficients have denominator 1
    // Constant scalar content with sign matching the graded-lex leading
    // coefficient; gcd of numerators over lcm of denominators.
    Rat content() const;

    // Replace variable `var` by a ring element not involving `var`
    // (exponent of `var` must be non-negative everywhere, so Poly kind
    // inputs only for that variable).
    RingElt substitute_var(int var, const RingElt& value) const;

    // Exact (partial) evaluation: the assigned variables are eliminated and
    // the remaining ones re-indexed in order.  Evaluating a Laurent element
    // at 0 is rejected ("unit evaluation undefined").
    RingElt substitute(const std::map<int, Rat>& assignment) const;

    // Rendering.  Poly: "2*a^2*b - 3"; Laurent: named character powers
    // "1 - a^-1*q^2" or exponent-vector form "1 - e^(-1,2)".
    std::string str(const std::vector<std::string>& vars) const;
    std::string str() const;  // default variable names x1..xn
    std::string str_exp() const;  // Laurent kind only

private:
    void add_term(const Exp& e, const Rat& c);
    void check_compatible(const RingElt& o, const char* op) const;

    RingKind kind_;
    int rank_;
    TermMap terms_;
};

std::vector<std::string> default_var_names(int rank);

struct DivisionResult {
    bool divides = false;
    RingElt quotient;  // valid when divides
};

// Does the linear form of w divide f in Q[x1..xn]?  Exact quotient on
// success; quotient coefficients may be rational when w is imprimitive.
DivisionResult divides_linear(const Weight& w, const RingElt& f);

// Does 1 - e^w divide f in Q[Lambda]?  Univariate Laurent division in the
// lowest-index coordinate where w is nonzero, remainder checked identically
// zero.
DivisionResult divides_euler_K(const Weight& w, const RingElt& f);

// Dispatch on f.kind().
DivisionResult divides_euler(const Weight& w, const RingElt& f);

// Exact factorization of a homogeneous polynomial into
// content * product of primitive sign-normalized linear forms.
struct LinearFactorization {
    Rat content;                  // integral for integral input
    std::vector<Weight> factors;  // with multiplicity, sorted
};

// nullopt when f does not split into linear forms over Q.
// Throws on inhomogeneous input.
std::optional<LinearFactorization> factor_into_linear_forms(const RingElt& f);

// Render c * (l1)(l2)... for a factorization, used by exports.
std::string factored_str(const LinearFactorization& f, const std::vector<std::string>& vars);

}  // namespace gkm
