#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace gkm {

// Exact arithmetic kernel. All lattice coordinates, exponents and
// coefficients in this library are arbitrary-precision; nothing is ever
// rounded.
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Exact integer power with non-negative exponent.
inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Rational power, negative exponents allowed for nonzero base.
Rat rat_pow(const Rat& base, const Int& e);

// Prime factorization by trial division; fine for the scalar contents that
// arise at desk scale.  Returns (prime, multiplicity) pairs, ascending.
std::vector<std::pair<Int, int>> factorize(Int n);

// All positive divisors of |n|, ascending.
std::vector<Int> divisors(const Int& n);

// "3", "-7/2" etc.; used everywhere output must be exact.
std::string rat_str(const Rat& q);
Rat parse_rat(const std::string& s);

// Dense exact matrices, just big enough for action matrices and the
// rational solver.
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

IntMat identity_matrix(int n);
IntMat mat_mul(const IntMat& a, const IntMat& b);
IntVec mat_vec(const IntMat& a, const IntVec& v);
Int mat_det(IntMat a);

}  // namespace gkm
