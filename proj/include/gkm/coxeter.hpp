#pragma once

#include "gkm/lattice.hpp"
#include "gkm/numeric.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gkm {

// Generalized Cartan matrix.  Symmetrizability is not required.
class CartanMatrix {
public:
    explicit CartanMatrix(IntMat entries);
    // Row-major CLI syntax "2,-1;-4,2".
    static CartanMatrix parse(const std::string& text);

    int rank() const { return n_; }
    const Int& at(int i, int j) const { return a_[i][j]; }
    const IntMat& entries() const { return a_; }

    bool is_singular() const;  // affine-type inputs have det 0
    // Positive integer symmetrizer d with d_i a_ij = d_j a_ji, or nullopt.
    std::optional<IntVec> symmetrizer() const;

    // <mu, alpha_i^vee> for mu in root coordinates.
    Int pair_root(int i, const IntVec& mu) const;
    // Simple reflection on root coordinates.
    IntVec reflect(int i, IntVec mu) const;
    // Action matrix of s_i on root coordinates.
    IntMat reflection_matrix(int i) const;

    std::string str() const;

private:
    int n_;
    IntMat a_;
};

// Minimal-length coset representative of W_G / W_P.
struct CosetRep {
    std::vector<int> word;  // ShortLex-least reduced word, 1-based letters
    int length = 0;
    IntMat action;    // action on root coordinates
    IntVec position;  // image of the basepoint in extended coordinates
};

struct InversionDatum {
    Weight root;     // positive real root labelling the downward edge
    int target = 0;  // index of the strictly shorter coset
};

// Enumeration of minimal coset representatives by orbit BFS on a dominant
// basepoint whose stabilizer is exactly W_P.  For singular (affine) Cartan
// matrices the coordinates are extended by degree coordinates so the orbit
// is faithful.
class ParabolicQuotient {
public:
    // parabolic: 1-based node indices, proper subset of {1..n}.
    // max_length: nullopt enumerates everything (finite types only;
    // guarded by a safety cap).
    ParabolicQuotient(CartanMatrix cartan, std::vector<int> parabolic,
                      std::optional<int> max_length);

    const CartanMatrix& cartan() const { return cartan_; }
    const std::vector<int>& parabolic() const { return parabolic_; }
    const std::vector<CosetRep>& cosets() const { return cosets_; }
    std::optional<int> bound() const { return bound_; }
    // True when enumeration exhausted the quotient below the bound.
    bool complete() const { return complete_; }

    // Downward edge data of coset i: exactly length(i) inversion roots with
    // strictly shorter targets.
    std::vector<InversionDatum> inversions(int coset) const;

    // The basepoint orbit member for a word applied to the basepoint.
    IntVec apply_word(const std::vector<int>& word) const;
    int coset_by_position(const IntVec& pos) const;  // -1 when absent

private:
    IntVec reflect_ext(int i, IntVec mu) const;  // on extended coordinates
    Int pair_ext(int i, const IntVec& mu) const;

    CartanMatrix cartan_;
    std::vector<int> parabolic_;
    std::optional<int> bound_;
    int ext_ = 0;          // number of added degree coordinates
    IntMat pairing_;       // n x (n + ext): <basis_j, alpha_i^vee>
    IntVec basepoint_;     // dominant, stabilizer exactly W_P
    bool complete_ = false;
    std::vector<CosetRep> cosets_;
    std::map<IntVec, int> by_position_;
};

// All positive real roots of height <= bound (orbit closure of the simple
// roots under simple reflections).
std::vector<Weight> real_roots(const CartanMatrix& cartan, int height_bound);

}  // namespace gkm
