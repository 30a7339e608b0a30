#include "gkm/coxeter.hpp"

#include "gkm/linalg.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace gkm {

CartanMatrix::CartanMatrix(IntMat entries) : n_(static_cast<int>(entries.size())), a_(std::move(entries)) {
    if (n_ == 0) throw std::invalid_argument("CartanMatrix: empty");
    for (int i = 0; i < n_; ++i) {
        if (static_cast<int>(a_[i].size()) != n_)
            throw std::invalid_argument("CartanMatrix: not square");
        if (a_[i][i] != 2) throw std::invalid_argument("CartanMatrix: diagonal entry != 2");
        for (int j = 0; j < n_; ++j) {
            if (i == j) continue;
            if (a_[i][j] > 0)
                throw std::invalid_argument("CartanMatrix: positive off-diagonal entry");
            if ((a_[i][j] == 0) != (a_[j][i] == 0))
                throw std::invalid_argument("CartanMatrix: zero pattern not symmetric");
        }
    }
}

CartanMatrix CartanMatrix::parse(const std::string& text) {
    IntMat rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        IntVec r;
        std::stringstream rs(row);
        std::string cell;
        while (std::getline(rs, cell, ',')) {
            // trim blanks
            size_t b = cell.find_first_not_of(" \t");
            size_t e = cell.find_last_not_of(" \t");
            if (b == std::string::npos) throw std::invalid_argument("CartanMatrix: empty entry");
            r.emplace_back(cell.substr(b, e - b + 1));
        }
        rows.push_back(std::move(r));
    }
    return CartanMatrix(std::move(rows));
}

bool CartanMatrix::is_singular() const { return mat_det(a_) == 0; }

std::optional<IntVec> CartanMatrix::symmetrizer() const {
    // Solve d_i a_ij = d_j a_ji over positive rationals, then clear.
    RatMat sys;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
            RatVec row(n_, Rat(0));
            row[i] = Rat(a_[i][j]);
            row[j] = -Rat(a_[j][i]);
            sys.push_back(std::move(row));
        }
    std::vector<RatVec> basis = rational_nullspace(std::move(sys));
    // A connected GCM has a 1-dimensional solution space when symmetrizable;
    // take the first basis vector and demand positivity.
    for (const auto& v : basis) {
        bool pos = true;
        for (const auto& c : v) pos = pos && c > 0;
        if (!pos) continue;
        Int den = 1;
        for (const auto& c : v) den = int_lcm(den, c.get_den());
        IntVec d(n_);
        Int g = 0;
        for (int i = 0; i < n_; ++i) {
            d[i] = Rat(v[i] * den).get_num();
            g = int_gcd(g, d[i]);
        }
        for (auto& x : d) x /= g;
        // verify
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (d[i] * a_[i][j] != d[j] * a_[j][i]) return std::nullopt;
        return d;
    }
    return std::nullopt;
}

Int CartanMatrix::pair_root(int i, const IntVec& mu) const {
    Int s = 0;
    for (int j = 0; j < n_; ++j) s += a_[i][j] * mu[j];
    return s;
}

IntVec CartanMatrix::reflect(int i, IntVec mu) const {
    Int p = pair_root(i, mu);
    mu[i] -= p;
    return mu;
}

IntMat CartanMatrix::reflection_matrix(int i) const {
    IntMat m = identity_matrix(n_);
    for (int j = 0; j < n_; ++j) m[i][j] -= a_[i][j];
    return m;
}

std::string CartanMatrix::str() const {
    std::string s;
    for (int i = 0; i < n_; ++i) {
        if (i) s += ";";
        for (int j = 0; j < n_; ++j) {
            if (j) s += ",";
            s += a_[i][j].get_str();
        }
    }
    return s;
}

namespace {

constexpr size_t kEnumerationCap = 200000;

}  // namespace

ParabolicQuotient::ParabolicQuotient(CartanMatrix cartan, std::vector<int> parabolic,
                                     std::optional<int> max_length)
    : cartan_(std::move(cartan)), parabolic_(std::move(parabolic)), bound_(max_length) {
    const int n = cartan_.rank();
    std::sort(parabolic_.begin(), parabolic_.end());
    parabolic_.erase(std::unique(parabolic_.begin(), parabolic_.end()), parabolic_.end());
    for (int p : parabolic_)
        if (p < 1 || p > n) throw std::invalid_argument("parabolic node index out of range");
    if (static_cast<int>(parabolic_.size()) == n)
        throw std::invalid_argument("P = G, trivial space");
    if (max_length && *max_length < 0) throw std::invalid_argument("negative length bound");

    // Extend the pairing matrix [A | V] to full row rank n (degree
    // coordinates for affine/singular types); V columns are unit vectors
    // chosen greedily.
    pairing_ = cartan_.entries();
    {
        RatMat probe(n, RatVec(n, Rat(0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) probe[i][j] = Rat(cartan_.at(i, j));
        int rank = rational_rank(probe);
        for (int c = 0; rank < n && c < n; ++c) {
            RatMat trial = probe;
            for (int i = 0; i < n; ++i) trial[i].push_back(Rat(i == c ? 1 : 0));
            int r2 = rational_rank(trial);
            if (r2 > rank) {
                rank = r2;
                probe = std::move(trial);
                for (int i = 0; i < n; ++i) pairing_[i].push_back(Int(i == c ? 1 : 0));
                ++ext_;
            }
        }
        if (rank < n) throw std::invalid_argument("degenerate Cartan pairing");
    }

    // Dominant integral basepoint: <lambda, alpha_i^vee> = 0 exactly on the
    // parabolic nodes, 1 elsewhere, then scaled integral.
    {
        RatMat sys(n, RatVec(n + ext_, Rat(0)));
        RatVec rhs(n, Rat(0));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n + ext_; ++j) sys[i][j] = Rat(pairing_[i][j]);
            bool in_p = std::binary_search(parabolic_.begin(), parabolic_.end(), i + 1);
            rhs[i] = in_p ? Rat(0) : Rat(1);
        }
        LinearSolution sol = solve_rational(std::move(sys), std::move(rhs));
        if (sol.kind == LinearSolution::Kind::Inconsistent)
            throw std::runtime_error("basepoint solve failed");
        Int den = 1;
        for (const auto& c : sol.solution) den = int_lcm(den, c.get_den());
        basepoint_.resize(n + ext_);
        for (int j = 0; j < n + ext_; ++j) basepoint_[j] = Rat(sol.solution[j] * den).get_num();
    }

    // Level BFS on the basepoint orbit.  Left multiplication by s_i moves
    // between cosets; candidates at each level keep the lex-least word, so
    // the stored word is the ShortLex-least reduced word of the coset.
    {
        CosetRep id;
        id.word = {};
        id.length = 0;
        id.action = identity_matrix(n);
        id.position = basepoint_;
        cosets_.push_back(std::move(id));
        by_position_.emplace(basepoint_, 0);

        std::vector<int> level{0};
        int len = 0;
        while (true) {
            // candidate position -> lex-least candidate word (all words at
            // one level have equal length, so lex least = ShortLex least)
            std::map<IntVec, std::pair<std::vector<int>, int>> found;
            for (int idx : level) {
                for (int i = 1; i <= n; ++i) {
                    IntVec pos = reflect_ext(i, cosets_[idx].position);
                    if (by_position_.count(pos)) continue;
                    std::vector<int> word{i};
                    word.insert(word.end(), cosets_[idx].word.begin(), cosets_[idx].word.end());
                    auto it = found.find(pos);
                    if (it == found.end())
                        found.emplace(std::move(pos), std::make_pair(std::move(word), idx));
                    else if (word < it->second.first)
                        it->second = {std::move(word), idx};
                }
            }
            if (found.empty()) {
                complete_ = true;
                break;
            }
            if (max_length && len + 1 > *max_length) {
                complete_ = false;
                break;
            }
            // Deterministic ids: commit the level in ShortLex order.
            std::vector<std::pair<std::vector<int>, IntVec>> batch;
            batch.reserve(found.size());
            for (auto& [pos, cand] : found) batch.emplace_back(std::move(cand.first), pos);
            std::sort(batch.begin(), batch.end());
            std::vector<int> next;
            for (auto& [word, pos] : batch) {
                if (cosets_.size() >= kEnumerationCap)
                    throw std::runtime_error(
                        "coset enumeration cap exceeded; the quotient appears infinite, "
                        "supply a length bound");
                CosetRep rep;
                rep.word = word;
                rep.length = len + 1;
                rep.position = pos;
                rep.action = identity_matrix(n);
                for (auto it = word.rbegin(); it != word.rend(); ++it)
                    rep.action = mat_mul(cartan_.reflection_matrix(*it - 1), rep.action);
                by_position_.emplace(pos, static_cast<int>(cosets_.size()));
                next.push_back(static_cast<int>(cosets_.size()));
                cosets_.push_back(std::move(rep));
            }
            level = std::move(next);
            ++len;
        }
    }
}

IntVec ParabolicQuotient::reflect_ext(int i, IntVec mu) const {
    mu[i - 1] -= pair_ext(i, mu);
    return mu;
}

Int ParabolicQuotient::pair_ext(int i, const IntVec& mu) const {
    Int s = 0;
    for (size_t j = 0; j < mu.size(); ++j) s += pairing_[i - 1][j] * mu[j];
    return s;
}

IntVec ParabolicQuotient::apply_word(const std::vector<int>& word) const {
    IntVec pos = basepoint_;
    for (auto it = word.rbegin(); it != word.rend(); ++it) pos = reflect_ext(*it, pos);
    return pos;
}

int ParabolicQuotient::coset_by_position(const IntVec& pos) const {
    auto it = by_position_.find(pos);
    return it == by_position_.end() ? -1 : it->second;
}

std::vector<InversionDatum> ParabolicQuotient::inversions(int coset) const {
    const CosetRep& rep = cosets_.at(coset);
    const int n = cartan_.rank();
    std::vector<InversionDatum> out;
    out.reserve(rep.length);
    // beta_j = s_{i1}...s_{i(j-1)}(alpha_{ij}); the target coset is the word
    // with letter j deleted (strong exchange).
    IntMat prefix = identity_matrix(n);
    for (int j = 0; j < rep.length; ++j) {
        const int letter = rep.word[j];
        IntVec alpha(n, 0);
        alpha[letter - 1] = 1;
        IntVec root = mat_vec(prefix, alpha);

        std::vector<int> deleted = rep.word;
        deleted.erase(deleted.begin() + j);
        int target = coset_by_position(apply_word(deleted));
        if (target < 0)
            throw std::runtime_error("inversion target escapes the truncation");
        if (cosets_[target].length >= rep.length)
            throw std::runtime_error("inversion target not shorter");
        out.push_back({Weight(std::move(root)), target});

        prefix = mat_mul(prefix, cartan_.reflection_matrix(letter - 1));
    }
    return out;
}

std::vector<Weight> real_roots(const CartanMatrix& cartan, int height_bound) {
    if (height_bound < 1) throw std::invalid_argument("real_roots: height bound must be >= 1");
    const int n = cartan.rank();
    std::set<IntVec> seen;
    std::deque<IntVec> queue;
    for (int i = 0; i < n; ++i) {
        IntVec alpha(n, 0);
        alpha[i] = 1;
        seen.insert(alpha);
        queue.push_back(std::move(alpha));
    }
    auto height_ok = [&](const IntVec& v) {
        Int h = 0;
        bool nonneg = true;
        for (const auto& c : v) {
            nonneg = nonneg && c >= 0;
            h += c;
        }
        return nonneg && h >= 1 && h <= height_bound;
    };
    while (!queue.empty()) {
        IntVec v = std::move(queue.front());
        queue.pop_front();
        for (int i = 0; i < n; ++i) {
            IntVec w = cartan.reflect(i, v);
            if (!height_ok(w) || seen.count(w)) continue;
            seen.insert(w);
            queue.push_back(std::move(w));
        }
    }
    std::vector<Weight> out;
    out.reserve(seen.size());
    for (const auto& v : seen) out.emplace_back(v);
    std::sort(out.begin(), out.end(), [](const Weight& a, const Weight& b) {
        Int ha = 0, hb = 0;
        for (int i = 0; i < a.rank(); ++i) ha += a[i];
        for (int i = 0; i < b.rank(); ++i) hb += b[i];
        if (ha != hb) return ha < hb;
        return a < b;
    });
    return out;
}

}  // namespace gkm
