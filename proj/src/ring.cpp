#include "gkm/ring.hpp"

#include <algorithm>
#include <sstream>

namespace gkm {

bool GradedLexLess::operator()(const Exp& a, const Exp& b) const {
    Int da = 0, db = 0;
    for (const auto& x : a) da += x;
    for (const auto& x : b) db += x;
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

RingElt RingElt::constant(RingKind kind, int rank, const Rat& c) {
    RingElt r(kind, rank);
    if (c != 0) r.terms_.emplace(Exp(rank, 0), c);
    return r;
}

RingElt RingElt::monomial(RingKind kind, Exp e, const Rat& c) {
    RingElt r(kind, static_cast<int>(e.size()));
    if (kind == RingKind::Poly)
        for (const auto& x : e)
            if (x < 0) throw std::domain_error("negative exponent in polynomial monomial");
    if (c != 0) r.terms_.emplace(std::move(e), c);
    return r;
}

RingElt RingElt::linear_from_weight(const Weight& w) {
    if (w.is_zero()) throw std::domain_error("zero weight has no Euler class");
    RingElt r(RingKind::Poly, w.rank());
    for (int i = 0; i < w.rank(); ++i) {
        if (w[i] == 0) continue;
        Exp e(w.rank(), 0);
        e[i] = 1;
        r.terms_.emplace(std::move(e), Rat(w[i]));
    }
    return r;
}

RingElt RingElt::character(const Weight& w) {
    return monomial(RingKind::Laurent, w.coords(), Rat(1));
}

RingElt RingElt::euler_from_weight_K(const Weight& w) {
    if (w.is_zero()) throw std::domain_error("zero weight has no Euler class");
    RingElt r = constant(RingKind::Laurent, w.rank(), Rat(1));
    r.add_term(w.coords(), Rat(-1));
    return r;
}

Rat RingElt::coefficient(const Exp& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

void RingElt::set_coefficient(Exp e, const Rat& c) {
    if (c == 0)
        terms_.erase(e);
    else
        terms_[std::move(e)] = c;
}

void RingElt::add_term(const Exp& e, const Rat& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

void RingElt::check_compatible(const RingElt& o, const char* op) const {
    if (kind_ != o.kind_) throw std::domain_error(std::string(op) + ": ring kind mismatch");
    if (rank_ != o.rank_) throw std::domain_error(std::string(op) + ": rank mismatch");
}

RingElt RingElt::operator-() const {
    RingElt r(kind_, rank_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

RingElt& RingElt::operator+=(const RingElt& o) {
    check_compatible(o, "add");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

RingElt& RingElt::operator-=(const RingElt& o) {
    check_compatible(o, "sub");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

RingElt RingElt::operator+(const RingElt& o) const {
    RingElt r = *this;
    r += o;
    return r;
}

RingElt RingElt::operator-(const RingElt& o) const {
    RingElt r = *this;
    r -= o;
    return r;
}

RingElt RingElt::operator*(const RingElt& o) const {
    check_compatible(o, "mul");
    RingElt r(kind_, rank_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Exp e = e1;
            for (int i = 0; i < rank_; ++i) e[i] += e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

RingElt RingElt::operator*(const Rat& c) const {
    RingElt r(kind_, rank_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

bool RingElt::operator==(const RingElt& o) const {
    return kind_ == o.kind_ && rank_ == o.rank_ && terms_ == o.terms_;
}

RingElt RingElt::pow(unsigned n) const {
    RingElt r = constant(kind_, rank_, Rat(1));
    RingElt base = *this;
    while (n > 0) {
        if (n & 1u) r = r * base;
        base = base * base;
        n >>= 1u;
    }
    return r;
}

Int RingElt::max_total_degree() const {
    Int best = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Int d = 0;
        for (const auto& x : e) d += x;
        if (first || d > best) best = d;
        first = false;
    }
    return best;
}

std::optional<Int> RingElt::homogeneous_degree() const {
    if (terms_.empty()) return Int(0);
    std::optional<Int> deg;
    for (const auto& [e, c] : terms_) {
        Int d = 0;
        for (const auto& x : e) d += x;
        if (!deg)
            deg = d;
        else if (*deg != d)
            return std::nullopt;
    }
    return deg;
}

bool RingElt::is_integral() const {
    for (const auto& [e, c] : terms_)
        if (!is_integer(c)) return false;
    return true;
}

Rat RingElt::content() const {
    if (terms_.empty()) return Rat(0);
    Int num = 0, den = 1;
    for (const auto& [e, c] : terms_) {
        num = int_gcd(num, c.get_num());
        den = int_lcm(den, c.get_den());
    }
    Rat g = make_rat(num, den);
    if (terms_.rbegin()->second < 0) g = -g;
    return g;
}

RingElt RingElt::substitute_var(int var, const RingElt& value) const {
    check_compatible(value, "substitute_var");
    RingElt r(kind_, rank_);
    for (const auto& [e, c] : terms_) {
        if (e[var] < 0) throw std::domain_error("substitute_var: negative exponent");
        if (!e[var].fits_ulong_p()) throw std::domain_error("substitute_var: exponent too large");
        Exp base = e;
        base[var] = 0;
        RingElt t = monomial(kind_, base, c) * value.pow(e[var].get_ui());
        r += t;
    }
    return r;
}

RingElt RingElt::substitute(const std::map<int, Rat>& assignment) const {
    for (const auto& [v, val] : assignment) {
        if (v < 0 || v >= rank_) throw std::invalid_argument("substitute: variable out of range");
        if (kind_ == RingKind::Laurent && val == 0)
            throw std::domain_error("unit evaluation undefined");
    }
    const int new_rank = rank_ - static_cast<int>(assignment.size());
    RingElt r(kind_, new_rank);
    for (const auto& [e, c] : terms_) {
        Rat coeff = c;
        Exp rest;
        rest.reserve(new_rank);
        for (int i = 0; i < rank_; ++i) {
            auto it = assignment.find(i);
            if (it == assignment.end()) {
                rest.push_back(e[i]);
            } else if (e[i] != 0) {
                if (it->second == 0) {
                    coeff = 0;  // Poly kind only; e[i] > 0 here
                    break;
                }
                coeff *= rat_pow(it->second, e[i]);
            }
        }
        if (coeff != 0) r.add_term(rest, coeff);
    }
    return r;
}

std::vector<std::string> default_var_names(int rank) {
    std::vector<std::string> v;
    v.reserve(rank);
    for (int i = 1; i <= rank; ++i) v.push_back("x" + std::to_string(i));
    return v;
}

namespace {

std::string coeff_prefix(const Rat& c, bool leading, bool bare) {
    // bare: the monomial part is empty, so the coefficient must be printed.
    Rat a = c < 0 ? Rat(-c) : c;
    std::string sign = leading ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    if (!bare && a == 1) return sign;
    return sign + rat_str(a) + (bare ? "" : "*");
}

}  // namespace

std::string RingElt::str(const std::vector<std::string>& vars) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool leading = true;
    // Descending graded-lex, leading term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (int i = 0; i < rank_; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[i];
            if (e[i] != 1) mono += "^" + e[i].get_str();
        }
        out += coeff_prefix(c, leading, mono.empty());
        out += mono;
        leading = false;
    }
    return out;
}

std::string RingElt::str() const { return str(default_var_names(rank_)); }

std::string RingElt::str_exp() const {
    if (kind_ != RingKind::Laurent) throw std::domain_error("str_exp: Laurent element expected");
    if (terms_.empty()) return "0";
    std::string out;
    bool leading = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        bool constant = true;
        for (const auto& x : e) constant = constant && x == 0;
        std::string mono;
        if (!constant) {
            mono = "e^(";
            for (int i = 0; i < rank_; ++i) {
                if (i) mono += ",";
                mono += e[i].get_str();
            }
            mono += ")";
        }
        out += coeff_prefix(c, leading, mono.empty());
        out += mono;
        leading = false;
    }
    return out;
}

DivisionResult divides_linear(const Weight& w, const RingElt& f) {
    if (w.is_zero()) throw std::domain_error("divides_linear: zero weight");
    if (f.kind() != RingKind::Poly) throw std::domain_error("divides_linear: polynomial expected");
    if (f.rank() != w.rank()) throw std::domain_error("divides_linear: rank mismatch");
    const int n = f.rank();
    int j = 0;
    while (j < n && w[j] == 0) ++j;
    const Rat wj(w[j]);

    RingElt q(RingKind::Poly, n);
    RingElt r = f;
    // Eliminate terms by decreasing x_j-degree; each step cancels one term
    // of maximal x_j-exponent and only introduces smaller ones.
    while (true) {
        const Exp* pick = nullptr;
        const Rat* coeff = nullptr;
        for (auto it = r.terms().rbegin(); it != r.terms().rend(); ++it) {
            if (it->first[j] > 0 && (!pick || it->first[j] > (*pick)[j])) {
                pick = &it->first;
                coeff = &it->second;
            }
        }
        if (!pick) break;
        Exp qe = *pick;
        qe[j] -= 1;
        Rat qc = *coeff / wj;
        RingElt qt = RingElt::monomial(RingKind::Poly, qe, qc);
        q += qt;
        r -= qt * RingElt::linear_from_weight(w);
    }
    DivisionResult res;
    res.divides = r.is_zero();
    if (res.divides) res.quotient = q;
    return res;
}

DivisionResult divides_euler_K(const Weight& w, const RingElt& f) {
    if (w.is_zero()) throw std::domain_error("divides_euler_K: zero weight");
    if (f.kind() != RingKind::Laurent)
        throw std::domain_error("divides_euler_K: Laurent element expected");
    if (f.rank() != w.rank()) throw std::domain_error("divides_euler_K: rank mismatch");
    const int n = f.rank();
    if (f.is_zero()) return {true, RingElt(RingKind::Laurent, n)};

    int j = 0;
    while (j < n && w[j] == 0) ++j;
    if (w[j] < 0) {
        // 1 - e^w = -e^w (1 - e^{-w}); adjust the quotient by the unit.
        DivisionResult sub = divides_euler_K(-w, f);
        if (!sub.divides) return sub;
        RingElt unit = RingElt::character(-w) * Rat(-1);
        return {true, sub.quotient * unit};
    }
    const Int d = w[j];

    // Shift f by a power of x_j so all x_j-exponents are >= 0; a unit shift
    // does not change divisibility.
    Int minexp = 0;
    for (const auto& [e, c] : f.terms()) minexp = std::min(minexp, e[j]);
    Exp shift(n, 0);
    shift[j] = -minexp;
    RingElt r = f * RingElt::monomial(RingKind::Laurent, shift, Rat(1));

    // Divide by 1 - M x_j^d; leading x_j-coefficient is the unit -M.
    const RingElt divisor = RingElt::euler_from_weight_K(w);
    Exp minus_w = w.coords();
    for (auto& x : minus_w) x = -x;
    RingElt q(RingKind::Laurent, n);
    while (true) {
        const Exp* pick = nullptr;
        const Rat* coeff = nullptr;
        for (auto it = r.terms().rbegin(); it != r.terms().rend(); ++it) {
            if (it->first[j] >= d && (!pick || it->first[j] > (*pick)[j])) {
                pick = &it->first;
                coeff = &it->second;
            }
        }
        if (!pick) break;
        // term / (-e^w) = -term * e^{-w}
        Exp qe = *pick;
        for (int i = 0; i < n; ++i) qe[i] += minus_w[i];
        RingElt qt = RingElt::monomial(RingKind::Laurent, qe, -*coeff);
        q += qt;
        r -= qt * divisor;
    }
    if (!r.is_zero()) return {false, RingElt()};
    // Undo the shift: f = (q * x_j^{-shift}) * divisor.
    Exp unshift(n, 0);
    unshift[j] = minexp;
    return {true, q * RingElt::monomial(RingKind::Laurent, unshift, Rat(1))};
}

DivisionResult divides_euler(const Weight& w, const RingElt& f) {
    return f.kind() == RingKind::Poly ? divides_linear(w, f) : divides_euler_K(w, f);
}

namespace {

// Restriction of a homogeneous bivariate polynomial in variables (i, j) of
// f, all other variables set to 0.
RingElt restrict_to_plane(const RingElt& f, int vi, int vj) {
    RingElt r(RingKind::Poly, 2);
    for (const auto& [e, c] : f.terms()) {
        bool pure = true;
        for (int k = 0; k < f.rank(); ++k)
            if (k != vi && k != vj && e[k] != 0) {
                pure = false;
                break;
            }
        if (pure) r.set_coefficient({e[vi], e[vj]}, r.coefficient({e[vi], e[vj]}) + c);
    }
    return r;
}

// Primitive linear factors (with multiplicity ignored) of a homogeneous
// bivariate polynomial, via the rational root theorem.  nullopt when the
// non-axis part has an irrational factor is NOT detected here; the caller
// verifies every candidate by division.
std::vector<Weight> bivariate_factor_candidates(const RingElt& f) {
    std::vector<Weight> cands;
    if (f.is_zero()) return cands;
    cands.push_back(Weight({Int(1), Int(0)}));
    cands.push_back(Weight({Int(0), Int(1)}));
    // Dehomogenize: u(t) = f(t, 1).
    std::map<Int, Rat> uc;
    for (const auto& [e, c] : f.terms()) uc[e[0]] += c;
    // Clear to integers.
    Int den = 1;
    for (const auto& [k, c] : uc) den = int_lcm(den, c.get_den());
    std::map<Int, Int> u;
    for (const auto& [k, c] : uc)
        if (c != 0) u[k] = Rat(c * den).get_num();
    if (u.empty()) return cands;
    const Int lead = u.rbegin()->second;
    const Int trail = u.begin()->second;
    const Int lowdeg = u.begin()->first;
    (void)lowdeg;
    for (const Int& p : divisors(trail))
        for (const Int& q : divisors(lead)) {
            if (int_gcd(p, q) != 1) continue;
            for (int s = 0; s < 2; ++s) {
                Int pp = s ? -p : p;
                // root t = pp/q  ->  factor q*x1 - pp*x2
                Rat val = 0, t = make_rat(pp, q);
                for (const auto& [k, c] : u) {
                    if (!k.fits_slong_p()) continue;
                    val += Rat(c) * rat_pow(t, k);
                }
                if (val == 0) cands.push_back(primitive_part(Weight({q, -pp})).first);
            }
        }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    return cands;
}

}  // namespace

std::optional<LinearFactorization> factor_into_linear_forms(const RingElt& f) {
    if (f.kind() != RingKind::Poly)
        throw std::domain_error("factor_into_linear_forms: polynomial expected");
    if (!f.homogeneous_degree()) throw std::domain_error("factor_into_linear_forms: inhomogeneous");
    const int n = f.rank();

    LinearFactorization out;
    if (f.is_zero()) return std::nullopt;

    RingElt rest = f;
    if (n == 0) {
        out.content = rest.coefficient(Exp{});
        return out;
    }

    auto divide_out = [&](const Weight& w) {
        while (rest.homogeneous_degree() != Int(0)) {
            DivisionResult d = divides_linear(w, rest);
            if (!d.divides) break;
            out.factors.push_back(w);
            rest = d.quotient;
        }
    };

    // Coordinate-axis factors first; afterwards no coordinate-plane
    // restriction of the remainder vanishes identically, so every linear
    // factor shows up in the restrictions below.
    for (int i = 0; i < n; ++i) {
        IntVec axis(n, 0);
        axis[i] = 1;
        divide_out(Weight(axis));
    }

    std::vector<Weight> cands;
    if (n == 1) {
        // axis handling above already finished rank 1
    } else if (n == 2) {
        cands = bivariate_factor_candidates(rest);
    } else {
        // Combine plane restrictions: a factor with nonzero coordinates at
        // (i, j) restricts to a factor of f|_{(i,j)-plane}; the remaining
        // coordinates are recovered as ratios against an anchor coordinate
        // (desk scale: rank <= 3, degree <= 8).
        std::vector<Weight> partial;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                RingElt gij = restrict_to_plane(rest, i, j);
                if (gij.is_zero()) continue;
                for (const Weight& w2 : bivariate_factor_candidates(gij)) {
                    const int anchor = (w2[0] != 0) ? i : j;
                    const Int wa = (w2[0] != 0) ? w2[0] : w2[1];
                    std::vector<RatVec> exts{RatVec(n, Rat(0))};
                    exts[0][i] = Rat(w2[0]);
                    exts[0][j] = Rat(w2[1]);
                    for (int k = 0; k < n && !exts.empty(); ++k) {
                        if (k == i || k == j) continue;
                        std::vector<Rat> ratios{Rat(0)};
                        RingElt gak = restrict_to_plane(rest, anchor, k);
                        if (!gak.is_zero())
                            for (const Weight& w3 : bivariate_factor_candidates(gak))
                                if (w3[0] != 0) ratios.push_back(make_rat(w3[1], w3[0]));
                        std::vector<RatVec> next;
                        for (const auto& e : exts)
                            for (const Rat& r : ratios) {
                                RatVec e2 = e;
                                e2[k] = r * Rat(wa);
                                next.push_back(std::move(e2));
                            }
                        exts = std::move(next);
                    }
                    for (const auto& e : exts) {
                        Int den = 1;
                        for (const auto& c : e) den = int_lcm(den, c.get_den());
                        IntVec full(n);
                        for (int t = 0; t < n; ++t) full[t] = Rat(e[t] * den).get_num();
                        Weight cand(full);
                        if (!cand.is_zero()) partial.push_back(primitive_part(cand).first);
                    }
                }
            }
        std::sort(partial.begin(), partial.end());
        partial.erase(std::unique(partial.begin(), partial.end()), partial.end());
        cands = std::move(partial);
    }

    for (const Weight& w : cands) divide_out(w);

    if (rest.homogeneous_degree() != Int(0)) return std::nullopt;  // irreducible part left
    out.content = rest.coefficient(Exp(n, 0));
    std::sort(out.factors.begin(), out.factors.end());
    return out;
}

std::string factored_str(const LinearFactorization& f, const std::vector<std::string>& vars) {
    std::string s;
    if (f.content != 1 || f.factors.empty()) s = rat_str(f.content);
    for (const auto& w : f.factors) {
        if (!s.empty()) s += "*";
        s += "(" + RingElt::linear_from_weight(w).str(vars) + ")";
    }
    return s;
}

}  // namespace gkm
