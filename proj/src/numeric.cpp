#include "gkm/numeric.hpp"

#include <algorithm>

namespace gkm {

Rat rat_pow(const Rat& base, const Int& e) {
    if (e == 0) return Rat(1);
    if (base == 0) {
        if (e < 0) throw std::domain_error("rat_pow: zero base, negative exponent");
        return Rat(0);
    }
    if (!e.fits_slong_p()) throw std::domain_error("rat_pow: exponent out of range");
    long k = e.get_si();
    Rat b = base;
    if (k < 0) {
        b = Rat(base.get_den(), base.get_num());
        b.canonicalize();
        k = -k;
    }
    Rat r(1);
    while (k > 0) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

std::vector<std::pair<Int, int>> factorize(Int n) {
    std::vector<std::pair<Int, int>> out;
    n = int_abs(n);
    if (n <= 1) return out;
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int m = 0;
            while (n % p == 0) {
                n /= p;
                ++m;
            }
            out.emplace_back(p, m);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<Int> divisors(const Int& n) {
    std::vector<Int> out{Int(1)};
    for (const auto& [p, m] : factorize(n)) {
        const size_t sz = out.size();
        Int pk = 1;
        for (int k = 1; k <= m; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rat: empty string");
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

IntMat identity_matrix(int n) {
    IntMat m(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    const size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IntMat c(n, IntVec(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

IntVec mat_vec(const IntMat& a, const IntVec& v) {
    IntVec r(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
    return r;
}

Int mat_det(IntMat a) {
    // Fraction-free (Bareiss) elimination.
    const size_t n = a.size();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t piv = k;
        while (piv < n && a[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

}  // namespace gkm
