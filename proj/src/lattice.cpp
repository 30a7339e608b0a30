#include "gkm/lattice.hpp"

#include <map>

namespace gkm {

bool Weight::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

Weight Weight::operator-() const {
    IntVec c = coords_;
    for (auto& x : c) x = -x;
    return Weight(std::move(c));
}

Weight Weight::operator+(const Weight& o) const {
    IntVec c = coords_;
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
    return Weight(std::move(c));
}

Weight Weight::operator-(const Weight& o) const {
    IntVec c = coords_;
    for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
    return Weight(std::move(c));
}

Weight Weight::operator*(const Int& k) const {
    IntVec c = coords_;
    for (auto& x : c) x *= k;
    return Weight(std::move(c));
}

std::string Weight::str() const {
    std::string s = "(";
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ",";
        s += coords_[i].get_str();
    }
    return s + ")";
}

std::pair<Weight, Int> primitive_part(const Weight& w) {
    if (w.is_zero()) throw std::domain_error("zero weight has no primitive part");
    Int g = 0;
    for (int i = 0; i < w.rank(); ++i) g = int_gcd(g, w[i]);
    IntVec p(w.rank());
    for (int i = 0; i < w.rank(); ++i) p[i] = w[i] / g;
    // Sign normalization: first nonzero coordinate positive.
    for (const auto& c : p) {
        if (c == 0) continue;
        if (c < 0) {
            for (auto& x : p) x = -x;
            g = -g;
        }
        break;
    }
    return {Weight(std::move(p)), g};
}

bool collinear(const Weight& a, const Weight& b) {
    return primitive_part(a).first == primitive_part(b).first;
}

std::string CoprimalityViolation::str() const {
    switch (reason) {
        case CoprimalityReason::Collinear:
            return "collinear pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
        case CoprimalityReason::SharedPrime:
            return "shared prime " + prime.get_str() + " on pair (" + std::to_string(i) + "," +
                   std::to_string(j) + ")";
        case CoprimalityReason::ZeroWeight:
            return "zero weight at index " + std::to_string(i);
    }
    return "";
}

namespace {

void collect_collinear(const std::vector<Weight>& ws, CoprimalityReport& rep) {
    for (size_t i = 0; i < ws.size(); ++i) {
        if (ws[i].is_zero()) {
            rep.violations.push_back({static_cast<int>(i), -1, CoprimalityReason::ZeroWeight, 0});
            continue;
        }
        for (size_t j = i + 1; j < ws.size(); ++j) {
            if (ws[j].is_zero()) continue;
            if (collinear(ws[i], ws[j]))
                rep.violations.push_back(
                    {static_cast<int>(i), static_cast<int>(j), CoprimalityReason::Collinear, 0});
        }
    }
}

}  // namespace

CoprimalityReport check_coprime_H(const std::vector<Weight>& ws) {
    CoprimalityReport rep;
    collect_collinear(ws, rep);
    // prime -> first index whose content it divides
    std::map<Int, int> seen;
    for (size_t i = 0; i < ws.size(); ++i) {
        if (ws[i].is_zero()) continue;
        Int content = int_abs(primitive_part(ws[i]).second);
        for (const auto& [p, mult] : factorize(content)) {
            auto it = seen.find(p);
            if (it == seen.end())
                seen.emplace(p, static_cast<int>(i));
            else
                rep.violations.push_back(
                    {it->second, static_cast<int>(i), CoprimalityReason::SharedPrime, p});
        }
    }
    rep.ok = rep.violations.empty();
    return rep;
}

CoprimalityReport check_coprime_K(const std::vector<Weight>& ws) {
    CoprimalityReport rep;
    collect_collinear(ws, rep);
    rep.ok = rep.violations.empty();
    return rep;
}

}  // namespace gkm
