#include "gkm/classes.hpp"

#include <algorithm>
#include <set>

namespace gkm {

using nlohmann::json;

namespace {

RingKind kind_of(Theory t) { return t == Theory::H ? RingKind::Poly : RingKind::Laurent; }

void check_same(const GkmClass& a, const GkmClass& b) {
    if (a.theory != b.theory) throw std::domain_error("class theory mismatch");
    if (a.graph != b.graph) throw std::domain_error("class graph mismatch");
}

}  // namespace

bool GkmClass::is_integral() const {
    for (const auto& v : values)
        if (!v.is_integral()) return false;
    return true;
}

GkmClass zero_class(const GkmGraph& g, Theory theory) {
    GkmClass c;
    c.theory = theory;
    c.graph = &g;
    c.values.assign(g.vertices().size(), RingElt(kind_of(theory), g.rank()));
    return c;
}

GkmClass constant_class(const GkmGraph& g, Theory theory, const Rat& value) {
    GkmClass c = zero_class(g, theory);
    for (auto& v : c.values) v = RingElt::constant(kind_of(theory), g.rank(), value);
    c.membership = MembershipStatus::Passed;  // differences vanish
    return c;
}

GkmClass constant_class(const GkmGraph& g, Theory theory, const Weight& w) {
    GkmClass c = zero_class(g, theory);
    RingElt val = theory == Theory::H ? RingElt::linear_from_weight(w) : RingElt::character(w);
    for (auto& v : c.values) v = val;
    return c;
}

MembershipReport is_member(const GkmGraph& g, const GkmClass& c) {
    if (c.graph != &g) throw std::domain_error("is_member: class belongs to another graph");
    MembershipReport rep;
    for (size_t ei = 0; ei < g.edges().size(); ++ei) {
        const GkmEdge& e = g.edges()[ei];
        RingElt diff = c.values[e.source] - c.values[e.target];
        DivisionResult d = c.theory == Theory::H ? divides_linear(e.weight, diff)
                                                 : divides_euler_K(e.weight, diff);
        if (!d.divides) rep.violations.push_back({static_cast<int>(ei), std::move(diff)});
    }
    rep.ok = rep.violations.empty();
    c.membership = rep.ok ? MembershipStatus::Passed : MembershipStatus::Failed;
    return rep;
}

RingElt euler_class(const GkmGraph& g, int v, Theory theory) {
    RingElt prod = RingElt::constant(kind_of(theory), g.rank(), Rat(1));
    for (int ei : g.down_edges(v)) {
        const Weight& w = g.edges()[ei].weight;
        prod = prod * (theory == Theory::H ? RingElt::linear_from_weight(w)
                                           : RingElt::euler_from_weight_K(w));
    }
    return prod;
}

namespace {

// The subring/submodule operations preserve membership; propagate the cache.
MembershipStatus combine(MembershipStatus a, MembershipStatus b) {
    return (a == MembershipStatus::Passed && b == MembershipStatus::Passed)
               ? MembershipStatus::Passed
               : MembershipStatus::Unchecked;
}

}  // namespace

GkmClass multiply(const GkmClass& a, const GkmClass& b) {
    check_same(a, b);
    GkmClass r = a;
    for (size_t i = 0; i < r.values.size(); ++i) r.values[i] = a.values[i] * b.values[i];
    r.membership = combine(a.membership, b.membership);
#ifndef NDEBUG
    if (r.membership == MembershipStatus::Passed && !is_member(*a.graph, r).ok)
        throw std::logic_error("multiply: subring closure violated");
#endif
    return r;
}

GkmClass add(const GkmClass& a, const GkmClass& b) {
    check_same(a, b);
    GkmClass r = a;
    for (size_t i = 0; i < r.values.size(); ++i) r.values[i] = a.values[i] + b.values[i];
    r.membership = combine(a.membership, b.membership);
    return r;
}

GkmClass scale(const GkmClass& a, const RingElt& k) {
    GkmClass r = a;
    for (auto& v : r.values) v = v * k;
    r.membership = combine(a.membership, MembershipStatus::Passed);
    return r;
}

Rat specialize_ring_elt(const RingElt& f, Theory theory) {
    if (theory == Theory::H) return f.coefficient(Exp(f.rank(), 0));
    Rat s = 0;
    for (const auto& [e, c] : f.terms()) s += c;
    return s;
}

std::vector<Rat> specialize_class(const GkmClass& c) {
    std::vector<Rat> out;
    out.reserve(c.values.size());
    for (const auto& v : c.values) out.push_back(specialize_ring_elt(v, c.theory));
    return out;
}

FiltrationCheck filtration_leading_check(const GkmGraph& g, const GkmClass& c) {
    FiltrationCheck out;
    std::vector<bool> support(c.values.size());
    for (size_t i = 0; i < c.values.size(); ++i) support[i] = !c.values[i].is_zero();

    for (size_t v = 0; v < c.values.size(); ++v) {
        if (!support[v]) continue;
        // minimal in the support: no support vertex strictly below v
        bool minimal = true;
        std::set<int> seen;
        std::vector<int> stack;
        for (int ei : g.down_edges(static_cast<int>(v))) stack.push_back(g.edges()[ei].target);
        while (!stack.empty() && minimal) {
            int u = stack.back();
            stack.pop_back();
            if (!seen.insert(u).second) continue;
            if (support[u]) minimal = false;
            for (int ei : g.down_edges(u)) stack.push_back(g.edges()[ei].target);
        }
        if (!minimal) continue;
        out.checked.push_back(static_cast<int>(v));
        RingElt r = c.values[v];
        bool ok = true;
        for (int ei : g.down_edges(static_cast<int>(v))) {
            DivisionResult d = divides_euler(g.edges()[ei].weight, r);
            if (!d.divides) {
                ok = false;
                break;
            }
            r = d.quotient;
        }
        if (!ok) out.failures.push_back(static_cast<int>(v));
    }
    out.ok = out.failures.empty();
    return out;
}

json ring_elt_to_json(const RingElt& f) {
    json j = json::array();
    for (const auto& [e, c] : f.terms()) {
        json exp = json::array();
        for (const auto& x : e) {
            if (x.fits_slong_p())
                exp.push_back(x.get_si());
            else
                exp.push_back(x.get_str());
        }
        j.push_back(json::array({exp, rat_str(c)}));
    }
    return j;
}

RingElt ring_elt_from_json(RingKind kind, int rank, const json& j) {
    RingElt f(kind, rank);
    if (!j.is_array()) throw std::invalid_argument("polynomial JSON: array expected");
    for (const auto& term : j) {
        if (!term.is_array() || term.size() != 2)
            throw std::invalid_argument("polynomial JSON: [exponents, coeff] pairs expected");
        Exp e;
        for (const auto& x : term[0])
            e.emplace_back(x.is_string() ? Int(x.get<std::string>()) : Int(x.get<long>()));
        if (static_cast<int>(e.size()) != rank)
            throw std::invalid_argument("polynomial JSON: exponent rank mismatch");
        Rat c = term[1].is_string() ? parse_rat(term[1].get<std::string>()) : Rat(term[1].get<long>());
        Rat cur = f.coefficient(e);
        f.set_coefficient(std::move(e), cur + c);
    }
    return f;
}

json class_to_json(const GkmClass& c) {
    json j;
    j["theory"] = theory_name(c.theory);
    json vals = json::object();
    for (size_t i = 0; i < c.values.size(); ++i)
        vals[c.graph->vertices()[i].id] = ring_elt_to_json(c.values[i]);
    j["values"] = std::move(vals);
    return j;
}

GkmClass class_from_json(const GkmGraph& g, const json& j) {
    if (!j.contains("theory") || !j.contains("values"))
        throw std::invalid_argument("class JSON: 'theory' and 'values' required");
    std::string t = j["theory"].get<std::string>();
    if (t != "H" && t != "K") throw std::invalid_argument("class JSON: theory must be H or K");
    GkmClass c = zero_class(g, t == "H" ? Theory::H : Theory::K);
    for (const auto& [id, val] : j["values"].items()) {
        int v = g.vertex_index(id);
        if (v < 0) throw std::invalid_argument("class JSON: unknown vertex '" + id + "'");
        c.values[v] = ring_elt_from_json(t == "H" ? RingKind::Poly : RingKind::Laurent, g.rank(), val);
    }
    return c;
}

}  // namespace gkm
