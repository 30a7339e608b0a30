#include <doctest.h>

#include "gkm/ring.hpp"

#include <random>

using namespace gkm;

namespace {

Weight w2(long a, long b) { return Weight({Int(a), Int(b)}); }

RingElt mono(RingKind k, std::vector<long> e, long c) {
    Exp ex;
    for (long x : e) ex.emplace_back(x);
    return RingElt::monomial(k, std::move(ex), Rat(c));
}

RingElt random_elt(std::mt19937& rng, RingKind kind, int rank, int terms, int maxdeg) {
    std::uniform_int_distribution<int> dc(-4, 4);
    std::uniform_int_distribution<int> de(kind == RingKind::Laurent ? -maxdeg : 0, maxdeg);
    RingElt f(kind, rank);
    for (int t = 0; t < terms; ++t) {
        Exp e(rank);
        for (int i = 0; i < rank; ++i) e[i] = de(rng);
        f += RingElt::monomial(kind, e, Rat(dc(rng)));
    }
    return f;
}

}  // namespace

TEST_CASE("ring arithmetic basics") {
    RingElt x1 = mono(RingKind::Poly, {1, 0}, 1);
    RingElt x2 = mono(RingKind::Poly, {0, 1}, 1);
    CHECK(x1 * (x1 + x2) == mono(RingKind::Poly, {2, 0}, 1) + mono(RingKind::Poly, {1, 1}, 1));

    RingElt e = RingElt::character(w2(1, 0));
    RingElt einv = RingElt::character(w2(-1, 0));
    CHECK(e * einv == RingElt::constant(RingKind::Laurent, 2, Rat(1)));

    RingElt f = x1 * x1 + x2 * Rat(3);
    CHECK((f - f).is_zero());
}

TEST_CASE("kind and rank mismatches are rejected") {
    RingElt p(RingKind::Poly, 2), l(RingKind::Laurent, 2), q(RingKind::Poly, 3);
    CHECK_THROWS_AS(p + l, std::domain_error);
    CHECK_THROWS_AS(p * q, std::domain_error);
    CHECK_THROWS_AS(RingElt::monomial(RingKind::Poly, {Int(-1)}, Rat(1)), std::domain_error);
}

TEST_CASE("Euler classes of characters") {
    CHECK(RingElt::linear_from_weight(w2(1, 0)) == mono(RingKind::Poly, {1, 0}, 1));
    CHECK(RingElt::linear_from_weight(w2(2, 1)) ==
          mono(RingKind::Poly, {1, 0}, 2) + mono(RingKind::Poly, {0, 1}, 1));
    CHECK(RingElt::linear_from_weight(w2(-1, -1)) ==
          -(mono(RingKind::Poly, {1, 0}, 1) + mono(RingKind::Poly, {0, 1}, 1)));

    RingElt one = RingElt::constant(RingKind::Laurent, 2, Rat(1));
    CHECK(RingElt::euler_from_weight_K(w2(1, 0)) == one - RingElt::character(w2(1, 0)));
    // 1 - e^{-w} = -e^{-w} (1 - e^w)
    RingElt lhs = RingElt::euler_from_weight_K(w2(-1, 0));
    RingElt rhs = -RingElt::character(w2(-1, 0)) * RingElt::euler_from_weight_K(w2(1, 0));
    CHECK(lhs == rhs);

    CHECK_THROWS_AS(RingElt::linear_from_weight(w2(0, 0)), std::domain_error);
    CHECK_THROWS_AS(RingElt::euler_from_weight_K(w2(0, 0)), std::domain_error);
}

TEST_CASE("divisibility by linear forms") {
    RingElt x1 = mono(RingKind::Poly, {1, 0}, 1);
    RingElt x2 = mono(RingKind::Poly, {0, 1}, 1);

    auto d1 = divides_linear(w2(1, 0), x1 * x1 + x1 * x2);
    REQUIRE(d1.divides);
    CHECK(d1.quotient == x1 + x2);

    auto d2 = divides_linear(w2(1, -1), x1 * x1 - x2 * x2);
    REQUIRE(d2.divides);
    CHECK(d2.quotient * RingElt::linear_from_weight(w2(1, -1)) == x1 * x1 - x2 * x2);
    CHECK(d2.quotient == x1 + x2);

    CHECK_FALSE(divides_linear(w2(1, 0), x2).divides);
}

TEST_CASE("divisibility by K Euler classes") {
    RingElt one = RingElt::constant(RingKind::Laurent, 2, Rat(1));

    // 1 - a^-1 q^-1 = -a^-1 q^-1 (1 - a q)
    RingElt f = one - RingElt::character(w2(-1, -1));
    auto d = divides_euler_K(w2(1, 1), f);
    REQUIRE(d.divides);
    CHECK(d.quotient == -RingElt::character(w2(-1, -1)));

    auto d2 = divides_euler_K(w2(1, 0), one - RingElt::character(w2(2, 0)));
    REQUIRE(d2.divides);
    CHECK(d2.quotient == one + RingElt::character(w2(1, 0)));

    CHECK_FALSE(divides_euler_K(w2(1, 0), one - RingElt::character(w2(0, 1))).divides);
}

TEST_CASE("division is insensitive to the sign of the weight") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> dw(-3, 3);
    for (int t = 0; t < 60; ++t) {
        Weight w = w2(dw(rng), dw(rng));
        if (w.is_zero()) continue;
        RingElt f = random_elt(rng, RingKind::Poly, 2, 4, 3);
        CHECK(divides_linear(w, f).divides == divides_linear(-w, f).divides);
        RingElt l = random_elt(rng, RingKind::Laurent, 2, 4, 3);
        CHECK(divides_euler_K(w, l).divides == divides_euler_K(-w, l).divides);
    }
}

TEST_CASE("successful division reproduces the dividend; forced products divide") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> dw(-3, 3);
    for (int t = 0; t < 80; ++t) {
        Weight w = w2(dw(rng), dw(rng));
        if (w.is_zero()) continue;

        RingElt f = random_elt(rng, RingKind::Poly, 2, 3, 3);
        RingElt prod = f * RingElt::linear_from_weight(w);
        auto d = divides_linear(w, prod);
        REQUIRE(d.divides);
        CHECK(d.quotient == f);

        RingElt l = random_elt(rng, RingKind::Laurent, 2, 3, 2);
        RingElt lprod = l * RingElt::euler_from_weight_K(w);
        auto dk = divides_euler_K(w, lprod);
        REQUIRE(dk.divides);
        CHECK(dk.quotient == l);
        CHECK(dk.quotient * RingElt::euler_from_weight_K(w) == lprod);
    }
}

TEST_CASE("ring axioms hold exactly on random elements") {
    std::mt19937 rng(9);
    for (int t = 0; t < 40; ++t) {
        RingKind kind = t % 2 ? RingKind::Poly : RingKind::Laurent;
        RingElt a = random_elt(rng, kind, 2, 3, 2);
        RingElt b = random_elt(rng, kind, 2, 3, 2);
        RingElt c = random_elt(rng, kind, 2, 3, 2);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("substitution specializes exactly") {
    // x(x+a) with a -> 0 gives x^2   (variables: x = v0, a = v1)
    RingElt x = mono(RingKind::Poly, {1, 0}, 1);
    RingElt a = mono(RingKind::Poly, {0, 1}, 1);
    RingElt f = x * (x + a);
    RingElt spec = f.substitute({{1, Rat(0)}});
    CHECK(spec == RingElt::monomial(RingKind::Poly, {Int(2)}, Rat(1)));

    // K flavor: x(ax + 1 - a) with a -> 1 gives x^2
    RingElt xk = mono(RingKind::Laurent, {1, 0}, 1);
    RingElt ak = mono(RingKind::Laurent, {0, 1}, 1);
    RingElt one = RingElt::constant(RingKind::Laurent, 2, Rat(1));
    RingElt fk = xk * (ak * xk + one - ak);
    CHECK(fk.substitute({{1, Rat(1)}}) == RingElt::monomial(RingKind::Laurent, {Int(2)}, Rat(1)));

    // 1 - e^{(1,0)} at a -> 1 vanishes; evaluation of a unit at 0 is rejected
    RingElt g = RingElt::euler_from_weight_K(w2(1, 0));
    CHECK(g.substitute({{0, Rat(1)}, {1, Rat(1)}}).is_zero());
    CHECK_THROWS_AS(g.substitute({{0, Rat(0)}}), std::domain_error);
}

TEST_CASE("homogeneous degree query") {
    RingElt x1 = mono(RingKind::Poly, {1, 0}, 1);
    RingElt x2 = mono(RingKind::Poly, {0, 1}, 1);
    CHECK(*(x1 * x1 + x1 * x2).homogeneous_degree() == 2);
    CHECK_FALSE((x1 * x1 + x2).homogeneous_degree().has_value());
    CHECK(*RingElt(RingKind::Poly, 2).homogeneous_degree() == 0);
}

TEST_CASE("canonical graded-lex rendering") {
    RingElt x1 = mono(RingKind::Poly, {1, 0}, 1);
    RingElt x2 = mono(RingKind::Poly, {0, 1}, 1);
    RingElt f = (x1 + x2) * (x1 + x2);
    CHECK(f.str({"a", "b"}) == "a^2 + 2*a*b + b^2");
    CHECK((x2 - x1).str({"a", "b"}) == "-a + b");
    RingElt k = RingElt::euler_from_weight_K(w2(-1, -1));
    CHECK(k.str({"a", "q"}) == "1 - a^-1*q^-1");
    CHECK(RingElt(RingKind::Poly, 2).str() == "0");
}

TEST_CASE("factor_into_linear_forms on the worked shapes") {
    RingElt a = mono(RingKind::Poly, {1, 0}, 1);
    RingElt b = mono(RingKind::Poly, {0, 1}, 1);

    auto f1 = factor_into_linear_forms(a * a * Rat(2) + a * b * Rat(2));
    REQUIRE(f1.has_value());
    CHECK(f1->content == 2);
    REQUIRE(f1->factors.size() == 2);
    CHECK(f1->factors[0] == w2(1, 0));
    CHECK(f1->factors[1] == w2(1, 1));

    CHECK_FALSE(factor_into_linear_forms(a * a + b * b).has_value());

    // a(a-q)(a+q): multiply back as the oracle
    RingElt f = a * (a - b) * (a + b);
    auto f3 = factor_into_linear_forms(f);
    REQUIRE(f3.has_value());
    RingElt back = RingElt::constant(RingKind::Poly, 2, f3->content);
    for (const auto& w : f3->factors) back = back * RingElt::linear_from_weight(w);
    CHECK(back == f);
    CHECK(f3->factors.size() == 3);

    CHECK_THROWS_AS(factor_into_linear_forms(a * a + b), std::domain_error);
}

TEST_CASE("factor_into_linear_forms in three variables") {
    RingElt x = RingElt::monomial(RingKind::Poly, {Int(1), Int(0), Int(0)}, Rat(1));
    RingElt y = RingElt::monomial(RingKind::Poly, {Int(0), Int(1), Int(0)}, Rat(1));
    RingElt z = RingElt::monomial(RingKind::Poly, {Int(0), Int(0), Int(1)}, Rat(1));
    RingElt f = (x + y) * (y + z) * (x + y + z * Rat(2)) * Rat(-3);
    auto fac = factor_into_linear_forms(f);
    REQUIRE(fac.has_value());
    CHECK(fac->content == -3);
    RingElt back = RingElt::constant(RingKind::Poly, 3, fac->content);
    for (const auto& w : fac->factors) back = back * RingElt::linear_from_weight(w);
    CHECK(back == f);
}

TEST_CASE("random split polynomials factor back exactly") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> dw(-3, 3);
    std::uniform_int_distribution<int> dc(1, 3);
    std::uniform_int_distribution<int> dn(1, 4);
    for (int t = 0; t < 50; ++t) {
        RingElt f = RingElt::constant(RingKind::Poly, 2, Rat((t % 2 ? 1 : -1) * dc(rng)));
        int n = dn(rng);
        for (int i = 0; i < n; ++i) {
            Weight w = w2(dw(rng), dw(rng));
            if (w.is_zero()) w = w2(1, 1);
            f = f * RingElt::linear_from_weight(w);
        }
        auto fac = factor_into_linear_forms(f);
        REQUIRE(fac.has_value());
        RingElt back = RingElt::constant(RingKind::Poly, 2, fac->content);
        for (const auto& w : fac->factors) back = back * RingElt::linear_from_weight(w);
        CHECK(back == f);
        for (const auto& w : fac->factors) CHECK(primitive_part(w).first == w);
    }
}
