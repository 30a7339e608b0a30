#include <doctest.h>

#include "gkm/lattice.hpp"

#include <random>

using namespace gkm;

namespace {

Weight w2(long a, long b) { return Weight({Int(a), Int(b)}); }

}  // namespace

TEST_CASE("primitive_part extracts content and normalizes sign") {
    auto [p1, g1] = primitive_part(w2(2, 4));
    CHECK(p1 == w2(1, 2));
    CHECK(g1 == 2);

    auto [p2, g2] = primitive_part(w2(1, 0));
    CHECK(p2 == w2(1, 0));
    CHECK(g2 == 1);

    // Oracle: recompute g*p = w.
    auto [p3, g3] = primitive_part(w2(-3, 6));
    CHECK(p3 == w2(1, -2));
    CHECK(p3 * g3 == w2(-3, 6));
    Int content_gcd = int_gcd(p3[0], p3[1]);
    CHECK(content_gcd == 1);

    CHECK_THROWS_AS(primitive_part(w2(0, 0)), std::domain_error);
}

TEST_CASE("primitive_part is idempotent on its first output") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int t = 0; t < 200; ++t) {
        Weight w = w2(d(rng), d(rng));
        if (w.is_zero()) continue;
        auto [p, g] = primitive_part(w);
        auto [pp, gg] = primitive_part(p);
        CHECK(pp == p);
        CHECK(gg == 1);
    }
}

TEST_CASE("collinearity") {
    CHECK(collinear(w2(1, 2), w2(2, 4)));
    CHECK_FALSE(collinear(w2(1, 0), w2(0, 1)));
    CHECK(collinear(w2(2, -2), w2(-3, 3)));  // opposite directions
    CHECK_THROWS_AS(collinear(w2(0, 0), w2(1, 1)), std::domain_error);
}

TEST_CASE("collinear is an equivalence relation on nonzero weights") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-5, 5);
    std::vector<Weight> ws;
    while (ws.size() < 40) {
        Weight w = w2(d(rng), d(rng));
        if (!w.is_zero()) ws.push_back(w);
    }
    for (const auto& a : ws) CHECK(collinear(a, a));
    for (const auto& a : ws)
        for (const auto& b : ws) CHECK(collinear(a, b) == collinear(b, a));
    for (const auto& a : ws)
        for (const auto& b : ws)
            for (const auto& c : ws)
                if (collinear(a, b) && collinear(b, c)) CHECK(collinear(a, c));
}

TEST_CASE("H coprimality: collinearity and shared primes") {
    CHECK(check_coprime_H({w2(1, 0), w2(0, 1), w2(1, 1)}).ok);

    auto shared = check_coprime_H({w2(2, 0), w2(0, 2)});
    REQUIRE_FALSE(shared.ok);
    REQUIRE(shared.violations.size() == 1);
    CHECK(shared.violations[0].reason == CoprimalityReason::SharedPrime);
    CHECK(shared.violations[0].prime == 2);

    auto col = check_coprime_H({w2(1, 0), w2(2, 0)});
    REQUIRE_FALSE(col.ok);
    CHECK(col.violations[0].reason == CoprimalityReason::Collinear);
}

TEST_CASE("K coprimality needs only non-collinearity") {
    CHECK_FALSE(check_coprime_K({w2(1, 0), w2(2, 0)}).ok);
    CHECK(check_coprime_K({w2(2, 0), w2(0, 2)}).ok);
    CHECK(check_coprime_K({}).ok);
}

TEST_CASE("zero weights are reported as violations, not thrown") {
    auto rep = check_coprime_H({w2(0, 0), w2(1, 0)});
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.violations[0].reason == CoprimalityReason::ZeroWeight);
}

TEST_CASE("the H condition is strictly stronger than the K condition") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int t = 0; t < 100; ++t) {
        std::vector<Weight> ws;
        for (int i = 0; i < 4; ++i) {
            Weight w = w2(d(rng), d(rng));
            if (!w.is_zero()) ws.push_back(w);
        }
        if (check_coprime_H(ws).ok) CHECK(check_coprime_K(ws).ok);
    }
}
