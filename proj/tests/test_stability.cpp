#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bezred/stability.hpp"

using namespace bezred;

namespace {

Elem poly(const RingPtr& r, std::vector<Int> cs) {
    return Elem::of_coeffs(r, std::move(cs)) * r->one();
}

bool comaximal(const Elem& a, const Elem& b) {
    return a.ring()->is_unit(a.ring()->gcdex(a, b).g);
}

}  // namespace

TEST_CASE("sr1_witness pinned values") {
    auto Z6 = zmod(6);
    auto st6 = WitnessStrategy::auto_for(Z6);
    CHECK(sr1_witness(Z6->from_int(2), Z6->from_int(3), st6) == Z6->from_int(1));
    CHECK(sr1_witness(Z6->from_int(3), Z6->from_int(4), st6) == Z6->from_int(1));

    auto Z = integers();
    auto stz = WitnessStrategy::auto_for(Z);
    for (long long b : {0, 3, -7, 100})
        CHECK(sr1_witness(Z->one(), Z->from_int(b), stz) == Z->zero());
    CHECK_THROWS_AS(sr1_witness(Z->from_int(2), Z->from_int(5), stz),
                    witness_not_found);
    CHECK_THROWS_AS(sr1_witness(Z->from_int(2), Z->from_int(4), stz),
                    precondition_error);

    auto F2x = poly_over_gf(2);
    auto stp = WitnessStrategy::auto_for(F2x);
    CHECK(sr1_witness(poly(F2x, {1, 1}), poly(F2x, {0, 1}), stp) == F2x->one());

    auto P = product(integers(), zmod(4));
    auto stP = WitnessStrategy::auto_for(P);
    Elem a = Elem::of_pair(P, Z->from_int(3), zmod(4)->from_int(2));
    Elem b = Elem::of_pair(P, Z->from_int(2), zmod(4)->from_int(3));
    Elem y = sr1_witness(a, b, stP);
    CHECK(y == Elem::of_pair(P, Z->from_int(-1), zmod(4)->from_int(1)));
    CHECK(P->is_unit(a + b * y));
}

TEST_CASE("sr1_witness presence matches exhaustive search on finite rings") {
    for (const auto& R : {zmod(4), zmod(6), zmod(8), zmod(9),
                          poly_quot(2, {0, 0, 1}), product(zmod(2), zmod(3))}) {
        auto st = WitnessStrategy::auto_for(R);
        Int n = R->size();
        for (Int i = 0; i < n; ++i) {
            for (Int j = 0; j < n; ++j) {
                Elem a = R->element_at(i), b = R->element_at(j);
                if (!comaximal(a, b)) continue;
                std::optional<Elem> least;
                for (Int k = 0; k < n; ++k) {
                    if (R->is_unit(a + b * R->element_at(k))) {
                        least = R->element_at(k);
                        break;
                    }
                }
                REQUIRE(least.has_value());  // finite commutative rings have SR1
                Elem y = sr1_witness(a, b, st);
                CHECK(y == *least);
                CHECK(R->is_unit(a + b * y));
            }
        }
    }
}

TEST_CASE("quotient_has_sr1") {
    auto Z = integers();
    CHECK(quotient_has_sr1(Z, Z->from_int(6)));
    CHECK(quotient_has_sr1(Z, Z->from_int(1)));
    auto F2x = poly_over_gf(2);
    CHECK(quotient_has_sr1(F2x, poly(F2x, {0, 1, 1})));
    CHECK_THROWS_AS(quotient_has_sr1(Z, Z->zero()), precondition_error);
}

TEST_CASE("locally_stable_witness pinned values and postcondition") {
    auto Z = integers();
    auto stz = WitnessStrategy::auto_for(Z);
    CHECK(locally_stable_witness(Z->zero(), Z->from_int(5), stz) == Z->from_int(1));
    CHECK(locally_stable_witness(Z->from_int(3), Z->from_int(7), stz) == Z->zero());
    CHECK(locally_stable_witness(Z->from_int(4), Z->from_int(6), stz) == Z->zero());
    auto Z6 = zmod(6);
    auto st6 = WitnessStrategy::auto_for(Z6);
    CHECK(locally_stable_witness(Z6->from_int(2), Z6->from_int(3), st6) == Z6->zero());

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> d(-30, 30);
    int tested = 0;
    while (tested < 60) {
        Elem a = Z->from_int(d(rng)), b = Z->from_int(d(rng));
        if (!comaximal(a, b)) continue;
        ++tested;
        Elem t = locally_stable_witness(a, b, stz);
        Elem v = a + b * t;
        REQUIRE(v != Z->zero());
        CHECK(quotient_has_sr1(Z, v));
    }
}

TEST_CASE("sr2_witness pinned values and random comaximal triples") {
    auto Z = integers();
    auto stz = WitnessStrategy::auto_for(Z);
    auto check_pair = [&](long long a, long long b, long long c, long long ey,
                          long long ez) {
        auto [y, z] = sr2_witness(Z->from_int(a), Z->from_int(b), Z->from_int(c), stz);
        CHECK(y == Z->from_int(ey));
        CHECK(z == Z->from_int(ez));
        CHECK(comaximal(Z->from_int(a) + Z->from_int(c) * y,
                        Z->from_int(b) + Z->from_int(c) * z));
    };
    check_pair(3, 5, 7, 0, 0);
    check_pair(6, 10, 15, 1, 0);
    check_pair(0, 0, 1, 1, 0);

    auto P = product(integers(), zmod(4));
    auto stP = WitnessStrategy::auto_for(P);
    auto [yp, zp] = sr2_witness(P->from_int(6), P->from_int(10), P->from_int(15), stP);
    CHECK(P->format(yp) == "(1,1)");
    CHECK(P->format(zp) == "(0,0)");
    CHECK(P->is_unit(P->gcdex(P->from_int(6) + P->from_int(15) * yp,
                              P->from_int(10) + P->from_int(15) * zp).g));

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long long> d(-50, 50);
    int tested = 0;
    while (tested < 100) {
        Elem a = Z->from_int(d(rng)), b = Z->from_int(d(rng)), c = Z->from_int(d(rng));
        if (!Z->is_unit(Z->gcdex(Z->gcdex(a, b).g, c).g)) continue;
        ++tested;
        auto [y, z] = sr2_witness(a, b, c, stz);
        CHECK(comaximal(a + c * y, b + c * z));
    }
    CHECK_THROWS_AS(sr2_witness(Z->from_int(2), Z->from_int(4), Z->from_int(6), stz),
                    precondition_error);
}

TEST_CASE("adequate_decompose pinned values and divisor check") {
    auto Z = integers();
    auto stz = WitnessStrategy::auto_for(Z);
    AdequatePair p1 = adequate_decompose(Z->from_int(10), Z->from_int(12), stz);
    CHECK(p1.r == Z->from_int(3));
    CHECK(p1.s == Z->from_int(4));
    CHECK(verify_adequate(Z->from_int(10), Z->from_int(12), p1));

    AdequatePair p2 = adequate_decompose(Z->from_int(3), Z->from_int(5), stz);
    CHECK(p2.r == Z->from_int(5));
    CHECK(p2.s == Z->from_int(1));
    CHECK(verify_adequate(Z->from_int(3), Z->from_int(5), p2));

    auto Z6 = zmod(6);
    auto st6 = WitnessStrategy::auto_for(Z6);
    AdequatePair p3 = adequate_decompose(Z6->from_int(2), Z6->from_int(3), st6);
    CHECK(p3.r == Z6->from_int(3));
    CHECK(p3.s == Z6->from_int(1));
    CHECK(verify_adequate(Z6->from_int(2), Z6->from_int(3), p3));

    for (long long c = 1; c <= 20; ++c) {
        for (long long a = 1; a <= 20; ++a) {
            AdequatePair p = adequate_decompose(Z->from_int(a), Z->from_int(c), stz);
            CHECK(p.r * p.s == Z->from_int(c));
            CHECK(comaximal(p.r, Z->from_int(a)));
            CHECK(verify_adequate(Z->from_int(a), Z->from_int(c), p));
        }
    }
}

TEST_CASE("is_adequate") {
    auto Z = integers();
    CHECK(is_adequate(Z->from_int(12)));
    CHECK(is_adequate(Z->one()));
    CHECK(is_adequate(Z->from_int(-7)));
    CHECK_THROWS_AS(is_adequate(Z->zero()), precondition_error);
    auto Z6 = zmod(6);
    for (Int i = 0; i < 6; ++i) CHECK(is_adequate(Z6->element_at(i)));
    auto F2x = poly_over_gf(2);
    CHECK(is_adequate(poly(F2x, {0, 1, 1})));
    CHECK_THROWS_AS(is_adequate(F2x->zero()), precondition_error);
}

TEST_CASE("gh_witness pinned values and identity") {
    auto Z = integers();
    auto stz = WitnessStrategy::auto_for(Z);
    auto [p1, q1] = gh_witness(Z->from_int(2), Z->from_int(3), Z->from_int(5), stz);
    CHECK(p1 == Z->from_int(2));
    CHECK(q1 == Z->from_int(1));
    auto [p2, q2] = gh_witness(Z->one(), Z->zero(), Z->zero(), stz);
    CHECK(p2 == Z->one());
    CHECK(q2 == Z->zero());
    auto Z6 = zmod(6);
    auto st6 = WitnessStrategy::auto_for(Z6);
    auto [p3, q3] = gh_witness(Z6->from_int(2), Z6->from_int(3), Z6->from_int(4), st6);
    CHECK(p3 == Z6->one());
    CHECK(q3 == Z6->one());

    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long long> d(-40, 40);
    int tested = 0;
    while (tested < 100) {
        Elem a = Z->from_int(d(rng)), b = Z->from_int(d(rng)), c = Z->from_int(d(rng));
        if (!Z->is_unit(Z->gcdex(Z->gcdex(a, b).g, c).g)) continue;
        ++tested;
        auto [p, q] = gh_witness(a, b, c, stz);
        CHECK(comaximal(p * a + q * b, q * c));
    }

    // Exhaustive identity check on a finite ring with zero divisors.
    auto Z8 = zmod(8);
    auto st8 = WitnessStrategy::auto_for(Z8);
    for (Int i = 0; i < 8; ++i) {
        for (Int j = 0; j < 8; ++j) {
            for (Int k = 0; k < 8; ++k) {
                Elem a = Z8->element_at(i), b = Z8->element_at(j), c = Z8->element_at(k);
                if (!Z8->is_unit(Z8->gcdex(Z8->gcdex(a, b).g, c).g)) continue;
                auto [p, q] = gh_witness(a, b, c, st8);
                CHECK(Z8->is_unit(Z8->gcdex(p * a + q * b, q * c).g));
            }
        }
    }
}

TEST_CASE("membership in T") {
    auto Z = integers();
    CHECK(in_T(Z->from_int(6)));
    CHECK(in_T(Z->from_int(5)));
    CHECK(in_T(Z->one()));
    CHECK_FALSE(in_T(Z->zero()));
    auto Z6 = zmod(6);
    for (Int i = 0; i < 6; ++i) CHECK(in_T(Z6->element_at(i)));
    auto F2x = poly_over_gf(2);
    CHECK_FALSE(in_T(F2x->zero()));
    CHECK(in_T(poly(F2x, {0, 1})));

    // Closure and saturation over Z on a sampled range (exhaustive band in
    // the acceptance gate).
    for (long long a = 2; a <= 12; ++a) {
        for (long long b = 2; b <= 12; ++b) {
            bool ta = in_T(Z->from_int(a));
            bool tb = in_T(Z->from_int(b));
            bool tab = in_T(Z->from_int(a * b));
            CHECK((!(ta && tb) || tab));
            CHECK((!tab || (ta && tb)));
        }
    }
}
