#pragma once

#include <utility>

#include "bezred/ring.hpp"

namespace bezred {

enum class StrategyKind {
    finite_brute_force,     // enumerate the whole ring
    integer_almost_sr1,     // solve a + b*y in {1, -1} over Z
    polynomial_adequate,    // solve a + b*y = nonzero constant over GF(p)[x]
    product_componentwise,  // split along the product structure
    bounded_search,         // walk the ring's search sequence up to a cap
};

struct WitnessStrategy {
    StrategyKind kind = StrategyKind::bounded_search;
    long long limit = 1000;

    static WitnessStrategy auto_for(const RingPtr& ring, long long limit = 1000);
};

/// Least y (in enumeration/search order) with a + b*y a unit.
/// Requires aR + bR = R; throws witness_not_found when the ring genuinely
/// lacks such a y within the strategy's reach.
Elem sr1_witness(const Elem& a, const Elem& b, const WitnessStrategy& strat);

/// Exhaustively decide whether R/mR has stable range 1, i.e. every
/// unimodular pair (a, b) admits y with a + b*y a unit. The quotient must be
/// finite and of size at most `limit`.
bool quotient_has_sr1(const RingPtr& base, const Elem& m, long long limit = 1000);

/// t such that R/(a + b*t)R has stable range 1.
Elem locally_stable_witness(const Elem& a, const Elem& b, const WitnessStrategy& strat);

/// For a unimodular triple (a, b, c): (y, z) with (a + c*y)R + (b + c*z)R = R.
std::pair<Elem, Elem> sr2_witness(const Elem& a, const Elem& b, const Elem& c,
                                  const WitnessStrategy& strat);

/// c = r*s with rR + aR = R while no non-unit divisor of s is comaximal
/// with a.
struct AdequatePair {
    Elem r, s;
};
AdequatePair adequate_decompose(const Elem& a, const Elem& c, const WitnessStrategy& strat);

/// Check an adequate decomposition by enumerating the divisors of s; needs a
/// ring whose divisor sets are enumerable (finite rings, Z, GF(p)[x], and
/// products of these).
bool verify_adequate(const Elem& a, const Elem& c, const AdequatePair& pair,
                     long long limit = 1000);

/// For a unimodular triple (a, b, c): (p, q) with (p*a + q*b)R + (q*c)R = R.
std::pair<Elem, Elem> gh_witness(const Elem& a, const Elem& b, const Elem& c,
                                 const WitnessStrategy& strat);

/// Membership in T(R) = { a : R/aR has stable range 1 }.
bool in_T(const Elem& a, long long limit = 1000);

/// Membership in S(R) = { c : c is adequate }: for every a there is a
/// factorization c = r*s with rR + aR = R whose s has no non-unit divisor
/// comaximal with a. Exhaustive on finite rings; over Z and GF(p)[x] every
/// nonzero element is adequate (zero is refused there). Componentwise over
/// products.
bool is_adequate(const Elem& c, long long limit = 1000);

}  // namespace bezred
