#include "bezred/stability.hpp"

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace bezred {
namespace {

Int iabs(const Int& v) { return v < 0 ? Int(-v) : v; }

bool is_comaximal(const Elem& a, const Elem& b) {
    return a.ring()->is_unit(a.ring()->gcdex(a, b).g);
}

void require_unimodular_pair(const Elem& a, const Elem& b, const char* who) {
    if (!is_comaximal(a, b))
        throw precondition_error(std::string(who) + ": aR + bR is a proper ideal");
}

bool message_says_infinite(const error& e) {
    return std::string(e.what()).find("infinite-quotient") != std::string::npos;
}

Elem checked_unit_shift(const Elem& a, const Elem& b, const Elem& y, const char* who) {
    if (!a.ring()->is_unit(a + b * y))
        throw internal_error(std::string(who) + ": computed witness is not a unit shift");
    return y;
}

Elem sr1_brute(const Elem& a, const Elem& b) {
    const RingPtr& R = a.ring();
    if (!R->finite()) throw precondition_error("brute-force strategy needs a finite ring");
    for (Int i = 0; i < R->size(); ++i) {
        Elem y = R->element_at(i);
        if (R->is_unit(a + b * y)) return y;
    }
    throw witness_not_found("sr1: no unit shift exists in " + R->spec_string());
}

Elem sr1_integers(const Elem& a, const Elem& b) {
    const RingPtr& R = a.ring();
    const Int &av = a.as_int(), &bv = b.as_int();
    if (bv == 0) {
        if (av == 1 || av == -1) return R->from_int(0);
        throw witness_not_found("sr1: a is not a unit and b = 0");
    }
    std::vector<Int> hits;
    for (int u : {1, -1})
        if ((u - av) % bv == 0) hits.push_back((u - av) / bv);
    if (hits.empty())
        throw witness_not_found("sr1: a + b*y never reaches a unit over Z");
    // smallest |y|, positive preferred on ties
    Int best = hits[0];
    for (const Int& h : hits)
        if (iabs(h) < iabs(best) || (iabs(h) == iabs(best) && h > best)) best = h;
    return R->from_int(best);
}

// Search-order comparison for polynomials: lower degree first, then
// lexicographic from the top coefficient down.
bool poly_search_less(const Elem& x, const Elem& y) {
    const auto &xc = x.as_coeffs(), &yc = y.as_coeffs();
    if (xc.size() != yc.size()) return xc.size() < yc.size();
    for (size_t k = xc.size(); k-- > 0;)
        if (xc[k] != yc[k]) return xc[k] < yc[k];
    return false;
}

Elem sr1_polynomials(const Elem& a, const Elem& b) {
    const RingPtr& R = a.ring();
    if (R->is_zero(b)) {
        if (R->is_unit(a)) return R->zero();
        throw witness_not_found("sr1: a is not a unit and b = 0");
    }
    // a + b*y is a unit exactly when it is a nonzero constant.
    std::optional<Elem> best;
    for (Int ci = 1;; ++ci) {
        Elem c = R->from_int(ci);
        if (R->is_zero(c)) break;  // wrapped around: nonzero constants exhausted
        if (auto y = R->divide_exact(c - a, b))
            if (!best || poly_search_less(*y, *best)) best = *y;
    }
    if (!best)
        throw witness_not_found("sr1: a + b*y never reaches a unit over " +
                                R->spec_string());
    return *best;
}

Elem sr1_bounded(const Elem& a, const Elem& b, long long limit) {
    const RingPtr& R = a.ring();
    for (long long i = 0; i < limit; ++i) {
        Elem y = R->search_at(i);
        if (R->is_unit(a + b * y)) return y;
    }
    throw witness_not_found("sr1: no unit shift within search limit " +
                            std::to_string(limit));
}

}  // namespace

WitnessStrategy WitnessStrategy::auto_for(const RingPtr& ring, long long limit) {
    WitnessStrategy s;
    s.limit = limit;
    if (ring->finite())
        s.kind = StrategyKind::finite_brute_force;
    else if (ring->kind() == RingKind::integers)
        s.kind = StrategyKind::integer_almost_sr1;
    else if (ring->kind() == RingKind::poly)
        s.kind = StrategyKind::polynomial_adequate;
    else if (ring->kind() == RingKind::product)
        s.kind = StrategyKind::product_componentwise;
    else
        s.kind = StrategyKind::bounded_search;
    return s;
}

Elem sr1_witness(const Elem& a, const Elem& b, const WitnessStrategy& strat) {
    const RingPtr& R = a.ring();
    R->check_same(a, b);
    require_unimodular_pair(a, b, "sr1");
    switch (strat.kind) {
        case StrategyKind::finite_brute_force:
            return checked_unit_shift(a, b, sr1_brute(a, b), "sr1");
        case StrategyKind::integer_almost_sr1:
            if (R->kind() != RingKind::integers)
                throw precondition_error("integer strategy applied to " + R->spec_string());
            return checked_unit_shift(a, b, sr1_integers(a, b), "sr1");
        case StrategyKind::polynomial_adequate:
            if (R->kind() != RingKind::poly)
                throw precondition_error("polynomial strategy applied to " + R->spec_string());
            return checked_unit_shift(a, b, sr1_polynomials(a, b), "sr1");
        case StrategyKind::product_componentwise: {
            if (R->kind() != RingKind::product)
                throw precondition_error("componentwise strategy applied to " +
                                         R->spec_string());
            const RingPtr& L = a.left().ring();
            const RingPtr& Rr = a.right().ring();
            Elem yl = sr1_witness(a.left(), b.left(),
                                  WitnessStrategy::auto_for(L, strat.limit));
            Elem yr = sr1_witness(a.right(), b.right(),
                                  WitnessStrategy::auto_for(Rr, strat.limit));
            return checked_unit_shift(a, b, Elem::of_pair(R, yl, yr), "sr1");
        }
        case StrategyKind::bounded_search:
            return checked_unit_shift(a, b, sr1_bounded(a, b, strat.limit), "sr1");
    }
    throw internal_error("sr1: unknown strategy");
}

bool quotient_has_sr1(const RingPtr& base, const Elem& m, long long limit) {
    QuotientRing q = quotient_ring(base, m);
    const RingPtr& Q = q.ring();
    if (!Q->finite()) throw precondition_error("infinite-quotient: cannot enumerate");
    if (Q->size() > limit)
        throw precondition_error("quotient of size " + Q->size().str() +
                                 " exceeds the enumeration limit " + std::to_string(limit));
    // Fast arithmetic path for Z/n.
    if (Q->kind() == RingKind::modular && Q->size() <= 1000000) {
        int64_t n = Q->size().convert_to<int64_t>();
        for (int64_t b = 0; b < n; ++b)
            for (int64_t c = 0; c < n; ++c) {
                if (std::gcd(std::gcd(b, c), n) != 1) continue;
                bool hit = false;
                for (int64_t y = 0; y < n; ++y)
                    if (std::gcd((b + c * y) % n, n) == 1) {
                        hit = true;
                        break;
                    }
                if (!hit) return false;
            }
        return true;
    }
    long long n = Q->size().convert_to<long long>();
    std::vector<Elem> el;
    std::vector<char> unit(n);
    el.reserve(n);
    for (long long i = 0; i < n; ++i) {
        el.push_back(Q->element_at(i));
        unit[i] = Q->is_unit(el.back());
    }
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < n; ++j) {
            if (!Q->is_unit(Q->gcdex(el[i], el[j]).g)) continue;
            bool hit = false;
            for (long long y = 0; y < n && !hit; ++y)
                hit = unit[Q->index_of(el[i] + el[j] * el[y]).convert_to<long long>()];
            if (!hit) return false;
        }
    return true;
}

Elem locally_stable_witness(const Elem& a, const Elem& b, const WitnessStrategy& strat) {
    const RingPtr& R = a.ring();
    R->check_same(a, b);
    switch (strat.kind) {
        case StrategyKind::finite_brute_force:
            if (!R->finite()) throw precondition_error("brute-force strategy needs a finite ring");
            // finite commutative rings and all their quotients have stable range 1
            return R->zero();
        case StrategyKind::integer_almost_sr1:
        case StrategyKind::polynomial_adequate: {
            // Z and GF(p)[x]: any nonzero modulus gives a finite quotient.
            if (R->is_zero(a) && R->is_zero(b))
                throw precondition_error(
                    "locally-stable: a = b = 0 but " + R->spec_string() +
                    " itself does not have stable range 1");
            if (!R->is_zero(a)) return R->zero();
            return R->one();
        }
        case StrategyKind::product_componentwise: {
            if (R->kind() != RingKind::product)
                throw precondition_error("componentwise strategy applied to " +
                                         R->spec_string());
            Elem tl = locally_stable_witness(
                a.left(), b.left(), WitnessStrategy::auto_for(a.left().ring(), strat.limit));
            Elem tr = locally_stable_witness(
                a.right(), b.right(),
                WitnessStrategy::auto_for(a.right().ring(), strat.limit));
            return Elem::of_pair(R, tl, tr);
        }
        case StrategyKind::bounded_search: {
            for (long long i = 0; i < strat.limit; ++i) {
                Elem t = R->search_at(i);
                try {
                    if (quotient_has_sr1(R, a + b * t, strat.limit)) return t;
                } catch (const precondition_error& e) {
                    if (!message_says_infinite(e)) throw;
                }
            }
            throw witness_not_found("locally-stable: no witness within search limit");
        }
    }
    throw internal_error("locally-stable: unknown strategy");
}

std::pair<Elem, Elem> sr2_witness(const Elem& a, const Elem& b, const Elem& c,
                                  const WitnessStrategy& strat) {
    const RingPtr& R = a.ring();
    R->check_same(a, b);
    R->check_same(c);
    BezoutData dab = R->gcdex(a, b);
    if (!R->is_unit(R->gcdex(dab.g, c).g))
        throw precondition_error("sr2: aR + bR + cR is a proper ideal");
    auto good = [&](const Elem& y, const Elem& z) {
        return R->is_unit(R->gcdex(a + c * y, b + c * z).g);
    };
    if (R->is_unit(dab.g)) return {R->zero(), R->zero()};
    // Small diagonal scan keeps easy answers short and deterministic.
    long long cap = strat.limit < 256 ? strat.limit : 256;
    for (long long d = 0; d <= cap; ++d)
        for (long long iy = d; iy >= 0; --iy) {
            Elem y = R->search_at(iy), z = R->search_at(d - iy);
            if (good(y, z)) return {y, z};
        }
    // Constructed witness: pick t with Q = R/(a + c*t)R of stable range 1;
    // modulo that quotient (b, c) is unimodular, so a unit shift b + c*d
    // exists, and lifting it back gives a pair comaximal with a + c*t.
    Elem t = locally_stable_witness(a, c, strat);
    QuotientRing q = quotient_ring(R, a + c * t);
    Elem d = q.lift(sr1_witness(q.project(b), q.project(c),
                                WitnessStrategy::auto_for(q.ring(), strat.limit)));
    if (!good(t, d)) throw internal_error("sr2: constructed witness failed verification");
    return {t, d};
}

namespace {

// All divisors of s, including units and s itself; throws when the divisor
// set cannot be enumerated within `limit` candidates.
std::vector<Elem> divisor_list(const Elem& s, long long limit) {
    const RingPtr& R = s.ring();
    std::vector<Elem> out;
    if (R->finite()) {
        for (Int i = 0; i < R->size(); ++i) {
            Elem d = R->element_at(i);
            if (R->divide_exact(s, d)) out.push_back(d);
        }
        return out;
    }
    switch (R->kind()) {
        case RingKind::integers: {
            Int sv = s.as_int() < 0 ? Int(-s.as_int()) : s.as_int();
            if (sv == 0) throw precondition_error("divisor enumeration of 0 over Z");
            if (sv > 1000000000000LL)
                throw precondition_error("divisor enumeration bound exceeded");
            for (Int d = 1; d * d <= sv; ++d)
                if (sv % d == 0) {
                    out.push_back(R->from_int(d));
                    if (d * d != sv) out.push_back(R->from_int(sv / d));
                }
            return out;
        }
        case RingKind::poly: {
            if (R->is_zero(s)) throw precondition_error("divisor enumeration of 0");
            // monic divisors by trial division; candidates of each degree
            // come from the ring's search order restricted to that degree
            auto [u, smonic] = R->canonical_associate(s);
            long long deg = static_cast<long long>(smonic.as_coeffs().size()) - 1;
            out.push_back(R->one());
            long long tried = 0;
            for (long long dd = 1; dd <= deg; ++dd) {
                // all monic candidates of degree dd: lower coefficients run
                // over all p^dd combinations
                for (Int idx = 0;; ++idx) {
                    Elem low = R->search_at(idx);
                    if (static_cast<long long>(low.as_coeffs().size()) > dd) break;
                    std::vector<Int> cand = low.as_coeffs();
                    cand.resize(dd + 1, 0);
                    cand[dd] = 1;
                    Elem ce = Elem::of_coeffs(R, cand);
                    if (R->divide_exact(smonic, ce)) out.push_back(ce);
                    if (++tried > limit)
                        throw precondition_error("divisor enumeration bound exceeded");
                }
            }
            return out;
        }
        case RingKind::product: {
            auto dl = divisor_list(s.left(), limit);
            auto dr = divisor_list(s.right(), limit);
            if (static_cast<long long>(dl.size() * dr.size()) > limit)
                throw precondition_error("divisor enumeration bound exceeded");
            for (const auto& x : dl)
                for (const auto& y : dr) out.push_back(Elem::of_pair(R, x, y));
            return out;
        }
        default:
            throw precondition_error("divisor enumeration unsupported for " +
                                     R->spec_string());
    }
}

}  // namespace

bool verify_adequate(const Elem& a, const Elem& c, const AdequatePair& pair,
                     long long limit) {
    const RingPtr& R = a.ring();
    if (pair.r * pair.s != c) return false;
    if (!R->is_unit(R->gcdex(pair.r, a).g)) return false;
    if (R->kind() == RingKind::product && !R->finite()) {
        AdequatePair pl{pair.r.left(), pair.s.left()};
        AdequatePair pr{pair.r.right(), pair.s.right()};
        return verify_adequate(a.left(), c.left(), pl, limit) &&
               verify_adequate(a.right(), c.right(), pr, limit);
    }
    for (const Elem& d : divisor_list(pair.s, limit)) {
        if (R->is_unit(d)) continue;
        if (R->is_unit(R->gcdex(d, a).g)) return false;
    }
    return true;
}

AdequatePair adequate_decompose(const Elem& a, const Elem& c, const WitnessStrategy& strat) {
    const RingPtr& R = a.ring();
    R->check_same(a, c);
    if (R->is_zero(c) && R->is_domain() && !R->finite())
        throw precondition_error("adequate: c = 0 has no adequate decomposition over " +
                                 R->spec_string());
    if (R->kind() == RingKind::product && !R->finite()) {
        AdequatePair l = adequate_decompose(
            a.left(), c.left(), WitnessStrategy::auto_for(a.left().ring(), strat.limit));
        AdequatePair r = adequate_decompose(
            a.right(), c.right(), WitnessStrategy::auto_for(a.right().ring(), strat.limit));
        return {Elem::of_pair(R, l.r, r.r), Elem::of_pair(R, l.s, r.s)};
    }
    // Strip the part of c sharing factors with a.
    std::vector<Elem> seen{c};
    Elem r = c;
    bool cycled = false;
    while (true) {
        BezoutData d = R->gcdex(r, a);
        if (R->is_unit(d.g)) break;
        Elem next = d.a_bar;  // r = g * a_bar
        for (const Elem& s : seen)
            if (s == next) {
                cycled = true;
                break;
            }
        if (cycled || R->is_zero(d.g)) break;
        seen.push_back(next);
        r = next;
    }
    if (!cycled && R->is_unit(R->gcdex(r, a).g)) {
        if (auto s = R->divide_exact(c, r)) {
            // the quotient chosen by divide_exact may not pair with r to give
            // exactly c in the presence of zero divisors; re-check
            AdequatePair cand{r, *s};
            bool ok = false;
            try {
                ok = verify_adequate(a, c, cand, strat.limit);
            } catch (const precondition_error&) {
                // divisor sets not enumerable at this size: trust the
                // construction for Z and GF(p)[x], where it is exact
                ok = R->kind() == RingKind::integers || R->kind() == RingKind::poly;
            }
            if (ok) return cand;
        }
    }
    if (!R->finite())
        throw witness_not_found("adequate: stripping construction failed over " +
                                R->spec_string());
    // Finite fallback: exhaustive over ordered factor pairs.
    Int n = R->size();
    for (Int i = 0; i < n; ++i)
        for (Int j = 0; j < n; ++j) {
            AdequatePair cand{R->element_at(i), R->element_at(j)};
            if (cand.r * cand.s != c) continue;
            if (verify_adequate(a, c, cand, strat.limit)) return cand;
        }
    throw witness_not_found("adequate: no decomposition of " + R->format(c) +
                            " relative to " + R->format(a));
}

std::pair<Elem, Elem> gh_witness(const Elem& a, const Elem& b, const Elem& c,
                                 const WitnessStrategy& strat) {
    const RingPtr& R = a.ring();
    R->check_same(a, b);
    R->check_same(c);
    if (!R->is_unit(R->gcdex(R->gcdex(a, b).g, c).g))
        throw precondition_error("gh: aR + bR + cR is a proper ideal");
    auto good = [&](const Elem& p, const Elem& q) {
        return R->is_unit(R->gcdex(p * a + q * b, q * c).g);
    };
    // (1, 0), then positive pairs by antidiagonals: (1,1), (2,1), (1,2), ...
    {
        Elem p = R->one(), q = R->zero();
        if (good(p, q)) return {p, q};
    }
    long long cap = strat.limit < 512 ? strat.limit : 512;
    long long tried = 0;
    for (long long d = 2; tried < cap; ++d)
        for (long long pi = d - 1; pi >= 1 && tried < cap; --pi, ++tried) {
            Elem p = R->from_int(pi), q = R->from_int(d - pi);
            if (good(p, q)) return {p, q};
        }
    // Adequate-guided candidate: split c = r*s against a; then p = 1, q = r
    // works whenever the decomposition exists.
    try {
        AdequatePair ad = adequate_decompose(a, c, strat);
        if (good(R->one(), ad.r)) return {R->one(), ad.r};
    } catch (const error&) {
        // fall through to the grid
    }
    // Full search-sequence grid for rings the integer ladder cannot cover.
    for (long long d = 0; d <= strat.limit; ++d)
        for (long long pi = d; pi >= 0; --pi) {
            Elem p = R->search_at(pi), q = R->search_at(d - pi);
            if (good(p, q)) return {p, q};
        }
    throw witness_not_found("gh: no witness within search limit");
}

bool in_T(const Elem& a, long long limit) {
    const RingPtr& R = a.ring();
    R->check_same(a);
    if (R->is_unit(a)) return true;
    if (R->is_zero(a)) {
        if (R->has_sr1() == Tri::unknown)
            throw precondition_error("stable range of " + R->spec_string() +
                                     " is not determined");
        return R->has_sr1() == Tri::yes;
    }
    try {
        return quotient_has_sr1(R, a, limit);
    } catch (const precondition_error& e) {
        if (message_says_infinite(e)) {
            // an infinite quotient of these families always retains a Z or
            // GF(p)[x] factor, and those do not have stable range 1
            return false;
        }
        throw;
    }
}

bool is_adequate(const Elem& c, long long limit) {
    const RingPtr& R = c.ring();
    R->check_same(c);
    if (R->kind() == RingKind::product && !R->finite())
        return is_adequate(c.left(), limit) && is_adequate(c.right(), limit);
    if (R->kind() == RingKind::integers || R->kind() == RingKind::poly) {
        if (R->is_zero(c))
            throw precondition_error("adequacy of 0 is undefined over " +
                                     R->spec_string());
        // unique factorization: stripping the a-part of c always yields a
        // valid pair, for every a
        return true;
    }
    if (!R->finite())
        throw precondition_error("adequacy is not decidable over " + R->spec_string());
    Int size = R->size();
    if (size > limit)
        throw precondition_error("ring of size " + size.str() +
                                 " exceeds the enumeration limit " +
                                 std::to_string(limit));
    long long n = static_cast<long long>(size);
    std::vector<Elem> elems;
    elems.reserve(n);
    for (long long i = 0; i < n; ++i) elems.push_back(R->element_at(Int(i)));
    for (const Elem& a : elems) {
        bool found = false;
        for (const Elem& r : elems) {
            if (!R->is_unit(R->gcdex(r, a).g)) continue;
            for (const Elem& s : elems) {
                if (r * s != c) continue;
                bool ok = true;
                for (const Elem& d : elems) {
                    if (R->is_unit(d)) continue;
                    if (!R->divide_exact(s, d)) continue;  // d must divide s
                    if (R->is_unit(R->gcdex(d, a).g)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace bezred
