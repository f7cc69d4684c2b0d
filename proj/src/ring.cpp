#include "bezred/ring.hpp"

#include <algorithm>
#include <tuple>

#include <boost/multiprecision/cpp_int.hpp>

namespace bezred {
namespace {

Int iabs(const Int& a) { return a < 0 ? Int(-a) : a; }

Int igcd(Int a, Int b) {
    a = iabs(a);
    b = iabs(b);
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

// ax + by = g, g >= 0.
std::tuple<Int, Int, Int> ixgcd(const Int& a, const Int& b) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
        old_t -= q * t;
        std::swap(old_t, t);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

Int imod(const Int& a, const Int& n) {
    Int r = a % n;
    if (r < 0) r += n;
    return r;
}

// Inverse of a modulo n (gcd(a, n) must be 1).
Int inv_mod(const Int& a, const Int& n) {
    if (n == 1) return 0;
    auto [g, x, y] = ixgcd(imod(a, n), n);
    if (g != 1) throw internal_error("inv_mod: argument is not invertible");
    return imod(x, n);
}

bool is_prime_small(const Int& n) {
    if (n < 2) return false;
    if (n > Int(1000000000000LL)) return false;  // stay cheap; callers treat this as "not known prime"
    if (n % 2 == 0) return n == 2;
    for (Int d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// ---- polynomial arithmetic over GF(p), coefficients low-to-high in [0, p) ----

using Poly = std::vector<Int>;

void pnorm(Poly& a, const Int& p) {
    for (auto& c : a) c = imod(c, p);
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int pdeg(const Poly& a) { return static_cast<int>(a.size()) - 1; }  // deg(0) = -1

Poly padd(const Poly& a, const Poly& b, const Int& p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    pnorm(r, p);
    return r;
}

Poly pneg(const Poly& a, const Int& p) {
    Poly r = a;
    for (auto& c : r) c = imod(-c, p);
    pnorm(r, p);
    return r;
}

Poly psub(const Poly& a, const Poly& b, const Int& p) { return padd(a, pneg(b, p), p); }

Poly pmul(const Poly& a, const Poly& b, const Int& p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    pnorm(r, p);
    return r;
}

Poly pscale(const Poly& a, const Int& k, const Int& p) {
    Poly r = a;
    for (auto& c : r) c = imod(c * k, p);
    pnorm(r, p);
    return r;
}

Poly pconst(const Int& k, const Int& p) {
    Poly r{imod(k, p)};
    pnorm(r, p);
    return r;
}

// Division with remainder; b must be nonzero.
std::pair<Poly, Poly> pdivmod(const Poly& a, const Poly& b, const Int& p) {
    if (b.empty()) throw internal_error("pdivmod: division by zero polynomial");
    Poly r = a, q;
    Int lead_inv = inv_mod(b.back(), p);
    while (pdeg(r) >= pdeg(b)) {
        int shift = pdeg(r) - pdeg(b);
        Int c = imod(r.back() * lead_inv, p);
        if ((int)q.size() < shift + 1) q.resize(shift + 1, 0);
        q[shift] = imod(q[shift] + c, p);
        for (size_t i = 0; i < b.size(); ++i)
            r[i + shift] = imod(r[i + shift] - c * b[i], p);
        pnorm(r, p);
        if (r.empty()) break;
    }
    pnorm(q, p);
    return {q, r};
}

Poly pmod(const Poly& a, const Poly& f, const Int& p) {
    if (f.empty()) return a;
    return pdivmod(a, f, p).second;
}

Poly pmonic(const Poly& a, const Int& p) {
    if (a.empty()) return a;
    return pscale(a, inv_mod(a.back(), p), p);
}

// Monic gcd.
Poly pgcd(Poly a, Poly b, const Int& p) {
    while (!b.empty()) {
        Poly r = pdivmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return pmonic(a, p);
}

// a*u + b*v = g with g monic (or zero when a = b = 0).
std::tuple<Poly, Poly, Poly> pxgcd(const Poly& a, const Poly& b, const Int& p) {
    Poly old_r = a, r = b;
    Poly old_s = pconst(1, p), s;
    Poly old_t, t = pconst(1, p);
    while (!r.empty()) {
        auto [q, rem] = pdivmod(old_r, r, p);
        old_r = rem;
        std::swap(old_r, r);
        old_s = psub(old_s, pmul(q, s, p), p);
        std::swap(old_s, s);
        old_t = psub(old_t, pmul(q, t, p), p);
        std::swap(old_t, t);
    }
    if (!old_r.empty()) {
        Int li = inv_mod(old_r.back(), p);
        old_r = pscale(old_r, li, p);
        old_s = pscale(old_s, li, p);
        old_t = pscale(old_t, li, p);
    }
    return {old_r, old_s, old_t};
}

std::string poly_to_string(const Poly& a) {
    if (a.empty()) return "[0]";
    std::string s = "[";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += a[i].str();
    }
    s += "]";
    return s;
}

// ---------------------------------------------------------------------------

class IntegerRing final : public Ring {
  public:
    IntegerRing() : Ring(RingKind::integers, "Z", false, true, Tri::no) {}

    Elem from_int(const Int& k) const override { return Elem::of_int(shared_from_this(), k); }

    Elem add(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        return from_int(a.as_int() + b.as_int());
    }
    Elem sub(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        return from_int(a.as_int() - b.as_int());
    }
    Elem mul(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        return from_int(a.as_int() * b.as_int());
    }
    Elem neg(const Elem& a) const override {
        check_same(a);
        return from_int(-a.as_int());
    }

    std::optional<Elem> unit_inverse(const Elem& a) const override {
        check_same(a);
        if (a.as_int() == 1 || a.as_int() == -1) return a;
        return std::nullopt;
    }

    BezoutData gcdex(const Elem& ea, const Elem& eb) const override;

    std::optional<Elem> divide_exact(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        if (b.as_int() == 0) {
            if (a.as_int() == 0) return from_int(0);
            return std::nullopt;
        }
        if (a.as_int() % b.as_int() != 0) return std::nullopt;
        return from_int(a.as_int() / b.as_int());
    }

    std::pair<Elem, Elem> canonical_associate(const Elem& a) const override {
        check_same(a);
        if (a.as_int() < 0) return {from_int(-1), from_int(-a.as_int())};
        return {from_int(1), a};
    }

    Elem element_at(const Int&) const override {
        throw precondition_error("infinite-ring: Z is not enumerable");
    }
    Int index_of(const Elem&) const override {
        throw precondition_error("infinite-ring: Z is not enumerable");
    }
    Elem search_at(const Int& index) const override {
        // 0, 1, -1, 2, -2, ...
        if (index == 0) return from_int(0);
        Int half = (index + 1) / 2;
        return from_int(index % 2 == 1 ? half : Int(-half));
    }

    std::optional<std::pair<Elem, Elem>> divmod(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        if (b.as_int() == 0) return std::nullopt;
        Int q = a.as_int() / b.as_int();
        Int r = a.as_int() - q * b.as_int();
        return std::make_pair(from_int(q), from_int(r));
    }

    std::string format(const Elem& a) const override {
        check_same(a);
        return a.as_int().str();
    }
};

void verify_bezout(const Ring& R, const Elem& a, const Elem& b, const BezoutData& d) {
    if (R.add(R.mul(a, d.x), R.mul(b, d.y)) != d.g ||
        R.mul(d.g, d.a_bar) != a || R.mul(d.g, d.b_bar) != b ||
        !R.is_one(R.add(R.mul(d.a_bar, d.x), R.mul(d.b_bar, d.y))))
        throw internal_error("gcdex: invariant verification failed in " + R.spec_string());
}

BezoutData IntegerRing::gcdex(const Elem& ea, const Elem& eb) const {
    check_same(ea, eb);
    const Int &a = ea.as_int(), &b = eb.as_int();
    BezoutData d;
    if (a == 0 && b == 0) {
        d = {from_int(0), from_int(1), from_int(0), from_int(1), from_int(0)};
    } else {
        auto [g, x, y] = ixgcd(a, b);
        d = {from_int(g), from_int(x), from_int(y), from_int(a / g), from_int(b / g)};
    }
    verify_bezout(*this, ea, eb, d);
    return d;
}

// ---------------------------------------------------------------------------

class ModularRing final : public Ring {
  public:
    explicit ModularRing(const Int& n)
        : Ring(RingKind::modular, "Zmod(" + n.str() + ")", true, is_prime_small(n), Tri::yes),
          n_(n) {
        if (n < 1) throw precondition_error("Zmod modulus must be positive");
        size_ = n;
    }

    const Int& modulus() const { return n_; }

    Elem from_int(const Int& k) const override {
        return Elem::of_int(shared_from_this(), imod(k, n_));
    }

    Elem add(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        return from_int(a.as_int() + b.as_int());
    }
    Elem sub(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        return from_int(a.as_int() - b.as_int());
    }
    Elem mul(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        return from_int(a.as_int() * b.as_int());
    }
    Elem neg(const Elem& a) const override {
        check_same(a);
        return from_int(-a.as_int());
    }

    std::optional<Elem> unit_inverse(const Elem& a) const override {
        check_same(a);
        auto [g, x, y] = ixgcd(a.as_int(), n_);
        if (g != 1) return std::nullopt;
        return from_int(x);
    }

    BezoutData gcdex(const Elem& ea, const Elem& eb) const override {
        check_same(ea, eb);
        const Int &a = ea.as_int(), &b = eb.as_int();
        BezoutData d;
        if (a == 0 && b == 0) {
            d = {from_int(0), from_int(1), from_int(0), from_int(1), from_int(0)};
            verify_bezout(*this, ea, eb, d);
            return d;
        }
        // Ideal aR + bR is generated by g0 = gcd(a, b, n); the cofactor row
        // (a/g0, b/g0) is unimodular modulo n/g0 and is repaired to a row
        // unimodular modulo n by shifting the first cofactor along n/g0.
        Int g0 = igcd(igcd(a, b), n_);
        Int a0 = a / g0, b0 = b / g0, m = n_ / g0;
        Int abar = a0;
        bool found = false;
        for (Int s = 0; s <= n_; ++s) {
            abar = imod(a0 + s * m, n_);
            if (igcd(igcd(abar, b0), n_) == 1) {
                found = true;
                break;
            }
        }
        if (!found) throw internal_error("gcdex: cofactor repair failed in " + spec_string());
        auto [g1, u1, v1] = ixgcd(abar, b0);
        auto [g2, u2, v2] = ixgcd(g1, n_);
        if (g2 != 1) throw internal_error("gcdex: repaired row not unimodular");
        Int x = imod(u1 * u2, n_), y = imod(v1 * u2, n_);
        d = {from_int(g0), from_int(x), from_int(y), from_int(abar), from_int(imod(b0, n_))};
        verify_bezout(*this, ea, eb, d);
        return d;
    }

    std::optional<Elem> divide_exact(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        Int d = igcd(b.as_int(), n_);
        if (d == 0) d = n_;  // n == 1 edge
        if (a.as_int() % d != 0) return std::nullopt;
        Int nd = n_ / d;
        if (nd == 1) return from_int(0);
        Int q = imod((a.as_int() / d) * inv_mod(b.as_int() / d, nd), nd);
        return from_int(q);
    }

    std::pair<Elem, Elem> canonical_associate(const Elem& a) const override {
        check_same(a);
        if (a.as_int() == 0) return {one(), zero()};
        Int c = igcd(a.as_int(), n_);
        Int m = n_ / c;
        Int u0 = inv_mod(imod(a.as_int() / c, m), m);
        for (Int s = 0; s <= n_; ++s) {
            Int u = imod(u0 + s * m, n_);
            if (igcd(u, n_) == 1) {
                if (imod(u * a.as_int(), n_) != c)
                    throw internal_error("canonical_associate: unit does not map to associate");
                return {from_int(u), from_int(c)};
            }
        }
        throw internal_error("canonical_associate: no unit found in " + spec_string());
    }

    Elem element_at(const Int& index) const override {
        if (index < 0 || index >= n_) throw precondition_error("element index out of range");
        return from_int(index);
    }
    Int index_of(const Elem& a) const override {
        check_same(a);
        return a.as_int();
    }
    Elem search_at(const Int& index) const override { return from_int(imod(index, n_)); }

    std::string format(const Elem& a) const override {
        check_same(a);
        return a.as_int().str();
    }

  private:
    Int n_;
};

// ---------------------------------------------------------------------------

class PolyRing final : public Ring {
  public:
    explicit PolyRing(const Int& p)
        : Ring(RingKind::poly, "GF(" + p.str() + ")[x]", false, true, Tri::no), p_(p) {
        if (!is_prime_small(p)) throw precondition_error("GF(p)[x] requires a prime p");
    }

    const Int& characteristic() const { return p_; }

    Elem of(Poly c) const {
        pnorm(c, p_);
        return Elem::of_coeffs(shared_from_this(), std::move(c));
    }
    Elem from_int(const Int& k) const override { return of(pconst(k, p_)); }

    Elem add(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        return of(padd(a.as_coeffs(), b.as_coeffs(), p_));
    }
    Elem sub(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        return of(psub(a.as_coeffs(), b.as_coeffs(), p_));
    }
    Elem mul(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        return of(pmul(a.as_coeffs(), b.as_coeffs(), p_));
    }
    Elem neg(const Elem& a) const override {
        check_same(a);
        return of(pneg(a.as_coeffs(), p_));
    }

    std::optional<Elem> unit_inverse(const Elem& a) const override {
        check_same(a);
        if (pdeg(a.as_coeffs()) != 0) return std::nullopt;
        return of(pconst(inv_mod(a.as_coeffs()[0], p_), p_));
    }

    BezoutData gcdex(const Elem& ea, const Elem& eb) const override {
        check_same(ea, eb);
        const Poly &a = ea.as_coeffs(), &b = eb.as_coeffs();
        BezoutData d;
        if (a.empty() && b.empty()) {
            d = {zero(), one(), zero(), one(), zero()};
        } else {
            auto [g, u, v] = pxgcd(a, b, p_);
            d = {of(g), of(u), of(v), of(pdivmod(a, g, p_).first), of(pdivmod(b, g, p_).first)};
        }
        verify_bezout(*this, ea, eb, d);
        return d;
    }

    std::optional<Elem> divide_exact(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        if (b.as_coeffs().empty()) {
            if (a.as_coeffs().empty()) return zero();
            return std::nullopt;
        }
        auto [q, r] = pdivmod(a.as_coeffs(), b.as_coeffs(), p_);
        if (!r.empty()) return std::nullopt;
        return of(q);
    }

    std::pair<Elem, Elem> canonical_associate(const Elem& a) const override {
        check_same(a);
        if (a.as_coeffs().empty()) return {one(), zero()};
        Int li = inv_mod(a.as_coeffs().back(), p_);
        return {of(pconst(li, p_)), of(pmonic(a.as_coeffs(), p_))};
    }

    Elem element_at(const Int&) const override {
        throw precondition_error("infinite-ring: " + spec_string() + " is not enumerable");
    }
    Int index_of(const Elem&) const override {
        throw precondition_error("infinite-ring: " + spec_string() + " is not enumerable");
    }
    Elem search_at(const Int& index) const override {
        // Base-p digits of the index, low-to-high; orders by degree then
        // lexicographically from the leading coefficient down.
        Poly c;
        Int i = index;
        while (i > 0) {
            c.push_back(i % p_);
            i /= p_;
        }
        return of(std::move(c));
    }

    std::optional<std::pair<Elem, Elem>> divmod(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        if (b.as_coeffs().empty()) return std::nullopt;
        auto [q, r] = pdivmod(a.as_coeffs(), b.as_coeffs(), p_);
        return std::make_pair(of(q), of(r));
    }

    std::string format(const Elem& a) const override {
        check_same(a);
        return poly_to_string(a.as_coeffs());
    }

  private:
    Int p_;
};

// ---------------------------------------------------------------------------

Poly norm_monic(Poly f, const Int& p) {
    pnorm(f, p);
    if (f.empty()) throw precondition_error("infinite-quotient: modulus must be nonzero");
    return pmonic(f, p);
}

class PolyQuotRing final : public Ring {
  public:
    PolyQuotRing(const Int& p, Poly f)
        : Ring(RingKind::poly_quot,
               "Quot(GF(" + p.str() + ")[x]," + poly_to_string(norm_monic(f, p)) + ")",
               true, false, Tri::yes),
          p_(p) {
        if (!is_prime_small(p)) throw precondition_error("GF(p)[x] requires a prime p");
        f_ = norm_monic(std::move(f), p_);
        deg_ = pdeg(f_);
        Int sz = 1;
        for (int i = 0; i < deg_; ++i) sz *= p_;
        size_ = sz;
        domain_ = deg_ >= 1 && irreducible();
    }

    const Int& characteristic() const { return p_; }
    const Poly& modulus() const { return f_; }

    Elem of(Poly c) const {
        pnorm(c, p_);
        return Elem::of_coeffs(shared_from_this(), pmod(c, f_, p_));
    }
    Elem from_int(const Int& k) const override { return of(pconst(k, p_)); }

    Elem add(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        return of(padd(a.as_coeffs(), b.as_coeffs(), p_));
    }
    Elem sub(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        return of(psub(a.as_coeffs(), b.as_coeffs(), p_));
    }
    Elem mul(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        return of(pmul(a.as_coeffs(), b.as_coeffs(), p_));
    }
    Elem neg(const Elem& a) const override {
        check_same(a);
        return of(pneg(a.as_coeffs(), p_));
    }

    std::optional<Elem> unit_inverse(const Elem& a) const override {
        check_same(a);
        auto [g, u, v] = pxgcd(a.as_coeffs(), f_, p_);
        if (pdeg(g) != 0) return std::nullopt;
        return of(u);
    }

    BezoutData gcdex(const Elem& ea, const Elem& eb) const override {
        check_same(ea, eb);
        const Poly &a = ea.as_coeffs(), &b = eb.as_coeffs();
        BezoutData d;
        if (a.empty() && b.empty()) {
            d = {zero(), one(), zero(), one(), zero()};
            verify_bezout(*this, ea, eb, d);
            return d;
        }
        // Mirror of the Zmod construction with monic gcds.
        Poly g0 = pgcd(pgcd(a, b, p_), f_, p_);
        Poly a0 = pdivmod(a, g0, p_).first;
        Poly b0 = pdivmod(b, g0, p_).first;
        Poly m = pdivmod(f_, g0, p_).first;
        Poly abar;
        bool found = false;
        Int bound = size_ * p_ + 1;
        for (Int s = 0; s < bound; ++s) {
            Poly sp;
            Int i = s;
            while (i > 0) {
                sp.push_back(i % p_);
                i /= p_;
            }
            abar = pmod(padd(a0, pmul(sp, m, p_), p_), f_, p_);
            if (pdeg(pgcd(pgcd(abar, b0, p_), f_, p_)) == 0) {
                found = true;
                break;
            }
        }
        if (!found) throw internal_error("gcdex: cofactor repair failed in " + spec_string());
        auto [g1, u1, v1] = pxgcd(abar, b0, p_);
        auto [g2, u2, v2] = pxgcd(g1, f_, p_);
        if (pdeg(g2) != 0) throw internal_error("gcdex: repaired row not unimodular");
        d = {of(g0), of(pmul(u1, u2, p_)), of(pmul(v1, u2, p_)), of(abar), of(b0)};
        verify_bezout(*this, ea, eb, d);
        return d;
    }

    std::optional<Elem> divide_exact(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        Poly d = b.as_coeffs().empty() ? f_ : pgcd(b.as_coeffs(), f_, p_);
        auto [aq, ar] = d.empty() ? std::make_pair(Poly{}, a.as_coeffs())
                                  : pdivmod(a.as_coeffs(), d, p_);
        if (!ar.empty()) return std::nullopt;
        Poly fd = pdivmod(f_, d, p_).first;
        if (pdeg(fd) == 0) return zero();
        Poly bd = b.as_coeffs().empty() ? Poly{} : pdivmod(b.as_coeffs(), d, p_).first;
        auto [g, u, v] = pxgcd(pmod(bd, fd, p_), fd, p_);
        if (pdeg(g) != 0) throw internal_error("divide_exact: cofactor not invertible");
        return of(pmod(pmul(aq, u, p_), fd, p_));
    }

    std::pair<Elem, Elem> canonical_associate(const Elem& a) const override {
        check_same(a);
        if (a.as_coeffs().empty()) return {one(), zero()};
        Poly c = pgcd(a.as_coeffs(), f_, p_);
        Poly m = pdivmod(f_, c, p_).first;
        Poly xbar = pdivmod(a.as_coeffs(), c, p_).first;
        auto [g, u0, v0] = pxgcd(pmod(xbar, m, p_), m, p_);
        if (pdeg(g) != 0) throw internal_error("canonical_associate: cofactor not invertible");
        Int bound = size_ * p_ + 1;
        for (Int s = 0; s < bound; ++s) {
            Poly sp;
            Int i = s;
            while (i > 0) {
                sp.push_back(i % p_);
                i /= p_;
            }
            Poly u = pmod(padd(u0, pmul(sp, m, p_), p_), f_, p_);
            if (pdeg(pgcd(u, f_, p_)) == 0) {
                if (pmod(pmul(u, a.as_coeffs(), p_), f_, p_) != c)
                    throw internal_error("canonical_associate: unit does not map to associate");
                return {of(u), of(c)};
            }
        }
        throw internal_error("canonical_associate: no unit found in " + spec_string());
    }

    Elem element_at(const Int& index) const override {
        if (index < 0 || index >= size_) throw precondition_error("element index out of range");
        Poly c;
        Int i = index;
        while (i > 0) {
            c.push_back(i % p_);
            i /= p_;
        }
        return of(std::move(c));
    }
    Int index_of(const Elem& a) const override {
        check_same(a);
        Int idx = 0, pw = 1;
        for (const auto& c : a.as_coeffs()) {
            idx += c * pw;
            pw *= p_;
        }
        return idx;
    }
    Elem search_at(const Int& index) const override { return element_at(imod(index, size_)); }

    std::string format(const Elem& a) const override {
        check_same(a);
        return poly_to_string(a.as_coeffs());
    }

  private:
    bool irreducible() const {
        if (deg_ == 1) return true;
        // trial division by monic polynomials of degree <= deg/2
        Int half_count = 1;
        for (int i = 0; i < deg_ / 2; ++i) half_count *= p_;
        if (half_count > 1000000) return false;
        for (int d = 1; d <= deg_ / 2; ++d) {
            Int count = 1;
            for (int i = 0; i < d; ++i) count *= p_;
            for (Int idx = 0; idx < count; ++idx) {
                Poly cand;
                Int i = idx;
                for (int j = 0; j < d; ++j) {
                    cand.push_back(i % p_);
                    i /= p_;
                }
                cand.push_back(1);  // monic of degree d
                if (pdivmod(f_, cand, p_).second.empty()) return false;
            }
        }
        return true;
    }

    Int p_;
    Poly f_;
    int deg_ = 0;
};

// ---------------------------------------------------------------------------

Tri combine_sr1(Tri a, Tri b) {
    if (a == Tri::no || b == Tri::no) return Tri::no;
    if (a == Tri::yes && b == Tri::yes) return Tri::yes;
    return Tri::unknown;
}

class ProductRing final : public Ring {
  public:
    ProductRing(RingPtr l, RingPtr r)
        : Ring(RingKind::product, "Prod(" + l->spec_string() + "," + r->spec_string() + ")",
               l->finite() && r->finite(), false, combine_sr1(l->has_sr1(), r->has_sr1())),
          l_(std::move(l)), r_(std::move(r)) {
        if (finite_) size_ = l_->size() * r_->size();
    }

    const RingPtr& left_ring() const { return l_; }
    const RingPtr& right_ring() const { return r_; }

    Elem of(Elem a, Elem b) const {
        return Elem::of_pair(shared_from_this(), std::move(a), std::move(b));
    }
    Elem from_int(const Int& k) const override { return of(l_->from_int(k), r_->from_int(k)); }

    Elem add(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        return of(l_->add(a.left(), b.left()), r_->add(a.right(), b.right()));
    }
    Elem sub(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        return of(l_->sub(a.left(), b.left()), r_->sub(a.right(), b.right()));
    }
    Elem mul(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        return of(l_->mul(a.left(), b.left()), r_->mul(a.right(), b.right()));
    }
    Elem neg(const Elem& a) const override {
        check_same(a);
        return of(l_->neg(a.left()), r_->neg(a.right()));
    }

    std::optional<Elem> unit_inverse(const Elem& a) const override {
        check_same(a);
        auto il = l_->unit_inverse(a.left());
        if (!il) return std::nullopt;
        auto ir = r_->unit_inverse(a.right());
        if (!ir) return std::nullopt;
        return of(*il, *ir);
    }

    BezoutData gcdex(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        BezoutData dl = l_->gcdex(a.left(), b.left());
        BezoutData dr = r_->gcdex(a.right(), b.right());
        BezoutData d{of(dl.g, dr.g), of(dl.x, dr.x), of(dl.y, dr.y),
                     of(dl.a_bar, dr.a_bar), of(dl.b_bar, dr.b_bar)};
        verify_bezout(*this, a, b, d);
        return d;
    }

    std::optional<Elem> divide_exact(const Elem& a, const Elem& b) const override {
        check_same(a, b);
        auto ql = l_->divide_exact(a.left(), b.left());
        if (!ql) return std::nullopt;
        auto qr = r_->divide_exact(a.right(), b.right());
        if (!qr) return std::nullopt;
        return of(*ql, *qr);
    }

    std::pair<Elem, Elem> canonical_associate(const Elem& a) const override {
        check_same(a);
        auto [ul, cl] = l_->canonical_associate(a.left());
        auto [ur, cr] = r_->canonical_associate(a.right());
        return {of(ul, ur), of(cl, cr)};
    }

    Elem element_at(const Int& index) const override {
        if (!finite_) throw precondition_error("infinite-ring: " + spec_string());
        if (index < 0 || index >= size_) throw precondition_error("element index out of range");
        Int szr = r_->size();
        return of(l_->element_at(index / szr), r_->element_at(index % szr));
    }
    Int index_of(const Elem& a) const override {
        check_same(a);
        if (!finite_) throw precondition_error("infinite-ring: " + spec_string());
        return l_->index_of(a.left()) * r_->size() + r_->index_of(a.right());
    }
    Elem search_at(const Int& index) const override {
        if (finite_) return element_at(imod(index, size_));
        if (r_->finite()) {
            Int szr = r_->size();
            return of(l_->search_at(index / szr), r_->element_at(index % szr));
        }
        if (l_->finite()) {
            Int szl = l_->size();
            return of(l_->element_at(index % szl), r_->search_at(index / szl));
        }
        // Cantor diagonal across two infinite components.
        Int d = (boost::multiprecision::sqrt(Int(8) * index + 1) - 1) / 2;
        while (d * (d + 1) / 2 > index) --d;
        while ((d + 1) * (d + 2) / 2 <= index) ++d;
        Int rr = index - d * (d + 1) / 2;
        return of(l_->search_at(rr), r_->search_at(d - rr));
    }

    std::string format(const Elem& a) const override {
        check_same(a);
        return "(" + l_->format(a.left()) + "," + r_->format(a.right()) + ")";
    }

  private:
    RingPtr l_, r_;
};

}  // namespace

// --------------------------------------------------------------------------

const Int& Ring::size() const {
    if (!finite_) throw precondition_error("infinite-ring: " + spec_string() + " has no size");
    return size_;
}

void Ring::check_same(const Elem& a) const {
    if (!a.valid()) throw internal_error("uninitialized element");
    if (!same(*a.ring()))
        throw precondition_error("ring mismatch: element of " + a.ring()->spec_string() +
                                 " used in " + spec_string());
}

void Ring::check_same(const Elem& a, const Elem& b) const {
    check_same(a);
    check_same(b);
}

RingPtr integers() {
    static RingPtr r = std::make_shared<IntegerRing>();
    return r;
}

RingPtr zmod(const Int& n) { return std::make_shared<ModularRing>(n); }

RingPtr poly_over_gf(const Int& p) { return std::make_shared<PolyRing>(p); }

RingPtr poly_quot(const Int& p, std::vector<Int> modulus) {
    return std::make_shared<PolyQuotRing>(p, std::move(modulus));
}

RingPtr product(RingPtr left, RingPtr right) {
    return std::make_shared<ProductRing>(std::move(left), std::move(right));
}

// --------------------------------------------------------------------------

Elem QuotientRing::project(const Elem& x) const {
    base_->check_same(x);
    switch (mode_) {
        case Mode::int_residue:
            return ring_->from_int(x.as_int());
        case Mode::poly_residue: {
            auto* q = dynamic_cast<const PolyQuotRing*>(ring_.get());
            if (!q) throw internal_error("quotient projection: ring shape mismatch");
            return q->of(x.as_coeffs());
        }
        case Mode::pairwise:
            return Elem::of_pair(ring_, left_->project(x.left()), right_->project(x.right()));
    }
    throw internal_error("quotient projection: bad mode");
}

Elem QuotientRing::lift(const Elem& q) const {
    ring_->check_same(q);
    switch (mode_) {
        case Mode::int_residue:
            return base_->from_int(q.as_int());
        case Mode::poly_residue: {
            if (base_->kind() == RingKind::poly) {
                auto* b = dynamic_cast<const PolyRing*>(base_.get());
                return b->of(q.as_coeffs());
            }
            auto* b = dynamic_cast<const PolyQuotRing*>(base_.get());
            return b->of(q.as_coeffs());
        }
        case Mode::pairwise:
            return Elem::of_pair(base_, left_->lift(q.left()), right_->lift(q.right()));
    }
    throw internal_error("quotient lift: bad mode");
}

QuotientRing quotient_ring(const RingPtr& base, const Elem& a) {
    base->check_same(a);
    QuotientRing q;
    q.base_ = base;
    switch (base->kind()) {
        case RingKind::integers: {
            if (a.as_int() == 0)
                throw precondition_error("infinite-quotient: Z modulo 0 is not finite");
            q.mode_ = QuotientRing::Mode::int_residue;
            q.n_ = iabs(a.as_int());
            q.ring_ = zmod(q.n_);
            return q;
        }
        case RingKind::modular: {
            auto* m = dynamic_cast<const ModularRing*>(base.get());
            Int g = igcd(a.as_int(), m->modulus());
            if (g == 0) g = m->modulus();
            q.mode_ = QuotientRing::Mode::int_residue;
            q.n_ = g;
            q.ring_ = zmod(g);
            return q;
        }
        case RingKind::poly: {
            auto* pr = dynamic_cast<const PolyRing*>(base.get());
            if (a.as_coeffs().empty())
                throw precondition_error("infinite-quotient: GF(p)[x] modulo 0 is not finite");
            q.mode_ = QuotientRing::Mode::poly_residue;
            q.p_ = pr->characteristic();
            q.f_ = pmonic(a.as_coeffs(), q.p_);
            q.ring_ = poly_quot(q.p_, q.f_);
            return q;
        }
        case RingKind::poly_quot: {
            auto* pq = dynamic_cast<const PolyQuotRing*>(base.get());
            q.mode_ = QuotientRing::Mode::poly_residue;
            q.p_ = pq->characteristic();
            // Flattened quotient-of-quotient: the induced ideal is generated
            // by gcd(lift, modulus).
            q.f_ = a.as_coeffs().empty() ? pq->modulus()
                                         : pgcd(a.as_coeffs(), pq->modulus(), q.p_);
            q.ring_ = poly_quot(q.p_, q.f_);
            return q;
        }
        case RingKind::product: {
            auto* pr = dynamic_cast<const ProductRing*>(base.get());
            q.mode_ = QuotientRing::Mode::pairwise;
            q.left_ = std::make_shared<QuotientRing>(
                quotient_ring(pr->left_ring(), a.left()));
            q.right_ = std::make_shared<QuotientRing>(
                quotient_ring(pr->right_ring(), a.right()));
            q.ring_ = product(q.left_->ring(), q.right_->ring());
            return q;
        }
    }
    throw internal_error("quotient_ring: unknown ring kind");
}

}  // namespace bezred
