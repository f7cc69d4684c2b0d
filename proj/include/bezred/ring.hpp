#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bezred {

using Int = boost::multiprecision::cpp_int;

// Error taxonomy; the CLI maps these onto exit codes.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct parse_error : error {
    using error::error;
};
struct precondition_error : error {
    using error::error;
};
struct witness_not_found : error {
    using error::error;
};
struct internal_error : error {
    using error::error;
};

enum class Tri { yes, no, unknown };
enum class RingKind { integers, modular, poly, poly_quot, product };

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Exact element of a concrete ring. Always kept in canonical form:
/// residues in [0, n), polynomials without trailing zero coefficients,
/// product components canonical componentwise.
class Elem {
  public:
    Elem() = default;

    const RingPtr& ring() const { return ring_; }
    bool valid() const { return ring_ != nullptr; }

    const Int& as_int() const { return std::get<Int>(v_); }
    const std::vector<Int>& as_coeffs() const { return std::get<std::vector<Int>>(v_); }
    const Elem& left() const { return std::get<std::vector<Elem>>(v_)[0]; }
    const Elem& right() const { return std::get<std::vector<Elem>>(v_)[1]; }

    static Elem of_int(RingPtr r, Int v) {
        Elem e;
        e.ring_ = std::move(r);
        e.v_ = std::move(v);
        return e;
    }
    static Elem of_coeffs(RingPtr r, std::vector<Int> c) {
        Elem e;
        e.ring_ = std::move(r);
        e.v_ = std::move(c);
        return e;
    }
    static Elem of_pair(RingPtr r, Elem l, Elem rr) {
        Elem e;
        e.ring_ = std::move(r);
        std::vector<Elem> p;
        p.push_back(std::move(l));
        p.push_back(std::move(rr));
        e.v_ = std::move(p);
        return e;
    }

    friend bool operator==(const Elem& a, const Elem& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

  private:
    RingPtr ring_;
    std::variant<Int, std::vector<Int>, std::vector<Elem>> v_;
};

/// Full extended-gcd data: g generates aR + bR and the cofactors satisfy
/// a = g*a_bar, b = g*b_bar together with the unimodularity identity
/// a_bar*x + b_bar*y = 1 (exactly, also in the presence of zero divisors).
struct BezoutData {
    Elem g, x, y, a_bar, b_bar;
};

/// A concrete computable commutative ring with identity. Implementations are
/// immutable after construction; every operation is a pure function.
class Ring : public std::enable_shared_from_this<Ring> {
  public:
    virtual ~Ring() = default;

    RingKind kind() const { return kind_; }
    /// Re-parsable spec string, e.g. "Zmod(6)" or "Prod(Z,GF(2)[x])".
    const std::string& spec_string() const { return spec_; }
    bool same(const Ring& o) const { return this == &o || spec_ == o.spec_; }

    bool finite() const { return finite_; }
    bool is_domain() const { return domain_; }
    Tri has_sr1() const { return sr1_; }
    /// Number of elements; throws for infinite rings.
    const Int& size() const;

    Elem zero() const { return from_int(0); }
    Elem one() const { return from_int(1); }
    virtual Elem from_int(const Int& k) const = 0;

    virtual Elem add(const Elem& a, const Elem& b) const = 0;
    virtual Elem sub(const Elem& a, const Elem& b) const = 0;
    virtual Elem mul(const Elem& a, const Elem& b) const = 0;
    virtual Elem neg(const Elem& a) const = 0;

    bool is_zero(const Elem& a) const { return a == zero(); }
    bool is_one(const Elem& a) const { return a == one(); }

    /// Inverse when a is a unit, absent otherwise.
    virtual std::optional<Elem> unit_inverse(const Elem& a) const = 0;
    bool is_unit(const Elem& a) const { return unit_inverse(a).has_value(); }

    /// Extended gcd with verified invariants; g is the canonical generator
    /// of aR + bR.
    virtual BezoutData gcdex(const Elem& a, const Elem& b) const = 0;

    /// Some q with b*q = a when a lies in bR; the enumeration-least q when
    /// several exist.
    virtual std::optional<Elem> divide_exact(const Elem& a, const Elem& b) const = 0;

    /// (u, c) with c = u*a, u a unit and c the canonical associate
    /// (nonnegative over Z, monic for polynomials, enumeration-least unit
    /// multiple on finite rings).
    virtual std::pair<Elem, Elem> canonical_associate(const Elem& a) const = 0;

    /// Deterministic total enumeration of a finite ring.
    virtual Elem element_at(const Int& index) const = 0;
    virtual Int index_of(const Elem& a) const = 0;

    /// Deterministic covering sequence usable for bounded searches; equals
    /// the enumeration order on finite rings.
    virtual Elem search_at(const Int& index) const = 0;

    /// Division with remainder for Euclidean rings (Z, GF(p)[x]).
    virtual std::optional<std::pair<Elem, Elem>> divmod(const Elem&, const Elem&) const {
        return std::nullopt;
    }

    virtual std::string format(const Elem& a) const = 0;

    void check_same(const Elem& a) const;
    void check_same(const Elem& a, const Elem& b) const;

  protected:
    Ring(RingKind k, std::string spec, bool finite, bool domain, Tri sr1)
        : kind_(k), spec_(std::move(spec)), finite_(finite), domain_(domain), sr1_(sr1) {}

    RingKind kind_;
    std::string spec_;
    bool finite_;
    bool domain_;
    Tri sr1_;
    Int size_ = 0;
};

// Ring factories.
RingPtr integers();
RingPtr zmod(const Int& n);                                  // n >= 1; n == 1 is the zero ring
RingPtr poly_over_gf(const Int& p);                          // p prime
RingPtr poly_quot(const Int& p, std::vector<Int> modulus);   // modulus normalized monic
RingPtr product(RingPtr left, RingPtr right);

// Operator sugar; both operands must live in the same ring.
inline Elem operator+(const Elem& a, const Elem& b) { return a.ring()->add(a, b); }
inline Elem operator-(const Elem& a, const Elem& b) { return a.ring()->sub(a, b); }
inline Elem operator*(const Elem& a, const Elem& b) { return a.ring()->mul(a, b); }
inline Elem operator-(const Elem& a) { return a.ring()->neg(a); }

/// R/aR together with the projection map (and canonical lift). The quotient
/// is always represented by one of the concrete ring families: quotients of
/// quotients are flattened to a single quotient of the base ring and
/// quotients of products are taken componentwise.
class QuotientRing {
  public:
    const RingPtr& base() const { return base_; }
    const RingPtr& ring() const { return ring_; }

    Elem project(const Elem& base_elem) const;
    Elem lift(const Elem& quot_elem) const;

  private:
    enum class Mode { int_residue, poly_residue, pairwise };

    friend QuotientRing quotient_ring(const RingPtr& base, const Elem& a);

    RingPtr base_;
    RingPtr ring_;
    Mode mode_ = Mode::int_residue;
    Int n_ = 0;                    // int_residue: modulus of the quotient
    std::vector<Int> f_;           // poly_residue: monic modulus
    Int p_ = 0;                    // poly_residue: characteristic
    std::shared_ptr<QuotientRing> left_, right_;  // pairwise
};

/// Build R/aR. Rejects infinite quotients (a = 0 over Z or GF(p)[x]).
QuotientRing quotient_ring(const RingPtr& base, const Elem& a);

}  // namespace bezred
