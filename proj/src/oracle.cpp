#include "bezred/oracle.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "bezred/reduction.hpp"
#include "bezred/stability.hpp"

namespace bezred {
namespace {

// ---- index tables --------------------------------------------------------
// Everything below works on element indices and raw ring arithmetic
// (add/mul/neg and enumeration); the library's gcd, division, witness and
// reduction routines are deliberately never called.

struct FiniteTable {
    RingPtr ring;
    int n = 0;
    std::vector<Elem> elems;
    std::vector<int> add, mul, neg;  // n*n, n*n, n
    std::vector<int> inv;            // n, -1 when not a unit
    std::vector<char> unit;          // n
    std::vector<int> units;          // indices of the units
    int zero = -1, one = -1;
    std::vector<uint64_t> unim;      // unim[a] bit b: aR + bR = R
    std::vector<uint64_t> mul_to;    // mul_to[c*n+t] bit k: c*k = t
    uint64_t full = 0;

    int a(int i, int j) const { return add[i * n + j]; }
    int m(int i, int j) const { return mul[i * n + j]; }
    bool divides(int d, int s) const { return mul_to[d * n + s] != 0; }
};

FiniteTable build_table(const RingPtr& R, long long max_size) {
    if (!R->finite())
        throw precondition_error("property oracle needs a finite ring, got " +
                                 R->spec_string());
    long long cap = std::min<long long>(max_size, 64);
    Int size = R->size();
    if (size > cap)
        throw precondition_error("ring too large: " + size.str() +
                                 " elements exceeds the oracle bound " +
                                 std::to_string(cap));
    FiniteTable t;
    t.ring = R;
    t.n = static_cast<int>(size);
    int n = t.n;
    t.full = n == 64 ? ~0ull : ((1ull << n) - 1);
    t.elems.reserve(n);
    for (int i = 0; i < n; ++i) t.elems.push_back(R->element_at(Int(i)));
    auto idx = [&](const Elem& e) { return static_cast<int>(R->index_of(e)); };
    t.zero = idx(R->zero());
    t.one = idx(R->one());
    t.add.resize(n * n);
    t.mul.resize(n * n);
    t.neg.resize(n);
    for (int i = 0; i < n; ++i) {
        t.neg[i] = idx(R->neg(t.elems[i]));
        for (int j = 0; j < n; ++j) {
            t.add[i * n + j] = idx(t.elems[i] + t.elems[j]);
            t.mul[i * n + j] = idx(t.elems[i] * t.elems[j]);
        }
    }
    t.inv.assign(n, -1);
    t.unit.assign(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (t.mul[i * n + j] == t.one) {
                t.inv[i] = j;
                t.unit[i] = 1;
                break;
            }
    for (int i = 0; i < n; ++i)
        if (t.unit[i]) t.units.push_back(i);
    t.mul_to.assign(n * n, 0);
    for (int c = 0; c < n; ++c)
        for (int k = 0; k < n; ++k)
            t.mul_to[c * n + t.mul[c * n + k]] |= 1ull << k;
    t.unim.assign(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            uint64_t ideal = 0;
            for (int x = 0; x < n; ++x) {
                int xa = t.mul[x * n + a];
                for (int y = 0; y < n; ++y)
                    ideal |= 1ull << t.add[xa * n + t.mul[y * n + b]];
            }
            if (ideal == t.full) {
                t.unim[a] |= 1ull << b;
                t.unim[b] |= 1ull << a;
            }
        }
    return t;
}

std::string pair_str(const FiniteTable& t, int a, int b) {
    return "(" + t.ring->format(t.elems[a]) + ", " + t.ring->format(t.elems[b]) + ")";
}

// every two-generated ideal has a single generator
std::optional<std::string> check_bezout(const FiniteTable& t) {
    int n = t.n;
    std::unordered_set<uint64_t> principal;
    for (int g = 0; g < n; ++g) {
        uint64_t mask = 0;
        for (int r = 0; r < n; ++r) mask |= 1ull << t.m(g, r);
        principal.insert(mask);
    }
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            uint64_t ideal = 0;
            for (int x = 0; x < n; ++x) {
                int xa = t.m(x, a);
                for (int y = 0; y < n; ++y) ideal |= 1ull << t.a(xa, t.m(y, b));
            }
            if (!principal.count(ideal))
                return "ideal " + pair_str(t, a, b) + " is not principal";
        }
    return std::nullopt;
}

// every (a, b) = c * (a1, b1) with (a1, b1) unimodular
std::optional<std::string> check_hermite(const FiniteTable& t) {
    int n = t.n;
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            bool found = false;
            for (int c = 0; c < n && !found; ++c) {
                uint64_t a1s = t.mul_to[c * n + a];
                uint64_t b1s = t.mul_to[c * n + b];
                if (!a1s || !b1s) continue;
                for (uint64_t rest = a1s; rest && !found; rest &= rest - 1) {
                    int a1 = __builtin_ctzll(rest);
                    if (t.unim[a1] & b1s) found = true;
                }
            }
            if (!found)
                return "row " + pair_str(t, a, b) +
                       " has no unimodular factorization";
        }
    return std::nullopt;
}

// every unimodular pair admits a unit shift
std::optional<std::string> check_sr1(const FiniteTable& t) {
    int n = t.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!(t.unim[a] >> b & 1)) continue;
            bool found = false;
            for (int y = 0; y < n && !found; ++y)
                if (t.unit[t.a(a, t.m(b, y))]) found = true;
            if (!found)
                return "unimodular pair " + pair_str(t, a, b) +
                       " has no unit shift";
        }
    return std::nullopt;
}

// every c splits as r*s against every a: (r, a) unimodular and no non-unit
// divisor of s unimodular with a
std::optional<std::string> check_all_adequate(const FiniteTable& t) {
    int n = t.n;
    // ok3[s][a]: no non-unit divisor of s is unimodular with a
    std::vector<char> ok3(n * n, 1);
    for (int s = 0; s < n; ++s)
        for (int d = 0; d < n; ++d) {
            if (t.unit[d] || !t.divides(d, s)) continue;
            for (int a = 0; a < n; ++a)
                if (t.unim[d] >> a & 1) ok3[s * n + a] = 0;
        }
    for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a) {
            bool found = false;
            for (int r = 0; r < n && !found; ++r) {
                if (!(t.unim[r] >> a & 1)) continue;
                for (int s = 0; s < n && !found; ++s)
                    if (t.m(r, s) == c && ok3[s * n + a]) found = true;
            }
            if (!found)
                return "element " + t.ring->format(t.elems[c]) +
                       " has no adequate pair against " + t.ring->format(t.elems[a]);
        }
    return std::nullopt;
}

std::optional<std::string> check_clean(const FiniteTable& t) {
    int n = t.n;
    std::vector<int> idem;
    for (int e = 0; e < n; ++e)
        if (t.m(e, e) == e) idem.push_back(e);
    for (int x = 0; x < n; ++x) {
        bool found = false;
        for (int e : idem)
            if (t.unit[t.a(x, t.neg[e])]) {
                found = true;
                break;
            }
        if (!found)
            return "element " + t.ring->format(t.elems[x]) +
                   " is not idempotent + unit";
    }
    return std::nullopt;
}

// Reachability of every 2x2 matrix from a divisibility-chained diagonal
// under invertible transformations. For a finite commutative ring every
// invertible matrix is a product of transvections and unit row/column
// scalings (the ring splits into local factors, where Gaussian pivoting on a
// unit entry applies), so closing the diagonal seed set under those
// generators covers exactly the matrices equivalent to a chained diagonal.
std::optional<std::string> check_edr_2x2(const FiniteTable& t) {
    int n = t.n;
    size_t nn = static_cast<size_t>(n) * n;
    size_t universe = nn * nn;
    std::vector<uint64_t> visited((universe + 63) / 64, 0);
    std::vector<uint32_t> work;
    size_t reached = 0;
    auto push = [&](uint32_t s) {
        if (visited[s >> 6] >> (s & 63) & 1) return;
        visited[s >> 6] |= 1ull << (s & 63);
        ++reached;
        work.push_back(s);
    };
    auto encode = [&](int a, int b, int c, int d) {
        return static_cast<uint32_t>(((static_cast<size_t>(a) * n + b) * n + c) * n + d);
    };
    for (int d1 = 0; d1 < n; ++d1)
        for (int d2 = 0; d2 < n; ++d2)
            if (t.divides(d1, d2)) push(encode(d1, t.zero, t.zero, d2));
    while (!work.empty()) {
        uint32_t s = work.back();
        work.pop_back();
        int d = s % n, c = (s / n) % n;
        int b = (s / (n * n)) % n, a = s / (n * n * n);
        for (int x = 1; x < n; ++x) {
            // row0 += x*row1 ; row1 += x*row0 ; col1 += x*col0 ; col0 += x*col1
            push(encode(t.a(a, t.m(x, c)), t.a(b, t.m(x, d)), c, d));
            push(encode(a, b, t.a(c, t.m(x, a)), t.a(d, t.m(x, b))));
            push(encode(a, t.a(b, t.m(a, x)), c, t.a(d, t.m(c, x))));
            push(encode(t.a(a, t.m(b, x)), b, t.a(c, t.m(d, x)), d));
        }
        for (int u : t.units) {
            if (u == t.one) continue;
            push(encode(t.m(u, a), t.m(u, b), c, d));  // row0 *= u
            push(encode(a, b, t.m(u, c), t.m(u, d)));  // row1 *= u
            push(encode(t.m(u, a), b, t.m(u, c), d));  // col0 *= u
            push(encode(a, t.m(u, b), c, t.m(u, d)));  // col1 *= u
        }
    }
    if (reached == universe) return std::nullopt;
    for (size_t s = 0; s < universe; ++s)
        if (!(visited[s >> 6] >> (s & 63) & 1)) {
            int d = s % n, c = (s / n) % n;
            int b = (s / (n * n)) % n, a = static_cast<int>(s / (n * n * n));
            return "matrix [[" + t.ring->format(t.elems[a]) + "," +
                   t.ring->format(t.elems[b]) + "],[" + t.ring->format(t.elems[c]) +
                   "," + t.ring->format(t.elems[d]) +
                   "]] reaches no chained diagonal";
        }
    return std::nullopt;
}

}  // namespace

PropertyReport ring_property_report(const RingPtr& ring, long long max_size) {
    FiniteTable t = build_table(ring, max_size);
    PropertyReport rep;
    rep.ring = ring->spec_string();
    rep.bezout_counterexample = check_bezout(t);
    rep.hermite_counterexample = check_hermite(t);
    rep.sr1_counterexample = check_sr1(t);
    rep.all_adequate_counterexample = check_all_adequate(t);
    rep.clean_counterexample = check_clean(t);
    rep.edr_2x2_counterexample = check_edr_2x2(t);
    rep.bezout = !rep.bezout_counterexample;
    rep.hermite = !rep.hermite_counterexample;
    rep.sr1 = !rep.sr1_counterexample;
    rep.all_adequate = !rep.all_adequate_counterexample;
    rep.clean = !rep.clean_counterexample;
    rep.edr_2x2 = !rep.edr_2x2_counterexample;
    return rep;
}

ElementChecks element_checks(const Elem& x, long long max_size) {
    const RingPtr& R = x.ring();
    FiniteTable t = build_table(R, max_size);
    int xi = static_cast<int>(R->index_of(x));
    ElementChecks out;
    for (int y = 0; y < t.n && !out.is_regular; ++y)
        if (t.m(t.m(xi, y), xi) == xi) out.is_regular = true;
    for (int e = 0; e < t.n && !out.is_clean; ++e)
        if (t.m(e, e) == e && t.unit[t.a(xi, t.neg[e])]) out.is_clean = true;
    return out;
}

// ---- determinantal divisors (own integer / polynomial arithmetic) ---------

namespace {

Int own_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

Int own_gcd(Int a, Int b) {
    a = own_abs(a);
    b = own_abs(b);
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

Int det_int(const std::vector<std::vector<Int>>& m, const std::vector<int>& rows,
            const std::vector<int>& cols) {
    size_t k = rows.size();
    if (k == 1) return m[rows[0]][cols[0]];
    Int acc = 0;
    std::vector<int> sub(cols.begin() + 1, cols.end());
    std::vector<int> rrest(rows.begin() + 1, rows.end());
    for (size_t j = 0; j < k; ++j) {
        if (j > 0) sub[j - 1] = cols[j - 1];
        Int term = m[rows[0]][cols[j]] * det_int(m, rrest, sub);
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

using OPoly = std::vector<Int>;  // coefficients low-to-high, reduced mod p

void own_trim(OPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Int own_inv_mod(const Int& a, const Int& p) {
    // extended euclid, local copy
    Int old_r = a % p, r = p, old_s = 1, s = 0;
    if (old_r < 0) old_r += p;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    Int out = old_s % p;
    if (out < 0) out += p;
    return out;
}

OPoly own_padd(const OPoly& f, const OPoly& g, const Int& p) {
    OPoly out(std::max(f.size(), g.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) {
        Int v = (i < f.size() ? f[i] : Int(0)) + (i < g.size() ? g[i] : Int(0));
        out[i] = v % p;
    }
    own_trim(out);
    return out;
}

OPoly own_psub(const OPoly& f, const OPoly& g, const Int& p) {
    OPoly out(std::max(f.size(), g.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) {
        Int v = (i < f.size() ? f[i] : Int(0)) - (i < g.size() ? g[i] : Int(0));
        out[i] = ((v % p) + p) % p;
    }
    own_trim(out);
    return out;
}

OPoly own_pmul(const OPoly& f, const OPoly& g, const Int& p) {
    if (f.empty() || g.empty()) return {};
    OPoly out(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j) out[i + j] = (out[i + j] + f[i] * g[j]) % p;
    own_trim(out);
    return out;
}

OPoly own_pmod(OPoly f, const OPoly& g, const Int& p) {
    Int lead_inv = own_inv_mod(g.back(), p);
    while (f.size() >= g.size() && !f.empty()) {
        Int coef = (f.back() * lead_inv) % p;
        size_t shift = f.size() - g.size();
        for (size_t i = 0; i < g.size(); ++i) {
            Int v = f[shift + i] - coef * g[i];
            f[shift + i] = ((v % p) + p) % p;
        }
        own_trim(f);
        if (f.size() < g.size()) break;
    }
    return f;
}

OPoly own_pgcd(OPoly a, OPoly b, const Int& p) {
    own_trim(a);
    own_trim(b);
    while (!b.empty()) {
        OPoly r = own_pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        Int inv = own_inv_mod(a.back(), p);
        for (Int& c : a) c = (c * inv) % p;
    }
    return a;
}

OPoly det_poly(const std::vector<std::vector<OPoly>>& m, const std::vector<int>& rows,
               const std::vector<int>& cols, const Int& p) {
    size_t k = rows.size();
    if (k == 1) return m[rows[0]][cols[0]];
    OPoly acc;
    std::vector<int> sub(cols.begin() + 1, cols.end());
    std::vector<int> rrest(rows.begin() + 1, rows.end());
    for (size_t j = 0; j < k; ++j) {
        if (j > 0) sub[j - 1] = cols[j - 1];
        OPoly term = own_pmul(m[rows[0]][cols[j]], det_poly(m, rrest, sub, p), p);
        acc = j % 2 == 0 ? own_padd(acc, term, p) : own_psub(acc, term, p);
    }
    return acc;
}

void subsets_of_size(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
}

Int ring_characteristic(const RingPtr& R) {
    Elem acc = R->one();
    Int p = 1;
    while (!R->is_zero(acc)) {
        acc = acc + R->one();
        ++p;
        if (p > 1000000) throw precondition_error("characteristic search overflow");
    }
    return p;
}

}  // namespace

std::vector<Elem> determinantal_divisors(const Matrix& a) {
    const RingPtr& R = a.ring();
    int m = a.rows(), n = a.cols(), r = std::min(m, n);
    if (R->kind() == RingKind::integers) {
        std::vector<std::vector<Int>> grid(m, std::vector<Int>(n));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) grid[i][j] = a.at(i, j).as_int();
        std::vector<Elem> out;
        for (int k = 1; k <= r; ++k) {
            std::vector<std::vector<int>> rsets, csets;
            subsets_of_size(m, k, rsets);
            subsets_of_size(n, k, csets);
            Int g = 0;
            for (const auto& rs : rsets)
                for (const auto& cs : csets) g = own_gcd(g, det_int(grid, rs, cs));
            out.push_back(Elem::of_int(R, g));
        }
        return out;
    }
    if (R->kind() == RingKind::poly) {
        Int p = ring_characteristic(R);
        std::vector<std::vector<OPoly>> grid(m, std::vector<OPoly>(n));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                OPoly f = a.at(i, j).as_coeffs();
                for (Int& c : f) c = ((c % p) + p) % p;
                own_trim(f);
                grid[i][j] = f;
            }
        std::vector<Elem> out;
        for (int k = 1; k <= r; ++k) {
            std::vector<std::vector<int>> rsets, csets;
            subsets_of_size(m, k, rsets);
            subsets_of_size(n, k, csets);
            OPoly g;
            for (const auto& rs : rsets)
                for (const auto& cs : csets)
                    g = own_pgcd(g, det_poly(grid, rs, cs, p), p);
            out.push_back(g.empty() ? R->zero() : Elem::of_coeffs(R, g));
        }
        return out;
    }
    throw precondition_error("determinantal divisors need Z or GF(p)[x], got " +
                             R->spec_string());
}

CrossValidation cross_validate_reduction(const RingPtr& ring, long long max_size) {
    CrossValidation cv;
    auto strat = WitnessStrategy::auto_for(ring);
    if (ring->finite()) {
        Int size = ring->size();
        if (size > max_size)
            throw precondition_error("ring too large: " + size.str() +
                                     " elements exceeds the bound " +
                                     std::to_string(max_size));
        long long n = static_cast<long long>(size);
        if (n * n * n * n > 2000000)
            throw precondition_error("exhaustive 2x2 scan too large for " +
                                     ring->spec_string());
        std::vector<Elem> elems;
        for (long long i = 0; i < n; ++i) elems.push_back(ring->element_at(Int(i)));
        for (long long i = 0; i < n * n * n * n; ++i) {
            Matrix mat(ring, 2, 2);
            long long v = i;
            for (int k = 0; k < 4; ++k) {
                mat.at(k / 2, k % 2) = elems[v % n];
                v /= n;
            }
            ++cv.checked;
            try {
                Certificate cert = diagonal_reduce(mat, strat);
                if (!verify_certificate(mat, cert).ok()) {
                    cv.pass = false;
                    cv.failure = "certificate verification failed on " + to_string(mat);
                    return cv;
                }
            } catch (const error& e) {
                cv.pass = false;
                cv.failure = std::string("reduction threw on ") + to_string(mat) + ": " +
                             e.what();
                return cv;
            }
        }
        return cv;
    }
    if (ring->kind() == RingKind::integers) {
        std::mt19937_64 rng(0xB152F00Dull);
        std::uniform_int_distribution<int> entry(-50, 50);
        for (int iter = 0; iter < 500; ++iter) {
            Matrix mat(ring, 3, 3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) mat.at(i, j) = ring->from_int(entry(rng));
            ++cv.checked;
            Certificate cert = diagonal_reduce(mat, strat);
            if (!verify_certificate(mat, cert).ok()) {
                cv.pass = false;
                cv.failure = "certificate verification failed on " + to_string(mat);
                return cv;
            }
            std::vector<Elem> d = determinantal_divisors(mat);
            Elem prev = ring->one();
            for (int k = 0; k < 3; ++k) {
                Elem expected = ring->zero();
                if (!ring->is_zero(prev)) {
                    auto q = ring->divide_exact(d[k], prev);
                    if (!q) {
                        cv.pass = false;
                        cv.failure = "determinantal divisors not chained on " +
                                     to_string(mat);
                        return cv;
                    }
                    expected = *q;
                }
                if (cert.diag[k] != ring->canonical_associate(expected).second) {
                    cv.pass = false;
                    cv.failure = "diagonal disagrees with determinantal divisors on " +
                                 to_string(mat);
                    return cv;
                }
                prev = d[k];
            }
        }
        return cv;
    }
    throw precondition_error("cross-validation covers finite rings and Z, got " +
                             ring->spec_string());
}

}  // namespace bezred
