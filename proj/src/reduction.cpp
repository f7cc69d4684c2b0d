#include "bezred/reduction.hpp"

#include <algorithm>
#include <string>

namespace bezred {
namespace {

Matrix mat2(const RingPtr& R, const Elem& a, const Elem& b, const Elem& c, const Elem& d) {
    Matrix m(R, 2, 2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
}

// ---- right-side updates keep W, Q and Q^{-1} synchronized ----------------

void right_transvect(Matrix& w, Matrix& q, Matrix& q_inv, int target, int source,
                     const Elem& s) {
    if (w.ring()->is_zero(s)) return;
    for (int r = 0; r < w.rows(); ++r)
        w.at(r, target) = w.at(r, target) + s * w.at(r, source);
    for (int r = 0; r < q.rows(); ++r)
        q.at(r, target) = q.at(r, target) + s * q.at(r, source);
    for (int c = 0; c < q_inv.cols(); ++c)
        q_inv.at(source, c) = q_inv.at(source, c) - s * q_inv.at(target, c);
}

void right_swap(Matrix& w, Matrix& q, Matrix& q_inv, int i, int j) {
    for (int r = 0; r < w.rows(); ++r) std::swap(w.at(r, i), w.at(r, j));
    for (int r = 0; r < q.rows(); ++r) std::swap(q.at(r, i), q.at(r, j));
    for (int c = 0; c < q_inv.cols(); ++c) std::swap(q_inv.at(i, c), q_inv.at(j, c));
}

void right_scale(Matrix& w, Matrix& q, Matrix& q_inv, int col, const Elem& u) {
    const RingPtr& R = w.ring();
    auto ui = R->unit_inverse(u);
    if (!ui) throw internal_error("column scale by a non-unit");
    for (int r = 0; r < w.rows(); ++r) w.at(r, col) = w.at(r, col) * u;
    for (int r = 0; r < q.rows(); ++r) q.at(r, col) = q.at(r, col) * u;
    for (int c = 0; c < q_inv.cols(); ++c) q_inv.at(col, c) = q_inv.at(col, c) * (*ui);
}

// Fold an invertible 2x2 block into columns (ci, cj).
void right_fold2(Matrix& w, Matrix& q, Matrix& q_inv, int ci, int cj, const Matrix& b,
                 const Matrix& b_inv) {
    auto fold_cols = [&](Matrix& m) {
        for (int r = 0; r < m.rows(); ++r) {
            Elem x = m.at(r, ci), y = m.at(r, cj);
            m.at(r, ci) = x * b.at(0, 0) + y * b.at(1, 0);
            m.at(r, cj) = x * b.at(0, 1) + y * b.at(1, 1);
        }
    };
    fold_cols(w);
    fold_cols(q);
    for (int c = 0; c < q_inv.cols(); ++c) {
        Elem x = q_inv.at(ci, c), y = q_inv.at(cj, c);
        q_inv.at(ci, c) = b_inv.at(0, 0) * x + b_inv.at(0, 1) * y;
        q_inv.at(cj, c) = b_inv.at(1, 0) * x + b_inv.at(1, 1) * y;
    }
}

void left_transvect(Matrix& w, std::vector<ElementaryOp>& ops, int target, int source,
                    const Elem& s) {
    if (w.ring()->is_zero(s)) return;
    ElementaryOp op{OpSide::left_row, target, source, s};
    apply_op(w, op);
    ops.push_back(op);
}

void left_apply_embedded(Matrix& w, std::vector<ElementaryOp>& ops,
                         const std::vector<ElementaryOp>& block, int r0, int r1) {
    for (const ElementaryOp& b : block) {
        ElementaryOp op{OpSide::left_row, b.i == 0 ? r0 : r1, b.j == 0 ? r0 : r1, b.scalar};
        apply_op(w, op);
        ops.push_back(op);
    }
}

}  // namespace

void apply_op(Matrix& m, const ElementaryOp& op) {
    const RingPtr& R = m.ring();
    R->check_same(op.scalar);
    if (op.i == op.j) throw precondition_error("transvection with equal indices");
    int bound = op.side == OpSide::left_row ? m.rows() : m.cols();
    if (op.i < 0 || op.j < 0 || op.i >= bound || op.j >= bound)
        throw precondition_error("transvection index out of range");
    if (op.side == OpSide::left_row) {
        for (int c = 0; c < m.cols(); ++c)
            m.at(op.i, c) = m.at(op.i, c) + op.scalar * m.at(op.j, c);
    } else {
        for (int r = 0; r < m.rows(); ++r)
            m.at(r, op.i) = m.at(r, op.i) + op.scalar * m.at(r, op.j);
    }
}

std::vector<ElementaryOp> swap_as_transvections(const RingPtr& ring, int i, int j) {
    if (i == j) throw precondition_error("swap needs two distinct rows");
    Elem one = ring->one(), mone = ring->neg(one);
    return {{OpSide::left_row, i, j, mone},
            {OpSide::left_row, j, i, one},
            {OpSide::left_row, i, j, mone}};
}

std::vector<ElementaryOp> sl2_to_elementary(const Matrix& m, const WitnessStrategy& strat) {
    const RingPtr& R = m.ring();
    if (m.rows() != 2 || m.cols() != 2)
        throw precondition_error("elementary decomposition needs a 2x2 matrix");
    if (!R->is_one(m.det()))
        throw precondition_error("elementary decomposition needs determinant 1");
    Elem one = R->one(), zero = R->zero(), mone = R->neg(one);
    if (m.is_identity()) return {};
    if (m.at(0, 0) == zero && m.at(0, 1) == mone && m.at(1, 0) == one && m.at(1, 1) == zero)
        return swap_as_transvections(R, 0, 1);
    if (m.at(0, 0) == zero && m.at(0, 1) == one && m.at(1, 0) == mone && m.at(1, 1) == zero)
        return {{OpSide::left_row, 0, 1, one},
                {OpSide::left_row, 1, 0, mone},
                {OpSide::left_row, 0, 1, one}};

    std::vector<ElementaryOp> out;
    if (R->kind() == RingKind::product && !R->finite()) {
        // componentwise, with scalars embedded as (s, 0) and (0, s)
        const RingPtr& L = m.at(0, 0).left().ring();
        const RingPtr& Rr = m.at(0, 0).right().ring();
        Matrix ml(L, 2, 2), mr(Rr, 2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                ml.at(i, j) = m.at(i, j).left();
                mr.at(i, j) = m.at(i, j).right();
            }
        for (const auto& op : sl2_to_elementary(ml, WitnessStrategy::auto_for(L, strat.limit)))
            out.push_back({OpSide::left_row, op.i, op.j,
                           Elem::of_pair(R, op.scalar, Rr->zero())});
        for (const auto& op : sl2_to_elementary(mr, WitnessStrategy::auto_for(Rr, strat.limit)))
            out.push_back({OpSide::left_row, op.i, op.j,
                           Elem::of_pair(R, L->zero(), op.scalar)});
    } else {
        // Reduce a copy to the identity collecting row ops, then emit the
        // inverses in reverse order.
        std::vector<ElementaryOp> red;
        Matrix x = m;
        auto emit = [&](int i, int j, const Elem& s) {
            if (R->is_zero(s)) return;
            ElementaryOp op{OpSide::left_row, i, j, s};
            apply_op(x, op);
            red.push_back(op);
        };
        if (R->kind() == RingKind::integers || R->kind() == RingKind::poly) {
            int guard = 0;
            while (!R->is_zero(x.at(1, 0))) {
                if (++guard > 10000) throw internal_error("euclidean peel diverged");
                if (R->is_zero(x.at(0, 0))) {
                    emit(0, 1, one);
                    continue;
                }
                auto dm = R->divmod(x.at(1, 0), x.at(0, 0));
                emit(1, 0, R->neg(dm->first));
                if (R->is_zero(x.at(1, 0))) break;
                auto dm2 = R->divmod(x.at(0, 0), x.at(1, 0));
                emit(0, 1, R->neg(dm2->first));
            }
        } else {
            Elem y = sr1_witness(x.at(0, 0), x.at(1, 0), strat);
            emit(0, 1, y);
            Elem u = x.at(0, 0);
            auto ui = R->unit_inverse(u);
            if (!ui) throw internal_error("unit shift did not produce a unit pivot");
            emit(1, 0, R->neg(x.at(1, 0) * (*ui)));
        }
        // x = [[a, b], [0, d]] with a*d = 1
        Elem a = x.at(0, 0);
        auto ai = R->unit_inverse(a);
        if (!ai) throw internal_error("pivot not a unit after column elimination");
        emit(0, 1, R->neg(x.at(0, 1) * a));
        if (!R->is_one(a)) {
            // undo diag(a, 1/a): reverse of the build list
            // [E01(-1), E10(1), E01(-1), E01(a), E10(-1/a), E01(a)]
            emit(0, 1, R->neg(a));
            emit(1, 0, *ai);
            emit(0, 1, R->neg(a));
            emit(0, 1, one);
            emit(1, 0, mone);
            emit(0, 1, one);
        }
        if (!x.is_identity()) throw internal_error("row reduction missed the identity");
        for (auto it = red.rbegin(); it != red.rend(); ++it)
            out.push_back({OpSide::left_row, it->i, it->j, R->neg(it->scalar)});
    }
    Matrix check = Matrix::identity(R, 2);
    for (const auto& op : out) apply_op(check, op);
    if (check != m) throw internal_error("elementary decomposition replay mismatch");
    return out;
}

HermitePair hermite_pair(const Elem& a, const Elem& b) {
    const RingPtr& R = a.ring();
    R->check_same(a, b);
    BezoutData d = R->gcdex(a, b);
    HermitePair hp;
    hp.g = d.g;
    hp.q = mat2(R, d.x, R->neg(d.b_bar), d.y, d.a_bar);
    hp.q_inv = mat2(R, d.a_bar, d.b_bar, R->neg(d.y), d.x);
    if (a * hp.q.at(0, 0) + b * hp.q.at(1, 0) != d.g ||
        !R->is_zero(a * hp.q.at(0, 1) + b * hp.q.at(1, 1)) ||
        !(hp.q * hp.q_inv).is_identity() || !(hp.q_inv * hp.q).is_identity())
        throw internal_error("hermite pair verification failed");
    return hp;
}

namespace {

Elem content_shift(const RingPtr& R, const Elem& h, const Elem& g) {
    if (R->is_zero(h)) return R->neg(R->one());  // 1 + w = 0 lies in every ideal
    if (R->finite()) {
        for (Int i = 0; i < R->size(); ++i) {
            Elem w = R->element_at(i);
            if (!R->is_zero(h * w)) continue;
            if (R->divide_exact(R->one() + w, g)) return w;
        }
        throw internal_error("content: no annihilating shift exists");
    }
    if (R->kind() == RingKind::product) {
        Elem wl = content_shift(h.left().ring(), h.left(), g.left());
        Elem wr = content_shift(h.right().ring(), h.right(), g.right());
        return Elem::of_pair(R, wl, wr);
    }
    if (R->is_domain()) {
        if (!R->divide_exact(R->one(), g))
            throw internal_error("content: cofactor ideal not full over a domain");
        return R->zero();
    }
    throw precondition_error("content shift not computable over " + R->spec_string());
}

}  // namespace

Content content_extract(const Matrix& m) {
    const RingPtr& R = m.ring();
    if (m.rows() == 0 || m.cols() == 0)
        throw precondition_error("content of an empty matrix");
    bool all_zero = true;
    for (int i = 0; i < m.rows() && all_zero; ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!R->is_zero(m.at(i, j))) {
                all_zero = false;
                break;
            }
    if (all_zero) return {R->zero(), m, R->zero()};
    Elem h = R->zero();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) h = R->gcdex(h, m.at(i, j)).g;
    Matrix primed(R, m.rows(), m.cols());
    Elem g = R->zero();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            auto q = R->divide_exact(m.at(i, j), h);
            if (!q) throw internal_error("content generator does not divide an entry");
            primed.at(i, j) = *q;
            g = R->gcdex(g, *q).g;
        }
    return {h, primed, content_shift(R, h, g)};
}

Matrix replay_left(const Certificate& cert, int rows) {
    Matrix p = Matrix::identity(cert.ring, rows);
    for (const auto& op : cert.left_ops) {
        if (op.side != OpSide::left_row)
            throw precondition_error("certificate left factor contains a column op");
        apply_op(p, op);
    }
    return p;
}

Matrix diag_matrix(const RingPtr& ring, const std::vector<Elem>& diag, int rows, int cols) {
    Matrix d(ring, rows, cols);
    for (int k = 0; k < static_cast<int>(diag.size()) && k < rows && k < cols; ++k)
        d.at(k, k) = diag[k];
    return d;
}

namespace {

Matrix combine_components(const RingPtr& R, const Matrix& l, const Matrix& r) {
    Matrix m(R, l.rows(), l.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            m.at(i, j) = Elem::of_pair(R, l.at(i, j), r.at(i, j));
    return m;
}

// P * [[A, B], [0, C]] * Q = diag(1, A*C) for a unimodular triple (A, B, C)
// with R/CR of stable range 1. The left factor is the rotation times
// [[C, -beta], [p, q]] and lands in the transvection list; the right factor
// is two transvections, a column swap and a sign flip.
void finish_upper22(Matrix& w, std::vector<ElementaryOp>& ops, Matrix& q, Matrix& q_inv,
                    const WitnessStrategy& strat) {
    const RingPtr& R = w.ring();
    if (!R->is_zero(w.at(1, 0))) throw internal_error("finish: not upper triangular");
    Elem A = w.at(0, 0), B = w.at(0, 1), C = w.at(1, 1);
    if (R->kind() == RingKind::product && !R->finite()) {
        // componentwise: a component of C may be zero with an infinite
        // factor, where no quotient is available
        const RingPtr& L = A.left().ring();
        const RingPtr& Rr = A.right().ring();
        Matrix wl(L, 2, 2), wr(Rr, 2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                wl.at(i, j) = w.at(i, j).left();
                wr.at(i, j) = w.at(i, j).right();
            }
        std::vector<ElementaryOp> ops_l, ops_r;
        Matrix ql = Matrix::identity(L, 2), ql_inv = ql;
        Matrix qr2 = Matrix::identity(Rr, 2), qr2_inv = qr2;
        finish_upper22(wl, ops_l, ql, ql_inv, WitnessStrategy::auto_for(L, strat.limit));
        finish_upper22(wr, ops_r, qr2, qr2_inv, WitnessStrategy::auto_for(Rr, strat.limit));
        for (const auto& op : ops_l) {
            ElementaryOp e{OpSide::left_row, op.i, op.j,
                           Elem::of_pair(R, op.scalar, Rr->zero())};
            apply_op(w, e);
            ops.push_back(e);
        }
        for (const auto& op : ops_r) {
            ElementaryOp e{OpSide::left_row, op.i, op.j,
                           Elem::of_pair(R, L->zero(), op.scalar)};
            apply_op(w, e);
            ops.push_back(e);
        }
        right_fold2(w, q, q_inv, 0, 1, combine_components(R, ql, qr2),
                    combine_components(R, ql_inv, qr2_inv));
        if (w != diag_matrix(R, {R->one(), A * C}, 2, 2))
            throw internal_error("finish: componentwise pass missed diag(1, A*C)");
        return;
    }
    if (R->is_zero(C) && !R->finite()) {
        // (A, B) is unimodular, so one hermite fold reaches diag(1, 0).
        HermitePair hp = hermite_pair(A, B);
        right_fold2(w, q, q_inv, 0, 1, hp.q, hp.q_inv);
        if (w != diag_matrix(R, {R->one(), R->zero()}, 2, 2))
            throw internal_error("finish: degenerate fold missed diag(1, 0)");
        return;
    }
    QuotientRing qr = quotient_ring(R, C);
    auto qstrat = WitnessStrategy::auto_for(qr.ring(), strat.limit);
    Elem shift = qr.lift(sr1_witness(qr.project(B), qr.project(A), qstrat));
    Elem beta = B + A * shift;
    auto binv = qr.ring()->unit_inverse(qr.project(beta));
    if (!binv) throw internal_error("finish: shifted entry not a unit modulo C");
    Elem p = qr.lift(*binv);
    auto qq = R->divide_exact(R->one() - beta * p, C);
    if (!qq) throw internal_error("finish: 1 - beta*p not a multiple of C");
    Matrix l = mat2(R, R->neg(p), R->neg(*qq), C, R->neg(beta));
    left_apply_embedded(w, ops, sl2_to_elementary(l, strat), 0, 1);
    right_transvect(w, q, q_inv, 1, 0, shift);
    right_transvect(w, q, q_inv, 0, 1, R->neg(p * A));
    right_swap(w, q, q_inv, 0, 1);
    right_scale(w, q, q_inv, 0, R->neg(R->one()));
    if (w != diag_matrix(R, {R->one(), A * C}, 2, 2))
        throw internal_error("finish: identity did not reach diag(1, A*C)");
}

// In place: w = [[a, 0], [b, c]] with (a, b, c) unimodular becomes
// diag(1, e); left ops appended, right side folded into q / q_inv.
void reduce_triangular_core(Matrix& w, std::vector<ElementaryOp>& ops, Matrix& q,
                            Matrix& q_inv, const WitnessStrategy& strat) {
    const RingPtr& R = w.ring();
    if (!R->is_zero(w.at(0, 1))) throw internal_error("core: not lower triangular");
    Elem a = w.at(0, 0), b = w.at(1, 0), c = w.at(1, 1);
    BezoutData d1 = R->gcdex(a, b);
    BezoutData d2 = R->gcdex(d1.g, c);
    auto ui = R->unit_inverse(d2.g);
    if (!ui) throw precondition_error("triangular reduction needs a unimodular triple");
    Elem x = d1.x * d2.x * (*ui);
    Elem z = d2.y * (*ui);
    // a*x + b*y + c*z = 1 with y = d1.y * d2.x / u
    Elem t = locally_stable_witness(b, a * x + c * z, strat);
    left_transvect(w, ops, 1, 0, x * t);
    right_transvect(w, q, q_inv, 0, 1, z * t);
    // w = [[a, 0], [v, c]] with R/vR of stable range 1
    HermitePair hp = hermite_pair(w.at(1, 0), w.at(1, 1));
    // fold hp.q * [[0, 1], [-1, 0]] to move the column gcd to the right slot
    Matrix qt = mat2(R, R->neg(hp.q.at(0, 1)), hp.q.at(0, 0), R->neg(hp.q.at(1, 1)),
                     hp.q.at(1, 0));
    Matrix qt_inv = mat2(R, R->neg(hp.q_inv.at(1, 0)), R->neg(hp.q_inv.at(1, 1)),
                         hp.q_inv.at(0, 0), hp.q_inv.at(0, 1));
    right_fold2(w, q, q_inv, 0, 1, qt, qt_inv);
    // w = [[A, B], [0, C]] with C | v, so R/CR keeps stable range 1
    finish_upper22(w, ops, q, q_inv, strat);
}

}  // namespace

Certificate reduce_2x2_triangular(const Elem& a, const Elem& b, const Elem& c,
                                  const WitnessStrategy& strat) {
    const RingPtr& R = a.ring();
    R->check_same(a, b);
    R->check_same(c);
    Certificate cert;
    cert.ring = R;
    cert.q = Matrix::identity(R, 2);
    cert.q_inv = Matrix::identity(R, 2);
    Matrix w = mat2(R, a, R->zero(), b, c);
    reduce_triangular_core(w, cert.left_ops, cert.q, cert.q_inv, strat);
    auto [u2, c2] = R->canonical_associate(w.at(1, 1));
    if (!R->is_one(u2)) right_scale(w, cert.q, cert.q_inv, 1, u2);
    cert.diag = {w.at(0, 0), w.at(1, 1)};
    Matrix p = replay_left(cert, 2);
    if (p * mat2(R, a, R->zero(), b, c) * cert.q != diag_matrix(R, cert.diag, 2, 2))
        throw internal_error("triangular reduction replay mismatch");
    return cert;
}

Certificate ge2_reduce(const Matrix& m, const WitnessStrategy& strat) {
    const RingPtr& R = m.ring();
    if (m.rows() != 2 || m.cols() != 2)
        throw precondition_error("this reduction is for 2x2 matrices");
    Certificate cert;
    cert.ring = R;
    cert.q = Matrix::identity(R, 2);
    cert.q_inv = Matrix::identity(R, 2);
    Elem zero = R->zero(), one = R->one();
    bool all_zero = R->is_zero(m.at(0, 0)) && R->is_zero(m.at(0, 1)) &&
                    R->is_zero(m.at(1, 0)) && R->is_zero(m.at(1, 1));
    if (all_zero) {
        cert.diag = {zero, zero};
        return cert;
    }
    if (R->is_zero(m.at(0, 1)) && R->is_zero(m.at(1, 0))) {
        bool canon = R->canonical_associate(m.at(0, 0)).second == m.at(0, 0) &&
                     R->canonical_associate(m.at(1, 1)).second == m.at(1, 1);
        if (canon && R->divide_exact(m.at(1, 1), m.at(0, 0))) {
            cert.diag = {m.at(0, 0), m.at(1, 1)};
            return cert;
        }
    }
    Elem det = m.det();
    if (auto dinv = R->unit_inverse(det)) {
        Matrix b = m;
        b.at(0, 1) = b.at(0, 1) * (*dinv);
        b.at(1, 1) = b.at(1, 1) * (*dinv);
        Matrix p = mat2(R, b.at(1, 1), R->neg(b.at(0, 1)), R->neg(b.at(1, 0)), b.at(0, 0));
        cert.left_ops = sl2_to_elementary(p, strat);
        cert.q = mat2(R, one, zero, zero, *dinv);
        cert.q_inv = mat2(R, one, zero, zero, det);
        cert.diag = {one, one};
        return cert;
    }
    // content extraction: m * Q1 = h * A with the shift w in the cleared slot
    HermitePair h1 = hermite_pair(m.at(0, 0), m.at(0, 1));
    Matrix w = m;
    right_fold2(w, cert.q, cert.q_inv, 0, 1, h1.q, h1.q_inv);
    Content ct = content_extract(w);
    Matrix a2 = ct.primed;
    a2.at(0, 1) = ct.w;
    HermitePair h2 = hermite_pair(a2.at(0, 0), a2.at(0, 1));
    right_fold2(a2, cert.q, cert.q_inv, 0, 1, h2.q, h2.q_inv);
    // a2 = [[a', 0], [c', d']], a unimodular triple
    reduce_triangular_core(a2, cert.left_ops, cert.q, cert.q_inv, strat);
    Elem omega = a2.at(1, 1);
    auto [u2, d2] = R->canonical_associate(ct.h * omega);
    if (!R->is_one(u2)) right_scale(a2, cert.q, cert.q_inv, 1, u2);
    cert.diag = {ct.h, d2};
    Matrix p = replay_left(cert, 2);
    if (p * m * cert.q != diag_matrix(R, cert.diag, 2, 2))
        throw internal_error("content reduction replay mismatch");
    return cert;
}

namespace {

bool chain_divides(const RingPtr& R, const Elem& d, const Elem& a) {
    return R->divide_exact(a, d).has_value();
}

void pivot_at(Matrix& w, std::vector<ElementaryOp>& ops, Matrix& q, Matrix& q_inv,
              int k, const WitnessStrategy& strat) {
    const RingPtr& R = w.ring();
    int m = w.rows(), n = w.cols();
    for (int guard = 0; guard < 1000; ++guard) {
        if (R->is_zero(w.at(k, k))) {
            int pi = -1, pj = -1;
            for (int i = k; i < m && pi < 0; ++i)
                for (int j = k; j < n; ++j)
                    if (!R->is_zero(w.at(i, j))) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi < 0) return;  // trailing block is zero
            if (pi != k)
                for (const auto& op : swap_as_transvections(R, k, pi)) {
                    apply_op(w, op);
                    ops.push_back(op);
                }
            if (pj != k) right_swap(w, q, q_inv, k, pj);
        }
        // clear row k: divide when possible, otherwise grow the pivot ideal
        for (int j = k + 1; j < n; ++j) {
            if (R->is_zero(w.at(k, j))) continue;
            if (auto qq = R->divide_exact(w.at(k, j), w.at(k, k))) {
                right_transvect(w, q, q_inv, j, k, R->neg(*qq));
            } else {
                HermitePair hp = hermite_pair(w.at(k, k), w.at(k, j));
                right_fold2(w, q, q_inv, k, j, hp.q, hp.q_inv);
            }
        }
        // clear column k
        for (int i = k + 1; i < m; ++i) {
            if (R->is_zero(w.at(i, k))) continue;
            if (auto qq = R->divide_exact(w.at(i, k), w.at(k, k))) {
                left_transvect(w, ops, i, k, R->neg(*qq));
            } else {
                BezoutData d = R->gcdex(w.at(k, k), w.at(i, k));
                Matrix t = mat2(R, d.x, d.y, R->neg(d.b_bar), d.a_bar);
                left_apply_embedded(w, ops, sl2_to_elementary(t, strat), k, i);
            }
        }
        bool clean = true;
        for (int j = k + 1; j < n && clean; ++j) clean = R->is_zero(w.at(k, j));
        for (int i = k + 1; i < m && clean; ++i) clean = R->is_zero(w.at(i, k));
        if (clean) return;
    }
    throw internal_error("pivot loop did not converge");
}

}  // namespace

Certificate diagonal_reduce(const Matrix& m, const WitnessStrategy& strat) {
    const RingPtr& R = m.ring();
    if (!R) throw precondition_error("matrix has no ring");
    int rows = m.rows(), cols = m.cols(), r = std::min(rows, cols);
    Certificate cert;
    cert.ring = R;
    cert.q = Matrix::identity(R, cols);
    cert.q_inv = Matrix::identity(R, cols);
    Matrix w = m;
    for (int k = 0; k < r; ++k) pivot_at(w, cert.left_ops, cert.q, cert.q_inv, k, strat);
    // enforce the divisibility chain; each fix stays inside a 2x2 block
    for (int guard = 0;; ++guard) {
        if (guard > 256) throw internal_error("divisibility chain did not stabilize");
        bool changed = false;
        for (int k = 0; k + 1 < r; ++k) {
            if (chain_divides(R, w.at(k, k), w.at(k + 1, k + 1))) continue;
            right_transvect(w, cert.q, cert.q_inv, k, k + 1, R->one());
            pivot_at(w, cert.left_ops, cert.q, cert.q_inv, k, strat);
            pivot_at(w, cert.left_ops, cert.q, cert.q_inv, k + 1, strat);
            changed = true;
        }
        if (!changed) break;
    }
    for (int k = 0; k < r; ++k) {
        auto [u, c] = R->canonical_associate(w.at(k, k));
        if (!R->is_one(u)) right_scale(w, cert.q, cert.q_inv, k, u);
    }
    cert.diag.reserve(r);
    for (int k = 0; k < r; ++k) cert.diag.push_back(w.at(k, k));
    Matrix p = replay_left(cert, rows);
    if (p * m * cert.q != w || w != diag_matrix(R, cert.diag, rows, cols))
        throw internal_error("diagonal reduction replay mismatch");
    if (!(cert.q * cert.q_inv).is_identity() || !(cert.q_inv * cert.q).is_identity())
        throw internal_error("column transform inverse mismatch");
    return cert;
}

Verdict verify_certificate(const Matrix& input, const Certificate& cert) {
    const RingPtr& R = input.ring();
    if (!cert.ring || !R->same(*cert.ring))
        throw precondition_error("certificate and matrix rings differ");
    int m = input.rows(), n = input.cols(), r = std::min(m, n);
    if (cert.q.rows() != n || cert.q.cols() != n || cert.q_inv.rows() != n ||
        cert.q_inv.cols() != n)
        throw precondition_error("certificate column transform has wrong shape");
    if (static_cast<int>(cert.diag.size()) != r)
        throw precondition_error("certificate diagonal has wrong length");
    for (const auto& op : cert.left_ops) {
        if (op.side != OpSide::left_row)
            throw precondition_error("certificate left factor contains a column op");
        if (op.i == op.j || op.i < 0 || op.j < 0 || op.i >= m || op.j >= m)
            throw precondition_error("certificate row op out of range");
        R->check_same(op.scalar);
    }
    Verdict v;
    Matrix p = replay_left(cert, m);
    v.replay_equation = (p * input * cert.q) == diag_matrix(R, cert.diag, m, n);
    v.q_inverse =
        (cert.q * cert.q_inv).is_identity() && (cert.q_inv * cert.q).is_identity();
    v.divisibility = true;
    for (int k = 0; k + 1 < r; ++k)
        if (!R->divide_exact(cert.diag[k + 1], cert.diag[k])) {
            v.divisibility = false;
            break;
        }
    v.canonical_diag = true;
    for (int k = 0; k < r; ++k)
        if (R->canonical_associate(cert.diag[k]).second != cert.diag[k]) {
            v.canonical_diag = false;
            break;
        }
    v.left_det_one = R->is_one(p.det());
    return v;
}

}  // namespace bezred
