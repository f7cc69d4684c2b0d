#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bezred/reduction.hpp"

using namespace bezred;

namespace {

Elem poly(const RingPtr& r, std::vector<Int> cs) {
    return Elem::of_coeffs(r, std::move(cs)) * r->one();
}

Matrix mat(const RingPtr& r, int rows, int cols, std::vector<long long> v) {
    Matrix m(r, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.at(i, j) = r->from_int(v[static_cast<size_t>(i) * cols + j]);
    return m;
}

/// Full certificate check used by the property loops: clause verdicts, the
/// transvections-only left factor, and exact replay.
void check_certificate(const Matrix& input, const Certificate& cert) {
    Verdict v = verify_certificate(input, cert);
    CHECK(v.replay_equation);
    CHECK(v.q_inverse);
    CHECK(v.divisibility);
    CHECK(v.canonical_diag);
    CHECK(v.left_det_one);
    for (const ElementaryOp& op : cert.left_ops) {
        CHECK(op.side == OpSide::left_row);
        CHECK(op.i != op.j);
    }
}

std::vector<Elem> diag_of(const Certificate& c) { return c.diag; }

}  // namespace

TEST_CASE("row operation semantics") {
    auto Z = integers();
    Matrix m = Matrix::identity(Z, 2);
    // Row op (i=2, j=1, scalar 5) in 1-based terms: row 2 += 5 * row 1.
    apply_op(m, ElementaryOp{OpSide::left_row, 1, 0, Z->from_int(5)});
    CHECK(m == mat(Z, 2, 2, {1, 0, 5, 1}));
    Matrix c = Matrix::identity(Z, 2);
    apply_op(c, ElementaryOp{OpSide::right_col, 1, 0, Z->from_int(5)});
    CHECK(c == mat(Z, 2, 2, {1, 5, 0, 1}));
    CHECK_THROWS_AS(apply_op(m, ElementaryOp{OpSide::left_row, 0, 0, Z->one()}),
                    precondition_error);
}

TEST_CASE("swap replayed as three transvections") {
    auto Z = integers();
    auto ops = swap_as_transvections(Z, 0, 1);
    REQUIRE(ops.size() == 3);
    Matrix m = Matrix::identity(Z, 2);
    for (const auto& op : ops) apply_op(m, op);
    CHECK(m == mat(Z, 2, 2, {0, -1, 1, 0}));

    auto Z6 = zmod(6);
    Matrix m6 = Matrix::identity(Z6, 3);
    for (const auto& op : swap_as_transvections(Z6, 0, 2)) apply_op(m6, op);
    Matrix want(Z6, 3, 3);
    want.at(0, 2) = Z6->from_int(-1);
    want.at(1, 1) = Z6->one();
    want.at(2, 0) = Z6->one();
    CHECK(m6 == want);
}

TEST_CASE("determinant-one matrices decompose into transvections") {
    auto Z = integers();
    auto stz = WitnessStrategy::auto_for(Z);
    auto replay = [](const RingPtr& r, const std::vector<ElementaryOp>& ops) {
        Matrix m = Matrix::identity(r, 2);
        for (const auto& op : ops) apply_op(m, op);
        return m;
    };

    CHECK(sl2_to_elementary(Matrix::identity(Z, 2), stz).empty());
    Matrix rot = mat(Z, 2, 2, {0, -1, 1, 0});
    CHECK(replay(Z, sl2_to_elementary(rot, stz)) == rot);
    Matrix rot2 = mat(Z, 2, 2, {0, 1, -1, 0});
    CHECK(replay(Z, sl2_to_elementary(rot2, stz)) == rot2);
    Matrix g = mat(Z, 2, 2, {2, 5, 1, 3});
    CHECK(replay(Z, sl2_to_elementary(g, stz)) == g);
    CHECK_THROWS_AS(sl2_to_elementary(mat(Z, 2, 2, {1, 0, 0, 2}), stz),
                    precondition_error);

    auto Z6 = zmod(6);
    auto st6 = WitnessStrategy::auto_for(Z6);
    Matrix d5 = mat(Z6, 2, 2, {5, 0, 0, 5});
    CHECK(replay(Z6, sl2_to_elementary(d5, st6)) == d5);

    // Every determinant-one 2x2 matrix over small finite rings decomposes
    // and replays exactly.
    for (const auto& R : {zmod(4), zmod(6)}) {
        auto st = WitnessStrategy::auto_for(R);
        Int n = R->size();
        for (Int a = 0; a < n; ++a)
            for (Int b = 0; b < n; ++b)
                for (Int c = 0; c < n; ++c)
                    for (Int d = 0; d < n; ++d) {
                        Matrix m(R, 2, 2);
                        m.at(0, 0) = R->element_at(a);
                        m.at(0, 1) = R->element_at(b);
                        m.at(1, 0) = R->element_at(c);
                        m.at(1, 1) = R->element_at(d);
                        if (m.det() != R->one()) continue;
                        CHECK(replay(R, sl2_to_elementary(m, st)) == m);
                    }
    }

    auto P = product(integers(), zmod(4));
    auto stP = WitnessStrategy::auto_for(P);
    Matrix pm(P, 2, 2);
    pm.at(0, 0) = Elem::of_pair(P, Z->from_int(2), zmod(4)->from_int(1));
    pm.at(0, 1) = Elem::of_pair(P, Z->from_int(5), zmod(4)->from_int(2));
    pm.at(1, 0) = Elem::of_pair(P, Z->from_int(1), zmod(4)->from_int(0));
    pm.at(1, 1) = Elem::of_pair(P, Z->from_int(3), zmod(4)->from_int(1));
    REQUIRE(pm.det() == P->one());
    CHECK(replay(P, sl2_to_elementary(pm, stP)) == pm);
}

TEST_CASE("hermite pairs") {
    auto Z = integers();
    HermitePair h = hermite_pair(Z->from_int(4), Z->from_int(6));
    CHECK(h.g == Z->from_int(2));
    CHECK(h.q == mat(Z, 2, 2, {-1, -3, 1, 2}));
    CHECK(h.q_inv == mat(Z, 2, 2, {2, 3, -1, -1}));

    HermitePair h2 = hermite_pair(Z->zero(), Z->from_int(7));
    CHECK(h2.g == Z->from_int(7));
    CHECK(h2.q == mat(Z, 2, 2, {0, -1, 1, 0}));

    HermitePair h3 = hermite_pair(Z->zero(), Z->zero());
    CHECK(h3.g == Z->zero());
    CHECK(h3.q == Matrix::identity(Z, 2));

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long long> d(-80, 80);
    for (int k = 0; k < 200; ++k) {
        Elem a = Z->from_int(d(rng)), b = Z->from_int(d(rng));
        HermitePair hp = hermite_pair(a, b);
        CHECK(hp.q.det() == Z->one());
        CHECK(mul(hp.q, hp.q_inv) == Matrix::identity(Z, 2));
        CHECK(a * hp.q.at(0, 0) + b * hp.q.at(1, 0) == hp.g);
        CHECK(a * hp.q.at(0, 1) + b * hp.q.at(1, 1) == Z->zero());
        CHECK(hp.g == Z->gcdex(a, b).g);
    }
}

TEST_CASE("content extraction") {
    auto Z6 = zmod(6);
    Content c1 = content_extract(mat(Z6, 1, 1, {4}));
    CHECK(c1.h == Z6->from_int(2));
    CHECK(c1.primed == mat(Z6, 1, 1, {2}));
    CHECK(c1.w == Z6->from_int(3));

    Content c2 = content_extract(mat(Z6, 2, 2, {2, 4, 2, 0}));
    CHECK(c2.h == Z6->from_int(2));
    CHECK(c2.primed == mat(Z6, 2, 2, {1, 2, 1, 0}));
    CHECK(c2.w == Z6->zero());

    auto Z = integers();
    Content c3 = content_extract(mat(Z, 2, 2, {6, 9, 3, 0}));
    CHECK(c3.h == Z->from_int(3));
    CHECK(c3.w == Z->zero());
    CHECK(c3.primed == mat(Z, 2, 2, {2, 3, 1, 0}));

    Content c4 = content_extract(mat(Z, 2, 2, {0, 0, 0, 0}));
    CHECK(c4.h == Z->zero());
    CHECK(c4.w == Z->zero());

    // Properties on every 2x2 matrix over Z/4 and Z/6: m = h*primed, h*w = 0,
    // and 1 + w lies in the ideal generated by the primed entries.
    for (const auto& R : {zmod(4), zmod(6)}) {
        Int n = R->size();
        for (Int a = 0; a < n; ++a)
            for (Int b = 0; b < n; ++b)
                for (Int c = 0; c < n; ++c)
                    for (Int d = 0; d < n; ++d) {
                        Matrix m(R, 2, 2);
                        m.at(0, 0) = R->element_at(a);
                        m.at(0, 1) = R->element_at(b);
                        m.at(1, 0) = R->element_at(c);
                        m.at(1, 1) = R->element_at(d);
                        Content ct = content_extract(m);
                        for (int i = 0; i < 2; ++i)
                            for (int j = 0; j < 2; ++j)
                                CHECK(ct.h * ct.primed.at(i, j) == m.at(i, j));
                        CHECK(ct.h * ct.w == R->zero());
                        if (ct.h == R->zero()) {
                            CHECK(ct.w == R->zero());
                            continue;  // zero matrix: the 1+w clause is vacuous
                        }
                        Elem gen = R->zero();
                        for (int i = 0; i < 2; ++i)
                            for (int j = 0; j < 2; ++j)
                                gen = R->gcdex(gen, ct.primed.at(i, j)).g;
                        CHECK(R->divide_exact(R->one() + ct.w, gen).has_value());
                    }
    }
}

TEST_CASE("triangular 2x2 reduction") {
    auto Z = integers();
    auto stz = WitnessStrategy::auto_for(Z);
    Certificate c = reduce_2x2_triangular(Z->from_int(3), Z->from_int(4),
                                          Z->from_int(5), stz);
    CHECK(diag_of(c) == std::vector<Elem>{Z->one(), Z->from_int(15)});
    check_certificate(mat(Z, 2, 2, {3, 0, 4, 5}), c);

    auto Z6 = zmod(6);
    auto st6 = WitnessStrategy::auto_for(Z6);
    Certificate c6 = reduce_2x2_triangular(Z6->from_int(2), Z6->from_int(3),
                                           Z6->from_int(4), st6);
    CHECK(diag_of(c6) == std::vector<Elem>{Z6->one(), Z6->from_int(2)});
    check_certificate(mat(Z6, 2, 2, {2, 0, 3, 4}), c6);

    CHECK_THROWS_AS(reduce_2x2_triangular(Z->from_int(2), Z->from_int(4),
                                          Z->from_int(6), stz),
                    precondition_error);
}

TEST_CASE("ge2_reduce pinned values") {
    auto Z = integers();
    auto stz = WitnessStrategy::auto_for(Z);

    Matrix m = mat(Z, 2, 2, {2, 4, 6, 8});
    Certificate c = ge2_reduce(m, stz);
    CHECK(diag_of(c) == std::vector<Elem>{Z->from_int(2), Z->from_int(4)});
    check_certificate(m, c);

    Matrix zero = mat(Z, 2, 2, {0, 0, 0, 0});
    Certificate cz = ge2_reduce(zero, stz);
    CHECK(diag_of(cz) == std::vector<Elem>{Z->zero(), Z->zero()});
    CHECK(cz.left_ops.empty());
    check_certificate(zero, cz);

    Matrix dm = mat(Z, 2, 2, {2, 0, 0, 6});
    Certificate cd = ge2_reduce(dm, stz);
    CHECK(cd.left_ops.empty());
    CHECK(cd.q == Matrix::identity(Z, 2));
    CHECK(diag_of(cd) == std::vector<Elem>{Z->from_int(2), Z->from_int(6)});
    check_certificate(dm, cd);

    Matrix um = mat(Z, 2, 2, {2, 5, 1, 3});
    Certificate cu = ge2_reduce(um, stz);
    CHECK(diag_of(cu) == std::vector<Elem>{Z->one(), Z->one()});
    check_certificate(um, cu);

    auto Z6 = zmod(6);
    auto st6 = WitnessStrategy::auto_for(Z6);
    Matrix m6 = mat(Z6, 2, 2, {5, 1, 0, 5});
    Certificate c6 = ge2_reduce(m6, st6);
    CHECK(diag_of(c6) == std::vector<Elem>{Z6->one(), Z6->one()});
    check_certificate(m6, c6);
}

TEST_CASE("ge2_reduce exhaustively over small modular rings") {
    for (const auto& R : {zmod(4), zmod(6)}) {
        auto st = WitnessStrategy::auto_for(R);
        Int n = R->size();
        for (Int a = 0; a < n; ++a)
            for (Int b = 0; b < n; ++b)
                for (Int c = 0; c < n; ++c)
                    for (Int d = 0; d < n; ++d) {
                        Matrix m(R, 2, 2);
                        m.at(0, 0) = R->element_at(a);
                        m.at(0, 1) = R->element_at(b);
                        m.at(1, 0) = R->element_at(c);
                        m.at(1, 1) = R->element_at(d);
                        Certificate cert = ge2_reduce(m, st);
                        Verdict v = verify_certificate(m, cert);
                        REQUIRE(v.ok());
                    }
    }
}

TEST_CASE("diagonal_reduce pinned values") {
    auto Z = integers();
    auto stz = WitnessStrategy::auto_for(Z);

    Matrix wide = mat(Z, 2, 3, {2, 4, 6, 8, 10, 12});
    Certificate cw = diagonal_reduce(wide, stz);
    CHECK(diag_of(cw) == std::vector<Elem>{Z->from_int(2), Z->from_int(6)});
    check_certificate(wide, cw);

    Matrix neg = mat(Z, 1, 1, {-7});
    Certificate cn = diagonal_reduce(neg, stz);
    CHECK(diag_of(cn) == std::vector<Elem>{Z->from_int(7)});
    CHECK(cn.q == mat(Z, 1, 1, {-1}));
    check_certificate(neg, cn);

    Matrix anti = mat(Z, 2, 2, {0, 5, 3, 0});
    Certificate ca = diagonal_reduce(anti, stz);
    CHECK(diag_of(ca) == std::vector<Elem>{Z->one(), Z->from_int(15)});
    check_certificate(anti, ca);

    Matrix tall = mat(Z, 3, 1, {4, 6, 10});
    Certificate ct = diagonal_reduce(tall, stz);
    CHECK(diag_of(ct) == std::vector<Elem>{Z->from_int(2)});
    check_certificate(tall, ct);
}

TEST_CASE("diagonal_reduce over every ring family, random shapes") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> shape(1, 4);
    std::uniform_int_distribution<long long> zint(-60, 60);

    auto Z = integers();
    auto stz = WitnessStrategy::auto_for(Z);
    for (int k = 0; k < 120; ++k) {
        int r = shape(rng), c = shape(rng);
        Matrix m(Z, r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = Z->from_int(zint(rng));
        check_certificate(m, diagonal_reduce(m, stz));
    }

    for (const auto& R : {zmod(6), zmod(8), poly_quot(2, {1, 0, 1}),
                          product(zmod(4), zmod(3))}) {
        auto st = WitnessStrategy::auto_for(R);
        Int n = R->size();
        std::uniform_int_distribution<long long> idx(0, static_cast<long long>(n) - 1);
        for (int k = 0; k < 60; ++k) {
            int r = shape(rng), c = shape(rng);
            Matrix m(R, r, c);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) m.at(i, j) = R->element_at(idx(rng));
            check_certificate(m, diagonal_reduce(m, st));
        }
    }

    auto F3x = poly_over_gf(3);
    auto stp = WitnessStrategy::auto_for(F3x);
    std::uniform_int_distribution<int> coef(0, 2), deg(0, 2);
    for (int k = 0; k < 60; ++k) {
        int r = shape(rng), c = shape(rng);
        Matrix m(F3x, r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) {
                std::vector<Int> cs(deg(rng) + 1);
                for (auto& v : cs) v = coef(rng);
                m.at(i, j) = poly(F3x, cs);
            }
        check_certificate(m, diagonal_reduce(m, stp));
    }

    auto PZ = product(integers(), zmod(4));
    auto stPZ = WitnessStrategy::auto_for(PZ);
    std::uniform_int_distribution<long long> small(-6, 6);
    for (int k = 0; k < 60; ++k) {
        int r = shape(rng), c = shape(rng);
        Matrix m(PZ, r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                m.at(i, j) = Elem::of_pair(PZ, Z->from_int(small(rng)),
                                           zmod(4)->from_int(small(rng)));
        check_certificate(m, diagonal_reduce(m, stPZ));
    }
}

TEST_CASE("verify_certificate flags each defect separately") {
    auto Z = integers();
    auto stz = WitnessStrategy::auto_for(Z);
    Matrix m = mat(Z, 2, 2, {2, 4, 6, 8});
    Certificate good = ge2_reduce(m, stz);
    REQUIRE(verify_certificate(m, good).ok());

    Certificate bad = good;
    bad.diag[0] = Z->from_int(3);
    Verdict v1 = verify_certificate(m, bad);
    CHECK_FALSE(v1.replay_equation);
    CHECK_FALSE(v1.ok());

    bad = good;
    bad.q_inv.at(0, 0) = bad.q_inv.at(0, 0) + Z->one();
    Verdict v2 = verify_certificate(m, bad);
    CHECK_FALSE(v2.q_inverse);
    CHECK(v2.replay_equation);

    // Replay holds but the chain order is wrong: diag(4, 2) on a matching
    // diagonal input.
    Certificate chain;
    chain.ring = Z;
    chain.q = Matrix::identity(Z, 2);
    chain.q_inv = Matrix::identity(Z, 2);
    chain.diag = {Z->from_int(4), Z->from_int(2)};
    Matrix dm = mat(Z, 2, 2, {4, 0, 0, 2});
    Verdict v3 = verify_certificate(dm, chain);
    CHECK(v3.replay_equation);
    CHECK(v3.q_inverse);
    CHECK_FALSE(v3.divisibility);
    CHECK(v3.canonical_diag);
    CHECK(v3.left_det_one);

    // Non-canonical diagonal entry: diag(-2) for the 1x1 matrix (-2).
    Certificate noncanon;
    noncanon.ring = Z;
    noncanon.q = Matrix::identity(Z, 1);
    noncanon.q_inv = Matrix::identity(Z, 1);
    noncanon.diag = {Z->from_int(-2)};
    Verdict v4 = verify_certificate(mat(Z, 1, 1, {-2}), noncanon);
    CHECK(v4.replay_equation);
    CHECK_FALSE(v4.canonical_diag);

    // A right-column op smuggled into left_ops is rejected outright.
    Certificate sided = good;
    sided.left_ops.push_back(ElementaryOp{OpSide::right_col, 0, 1, Z->one()});
    CHECK_THROWS_AS(verify_certificate(m, sided), precondition_error);

    // Ring mismatch between input and certificate.
    auto Z6 = zmod(6);
    Matrix m6 = mat(Z6, 2, 2, {2, 4, 0, 2});
    CHECK_THROWS_AS(verify_certificate(m6, good), precondition_error);
}

TEST_CASE("certificates over an infinite product with zero components") {
    auto Z = integers();
    auto Z4 = zmod(4);
    auto P = product(integers(), zmod(4));
    auto st = WitnessStrategy::auto_for(P);
    // Left component all zero, right component mixed: exercises the
    // componentwise finish where one factor collapses to the zero quotient.
    Matrix m(P, 2, 2);
    m.at(0, 0) = Elem::of_pair(P, Z->zero(), Z4->from_int(2));
    m.at(0, 1) = Elem::of_pair(P, Z->zero(), Z4->from_int(1));
    m.at(1, 0) = Elem::of_pair(P, Z->zero(), Z4->from_int(3));
    m.at(1, 1) = Elem::of_pair(P, Z->zero(), Z4->from_int(0));
    check_certificate(m, ge2_reduce(m, st));
    check_certificate(m, diagonal_reduce(m, st));

    Matrix m2(P, 2, 2);
    m2.at(0, 0) = Elem::of_pair(P, Z->from_int(2), Z4->from_int(0));
    m2.at(0, 1) = Elem::of_pair(P, Z->from_int(4), Z4->from_int(2));
    m2.at(1, 0) = Elem::of_pair(P, Z->from_int(6), Z4->from_int(0));
    m2.at(1, 1) = Elem::of_pair(P, Z->from_int(3), Z4->from_int(1));
    check_certificate(m2, ge2_reduce(m2, st));
    check_certificate(m2, diagonal_reduce(m2, st));
}
