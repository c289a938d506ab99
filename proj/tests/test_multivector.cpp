#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cliffreal/multivector.hpp"
#include "cliffreal/rng.hpp"

using namespace cliffreal;

namespace {

CtxPtr diag_ctx(const FieldCtx& F, std::vector<long> qs) {
    Matrix B(qs.size(), qs.size(), F.spec());
    for (size_t i = 0; i < qs.size(); ++i) B.at(i, i) = F.from_long(2 * qs[i]);
    return CliffordCtx::create(make_qspace(F, B));
}

Multivector gen(const CtxPtr& A, size_t i) {
    return Multivector::blade(A, std::uint32_t{1} << i, A->field().one());
}

Multivector random_mv(const CtxPtr& A, Rng& rng) {
    std::vector<std::pair<std::uint32_t, Scalar>> entries;
    for (std::uint32_t m = 0; m < A->blade_count(); ++m)
        if (rng.next_below(3) == 0) entries.emplace_back(m, rng.scalar(A->field()));
    return mv_from_entries(A, std::move(entries));
}

}  // namespace

TEST_CASE("generator relations") {
    FieldCtx Q = make_field(FieldSpec{0});
    CtxPtr A = diag_ctx(Q, {1, 2, -3});
    Multivector e1 = gen(A, 0), e2 = gen(A, 1), e3 = gen(A, 2);
    CHECK((e1 * e1).scalar_part().str() == "1");
    CHECK((e2 * e2).scalar_part().str() == "2");
    CHECK((e3 * e3).scalar_part().str() == "-3");
    CHECK(e1 * e2 == -(e2 * e1));
    CHECK((e1 * e2).coeff(0b011).is_one());
    CHECK((e2 * e1).coeff(0b011) == -Q.one());
    // e1 e2 e3 builds the top blade with sign +1
    CHECK((e1 * e2 * e3).coeff(0b111).is_one());
    // x^2 = q(x) for every vector
    Rng rng(11);
    for (int it = 0; it < 25; ++it) {
        Vec x;
        for (int i = 0; i < 3; ++i) x.push_back(rng.scalar(Q));
        Multivector xm = embed_vector(A, x);
        Multivector sq = xm * xm;
        CHECK(sq.is_scalar());
        CHECK(sq.scalar_part() == A->space().q(x));
    }
}

TEST_CASE("anticommutator gives the polar form") {
    FieldCtx F = make_field(FieldSpec{7});
    Matrix B(3, 3, F.spec());
    long vals[3][3] = {{2, 1, 0}, {1, 4, 1}, {0, 1, 6}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) B.at(i, j) = F.from_long(vals[i][j]);
    CtxPtr A = CliffordCtx::create(make_qspace(F, B));
    Rng rng(3);
    for (int it = 0; it < 25; ++it) {
        Vec x, y;
        for (int i = 0; i < 3; ++i) {
            x.push_back(rng.scalar(F));
            y.push_back(rng.scalar(F));
        }
        Multivector xm = embed_vector(A, x), ym = embed_vector(A, y);
        Multivector anti = xm * ym + ym * xm;
        CHECK(anti.is_scalar());
        CHECK(anti.scalar_part() == A->space().polar(x, y));
    }
}

TEST_CASE("algebra laws on random elements") {
    FieldCtx F = make_field(FieldSpec{5});
    CtxPtr A = diag_ctx(F, {1, 1, 2, 1});
    Rng rng(17);
    for (int it = 0; it < 15; ++it) {
        Multivector a = random_mv(A, rng), b = random_mv(A, rng), c = random_mv(A, rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) * c == a * c + b * c);
    }
}

TEST_CASE("grades and parity") {
    FieldCtx Q = make_field(FieldSpec{0});
    CtxPtr A = diag_ctx(Q, {1, 1, 1});
    Multivector e1 = gen(A, 0), e2 = gen(A, 1), e3 = gen(A, 2);
    Multivector m = Multivector::scalar(A, Q.from_long(4)) + e1 * e2 + e3;
    CHECK(m.grade_part(0).scalar_part().str() == "4");
    CHECK(m.grade_part(1) == e3);
    CHECK(m.grade_part(2) == e1 * e2);
    CHECK(m.grade_part(3).is_zero());
    CHECK(m.max_grade() == 2);
    CHECK_FALSE(m.parity().has_value());
    Multivector even = Multivector::scalar(A, Q.one()) + e1 * e2;
    CHECK(even.is_even());
    CHECK(even.parity() == 0);
    CHECK(e1.is_odd());
    CHECK((e1 * e2 * e3).parity() == 1);
    // zero is even by convention
    CHECK(Multivector::zero(A).is_even());
    CHECK_FALSE(Multivector::zero(A).is_odd());
}

TEST_CASE("reversion and grade involution") {
    FieldCtx F = make_field(FieldSpec{7});
    CtxPtr A = diag_ctx(F, {1, 2, 3, 1});
    Multivector e1 = gen(A, 0), e2 = gen(A, 1), e3 = gen(A, 2);
    // signs by grade: tau is +,+,-,- and alpha is +,-,+,-
    CHECK(e1.reversion() == e1);
    CHECK((e1 * e2).reversion() == e2 * e1);
    CHECK((e1 * e2 * e3).reversion() == -(e1 * e2 * e3));
    CHECK(e1.grade_involution() == -e1);
    CHECK((e1 * e2).grade_involution() == e1 * e2);
    Rng rng(29);
    for (int it = 0; it < 15; ++it) {
        Multivector a = random_mv(A, rng), b = random_mv(A, rng);
        CHECK((a * b).reversion() == b.reversion() * a.reversion());
        CHECK((a * b).grade_involution() == a.grade_involution() * b.grade_involution());
        CHECK(a.reversion().reversion() == a);
        CHECK(a.grade_involution().grade_involution() == a);
    }
}

TEST_CASE("inverses") {
    FieldCtx F = make_field(FieldSpec{5});
    CtxPtr A = diag_ctx(F, {1, 1, 4});
    Multivector e1 = gen(A, 0), e2 = gen(A, 1), e3 = gen(A, 2);
    Multivector one = Multivector::scalar(A, F.one());
    // versor path: product of anisotropic vectors, q(e1 + e2) = 2
    Multivector v = (e1 + e2) * e3;
    CHECK(mv_inverse(v) * v == one);
    CHECK(v * mv_inverse(v) == one);
    // dense solve path: u tau(u) = 4 e1 is not scalar, yet (2 + e1)(2 - e1) = 3
    Multivector u = Multivector::scalar(A, F.from_long(2)) + e1;
    REQUIRE_FALSE((u * u.reversion()).is_scalar());
    CHECK(mv_inverse(u) * u == one);
    CHECK(u * mv_inverse(u) == one);
    // zero divisors throw: (1 + e1) (1 - e1) = 0 since e1^2 = 1
    Multivector zd = one + e1;
    CHECK((zd * (one - e1)).is_zero());
    CHECK_THROWS_AS(mv_inverse(zd), CliffordError);
    CHECK_THROWS_AS(mv_inverse(Multivector::zero(A)), CliffordError);
    // random invertible elements round-trip
    Rng rng(41);
    int found = 0;
    for (int it = 0; it < 40 && found < 8; ++it) {
        Multivector a = random_mv(A, rng);
        try {
            Multivector ai = mv_inverse(a);
            CHECK(ai * a == one);
            ++found;
        } catch (const CliffordError&) {
        }
    }
    CHECK(found == 8);
}

TEST_CASE("vector embedding round-trips") {
    FieldCtx Q = make_field(FieldSpec{0});
    // non-diagonal gram so the internal basis differs from the ambient one
    Matrix B(2, 2, Q.spec());
    B.at(0, 0) = Q.from_long(2);
    B.at(0, 1) = Q.one();
    B.at(1, 0) = Q.one();
    B.at(1, 1) = Q.from_long(4);
    CtxPtr A = CliffordCtx::create(make_qspace(Q, B));
    Rng rng(7);
    for (int it = 0; it < 20; ++it) {
        Vec x = {rng.scalar(Q), rng.scalar(Q)};
        Multivector m = embed_vector(A, x);
        CHECK(m.grade_part(1) == m);
        CHECK(extract_vector(m) == x);
        CHECK((m * m).scalar_part() == A->space().q(x));
    }
    Multivector e1 = gen(A, 0);
    CHECK_THROWS_AS(extract_vector(e1 * Multivector::scalar(A, Q.one()) +
                                   Multivector::scalar(A, Q.one())),
                    CliffordError);
}

TEST_CASE("context mismatch is rejected") {
    FieldCtx F = make_field(FieldSpec{5});
    CtxPtr A = diag_ctx(F, {1, 1});
    CtxPtr Bc = diag_ctx(F, {1, 2});
    Multivector a = gen(A, 0), b = gen(Bc, 0);
    CHECK_THROWS_AS(a * b, CliffordError);
    CHECK_THROWS_AS(a + b, CliffordError);
}

TEST_CASE("entries builder and canonical zero") {
    FieldCtx F = make_field(FieldSpec{5});
    CtxPtr A = diag_ctx(F, {1, 1});
    // duplicate masks accumulate, zeros are dropped
    Multivector m = mv_from_entries(
        A, {{0b01, F.from_long(2)}, {0b01, F.from_long(3)}, {0b10, F.one()}});
    CHECK(m.coeff(0b01).is_zero());
    CHECK(m.terms().size() == 1);
    Multivector z = gen(A, 0) - gen(A, 0);
    CHECK(z.is_zero());
    CHECK(z.terms().empty());
    CHECK_THROWS_AS(Multivector::blade(A, 0b100, F.one()), CliffordError);
}
