#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cliffreal/scalar.hpp"

using namespace cliffreal;

TEST_CASE("field validation") {
    CHECK_NOTHROW(make_field(FieldSpec{0}));
    CHECK_NOTHROW(make_field(FieldSpec{3}));
    CHECK_NOTHROW(make_field(FieldSpec{9973}));
    CHECK_THROWS_AS(make_field(FieldSpec{2}), CliffordError);   // char 2
    CHECK_THROWS_AS(make_field(FieldSpec{9}), CliffordError);   // not prime
    CHECK_THROWS_AS(make_field(FieldSpec{-5}), CliffordError);
    CHECK_THROWS_AS(make_field(FieldSpec{10007}), CliffordError);  // over the cap
}

TEST_CASE("rational arithmetic is exact and canonical") {
    FieldCtx Q = make_field(FieldSpec{0});
    Scalar a = Q.parse("3/2"), b = Q.parse("-5/4");
    CHECK((a + b).str() == "1/4");
    CHECK((a * b).str() == "-15/8");
    CHECK((a - a).is_zero());
    CHECK((a / b).str() == "-6/5");
    CHECK(a.inv().str() == "2/3");
    CHECK((-b).str() == "5/4");
    CHECK(Scalar::rational(4, 8).str() == "1/2");
    CHECK(Scalar::rational(-4, 8) == Scalar::rational(1, -2));
    CHECK(a.pow(3).str() == "27/8");
    CHECK(a.pow(-2).str() == "4/9");
    CHECK(a.pow(0).is_one());
}

TEST_CASE("prime field arithmetic") {
    FieldCtx F = make_field(FieldSpec{7});
    Scalar a = F.from_long(4), b = F.from_long(5);
    CHECK((a + b).residue() == 2);
    CHECK((a * b).residue() == 6);
    CHECK((a - b).residue() == 6);
    CHECK(a.inv().residue() == 2);  // 4*2 = 8 = 1
    CHECK((-a).residue() == 3);
    CHECK(F.from_long(-1).residue() == 6);
    CHECK(F.from_long(700).residue() == 0);
    CHECK(a.pow(6).is_one());  // Fermat
    CHECK(a.str() == "4 mod 7");
    CHECK_THROWS_AS(F.zero().inv(), CliffordError);
    CHECK_THROWS_AS((void)(a / F.zero()), CliffordError);
}

TEST_CASE("mixed-field operations are rejected") {
    FieldCtx F5 = make_field(FieldSpec{5});
    FieldCtx Q = make_field(FieldSpec{0});
    CHECK_THROWS_AS((void)(F5.one() + Q.one()), CliffordError);
    CHECK_THROWS_AS(Q.check(F5.one()), CliffordError);
}

TEST_CASE("parsing round trips") {
    FieldCtx Q = make_field(FieldSpec{0});
    FieldCtx F = make_field(FieldSpec{11});
    for (const char* t : {"0", "-17", "3/2", "-22/7"}) CHECK(Q.parse(t).str() == t);
    CHECK(F.parse("4 mod 11").residue() == 4);
    CHECK(F.parse("-1").residue() == 10);
    CHECK(F.parse("13").residue() == 2);
    CHECK_THROWS_AS(Q.parse("1/0"), CliffordError);
    CHECK_THROWS_AS(Q.parse("x"), CliffordError);
    CHECK_THROWS_AS(F.parse("4 mod 7"), CliffordError);  // wrong modulus
    CHECK_THROWS_AS(Q.parse(""), CliffordError);
}

// squares mod p, frozen from the residue tables:
//   F_3: {1}, F_5: {1,4}, F_7: {1,2,4}
TEST_CASE("finite-field squares") {
    struct Row {
        long p;
        std::vector<long> squares;
        long least_nonsquare;
    };
    for (const Row& row : {Row{3, {1}, 2}, Row{5, {1, 4}, 2}, Row{7, {1, 2, 4}, 3}}) {
        FieldCtx F = make_field(FieldSpec{row.p});
        CHECK(F.least_nonsquare() == row.least_nonsquare);
        for (long r = 1; r < row.p; ++r) {
            bool expect = false;
            for (long s : row.squares) expect |= (s == r);
            auto [is, root] = is_square(F.from_long(r), F);
            CHECK(is == expect);
            if (is) {
                REQUIRE(root.has_value());
                CHECK((*root) * (*root) == F.from_long(r));
            }
            Scalar cls = square_class(F.from_long(r), F);
            CHECK(cls.residue() == (expect ? 1 : row.least_nonsquare));
        }
    }
}

TEST_CASE("rational squares and square classes") {
    FieldCtx Q = make_field(FieldSpec{0});
    auto [s1, r1] = is_square(Q.parse("9/4"), Q);
    CHECK(s1);
    CHECK(r1->str() == "3/2");
    CHECK_FALSE(is_square(Q.parse("2"), Q).first);
    CHECK_FALSE(is_square(Q.parse("-1"), Q).first);
    CHECK(square_class(Q.parse("9/4"), Q).is_one());
    CHECK(square_class(Q.parse("8"), Q).str() == "2");
    CHECK(square_class(Q.parse("-18"), Q).str() == "-2");
    CHECK(square_class(Q.parse("3/4"), Q).str() == "3");
    CHECK(square_class(Q.parse("1/3"), Q).str() == "3");  // 1/3 = 3 * (1/3)^2
    // invariance under multiplication by squares
    Scalar a = Q.parse("-70/9");
    Scalar b = a * Q.parse("49/16");
    CHECK(square_class(a, Q) == square_class(b, Q));
}

TEST_CASE("square class is multiplicative up to squares") {
    FieldCtx F = make_field(FieldSpec{7});
    for (long a = 1; a < 7; ++a)
        for (long b = 1; b < 7; ++b) {
            Scalar lhs = square_class(F.from_long(a * b), F);
            Scalar rhs = square_class(square_class(F.from_long(a), F) *
                                          square_class(F.from_long(b), F),
                                      F);
            CHECK(lhs == rhs);
        }
}
