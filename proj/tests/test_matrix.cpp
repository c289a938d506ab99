#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cliffreal/matrix.hpp"
#include "cliffreal/rng.hpp"

using namespace cliffreal;

namespace {

Matrix from_rows(const FieldCtx& F, std::vector<std::vector<long>> rows) {
    Matrix M(rows.size(), rows.empty() ? 0 : rows[0].size(), F.spec());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) M.at(i, j) = F.from_long(rows[i][j]);
    return M;
}

Matrix random_matrix(Rng& rng, const FieldCtx& F, size_t n) {
    Matrix M(n, n, F.spec());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) M.at(i, j) = rng.scalar(F);
    return M;
}

}  // namespace

TEST_CASE("determinant, rank, inverse on frozen cases") {
    FieldCtx Q = make_field(FieldSpec{0});
    Matrix A = from_rows(Q, {{1, 2}, {3, 4}});
    CHECK(A.det().str() == "-2");
    CHECK(A.rank() == 2);
    Matrix Ainv = A.inverse();
    CHECK((A * Ainv) == Matrix::identity(2, Q.spec()));
    CHECK(Ainv.at(0, 0).str() == "-2");
    CHECK(Ainv.at(0, 1).str() == "1");

    Matrix B = from_rows(Q, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
    CHECK(B.det().is_zero());
    CHECK(B.rank() == 2);
    CHECK_THROWS_AS(B.inverse(), CliffordError);
    CHECK(B.kernel().size() == 1);
    // kernel of the classic singular 3x3: multiples of (1, -2, 1)
    Vec k = B.kernel()[0];
    CHECK(vec_is_zero(vec_sub(vec_add(k, vec_scaled(k, Q.zero())), k)));
    Vec Bk(3, Q.zero());
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) Bk[i] = Bk[i] + B.at(i, j) * k[j];
    CHECK(vec_is_zero(Bk));

    FieldCtx F = make_field(FieldSpec{5});
    Matrix C = from_rows(F, {{2, 1}, {3, 4}});
    CHECK(C.det().residue() == 0);  // 8 - 3 = 5 = 0
    CHECK(C.rank() == 1);
}

TEST_CASE("solve and transpose") {
    FieldCtx F = make_field(FieldSpec{7});
    Matrix A = from_rows(F, {{1, 2}, {3, 4}});
    Vec b = {F.from_long(5), F.from_long(6)};
    Vec x = A.solve(b);
    Vec Ax(2, F.zero());
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) Ax[i] = Ax[i] + A.at(i, j) * x[j];
    CHECK(Ax[0] == b[0]);
    CHECK(Ax[1] == b[1]);
    CHECK(A.transpose().at(0, 1).residue() == 3);
}

TEST_CASE("inverse round trip on random invertible matrices") {
    for (long p : {0L, 5L, 7L}) {
        FieldCtx F = make_field(FieldSpec{p});
        Rng rng(42 + static_cast<unsigned long>(p));
        int done = 0;
        while (done < 10) {
            Matrix M = random_matrix(rng, F, 4);
            if (M.det().is_zero()) continue;
            CHECK((M * M.inverse()) == Matrix::identity(4, F.spec()));
            CHECK((M.inverse() * M) == Matrix::identity(4, F.spec()));
            CHECK(M.det() * M.inverse().det() == F.one());
            ++done;
        }
    }
}

TEST_CASE("polynomial helpers") {
    FieldCtx F = make_field(FieldSpec{5});
    // (x + 1)(x + 2) = x^2 + 3x + 2
    Poly a = {F.from_long(1), F.one()};
    Poly b = {F.from_long(2), F.one()};
    Poly ab = poly_mul(a, b, F);
    REQUIRE(ab.size() == 3);
    CHECK(ab[0].residue() == 2);
    CHECK(ab[1].residue() == 3);
    CHECK(ab[2].residue() == 1);
    auto [q, r] = poly_divmod(ab, a, F);
    CHECK(poly_trim(r).size() == 1);
    CHECK(poly_trim(r)[0].is_zero());
    CHECK(poly_deg(q) == 1);
    CHECK(poly_eval(ab, F.from_long(3)).residue() == (9 + 9 + 2) % 5);
    CHECK(poly_is_squarefree(ab, F));
    Poly sq = poly_mul(a, a, F);
    CHECK_FALSE(poly_is_squarefree(sq, F));
    Poly g = poly_gcd(sq, ab, F);
    CHECK(poly_deg(g) == 1);
    CHECK(g[1].is_one());  // monic
}

TEST_CASE("char_poly and min_poly") {
    FieldCtx F7 = make_field(FieldSpec{7});
    // diag(2,4,4,2,1,1): min poly (x-1)(x-2)(x-4) = x^3 - 1 over F_7
    Matrix D(6, 6, F7.spec());
    long d[] = {2, 4, 4, 2, 1, 1};
    for (size_t i = 0; i < 6; ++i) D.at(i, i) = F7.from_long(d[i]);
    Poly mp = min_poly(D);
    REQUIRE(mp.size() == 4);
    CHECK(mp[0].residue() == 6);
    CHECK(mp[1].residue() == 0);
    CHECK(mp[2].residue() == 0);
    CHECK(mp[3].residue() == 1);
    CHECK(poly_is_squarefree(mp, F7));

    Poly cp = char_poly(D);
    CHECK(poly_deg(cp) == 6);
    for (long v : {1, 2, 4}) CHECK(poly_eval(cp, F7.from_long(v)).is_zero());
    std::vector<Scalar> roots = field_roots(cp, F7);
    CHECK(roots.size() == 3);

    FieldCtx Q = make_field(FieldSpec{0});
    Matrix I = Matrix::identity(3, Q.spec());
    Poly mi = min_poly(I);
    REQUIRE(mi.size() == 2);  // x - 1
    CHECK(mi[0].str() == "-1");
    CHECK(mi[1].is_one());

    // nontrivial Jordan block: min poly (x-1)^2, not squarefree
    Matrix J = Matrix::identity(2, Q.spec());
    J.at(0, 1) = Q.one();
    Poly mj = min_poly(J);
    CHECK(poly_deg(mj) == 2);
    CHECK_FALSE(poly_is_squarefree(mj, Q));
}

TEST_CASE("min_poly divides char_poly and annihilates") {
    FieldCtx F = make_field(FieldSpec{5});
    Rng rng(7);
    for (int it = 0; it < 10; ++it) {
        Matrix M = random_matrix(rng, F, 3);
        Poly mp = min_poly(M);
        Poly cp = char_poly(M);
        auto [q, r] = poly_divmod(cp, mp, F);
        CHECK(poly_trim(r).size() == 1);
        CHECK(poly_trim(r)[0].is_zero());
        Matrix acc(3, 3, F.spec());
        Matrix pw = Matrix::identity(3, F.spec());
        for (size_t i = 0; i < mp.size(); ++i) {
            acc = acc + pw.scaled(mp[i]);
            pw = pw * M;
        }
        CHECK(acc == Matrix(3, 3, F.spec()));
    }
}

TEST_CASE("from_columns and column access") {
    FieldCtx Q = make_field(FieldSpec{0});
    Vec c1 = {Q.from_long(1), Q.from_long(2)};
    Vec c2 = {Q.from_long(3), Q.from_long(4)};
    Matrix M = Matrix::from_columns({c1, c2}, Q.spec());
    CHECK(M.at(0, 1).str() == "3");
    CHECK(M.column(0) == c1);
    CHECK_THROWS_AS(Matrix::from_columns({c1, Vec{Q.one()}}, Q.spec()), CliffordError);
}
