#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cliffreal/qspace.hpp"
#include "cliffreal/rng.hpp"

using namespace cliffreal;

namespace {

Matrix split_gram(const FieldCtx& F, size_t m, std::vector<long> aniso = {}) {
    size_t n = 2 * m + aniso.size();
    Matrix B(n, n, F.spec());
    for (size_t i = 0; i < m; ++i) {
        B.at(2 * i, 2 * i + 1) = F.one();
        B.at(2 * i + 1, 2 * i) = F.one();
    }
    for (size_t i = 0; i < aniso.size(); ++i) B.at(2 * m + i, 2 * m + i) = F.from_long(2 * aniso[i]);
    return B;
}

Matrix diag_gram(const FieldCtx& F, std::vector<long> qs) {
    Matrix B(qs.size(), qs.size(), F.spec());
    for (size_t i = 0; i < qs.size(); ++i) B.at(i, i) = F.from_long(2 * qs[i]);
    return B;
}

Vec unit(const FieldCtx& F, size_t n, size_t i) {
    Vec v(n, F.zero());
    v[i] = F.one();
    return v;
}

}  // namespace

TEST_CASE("gram validation") {
    FieldCtx Q = make_field(FieldSpec{0});
    Matrix bad(2, 2, Q.spec());
    bad.at(0, 1) = Q.one();  // not symmetric
    CHECK_THROWS_AS(make_qspace(Q, bad), CliffordError);
    Matrix deg(2, 2, Q.spec());
    deg.at(0, 0) = Q.from_long(2);  // rank 1
    CHECK_THROWS_AS(make_qspace(Q, deg), CliffordError);
    Matrix big(13, 13, Q.spec());
    for (size_t i = 0; i < 13; ++i) big.at(i, i) = Q.from_long(2);
    CHECK_THROWS_AS(make_qspace(Q, big), CliffordError);
    CHECK_NOTHROW(make_qspace(Q, split_gram(Q, 2)));
}

TEST_CASE("q and polar agree with the gram") {
    FieldCtx Q = make_field(FieldSpec{0});
    QSpace V = make_qspace(Q, split_gram(Q, 1, {3}));
    Vec e = unit(Q, 3, 0), f = unit(Q, 3, 1), a = unit(Q, 3, 2);
    CHECK(V.q(e).is_zero());
    CHECK(V.q(f).is_zero());
    CHECK(V.polar(e, f).is_one());
    CHECK(V.q(a).str() == "3");
    CHECK(V.q(vec_add(e, f)).is_one());  // q(e+f) = B(e,f) = 1
    // polarization identity: q(x+y) = q(x) + q(y) + B(x,y)
    Rng rng(5);
    for (int it = 0; it < 20; ++it) {
        Vec x, y;
        for (int i = 0; i < 3; ++i) {
            x.push_back(rng.scalar(Q));
            y.push_back(rng.scalar(Q));
        }
        CHECK(V.q(vec_add(x, y)) == V.q(x) + V.q(y) + V.polar(x, y));
    }
}

TEST_CASE("orthogonal_diagonalize produces an orthogonal anisotropic basis") {
    for (long p : {0L, 5L, 7L}) {
        FieldCtx F = make_field(FieldSpec{p});
        QSpace V = make_qspace(F, split_gram(F, 2, {1}));
        auto [basis, qs] = orthogonal_diagonalize(V);
        REQUIRE(basis.size() == 5);
        for (size_t i = 0; i < 5; ++i) {
            CHECK(V.q(basis[i]) == qs[i]);
            CHECK_FALSE(qs[i].is_zero());
            for (size_t j = i + 1; j < 5; ++j) CHECK(V.polar(basis[i], basis[j]).is_zero());
        }
    }
}

TEST_CASE("orthogonal_diagonalize is deterministic") {
    FieldCtx F = make_field(FieldSpec{5});
    QSpace V = make_qspace(F, split_gram(F, 2));
    auto a = orthogonal_diagonalize(V);
    auto b = orthogonal_diagonalize(V);
    CHECK(a.first == b.first);
}

TEST_CASE("witt decomposition of the split form") {
    FieldCtx F = make_field(FieldSpec{7});
    QSpace V = make_qspace(F, split_gram(F, 2, {2}));
    WittBasis wb = witt_decompose(V);
    CHECK(wb.witt_index() == 2);
    CHECK(wb.anisotropic.size() == 1);
    for (size_t i = 0; i < wb.pairs.size(); ++i) {
        CHECK(V.q(wb.pairs[i].first).is_zero());
        CHECK(V.q(wb.pairs[i].second).is_zero());
        CHECK(V.polar(wb.pairs[i].first, wb.pairs[i].second).is_one());
        for (size_t j = i + 1; j < wb.pairs.size(); ++j) {
            CHECK(V.polar(wb.pairs[i].first, wb.pairs[j].first).is_zero());
            CHECK(V.polar(wb.pairs[i].first, wb.pairs[j].second).is_zero());
            CHECK(V.polar(wb.pairs[i].second, wb.pairs[j].first).is_zero());
            CHECK(V.polar(wb.pairs[i].second, wb.pairs[j].second).is_zero());
        }
        for (const Vec& a : wb.anisotropic) {
            CHECK(V.polar(wb.pairs[i].first, a).is_zero());
            CHECK(V.polar(wb.pairs[i].second, a).is_zero());
        }
    }
    for (size_t i = 0; i < wb.anisotropic.size(); ++i)
        CHECK(V.q(wb.anisotropic[i]) == wb.anisotropic_q[i]);
    // change matrix columns are e1 f1 ... a1 ... and invertible
    CHECK_FALSE(wb.change.det().is_zero());
}

TEST_CASE("witt index over F_p matches the classical value") {
    // dim 4: index 2 iff disc is a square (hyperbolic), else 1
    FieldCtx F = make_field(FieldSpec{5});
    QSpace hyp = make_qspace(F, split_gram(F, 2));
    CHECK(witt_decompose(hyp).witt_index() == 2);
    // diag q-values (1,1,1,2): disc class = 2, a nonsquare mod 5 -> index 1
    QSpace other = make_qspace(F, diag_gram(F, {1, 1, 1, 2}));
    CHECK(witt_decompose(other).witt_index() == 1);
    // every form of dim >= 3 over F_p is isotropic
    QSpace d3 = make_qspace(F, diag_gram(F, {1, 1, 1}));
    CHECK(witt_decompose(d3).witt_index() == 1);
}

TEST_CASE("anisotropic forms over Q are recognized") {
    FieldCtx Q = make_field(FieldSpec{0});
    QSpace pos = make_qspace(Q, diag_gram(Q, {1, 1, 1}));
    WittBasis wb = witt_decompose(pos);
    CHECK(wb.witt_index() == 0);
    CHECK(wb.anisotropic.size() == 3);
    Subspace full(pos, {unit(Q, 3, 0), unit(Q, 3, 1), unit(Q, 3, 2)});
    CHECK_FALSE(find_isotropic(full).has_value());
    // indefinite: x^2 - y^2 has the isotropic vector (1, 1)
    QSpace ind = make_qspace(Q, diag_gram(Q, {1, -1}));
    Subspace s(ind, {unit(Q, 2, 0), unit(Q, 2, 1)});
    auto iso = find_isotropic(s);
    REQUIRE(iso.has_value());
    CHECK(ind.q(*iso).is_zero());
}

TEST_CASE("standard_witt_basis reads split blocks off the unit vectors") {
    FieldCtx F = make_field(FieldSpec{5});
    QSpace V = make_qspace(F, split_gram(F, 3));
    WittBasis wb = standard_witt_basis(V);
    REQUIRE(wb.witt_index() == 3);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(wb.pairs[i].first == unit(F, 6, 2 * i));
        CHECK(wb.pairs[i].second == unit(F, 6, 2 * i + 1));
    }
    // a diagonal gram is literal block form with zero pairs
    QSpace D = make_qspace(F, diag_gram(F, {1, 1, 1, 1}));
    CHECK(standard_witt_basis(D).witt_index() == 0);
    // a scaled antidiagonal block is not literal form: falls back to search
    Matrix S(2, 2, F.spec());
    S.at(0, 1) = F.from_long(2);
    S.at(1, 0) = F.from_long(2);
    QSpace W = make_qspace(F, S);
    CHECK(standard_witt_basis(W).witt_index() == 1);
}

TEST_CASE("discriminant and subspaces") {
    FieldCtx F = make_field(FieldSpec{7});
    QSpace V = make_qspace(F, diag_gram(F, {1, 2, 3, 1}));
    Subspace w(V, {unit(F, 4, 0), unit(F, 4, 1)});
    CHECK(w.dim() == 2);
    CHECK(w.nondegenerate());
    // disc = class(q1 q2) = class(2) = 1, since 2 = 3^2 mod 7
    CHECK(discriminant(w).is_one());
    Subspace w2(V, {unit(F, 4, 1), unit(F, 4, 2)});
    CHECK(discriminant(w2).residue() == 3);  // 2*3 = 6, nonsquare
    Subspace w3(V, {unit(F, 4, 0), unit(F, 4, 3)});
    CHECK(discriminant(w3).is_one());
    CHECK_THROWS_AS(Subspace(V, {unit(F, 4, 0), unit(F, 4, 0)}), CliffordError);

    // degenerate subspace of a split space
    QSpace H = make_qspace(F, split_gram(F, 1));
    Subspace iso(H, {unit(F, 2, 0)});
    CHECK_FALSE(iso.nondegenerate());
}

TEST_CASE("orthogonal complement") {
    FieldCtx F = make_field(FieldSpec{5});
    QSpace V = make_qspace(F, diag_gram(F, {1, 1, 2, 3}));
    Subspace full(V, {unit(F, 4, 0), unit(F, 4, 1), unit(F, 4, 2), unit(F, 4, 3)});
    std::vector<Vec> comp = orthogonal_complement_in(full, {unit(F, 4, 0), unit(F, 4, 2)});
    REQUIRE(comp.size() == 2);
    for (const Vec& v : comp) {
        CHECK(V.polar(v, unit(F, 4, 0)).is_zero());
        CHECK(V.polar(v, unit(F, 4, 2)).is_zero());
    }
}
