#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cliffreal/rng.hpp"
#include "cliffreal/torus.hpp"

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

CtxPtr split_ctx(const FieldCtx& F, size_t m, std::vector<long> aniso = {}) {
    return CliffordCtx::create(make_qspace(F, split_gram(F, m, std::move(aniso))));
}

CtxPtr diag_ctx(const FieldCtx& F, std::vector<long> qs) {
    Matrix B(qs.size(), qs.size(), F.spec());
    for (size_t i = 0; i < qs.size(); ++i) B.at(i, i) = F.from_long(2 * qs[i]);
    return CliffordCtx::create(make_qspace(F, B));
}

TorusElement torus(const CtxPtr& A, long l0, std::vector<long> ls) {
    const FieldCtx& F = A->field();
    std::vector<Scalar> lambdas;
    for (long l : ls) lambdas.push_back(F.from_long(l));
    return make_torus_element(A, F.from_long(l0), lambdas, standard_witt_basis(A->space()));
}

// chi(t) should be diag(l_i, l_i^{-1}) blockwise and identity on the tail.
Matrix predicted_chi(const CtxPtr& A, const std::vector<Scalar>& ls) {
    const FieldCtx& F = A->field();
    size_t n = A->dim();
    Matrix D(n, n, F.spec());
    for (size_t i = 0; i < ls.size(); ++i) {
        D.at(2 * i, 2 * i) = ls[i];
        D.at(2 * i + 1, 2 * i + 1) = ls[i].inv();
    }
    for (size_t i = 2 * ls.size(); i < n; ++i) D.at(i, i) = F.one();
    return D;
}

}  // namespace

TEST_CASE("torus elements have the predicted action and norm") {
    for (long p : {0L, 7L}) {
        FieldCtx F = make_field(FieldSpec{p});
        CtxPtr A = split_ctx(F, 2, {1});
        Rng rng(p + 1);
        for (int it = 0; it < 10; ++it) {
            std::vector<Scalar> ls = {rng.nonzero_scalar(F), rng.nonzero_scalar(F)};
            Scalar l0 = rng.nonzero_scalar(F);
            TorusElement t = make_torus_element(A, l0, ls, standard_witt_basis(A->space()));
            CHECK(t.element.chi == predicted_chi(A, ls));
            CHECK(t.element.norm == l0 * l0 * ls[0] * ls[1]);
            CHECK(t.element.parity == 0);
        }
        CHECK_THROWS_AS(torus(A, 0, {1, 1}), CliffordError);
        CHECK_THROWS_AS(torus(A, 1, {1, 0}), CliffordError);
        CHECK_THROWS_AS(torus(A, 1, {1, 1, 1}), CliffordError);  // only 2 pairs
    }
}

TEST_CASE("standard conjugator inverts every torus element") {
    for (long p : {0L, 5L}) {
        FieldCtx F = make_field(FieldSpec{p});
        for (size_t m : {1u, 2u, 3u, 4u}) {
            CtxPtr A = split_ctx(F, m);
            WittBasis wb = standard_witt_basis(A->space());
            GroupElement s = standard_conjugator(A, wb, m);
            CHECK(s.norm.is_one());
            Multivector s2 = s.mv * s.mv;
            CHECK(s2.is_scalar());
            CHECK(s2.scalar_part() == standard_conjugator_sign(F, m));
            Rng rng(m);
            for (int it = 0; it < 6; ++it) {
                std::vector<Scalar> ls;
                for (size_t i = 0; i < m; ++i) ls.push_back(rng.nonzero_scalar(F));
                TorusElement t = make_torus_element(A, F.one(), ls, wb);
                RealityCertificate c = make_certificate(A, t.element, s, Relation::NtTInverse);
                CHECK(c.s_norm.is_one());
            }
        }
    }
}

TEST_CASE("conjugator sign tables") {
    FieldCtx F = make_field(FieldSpec{7});
    // (-1)^{m(m-1)/2} for m = 1..6: + - - + + -
    std::vector<long> std_signs = {1, -1, -1, 1, 1, -1};
    // (-1)^{m(m+1)/2} for m = 1..6: - - + + - -
    std::vector<long> split_signs = {-1, -1, 1, 1, -1, -1};
    for (size_t m = 1; m <= 6; ++m) {
        CHECK(standard_conjugator_sign(F, m) == F.from_long(std_signs[m - 1]));
        CHECK(split_conjugator_sign(F, m) == F.from_long(split_signs[m - 1]));
    }
}

TEST_CASE("minus conjugator flips the norm relation") {
    FieldCtx F = make_field(FieldSpec{7});
    CtxPtr A = split_ctx(F, 3);
    WittBasis wb = standard_witt_basis(A->space());
    // m odd with lambda_1 = -1
    TorusElement t = torus(A, 1, {-1, 2, 3});
    GroupElement s = minus_conjugator(A, t);
    CHECK(s.parity == 0);
    Multivector s2 = s.mv * s.mv;
    CHECK(s2.is_scalar());
    // s^2 = (-1)^{(m-1)(m-2)/2}, m = 3 -> -1
    CHECK(s2.scalar_part() == -F.one());
    RealityCertificate c = make_certificate(A, t.element, s, Relation::MinusNtTInverse);
    CHECK(c.s_norm.is_one());
    // lambda_1 != -1 or m even is rejected
    CHECK_THROWS_AS(minus_conjugator(A, torus(A, 1, {2, 2, 3})), CliffordError);
    CtxPtr A2 = split_ctx(F, 2);
    CHECK_THROWS_AS(minus_conjugator(A2, torus(A2, 1, {-1, 2})), CliffordError);
}

TEST_CASE("odd split conjugator") {
    FieldCtx F = make_field(FieldSpec{5});
    for (long d : {1L, 2L, 3L}) {
        for (size_t m : {1u, 2u}) {
            CtxPtr A = split_ctx(F, m, {d});
            TorusElement t = torus(A, 1, m == 1 ? std::vector<long>{2} : std::vector<long>{2, 3});
            RealityCertificate c = odd_split_conjugator(A, t);
            CHECK(c.relation == Relation::NtTInverse);
            CHECK(c.s_norm.is_one());
            CHECK(c.s.parity == 0);
            CHECK(c.s_squared == split_conjugator_sign(F, m));
        }
    }
    // even dimension is rejected
    CtxPtr E = split_ctx(F, 2);
    CHECK_THROWS_AS(odd_split_conjugator(E, torus(E, 1, {2, 3})), CliffordError);
}

TEST_CASE("involution lift") {
    FieldCtx F = make_field(FieldSpec{5});
    CtxPtr A = diag_ctx(F, {1, 1, 2, 3});
    const QSpace& V = A->space();
    auto unit = [&](size_t i) {
        Vec v(4, F.zero());
        v[i] = F.one();
        return v;
    };
    // q-values 1, 1: gamma^2 = (-1)^1 * 1 = -1 = 4 mod 5, a square
    GroupElement u = involution_lift(A, Subspace(V, {unit(0), unit(1)}));
    CHECK(u.parity == 0);
    CHECK((u.mv * u.mv).scalar_part().is_one());
    // chi(u) = -id on W, +id on the complement
    Vec w0 = u.chi * unit(0);
    CHECK(w0 == vec_scaled(unit(0), -F.one()));
    CHECK(u.chi * unit(3) == unit(3));
    // q-values 2, 3: gamma^2 = -6 = 4 mod 5, a square
    CHECK_NOTHROW(involution_lift(A, Subspace(V, {unit(2), unit(3)})));
    // q-values 1, 2: gamma^2 = -2 = 3 mod 5, a nonsquare
    CHECK_THROWS_AS(involution_lift(A, Subspace(V, {unit(0), unit(2)})), CliffordError);
    // odd-dimensional subspace is rejected
    CHECK_THROWS_AS(involution_lift(A, Subspace(V, {unit(0)})), CliffordError);
}

TEST_CASE("eigen split merges reciprocal pairs") {
    FieldCtx F = make_field(FieldSpec{7});
    CtxPtr A = split_ctx(F, 2, {1});
    // lambda = 2 and 4 = 2^{-1} mod 7 merge into one W_lambda of dim 4
    TorusElement t = torus(A, 1, {2, 4});
    EigenSplit es = eigen_split(A, t.element);
    CHECK(es.one.dim() == 1);
    CHECK(es.minus_one.dim() == 0);
    REQUIRE(es.pairs.size() == 1);
    CHECK(es.pairs[0].space_lambda.dim() == 2);
    CHECK(es.pairs[0].space_lambda_inv.dim() == 2);
    // eigenvector check: chi(t) x = lambda x on space_lambda
    const Scalar& l = es.pairs[0].lambda;
    for (const Vec& x : es.pairs[0].space_lambda.basis)
        CHECK(t.element.chi * x == vec_scaled(x, l));

    // -1 and +1 blocks appear where expected
    TorusElement t2 = torus(A, 1, {-1, 3});
    EigenSplit es2 = eigen_split(A, t2.element);
    CHECK(es2.one.dim() == 1);
    CHECK(es2.minus_one.dim() == 2);
    CHECK(es2.pairs.size() == 1);

    // 1 + e f is the torus element with lambda = 2, not a unipotent:
    // (e + f)(e + 2f) = 1 + ef
    WittBasis wb = standard_witt_basis(A->space());
    Multivector ef = embed_vector(A, wb.pairs[0].first) * embed_vector(A, wb.pairs[0].second);
    Multivector one = Multivector::scalar(A, F.one());
    GroupElement diag2 = make_group_element(one + ef);
    CHECK(is_semisimple(diag2));
    CHECK(diag2.chi == torus(A, 1, {2, 1}).element.chi);

    // the Eichler element 1 + e w (w anisotropic, orthogonal to isotropic e)
    // is a genuine unipotent
    Multivector ew =
        embed_vector(A, wb.pairs[0].first) * embed_vector(A, wb.anisotropic[0]);
    GroupElement unip = make_group_element(one + ew);
    CHECK(unip.norm.is_one());
    CHECK(unip.chi != Matrix::identity(5, F.spec()));
    CHECK_FALSE(is_semisimple(unip));
    CHECK_THROWS_AS(eigen_split(A, unip), CliffordError);

    // irrational eigenvalues over Q
    FieldCtx Q = make_field(FieldSpec{0});
    CtxPtr AQ = diag_ctx(Q, {1, 1});
    Vec v1 = {Q.one(), Q.zero()}, v2 = {Q.zero(), Q.one()};
    GroupElement rot = make_group_element(embed_vector(AQ, v1) *
                                          embed_vector(AQ, vec_add(v1, v2)));
    CHECK(is_semisimple(rot));
    CHECK_THROWS_AS(eigen_split(AQ, rot), CliffordError);
}

TEST_CASE("certificates verify the claimed relation") {
    FieldCtx F = make_field(FieldSpec{5});
    CtxPtr A = split_ctx(F, 2);
    WittBasis wb = standard_witt_basis(A->space());
    TorusElement t = torus(A, 1, {2, 3});
    GroupElement s = standard_conjugator(A, wb, 2);
    // N(t) = 6 = 1, so both TInverse and NtTInverse hold here
    CHECK(t.element.norm.is_one());
    CHECK_NOTHROW(make_certificate(A, t.element, s, Relation::TInverse));
    CHECK_NOTHROW(make_certificate(A, t.element, s, Relation::NtTInverse));
    // the minus relation does not
    CHECK_THROWS_AS(make_certificate(A, t.element, s, Relation::MinusNtTInverse),
                    CliffordError);
    // N(t) = 4 != 1 separates the two relations
    TorusElement t2 = torus(A, 1, {2, 2});
    CHECK_THROWS_AS(make_certificate(A, t2.element, s, Relation::TInverse), CliffordError);
    CHECK_NOTHROW(make_certificate(A, t2.element, s, Relation::NtTInverse));
}

TEST_CASE("blockwise and spin conjugators on generic semisimple elements") {
    FieldCtx F = make_field(FieldSpec{7});
    CtxPtr A = split_ctx(F, 2, {1});
    Rng rng(3);
    for (int it = 0; it < 8; ++it) {
        long a = 2 + static_cast<long>(rng.next_below(5));
        long b = 2 + static_cast<long>(rng.next_below(5));
        TorusElement t = torus(A, 1, {a, b});
        RealityCertificate bc = blockwise_conjugator(A, t.element);
        // the relation collapses to plain inversion when N(t) = 1
        Relation want = t.element.norm.is_one() ? Relation::TInverse : Relation::NtTInverse;
        CHECK(bc.relation == want);
        CHECK(bc.s_norm.is_one());
        RealityCertificate sc = spin_conjugator(A, t.element);
        CHECK(sc.s.parity == 0);
        CHECK(sc.s_norm.is_one());
    }
}

TEST_CASE("spin reality decisions by dimension class") {
    // dim 5 = 1 mod 4: always Real for torus elements of Spin
    FieldCtx F = make_field(FieldSpec{5});
    {
        CtxPtr A = split_ctx(F, 2, {1});
        TorusElement t = torus(A, 1, {4, 4});  // N = 16 = 1
        CHECK(is_spin(t.element));
        RealityDecision d = is_real_semisimple_spin(A, t.element);
        CHECK(d.kind == RealityKind::Real);
        REQUIRE(d.cert.has_value());
        CHECK(d.cert->relation == Relation::TInverse);
    }
    // dim 6 = 2 mod 4: Real iff 1 is an eigenvalue
    {
        CtxPtr A = split_ctx(F, 3);
        TorusElement with_one = torus(A, 1, {1, 4, 4});
        CHECK(is_spin(with_one.element));
        CHECK(is_real_semisimple_spin(A, with_one.element).kind == RealityKind::Real);
        TorusElement no_one = torus(A, 2, {4, 4, 4});  // N = 4*64 = 256 = 1 mod 5
        CHECK(is_spin(no_one.element));
        CHECK(is_real_semisimple_spin(A, no_one.element).kind == RealityKind::NotReal);
    }
    // dim 4 = 0 mod 4: Real by the standard conjugator
    {
        CtxPtr A = split_ctx(F, 2);
        TorusElement t = torus(A, 4, {2, 3});  // N = 16*6 = 96 = 1 mod 5
        CHECK(is_spin(t.element));
        CHECK(is_real_semisimple_spin(A, t.element).kind == RealityKind::Real);
        // not in Spin: odd norm class
        TorusElement bad = torus(A, 1, {2, 1});
        CHECK_FALSE(is_spin(bad.element));
        CHECK_THROWS_AS(is_real_semisimple_spin(A, bad.element), CliffordError);
    }
    // over Q: a 3-4-5 rotation is in Spin (N = 25/25) and semisimple, but its
    // complex eigenvalues are irrational, so the construction gives Undecided
    {
        FieldCtx Q = make_field(FieldSpec{0});
        CtxPtr AQ = diag_ctx(Q, {1, 1, 1, 1});
        Vec v1 = {Q.one(), Q.zero(), Q.zero(), Q.zero()};
        Vec w = {Q.from_long(3), Q.from_long(4), Q.zero(), Q.zero()};  // q(w) = 25
        Multivector u = (embed_vector(AQ, v1) * embed_vector(AQ, w)).scaled(Q.parse("1/5"));
        GroupElement el = make_group_element(u);
        CHECK(is_spin(el));
        CHECK(is_semisimple(el));
        CHECK(is_real_semisimple_spin(AQ, el).kind == RealityKind::Undecided);
    }
}

TEST_CASE("involution decomposition from a TInverse certificate") {
    FieldCtx F = make_field(FieldSpec{5});
    CtxPtr A = split_ctx(F, 2);
    WittBasis wb = standard_witt_basis(A->space());
    TorusElement t = torus(A, 1, {2, 3});  // N(t) = 1
    GroupElement s = standard_conjugator(A, wb, 2);
    RealityCertificate c = make_certificate(A, t.element, s, Relation::TInverse);
    InvolutionPair ip = involution_decompose(A, t.element, c);
    // t = tau1 tau2 and tau_i^2 = s^2
    CHECK(ip.tau1.mv * ip.tau2.mv == t.element.mv);
    Multivector t1sq = ip.tau1.mv * ip.tau1.mv;
    Multivector t2sq = ip.tau2.mv * ip.tau2.mv;
    CHECK(t1sq.scalar_part() == ip.eps1);
    CHECK(t2sq.scalar_part() == ip.eps2);
    CHECK(ip.eps1 == standard_conjugator_sign(F, 2));
    // a certificate for the wrong relation is rejected
    TorusElement t2 = torus(A, 1, {2, 2});
    RealityCertificate c2 = make_certificate(A, t2.element, s, Relation::NtTInverse);
    CHECK_THROWS_AS(involution_decompose(A, t2.element, c2), CliffordError);
}

TEST_CASE("norm condition on the anisotropic line in odd dimension") {
    // over F_p a free hyperbolic factor makes the norm image all of F_p^*
    FieldCtx F = make_field(FieldSpec{5});
    CtxPtr A = split_ctx(F, 2, {1});
    CHECK(odd_dim_norm_condition(A, torus(A, 1, {2, 4})));
    // strongly regular preconditions: 1, repeats, and reciprocal pairs fail
    CHECK_THROWS_AS(odd_dim_norm_condition(A, torus(A, 1, {1, 2})), CliffordError);
    CHECK_THROWS_AS(odd_dim_norm_condition(A, torus(A, 1, {2, 2})), CliffordError);
    CHECK_THROWS_AS(odd_dim_norm_condition(A, torus(A, 1, {2, 3})), CliffordError);  // 2*3 = 1

    // with no pairs only lambda0^2 is reachable, so the image is the squares
    CtxPtr L1 = split_ctx(F, 0, {2});  // q(e_0) = 2, nonsquare mod 5
    CHECK_FALSE(odd_dim_norm_condition(L1, torus(L1, 1, {})));
    CtxPtr L2 = split_ctx(F, 0, {4});
    CHECK(odd_dim_norm_condition(L2, torus(L2, 1, {})));

    // same split over Q: free factor reaches everything, squares otherwise
    FieldCtx Q = make_field(FieldSpec{0});
    CtxPtr AQ = split_ctx(Q, 2, {-1});
    CHECK(odd_dim_norm_condition(AQ, torus(AQ, 1, {2, 3})));
    CtxPtr LQ = split_ctx(Q, 0, {-1});
    CHECK_FALSE(odd_dim_norm_condition(LQ, torus(LQ, 1, {})));
    CtxPtr LQ2 = split_ctx(Q, 0, {9});
    CHECK(odd_dim_norm_condition(LQ2, torus(LQ2, 1, {})));
}
