#include "cliffreal/torus.hpp"

#include <algorithm>
#include <set>

#include "cliffreal/errors.hpp"

namespace cliffreal {

const char* relation_name(Relation r) {
    switch (r) {
        case Relation::TInverse: return "t_inverse";
        case Relation::NtTInverse: return "norm_t_inverse";
        case Relation::MinusNtTInverse: return "minus_norm_t_inverse";
    }
    return "?";
}

const char* group_level_name(GroupLevel g) {
    switch (g) {
        case GroupLevel::Gamma: return "gamma";
        case GroupLevel::GammaPlus: return "gamma_plus";
        case GroupLevel::Spin: return "spin";
    }
    return "?";
}

namespace {

Multivector product_of_vectors(const CtxPtr& ctx, const std::vector<Vec>& vs) {
    Multivector u = Multivector::scalar(ctx, ctx->field().one());
    for (const auto& v : vs) u = u * embed_vector(ctx, v);
    return u;
}

}  // namespace

TorusElement make_torus_element(const CtxPtr& ctx, const Scalar& lambda0,
                                const std::vector<Scalar>& lambdas, const WittBasis& basis) {
    const FieldCtx& F = ctx->field();
    if (lambda0.is_zero()) fail(ErrorCode::ZeroParameter, "lambda0 must be nonzero");
    for (const auto& l : lambdas)
        if (l.is_zero()) fail(ErrorCode::ZeroParameter, "torus parameters must be nonzero");
    if (lambdas.size() > basis.pairs.size())
        fail(ErrorCode::PreconditionViolated, "not enough hyperbolic pairs for the torus element");
    Multivector t = Multivector::scalar(ctx, lambda0);
    for (size_t i = 0; i < lambdas.size(); ++i) {
        const auto& [e, f] = basis.pairs[i];
        Multivector me = embed_vector(ctx, e), mf = embed_vector(ctx, f);
        t = t * ((me + mf) * (me + mf.scaled(lambdas[i])));
    }
    GroupElement g = make_group_element(t);
    Scalar want = lambda0 * lambda0;
    for (const auto& l : lambdas) want *= l;
    if (g.norm != want) fail(ErrorCode::Internal, "torus norm disagrees with lambda0^2 prod lambda_i");
    return TorusElement{lambda0, lambdas, basis, std::move(g)};
}

Scalar standard_conjugator_sign(const FieldCtx& F, size_t m) {
    return F.from_long((m * (m - 1) / 2) % 2 == 0 ? 1 : -1);
}

Scalar split_conjugator_sign(const FieldCtx& F, size_t m) {
    return F.from_long((m * (m + 1) / 2) % 2 == 0 ? 1 : -1);
}

GroupElement standard_conjugator(const CtxPtr& ctx, const WittBasis& basis, size_t m) {
    if (m > basis.pairs.size())
        fail(ErrorCode::PreconditionViolated, "not enough hyperbolic pairs for the conjugator");
    std::vector<Vec> vs;
    for (size_t i = 0; i < m; ++i) vs.push_back(vec_add(basis.pairs[i].first, basis.pairs[i].second));
    return make_group_element(product_of_vectors(ctx, vs));
}

GroupElement minus_conjugator(const CtxPtr& ctx, const TorusElement& t) {
    size_t m = t.lambdas.size();
    if (m % 2 == 0) fail(ErrorCode::PreconditionViolated, "minus-form conjugator needs odd m");
    if (t.lambdas[0] != -ctx->field().one())
        fail(ErrorCode::PreconditionViolated, "minus-form conjugator needs lambda_1 = -1");
    std::vector<Vec> vs;
    for (size_t i = 1; i < m; ++i) vs.push_back(vec_add(t.basis.pairs[i].first, t.basis.pairs[i].second));
    return make_group_element(product_of_vectors(ctx, vs));
}

GroupElement involution_lift(const CtxPtr& ctx, const Subspace& w) {
    const FieldCtx& F = ctx->field();
    if (w.dim() == 0 || w.dim() % 2 != 0)
        fail(ErrorCode::PreconditionViolated, "involution lift needs a nonzero even-dimensional subspace");
    auto [vs, qs] = orthogonal_diagonalize(w);
    size_t r = vs.size() / 2;
    Scalar c = F.from_long(r % 2 == 0 ? 1 : -1);
    for (const auto& q : qs) c *= q;
    auto [sq, root] = is_square(c, F);
    if (!sq)
        fail(ErrorCode::NotLiftable,
             "minus-identity does not lift to an involution: obstruction square class " +
                 square_class(c, F).str());
    vs[0] = vec_scaled(vs[0], root->inv());
    GroupElement u = make_group_element(product_of_vectors(ctx, vs));
    if (!(u.mv * u.mv == Multivector::scalar(ctx, F.one())))
        fail(ErrorCode::Internal, "lifted element does not square to 1");
    return u;
}

bool is_semisimple(const GroupElement& t) {
    const FieldCtx& F = t.mv.ctx()->field();
    return poly_is_squarefree(min_poly(t.chi), F);
}

EigenSplit eigen_split(const CtxPtr& ctx, const GroupElement& t) {
    const FieldCtx& F = ctx->field();
    const QSpace& V = ctx->space();
    size_t n = V.dim();
    Poly mp = min_poly(t.chi);
    if (!poly_is_squarefree(mp, F))
        fail(ErrorCode::NotSemisimple, "minimal polynomial of chi(t) is not squarefree");

    std::vector<std::pair<Scalar, std::vector<Vec>>> eig;
    size_t total = 0;
    for (const Scalar& lam : field_roots(mp, F)) {
        Matrix shifted = t.chi;
        for (size_t i = 0; i < n; ++i) shifted.at(i, i) -= lam;
        std::vector<Vec> K = shifted.kernel();
        if (K.empty()) fail(ErrorCode::Internal, "minimal polynomial root without eigenvector");
        total += K.size();
        eig.emplace_back(lam, std::move(K));
    }
    if (total < n)
        fail(ErrorCode::EigenvaluesNotRational, "chi(t) has eigenvalues outside the base field");

    Subspace one(V, {});
    Subspace minus(V, {});
    std::vector<EigenPair> pairs;
    std::set<Scalar> used;
    for (const auto& [lam, K] : eig) {
        if (lam == F.one()) {
            one = Subspace(V, K);
        } else if (lam == -F.one()) {
            minus = Subspace(V, K);
        } else {
            if (used.count(lam)) continue;
            Scalar li = lam.inv();
            const std::vector<Vec>* Ki = nullptr;
            for (const auto& [mu, Km] : eig)
                if (mu == li) { Ki = &Km; break; }
            if (!Ki) fail(ErrorCode::Internal, "eigenvalue without reciprocal partner");
            if (Ki->size() != K.size()) fail(ErrorCode::Internal, "reciprocal eigenspaces of unequal dimension");
            used.insert(lam);
            used.insert(li);
            const Scalar& rep = lam < li ? li : lam;
            const std::vector<Vec>& Kr = (rep == lam) ? K : *Ki;
            const std::vector<Vec>& Kri = (rep == lam) ? *Ki : K;
            pairs.push_back(EigenPair{rep, Subspace(V, Kr), Subspace(V, Kri)});
        }
    }

    if (minus.dim() % 2 != 0) fail(ErrorCode::Internal, "odd-dimensional -1 eigenspace");
    // pairing of the blocks: B(V_lambda, V_mu) = 0 unless lambda mu = 1
    std::vector<std::pair<Scalar, const Subspace*>> blocks;
    if (one.dim()) blocks.emplace_back(F.one(), &one);
    if (minus.dim()) blocks.emplace_back(-F.one(), &minus);
    for (const auto& p : pairs) {
        blocks.emplace_back(p.lambda, &p.space_lambda);
        blocks.emplace_back(p.lambda.inv(), &p.space_lambda_inv);
    }
    for (size_t a = 0; a < blocks.size(); ++a)
        for (size_t b = a; b < blocks.size(); ++b) {
            if (blocks[a].first * blocks[b].first == F.one()) continue;
            for (const auto& x : blocks[a].second->basis)
                for (const auto& y : blocks[b].second->basis)
                    if (!V.polar(x, y).is_zero())
                        fail(ErrorCode::Internal, "eigenspaces pair outside reciprocal blocks");
        }
    if (!one.nondegenerate() || !minus.nondegenerate())
        fail(ErrorCode::Internal, "degenerate +-1 eigenspace");
    return EigenSplit{std::move(one), std::move(minus), std::move(pairs)};
}

RealityCertificate make_certificate(const CtxPtr& ctx, const GroupElement& t,
                                    const GroupElement& s, Relation relation) {
    const FieldCtx& F = ctx->field();
    Multivector tinv = mv_inverse(t.mv);
    Multivector target = tinv;
    if (relation == Relation::NtTInverse) target = tinv.scaled(t.norm);
    if (relation == Relation::MinusNtTInverse) target = tinv.scaled(-t.norm);
    if (!(s.mv * t.mv * mv_inverse(s.mv) == target))
        fail(ErrorCode::WrongRelation, "conjugation does not produce the claimed relation");
    Multivector s2 = s.mv * s.mv;
    if (!s2.is_scalar())
        fail(ErrorCode::PreconditionViolated, "conjugator square is not scalar");
    Scalar s2v = s2.scalar_part();
    if (!(s2v == F.one() || s2v == -F.one()))
        fail(ErrorCode::PreconditionViolated, "conjugator square is not +-1");
    GroupLevel level = GroupLevel::Gamma;
    if (s.parity == 0) level = s.norm.is_one() ? GroupLevel::Spin : GroupLevel::GammaPlus;
    return RealityCertificate{t, s, relation, s2v, s.norm, level};
}

namespace {

// One building block of an assembled conjugator. A slot with a dual partner y
// contributes the vector x + beta*y with q = beta (beta a free nonzero
// parameter); a rigid slot contributes x itself with q fixed. roam, when
// non-negative, indexes the subspace in which a rigid vector may be re-chosen
// to fix the norm.
struct Slot {
    Vec x;
    std::optional<Vec> y;
    Scalar beta;
    Scalar q;
    int roam = -1;
};

Vec slot_vector(const Slot& s) {
    if (!s.y) return s.x;
    return vec_add(s.x, vec_scaled(*s.y, s.beta));
}

// Search subspace `roam` for an anisotropic vector orthogonal to `keep_perp`
// whose q-value makes `target_with` a square when multiplied in. Exhaustive
// over F_p (capped), small box over Q.
std::optional<Vec> roam_search(const QSpace& V, const Subspace& roam,
                               const std::vector<Vec>& keep_perp, const Scalar& target_with) {
    const FieldCtx& F = V.field();
    size_t d = roam.dim();
    if (d == 0) return std::nullopt;
    long lo, hi;
    if (!F.spec().rationals()) {
        lo = 0;
        hi = F.spec().p - 1;
    } else {
        lo = -5;
        hi = 5;
    }
    std::vector<long> c(d, lo);
    size_t budget = 200000;
    while (budget-- > 0) {
        Vec w(V.dim(), F.zero());
        bool allzero = true;
        for (size_t i = 0; i < d; ++i) {
            if (c[i] != 0) allzero = false;
            w = vec_add(w, vec_scaled(roam.basis[i], F.from_long(c[i])));
        }
        if (!allzero) {
            bool ok = !V.q(w).is_zero();
            for (const auto& u : keep_perp)
                if (ok && !V.polar(w, u).is_zero()) ok = false;
            if (ok && is_square(V.q(w) * target_with, F).first) return w;
        }
        size_t i = 0;
        while (i < d && ++c[i] > hi) c[i++] = lo;
        if (i == d) break;
    }
    return std::nullopt;
}

struct Assembly {
    std::vector<Slot> chosen;
    std::vector<Slot> v1_pool;     // individually legal padding (centralizes t)
    std::vector<Slot> minus_pool;  // legal only in pairs
    std::vector<Subspace> roams;
};

Assembly plan_slots(const CtxPtr& ctx, const EigenSplit& es) {
    const FieldCtx& F = ctx->field();
    const QSpace& V = ctx->space();
    Assembly out;

    for (const EigenPair& ep : es.pairs) {
        const auto& xs = ep.space_lambda.basis;
        const auto& ys0 = ep.space_lambda_inv.basis;
        size_t k = xs.size();
        Matrix G(k, k, F.spec());
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) G.at(i, j) = V.polar(xs[i], ys0[j]);
        Matrix C = G.inverse();
        for (size_t i = 0; i < k; ++i) {
            Vec yi(V.dim(), F.zero());
            for (size_t j = 0; j < k; ++j) yi = vec_add(yi, vec_scaled(ys0[j], C.at(j, i)));
            out.chosen.push_back(Slot{xs[i], yi, F.one(), F.one(), -1});
        }
    }

    if (es.minus_one.dim() > 0) {
        WittBasis wb = witt_decompose(es.minus_one);
        for (const auto& [e, f] : wb.pairs)
            out.chosen.push_back(Slot{e, f, F.one(), F.one(), -1});
        size_t half = wb.anisotropic.size() / 2;
        size_t start = 0;
        if (half % 2 == 1) {
            out.roams.push_back(es.minus_one);
            out.chosen.push_back(
                Slot{wb.anisotropic[0], {}, F.one(), wb.anisotropic_q[0], int(out.roams.size()) - 1});
            start = 1;
        }
        for (size_t i = start; i < wb.anisotropic.size(); ++i)
            out.minus_pool.push_back(Slot{wb.anisotropic[i], {}, F.one(), wb.anisotropic_q[i], -1});
    }

    if (es.one.dim() > 0) {
        out.roams.push_back(es.one);
        int r = int(out.roams.size()) - 1;
        try {
            WittBasis wb = witt_decompose(es.one);
            for (const auto& [e, f] : wb.pairs)
                out.v1_pool.push_back(Slot{e, f, F.one(), F.one(), -1});
            for (size_t i = 0; i < wb.anisotropic.size(); ++i)
                out.v1_pool.push_back(Slot{wb.anisotropic[i], {}, F.one(), wb.anisotropic_q[i], r});
        } catch (const CliffordError& e) {
            if (e.code() != ErrorCode::IsotropicSearchFailed) throw;
            auto [vs, qs] = orthogonal_diagonalize(es.one);
            for (size_t i = 0; i < vs.size(); ++i)
                out.v1_pool.push_back(Slot{vs[i], {}, F.one(), qs[i], r});
        }
    }
    return out;
}

RealityCertificate assemble_conjugator(const CtxPtr& ctx, const GroupElement& t, bool require_even) {
    const FieldCtx& F = ctx->field();
    const QSpace& V = ctx->space();
    size_t n = V.dim();
    size_t m = n / 2;
    EigenSplit es = eigen_split(ctx, t);
    Assembly plan = plan_slots(ctx, es);
    auto& chosen = plan.chosen;

    if (require_even) {
        if (chosen.size() % 2 != 0) {
            if (plan.v1_pool.empty())
                fail(ErrorCode::ConjugatorNotFound,
                     "parity cannot be fixed: 1 is not an eigenvalue of chi(t)");
            chosen.push_back(plan.v1_pool.front());
            plan.v1_pool.erase(plan.v1_pool.begin());
        }
        // steer s^2 = (-1)^{k(k-1)/2} toward the split-construction sign
        size_t target = (m % 2 == 0) ? m % 4 : (m + 3) % 4;
        if (chosen.size() % 4 != target) {
            std::vector<Slot>* pad = nullptr;
            if (plan.v1_pool.size() >= 2) pad = &plan.v1_pool;
            else if (plan.minus_pool.size() >= 2) pad = &plan.minus_pool;
            if (pad) {
                chosen.push_back((*pad)[0]);
                chosen.push_back((*pad)[1]);
                pad->erase(pad->begin(), pad->begin() + 2);
            }
        }
    }

    // norm: make prod q(v_i) exactly 1
    size_t free_slot = chosen.size();
    for (size_t i = 0; i < chosen.size(); ++i)
        if (chosen[i].y) { free_slot = i; break; }
    Scalar rescale = F.one();
    if (free_slot < chosen.size()) {
        Scalar rest = F.one();
        for (size_t i = 0; i < chosen.size(); ++i)
            if (i != free_slot) rest *= chosen[i].q;
        chosen[free_slot].beta = rest.inv();
        chosen[free_slot].q = chosen[free_slot].beta;
    } else if (!chosen.empty()) {
        Scalar prod = F.one();
        for (const auto& s : chosen) prod *= s.q;
        auto [sq, root] = is_square(prod, F);
        if (sq) {
            rescale = root->inv();
        } else {
            bool fixed = false;
            for (auto& s : chosen) {
                if (s.roam < 0) continue;
                std::vector<Vec> keep;
                for (const auto& other : chosen)
                    if (&other != &s) keep.push_back(slot_vector(other));
                auto w = roam_search(V, plan.roams[size_t(s.roam)], keep, prod / s.q);
                if (w) {
                    s.x = *w;
                    s.q = V.q(*w);
                    Scalar prod2 = F.one();
                    for (const auto& u : chosen) prod2 *= u.q;
                    auto [sq2, root2] = is_square(prod2, F);
                    if (!sq2) fail(ErrorCode::Internal, "norm fix search returned wrong class");
                    rescale = root2->inv();
                    fixed = true;
                    break;
                }
            }
            if (!fixed)
                fail(ErrorCode::ConjugatorNotFound,
                     "no norm-one conjugator: rigid block norms lie in class " +
                         square_class(prod, F).str());
        }
    }

    std::vector<Vec> vs;
    vs.reserve(chosen.size());
    for (const auto& s : chosen) vs.push_back(slot_vector(s));
    if (!vs.empty()) vs[0] = vec_scaled(vs[0], rescale);
    for (size_t i = 0; i < vs.size(); ++i) {
        if (V.q(vs[i]).is_zero()) fail(ErrorCode::Internal, "isotropic conjugator factor");
        for (size_t j = i + 1; j < vs.size(); ++j)
            if (!V.polar(vs[i], vs[j]).is_zero()) fail(ErrorCode::Internal, "conjugator factors not orthogonal");
    }

    GroupElement s = make_group_element(product_of_vectors(ctx, vs));
    if (!s.norm.is_one()) fail(ErrorCode::Internal, "assembled conjugator norm is not 1");
    if (require_even && s.parity != 0) fail(ErrorCode::Internal, "assembled conjugator has odd parity");
    Relation rel = t.norm.is_one() ? Relation::TInverse : Relation::NtTInverse;
    return make_certificate(ctx, t, s, rel);
}

}  // namespace

RealityCertificate blockwise_conjugator(const CtxPtr& ctx, const GroupElement& t) {
    return assemble_conjugator(ctx, t, false);
}

RealityCertificate spin_conjugator(const CtxPtr& ctx, const GroupElement& t) {
    return assemble_conjugator(ctx, t, true);
}

RealityCertificate odd_split_conjugator(const CtxPtr& ctx, const TorusElement& t) {
    const FieldCtx& F = ctx->field();
    if (ctx->dim() % 2 == 0)
        fail(ErrorCode::PreconditionViolated, "split construction needs odd dimension");
    if (t.basis.anisotropic.empty())
        fail(ErrorCode::PreconditionViolated, "split construction needs an anisotropic basis vector");
    size_t m = t.lambdas.size();
    std::vector<Vec> vs;
    if (m % 2 == 1) {
        const Vec& e0 = t.basis.anisotropic[0];
        Scalar d = ctx->space().q(e0);
        vs.push_back(e0);
        vs.push_back(vec_add(t.basis.pairs[0].first, vec_scaled(t.basis.pairs[0].second, d.inv())));
        for (size_t i = 1; i < m; ++i)
            vs.push_back(vec_add(t.basis.pairs[i].first, t.basis.pairs[i].second));
    } else {
        for (size_t i = 0; i < m; ++i)
            vs.push_back(vec_add(t.basis.pairs[i].first, t.basis.pairs[i].second));
    }
    GroupElement s = make_group_element(product_of_vectors(ctx, vs));
    RealityCertificate cert = make_certificate(ctx, t.element, s, Relation::NtTInverse);
    if (cert.s_squared != split_conjugator_sign(F, m))
        fail(ErrorCode::Internal, "split conjugator square disagrees with (-1)^{m(m+1)/2}");
    if (cert.s_in == GroupLevel::Gamma || !cert.s_norm.is_one())
        fail(ErrorCode::Internal, "split conjugator not an even norm-one element");
    return cert;
}

RealityCertificate odd_split_conjugator(const CtxPtr& ctx, const GroupElement& t) {
    if (ctx->dim() % 2 == 0)
        fail(ErrorCode::PreconditionViolated, "split construction needs odd dimension");
    try {
        eigen_split(ctx, t);
    } catch (const CliffordError& e) {
        if (e.code() == ErrorCode::EigenvaluesNotRational)
            fail(ErrorCode::NoRationalEigenvalue, "chi(t) has no full rational eigenvalue split");
        throw;
    }
    return assemble_conjugator(ctx, t, true);
}

bool odd_dim_norm_condition(const CtxPtr& ctx, const TorusElement& t) {
    const FieldCtx& F = ctx->field();
    if (ctx->dim() % 2 == 0)
        fail(ErrorCode::PreconditionViolated, "norm condition applies in odd dimension");
    if (t.basis.anisotropic.empty())
        fail(ErrorCode::PreconditionViolated, "norm condition needs the anisotropic line");
    const auto& ls = t.lambdas;
    size_t minus_count = 0;
    for (size_t i = 0; i < ls.size(); ++i) {
        if (ls[i] == F.one())
            fail(ErrorCode::NotStronglyRegular, "eigenvalue 1 on a hyperbolic pair");
        if (ls[i] == -F.one()) ++minus_count;
        for (size_t j = i + 1; j < ls.size(); ++j)
            if (ls[i] == ls[j] || ls[i] * ls[j] == F.one())
                fail(ErrorCode::NotStronglyRegular, "repeated or paired torus eigenvalues");
    }
    if (minus_count > 1)
        fail(ErrorCode::NotStronglyRegular, "-1 eigenspace of dimension above 2");

    Scalar d = ctx->space().q(t.basis.anisotropic[0]);
    if (!F.spec().rationals()) {
        long p = F.spec().p;
        // norm image of the torus: {lambda0^2 prod mu_i} over all parameters
        std::set<Scalar> image;
        std::vector<long> tuple(ls.size() + 1, 1);
        size_t count = 1;
        for (size_t i = 0; i < tuple.size(); ++i) count *= size_t(p - 1);
        std::vector<long> idx(tuple.size(), 0);
        for (size_t it = 0; it < count; ++it) {
            Scalar v = F.from_long(idx[0] + 1);
            v *= v;
            for (size_t i = 1; i < idx.size(); ++i) v *= F.from_long(idx[i] + 1);
            image.insert(v);
            size_t i = 0;
            while (i < idx.size() && ++idx[i] == p - 1) idx[i++] = 0;
        }
        for (long c = 1; c < p; ++c) {
            Scalar cc = F.from_long(c);
            if (!image.count(d * cc * cc)) return false;
        }
        return true;
    }
    // over Q: with at least one free factor the image is all of Q*, otherwise
    // the squares
    if (!ls.empty()) return true;
    return square_class(d, F).is_one();
}

RealityDecision is_real_semisimple_spin(const CtxPtr& ctx, const GroupElement& t) {
    if (!is_spin(t)) fail(ErrorCode::NotInSpin, "element is not in Spin");
    if (!is_semisimple(t)) fail(ErrorCode::NotSemisimple, "element is not semisimple");
    size_t n = ctx->dim();
    std::optional<EigenSplit> es;
    try {
        es = eigen_split(ctx, t);
    } catch (const CliffordError& e) {
        if (e.code() == ErrorCode::EigenvaluesNotRational)
            return RealityDecision{RealityKind::Undecided, std::nullopt,
                                   "eigenvalues of chi(t) are not all in the base field"};
        throw;
    }
    if (n % 4 == 2 && es->one.dim() == 0)
        return RealityDecision{RealityKind::NotReal, std::nullopt,
                               "dim = 2 mod 4 and 1 is not an eigenvalue of chi(t)"};
    try {
        RealityCertificate cert = assemble_conjugator(ctx, t, true);
        return RealityDecision{RealityKind::Real, std::move(cert), ""};
    } catch (const CliffordError& e) {
        if (e.code() == ErrorCode::ConjugatorNotFound || e.code() == ErrorCode::IsotropicSearchFailed)
            return RealityDecision{RealityKind::Undecided, std::nullopt,
                                   std::string("construction failed: ") + e.what()};
        throw;
    }
}

InvolutionPair involution_decompose(const CtxPtr& ctx, const GroupElement& t,
                                    const RealityCertificate& cert) {
    const FieldCtx& F = ctx->field();
    if (cert.relation != Relation::TInverse)
        fail(ErrorCode::WrongRelation, "decomposition needs a certificate for s t s^{-1} = t^{-1}");
    if (!(cert.t.mv == t.mv))
        fail(ErrorCode::PreconditionViolated, "certificate describes a different element");
    GroupElement tau1 = make_group_element(mv_inverse(cert.s.mv));
    GroupElement tau2 = make_group_element(cert.s.mv * t.mv);
    auto square_of = [&](const GroupElement& g) {
        Multivector z = g.mv * g.mv;
        if (!z.is_scalar()) fail(ErrorCode::Internal, "factor square is not scalar");
        Scalar v = z.scalar_part();
        if (!(v == F.one() || v == -F.one())) fail(ErrorCode::Internal, "factor square is not +-1");
        return v;
    };
    Scalar e1 = square_of(tau1), e2 = square_of(tau2);
    if (!(tau1.mv * tau2.mv == t.mv)) fail(ErrorCode::Internal, "involution product mismatch");
    if (e1 != e2) fail(ErrorCode::Internal, "involution squares disagree");
    return InvolutionPair{std::move(tau1), std::move(tau2), e1, e2};
}

}
