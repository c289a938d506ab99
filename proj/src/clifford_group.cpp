#include "cliffreal/clifford_group.hpp"

#include <optional>

#include "cliffreal/errors.hpp"

namespace cliffreal {

namespace {

// Conjugation table chi(u): columns are coordinates of u b_j u^{-1} for the
// ambient basis vectors b_j. Throws NotInGamma when a conjugate leaves V.
Matrix conjugation_matrix(const Multivector& u, const Multivector& uinv) {
    const CtxPtr& ctx = u.ctx();
    size_t n = ctx->dim();
    std::vector<Vec> cols;
    cols.reserve(n);
    for (size_t j = 0; j < n; ++j) {
        Vec bj(n, ctx->field().zero());
        bj[j] = ctx->field().one();
        Multivector img = u * embed_vector(ctx, bj) * uinv;
        if (img.max_grade() > 1 || !img.scalar_part().is_zero())
            fail(ErrorCode::NotInGamma, "conjugation does not preserve the vector space");
        cols.push_back(extract_vector(img));
    }
    return Matrix::from_columns(cols, ctx->field().spec());
}

}  // namespace

Scalar norm_of(const Multivector& u) {
    Multivector z = u.reversion() * u;
    if (!z.is_scalar()) fail(ErrorCode::NormNotScalar, "tau(u)u is not scalar");
    return z.scalar_part();
}

bool in_gamma(const Multivector& u) {
    if (u.is_zero()) return false;
    if (!u.parity().has_value()) return false;
    try {
        Multivector uinv = mv_inverse(u);
        conjugation_matrix(u, uinv);
    } catch (const CliffordError&) {
        return false;
    }
    return true;
}

GroupElement make_group_element(const Multivector& u) {
    if (u.is_zero()) fail(ErrorCode::NotInGamma, "zero is not invertible");
    auto par = u.parity();
    if (!par.has_value()) fail(ErrorCode::NotInGamma, "element has mixed parity");
    Multivector uinv = [&] {
        try {
            return mv_inverse(u);
        } catch (const CliffordError& e) {
            if (e.code() == ErrorCode::NotInvertible)
                fail(ErrorCode::NotInGamma, "element is not invertible");
            throw;
        }
    }();
    GroupElement g{u, *par, norm_of(u), conjugation_matrix(u, uinv)};
    const QSpace& V = u.ctx()->space();
    if (!is_orthogonal(V, g.chi)) fail(ErrorCode::Internal, "chi(u) not orthogonal");
    // chi(v1...vk) = (-1)^k S_1...S_k, so det = (-1)^{k(n+1)}: parity shows
    // in the determinant only when dim is even.
    long want = (*par == 1 && V.dim() % 2 == 0) ? -1 : 1;
    Scalar want_det = u.ctx()->field().from_long(want);
    if (g.chi.det() != want_det) fail(ErrorCode::Internal, "det chi(u) disagrees with parity");
    return g;
}

bool is_spin(const GroupElement& u) {
    return u.parity == 0 && u.norm.is_one();
}

bool is_spin(const Multivector& u) {
    if (!in_gamma(u)) return false;
    auto par = u.parity();
    return par.has_value() && *par == 0 && norm_of(u).is_one();
}

bool is_orthogonal(const QSpace& V, const Matrix& M) {
    if (M.rows() != V.dim() || M.cols() != V.dim()) return false;
    return M.transpose() * V.gram() * M == V.gram();
}

bool is_special_orthogonal(const QSpace& V, const Matrix& M) {
    return is_orthogonal(V, M) && M.det().is_one();
}

Matrix reflection_matrix(const QSpace& V, const Vec& v) {
    Scalar qv = V.q(v);
    if (qv.is_zero()) fail(ErrorCode::PreconditionViolated, "reflection vector must be anisotropic");
    size_t n = V.dim();
    Matrix m = Matrix::identity(n, V.field().spec());
    for (size_t j = 0; j < n; ++j) {
        Vec bj(n, V.field().zero());
        bj[j] = V.field().one();
        Scalar c = V.polar(bj, v) / qv;
        for (size_t i = 0; i < n; ++i) m.at(i, j) -= c * v[i];
    }
    return m;
}

namespace {

// Independent subset of the columns of A (a basis of the column space).
std::vector<Vec> column_space(const Matrix& A) {
    Matrix R = A;
    size_t n = R.rows(), cols = R.cols();
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t j = 0; j < cols && r < n; ++j) {
        size_t pick = n;
        for (size_t i = r; i < n; ++i)
            if (!R.at(i, j).is_zero()) { pick = i; break; }
        if (pick == n) continue;
        if (pick != r)
            for (size_t k = 0; k < cols; ++k) std::swap(R.at(r, k), R.at(pick, k));
        for (size_t i = r + 1; i < n; ++i) {
            if (R.at(i, j).is_zero()) continue;
            Scalar f = R.at(i, j) / R.at(r, j);
            for (size_t k = j; k < cols; ++k) R.at(i, k) -= f * R.at(r, k);
        }
        pivots.push_back(j);
        ++r;
    }
    std::vector<Vec> out;
    out.reserve(pivots.size());
    for (size_t j : pivots) out.push_back(A.column(j));
    return out;
}

bool totally_isotropic(const QSpace& V, const std::vector<Vec>& basis) {
    for (size_t i = 0; i < basis.size(); ++i) {
        if (!V.q(basis[i]).is_zero()) return false;
        for (size_t j = i + 1; j < basis.size(); ++j)
            if (!V.polar(basis[i], basis[j]).is_zero()) return false;
    }
    return true;
}

// Anisotropic candidates in span(basis): the basis vectors and pairwise
// sums/differences. If all of these are isotropic the span is totally
// isotropic, so the pool is empty only in that case.
std::vector<Vec> anisotropic_pool(const QSpace& V, const std::vector<Vec>& basis) {
    std::vector<Vec> pool;
    for (const auto& b : basis)
        if (!V.q(b).is_zero()) pool.push_back(b);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) {
            Vec s = vec_add(basis[i], basis[j]);
            if (!V.q(s).is_zero()) pool.push_back(s);
            Vec d = vec_sub(basis[i], basis[j]);
            if (!V.q(d).is_zero()) pool.push_back(d);
        }
    return pool;
}

}  // namespace

std::vector<Vec> reflection_factorize(const QSpace& V, const Matrix& M) {
    if (!is_orthogonal(V, M)) fail(ErrorCode::NotOrthogonal, "matrix does not preserve the form");
    size_t n = V.dim();
    Matrix I = Matrix::identity(n, V.field().spec());
    auto [obasis, odiag] = orthogonal_diagonalize(V);
    (void)odiag;

    Matrix g = M;
    std::vector<Vec> out;
    for (size_t guard = 0;; ++guard) {
        if (g == I) break;
        if (guard > 2 * n + 4) fail(ErrorCode::Internal, "reflection factorization did not terminate");
        Matrix D = g - I;
        std::vector<Vec> disp = column_space(D);
        std::vector<Vec> pool = anisotropic_pool(V, disp);
        if (!pool.empty()) {
            // Any anisotropic w in im(g - I) drops the displacement rank by
            // one: w = gx - x gives B(x,w) = -q(w), so S_w g fixes x along
            // with everything g already fixed. Prefer a w whose successor
            // displacement is not totally isotropic so the next step is good
            // too.
            bool placed = false;
            std::optional<Matrix> fallback;
            size_t fallback_idx = 0;
            for (size_t c = 0; c < pool.size(); ++c) {
                Matrix gn = reflection_matrix(V, pool[c]) * g;
                std::vector<Vec> dn = column_space(gn - I);
                if (dn.empty() || !totally_isotropic(V, dn)) {
                    out.push_back(pool[c]);
                    g = std::move(gn);
                    placed = true;
                    break;
                }
                if (!fallback) { fallback = std::move(gn); fallback_idx = c; }
            }
            if (!placed) {
                out.push_back(pool[fallback_idx]);
                g = std::move(*fallback);
            }
        } else {
            // Totally isotropic displacement: reflect in an anisotropic basis
            // vector not orthogonal to the fixed space of g, which makes the
            // next displacement contain that (anisotropic) vector.
            std::vector<Vec> K = D.kernel();
            const Vec* pick = nullptr;
            for (const auto& v : obasis) {
                for (const auto& y : K)
                    if (!V.polar(v, y).is_zero()) { pick = &v; break; }
                if (pick) break;
            }
            if (!pick) fail(ErrorCode::Internal, "no usable reflection for isotropic displacement");
            out.push_back(*pick);
            g = reflection_matrix(V, *pick) * g;
        }
    }
    if (out.size() > n) fail(ErrorCode::Internal, "reflection factorization longer than dim V");
    return out;
}

Scalar spinor_norm(const QSpace& V, const Matrix& M) {
    if (!is_orthogonal(V, M)) fail(ErrorCode::NotOrthogonal, "matrix does not preserve the form");
    if (!M.det().is_one()) fail(ErrorCode::NotSpecialOrthogonal, "spinor norm needs det 1");
    std::vector<Vec> vs = reflection_factorize(V, M);
    Scalar prod = V.field().one();
    for (const auto& v : vs) prod *= V.q(v);
    return square_class(prod, V.field());
}

GroupElement lift_so(const CtxPtr& ctx, const Matrix& M) {
    const QSpace& V = ctx->space();
    if (!is_orthogonal(V, M)) fail(ErrorCode::NotOrthogonal, "matrix does not preserve the form");
    if (!M.det().is_one()) fail(ErrorCode::NotSpecialOrthogonal, "lift needs det 1");
    std::vector<Vec> vs = reflection_factorize(V, M);
    if (vs.size() % 2 != 0) fail(ErrorCode::Internal, "det-1 factorization of odd length");
    Multivector u = Multivector::scalar(ctx, ctx->field().one());
    for (const auto& v : vs) u = u * embed_vector(ctx, v);
    GroupElement g = make_group_element(u);
    if (!(g.chi == M)) fail(ErrorCode::Internal, "lift does not project back to M");
    return g;
}

}
