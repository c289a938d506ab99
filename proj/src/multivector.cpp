#include "cliffreal/multivector.hpp"

#include <bit>
#include <sstream>

namespace cliffreal {

std::shared_ptr<const CliffordCtx> CliffordCtx::create(QSpace V) {
    auto ctx = std::shared_ptr<CliffordCtx>(new CliffordCtx(std::move(V)));
    auto [basis, diag] = orthogonal_diagonalize(ctx->space_);
    ctx->ortho_ = std::move(basis);
    ctx->diag_ = std::move(diag);
    ctx->P_ = Matrix::from_columns(ctx->ortho_, ctx->field().spec());
    ctx->Pinv_ = ctx->P_.inverse();
    return ctx;
}

Scalar CliffordCtx::blade_coeff(std::uint32_t a, std::uint32_t b) const {
    // Transposition parity of merging the two ascending generator lists.
    int swaps = 0;
    std::uint32_t a2 = a >> 1;
    while (a2 != 0) {
        swaps += std::popcount(a2 & b);
        a2 >>= 1;
    }
    Scalar c = field().from_long(swaps % 2 == 0 ? 1 : -1);
    std::uint32_t common = a & b;
    while (common != 0) {
        unsigned i = static_cast<unsigned>(std::countr_zero(common));
        c *= diag_[i];
        common &= common - 1;
    }
    return c;
}

Multivector Multivector::scalar(CtxPtr ctx, const Scalar& c) {
    Multivector m(std::move(ctx));
    m.ctx_->field().check(c);
    m.set(0, c);
    return m;
}

Multivector Multivector::blade(CtxPtr ctx, std::uint32_t mask, const Scalar& c) {
    Multivector m(std::move(ctx));
    if (mask >= m.ctx_->blade_count()) fail(ErrorCode::DimensionMismatch, "blade mask out of range");
    m.ctx_->field().check(c);
    m.set(mask, c);
    return m;
}

void Multivector::set(std::uint32_t mask, Scalar c) {
    if (c.is_zero())
        terms_.erase(mask);
    else
        terms_[mask] = std::move(c);
}

void Multivector::check_ctx(const Multivector& o) const {
    if (!ctx_ || !o.ctx_) fail(ErrorCode::ContextMismatch, "multivector without a context");
    if (!ctx_->same_as(*o.ctx_)) fail(ErrorCode::ContextMismatch, "multivectors from different algebras");
}

Scalar Multivector::coeff(std::uint32_t mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? ctx_->field().zero() : it->second;
}

bool Multivector::is_scalar() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

Multivector Multivector::operator+(const Multivector& o) const {
    check_ctx(o);
    Multivector r = *this;
    for (const auto& [mask, c] : o.terms_) {
        auto it = r.terms_.find(mask);
        if (it == r.terms_.end())
            r.terms_.emplace(mask, c);
        else {
            it->second += c;
            if (it->second.is_zero()) r.terms_.erase(it);
        }
    }
    return r;
}

Multivector Multivector::operator-(const Multivector& o) const { return *this + (-o); }

Multivector Multivector::operator-() const {
    Multivector r = *this;
    for (auto& [mask, c] : r.terms_) c = -c;
    return r;
}

Multivector Multivector::scaled(const Scalar& c) const {
    ctx_->field().check(c);
    Multivector r(ctx_);
    if (c.is_zero()) return r;
    r.terms_ = terms_;
    for (auto& [mask, x] : r.terms_) x *= c;
    return r;
}

Multivector Multivector::operator*(const Multivector& o) const {
    check_ctx(o);
    Multivector r(ctx_);
    for (const auto& [i, ci] : terms_) {
        for (const auto& [j, cj] : o.terms_) {
            Scalar c = ci * cj * ctx_->blade_coeff(i, j);
            if (c.is_zero()) continue;
            std::uint32_t k = i ^ j;
            auto it = r.terms_.find(k);
            if (it == r.terms_.end())
                r.terms_.emplace(k, std::move(c));
            else {
                it->second += c;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    }
    return r;
}

bool Multivector::operator==(const Multivector& o) const {
    check_ctx(o);
    return terms_ == o.terms_;
}

Multivector Multivector::grade_part(size_t k) const {
    Multivector r(ctx_);
    for (const auto& [mask, c] : terms_)
        if (static_cast<size_t>(std::popcount(mask)) == k) r.terms_.emplace(mask, c);
    return r;
}

size_t Multivector::max_grade() const {
    size_t g = 0;
    for (const auto& [mask, c] : terms_) g = std::max(g, static_cast<size_t>(std::popcount(mask)));
    return g;
}

bool Multivector::is_even() const { return parity() == 0; }
bool Multivector::is_odd() const { return parity() == 1; }

std::optional<int> Multivector::parity() const {
    if (terms_.empty()) return 0;
    int par = std::popcount(terms_.begin()->first) % 2;
    for (const auto& [mask, c] : terms_)
        if (std::popcount(mask) % 2 != par) return std::nullopt;
    return par;
}

Multivector Multivector::reversion() const {
    Multivector r = *this;
    for (auto& [mask, c] : r.terms_) {
        int k = std::popcount(mask);
        if ((k * (k - 1) / 2) % 2 == 1) c = -c;
    }
    return r;
}

Multivector Multivector::grade_involution() const {
    Multivector r = *this;
    for (auto& [mask, c] : r.terms_)
        if (std::popcount(mask) % 2 == 1) c = -c;
    return r;
}

std::string Multivector::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mask, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (mask != 0) {
            os << "*e{";
            bool fg = true;
            for (unsigned i = 0; i < 32; ++i)
                if (mask & (1u << i)) {
                    os << (fg ? "" : ",") << (i + 1);
                    fg = false;
                }
            os << "}";
        }
    }
    return os.str();
}

Multivector mv_from_entries(CtxPtr ctx, std::vector<std::pair<std::uint32_t, Scalar>> entries) {
    Multivector m(std::move(ctx));
    for (auto& [mask, c] : entries) {
        if (mask >= m.ctx_->blade_count())
            fail(ErrorCode::DimensionMismatch, "blade mask out of range");
        m.ctx_->field().check(c);
        auto it = m.terms_.find(mask);
        if (it == m.terms_.end())
            m.terms_.emplace(mask, std::move(c));
        else
            it->second += c;
    }
    for (auto it = m.terms_.begin(); it != m.terms_.end();)
        it = it->second.is_zero() ? m.terms_.erase(it) : std::next(it);
    return m;
}

Multivector mv_inverse(const Multivector& u) {
    const CtxPtr& ctx = u.ctx();
    const FieldCtx& F = ctx->field();
    if (u.is_zero()) fail(ErrorCode::NotInvertible, "zero is not invertible");
    // Versor fast path: u tau(u) scalar covers every group element we build.
    Multivector tau = u.reversion();
    Multivector z = u * tau;
    if (z.is_scalar() && !z.scalar_part().is_zero()) {
        Multivector cand = tau.scaled(z.scalar_part().inv());
        if ((u * cand) == Multivector::scalar(ctx, F.one()) &&
            (cand * u) == Multivector::scalar(ctx, F.one()))
            return cand;
    }
    size_t n = ctx->dim();
    if (n > 9) fail(ErrorCode::CapExceeded, "dense inverse solve capped at dim 9");
    size_t N = ctx->blade_count();
    // columns of left multiplication by u
    Matrix L(N, N, F.spec());
    for (std::uint32_t j = 0; j < N; ++j) {
        Multivector col = u * Multivector::blade(ctx, j, F.one());
        for (const auto& [mask, c] : col.terms()) L.at(mask, j) = c;
    }
    Vec e0(N, F.zero());
    e0[0] = F.one();
    Vec x;
    try {
        x = L.solve(e0);
    } catch (const CliffordError&) {
        fail(ErrorCode::NotInvertible, "multivector has no inverse");
    }
    std::vector<std::pair<std::uint32_t, Scalar>> entries;
    for (std::uint32_t j = 0; j < N; ++j)
        if (!x[j].is_zero()) entries.push_back({j, x[j]});
    Multivector inv = mv_from_entries(ctx, std::move(entries));
    if (!((u * inv) == Multivector::scalar(ctx, F.one())) ||
        !((inv * u) == Multivector::scalar(ctx, F.one())))
        fail(ErrorCode::NotInvertible, "multivector has no two-sided inverse");
    return inv;
}

Multivector mv_conjugate(const Multivector& u, const Multivector& x) {
    return u * x * mv_inverse(u);
}

Multivector embed_vector(const CtxPtr& ctx, const Vec& x) {
    if (x.size() != ctx->dim()) fail(ErrorCode::DimensionMismatch, "vector length mismatch");
    Vec xi = ctx->to_internal() * x;
    std::vector<std::pair<std::uint32_t, Scalar>> entries;
    for (size_t i = 0; i < xi.size(); ++i)
        if (!xi[i].is_zero()) entries.push_back({1u << i, xi[i]});
    return mv_from_entries(ctx, std::move(entries));
}

Vec extract_vector(const Multivector& m) {
    const CtxPtr& ctx = m.ctx();
    Vec xi(ctx->dim(), ctx->field().zero());
    for (const auto& [mask, c] : m.terms()) {
        if (std::popcount(mask) != 1)
            fail(ErrorCode::NotAVector, "element has a component of grade != 1");
        xi[static_cast<size_t>(std::countr_zero(mask))] = c;
    }
    return ctx->to_user() * xi;
}

}  // namespace cliffreal
