#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cliffreal/qspace.hpp"

namespace cliffreal {

// Clifford algebra context C(V, q). Internally the algebra is generated by an
// orthogonal diagonalizing basis v_1..v_n of V (q(v_i) != 0), so a blade is a
// bitmask over those generators and e_i e_j = -e_j e_i (i != j), e_i^2 = q(v_i).
// User-facing vectors are converted exactly between ambient coordinates and
// internal coordinates via the change-of-basis matrix.
class CliffordCtx {
public:
    static std::shared_ptr<const CliffordCtx> create(QSpace V);

    const QSpace& space() const { return space_; }
    const FieldCtx& field() const { return space_.field(); }
    size_t dim() const { return space_.dim(); }
    size_t blade_count() const { return size_t{1} << dim(); }

    const std::vector<Vec>& ortho_basis() const { return ortho_; }
    const std::vector<Scalar>& diag() const { return diag_; }
    const Matrix& to_user() const { return P_; }        // internal coords -> ambient
    const Matrix& to_internal() const { return Pinv_; } // ambient coords -> internal

    // Multiplier c with e_a * e_b = c * e_{a xor b}: reordering sign times the
    // q-values of the repeated generators.
    Scalar blade_coeff(std::uint32_t a, std::uint32_t b) const;

    bool same_as(const CliffordCtx& o) const {
        return this == &o || space_ == o.space_;
    }

private:
    explicit CliffordCtx(QSpace V) : space_(std::move(V)) {}

    QSpace space_;
    std::vector<Vec> ortho_;
    std::vector<Scalar> diag_;
    Matrix P_, Pinv_;
};

using CtxPtr = std::shared_ptr<const CliffordCtx>;

// Element of C(V, q): sparse blade->coefficient map (zero coefficients never
// stored, so representation is canonical). Value type; operations verify both
// operands share one context.
class Multivector {
public:
    Multivector() = default;
    explicit Multivector(CtxPtr ctx) : ctx_(std::move(ctx)) {}

    static Multivector zero(CtxPtr ctx) { return Multivector(std::move(ctx)); }
    static Multivector scalar(CtxPtr ctx, const Scalar& c);
    static Multivector blade(CtxPtr ctx, std::uint32_t mask, const Scalar& c);

    const CtxPtr& ctx() const { return ctx_; }
    const std::map<std::uint32_t, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Scalar coeff(std::uint32_t mask) const;      // zero if absent
    Scalar scalar_part() const { return coeff(0); }
    bool is_scalar() const;

    Multivector operator+(const Multivector& o) const;
    Multivector operator-(const Multivector& o) const;
    Multivector operator*(const Multivector& o) const;
    Multivector operator-() const;
    Multivector scaled(const Scalar& c) const;

    bool operator==(const Multivector& o) const;
    bool operator!=(const Multivector& o) const { return !(*this == o); }

    // Grade k part (blade popcount == k).
    Multivector grade_part(size_t k) const;
    size_t max_grade() const;
    bool is_even() const;
    bool is_odd() const;
    // 0 = even, 1 = odd, nullopt = mixed parity.
    std::optional<int> parity() const;

    // Reversion tau: reverses generator order in each blade; sign
    // (-1)^{k(k-1)/2} on grade k. Anti-automorphism.
    Multivector reversion() const;
    // Grade involution alpha: sign (-1)^k on grade k. Automorphism.
    Multivector grade_involution() const;

    std::string str() const;

private:
    CtxPtr ctx_;
    std::map<std::uint32_t, Scalar> terms_;

    void set(std::uint32_t mask, Scalar c);
    void check_ctx(const Multivector& o) const;
    friend Multivector mv_from_entries(CtxPtr, std::vector<std::pair<std::uint32_t, Scalar>>);
};

Multivector mv_from_entries(CtxPtr ctx, std::vector<std::pair<std::uint32_t, Scalar>> entries);

// Exact inverse: versor fast path (u tau(u) scalar) first, dense linear solve
// over the 2^n-dimensional algebra otherwise (solve capped at dim <= 9).
// Throws NotInvertible when no inverse exists.
Multivector mv_inverse(const Multivector& u);

// u x u^{-1}
Multivector mv_conjugate(const Multivector& u, const Multivector& x);

// Vector embedding: ambient coordinate vector -> grade-1 element (exact basis
// change), and back. extract_vector throws NotAVector on non-grade-1 input.
Multivector embed_vector(const CtxPtr& ctx, const Vec& x);
Vec extract_vector(const Multivector& m);

}  // namespace cliffreal
