#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "cliffreal/errors.hpp"

namespace cliffreal {

// Base field of all computations: the rationals (p == 0) or a prime field F_p
// with p an odd prime. Characteristic 2 is rejected everywhere (the polar form
// identities divide by 2).
struct FieldSpec {
    long p = 0;  // 0 means rationals

    bool rationals() const { return p == 0; }
    bool operator==(const FieldSpec& o) const { return p == o.p; }
    bool operator!=(const FieldSpec& o) const { return p != o.p; }
    std::string str() const { return rationals() ? "Q" : "F_" + std::to_string(p); }
};

// Exact field element. A Scalar knows its own characteristic, so arithmetic can
// verify both operands live in the same field. Rational values are kept in
// canonical reduced form (gmp canonicalize); residues are kept in [0, p).
class Scalar {
public:
    Scalar() : p_(0), r_(0), q_(0) {}

    static Scalar rational(mpq_class v) {
        v.canonicalize();
        Scalar s;
        s.p_ = 0;
        s.q_ = std::move(v);
        return s;
    }
    static Scalar rational(long num, long den);
    static Scalar mod(long r, long p);
    static Scalar of(const FieldSpec& f, long v) {
        return f.rationals() ? rational(v, 1) : mod(v, f.p);
    }

    FieldSpec field() const { return FieldSpec{p_}; }
    long characteristic() const { return p_; }

    bool is_zero() const { return p_ == 0 ? q_ == 0 : r_ == 0; }
    bool is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }

    // Rational accessors (valid only when characteristic() == 0).
    const mpq_class& rat() const { return q_; }
    // Residue accessor (valid only when characteristic() > 0).
    long residue() const { return r_; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inv() const;
    Scalar pow(long e) const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    // Deterministic total order inside one field (residue order over F_p,
    // numeric order over Q). Used for canonical choices, not for algebra.
    bool operator<(const Scalar& o) const;

    // Serialized forms: "3/2" or "-5" over Q, "4 mod 7" over F_p.
    std::string str() const;

private:
    long p_;
    long r_;
    mpq_class q_;

    void check_same_field(const Scalar& o) const {
        if (p_ != o.p_) fail(ErrorCode::FieldMismatch, "operands from different fields");
    }
};

// Field context: validated field description plus cached field-level data
// (least nonsquare residue for F_p). Cheap to copy.
class FieldCtx {
public:
    explicit FieldCtx(FieldSpec spec) : spec_(spec) {}

    const FieldSpec& spec() const { return spec_; }
    bool rationals() const { return spec_.rationals(); }
    long p() const { return spec_.p; }

    Scalar zero() const { return Scalar::of(spec_, 0); }
    Scalar one() const { return Scalar::of(spec_, 1); }
    Scalar from_long(long v) const { return Scalar::of(spec_, v); }
    Scalar parse(const std::string& text) const;

    void check(const Scalar& a) const {
        if (a.field() != spec_) fail(ErrorCode::FieldMismatch, "scalar not in field " + spec_.str());
    }

    // Least nonsquare residue of F_p (canonical nonsquare class representative).
    long least_nonsquare() const;

private:
    FieldSpec spec_;
    mutable long least_nonsquare_ = 0;  // lazy cache, 0 = not computed
};

// Validates the field description: rationals always valid; prime fields must
// have p an odd prime below 10^4 (square-root search is exhaustive).
FieldCtx make_field(const FieldSpec& spec);

// Exact square test. Returns the witness w with w*w == a when a is a square.
// Over F_p the search is exhaustive (p < 10^4); over Q numerator and
// denominator must both be perfect integer squares.
std::pair<bool, std::optional<Scalar>> is_square(const Scalar& a, const FieldCtx& F);

// Canonical square-class representative of a != 0:
//   F_p: 1 for squares, the least nonsquare residue otherwise;
//   Q:   the signed squarefree integer part of the value.
// Invariants: square_class(a*b^2) == square_class(a); square_class(a) == 1 iff
// is_square(a). Over Q squarefree extraction trial-divides primes < 10^5 and
// then strips a perfect-square cofactor, which is exact for every value built
// from desk-scale inputs.
Scalar square_class(const Scalar& a, const FieldCtx& F);

std::string scalar_to_string(const Scalar& a);
Scalar scalar_from_string(const std::string& text, const FieldCtx& F);

}  // namespace cliffreal
