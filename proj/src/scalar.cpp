#include "cliffreal/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace cliffreal {

namespace {

long mod_norm(long v, long p) {
    long r = v % p;
    return r < 0 ? r + p : r;
}

// Extended Euclid inverse of r modulo p; r must be nonzero mod p.
long mod_inv(long r, long p) {
    long a = mod_norm(r, p);
    if (a == 0) fail(ErrorCode::DivisionByZero, "inverse of zero in F_" + std::to_string(p));
    long t = 0, new_t = 1, n = p, new_n = a;
    while (new_n != 0) {
        long q = n / new_n;
        long tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = n - q * new_n;
        n = new_n;
        new_n = tmp;
    }
    return mod_norm(t, p);
}

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

Scalar Scalar::rational(long num, long den) {
    if (den == 0) fail(ErrorCode::DivisionByZero, "zero denominator");
    mpq_class v(num, den);
    v.canonicalize();
    return rational(v);
}

Scalar Scalar::mod(long r, long p) {
    if (p < 3) fail(ErrorCode::PreconditionViolated, "modulus must be an odd prime");
    Scalar s;
    s.p_ = p;
    s.r_ = mod_norm(r, p);
    return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(o);
    if (p_ == 0) return rational(q_ + o.q_);
    return mod(r_ + o.r_, p_);
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same_field(o);
    if (p_ == 0) return rational(q_ - o.q_);
    return mod(r_ - o.r_, p_);
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(o);
    if (p_ == 0) return rational(q_ * o.q_);
    return mod(r_ * o.r_, p_);
}

Scalar Scalar::operator/(const Scalar& o) const {
    check_same_field(o);
    if (o.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
    if (p_ == 0) return rational(q_ / o.q_);
    return mod(r_ * mod_inv(o.r_, p_), p_);
}

Scalar Scalar::operator-() const {
    if (p_ == 0) return rational(-q_);
    return mod(-r_, p_);
}

Scalar Scalar::inv() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    if (p_ == 0) return rational(1 / q_);
    return mod(mod_inv(r_, p_), p_);
}

Scalar Scalar::pow(long e) const {
    Scalar base = e < 0 ? inv() : *this;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1UL
                            : static_cast<unsigned long>(e);
    Scalar acc = Scalar::of(field(), 1);
    while (n > 0) {
        if (n & 1UL) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

bool Scalar::operator==(const Scalar& o) const {
    check_same_field(o);
    return p_ == 0 ? q_ == o.q_ : r_ == o.r_;
}

bool Scalar::operator<(const Scalar& o) const {
    check_same_field(o);
    return p_ == 0 ? q_ < o.q_ : r_ < o.r_;
}

std::string Scalar::str() const {
    if (p_ == 0) return q_.get_str();
    return std::to_string(r_) + " mod " + std::to_string(p_);
}

FieldCtx make_field(const FieldSpec& spec) {
    if (spec.rationals()) return FieldCtx(spec);
    if (spec.p == 2) fail(ErrorCode::EvenCharacteristic, "characteristic 2 is not supported");
    if (spec.p < 2 || !is_prime_long(spec.p))
        fail(ErrorCode::NotPrime, std::to_string(spec.p) + " is not prime");
    if (spec.p >= 10000)
        fail(ErrorCode::CapExceeded, "prime fields are capped at p < 10^4");
    return FieldCtx(spec);
}

long FieldCtx::least_nonsquare() const {
    if (rationals()) fail(ErrorCode::PreconditionViolated, "least_nonsquare needs a prime field");
    if (least_nonsquare_ != 0) return least_nonsquare_;
    std::vector<bool> sq(static_cast<size_t>(spec_.p), false);
    for (long w = 0; w < spec_.p; ++w) sq[static_cast<size_t>((w * w) % spec_.p)] = true;
    for (long n = 2; n < spec_.p; ++n)
        if (!sq[static_cast<size_t>(n)]) {
            least_nonsquare_ = n;
            return n;
        }
    fail(ErrorCode::Internal, "no nonsquare residue found");
}

Scalar FieldCtx::parse(const std::string& text) const { return scalar_from_string(text, *this); }

std::pair<bool, std::optional<Scalar>> is_square(const Scalar& a, const FieldCtx& F) {
    F.check(a);
    if (a.is_zero()) return {true, F.zero()};
    if (!F.rationals()) {
        long p = F.p();
        long target = a.residue();
        for (long w = 0; w <= (p - 1) / 2; ++w) {
            if ((w * w) % p == target) return {true, Scalar::mod(w, p)};
        }
        return {false, std::nullopt};
    }
    const mpq_class& v = a.rat();
    if (v < 0) return {false, std::nullopt};
    mpz_class num = v.get_num(), den = v.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return {false, std::nullopt};
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return {true, Scalar::rational(mpq_class(rn, rd))};
}

namespace {

// Signed squarefree part of a nonzero integer: trial-divide small primes, then
// strip a perfect-square cofactor from the remainder. Exact whenever the square
// part of the value factors over primes < 10^5 (always true at desk scale).
mpz_class squarefree_part(mpz_class n) {
    mpz_class out = (n < 0) ? -1 : 1;
    n = abs(n);
    for (long d = 2; d < 100000 && n > 1; ++d) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d))) {
            int mult = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d))) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(d));
                ++mult;
            }
            if (mult % 2 == 1) out *= d;
        }
        if (d > 2 && mpz_cmp_ui(n.get_mpz_t(), static_cast<unsigned long>(d) * d) < 0) break;
    }
    if (n > 1) {
        if (mpz_perfect_square_p(n.get_mpz_t())) {
            // square remainder contributes nothing
        } else {
            mpz_class r;
            mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
            // If n = s*r^2 with r built from primes >= 10^5, r^2 >= 10^10 is out of
            // desk scale. Treat the remainder as squarefree.
            out *= n;
        }
    }
    return out;
}

}  // namespace

Scalar square_class(const Scalar& a, const FieldCtx& F) {
    F.check(a);
    if (a.is_zero()) fail(ErrorCode::ZeroInput, "square class of zero is undefined");
    if (is_square(a, F).first) return F.one();
    if (!F.rationals()) return Scalar::mod(F.least_nonsquare(), F.p());
    // value ~ num*den modulo squares
    mpz_class prod = a.rat().get_num() * a.rat().get_den();
    return Scalar::rational(mpq_class(squarefree_part(prod)));
}

std::string scalar_to_string(const Scalar& a) { return a.str(); }

Scalar scalar_from_string(const std::string& text, const FieldCtx& F) {
    std::string body = text;
    auto mod_pos = body.find(" mod ");
    if (mod_pos != std::string::npos) {
        if (F.rationals())
            fail(ErrorCode::ParseError, "residue literal '" + text + "' in a rational context");
        long p = 0;
        try {
            p = std::stol(body.substr(mod_pos + 5));
        } catch (const std::exception&) {
            fail(ErrorCode::ParseError, "bad modulus in '" + text + "'");
        }
        if (p != F.p())
            fail(ErrorCode::FieldMismatch, "literal '" + text + "' not in " + F.spec().str());
        body = body.substr(0, mod_pos);
    }
    // trim whitespace
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    body.erase(body.begin(), std::find_if_not(body.begin(), body.end(), issp));
    body.erase(std::find_if_not(body.rbegin(), body.rend(), issp).base(), body.end());
    if (body.empty()) fail(ErrorCode::ParseError, "empty scalar literal");
    bool ok = !body.empty();
    size_t slash = body.find('/');
    auto all_digits = [](const std::string& s, size_t from) {
        if (from >= s.size()) return false;
        for (size_t i = from; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    std::string numpart = slash == std::string::npos ? body : body.substr(0, slash);
    size_t start = (!numpart.empty() && (numpart[0] == '-' || numpart[0] == '+')) ? 1 : 0;
    ok = ok && all_digits(numpart, start);
    if (slash != std::string::npos) ok = ok && all_digits(body, slash + 1);
    if (!ok) fail(ErrorCode::ParseError, "bad scalar literal '" + text + "'");
    mpq_class v(body);
    if (v.get_den() == 0) fail(ErrorCode::ParseError, "zero denominator in '" + text + "'");
    v.canonicalize();
    if (!F.rationals()) {
        mpz_class p(F.p());
        mpz_class den = v.get_den();
        mpz_class dinv;
        if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
            fail(ErrorCode::ParseError, "denominator not invertible mod " + std::to_string(F.p()));
        mpz_class r = (v.get_num() % p) * dinv % p;
        return Scalar::mod(r.get_si(), F.p());
    }
    return Scalar::rational(v);
}

}  // namespace cliffreal
