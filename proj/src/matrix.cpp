#include "cliffreal/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace cliffreal {

Matrix::Matrix(size_t rows, size_t cols, const FieldSpec& field)
    : rows_(rows), cols_(cols), field_(field),
      data_(rows * cols, Scalar::of(field, 0)) {}

Matrix Matrix::identity(size_t n, const FieldSpec& field) {
    Matrix m(n, n, field);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::of(field, 1);
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, const FieldSpec& field) {
    if (cols.empty()) return Matrix(0, 0, field);
    size_t n = cols[0].size();
    Matrix m(n, cols.size(), field);
    for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != n) fail(ErrorCode::DimensionMismatch, "ragged column list");
        for (size_t i = 0; i < n; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

Vec Matrix::column(size_t j) const {
    Vec v;
    v.reserve(rows_);
    for (size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
}

Vec Matrix::row(size_t i) const {
    Vec v;
    v.reserve(cols_);
    for (size_t j = 0; j < cols_; ++j) v.push_back(at(i, j));
    return v;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        fail(ErrorCode::DimensionMismatch, "matrix addition shape mismatch");
    Matrix r(rows_, cols_, field_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        fail(ErrorCode::DimensionMismatch, "matrix subtraction shape mismatch");
    Matrix r(rows_, cols_, field_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    Matrix r(rows_, o.cols_, field_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Scalar& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

Vec Matrix::operator*(const Vec& v) const {
    if (cols_ != v.size()) fail(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
    Vec r(rows_, Scalar::of(field_, 0));
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero()) r[i] += at(i, j) * v[j];
    return r;
}

Matrix Matrix::scaled(const Scalar& c) const {
    Matrix r(rows_, cols_, field_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * c;
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_, field_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_) return false;
    for (size_t i = 0; i < data_.size(); ++i)
        if (data_[i] != o.data_[i]) return false;
    return true;
}

bool Matrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
        }
    return true;
}

namespace {

// Row-reduce a copy; returns (echelon matrix, pivot column per pivot row, det
// accumulated over row swaps/scales for square input).
struct Echelon {
    Matrix m;
    std::vector<size_t> pivot_cols;
    Scalar det;
    Echelon(Matrix mm, const FieldSpec& f) : m(std::move(mm)), det(Scalar::of(f, 1)) {}
};

Echelon echelon_form(Matrix a) {
    FieldSpec f = a.field();
    Echelon e(std::move(a), f);
    size_t r = 0;
    for (size_t c = 0; c < e.m.cols() && r < e.m.rows(); ++c) {
        size_t piv = r;
        while (piv < e.m.rows() && e.m.at(piv, c).is_zero()) ++piv;
        if (piv == e.m.rows()) continue;
        if (piv != r) {
            for (size_t j = 0; j < e.m.cols(); ++j) std::swap(e.m.at(piv, j), e.m.at(r, j));
            e.det = -e.det;
        }
        Scalar d = e.m.at(r, c);
        e.det = e.det * d;
        Scalar dinv = d.inv();
        for (size_t j = c; j < e.m.cols(); ++j) e.m.at(r, j) = e.m.at(r, j) * dinv;
        for (size_t i = 0; i < e.m.rows(); ++i) {
            if (i == r || e.m.at(i, c).is_zero()) continue;
            Scalar factor = e.m.at(i, c);
            for (size_t j = c; j < e.m.cols(); ++j)
                e.m.at(i, j) = e.m.at(i, j) - factor * e.m.at(r, j);
        }
        e.pivot_cols.push_back(c);
        ++r;
    }
    return e;
}

}  // namespace

Scalar Matrix::det() const {
    if (rows_ != cols_) fail(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
    Echelon e = echelon_form(*this);
    if (e.pivot_cols.size() < rows_) return Scalar::of(field_, 0);
    return e.det;
}

size_t Matrix::rank() const { return echelon_form(*this).pivot_cols.size(); }

Matrix Matrix::inverse() const {
    if (rows_ != cols_) fail(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
    Matrix aug(rows_, 2 * cols_, field_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = Scalar::of(field_, 1);
    }
    Echelon e = echelon_form(std::move(aug));
    if (e.pivot_cols.size() < rows_ || e.pivot_cols[rows_ - 1] >= cols_)
        fail(ErrorCode::NotInvertible, "singular matrix");
    Matrix inv(rows_, cols_, field_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) inv.at(i, j) = e.m.at(i, cols_ + j);
    return inv;
}

std::vector<Vec> Matrix::kernel() const {
    Echelon e = echelon_form(*this);
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : e.pivot_cols) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        Vec v(cols_, Scalar::of(field_, 0));
        v[free] = Scalar::of(field_, 1);
        for (size_t r = 0; r < e.pivot_cols.size(); ++r) {
            size_t pc = e.pivot_cols[r];
            if (pc < free) v[pc] = -e.m.at(r, free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

Vec Matrix::solve(const Vec& b) const {
    if (rows_ != cols_ || b.size() != rows_)
        fail(ErrorCode::DimensionMismatch, "solve shape mismatch");
    Matrix aug(rows_, cols_ + 1, field_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_) = b[i];
    }
    Echelon e = echelon_form(std::move(aug));
    if (e.pivot_cols.size() < rows_ || e.pivot_cols[rows_ - 1] >= cols_)
        fail(ErrorCode::NotInvertible, "singular system");
    Vec x(cols_, Scalar::of(field_, 0));
    for (size_t r = 0; r < rows_; ++r) x[e.pivot_cols[r]] = e.m.at(r, cols_);
    return x;
}

std::string Matrix::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (size_t j = 0; j < cols_; ++j) os << (j ? ", " : "[") << at(i, j).str();
        os << "]" << (i + 1 == rows_ ? "]" : "\n");
    }
    return os.str();
}

Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "vector addition shape mismatch");
    Vec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "vector subtract shape mismatch");
    Vec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec vec_scaled(const Vec& a, const Scalar& c) {
    Vec r(a);
    for (auto& x : r) x *= c;
    return r;
}

bool vec_is_zero(const Vec& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

Poly poly_trim(Poly p) {
    while (p.size() > 1 && p.back().is_zero()) p.pop_back();
    return p;
}

size_t poly_deg(const Poly& p) {
    for (size_t i = p.size(); i > 0; --i)
        if (!p[i - 1].is_zero()) return i - 1;
    return 0;
}

Scalar poly_eval(const Poly& p, const Scalar& x) {
    Scalar acc = Scalar::of(x.field(), 0);
    for (size_t i = p.size(); i > 0; --i) acc = acc * x + p[i - 1];
    return acc;
}

Poly poly_derivative(const Poly& p, const FieldCtx& F) {
    Poly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * F.from_long(static_cast<long>(i)));
    if (d.empty()) d.push_back(F.zero());
    return poly_trim(d);
}

Poly poly_mul(const Poly& a, const Poly& b, const FieldCtx& F) {
    Poly r(a.size() + b.size() - 1, F.zero());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return poly_trim(r);
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b, const FieldCtx& F) {
    Poly rem = poly_trim(a), div = poly_trim(b);
    if (poly_deg(div) == 0 && div[0].is_zero())
        fail(ErrorCode::DivisionByZero, "polynomial division by zero");
    size_t db = poly_deg(div);
    Scalar lead_inv = div[db].inv();
    if (poly_deg(rem) < db) return {Poly{F.zero()}, rem};
    Poly quot(poly_deg(rem) >= db ? poly_deg(rem) - db + 1 : 1, F.zero());
    while (!(rem.size() == 1 && rem[0].is_zero()) && poly_deg(rem) >= db) {
        size_t dr = poly_deg(rem);
        Scalar c = rem[dr] * lead_inv;
        quot[dr - db] = c;
        for (size_t i = 0; i <= db; ++i) rem[dr - db + i] -= c * div[i];
        rem = poly_trim(rem);
        if (dr == 0) break;
    }
    return {poly_trim(quot), poly_trim(rem)};
}

Poly poly_gcd(Poly a, Poly b, const FieldCtx& F) {
    a = poly_trim(a);
    b = poly_trim(b);
    auto is_zero_poly = [](const Poly& p) { return p.size() == 1 && p[0].is_zero(); };
    while (!is_zero_poly(b)) {
        Poly r = poly_divmod(a, b, F).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!is_zero_poly(a)) {
        Scalar lead = a[poly_deg(a)];
        for (auto& c : a) c /= lead;
    }
    return a;
}

bool poly_is_squarefree(const Poly& p, const FieldCtx& F) {
    Poly g = poly_gcd(p, poly_derivative(p, F), F);
    return poly_deg(g) == 0;
}

Poly char_poly(const Matrix& A) {
    // Berkowitz: iteratively builds the characteristic polynomial of leading
    // principal submatrices using only ring operations.
    size_t n = A.rows();
    if (n != A.cols()) fail(ErrorCode::DimensionMismatch, "char_poly of non-square matrix");
    FieldSpec f = A.field();
    FieldCtx F(f);
    if (n == 0) return Poly{F.one()};
    // poly stored descending here: c[0] x^k + ...; converted at the end.
    std::vector<Scalar> c{F.one(), -A.at(0, 0)};
    for (size_t k = 1; k < n; ++k) {
        // Toeplitz column entries t[0..k+1] from principal minors of size k.
        // t[0] = 1 below the diagonal shift; t[1] = -a_kk; t[j] = -(R A^{j-2} S)
        std::vector<Scalar> t(k + 2, F.zero());
        t[0] = F.one();
        t[1] = -A.at(k, k);
        Vec S(k, F.zero());
        for (size_t i = 0; i < k; ++i) S[i] = A.at(i, k);
        for (size_t j = 2; j <= k + 1; ++j) {
            // t[j] = - R * (A_k)^{j-2} * S where R = row k of A restricted to 0..k-1
            Scalar acc = F.zero();
            for (size_t i = 0; i < k; ++i) acc += A.at(k, i) * S[i];
            t[j] = -acc;
            if (j <= k) {
                Vec S2(k, F.zero());
                for (size_t i = 0; i < k; ++i) {
                    for (size_t m = 0; m < k; ++m)
                        if (!A.at(i, m).is_zero()) S2[i] += A.at(i, m) * S[m];
                }
                S = std::move(S2);
            }
        }
        std::vector<Scalar> next(k + 2, F.zero());
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; i + j < k + 2 && j < t.size(); ++j)
                next[i + j] += c[i] * t[j];
        c = std::move(next);
    }
    Poly p(n + 1, F.zero());
    for (size_t i = 0; i < c.size(); ++i) p[n - i] = c[i];  // to ascending order
    return p;
}

Poly min_poly(const Matrix& A) {
    size_t n = A.rows();
    if (n != A.cols()) fail(ErrorCode::DimensionMismatch, "min_poly of non-square matrix");
    FieldSpec f = A.field();
    FieldCtx F(f);
    // Flattened powers of A as rows; find the first power that is a linear
    // combination of the previous ones.
    std::vector<Matrix> powers;
    powers.push_back(Matrix::identity(n, f));
    for (size_t k = 1; k <= n; ++k) powers.push_back(powers.back() * A);
    for (size_t k = 1; k <= n; ++k) {
        // Solve sum_{i<k} x_i vec(A^i) = vec(A^k).
        Matrix sys(n * n, k, f);
        for (size_t i = 0; i < k; ++i)
            for (size_t r = 0; r < n; ++r)
                for (size_t cidx = 0; cidx < n; ++cidx)
                    sys.at(r * n + cidx, i) = powers[i].at(r, cidx);
        // augmented least structure: use kernel of [sys | -vec(A^k)]
        Matrix aug(n * n, k + 1, f);
        for (size_t r = 0; r < n * n; ++r)
            for (size_t i = 0; i < k; ++i) aug.at(r, i) = sys.at(r, i);
        for (size_t r = 0; r < n; ++r)
            for (size_t cidx = 0; cidx < n; ++cidx)
                aug.at(r * n + cidx, k) = -powers[k].at(r, cidx);
        for (const Vec& v : aug.kernel()) {
            if (v[k].is_zero()) continue;
            // v solves sum_i v_i A^i = v_k A^k, so the monic dependence is
            // A^k - sum_i (v_i / v_k) A^i = 0.
            Scalar s = v[k].inv();
            Poly p(k + 1, F.zero());
            for (size_t i = 0; i < k; ++i) p[i] = -(v[i] * s);
            p[k] = F.one();
            Matrix check(n, n, f);
            for (size_t i = 0; i <= k; ++i) check = check + powers[i].scaled(p[i]);
            if (!(check == Matrix(n, n, f))) fail(ErrorCode::Internal, "minimal polynomial does not annihilate");
            return p;
        }
    }
    fail(ErrorCode::Internal, "minimal polynomial search exhausted");
}

namespace {

// Positive divisors of |n| via trial division; remainder after 10^6 is treated
// as prime (desk scale: matrix entries stay small).
std::vector<mpz_class> divisors_of(mpz_class n) {
    n = abs(n);
    std::vector<std::pair<mpz_class, int>> fac;
    if (n == 0) fail(ErrorCode::Internal, "divisors of zero");
    for (long d = 2; d <= 1000000 && n > 1; ++d) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d))) {
            int m = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d))) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(d));
                ++m;
            }
            fac.push_back({mpz_class(d), m});
        }
        if (d > 2) {
            mpz_class dd(d);
            if (n > 1 && n < dd * dd) break;
        }
    }
    if (n > 1) fac.push_back({n, 1});
    std::vector<mpz_class> divs{1};
    for (auto& [p, m] : fac) {
        size_t base = divs.size();
        mpz_class pk = 1;
        for (int e = 1; e <= m; ++e) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) {
                divs.push_back(divs[i] * pk);
                if (divs.size() > 200000) fail(ErrorCode::CapExceeded, "divisor enumeration cap");
            }
        }
    }
    return divs;
}

}  // namespace

std::vector<Scalar> field_roots(const Poly& p_in, const FieldCtx& F) {
    Poly p = poly_trim(p_in);
    std::vector<Scalar> roots;
    if (poly_deg(p) == 0) return roots;
    if (!F.rationals()) {
        for (long r = 0; r < F.p(); ++r) {
            Scalar x = Scalar::mod(r, F.p());
            if (poly_eval(p, x).is_zero()) roots.push_back(x);
        }
        return roots;
    }
    // Clear denominators to an integer polynomial.
    mpz_class lcm = 1;
    for (const auto& c : p) {
        mpz_class den = c.rat().get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        lcm = lcm / g * den;
    }
    std::vector<mpz_class> ic;
    for (const auto& c : p) {
        mpq_class v = c.rat() * mpq_class(lcm);
        v.canonicalize();
        ic.push_back(v.get_num());
    }
    size_t lo = 0;
    while (lo < ic.size() && ic[lo] == 0) ++lo;  // factor out x^lo (0 is not an eigen-root here)
    if (lo == ic.size()) return roots;
    size_t hi = poly_deg(p);
    if (ic[lo] == 0 || ic[hi] == 0) return roots;
    std::vector<mpz_class> nums = divisors_of(ic[lo]);
    std::vector<mpz_class> dens = divisors_of(ic[hi]);
    std::vector<Scalar> candidates;
    if (lo > 0) candidates.push_back(F.zero());
    for (const auto& nu : nums)
        for (const auto& de : dens) {
            mpq_class q(nu, de);
            q.canonicalize();
            candidates.push_back(Scalar::rational(q));
            candidates.push_back(Scalar::rational(mpq_class(-q)));
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& x : candidates)
        if (poly_eval(p, x).is_zero()) roots.push_back(x);
    return roots;
}

}  // namespace cliffreal
