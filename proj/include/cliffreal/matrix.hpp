#pragma once

#include <vector>

#include "cliffreal/scalar.hpp"

namespace cliffreal {

using Vec = std::vector<Scalar>;

// Dense matrix over an exact field. Small (n <= 2^8 or so); all algorithms are
// plain Gaussian elimination with exact division.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(size_t rows, size_t cols, const FieldSpec& field);

    static Matrix identity(size_t n, const FieldSpec& field);
    static Matrix from_columns(const std::vector<Vec>& cols, const FieldSpec& field);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    FieldSpec field() const { return field_; }

    Scalar& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Scalar& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    Vec column(size_t j) const;
    Vec row(size_t i) const;

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Vec operator*(const Vec& v) const;
    Matrix scaled(const Scalar& c) const;
    Matrix transpose() const;

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_symmetric() const;
    bool is_identity() const;

    Scalar det() const;
    size_t rank() const;
    Matrix inverse() const;  // throws NotInvertible

    // Basis of the null space {x : Ax = 0}, deterministic (free columns in order).
    std::vector<Vec> kernel() const;

    // Solve Ax = b for square invertible A.
    Vec solve(const Vec& b) const;

    std::string str() const;

private:
    size_t rows_, cols_;
    FieldSpec field_;
    std::vector<Scalar> data_;
};

// Vector helpers over one field.
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scaled(const Vec& a, const Scalar& c);
bool vec_is_zero(const Vec& a);

// Polynomials: coefficient vectors, ascending degree, over one field.
using Poly = std::vector<Scalar>;

Poly poly_trim(Poly p);
size_t poly_deg(const Poly& p);  // deg(0) reported as 0
Scalar poly_eval(const Poly& p, const Scalar& x);
Poly poly_derivative(const Poly& p, const FieldCtx& F);
Poly poly_mul(const Poly& a, const Poly& b, const FieldCtx& F);
// Division with remainder by a nonzero divisor; returns (quotient, remainder).
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b, const FieldCtx& F);
Poly poly_gcd(Poly a, Poly b, const FieldCtx& F);  // monic
bool poly_is_squarefree(const Poly& p, const FieldCtx& F);

// Characteristic polynomial det(xI - A) via the division-free Berkowitz
// algorithm (works over any commutative ring, so small characteristics are
// safe). Leading coefficient 1.
Poly char_poly(const Matrix& A);

// Minimal polynomial: first linear dependence among I, A, A^2, ... (monic).
Poly min_poly(const Matrix& A);

// All roots of p lying in the base field. Over F_p all residues are tested;
// over Q candidates come from the rational root theorem (divisor enumeration
// after clearing denominators). Deterministic ascending order.
std::vector<Scalar> field_roots(const Poly& p, const FieldCtx& F);

}  // namespace cliffreal
