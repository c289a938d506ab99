#pragma once

#include <utility>
#include <vector>

#include "cliffreal/matrix.hpp"
#include "cliffreal/scalar.hpp"

namespace cliffreal {

// Nondegenerate quadratic space (V, q) over Q or F_p (p odd). The Gram matrix
// stores the polar form B, so B(x, x) = 2 q(x). Dimension is capped at 12
// (dense 2^dim Clifford data stays desk-sized).
class QSpace {
public:
    QSpace(FieldCtx field, Matrix gram);

    const FieldCtx& field() const { return field_; }
    const Matrix& gram() const { return gram_; }
    size_t dim() const { return gram_.rows(); }

    Scalar polar(const Vec& x, const Vec& y) const;  // B(x, y)
    Scalar q(const Vec& x) const;                    // B(x, x) / 2

    bool operator==(const QSpace& o) const {
        return field_.spec() == o.field_.spec() && gram_ == o.gram_;
    }

private:
    FieldCtx field_;
    Matrix gram_;
};

// Validates the Gram matrix: square, symmetric, invertible. Throws
// DimensionMismatch / NotSymmetric / Degenerate / CapExceeded.
QSpace make_qspace(const FieldCtx& field, const Matrix& gram);

// Subspace of an ambient quadratic space, stored as independent basis vectors
// in ambient coordinates.
struct Subspace {
    QSpace ambient;
    std::vector<Vec> basis;

    Subspace(QSpace amb, std::vector<Vec> b);
    size_t dim() const { return basis.size(); }
    // Polar form restricted to the subspace basis (dim x dim).
    Matrix restricted_gram() const;
    bool nondegenerate() const;
};

// Orthogonal basis with q(v_i) != 0: columns of .first, q-values in .second.
// Deterministic: lowest-index pivoting, and each output vector is normalized
// (integer primitive with positive leading entry over Q, monic leading entry
// over F_p).
std::pair<std::vector<Vec>, std::vector<Scalar>> orthogonal_diagonalize(const Subspace& s);
std::pair<std::vector<Vec>, std::vector<Scalar>> orthogonal_diagonalize(const QSpace& V);

// Hyperbolic pairs (e_i, f_i): q(e_i) = q(f_i) = 0, B(e_i, f_j) = delta_ij,
// planes pairwise orthogonal, plus an orthogonalized anisotropic complement.
struct WittBasis {
    std::vector<std::pair<Vec, Vec>> pairs;
    std::vector<Vec> anisotropic;          // orthogonal basis of the anisotropic part
    std::vector<Scalar> anisotropic_q;     // q-values of those vectors
    Matrix change;                         // columns e1 f1 e2 f2 ... a1 a2 ...
    size_t witt_index() const { return pairs.size(); }
};

// Witt decomposition by repeated isotropic-vector search. Over F_p the search
// is exhaustive (so the anisotropic part is certified); over Q a bounded box
// search (|coord| <= 50, node budget) is used, definite complements are
// certified anisotropic by sign count, and anything else raises
// IsotropicSearchFailed rather than guessing.
WittBasis witt_decompose(const QSpace& V);
WittBasis witt_decompose(const Subspace& s);

// When the gram matrix is literally in split block form (antidiagonal
// [[0,1],[1,0]] pairs followed by a diagonal anisotropic tail) this reads the
// Witt basis off the standard basis vectors, so pair i is (b_{2i}, b_{2i+1}).
// Falls back to witt_decompose otherwise.
WittBasis standard_witt_basis(const QSpace& V);

// square_class of det of the restricted polar-form matrix; equivalently the
// class of the product of any orthogonal q-values times 2^dim. We use the
// classical definition disc = class(prod q(v_i)) over an orthogonal basis.
Scalar discriminant(const Subspace& s);

// Bounded isotropic search helper (exposed for tests): nonzero x in span(s)
// with q(x) = 0, or nullopt when the complement is certified anisotropic.
std::optional<Vec> find_isotropic(const Subspace& s);

// Basis of {v in span(full) : B(v, w) = 0 for all w in cut}.
std::vector<Vec> orthogonal_complement_in(const Subspace& full, const std::vector<Vec>& cut);

}  // namespace cliffreal
