#pragma once

#include <vector>

#include "cliffreal/multivector.hpp"

namespace cliffreal {

// Element of the Clifford group Gamma(V,q) = {u invertible, homogeneous
// parity, u x u^{-1} in V for all x in V}, together with its cached
// invariants: parity (0 even, 1 odd), the norm N(u) = tau(u) u, and the
// vector representation chi(u): x -> u x u^{-1} as a matrix in ambient
// coordinates. For an anisotropic vector v, chi(v) = -S_v where S_v is the
// reflection along v, so det chi(u) = (-1)^{k(dim+1)} on a product of k
// vectors: chi(u) is always orthogonal, and parity is visible in the
// determinant only when dim is even.
struct GroupElement {
    Multivector mv;
    int parity = 0;
    Scalar norm;
    Matrix chi;
};

// Non-throwing membership test for Gamma.
bool in_gamma(const Multivector& u);

// Validates membership and computes the cached data.
// Throws NotInGamma (not invertible / mixed parity / conjugation leaves V)
// and NormNotScalar (tau(u) u fails to be scalar).
GroupElement make_group_element(const Multivector& u);

// tau(u) * u, which is scalar for every u in Gamma. Throws NormNotScalar.
Scalar norm_of(const Multivector& u);

// Spin = even elements of Gamma with N(u) = 1.
bool is_spin(const GroupElement& u);
bool is_spin(const Multivector& u);

// M^T * gram * M == gram.
bool is_orthogonal(const QSpace& V, const Matrix& M);
bool is_special_orthogonal(const QSpace& V, const Matrix& M);

// Reflection S_v(x) = x - (B(x,v)/q(v)) v as a matrix. Requires q(v) != 0.
Matrix reflection_matrix(const QSpace& V, const Vec& v);

// Writes an orthogonal M as a product of at most dim V reflections:
// M = S_{v_1} S_{v_2} ... S_{v_k} (matrix product in the returned order),
// every v_i anisotropic, k even iff det M = 1. Throws NotOrthogonal.
std::vector<Vec> reflection_factorize(const QSpace& V, const Matrix& M);

// Square class of prod q(v_i) over any reflection factorization of M.
// Only well defined on SO(V,q); throws NotSpecialOrthogonal when det M != 1.
Scalar spinor_norm(const QSpace& V, const Matrix& M);

// A preimage of M under chi restricted to Gamma^+ (even, chi(u) = M), unique
// up to a scalar. Throws NotSpecialOrthogonal.
GroupElement lift_so(const CtxPtr& ctx, const Matrix& M);

}
