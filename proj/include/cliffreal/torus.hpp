#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cliffreal/clifford_group.hpp"

namespace cliffreal {

// Which conjugation identity a certificate witnesses:
//   TInverse            s t s^{-1} = t^{-1}
//   NtTInverse          s t s^{-1} = N(t) t^{-1}
//   MinusNtTInverse     s t s^{-1} = -N(t) t^{-1}
enum class Relation { TInverse, NtTInverse, MinusNtTInverse };

enum class GroupLevel { Gamma, GammaPlus, Spin };

const char* relation_name(Relation r);
const char* group_level_name(GroupLevel g);

// A fully verified conjugation witness. make_certificate recomputes the
// relation by direct multiplication, so a constructed certificate is proof.
struct RealityCertificate {
    GroupElement t;
    GroupElement s;
    Relation relation;
    Scalar s_squared;  // always +1 or -1
    Scalar s_norm;     // N(s)
    GroupLevel s_in;
};

struct InvolutionPair {
    GroupElement tau1, tau2;
    Scalar eps1, eps2;  // tau_i^2 = eps_i, both +1 or -1
};

// Torus element t = lambda0 * prod_i (e_i + f_i)(e_i + lambda_i f_i) over the
// first m = lambdas.size() hyperbolic pairs of a Witt basis. Its vector
// representation is diag(lambda_i, lambda_i^{-1}) on each pair and the
// identity elsewhere; N(t) = lambda0^2 * prod lambda_i.
struct TorusElement {
    Scalar lambda0;
    std::vector<Scalar> lambdas;
    WittBasis basis;
    GroupElement element;
};

// Eigenspace decomposition of chi(t) for semisimple t with all eigenvalues in
// the base field: V = V_1 + V_-1 + sum of W_lambda, W_lambda = V_lambda + V_{lambda^-1}.
struct EigenPair {
    Scalar lambda;           // canonical representative of {lambda, lambda^{-1}}
    Subspace space_lambda;
    Subspace space_lambda_inv;
};

struct EigenSplit {
    Subspace one;
    Subspace minus_one;
    std::vector<EigenPair> pairs;
};

enum class RealityKind { Real, NotReal, Undecided };

struct RealityDecision {
    RealityKind kind;
    std::optional<RealityCertificate> cert;  // present iff Real
    std::string reason;
};

// Throws ZeroParameter when lambda0 or any lambda_i is zero, and
// PreconditionViolated when the basis has fewer pairs than lambdas.
TorusElement make_torus_element(const CtxPtr& ctx, const Scalar& lambda0,
                                const std::vector<Scalar>& lambdas, const WittBasis& basis);

// (-1)^{m(m-1)/2}: the square of the standard conjugator on m pairs.
Scalar standard_conjugator_sign(const FieldCtx& F, size_t m);
// (-1)^{m(m+1)/2}: the square of the odd-dimension split conjugator.
Scalar split_conjugator_sign(const FieldCtx& F, size_t m);

// s = prod_{i<m} (e_i + f_i). Conjugation by s sends every torus element on
// those pairs to N(t) t^{-1}; N(s) = 1 and s^2 = (-1)^{m(m-1)/2}.
GroupElement standard_conjugator(const CtxPtr& ctx, const WittBasis& basis, size_t m);

// For m odd and lambda_1 = -1: s = prod_{i>=2} (e_i + f_i) is even, satisfies
// s t s^{-1} = -N(t) t^{-1} and s^2 = (-1)^{(m-1)(m-2)/2}. Throws
// PreconditionViolated otherwise.
GroupElement minus_conjugator(const CtxPtr& ctx, const TorusElement& t);

// Lift of -id on a nondegenerate even-dimensional subspace W to an involution
// u in Gamma^+ with u^2 = 1, via u = (v_1/gamma) v_2 ... v_{2r} where
// gamma^2 = (-1)^r prod q(v_i). Throws NotLiftable (message carries the
// obstructing square class) when that scalar is not a square, and
// PreconditionViolated / DegenerateSubspace on bad input.
GroupElement involution_lift(const CtxPtr& ctx, const Subspace& w);

// Throws NotSemisimple (minimal polynomial not squarefree) or
// EigenvaluesNotRational (some eigenvalue outside the base field).
EigenSplit eigen_split(const CtxPtr& ctx, const GroupElement& t);

// True iff the minimal polynomial of chi(t) is squarefree.
bool is_semisimple(const GroupElement& t);

// Verifies the claimed relation by direct multiplication (WrongRelation on
// mismatch), that s^2 is +1 or -1, and records N(s) and the group level.
RealityCertificate make_certificate(const CtxPtr& ctx, const GroupElement& t,
                                    const GroupElement& s, Relation relation);

// General conjugator assembled from the eigenspace blocks of any semisimple t
// with rational eigenvalues: one vector x_i + beta_i y_i per hyperbolic
// eigen-pair, Witt-pair vectors plus at most one anisotropic vector on V_-1,
// nothing on V_1. Returns a certificate for s t s^{-1} = N(t) t^{-1} with
// N(s) = 1 and s^2 = +-1. Throws ConjugatorNotFound when no norm-one choice
// exists (possible over Q for anisotropic V_-1 blocks).
RealityCertificate blockwise_conjugator(const CtxPtr& ctx, const GroupElement& t);

// Spin conjugator with s t s^{-1} = N(t) t^{-1}: as above but with even
// parity (fixed through the eigenvalue-1 block) and the sign s^2 steered to
// (-1)^{m(m-1)/2} for even m and to +1/-1 by dim mod 8 for odd m, when the
// form has room. Throws ConjugatorNotFound when parity or norm cannot be fixed.
RealityCertificate spin_conjugator(const CtxPtr& ctx, const GroupElement& t);

// Split-form construction in odd dimension: for t on m hyperbolic pairs with
// anisotropic vector e_0, q(e_0) = d, returns s_1 in Gamma^+ with N(s_1) = 1,
// s_1 t s_1^{-1} = N(t) t^{-1} and s_1^2 = (-1)^{m(m+1)/2}; for odd m the
// factor e_0 (e_1 + d^{-1} f_1) replaces (e_1 + f_1). Throws
// PreconditionViolated when dim V is even or the basis has no anisotropic
// vector.
RealityCertificate odd_split_conjugator(const CtxPtr& ctx, const TorusElement& t);
// Same construction for a general element: requires odd dimension and a full
// rational eigenspace split (NoRationalEigenvalue otherwise).
RealityCertificate odd_split_conjugator(const CtxPtr& ctx, const GroupElement& t);

// For odd-dimensional strongly regular torus elements: whether every value
// q(e_0), e_0 in the anisotropic line, lies in the norm image
// N(T) = {lambda0^2 prod lambda_i}. Exhaustive over F_p, square-class
// reasoning over Q. Throws NotStronglyRegular when some lambda_i is 1, two
// lambdas coincide or pair up, or more than one lambda_i is -1.
bool odd_dim_norm_condition(const CtxPtr& ctx, const TorusElement& t);

// Decision procedure for "is t conjugate to t^{-1} within Spin":
//   dim = 0,1 mod 4  -> Real (construction), or Undecided if the
//                       construction fails over Q;
//   dim = 2 mod 4    -> Real iff 1 is an eigenvalue of chi(t);
//   dim = 3 mod 4    -> Real when the split construction applies, else
//                       Undecided.
// Throws NotInSpin / NotSemisimple; irrational eigenvalues give Undecided.
RealityDecision is_real_semisimple_spin(const CtxPtr& ctx, const GroupElement& t);

// Splits t = tau1 tau2 with tau1 = s^{-1}, tau2 = s t, tau_i^2 = s^2 = +-1,
// given a certificate for s t s^{-1} = t^{-1}. Throws WrongRelation for any
// other relation.
InvolutionPair involution_decompose(const CtxPtr& ctx, const GroupElement& t,
                                    const RealityCertificate& cert);

}
