#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "cliffreal/clifford_group.hpp"
#include "cliffreal/multivector.hpp"
#include "cliffreal/torus.hpp"

namespace cliffreal {

// Brute-force ground truth over small prime fields: enumerate the groups
// Gamma, Gamma+ and Spin by closure, partition them into conjugacy classes,
// and decide realness exhaustively. Everything here is independent of the
// constructive machinery in torus.hpp, so the two can cross-check each other.

// Dense element of C(V, q) over F_p in the internal blade basis: one residue
// per blade mask. Sized for dim <= 5 (32 blades) and p <= 7 (residues fit in
// 3 bits for the packed dedup key).
struct PackedElem {
    std::array<std::uint8_t, 32> c{};

    bool operator==(const PackedElem& o) const { return c == o.c; }
};

// Canonical 96-bit key (32 coords x 3 bits) for exact dedup and ordering.
struct PackedKey {
    std::uint64_t lo = 0, hi = 0;

    bool operator==(const PackedKey& o) const { return lo == o.lo && hi == o.hi; }
    bool operator<(const PackedKey& o) const {
        return hi != o.hi ? hi < o.hi : lo < o.lo;
    }
};

// Mod-p mirror of the Multivector arithmetic: same internal generator basis,
// same blade sign conventions (the multiplication table is read off
// CliffordCtx::blade_coeff), so conversions are plain coefficient copies.
class PackedAlgebra {
public:
    explicit PackedAlgebra(CtxPtr ctx);

    const CtxPtr& ctx() const { return ctx_; }
    long p() const { return p_; }
    size_t dim() const { return n_; }
    size_t blades() const { return nb_; }

    PackedElem zero() const { return PackedElem{}; }
    PackedElem scalar(long r) const;
    PackedElem one() const { return scalar(1); }

    PackedElem mul(const PackedElem& a, const PackedElem& b) const;
    PackedElem reversion(const PackedElem& a) const;
    PackedElem scaled(const PackedElem& a, long r) const;
    // Versor inverse reversion(a)/N(a); throws NotInvertible when N(a) is not
    // an invertible scalar.
    PackedElem inverse(const PackedElem& a) const;

    bool is_zero(const PackedElem& a) const;
    bool is_scalar(const PackedElem& a) const;
    // 0 even, 1 odd, -1 mixed or zero.
    int parity(const PackedElem& a) const;
    // N(a) = reversion(a) * a when that lands in the scalars.
    std::optional<long> norm_scalar(const PackedElem& a) const;

    PackedKey key(const PackedElem& a) const;

    PackedElem from_multivector(const Multivector& m) const;
    Multivector to_multivector(const PackedElem& a) const;

private:
    CtxPtr ctx_;
    long p_;
    size_t n_, nb_;
    std::array<std::array<std::uint8_t, 32>, 32> coef_{};  // e_a e_b = coef[a][b] e_{a^b}
    std::array<std::uint8_t, 32> rev_sign_{};              // 1 or p-1 per blade
};

// Multiplicative order of a (smallest k >= 1 with a^k = 1); throws
// NotInvertible if a is not an invertible versor.
unsigned long element_order(const PackedAlgebra& A, const PackedElem& a);

// Fully enumerated group of units of C(V, q) over F_p at one of the three
// tower levels. Elements are stored sorted by canonical key, so indices are
// stable and witness scans are deterministic. Products are recomputed on
// demand; no multiplication table is stored.
struct GroupTable {
    std::shared_ptr<const PackedAlgebra> alg;
    GroupLevel level = GroupLevel::Spin;
    std::vector<PackedElem> elements;        // sorted by key
    std::vector<PackedElem> generators;      // deduped defining generator set
    std::vector<PackedElem> core_generators; // small verified generating subset

    size_t order() const { return elements.size(); }
    // Binary search by key; nullopt when absent.
    std::optional<size_t> index_of(const PackedElem& a) const;
    Multivector element_mv(size_t i) const;
};

// Closure enumeration of the tower level over F_p:
//   Spin:   products v*w with q(v) q(w) = 1        (all pairs, deduped)
//   Gamma+: products v*w with q(v) q(w) != 0, plus the scalars F_p^*
//   Gamma:  vectors v with q(v) != 0, plus the scalars F_p^*
// The closure is grown from a small generating subset and then verified to
// contain every listed generator, which gives the same subgroup as a full
// breadth-first closure at a fraction of the products. The optional shuffle
// seed permutes the generator processing order; the resulting element set is
// order independent. Requires p <= 7, dim <= 5 and p^dim <= 3500; throws
// OrderCapExceeded when the closure passes cap_order.
GroupTable enumerate_group(const CtxPtr& ctx, GroupLevel level,
                           size_t cap_order = 1000000,
                           std::optional<unsigned long> shuffle_seed = std::nullopt);
GroupTable enumerate_spin(const CtxPtr& ctx, size_t cap_order = 1000000);
GroupTable enumerate_gamma_plus(const CtxPtr& ctx, size_t cap_order = 1000000);
GroupTable enumerate_gamma(const CtxPtr& ctx, size_t cap_order = 1000000);

// Semisimple over F_p iff the multiplicative order of t is coprime to p.
bool is_semisimple_ff(const GroupElement& t);

// Exhaustive witness scan: first s in table order with s t s^-1 = t^-1.
std::optional<Multivector> real_in_group(const GroupElement& t, const GroupTable& table);

// Conjugacy partition of an enumerated table with realness bookkeeping.
struct ClassInfo {
    size_t rep;                   // element index of the class representative
    size_t size;
    unsigned long order;          // multiplicative order of the representative
    bool semisimple;              // order coprime to p
    bool real;                    // representative conjugate to its inverse in the table
    std::optional<size_t> witness;  // s with s rep s^-1 = rep^-1 when real
};

struct ClassReport {
    std::vector<ClassInfo> classes;
    std::vector<std::uint32_t> class_of;   // element index -> class index
    std::vector<PackedElem> transport;     // g with element = g * rep * g^-1
    size_t class_count = 0;
    size_t real_class_count = 0;
    size_t semisimple_real_count = 0;      // classes both semisimple and real
};

// Classes are conjugation orbits under the table's generator set (which
// generates the group, so orbits are exact conjugacy classes). Realness of a
// class is membership of rep^-1 in the orbit; the stored transport turns the
// class witness into a per-element witness.
ClassReport class_report(const GroupTable& table);

// Witness for the specific element table.elements[i]: transport the class
// witness, g s0 g^-1 where element = g rep g^-1. Nullopt when the class is
// not real.
std::optional<PackedElem> real_witness_for(const GroupTable& table,
                                           const ClassReport& report, size_t i);

// Exhaustive Spin-level reality decision without enumerating the group, for
// spaces too large to tabulate (dim 6). Every Spin conjugator s taking t to
// t^-1 projects to some M in SO(V) with M chi(t) M^-1 = chi(t)^-1, and that
// set is the coset g0 Z, where g0 swaps each eigenvalue pair of chi(t) and Z
// is the orthogonal centralizer of chi(t). The scan walks the whole coset:
// block-scalars on reciprocal eigenvalue pairs and exhaustive O(V_1), O(V_-1)
// blocks (eigenspace dims <= 2). For each M with det 1, the chi-fiber over M
// contains a norm-1 lift iff N(lift(M)) is a square; conjugation by s is
// invariant under scalars, so testing one scaled lift per M is complete.
// Returns the first witness in scan order, or nullopt when the coset is
// exhausted (a proof that t is not real in Spin). Throws CentralizerTooLarge
// when an eigenspace has dim > 2 or the coset passes the enumeration budget,
// NotInSpin / NotSemisimple / EigenvaluesNotRational as in eigen_split.
std::optional<GroupElement> centralizer_coset_decide(const CtxPtr& ctx,
                                                     const GroupElement& t,
                                                     size_t budget = 200000);

// Dimension over F_p of the linear centralizer {x in C0(V, q) : x t = t x} of
// t inside the even subalgebra, by direct kernel computation. Diagnostic used
// to gate the coset scan.
size_t even_centralizer_dim(const CtxPtr& ctx, const Multivector& t);

}  // namespace cliffreal
