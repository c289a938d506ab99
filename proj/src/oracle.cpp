#include "cliffreal/oracle.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "cliffreal/errors.hpp"
#include "cliffreal/rng.hpp"

namespace cliffreal {

namespace {

struct KeyHash {
    size_t operator()(const PackedKey& k) const {
        std::uint64_t x = k.lo * 0x9e3779b97f4a7c15ULL ^ (k.hi + 0xbf58476d1ce4e5b9ULL);
        x ^= x >> 31;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 29;
        return static_cast<size_t>(x);
    }
};

long mod_inverse(long a, long p) {
    // p prime, a != 0 mod p
    long r = 1, b = a % p, e = p - 2;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

}  // namespace

PackedAlgebra::PackedAlgebra(CtxPtr ctx) : ctx_(std::move(ctx)) {
    const FieldCtx& F = ctx_->field();
    if (F.rationals())
        fail(ErrorCode::PreconditionViolated, "packed algebra needs a prime field");
    p_ = F.p();
    n_ = ctx_->dim();
    nb_ = ctx_->blade_count();
    if (p_ > 7) fail(ErrorCode::PreconditionViolated, "packed algebra supports p <= 7");
    if (n_ > 5)
        fail(ErrorCode::OrderCapExceeded, "full enumeration is capped at dim <= 5; use coset mode");
    for (size_t a = 0; a < nb_; ++a)
        for (size_t b = 0; b < nb_; ++b)
            coef_[a][b] = static_cast<std::uint8_t>(
                ctx_->blade_coeff(static_cast<std::uint32_t>(a),
                                  static_cast<std::uint32_t>(b)).residue());
    for (size_t a = 0; a < nb_; ++a) {
        int k = __builtin_popcount(static_cast<unsigned>(a));
        rev_sign_[a] = static_cast<std::uint8_t>((k * (k - 1) / 2) % 2 ? p_ - 1 : 1);
    }
}

PackedElem PackedAlgebra::scalar(long r) const {
    PackedElem e;
    r %= p_;
    if (r < 0) r += p_;
    e.c[0] = static_cast<std::uint8_t>(r);
    return e;
}

PackedElem PackedAlgebra::mul(const PackedElem& a, const PackedElem& b) const {
    int acc[32] = {0};
    for (size_t i = 0; i < nb_; ++i) {
        int ai = a.c[i];
        if (ai == 0) continue;
        const auto& row = coef_[i];
        for (size_t j = 0; j < nb_; ++j) {
            int bj = b.c[j];
            if (bj != 0) acc[i ^ j] += ai * bj * row[j];
        }
    }
    PackedElem r;
    for (size_t i = 0; i < nb_; ++i)
        r.c[i] = static_cast<std::uint8_t>(acc[i] % p_);
    return r;
}

PackedElem PackedAlgebra::reversion(const PackedElem& a) const {
    PackedElem r;
    for (size_t i = 0; i < nb_; ++i)
        r.c[i] = static_cast<std::uint8_t>(a.c[i] * rev_sign_[i] % p_);
    return r;
}

PackedElem PackedAlgebra::scaled(const PackedElem& a, long r) const {
    r %= p_;
    if (r < 0) r += p_;
    PackedElem out;
    for (size_t i = 0; i < nb_; ++i)
        out.c[i] = static_cast<std::uint8_t>(a.c[i] * r % p_);
    return out;
}

bool PackedAlgebra::is_zero(const PackedElem& a) const {
    for (size_t i = 0; i < nb_; ++i)
        if (a.c[i]) return false;
    return true;
}

bool PackedAlgebra::is_scalar(const PackedElem& a) const {
    for (size_t i = 1; i < nb_; ++i)
        if (a.c[i]) return false;
    return true;
}

int PackedAlgebra::parity(const PackedElem& a) const {
    int par = -1;
    for (size_t i = 0; i < nb_; ++i) {
        if (!a.c[i]) continue;
        int pi = __builtin_popcount(static_cast<unsigned>(i)) & 1;
        if (par == -1) par = pi;
        else if (par != pi) return -1;
    }
    return par;
}

std::optional<long> PackedAlgebra::norm_scalar(const PackedElem& a) const {
    PackedElem n = mul(reversion(a), a);
    if (!is_scalar(n)) return std::nullopt;
    return static_cast<long>(n.c[0]);
}

PackedElem PackedAlgebra::inverse(const PackedElem& a) const {
    std::optional<long> n = norm_scalar(a);
    if (!n || *n == 0)
        fail(ErrorCode::NotInvertible, "versor norm is not an invertible scalar");
    return scaled(reversion(a), mod_inverse(*n, p_));
}

PackedKey PackedAlgebra::key(const PackedElem& a) const {
    PackedKey k;
    for (size_t i = 0; i < 16; ++i) k.lo |= static_cast<std::uint64_t>(a.c[i]) << (3 * i);
    for (size_t i = 16; i < 32; ++i) k.hi |= static_cast<std::uint64_t>(a.c[i]) << (3 * (i - 16));
    return k;
}

PackedElem PackedAlgebra::from_multivector(const Multivector& m) const {
    if (!m.ctx() || !m.ctx()->same_as(*ctx_))
        fail(ErrorCode::ContextMismatch, "multivector from a different algebra");
    PackedElem e;
    for (const auto& [mask, c] : m.terms())
        e.c[mask] = static_cast<std::uint8_t>(c.residue());
    return e;
}

Multivector PackedAlgebra::to_multivector(const PackedElem& a) const {
    const FieldCtx& F = ctx_->field();
    std::vector<std::pair<std::uint32_t, Scalar>> entries;
    for (size_t i = 0; i < nb_; ++i)
        if (a.c[i]) entries.emplace_back(static_cast<std::uint32_t>(i), F.from_long(a.c[i]));
    return mv_from_entries(ctx_, std::move(entries));
}

unsigned long element_order(const PackedAlgebra& A, const PackedElem& a) {
    std::optional<long> n = A.norm_scalar(a);
    if (!n || *n == 0) fail(ErrorCode::NotInvertible, "order of a non-invertible element");
    PackedElem one = A.one();
    PackedElem cur = a;
    unsigned long k = 1;
    while (!(cur == one)) {
        cur = A.mul(cur, a);
        ++k;
        if (k > 10000000UL) fail(ErrorCode::Internal, "order search runaway");
    }
    return k;
}

std::optional<size_t> GroupTable::index_of(const PackedElem& a) const {
    PackedKey k = alg->key(a);
    size_t lo = 0, hi = elements.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        PackedKey km = alg->key(elements[mid]);
        if (km < k) lo = mid + 1;
        else hi = mid;
    }
    if (lo < elements.size() && alg->key(elements[lo]) == k) return lo;
    return std::nullopt;
}

Multivector GroupTable::element_mv(size_t i) const {
    return alg->to_multivector(elements[i]);
}

GroupTable enumerate_group(const CtxPtr& ctx, GroupLevel level, size_t cap_order,
                           std::optional<unsigned long> shuffle_seed) {
    auto alg = std::make_shared<const PackedAlgebra>(ctx);
    const QSpace& V = ctx->space();
    const FieldCtx& F = ctx->field();
    const long p = alg->p();
    const size_t n = ctx->dim();

    long vec_count = 1;
    for (size_t i = 0; i < n; ++i) vec_count *= p;
    if (vec_count > 3500)
        fail(ErrorCode::OrderCapExceeded, "full enumeration is capped at p^dim <= 3500; use coset mode");

    // All anisotropic vectors with their packed grade-1 images and q residues.
    std::vector<PackedElem> pv;
    std::vector<long> pq;
    {
        Vec x(n, F.zero());
        std::vector<long> digits(n, 0);
        for (long idx = 1; idx < vec_count; ++idx) {
            size_t pos = 0;
            while (true) {
                digits[pos] += 1;
                x[pos] = F.from_long(digits[pos]);
                if (digits[pos] < p) break;
                digits[pos] = 0;
                x[pos] = F.zero();
                ++pos;
            }
            Scalar qx = V.q(x);
            if (qx.is_zero()) continue;
            pv.push_back(alg->from_multivector(embed_vector(ctx, x)));
            pq.push_back(qx.residue());
        }
    }

    // Deduped generator set, canonically ordered by key.
    std::map<PackedKey, PackedElem> genmap;
    auto add_gen = [&](const PackedElem& g) { genmap.emplace(alg->key(g), g); };
    if (level == GroupLevel::Gamma) {
        for (const PackedElem& v : pv) add_gen(v);
        for (long r = 1; r < p; ++r) add_gen(alg->scalar(r));
    } else {
        for (size_t i = 0; i < pv.size(); ++i)
            for (size_t j = 0; j < pv.size(); ++j) {
                long prod = pq[i] * pq[j] % p;
                if (level == GroupLevel::Spin ? prod == 1 : prod != 0)
                    add_gen(alg->mul(pv[i], pv[j]));
            }
        if (level == GroupLevel::GammaPlus)
            for (long r = 1; r < p; ++r) add_gen(alg->scalar(r));
    }

    std::vector<PackedElem> gens;
    gens.reserve(genmap.size());
    for (auto& [k, g] : genmap) gens.push_back(g);
    if (shuffle_seed) {
        Rng rng(*shuffle_seed);
        for (size_t i = gens.size(); i > 1; --i)
            std::swap(gens[i - 1], gens[rng.next_below(i)]);
    }

    // Incremental closure: grow a core generating subset; every time a listed
    // generator falls outside the current closure, add it to the core and
    // re-close. On exit the closure contains every generator and is closed
    // under the core, hence it is exactly the subgroup the full set generates.
    GroupTable table;
    table.alg = alg;
    table.level = level;
    std::unordered_set<PackedKey, KeyHash> seen;
    std::vector<PackedElem>& elements = table.elements;
    std::vector<PackedElem>& core = table.core_generators;
    elements.push_back(alg->one());
    seen.insert(alg->key(elements[0]));
    for (const PackedElem& g : gens) {
        if (seen.count(alg->key(g))) continue;
        core.push_back(g);
        elements.push_back(g);
        seen.insert(alg->key(g));
        for (size_t scan = 0; scan < elements.size(); ++scan) {
            for (const PackedElem& s : core) {
                PackedElem y = alg->mul(elements[scan], s);
                if (seen.insert(alg->key(y)).second) {
                    elements.push_back(y);
                    if (elements.size() > cap_order)
                        fail(ErrorCode::OrderCapExceeded,
                             "group order exceeds cap " + std::to_string(cap_order));
                }
            }
        }
    }
    for (const PackedElem& g : gens)
        if (!seen.count(alg->key(g)))
            fail(ErrorCode::Internal, "generator missing from closure");

    std::sort(elements.begin(), elements.end(),
              [&](const PackedElem& a, const PackedElem& b) {
                  return alg->key(a) < alg->key(b);
              });

    // Tower invariants: every element is a homogeneous versor; even for
    // Gamma+/Spin; norm 1 for Spin.
    for (const PackedElem& e : elements) {
        int par = alg->parity(e);
        if (par == -1) fail(ErrorCode::Internal, "mixed-parity element in table");
        if (level != GroupLevel::Gamma && par != 0)
            fail(ErrorCode::Internal, "odd element in even-level table");
        if (level == GroupLevel::Spin) {
            std::optional<long> nm = alg->norm_scalar(e);
            if (!nm || *nm != 1) fail(ErrorCode::Internal, "norm != 1 in Spin table");
        }
    }

    table.generators = std::move(gens);
    std::sort(table.generators.begin(), table.generators.end(),
              [&](const PackedElem& a, const PackedElem& b) {
                  return alg->key(a) < alg->key(b);
              });
    return table;
}

GroupTable enumerate_spin(const CtxPtr& ctx, size_t cap_order) {
    return enumerate_group(ctx, GroupLevel::Spin, cap_order);
}
GroupTable enumerate_gamma_plus(const CtxPtr& ctx, size_t cap_order) {
    return enumerate_group(ctx, GroupLevel::GammaPlus, cap_order);
}
GroupTable enumerate_gamma(const CtxPtr& ctx, size_t cap_order) {
    return enumerate_group(ctx, GroupLevel::Gamma, cap_order);
}

bool is_semisimple_ff(const GroupElement& t) {
    const CtxPtr& ctx = t.mv.ctx();
    const FieldCtx& F = ctx->field();
    if (F.rationals())
        fail(ErrorCode::PreconditionViolated, "order-based semisimplicity needs a finite field");
    Multivector one = Multivector::scalar(ctx, F.one());
    Multivector cur = t.mv;
    unsigned long k = 1;
    while (!(cur == one)) {
        cur = cur * t.mv;
        ++k;
        if (k > 1000000UL) fail(ErrorCode::CapExceeded, "element order exceeds 10^6");
    }
    return k % static_cast<unsigned long>(F.p()) != 0;
}

std::optional<Multivector> real_in_group(const GroupElement& t, const GroupTable& table) {
    const PackedAlgebra& A = *table.alg;
    PackedElem tp = A.from_multivector(t.mv);
    PackedElem ti = A.inverse(tp);
    for (const PackedElem& s : table.elements)
        if (A.mul(s, tp) == A.mul(ti, s)) return A.to_multivector(s);
    return std::nullopt;
}

ClassReport class_report(const GroupTable& table) {
    const PackedAlgebra& A = *table.alg;
    const size_t n = table.elements.size();
    constexpr std::uint32_t kNone = 0xffffffffu;

    ClassReport R;
    R.class_of.assign(n, kNone);
    R.transport.assign(n, A.one());

    const std::vector<PackedElem>& S = table.core_generators;
    std::vector<PackedElem> Sinv;
    Sinv.reserve(S.size());
    for (const PackedElem& s : S) Sinv.push_back(A.inverse(s));

    for (size_t i = 0; i < n; ++i) {
        if (R.class_of[i] != kNone) continue;
        const std::uint32_t cid = static_cast<std::uint32_t>(R.classes.size());
        std::vector<size_t> members{i};
        R.class_of[i] = cid;
        for (size_t scan = 0; scan < members.size(); ++scan) {
            const PackedElem& x = table.elements[members[scan]];
            for (size_t si = 0; si < S.size(); ++si) {
                PackedElem y = A.mul(A.mul(S[si], x), Sinv[si]);
                std::optional<size_t> yi = table.index_of(y);
                if (!yi) fail(ErrorCode::Internal, "conjugate left the table");
                if (R.class_of[*yi] == kNone) {
                    R.class_of[*yi] = cid;
                    R.transport[*yi] = A.mul(S[si], R.transport[members[scan]]);
                    members.push_back(*yi);
                }
            }
        }

        ClassInfo info;
        info.rep = i;
        info.size = members.size();
        info.order = element_order(A, table.elements[i]);
        info.semisimple = info.order % static_cast<unsigned long>(A.p()) != 0;
        PackedElem ri = A.inverse(table.elements[i]);
        std::optional<size_t> rii = table.index_of(ri);
        if (!rii) fail(ErrorCode::Internal, "inverse left the table");
        info.real = R.class_of[*rii] == cid;
        if (info.real) {
            const PackedElem& w = R.transport[*rii];
            if (!(A.mul(w, table.elements[i]) == A.mul(ri, w)))
                fail(ErrorCode::Internal, "transported witness fails");
            std::optional<size_t> wi = table.index_of(w);
            if (!wi) fail(ErrorCode::Internal, "witness left the table");
            info.witness = *wi;
        }
        R.classes.push_back(info);
    }

    size_t total = 0;
    for (const ClassInfo& c : R.classes) {
        total += c.size;
        if (c.real) ++R.real_class_count;
        if (c.real && c.semisimple) ++R.semisimple_real_count;
    }
    if (total != n) fail(ErrorCode::Internal, "class sizes do not sum to group order");
    R.class_count = R.classes.size();
    return R;
}

std::optional<PackedElem> real_witness_for(const GroupTable& table,
                                           const ClassReport& report, size_t i) {
    const PackedAlgebra& A = *table.alg;
    const ClassInfo& ci = report.classes[report.class_of[i]];
    if (!ci.real) return std::nullopt;
    const PackedElem& g = report.transport[i];
    const PackedElem& s0 = table.elements[*ci.witness];
    return A.mul(A.mul(g, s0), A.inverse(g));
}

size_t even_centralizer_dim(const CtxPtr& ctx, const Multivector& t) {
    const FieldCtx& F = ctx->field();
    const size_t nb = ctx->blade_count();
    std::vector<std::uint32_t> evens;
    for (std::uint32_t mask = 0; mask < nb; ++mask)
        if (__builtin_popcount(mask) % 2 == 0) evens.push_back(mask);
    Matrix M(nb, evens.size(), F.spec());
    for (size_t j = 0; j < evens.size(); ++j) {
        Multivector E = Multivector::blade(ctx, evens[j], F.one());
        Multivector d = E * t - t * E;
        for (const auto& [mask, c] : d.terms()) M.at(mask, j) = c;
    }
    return M.kernel().size();
}

namespace {

// Option lists for one diagonal block of the orthogonal centralizer of
// chi(t). A reciprocal eigenvalue pair in dual bases contributes
// [[0, (A^T)^{-1}], [A, 0]] (the swap g0 already composed in); a +-1
// eigenspace contributes its own orthogonal group.
std::vector<Matrix> pair_block_options(const FieldCtx& F, size_t d) {
    const long p = F.p();
    std::vector<Matrix> out;
    if (d == 1) {
        for (long c = 1; c < p; ++c) {
            Matrix blk(2, 2, F.spec());
            blk.at(0, 1) = F.from_long(c).inv();
            blk.at(1, 0) = F.from_long(c);
            out.push_back(blk);
        }
        return out;
    }
    if (d != 2) fail(ErrorCode::Internal, "pair block dimension");
    for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b)
            for (long c = 0; c < p; ++c)
                for (long e = 0; e < p; ++e) {
                    Matrix A(2, 2, F.spec());
                    A.at(0, 0) = F.from_long(a);
                    A.at(0, 1) = F.from_long(b);
                    A.at(1, 0) = F.from_long(c);
                    A.at(1, 1) = F.from_long(e);
                    if (A.det().is_zero()) continue;
                    Matrix D = A.transpose().inverse();
                    Matrix blk(4, 4, F.spec());
                    for (size_t r = 0; r < 2; ++r)
                        for (size_t s = 0; s < 2; ++s) {
                            blk.at(r, 2 + s) = D.at(r, s);
                            blk.at(2 + r, s) = A.at(r, s);
                        }
                    out.push_back(blk);
                }
    return out;
}

std::vector<Matrix> orthogonal_block_options(const FieldCtx& F, const Matrix& G) {
    const long p = F.p();
    const size_t d = G.rows();
    std::vector<Matrix> out;
    if (d == 0) return out;
    if (d == 1) {
        for (long c : {1L, p - 1}) {
            Matrix blk(1, 1, F.spec());
            blk.at(0, 0) = F.from_long(c);
            out.push_back(blk);
        }
        return out;
    }
    if (d != 2) fail(ErrorCode::Internal, "orthogonal block dimension");
    for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b)
            for (long c = 0; c < p; ++c)
                for (long e = 0; e < p; ++e) {
                    Matrix A(2, 2, F.spec());
                    A.at(0, 0) = F.from_long(a);
                    A.at(0, 1) = F.from_long(b);
                    A.at(1, 0) = F.from_long(c);
                    A.at(1, 1) = F.from_long(e);
                    if (!(A.transpose() * G * A == G)) continue;
                    out.push_back(A);
                }
    return out;
}

}  // namespace

std::optional<GroupElement> centralizer_coset_decide(const CtxPtr& ctx,
                                                     const GroupElement& t,
                                                     size_t budget) {
    const QSpace& V = ctx->space();
    const FieldCtx& F = ctx->field();
    if (F.rationals())
        fail(ErrorCode::PreconditionViolated, "coset scan enumerates residues over F_p");
    if (!is_spin(t)) fail(ErrorCode::NotInSpin, "coset reality decision expects t in Spin");
    EigenSplit es = eigen_split(ctx, t);

    if (es.one.dim() > 2 || es.minus_one.dim() > 2)
        fail(ErrorCode::CentralizerTooLarge, "eigenspace of +-1 has dimension > 2");
    for (const EigenPair& pr : es.pairs)
        if (pr.space_lambda.dim() > 2)
            fail(ErrorCode::CentralizerTooLarge, "eigenvalue pair block has dimension > 2");
    size_t cdim = even_centralizer_dim(ctx, t.mv);
    if (cdim > 16)
        fail(ErrorCode::CentralizerTooLarge,
             "even centralizer dimension " + std::to_string(cdim));

    // Ambient change of basis: per pair the eigenbasis of lambda followed by
    // the polar-dual basis inside the lambda^{-1} eigenspace, then the +-1
    // eigenspaces. In these coordinates the conjugating coset is block
    // diagonal.
    std::vector<Vec> cols;
    std::vector<std::vector<Matrix>> block_options;
    for (const EigenPair& pr : es.pairs) {
        const std::vector<Vec>& xs = pr.space_lambda.basis;
        const std::vector<Vec>& ys0 = pr.space_lambda_inv.basis;
        const size_t d = xs.size();
        Matrix G(d, d, F.spec());
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) G.at(i, j) = V.polar(xs[i], ys0[j]);
        Matrix C = G.inverse();
        for (const Vec& x : xs) cols.push_back(x);
        for (size_t i = 0; i < d; ++i) {
            Vec y(V.dim(), F.zero());
            for (size_t j = 0; j < d; ++j) y = vec_add(y, vec_scaled(ys0[j], C.at(j, i)));
            cols.push_back(y);
        }
        block_options.push_back(pair_block_options(F, d));
    }
    for (const Subspace* sub : {&es.one, &es.minus_one}) {
        if (sub->dim() == 0) continue;
        for (const Vec& v : sub->basis) cols.push_back(v);
        block_options.push_back(orthogonal_block_options(F, sub->restricted_gram()));
    }

    size_t combos = 1;
    for (const auto& opts : block_options) {
        combos *= opts.size();
        if (combos > budget)
            fail(ErrorCode::CentralizerTooLarge,
                 "coset size exceeds budget " + std::to_string(budget));
    }

    Matrix P = Matrix::from_columns(cols, F.spec());
    Matrix Pinv = P.inverse();
    Multivector t_inv = mv_inverse(t.mv);

    const size_t nblocks = block_options.size();
    std::vector<size_t> idx(nblocks, 0);
    while (true) {
        Matrix W(V.dim(), V.dim(), F.spec());
        size_t off = 0;
        for (size_t b = 0; b < nblocks; ++b) {
            const Matrix& blk = block_options[b][idx[b]];
            for (size_t r = 0; r < blk.rows(); ++r)
                for (size_t c = 0; c < blk.cols(); ++c) W.at(off + r, off + c) = blk.at(r, c);
            off += blk.rows();
        }
        Matrix M = P * W * Pinv;
        if (M.det().is_one() && is_orthogonal(V, M)) {
            std::vector<Vec> vs = reflection_factorize(V, M);
            Multivector u = Multivector::scalar(ctx, F.one());
            for (const Vec& v : vs) u = u * embed_vector(ctx, v);
            Scalar nu = norm_of(u);
            auto [sq, root] = is_square(nu, F);
            if (sq) {
                Multivector s = u.scaled(root->inv());
                if (s * t.mv == t_inv * s) {
                    GroupElement ge = make_group_element(s);
                    if (!is_spin(ge)) fail(ErrorCode::Internal, "coset witness not in Spin");
                    return ge;
                }
            }
        }
        size_t b = 0;
        while (b < nblocks && ++idx[b] == block_options[b].size()) {
            idx[b] = 0;
            ++b;
        }
        if (b == nblocks) break;
    }
    return std::nullopt;
}

}  // namespace cliffreal
