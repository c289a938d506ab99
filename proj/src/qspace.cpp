#include "cliffreal/qspace.hpp"

#include <algorithm>

namespace cliffreal {

namespace {

constexpr long kBoxRadius = 50;          // rational isotropic search box
constexpr long kNodeBudget = 2000000;    // rational search node cap
constexpr double kFiniteBudget = 2e7;    // finite-field exhaustive cap

// Primitive representative of a line: integer coordinates with gcd 1 and
// positive leading entry over Q; monic leading entry over F_p.
Vec normalize_line(const Vec& v, const FieldCtx& F) {
    size_t lead = v.size();
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) {
            lead = i;
            break;
        }
    if (lead == v.size()) return v;
    if (!F.rationals()) return vec_scaled(v, v[lead].inv());
    mpz_class lcm = 1, gcd = 0;
    for (const auto& x : v) {
        mpz_class den = x.rat().get_den(), g;
        mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        lcm = lcm / g * den;
    }
    Vec r = vec_scaled(v, Scalar::rational(mpq_class(lcm)));
    for (const auto& x : r) {
        mpz_class num = abs(x.rat().get_num()), g;
        mpz_gcd(g.get_mpz_t(), gcd.get_mpz_t(), num.get_mpz_t());
        gcd = g;
    }
    if (gcd > 1) r = vec_scaled(r, Scalar::rational(mpq_class(1, gcd)));
    if (r[lead].rat() < 0) r = vec_scaled(r, Scalar::rational(-1, 1));
    return r;
}

Vec combine(const std::vector<Vec>& basis, const Vec& coords, const FieldCtx& F, size_t ambient_dim) {
    Vec out(ambient_dim, F.zero());
    for (size_t i = 0; i < basis.size(); ++i) {
        if (coords[i].is_zero()) continue;
        for (size_t j = 0; j < ambient_dim; ++j) out[j] += coords[i] * basis[i][j];
    }
    return out;
}

}  // namespace

QSpace::QSpace(FieldCtx field, Matrix gram) : field_(std::move(field)), gram_(std::move(gram)) {}

Scalar QSpace::polar(const Vec& x, const Vec& y) const {
    if (x.size() != dim() || y.size() != dim())
        fail(ErrorCode::DimensionMismatch, "vector length does not match space dimension");
    Scalar acc = field_.zero();
    for (size_t i = 0; i < dim(); ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < dim(); ++j)
            if (!gram_.at(i, j).is_zero()) acc += x[i] * gram_.at(i, j) * y[j];
    }
    return acc;
}

Scalar QSpace::q(const Vec& x) const {
    return polar(x, x) / field_.from_long(2);
}

QSpace make_qspace(const FieldCtx& field, const Matrix& gram) {
    if (gram.rows() != gram.cols())
        fail(ErrorCode::DimensionMismatch, "Gram matrix must be square");
    if (gram.rows() == 0) fail(ErrorCode::DimensionMismatch, "empty Gram matrix");
    if (gram.rows() > 12) fail(ErrorCode::CapExceeded, "dimension capped at 12");
    if (gram.field() != field.spec()) fail(ErrorCode::FieldMismatch, "Gram entries not in field");
    if (!gram.is_symmetric()) fail(ErrorCode::NotSymmetric, "Gram matrix must be symmetric");
    if (gram.det().is_zero()) fail(ErrorCode::Degenerate, "polar form is degenerate");
    return QSpace(field, gram);
}

Subspace::Subspace(QSpace amb, std::vector<Vec> b) : ambient(std::move(amb)), basis(std::move(b)) {
    for (const auto& v : basis)
        if (v.size() != ambient.dim())
            fail(ErrorCode::DimensionMismatch, "subspace vector length mismatch");
    if (!basis.empty()) {
        Matrix m = Matrix::from_columns(basis, ambient.field().spec());
        if (m.rank() != basis.size())
            fail(ErrorCode::PreconditionViolated, "subspace basis is dependent");
    }
}

Matrix Subspace::restricted_gram() const {
    Matrix g(dim(), dim(), ambient.field().spec());
    for (size_t i = 0; i < dim(); ++i)
        for (size_t j = 0; j < dim(); ++j) g.at(i, j) = ambient.polar(basis[i], basis[j]);
    return g;
}

bool Subspace::nondegenerate() const {
    if (basis.empty()) return true;
    return !restricted_gram().det().is_zero();
}

std::pair<std::vector<Vec>, std::vector<Scalar>> orthogonal_diagonalize(const Subspace& s) {
    const FieldCtx& F = s.ambient.field();
    if (!s.nondegenerate()) fail(ErrorCode::DegenerateSubspace, "cannot diagonalize a degenerate subspace");
    std::vector<Vec> w = s.basis;
    size_t d = w.size();
    for (size_t i = 0; i < d; ++i) {
        // pivot: lowest-index remaining vector with q != 0
        size_t piv = d;
        for (size_t k = i; k < d; ++k)
            if (!s.ambient.q(w[k]).is_zero()) {
                piv = k;
                break;
            }
        if (piv == d) {
            // all remaining vectors isotropic; some cross term is nonzero
            bool fixed = false;
            for (size_t a = i; a < d && !fixed; ++a)
                for (size_t b = a + 1; b < d && !fixed; ++b)
                    if (!s.ambient.polar(w[a], w[b]).is_zero()) {
                        w[a] = vec_add(w[a], w[b]);  // q(w_a + w_b) = B(w_a, w_b) != 0
                        piv = a;
                        fixed = true;
                    }
            if (!fixed) fail(ErrorCode::Internal, "no pivot in nondegenerate space");
        }
        std::swap(w[i], w[piv]);
        Scalar bii = s.ambient.polar(w[i], w[i]);
        for (size_t k = i + 1; k < d; ++k) {
            Scalar c = s.ambient.polar(w[i], w[k]) / bii;
            if (!c.is_zero()) w[k] = vec_sub(w[k], vec_scaled(w[i], c));
        }
    }
    std::vector<Scalar> diag;
    for (auto& v : w) {
        v = normalize_line(v, F);
        diag.push_back(s.ambient.q(v));
    }
    return {w, diag};
}

std::pair<std::vector<Vec>, std::vector<Scalar>> orthogonal_diagonalize(const QSpace& V) {
    std::vector<Vec> id;
    for (size_t i = 0; i < V.dim(); ++i) {
        Vec e(V.dim(), V.field().zero());
        e[i] = V.field().one();
        id.push_back(std::move(e));
    }
    return orthogonal_diagonalize(Subspace(V, id));
}

std::optional<Vec> find_isotropic(const Subspace& s) {
    const FieldCtx& F = s.ambient.field();
    size_t d = s.dim();
    if (d == 0) return std::nullopt;
    if (!s.nondegenerate())
        fail(ErrorCode::DegenerateSubspace, "isotropic search needs a nondegenerate subspace");
    if (d == 1) return std::nullopt;
    Matrix G = s.restricted_gram();
    auto qq = [&](const Vec& c) {
        Scalar acc = F.zero();
        for (size_t i = 0; i < d; ++i) {
            if (c[i].is_zero()) continue;
            for (size_t j = 0; j < d; ++j)
                if (!G.at(i, j).is_zero()) acc += c[i] * G.at(i, j) * c[j];
        }
        return acc;  // 2 q
    };

    if (!F.rationals()) {
        long p = F.p();
        double total = 1;
        for (size_t i = 0; i < d; ++i) total *= static_cast<double>(p);
        if (total > kFiniteBudget)
            fail(ErrorCode::CapExceeded, "finite isotropic search too large");
        // normalized representatives: first nonzero coordinate is 1
        for (size_t lead = 0; lead < d; ++lead) {
            Vec coords(d, F.zero());
            coords[lead] = F.one();
            size_t tail = d - lead - 1;
            std::vector<long> odo(tail, 0);
            for (;;) {
                for (size_t i = 0; i < tail; ++i) coords[lead + 1 + i] = Scalar::mod(odo[i], p);
                if (qq(coords).is_zero())
                    return normalize_line(combine(s.basis, coords, F, s.ambient.dim()), F);
                size_t k = 0;
                while (k < tail && ++odo[k] == p) odo[k++] = 0;
                if (k == tail) break;
                if (tail == 0) break;
            }
        }
        return std::nullopt;  // exhaustive: certified anisotropic
    }

    // Rational path: certify definite complements by diagonal sign count.
    auto diag = orthogonal_diagonalize(s).second;
    int pos = 0, neg = 0;
    for (const auto& qv : diag) (qv.rat() > 0 ? pos : neg)++;
    if (pos == 0 || neg == 0) return std::nullopt;  // definite: anisotropic

    long nodes = 0;
    std::vector<long> c(d, 0);
    for (long r = 1; r <= kBoxRadius; ++r) {
        for (size_t i = 0; i < d; ++i) c[i] = -r;
        for (;;) {
            bool on_shell = false;
            for (size_t i = 0; i < d; ++i)
                if (c[i] == r || c[i] == -r) {
                    on_shell = true;
                    break;
                }
            if (on_shell) {
                if (++nodes > kNodeBudget)
                    fail(ErrorCode::IsotropicSearchFailed,
                         "rational isotropic search exceeded its node budget");
                Vec coords(d, F.zero());
                for (size_t i = 0; i < d; ++i) coords[i] = F.from_long(c[i]);
                if (qq(coords).is_zero())
                    return normalize_line(combine(s.basis, coords, F, s.ambient.dim()), F);
            }
            size_t k = 0;
            while (k < d && ++c[k] > r) c[k++] = -r;
            if (k == d) break;
        }
    }
    fail(ErrorCode::IsotropicSearchFailed,
         "no isotropic vector with coordinates up to 50 in an indefinite subspace");
}

std::vector<Vec> orthogonal_complement_in(const Subspace& full, const std::vector<Vec>& cut) {
    const FieldCtx& F = full.ambient.field();
    size_t d = full.dim();
    Matrix sys(cut.size(), d, F.spec());
    for (size_t j = 0; j < cut.size(); ++j)
        for (size_t i = 0; i < d; ++i) sys.at(j, i) = full.ambient.polar(cut[j], full.basis[i]);
    std::vector<Vec> out;
    for (const Vec& coords : sys.kernel())
        out.push_back(combine(full.basis, coords, F, full.ambient.dim()));
    return out;
}

WittBasis witt_decompose(const Subspace& s) {
    const FieldCtx& F = s.ambient.field();
    if (!s.nondegenerate()) fail(ErrorCode::DegenerateSubspace, "Witt decomposition needs nondegeneracy");
    WittBasis wb;
    std::vector<Vec> curr = s.basis;
    while (!curr.empty()) {
        Subspace sub(s.ambient, curr);
        std::optional<Vec> iso = find_isotropic(sub);
        if (!iso) {
            auto [avecs, aq] = orthogonal_diagonalize(sub);
            wb.anisotropic = std::move(avecs);
            wb.anisotropic_q = std::move(aq);
            break;
        }
        Vec e = *iso;
        // hyperbolic completion: lowest-index basis vector not orthogonal to e
        size_t xi = curr.size();
        for (size_t i = 0; i < curr.size(); ++i)
            if (!s.ambient.polar(e, curr[i]).is_zero()) {
                xi = i;
                break;
            }
        if (xi == curr.size()) fail(ErrorCode::Internal, "isotropic vector in the radical");
        const Vec& x = curr[xi];
        Scalar c = s.ambient.polar(e, x);
        Vec f = vec_sub(vec_scaled(x, c.inv()), vec_scaled(e, s.ambient.q(x) / (c * c)));
        if (!s.ambient.q(e).is_zero() || !s.ambient.q(f).is_zero() ||
            !s.ambient.polar(e, f).is_one())
            fail(ErrorCode::Internal, "hyperbolic completion failed");
        wb.pairs.push_back({e, f});
        curr = orthogonal_complement_in(sub, {e, f});
    }
    std::vector<Vec> cols;
    for (const auto& [e, f] : wb.pairs) {
        cols.push_back(e);
        cols.push_back(f);
    }
    for (const auto& a : wb.anisotropic) cols.push_back(a);
    wb.change = Matrix::from_columns(cols, F.spec());
    if (cols.size() != s.dim() ||
        Matrix::from_columns(cols, F.spec()).rank() != s.dim())
        fail(ErrorCode::Internal, "Witt basis does not span");
    return wb;
}

WittBasis witt_decompose(const QSpace& V) {
    std::vector<Vec> id;
    for (size_t i = 0; i < V.dim(); ++i) {
        Vec e(V.dim(), V.field().zero());
        e[i] = V.field().one();
        id.push_back(std::move(e));
    }
    return witt_decompose(Subspace(V, id));
}

WittBasis standard_witt_basis(const QSpace& V) {
    const FieldCtx& F = V.field();
    size_t n = V.dim();
    const Matrix& B = V.gram();
    // count leading antidiagonal [[0,1],[1,0]] pairs
    size_t m = 0;
    while (2 * m + 1 < n && B.at(2 * m, 2 * m).is_zero() && B.at(2 * m + 1, 2 * m + 1).is_zero() &&
           B.at(2 * m, 2 * m + 1).is_one() && B.at(2 * m + 1, 2 * m).is_one())
        ++m;
    bool block_form = true;
    for (size_t i = 2 * m; i < n && block_form; ++i)
        if (B.at(i, i).is_zero()) block_form = false;
    for (size_t i = 0; i < n && block_form; ++i)
        for (size_t j = 0; j < n && block_form; ++j) {
            bool in_pair = i < 2 * m && j < 2 * m && i / 2 == j / 2 && i != j;
            if (i == j || in_pair) continue;
            if (!B.at(i, j).is_zero()) block_form = false;
        }
    if (!block_form) return witt_decompose(V);

    auto unit = [&](size_t i) {
        Vec v(n, F.zero());
        v[i] = F.one();
        return v;
    };
    WittBasis wb;
    for (size_t i = 0; i < m; ++i) wb.pairs.emplace_back(unit(2 * i), unit(2 * i + 1));
    for (size_t i = 2 * m; i < n; ++i) {
        wb.anisotropic.push_back(unit(i));
        wb.anisotropic_q.push_back(B.at(i, i) / F.from_long(2));
    }
    wb.change = Matrix::identity(n, F.spec());
    return wb;
}

Scalar discriminant(const Subspace& s) {
    if (s.dim() == 0) fail(ErrorCode::PreconditionViolated, "discriminant of the zero subspace");
    if (!s.nondegenerate()) fail(ErrorCode::DegenerateSubspace, "discriminant needs nondegeneracy");
    auto diag = orthogonal_diagonalize(s).second;
    Scalar prod = s.ambient.field().one();
    for (const auto& qv : diag) prod *= qv;
    return square_class(prod, s.ambient.field());
}

}  // namespace cliffreal
