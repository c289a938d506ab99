#include "cliffreal/commands.hpp"

#include <sstream>

#include "cliffreal/errors.hpp"
#include "cliffreal/oracle.hpp"
#include "cliffreal/rng.hpp"
#include "cliffreal/torus.hpp"

namespace cliffreal {

namespace {

struct Space {
    FieldCtx F;
    CtxPtr ctx;
};

Space resolve_space(const RunConfig& cfg) {
    FieldCtx F = make_field(cfg.field);
    Matrix gram = parse_form(cfg.form, F);
    return Space{F, CliffordCtx::create(make_qspace(F, gram))};
}

// Per-item rng stream: item i of a suite always sees the same randomness, no
// matter how items are scheduled across workers.
Rng item_rng(const RunConfig& cfg, unsigned long suite, size_t i) {
    return Rng(cfg.seed * 2654435761UL + suite * 40503UL + static_cast<unsigned long>(i));
}

Vec random_vector(Rng& rng, const CtxPtr& ctx) {
    Vec v(ctx->dim(), ctx->field().zero());
    for (size_t i = 0; i < ctx->dim(); ++i) v[i] = rng.scalar(ctx->field());
    return v;
}

Vec random_anisotropic(Rng& rng, const CtxPtr& ctx) {
    for (int tries = 0; tries < 1000; ++tries) {
        Vec v = random_vector(rng, ctx);
        if (!ctx->space().q(v).is_zero()) return v;
    }
    fail(ErrorCode::Internal, "anisotropic sampling exhausted");
}

Multivector random_even_versor(Rng& rng, const CtxPtr& ctx) {
    return embed_vector(ctx, random_anisotropic(rng, ctx)) *
           embed_vector(ctx, random_anisotropic(rng, ctx));
}

// chi of a torus element in ambient coordinates: diag(lambda_i, lambda_i^-1)
// on each hyperbolic pair, identity on the rest, conjugated by the basis
// change C.
Matrix predicted_torus_chi(const QSpace& V, const WittBasis& wb,
                           const std::vector<Scalar>& lambdas) {
    const FieldCtx& F = V.field();
    std::vector<Vec> cols;
    std::vector<Scalar> diag;
    for (size_t i = 0; i < wb.pairs.size(); ++i) {
        cols.push_back(wb.pairs[i].first);
        cols.push_back(wb.pairs[i].second);
        Scalar l = i < lambdas.size() ? lambdas[i] : F.one();
        diag.push_back(l);
        diag.push_back(l.inv());
    }
    for (const Vec& a : wb.anisotropic) {
        cols.push_back(a);
        diag.push_back(F.one());
    }
    Matrix C = Matrix::from_columns(cols, F.spec());
    Matrix D(cols.size(), cols.size(), F.spec());
    for (size_t i = 0; i < diag.size(); ++i) D.at(i, i) = diag[i];
    return C * D * C.inverse();
}

std::vector<Scalar> parse_lambdas(const std::string& text, const FieldCtx& F) {
    std::vector<Scalar> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(F.parse(item));
        } catch (const CliffordError& e) {
            fail(ErrorCode::ConfigInvalid, std::string("bad lambda: ") + e.what());
        }
    }
    if (out.empty()) fail(ErrorCode::ConfigInvalid, "empty lambda list");
    return out;
}

Json cert_to_json(const RealityCertificate& cert) {
    Json j;
    j["t"] = mv_to_json(cert.t.mv);
    j["s"] = mv_to_json(cert.s.mv);
    j["relation"] = relation_name(cert.relation);
    j["s_squared"] = cert.s_squared.str();
    j["s_norm"] = cert.s_norm.str();
    j["s_in"] = group_level_name(cert.s_in);
    return j;
}

// The element under study, from --lambdas (torus element on the form's Witt
// basis) or --element (raw multivector JSON).
struct ElementInput {
    GroupElement element;
    std::optional<TorusElement> torus;
};

ElementInput resolve_element(const RunConfig& cfg, const Space& sp) {
    if (!cfg.lambdas.empty()) {
        WittBasis wb = standard_witt_basis(sp.ctx->space());
        std::vector<Scalar> lambdas = parse_lambdas(cfg.lambdas, sp.F);
        Scalar l0 = sp.F.parse(cfg.lambda0);
        TorusElement t = make_torus_element(sp.ctx, l0, lambdas, wb);
        GroupElement g = t.element;
        return ElementInput{std::move(g), std::move(t)};
    }
    if (!cfg.element.empty()) {
        Json j = Json::parse(cfg.element, nullptr, false);
        if (j.is_discarded()) fail(ErrorCode::ConfigInvalid, "element is not valid JSON");
        return ElementInput{make_group_element(mv_from_json(sp.ctx, j)), std::nullopt};
    }
    fail(ErrorCode::ConfigInvalid, "provide --lambdas or --element");
}

// One property suite: cfg.count seeded items on the configured workers, one
// check line with the pass count. fn returns "" on success, a note otherwise.
void run_suite(Json& report, const RunConfig& cfg, const std::string& name,
               unsigned long suite_id, const std::function<std::string(Rng&)>& fn) {
    std::vector<std::string> notes(cfg.count);
    parallel_for_indexed(cfg.count, cfg.threads, [&](size_t i) {
        Rng rng = item_rng(cfg, suite_id, i);
        notes[i] = fn(rng);
    });
    size_t ok = 0;
    std::string first;
    for (const std::string& s : notes) {
        if (s.empty()) ++ok;
        else if (first.empty()) first = s;
    }
    Json detail;
    detail["count"] = cfg.count;
    detail["ok"] = ok;
    if (!first.empty()) detail["first_failure"] = first;
    add_check(report, name, ok == cfg.count, detail);
}

}  // namespace

Json cmd_verify_identities(const RunConfig& cfg) {
    Space sp = resolve_space(cfg);
    const CtxPtr& ctx = sp.ctx;
    const QSpace& V = ctx->space();
    const FieldCtx& F = sp.F;
    Json report = report_skeleton("verify-identities", cfg);
    report["dim"] = ctx->dim();

    auto random_mv = [&](Rng& rng) {
        std::vector<std::pair<std::uint32_t, Scalar>> entries;
        for (std::uint32_t m = 0; m < ctx->blade_count(); ++m)
            entries.emplace_back(m, rng.scalar(F));
        return mv_from_entries(ctx, entries);
    };

    run_suite(report, cfg, "associativity (xy)z = x(yz)", 1, [&](Rng& rng) -> std::string {
        Multivector x = random_mv(rng), y = random_mv(rng), z = random_mv(rng);
        return ((x * y) * z == x * (y * z)) ? "" : "associativity failed";
    });

    run_suite(report, cfg, "x^2 = q(x) and xy + yx = B(x,y)", 2, [&](Rng& rng) -> std::string {
        Vec a = random_vector(rng, ctx), b = random_vector(rng, ctx);
        Multivector x = embed_vector(ctx, a), y = embed_vector(ctx, b);
        if (!(x * x == Multivector::scalar(ctx, V.q(a)))) return "x^2 != q(x)";
        if (!(x * y + y * x == Multivector::scalar(ctx, V.polar(a, b)))) return "xy+yx != B(x,y)";
        return "";
    });

    run_suite(report, cfg, "reversion is an anti-automorphism", 3, [&](Rng& rng) -> std::string {
        Multivector x = random_mv(rng), y = random_mv(rng);
        if (!((x * y).reversion() == y.reversion() * x.reversion()))
            return "tau(xy) != tau(y)tau(x)";
        if (!(x.reversion().reversion() == x)) return "tau not involutive";
        return "";
    });

    run_suite(report, cfg, "chi and N are multiplicative, det chi matches parity", 4,
              [&](Rng& rng) -> std::string {
                  GroupElement u = make_group_element(random_even_versor(rng, ctx));
                  GroupElement v =
                      make_group_element(embed_vector(ctx, random_anisotropic(rng, ctx)));
                  GroupElement uv = make_group_element(u.mv * v.mv);
                  if (!(uv.chi == u.chi * v.chi)) return "chi(uv) != chi(u) chi(v)";
                  if (uv.norm != u.norm * v.norm) return "N(uv) != N(u) N(v)";
                  if (!u.chi.det().is_one()) return "det chi of even element != 1";
                  // chi(v) = -S_v: det (-1)^{n+1}, so -1 exactly in even dim.
                  Scalar odd_det = ctx->dim() % 2 == 0 ? -F.one() : F.one();
                  if (v.chi.det() != odd_det) return "det chi of odd element wrong";
                  return "";
              });

    run_suite(report, cfg, "spinor norm = square class of N; reflections factor chi", 5,
              [&](Rng& rng) -> std::string {
                  GroupElement u = make_group_element(random_even_versor(rng, ctx));
                  if (spinor_norm(V, u.chi) != square_class(u.norm, F))
                      return "spinor norm mismatch";
                  std::vector<Vec> vs = reflection_factorize(V, u.chi);
                  if (vs.size() > ctx->dim()) return "factorization longer than dim";
                  Matrix M = Matrix::identity(ctx->dim(), F.spec());
                  for (const Vec& v : vs) M = M * reflection_matrix(V, v);
                  if (!(M == u.chi)) return "reflection product mismatch";
                  return "";
              });

    run_suite(report, cfg, "torus elements diagonalize as predicted", 6,
              [&](Rng& rng) -> std::string {
                  WittBasis wb = standard_witt_basis(V);
                  std::vector<Scalar> lambdas;
                  for (size_t i = 0; i < wb.pairs.size(); ++i)
                      lambdas.push_back(rng.nonzero_scalar(F));
                  TorusElement t = make_torus_element(ctx, rng.nonzero_scalar(F), lambdas, wb);
                  Scalar expected_norm = t.lambda0 * t.lambda0;
                  for (const Scalar& l : lambdas) expected_norm = expected_norm * l;
                  if (t.element.norm != expected_norm) return "N(t) != lambda0^2 prod lambda";
                  if (!(t.element.chi == predicted_torus_chi(V, wb, lambdas)))
                      return "chi(t) mismatch";
                  return "";
              });

    run_suite(report, cfg, "involution lifts exist iff (-1)^r disc is a square", 7,
              [&](Rng& rng) -> std::string {
                  size_t half = ctx->dim() / 2;
                  if (half == 0) return "";
                  size_t r = 1 + rng.next_below(half);
                  std::vector<Vec> basis;
                  for (int tries = 0; tries < 400 && basis.size() < 2 * r; ++tries) {
                      basis.push_back(random_vector(rng, ctx));
                      if (Matrix::from_columns(basis, F.spec()).rank() != basis.size())
                          basis.pop_back();
                  }
                  if (basis.size() < 2 * r) return "";
                  Subspace w(V, basis);
                  if (!w.nondegenerate()) return "";
                  Scalar c = discriminant(w);
                  for (size_t i = 0; i < r; ++i) c = -c;
                  bool liftable = square_class(c, F).is_one();
                  try {
                      GroupElement u = involution_lift(ctx, w);
                      if (!liftable) return "lift exists but the class obstruction is nonzero";
                      if (!(u.mv * u.mv == Multivector::scalar(ctx, F.one()))) return "u^2 != 1";
                      if (u.parity != 0) return "lift is not even";
                  } catch (const CliffordError& e) {
                      if (e.code() != ErrorCode::NotLiftable) throw;
                      if (liftable) return "lift refused but the class is a square";
                  }
                  return "";
              });

    return report;
}

Json cmd_torus(const RunConfig& cfg) {
    Space sp = resolve_space(cfg);
    if (cfg.lambdas.empty()) fail(ErrorCode::ConfigInvalid, "torus needs --lambdas");
    ElementInput in = resolve_element(cfg, sp);
    const TorusElement& t = *in.torus;

    Json report = report_skeleton("torus", cfg);
    Json tj;
    tj["lambda0"] = t.lambda0.str();
    Json ls = Json::array();
    for (const Scalar& l : t.lambdas) ls.push_back(l.str());
    tj["lambdas"] = ls;
    tj["element"] = mv_to_json(t.element.mv);
    tj["norm"] = t.element.norm.str();
    tj["parity"] = t.element.parity;
    tj["in_spin"] = is_spin(t.element);
    tj["chi"] = matrix_to_json(t.element.chi);
    report["torus"] = tj;

    Matrix expected = predicted_torus_chi(sp.ctx->space(), t.basis, t.lambdas);
    add_check(report, "chi(t) equals the predicted eigenvalue matrix",
              t.element.chi == expected);
    Scalar nrm = t.lambda0 * t.lambda0;
    for (const Scalar& l : t.lambdas) nrm = nrm * l;
    add_check(report, "N(t) = lambda0^2 prod lambda_i", t.element.norm == nrm);
    return report;
}

Json cmd_conjugate(const RunConfig& cfg) {
    Space sp = resolve_space(cfg);
    ElementInput in = resolve_element(cfg, sp);
    if (in.element.parity != 0)
        fail(ErrorCode::NotInGammaPlus, "conjugation targets need even parity");

    Json report = report_skeleton("conjugate", cfg);
    if (in.torus) {
        const TorusElement& t = *in.torus;
        const size_t m = t.lambdas.size();
        GroupElement s = standard_conjugator(sp.ctx, t.basis, m);
        RealityCertificate cert = make_certificate(sp.ctx, t.element, s, Relation::NtTInverse);
        report["certificate"] = cert_to_json(cert);
        add_check(report, "s t s^-1 = N(t) t^-1 verified by multiplication", true);
        add_check(report, "N(s) = 1", cert.s_norm.is_one());
        Scalar ref = standard_conjugator_sign(sp.F, m);
        Json detail;
        detail["s_squared"] = cert.s_squared.str();
        detail["reference"] = ref.str();
        add_check(report, "s^2 = (-1)^{m(m-1)/2}", cert.s_squared == ref, detail);
        if (m % 2 == 1 && t.lambdas[0] == -sp.F.one()) {
            GroupElement s2 = minus_conjugator(sp.ctx, t);
            RealityCertificate c2 =
                make_certificate(sp.ctx, t.element, s2, Relation::MinusNtTInverse);
            report["minus_case"] = cert_to_json(c2);
            Scalar ref2 = standard_conjugator_sign(sp.F, m - 1);
            Json d2;
            d2["s_squared"] = c2.s_squared.str();
            d2["reference"] = ref2.str();
            add_check(report,
                      "lambda_1 = -1 variant: s t s^-1 = -N(t) t^-1 and s^2 = (-1)^{(m-1)(m-2)/2}",
                      c2.s_squared == ref2, d2);
        }
    } else {
        RealityCertificate cert = blockwise_conjugator(sp.ctx, in.element);
        report["certificate"] = cert_to_json(cert);
        add_check(report, "s t s^-1 = N(t) t^-1 verified by multiplication", true);
        add_check(report, "N(s) = 1", cert.s_norm.is_one());
    }
    return report;
}

Json cmd_decompose(const RunConfig& cfg) {
    Space sp = resolve_space(cfg);
    ElementInput in = resolve_element(cfg, sp);
    RealityDecision dec = is_real_semisimple_spin(sp.ctx, in.element);
    if (dec.kind != RealityKind::Real)
        fail(ErrorCode::NotRealOrUndecided,
             std::string(dec.kind == RealityKind::NotReal ? "not real: " : "undecided: ") +
                 dec.reason);

    InvolutionPair ip = involution_decompose(sp.ctx, in.element, *dec.cert);
    Json report = report_skeleton("decompose", cfg);
    report["certificate"] = cert_to_json(*dec.cert);
    Json dj;
    dj["tau1"] = mv_to_json(ip.tau1.mv);
    dj["tau2"] = mv_to_json(ip.tau2.mv);
    dj["eps"] = ip.eps1.str();
    report["involutions"] = dj;

    add_check(report, "tau1 tau2 = t", ip.tau1.mv * ip.tau2.mv == in.element.mv);
    add_check(report, "tau1^2 = tau2^2 = eps", ip.eps1 == ip.eps2);
    size_t n = sp.ctx->dim();
    Json detail;
    detail["eps"] = ip.eps1.str();
    detail["dim_mod_8"] = n % 8;
    if (n % 8 <= 2 || n % 8 == 4) {
        Scalar expected = n % 8 == 4 ? -sp.F.one() : sp.F.one();
        detail["expected"] = expected.str();
        add_check(report, "eps matches the dim mod 8 sign table", ip.eps1 == expected, detail);
    } else {
        detail["expected"] = nullptr;
        add_check(report, "eps recorded (no sign table entry for this dim mod 8)", true, detail);
    }
    return report;
}

namespace {

GroupLevel parse_level(const std::string& text) {
    if (text == "spin") return GroupLevel::Spin;
    if (text == "gamma-plus") return GroupLevel::GammaPlus;
    if (text == "gamma") return GroupLevel::Gamma;
    fail(ErrorCode::ConfigInvalid, "level must be spin, gamma-plus or gamma: " + text);
}

PackedElem basis_blade(const PackedAlgebra& A, std::uint32_t mask) {
    PackedElem e = A.zero();
    e.c[mask] = 1;
    return e;
}

}  // namespace

Json cmd_enumerate(const RunConfig& cfg) {
    Space sp = resolve_space(cfg);
    const FieldCtx& F = sp.F;
    GroupLevel level = parse_level(cfg.level);
    GroupTable table = enumerate_group(sp.ctx, level, cfg.cap_order);
    const PackedAlgebra& A = *table.alg;
    const size_t n = sp.ctx->dim();
    const long p = A.p();

    Json report = report_skeleton("enumerate", cfg);
    report["level"] = group_level_name(level);
    report["order"] = table.order();
    report["generator_count"] = table.generators.size();
    if (table.order() <= 10000) {
        Json elems = Json::array();
        for (size_t i = 0; i < table.order(); ++i)
            elems.push_back(mv_to_json(table.element_mv(i)));
        report["elements"] = elems;
    } else {
        report["elements_omitted"] = true;
    }

    add_check(report, "table contains 1 and -1",
              table.index_of(A.one()).has_value() &&
                  table.index_of(A.scalar(p - 1)).has_value());

    // ker(chi): elements commuting with every basis vector. Predicted kernel
    // is the scalars F_p^* (plus their top-blade multiples at the Gamma level
    // in odd dimension, where the top blade is central), cut down by the
    // norm-one condition inside Spin.
    std::vector<PackedElem> vectors;
    for (size_t i = 0; i < n; ++i) vectors.push_back(basis_blade(A, 1u << i));
    std::vector<PackedElem> predicted;
    for (long r = 1; r < p; ++r) predicted.push_back(A.scalar(r));
    if (level == GroupLevel::Gamma && n % 2 == 1) {
        PackedElem top = basis_blade(A, (1u << n) - 1);
        for (long r = 1; r < p; ++r) predicted.push_back(A.scaled(top, r));
    }
    if (level == GroupLevel::Spin) {
        std::vector<PackedElem> cut;
        for (const PackedElem& e : predicted)
            if (A.norm_scalar(e) == std::optional<long>(1)) cut.push_back(e);
        predicted = cut;
    }
    size_t kernel_size = 0;
    bool kernel_predicted = true;
    for (const PackedElem& u : table.elements) {
        bool commutes = true;
        for (const PackedElem& v : vectors)
            if (!(A.mul(u, v) == A.mul(v, u))) {
                commutes = false;
                break;
            }
        if (!commutes) continue;
        ++kernel_size;
        bool found = false;
        for (const PackedElem& e : predicted)
            if (e == u) {
                found = true;
                break;
            }
        if (!found) kernel_predicted = false;
    }
    Json kd;
    kd["kernel_size"] = kernel_size;
    kd["predicted_size"] = predicted.size();
    add_check(report, "ker(chi) is exactly the predicted central subgroup",
              kernel_predicted && kernel_size == predicted.size(), kd);

    // spinor_norm(chi(u)) = square class of N(u) for even u. Goes through
    // make_group_element per element, so gated by the order.
    if (table.order() <= 4000) {
        bool all_match = true;
        size_t checked = 0;
        for (size_t i = 0; i < table.order() && all_match; ++i) {
            GroupElement g = make_group_element(table.element_mv(i));
            if (g.parity != 0) continue;
            ++checked;
            if (spinor_norm(sp.ctx->space(), g.chi) != square_class(g.norm, F))
                all_match = false;
        }
        Json sd;
        sd["checked"] = checked;
        add_check(report, "spinor norm of chi(u) = square class of N(u) on all even elements",
                  all_match, sd);
    } else {
        Json sd;
        sd["skipped"] = "order above 4000";
        add_check(report, "spinor norm of chi(u) = square class of N(u) on all even elements",
                  true, sd);
    }

    // Tower membership, re-verified from the packed data.
    bool tower_ok = true;
    for (const PackedElem& u : table.elements) {
        int par = A.parity(u);
        std::optional<long> nu = A.norm_scalar(u);
        if (par == -1 || !nu) tower_ok = false;
        if (level != GroupLevel::Gamma && par != 0) tower_ok = false;
        if (level == GroupLevel::Spin && nu != std::optional<long>(1)) tower_ok = false;
        if (!tower_ok) break;
    }
    add_check(report, "every element is homogeneous with scalar norm at its level", tower_ok);

    return report;
}

Json cmd_reality_report(const RunConfig& cfg) {
    Space sp = resolve_space(cfg);
    const FieldCtx& F = sp.F;
    const CtxPtr& ctx = sp.ctx;
    if (F.p() == 0) fail(ErrorCode::ConfigInvalid, "reality-report needs a finite field");
    const size_t n = ctx->dim();
    Json report = report_skeleton("reality-report", cfg);

    if (n <= 5) {
        GroupTable table = enumerate_spin(ctx, cfg.cap_order);
        ClassReport cr = class_report(table);
        const PackedAlgebra& A = *table.alg;
        report["mode"] = "table";
        report["order"] = table.order();
        report["class_count"] = cr.class_count;
        report["real_class_count"] = cr.real_class_count;
        report["semisimple_real_count"] = cr.semisimple_real_count;

        size_t sizes_sum = 0;
        size_t ss_classes = 0, ss_real = 0;
        size_t agree = 0, contradictions = 0, undecided = 0;
        bool witnesses_ok = true;
        Json classes = Json::array();
        for (const ClassInfo& cl : cr.classes) {
            sizes_sum += cl.size;
            Json cj;
            Multivector rep = table.element_mv(cl.rep);
            cj["rep"] = mv_to_json(rep);
            cj["size"] = cl.size;
            cj["order"] = cl.order;
            cj["semisimple"] = cl.semisimple;
            cj["real"] = cl.real;
            if (cl.witness) {
                PackedElem s = table.elements[*cl.witness];
                PackedElem t = table.elements[cl.rep];
                if (!(A.mul(s, t) == A.mul(A.inverse(t), s))) witnesses_ok = false;
                cj["witness"] = mv_to_json(table.element_mv(*cl.witness));
            } else {
                cj["witness"] = nullptr;
            }
            if (cl.semisimple) {
                ++ss_classes;
                if (cl.real) ++ss_real;
                RealityDecision dec = is_real_semisimple_spin(ctx, make_group_element(rep));
                switch (dec.kind) {
                    case RealityKind::Real:
                        cj["constructive"] = "real";
                        if (cl.real) ++agree;
                        else ++contradictions;
                        break;
                    case RealityKind::NotReal:
                        cj["constructive"] = "not_real";
                        if (!cl.real) ++agree;
                        else ++contradictions;
                        break;
                    case RealityKind::Undecided:
                        cj["constructive"] = "undecided";
                        ++undecided;
                        break;
                }
            } else {
                cj["constructive"] = nullptr;
            }
            classes.push_back(cj);
        }
        report["classes"] = classes;

        Json sums;
        sums["sizes_sum"] = sizes_sum;
        sums["order"] = table.order();
        add_check(report, "class sizes sum to the group order", sizes_sum == table.order(),
                  sums);
        add_check(report, "every real-class witness conjugates the representative to its inverse",
                  witnesses_ok);
        Json cd;
        cd["semisimple_classes"] = ss_classes;
        cd["agree"] = agree;
        cd["undecided"] = undecided;
        cd["contradictions"] = contradictions;
        add_check(report, "constructive and exhaustive verdicts agree on every decided class",
                  contradictions == 0, cd);
        if (n % 4 <= 1) {
            Json rd;
            rd["semisimple_classes"] = ss_classes;
            rd["semisimple_real"] = ss_real;
            add_check(report, "dim = 0,1 mod 4: every semisimple class is real",
                      ss_real == ss_classes, rd);
        }
        return report;
    }

    // Coset mode: the group is too large to tabulate, so sample torus
    // elements of Spin, move them around by random even-versor conjugation,
    // and compare the constructive decision against the exhaustive
    // centralizer-coset scan.
    report["mode"] = "coset";
    WittBasis wb = standard_witt_basis(ctx->space());
    const size_t m = wb.pairs.size();
    if (m == 0) fail(ErrorCode::ConfigInvalid, "coset mode needs at least one hyperbolic pair");

    size_t real_count = 0, not_real_count = 0, skipped = 0;
    size_t contradictions = 0, undecided = 0, rule_violations = 0;
    bool witnesses_ok = true;
    Json samples = Json::array();
    for (size_t i = 0; i < cfg.samples; ++i) {
        Rng rng = item_rng(cfg, 9000, i);
        std::vector<Scalar> lambdas;
        Scalar l0 = F.one();
        for (int tries = 0;; ++tries) {
            if (tries > 2000) fail(ErrorCode::Internal, "norm-one lambda sampling exhausted");
            lambdas.clear();
            Scalar prod = F.one();
            for (size_t j = 0; j < m; ++j) {
                Scalar l = rng.nonzero_scalar(F);
                lambdas.push_back(l);
                prod = prod * l;
            }
            auto sq = is_square(prod, F);
            if (sq.first) {
                l0 = sq.second->inv();
                break;
            }
        }
        TorusElement t = make_torus_element(ctx, l0, lambdas, wb);
        Multivector g = random_even_versor(rng, ctx);
        GroupElement sample = make_group_element(g * t.element.mv * mv_inverse(g));

        Json sj;
        Json ls = Json::array();
        for (const Scalar& l : lambdas) ls.push_back(l.str());
        sj["lambdas"] = ls;

        RealityDecision dec = is_real_semisimple_spin(ctx, sample);
        sj["constructive"] = dec.kind == RealityKind::Real      ? "real"
                             : dec.kind == RealityKind::NotReal ? "not_real"
                                                                : "undecided";
        std::optional<GroupElement> w;
        bool decided = true;
        try {
            w = centralizer_coset_decide(ctx, sample);
        } catch (const CliffordError& e) {
            if (e.code() != ErrorCode::CentralizerTooLarge) throw;
            decided = false;
        }
        if (!decided) {
            sj["coset"] = "skipped";
            ++skipped;
            samples.push_back(sj);
            continue;
        }
        bool oracle_real = w.has_value();
        sj["coset"] = oracle_real ? "real" : "not_real";
        if (oracle_real) {
            ++real_count;
            if (!(w->mv * sample.mv == mv_inverse(sample.mv) * w->mv)) witnesses_ok = false;
            if (!is_spin(*w)) witnesses_ok = false;
        } else {
            ++not_real_count;
        }
        if (dec.kind == RealityKind::Undecided) ++undecided;
        else if ((dec.kind == RealityKind::Real) != oracle_real) ++contradictions;
        if (n % 4 == 2) {
            EigenSplit es = eigen_split(ctx, sample);
            if (oracle_real != (es.one.dim() > 0)) ++rule_violations;
        }
        samples.push_back(sj);
    }
    report["samples_detail"] = samples;
    report["real"] = real_count;
    report["not_real"] = not_real_count;
    report["skipped"] = skipped;
    report["decided"] = real_count + not_real_count;

    Json cd;
    cd["decided"] = real_count + not_real_count;
    cd["contradictions"] = contradictions;
    cd["undecided"] = undecided;
    add_check(report, "constructive and coset verdicts agree on every decided sample",
              contradictions == 0, cd);
    add_check(report, "every coset witness lies in Spin and conjugates t to t^-1", witnesses_ok);
    if (n % 4 == 2) {
        Json rd;
        rd["violations"] = rule_violations;
        add_check(report, "dim = 2 mod 4: real iff 1 is an eigenvalue of chi(t)",
                  rule_violations == 0, rd);
    }
    return report;
}

}  // namespace cliffreal
