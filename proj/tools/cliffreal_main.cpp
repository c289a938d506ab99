#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cliffreal/commands.hpp"
#include "cliffreal/errors.hpp"

using namespace cliffreal;

namespace {

int threads_from_env() {
    const char* raw = std::getenv("CLIFFORD_REALITY_THREADS");
    if (!raw || !*raw) return 1;
    char* end = nullptr;
    long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 1 || v > 256)
        fail(ErrorCode::ConfigInvalid, "CLIFFORD_REALITY_THREADS must be an integer in [1, 256]");
    return static_cast<int>(v);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Clifford algebra / Spin group reality toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string field_text = "Q";
    long p_alias = 0;
    std::string out_path;
    bool json_out = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--field", field_text, "base field: Q, or an odd prime p");
        sub->add_option("--p", p_alias, "shorthand for --field <prime>");
        sub->add_option("--form,--gram", cfg.form,
                        "quadratic form: hyperbolic:m, anisotropic:[d,...], a + of both, "
                        "or explicit JSON gram rows")
            ->required();
        sub->add_option("--seed", cfg.seed, "seed for the randomized suites");
        sub->add_option("--cap-order", cfg.cap_order, "enumeration order cap");
        sub->add_option("--out", out_path, "also write the JSON report to this file");
        sub->add_flag("--json", json_out, "print the JSON report instead of text");
        return sub;
    };

    CLI::App* verify = add_common(app.add_subcommand(
        "verify-identities", "run the algebra / group / torus / lifting property suites"));
    verify->add_option("--count", cfg.count, "items per suite");

    CLI::App* torus = add_common(app.add_subcommand(
        "torus", "build a torus element from eigenvalue parameters and verify its matrix"));
    torus->add_option("--lambda0", cfg.lambda0, "scalar prefactor");
    torus->add_option("--lambdas", cfg.lambdas, "comma-separated eigenvalue parameters")
        ->required();

    CLI::App* conj = add_common(app.add_subcommand(
        "conjugate", "produce a verified conjugator s with s t s^-1 = N(t) t^-1"));
    conj->add_option("--lambda0", cfg.lambda0, "scalar prefactor (torus input)");
    conj->add_option("--lambdas", cfg.lambdas, "torus eigenvalue parameters");
    conj->add_option("--element", cfg.element, "element as JSON [[generators, coeff], ...]");

    CLI::App* dec = add_common(app.add_subcommand(
        "decompose", "split a real Spin element into two involutions t = tau1 tau2"));
    dec->add_option("--lambda0", cfg.lambda0, "scalar prefactor (torus input)");
    dec->add_option("--lambdas", cfg.lambdas, "torus eigenvalue parameters");
    dec->add_option("--element", cfg.element, "element as JSON [[generators, coeff], ...]");

    CLI::App* enu = add_common(app.add_subcommand(
        "enumerate", "enumerate Spin / Gamma+ / Gamma over a small prime field"));
    enu->add_option("--level", cfg.level, "spin | gamma-plus | gamma");

    CLI::App* rr = add_common(app.add_subcommand(
        "reality-report", "conjugacy classes with realness verdicts, constructive vs exhaustive"));
    rr->add_option("--samples", cfg.samples, "sample count for the dim >= 6 coset mode");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.threads = threads_from_env();
        cfg.field = p_alias != 0 ? FieldSpec{p_alias} : parse_field(field_text);

        Json report;
        if (verify->parsed()) report = cmd_verify_identities(cfg);
        else if (torus->parsed()) report = cmd_torus(cfg);
        else if (conj->parsed()) report = cmd_conjugate(cfg);
        else if (dec->parsed()) report = cmd_decompose(cfg);
        else if (enu->parsed()) report = cmd_enumerate(cfg);
        else report = cmd_reality_report(cfg);

        if (!out_path.empty()) {
            std::ofstream f(out_path);
            if (!f) fail(ErrorCode::ConfigInvalid, "cannot open output file: " + out_path);
            f << report.dump(2) << "\n";
        }
        if (json_out) std::cout << report.dump(2) << "\n";
        else std::cout << render_text(report);
        return report_passed(report) ? 0 : 1;
    } catch (const CliffordError& e) {
        std::cerr << "ERROR " << e.what() << "\n";
        return 2;
    }
}
