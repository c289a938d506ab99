#pragma once

#include <functional>
#include <string>

#include "json.hpp"

#include "cliffreal/matrix.hpp"
#include "cliffreal/multivector.hpp"
#include "cliffreal/scalar.hpp"

namespace cliffreal {

using Json = nlohmann::ordered_json;

// Shared run configuration for the command front end. Form and element
// inputs stay as the user-provided text until a command resolves them, so a
// report can echo the exact configuration it ran under.
struct RunConfig {
    FieldSpec field{0};
    std::string form;            // shorthand or JSON gram rows
    unsigned long seed = 1;
    size_t cap_order = 1000000;
    size_t count = 200;          // property-suite size
    size_t samples = 100;        // dim-6 reality-report sample size
    std::string level = "spin";  // enumerate: spin | gamma-plus | gamma
    std::string lambda0 = "1";
    std::string lambdas;         // comma-separated torus parameters
    std::string element;         // JSON multivector, alternative to lambdas
    int threads = 1;
};

// --field: "Q" (or "rationals") for the rationals, a decimal odd prime
// otherwise. Throws ConfigInvalid.
FieldSpec parse_field(const std::string& text);

// --form / --gram:
//   "hyperbolic:m"                        m split pairs (antidiagonal blocks)
//   "anisotropic:[d1,...]"                diagonal part with q-values d_i
//   "hyperbolic:m+anisotropic:[d1,...]"   both
//   "[[...],[...]]"                       explicit polar gram, entries as
//                                         scalar strings or integers
// Throws ConfigInvalid on malformed input.
Matrix parse_form(const std::string& text, const FieldCtx& F);

Json field_to_json(const FieldSpec& f);
Json matrix_to_json(const Matrix& M);

// Multivector as [[generators, coeff], ...] with 1-based internal generator
// indices, e.g. 3/2 + 2 v1 v3 -> [[[], "3/2"], [[1, 3], "2"]].
Json mv_to_json(const Multivector& m);
Multivector mv_from_json(const CtxPtr& ctx, const Json& j);

// Report skeleton: {"schema": 1, "command": ..., "config": ...,
// "checks": [], "pass": true}. Every command fills the middle and maintains
// "pass" as the conjunction of its checks.
Json report_skeleton(const std::string& command, const RunConfig& cfg);
void add_check(Json& report, const std::string& name, bool pass,
               const Json& detail = Json());
bool report_passed(const Json& report);

// Human-readable rendering of a report; the text is derived from the JSON,
// never computed separately.
std::string render_text(const Json& report);

// Deterministic chunked parallel map: runs fn(i) for i in [0, n) on the
// configured number of workers. fn must derive all randomness from i, so the
// aggregate is independent of scheduling.
void parallel_for_indexed(size_t n, int threads, const std::function<void(size_t)>& fn);

}  // namespace cliffreal
