#pragma once

#include "cliffreal/report.hpp"

namespace cliffreal {

// Command implementations behind the CLI, exposed as pure config -> report
// functions so tests can drive them in-process (determinism is checked by
// running a command twice and comparing serialized bytes).

// Randomized property suites over the configured space: algebra identities,
// vector-representation and norm multiplicativity, torus diagonalization and
// involution lifting. Every item derives its randomness from (seed, index).
Json cmd_verify_identities(const RunConfig& cfg);

// Builds the torus element lambda0, (lambda_i) on the Witt basis of the form
// and reports it with its vector representation, verified against the
// predicted eigenvalue matrix.
Json cmd_torus(const RunConfig& cfg);

// Certificate s t s^{-1} = N(t) t^{-1} for a torus element (--lambdas) or a
// general even element (--element); the torus route compares s^2 against
// (-1)^{m(m-1)/2} and adds the lambda_1 = -1 variant when it applies.
Json cmd_conjugate(const RunConfig& cfg);

// Runs the Spin reality decision and splits t into two involutions; fails
// with NotRealOrUndecided unless the decision is Real.
Json cmd_decompose(const RunConfig& cfg);

// Full closure enumeration at --level with tower sanity checks.
Json cmd_enumerate(const RunConfig& cfg);

// Constructive vs exhaustive cross-check: conjugacy classes of the
// enumerated Spin group for dim <= 5, sampled coset decisions for dim >= 6.
Json cmd_reality_report(const RunConfig& cfg);

}  // namespace cliffreal
