#pragma once

#include <cstdint>
#include <random>

#include "cliffreal/scalar.hpp"

namespace cliffreal {

// Deterministic random source. All sampling goes through next_below so the
// stream of draws depends only on the seed, never on the standard library's
// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform-ish draw in [0, n); modulo bias is irrelevant at desk scale.
    std::uint64_t next_below(std::uint64_t n) { return n == 0 ? 0 : eng_() % n; }

    long next_in(long lo, long hi) {  // inclusive range
        return lo + static_cast<long>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool next_bool() { return (eng_() & 1UL) != 0; }

    // Any field element; numerators/denominators stay small over Q.
    Scalar scalar(const FieldCtx& F) {
        if (F.rationals()) return Scalar::rational(next_in(-9, 9), next_in(1, 9));
        return Scalar::mod(next_in(0, F.p() - 1), F.p());
    }

    Scalar nonzero_scalar(const FieldCtx& F) {
        for (;;) {
            Scalar s = scalar(F);
            if (!s.is_zero()) return s;
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace cliffreal
