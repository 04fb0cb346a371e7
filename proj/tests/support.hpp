#pragma once

// Shared helpers for the test suites: deterministic RNG, random naturals,
// and the geometric-depth random term generator.

#include <cstdint>
#include <random>

#include "treenum/bridge.hpp"
#include "treenum/term.hpp"

namespace testsupport {

using Rng = std::mt19937_64;

inline treenum::Nat random_nat(Rng& rng, unsigned bits) {
    treenum::Nat n = 0;
    unsigned produced = 0;
    while (produced < bits) {
        unsigned chunk = std::min(64u, bits - produced);
        std::uint64_t word = rng();
        if (chunk < 64) word &= (std::uint64_t(1) << chunk) - 1;
        n = (n << chunk) | word;
        produced += chunk;
    }
    return n;
}

inline treenum::Nat random_nat_positive(Rng& rng, unsigned bits) {
    treenum::Nat n = random_nat(rng, bits);
    return n == 0 ? treenum::Nat(1) : n;
}

// Random term with geometric depth, biased so leaves, odd shapes C(T,y) and
// even-positive shapes C(C(..),y) all occur.  `size` bounds the C-node count.
inline treenum::Term random_term(Rng& rng, unsigned size = 24) {
    if (size == 0) return treenum::Term::leaf();
    switch (rng() % 4) {
        case 0:
            return treenum::Term::leaf();
        case 1:  // odd shape
            return treenum::make_o(random_term(rng, size / 2));
        default:
            return treenum::Term::cell(random_term(rng, size / 4),
                                       random_term(rng, size / 2));
    }
}

inline treenum::Term random_positive_term(Rng& rng, unsigned size = 24) {
    treenum::Term t = random_term(rng, size);
    return t.is_leaf() ? treenum::one() : t;
}

}  // namespace testsupport
