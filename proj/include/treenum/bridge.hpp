#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "treenum/term.hpp"

namespace treenum {

// Arbitrary-precision naturals, the I/O boundary and the independent oracle
// for the tree arithmetic.  Never used inside the kernel operations.
using Nat = boost::multiprecision::cpp_int;

// Left children of a term may denote astronomically large exponents; to_nat
// refuses to materialize shifts past this many bits.
inline constexpr unsigned long default_shift_budget_bits = 1ul << 20;

// Nat -> Term.  For i > 0, i = 2^h * (2t + 1) with h the 2-adic valuation;
// the result is C(from_nat(h), from_nat(t)).  The odd-part chain is built
// iteratively; recursion only happens on the (logarithmically small)
// valuations.
inline Term from_nat(const Nat& i) {
    if (i < 0) throw conversion_overflow("from_nat: negative input");
    std::vector<Nat> valuations;
    Nat cur = i;
    while (cur != 0) {
        unsigned h = boost::multiprecision::lsb(cur);
        valuations.push_back(h);
        cur >>= h + 1;  // (cur / 2^h - 1) / 2
    }
    Term t = Term::leaf();
    for (auto it = valuations.rbegin(); it != valuations.rend(); ++it) {
        t = Term::cell(from_nat(*it), std::move(t));
    }
    return t;
}

// Term -> Nat: to_nat(T) = 0, to_nat(C(x,y)) = 2^to_nat(x) * (2*to_nat(y)+1).
// Post-order over an explicit stack; throws conversion_overflow when a shift
// amount exceeds the budget.
inline Nat to_nat(const Term& t, unsigned long shift_budget_bits = default_shift_budget_bits) {
    struct Frame {
        Term term;
        int stage;
    };
    std::vector<Frame> frames{{t, 0}};
    std::vector<Nat> values;
    while (!frames.empty()) {
        Frame& f = frames.back();
        if (f.term.is_leaf()) {
            values.emplace_back(0);
            frames.pop_back();
        } else if (f.stage == 0) {
            f.stage = 1;
            Term l = f.term.left();
            frames.push_back({std::move(l), 0});
        } else if (f.stage == 1) {
            f.stage = 2;
            Term r = f.term.right();
            frames.push_back({std::move(r), 0});
        } else {
            Nat odd = std::move(values.back());
            values.pop_back();
            Nat shift = std::move(values.back());
            values.pop_back();
            if (shift > shift_budget_bits) {
                throw conversion_overflow("to_nat: shift amount exceeds budget");
            }
            values.push_back((Nat(1) << shift.convert_to<unsigned long>()) * (2 * odd + 1));
            frames.pop_back();
        }
    }
    return std::move(values.back());
}

// Aliases used throughout tests and the CLI.
inline Term term(const Nat& n) { return from_nat(n); }
inline Nat nat(const Term& t) { return to_nat(t); }

// Decimal text for Nat.  Input accepts optional leading zeros; output is
// canonical (no leading zeros, no separators).
inline Nat parse_nat(std::string_view s) {
    if (s.empty()) throw parse_error(0, "decimal digits");
    Nat n = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c < '0' || c > '9') throw parse_error(i, "decimal digit");
        n = n * 10 + (c - '0');
    }
    return n;
}

inline std::string nat_to_string(const Nat& n) { return n.str(); }

}  // namespace treenum
