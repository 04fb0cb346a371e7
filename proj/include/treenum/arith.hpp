#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "treenum/term.hpp"

namespace treenum {

inline Ord3 cmp(const Term& u, const Term& v);
inline Term add(const Term& u, const Term& v);
inline Term sub(const Term& u, const Term& v);
inline Term multiply(const Term& u, const Term& v);
inline Term pow(const Term& u, const Term& v);
inline Term exp2(const Term& x);

// Natural-number arithmetic on terms.
//
// Two execution paths share each operation's semantics:
//
//  - A structural path that works digit-wise on the O/I (bijective base-2)
//    view.  It never expands the numeral, so it stays cheap on terms whose
//    exponents are themselves huge (where any positional representation is
//    out of reach).
//
//  - A packed path used when every exponent along the right spine fits in a
//    machine word: the numeral is expanded into a vector of 64-bit words,
//    the operation runs on words, and the result is folded back into a term.
//    This is the common case and it is orders of magnitude faster than
//    walking digits one node at a time.
//
// Both paths are exact; the packed one is picked per call when available.

namespace detail {

// Packed numerals: base 2^64, little endian, no zero top word.  The empty
// vector is zero.
using Bits = std::vector<std::uint64_t>;

inline void trim(Bits& w) {
    while (!w.empty() && w.back() == 0) w.pop_back();
}

// Expansion cap; beyond this the packed path would allocate unreasonable
// buffers, so the structural path is used instead.
constexpr std::uint64_t max_fast_bits = std::uint64_t{1} << 26;

// The binary expansion of nat(t): each cell C(x, y) on the right spine
// contributes nat(x) zeros and a one bit.  nullopt when an exponent does not
// fit a machine word or the expansion would exceed the cap.
inline std::optional<Bits> bits_of(const Term& t) {
    Bits w;
    std::uint64_t pos = 0;
    for (const Term* cur = &t; !cur->is_leaf(); cur = &cur->right()) {
        auto a = small_value(cur->left());
        if (!a || pos + *a >= max_fast_bits) return std::nullopt;
        pos += *a;
        if (w.size() <= (pos >> 6)) w.resize((pos >> 6) + 1, 0);
        w[pos >> 6] |= std::uint64_t{1} << (pos & 63);
        ++pos;
    }
    return w;
}

inline std::uint64_t bit_length(const Bits& w) {
    if (w.empty()) return 0;
    return 64 * (w.size() - 1) + (64 - std::countl_zero(w.back()));
}

inline bool get_bit(const Bits& w, std::uint64_t i) {
    return (w[i >> 6] >> (i & 63)) & 1;
}

inline Term term_of_u64(std::uint64_t v) {
    if (v == 0) return Term::leaf();
    unsigned a = std::countr_zero(v);
    return Term::cell(term_of_u64(a), term_of_u64(v >> (a + 1)));
}

// Folds a binary expansion back into the unique term denoting it.  One cell
// per set bit; the left child of each cell is the zero gap below that bit.
inline Term term_of_bits(const Bits& w) {
    std::vector<std::uint64_t> ones;
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::uint64_t word = w[i];
        while (word != 0) {
            ones.push_back(64 * i + std::countr_zero(word));
            word &= word - 1;
        }
    }
    Term r = Term::leaf();
    for (std::size_t j = ones.size(); j-- > 0;) {
        std::uint64_t gap = j == 0 ? ones[0] : ones[j] - ones[j - 1] - 1;
        r = Term::cell(term_of_u64(gap), std::move(r));
    }
    return r;
}

inline Ord3 cmp_bits(const Bits& a, const Bits& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? Ord3::lt : Ord3::gt;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? Ord3::lt : Ord3::gt;
    }
    return Ord3::eq;
}

inline Bits add_bits(const Bits& a, const Bits& b) {
    const Bits& hi = a.size() >= b.size() ? a : b;
    const Bits& lo = a.size() >= b.size() ? b : a;
    Bits r(hi.size() + 1, 0);
    unsigned __int128 carry = 0;
    for (std::size_t i = 0; i < hi.size(); ++i) {
        unsigned __int128 s = carry + hi[i] + (i < lo.size() ? lo[i] : 0);
        r[i] = static_cast<std::uint64_t>(s);
        carry = s >> 64;
    }
    r[hi.size()] = static_cast<std::uint64_t>(carry);
    trim(r);
    return r;
}

// Pre: a >= b.
inline Bits sub_bits(const Bits& a, const Bits& b) {
    Bits r(a.size(), 0);
    std::uint64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t bi = i < b.size() ? b[i] : 0;
        std::uint64_t t = a[i] - bi;
        std::uint64_t underflowed = a[i] < bi;
        r[i] = t - borrow;
        borrow = underflowed | (t < borrow);
    }
    trim(r);
    return r;
}

inline Bits mul_bits(const Bits& a, const Bits& b) {
    if (a.empty() || b.empty()) return {};
    Bits r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        unsigned __int128 carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            unsigned __int128 cur =
                static_cast<unsigned __int128>(a[i]) * b[j] + r[i + j] + carry;
            r[i + j] = static_cast<std::uint64_t>(cur);
            carry = cur >> 64;
        }
        std::uint64_t c = static_cast<std::uint64_t>(carry);
        for (std::size_t k = i + b.size(); c != 0; ++k) {
            std::uint64_t t = r[k] + c;
            c = t < c;
            r[k] = t;
        }
    }
    trim(r);
    return r;
}

inline void shl1(Bits& w) {
    std::uint64_t carry = 0;
    for (auto& x : w) {
        std::uint64_t next = x >> 63;
        x = (x << 1) | carry;
        carry = next;
    }
    if (carry != 0) w.push_back(1);
}

// Binary long division.  Pre: b != 0.
inline std::pair<Bits, Bits> divmod_bits(const Bits& a, const Bits& b) {
    if (cmp_bits(a, b) == Ord3::lt) return {{}, a};
    std::uint64_t n = bit_length(a);
    Bits q((n + 63) / 64, 0);
    Bits r;
    for (std::uint64_t i = n; i-- > 0;) {
        shl1(r);
        if (get_bit(a, i)) {
            if (r.empty()) r.push_back(1);
            else r[0] |= 1;
        }
        if (cmp_bits(r, b) != Ord3::lt) {
            r = sub_bits(r, b);
            q[i >> 6] |= std::uint64_t{1} << (i & 63);
        }
    }
    trim(q);
    return {std::move(q), std::move(r)};
}

inline Bits gcd_bits(Bits a, Bits b) {
    while (!b.empty()) {
        Bits r = divmod_bits(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline Bits pow_bits(Bits base, std::uint64_t e) {
    Bits r{1};
    while (e != 0) {
        if (e & 1) r = mul_bits(r, base);
        e >>= 1;
        if (e != 0) base = mul_bits(base, base);
    }
    return r;
}

// --- structural path --------------------------------------------------------
//
// The digit recursions are linear in digit count and are run as loops over an
// explicit digit list, rebuilding the result from the most significant digit
// inward.  Subproblems go back through the public entry points, so a mixed
// term (huge exponent at the top, ordinary numbers below) still benefits from
// the packed path where possible.

// Order of denotations.  The verdict of the most significant differing digit
// wins; with no differing digit the longer digit string is greater.
inline Ord3 cmp_structural(const Term& u, const Term& v) {
    Term a = u;
    Term b = v;
    Ord3 low = Ord3::eq;
    for (;;) {
        if (a.is_leaf() && b.is_leaf()) return low;
        if (a.is_leaf()) return Ord3::lt;
        if (b.is_leaf()) return Ord3::gt;
        auto da = *pop_digit(a);
        auto db = *pop_digit(b);
        if (da.first != db.first) {
            low = (da.first == BDigit::o) ? Ord3::lt : Ord3::gt;
        }
        a = std::move(da.second);
        b = std::move(db.second);
    }
}

// Digit cases: (O,O) -> I(s), (O,I) and (I,O) -> O(succ s), (I,I) -> I(succ s)
// where s is the sum of the remaining digits.
inline Term add_structural(const Term& u, const Term& v) {
    Term a = u;
    Term b = v;
    std::vector<std::pair<BDigit, BDigit>> digits;
    while (!a.is_leaf() && !b.is_leaf()) {
        auto da = *pop_digit(a);
        auto db = *pop_digit(b);
        digits.emplace_back(da.first, db.first);
        a = std::move(da.second);
        b = std::move(db.second);
    }
    Term r = a.is_leaf() ? std::move(b) : std::move(a);
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (it->first == BDigit::o && it->second == BDigit::o) {
            r = make_i(r);
        } else if (it->first == BDigit::i && it->second == BDigit::i) {
            r = make_i(succ(r));
        } else {
            r = make_o(succ(r));
        }
    }
    return r;
}

// Pre: nat(u) >= nat(v), checked by the caller.
inline Term sub_structural(const Term& u, const Term& v) {
    Term a = u;
    Term b = v;
    std::vector<std::pair<BDigit, BDigit>> digits;
    while (!b.is_leaf()) {
        // u >= v guarantees u has at least as many digits as v.
        auto da = *pop_digit(a);
        auto db = *pop_digit(b);
        digits.emplace_back(da.first, db.first);
        a = std::move(da.second);
        b = std::move(db.second);
    }
    Term r = std::move(a);
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (it->first == BDigit::i && it->second == BDigit::o) {
            r = make_o(r);
        } else if (it->first == BDigit::o && it->second == BDigit::i) {
            r = pred(pred(make_o(r)));
        } else {
            r = pred(make_o(r));
        }
    }
    return r;
}

// The decomposition C(hx,tx) * C(hy,ty) = C(hx+hy, tx+ty + 2*tx*ty).
inline Term multiply_structural(const Term& u, const Term& v) {
    Term s = add(u.right(), v.right());
    Term z = pred(make_o(multiply(u.right(), v.right())));
    return Term::cell(add(u.left(), v.left()), add(s, z));
}

// Binary exponentiation over the digits of v.
inline Term pow_structural(const Term& u, const Term& v) {
    if (v.is_leaf()) return one();
    auto d = *pop_digit(v);
    if (d.first == BDigit::o) {
        return multiply(u, pow(multiply(u, u), d.second));
    }
    Term xx = multiply(u, u);
    return multiply(xx, pow(xx, d.second));
}

// Repeated doubling: find the largest k with y*2^k <= x (backing off one step
// when doubling overshoots), subtract exp2(k)*y, and accumulate exp2(k) into
// the quotient.
inline std::pair<Term, Term> div_and_rem_structural(const Term& x, const Term& y) {
    Term q = Term::leaf();
    Term r = x;
    while (cmp(r, y) != Ord3::lt) {
        Term k = Term::leaf();
        Term yd = y;
        do {
            yd = dbl(yd);
            k = succ(k);
        } while (cmp(r, yd) != Ord3::lt);
        Term qt = pred(k);
        r = sub(r, multiply(exp2(qt), y));
        q = add(q, exp2(qt));
    }
    return {std::move(q), std::move(r)};
}

}  // namespace detail

inline Ord3 cmp(const Term& u, const Term& v) {
    if (auto a = detail::bits_of(u)) {
        if (auto b = detail::bits_of(v)) return detail::cmp_bits(*a, *b);
    }
    return detail::cmp_structural(u, v);
}

// nat(add(u, v)) = nat(u) + nat(v).
inline Term add(const Term& u, const Term& v) {
    if (auto a = detail::bits_of(u)) {
        if (auto b = detail::bits_of(v)) {
            return detail::term_of_bits(detail::add_bits(*a, *b));
        }
    }
    return detail::add_structural(u, v);
}

// nat(sub(u, v)) = nat(u) - nat(v).  Pre: nat(u) >= nat(v), checked up front.
inline Term sub(const Term& u, const Term& v) {
    if (auto a = detail::bits_of(u)) {
        if (auto b = detail::bits_of(v)) {
            if (detail::cmp_bits(*a, *b) == Ord3::lt) throw underflow();
            return detail::term_of_bits(detail::sub_bits(*a, *b));
        }
    }
    if (cmp(u, v) == Ord3::lt) throw underflow();
    return detail::sub_structural(u, v);
}

// nat(multiply(u, v)) = nat(u) * nat(v).
inline Term multiply(const Term& u, const Term& v) {
    if (u.is_leaf() || v.is_leaf()) return Term::leaf();
    if (auto a = detail::bits_of(u)) {
        if (auto b = detail::bits_of(v)) {
            if (detail::bit_length(*a) + detail::bit_length(*b) <= detail::max_fast_bits) {
                return detail::term_of_bits(detail::mul_bits(*a, *b));
            }
        }
    }
    return detail::multiply_structural(u, v);
}

// nat(exp2(x)) = 2^nat(x); a single constructor application.
inline Term exp2(const Term& x) { return Term::cell(x, Term::leaf()); }

// nat(pow(u, v)) = nat(u)^nat(v).
inline Term pow(const Term& u, const Term& v) {
    if (auto e = detail::small_value(v)) {
        if (*e == 0) return one();
        if (auto b = detail::bits_of(u)) {
            if (*e <= detail::max_fast_bits &&
                detail::bit_length(*b) * *e <= detail::max_fast_bits) {
                return detail::term_of_bits(detail::pow_bits(std::move(*b), *e));
            }
        }
    }
    return detail::pow_structural(u, v);
}

// Quotient and remainder: nat(x) = nat(q)*nat(y) + nat(r), nat(r) < nat(y).
// Pre: y != T.
inline std::pair<Term, Term> div_and_rem(const Term& x, const Term& y) {
    if (y.is_leaf()) throw division_by_zero();
    if (auto a = detail::bits_of(x)) {
        if (auto b = detail::bits_of(y)) {
            auto [q, r] = detail::divmod_bits(*a, *b);
            return {detail::term_of_bits(q), detail::term_of_bits(r)};
        }
    }
    return detail::div_and_rem_structural(x, y);
}

inline Term divide(const Term& x, const Term& y) { return div_and_rem(x, y).first; }

inline Term remainder(const Term& x, const Term& y) { return div_and_rem(x, y).second; }

// Euclidean gcd; gcd(x, T) = x, so gcd(T, T) = T.
inline Term gcd(const Term& x, const Term& y) {
    if (auto a = detail::bits_of(x)) {
        if (auto b = detail::bits_of(y)) {
            return detail::term_of_bits(detail::gcd_bits(std::move(*a), std::move(*b)));
        }
    }
    Term a = x;
    Term b = y;
    while (!b.is_leaf()) {
        Term r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// lcm(x, y) = (x / gcd(x, y)) * y; division by zero propagates for (T, T).
inline Term lcm(const Term& x, const Term& y) {
    return multiply(divide(x, gcd(x, y)), y);
}

}  // namespace treenum
