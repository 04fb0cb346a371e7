#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treenum/arith.hpp"
#include "treenum/bridge.hpp"
#include "treenum/term.hpp"

namespace treenum {

// Exact rationals over terms.  A positive rational is the pair of co-prime
// terms found by walking the Calkin-Wilf tree; the sign lives in a separate
// three-way tag.  Every rational has exactly one representation.

class PQ;
PQ pqsimpl(const Term& x, const Term& y);
PQ t2pq(const Term& u);
PQ pqinverse(const PQ& a);
PQ pqpow(const PQ& a, const Term& e);

// Co-prime (numerator, denominator) pair, both >= 1.  Construction is gated
// through pqsimpl / t2pq so the invariant always holds.
class PQ {
  public:
    const Term& num() const noexcept { return num_; }
    const Term& den() const noexcept { return den_; }

    friend bool operator==(const PQ& a, const PQ& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const PQ& a, const PQ& b) { return !(a == b); }

  private:
    PQ(Term n, Term d) noexcept : num_(std::move(n)), den_(std::move(d)) {}

    Term num_;
    Term den_;

    friend PQ pqsimpl(const Term&, const Term&);
    friend PQ t2pq(const Term&);
    friend PQ pqinverse(const PQ&);
    friend PQ pqpow(const PQ&, const Term&);
};

// Reduce a raw positive pair to co-prime form.  Errors on a zero component.
inline PQ pqsimpl(const Term& x, const Term& y) {
    if (x.is_leaf() || y.is_leaf()) {
        throw invalid_rational("pqsimpl: zero component");
    }
    Term z = gcd(x, y);
    return PQ(divide(x, z), divide(y, z));
}

// Nat -> positive rational along the Calkin-Wilf tree.  The digits of u,
// least significant outermost, encode the path from the root (1,1): an O
// digit maps (x,y) to (x, x+y), an I digit to (x+y, y).
inline PQ t2pq(const Term& u) {
    std::vector<BDigit> digits;  // outermost (applied last) first
    Term cur = u;
    while (auto d = pop_digit(cur)) {
        digits.push_back(d->first);
        cur = std::move(d->second);
    }
    Term x = one();
    Term y = one();
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (*it == BDigit::o) {
            y = add(x, y);
        } else {
            x = add(x, y);
        }
    }
    return PQ(std::move(x), std::move(y));
}

// Inverse walk: (1,1) -> T; a > b emits an I digit on (a-b, b), a < b an O
// digit on (a, b-a).  The raw overload validates co-primality and positivity
// up front so a bad pair fails with a diagnosable error instead of looping.
inline Term pq2t_unchecked(const Term& a0, const Term& b0) {
    Term a = a0;
    Term b = b0;
    std::vector<BDigit> digits;
    while (!(a.left().is_leaf() && a.right().is_leaf() &&
             b.left().is_leaf() && b.right().is_leaf())) {
        if (cmp(a, b) == Ord3::gt) {
            digits.push_back(BDigit::i);
            a = sub(a, b);
        } else {
            digits.push_back(BDigit::o);
            b = sub(b, a);
        }
    }
    Term t = Term::leaf();
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        t = (*it == BDigit::o) ? make_o(t) : make_i(t);
    }
    return t;
}

inline Term pq2t(const Term& a, const Term& b) {
    if (a.is_leaf() || b.is_leaf()) {
        throw invalid_rational("pq2t: zero component");
    }
    if (gcd(a, b) != one()) {
        throw invalid_rational("pq2t: components not co-prime");
    }
    return pq2t_unchecked(a, b);
}

inline Term pq2t(const PQ& uv) { return pq2t_unchecked(uv.num(), uv.den()); }

// Signed rational: zero, or a sign tag over a PQ.
class Q {
  public:
    static Q zero() noexcept { return Q(); }
    static Q positive(PQ pq) { return Q(1, std::move(pq)); }
    static Q negative(PQ pq) { return Q(-1, std::move(pq)); }

    bool is_zero() const noexcept { return sign_ == 0; }
    bool is_positive() const noexcept { return sign_ > 0; }
    bool is_negative() const noexcept { return sign_ < 0; }

    // Pre: !is_zero().
    const PQ& magnitude() const noexcept { return *pq_; }

    friend bool operator==(const Q& a, const Q& b) {
        if (a.sign_ != b.sign_) return false;
        return a.sign_ == 0 || *a.pq_ == *b.pq_;
    }
    friend bool operator!=(const Q& a, const Q& b) { return !(a == b); }

  private:
    Q() noexcept = default;
    Q(int sign, PQ pq) noexcept : sign_(sign), pq_(std::move(pq)) {}

    int sign_ = 0;
    std::optional<PQ> pq_;
};

// Bijection between terms (seen as naturals) and signed rationals: T is zero,
// odd terms are negative, even positive terms are positive.

inline Q fromT(const Term& t) {
    if (t.is_leaf()) return Q::zero();
    if (auto o = view_o(t)) return Q::negative(t2pq(*o));
    return Q::positive(t2pq(*view_i(t)));
}

inline Term toT(const Q& q) {
    if (q.is_zero()) return Term::leaf();
    Term path = pq2t(q.magnitude());
    return q.is_negative() ? make_o(path) : make_i(path);
}

inline Q nat2rat(const Nat& n) { return fromT(from_nat(n)); }

inline Nat rat2nat(const Q& q) { return to_nat(toT(q)); }

// Import/export of raw fractions at the Nat boundary.

inline PQ fraq2pq(const Nat& n, const Nat& d) {
    if (n <= 0 || d <= 0) throw invalid_rational("fraq2pq: components must be positive");
    return pqsimpl(from_nat(n), from_nat(d));
}

inline std::pair<Nat, Nat> pq2fraq(const PQ& pq) {
    return {to_nat(pq.num()), to_nat(pq.den())};
}

// Shared skeleton of addition and subtraction over positive rationals,
// with the usual gcd trick on the denominators.  f is add or sub; a sub
// underflow propagates (callers order the operands first).
template <typename F>
PQ pqop(F&& f, const PQ& xy, const PQ& uv) {
    const Term& x = xy.num();
    const Term& y = xy.den();
    const Term& u = uv.num();
    const Term& v = uv.den();
    Term z = gcd(y, v);
    Term y1 = divide(y, z);
    Term v1 = divide(v, z);
    Term num = f(multiply(x, v1), multiply(u, y1));
    Term den = multiply(z, multiply(y1, v1));
    return pqsimpl(num, den);
}

inline PQ pqadd(const PQ& a, const PQ& b) {
    return pqop([](const Term& x, const Term& y) { return add(x, y); }, a, b);
}

// Pre: a > b under pqcmp.
inline PQ pqsub(const PQ& a, const PQ& b) {
    return pqop([](const Term& x, const Term& y) { return sub(x, y); }, a, b);
}

// Cross-multiplication comparison.
inline Ord3 pqcmp(const PQ& xy, const PQ& uv) {
    return cmp(multiply(xy.num(), uv.den()), multiply(xy.den(), uv.num()));
}

inline PQ pqmultiply(const PQ& a, const PQ& b) {
    return pqsimpl(multiply(a.num(), b.num()), multiply(a.den(), b.den()));
}

inline PQ pqinverse(const PQ& a) { return PQ(a.den(), a.num()); }

inline PQ pqdivide(const PQ& a, const PQ& b) { return pqmultiply(a, pqinverse(b)); }

// Componentwise power; co-primality survives taking powers.
inline PQ pqpow(const PQ& a, const Term& e) {
    return PQ(pow(a.num(), e), pow(a.den(), e));
}

// Signed operations.

inline Q ropposite(const Q& x) {
    if (x.is_zero()) return x;
    return x.is_negative() ? Q::positive(x.magnitude()) : Q::negative(x.magnitude());
}

inline Q radd(const Q& a, const Q& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_negative() && b.is_negative()) {
        return Q::negative(pqadd(a.magnitude(), b.magnitude()));
    }
    if (a.is_positive() && b.is_positive()) {
        return Q::positive(pqadd(a.magnitude(), b.magnitude()));
    }
    if (a.is_positive()) {  // (P, M)
        const PQ& x = a.magnitude();
        const PQ& y = b.magnitude();
        switch (pqcmp(x, y)) {
            case Ord3::lt: return Q::negative(pqsub(y, x));
            case Ord3::eq: return Q::zero();
            default: return Q::positive(pqsub(x, y));
        }
    }
    return ropposite(radd(ropposite(a), ropposite(b)));  // (M, P)
}

inline Q rsub(const Q& a, const Q& b) { return radd(a, ropposite(b)); }

inline Q rmultiply(const Q& a, const Q& b) {
    if (a.is_zero() || b.is_zero()) return Q::zero();
    PQ m = pqmultiply(a.magnitude(), b.magnitude());
    bool negative = a.is_negative() != b.is_negative();
    return negative ? Q::negative(std::move(m)) : Q::positive(std::move(m));
}

inline Q rinverse(const Q& a) {
    if (a.is_zero()) throw invalid_rational("rinverse: zero has no inverse");
    PQ m = pqinverse(a.magnitude());
    return a.is_negative() ? Q::negative(std::move(m)) : Q::positive(std::move(m));
}

inline Q rdivide(const Q& a, const Q& b) {
    if (b.is_zero()) throw division_by_zero();
    return rmultiply(a, rinverse(b));
}

// I/O boundary fraction: signed numerator over a positive denominator.
// Need not be reduced on input.
struct Fraction {
    Nat num;
    Nat den;  // >= 1
};

inline Fraction toFraq(const Q& q) {
    if (q.is_zero()) return {Nat(0), Nat(1)};
    auto [n, d] = pq2fraq(q.magnitude());
    return {q.is_negative() ? -n : n, d};
}

// Fraction -> canonical Q.  A negative denominator moves its sign to the
// numerator; a zero denominator is rejected.
inline Q from_fraq(const Fraction& f) {
    Nat n = f.num;
    Nat d = f.den;
    if (d == 0) throw invalid_rational("fraction: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (n == 0) return Q::zero();
    bool negative = n < 0;
    PQ pq = fraq2pq(negative ? Nat(-n) : n, d);
    return negative ? Q::negative(std::move(pq)) : Q::positive(std::move(pq));
}

// Text format: optional leading '-', decimal numerator, optionally "/" and a
// decimal denominator (absent means 1).
inline Fraction parse_fraction(std::string_view s) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < s.size() && s[pos] == '-') {
        negative = true;
        ++pos;
    }
    std::size_t num_start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == num_start) throw parse_error(pos, "decimal digits");
    Nat num = parse_nat(s.substr(num_start, pos - num_start));
    Nat den = 1;
    if (pos < s.size()) {
        if (s[pos] != '/') throw parse_error(pos, "'/' or end of input");
        ++pos;
        std::size_t den_start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == den_start || pos != s.size()) {
            throw parse_error(pos, "decimal digits");
        }
        den = parse_nat(s.substr(den_start));
    }
    return {negative ? Nat(-num) : num, den};
}

// Canonical output: reduced, sign on the numerator, denominator always
// printed.
inline std::string to_string(const Fraction& f) {
    return f.num.str() + "/" + f.den.str();
}

inline std::string to_string(const Q& q) { return to_string(toFraq(q)); }

}  // namespace treenum
