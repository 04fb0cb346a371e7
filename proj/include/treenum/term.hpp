#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treenum/errors.hpp"

namespace treenum {

// Ordered rooted binary trees with empty leaves, used as numerals.
//
// A term is either the leaf T or a cell C(l, r).  The denotation is
//
//   nat(T)       = 0
//   nat(C(x, y)) = 2^nat(x) * (2 * nat(y) + 1)
//
// i.e. the left child is the 2-adic valuation and the right child encodes the
// odd part.  This is a bijection between terms and the naturals, so structural
// equality is value equality and no normalization ever happens.
//
// Terms are immutable and share subtrees through reference counting; all
// operations below are pure.  Chains of 1e5+ nodes are routine, so equality,
// destruction and the digit-wise loops are all iterative.
class Term {
  public:
    Term() noexcept = default;  // the leaf T

    static Term leaf() noexcept { return Term(); }

    static Term cell(Term l, Term r);

    bool is_leaf() const noexcept { return node_ == nullptr; }

    // Pre: !is_leaf().
    const Term& left() const noexcept;
    const Term& right() const noexcept;

    friend bool operator==(const Term& a, const Term& b) {
        std::vector<std::pair<const Term*, const Term*>> work{{&a, &b}};
        while (!work.empty()) {
            auto [x, y] = work.back();
            work.pop_back();
            if (x->node_ == y->node_) continue;  // shared subtree or both T
            if (x->is_leaf() || y->is_leaf()) return false;
            work.emplace_back(&x->left(), &y->left());
            work.emplace_back(&x->right(), &y->right());
        }
        return true;
    }

    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

  private:
    struct Node;

    explicit Term(std::shared_ptr<Node> n) noexcept : node_(std::move(n)) {}

    std::shared_ptr<Node> node_;
};

struct Term::Node {
    Term left;
    Term right;
    Node(Term l, Term r) noexcept : left(std::move(l)), right(std::move(r)) {}

    // Unlink children iteratively so that dropping a long chain does not
    // recurse through ~shared_ptr.
    ~Node() {
        std::vector<std::shared_ptr<Node>> pending;
        pending.push_back(std::move(left.node_));
        pending.push_back(std::move(right.node_));
        while (!pending.empty()) {
            std::shared_ptr<Node> p = std::move(pending.back());
            pending.pop_back();
            if (p && p.use_count() == 1) {
                pending.push_back(std::move(p->left.node_));
                pending.push_back(std::move(p->right.node_));
            }
        }
    }
};

inline Term Term::cell(Term l, Term r) {
    return Term(std::make_shared<Node>(std::move(l), std::move(r)));
}

inline const Term& Term::left() const noexcept { return node_->left; }
inline const Term& Term::right() const noexcept { return node_->right; }

// Three-way comparison verdict; total order lt < eq < gt.
enum class Ord3 { lt, eq, gt };

inline int ord3_to_int(Ord3 o) noexcept {
    switch (o) {
        case Ord3::lt: return -1;
        case Ord3::eq: return 0;
        default: return 1;
    }
}

// The two digits of the bijective base-2 view of a positive term:
// an O digit denotes n -> 2n+1, an I digit denotes n -> 2n+2.
enum class BDigit { o, i };

inline Term one() { return Term::cell(Term::leaf(), Term::leaf()); }

Term succ(const Term& t);
Term pred(const Term& t);

// nat(dbl(t)) = 2 * nat(t).  Pre: t != T.
inline Term dbl(const Term& t) {
    if (t.is_leaf()) throw undefined_on_zero("double");
    return Term::cell(succ(t.left()), t.right());
}

// nat(half(t)) = nat(t) / 2.  Pre: t even and positive.
inline Term half(const Term& t) {
    if (t.is_leaf() || t.left().is_leaf()) throw not_halvable();
    return Term::cell(pred(t.left()), t.right());
}

// nat(succ(t)) = nat(t) + 1.
//
// Case split as in the mutually recursive definition: T -> C(T,T), odd
// C(T,y) -> dbl(succ(y)), even positive -> C(T, half(t)).  The odd chain is
// peeled with a loop; k nested dbl applications collapse to bumping the left
// child of the base result k times.
inline Term succ(const Term& t) {
    std::size_t k = 0;
    Term cur = t;
    while (!cur.is_leaf() && cur.left().is_leaf()) {
        ++k;
        cur = cur.right();
    }
    Term r = cur.is_leaf() ? one() : Term::cell(Term::leaf(), half(cur));
    if (k > 0) {
        Term x = r.left();
        for (std::size_t i = 0; i < k; ++i) x = succ(x);
        r = Term::cell(std::move(x), r.right());
    }
    return r;
}

namespace detail {

// nat(t) as a machine word when it is below 2^62, nullopt otherwise.  The
// depth cap is sound because nat(t) >= 2^(depth-1) for every term of that
// depth, so anything deeper cannot fit anyway.
inline std::optional<std::uint64_t> small_value(const Term& t, unsigned depth = 0) {
    if (t.is_leaf()) return 0;
    if (depth > 64) return std::nullopt;
    auto a = small_value(t.left(), depth + 1);
    if (!a || *a > 61) return std::nullopt;
    auto m = small_value(t.right(), depth + 1);
    if (!m || *m >= (std::uint64_t{1} << (61 - *a))) return std::nullopt;
    return (2 * *m + 1) << *a;
}

}  // namespace detail

// nat(pred(t)) = nat(t) - 1.  Pre: t != T.
//
// pred of an even term is O(pred(half(t))); unfolding the halving chain gives
// pred(C(x, y)) = O^nat(x)(y = T ? T : dbl(y)), so when nat(x) fits a machine
// word the O wrappers are emitted directly.  Otherwise the chain is run as a
// loop, one halving per step.
inline Term pred(const Term& t) {
    if (t.is_leaf()) throw undefined_on_zero("pred");
    std::uint64_t k = 0;
    Term y = t.right();
    if (auto a = detail::small_value(t.left())) {
        k = *a;
    } else {
        Term cur = t;
        while (!cur.left().is_leaf()) {
            ++k;
            cur = half(cur);
        }
        y = cur.right();
    }
    Term r = y.is_leaf() ? Term::leaf() : dbl(y);
    for (; k > 0; --k) r = Term::cell(Term::leaf(), std::move(r));
    return r;
}

// Generalized constructor/view pairs.  Each view is the exact inverse of its
// make on the shapes it matches; absence is a value, not an error.

inline Term make_s(const Term& t) { return succ(t); }

inline std::optional<Term> view_s(const Term& t) {
    if (t.is_leaf()) return std::nullopt;
    return pred(t);
}

inline Term make_d(const Term& t) { return dbl(t); }

// Matches exactly the even positive terms, shape C(C(_,_),_).
inline std::optional<Term> view_d(const Term& t) {
    if (t.is_leaf() || t.left().is_leaf()) return std::nullopt;
    return half(t);
}

// nat(make_o(x)) = 2 * nat(x) + 1.
inline Term make_o(const Term& t) { return Term::cell(Term::leaf(), t); }

inline std::optional<Term> view_o(const Term& t) {
    if (t.is_leaf() || !t.left().is_leaf()) return std::nullopt;
    return t.right();
}

// nat(make_i(x)) = 2 * nat(x) + 2.
inline Term make_i(const Term& t) { return succ(make_o(t)); }

inline std::optional<Term> view_i(const Term& t) {
    if (t.is_leaf() || t.left().is_leaf()) return std::nullopt;
    return pred(half(t));
}

// Pops one bijective base-2 digit: nullopt for T, otherwise the digit and the
// rest of the number.
inline std::optional<std::pair<BDigit, Term>> pop_digit(const Term& t) {
    if (t.is_leaf()) return std::nullopt;
    if (t.left().is_leaf()) return std::make_pair(BDigit::o, t.right());
    return std::make_pair(BDigit::i, pred(half(t)));
}

// Number of C constructors.
inline std::size_t node_count(const Term& t) {
    std::size_t n = 0;
    std::vector<const Term*> work{&t};
    while (!work.empty()) {
        const Term* cur = work.back();
        work.pop_back();
        if (cur->is_leaf()) continue;
        ++n;
        work.push_back(&cur->left());
        work.push_back(&cur->right());
    }
    return n;
}

// Canonical text format, grammar: term := "T" | "C(" term "," term ")".
// Printing emits no whitespace; parsing accepts optional spaces anywhere.

inline std::string to_string(const Term& t) {
    struct Item {
        const char* lit;  // when non-null, literal text to emit
        const Term* term;
    };
    std::string out;
    std::vector<Item> work{{nullptr, &t}};
    while (!work.empty()) {
        Item it = work.back();
        work.pop_back();
        if (it.lit != nullptr) {
            out += it.lit;
            continue;
        }
        if (it.term->is_leaf()) {
            out += 'T';
        } else {
            out += "C(";
            work.push_back({")", nullptr});
            work.push_back({nullptr, &it.term->right()});
            work.push_back({",", nullptr});
            work.push_back({nullptr, &it.term->left()});
        }
    }
    return out;
}

inline Term parse_term(std::string_view text) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    auto expect = [&](char c, const char* what) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c) throw parse_error(pos, what);
        ++pos;
    };

    struct Frame {
        Term left;
        bool have_left = false;
    };
    std::vector<Frame> stack;
    Term value;
    bool have_value = false;

    for (;;) {
        if (!have_value) {
            skip_ws();
            if (pos >= text.size()) throw parse_error(pos, "'T' or 'C'");
            char c = text[pos];
            if (c == 'T') {
                ++pos;
                value = Term::leaf();
                have_value = true;
            } else if (c == 'C') {
                ++pos;
                expect('(', "'('");
                stack.emplace_back();
            } else {
                throw parse_error(pos, "'T' or 'C'");
            }
        } else {
            if (stack.empty()) break;
            Frame& top = stack.back();
            if (!top.have_left) {
                top.left = std::move(value);
                top.have_left = true;
                have_value = false;
                expect(',', "','");
            } else {
                expect(')', "')'");
                value = Term::cell(std::move(top.left), std::move(value));
                stack.pop_back();
            }
        }
    }
    skip_ws();
    if (pos != text.size()) throw parse_error(pos, "end of input");
    return value;
}

}  // namespace treenum
