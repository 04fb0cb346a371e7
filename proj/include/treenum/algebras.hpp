#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "treenum/term.hpp"

namespace treenum {

// Reference free algebras.  UTerm is the one-successor (Peano) algebra,
// BTerm the two-successor (bijective base-2) algebra.  Neither carries any
// arithmetic of its own; they exist as isomorphism witnesses and cross-check
// oracles for Term.

// U | Su(prev).  nat(U) = 0, nat(Su(x)) = nat(x) + 1.
class UTerm {
  public:
    UTerm() noexcept = default;  // U

    static UTerm zero() noexcept { return UTerm(); }

    static UTerm successor(UTerm prev);

    bool is_zero() const noexcept { return node_ == nullptr; }

    // Pre: !is_zero().
    const UTerm& prev() const noexcept;

    friend bool operator==(const UTerm& a, const UTerm& b) {
        const UTerm* x = &a;
        const UTerm* y = &b;
        while (x->node_ != y->node_) {
            if (x->is_zero() || y->is_zero()) return false;
            x = &x->prev();
            y = &y->prev();
        }
        return true;
    }

    friend bool operator!=(const UTerm& a, const UTerm& b) { return !(a == b); }

  private:
    struct Node;

    explicit UTerm(std::shared_ptr<Node> n) noexcept : node_(std::move(n)) {}

    std::shared_ptr<Node> node_;
};

struct UTerm::Node {
    UTerm prev;
    explicit Node(UTerm p) noexcept : prev(std::move(p)) {}
    ~Node() {
        std::shared_ptr<Node> chain = std::move(prev.node_);
        while (chain && chain.use_count() == 1) {
            chain = std::move(chain->prev.node_);
        }
    }
};

inline UTerm UTerm::successor(UTerm prev) {
    return UTerm(std::make_shared<Node>(std::move(prev)));
}

inline const UTerm& UTerm::prev() const noexcept { return node_->prev; }

// B | Ob(rest) | Ib(rest).  nat(B) = 0, nat(Ob(x)) = 2*nat(x) + 1,
// nat(Ib(x)) = 2*nat(x) + 2.  The outermost digit is the least significant.
class BTerm {
  public:
    BTerm() noexcept = default;  // B

    static BTerm empty() noexcept { return BTerm(); }

    static BTerm ob(BTerm rest);
    static BTerm ib(BTerm rest);

    bool is_empty() const noexcept { return node_ == nullptr; }

    // Pre: !is_empty().
    BDigit digit() const noexcept;
    const BTerm& rest() const noexcept;

    friend bool operator==(const BTerm& a, const BTerm& b) {
        const BTerm* x = &a;
        const BTerm* y = &b;
        while (x->node_ != y->node_) {
            if (x->is_empty() || y->is_empty()) return false;
            if (x->digit() != y->digit()) return false;
            x = &x->rest();
            y = &y->rest();
        }
        return true;
    }

    friend bool operator!=(const BTerm& a, const BTerm& b) { return !(a == b); }

  private:
    struct Node;

    explicit BTerm(std::shared_ptr<Node> n) noexcept : node_(std::move(n)) {}

    std::shared_ptr<Node> node_;
};

struct BTerm::Node {
    BDigit digit;
    BTerm rest;
    Node(BDigit d, BTerm r) noexcept : digit(d), rest(std::move(r)) {}
    ~Node() {
        std::shared_ptr<Node> chain = std::move(rest.node_);
        while (chain && chain.use_count() == 1) {
            chain = std::move(chain->rest.node_);
        }
    }
};

inline BTerm BTerm::ob(BTerm rest) {
    return BTerm(std::make_shared<Node>(BDigit::o, std::move(rest)));
}

inline BTerm BTerm::ib(BTerm rest) {
    return BTerm(std::make_shared<Node>(BDigit::i, std::move(rest)));
}

inline BDigit BTerm::digit() const noexcept { return node_->digit; }
inline const BTerm& BTerm::rest() const noexcept { return node_->rest; }

// The unique morphism out of the term magma: f(T) = leaf,
// f(C(x,y)) = node(f(x), f(y)).  Post-order traversal with an explicit stack.
template <typename X, typename NodeFn>
X fold_magma(const Term& t, const X& leaf, NodeFn&& node) {
    struct Frame {
        Term term;
        int stage;
    };
    std::vector<Frame> frames{{t, 0}};
    std::vector<X> values;
    while (!frames.empty()) {
        Frame& f = frames.back();
        if (f.term.is_leaf()) {
            values.push_back(leaf);
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
            X r = std::move(values.back());
            values.pop_back();
            X l = std::move(values.back());
            values.pop_back();
            values.push_back(node(std::move(l), std::move(r)));
            frames.pop_back();
        }
    }
    return std::move(values.back());
}

// The unique morphism out of the Peano algebra: f(U) = base,
// f(Su(x)) = step(f(x)).
template <typename X, typename StepFn>
X fold_unary(const UTerm& u, X base, StepFn&& step) {
    std::size_t n = 0;
    for (const UTerm* cur = &u; !cur->is_zero(); cur = &cur->prev()) ++n;
    X acc = std::move(base);
    for (std::size_t i = 0; i < n; ++i) acc = step(std::move(acc));
    return acc;
}

// The unique morphism out of the two-successor algebra: f(B) = base,
// f(Ob(x)) = o_fn(f(x)), f(Ib(x)) = i_fn(f(x)).
template <typename X, typename OFn, typename IFn>
X fold_binary(const BTerm& b, X base, OFn&& o_fn, IFn&& i_fn) {
    std::vector<BDigit> digits;  // outermost first
    for (const BTerm* cur = &b; !cur->is_empty(); cur = &cur->rest()) {
        digits.push_back(cur->digit());
    }
    X acc = std::move(base);
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        acc = (*it == BDigit::o) ? o_fn(std::move(acc)) : i_fn(std::move(acc));
    }
    return acc;
}

// Bijections Term <-> BTerm through the O/I view; both preserve nat.

inline BTerm t_to_b(const Term& t) {
    std::vector<BDigit> digits;  // least significant first
    Term cur = t;
    while (auto d = pop_digit(cur)) {
        digits.push_back(d->first);
        cur = std::move(d->second);
    }
    BTerm b;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        b = (*it == BDigit::o) ? BTerm::ob(std::move(b)) : BTerm::ib(std::move(b));
    }
    return b;
}

inline Term b_to_t(const BTerm& b) {
    return fold_binary(
        b, Term::leaf(), [](Term x) { return make_o(x); }, [](Term x) { return make_i(x); });
}

inline constexpr std::size_t default_unary_bound = 1'000'000;

// Term -> UTerm, guarded: the unary representation has nat(t) nodes, so
// refuse anything past `bound`.
inline UTerm t_to_u(const Term& t, std::size_t bound = default_unary_bound) {
    std::size_t n = 0;
    Term cur = t;
    while (!cur.is_leaf()) {
        if (++n > bound) {
            throw conversion_overflow("t_to_u: value exceeds unary size bound");
        }
        cur = pred(cur);
    }
    UTerm u;
    for (std::size_t i = 0; i < n; ++i) u = UTerm::successor(std::move(u));
    return u;
}

inline Term u_to_t(const UTerm& u) {
    return fold_unary(u, Term::leaf(), [](Term x) { return succ(x); });
}

// Debug renderings.  "S^n" for unary terms; digit string over {o,i} with the
// outermost (least significant) digit first for binary terms.

inline std::string to_string(const UTerm& u) {
    std::size_t n = 0;
    for (const UTerm* cur = &u; !cur->is_zero(); cur = &cur->prev()) ++n;
    return "S^" + std::to_string(n);
}

inline std::string to_string(const BTerm& b) {
    std::string out;
    for (const BTerm* cur = &b; !cur->is_empty(); cur = &cur->rest()) {
        out += (cur->digit() == BDigit::o) ? 'o' : 'i';
    }
    return out;
}

}  // namespace treenum
