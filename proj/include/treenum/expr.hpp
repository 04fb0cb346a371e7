#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "treenum/arith.hpp"
#include "treenum/bridge.hpp"
#include "treenum/rational.hpp"

namespace treenum {

// Expression front end for the CLI: arbitrary-length integer literals, the
// operators + - * / ^ (with ^ right-associative and binding tighter than
// unary minus), parentheses, and the integer functions gcd, lcm, div, mod,
// cmp.  Evaluation happens over Q; the integer functions operate on terms and
// reject negative or fractional arguments.

struct Expr {
    using Ptr = std::shared_ptr<const Expr>;

    struct Lit {
        Nat value;
    };
    struct Neg {
        Ptr operand;
    };
    struct Bin {
        char op;  // one of + - * / ^
        Ptr lhs;
        Ptr rhs;
    };
    struct Call {
        std::string name;
        std::vector<Ptr> args;
    };

    std::variant<Lit, Neg, Bin, Call> node;

    static Ptr lit(Nat v) { return std::make_shared<Expr>(Expr{Lit{std::move(v)}}); }
    static Ptr neg(Ptr e) { return std::make_shared<Expr>(Expr{Neg{std::move(e)}}); }
    static Ptr bin(char op, Ptr l, Ptr r) {
        return std::make_shared<Expr>(Expr{Bin{op, std::move(l), std::move(r)}});
    }
    static Ptr call(std::string name, std::vector<Ptr> args) {
        return std::make_shared<Expr>(Expr{Call{std::move(name), std::move(args)}});
    }
};

inline bool expr_equal(const Expr::Ptr& a, const Expr::Ptr& b) {
    if (a->node.index() != b->node.index()) return false;
    if (const auto* la = std::get_if<Expr::Lit>(&a->node)) {
        return la->value == std::get<Expr::Lit>(b->node).value;
    }
    if (const auto* na = std::get_if<Expr::Neg>(&a->node)) {
        return expr_equal(na->operand, std::get<Expr::Neg>(b->node).operand);
    }
    if (const auto* ba = std::get_if<Expr::Bin>(&a->node)) {
        const auto& bb = std::get<Expr::Bin>(b->node);
        return ba->op == bb.op && expr_equal(ba->lhs, bb.lhs) && expr_equal(ba->rhs, bb.rhs);
    }
    const auto& ca = std::get<Expr::Call>(a->node);
    const auto& cb = std::get<Expr::Call>(b->node);
    if (ca.name != cb.name || ca.args.size() != cb.args.size()) return false;
    for (std::size_t i = 0; i < ca.args.size(); ++i) {
        if (!expr_equal(ca.args[i], cb.args[i])) return false;
    }
    return true;
}

// Fully parenthesized rendering; parse(print(e)) == e.
inline std::string to_string(const Expr::Ptr& e) {
    if (const auto* l = std::get_if<Expr::Lit>(&e->node)) return l->value.str();
    if (const auto* n = std::get_if<Expr::Neg>(&e->node)) {
        return "(-" + to_string(n->operand) + ")";
    }
    if (const auto* b = std::get_if<Expr::Bin>(&e->node)) {
        return "(" + to_string(b->lhs) + " " + std::string(1, b->op) + " " +
               to_string(b->rhs) + ")";
    }
    const auto& c = std::get<Expr::Call>(e->node);
    std::string out = c.name + "(";
    for (std::size_t i = 0; i < c.args.size(); ++i) {
        if (i > 0) out += ", ";
        out += to_string(c.args[i]);
    }
    return out + ")";
}

namespace detail {

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr::Ptr parse() {
        Expr::Ptr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) throw parse_error(pos_, "operator or end of input");
        return e;
    }

  private:
    // sum  := product (('+' | '-') product)*
    // product := unary (('*' | '/') unary)*
    // unary := '-' unary | power
    // power := primary ('^' unary)?          -- right-associative
    // primary := INT | '(' sum ')' | IDENT '(' sum (',' sum)* ')'

    Expr::Ptr parse_sum() {
        Expr::Ptr e = parse_product();
        for (;;) {
            skip_ws();
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                char op = text_[pos_++];
                e = Expr::bin(op, std::move(e), parse_product());
            } else {
                return e;
            }
        }
    }

    Expr::Ptr parse_product() {
        Expr::Ptr e = parse_unary();
        for (;;) {
            skip_ws();
            if (pos_ < text_.size() && (text_[pos_] == '*' || text_[pos_] == '/')) {
                char op = text_[pos_++];
                e = Expr::bin(op, std::move(e), parse_unary());
            } else {
                return e;
            }
        }
    }

    Expr::Ptr parse_unary() {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '-') {
            ++pos_;
            return Expr::neg(parse_unary());
        }
        return parse_power();
    }

    Expr::Ptr parse_power() {
        Expr::Ptr base = parse_primary();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            return Expr::bin('^', std::move(base), parse_unary());
        }
        return base;
    }

    Expr::Ptr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw parse_error(pos_, "number, '(' or function name");
        char c = text_[pos_];
        if (c >= '0' && c <= '9') {
            std::size_t start = pos_;
            while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
            return Expr::lit(parse_nat(text_.substr(start, pos_ - start)));
        }
        if (c == '(') {
            ++pos_;
            Expr::Ptr e = parse_sum();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            std::string name(text_.substr(start, pos_ - start));
            skip_ws();
            expect('(');
            std::vector<Expr::Ptr> args;
            args.push_back(parse_sum());
            for (;;) {
                skip_ws();
                if (pos_ < text_.size() && text_[pos_] == ',') {
                    ++pos_;
                    args.push_back(parse_sum());
                } else {
                    break;
                }
            }
            expect(')');
            return Expr::call(std::move(name), std::move(args));
        }
        throw parse_error(pos_, "number, '(' or function name");
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            throw parse_error(pos_, std::string("'") + c + "'");
        }
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// Extracts the term of a non-negative integer rational.
inline Term require_nat_term(const Q& q, const std::string& op) {
    if (q.is_zero()) return Term::leaf();
    if (q.is_negative()) throw eval_error(op, "argument must be non-negative");
    if (q.magnitude().den() != one()) throw eval_error(op, "argument must be an integer");
    return q.magnitude().num();
}

inline Q q_from_term(const Term& t) {
    if (t.is_leaf()) return Q::zero();
    return Q::positive(pqsimpl(t, one()));
}

}  // namespace detail

inline Expr::Ptr parse_expr(std::string_view text) { return detail::Parser(text).parse(); }

inline Q eval(const Expr::Ptr& e) {
    if (const auto* l = std::get_if<Expr::Lit>(&e->node)) {
        if (l->value == 0) return Q::zero();
        return Q::positive(fraq2pq(l->value, 1));
    }
    if (const auto* n = std::get_if<Expr::Neg>(&e->node)) {
        return ropposite(eval(n->operand));
    }
    if (const auto* b = std::get_if<Expr::Bin>(&e->node)) {
        Q lhs = eval(b->lhs);
        Q rhs = eval(b->rhs);
        switch (b->op) {
            case '+': return radd(lhs, rhs);
            case '-': return rsub(lhs, rhs);
            case '*': return rmultiply(lhs, rhs);
            case '/': return rdivide(lhs, rhs);
            default: {  // '^'
                if (rhs.is_negative()) throw eval_error("^", "negative exponent");
                Term e2 = detail::require_nat_term(rhs, "^");
                if (lhs.is_zero()) {
                    return e2.is_leaf() ? detail::q_from_term(one()) : Q::zero();
                }
                PQ m = pqpow(lhs.magnitude(), e2);
                // Sign: negative base to an odd exponent stays negative.
                bool odd_exp = !e2.is_leaf() && e2.left().is_leaf();
                bool negative = lhs.is_negative() && odd_exp;
                return negative ? Q::negative(std::move(m)) : Q::positive(std::move(m));
            }
        }
    }
    const auto& c = std::get<Expr::Call>(e->node);
    if (c.name != "gcd" && c.name != "lcm" && c.name != "div" && c.name != "mod" &&
        c.name != "cmp") {
        throw eval_error(c.name, "unknown function");
    }
    if (c.args.size() != 2) throw eval_error(c.name, "expected 2 arguments");
    Term a = detail::require_nat_term(eval(c.args[0]), c.name);
    Term b = detail::require_nat_term(eval(c.args[1]), c.name);
    if (c.name == "gcd") return detail::q_from_term(gcd(a, b));
    if (c.name == "lcm") return detail::q_from_term(lcm(a, b));
    if (c.name == "div") return detail::q_from_term(divide(a, b));
    if (c.name == "mod") return detail::q_from_term(remainder(a, b));
    int verdict = ord3_to_int(cmp(a, b));
    Q v = detail::q_from_term(verdict == 0 ? Term::leaf() : one());
    return verdict < 0 ? ropposite(v) : v;
}

// Structured outcome for CLI consumption: a value or an error with enough
// context to report a position or the failing operation.
struct EvalResult {
    std::optional<Q> value;
    std::string error;           // empty on success
    bool is_parse_error = false;
    std::optional<std::size_t> error_offset;

    bool ok() const noexcept { return value.has_value(); }
};

inline EvalResult evaluate(std::string_view text) {
    EvalResult r;
    try {
        r.value = eval(parse_expr(text));
    } catch (const parse_error& pe) {
        r.error = pe.what();
        r.is_parse_error = true;
        r.error_offset = pe.offset;
    } catch (const error& err) {
        r.error = err.what();
    }
    return r;
}

}  // namespace treenum
