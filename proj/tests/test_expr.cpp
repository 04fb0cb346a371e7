#include <string>

#include <catch_amalgamated.hpp>

#include "treenum/expr.hpp"

#include "support.hpp"

using namespace treenum;
using testsupport::Rng;

namespace {

std::string eval_str(const std::string& text) {
    EvalResult r = evaluate(text);
    REQUIRE(r.ok());
    return to_string(*r.value);
}

Expr::Ptr random_expr(Rng& rng, unsigned depth) {
    if (depth == 0 || rng() % 4 == 0) {
        return Expr::lit(Nat(rng() % 1000));
    }
    switch (rng() % 6) {
        case 0: return Expr::neg(random_expr(rng, depth - 1));
        case 1:
            return Expr::call(rng() % 2 ? "gcd" : "lcm",
                              {random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
        default: {
            const char ops[] = {'+', '-', '*', '/', '^'};
            return Expr::bin(ops[rng() % 5], random_expr(rng, depth - 1),
                             random_expr(rng, depth - 1));
        }
    }
}

}  // namespace

TEST_CASE("parse shapes") {
    Expr::Ptr e = parse_expr("1/2 + 1/3");
    const auto& add = std::get<Expr::Bin>(e->node);
    CHECK(add.op == '+');
    CHECK(std::get<Expr::Bin>(add.lhs->node).op == '/');

    Expr::Ptr p = parse_expr("2^10");
    const auto& pw = std::get<Expr::Bin>(p->node);
    CHECK(pw.op == '^');
    CHECK(std::get<Expr::Lit>(pw.lhs->node).value == 2);
    CHECK(std::get<Expr::Lit>(pw.rhs->node).value == 10);
}

TEST_CASE("precedence") {
    CHECK(eval_str("1 + 2 * 3") == "7/1");
    CHECK(eval_str("2^3^2") == "512/1");      // right-assoc
    CHECK(eval_str("-2^2") == "-4/1");        // ^ binds tighter than unary minus
    CHECK(eval_str("(1 + 2) * 3") == "9/1");
    CHECK(eval_str("1 - 2 - 3") == "-4/1");
}

TEST_CASE("parse errors carry offsets") {
    EvalResult r = evaluate("gcd(6,)");
    REQUIRE(!r.ok());
    CHECK(r.is_parse_error);
    CHECK(r.error_offset == 6);

    CHECK_THROWS_AS(parse_expr(""), parse_error);
    CHECK_THROWS_AS(parse_expr("1 +"), parse_error);
    CHECK_THROWS_AS(parse_expr("(1"), parse_error);
    CHECK_THROWS_AS(parse_expr("1 2"), parse_error);
}

TEST_CASE("eval") {
    CHECK(eval_str("1/2 + 1/3") == "5/6");
    CHECK(eval_str("2^10 / 3") == "1024/3");
    CHECK(eval_str("gcd(6, 4)") == "2/1");
    CHECK(eval_str("lcm(4, 6)") == "12/1");
    CHECK(eval_str("div(42, 5)") == "8/1");
    CHECK(eval_str("mod(42, 5)") == "2/1");
    CHECK(eval_str("cmp(3, 5)") == "-1/1");
    CHECK(eval_str("cmp(5, 5)") == "0/1");
    CHECK(eval_str("cmp(7, 5)") == "1/1");
    CHECK(eval_str("0^0") == "1/1");
    CHECK(eval_str("(-2)^3") == "-8/1");
    CHECK(eval_str("(2/3)^2") == "4/9");
}

TEST_CASE("eval errors") {
    CHECK(!evaluate("1/0").ok());
    CHECK(!evaluate("2^(0-3)").ok());
    CHECK(!evaluate("2^(1/2)").ok());
    CHECK(!evaluate("gcd(1/2, 3)").ok());
    CHECK(!evaluate("gcd(0-1, 3)").ok());
    CHECK(!evaluate("div(5, 0)").ok());
    CHECK(!evaluate("frob(1, 2)").ok());
    EvalResult div0 = evaluate("1/0");
    CHECK(!div0.is_parse_error);
}

TEST_CASE("print/parse round trip") {
    Rng rng(81);
    for (int i = 0; i < 1000; ++i) {
        Expr::Ptr e = random_expr(rng, 4);
        CHECK(expr_equal(parse_expr(to_string(e)), e));
    }
}

TEST_CASE("delegated commutativity") {
    Rng rng(82);
    for (int i = 0; i < 200; ++i) {
        std::string a = std::to_string(rng() % 1000) + "/" + std::to_string(1 + rng() % 99);
        std::string b = std::to_string(rng() % 1000) + "/" + std::to_string(1 + rng() % 99);
        CHECK(eval_str(a + " + " + b) == eval_str(b + " + " + a));
    }
}
