#include <catch_amalgamated.hpp>

#include "treenum/algebras.hpp"
#include "treenum/arith.hpp"
#include "treenum/bridge.hpp"

#include "support.hpp"

using namespace treenum;
using testsupport::Rng;

namespace {

UTerm u_of(unsigned n) {
    UTerm u;
    for (unsigned i = 0; i < n; ++i) u = UTerm::successor(std::move(u));
    return u;
}

}  // namespace

TEST_CASE("fold_magma identity and leaf count") {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        Term x = testsupport::random_term(rng);
        Term rebuilt =
            fold_magma(x, Term::leaf(), [](Term l, Term r) { return Term::cell(l, r); });
        CHECK(rebuilt == x);
    }
    Term two = parse_term("C(C(T,T),T)");
    auto leaves = fold_magma(two, 1u, [](unsigned a, unsigned b) { return a + b; });
    CHECK(leaves == 3);
}

TEST_CASE("fold_magma denotation equals the bridge") {
    Rng rng(32);
    auto denote = [](Nat a, Nat b) { return (Nat(1) << a.convert_to<unsigned>()) * (2 * b + 1); };
    for (int i = 0; i < 1000; ++i) {
        Term x = from_nat(testsupport::random_nat(rng, 48));
        CHECK(fold_magma(x, Nat(0), denote) == to_nat(x));
    }
}

TEST_CASE("fold_unary") {
    CHECK(fold_unary(u_of(2), 0, [](int n) { return n + 1; }) == 2);
    CHECK(fold_unary(u_of(3), Term::leaf(), [](Term x) { return succ(x); }) ==
          parse_term("C(T,C(T,T))"));
    CHECK(fold_unary(UTerm::zero(), 42, [](int n) { return n + 1; }) == 42);
}

TEST_CASE("fold_binary") {
    BTerm ib = BTerm::ib(BTerm::empty());
    auto o_fn = [](Nat n) { return 2 * n + 1; };
    auto i_fn = [](Nat n) { return 2 * n + 2; };
    CHECK(fold_binary(ib, Nat(0), o_fn, i_fn) == 2);
    CHECK(fold_binary(BTerm::ob(BTerm::ib(BTerm::empty())), Nat(0), o_fn, i_fn) == 5);
    CHECK(to_string(BTerm::ob(BTerm::ib(BTerm::empty()))) == "oi");
}

TEST_CASE("fold determinism") {
    Rng rng(33);
    for (int i = 0; i < 1000; ++i) {
        Term x = testsupport::random_term(rng);
        auto count = [](std::size_t a, std::size_t b) { return a + b + 1; };
        CHECK(fold_magma(x, std::size_t{0}, count) == fold_magma(x, std::size_t{0}, count));
    }
}

TEST_CASE("term/binary bijection") {
    CHECK(t_to_b(Term::leaf()) == BTerm::empty());
    CHECK(t_to_b(parse_term("C(T,C(T,T))")) == BTerm::ob(BTerm::ob(BTerm::empty())));
    Rng rng(34);
    for (int i = 0; i < 10000; ++i) {
        Term x = testsupport::random_term(rng);
        CHECK(b_to_t(t_to_b(x)) == x);
    }
}

TEST_CASE("binary denotation agrees with the bridge along b_to_t") {
    Rng rng(35);
    auto o_fn = [](Nat n) { return 2 * n + 1; };
    auto i_fn = [](Nat n) { return 2 * n + 2; };
    for (int i = 0; i < 1000; ++i) {
        Term x = from_nat(testsupport::random_nat(rng, 40));
        BTerm b = t_to_b(x);
        CHECK(fold_binary(b, Nat(0), o_fn, i_fn) == to_nat(b_to_t(b)));
    }
}

TEST_CASE("term/unary bijection") {
    CHECK(u_to_t(UTerm::zero()) == Term::leaf());
    CHECK(t_to_u(one()) == u_of(1));
    CHECK(to_string(u_of(3)) == "S^3");
    for (unsigned n = 0; n <= 1000; ++n) {
        CHECK(u_to_t(t_to_u(from_nat(n))) == from_nat(n));
    }
    CHECK_THROWS_AS(t_to_u(from_nat(5'000'000)), conversion_overflow);
    CHECK_THROWS_AS(t_to_u(from_nat(10), 5), conversion_overflow);
}

TEST_CASE("all conversion arrows commute") {
    for (unsigned n = 0; n <= 1000; ++n) {
        Term t = from_nat(n);
        CHECK(to_nat(t) == n);
        CHECK(to_nat(b_to_t(t_to_b(t))) == n);
        CHECK(to_nat(u_to_t(t_to_u(t))) == n);
        CHECK(t_to_b(u_to_t(t_to_u(t))) == t_to_b(t));
    }
}
