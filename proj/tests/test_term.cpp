#include <optional>

#include <catch_amalgamated.hpp>

#include "treenum/bridge.hpp"
#include "treenum/term.hpp"

#include "support.hpp"

using namespace treenum;
using testsupport::Rng;

namespace {

Term t(const char* text) { return parse_term(text); }

// Oracle denotation; skips samples whose exponents blow the conversion
// budget (the structural generator can produce towers).
std::optional<Nat> oracle(const Term& term) {
    try {
        return to_nat(term);
    } catch (const conversion_overflow&) {
        return std::nullopt;
    }
}

}  // namespace

TEST_CASE("succ base cases") {
    CHECK(succ(Term::leaf()) == t("C(T,T)"));
    CHECK(succ(t("C(T,T)")) == t("C(C(T,T),T)"));
    CHECK(succ(t("C(C(T,T),T)")) == t("C(T,C(T,T))"));
}

TEST_CASE("pred base cases") {
    CHECK(pred(t("C(T,T)")) == Term::leaf());
    CHECK(pred(t("C(T,C(T,T))")) == t("C(C(T,T),T)"));
    CHECK_THROWS_AS(pred(Term::leaf()), undefined_on_zero);
}

TEST_CASE("pred of succ is identity") {
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        Term x = testsupport::random_term(rng);
        CHECK(pred(succ(x)) == x);
        if (!x.is_leaf()) CHECK(succ(pred(x)) == x);
    }
}

TEST_CASE("double and half") {
    CHECK(dbl(t("C(T,T)")) == t("C(C(T,T),T)"));
    CHECK(dbl(t("C(C(T,T),T)")) == Term::cell(succ(t("C(T,T)")), Term::leaf()));
    CHECK(half(t("C(C(T,T),T)")) == t("C(T,T)"));
    CHECK_THROWS_AS(dbl(Term::leaf()), undefined_on_zero);
    CHECK_THROWS_AS(half(t("C(T,T)")), not_halvable);
    CHECK_THROWS_AS(half(Term::leaf()), not_halvable);

    Rng rng(12);
    for (int i = 0; i < 1000; ++i) {
        Term x = testsupport::random_positive_term(rng);
        CHECK(half(dbl(x)) == x);
    }
}

TEST_CASE("S view") {
    CHECK(!view_s(Term::leaf()).has_value());
    CHECK(view_s(t("C(T,T)")) == Term::leaf());
    Rng rng(13);
    for (int i = 0; i < 1000; ++i) {
        Term x = testsupport::random_term(rng);
        CHECK(view_s(make_s(x)) == x);
    }
}

TEST_CASE("D view") {
    CHECK(!view_d(t("C(T,T)")).has_value());
    CHECK(view_d(t("C(C(T,T),T)")) == t("C(T,T)"));
    Rng rng(14);
    for (int i = 0; i < 500; ++i) {
        Term x = testsupport::random_positive_term(rng);
        CHECK(view_d(make_d(x)) == x);
    }
}

TEST_CASE("O view") {
    CHECK(make_o(Term::leaf()) == t("C(T,T)"));
    CHECK(view_o(t("C(T,C(T,T))")) == t("C(T,T)"));
    CHECK(!view_o(t("C(C(T,T),T)")).has_value());
    CHECK(!view_o(Term::leaf()).has_value());
}

TEST_CASE("I view") {
    CHECK(make_i(Term::leaf()) == t("C(C(T,T),T)"));
    CHECK(!view_i(Term::leaf()).has_value());
    CHECK(!view_i(t("C(T,C(T,T))")).has_value());
    Rng rng(15);
    for (int i = 0; i < 1000; ++i) {
        Term x = testsupport::random_term(rng);
        CHECK(view_i(make_i(x)) == x);
    }
}

TEST_CASE("view/make coherence backwards") {
    Rng rng(16);
    for (int i = 0; i < 500; ++i) {
        Term y = testsupport::random_term(rng);
        if (auto x = view_s(y)) CHECK(make_s(*x) == y);
        if (auto x = view_d(y)) CHECK(make_d(*x) == y);
        if (auto x = view_o(y)) CHECK(make_o(*x) == y);
        if (auto x = view_i(y)) CHECK(make_i(*x) == y);
    }
}

TEST_CASE("every term is zero, odd or even positive") {
    Rng rng(17);
    for (int i = 0; i < 2000; ++i) {
        Term x = testsupport::random_term(rng);
        int matches = (x.is_leaf() ? 1 : 0) + (view_o(x) ? 1 : 0) + (view_i(x) ? 1 : 0);
        CHECK(matches == 1);
    }
}

TEST_CASE("denotation homomorphisms") {
    Rng rng(18);
    int checked = 0;
    while (checked < 10000) {
        Term x = testsupport::random_term(rng, 12);
        auto n = oracle(x);
        if (!n) continue;
        ++checked;
        CHECK(to_nat(succ(x)) == *n + 1);
        CHECK(to_nat(make_o(x)) == 2 * *n + 1);
        CHECK(to_nat(make_i(x)) == 2 * *n + 2);
        if (!x.is_leaf()) CHECK(to_nat(dbl(x)) == 2 * *n);
    }
}

TEST_CASE("denotation is injective on random terms") {
    Rng rng(19);
    for (int i = 0; i < 10000; ++i) {
        Term x = testsupport::random_term(rng, 12);
        Term y = testsupport::random_term(rng, 12);
        auto nx = oracle(x);
        auto ny = oracle(y);
        if (!nx || !ny) continue;
        CHECK((x == y) == (*nx == *ny));
    }
}

TEST_CASE("term text round trip") {
    Rng rng(20);
    for (int i = 0; i < 500; ++i) {
        Term x = testsupport::random_term(rng);
        CHECK(parse_term(to_string(x)) == x);
    }
    CHECK(parse_term("C( T , C(T,T) )") == t("C(T,C(T,T))"));
    CHECK_THROWS_AS(parse_term("C(T)"), parse_error);
    CHECK_THROWS_AS(parse_term("C(T,T) junk"), parse_error);
    CHECK_THROWS_AS(parse_term(""), parse_error);
}
