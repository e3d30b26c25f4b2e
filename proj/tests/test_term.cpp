#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcka/laws.hpp"
#include "pcka/term.hpp"

using namespace pcka;

namespace {
AlphabetPtr vending_alpha() {
    return make_alphabet({"coin", "kick", "tea", "fail"}, {"stuck"});
}
}

TEST_CASE("parsing the user and machine expressions") {
    auto alpha = vending_alpha();
    auto user = parse_expr("coin . (kick . (kick . fail* + tea) + tea)", alpha);
    REQUIRE(user);
    CHECK(user->kind == Term::Kind::seq);
    CHECK(user->lhs->kind == Term::Kind::act);
    CHECK(user->lhs->name == "coin");

    auto m = parse_expr("(stuck . kick +[1/5] tea . 0)* . 0", alpha);
    REQUIRE(m);
    CHECK(m->kind == Term::Kind::seq);
    CHECK(m->lhs->kind == Term::Kind::star);
    CHECK(m->lhs->lhs->kind == Term::Kind::pchoice);
    CHECK(m->lhs->lhs->prob == rat(1, 5));
    CHECK(m->rhs->kind == Term::Kind::zero);
}

TEST_CASE("precedence: star, then seq, then par, then choice") {
    auto alpha = make_alphabet({"a", "b", "c"});
    auto t = parse_expr("a . b* + c", alpha);
    CHECK(t->kind == Term::Kind::plus);
    CHECK(t->lhs->kind == Term::Kind::seq);
    CHECK(t->lhs->rhs->kind == Term::Kind::star);

    auto q = parse_expr("a ||{a} b + c", alpha);
    CHECK(q->kind == Term::Kind::plus);
    CHECK(q->lhs->kind == Term::Kind::par);

    auto r = parse_expr("a . b ||{a,b} c", alpha);
    CHECK(r->kind == Term::Kind::par);
    CHECK(r->lhs->kind == Term::Kind::seq);
}

TEST_CASE("parse errors carry positions") {
    auto alpha = make_alphabet({"a", "b", "c"});
    CHECK_THROWS_AS(parse_expr("a + b +[1/2] c", alpha), ParseError);  // mixed levels
    CHECK_THROWS_AS(parse_expr("a . d", alpha), ParseError);           // undeclared
    CHECK_THROWS_AS(parse_expr("a +[5/4] b", alpha), ParseError);      // p > 1
    CHECK_THROWS_AS(parse_expr("a ||{} (", alpha), ParseError);
    CHECK_THROWS_AS(parse_expr("run{}", alpha), ParseError);           // empty run
    CHECK_THROWS_AS(parse_expr("tau", alpha), ParseError);
    CHECK_THROWS_AS(parse_expr("a || b", alpha), ParseError);          // frame required
    try {
        parse_expr("a +\n b +[1/2] c", alpha);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    // Parenthesized mixing is fine.
    CHECK_NOTHROW(parse_expr("(a + b) +[1/2] c", alpha));
    CHECK_NOTHROW(parse_expr("a +[1/4] b +[1/2] c", alpha));  // one operator kind
}

TEST_CASE("pretty-printed terms re-parse to the same tree") {
    auto alpha = default_law_alphabet();
    auto terms = random_terms(20240812, 500, 4, alpha, 60);
    for (const auto& t : terms) {
        std::string text = pretty(t);
        TermPtr back = parse_expr(text, alpha);
        CHECK_MESSAGE(structural_equal(t, back), "round trip failed on: ", text);
    }
    CHECK(pretty(t_zero()) == "0");
    CHECK(pretty(t_one()) == "1");
    // Parentheses appear exactly where precedence demands.
    auto t1 = t_seq(t_plus(t_act("a"), t_act("b")), t_act("c"));
    CHECK(pretty(t1) == "(a + b) . c");
    auto t2 = t_plus(t_act("a"), t_plus(t_act("b"), t_act("c")));
    CHECK(pretty(t2) == "a + (b + c)");
    auto t3 = t_plus(t_plus(t_act("a"), t_act("b")), t_act("c"));
    CHECK(pretty(t3) == "a + b + c");
    auto t4 = t_star(t_seq(t_act("a"), t_act("b")));
    CHECK(pretty(t4) == "(a . b)*");
}

TEST_CASE("term files: header plus definitions") {
    TermFile f = parse_term_file(
        "external a b\ninternal i\n# comment\ndef X = a . b\ndef Y = b + i\n");
    CHECK(f.defs.size() == 2);
    CHECK(f.find("X"));
    CHECK(!f.find("missing"));
    CHECK_THROWS_AS(parse_term_file("def X = a\nexternal a\n"), ParseError);
}

TEST_CASE("compilation mirrors the constructions") {
    auto alpha = default_law_alphabet();
    CHECK(compile(t_one(), alpha).finals().size() == 1);
    CHECK(compile(t_zero(), alpha).transitions().empty());

    // Compositionality: compiling Plus(s,t) equals plus(compile s, compile t)
    // in shape (fresh root, operand counts).
    auto s = t_seq(t_act("a"), t_act("b"));
    auto t = t_star(t_act("c"));
    auto direct = compile(t_plus(s, t), alpha);
    auto left = compile(s, alpha);
    auto right = compile(t, alpha);
    auto built = plus(left, right);
    CHECK(direct.states().size() == built.states().size());
    CHECK(direct.transitions().size() == built.transitions().size());
    CHECK(direct.finals().size() == built.finals().size());
}

TEST_CASE("run compiles through the iterated sum") {
    auto alpha = default_law_alphabet();
    auto r = compile(t_run({"a"}), alpha);
    auto s = compile(t_star(t_act("a")), alpha);
    CHECK(r.states().size() == s.states().size());
    CHECK(r.transitions().size() == s.transitions().size());
}

TEST_CASE("least fixpoint of the guarded tail recursion") {
    auto alpha = vending_alpha();
    auto body = parse_expr("stuck . kick +[1/5] tea . 0", alpha);
    auto m = least_fixpoint_star(body);
    CHECK(structural_equal(m, parse_expr("(stuck . kick +[1/5] tea . 0)* . 0", alpha)));
}

TEST_CASE("definitions may reference earlier definitions; actions shadow") {
    TermFile f = parse_term_file("external a\ndef X = a . a\ndef Y = X + a\n");
    CHECK(structural_equal(f.find("Y"),
                           t_plus(t_seq(t_act("a"), t_act("a")), t_act("a"))));
    // Forward references stay errors.
    CHECK_THROWS_AS(parse_term_file("external a\ndef Y = X\ndef X = a\n"), ParseError);
    // Bare expressions have no definition scope.
    CHECK_THROWS_AS(parse_expr("X", make_alphabet({"a"})), ParseError);
}
