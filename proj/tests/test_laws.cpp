#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcka/laws.hpp"

using namespace pcka;

TEST_CASE("registry covers the full equation set plus the derived fact") {
    const auto& laws = law_registry();
    CHECK(laws.size() == 23);
    std::set<std::string> ids;
    for (const auto& l : laws) CHECK(ids.insert(l.id).second);
    CHECK(ids.count("pc-below-plus"));  // the derived fact
    CHECK_THROWS(law_by_id("no-such-law"));
}

TEST_CASE("probabilistic reassociation side conditions") {
    auto [pp, qp] = pchoice_assoc_params(rat(1, 5), rat(1, 4));
    CHECK(qp == rat(2, 5));
    CHECK(pp == rat(1, 2));
    // The three defining identities hold for several samples.
    for (auto [p, q] : {std::pair{rat(1, 3), rat(1, 2)}, {rat(3, 4), rat(2, 3)},
                        {rat(0), rat(0)}, {rat(1), rat(1, 2)}}) {
        auto [a, b] = pchoice_assoc_params(p, q);
        CHECK(a * b == p);
        CHECK((Rat(1) - a) * b == (Rat(1) - p) * q);
        CHECK(Rat(1) - b == (Rat(1) - p) * (Rat(1) - q));
    }
}

TEST_CASE("constructed witnesses verify on fixed instances") {
    auto a = t_act("a"), b = t_act("b"), c = t_act("c");
    CheckConfig cfg;

    auto rd = construct_right_dist(a, b, c, default_law_alphabet());
    CHECK(verify_simulation(rd.fwd, rd.lhs, rd.rhs, cfg).verified());
    CHECK(verify_simulation(*rd.bwd, rd.rhs, rd.lhs, cfg).verified());

    auto ls = construct_left_subdist(a, b, c, default_law_alphabet());
    CHECK(verify_simulation(ls.fwd, ls.lhs, ls.rhs, cfg).verified());

    auto pd = construct_pc_dist(a, rat(1, 3), b, c, default_law_alphabet());
    CHECK(verify_simulation(pd.fwd, pd.lhs, pd.rhs, cfg).verified());
    CHECK(verify_simulation(*pd.bwd, pd.rhs, pd.lhs, cfg).verified());

    auto ps = construct_pc_supdist(a, rat(1, 2), b, c, default_law_alphabet());
    CHECK(verify_simulation(ps.fwd, ps.lhs, ps.rhs, cfg).verified());

    auto su = construct_star_unfold(t_seq(a, b), default_law_alphabet());
    CHECK(verify_simulation(su.fwd, su.lhs, su.rhs, cfg).verified());
    CHECK(verify_simulation(*su.bwd, su.rhs, su.lhs, cfg).verified());

    auto ic = construct_interchange(a, b, a, b, default_law_alphabet());
    CHECK(verify_simulation(ic.fwd, ic.lhs, ic.rhs, cfg).verified());
}

TEST_CASE("check_law on representative instances") {
    auto a = t_act("a"), b = t_act("b"), c = t_act("c");
    // (P +[p] Q) . R == P.R +[p] Q.R with P = a +[1/2] b, R = c
    auto rep = check_law("pc-dist", {t_pchoice(a, rat(1, 2), b), b, c}, {rat(1, 2)}, {});
    CHECK(rep.used_constructor);
    CHECK(rep.overall() == Verdict::verified);

    auto su = check_law("star-unfold", {t_seq(a, b)}, {}, {});
    CHECK(su.overall() == Verdict::verified);

    CHECK_THROWS(check_law("pc-dist", {a}, {rat(1, 2)}, {}));  // arity mismatch
    CHECK_THROWS(check_law("pc-dist", {a, b, c}, {}, {}));     // missing probability
}

TEST_CASE("searched laws verify on seeded random instances") {
    // A small slice here; the acceptance suite runs the full census.
    CheckConfig cfg;
    for (const char* id : {"plus-idem", "plus-comm", "pc-comm", "seq-unit-left",
                           "seq-zero-left", "pc-below-plus"}) {
        const Law& law = law_by_id(id);
        for (unsigned i = 0; i < 5; ++i) {
            auto terms = random_terms(1000 + i, law.arity, 2, default_law_alphabet(), 10);
            std::vector<Rat> probs(law.prob_arity, rat(1, 3));
            auto rep = check_law(id, terms, probs, cfg);
            CHECK_MESSAGE(rep.overall() == Verdict::verified,
                          "law ", id, " instance ", i, " -> ",
                          verdict_name(rep.overall()));
        }
    }
}

TEST_CASE("counterexample catalog refutes exactly the false directions") {
    CheckConfig cfg;
    auto catalog = counterexample_catalog();
    CHECK(catalog.size() == 3);
    for (const auto& e : catalog) {
        auto fl = compile(e.false_lhs, default_law_alphabet());
        auto fr = compile(e.false_rhs, default_law_alphabet());
        auto vfalse = leq(fl, fr, cfg);
        CHECK_MESSAGE(vfalse.refuted(), e.claim, " false direction: ",
                      verdict_name(vfalse.verdict));
        auto tl = compile(e.true_lhs, default_law_alphabet());
        auto tr = compile(e.true_rhs, default_law_alphabet());
        auto vtrue = leq(tl, tr, cfg);
        CHECK_MESSAGE(vtrue.verified(), e.claim, " true direction: ",
                      verdict_name(vtrue.verdict));
    }
}

TEST_CASE("star induction at bounded depth") {
    auto a = t_act("a");
    // P = a, Q = a*: premise a.a* <= a* and all approximants hold.
    auto rep = check_star_induction(a, t_star(t_act("a")), 3, {});
    CHECK(rep.premise == Verdict::verified);
    for (auto v : rep.approximants) CHECK(v == Verdict::verified);
    CHECK(rep.direct == Verdict::verified);

    // Premise fails: P = a, Q = b.
    auto bad = check_star_induction(a, t_act("b"), 3, {});
    CHECK(bad.premise == Verdict::refuted);
    CHECK(bad.approximants.empty());
}

TEST_CASE("congruence constructions close verified pairs") {
    auto alpha = default_law_alphabet();
    // p <= q by construction: q = p + c.
    auto p = compile(t_seq(t_act("a"), t_act("b")), alpha);
    auto q = compile(t_plus(t_seq(t_act("a"), t_act("b")), t_act("c")), alpha);
    auto base = find_simulation(p, q, {});
    REQUIRE(base.verified());

    for (const char* op : {"plus", "seq-right", "seq-left", "star", "pchoice", "par"}) {
        auto cr = congruence_apply(op, reachable(p), reachable(q), base.relation,
                                   t_act("c"), rat(1, 3), alpha);
        auto res = verify_simulation(cr.rel, cr.lhs, cr.rhs, {});
        CHECK_MESSAGE(res.verified(), "congruence ", op, ": ", res.reason);
    }
}

TEST_CASE("seeded generation is deterministic and size bounded") {
    auto alpha = default_law_alphabet();
    auto t1 = random_terms(7, 20, 4, alpha, 60);
    auto t2 = random_terms(7, 20, 4, alpha, 60);
    REQUIRE(t1.size() == t2.size());
    for (std::size_t i = 0; i < t1.size(); ++i) CHECK(structural_equal(t1[i], t2[i]));
    for (const auto& t : t1) {
        CHECK(term_size_estimate(t) <= 60);
        CHECK(compile(t, alpha).states().size() <= 60);
    }
    // Depth-0 terms are leaves.
    for (const auto& t : random_terms(9, 10, 0, alpha, 60))
        CHECK((t->kind == Term::Kind::zero || t->kind == Term::Kind::one ||
               t->kind == Term::Kind::act));
}
