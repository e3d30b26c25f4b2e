#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcka/rg.hpp"
#include "pcka/textio.hpp"

using namespace pcka;

namespace {
AlphabetPtr abc() { return default_law_alphabet(); }
std::vector<std::string> abc_frame() { return {"a", "b", "c"}; }
}

TEST_CASE("holds: a failing quintuple and a trivial one") {
    // (1, run{a}, a, 0, run{a}): 1.(run||a) has behavior, 0 has none.
    RGQuintuple bad{"bad",    t_one(),  t_run({"a"}), t_act("a"),
                    t_zero(), t_run({"a"}), abc_frame()};
    auto rep = holds(bad, {}, abc());
    CHECK(rep.premises_verdict() == Verdict::refuted);

    // (0, run{a}, a, 0, run{a}): 0.(anything) <= 0.
    RGQuintuple zero{"zero",  t_zero(), t_run({"a"}), t_act("a"),
                     t_zero(), t_run({"a"}), abc_frame()};
    CHECK(holds(zero, {}, abc()).premises_verdict() == Verdict::verified);
}

TEST_CASE("asymmetric rule with identity components collapses to the premise") {
    // U = U' = 1: conclusion is q2 up to 1||1 == 1.
    RGQuintuple env{"env", t_one(), t_run({"a"}), t_one(), t_run({"a"}), t_one(),
                    abc_frame()};
    RGQuintuple q2{"q2",  t_one(), t_one(), t_one(), t_one(), t_one(), abc_frame()};
    auto rep = rule_asymmetric(env, q2, {}, abc());
    CHECK(rep.premises_verdict() == Verdict::verified);
    CHECK(rep.conclusion_verdict() == Verdict::verified);
}

TEST_CASE("asymmetric rule reports fabricated premise failures") {
    // G = a but R' = b: G <= R' fails.
    RGQuintuple env{"env", t_one(), t_run({"a"}), t_act("a"), t_run({"a"}), t_act("a"),
                    abc_frame()};
    RGQuintuple q2{"q2", t_one(), t_act("b"), t_act("b"), t_run({"a", "b"}), t_act("b"),
                   abc_frame()};
    auto rep = rule_asymmetric(env, q2, {}, abc());
    bool found = false;
    for (const auto& c : rep.premises)
        if (c.name == "G <= R'") {
            found = true;
            CHECK(c.verdict == Verdict::refuted);
        }
    CHECK(found);
    CHECK(rep.premises_verdict() == Verdict::refuted);
}

TEST_CASE("concurrent rule: degenerate zero precondition") {
    RGQuintuple q1{"q1", t_one(), t_run({"a"}), t_act("a"), t_run({"a"}), t_run({"a"}),
                   abc_frame()};
    RGQuintuple q2{"q2", t_one(), t_run({"a"}), t_act("a"), t_run({"a"}), t_run({"a"}),
                   abc_frame()};
    auto rep = rule_concurrent_isolated(q1, q2, t_zero(), {}, abc());
    CHECK(rep.premises_verdict() == Verdict::verified);
    CHECK(rep.conclusion_verdict() == Verdict::verified);
    CHECK(rep.warnings.empty());  // both components use exactly {a}
}

TEST_CASE("concurrent rule flags non-coinciding component actions") {
    RGQuintuple q1{"q1", t_one(), t_run({"a"}), t_act("a"), t_run({"a"}), t_run({"a"}),
                   abc_frame()};
    RGQuintuple q2{"q2", t_one(), t_run({"a"}), t_act("b"), t_run({"a", "b"}),
                   t_run({"a", "b"}), abc_frame()};
    auto rep = rule_concurrent_isolated(q1, q2, t_zero(), {}, abc());
    CHECK(!rep.warnings.empty());
}

TEST_CASE("general-environment rule recovers the isolated rule with S = run") {
    RGQuintuple q1{"q1", t_one(), t_run({"a"}), t_act("a"), t_run({"a"}), t_run({"a"}),
                   abc_frame()};
    RGQuintuple q2{"q2", t_one(), t_run({"a"}), t_act("a"), t_run({"a"}), t_run({"a"}),
                   abc_frame()};
    auto rep = rule_general_env(q1, q2, t_run({"a"}), t_zero(), {}, abc());
    // includes run || run <= run among the premises
    bool saw_self_par = false;
    for (const auto& c : rep.premises)
        if (c.name == "S||S <= S") {
            saw_self_par = true;
            CHECK(c.verdict == Verdict::verified);
        }
    CHECK(saw_self_par);
    CHECK(rep.overall() == Verdict::verified);
}

TEST_CASE("general-environment rule with S = 0") {
    RGQuintuple q1{"q1", t_zero(), t_run({"a"}), t_act("a"), t_zero(), t_run({"a"}),
                   abc_frame()};
    RGQuintuple q2{"q2", t_zero(), t_run({"a"}), t_act("a"), t_zero(), t_run({"a"}),
                   abc_frame()};
    auto rep = rule_general_env(q1, q2, t_zero(), t_zero(), {}, abc());
    CHECK(rep.overall() == Verdict::verified);
}

TEST_CASE("a* composed with itself stays below a*") {
    auto alpha = abc();
    auto astar = compile(t_star(t_act("a")), alpha);
    auto both = compile(t_par(t_star(t_act("a")), {"a"}, t_star(t_act("a"))), alpha);
    CHECK(leq(both, astar, {}).verified());
}

TEST_CASE("sequential rule on fully synchronized single actions") {
    // R = R' = run{a,b}; U = a, U' = b; full synchronization on the frame.
    std::vector<std::string> frame{"a", "b"};
    auto runab = t_run({"a", "b"});
    RGQuintuple q1{"q1", t_one(), runab, t_act("a"), runab, t_act("a"), frame};
    RGQuintuple q2{"q2", t_one(), runab, t_act("b"), runab, t_act("b"), frame};
    auto rep = rule_sequential(q1, q2, {}, abc());
    // Q <= P' is run <= 1, which fails; the report must say so rather than
    // assert the conclusion.
    bool saw = false;
    for (const auto& c : rep.premises)
        if (c.name == "Q <= P'") {
            saw = true;
            CHECK(c.verdict == Verdict::refuted);
        }
    CHECK(saw);

    // With post/pre arranged to chain, everything verifies.
    RGQuintuple q1b{"q1b", t_one(), runab, t_act("a"), t_one(), t_act("a"), frame};
    // (run||U) with U = a over full frame is a; so P.(R||U) = a <= Q needs Q >= a.
    // Use Q = 1? a <= 1 fails; instead choose R = 1 so R||U = U.
    RGQuintuple q1c{"q1c", t_one(), t_one(), t_act("a"), t_act("a"), t_act("a"), frame};
    RGQuintuple q2c{"q2c", t_act("a"), t_one(), t_act("b"),
                    t_seq(t_act("a"), t_act("b")), t_act("b"), frame};
    auto rep2 = rule_sequential(q1c, q2c, {}, abc());
    CHECK(rep2.overall() == Verdict::verified);
}

TEST_CASE("vending machine case study") {
    CheckConfig cfg;
    cfg.budget = 200000;
    auto rep = vending_machine_case_study(cfg);
    CHECK(rep.asymmetric.premises_verdict() == Verdict::verified);
    CHECK(rep.asymmetric.conclusion_verdict() == Verdict::verified);
    CHECK(rep.spec_refines == Verdict::verified);
    CHECK(rep.strengthened_interchange == Verdict::verified);
    CHECK(rep.final_claim == Verdict::verified);
    CHECK(rep.post_split_structural);
    CHECK(rep.ok());
}
