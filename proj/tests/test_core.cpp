#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcka/ops.hpp"

using namespace pcka;

namespace {
AlphabetPtr abc() { return make_alphabet({"a", "b", "c"}, {"i"}); }
}

TEST_CASE("rational parsing and printing") {
    CHECK(rat_to_string(rat(1, 5)) == "1/5");
    CHECK(rat_to_string(rat(1)) == "1");
    CHECK(rat_to_string(rat(4, 8)) == "1/2");
    CHECK(*rat_from_string("24/25") == rat(24, 25));
    CHECK(*rat_from_string("1") == rat(1));
    CHECK(!rat_from_string("1/0"));
    CHECK(!rat_from_string("x"));
    CHECK(!rat_from_string(""));
}

TEST_CASE("alphabet partitions actions") {
    auto a = abc();
    CHECK(a->is_external(a->id_of("a")));
    CHECK(a->is_internal(a->id_of("i")));
    CHECK(a->is_unobservable(a->id_of("i")));
    CHECK(a->is_unobservable(kTau));
    CHECK(!a->is_unobservable(a->id_of("b")));
    CHECK(a->name_of(kTau) == "tau");
    CHECK_THROWS(a->id_of("nope"));
    CHECK_THROWS(make_alphabet({"a"}, {"a"}));       // overlap
    CHECK_THROWS(make_alphabet({"tau"}));            // reserved
    CHECK_THROWS(make_alphabet({""}));               // empty name
}

TEST_CASE("distributions are canonical and exact") {
    Dist d({{7, rat(1, 3)}, {3, rat(1, 3)}, {7, rat(1, 3)}});
    CHECK(d.support_size() == 2);
    CHECK(d.at(7) == rat(2, 3));
    CHECK(d.at(3) == rat(1, 3));
    CHECK(d.at(99) == 0);
    CHECK_THROWS(Dist({{1, rat(1, 2)}}));            // under 1
    CHECK_THROWS(Dist({{1, rat(3, 2)}}));            // over 1
    CHECK(Dist::blend(Dist::point(1), rat(1), Dist::point(2)) == Dist::point(1));
    CHECK(Dist::blend(Dist::point(1), rat(0), Dist::point(2)) == Dist::point(2));
    Dist b = Dist::blend(Dist::point(1), rat(1, 5), Dist::point(2));
    CHECK(b.at(1) == rat(1, 5));
    CHECK(b.at(2) == rat(4, 5));
}

TEST_CASE("constants have the dictated shape") {
    auto alpha = abc();
    auto d = deadlock(alpha);
    CHECK(d.states().size() == 1);
    CHECK(d.transitions().empty());
    CHECK(d.finals().empty());
    CHECK(validate(d).empty());

    auto s = skip(alpha);
    CHECK(s.states().size() == 1);
    CHECK(s.finals().size() == 1);
    CHECK(s.is_final(s.initial_point()));

    auto a = action("a", alpha);
    CHECK(a.states().size() == 2);
    CHECK(a.transitions().size() == 1);
    CHECK(a.finals().size() == 1);
    CHECK_THROWS(action("nope", alpha));
    CHECK_THROWS(action(kTau, alpha));
}

TEST_CASE("composition state and transition counts") {
    auto alpha = abc();
    auto p = action("a", alpha);
    auto q = action("b", alpha);
    std::size_t np = p.states().size(), nq = q.states().size();
    std::size_t tp = p.transitions().size(), tq = q.transitions().size();

    auto sum = plus(p, q);
    CHECK(sum.states().size() == np + nq + 1);
    CHECK(sum.transitions().size() == tp + tq + 2);
    CHECK(sum.finals().size() == p.finals().size() + q.finals().size());

    auto sq = seq(p, q);
    CHECK(sq.states().size() == np + nq);
    CHECK(sq.transitions().size() == tp + tq + p.finals().size());
    CHECK(sq.finals() == q.finals());
    CHECK(sq.initial() == p.initial());

    auto st = star(p);
    CHECK(st.states().size() == np + 1);
    CHECK(st.transitions().size() == tp + 1 + p.finals().size());
    CHECK(st.finals().size() == 1);

    auto pc = pchoice(p, rat(1, 3), q);
    CHECK(pc.states().size() == np + nq);
    CHECK(pc.transitions().size() == tp + tq);
    CHECK(pc.initial().at(p.initial_point()) == rat(1, 3));
    CHECK(pc.initial().at(q.initial_point()) == rat(2, 3));
    CHECK_THROWS(pchoice(p, rat(3, 2), q));
}

TEST_CASE("operand state spaces stay disjoint") {
    auto alpha = abc();
    auto p = action("a", alpha);
    CHECK_THROWS(plus(p, p));  // same value twice requires an explicit copy
    auto [p2, m] = copy(p);
    CHECK_NOTHROW(plus(p, p2));
    CHECK(m.size() == p.states().size());
}

TEST_CASE("allocator never reissues ids") {
    auto alpha = abc();
    StateId before = StateIdAllocator::peek();
    auto p = action("a", alpha);
    auto q = skip(alpha);
    auto sum = plus(p, q);
    CHECK(StateIdAllocator::peek() >= before + 4);
    for (StateId s : sum.states()) CHECK(s >= before);
}

TEST_CASE("parallel composition and its clause audit") {
    auto alpha = abc();
    ActionId a = alpha->id_of("a");

    auto p = action("a", alpha);
    auto q = action("a", alpha);
    auto sync = par(p, {a}, q);
    CHECK(sync.states().size() == p.states().size() * q.states().size());
    auto audit = par_clause_audit(p, {a}, q, sync);
    CHECK(audit.sync == 1);
    CHECK(audit.left_only == 0);
    CHECK(audit.right_only == 0);

    // A frame action with no partner is blocked entirely.
    auto blocked = par(action("a", alpha), {a}, skip(alpha));
    CHECK(blocked.transitions().empty());

    // Off-frame actions interleave with the partner frozen.
    auto ia = action("a", alpha);
    auto ib = action("b", alpha);
    auto inter = par(ia, {}, ib);
    auto audit2 = par_clause_audit(ia, {}, ib, inter);
    CHECK(audit2.sync == 0);
    CHECK(audit2.overlap == 0);
    CHECK(inter.transitions().size() == 4);  // one move per side per partner state

    CHECK_THROWS(par(p, {alpha->id_of("i")}, q));  // internal action in frame
    CHECK_THROWS(par(p, {kTau}, q));
}

TEST_CASE("run is the iterated nondeterministic sum") {
    auto alpha = abc();
    auto r1 = run(std::vector<std::string>{"a"}, alpha);
    // One action: star(a) shape.
    CHECK(r1.states().size() == 3);
    CHECK(r1.finals().size() == 1);
    CHECK_THROWS(run(std::set<ActionId>{}, alpha));
    CHECK_THROWS(run(std::vector<std::string>{"i"}, alpha));  // internal
}

TEST_CASE("reachable restriction") {
    auto alpha = abc();
    auto dead_then_a = seq(deadlock(alpha), action("a", alpha));
    auto r = reachable(dead_then_a);
    CHECK(r.states().size() == 1);
    CHECK(r.transitions().empty());
    CHECK(r.finals().empty());

    // Idempotent.
    auto rr = reachable(r);
    CHECK(rr.states() == r.states());
    CHECK(rr.transitions() == r.transitions());
}

TEST_CASE("unfold truncates the path automaton") {
    auto alpha = abc();
    auto a = action("a", alpha);
    auto u1 = unfold(a, 1);
    CHECK(u1.states().size() == 2);
    CHECK(u1.transitions().size() == 1);
    CHECK(u1.finals().size() == 1);
    CHECK(u1.path_last(u1.initial_point()).has_value());

    // unfold(star(a), 3): path levels 0..3, acyclic by construction.
    auto st = star(action("a", alpha));
    auto u3 = unfold(st, 3);
    CHECK(validate(u3).empty());
    for (const auto& t : u3.transitions())
        for (StateId y : t.target.support()) CHECK(y != t.src);  // no self loops
    // depth 0 keeps only the roots
    auto u0 = unfold(st, 0);
    CHECK(u0.states().size() == 1);
    CHECK(u0.transitions().empty());
}

TEST_CASE("every construction output validates") {
    auto alpha = abc();
    auto p = action("a", alpha);
    auto q = action("b", alpha);
    auto [q2, m2] = copy(q);
    for (const ProbAutomaton& x :
         {plus(p, q), seq(action("a", alpha), action("b", alpha)),
          star(action("c", alpha)), pchoice(action("a", alpha), rat(1, 5), action("b", alpha)),
          par(action("a", alpha), {alpha->id_of("a")}, action("a", alpha)),
          run(std::vector<std::string>{"a", "b"}, alpha)})
        CHECK(validate(x).empty());
}
