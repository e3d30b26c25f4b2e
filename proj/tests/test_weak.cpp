#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcka/weak.hpp"
#include "pcka/ops.hpp"

using namespace pcka;

namespace {

struct Fixture {
    AlphabetPtr alpha = make_alphabet({"coin", "kick", "tea", "fail"}, {"stuck"});
    StateId u0, u1, u2, u3, u4, u5;
    ProbAutomaton spec;

    Fixture() : spec(build()) {}

    ProbAutomaton build() {
        u0 = StateIdAllocator::fresh();
        u1 = StateIdAllocator::fresh();
        u2 = StateIdAllocator::fresh();
        u3 = StateIdAllocator::fresh();
        u4 = StateIdAllocator::fresh();
        u5 = StateIdAllocator::fresh();
        ActionId kick = alpha->id_of("kick"), tea = alpha->id_of("tea"),
                 fail = alpha->id_of("fail");
        return ProbAutomaton(alpha, {u0, u1, u2, u3, u4, u5},
                             {{u0, kick, Dist::point(u2)},
                              {u1, kick, Dist::point(u3)},
                              {u1, tea, Dist::point(u5)},
                              {u2, kick, Dist::point(u4)},
                              {u3, tea, Dist::point(u5)},
                              {u4, kick, Dist::point(u4)},
                              {u4, tea, Dist::point(u4)},
                              {u4, fail, Dist::point(u4)}},
                             Dist({{u0, rat(1, 25)}, {u1, rat(24, 25)}}), {});
    }
};

}  // namespace

TEST_CASE("combined step polytopes") {
    Fixture f;
    ActionId kick = f.alpha->id_of("kick");

    // Single successor: the polytope is that point.
    CombinedStep one(f.spec, Dist::point(f.u0), kick);
    CHECK(!one.empty());
    CHECK(one.contains(Dist::point(f.u2)));
    CHECK(!one.contains(Dist::point(f.u3)));

    // tau from a state without tau transitions: reflexivity keeps delta_x.
    CombinedStep refl(f.spec, Dist::point(f.u5), kTau);
    CHECK(!refl.empty());
    CHECK(refl.contains(Dist::point(f.u5)));

    // External action from a state without it: empty polytope.
    CombinedStep blocked(f.spec, Dist::point(f.u5), kick);
    CHECK(blocked.empty());
    CHECK(!blocked.contains(Dist::point(f.u5)));
}

TEST_CASE("two transitions on one action span a segment") {
    auto alpha = make_alphabet({"a"});
    ActionId a = alpha->id_of("a");
    StateId x = StateIdAllocator::fresh(), y1 = StateIdAllocator::fresh(),
            y2 = StateIdAllocator::fresh();
    ProbAutomaton p(alpha, {x, y1, y2},
                    {{x, a, Dist::point(y1)}, {x, a, Dist::point(y2)}}, Dist::point(x), {});
    CombinedStep seg(p, Dist::point(x), a);
    CHECK(seg.contains(Dist::point(y1)));
    CHECK(seg.contains(Dist::point(y2)));
    CHECK(seg.contains(Dist({{y1, rat(1, 2)}, {y2, rat(1, 2)}})));
    CHECK(seg.contains(Dist({{y1, rat(1, 8)}, {y2, rat(7, 8)}})));
    CHECK(!seg.contains(Dist::point(x)));
}

TEST_CASE("combined step membership agrees with scheduler enumeration") {
    // State with up to 4 a-successors; enumerate rational convex weights with
    // denominators <= 8 and cross-check membership.
    auto alpha = make_alphabet({"a"});
    ActionId a = alpha->id_of("a");
    StateId x = StateIdAllocator::fresh();
    std::vector<StateId> ys;
    std::vector<Transition> ts;
    std::set<StateId> states{x};
    for (int i = 0; i < 4; ++i) {
        StateId y = StateIdAllocator::fresh();
        ys.push_back(y);
        states.insert(y);
        ts.push_back({x, a, Dist::point(y)});
    }
    ProbAutomaton p(alpha, states, ts, Dist::point(x), {});
    CombinedStep step(p, Dist::point(x), a);
    for (int n0 = 0; n0 <= 8; ++n0)
        for (int n1 = 0; n0 + n1 <= 8; ++n1)
            for (int n2 = 0; n0 + n1 + n2 <= 8; ++n2) {
                int n3 = 8 - n0 - n1 - n2;
                std::vector<Dist::Entry> es;
                int ns[4] = {n0, n1, n2, n3};
                for (int i = 0; i < 4; ++i)
                    if (ns[i]) es.emplace_back(ys[i], rat(ns[i], 8));
                CHECK(step.contains(Dist(es)));
            }
    // Any distribution giving mass to x itself is outside.
    CHECK(!step.contains(Dist({{x, rat(1, 8)}, {ys[0], rat(7, 8)}})));
}

TEST_CASE("weak reach: reflexive closure and simple targets") {
    Fixture f;
    WeakEngine eng(f.spec);
    unsigned budget = 1000;

    // Zero steps reach the start itself.
    auto r = eng.query(f.spec.initial(), std::nullopt, TargetExact{f.spec.initial()}, 5, 0,
                       &budget);
    CHECK(r.status == WeakStatus::reached);
    CHECK(r.derivation->steps.empty());

    // The mixed distribution takes a combined kick step to 1/5 u2 + 4/5 u3.
    Dist mix({{f.u0, rat(1, 5)}, {f.u1, rat(4, 5)}});
    Dist after({{f.u2, rat(1, 5)}, {f.u3, rat(4, 5)}});
    auto r2 = eng.query(mix, f.alpha->id_of("kick"), TargetExact{after}, 5, 0, &budget);
    REQUIRE(r2.status == WeakStatus::reached);
    CHECK(r2.derivation->final_dist == after);
    CHECK(validate_weak_derivation(f.spec, *r2.derivation, f.alpha->id_of("kick")));

    // Internal actions degrade to plain weak reach.
    auto r3 = eng.query(mix, f.alpha->id_of("stuck"), TargetExact{mix}, 5, 0, &budget);
    CHECK(r3.status == WeakStatus::reached);
}

TEST_CASE("weak reach failure modes") {
    auto alpha = make_alphabet({"a", "b"});
    auto dead = deadlock(alpha);
    WeakEngine eng(dead);
    unsigned budget = 100;
    // No final states anywhere: final-mass unreachable, conclusively.
    auto r = eng.query(dead.initial(), std::nullopt, TargetFinalMass{}, 10, 0, &budget);
    CHECK(r.status == WeakStatus::unreachable);

    // b from an automaton that only does a: conclusively unreachable.
    auto a = action("a", alpha);
    WeakEngine eng2(a);
    auto r2 = eng2.query(a.initial(), alpha->id_of("b"),
                         TargetExact{Dist::point(*a.finals().begin())}, 10, 0, &budget);
    CHECK(r2.status == WeakStatus::unreachable);
}

TEST_CASE("weak reach is monotone in the horizon") {
    // Chain of tau steps: z -tau-> x1 -tau-> x2; reaching x2 needs 2 steps.
    auto alpha = make_alphabet({"a"});
    StateId z = StateIdAllocator::fresh(), x1 = StateIdAllocator::fresh(),
            x2 = StateIdAllocator::fresh();
    ProbAutomaton p(alpha, {z, x1, x2},
                    {{z, kTau, Dist::point(x1)}, {x1, kTau, Dist::point(x2)}},
                    Dist::point(z), {x2});
    WeakEngine eng(p);
    unsigned budget = 1000;
    auto fail1 = eng.query(p.initial(), std::nullopt, TargetExact{Dist::point(x2)}, 1, 0,
                           &budget);
    CHECK(fail1.status != WeakStatus::reached);
    for (unsigned h = 2; h <= 5; ++h) {
        auto ok = eng.query(p.initial(), std::nullopt, TargetExact{Dist::point(x2)}, h, 0,
                            &budget);
        CHECK(ok.status == WeakStatus::reached);
        CHECK(validate_weak_derivation(p, *ok.derivation, std::nullopt));
    }
    // Acyclic and within the longest path: the failure at h=1 is not
    // conclusive (the bound needed is 2), so it reports horizon exhaustion.
    CHECK(fail1.status == WeakStatus::horizon_exhausted);
}

TEST_CASE("cyclic tau structure: limits are unreachable, bounded misses stay open") {
    // x cycles half its mass back on every step.
    auto alpha = make_alphabet({"a"});
    StateId x = StateIdAllocator::fresh(), y = StateIdAllocator::fresh();
    ProbAutomaton p(alpha, {x, y},
                    {{x, kTau, Dist({{x, rat(1, 2)}, {y, rat(1, 2)}})}},
                    Dist::point(x), {y});
    WeakEngine eng(p);
    unsigned budget = 10000;
    // delta_y is approached only in the limit; the support analysis proves no
    // finite derivation drains x, so this is conclusively unreachable.
    auto r = eng.query(p.initial(), std::nullopt, TargetExact{Dist::point(y)}, 6, 0, &budget);
    CHECK(r.status == WeakStatus::unreachable);
    // 1/4 x + 3/4 y needs two steps; at horizon 1 the cycle keeps the
    // question open, at horizon 2 it is reached.
    Dist quarter({{x, rat(1, 4)}, {y, rat(3, 4)}});
    auto open = eng.query(p.initial(), std::nullopt, TargetExact{quarter}, 1, 0, &budget);
    CHECK(open.status == WeakStatus::horizon_exhausted);
    auto ok = eng.query(p.initial(), std::nullopt, TargetExact{quarter}, 2, 0, &budget);
    CHECK(ok.status == WeakStatus::reached);
    CHECK(validate_weak_derivation(p, *ok.derivation, std::nullopt));
}

TEST_CASE("funnel analyses") {
    Fixture f;
    WeakEngine eng(f.spec);
    // No unobservable transitions: funnel set is the target itself.
    CHECK(eng.funnel_set({f.u4}) == std::set<StateId>{f.u4});
    // u2 can place all mass in {u4} via one kick.
    const auto& fa = eng.funnel_action_set(f.alpha->id_of("kick"), {f.u4});
    CHECK(fa.count(f.u2));
    CHECK(fa.count(f.u4));
    CHECK(!fa.count(f.u1));  // u1's kick goes to u3, not u4
}
