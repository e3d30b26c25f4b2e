#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcka/textio.hpp"

using namespace pcka;

namespace {
const std::string kSample =
    "automaton NAME\n"
    "external a b c\n"
    "internal stuck\n"
    "states s0 s1 s2\n"
    "init s0:1\n"
    "final s2\n"
    "trans s0 a -> s1:1/5 s2:4/5\n"
    "trans s1 tau -> s0:1\n";
}

TEST_CASE("automaton format round trip") {
    NamedAutomaton a = read_automaton(kSample);
    CHECK(a.name == "NAME");
    CHECK(a.automaton.states().size() == 3);
    CHECK(a.automaton.finals().size() == 1);
    CHECK(a.automaton.initial().is_point());
    CHECK(a.automaton.transitions().size() == 2);

    std::string out = write_automaton(a);
    NamedAutomaton b = read_automaton(out);
    CHECK(write_automaton(b) == out);  // stable after one round
    CHECK(b.automaton.transitions().size() == 2);
    // Probabilities are bit-exact.
    CHECK(out.find("s1:1/5") != std::string::npos);
    CHECK(out.find("s2:4/5") != std::string::npos);
}

TEST_CASE("automaton format rejects malformed input") {
    CHECK_THROWS_AS(read_automaton("states s0\n"), ParseError);     // missing name
    CHECK_THROWS_AS(read_automaton("automaton x\n"), ParseError);   // missing states
    CHECK_THROWS_AS(read_automaton("automaton x\nexternal a\nstates s0 s0\ninit s0:1\n"),
                    ParseError);
    CHECK_THROWS_AS(
        read_automaton("automaton x\nexternal a\nstates s0\ninit s0:1\ntrans s0 a s1:1\n"),
        ParseError);
    // Distribution that does not sum to 1.
    CHECK_THROWS(read_automaton(
        "automaton x\nexternal a\nstates s0 s1\ninit s0:1\ntrans s0 a -> s1:1/2\n"));
}

TEST_CASE("relation file round trip") {
    NamedAutomaton m =
        read_automaton(read_file(std::string(PCKA_DATA_DIR) + "/vending_machine.aut"));
    NamedAutomaton h =
        read_automaton(read_file(std::string(PCKA_DATA_DIR) + "/vending_spec.aut"));
    NamedRelation r = read_relation(
        read_file(std::string(PCKA_DATA_DIR) + "/vending_witness.rel"), m, h);
    CHECK(r.name == "listed");
    CHECK(r.rel.size() == 9);
    std::string out = write_relation(r, m, h);
    NamedRelation back = read_relation(out, m, h);
    CHECK(back.rel.pairs() == r.rel.pairs());
}

TEST_CASE("dot export is deterministic and marks finals") {
    auto alpha = make_alphabet({"a"});
    auto s = with_generated_names("one", skip(alpha));
    std::string dot = write_dot(s);
    CHECK(dot.find("doublecircle") != std::string::npos);
    CHECK(dot == write_dot(s));

    NamedAutomaton m =
        read_automaton(read_file(std::string(PCKA_DATA_DIR) + "/vending_machine.aut"));
    std::string mdot = write_dot(m);
    CHECK(mdot == write_dot(m));  // byte-identical across runs
    // One probabilistic branch node, labeled 1/5 and 4/5 (initial shares it).
    CHECK(mdot.find("label=\"1/5\"") != std::string::npos);
    CHECK(mdot.find("label=\"4/5\"") != std::string::npos);
    CHECK(mdot.find("style=dashed") != std::string::npos);
}

TEST_CASE("rg scenario parsing") {
    RGScenario sc = parse_rg_scenario(read_file(std::string(PCKA_DATA_DIR) + "/vending.rg"));
    CHECK(sc.quintuples.size() == 2);
    CHECK(sc.stanzas.size() == 1);
    CHECK(sc.stanzas[0].rule == "asymmetric");
    CHECK(sc.frame == std::vector<std::string>{"coin", "kick", "tea", "fail"});
    CHECK_NOTHROW(sc.quintuple("env"));
    CHECK_THROWS(sc.quintuple("nope"));
    CHECK_THROWS_AS(parse_rg_scenario("external a\nbananas\n"), ParseError);
    CHECK_THROWS_AS(parse_rg_scenario("external a\nquintuple q = 1 1 1 1 1\n"), ParseError);
}
