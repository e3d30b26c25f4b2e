#pragma once

#include "pcka/rg.hpp"

namespace pcka {

/// Automaton plus the display names used by the textual formats.
struct NamedAutomaton {
    std::string name;
    ProbAutomaton automaton;
    std::map<StateId, std::string> state_names;

    StateId state_by_name(const std::string& n) const;
};

/// Generates s0..sN names (sorted id order) for programmatic automata.
NamedAutomaton with_generated_names(std::string name, const ProbAutomaton& a);

/// Line-oriented textual automaton format, bit-exact rationals.
std::string write_automaton(const NamedAutomaton& a);
NamedAutomaton read_automaton(const std::string& text);

/// Witness relation format: `pair s ~ u0:1/5 u1:4/5` lines.
struct NamedRelation {
    std::string name, left, right;
    SimRelation rel;
};
std::string write_relation(const NamedRelation& r, const NamedAutomaton& left,
                           const NamedAutomaton& right);
NamedRelation read_relation(const std::string& text, const NamedAutomaton& left,
                            const NamedAutomaton& right);

/// Deterministic DOT rendering: solid action arrows into intermediate
/// distribution nodes with dashed probability-labeled branches.
std::string write_dot(const NamedAutomaton& a);

/// Rely/guarantee scenario: a term file plus frame/quintuple/rule stanzas.
struct RGScenario {
    TermFile terms;
    std::vector<std::string> frame;
    std::vector<RGQuintuple> quintuples;
    struct Stanza {
        std::string rule;  // "asymmetric", "concurrent", "general", "sequential", "holds"
        std::map<std::string, std::string> args;
    };
    std::vector<Stanza> stanzas;

    const RGQuintuple& quintuple(const std::string& name) const;
};
RGScenario parse_rg_scenario(const std::string& text);

/// Runs every stanza; returns (report lines, all verified).
std::pair<std::vector<std::string>, bool> run_rg_scenario(const RGScenario& sc,
                                                          const CheckConfig& cfg);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace pcka
