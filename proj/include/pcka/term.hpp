#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pcka/ops.hpp"

namespace pcka {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// AST of the algebraic language.
struct Term {
    enum class Kind { zero, one, act, plus, seq, star, pchoice, par, run };
    Kind kind;
    std::string name;                 // act
    TermPtr lhs, rhs;                 // binary operands; star uses lhs
    Rat prob;                         // pchoice
    std::vector<std::string> frame;   // par synchronization set / run action set
};

TermPtr t_zero();
TermPtr t_one();
TermPtr t_act(std::string name);
TermPtr t_plus(TermPtr a, TermPtr b);
TermPtr t_seq(TermPtr a, TermPtr b);
TermPtr t_star(TermPtr a);
TermPtr t_pchoice(TermPtr a, Rat p, TermPtr b);
TermPtr t_par(TermPtr a, std::vector<std::string> frame, TermPtr b);
TermPtr t_run(std::vector<std::string> actions);

bool structural_equal(const TermPtr& a, const TermPtr& b);

/// Minimal-parenthesis concrete syntax; parse(pretty(t)) == t structurally.
std::string pretty(const TermPtr& t);

/// External action names occurring in the term (through frames and run sets
/// only when they also appear as actions is NOT implied; this collects action
/// occurrences: act leaves and run sets).
std::vector<std::string> actions_used(const TermPtr& t, const ActionAlphabet& alpha,
                                      bool external_only = true);

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, unsigned line, unsigned col);
    unsigned line, col;
};

/// Parses one expression over a known alphabet.
TermPtr parse_expr(const std::string& text, const AlphabetPtr& alphabet);

/// Parses a term file: `external`/`internal` header lines, then
/// `def NAME = EXPR` lines. '#' starts a comment.
struct TermFile {
    AlphabetPtr alphabet;
    std::vector<std::pair<std::string, TermPtr>> defs;

    TermPtr find(const std::string& name) const;
};
TermFile parse_term_file(const std::string& text);

/// Structurally recursive compilation to automata.
ProbAutomaton compile(const TermPtr& t, const AlphabetPtr& alphabet);

/// The least fixed point of f(X) = P·X·0, expressed as P*·0.
TermPtr least_fixpoint_star(const TermPtr& p);

}  // namespace pcka
