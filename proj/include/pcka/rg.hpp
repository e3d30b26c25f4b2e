#pragma once

#include "pcka/laws.hpp"

namespace pcka {

/// Rely/guarantee quintuple P R {U} Q G over terms, with the parallel frame
/// used when compiling R||U.
struct RGQuintuple {
    std::string name;
    TermPtr pre, rely, component, post, guarantee;
    std::vector<std::string> frame;
};

struct RGCheck {
    std::string name;
    Verdict verdict = Verdict::inconclusive;
    std::string detail;
};

/// Conclusions are never asserted from premises alone: the conclusion
/// quintuple is re-verified semantically and reported alongside.
struct RGReport {
    std::string rule;
    std::vector<RGCheck> premises;
    std::vector<RGCheck> conclusion;
    std::vector<std::string> warnings;

    Verdict premises_verdict() const;
    Verdict conclusion_verdict() const;
    /// Verified only when every premise and every conclusion check verified.
    Verdict overall() const;
};

/// P.(R||U) <= Q and U <= G.
RGReport holds(const RGQuintuple& q, const CheckConfig& cfg = {},
               const AlphabetPtr& alphabet = nullptr);

/// Concurrent rule for isolated systems: premises q1, q2, G <= R', G' <= R,
/// T <= P, T <= P'; conclusion T run {U||U'} Q (G||G') (and the symmetric
/// postcondition Q'). Flags non-coinciding component action sets.
RGReport rule_concurrent_isolated(const RGQuintuple& q1, const RGQuintuple& q2,
                                  const TermPtr& t_pre, const CheckConfig& cfg = {},
                                  const AlphabetPtr& alphabet = nullptr);

/// Asymmetric rule: premises (1 run {U} run G), q2, G <= R'; conclusion
/// P' run {U||U'} Q' (G||G').
RGReport rule_asymmetric(const RGQuintuple& q_env, const RGQuintuple& q2,
                         const CheckConfig& cfg = {},
                         const AlphabetPtr& alphabet = nullptr);

/// General-environment variant: side conditions S <= R, S <= R', S||S <= S;
/// conclusion T S {U||U'} Q (G||G').
RGReport rule_general_env(const RGQuintuple& q1, const RGQuintuple& q2, const TermPtr& s_env,
                          const TermPtr& t_pre, const CheckConfig& cfg = {},
                          const AlphabetPtr& alphabet = nullptr);

/// Sequential rule: premises q1, q2, Q <= P' and the frame equality
/// (R||U).(R'||U') == (R.R')||(U.U'); conclusion P (R.R') {U.U'} Q' (G.G').
RGReport rule_sequential(const RGQuintuple& q1, const RGQuintuple& q2,
                         const CheckConfig& cfg = {},
                         const AlphabetPtr& alphabet = nullptr);

/// The vending-machine scenario, end to end.
struct VendingReport {
    AlphabetPtr alphabet;
    RGReport asymmetric;
    Verdict spec_refines;             // H || U' <= Q'
    Verdict strengthened_interchange; // (coin.M)||(coin.U') == coin.(M||U')
    Verdict final_claim;              // V || U <= Q
    bool post_split_structural = false;  // Q splits 1/25 vs 24/25 at its root choice
    bool ok() const;
};
VendingReport vending_machine_case_study(const CheckConfig& cfg = {});

/// The bundled vending-machine definitions (term-file syntax).
const char* vending_machine_definitions();

}  // namespace pcka
